//! Two-copy entanglement teleportation through a mixed two-qubit channel.
//!
//! A joint Bell measurement on each channel copy yields outcome `i` with
//! probability `p_i = tr[E^i rho]`, corrected by `sigma_i`. With copies `A`, `B`
//! the output is `sum_ij p_i(A) p_j(B) (sigma_i (x) sigma_j) rho_in (sigma_i (x) sigma_j)`.
//!
//! Outcome projectors, indexed as the Pauli correction they trigger
//! (`I, sigma_x, sigma_y, sigma_z`):
//!
//! | index | Bell state          |
//! |-------|---------------------|
//! | 0     | (|01> - |10>)/sqrt2 |
//! | 1     | (|00> - |11>)/sqrt2 |
//! | 2     | (|00> + |11>)/sqrt2 |
//! | 3     | (|01> + |10>)/sqrt2 |
//!
//! The singlet is the reference outcome, so a channel equal to it (or to
//! `(|01> + |10>)/sqrt2`, whose correction is a global phase on the input
//! subspace) transmits every input perfectly.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::entanglement::concurrence;
use crate::error::{Error, Result};
use crate::numerics::{
    pauli, psd_sqrt, singular_values, tensor2, DensityMatrix, Matrix4C, Vector4C, C64,
};

/// Best fidelity reachable by measure-and-prepare strategies.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

/// Input `cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    pub theta: f64,
    pub phi: f64,
}

impl InputState {
    /// `theta` in `[0, pi]`, `phi` in `[0, 2 pi]`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta = {theta} outside [0, pi]"
            )));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "phi = {phi} outside [0, 2 pi]"
            )));
        }
        Ok(InputState { theta, phi })
    }

    pub fn vector(&self) -> Vector4C {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let mut v = [C64::new(0.0, 0.0); 4];
        v[2] = C64::new(c, 0.0);
        v[1] = C64::from_polar(s, self.phi);
        v
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(&self.vector())
    }
}

/// `|psi^k_Bell>`: k = 0, 3 are (|00> +- |11>)/sqrt2, k = 1, 2 are (|01> +- |10>)/sqrt2.
pub fn bell_state(k: usize) -> Vector4C {
    let s = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    match k {
        0 => [s, z, z, s],
        1 => [z, s, s, z],
        2 => [z, s, -s, z],
        3 => [s, z, z, -s],
        _ => panic!("Bell index {k} out of range"),
    }
}

/// Four outcome projectors; `projectors[i]` triggers the Pauli correction `sigma_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellBasis {
    states: [Vector4C; 4],
    projectors: [Matrix4C; 4],
}

impl BellBasis {
    /// Outcome `i` is `|psi^{order[i]}_Bell>`. Repeated indices are allowed so
    /// that incomplete lists can be inspected.
    pub fn from_order(order: [usize; 4]) -> Self {
        let states = order.map(bell_state);
        BellBasis {
            states,
            projectors: states.map(|v| Matrix4C::projector(&v)),
        }
    }

    pub fn projectors(&self) -> &[Matrix4C; 4] {
        &self.projectors
    }

    pub fn states(&self) -> &[Vector4C; 4] {
        &self.states
    }

    /// Largest entry of `sum_i E^i - I`.
    pub fn completeness_defect(&self) -> f64 {
        self.projectors
            .iter()
            .fold(Matrix4C::zeros(), |acc, p| acc + *p)
            .max_abs_diff(&Matrix4C::identity())
    }
}

/// Order used by [`bell_projectors`]: E^0 = psi^2 (singlet), E^1 = psi^3, E^2 = psi^0, E^3 = psi^1.
pub const OUTCOME_ORDER: [usize; 4] = [2, 3, 0, 1];

/// An outcome list with E^0 and E^2 both psi^0. Not a resolution of the identity.
pub const DUPLICATED_ORDER: [usize; 4] = [0, 3, 0, 1];

pub fn bell_projectors() -> BellBasis {
    BellBasis::from_order(OUTCOME_ORDER)
}

/// Outcome probabilities `tr[E^i rho]`.
pub fn channel_probs(rho: &DensityMatrix) -> [f64; 4] {
    channel_probs_in(&bell_projectors(), rho)
}

pub fn channel_probs_in(basis: &BellBasis, rho: &DensityMatrix) -> [f64; 4] {
    basis
        .states
        .map(|v| rho.matrix().expectation(&v).re.max(0.0))
}

/// Output of the two-copy protocol for an arbitrary input state.
pub fn teleport_density(
    basis: &BellBasis,
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    rho_in: &DensityMatrix,
) -> Result<DensityMatrix> {
    let pa = channel_probs_in(basis, rho_a);
    let pb = channel_probs_in(basis, rho_b);
    let mut out = Matrix4C::zeros();
    for (i, a) in pa.iter().enumerate() {
        for (j, b) in pb.iter().enumerate() {
            let w = a * b;
            if w == 0.0 {
                continue;
            }
            let k = tensor2(&pauli(i), &pauli(j));
            out = out + (k * *rho_in.matrix() * k).scale(w);
        }
    }
    DensityMatrix::new(out)
}

/// Teleported replica of `input`; `rho_a` supplies the first-qubit correction index.
pub fn teleport_output(
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    input: &InputState,
) -> Result<DensityMatrix> {
    teleport_density(&bell_projectors(), rho_a, rho_b, &input.density()?)
}

pub fn output_concurrence(
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    input: &InputState,
) -> Result<f64> {
    concurrence(&teleport_output(rho_a, rho_b, input)?)
}

/// Mixed-state fidelity `(tr sqrt(sqrt(a) b sqrt(a)))^2`.
///
/// The trace norm is evaluated as the sum of singular values of `sqrt(b) sqrt(a)`.
pub fn fidelity(rho_in: &DensityMatrix, rho_out: &DensityMatrix) -> Result<f64> {
    let a = psd_sqrt(rho_in.matrix())?;
    let b = psd_sqrt(rho_out.matrix())?;
    let trace_norm: f64 = singular_values(&(b * a))?.iter().sum();
    Ok((trace_norm * trace_norm).clamp(0.0, 1.0))
}

/// `<psi|rho|psi>`, the fidelity when the reference is pure.
pub fn pure_fidelity(psi: &Vector4C, rho: &DensityMatrix) -> f64 {
    rho.matrix().expectation(psi).re
}

/// Strictly above 2/3.
pub fn classical_threshold_exceeded(f: f64) -> bool {
    f > CLASSICAL_FIDELITY
}
