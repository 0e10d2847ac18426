//! Intrinsic-decoherence dynamics.
//!
//! Coherences between energy eigenstates `m`, `n` pick up the factor
//! `exp(-(Gamma t / 2)(E_m - E_n)^2 - i (E_m - E_n) t)`; populations and
//! coherences inside a degenerate eigenspace are untouched.

use std::f64::consts::LN_10;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{analytic_spectrum, dz_chi, ModelParams, Variant};
use crate::numerics::{DensityMatrix, Matrix4C, Spectrum, Vector4C, C64, ORTHONORMAL_TOL};

/// Default cap on the number of RK4 steps taken by [`evolve_ode_oracle`].
pub const DEFAULT_STEP_CAP: u64 = 10_000_000;

/// Negative eigenvalues the ODE oracle may clip, matching its agreement tolerance.
pub const ODE_PSD_TOL: f64 = 1e-6;

/// Decoherence rate and elapsed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub gamma: f64,
    pub t: f64,
}

impl EvolutionParams {
    pub fn new(gamma: f64, t: f64) -> Result<Self> {
        let ev = EvolutionParams { gamma, t };
        ev.validate()?;
        Ok(ev)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Gamma = {} must be finite and >= 0",
                self.gamma
            )));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t = {} must be finite and >= 0",
                self.t
            )));
        }
        Ok(())
    }
}

/// Which pair of basis kets the initial superposition uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InitialFamily {
    /// `cos(alpha)|01> + sin(alpha)|10>`
    #[serde(alias = "AntiparallelFamily", alias = "antiparallel")]
    Antiparallel,
    /// `cos(alpha)|00> + sin(alpha)|11>`
    #[serde(alias = "ParallelFamily", alias = "parallel")]
    Parallel,
}

impl InitialFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            InitialFamily::Antiparallel => "antiparallel",
            InitialFamily::Parallel => "parallel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateSpec {
    pub family: InitialFamily,
    pub alpha: f64,
}

impl InitialStateSpec {
    pub fn new(family: InitialFamily, alpha: f64) -> Self {
        InitialStateSpec { family, alpha }
    }

    pub fn vector(&self) -> Vector4C {
        let (s, c) = self.alpha.sin_cos();
        let mut v = [C64::new(0.0, 0.0); 4];
        match self.family {
            InitialFamily::Antiparallel => {
                v[1] = C64::new(c, 0.0);
                v[2] = C64::new(s, 0.0);
            }
            InitialFamily::Parallel => {
                v[0] = C64::new(c, 0.0);
                v[3] = C64::new(s, 0.0);
            }
        }
        v
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} is not finite",
                self.alpha
            )));
        }
        DensityMatrix::from_pure(&self.vector())
    }
}

fn check_spectrum(spec: &Spectrum) -> Result<()> {
    let defect = spec.orthonormality_defect();
    if defect > ORTHONORMAL_TOL {
        Err(Error::NotOrthonormal(defect))
    } else {
        Ok(())
    }
}

/// `V^dagger rho V`: `rho` expressed in the eigenbasis of `spec`.
fn to_eigenbasis(spec: &Spectrum, rho: &Matrix4C) -> (Matrix4C, Matrix4C) {
    let v = spec.basis_matrix();
    (v, v.adjoint() * *rho * v)
}

/// Spectral propagator for intrinsic decoherence.
pub fn evolve(
    spec: &Spectrum,
    rho0: &DensityMatrix,
    ev: &EvolutionParams,
) -> Result<DensityMatrix> {
    ev.validate()?;
    check_spectrum(spec)?;
    let (v, mut r) = to_eigenbasis(spec, rho0.matrix());
    let e = spec.energies();
    for m in 0..4 {
        for n in 0..4 {
            if m == n {
                continue;
            }
            let gap = e[m] - e[n];
            let decay = -0.5 * ev.gamma * ev.t * gap * gap;
            r[(m, n)] *= C64::new(decay, -gap * ev.t).exp();
        }
    }
    DensityMatrix::new(v * r * v.adjoint())
}

/// Right-hand side `-i[H, rho] - (Gamma/2)[H, [H, rho]]`.
fn master_rhs(h: &Matrix4C, rho: &Matrix4C, gamma: f64) -> Matrix4C {
    let c = h.commutator(rho);
    c * C64::new(0.0, -1.0) - h.commutator(&c).scale(0.5 * gamma)
}

/// Fixed-step classical RK4 integration of the master equation, capped at
/// [`DEFAULT_STEP_CAP`] steps. Independent of any eigendecomposition.
pub fn evolve_ode_oracle(
    h: &Matrix4C,
    rho0: &DensityMatrix,
    ev: &EvolutionParams,
    dt: f64,
) -> Result<DensityMatrix> {
    evolve_ode_oracle_capped(h, rho0, ev, dt, DEFAULT_STEP_CAP)
}

pub fn evolve_ode_oracle_capped(
    h: &Matrix4C,
    rho0: &DensityMatrix,
    ev: &EvolutionParams,
    dt: f64,
    step_cap: u64,
) -> Result<DensityMatrix> {
    ev.validate()?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} must be positive"
        )));
    }
    if ev.t == 0.0 {
        return Ok(*rho0);
    }
    if dt > ev.t {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} exceeds t = {}",
            ev.t
        )));
    }
    let defect = h.hermiticity_defect();
    if defect > crate::numerics::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let steps_f = (ev.t / dt).ceil();
    if steps_f > step_cap as f64 {
        return Err(Error::StepCap {
            steps: steps_f as u64,
            cap: step_cap,
        });
    }
    let steps = steps_f as u64;
    let step = ev.t / steps as f64;
    let mut rho = *rho0.matrix();
    for _ in 0..steps {
        let k1 = master_rhs(h, &rho, ev.gamma);
        let k2 = master_rhs(h, &(rho + k1.scale(0.5 * step)), ev.gamma);
        let k3 = master_rhs(h, &(rho + k2.scale(0.5 * step)), ev.gamma);
        let k4 = master_rhs(h, &(rho + k3.scale(step)), ev.gamma);
        rho = rho + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(step / 6.0);
    }
    // RK4 keeps trace and Hermiticity exactly but positivity only to truncation error.
    DensityMatrix::with_psd_tolerance(rho, ODE_PSD_TOL)
}

/// A reference closed form for the Dz density matrix with an antiparallel
/// initial state, kept verbatim including its defects.
///
/// This form is known to be inconsistent with [`evolve`]: its `(|00>,|00>)`
/// entry `chi^2 cos^2(alpha) / 4` is complex and non-zero, while the true
/// dynamics never leaves span{|01>, |10>}. It is kept only so the discrepancy
/// can be checked; nothing else in the crate uses it.
pub fn closed_form_dz(p: &ModelParams, alpha: f64, ev: &EvolutionParams) -> Result<Matrix4C> {
    if p.variant != Variant::Dz {
        return Err(Error::InvalidParameter(
            "closed form exists only for the Dz variant".into(),
        ));
    }
    p.validate()?;
    ev.validate()?;
    let spec = analytic_spectrum(p)?;
    let (e3, e4) = (spec.energies()[2], spec.energies()[3]);
    let (eta, xi) = closed_form_factors(e3, e4, ev);
    let chi = dz_chi(p.j, p.d);
    let (s, c) = alpha.sin_cos();
    let chi2 = chi * chi;
    let mix = chi * s + c; // cos(a) + chi sin(a)
    let quarter = 0.25;

    let rho11 = chi2 * quarter * c * c;
    let rho22 = chi2 * quarter * mix * mix;
    let rho33 = (mix * c * (eta + xi + 2.0) + chi2 * s * s) * quarter;
    let rho21 = -(chi2 * eta) * quarter * c * mix;
    let rho31 = -(chi * c) * quarter * (eta * chi * s + eta * c + c);
    let rho12 = -(xi * chi2 * c) * quarter * mix;
    let rho13 = -(chi * c) * quarter * (xi * chi * s + xi * c + c);
    let rho32 = chi * quarter * mix * (mix + xi * c);
    let rho23 = chi * quarter * mix * (mix + eta * c);

    let z = C64::new(0.0, 0.0);
    Ok(Matrix4C([
        [rho11, rho12, rho13, z],
        [rho21, rho22, rho23, z],
        [rho31, rho32, rho33, z],
        [z, z, z, z],
    ]))
}

/// `(eta, xi)` with `eta = exp(-t (E3 - E4)(Gamma E3 - Gamma E4 + 2i) / 2)` and `xi` its
/// counterpart with `-2i`.
pub fn closed_form_factors(e3: f64, e4: f64, ev: &EvolutionParams) -> (C64, C64) {
    let gap = e3 - e4;
    let eta = (C64::new(ev.gamma * gap, 2.0) * (-ev.t * gap / 2.0)).exp();
    let xi = (C64::new(ev.gamma * gap, -2.0) * (-ev.t * gap / 2.0)).exp();
    (eta, xi)
}

/// `1e-9 * max|E|`, floored at the smallest positive normal so it is always > 0.
pub fn default_degeneracy_tol(spec: &Spectrum) -> f64 {
    (1e-9 * spec.spectral_radius()).max(f64::MIN_POSITIVE)
}

/// Long-time limit for any `Gamma > 0`: `rho0` dephased in the eigenbasis, keeping
/// coherences between levels closer than `degeneracy_tol`.
pub fn asymptotic_state(
    spec: &Spectrum,
    rho0: &DensityMatrix,
    degeneracy_tol: f64,
) -> Result<DensityMatrix> {
    if !(degeneracy_tol.is_finite() && degeneracy_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "degeneracy_tol = {degeneracy_tol} must be > 0"
        )));
    }
    check_spectrum(spec)?;
    let (v, mut r) = to_eigenbasis(spec, rho0.matrix());
    let e = spec.energies();
    for m in 0..4 {
        for n in 0..4 {
            if (e[m] - e[n]).abs() > degeneracy_tol {
                r[(m, n)] = C64::new(0.0, 0.0);
            }
        }
    }
    DensityMatrix::new(v * r * v.adjoint())
}

/// Time after which every non-degenerate coherence has decayed below 1e-6:
/// `12 ln 10 / (Gamma * min gap^2)`. `None` for `Gamma = 0` or a fully degenerate spectrum.
pub fn decoherence_time(spec: &Spectrum, gamma: f64, degeneracy_tol: f64) -> Option<f64> {
    if gamma <= 0.0 {
        return None;
    }
    let e = spec.energies();
    let min_gap = (0..4)
        .flat_map(|m| (0..4).map(move |n| (e[m] - e[n]).abs()))
        .filter(|g| *g > degeneracy_tol)
        .fold(f64::INFINITY, f64::min);
    min_gap
        .is_finite()
        .then(|| 12.0 * LN_10 / (gamma * min_gap * min_gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hamiltonian;
    use crate::numerics::herm_eig;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn dz_ref() -> ModelParams {
        ModelParams::new(Variant::Dz, 1.0, 0.2, 1.0, 2.0).unwrap()
    }

    fn ev(gamma: f64, t: f64) -> EvolutionParams {
        EvolutionParams::new(gamma, t).unwrap()
    }

    #[test]
    fn rejects_negative_gamma_and_time() {
        assert!(EvolutionParams::new(-0.1, 1.0).is_err());
        assert!(EvolutionParams::new(0.1, -1.0).is_err());
        assert!(EvolutionParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn initial_states_are_normalized() {
        for family in [InitialFamily::Antiparallel, InitialFamily::Parallel] {
            for k in 0..20 {
                let rho = InitialStateSpec::new(family, 0.37 * k as f64)
                    .density()
                    .unwrap();
                assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn time_zero_is_identity() {
        let p = dz_ref();
        let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
        let rho0 = InitialStateSpec::new(InitialFamily::Antiparallel, 0.3)
            .density()
            .unwrap();
        let out = evolve(&spec, &rho0, &ev(0.02, 0.0)).unwrap();
        assert!(out.matrix().max_abs_diff(rho0.matrix()) < 1e-14);
    }

    #[test]
    fn eigenprojector_is_stationary() {
        let p = dz_ref();
        let spec = analytic_spectrum(&p).unwrap();
        for m in 0..4 {
            let rho0 = DensityMatrix::from_pure(&spec.vectors()[m]).unwrap();
            for (g, t) in [(0.0, 3.0), (0.02, 50.0), (1.0, 7.5)] {
                let out = evolve(&spec, &rho0, &ev(g, t)).unwrap();
                assert!(out.matrix().max_abs_diff(rho0.matrix()) < 1e-13);
            }
        }
    }

    #[test]
    fn unitary_limit_keeps_purity() {
        let p = ModelParams::new(Variant::Dx, 0.8, 0.4, -1.2, 0.9).unwrap();
        let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
        let rho0 = InitialStateSpec::new(InitialFamily::Parallel, 0.7)
            .density()
            .unwrap();
        for t in [0.5, 3.0, 40.0] {
            let out = evolve(&spec, &rho0, &ev(0.0, t)).unwrap();
            assert!((out.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_limit_matches_exponential() {
        // e^{-iHt} from the spectrum, applied to the vector directly
        let p = ModelParams::new(Variant::Dz, 0.6, 0.1, 0.4, 1.3).unwrap();
        let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
        let psi0 = InitialStateSpec::new(InitialFamily::Antiparallel, 0.4).vector();
        let t = 2.3;
        let mut psi = [C64::new(0.0, 0.0); 4];
        for (e, v) in spec.energies().iter().zip(spec.vectors()) {
            let amp = crate::numerics::inner(v, &psi0) * C64::new(0.0, -e * t).exp();
            for k in 0..4 {
                psi[k] += v[k] * amp;
            }
        }
        let expected = Matrix4C::projector(&psi);
        let rho0 = DensityMatrix::from_pure(&psi0).unwrap();
        let out = evolve(&spec, &rho0, &ev(0.0, t)).unwrap();
        assert!(out.matrix().max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn ode_oracle_trivial_cases() {
        let h = Matrix4C::from_real_diagonal([1.0, -0.5, 2.0, 0.0]);
        let rho0 = DensityMatrix::new(Matrix4C::from_real_diagonal([0.1, 0.2, 0.3, 0.4])).unwrap();
        let same = evolve_ode_oracle(&h, &rho0, &ev(0.0, 0.0), 1e-3).unwrap();
        assert_eq!(same, rho0);
        let out = evolve_ode_oracle(&h, &rho0, &ev(0.0, 2.0), 1e-2).unwrap();
        assert!(out.matrix().max_abs_diff(rho0.matrix()) < 1e-14);
    }

    #[test]
    fn ode_oracle_step_cap() {
        let h = Matrix4C::identity();
        let rho0 = DensityMatrix::maximally_mixed();
        let err = evolve_ode_oracle_capped(&h, &rho0, &ev(0.0, 1.0), 1e-3, 10).unwrap_err();
        assert!(matches!(
            err,
            Error::StepCap {
                steps: 1000,
                cap: 10
            }
        ));
        assert!(evolve_ode_oracle(&h, &rho0, &ev(0.0, 1.0), 2.0).is_err());
        assert!(evolve_ode_oracle(&h, &rho0, &ev(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn closed_form_factors_at_zero_and_modulus() {
        let (eta, xi) = closed_form_factors(3.0, -2.0, &ev(0.4, 0.0));
        assert_eq!(eta, C64::new(1.0, 0.0));
        assert_eq!(xi, C64::new(1.0, 0.0));
        for (g, t) in [(0.02, 1.0), (0.3, 4.0), (0.0, 9.0)] {
            let (eta, xi) = closed_form_factors(3.0, -2.0, &ev(g, t));
            let expected = (-g * t * 25.0 / 2.0).exp();
            assert!((eta.norm() - expected).abs() < 1e-14);
            assert!((xi.norm() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_disagrees_with_propagator() {
        let p = dz_ref();
        let e = ev(0.02, 1.0);
        let reference = closed_form_dz(&p, FRAC_PI_3, &e).unwrap();
        assert!((reference.trace() - C64::new(1.0, 0.0)).norm() > 1e-3);
        assert!(reference[(0, 0)].norm() > 1e-3);
        let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
        let rho0 = InitialStateSpec::new(InitialFamily::Antiparallel, FRAC_PI_3)
            .density()
            .unwrap();
        let good = evolve(&spec, &rho0, &e).unwrap();
        assert!(good.entry(0, 0).norm() < 1e-14);
        assert!(closed_form_dz(
            &ModelParams {
                variant: Variant::Dx,
                ..p
            },
            0.1,
            &e
        )
        .is_err());
    }

    #[test]
    fn asymptotic_examples() {
        let p = dz_ref();
        let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
        let tol = default_degeneracy_tol(&spec);
        let proj = DensityMatrix::from_pure(&spec.vectors()[1]).unwrap();
        assert!(
            asymptotic_state(&spec, &proj, tol)
                .unwrap()
                .matrix()
                .max_abs_diff(proj.matrix())
                < 1e-14
        );

        let rho0 = InitialStateSpec::new(InitialFamily::Antiparallel, FRAC_PI_4)
            .density()
            .unwrap();
        let inf = asymptotic_state(&spec, &rho0, tol).unwrap();
        // nondegenerate: diagonal in the eigenbasis
        let v = spec.basis_matrix();
        let in_eig = v.adjoint() * *inf.matrix() * v;
        let orig = v.adjoint() * *rho0.matrix() * v;
        for m in 0..4 {
            for n in 0..4 {
                let expected = if m == n {
                    orig[(m, m)]
                } else {
                    C64::new(0.0, 0.0)
                };
                assert!((in_eig[(m, n)] - expected).norm() < 1e-14);
            }
        }
        let late = evolve(&spec, &rho0, &ev(0.02, 1e4)).unwrap();
        assert!(late.matrix().max_abs_diff(inf.matrix()) < 1e-8);
        assert!(asymptotic_state(&spec, &rho0, 0.0).is_err());
    }

    #[test]
    fn asymptotic_keeps_degenerate_coherence() {
        // J = 1, gamma = 0, Jz = 0, D = 0: E_z1 = E_z2 = 0 degenerate
        let p = ModelParams::new(Variant::Dz, 1.0, 0.0, 0.0, 0.0).unwrap();
        let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
        let rho0 = InitialStateSpec::new(InitialFamily::Parallel, 0.3)
            .density()
            .unwrap();
        let inf = asymptotic_state(&spec, &rho0, default_degeneracy_tol(&spec)).unwrap();
        assert!(inf.matrix().max_abs_diff(rho0.matrix()) < 1e-14);
    }

    #[test]
    fn decoherence_time_formula() {
        let spec = Spectrum::new(
            [0.0, 1.0, 1.0, 3.0],
            std::array::from_fn(crate::numerics::basis_ket),
        )
        .unwrap();
        let t = decoherence_time(&spec, 0.02, 1e-9).unwrap();
        assert!((t - 12.0 * LN_10 / 0.02).abs() < 1e-9);
        assert!(decoherence_time(&spec, 0.0, 1e-9).is_none());
    }

    fn random_state(vals: &[f64]) -> DensityMatrix {
        let mut a = Matrix4C::zeros();
        for i in 0..4 {
            for j in 0..4 {
                a[(i, j)] = C64::new(vals[2 * (4 * i + j)], vals[2 * (4 * i + j) + 1]);
            }
        }
        let m = a.adjoint() * a;
        let tr = m.trace().re;
        DensityMatrix::new(m.scale(1.0 / tr).hermitian_part()).unwrap()
    }

    fn params_strategy() -> impl Strategy<Value = ModelParams> {
        (
            prop_oneof![Just(Variant::Dz), Just(Variant::Dx)],
            -2.0f64..2.0,
            -2.0f64..2.0,
            -2.0f64..2.0,
            -2.0f64..2.0,
        )
            .prop_map(|(v, j, g, jz, d)| ModelParams::new(v, j, g, jz, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn evolve_preserves_density(p in params_strategy(), vals in proptest::collection::vec(-1.0f64..1.0, 32),
                                    g in 0.0f64..0.5, t in 0.0f64..40.0) {
            let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
            let out = evolve(&spec, &random_state(&vals), &ev(g, t)).unwrap();
            prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-10);
            prop_assert!(out.matrix().hermiticity_defect() < 1e-10);
            prop_assert!(herm_eig(out.matrix()).unwrap().energies()[0] >= -1e-10);
        }

        #[test]
        fn composition_is_additive(p in params_strategy(), vals in proptest::collection::vec(-1.0f64..1.0, 32),
                                   g in 0.0f64..0.5, t1 in 0.0f64..10.0, t2 in 0.0f64..10.0) {
            let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
            let rho0 = random_state(&vals);
            let two_step = evolve(&spec, &evolve(&spec, &rho0, &ev(g, t1)).unwrap(), &ev(g, t2)).unwrap();
            let one_step = evolve(&spec, &rho0, &ev(g, t1 + t2)).unwrap();
            prop_assert!(two_step.matrix().max_abs_diff(one_step.matrix()) < 1e-10);
        }

        #[test]
        fn analytic_and_numeric_bases_agree(p in params_strategy(), vals in proptest::collection::vec(-1.0f64..1.0, 32),
                                            g in 0.0f64..0.5, t in 0.0f64..20.0) {
            let h = build_hamiltonian(&p);
            let rho0 = random_state(&vals);
            let a = evolve(&analytic_spectrum(&p).unwrap(), &rho0, &ev(g, t)).unwrap();
            let n = evolve(&herm_eig(&h).unwrap(), &rho0, &ev(g, t)).unwrap();
            prop_assert!(a.matrix().max_abs_diff(n.matrix()) < 1e-9);
        }

        #[test]
        fn degenerate_bases_agree(j in -2.0f64..2.0, jz in -2.0f64..2.0, vals in proptest::collection::vec(-1.0f64..1.0, 32),
                                  t in 0.0f64..20.0) {
            // gamma = 0, D = 0 makes E_z1 = E_z2
            let p = ModelParams::new(Variant::Dz, j, 0.0, jz, 0.0).unwrap();
            let rho0 = random_state(&vals);
            let a = evolve(&analytic_spectrum(&p).unwrap(), &rho0, &ev(0.1, t)).unwrap();
            let n = evolve(&herm_eig(&build_hamiltonian(&p)).unwrap(), &rho0, &ev(0.1, t)).unwrap();
            prop_assert!(a.matrix().max_abs_diff(n.matrix()) < 1e-9);
        }

        #[test]
        fn purity_non_increasing(p in params_strategy(), vals in proptest::collection::vec(-1.0f64..1.0, 32),
                                 g in 0.001f64..0.5) {
            let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
            let rho0 = random_state(&vals);
            let mut last = rho0.purity();
            for k in 1..=20 {
                let pur = evolve(&spec, &rho0, &ev(g, 0.5 * k as f64)).unwrap().purity();
                prop_assert!(pur <= last + 1e-12);
                last = pur;
            }
        }

        #[test]
        fn dz_antiparallel_stays_in_block(j in -3.0f64..3.0, g in -3.0f64..3.0, jz in -3.0f64..3.0, d in -3.0f64..3.0,
                                          alpha in 0.0f64..6.3, t in 0.0f64..300.0) {
            let p = ModelParams::new(Variant::Dz, j, g, jz, d).unwrap();
            let spec = herm_eig(&build_hamiltonian(&p)).unwrap();
            let rho0 = InitialStateSpec::new(InitialFamily::Antiparallel, alpha).density().unwrap();
            let out = evolve(&spec, &rho0, &ev(0.02, t)).unwrap();
            prop_assert!(out.populations()[0].abs() <= 1e-12);
            prop_assert!(out.populations()[3].abs() <= 1e-12);
        }

        #[test]
        fn ode_matches_spectral(p in params_strategy(), vals in proptest::collection::vec(-1.0f64..1.0, 32),
                                g in prop_oneof![Just(0.0), Just(0.02), Just(0.1)]) {
            let h = build_hamiltonian(&p);
            let rho0 = random_state(&vals);
            let e = ev(g, 1.5);
            let spectral = evolve(&herm_eig(&h).unwrap(), &rho0, &e).unwrap();
            let ode = evolve_ode_oracle(&h, &rho0, &e, 1e-3).unwrap();
            prop_assert!(spectral.matrix().max_abs_diff(ode.matrix()) < 1e-6);
        }
    }
}
