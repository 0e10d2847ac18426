//! Heisenberg XYZ Hamiltonians with z- or x-axis Dzyaloshinskii-Moriya coupling.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{pauli, tensor2, Matrix4C, Spectrum, Vector4C, C64};

/// Orientation of the DM vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Dz,
    Dx,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Dz => "Dz",
            Variant::Dx => "Dx",
        })
    }
}

/// Dimensionless couplings of the two-spin chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub variant: Variant,
    /// In-plane exchange `J`.
    pub j: f64,
    /// Anisotropy `gamma`; the x and y couplings are `J(1 + gamma)` and `J(1 - gamma)`.
    pub gamma: f64,
    /// Longitudinal exchange `Jz`.
    pub jz: f64,
    /// DM strength along the axis chosen by `variant`.
    pub d: f64,
}

impl ModelParams {
    pub fn new(variant: Variant, j: f64, gamma: f64, jz: f64, d: f64) -> Result<Self> {
        let p = ModelParams {
            variant,
            j,
            gamma,
            jz,
            d,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if [self.j, self.gamma, self.jz, self.d]
            .iter()
            .all(|x| x.is_finite())
        {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "non-finite coupling in {self:?}"
            )))
        }
    }
}

fn pauli_pair(a: usize, b: usize) -> Matrix4C {
    tensor2(&pauli(a), &pauli(b))
}

/// Sum of Pauli tensor terms for the chosen variant.
pub fn build_hamiltonian(p: &ModelParams) -> Matrix4C {
    let (x, y, z) = (1, 2, 3);
    let exchange = pauli_pair(x, x).scale(p.j * (1.0 + p.gamma))
        + pauli_pair(y, y).scale(p.j * (1.0 - p.gamma))
        + pauli_pair(z, z).scale(p.jz);
    let dm = match p.variant {
        Variant::Dz => pauli_pair(x, y) - pauli_pair(y, x),
        Variant::Dx => pauli_pair(y, z) - pauli_pair(z, y),
    };
    exchange + dm.scale(p.d)
}

/// Phase `chi = (J - i D) / sqrt(J^2 + D^2)` of the Dz eigenvectors; 1 when `J = D = 0`.
pub fn dz_chi(j: f64, d: f64) -> C64 {
    let r = j.hypot(d);
    if r == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        C64::new(j / r, -d / r)
    }
}

/// Mixing angles `(phi1, phi2)` of the Dx eigenvectors psi_x3, psi_x4.
///
/// `phi = arctan(2D / (r -+ a))` with `a = J(1 - gamma) + Jz`, `r = sqrt(a^2 + 4D^2)`.
/// A 0/0 argument maps to pi/2, except when both are 0/0 (then `phi2 = 0`
/// so the two vectors stay orthogonal).
pub fn dx_angles(j: f64, gamma: f64, jz: f64, d: f64) -> (f64, f64) {
    let a = j * (1.0 - gamma) + jz;
    let two_d = 2.0 * d;
    let r = a.hypot(two_d);
    if r == 0.0 {
        return (FRAC_PI_2, 0.0);
    }
    // atan(2D / (r - a)) == atan((r + a) / 2D); use whichever avoids cancellation.
    if a >= 0.0 {
        let phi1 = if two_d == 0.0 {
            FRAC_PI_2
        } else {
            ((r + a) / two_d).atan()
        };
        (phi1, (two_d / (r + a)).atan())
    } else {
        let phi2 = if two_d == 0.0 {
            FRAC_PI_2
        } else {
            ((r - a) / two_d).atan()
        };
        ((two_d / (r - a)).atan(), phi2)
    }
}

fn ket(c00: C64, c01: C64, c10: C64, c11: C64) -> Vector4C {
    [c00, c01, c10, c11].map(|z| z * FRAC_1_SQRT_2)
}

/// Closed-form energies and eigenvectors, in the conventional E1..E4 order
/// (not sorted).
pub fn analytic_spectrum(p: &ModelParams) -> Result<Spectrum> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match p.variant {
        Variant::Dz => {
            let root = p.j.hypot(p.d);
            let chi = dz_chi(p.j, p.d);
            let energies = [
                p.jz + 2.0 * p.j * p.gamma,
                p.jz - 2.0 * p.j * p.gamma,
                -p.jz + 2.0 * root,
                -p.jz - 2.0 * root,
            ];
            let vectors = [
                ket(one, zero, zero, one),
                ket(one, zero, zero, -one),
                ket(zero, one, chi, zero),
                ket(zero, one, -chi, zero),
            ];
            Spectrum::new(energies, vectors)
        }
        Variant::Dx => {
            let a = p.j * (1.0 - p.gamma) + p.jz;
            let root = a.hypot(2.0 * p.d);
            let (phi1, phi2) = dx_angles(p.j, p.gamma, p.jz, p.d);
            let energies = [
                2.0 * p.j - p.jz,
                2.0 * p.j * p.gamma + p.jz,
                -p.j * (1.0 + p.gamma) + root,
                -p.j * (1.0 + p.gamma) - root,
            ];
            let (s1, c1) = phi1.sin_cos();
            let (s2, c2) = phi2.sin_cos();
            let vectors = [
                ket(zero, one, one, zero),
                ket(one, zero, zero, one),
                ket(one * s1, -i * c1, i * c1, -one * s1),
                ket(one * s2, i * c2, -i * c2, -one * s2),
            ];
            Spectrum::new(energies, vectors)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::herm_eig;
    use proptest::prelude::*;

    fn params(variant: Variant, j: f64, gamma: f64, jz: f64, d: f64) -> ModelParams {
        ModelParams::new(variant, j, gamma, jz, d).unwrap()
    }

    #[test]
    fn all_zero_couplings() {
        let h = build_hamiltonian(&params(Variant::Dz, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(h, Matrix4C::zeros());
    }

    #[test]
    fn xx_plus_yy_hops_between_01_and_10() {
        let h = build_hamiltonian(&params(Variant::Dz, 1.0, 0.0, 0.0, 0.0));
        assert_eq!(h[(1, 2)], C64::new(2.0, 0.0));
        assert_eq!(h[(2, 1)], C64::new(2.0, 0.0));
        assert_eq!(h[(0, 3)], C64::new(0.0, 0.0));
        for k in 0..4 {
            assert_eq!(h[(k, k)], C64::new(0.0, 0.0));
        }
        // brute force: explicit Kronecker sums, index by index
        let x = pauli(1);
        let y = pauli(2);
        for r in 0..4 {
            for c in 0..4 {
                let e = x.0[r >> 1][c >> 1] * x.0[r & 1][c & 1]
                    + y.0[r >> 1][c >> 1] * y.0[r & 1][c & 1];
                assert_eq!(h[(r, c)], e);
            }
        }
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        for v in [Variant::Dz, Variant::Dx] {
            let h = build_hamiltonian(&params(v, 0.7, -0.3, 1.1, 2.5));
            assert!(h.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn dz_reference_spectrum() {
        let p = params(Variant::Dz, 1.0, 0.2, 1.0, 2.0);
        let s = analytic_spectrum(&p).unwrap();
        let r5 = 5f64.sqrt();
        let expected = [1.4, 0.6, -1.0 + 2.0 * r5, -1.0 - 2.0 * r5];
        for (e, x) in s.energies().iter().zip(expected) {
            assert!((e - x).abs() < 1e-12);
        }
        let chi = dz_chi(1.0, 2.0);
        assert!((chi - C64::new(1.0 / r5, -2.0 / r5)).norm() < 1e-15);
        let numeric = herm_eig(&build_hamiltonian(&p)).unwrap();
        let mut sorted = expected;
        sorted.sort_by(f64::total_cmp);
        for (e, x) in numeric.energies().iter().zip(sorted) {
            assert!((e - x).abs() < 1e-10);
        }
        assert!(s.max_residual(&build_hamiltonian(&p)) < 1e-12);
    }

    #[test]
    fn dx_reference_spectrum() {
        let p = params(Variant::Dx, 1.0, 0.2, 1.0, 2.0);
        let s = analytic_spectrum(&p).unwrap();
        let r = 19.24f64.sqrt();
        let expected = [1.0, 1.4, -1.2 + r, -1.2 - r];
        for (e, x) in s.energies().iter().zip(expected) {
            assert!((e - x).abs() < 1e-12);
        }
        let h = build_hamiltonian(&p);
        assert!(s.max_residual(&h) < 1e-10);
        let numeric = herm_eig(&h).unwrap();
        for (e, x) in numeric.energies().iter().zip(s.sorted_energies()) {
            assert!((e - x).abs() < 1e-10);
        }
    }

    #[test]
    fn dz_chi_limit_gives_bell_pair() {
        let p = params(Variant::Dz, 1.0, 0.0, 0.0, 0.0);
        let s = analytic_spectrum(&p).unwrap();
        assert_eq!(s.energies(), &[0.0, 0.0, 2.0, -2.0]);
        let h = s.vectors()[2];
        assert!((h[1] - h[2]).norm() < 1e-15);
        let zero = params(Variant::Dz, 0.0, 0.3, 0.5, 0.0);
        let s = analytic_spectrum(&zero).unwrap();
        assert!(s.max_residual(&build_hamiltonian(&zero)) < 1e-14);
    }

    #[test]
    fn dx_degenerate_limits() {
        // D = 0 with a > 0, a < 0, and a = 0
        for (j, g, jz) in [(1.0, 0.2, 1.0), (-1.0, 0.2, -2.0), (1.0, 0.5, -0.5)] {
            let p = params(Variant::Dx, j, g, jz, 0.0);
            let s = analytic_spectrum(&p).unwrap();
            assert!(s.max_residual(&build_hamiltonian(&p)) < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn literal_sign_reading_fails_residual() {
        // The split-sign form arctan(2D / (r - J(1-g) + Jz)) does not give an eigenvector
        let (j, g, jz, d) = (1.0f64, 0.2, 1.0, 2.0);
        let r = (j * (1.0 - g) + jz).hypot(2.0 * d);
        let phi = (2.0 * d / (r - j * (1.0 - g) + jz)).atan();
        let (s1, c1) = phi.sin_cos();
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let v = ket(one * s1, -i * c1, i * c1, -one * s1);
        let e = -j * (1.0 + g) + r;
        let hv = build_hamiltonian(&params(Variant::Dx, j, g, jz, d)).apply(&v);
        let res: f64 = (0..4)
            .map(|k| (hv[k] - v[k] * e).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res > 0.1);
    }

    proptest! {
        #[test]
        fn analytic_matches_numeric(variant in prop_oneof![Just(Variant::Dz), Just(Variant::Dx)],
                                    j in -3.0f64..3.0, g in -3.0f64..3.0, jz in -3.0f64..3.0, d in -3.0f64..3.0) {
            let p = params(variant, j, g, jz, d);
            let h = build_hamiltonian(&p);
            let a = analytic_spectrum(&p).unwrap();
            let n = herm_eig(&h).unwrap();
            for (x, y) in a.sorted_energies().iter().zip(n.energies()) {
                prop_assert!((x - y).abs() < 1e-10);
            }
            prop_assert!(a.max_residual(&h) < 1e-10);
        }

        #[test]
        fn dz_energies_symmetric_in_j(j in -3.0f64..3.0, g in -3.0f64..3.0, jz in -3.0f64..3.0, d in -3.0f64..3.0) {
            let a = analytic_spectrum(&params(Variant::Dz, j, g, jz, d)).unwrap().sorted_energies();
            let b = analytic_spectrum(&params(Variant::Dz, -j, g, jz, d)).unwrap().sorted_energies();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn chi_is_unimodular(j in -3.0f64..3.0, d in -3.0f64..3.0) {
            prop_assume!(j != 0.0 || d != 0.0);
            prop_assert!((dz_chi(j, d).norm() - 1.0).abs() < 1e-14);
        }
    }
}
