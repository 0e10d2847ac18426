use super::eigen::herm_eig;
use super::matrix::{vector_norm, Matrix4C, Vector4C};
use super::{C64, HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use crate::error::{Error, Result};

/// A validated two-qubit density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix4C);

impl DensityMatrix {
    /// Validates and normalizes `m`.
    ///
    /// The stored matrix is the Hermitian part of `m`. Eigenvalues in
    /// `[-1e-9, 0)` are clipped to zero and the matrix rebuilt from its spectrum.
    pub fn new(m: Matrix4C) -> Result<Self> {
        Self::with_psd_tolerance(m, PSD_TOL)
    }

    /// As [`DensityMatrix::new`] with a caller-chosen positivity tolerance, for
    /// integrators whose truncation error exceeds the default.
    pub fn with_psd_tolerance(m: Matrix4C, psd_tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let mut h = m.hermitian_part();
        for i in 0..4 {
            h[(i, i)].im = 0.0;
        }
        let tr = h.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace(tr));
        }
        let spec = herm_eig(&h)?;
        let lowest = spec.energies()[0];
        if lowest < -psd_tol {
            return Err(Error::NegativeEigenvalue(lowest));
        }
        if lowest < 0.0 {
            h = spec
                .energies()
                .iter()
                .zip(spec.vectors())
                .filter(|(e, _)| **e > 0.0)
                .fold(Matrix4C::zeros(), |acc, (e, v)| {
                    acc + Matrix4C::projector(v).scale(*e)
                });
        }
        Ok(DensityMatrix(h))
    }

    /// `|v><v|` for a unit vector (norm within 1e-10 of one).
    pub fn from_pure(v: &Vector4C) -> Result<Self> {
        let n = vector_norm(v);
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if (n - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace(n * n));
        }
        Ok(DensityMatrix(Matrix4C::projector(v).hermitian_part()))
    }

    /// `I / 4`
    pub fn maximally_mixed() -> Self {
        DensityMatrix(Matrix4C::identity().scale(0.25))
    }

    pub fn matrix(&self) -> &Matrix4C {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4C {
        self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    /// `tr(rho^2)`
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Diagonal entries in the computational basis.
    pub fn populations(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.0[(i, i)].re)
    }

    /// `p rho_a + (1 - p) rho_b`
    pub fn mix(p: f64, a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {p} outside [0, 1]"
            )));
        }
        DensityMatrix::new(a.0.scale(p) + b.0.scale(1.0 - p))
    }
}

impl AsRef<Matrix4C> for DensityMatrix {
    fn as_ref(&self) -> &Matrix4C {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_trace() {
        let m = Matrix4C::identity().scale(0.3);
        assert!(matches!(DensityMatrix::new(m), Err(Error::BadTrace(_))));
    }

    #[test]
    fn rejects_negative_and_clips_tiny() {
        let bad = Matrix4C::from_real_diagonal([0.6, 0.5, -0.1, 0.0]);
        assert!(matches!(
            DensityMatrix::new(bad),
            Err(Error::NegativeEigenvalue(_))
        ));
        let ok = Matrix4C::from_real_diagonal([0.5, 0.5 + 1e-11, -1e-11, 0.0]);
        let rho = DensityMatrix::new(ok).unwrap();
        assert!(rho.populations().iter().all(|p| *p >= 0.0));
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = Matrix4C::identity().scale(0.25);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn pure_state_purity() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
            C64::new(0.0, s),
            C64::new(0.0, 0.0),
        ];
        let rho = DensityMatrix::from_pure(&v).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        assert!((DensityMatrix::maximally_mixed().purity() - 0.25).abs() < 1e-15);
    }
}
