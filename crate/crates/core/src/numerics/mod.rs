//! Dense complex linear algebra for two-qubit (4x4) and single-qubit (2x2) operators.

mod density;
mod eigen;
mod matrix;

pub use density::DensityMatrix;
pub use eigen::{
    herm_eig, psd_sqrt, singular_values, Spectrum, JACOBI_REL_TOL, MAX_SWEEPS, RANK_FLOOR,
};
pub use matrix::{inner, pauli, tensor2, vector_norm, Matrix2C, Matrix4C, Vector4C};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Basis ket `|b1 b2>` as a vector.
pub fn basis_ket(index: usize) -> Vector4C {
    std::array::from_fn(|i| {
        if i == index {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
