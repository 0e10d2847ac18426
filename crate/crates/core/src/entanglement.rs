//! Wootters concurrence.

use crate::error::{Error, Result};
use crate::numerics::{pauli, psd_sqrt, singular_values, tensor2, DensityMatrix, Matrix4C, C64};

/// Largest entry allowed outside the {|01>, |10>} block for [`concurrence_dz_closed`].
pub const BLOCK_LEAK_TOL: f64 = 1e-10;

fn sigma_yy() -> Matrix4C {
    tensor2(&pauli(2), &pauli(2))
}

/// Spin-flipped state `S rho* S` with `S = sigma_y (x) sigma_y`.
pub fn spin_flip(rho: &DensityMatrix) -> Matrix4C {
    let s = sigma_yy();
    s * rho.matrix().conj() * s
}

/// Square roots of the eigenvalues of `rho S rho* S`, descending.
///
/// These equal the singular values of `sqrt(rho) S sqrt(rho)*`, which is how they are
/// computed: `(sqrt(rho) S sqrt(rho)*)(...)^dagger = sqrt(rho) rho~ sqrt(rho)` is the
/// Hermitian form, and taking singular values directly avoids square roots of
/// near-zero eigenvalues.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let root = psd_sqrt(rho.matrix())?;
    singular_values(&(root * sigma_yy() * root.conj()))
}

/// `max(0, 2 max(lambda) - sum(lambda))`
pub fn concurrence_from_lambdas(lambdas: &[f64]) -> f64 {
    let max = lambdas.iter().copied().fold(0.0, f64::max);
    let sum: f64 = lambdas.iter().sum();
    (2.0 * max - sum).clamp(0.0, 1.0)
}

/// Wootters concurrence of an arbitrary two-qubit state, in `[0, 1]`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    Ok(concurrence_from_lambdas(&wootters_lambdas(rho)?))
}

/// Closed-form lambdas for states supported on the {|01>, |10>} block:
/// `lambda_{3,4} = sqrt|r22 r33 + r23 r32 +- 2 sqrt(r23 r32 r22 r33)|`, the other two zero.
pub fn dz_closed_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let m = rho.matrix();
    let mut leak = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            let inside = (i == 1 || i == 2) && (j == 1 || j == 2);
            if !inside {
                leak = leak.max(m[(i, j)].norm());
            }
        }
    }
    if leak > BLOCK_LEAK_TOL {
        return Err(Error::NotBlockConfined(leak));
    }
    let (r22, r33, r23, r32) = (m[(1, 1)], m[(2, 2)], m[(1, 2)], m[(2, 1)]);
    let base = r22 * r33 + r23 * r32;
    let cross: C64 = (r23 * r32 * r22 * r33).sqrt() * 2.0;
    let l3 = (base + cross).norm().sqrt();
    let l4 = (base - cross).norm().sqrt();
    Ok([0.0, 0.0, l3, l4])
}

/// Concurrence from [`dz_closed_lambdas`]; errors if the state is not block-confined.
pub fn concurrence_dz_closed(rho: &DensityMatrix) -> Result<f64> {
    Ok(concurrence_from_lambdas(&dz_closed_lambdas(rho)?))
}
