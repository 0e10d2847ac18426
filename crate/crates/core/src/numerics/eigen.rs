//! Cyclic complex Jacobi routines for 4x4 Hermitian matrices.
//!
//! The matrices in this crate are tiny, so every routine favours stability and
//! reproducibility: fixed sweep order, no pivoting heuristics, bounded sweeps.

use std::cmp::Ordering;

use super::matrix::{inner, vector_norm, Matrix4C, Vector4C};
use super::{C64, HERMITIAN_TOL, ORTHONORMAL_TOL, PSD_TOL};
use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which a sweep counts as converged, relative to `||M||_F`.
pub const JACOBI_REL_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues paired with orthonormal eigenvectors.
///
/// `vectors[m]` is the eigenvector belonging to `energies[m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    energies: [f64; 4],
    vectors: [Vector4C; 4],
}

impl Spectrum {
    /// Validates finiteness, unit norms and pairwise orthogonality (tolerance 1e-10).
    pub fn new(energies: [f64; 4], vectors: [Vector4C; 4]) -> Result<Self> {
        if energies.iter().any(|e| !e.is_finite())
            || vectors
                .iter()
                .flatten()
                .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let spectrum = Spectrum { energies, vectors };
        let defect = spectrum.orthonormality_defect();
        if defect > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(spectrum)
    }

    pub fn energies(&self) -> &[f64; 4] {
        &self.energies
    }

    pub fn vectors(&self) -> &[Vector4C; 4] {
        &self.vectors
    }

    /// Largest `|<v_i|v_j> - delta_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let target = if i == j { 1.0 } else { 0.0 };
                let d = (inner(&self.vectors[i], &self.vectors[j]) - C64::new(target, 0.0)).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Columns of the returned matrix are the eigenvectors.
    pub fn basis_matrix(&self) -> Matrix4C {
        let mut v = Matrix4C::zeros();
        for (m, vec) in self.vectors.iter().enumerate() {
            for (i, z) in vec.iter().enumerate() {
                v[(i, m)] = *z;
            }
        }
        v
    }

    /// `sum_m E_m |v_m><v_m|`
    pub fn reconstruct(&self) -> Matrix4C {
        self.energies
            .iter()
            .zip(&self.vectors)
            .fold(Matrix4C::zeros(), |acc, (e, v)| {
                acc + Matrix4C::projector(v).scale(*e)
            })
    }

    /// Largest `||H v_m - E_m v_m||` over the four pairs.
    pub fn max_residual(&self, h: &Matrix4C) -> f64 {
        self.energies
            .iter()
            .zip(&self.vectors)
            .map(|(e, v)| {
                let hv = h.apply(v);
                let r: Vector4C = std::array::from_fn(|i| hv[i] - v[i] * *e);
                vector_norm(&r)
            })
            .fold(0.0, f64::max)
    }

    /// Energies sorted ascending (copy).
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.energies;
        e.sort_by(f64::total_cmp);
        e
    }

    pub fn spectral_radius(&self) -> f64 {
        self.energies.iter().map(|e| e.abs()).fold(0.0, f64::max)
    }
}

/// Unitary acting on columns `p`, `q` that zeroes the `(p, q)` entry of a Hermitian
/// matrix whose relevant entries are `app`, `aqq` (real) and `apq`.
#[derive(Clone, Copy)]
struct Rotation {
    p: usize,
    q: usize,
    upp: C64,
    upq: C64,
    uqp: C64,
    uqq: C64,
}

impl Rotation {
    fn new(p: usize, q: usize, app: f64, aqq: f64, apq: C64) -> Option<Self> {
        let mag = apq.norm();
        if mag == 0.0 {
            return None;
        }
        let phase = apq / mag;
        let theta = (aqq - app) / (2.0 * mag);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let pc = phase.conj();
        Some(Rotation {
            p,
            q,
            upp: C64::new(c, 0.0),
            upq: C64::new(s, 0.0),
            uqp: pc * (-s),
            uqq: pc * c,
        })
    }

    /// `M <- M U`
    fn apply_right(&self, m: &mut Matrix4C) {
        for k in 0..4 {
            let mp = m[(k, self.p)];
            let mq = m[(k, self.q)];
            m[(k, self.p)] = mp * self.upp + mq * self.uqp;
            m[(k, self.q)] = mp * self.upq + mq * self.uqq;
        }
    }

    /// `M <- U^dagger M`
    fn apply_left_adjoint(&self, m: &mut Matrix4C) {
        for k in 0..4 {
            let mp = m[(self.p, k)];
            let mq = m[(self.q, k)];
            m[(self.p, k)] = self.upp.conj() * mp + self.uqp.conj() * mq;
            m[(self.q, k)] = self.upq.conj() * mp + self.uqq.conj() * mq;
        }
    }
}

fn off_diagonal_norm(a: &Matrix4C) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Rotate so the first component with modulus above 1e-12 is real and positive.
fn normalize_phase(v: &mut Vector4C) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-12).copied() {
        let rot = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= rot;
        }
    }
}

fn lexicographic(a: &Vector4C, b: &Vector4C) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Energies come back ascending. Eigenvalues closer than `1e-12 * max(1, |E|max)`
/// form a degenerate cluster whose vectors (phase-normalized) are ordered
/// lexicographically, so repeated runs are bit-identical.
pub fn herm_eig(m: &Matrix4C) -> Result<Spectrum> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let mut a = m.hermitian_part();
    for i in 0..4 {
        a[(i, i)].im = 0.0;
    }
    let mut v = Matrix4C::identity();
    let scale = a.frobenius_norm();

    let mut converged = scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_norm(&a) <= JACOBI_REL_TOL * scale {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let Some(rot) = Rotation::new(p, q, a[(p, p)].re, a[(q, q)].re, a[(p, q)]) else {
                    continue;
                };
                rot.apply_right(&mut a);
                rot.apply_left_adjoint(&mut a);
                rot.apply_right(&mut v);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut pairs: Vec<(f64, Vector4C)> = (0..4)
        .map(|k| {
            let mut vec: Vector4C = std::array::from_fn(|i| v[(i, k)]);
            normalize_phase(&mut vec);
            (a[(k, k)].re, vec)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    let cluster_tol = 1e-12 * pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && pairs[end].0 - pairs[end - 1].0 <= cluster_tol {
            end += 1;
        }
        pairs[start..end].sort_by(|x, y| lexicographic(&x.1, &y.1));
        start = end;
    }

    Spectrum::new(
        std::array::from_fn(|k| pairs[k].0),
        std::array::from_fn(|k| pairs[k].1),
    )
}

/// Eigenvalues at or below this fraction of the largest one are rounding noise
/// and treated as exact zeros by [`psd_sqrt`].
pub const RANK_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-1e-9, 0)` are clipped to zero; anything lower is an error.
/// Eigenvalues below `RANK_FLOOR * max` are zeroed too, otherwise their square
/// roots (~1e-8) would swamp rank-deficient inputs such as pure states.
pub fn psd_sqrt(m: &Matrix4C) -> Result<Matrix4C> {
    let spec = herm_eig(m)?;
    let floor = RANK_FLOOR * spec.energies[3].max(0.0);
    let mut out = Matrix4C::zeros();
    for (e, v) in spec.energies.iter().zip(&spec.vectors) {
        if *e < -PSD_TOL {
            return Err(Error::NegativeEigenvalue(*e));
        }
        if *e > floor {
            out = out + Matrix4C::projector(v).scale(e.sqrt());
        }
    }
    Ok(out)
}

/// Singular values (descending) by one-sided Hestenes-Jacobi orthogonalization.
///
/// Works on the columns directly, never forming `A^dagger A`, so tiny singular
/// values keep absolute accuracy near `eps * ||A||` instead of `sqrt(eps)`.
pub fn singular_values(a: &Matrix4C) -> Result<[f64; 4]> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut w = *a;
    // Columns below eps * |A|_F are rounding noise; rotating them against each
    // other or against a large column only reshuffles that noise and never settles.
    let floor = (f64::EPSILON * a.frobenius_norm()).powi(2);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = C64::new(0.0, 0.0);
                for k in 0..4 {
                    alpha += w[(k, p)].norm_sqr();
                    beta += w[(k, q)].norm_sqr();
                    gamma += w[(k, p)].conj() * w[(k, q)];
                }
                if alpha.min(beta) <= floor || gamma.norm() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                if let Some(rot) = Rotation::new(p, q, alpha, beta, gamma) {
                    rot.apply_right(&mut w);
                    rotated = true;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let mut sv: [f64; 4] =
        std::array::from_fn(|k| (0..4).map(|i| w[(i, k)].norm_sqr()).sum::<f64>().sqrt());
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_matrix(vals: &[f64]) -> Matrix4C {
        let mut m = Matrix4C::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = c(vals[2 * (4 * i + j)], vals[2 * (4 * i + j) + 1]);
            }
        }
        m
    }

    fn random_hermitian(vals: &[f64]) -> Matrix4C {
        random_matrix(vals).hermitian_part()
    }

    #[test]
    fn identity_spectrum() {
        let s = herm_eig(&Matrix4C::identity()).unwrap();
        assert_eq!(s.energies(), &[1.0; 4]);
        assert!(s.orthonormality_defect() < 1e-15);
    }

    #[test]
    fn diagonal_spectrum_is_standard_basis() {
        let s = herm_eig(&Matrix4C::from_real_diagonal([3.0, 1.0, 4.0, 2.0])).unwrap();
        assert_eq!(s.energies(), &[1.0, 2.0, 3.0, 4.0]);
        let expected_index = [1, 3, 0, 2];
        for (m, idx) in expected_index.iter().enumerate() {
            for i in 0..4 {
                let target = if i == *idx { 1.0 } else { 0.0 };
                assert_eq!(s.vectors()[m][i], c(target, 0.0));
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = Matrix4C::identity();
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn rejects_nan() {
        let mut m = Matrix4C::identity();
        m[(2, 2)] = c(f64::NAN, 0.0);
        assert!(matches!(herm_eig(&m), Err(Error::NonFinite)));
    }

    #[test]
    fn degenerate_ordering_is_deterministic() {
        let m = Matrix4C::from_real_diagonal([1.0, 2.0, 1.0, 2.0]);
        let a = herm_eig(&m).unwrap();
        let b = herm_eig(&m).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.energies(), &[1.0, 1.0, 2.0, 2.0]);
        // cluster order: lexicographic => |10> (0,0,1,0) sorts before |00> (1,0,0,0)
        assert_eq!(a.vectors()[0][2], c(1.0, 0.0));
        assert_eq!(a.vectors()[1][0], c(1.0, 0.0));
    }

    #[test]
    fn psd_sqrt_examples() {
        assert!(
            psd_sqrt(&Matrix4C::identity())
                .unwrap()
                .max_abs_diff(&Matrix4C::identity())
                < 1e-15
        );
        let r = psd_sqrt(&Matrix4C::from_real_diagonal([4.0, 1.0, 0.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&Matrix4C::from_real_diagonal([2.0, 1.0, 0.0, 3.0])) < 1e-15);
        let s = 0.5;
        let v = [c(s, 0.0), c(0.0, s), c(-s, 0.0), c(s, s * 0.0)];
        let norm = vector_norm(&v);
        let v = v.map(|z| z / norm);
        let p = Matrix4C::projector(&v);
        assert!(psd_sqrt(&p).unwrap().max_abs_diff(&p) < 1e-14);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let m = Matrix4C::from_real_diagonal([1.0, -1e-6, 0.0, 0.0]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NegativeEigenvalue(_))));
        let tiny = Matrix4C::from_real_diagonal([1.0, -1e-12, 0.0, 0.0]);
        let r = psd_sqrt(&tiny).unwrap();
        assert_eq!(r[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn singular_values_of_diagonal_and_unitary() {
        let d = Matrix4C::from_real_diagonal([-3.0, 0.5, 2.0, 0.0]);
        assert_eq!(singular_values(&d).unwrap(), [3.0, 2.0, 0.5, 0.0]);
        let yy = crate::numerics::tensor2(&crate::numerics::pauli(2), &crate::numerics::pauli(2));
        let sv = singular_values(&yy).unwrap();
        for x in sv {
            assert!((x - 1.0).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn reconstructs_random_hermitian(vals in proptest::collection::vec(-5.0f64..5.0, 32)) {
            let m = random_hermitian(&vals);
            let s = herm_eig(&m).unwrap();
            prop_assert!(s.reconstruct().max_abs_diff(&m) < 1e-9);
            prop_assert!(s.orthonormality_defect() < 1e-10);
            prop_assert!(s.max_residual(&m) < 1e-9);
            let e = s.energies();
            prop_assert!(e.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn energies_invariant_under_unitary(vals in proptest::collection::vec(-5.0f64..5.0, 32),
                                            gen in proptest::collection::vec(-2.0f64..2.0, 32)) {
            let m = random_hermitian(&vals);
            let u = herm_eig(&random_hermitian(&gen)).unwrap().basis_matrix();
            let conj = u.adjoint() * m * u;
            let a = herm_eig(&m).unwrap();
            let b = herm_eig(&conj.hermitian_part()).unwrap();
            for k in 0..4 {
                prop_assert!((a.energies()[k] - b.energies()[k]).abs() < 1e-9);
            }
        }

        #[test]
        fn sqrt_squares_back(vals in proptest::collection::vec(-2.0f64..2.0, 32)) {
            let a = random_matrix(&vals);
            let m = (a.adjoint() * a).hermitian_part();
            let r = psd_sqrt(&m).unwrap();
            prop_assert!((r * r).max_abs_diff(&m) < 1e-9);
            prop_assert!(r.hermiticity_defect() < 1e-12);
        }

        #[test]
        fn singular_values_match_gram_eigenvalues(vals in proptest::collection::vec(-2.0f64..2.0, 32)) {
            let a = random_matrix(&vals);
            let sv = singular_values(&a).unwrap();
            let gram = herm_eig(&(a.adjoint() * a).hermitian_part()).unwrap();
            let mut from_gram: Vec<f64> = gram.energies().iter().map(|e| e.max(0.0).sqrt()).collect();
            from_gram.sort_by(|x, y| y.total_cmp(x));
            for k in 0..4 {
                prop_assert!((sv[k] - from_gram[k]).abs() < 1e-6);
            }
        }
    }
}
