use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A state vector over (|00>, |01>, |10>, |11>).
pub type Vector4C = [C64; 4];

/// `<u|v>`
pub fn inner(u: &Vector4C, v: &Vector4C) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vector_norm(v: &Vector4C) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Single-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2C(pub [[C64; 2]; 2]);

impl Matrix2C {
    pub fn identity() -> Self {
        Matrix2C([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn adjoint(&self) -> Self {
        let a = &self.0;
        Matrix2C([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;

    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Matrix2C(out)
    }
}

impl Add for Matrix2C {
    type Output = Matrix2C;

    fn add(self, rhs: Matrix2C) -> Matrix2C {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Mul<C64> for Matrix2C {
    type Output = Matrix2C;

    fn mul(self, rhs: C64) -> Matrix2C {
        Matrix2C(self.0.map(|row| row.map(|z| z * rhs)))
    }
}

/// Identity, sigma_x, sigma_y, sigma_z for `index` 0..=3.
///
/// # Panics
/// If `index > 3`.
pub fn pauli(index: usize) -> Matrix2C {
    let i = C64::new(0.0, 1.0);
    match index {
        0 => Matrix2C::identity(),
        1 => Matrix2C([[ZERO, ONE], [ONE, ZERO]]),
        2 => Matrix2C([[ZERO, -i], [i, ZERO]]),
        3 => Matrix2C([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index {index} out of range"),
    }
}

/// Dense 4x4 complex matrix in the fixed two-qubit basis (|00>, |01>, |10>, |11>).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4C(pub [[C64; 4]; 4]);

impl Default for Matrix4C {
    fn default() -> Self {
        Self::zeros()
    }
}

impl Matrix4C {
    pub fn zeros() -> Self {
        Matrix4C([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([1.0; 4])
    }

    pub fn from_real_diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = C64::new(x, 0.0);
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Matrix4C(rows.map(|r| r.map(|x| C64::new(x, 0.0))))
    }

    /// `|u><v|`
    pub fn outer(u: &Vector4C, v: &Vector4C) -> Self {
        Matrix4C(u.map(|ui| v.map(|vj| ui * vj.conj())))
    }

    pub fn projector(v: &Vector4C) -> Self {
        Self::outer(v, v)
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Matrix4C(self.0.map(|r| r.map(|z| z.conj())))
    }

    pub fn scale(&self, s: f64) -> Self {
        Matrix4C(self.0.map(|r| r.map(|z| z * s)))
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn apply(&self, v: &Vector4C) -> Vector4C {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// `A B - B A`
    pub fn commutator(&self, other: &Matrix4C) -> Matrix4C {
        *self * *other - *other * *self
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix4C) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entry of `|M - M^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(M + M^dagger) / 2`
    pub fn hermitian_part(&self) -> Matrix4C {
        (*self + self.adjoint()).scale(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Expectation value `<v|M|v>`.
    pub fn expectation(&self, v: &Vector4C) -> C64 {
        inner(v, &self.apply(v))
    }
}

impl Index<(usize, usize)> for Matrix4C {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4C {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for Matrix4C {
    type Output = Matrix4C;

    fn add(mut self, rhs: Matrix4C) -> Matrix4C {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix4C {
    type Output = Matrix4C;

    fn sub(mut self, rhs: Matrix4C) -> Matrix4C {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Neg for Matrix4C {
    type Output = Matrix4C;

    fn neg(self) -> Matrix4C {
        Matrix4C(self.0.map(|r| r.map(|z| -z)))
    }
}

impl Mul for Matrix4C {
    type Output = Matrix4C;

    fn mul(self, rhs: Matrix4C) -> Matrix4C {
        let mut out = Matrix4C::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl Mul<C64> for Matrix4C {
    type Output = Matrix4C;

    fn mul(self, rhs: C64) -> Matrix4C {
        Matrix4C(self.0.map(|r| r.map(|z| z * rhs)))
    }
}

impl Mul<f64> for Matrix4C {
    type Output = Matrix4C;

    fn mul(self, rhs: f64) -> Matrix4C {
        self.scale(rhs)
    }
}

/// Kronecker product `A ⊗ B`; `A` acts on the first qubit.
pub fn tensor2(a: &Matrix2C, b: &Matrix2C) -> Matrix4C {
    let mut m = Matrix4C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}
