//! Small dense 2x2 complex matrices, the currency of transfer and monodromy
//! computations.

use num_complex::Complex64;

/// A 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(one, zero, zero, one)
    }

    pub fn zero() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(zero, zero, zero, zero)
    }

    pub fn from_diag(a: Complex64, d: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2::new(a, zero, zero, d)
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        )
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        out
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + rhs.m[0][0],
            self.m[0][1] + rhs.m[0][1],
            self.m[1][0] + rhs.m[1][0],
            self.m[1][1] + rhs.m[1][1],
        )
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] - rhs.m[0][0],
            self.m[0][1] - rhs.m[0][1],
            self.m[1][0] - rhs.m[1][0],
            self.m[1][1] - rhs.m[1][1],
        )
    }

    pub fn norm_fro(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues, by the quadratic formula on the characteristic polynomial.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let t = self.trace();
        let d = self.det();
        let disc = (t * t - d.scale(4.0)).sqrt();
        [(t + disc) * 0.5, (t - disc) * 0.5]
    }

    /// Divide by a square root of the determinant (principal branch), making
    /// the determinant 1. Projective statements do not depend on the branch.
    pub fn det_normalized(&self) -> Mat2 {
        let s = self.det().sqrt();
        Mat2::new(
            self.m[0][0] / s,
            self.m[0][1] / s,
            self.m[1][0] / s,
            self.m[1][1] / s,
        )
    }

    pub fn commutator(&self, rhs: &Mat2) -> Mat2 {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Distance to another matrix in the Frobenius norm.
    pub fn dist(&self, rhs: &Mat2) -> f64 {
        self.sub(rhs).norm_fro()
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Mat2::new(c(1.0, 2.0), c(-0.5, 0.1), c(3.0, 0.0), c(0.2, -1.0));
        let prod = a.mul(&a.inverse());
        assert!(prod.dist(&Mat2::identity()) < 1e-14);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let a = Mat2::from_diag(c(2.0, 0.0), c(0.5, 0.0));
        let [l1, l2] = a.eigenvalues();
        assert!((l1 - c(2.0, 0.0)).norm() < 1e-15);
        assert!((l2 - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn det_normalization_gives_unit_det() {
        let a = Mat2::new(c(2.0, 1.0), c(0.0, 0.3), c(1.0, -1.0), c(4.0, 0.5));
        let n = a.det_normalized();
        assert!((n.det() - c(1.0, 0.0)).norm() < 1e-14);
    }
}
