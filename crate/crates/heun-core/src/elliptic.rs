//! Weierstrass elliptic functions: lattice invariants, half-period values,
//! and evaluation of `wp` and `wp'`.
//!
//! Evaluation reduces the argument to the minimal-norm representative modulo
//! the lattice, sums the Laurent series near the origin with recursively
//! generated coefficients, and climbs back out with the duplication formula
//! when the reduced point is outside the series' comfort zone. Minimal-norm
//! reduction keeps every point of the duplication chain at distance at least
//! `r_min/4` from the zeros of `wp'` (the half-periods), so the chain never
//! divides by a small number.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A period lattice together with everything derived from it: invariants
/// `g2, g3`, half-period values `e_j = wp(omega_j/2)`, and the Laurent
/// coefficients used by the evaluator.
#[derive(Debug, Clone)]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
    g2: Complex64,
    g3: Complex64,
    e: [Complex64; 3],
    /// Gauss-reduced basis; `reduced[0]` is a shortest nonzero lattice vector.
    reduced: [Complex64; 2],
    laurent: Vec<Complex64>,
}

impl Lattice {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        let (omega1, omega2) = crate::heun::orient_periods(omega1, omega2)?;
        let (g2, g3) = invariants(omega1, omega2)?;
        let reduced = gauss_reduce(omega1, omega2);
        let laurent = laurent_coefficients(g2, g3, 48);
        let mut lat = Lattice {
            omega1,
            omega2,
            g2,
            g3,
            e: [ZERO; 3],
            reduced,
            laurent,
        };
        let omega3 = omega1 + omega2;
        lat.e = [
            lat.wp(omega1 * 0.5)?,
            lat.wp(omega2 * 0.5)?,
            lat.wp(omega3 * 0.5)?,
        ];
        Ok(lat)
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn g2(&self) -> Complex64 {
        self.g2
    }

    pub fn g3(&self) -> Complex64 {
        self.g3
    }

    /// Half-period values `(e1, e2, e3) = (wp(omega1/2), wp(omega2/2), wp((omega1+omega2)/2))`.
    pub fn e_values(&self) -> [Complex64; 3] {
        self.e
    }

    /// Shortest nonzero lattice vector length.
    pub fn r_min(&self) -> f64 {
        self.reduced[0].norm()
    }

    pub fn wp(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.wp_pair(z)?.0)
    }

    pub fn wp_prime(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.wp_pair(z)?.1)
    }

    /// Evaluate `(wp(z), wp'(z))`.
    pub fn wp_pair(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (z0, _) = reduce_with_basis(z, self.reduced);
        let pole_tol = 1e-12 * self.omega1.norm();
        if z0.norm() <= pole_tol {
            return Err(Error::Pole { z, tol: pole_tol });
        }
        let r_min = self.r_min();
        let theta = 0.4;
        let mut levels = 0u32;
        let mut u = z0;
        while u.norm() > theta * r_min {
            u *= 0.5;
            levels += 1;
        }
        let (mut p, mut dp) = self.series_pair(u)?;
        for _ in 0..levels {
            let (p2, dp2) = self.duplicate(p, dp);
            p = p2;
            dp = dp2;
        }
        Ok((p, dp))
    }

    /// Laurent series at the origin; valid for `|u|` well inside `r_min`.
    fn series_pair(&self, u: Complex64) -> Result<(Complex64, Complex64)> {
        let u2 = u * u;
        let mut p = 1.0 / u2;
        let mut dp = -2.0 / (u2 * u);
        // term for k: c_k u^{2k-2} starting at k = 2
        let mut pow = u2; // u^{2k-2} at k = 2
        let mut converged = false;
        for k in 2..self.laurent.len() {
            let c = self.laurent[k];
            let term = c * pow;
            p += term;
            dp += c * pow / u * ((2 * k - 2) as f64);
            if term.norm() <= 1e-16 * p.norm() && k > 4 {
                converged = true;
                break;
            }
            pow *= u2;
        }
        if !converged {
            return Err(Error::DidNotConverge {
                order: self.laurent.len(),
            });
        }
        Ok((p, dp))
    }

    /// `(wp(2u), wp'(2u))` from `(wp(u), wp'(u))` by the curve's doubling law.
    fn duplicate(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let psi = 6.0 * x * x - self.g2 * 0.5; // wp''(u)
        let s = psi / y;
        let x2 = s * s * 0.25 - 2.0 * x;
        let y2 = -(y + s * (x2 - x));
        (x2, y2)
    }

    /// Taylor coefficients of `wp` at a regular point `delta`, from the pair
    /// `(wp(delta), wp'(delta))` and the recursion induced by
    /// `wp'' = 6 wp^2 - g2/2`.
    pub fn wp_taylor(&self, delta: Complex64, order: usize) -> Result<Vec<Complex64>> {
        let (a0, a1) = self.wp_pair(delta)?;
        let mut a = vec![ZERO; order + 1];
        a[0] = a0;
        if order >= 1 {
            a[1] = a1;
        }
        for m in 0..order.saturating_sub(1) {
            let mut conv = ZERO;
            for l in 0..=m {
                conv += a[l] * a[m - l];
            }
            let mut rhs = 6.0 * conv;
            if m == 0 {
                rhs -= self.g2 * 0.5;
            }
            a[m + 2] = rhs / (((m + 1) * (m + 2)) as f64);
        }
        Ok(a)
    }
}

/// Lattice invariants `g2 = 60 sum' w^-4`, `g3 = 140 sum' w^-6`. The sums are
/// evaluated row-by-row in the Eisenstein rearrangement (Lambert series in
/// the nome), truncated when the next term falls below 1e-14 of the partial
/// sum; a direct square truncation cannot reach that tail in usable time.
pub fn invariants(omega1: Complex64, omega2: Complex64) -> Result<(Complex64, Complex64)> {
    let (omega1, omega2) = crate::heun::orient_periods(omega1, omega2)?;
    let tau = omega2 / omega1;
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut e6 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..10_000u32 {
        qn *= q;
        let nf = n as f64;
        let geom = qn / (1.0 - qn);
        let t4 = 240.0 * nf.powi(3) * geom;
        let t6 = 504.0 * nf.powi(5) * geom;
        e4 += t4;
        e6 -= t6;
        if t4.norm() <= 1e-14 * e4.norm() && t6.norm() <= 1e-14 * e6.norm() && n > 4 {
            break;
        }
    }
    let w4 = omega1.powi(4);
    let w6 = omega1.powi(6);
    let g2 = e4 * (4.0 * PI.powi(4) / 3.0) / w4;
    let g3 = e6 * (8.0 * PI.powi(6) / 27.0) / w6;
    Ok((g2, g3))
}

/// Laurent coefficients `c_k` of `wp(z) = z^-2 + sum_{k>=2} c_k z^{2k-2}`.
fn laurent_coefficients(g2: Complex64, g3: Complex64, order: usize) -> Vec<Complex64> {
    let mut c = vec![ZERO; order.max(4)];
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for k in 4..c.len() {
        let mut s = ZERO;
        for m in 2..=(k - 2) {
            s += c[m] * c[k - m];
        }
        c[k] = s * (3.0 / ((2 * k + 1) as f64 * (k as f64 - 3.0)));
    }
    c
}

/// Gauss-reduce a lattice basis so that `b1` is a shortest nonzero vector and
/// `|b2|` is minimal given `b1`.
fn gauss_reduce(omega1: Complex64, omega2: Complex64) -> [Complex64; 2] {
    let mut b1 = omega1;
    let mut b2 = omega2;
    if b1.norm_sqr() > b2.norm_sqr() {
        std::mem::swap(&mut b1, &mut b2);
    }
    for _ in 0..64 {
        // project b2 onto b1 over the reals and peel off the integer part
        let mu = (b2 * b1.conj()).re / b1.norm_sqr();
        let k = mu.round();
        b2 -= b1.scale(k);
        if b2.norm_sqr() >= b1.norm_sqr() {
            break;
        }
        std::mem::swap(&mut b1, &mut b2);
    }
    [b1, b2]
}

fn reduce_with_basis(z: Complex64, basis: [Complex64; 2]) -> (Complex64, Complex64) {
    let [b1, b2] = basis;
    let det = b1.re * b2.im - b2.re * b1.im;
    let a = (z.re * b2.im - b2.re * z.im) / det;
    let b = (b1.re * z.im - z.re * b1.im) / det;
    let (m0, n0) = (a.round(), b.round());
    let mut best = z - b1.scale(m0) - b2.scale(n0);
    let mut shift = b1.scale(m0) + b2.scale(n0);
    for dm in -2i32..=2 {
        for dn in -2i32..=2 {
            let cand_shift = b1.scale(m0 + dm as f64) + b2.scale(n0 + dn as f64);
            let cand = z - cand_shift;
            if cand.norm_sqr() < best.norm_sqr() {
                best = cand;
                shift = cand_shift;
            }
        }
    }
    (best, shift)
}

/// Minimal-norm representative of `z` modulo the lattice spanned by
/// `omega1, omega2`; returns `(reduced, translate)` with
/// `z = reduced + translate`.
pub fn reduce_to_cell(z: Complex64, omega1: Complex64, omega2: Complex64) -> (Complex64, Complex64) {
    reduce_with_basis(z, gauss_reduce(omega1, omega2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct truncated lattice sums for the invariants; slow convergence, so
    /// compare at a matching tolerance.
    fn invariants_brute(omega1: Complex64, omega2: Complex64, n: i64) -> (Complex64, Complex64) {
        let mut s4 = ZERO;
        let mut s6 = ZERO;
        for m in -n..=n {
            for k in -n..=n {
                if m == 0 && k == 0 {
                    continue;
                }
                let w = omega1.scale(m as f64) + omega2.scale(k as f64);
                let w2 = w * w;
                let w4 = w2 * w2;
                s4 += 1.0 / w4;
                s6 += 1.0 / (w4 * w2);
            }
        }
        (s4.scale(60.0), s6.scale(140.0))
    }

    #[test]
    fn square_lattice_g3_vanishes() {
        let (g2, g3) = invariants(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!(g3.norm() < 1e-12, "g3 = {g3}");
        assert!(g2.norm() > 1.0);
        assert!(g2.im.abs() < 1e-12);
    }

    #[test]
    fn hexagonal_lattice_g2_vanishes() {
        let w2 = Complex64::from_polar(1.0, PI / 3.0);
        let (g2, g3) = invariants(c(1.0, 0.0), w2).unwrap();
        assert!(g2.norm() < 1e-12, "g2 = {g2}");
        assert!(g3.norm() > 1.0);
    }

    #[test]
    fn invariants_match_brute_force_sums() {
        let (g2, g3) = invariants(c(1.0, 0.0), c(0.0, 2.0)).unwrap();
        let (b2, b3) = invariants_brute(c(1.0, 0.0), c(0.0, 2.0), 600);
        // square truncation tails: ~N^-2 for g2, ~N^-4 for g3
        assert!((g2 - b2).norm() < 1e-4 * g2.norm(), "{g2} vs {b2}");
        assert!((g3 - b3).norm() < 1e-8 * g3.norm(), "{g3} vs {b3}");
    }

    #[test]
    fn degenerate_lattice_rejected() {
        assert!(invariants(c(1.0, 0.0), c(2.0, 0.0)).is_err());
        assert!(Lattice::new(c(1.0, 0.0), c(-3.0, 0.0)).is_err());
    }

    #[test]
    fn half_period_values_are_consistent() {
        for (w1, w2) in [
            (c(1.0, 0.0), c(0.0, 1.0)),
            (c(1.0, 0.0), c(0.3, 1.1)),
            (c(2.0, 0.0), c(0.0, 1.4)),
        ] {
            let lat = Lattice::new(w1, w2).unwrap();
            let [e1, e2, e3] = lat.e_values();
            let scale = e1.norm().max(e2.norm()).max(e3.norm());
            assert!(
                (e1 + e2 + e3).norm() < 1e-10 * scale,
                "e-sum = {}",
                (e1 + e2 + e3).norm()
            );
            // e_j really is wp at the half-period
            let p1 = lat.wp(lat.omega1() * 0.5).unwrap();
            assert!((p1 - e1).norm() < 1e-10 * scale);
        }
    }

    #[test]
    fn square_lattice_half_period_symmetry() {
        // multiplication by i maps the lattice to itself and wp to -wp, so
        // the half-period value at (omega1+omega2)/2 vanishes and the other
        // two are opposite.
        let lat = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let [e1, e2, e3] = lat.e_values();
        let scale = e1.norm();
        assert!(e3.norm() < 1e-10 * scale, "e3 = {e3}");
        assert!((e1 + e2).norm() < 1e-10 * scale, "e1 + e2 = {}", e1 + e2);
        assert!(e1.re > 0.0);
    }

    /// Defining sum with the pair trick (symmetric truncation), used as an
    /// independent check of the evaluator at moderate accuracy.
    fn wp_brute(z: Complex64, omega1: Complex64, omega2: Complex64, n: i64) -> Complex64 {
        let mut s = 1.0 / (z * z);
        for m in -n..=n {
            for k in -n..=n {
                if m == 0 && k == 0 {
                    continue;
                }
                let w = omega1.scale(m as f64) + omega2.scale(k as f64);
                let d = z - w;
                s += 1.0 / (d * d) - 1.0 / (w * w);
            }
        }
        s
    }

    #[test]
    fn wp_matches_brute_force_series() {
        let lat = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        for z in [c(0.5, 0.0), c(0.21, 0.17), c(0.5, 0.5), c(0.05, 0.4)] {
            let fast = lat.wp(z).unwrap();
            let brute = wp_brute(z, c(1.0, 0.0), c(0.0, 1.0), 400);
            let scale = fast.norm().max(1.0);
            assert!(
                (fast - brute).norm() < 2e-5 * scale,
                "z = {z}: {fast} vs {brute}"
            );
        }
    }

    #[test]
    fn wp_is_even() {
        let lat = Lattice::new(c(1.0, 0.0), c(0.2, 1.3)).unwrap();
        for z in [c(0.31, 0.12), c(-0.4, 0.55), c(0.11, -0.61)] {
            let a = lat.wp(z).unwrap();
            let b = lat.wp(-z).unwrap();
            assert!((a - b).norm() <= 1e-11 * a.norm().max(1.0));
            let da = lat.wp_prime(z).unwrap();
            let db = lat.wp_prime(-z).unwrap();
            assert!((da + db).norm() <= 1e-11 * da.norm().max(1.0));
        }
    }

    #[test]
    fn differential_identity_holds() {
        let lattices = [
            (c(1.0, 0.0), c(0.0, 1.0)),
            (c(1.0, 0.0), c(0.5, 0.866_025_403_784_438_6)),
            (c(1.0, 0.0), c(0.0, 2.0)),
            (c(1.3, 0.2), c(-0.1, 1.1)),
            (c(2.0, 0.0), c(0.4, 1.7)),
        ];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut unit = || {
            // splitmix64, mapped to (0, 1)
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut x = state;
            x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
            ((x ^ (x >> 31)) as f64) / (u64::MAX as f64)
        };
        for (w1, w2) in lattices {
            let lat = Lattice::new(w1, w2).unwrap();
            for _ in 0..100 {
                let z = w1.scale(unit() * 0.9 + 0.05) + w2.scale(unit() * 0.9 + 0.05);
                let (p, dp) = lat.wp_pair(z).unwrap();
                let lhs = dp * dp;
                let rhs = 4.0 * p * p * p - lat.g2() * p - lat.g3();
                let scale = lhs.norm().max(rhs.norm()).max(1.0);
                assert!(
                    (lhs - rhs).norm() < 1e-9 * scale,
                    "z = {z}: residual {}",
                    (lhs - rhs).norm() / scale
                );
            }
        }
    }

    #[test]
    fn periodicity() {
        let lat = Lattice::new(c(1.0, 0.0), c(0.3, 1.2)).unwrap();
        let z = c(0.27, 0.33);
        let p = lat.wp(z).unwrap();
        for shift in [lat.omega1(), lat.omega2(), lat.omega1() + lat.omega2()] {
            let q = lat.wp(z + shift).unwrap();
            assert!((p - q).norm() < 1e-10 * p.norm().max(1.0));
        }
    }

    #[test]
    fn homogeneity() {
        let lat = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        for cc in [c(1.7, 0.4), c(0.3, -1.1), c(2.0, 0.0)] {
            let scaled = Lattice::new(cc, cc * c(0.0, 1.0)).unwrap();
            let z = c(0.31, 0.22);
            let lhs = scaled.wp(cc * z).unwrap();
            let rhs = lat.wp(z).unwrap() / (cc * cc);
            assert!(
                (lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0),
                "c = {cc}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn pole_is_rejected() {
        let lat = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!(matches!(lat.wp(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(lat.wp(c(1.0, 1.0)), Err(Error::Pole { .. })));
        assert!(lat.wp(c(1e-13, 0.0)).is_err());
    }

    #[test]
    fn taylor_expansion_matches_direct_evaluation() {
        let lat = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let delta = c(0.5, 0.5) * 0.5 + c(0.1, 0.05);
        let a = lat.wp_taylor(delta, 12).unwrap();
        let h = c(0.03, -0.02);
        let mut series = ZERO;
        let mut pow = Complex64::new(1.0, 0.0);
        for coeff in &a {
            series += coeff * pow;
            pow *= h;
        }
        let direct = lat.wp(delta + h).unwrap();
        assert!(
            (series - direct).norm() < 1e-11 * direct.norm().max(1.0),
            "{series} vs {direct}"
        );
    }

    #[test]
    fn gauss_reduction_finds_short_vector() {
        // skew basis whose shortest vector is 0.1i
        let [b1, _] = gauss_reduce(c(1.0, 0.0), c(0.5, 0.05));
        assert!((b1.norm() - 0.1).abs() < 1e-12, "b1 = {b1}");
    }
}
