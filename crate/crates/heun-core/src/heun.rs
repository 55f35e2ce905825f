//! Domain types for the two forms of Heun's equation and their exponent
//! algebra.
//!
//! The sphere form has regular singular points `a0, a1, a2, infinity` and
//! reads
//!
//! ```text
//! w'' + (sum_j (1 - alpha_j)/(z - a_j)) w' + (A z - q)/((z-a0)(z-a1)(z-a2)) w = 0
//! ```
//!
//! with the derived coefficient
//! `A = (2 + a3 - a0 - a1 - a2)(2 - a3 - a0 - a1 - a2)/4` in the angles.
//! The elliptic form lives on a torus with periods `omega1, omega2` and
//! potential built from the Weierstrass function:
//!
//! ```text
//! w'' = (sum_j k_j wp(z - omega_j/2) + lambda) w,   k_j = alpha_j^2 - 1/4,
//! ```
//!
//! where `omega_0 = 0` and `omega_3 = omega_1 + omega_2`. Angles are stored;
//! the strengths `k_j` are always derived from them so the two can never
//! disagree.

use crate::{Error, Result};
use num_complex::Complex64;

/// Label of a singular point of either form. For the sphere form `S3` means
/// the point at infinity; for the torus form it is the half-period
/// `(omega1 + omega2)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Singularity {
    S0,
    S1,
    S2,
    S3,
}

impl Singularity {
    pub const ALL: [Singularity; 4] = [
        Singularity::S0,
        Singularity::S1,
        Singularity::S2,
        Singularity::S3,
    ];

    pub fn index(self) -> usize {
        match self {
            Singularity::S0 => 0,
            Singularity::S1 => 1,
            Singularity::S2 => 2,
            Singularity::S3 => 3,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Singularity::S0),
            1 => Ok(Singularity::S1),
            2 => Ok(Singularity::S2),
            3 => Ok(Singularity::S3),
            _ => Err(Error::UnknownLabel),
        }
    }
}

/// The coefficient `A` of the sphere form, as a function of the four angles.
pub fn coefficient_a(alpha: [f64; 4]) -> f64 {
    let s = alpha[0] + alpha[1] + alpha[2];
    (2.0 + alpha[3] - s) * (2.0 - alpha[3] - s) / 4.0
}

/// Potential strength from an angle parameter: `k = alpha^2 - 1/4`.
pub fn k_from_alpha(alpha: f64) -> f64 {
    alpha * alpha - 0.25
}

/// Positive root of `k = alpha^2 - 1/4`. Rejects `k <= -1/4`, which has no
/// positive angle.
pub fn alpha_from_k(k: f64) -> Result<f64> {
    if k <= -0.25 {
        return Err(Error::NonPositiveAngle);
    }
    Ok((k + 0.25).sqrt())
}

/// Indicial exponents at a singular point. Real in every supported case
/// (angles are positive reals and `k_j > -1/4`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub rho_minus: f64,
    pub rho_plus: f64,
}

impl ExponentPair {
    pub fn difference(&self) -> f64 {
        self.rho_plus - self.rho_minus
    }

    /// Whether the exponent difference is an integer, up to `tol`. Integer
    /// differences are the resonant case that the series machinery refuses.
    pub fn is_resonant(&self, tol: f64) -> bool {
        let d = self.difference();
        (d - d.round()).abs() <= tol
    }
}

/// Heun's equation on the sphere: three finite singular points, the fourth
/// fixed at infinity, four angle parameters and the accessory parameter `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereHeun {
    a: [Complex64; 3],
    alpha: [f64; 4],
    q: Complex64,
}

impl SphereHeun {
    pub fn new(a: [Complex64; 3], alpha: [f64; 4], q: Complex64) -> Result<Self> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if a[i] == a[j] {
                    return Err(Error::CoincidentSingularities);
                }
            }
        }
        if alpha.iter().any(|&x| x <= 0.0) {
            return Err(Error::NonPositiveAngle);
        }
        Ok(SphereHeun { a, alpha, q })
    }

    pub fn singular_points(&self) -> [Complex64; 3] {
        self.a
    }

    pub fn point(&self, s: Singularity) -> Option<Complex64> {
        match s {
            Singularity::S3 => None,
            _ => Some(self.a[s.index()]),
        }
    }

    pub fn alpha(&self) -> [f64; 4] {
        self.alpha
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn with_q(&self, q: Complex64) -> Self {
        SphereHeun { q, ..self.clone() }
    }

    /// The derived coefficient; recomputed on every call, never stored.
    pub fn coefficient_a(&self) -> f64 {
        coefficient_a(self.alpha)
    }

    /// First-order coefficient `p(z) = sum (1 - alpha_j)/(z - a_j)`.
    pub fn p_coeff(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        for j in 0..3 {
            p += Complex64::new(1.0 - self.alpha[j], 0.0) / (z - self.a[j]);
        }
        p
    }

    /// Zeroth-order coefficient `Q(z) = (A z - q)/prod(z - a_j)`.
    pub fn q_coeff(&self, z: Complex64) -> Complex64 {
        let num = z.scale(self.coefficient_a()) - self.q;
        let den = (z - self.a[0]) * (z - self.a[1]) * (z - self.a[2]);
        num / den
    }

    /// Residues of the partial-fraction expansion `Q = sum beta_j/(z - a_j)`.
    pub fn q_residues(&self) -> [Complex64; 3] {
        let a_coef = self.coefficient_a();
        let mut beta = [Complex64::new(0.0, 0.0); 3];
        for j in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for l in 0..3 {
                if l != j {
                    den *= self.a[j] - self.a[l];
                }
            }
            beta[j] = (self.a[j].scale(a_coef) - self.q) / den;
        }
        beta
    }

    /// Exponents at a singular point. At a finite `a_j` they are `(0, alpha_j)`;
    /// at infinity they are the roots of the indicial polynomial
    /// `rho^2 + (alpha_0+alpha_1+alpha_2-2) rho + A`, whose product is `A`.
    pub fn exponents(&self, s: Singularity) -> ExponentPair {
        match s {
            Singularity::S3 => {
                let s012 = self.alpha[0] + self.alpha[1] + self.alpha[2];
                ExponentPair {
                    rho_minus: (2.0 - s012 - self.alpha[3]) / 2.0,
                    rho_plus: (2.0 - s012 + self.alpha[3]) / 2.0,
                }
            }
            _ => ExponentPair {
                rho_minus: 0.0,
                rho_plus: self.alpha[s.index()],
            },
        }
    }

    /// Shortest distance from `z` to the singular set (finite points only).
    pub fn distance_to_singularities(&self, z: Complex64) -> f64 {
        self.a
            .iter()
            .map(|&a| (z - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Shortest pairwise distance between the finite singular points.
    pub fn min_pairwise_distance(&self) -> f64 {
        let mut d = f64::INFINITY;
        for i in 0..3 {
            for j in (i + 1)..3 {
                d = d.min((self.a[i] - self.a[j]).norm());
            }
        }
        d
    }
}

/// Heun's equation in elliptic form on the torus `C / (Z omega1 + Z omega2)`.
/// Singular points sit at the half-periods `omega_j / 2` with `omega_0 = 0`
/// and `omega_3 = omega_1 + omega_2`; a vanishing `k_j` removes the
/// singularity at that half-period.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusHeun {
    omega1: Complex64,
    omega2: Complex64,
    alpha: [f64; 4],
    lambda: Complex64,
}

impl TorusHeun {
    /// Build from periods and strengths `k_j > -1/4`. If `Im(omega2/omega1)`
    /// is negative the periods are swapped so the orientation is fixed.
    pub fn new(omega1: Complex64, omega2: Complex64, k: [f64; 4], lambda: Complex64) -> Result<Self> {
        let mut alpha = [0.0; 4];
        for j in 0..4 {
            alpha[j] = alpha_from_k(k[j])?;
        }
        Self::from_periods_alpha(omega1, omega2, alpha, lambda)
    }

    /// Build from periods and angle parameters `alpha_j > 0`.
    pub fn from_periods_alpha(
        omega1: Complex64,
        omega2: Complex64,
        alpha: [f64; 4],
        lambda: Complex64,
    ) -> Result<Self> {
        if alpha.iter().any(|&x| x <= 0.0) {
            return Err(Error::NonPositiveAngle);
        }
        let (omega1, omega2) = orient_periods(omega1, omega2)?;
        Ok(TorusHeun {
            omega1,
            omega2,
            alpha,
            lambda,
        })
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn tau(&self) -> Complex64 {
        self.omega2 / self.omega1
    }

    pub fn alpha(&self) -> [f64; 4] {
        self.alpha
    }

    pub fn k(&self) -> [f64; 4] {
        [
            k_from_alpha(self.alpha[0]),
            k_from_alpha(self.alpha[1]),
            k_from_alpha(self.alpha[2]),
            k_from_alpha(self.alpha[3]),
        ]
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: Complex64) -> Self {
        TorusHeun {
            lambda,
            ..self.clone()
        }
    }

    /// The half-period carrying label `s` (a representative; the singular set
    /// is its full lattice orbit).
    pub fn half_period(&self, s: Singularity) -> Complex64 {
        match s {
            Singularity::S0 => Complex64::new(0.0, 0.0),
            Singularity::S1 => self.omega1 * 0.5,
            Singularity::S2 => self.omega2 * 0.5,
            Singularity::S3 => (self.omega1 + self.omega2) * 0.5,
        }
    }

    /// Labels whose strength is nonzero, i.e. genuine singular points.
    pub fn active_singularities(&self) -> Vec<Singularity> {
        Singularity::ALL
            .into_iter()
            .filter(|&s| self.k()[s.index()] != 0.0)
            .collect()
    }

    /// Exponents at the half-period `omega_j/2`: `1/2 -+ alpha_j`.
    pub fn exponents(&self, s: Singularity) -> ExponentPair {
        let a = self.alpha[s.index()];
        ExponentPair {
            rho_minus: 0.5 - a,
            rho_plus: 0.5 + a,
        }
    }

    /// Shortest distance between distinct active singular points, minimized
    /// over lattice translates. Infinite when fewer than one singularity is
    /// active (nothing constrains paths then).
    pub fn min_pairwise_distance(&self) -> f64 {
        let active = self.active_singularities();
        if active.is_empty() {
            return f64::INFINITY;
        }
        let mut d = f64::INFINITY;
        for (i, &si) in active.iter().enumerate() {
            for &sj in active.iter().skip(i) {
                let base = self.half_period(si) - self.half_period(sj);
                for m in -2..=2 {
                    for n in -2..=2 {
                        let t = base + self.omega1.scale(m as f64) + self.omega2.scale(n as f64);
                        let r = t.norm();
                        if r > 0.0 {
                            d = d.min(r);
                        }
                    }
                }
            }
        }
        d
    }

    /// Distance from `z` to the active singular set, minimized over lattice
    /// translates.
    pub fn distance_to_singularities(&self, z: Complex64) -> f64 {
        let mut d = f64::INFINITY;
        for s in self.active_singularities() {
            let (u, _) =
                crate::elliptic::reduce_to_cell(z - self.half_period(s), self.omega1, self.omega2);
            d = d.min(u.norm());
        }
        d
    }
}

fn orient_periods(omega1: Complex64, omega2: Complex64) -> Result<(Complex64, Complex64)> {
    if omega1.norm() == 0.0 || omega2.norm() == 0.0 {
        return Err(Error::DegenerateLattice);
    }
    let im = (omega2 / omega1).im;
    if im.abs() < 1e-14 {
        return Err(Error::DegenerateLattice);
    }
    if im > 0.0 {
        Ok((omega1, omega2))
    } else {
        Ok((omega2, omega1))
    }
}
