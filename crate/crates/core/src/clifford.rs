//! 2x2 complex matrices realizing `Cl(3,0) ~ M2(C)` and the unit-quaternion
//! group, the Weyl half-spinor projectors and Radon-Hurwitz numbers.
//!
//! The generators are fixed to
//! `e1 -> ((0, 1), (-1, 0))`, `e2 -> ((0, i), (i, 0))`, so that
//! `e1^2 = e2^2 = -I` and `e12 = e1 e2 = diag(i, -i)`. Any conjugate
//! representation gives conjugated projectors.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Result;
use crate::grid::GridSpec;
use crate::spinor::{DerivativeMode, ResidualPair, ScalarField, SpinorField};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Entrywise tolerance used by [`Matrix2C::approx_eq`] callers by default.
pub const MATRIX_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2C {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Matrix2C {
    pub const IDENTITY: Self = Self { m11: ONE, m12: ZERO, m21: ZERO, m22: ONE };
    pub const ZERO: Self = Self { m11: ZERO, m12: ZERO, m21: ZERO, m22: ZERO };

    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        Self::new(a, ZERO, ZERO, b)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.m11 * c, self.m12 * c, self.m21 * c, self.m22 * c)
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.m11 * v[0] + self.m12 * v[1], self.m21 * v[0] + self.m22 * v[1]]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = *self - *other;
        [d.m11, d.m12, d.m21, d.m22].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// True when the matrix has the shape `((A, B), (-conj B, conj A))`.
    pub fn is_quaternionic(&self, tol: f64) -> bool {
        (self.m22 - self.m11.conj()).norm() <= tol && (self.m21 + self.m12.conj()).norm() <= tol
    }

    pub fn is_finite(&self) -> bool {
        [self.m11, self.m12, self.m21, self.m22].iter().all(|z| z.is_finite())
    }
}

impl Add for Matrix2C {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.m11 + r.m11, self.m12 + r.m12, self.m21 + r.m21, self.m22 + r.m22)
    }
}

impl Sub for Matrix2C {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.m11 - r.m11, self.m12 - r.m12, self.m21 - r.m21, self.m22 - r.m22)
    }
}

impl Neg for Matrix2C {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for Matrix2C {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.m11 * r.m11 + self.m12 * r.m21,
            self.m11 * r.m12 + self.m12 * r.m22,
            self.m21 * r.m11 + self.m22 * r.m21,
            self.m21 * r.m12 + self.m22 * r.m22,
        )
    }
}

impl Mul<f64> for Matrix2C {
    type Output = Self;
    fn mul(self, r: f64) -> Self {
        self.scale(Complex64::new(r, 0.0))
    }
}

/// `sigma_0 = I`.
pub const SIGMA0: Matrix2C = Matrix2C::IDENTITY;
/// `sigma_1 = ((0, 1), (-1, 0))`, image of `e1`.
pub const SIGMA1: Matrix2C = Matrix2C::new(ZERO, ONE, Complex64::new(-1.0, 0.0), ZERO);
/// `sigma_2 = ((0, i), (i, 0))`, image of `e2`.
pub const SIGMA2: Matrix2C = Matrix2C::new(ZERO, I, I, ZERO);

/// `sigma_12 = sigma_1 sigma_2 = diag(i, -i)`, image of `e12`.
pub fn sigma12() -> Matrix2C {
    SIGMA1 * SIGMA2
}

/// Real quaternion `a0 + a1 e1 + a2 e2 + a12 e12` with `e1^2 = e2^2 = -1`
/// and `e12 = e1 e2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a12: f64,
}

impl Quaternion {
    pub fn new(a0: f64, a1: f64, a2: f64, a12: f64) -> Self {
        Self { a0, a1, a2, a12 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a12 * self.a12
    }

    pub fn embed(&self) -> Matrix2C {
        quaternion_embed(self.a0, self.a1, self.a2, self.a12)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self {
            a0: a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a12 * b.a12,
            a1: a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a12 - a.a12 * b.a2,
            a2: a.a0 * b.a2 - a.a1 * b.a12 + a.a2 * b.a0 + a.a12 * b.a1,
            a12: a.a0 * b.a12 + a.a1 * b.a2 - a.a2 * b.a1 + a.a12 * b.a0,
        }
    }
}

/// `a0 sigma_0 + a1 sigma_1 + a2 sigma_2 + a12 sigma_12`.
///
/// The result is `((A, B), (-conj B, conj A))` with `A = a0 + i a12`,
/// `B = a1 + i a2`, and its determinant is the quaternion norm squared.
pub fn quaternion_embed(a0: f64, a1: f64, a2: f64, a12: f64) -> Matrix2C {
    SIGMA0 * a0 + SIGMA1 * a1 + SIGMA2 * a2 + sigma12() * a12
}

/// The pair of mutually orthogonal primitive idempotents `(1 +- i e12) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylProjectors {
    pub plus: Matrix2C,
    pub minus: Matrix2C,
}

impl WeylProjectors {
    /// Largest defect among `P+^2 = P+`, `P-^2 = P-`, `P+P- = P-P+ = 0` and
    /// `P+ + P- = I`.
    pub fn algebra_defect(&self) -> f64 {
        let (p, m) = (self.plus, self.minus);
        [
            (p * p).max_abs_diff(&p),
            (m * m).max_abs_diff(&m),
            (p * m).max_abs_diff(&Matrix2C::ZERO),
            (m * p).max_abs_diff(&Matrix2C::ZERO),
            (p + m).max_abs_diff(&Matrix2C::IDENTITY),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn weyl_projectors() -> WeylProjectors {
    let i_e12 = sigma12().scale(I);
    WeylProjectors {
        plus: (Matrix2C::IDENTITY + i_e12) * 0.5,
        minus: (Matrix2C::IDENTITY - i_e12) * 0.5,
    }
}

/// Splits a spinor into half-spinors `(phi+, phi-) = (P+ v, P- v)`.
pub fn weyl_split(spinor: [Complex64; 2]) -> ([Complex64; 2], [Complex64; 2]) {
    let p = weyl_projectors();
    (p.plus.apply(spinor), p.minus.apply(spinor))
}

const RH_TABLE: [i64; 8] = [0, 1, 2, 2, 3, 3, 3, 3];

/// Radon-Hurwitz number `r_i`, extended to all integers by `r_{i+8} = r_i + 4`.
pub fn rh_number(i: i64) -> i64 {
    RH_TABLE[i.rem_euclid(8) as usize] + 4 * i.div_euclid(8)
}

/// Number of factors `k = q - r_{q-p}` in a primitive idempotent of `Cl(p,q)`.
pub fn idempotent_count(p: u32, q: u32) -> i64 {
    i64::from(q) - rh_number(i64::from(q) - i64::from(p))
}

/// How the surface Dirac operator `D` acts on the half-spinor pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracConvention {
    /// `D = (d/dx + i d/dy) / 2` on both half-spinors, coefficients `+-iH`
    /// taken literally.
    Dbar,
    /// `d/dz` on `phi+` and `d/dzbar` on `phi-`, with the coefficient
    /// rescaled by the conformal factor:
    /// `d_zbar phi- = -(rho H / 2) phi+` and `d_z phi+ = (rho H / 2) phi-`.
    /// This is the Dirac system `psi_z = p phi`, `phi_zbar = -p psi` with
    /// `p = rho H / 2`.
    Dz,
}

/// Residuals of `D phi- = i H phi+` (first) and `D phi+ = -i H phi-` (second)
/// where the field carries `(phi+, phi-)` as its `(psi, phi)` components.
///
/// Pointwise residuals are divided by `max(1, |phi+|, |phi-|)`.
pub fn dirac_pair_residual(
    halves: &SpinorField,
    mean_curvature: &ScalarField,
    grid: &GridSpec,
    convention: DiracConvention,
) -> Result<ResidualPair> {
    let analytic = halves.has_analytic_derivatives();
    let jets = halves.jets_on(grid, DerivativeMode::Auto)?;
    let mut out = ResidualPair::default();
    for (i, j, x, y) in grid.nodes() {
        if !analytic && !grid.is_interior(i, j) {
            continue;
        }
        let jet = &jets[grid.index(i, j)];
        let (plus, minus) = (jet.value.psi, jet.value.phi);
        let h = mean_curvature.eval(x, y)?;
        let scale = jet.value.magnitude_scale();
        let (r1, r2) = match convention {
            DiracConvention::Dbar => {
                let d = jet.dz();
                ((d.phi - I * h * plus).norm(), (d.psi + I * h * minus).norm())
            }
            DiracConvention::Dz => {
                let half_rho_h = 0.5 * jet.value.conformal_factor() * h;
                (
                    (jet.dzbar().phi + half_rho_h * plus).norm(),
                    (jet.dz().psi - half_rho_h * minus).norm(),
                )
            }
        };
        out.absorb(r1 / scale, r2 / scale);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generators_square_to_minus_one() {
        assert!((SIGMA1 * SIGMA1).approx_eq(&-Matrix2C::IDENTITY, 0.0));
        assert!((SIGMA2 * SIGMA2).approx_eq(&-Matrix2C::IDENTITY, 0.0));
        assert!((SIGMA1 * SIGMA2).approx_eq(&-(SIGMA2 * SIGMA1), 0.0));
        assert_eq!(sigma12(), Matrix2C::diag(c(0.0, 1.0), c(0.0, -1.0)));
        let i_e12 = sigma12().scale(I);
        assert!((i_e12 * i_e12).approx_eq(&Matrix2C::IDENTITY, 0.0));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(quaternion_embed(1.0, 0.0, 0.0, 0.0), Matrix2C::IDENTITY);
        assert_eq!(quaternion_embed(0.0, 1.0, 0.0, 0.0), SIGMA1);
        let m = quaternion_embed(1.0, 2.0, 3.0, 4.0);
        let expected = Matrix2C::new(c(1.0, 4.0), c(2.0, 3.0), c(-2.0, 3.0), c(1.0, -4.0));
        assert!(m.approx_eq(&expected, MATRIX_TOL));
        assert!((m.det() - c(30.0, 0.0)).norm() < MATRIX_TOL);
        assert!(m.is_quaternionic(MATRIX_TOL));
    }

    #[test]
    fn projectors() {
        let p = weyl_projectors();
        assert_eq!(p.plus, Matrix2C::diag(c(0.0, 0.0), c(1.0, 0.0)));
        assert_eq!(p.minus, Matrix2C::diag(c(1.0, 0.0), c(0.0, 0.0)));
        assert!(p.algebra_defect() < 1e-14);
        let (plus, minus) = weyl_split([c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(plus, [c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(minus, [c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn radon_hurwitz() {
        let table: Vec<i64> = (0..8).map(rh_number).collect();
        assert_eq!(table, vec![0, 1, 2, 2, 3, 3, 3, 3]);
        assert_eq!(rh_number(10), 6);
        assert_eq!(rh_number(-2), rh_number(6) - 4);
        assert_eq!(idempotent_count(3, 0), 1);
        // r_{-3} and r_{-2} agree, so q - p = -3 and -2 give the same count.
        assert_eq!(rh_number(-3), rh_number(-2));
        for i in -16..=16 {
            assert_eq!(rh_number(i + 8) - rh_number(i), 4);
        }
    }

    #[test]
    fn dirac_pair_trivial() {
        let g = GridSpec::new(0.0, 1.0, 0.0, 1.0, 4, 4).unwrap();
        let f = SpinorField::constant(c(0.5, 0.1), c(-1.0, 2.0));
        for conv in [DiracConvention::Dbar, DiracConvention::Dz] {
            let r = dirac_pair_residual(&f, &ScalarField::constant(0.0), &g, conv).unwrap();
            assert_eq!(r.max(), 0.0);
        }
    }
}
