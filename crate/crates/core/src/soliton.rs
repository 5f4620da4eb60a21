//! One-soliton solutions of the Zakharov-Shabat system
//!
//! ```text
//! r_x + i lambda r =  u s
//! s_x - i lambda s = -u r
//! ```
//!
//! which is what the Dirac system becomes for separable spinors
//! `psi = r(x) e^{lambda y}`, `phi = s(x) e^{lambda y}` with `u = 2p`.
//!
//! The reflectionless potential is `u = sigma mu sech(mu x - phi0)` with
//! `a = 2 mu tanh(mu x - phi0)`, `b = 2u`, and the normalized Jost pair
//!
//! ```text
//! phi1 = e^{-i lambda x} (2 i lambda + mu tanh(mu x - phi0)) / (2 i lambda - mu)
//! phi2 = sigma mu e^{-i lambda x} sech(mu x - phi0) / (2 i lambda - mu)
//! ```
//!
//! Both the `2 mu` coefficient of `a` and the factor `mu` in `phi2` are the
//! values for which the chain identities and the ZS residual vanish for all
//! `mu`; [`bargmann_chain_residuals`] keeps the coefficient as an input so
//! other choices can be audited.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spinor::{Domain, PotentialField, ResidualPair, ScalarField, SpinorField, SpinorJet, SpinorValue};

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// Branch `sigma = +-1` of the potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn value(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn from_sign(sign: f64) -> Result<Self> {
        if sign == 1.0 {
            Ok(Branch::Plus)
        } else if sign == -1.0 {
            Ok(Branch::Minus)
        } else {
            Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {sign}")))
        }
    }
}

/// Scale `mu > 0`, phase `phi0` and branch of the one-soliton potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonParams {
    mu: f64,
    phi0: f64,
    branch: Branch,
}

impl SolitonParams {
    pub fn new(mu: f64, phi0: f64, branch: Branch) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidParameter(format!("mu must be positive and finite, got {mu}")));
        }
        if !phi0.is_finite() {
            return Err(Error::InvalidParameter(format!("phase must be finite, got {phi0}")));
        }
        Ok(Self { mu, phi0, branch })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn sigma(&self) -> f64 {
        self.branch.value()
    }

    /// Same soliton with the phase moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        Self { phi0: self.phi0 + delta, ..*self }
    }

    /// Coefficient `c_a` in `a = c_a tanh(mu x - phi0)` satisfying the chain.
    pub fn a_coefficient(&self) -> f64 {
        2.0 * self.mu
    }

    /// `u_zs(x) = sigma mu sech(mu x - phi0)`.
    pub fn potential(&self, x: f64) -> f64 {
        self.sigma() * self.mu * sech(self.mu * x - self.phi0)
    }
}

/// Complex spectral parameter `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam(pub Complex64);

impl SpectralParam {
    pub fn new(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// `2 i lambda - mu`, erroring on the pole `lambda = -i mu / 2`.
    pub fn denominator(&self, mu: f64) -> Result<Complex64> {
        if !self.0.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda must be finite, got {}", self.0)));
        }
        let d = 2.0 * I * self.0 - mu;
        if d.norm() <= 1e-12 * mu.max(1.0) {
            return Err(Error::Pole { lambda: self.0, mu });
        }
        Ok(d)
    }
}

/// Values of the potential chain at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannPotential {
    pub u: f64,
    pub a: f64,
    pub b: f64,
}

pub fn bargmann_potential(params: &SolitonParams, x: f64) -> BargmannPotential {
    let xi = params.mu * x - params.phi0;
    let u = params.potential(x);
    BargmannPotential { u, a: params.a_coefficient() * xi.tanh(), b: 2.0 * u }
}

/// Maximum violations of the identities tying `a`, `b` and `u` together,
/// for `a = coefficient * tanh(mu x - phi0)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BargmannChainResiduals {
    /// `a^2 + b^2 - 4 mu^2`
    pub circle: f64,
    /// `a_x - u b`
    pub a_equation: f64,
    /// `b_x + u a`
    pub b_equation: f64,
    /// `b^2 - 2 a_x`
    pub b_squared: f64,
    /// `a_x + a^2 / 2 - 2 mu^2`
    pub riccati: f64,
}

impl BargmannChainResiduals {
    pub fn max(&self) -> f64 {
        [self.circle, self.a_equation, self.b_equation, self.b_squared, self.riccati]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn bargmann_chain_residuals(params: &SolitonParams, xs: &[f64], coefficient: f64) -> BargmannChainResiduals {
    let mu = params.mu;
    let sigma = params.sigma();
    let mut out = BargmannChainResiduals::default();
    for &x in xs {
        let xi = mu * x - params.phi0;
        let (t, s) = (xi.tanh(), sech(xi));
        let u = sigma * mu * s;
        let a = coefficient * t;
        let a_x = coefficient * mu * s * s;
        let b = 2.0 * u;
        let b_x = -2.0 * sigma * mu * mu * s * t;
        out.circle = out.circle.max((a * a + b * b - 4.0 * mu * mu).abs());
        out.a_equation = out.a_equation.max((a_x - u * b).abs());
        out.b_equation = out.b_equation.max((b_x + u * a).abs());
        out.b_squared = out.b_squared.max((b * b - 2.0 * a_x).abs());
        out.riccati = out.riccati.max((a_x + 0.5 * a * a - 2.0 * mu * mu).abs());
    }
    out
}

/// `w = 2 e^{phi0} cosh(mu x - phi0)` and its first two derivatives; `w`
/// solves `w_xx = mu^2 w` and `a = 2 w_x / w`.
pub fn linearized_riccati(params: &SolitonParams, x: f64) -> (f64, f64, f64) {
    let xi = params.mu * x - params.phi0;
    let amp = 2.0 * params.phi0.exp();
    let w = amp * xi.cosh();
    let w_x = amp * params.mu * xi.sinh();
    (w, w_x, params.mu * params.mu * w)
}

/// Jost pair `(phi1, phi2)` and its `x`-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostValue {
    pub phi1: Complex64,
    pub phi2: Complex64,
    pub dphi1: Complex64,
    pub dphi2: Complex64,
}

/// Closed-form Jost solution for fixed soliton and spectral parameter.
///
/// `phase_shift` is added to `phi0`; it carries the time dependence of the
/// deformed fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostSolution {
    params: SolitonParams,
    lambda: SpectralParam,
    phase_shift: f64,
    denominator: Complex64,
}

impl JostSolution {
    pub fn new(params: SolitonParams, lambda: SpectralParam, phase_shift: f64) -> Result<Self> {
        let denominator = lambda.denominator(params.mu)?;
        if !phase_shift.is_finite() {
            return Err(Error::InvalidParameter(format!("phase shift must be finite, got {phase_shift}")));
        }
        Ok(Self { params, lambda, phase_shift, denominator })
    }

    pub fn params(&self) -> SolitonParams {
        self.params
    }

    pub fn lambda(&self) -> SpectralParam {
        self.lambda
    }

    pub fn phase(&self) -> f64 {
        self.params.phi0 + self.phase_shift
    }

    /// Potential this pair solves the ZS system with.
    pub fn potential(&self, x: f64) -> f64 {
        self.params.shifted(self.phase_shift).potential(x)
    }

    pub fn eval(&self, x: f64) -> JostValue {
        let mu = self.params.mu;
        let lam = self.lambda.0;
        let xi = mu * x - self.phase();
        let (t, s) = (xi.tanh(), sech(xi));
        let carrier = (-I * lam * x).exp() / self.denominator;
        let sm = self.params.sigma() * mu;
        let phi1 = carrier * (2.0 * I * lam + mu * t);
        let phi2 = carrier * (sm * s);
        JostValue {
            phi1,
            phi2,
            dphi1: -I * lam * phi1 + carrier * (mu * mu * s * s),
            dphi2: -I * lam * phi2 - carrier * (sm * mu * s * t),
        }
    }

    pub fn value(&self, x: f64) -> (Complex64, Complex64) {
        let v = self.eval(x);
        (v.phi1, v.phi2)
    }

    pub fn derivative(&self, x: f64) -> (Complex64, Complex64) {
        let v = self.eval(x);
        (v.dphi1, v.dphi2)
    }
}

pub fn jost_solution(params: &SolitonParams, lambda: SpectralParam, x: f64, phase_shift: f64) -> Result<JostValue> {
    Ok(JostSolution::new(*params, lambda, phase_shift)?.eval(x))
}

/// Source of `x`-derivatives for [`zs_residual`].
pub enum ZsDerivative<'a> {
    Analytic(&'a dyn Fn(f64) -> (Complex64, Complex64)),
    /// Three-point second-order differences over the sample points.
    FiniteDifference,
}

/// Maximum residuals of both ZS lines at the sample points, each divided by
/// `max(1, |r|, |s|)`.
pub fn zs_residual(
    pair: &dyn Fn(f64) -> (Complex64, Complex64),
    derivative: ZsDerivative<'_>,
    u: &dyn Fn(f64) -> f64,
    lambda: SpectralParam,
    xs: &[f64],
) -> Result<ResidualPair> {
    let lam = lambda.0;
    let values: Vec<(Complex64, Complex64)> = xs.iter().map(|&x| pair(x)).collect();
    let derivs: Vec<(Complex64, Complex64)> = match derivative {
        ZsDerivative::Analytic(d) => xs.iter().map(|&x| d(x)).collect(),
        ZsDerivative::FiniteDifference => nonuniform_derivative(xs, &values)?,
    };
    let mut out = ResidualPair::default();
    for ((&x, &(r, s)), &(dr, ds)) in xs.iter().zip(&values).zip(&derivs) {
        let ux = u(x);
        let scale = 1f64.max(r.norm()).max(s.norm());
        out.absorb((dr + I * lam * r - ux * s).norm() / scale, (ds - I * lam * s + ux * r).norm() / scale);
    }
    Ok(out)
}

fn nonuniform_derivative(
    xs: &[f64],
    values: &[(Complex64, Complex64)],
) -> Result<Vec<(Complex64, Complex64)>> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::Config(format!("finite differences need at least 3 points, got {n}")));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("sample points must be strictly increasing".into()));
    }
    // Lagrange weights of the derivative of the quadratic through three points.
    let weights = |x0: f64, x1: f64, x2: f64, at: f64| -> [f64; 3] {
        [
            ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2)),
            ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2)),
            ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1)),
        ]
    };
    let combine = |k: usize, w: [f64; 3]| {
        let (a, b, c) = (values[k], values[k + 1], values[k + 2]);
        (a.0 * w[0] + b.0 * w[1] + c.0 * w[2], a.1 * w[0] + b.1 * w[1] + c.1 * w[2])
    };
    Ok((0..n)
        .map(|k| {
            let base = k.saturating_sub(1).min(n - 3);
            combine(base, weights(xs[base], xs[base + 1], xs[base + 2], xs[k]))
        })
        .collect())
}

/// Samples of a numerically integrated ZS solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ZsSamples {
    pub xs: Vec<f64>,
    pub r: Vec<Complex64>,
    pub s: Vec<Complex64>,
}

impl ZsSamples {
    pub fn last(&self) -> (f64, Complex64, Complex64) {
        let k = self.xs.len() - 1;
        (self.xs[k], self.r[k], self.s[k])
    }
}

/// Marches the ZS system from `x_from` to `x_to` with classical RK4.
///
/// The step is shrunk to `|x_to - x_from| / n` for the smallest whole `n`
/// not exceeding `step`; integrating backwards is allowed.
pub fn zs_integrate(
    u: &dyn Fn(f64) -> f64,
    lambda: SpectralParam,
    x_from: f64,
    x_to: f64,
    step: f64,
    init: (Complex64, Complex64),
) -> Result<ZsSamples> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Config(format!("step must be positive, got {step}")));
    }
    if !(x_from.is_finite() && x_to.is_finite()) {
        return Err(Error::Config("integration interval must be finite".into()));
    }
    let lam = lambda.0;
    let span = x_to - x_from;
    let n = ((span.abs() / step).ceil() as usize).max(1);
    let h = span / n as f64;
    let potential = |x: f64| -> Result<f64> {
        let v = u(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Integration { x, reason: format!("potential evaluates to {v}") })
        }
    };
    let rhs = |x: f64, r: Complex64, s: Complex64| -> Result<(Complex64, Complex64)> {
        let ux = potential(x)?;
        Ok((-I * lam * r + ux * s, I * lam * s - ux * r))
    };

    let mut xs = Vec::with_capacity(n + 1);
    let mut rs = Vec::with_capacity(n + 1);
    let mut ss = Vec::with_capacity(n + 1);
    let (mut r, mut s) = init;
    xs.push(x_from);
    rs.push(r);
    ss.push(s);
    for k in 0..n {
        let x = x_from + k as f64 * h;
        let (k1r, k1s) = rhs(x, r, s)?;
        let (k2r, k2s) = rhs(x + 0.5 * h, r + 0.5 * h * k1r, s + 0.5 * h * k1s)?;
        let (k3r, k3s) = rhs(x + 0.5 * h, r + 0.5 * h * k2r, s + 0.5 * h * k2s)?;
        let (k4r, k4s) = rhs(x + h, r + h * k3r, s + h * k3s)?;
        r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        s += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        let x_next = if k + 1 == n { x_to } else { x_from + (k + 1) as f64 * h };
        if !(r.is_finite() && s.is_finite()) {
            return Err(Error::Integration { x: x_next, reason: "solution overflowed".into() });
        }
        xs.push(x_next);
        rs.push(r);
        ss.push(s);
    }
    Ok(ZsSamples { xs, r: rs, s: ss })
}

/// Separable spinor field `psi = phi1(x) e^{lambda y}`, `phi = phi2(x) e^{lambda y}`
/// with analytic derivatives, defined on the whole plane.
///
/// It solves the Dirac system with `p = u_zs / 2`, see [`dirac_potential`].
pub fn revolve_spinors(params: &SolitonParams, lambda: SpectralParam, phase_shift: f64) -> Result<SpinorField> {
    let jost = JostSolution::new(*params, lambda, phase_shift)?;
    let lam = lambda.0;
    Ok(SpinorField::with_jet(Domain::PLANE, move |x, y| {
        let j = jost.eval(x);
        let e = (lam * y).exp();
        let value = SpinorValue::new(j.phi1 * e, j.phi2 * e);
        SpinorJet {
            value,
            dx: SpinorValue::new(j.dphi1 * e, j.dphi2 * e),
            dy: value.scale(lam),
        }
    }))
}

/// Dirac potential `p(x, y) = u_zs(x) / 2` of the (phase-shifted) soliton.
pub fn dirac_potential(params: &SolitonParams, phase_shift: f64) -> PotentialField {
    let shifted = params.shifted(phase_shift);
    ScalarField::from_x(move |x| 0.5 * shifted.potential(x))
}

/// `lambda = i * kappa`: `|e^{lambda y}| = 1` and the field is periodic in `y`
/// with period `2 pi / kappa`.
pub fn rotational_lambda(kappa: f64) -> SpectralParam {
    SpectralParam::new(0.0, kappa)
}

/// Period in `y` of a rotationally symmetric field, if `lambda` is imaginary.
pub fn rotation_period(lambda: SpectralParam) -> Option<f64> {
    (lambda.0.re == 0.0 && lambda.0.im != 0.0).then(|| 2.0 * PI / lambda.0.im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SolitonParams {
        SolitonParams::new(1.0, 0.0, Branch::Plus).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(SolitonParams::new(0.0, 0.0, Branch::Plus).is_err());
        assert!(SolitonParams::new(-1.0, 0.0, Branch::Plus).is_err());
        assert!(Branch::from_sign(0.5).is_err());
        assert_eq!(Branch::from_sign(-1.0).unwrap(), Branch::Minus);
    }

    #[test]
    fn peak_value() {
        let b = bargmann_potential(&params(), 0.0);
        assert_eq!(b.u, 1.0);
        assert_eq!(b.a, 0.0);
        assert_eq!(b.b, 2.0);
    }

    #[test]
    fn pole_is_rejected() {
        let p = SolitonParams::new(1.0, 0.0, Branch::Plus).unwrap();
        let lam = SpectralParam::new(0.0, -0.5);
        assert!(matches!(jost_solution(&p, lam, 0.0, 0.0), Err(Error::Pole { .. })));
        assert!(matches!(revolve_spinors(&p, lam, 0.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn far_left_limit_is_free() {
        let lam = SpectralParam::new(1.0, 0.0);
        let x = -30.0;
        let v = jost_solution(&params(), lam, x, 0.0).unwrap();
        let undo = (I * lam.0 * x).exp();
        assert!((v.phi1 * undo - 1.0).norm() < 1e-12);
        assert!((v.phi2 * undo).norm() < 1e-12);
    }

    #[test]
    fn free_solution_residuals() {
        let lam = SpectralParam::new(1.0, 0.0);
        let xs: Vec<f64> = (0..11).map(|k| k as f64 * 0.1).collect();
        let free = |x: f64| ((-I * lam.0 * x).exp(), Complex64::new(0.0, 0.0));
        let dfree = |x: f64| (-I * lam.0 * (-I * lam.0 * x).exp(), Complex64::new(0.0, 0.0));
        let r = zs_residual(&free, ZsDerivative::Analytic(&dfree), &|_| 0.0, lam, &xs).unwrap();
        assert!(r.max() < 1e-15);

        let ones = |_: f64| (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        let zeros = |_: f64| (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let r = zs_residual(&ones, ZsDerivative::Analytic(&zeros), &|_| 0.0, lam, &xs).unwrap();
        assert!((r.first - 1.0).abs() < 1e-15 && (r.second - 1.0).abs() < 1e-15);
    }

    #[test]
    fn finite_difference_needs_three_points() {
        let lam = SpectralParam::new(1.0, 0.0);
        let ones = |_: f64| (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        let err = zs_residual(&ones, ZsDerivative::FiniteDifference, &|_| 0.0, lam, &[0.0, 1.0]);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn free_integration() {
        let lam = SpectralParam::new(0.7, 0.2);
        let one = Complex64::new(1.0, 0.0);
        let out = zs_integrate(&|_| 0.0, lam, -1.0, 2.0, 1e-2, (one, one)).unwrap();
        for ((&x, &r), &s) in out.xs.iter().zip(&out.r).zip(&out.s) {
            let dx = x + 1.0;
            assert!((r - (-I * lam.0 * dx).exp()).norm() < 1e-10);
            assert!((s - (I * lam.0 * dx).exp()).norm() < 1e-10);
        }
        assert_eq!(*out.xs.last().unwrap(), 2.0);
    }

    #[test]
    fn integration_reports_bad_potential() {
        let lam = SpectralParam::new(1.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let bad = |x: f64| if x > 0.5 { f64::NAN } else { 0.0 };
        assert!(matches!(
            zs_integrate(&bad, lam, 0.0, 1.0, 0.1, (one, one)),
            Err(Error::Integration { .. })
        ));
        assert!(zs_integrate(&|_| 0.0, lam, 0.0, 1.0, 0.0, (one, one)).is_err());
    }

    #[test]
    fn revolve_matches_jost_on_axis() {
        let lam = SpectralParam::new(0.6, 0.3);
        let field = revolve_spinors(&params(), lam, 0.0).unwrap();
        for &x in &[-3.0, 0.0, 1.7] {
            let v = field.eval(x, 0.0).unwrap();
            let (p1, p2) = jost_solution(&params(), lam, x, 0.0).map(|j| (j.phi1, j.phi2)).unwrap();
            assert_eq!(v.psi, p1);
            assert_eq!(v.phi, p2);
        }
    }

    #[test]
    fn rotation_period_only_for_imaginary_lambda() {
        assert!((rotation_period(rotational_lambda(2.0)).unwrap() - PI).abs() < 1e-15);
        assert!(rotation_period(SpectralParam::new(1.0, 0.0)).is_none());
    }
}
