//! Spinor fields `(psi, phi)` over the `(x, y)` plane and the pointwise
//! quantities built from them.
//!
//! Complex derivatives follow `d/dz = (d/dx + i d/dy) / 2` and
//! `d/dzbar = (d/dx - i d/dy) / 2`; the Dirac system is
//! `psi_z = p phi`, `phi_zbar = -p psi` with a real potential `p`.
//!
//! These operators are the Wirtinger derivatives of the coordinate
//! `z = x - i y`, so `dz = dx - i dy` wherever a line element is needed.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{diff_second_order, GridSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Conformal factor below which the metric counts as degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-12;

/// Value of a spinor pair at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorValue {
    pub psi: Complex64,
    pub phi: Complex64,
}

impl SpinorValue {
    pub const ZERO: Self = Self { psi: Complex64::new(0.0, 0.0), phi: Complex64::new(0.0, 0.0) };

    pub fn new(psi: Complex64, phi: Complex64) -> Self {
        Self { psi, phi }
    }

    /// `|psi|^2 + |phi|^2`.
    pub fn conformal_factor(&self) -> f64 {
        self.psi.norm_sqr() + self.phi.norm_sqr()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { psi: self.psi * c, phi: self.phi * c }
    }

    /// Largest component magnitude, floored at one. Residuals are divided by
    /// this so exponentially growing solutions are judged relative to their size.
    pub fn magnitude_scale(&self) -> f64 {
        1f64.max(self.psi.norm()).max(self.phi.norm())
    }

    fn is_finite(&self) -> bool {
        self.psi.is_finite() && self.phi.is_finite()
    }
}

impl std::ops::Add for SpinorValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { psi: self.psi + rhs.psi, phi: self.phi + rhs.phi }
    }
}

impl std::ops::Sub for SpinorValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { psi: self.psi - rhs.psi, phi: self.phi - rhs.phi }
    }
}

impl std::ops::Mul<f64> for SpinorValue {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self { psi: self.psi * rhs, phi: self.phi * rhs }
    }
}

/// Value plus first partial derivatives in `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorJet {
    pub value: SpinorValue,
    pub dx: SpinorValue,
    pub dy: SpinorValue,
}

impl SpinorJet {
    /// `(d/dx + i d/dy) / 2` of both components.
    pub fn dz(&self) -> SpinorValue {
        SpinorValue {
            psi: 0.5 * (self.dx.psi + I * self.dy.psi),
            phi: 0.5 * (self.dx.phi + I * self.dy.phi),
        }
    }

    /// `(d/dx - i d/dy) / 2` of both components.
    pub fn dzbar(&self) -> SpinorValue {
        SpinorValue {
            psi: 0.5 * (self.dx.psi - I * self.dy.psi),
            phi: 0.5 * (self.dx.phi - I * self.dy.phi),
        }
    }
}

/// Closed axis-aligned rectangle; infinite bounds are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Domain {
    pub const PLANE: Self = Self {
        x_min: f64::NEG_INFINITY,
        x_max: f64::INFINITY,
        y_min: f64::NEG_INFINITY,
        y_max: f64::INFINITY,
    };

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    pub fn covers(&self, grid: &GridSpec) -> bool {
        self.contains(grid.x_min(), grid.y_min()) && self.contains(grid.x_max(), grid.y_max())
    }
}

impl From<&GridSpec> for Domain {
    fn from(g: &GridSpec) -> Self {
        Self { x_min: g.x_min(), x_max: g.x_max(), y_min: g.y_min(), y_max: g.y_max() }
    }
}

type ValueFn = dyn Fn(f64, f64) -> SpinorValue + Send + Sync;
type JetFn = dyn Fn(f64, f64) -> SpinorJet + Send + Sync;

#[derive(Clone)]
enum Repr {
    ClosedForm { value: Arc<ValueFn>, jet: Option<Arc<JetFn>>, domain: Domain },
    Sampled { grid: GridSpec, samples: Arc<[SpinorValue]> },
}

/// A spinor pair `(psi, phi)` either given by closed-form closures over a
/// rectangle or sampled on the nodes of a grid.
///
/// Cloning is cheap; the underlying closures and samples are shared.
#[derive(Clone)]
pub struct SpinorField {
    repr: Repr,
}

impl fmt::Debug for SpinorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::ClosedForm { jet, domain, .. } => f
                .debug_struct("SpinorField::ClosedForm")
                .field("analytic_derivatives", &jet.is_some())
                .field("domain", domain)
                .finish(),
            Repr::Sampled { grid, .. } => {
                f.debug_struct("SpinorField::Sampled").field("grid", grid).finish()
            }
        }
    }
}

impl SpinorField {
    /// Closed-form field without derivative information.
    pub fn closed_form<F>(domain: Domain, value: F) -> Self
    where
        F: Fn(f64, f64) -> SpinorValue + Send + Sync + 'static,
    {
        Self { repr: Repr::ClosedForm { value: Arc::new(value), jet: None, domain } }
    }

    /// Closed-form field with analytic first derivatives.
    pub fn with_jet<J>(domain: Domain, jet: J) -> Self
    where
        J: Fn(f64, f64) -> SpinorJet + Send + Sync + 'static,
    {
        let jet: Arc<JetFn> = Arc::new(jet);
        let j2 = Arc::clone(&jet);
        Self {
            repr: Repr::ClosedForm {
                value: Arc::new(move |x, y| j2(x, y).value),
                jet: Some(jet),
                domain,
            },
        }
    }

    /// Constant field on the whole plane.
    pub fn constant(psi: Complex64, phi: Complex64) -> Self {
        let v = SpinorValue::new(psi, phi);
        Self::with_jet(Domain::PLANE, move |_, _| SpinorJet {
            value: v,
            dx: SpinorValue::ZERO,
            dy: SpinorValue::ZERO,
        })
    }

    /// Field sampled on grid nodes, stored in grid order.
    pub fn sampled(grid: GridSpec, samples: Vec<SpinorValue>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Config(format!(
                "sample count {} does not match grid size {}",
                samples.len(),
                grid.len()
            )));
        }
        Ok(Self { repr: Repr::Sampled { grid, samples: samples.into() } })
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.repr, Repr::ClosedForm { .. })
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        matches!(self.repr, Repr::ClosedForm { jet: Some(_), .. })
    }

    pub fn domain(&self) -> Domain {
        match &self.repr {
            Repr::ClosedForm { domain, .. } => *domain,
            Repr::Sampled { grid, .. } => Domain::from(grid),
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match &self.repr {
            Repr::ClosedForm { domain, .. } => domain.contains(x, y),
            Repr::Sampled { grid, .. } => grid.node_at(x, y).is_some(),
        }
    }

    /// Evaluates `(psi, phi)`. Sampled fields are only defined on their nodes.
    pub fn eval(&self, x: f64, y: f64) -> Result<SpinorValue> {
        match &self.repr {
            Repr::ClosedForm { value, domain, .. } => {
                if domain.contains(x, y) {
                    Ok(value(x, y))
                } else {
                    Err(Error::Domain { x, y })
                }
            }
            Repr::Sampled { grid, samples } => grid
                .node_at(x, y)
                .map(|(i, j)| samples[grid.index(i, j)])
                .ok_or(Error::Domain { x, y }),
        }
    }

    /// Analytic jet, if the field carries derivative closures.
    pub fn jet(&self, x: f64, y: f64) -> Option<Result<SpinorJet>> {
        match &self.repr {
            Repr::ClosedForm { jet: Some(jet), domain, .. } => Some(if domain.contains(x, y) {
                Ok(jet(x, y))
            } else {
                Err(Error::Domain { x, y })
            }),
            _ => None,
        }
    }

    /// Samples the field on every node of `grid`.
    pub fn sample(&self, grid: &GridSpec) -> Result<Vec<SpinorValue>> {
        grid.nodes().map(|(_, _, x, y)| self.eval(x, y)).collect()
    }

    /// Samples the field and returns it as a sampled field.
    pub fn to_sampled(&self, grid: &GridSpec) -> Result<Self> {
        Self::sampled(*grid, self.sample(grid)?)
    }

    /// Derivatives at every grid node, analytic or finite-difference per `mode`.
    pub fn jets_on(&self, grid: &GridSpec, mode: DerivativeMode) -> Result<Vec<SpinorJet>> {
        let analytic = mode == DerivativeMode::Auto && self.has_analytic_derivatives();
        if analytic {
            return grid
                .nodes()
                .map(|(_, _, x, y)| self.jet(x, y).expect("jet closure present"))
                .collect();
        }
        if grid.nx() < 3 || grid.ny() < 3 {
            return Err(Error::Config(format!(
                "finite differences need at least 3x3 nodes, got {}x{}",
                grid.nx(),
                grid.ny()
            )));
        }
        let values = self.sample(grid)?;
        Ok(finite_difference_jets(grid, &values))
    }
}

/// Second-order finite-difference jets of grid-ordered samples.
pub(crate) fn finite_difference_jets(grid: &GridSpec, values: &[SpinorValue]) -> Vec<SpinorJet> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut jets: Vec<SpinorJet> = values
        .iter()
        .map(|&v| SpinorJet { value: v, dx: SpinorValue::ZERO, dy: SpinorValue::ZERO })
        .collect();
    for j in 0..ny {
        let row = &values[j * nx..(j + 1) * nx];
        for (i, d) in diff_second_order(row, grid.hx()).into_iter().enumerate() {
            jets[grid.index(i, j)].dx = d;
        }
    }
    let mut column = Vec::with_capacity(ny);
    for i in 0..nx {
        column.clear();
        column.extend((0..ny).map(|j| values[grid.index(i, j)]));
        for (j, d) in diff_second_order(&column, grid.hy()).into_iter().enumerate() {
            jets[grid.index(i, j)].dy = d;
        }
    }
    jets
}

/// How derivatives of a field are obtained on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMode {
    /// Analytic closures when the field has them, finite differences otherwise.
    #[default]
    Auto,
    /// Always second-order finite differences on the grid.
    FiniteDifference,
}

/// Real scalar field over the plane: the Dirac potential `p`, a mean
/// curvature `H`, or the Zakharov-Shabat potential lifted to two variables.
#[derive(Clone)]
pub struct ScalarField {
    eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

pub type PotentialField = ScalarField;

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField")
    }
}

impl ScalarField {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self { eval: Arc::new(f) }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_, _| c)
    }

    /// Field depending on `x` only.
    pub fn from_x<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |x, _| f(x))
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let v = (self.eval)(x, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain { x, y })
        }
    }
}

/// Maximum residuals of the two lines of a first-order system.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ResidualPair {
    pub first: f64,
    pub second: f64,
}

impl ResidualPair {
    pub fn max(&self) -> f64 {
        self.first.max(self.second)
    }

    pub(crate) fn absorb(&mut self, first: f64, second: f64) {
        // NaN must win so that broken fields never look converged.
        self.first = if first.is_nan() { f64::NAN } else { self.first.max(first) };
        self.second = if second.is_nan() { f64::NAN } else { self.second.max(second) };
    }
}

/// `rho = |psi|^2 + |phi|^2` at `(x, y)`.
pub fn conformal_factor(field: &SpinorField, x: f64, y: f64) -> Result<f64> {
    Ok(field.eval(x, y)?.conformal_factor())
}

/// Residuals of `psi_z = p phi` and `phi_zbar = -p psi` over the grid.
///
/// Each pointwise residual is divided by `max(1, |psi|, |phi|)`. With
/// analytic derivatives every node is checked; with finite differences only
/// interior nodes are.
pub fn dirac_residual(field: &SpinorField, p: &PotentialField, grid: &GridSpec) -> Result<ResidualPair> {
    dirac_residual_with(field, p, grid, DerivativeMode::Auto)
}

pub fn dirac_residual_with(
    field: &SpinorField,
    p: &PotentialField,
    grid: &GridSpec,
    mode: DerivativeMode,
) -> Result<ResidualPair> {
    let analytic = mode == DerivativeMode::Auto && field.has_analytic_derivatives();
    let jets = field.jets_on(grid, mode)?;
    let mut out = ResidualPair::default();
    for (i, j, x, y) in grid.nodes() {
        if !analytic && !grid.is_interior(i, j) {
            continue;
        }
        let jet = &jets[grid.index(i, j)];
        let pv = p.eval(x, y)?;
        let v = jet.value;
        let scale = v.magnitude_scale();
        let r1 = (jet.dz().psi - pv * v.phi).norm() / scale;
        let r2 = (jet.dzbar().phi + pv * v.psi).norm() / scale;
        out.absorb(r1, r2);
    }
    Ok(out)
}

/// `H = 2p / rho`, refusing degenerate metrics.
pub fn mean_curvature(p: f64, rho: f64) -> Result<f64> {
    mean_curvature_with_tol(p, rho, DEFAULT_DEGENERACY_TOL)
}

pub fn mean_curvature_with_tol(p: f64, rho: f64, tol: f64) -> Result<f64> {
    if rho.is_nan() || rho <= tol {
        return Err(Error::DegenerateMetric { rho, tol });
    }
    Ok(2.0 * p / rho)
}

/// Mean curvature field `H = 2p / rho` of a spinor field and its potential.
pub fn mean_curvature_field(field: &SpinorField, p: &PotentialField) -> ScalarField {
    let field = field.clone();
    let p = p.clone();
    ScalarField::new(move |x, y| {
        match (field.eval(x, y), p.eval(x, y)) {
            (Ok(v), Ok(pv)) => mean_curvature(pv, v.conformal_factor()).unwrap_or(f64::NAN),
            _ => f64::NAN,
        }
    })
}

/// Value of the Gauss map `s = phi / psi` on the extended complex plane,
/// together with the weight `mu(s) = psi^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussMapValue {
    Finite { s: Complex64, weight: Complex64 },
    Infinity { weight: Complex64 },
}

impl GaussMapValue {
    pub fn weight(&self) -> Complex64 {
        match *self {
            GaussMapValue::Finite { weight, .. } | GaussMapValue::Infinity { weight } => weight,
        }
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            GaussMapValue::Finite { s, .. } => Some(s),
            GaussMapValue::Infinity { .. } => None,
        }
    }
}

pub fn gauss_map(field: &SpinorField, x: f64, y: f64) -> Result<GaussMapValue> {
    gauss_map_value(field.eval(x, y)?)
}

pub fn gauss_map_value(v: SpinorValue) -> Result<GaussMapValue> {
    if !v.is_finite() {
        return Err(Error::UndefinedGaussMap);
    }
    let weight = v.psi * v.psi;
    if v.psi == Complex64::new(0.0, 0.0) {
        if v.phi == Complex64::new(0.0, 0.0) {
            return Err(Error::UndefinedGaussMap);
        }
        return Ok(GaussMapValue::Infinity { weight });
    }
    Ok(GaussMapValue::Finite { s: v.phi / v.psi, weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// psi = z = x - i y, so psi_z = 1.
    fn coordinate_z() -> SpinorField {
        SpinorField::with_jet(Domain::PLANE, |x, y| SpinorJet {
            value: SpinorValue::new(c(x, -y), c(0.0, 0.0)),
            dx: SpinorValue::new(c(1.0, 0.0), c(0.0, 0.0)),
            dy: SpinorValue::new(c(0.0, -1.0), c(0.0, 0.0)),
        })
    }

    #[test]
    fn conformal_factor_of_trivial_spinors() {
        let one = SpinorField::constant(c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(conformal_factor(&one, 0.3, -2.0).unwrap(), 1.0);
        let zero = SpinorField::constant(c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(conformal_factor(&zero, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn outside_domain_is_an_error() {
        let g = GridSpec::new(0.0, 1.0, 0.0, 1.0, 3, 3).unwrap();
        let f = SpinorField::closed_form(Domain::from(&g), |_, _| SpinorValue::ZERO);
        assert!(matches!(conformal_factor(&f, 2.0, 0.5), Err(Error::Domain { .. })));
        let s = f.to_sampled(&g).unwrap();
        assert!(s.eval(0.5, 0.5).is_ok());
        assert!(matches!(s.eval(0.25, 0.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn constant_field_has_zero_residual() {
        let g = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 5, 5).unwrap();
        let f = SpinorField::constant(c(0.3, 1.0), c(-2.0, 0.5));
        let r = dirac_residual(&f, &ScalarField::constant(0.0), &g).unwrap();
        assert_eq!(r, ResidualPair { first: 0.0, second: 0.0 });
        let r = dirac_residual_with(&f, &ScalarField::constant(0.0), &g, DerivativeMode::FiniteDifference)
            .unwrap();
        assert!(r.max() < 1e-14);
    }

    #[test]
    fn linear_field_has_unit_residual() {
        // Grid in the unit disc so the magnitude scaling stays at one.
        let g = GridSpec::new(0.0, 0.5, 0.0, 0.5, 4, 4).unwrap();
        let r = dirac_residual(&coordinate_z(), &ScalarField::constant(0.0), &g).unwrap();
        assert!((r.first - 1.0).abs() < 1e-15);
        assert_eq!(r.second, 0.0);
        let sampled = coordinate_z().to_sampled(&g).unwrap();
        let r = dirac_residual(&sampled, &ScalarField::constant(0.0), &g).unwrap();
        assert!((r.first - 1.0).abs() < 1e-12);
    }

    #[test]
    fn finite_differences_need_three_nodes() {
        let g = GridSpec::new(0.0, 1.0, 0.0, 1.0, 2, 5).unwrap();
        let f = SpinorField::closed_form(Domain::PLANE, |_, _| SpinorValue::ZERO);
        assert!(matches!(
            dirac_residual(&f, &ScalarField::constant(0.0), &g),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn mean_curvature_cases() {
        assert_eq!(mean_curvature(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(mean_curvature(0.5, 2.0).unwrap(), 0.5);
        assert!(matches!(mean_curvature(1.0, 0.0), Err(Error::DegenerateMetric { .. })));
        assert!(mean_curvature_with_tol(1.0, 1e-6, 1e-3).is_err());
    }

    #[test]
    fn gauss_map_cases() {
        let g = gauss_map_value(SpinorValue::new(c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        assert_eq!(g, GaussMapValue::Finite { s: c(0.0, 0.0), weight: c(1.0, 0.0) });
        let g = gauss_map_value(SpinorValue::new(c(0.0, 0.0), c(1.0, 0.0))).unwrap();
        assert!(matches!(g, GaussMapValue::Infinity { .. }));
        assert!(matches!(gauss_map_value(SpinorValue::ZERO), Err(Error::UndefinedGaussMap)));
    }
}
