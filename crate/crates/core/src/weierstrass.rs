//! Immersion of a spinor field into R^3 through the line integrals
//!
//! ```text
//! X1 + i X2 = i  int (psi^2 dz - phi^2 dzbar)
//! X1 - i X2 = i  int (conj(phi)^2 dz - conj(psi)^2 dzbar)
//! X3        = -  int (psi conj(phi) dz + phi conj(psi) dzbar)
//! ```
//!
//! along piecewise-linear paths with `dz = dx + i dy`. The Dirac system uses
//! `d/dz = (d/dx + i d/dy) / 2`, which is the Wirtinger derivative of
//! `x - i y` (see [`crate::spinor`]); with the conjugations placed as above
//! all three forms are closed whenever the field solves it, and the induced
//! metric is `rho^2 (dx^2 + dy^2)`. [`FormConvention::Printed`] conjugates the
//! spinors in the first two lines instead; those forms are not closed for
//! general `lambda`.

use std::fmt;
use std::io::{BufRead, Write};
use std::num::NonZeroUsize;
use std::path::Path;
use std::str::FromStr;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{diff_second_order, GridSpec};
use crate::spinor::{DerivativeMode, SpinorField, SpinorJet, SpinorValue};

const I: Complex64 = Complex64::new(0.0, 1.0);
const CZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Pairing of the complex line element with the spinor bilinears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormConvention {
    /// `X1 + i X2 = i int (psi^2 dz - phi^2 dzbar)`.
    #[default]
    Closed,
    /// `X1 + i X2 = i int (conj(psi)^2 dz - conj(phi)^2 dzbar)`.
    Printed,
}

impl FormConvention {
    /// Coefficients `(f, g)` of the three forms `f dz + g dzbar`.
    fn coefficients(self, v: SpinorValue) -> [(Complex64, Complex64); 3] {
        let (psi, phi) = (v.psi, v.phi);
        let height = (-psi * phi.conj(), -phi * psi.conj());
        match self {
            FormConvention::Closed => [
                (I * psi * psi, -I * phi * phi),
                (I * phi.conj() * phi.conj(), -I * psi.conj() * psi.conj()),
                height,
            ],
            FormConvention::Printed => [
                (I * psi.conj() * psi.conj(), -I * phi.conj() * phi.conj()),
                (I * phi * phi, -I * psi * psi),
                height,
            ],
        }
    }

    /// Coefficients and their `x`- and `y`-derivatives, from a jet.
    fn coefficient_jets(self, jet: &SpinorJet) -> [[(Complex64, Complex64); 3]; 3] {
        let v = jet.value;
        let (p, q) = (v.psi, v.phi);
        let mut out = [[(CZERO, CZERO); 3]; 3];
        out[0] = self.coefficients(v);
        for (k, d) in [jet.dx, jet.dy].into_iter().enumerate() {
            let (dp, dq) = (d.psi, d.phi);
            let height = (-(dp * q.conj() + p * dq.conj()), -(dq * p.conj() + q * dp.conj()));
            out[k + 1] = match self {
                FormConvention::Closed => [
                    (2.0 * I * p * dp, -2.0 * I * q * dq),
                    (2.0 * I * q.conj() * dq.conj(), -2.0 * I * p.conj() * dp.conj()),
                    height,
                ],
                FormConvention::Printed => [
                    (2.0 * I * p.conj() * dp.conj(), -2.0 * I * q.conj() * dq.conj()),
                    (2.0 * I * q * dq, -2.0 * I * p * dp),
                    height,
                ],
            };
        }
        out
    }
}

/// Piecewise-linear path through the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    waypoints: Vec<(f64, f64)>,
}

impl PathSpec {
    pub fn new(waypoints: Vec<(f64, f64)>) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(Error::Usage("a path needs at least one waypoint".into()));
        }
        if waypoints.iter().any(|&(x, y)| !(x.is_finite() && y.is_finite())) {
            return Err(Error::Usage("path waypoints must be finite".into()));
        }
        if waypoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Usage("consecutive duplicate waypoints".into()));
        }
        Ok(Self { waypoints })
    }

    pub fn straight(from: (f64, f64), to: (f64, f64)) -> Result<Self> {
        if from == to {
            Self::new(vec![from])
        } else {
            Self::new(vec![from, to])
        }
    }

    /// Horizontal leg first, then vertical.
    pub fn l_shaped(from: (f64, f64), to: (f64, f64)) -> Result<Self> {
        let mut pts = vec![from, (to.0, from.1), to];
        pts.dedup();
        Self::new(pts)
    }

    pub fn waypoints(&self) -> &[(f64, f64)] {
        &self.waypoints
    }

    pub fn start(&self) -> (f64, f64) {
        self.waypoints[0]
    }

    pub fn end(&self) -> (f64, f64) {
        *self.waypoints.last().expect("non-empty path")
    }

    pub fn segments(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Composite Gauss-Legendre settings per path segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub nodes_per_segment: usize,
    pub subdivisions_per_segment: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_per_segment: 16, subdivisions_per_segment: 8 }
    }
}

impl QuadratureSpec {
    pub fn new(nodes_per_segment: usize, subdivisions_per_segment: usize) -> Result<Self> {
        if nodes_per_segment == 0 || subdivisions_per_segment == 0 {
            return Err(Error::Config("quadrature nodes and subdivisions must be at least 1".into()));
        }
        Ok(Self { nodes_per_segment, subdivisions_per_segment })
    }
}

/// Nodes in `[0, 1]` with matching weights for one whole segment.
struct SegmentRule {
    nodes: Vec<(f64, f64)>,
}

impl SegmentRule {
    fn new(spec: QuadratureSpec) -> Result<Self> {
        let degree = NonZeroUsize::new(spec.nodes_per_segment)
            .ok_or_else(|| Error::Config("quadrature needs at least one node".into()))?;
        if spec.subdivisions_per_segment == 0 {
            return Err(Error::Config("quadrature needs at least one subdivision".into()));
        }
        let rule = GaussLegendre::new(degree);
        let m = spec.subdivisions_per_segment;
        let width = 1.0 / m as f64;
        let mut nodes = Vec::with_capacity(m * spec.nodes_per_segment);
        for k in 0..m {
            let left = k as f64 * width;
            for &(t, w) in rule.as_node_weight_pairs() {
                nodes.push((left + 0.5 * width * (t + 1.0), 0.5 * width * w));
            }
        }
        Ok(Self { nodes })
    }

    fn integrate(
        &self,
        field: &SpinorField,
        convention: FormConvention,
        from: (f64, f64),
        to: (f64, f64),
    ) -> Result<FormSums> {
        let (dx, dy) = (to.0 - from.0, to.1 - from.1);
        let dz = Complex64::new(dx, dy);
        let dzbar = dz.conj();
        let mut acc = [CZERO; 3];
        for &(t, w) in &self.nodes {
            let v = field.eval(from.0 + t * dx, from.1 + t * dy)?;
            for (slot, (f, g)) in acc.iter_mut().zip(convention.coefficients(v)) {
                *slot += w * (f * dz + g * dzbar);
            }
        }
        Ok(FormSums(acc))
    }
}

/// Raw complex values of the three line integrals
/// `(X1 + i X2, X1 - i X2, X3)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FormSums(pub [Complex64; 3]);

impl FormSums {
    fn add(&mut self, other: &FormSums) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }

    pub fn to_point(&self) -> ImmersedPoint {
        let [plus, minus, height] = self.0;
        let x1 = 0.5 * (plus + minus);
        let x2 = (plus - minus) / (2.0 * I);
        ImmersedPoint {
            position: [x1.re, x2.re, height.re],
            leakage: [x1.im.abs(), x2.im.abs(), height.im.abs()],
        }
    }
}

/// Real coordinates with the magnitude of the discarded imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImmersedPoint {
    pub position: [f64; 3],
    pub leakage: [f64; 3],
}

impl ImmersedPoint {
    pub fn max_leakage(&self) -> f64 {
        self.leakage.into_iter().fold(0.0, f64::max)
    }
}

fn check_path(field: &SpinorField, path: &PathSpec) -> Result<()> {
    // The domain is a rectangle, so checking waypoints covers every segment.
    for &(x, y) in path.waypoints() {
        if !field.domain().contains(x, y) {
            return Err(Error::Domain { x, y });
        }
    }
    Ok(())
}

/// Raw integrals along `path` under `convention`.
pub fn path_integrals(
    field: &SpinorField,
    path: &PathSpec,
    quad: QuadratureSpec,
    convention: FormConvention,
) -> Result<FormSums> {
    check_path(field, path)?;
    let rule = SegmentRule::new(quad)?;
    let mut sums = FormSums::default();
    for (a, b) in path.segments() {
        sums.add(&rule.integrate(field, convention, a, b)?);
    }
    Ok(sums)
}

/// Image of the path's end point, the start point mapping to the origin.
pub fn immerse_point(field: &SpinorField, path: &PathSpec, quad: QuadratureSpec) -> Result<ImmersedPoint> {
    immerse_point_with(field, path, quad, FormConvention::Closed)
}

pub fn immerse_point_with(
    field: &SpinorField,
    path: &PathSpec,
    quad: QuadratureSpec,
    convention: FormConvention,
) -> Result<ImmersedPoint> {
    Ok(path_integrals(field, path, quad, convention)?.to_point())
}

/// Largest exterior-derivative defect of the three forms over the grid,
/// each pointwise value divided by `max(1, |psi|, |phi|)^2`.
///
/// Analytic derivatives are used when the field has them (all nodes
/// checked), otherwise finite differences (interior nodes only).
pub fn form_closedness_residual(field: &SpinorField, grid: &GridSpec) -> Result<f64> {
    form_closedness_residual_with(field, grid, FormConvention::Closed)
}

pub fn form_closedness_residual_with(
    field: &SpinorField,
    grid: &GridSpec,
    convention: FormConvention,
) -> Result<f64> {
    let analytic = field.has_analytic_derivatives();
    let jets = field.jets_on(grid, DerivativeMode::Auto)?;
    let mut worst: f64 = 0.0;
    for (i, j, _, _) in grid.nodes() {
        if !analytic && !grid.is_interior(i, j) {
            continue;
        }
        let jet = &jets[grid.index(i, j)];
        let scale = jet.value.magnitude_scale().powi(2);
        let [_, d_x, d_y] = convention.coefficient_jets(jet);
        for k in 0..3 {
            // form = A dx + B dy with A = f + g, B = i (f - g); d(form) = (B_x - A_y) dx^dy
            let (fx, gx) = d_x[k];
            let (fy, gy) = d_y[k];
            let defect = (I * (fx - gx) - (fy + gy)).norm() / scale;
            worst = if defect.is_nan() { f64::NAN } else { worst.max(defect) };
        }
    }
    Ok(worst)
}

/// Largest coordinate difference between the images of two paths sharing
/// their end points.
pub fn path_independence_check(
    field: &SpinorField,
    path_a: &PathSpec,
    path_b: &PathSpec,
    quad: QuadratureSpec,
) -> Result<f64> {
    path_independence_check_with(field, path_a, path_b, quad, FormConvention::Closed)
}

pub fn path_independence_check_with(
    field: &SpinorField,
    path_a: &PathSpec,
    path_b: &PathSpec,
    quad: QuadratureSpec,
    convention: FormConvention,
) -> Result<f64> {
    if path_a.start() != path_b.start() || path_a.end() != path_b.end() {
        return Err(Error::Usage(format!(
            "paths must share end points: {:?}->{:?} vs {:?}->{:?}",
            path_a.start(),
            path_a.end(),
            path_b.start(),
            path_b.end()
        )));
    }
    let a = immerse_point_with(field, path_a, quad, convention)?;
    let b = immerse_point_with(field, path_b, quad, convention)?;
    Ok((0..3).map(|k| (a.position[k] - b.position[k]).abs()).fold(0.0, f64::max))
}

/// Vertex grid of an immersed surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub grid: GridSpec,
    /// `nx * ny` vertices in grid order (`j * nx + i`).
    pub vertices: Vec<[f64; 3]>,
    /// Conformal factor at each vertex, when the mesh came from a field.
    pub conformal: Option<Vec<f64>>,
    /// Position assigned to the grid corner `(x_min, y_min)`.
    pub basepoint: [f64; 3],
    /// Largest imaginary part discarded while forming the coordinates.
    pub max_leakage: f64,
}

impl SurfaceMesh {
    pub fn vertex(&self, i: usize, j: usize) -> [f64; 3] {
        self.vertices[self.grid.index(i, j)]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        (self.grid.nx() - 1) * (self.grid.ny() - 1)
    }

    /// Quads `(i, j), (i+1, j), (i+1, j+1), (i, j+1)` as 0-based indices.
    pub fn faces(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        let g = self.grid;
        (0..g.ny() - 1).flat_map(move |j| {
            (0..g.nx() - 1).map(move |i| [g.index(i, j), g.index(i + 1, j), g.index(i + 1, j + 1), g.index(i, j + 1)])
        })
    }

    pub fn bounding_box(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }
}

/// Options for [`build_mesh_with`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeshOptions {
    pub convention: FormConvention,
    pub basepoint: [f64; 3],
}

/// Immerses every grid node along `(x_min, y_min) -> (x_i, y_min) -> (x_i, y_j)`,
/// accumulating the integrals segment by segment.
pub fn build_mesh(field: &SpinorField, grid: &GridSpec, quad: QuadratureSpec) -> Result<SurfaceMesh> {
    build_mesh_with(field, grid, quad, &MeshOptions::default())
}

pub fn build_mesh_with(
    field: &SpinorField,
    grid: &GridSpec,
    quad: QuadratureSpec,
    options: &MeshOptions,
) -> Result<SurfaceMesh> {
    let domain = field.domain();
    if !domain.covers(grid) {
        let (x, y) = if domain.contains(grid.x_min(), grid.y_min()) {
            (grid.x_max(), grid.y_max())
        } else {
            (grid.x_min(), grid.y_min())
        };
        return Err(Error::Domain { x, y });
    }
    let rule = SegmentRule::new(quad)?;
    let conv = options.convention;
    let (nx, ny) = (grid.nx(), grid.ny());

    let mut sums = vec![FormSums::default(); grid.len()];
    for i in 1..nx {
        let seg = rule.integrate(field, conv, (grid.x(i - 1), grid.y(0)), (grid.x(i), grid.y(0)))?;
        let mut next = sums[grid.index(i - 1, 0)];
        next.add(&seg);
        sums[grid.index(i, 0)] = next;
    }
    for i in 0..nx {
        for j in 1..ny {
            let seg = rule.integrate(field, conv, (grid.x(i), grid.y(j - 1)), (grid.x(i), grid.y(j)))?;
            let mut next = sums[grid.index(i, j - 1)];
            next.add(&seg);
            sums[grid.index(i, j)] = next;
        }
    }

    let mut max_leakage: f64 = 0.0;
    let mut vertices = Vec::with_capacity(grid.len());
    for s in &sums {
        let p = s.to_point();
        if p.position.iter().any(|c| !c.is_finite()) {
            return Err(Error::Integration { x: f64::NAN, reason: "non-finite mesh vertex".into() });
        }
        max_leakage = max_leakage.max(p.max_leakage());
        let b = options.basepoint;
        vertices.push([p.position[0] + b[0], p.position[1] + b[1], p.position[2] + b[2]]);
    }
    let conformal = field.sample(grid)?.iter().map(SpinorValue::conformal_factor).collect();
    Ok(SurfaceMesh {
        grid: *grid,
        vertices,
        conformal: Some(conformal),
        basepoint: options.basepoint,
        max_leakage,
    })
}

/// Discrete first fundamental form of a mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalForm {
    pub e: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    /// `max(|E - rho^2|, |G - rho^2|, |F|) / max(rho^2)` over interior nodes,
    /// when the mesh carries conformal-factor samples.
    pub conformality_defect: Option<f64>,
}

/// `E = |X_x|^2`, `F = X_x . X_y`, `G = |X_y|^2` by second-order differences.
pub fn first_fundamental_form(mesh: &SurfaceMesh) -> Result<FundamentalForm> {
    let grid = mesh.grid;
    let (nx, ny) = (grid.nx(), grid.ny());
    if nx < 3 || ny < 3 {
        return Err(Error::Config(format!("fundamental form needs at least 3x3 nodes, got {nx}x{ny}")));
    }
    let mut xd = vec![[0.0; 3]; grid.len()];
    let mut yd = vec![[0.0; 3]; grid.len()];
    for k in 0..3 {
        for j in 0..ny {
            let row: Vec<f64> = (0..nx).map(|i| mesh.vertex(i, j)[k]).collect();
            for (i, d) in diff_second_order(&row, grid.hx()).into_iter().enumerate() {
                xd[grid.index(i, j)][k] = d;
            }
        }
        for i in 0..nx {
            let col: Vec<f64> = (0..ny).map(|j| mesh.vertex(i, j)[k]).collect();
            for (j, d) in diff_second_order(&col, grid.hy()).into_iter().enumerate() {
                yd[grid.index(i, j)][k] = d;
            }
        }
    }
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let e: Vec<f64> = xd.iter().map(|v| dot(v, v)).collect();
    let f: Vec<f64> = xd.iter().zip(&yd).map(|(a, b)| dot(a, b)).collect();
    let g: Vec<f64> = yd.iter().map(|v| dot(v, v)).collect();

    let conformality_defect = mesh.conformal.as_ref().map(|rho| {
        let mut worst: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for (i, j, _, _) in grid.nodes() {
            if !grid.is_interior(i, j) {
                continue;
            }
            let k = grid.index(i, j);
            let rho2 = rho[k] * rho[k];
            peak = peak.max(rho2);
            worst = worst.max((e[k] - rho2).abs()).max((g[k] - rho2).abs()).max(f[k].abs());
        }
        worst / peak
    });
    Ok(FundamentalForm { e, f, g, conformality_defect })
}

/// Mesh file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
    Csv,
}

impl MeshFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MeshFormat::Obj => "obj",
            MeshFormat::Ply => "ply",
            MeshFormat::Csv => "csv",
        }
    }
}

impl FromStr for MeshFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            "csv" => Ok(MeshFormat::Csv),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for MeshFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub(crate) struct Exact(pub f64);

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

pub fn export_mesh<W: Write>(mesh: &SurfaceMesh, format: MeshFormat, mut out: W) -> Result<()> {
    match format {
        MeshFormat::Obj => {
            for v in &mesh.vertices {
                writeln!(out, "v {} {} {}", Exact(v[0]), Exact(v[1]), Exact(v[2]))?;
            }
            for q in mesh.faces() {
                writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)?;
            }
        }
        MeshFormat::Ply => {
            writeln!(out, "ply")?;
            writeln!(out, "format ascii 1.0")?;
            writeln!(out, "element vertex {}", mesh.vertex_count())?;
            writeln!(out, "property double x")?;
            writeln!(out, "property double y")?;
            writeln!(out, "property double z")?;
            writeln!(out, "element face {}", mesh.face_count())?;
            writeln!(out, "property list uchar int vertex_indices")?;
            writeln!(out, "end_header")?;
            for v in &mesh.vertices {
                writeln!(out, "{} {} {}", Exact(v[0]), Exact(v[1]), Exact(v[2]))?;
            }
            for q in mesh.faces() {
                writeln!(out, "4 {} {} {} {}", q[0], q[1], q[2], q[3])?;
            }
        }
        MeshFormat::Csv => {
            writeln!(out, "i,j,x,y,X1,X2,X3")?;
            for (i, j, x, y) in mesh.grid.nodes() {
                let v = mesh.vertex(i, j);
                writeln!(
                    out,
                    "{i},{j},{},{},{},{},{}",
                    Exact(x),
                    Exact(y),
                    Exact(v[0]),
                    Exact(v[1]),
                    Exact(v[2])
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes the mesh to `path`, creating parent directories as needed.
pub fn write_mesh(mesh: &SurfaceMesh, format: MeshFormat, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let file = std::fs::File::create(path)?;
    export_mesh(mesh, format, std::io::BufWriter::new(file))
}

/// Reads a mesh written in the CSV format back; the grid is recovered from
/// the node coordinates. Conformal samples are not stored in the file.
pub fn read_mesh_csv<R: BufRead>(input: R, source: &Path) -> Result<SurfaceMesh> {
    let parse_err = |reason: String| Error::Parse { path: source.to_path_buf(), reason };
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader.headers().map_err(|e| parse_err(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["i", "j", "x", "y", "X1", "X2", "X3"] {
        return Err(parse_err(format!("unexpected header {:?}", headers)));
    }
    let mut rows = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(e.to_string()))?;
        let field = |k: usize| rec.get(k).ok_or_else(|| parse_err(format!("row {}: missing column {k}", line + 2)));
        let int = |k: usize| -> Result<usize> {
            field(k)?.parse().map_err(|e| parse_err(format!("row {}: {e}", line + 2)))
        };
        let real = |k: usize| -> Result<f64> {
            field(k)?.parse().map_err(|e| parse_err(format!("row {}: {e}", line + 2)))
        };
        rows.push((int(0)?, int(1)?, real(2)?, real(3)?, [real(4)?, real(5)?, real(6)?]));
    }
    let nx = rows.iter().map(|r| r.0).max().map_or(0, |m| m + 1);
    let ny = rows.iter().map(|r| r.1).max().map_or(0, |m| m + 1);
    if rows.len() != nx * ny {
        return Err(parse_err(format!("expected {} rows for a {nx}x{ny} grid, found {}", nx * ny, rows.len())));
    }
    let (mut x_min, mut x_max, mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        x_min = x_min.min(r.2);
        x_max = x_max.max(r.2);
        y_min = y_min.min(r.3);
        y_max = y_max.max(r.3);
    }
    let grid = GridSpec::new(x_min, x_max, y_min, y_max, nx, ny).map_err(|e| parse_err(e.to_string()))?;
    let mut vertices = vec![[f64::NAN; 3]; grid.len()];
    for (i, j, _, _, v) in rows {
        vertices[grid.index(i, j)] = v;
    }
    if vertices.iter().any(|v| v[0].is_nan()) {
        return Err(parse_err("duplicate or missing node indices".into()));
    }
    Ok(SurfaceMesh { grid, vertices, conformal: None, basepoint: [0.0; 3], max_leakage: 0.0 })
}
