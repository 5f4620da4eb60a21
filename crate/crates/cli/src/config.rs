//! Run configuration: a flat TOML file overlaid by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use spinorsurf::mkdv::Variant;
use spinorsurf::soliton::{Branch, SolitonParams, SpectralParam};
use spinorsurf::weierstrass::{FormConvention, MeshFormat, QuadratureSpec};
use spinorsurf::GridSpec;

use crate::CliError;

pub const OUT_DIR_ENV: &str = "SPINORSURF_OUT_DIR";

/// Every key the config file may carry. Names follow the long flags with
/// dashes replaced by underscores.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mu: Option<f64>,
    pub phase: Option<f64>,
    pub sign: Option<String>,
    pub lambda: Option<String>,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub ymin: Option<f64>,
    pub ymax: Option<f64>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub nodes: Option<usize>,
    pub subdivisions: Option<usize>,
    pub convention: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,

    pub variant: Option<String>,
    pub init: Option<String>,
    pub init_file: Option<PathBuf>,
    pub kappa: Option<f64>,
    pub length: Option<f64>,
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub record_every: Option<usize>,
    pub dealias: Option<bool>,
    pub phase_law_sign: Option<String>,
    pub mesh_format: Option<String>,
    pub invariants_out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config file {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config file {}: {}", path.display(), e.message())))
    }
}

/// Flag value if given, else the file value.
pub fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

pub fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Validation(format!(
            "missing required parameter --{flag} (or `{}` in the config file)",
            flag.replace('-', "_")
        ))
    })
}

pub fn parse_lambda(text: &str) -> Result<SpectralParam, CliError> {
    let bad = || CliError::Validation(format!("--lambda expects `re,im`, got `{text}`"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(SpectralParam::new(re, im))
}

pub fn parse_sign(text: &str, flag: &str) -> Result<f64, CliError> {
    match text.trim() {
        "+1" | "1" | "+" | "1.0" | "+1.0" => Ok(1.0),
        "-1" | "-" | "-1.0" => Ok(-1.0),
        other => Err(CliError::Validation(format!("--{flag} must be +1 or -1, got `{other}`"))),
    }
}

pub fn parse_convention(text: &str) -> Result<FormConvention, CliError> {
    match text.to_ascii_lowercase().as_str() {
        "closed" => Ok(FormConvention::Closed),
        "printed" => Ok(FormConvention::Printed),
        other => Err(CliError::Validation(format!("--convention must be closed or printed, got `{other}`"))),
    }
}

pub fn parse_format(text: &str, flag: &str) -> Result<MeshFormat, CliError> {
    text.parse()
        .map_err(|_| CliError::Validation(format!("--{flag} must be one of obj, ply, csv, got `{text}`")))
}

pub fn parse_variant(text: &str) -> Result<Variant, CliError> {
    text.parse().map_err(|_| CliError::Validation(format!("--variant must be eq16 or eq17, got `{text}`")))
}

/// Soliton parameters plus the spectral parameter, checked against the pole.
pub fn soliton_inputs(
    mu: Option<f64>,
    phase: Option<f64>,
    sign: Option<String>,
    lambda: Option<String>,
) -> Result<(SolitonParams, SpectralParam), CliError> {
    let mu = require(mu, "mu")?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(CliError::Validation(format!("--mu must be positive, got {mu}")));
    }
    let phase = phase.unwrap_or(0.0);
    if !phase.is_finite() {
        return Err(CliError::Validation(format!("--phase must be finite, got {phase}")));
    }
    let sign = parse_sign(sign.as_deref().unwrap_or("+1"), "sign")?;
    let branch = Branch::from_sign(sign).map_err(CliError::from)?;
    let params = SolitonParams::new(mu, phase, branch).map_err(CliError::from)?;
    let lambda = parse_lambda(lambda.as_deref().unwrap_or("0,1"))?;
    lambda.denominator(mu).map_err(|e| CliError::Validation(format!("--lambda: {e}")))?;
    Ok((params, lambda))
}

pub fn grid_from(
    bounds: [Option<f64>; 4],
    counts: [Option<usize>; 2],
    defaults: ([f64; 4], [usize; 2]),
) -> Result<GridSpec, CliError> {
    let [x0, x1, y0, y1] = [0, 1, 2, 3].map(|k| bounds[k].unwrap_or(defaults.0[k]));
    let [nx, ny] = [0, 1].map(|k| counts[k].unwrap_or(defaults.1[k]));
    GridSpec::new(x0, x1, y0, y1, nx, ny).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn quadrature_from(nodes: Option<usize>, subdivisions: Option<usize>) -> Result<QuadratureSpec, CliError> {
    let d = QuadratureSpec::default();
    QuadratureSpec::new(
        nodes.unwrap_or(d.nodes_per_segment),
        subdivisions.unwrap_or(d.subdivisions_per_segment),
    )
    .map_err(|e| CliError::Validation(e.to_string()))
}

/// `explicit` if given; otherwise `default_name` inside `$SPINORSURF_OUT_DIR`
/// (or the working directory).
pub fn output_path(explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    match explicit {
        Some(p) => p,
        None => match std::env::var_os(OUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(default_name),
            _ => PathBuf::from(default_name),
        },
    }
}

/// `base` with `suffix` inserted before the extension: `traj.csv` -> `traj_invariants.csv`.
pub fn sibling_path(base: &Path, suffix: &str, extension: &str) -> PathBuf {
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    base.with_file_name(format!("{stem}{suffix}.{extension}"))
}

pub fn ensure_parent(path: &Path) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Lib(e.into()))?;
    }
    Ok(())
}
