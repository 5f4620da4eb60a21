use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use spinorsurf::mkdv::{
    deformed_spinor_field, evolve, exact_soliton_profile, translation_deviation, EvolutionConfig, Profile1D,
    DEFAULT_PHASE_LAW_SIGN,
};
use spinorsurf::soliton::sech;
use spinorsurf::weierstrass::{build_mesh_with, write_mesh};

use crate::config::{self, pick, FileConfig};
use crate::surface::{merged_mesh, merged_soliton, mesh_setup};
use crate::{CliError, EvolveArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Init {
    ExactSoliton,
    Bargmann,
    File,
}

fn parse_init(text: &str) -> Result<Init, CliError> {
    match text.to_ascii_lowercase().as_str() {
        "exact-soliton" | "exact" | "soliton" => Ok(Init::ExactSoliton),
        "bargmann" | "static" => Ok(Init::Bargmann),
        "file" => Ok(Init::File),
        other => Err(CliError::Validation(format!("--init must be exact-soliton, bargmann or file, got `{other}`"))),
    }
}

fn positive(value: f64, flag: &str) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::Validation(format!("--{flag} must be positive, got {value}")))
    }
}

/// Reads `x,u` rows and checks them against the periodic grid of `length`.
fn read_profile(path: &Path, length: f64) -> Result<Profile1D, CliError> {
    let bad = |reason: String| CliError::Lib(spinorsurf::Error::Parse { path: path.to_path_buf(), reason });
    let mut reader = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "u" {
        return Err(bad("expected header `x,u`".into()));
    }
    let mut xs = Vec::new();
    let mut us = Vec::new();
    for (k, row) in reader.records().enumerate() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let num = |c: usize| -> Result<f64, CliError> {
            row[c].trim().parse().map_err(|_| bad(format!("row {}: `{}` is not a number", k + 1, &row[c])))
        };
        xs.push(num(0)?);
        us.push(num(1)?);
    }
    let profile = Profile1D::new(length, us).map_err(|e| CliError::Validation(e.to_string()))?;
    for (j, &x) in xs.iter().enumerate() {
        if (x - profile.x(j)).abs() > 1e-9 * length.max(1.0) {
            return Err(CliError::Validation(format!(
                "{}: x = {x} at row {} does not match the periodic grid of length {length} (expected {})",
                path.display(),
                j + 1,
                profile.x(j)
            )));
        }
    }
    Ok(profile)
}

pub fn run(args: &EvolveArgs, file: &FileConfig) -> Result<(), CliError> {
    let variant = config::parse_variant(&pick(args.variant.clone(), file.variant.clone()).unwrap_or("eq16".into()))?;
    let init = parse_init(&pick(args.init.clone(), file.init.clone()).unwrap_or("exact-soliton".into()))?;
    let kappa = positive(pick(args.kappa, file.kappa).unwrap_or(1.0), "kappa")?;
    let length = positive(pick(args.length, file.length).unwrap_or(40.0), "length")?;
    let n = pick(args.n, file.n).unwrap_or(512);
    let dt = pick(args.dt, file.dt).unwrap_or(1e-4);
    let t_end = pick(args.t_end, file.t_end).unwrap_or(1.0);
    let record_every = pick(args.record_every, file.record_every).unwrap_or(1000);
    let dealias = if args.no_dealias { false } else { file.dealias.unwrap_or(true) };
    let cfg = EvolutionConfig::new(dt, t_end)
        .and_then(|c| c.with_record_every(record_every))
        .map_err(|e| CliError::Validation(e.to_string()))?
        .with_dealias(dealias);

    let mut soliton = merged_soliton(&args.soliton, file);
    if soliton.mu.is_none() && init != Init::Bargmann {
        soliton.mu = Some(kappa);
    }
    soliton.mu.get_or_insert(1.0);
    let (params, lambda) = config::soliton_inputs(soliton.mu, soliton.phase, soliton.sign, soliton.lambda)?;

    let u0 = match init {
        Init::ExactSoliton => exact_soliton_profile(variant, kappa, 0.0, length, n),
        Init::Bargmann => {
            // The static ZS potential u_zs, in the unknown of the chosen variant.
            let scale = variant.amplitude_factor() / 2.0;
            let (mu, phi0, sigma) = (params.mu(), params.phi0(), params.sigma());
            Profile1D::from_fn(length, n, |x| scale * sigma * mu * sech(mu * x - phi0))
        }
        Init::File => {
            let path = config::require(pick(args.init_file.clone(), file.init_file.clone()), "init-file")?;
            Ok(read_profile(&path, length)?)
        }
    }
    .map_err(|e| CliError::Validation(e.to_string()))?;

    let trajectory = evolve(&u0, variant, &cfg)?;
    let last = trajectory.last();

    let out = config::output_path(pick(args.out.clone(), file.out.clone()), "trajectory.csv");
    let inv_out = pick(args.invariants_out.clone(), file.invariants_out.clone())
        .unwrap_or_else(|| config::sibling_path(&out, "_invariants", "csv"));
    config::ensure_parent(&out)?;
    config::ensure_parent(&inv_out)?;
    let io = |e: std::io::Error| CliError::Lib(e.into());
    trajectory.write_csv(BufWriter::new(File::create(&out).map_err(io)?))?;
    trajectory.write_invariants_csv(BufWriter::new(File::create(&inv_out).map_err(io)?))?;

    let mut meshes = 0;
    if let Some(fmt) = pick(args.mesh_format.as_deref(), file.mesh_format.as_deref()) {
        let format = config::parse_format(fmt, "mesh-format")?;
        let sign = match pick(args.phase_law_sign.clone(), file.phase_law_sign.clone()) {
            Some(s) => config::parse_sign(&s, "phase-law-sign")?,
            None => DEFAULT_PHASE_LAW_SIGN,
        };
        let setup = mesh_setup(&merged_mesh(&args.mesh, file))?;
        for (k, snap) in trajectory.snapshots.iter().enumerate() {
            let field = deformed_spinor_field(&params, lambda, snap.t, sign)?;
            let mesh = build_mesh_with(&field, &setup.grid, setup.quad, &setup.options)?;
            let path = config::sibling_path(&out, &format!("_mesh_{k:04}"), format.extension());
            write_mesh(&mesh, format, &path)?;
            meshes += 1;
        }
    }

    let mut report = String::new();
    let _ = writeln!(report, "trajectory\t{}", out.display());
    let _ = writeln!(report, "invariants\t{}", inv_out.display());
    let _ = writeln!(report, "variant\t{variant:?}");
    let _ = writeln!(report, "steps\t{}", cfg.steps());
    let _ = writeln!(report, "snapshots\t{}", trajectory.snapshots.len());
    let _ = writeln!(report, "t_final\t{}", last.t);
    let _ = writeln!(report, "invariant_drift\t{:.3e}", trajectory.max_invariant_drift());
    match init {
        Init::ExactSoliton => {
            let exact = exact_soliton_profile(variant, kappa, last.t, length, n)?;
            let _ = writeln!(report, "tracking_error\t{:.3e}", last.profile.max_abs_diff(&exact));
        }
        Init::Bargmann | Init::File => {
            let _ = writeln!(report, "translation_deviation\t{:.3e}", translation_deviation(&last.profile, &u0)?);
        }
    }
    if meshes > 0 {
        let _ = writeln!(report, "meshes\t{meshes}");
    }
    crate::emit(&report);
    Ok(())
}
