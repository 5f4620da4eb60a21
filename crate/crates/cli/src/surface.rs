use std::fmt::Write as _;
use std::path::Path;

use spinorsurf::soliton::{dirac_potential, revolve_spinors};
use spinorsurf::spinor::dirac_residual;
use spinorsurf::weierstrass::{
    build_mesh_with, first_fundamental_form, form_closedness_residual_with, write_mesh, MeshFormat, MeshOptions,
};

use crate::config::{self, pick, FileConfig};
use crate::{CliError, MeshArgs, SolitonArgs, SurfaceArgs};

const GRID_DEFAULTS: ([f64; 4], [usize; 2]) = ([-6.0, 6.0, 0.0, std::f64::consts::TAU], [121, 64]);

/// Flags merged over the config file.
pub(crate) fn merged_soliton(args: &SolitonArgs, file: &FileConfig) -> SolitonArgs {
    SolitonArgs {
        mu: pick(args.mu, file.mu),
        phase: pick(args.phase, file.phase),
        sign: pick(args.sign.clone(), file.sign.clone()),
        lambda: pick(args.lambda.clone(), file.lambda.clone()),
    }
}

pub(crate) fn merged_mesh(args: &MeshArgs, file: &FileConfig) -> MeshArgs {
    MeshArgs {
        xmin: pick(args.xmin, file.xmin),
        xmax: pick(args.xmax, file.xmax),
        ymin: pick(args.ymin, file.ymin),
        ymax: pick(args.ymax, file.ymax),
        nx: pick(args.nx, file.nx),
        ny: pick(args.ny, file.ny),
        nodes: pick(args.nodes, file.nodes),
        subdivisions: pick(args.subdivisions, file.subdivisions),
        convention: pick(args.convention.clone(), file.convention.clone()),
    }
}

pub(crate) struct MeshSetup {
    pub grid: spinorsurf::GridSpec,
    pub quad: spinorsurf::weierstrass::QuadratureSpec,
    pub options: MeshOptions,
}

pub(crate) fn mesh_setup(m: &MeshArgs) -> Result<MeshSetup, CliError> {
    let grid = config::grid_from([m.xmin, m.xmax, m.ymin, m.ymax], [m.nx, m.ny], GRID_DEFAULTS)?;
    let quad = config::quadrature_from(m.nodes, m.subdivisions)?;
    let convention = match &m.convention {
        Some(c) => config::parse_convention(c)?,
        None => Default::default(),
    };
    Ok(MeshSetup { grid, quad, options: MeshOptions { convention, ..Default::default() } })
}

fn format_for(explicit: Option<&str>, out: Option<&Path>) -> Result<MeshFormat, CliError> {
    if let Some(f) = explicit {
        return config::parse_format(f, "format");
    }
    let from_ext = out.and_then(|p| p.extension()).and_then(|e| e.to_str()).and_then(|e| e.parse().ok());
    Ok(from_ext.unwrap_or(MeshFormat::Obj))
}

pub fn run(args: &SurfaceArgs, file: &FileConfig) -> Result<(), CliError> {
    let s = merged_soliton(&args.soliton, file);
    let (params, lambda) = config::soliton_inputs(s.mu, s.phase, s.sign, s.lambda)?;
    let setup = mesh_setup(&merged_mesh(&args.mesh, file))?;
    let out = pick(args.out.clone(), file.out.clone());
    let format = format_for(pick(args.format.as_deref(), file.format.as_deref()), out.as_deref())?;
    let out = config::output_path(out, &format!("soliton_surface.{}", format.extension()));

    let field = revolve_spinors(&params, lambda, 0.0)?;
    let potential = dirac_potential(&params, 0.0);
    let grid = setup.grid;
    log::info!("immersing {}x{} nodes", grid.nx(), grid.ny());

    let dirac = dirac_residual(&field, &potential, &grid)?;
    let closedness = form_closedness_residual_with(&field, &grid, setup.options.convention)?;
    let mesh = build_mesh_with(&field, &grid, setup.quad, &setup.options)?;
    let conformality = if grid.nx() >= 3 && grid.ny() >= 3 {
        first_fundamental_form(&mesh)?.conformality_defect
    } else {
        None
    };

    config::ensure_parent(&out)?;
    write_mesh(&mesh, format, &out)?;

    let (lo, hi) = mesh.bounding_box();
    let conformality = conformality.map_or("n/a".to_string(), |d| format!("{d:.3e}"));
    let mut report = String::new();
    let _ = write!(
        report,
        "output\t{}\nformat\t{}\nvertices\t{}\nfaces\t{}\ndirac_residual\t{:.3e}\nform_closedness\t{:.3e}\n\
         imaginary_leakage\t{:.3e}\nconformality_defect\t{}\n\
         bounding_box\t[{:.6}, {:.6}, {:.6}] .. [{:.6}, {:.6}, {:.6}]\n",
        out.display(),
        format.extension(),
        mesh.vertex_count(),
        mesh.face_count(),
        dirac.max(),
        closedness,
        mesh.max_leakage,
        conformality,
        lo[0], lo[1], lo[2], hi[0], hi[1], hi[2],
    );
    crate::emit(&report);
    Ok(())
}
