//! Spinor fields on surfaces of revolution.
//!
//! The crate builds closed-form one-soliton solutions of the Zakharov-Shabat
//! system, lifts them to spinor pairs `(psi, phi)` solving the 2D Dirac
//! equation `psi_z = p phi`, `phi_zbar = -p psi`, reconstructs the immersed
//! surface in R^3 through the spinor Weierstrass integrals and evolves the
//! potential under the modified KdV flow.
//!
//! Every closed-form identity has a residual evaluator next to it so the
//! formulas can be checked rather than trusted:
//!
//! - [`spinor`]: grids, spinor fields, Dirac residual, conformal factor,
//!   mean curvature and Gauss map.
//! - [`clifford`]: 2x2 complex realization of the quaternion group, Weyl
//!   projectors and Radon-Hurwitz numbers.
//! - [`soliton`]: Bargmann potentials, Jost functions, an RK4 integrator
//!   used as an independent oracle, and the separable spinor fields.
//! - [`weierstrass`]: immersion integrals, mesh construction, conformality
//!   and closedness diagnostics, mesh export.
//! - [`mkdv`]: pseudo-spectral mKdV evolution, exact solitons, invariants
//!   and time-deformed spinor fields.

pub mod clifford;
pub mod error;
pub mod grid;
pub mod mkdv;
pub mod soliton;
pub mod spectral;
pub mod spinor;
pub mod weierstrass;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use num_complex::Complex64;
