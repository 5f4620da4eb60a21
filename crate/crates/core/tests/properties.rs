use std::io::Cursor;
use std::path::Path;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use spinorsurf::clifford::{quaternion_embed, rh_number, weyl_split};
use spinorsurf::soliton::{revolve_spinors, Branch, JostSolution, SolitonParams, SpectralParam};
use spinorsurf::spinor::{gauss_map_value, SpinorValue};
use spinorsurf::weierstrass::{build_mesh, export_mesh, read_mesh_csv, MeshFormat, QuadratureSpec};
use spinorsurf::GridSpec;

fn complex() -> impl Strategy<Value = C> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| C::new(a, b))
}

proptest! {
    #[test]
    fn gauss_map_is_projective(psi in complex(), phi in complex(), c in complex()) {
        prop_assume!(psi.norm() > 1e-3 && c.norm() > 1e-3);
        let a = gauss_map_value(SpinorValue::new(psi, phi)).unwrap();
        let b = gauss_map_value(SpinorValue::new(c * psi, c * phi)).unwrap();
        let (sa, sb) = (a.finite().unwrap(), b.finite().unwrap());
        prop_assert!((sa - sb).norm() <= 1e-12 * (1.0 + sa.norm()));
        prop_assert!((b.weight() - c * c * a.weight()).norm() <= 1e-12 * (1.0 + b.weight().norm()));
    }

    #[test]
    fn embedding_is_multiplicative(a in prop::array::uniform4(-2.0..2.0f64), b in prop::array::uniform4(-2.0..2.0f64)) {
        let ea = quaternion_embed(a[0], a[1], a[2], a[3]);
        let eb = quaternion_embed(b[0], b[1], b[2], b[3]);
        let na: f64 = a.iter().map(|v| v * v).sum();
        let nb: f64 = b.iter().map(|v| v * v).sum();
        prop_assert!(((ea * eb).det().re - na * nb).abs() < 1e-10);
        prop_assert!((ea * eb).is_quaternionic(1e-12));
    }

    #[test]
    fn weyl_halves_add_up(a in complex(), b in complex()) {
        let (p, m) = weyl_split([a, b]);
        prop_assert!((p[0] + m[0] - a).norm() < 1e-14);
        prop_assert!((p[1] + m[1] - b).norm() < 1e-14);
    }

    #[test]
    fn rh_recurrence(i in 0i64..200) {
        prop_assert_eq!(rh_number(i + 8), rh_number(i) + 4);
    }

    #[test]
    fn phase_shift_is_translation(mu in 0.5..2.0f64, phi0 in -1.0..1.0f64, shift in -1.0..1.0f64, x in -3.0..3.0f64) {
        // Shifting phi0 by mu d only moves the potential; the exponential is untouched.
        let lam = SpectralParam::new(0.7, 0.3);
        let p = SolitonParams::new(mu, phi0, Branch::Plus).unwrap();
        let shifted = JostSolution::new(p, lam, mu * shift).unwrap();
        let moved = JostSolution::new(p, lam, 0.0).unwrap();
        let (a1, a2) = shifted.value(x);
        let (b1, b2) = moved.value(x - shift);
        let e = (C::new(0.0, -1.0) * lam.0 * shift).exp();
        prop_assert!((a1 - e * b1).norm() < 1e-12);
        prop_assert!((a2 - e * b2).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn csv_mesh_round_trip(mu in 0.5..2.0f64, re in -1.0..1.0f64, im in 0.1..1.5f64) {
        let p = SolitonParams::new(mu, 0.1, Branch::Minus).unwrap();
        let field = revolve_spinors(&p, SpectralParam::new(re, im), 0.0).unwrap();
        let grid = GridSpec::new(-1.0, 1.0, 0.0, 1.0, 5, 4).unwrap();
        let mesh = build_mesh(&field, &grid, QuadratureSpec::default()).unwrap();
        let mut buf = Vec::new();
        export_mesh(&mesh, MeshFormat::Csv, &mut buf).unwrap();
        let back = read_mesh_csv(Cursor::new(buf), Path::new("mem.csv")).unwrap();
        prop_assert_eq!(back.grid, mesh.grid);
        prop_assert_eq!(back.vertices, mesh.vertices);
    }
}
