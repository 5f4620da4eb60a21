//! Hand-derived values and convergence orders against the library.

use approx::assert_abs_diff_eq;
use num_complex::Complex64 as C;
use spinorsurf::clifford::{quaternion_embed, sigma12, Matrix2C, SIGMA1, SIGMA2};
use spinorsurf::soliton::{
    dirac_potential, revolve_spinors, sech, zs_integrate, zs_residual, Branch, JostSolution, SolitonParams,
    SpectralParam, ZsDerivative,
};
use spinorsurf::spinor::{dirac_residual_with, gauss_map, DerivativeMode, SpinorField};
use spinorsurf::GridSpec;

const I: C = C::new(0.0, 1.0);

fn unit_soliton() -> SolitonParams {
    SolitonParams::new(1.0, 0.0, Branch::Plus).unwrap()
}

#[test]
fn frozen_values_at_origin() {
    // mu = 1, phi0 = 0, lambda = 1: phi1(0) = 2i / (2i - 1), phi2(0) = 1 / (2i - 1).
    let field = revolve_spinors(&unit_soliton(), SpectralParam::new(1.0, 0.0), 0.0).unwrap();
    let v = field.eval(0.0, 0.0).unwrap();
    assert_abs_diff_eq!(v.psi.norm_sqr() + v.phi.norm_sqr(), 1.0, epsilon = 1e-14);
    let s = gauss_map(&field, 0.0, 0.0).unwrap().finite().unwrap();
    assert_abs_diff_eq!(s.re, 0.0, epsilon = 1e-14);
    assert_abs_diff_eq!(s.im, -0.5, epsilon = 1e-14);

    let jost = JostSolution::new(unit_soliton(), SpectralParam::new(1.0, 0.0), 0.0).unwrap();
    let (p1, p2) = jost.value(0.0);
    let d = 2.0 * I - 1.0;
    assert!((p1 - 2.0 * I / d).norm() < 1e-15);
    assert!((p2 - 1.0 / d).norm() < 1e-15);
}

#[test]
fn far_field_is_free_wave() {
    // For x -> -inf, tanh -> -1 and (phi1, phi2) -> (e^{-i lambda x}, 0).
    let jost = JostSolution::new(unit_soliton(), SpectralParam::new(1.0, 0.0), 0.0).unwrap();
    let (p1, p2) = jost.value(-30.0);
    assert!((p1 - (30.0 * I).exp()).norm() < 1e-12);
    assert!(p2.norm() < 1e-12);
}

#[test]
fn jost_finite_difference_residual_is_second_order() {
    let jost = JostSolution::new(SolitonParams::new(1.3, 0.4, Branch::Minus).unwrap(), SpectralParam::new(0.7, 0.2), 0.0)
        .unwrap();
    let u = |x: f64| -1.3 * sech(1.3 * x - 0.4);
    let residual = |n: usize| {
        let xs: Vec<f64> = (0..n).map(|k| -5.0 + 10.0 * k as f64 / (n - 1) as f64).collect();
        zs_residual(&|x| jost.value(x), ZsDerivative::FiniteDifference, &u, jost.lambda(), &xs).unwrap().max()
    };
    let (a, b) = (residual(201), residual(401));
    let order = (a / b).log2();
    assert!((order - 2.0).abs() < 0.1, "order {order}");
    let analytic = {
        let xs: Vec<f64> = (0..201).map(|k| -5.0 + 0.05 * k as f64).collect();
        zs_residual(&|x| jost.value(x), ZsDerivative::Analytic(&|x| jost.derivative(x)), &u, jost.lambda(), &xs)
            .unwrap()
            .max()
    };
    assert!(analytic < 1e-13);
}

#[test]
fn zs_integrator_is_fourth_order_on_free_equation() {
    // u = 0: r = e^{-i lambda x}, s = e^{i lambda x}.
    let lam = C::new(0.8, 0.1);
    let err = |step: f64| {
        let out = zs_integrate(&|_| 0.0, SpectralParam(lam), 0.0, 4.0, step, (C::new(1.0, 0.0), C::new(1.0, 0.0))).unwrap();
        let (x, r, s) = out.last();
        (r - (-I * lam * x).exp()).norm().max((s - (I * lam * x).exp()).norm())
    };
    let order = (err(0.1) / err(0.05)).log2();
    assert!((order - 4.0).abs() < 0.2, "order {order}");
}

#[test]
fn hamilton_table() {
    let (i, j, k) = (SIGMA1, SIGMA2, sigma12());
    let minus_one = Matrix2C::IDENTITY.scale(C::new(-1.0, 0.0));
    for m in [i, j, k] {
        assert!((m * m).max_abs_diff(&minus_one) < 1e-15);
    }
    assert!((i * j).max_abs_diff(&k) < 1e-15);
    assert!((j * k).max_abs_diff(&i) < 1e-15);
    assert!((k * i).max_abs_diff(&j) < 1e-15);
    assert!((i * j * k).max_abs_diff(&minus_one) < 1e-15);
    // |q|^2 = det of the embedding.
    let q = quaternion_embed(0.3, -1.2, 0.5, 2.0);
    assert_abs_diff_eq!(q.det().re, 0.09 + 1.44 + 0.25 + 4.0, epsilon = 1e-13);
}

#[test]
fn dirac_finite_difference_residual_is_second_order() {
    let params = SolitonParams::new(1.0, 0.3, Branch::Plus).unwrap();
    let field = revolve_spinors(&params, SpectralParam::new(0.5, 0.5), 0.0).unwrap();
    let p = dirac_potential(&params, 0.0);
    let residual = |nx: usize, ny: usize| {
        let grid = GridSpec::new(-3.0, 3.0, 0.0, 2.0, nx, ny).unwrap();
        dirac_residual_with(&field, &p, &grid, DerivativeMode::FiniteDifference).unwrap().max()
    };
    let order = (residual(61, 21) / residual(121, 41)).log2();
    assert!((order - 2.0).abs() < 0.15, "order {order}");
}

#[test]
fn constant_field_is_harmonic() {
    let field = SpinorField::constant(C::new(0.6, 0.8), C::new(-0.2, 0.1));
    let grid = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 5, 5).unwrap();
    let zero = spinorsurf::spinor::ScalarField::constant(0.0);
    assert!(dirac_residual_with(&field, &zero, &grid, DerivativeMode::FiniteDifference).unwrap().max() < 1e-15);
}
