use gg_core::gamma::rgamma;
use gg_core::integral::{
    euler_segment_integral, hankel_integral, integral_eval, shifted_plane_integral, ContourKind, ContourSpec,
    Quadrature,
};
use gg_core::sampling::{rng, ReducedSample};
use gg_core::series::{mixed_gamma_series_eval, reduced_series_eval, SeriesMode, SeriesSpec};
use gg_core::verify::{check_reduced_system_numeric, DerivativeMode};
use gg_core::{build_reduced_system, VectorSet, C64};
use num_rational::BigRational;
use rand::Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn two_pi_i() -> C64 {
    c(0.0, 2.0 * std::f64::consts::PI)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn hankel_loop_gives_reciprocal_gamma() {
    let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-1]]).unwrap();
    let base = set.base(&[0]).unwrap();
    let q = Quadrature::default();
    let mut g = rng(11);
    for _ in 0..20 {
        let r = g.gen_range(0.0..3.0);
        let t: f64 = g.gen_range(0.0..std::f64::consts::TAU);
        let beta = c(r * t.cos(), r * t.sin());
        let got = hankel_integral(&base, &[beta], &[c(0.0, 0.0)], &q).unwrap();
        let want = two_pi_i() * rgamma(beta + 1.0);
        assert!(rel(got.value, want) <= 1e-8, "β = {beta}: {got:?} vs {want}");
    }
    // 2πi/Γ(2 + 0.3i), 30-digit reference.
    let got = hankel_integral(&base, &[c(1.0, 0.3)], &[c(0.0, 0.0)], &q).unwrap();
    assert!(rel(got.value, c(0.829615825113157590, 6.41371024199507605)) <= 1e-12);
}

#[test]
fn hankel_loop_matches_series() {
    let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-1]]).unwrap();
    let base = set.base(&[0]).unwrap();
    let spec = SeriesSpec::new(build_reduced_system(&base), vec![0], 60, SeriesMode::Reduced).unwrap();
    let q = Quadrature::default();
    // 2πi I_0(sqrt 2) = 2πi sum 0.5^m / m!^2
    let got = hankel_integral(&base, &[c(0.0, 0.0)], &[c(0.5, 0.0)], &q).unwrap();
    assert!(rel(got.value, c(0.0, 9.83998925406986210)) <= 1e-12, "{got:?}");
    let mut g = rng(5);
    for beta in [c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.3)] {
        for _ in 0..8 {
            let r = 0.5 * g.gen::<f64>().sqrt();
            let t: f64 = g.gen_range(0.0..std::f64::consts::TAU);
            let x = c(r * t.cos(), r * t.sin());
            let got = hankel_integral(&base, &[beta], &[x], &q).unwrap();
            let want = two_pi_i() * reduced_series_eval(&spec, &[beta], &[x]).unwrap().value;
            assert!(rel(got.value, want) <= 1e-6, "β = {beta}, x = {x}: {got:?} vs {want}");
        }
    }
}

#[test]
fn hankel_loop_with_two_variables() {
    let set = VectorSet::<f64>::from_integers(1, &[vec![2], vec![1], vec![-1]]).unwrap();
    let base = set.base(&[0]).unwrap();
    let spec = SeriesSpec::new(build_reduced_system(&base), vec![0], 40, SeriesMode::Reduced).unwrap();
    let q = Quadrature::default();
    let beta = [c(0.7, -0.4)];
    let x = [c(0.3, 0.1), c(-0.2, 0.25)];
    let got = hankel_integral(&base, &beta, &x, &q).unwrap();
    let want = two_pi_i() * reduced_series_eval(&spec, &beta, &x).unwrap().value;
    assert!(rel(got.value, want) <= 1e-10, "{got:?} vs {want}");
}

#[test]
fn hankel_loop_satisfies_reduced_system() {
    let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-1]]).unwrap();
    let base = set.base(&[0]).unwrap();
    let system = build_reduced_system(&base);
    let q = Quadrature::default();
    let f = |beta: &[C64], x: &[C64]| hankel_integral(&base, beta, x, &q).map(|r| r.value);
    let samples: Vec<ReducedSample<f64>> = [(c(0.3, 0.1), c(0.2, -0.1)), (c(1.4, 0.0), c(-0.4, 0.2))]
        .into_iter()
        .map(|(b, x)| ReducedSample { beta: vec![b], x: vec![x] })
        .collect();
    let r = check_reduced_system_numeric(&f, &system, &samples, DerivativeMode::default(), 1e-6).unwrap();
    assert!(r.pass(), "{r:?}");
}

#[test]
fn shifted_plane_refinement_and_difference_equations() {
    let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-1]]).unwrap();
    let base = set.base(&[0]).unwrap();
    let system = build_reduced_system(&base);
    for (beta, x) in [(c(0.7, 0.0), c(0.3, 0.0)), (c(1.4, 0.2), c(0.25, -0.1))] {
        let coarse = Quadrature { nodes: 64, cutoff: Some(6.0), ..Quadrature::default() };
        let fine = Quadrature { nodes: 128, cutoff: Some(12.0), ..Quadrature::default() };
        let a = shifted_plane_integral(&base, &[0], &[beta], &[x], &coarse).unwrap();
        let b = shifted_plane_integral(&base, &[0], &[beta], &[x], &fine).unwrap();
        assert!(rel(a.value, b.value) <= 1e-6, "{a:?} vs {b:?}");
        assert!(a.error_estimate <= 1e-6 * a.value.norm());
    }
    let q = Quadrature::default();
    let f = |beta: &[C64], x: &[C64]| shifted_plane_integral(&base, &[0], beta, x, &q).map(|r| r.value);
    let samples: Vec<ReducedSample<f64>> = [(c(1.3, 0.1), c(0.2, -0.1)), (c(1.7, -0.2), c(0.4, 0.2))]
        .into_iter()
        .map(|(b, x)| ReducedSample { beta: vec![b], x: vec![x] })
        .collect();
    let r = check_reduced_system_numeric(&f, &system, &samples, DerivativeMode::default(), 1e-6).unwrap();
    assert!(r.pass(), "{r:?}");
}

#[test]
fn shifted_plane_in_two_dimensions() {
    let set = VectorSet::<f64>::from_integers(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
    let base = set.base(&[0, 1]).unwrap();
    let system = build_reduced_system(&base);
    let q = Quadrature { nodes: 48, ..Quadrature::default() };
    let f = |beta: &[C64], x: &[C64]| shifted_plane_integral(&base, &[0, 0], beta, x, &q).map(|r| r.value);
    let samples = vec![ReducedSample {
        beta: vec![c(1.3, 0.1), c(1.6, -0.2)],
        x: vec![c(-0.4, 0.1)],
    }];
    let r = check_reduced_system_numeric(&f, &system, &samples, DerivativeMode::default(), 1e-6).unwrap();
    assert!(r.pass(), "{r:?}");
    for k in [vec![0, 0], vec![1, 1]] {
        let spec = ContourSpec { kind: ContourKind::ShiftedPlane(k), quadrature: q };
        let v = integral_eval(&base, &samples[0].beta, &samples[0].x, &spec).unwrap();
        assert!(v.value.norm().is_finite());
    }
}

fn half_set() -> VectorSet<f64> {
    let h = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());
    VectorSet::from_rationals(2, vec![vec![one.clone(), zero.clone()], vec![zero, one], vec![h.clone(), h]]).unwrap()
}

#[test]
fn euler_segment_beta_oracle_and_residuals() {
    let set = half_set();
    let base = set.base(&[0, 1]).unwrap();
    let q = Quadrature::default();
    // Γ(0.5)Γ(0.7)/Γ(1.2) / Γ(-0.2)
    let got = euler_segment_integral(&base, &[c(-0.5, 0.0), c(-0.7, 0.0)], &[c(0.0, 0.0)], &q).unwrap();
    assert!(rel(got.value, c(-0.430464116625684082, 0.0)) <= 1e-7);
    let system = build_reduced_system(&base);
    let f = |beta: &[C64], x: &[C64]| euler_segment_integral(&base, beta, x, &q).map(|r| r.value);
    let samples: Vec<ReducedSample<f64>> = (0..4)
        .map(|k| {
            let t = 0.4 + 1.5 * k as f64;
            ReducedSample {
                beta: vec![c(-0.6, 0.0), c(-0.8, 0.0)],
                x: vec![c(0.1 * t.cos(), 0.1 * t.sin())],
            }
        })
        .collect();
    let r = check_reduced_system_numeric(&f, &system, &samples, DerivativeMode::default(), 1e-6).unwrap();
    assert!(r.pass(), "{r:?}");
}

#[test]
fn euler_segment_is_a_multiple_of_the_mixed_series() {
    // The integral equals -sin(pi β_I)/pi · e^(-pi i β_I) times the mixed
    // series with I₁ = I.
    let set = half_set();
    let base = set.base(&[0, 1]).unwrap();
    let spec = SeriesSpec::new(build_reduced_system(&base), vec![0, 0], 80, SeriesMode::Mixed { first: vec![0, 1] })
        .unwrap();
    let q = Quadrature::default();
    for (beta, x) in [
        ([c(-0.6, 0.0), c(-0.8, 0.0)], c(0.1, 0.0)),
        ([c(-0.3, 0.2), c(-0.45, -0.1)], c(-0.2, 0.3)),
    ] {
        let bi = beta[0] + beta[1];
        let k = -(bi * std::f64::consts::PI).sin() / std::f64::consts::PI * (c(0.0, -std::f64::consts::PI) * bi).exp();
        let got = euler_segment_integral(&base, &beta, &[x], &q).unwrap();
        let want = k * mixed_gamma_series_eval(&spec, &beta, &[x]).unwrap().value;
        assert!(rel(got.value, want) <= 1e-10, "{got:?} vs {want}");
    }
}
