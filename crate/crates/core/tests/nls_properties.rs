use fokas_core::fokas::ProblemData;
use fokas_core::grid::{SampledField, UniformAxis};
use fokas_core::nls::{discrete_residual, picard_step, solve_nls, NlsGrid, Sign, SolverConfig};
use fokas_core::norms::SobolevParams;
use fokas_core::oracle::{whole_space_restriction_data, GaussianPacket};
use fokas_core::C64;

fn data(amplitude: f64) -> ProblemData {
    let p = GaussianPacket {
        amplitude: C64::new(amplitude, 0.0),
        center: vec![0.5],
        width: 1.0,
        momentum: vec![1.0],
    };
    whole_space_restriction_data(p.solution(), 1, 10.0, 0.4)
}

/// `points` samples on x ∈ [0, 4] and times 0, 0.3/(points−1), …, 0.3.
fn grid(points: usize) -> NlsGrid {
    let m = points - 1;
    NlsGrid::new(vec![UniformAxis::linspace(0.0, 4.0, points).unwrap()], 0.3 / m as f64, m)
}

fn cfg(sign: Sign) -> SolverConfig {
    SolverConfig {
        params: SobolevParams::with_default_modulation(0.3, 1),
        fixed_point_tolerance: 1e-10,
        sign,
        ..SolverConfig::default()
    }
}

fn diff_norm(a: &SampledField, b: &SampledField) -> f64 {
    a.values.iter().zip(&b.values).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn moderate_data_contracts_and_is_a_fixed_point() {
    let d = data(0.5);
    let g = grid(33);
    let c = cfg(Sign::Plus);
    let (u, log) = solve_nls(&d, &g, &c).unwrap();
    assert!(log.converged, "{log:?}");
    assert!(log.ratios.iter().all(|&r| r < 1.0), "{:?}", log.ratios);
    let again = picard_step(&u, &d, &g, &c).unwrap();
    assert!(diff_norm(&again, &u) < 1e-9 * u.l2_norm());
}

#[test]
fn residual_of_the_nonlinear_equation_is_second_order() {
    let d = data(0.5);
    // Interior points shared by the three grids.
    let xs: Vec<f64> = (4..=28).map(|k| k as f64 * 0.125).collect();
    let ts: Vec<f64> = [12, 16, 20, 24].iter().map(|&j| j as f64 * 0.3 / 32.0).collect();
    let worst = |points: usize| {
        let g = grid(points);
        let (u, log) = solve_nls(&d, &g, &cfg(Sign::Plus)).unwrap();
        assert!(log.converged);
        let r = discrete_residual(&u, Sign::Plus).unwrap();
        let (ax, at) = (r.grid.axes[0], r.grid.axes[1]);
        let mut w: f64 = 0.0;
        for &x in &xs {
            for &t in &ts {
                let i = ((x - ax.start) / ax.step).round() as usize;
                let j = ((t - at.start) / at.step).round() as usize;
                assert!((ax.point(i) - x).abs() < 1e-12 && (at.point(j) - t).abs() < 1e-12);
                w = w.max(r.values[i * at.count + j].norm());
            }
        }
        (w, u)
    };
    let (e1, _) = worst(33);
    let (e2, _) = worst(65);
    let (e3, u3) = worst(129);
    let (p1, p2) = ((e1 / e2).log2(), (e2 / e3).log2());
    assert!((p1 - 2.0).abs() < 0.3 && (p2 - 2.0).abs() < 0.3, "{e1} {e2} {e3}");
    // The cubic term is resolved: the residual is far below |u|²u itself.
    let cubic = u3.values.iter().map(|v| v.norm().powi(3)).fold(0.0, f64::max);
    assert!(e3 < 0.05 * cubic, "{e3} vs {cubic}");
}

#[test]
fn small_data_deviates_from_the_linear_flow_at_third_order() {
    let g = grid(33);
    let deviation = |lambda: f64, sign: Sign| {
        let d = data(lambda);
        let c = cfg(sign);
        let (u, _) = solve_nls(&d, &g, &c).unwrap();
        let linear = picard_step(&SampledField::zeros(u.grid.clone()), &d, &g, &c).unwrap();
        let dev: Vec<C64> = u.values.iter().zip(&linear.values).map(|(a, b)| a - b).collect();
        (SampledField::new(u.grid.clone(), dev).unwrap(), u)
    };
    let (d1, _) = deviation(0.1, Sign::Plus);
    let (d2, _) = deviation(0.05, Sign::Plus);
    let r = d1.l2_norm() / d2.l2_norm();
    assert!((r - 8.0).abs() < 0.4, "{r}");

    // Flipping σ flips the cubic correction; what survives is the fifth-order term.
    let odd_part = |lambda: f64, plus: &SampledField| {
        let (minus, _) = deviation(lambda, Sign::Minus);
        let sum: f64 = plus.values.iter().zip(&minus.values).map(|(a, b)| (a + b).norm_sqr()).sum::<f64>().sqrt();
        sum / plus.l2_norm()
    };
    let (q1, q2) = (odd_part(0.1, &d1), odd_part(0.05, &d2));
    assert!(q1 < 0.1 && (q1 / q2 - 4.0).abs() < 0.5, "{q1} {q2}");
}

#[test]
fn zero_data_stays_zero() {
    let (u, log) = solve_nls(&ProblemData::zero(1, 10.0, 0.4), &grid(17), &cfg(Sign::Minus)).unwrap();
    assert_eq!(u.max_abs(), 0.0);
    assert!(log.converged);
}
