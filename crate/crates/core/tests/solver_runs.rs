use std::f64::consts::PI;

use fdkp::solver::{
    bona_smith_convergence, constrained_bump, energy_monitor, hs_doubling_time, rough_data, twin_run_l2_stability,
    EvolutionState, Solver, SolverConfig,
};
use fdkp::spectral::{Grid2D, SpectralField2D};

fn config(beta: f64, dt: f64) -> SolverConfig {
    SolverConfig::new(beta, Grid2D::new(64, 64, 4.0 * PI, 4.0 * PI).unwrap(), dt)
}

fn perturbation(g: Grid2D) -> SpectralField2D {
    SpectralField2D::from_fn(g, |x1, x2| (x1 - 5.0).sin() * (-(x2 - 6.0).powi(2)).exp()).unwrap()
}

#[test]
fn twin_run_linear_response() {
    let cfg = config(1.0, 0.01);
    let g = cfg.grid().unwrap();
    let ua = constrained_bump(g, 0.5).unwrap();
    let dist = |eps: f64| {
        let ub = ua.add(&perturbation(g).scale(eps)).unwrap();
        let rep = twin_run_l2_stability(&ua, &ub, &cfg, 0.5).unwrap();
        rep.sup_ratio * rep.initial_distance
    };
    let ratio = dist(1e-4) / dist(5e-5);
    assert!((ratio - 2.0).abs() < 0.2, "halving ratio {ratio}");
}

#[test]
fn twin_run_bounded_by_gronwall_form() {
    let cfg = config(0.0, 0.01);
    let g = cfg.grid().unwrap();
    let ua = constrained_bump(g, 0.5).unwrap();
    let ub = ua.add(&perturbation(g).scale(1e-3)).unwrap();
    let rep = twin_run_l2_stability(&ua, &ub, &cfg, 0.5).unwrap();
    assert!(rep.ratio_history[0].1 == 1.0);
    assert!(rep.sup_ratio <= (rep.implied_c * rep.k).exp() * (1.0 + 1e-12));
    let half = twin_run_l2_stability(&ua, &ub, &cfg.with_dt(0.005), 0.5).unwrap();
    assert!((half.implied_c - rep.implied_c).abs() <= 0.2 * rep.implied_c.max(half.implied_c));
}

fn monitored(amp: f64, dt: f64, horizon: f64) -> EvolutionState {
    let cfg = config(1.0, dt);
    let solver = Solver::new(&cfg).unwrap();
    let u0 = solver.truncate(&constrained_bump(cfg.grid().unwrap(), amp).unwrap()).unwrap();
    let mut st = EvolutionState::new(u0, dt);
    solver.run(&mut st, horizon, 1).unwrap();
    st
}

#[test]
fn energy_monitor_stable_under_dt_halving() {
    let a = energy_monitor(&monitored(0.5, 0.01, 0.5).ledger, 1.76).unwrap();
    let b = energy_monitor(&monitored(0.5, 0.005, 0.5).ledger, 1.76).unwrap();
    assert!(a.implied_c.is_finite() && a.implied_c > 0.0, "{a:?}");
    assert!((a.implied_c - b.implied_c).abs() < 0.05 * a.implied_c, "{} vs {}", a.implied_c, b.implied_c);
    assert!(a.hs_max_sq >= a.hs0_sq);
    assert!(a.refined_lhs.is_finite() && a.refined_rhs > 0.0);
}

#[test]
fn larger_data_doubles_sooner() {
    let t1 = hs_doubling_time(&monitored(1.0, 0.005, 1.5).ledger);
    let t2 = hs_doubling_time(&monitored(2.0, 0.005, 1.5).ledger);
    let (t1, t2) = (t1.expect("amplitude 1 doubles"), t2.expect("amplitude 2 doubles"));
    assert!(t2 < t1, "{t2} !< {t1}");
}

#[test]
fn bona_smith_rough_data() {
    let cfg = SolverConfig::new(1.0, Grid2D::new(128, 128, 2.0 * PI, 2.0 * PI).unwrap(), 0.01);
    let (s, eps) = (1.76, 0.1);
    let u0 = rough_data(&cfg, s, eps, 0.1, 7).unwrap();
    let rep = bona_smith_convergence(&u0, s, &[0.0, 0.5], &[2.0, 4.0, 8.0], &cfg, 0.2, 5).unwrap();
    assert!(rep.monotone_l2, "{rep:?}");
    for &(sigma, rate) in &rep.rates {
        assert!((-rate - (s - sigma)).abs() <= 0.3, "sigma {sigma} rate {rate}");
    }
}

#[test]
fn snapshot_of_evolved_field_round_trips() {
    let st = monitored(0.3, 0.01, 0.1);
    let mut buf = Vec::new();
    st.field.write_snapshot(&mut buf, st.time).unwrap();
    let (back, t) = SpectralField2D::read_snapshot(buf.as_slice()).unwrap();
    assert_eq!(t, st.time);
    assert_eq!(back.values(), st.field.values());
}
