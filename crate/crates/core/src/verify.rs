//! The acceptance suite: eight end-to-end checks, each returning a one-line
//! verdict with the measured numbers.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::besselasym::{
    f_a, f_big, f_pm, j_plus_direct, j_plus_identity, log_grid, verify_fa_decay, Branch, PlanePoint,
};
use crate::error::Result;
use crate::oscint::{decay_experiment, kernel_2d, kernel_radial, KernelQuery};
use crate::solver::{
    bona_smith_convergence, conserved_quantities, constrained_bump, rough_data, twin_run_l2_stability, Dealias,
    Dispersion1D, EvolutionState, Solver, SolverConfig, State1D, Whitham1D,
};
use crate::spectral::{strichartz_scan, Grid2D, SpectralField2D};
use crate::symbol::DispersionSymbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Full,
    /// Reduced sample counts and grids.
    Quick,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {}: {} ({:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

pub const NAMES: [&str; 8] = [
    "bessel identities",
    "bessel decay",
    "kernel cross-validation",
    "dispersive decay",
    "strichartz",
    "symbol bounds",
    "solver correctness",
    "well-posedness phenomenology",
];

/// Run criterion `id` (1–8). Errors count as failures.
pub fn criterion(id: u8, mode: Mode) -> CriterionReport {
    let start = Instant::now();
    let out = match id {
        1 => bessel_identities(mode),
        2 => bessel_decay(mode),
        3 => kernel_cross(mode),
        4 => dispersive_decay(mode),
        5 => strichartz(mode),
        6 => symbol_bounds(mode),
        7 => solver_correctness(mode),
        8 => wellposedness(mode),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    let name = NAMES.get((id as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    CriterionReport { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all(mode: Mode) -> Vec<CriterionReport> {
    (1..=8).map(|id| criterion(id, mode)).collect()
}

type Verdict = Result<(bool, String)>;

const BESSEL_TOL: f64 = 1e-11;

fn bessel_identities(mode: Mode) -> Verdict {
    let n_points = if mode == Mode::Quick { 40 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(0xB355E1);
    let points: Vec<PlanePoint> = (0..n_points)
        .map(|i| {
            let r: f64 = rng.gen_range(1.0..200.0);
            let th = (i % 4) as f64 * PI / 2.0 + rng.gen_range(0.0..PI / 2.0);
            PlanePoint::new(r * th.cos(), r * th.sin())
        })
        .collect::<Result<_>>()?;
    let worst_pt = points
        .par_iter()
        .map(|&x| Ok((j_plus_direct(x, BESSEL_TOL)? - j_plus_identity(x, BESSEL_TOL)?).norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let (nr, na) = if mode == Mode::Quick { (10, 6) } else { (20, 11) };
    let cells: Vec<(f64, f64)> = log_grid(1.0, 100.0, nr)
        .into_iter()
        .flat_map(|r| (0..na).map(move |j| (r, j as f64 / (na - 1) as f64)))
        .collect();
    let worst_ident = cells
        .par_iter()
        .map(|&(r, a)| {
            let (p, m) = (f_a(Branch::Plus, r, a, BESSEL_TOL)?, f_a(Branch::Minus, r, a, BESSEL_TOL)?);
            let e1 = (f_big(r, a, BESSEL_TOL)? - Complex64::from_polar(1.0, a * r) * p - Complex64::from_polar(1.0, -a * r) * m).norm();
            let mut e2 = 0.0f64;
            for (br, fa) in [(Branch::Plus, p), (Branch::Minus, m)] {
                let s = br.sign();
                let f1 = f_a(br, r, 1.0, BESSEL_TOL)?;
                let want = Complex64::from_polar(2.0, s * r) * f1 - Complex64::from_polar(2.0, s * a * r) * fa;
                e2 = e2.max((f_pm(br, r, a, BESSEL_TOL)? - want).norm());
            }
            Ok(e1.max(e2))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let ok = worst_pt < 1e-8 && worst_ident < 1e-8;
    Ok((ok, format!("max|direct−identity| = {worst_pt:.2e} over {n_points} points; max identity residual = {worst_ident:.2e} on {nr}×{na} grid (bound 1e-8)")))
}

fn bessel_decay(mode: Mode) -> Verdict {
    let a_grid = [0.0, 0.25, 0.5, FRAC_1_SQRT_2, 0.9, 1.0];
    let per_decade = if mode == Mode::Quick { 10 } else { 20 };
    let short = log_grid(1.0, 1e2, 2 * per_decade + 1);
    let long = log_grid(1.0, 1e4, 4 * per_decade + 1);
    let mut worst = 0.0f64;
    let mut finite = true;
    for br in Branch::both() {
        let a = verify_fa_decay(br, &a_grid, &short, 1e-10)?;
        let b = verify_fa_decay(br, &a_grid, &long, 1e-10)?;
        for (x, y) in a.per_a.iter().zip(&b.per_a) {
            for (s, l) in [(x.sup_j0, y.sup_j0), (x.sup_j1, y.sup_j1)] {
                finite &= s.is_finite() && l.is_finite() && s > 0.0;
                worst = worst.max((l - s).abs() / s);
            }
        }
    }
    let ok = finite && worst < 0.2;
    Ok((ok, format!("max relative change of r^{{j+1/2}}|∂^j f_a^±| suprema from r_max=1e2 to 1e4: {:.3}% (bound 20%)", 100.0 * worst)))
}

/// The `(Λ, t, x)` lattice used for the radial/tensor comparison.
pub fn kernel_lattice() -> Vec<(f64, f64, PlanePoint)> {
    let xs = [(0.0, 0.0), (1.0, 0.0), (0.0, -1.5), (-2.0, 1.0), (3.0, 2.5)];
    let mut out = Vec::new();
    for lam in [0.5, 1.0, 2.0] {
        for t in [0.5, 2.0, 6.0] {
            for &(a, b) in &xs {
                out.push((lam, t, PlanePoint::new(a, b).expect("finite")));
            }
        }
    }
    out
}

fn kernel_cross(mode: Mode) -> Verdict {
    let betas: &[f64] = if mode == Mode::Quick { &[1.0] } else { &[0.0, 1.0] };
    let cells: Vec<(f64, f64, f64, PlanePoint)> = betas
        .iter()
        .flat_map(|&b| kernel_lattice().into_iter().map(move |(l, t, x)| (b, l, t, x)))
        .collect();
    let res = cells
        .par_iter()
        .map(|&(b, l, t, x)| {
            let q = KernelQuery::new(b, l, t, x)?;
            let r = kernel_radial(q, 1e-10)?;
            let d = kernel_2d(q, 1e-10)?;
            Ok(((r - d).norm(), r.im.abs().max(d.im.abs())))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let diff = res.iter().map(|r| r.0).fold(0.0, f64::max);
    let im = res.iter().map(|r| r.1).fold(0.0, f64::max);
    let ok = diff < 1e-6 && im < 1e-8;
    Ok((ok, format!("{} points: max|radial−2d| = {diff:.2e} (bound 1e-6), max|Im| = {im:.2e} (bound 1e-8)", cells.len())))
}

fn dispersive_decay(mode: Mode) -> Verdict {
    let t_list: Vec<f64> = if mode == Mode::Quick {
        vec![10.0, 100.0, 1000.0]
    } else {
        (0..5).map(|k| 10f64.powf(1.0 + 0.5 * k as f64)).collect()
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for beta in [0.0, 1.0] {
        let mut consts = Vec::new();
        for lam in [0.25, 1.0, 4.0] {
            let fit = decay_experiment(beta, lam, &t_list, 1e-10)?;
            ok &= (fit.slope + 1.0).abs() <= 0.1;
            parts.push(format!("β={beta} Λ={lam}: slope {:.3} C {:.2}", fit.slope, fit.constant));
            consts.push(fit.constant);
        }
        let spread = consts.iter().cloned().fold(0.0, f64::max) / consts.iter().cloned().fold(f64::INFINITY, f64::min);
        ok &= spread <= 3.0;
        parts.push(format!("β={beta} constant spread {spread:.2}"));
    }
    Ok((ok, format!("{} (slope −1±0.1, spread ≤ 3)", parts.join("; "))))
}

fn strichartz(mode: Mode) -> Verdict {
    let (horizon, per_td) = if mode == Mode::Quick { (20.0, 4) } else { (30.0, 8) };
    let pairs = [(4.0, 4.0), (8.0, 8.0 / 3.0)];
    let lambdas = [1.0, 2.0, 4.0, 8.0];
    let mut ok = true;
    let mut parts = Vec::new();
    for beta in [0.0, 1.0] {
        let rows = lambdas
            .par_iter()
            .map(|&l| strichartz_scan(beta, l, &pairs, horizon, per_td))
            .collect::<Result<Vec<_>>>()?;
        for (k, &(q, r)) in pairs.iter().enumerate() {
            let ratios: Vec<f64> = rows.iter().map(|rs| rs[k].ratio).collect();
            let spread = ratios.iter().cloned().fold(0.0, f64::max) / ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            ok &= spread < 3.0 && ratios.iter().all(|x| x.is_finite() && *x > 0.0);
            parts.push(format!("β={beta} (q,r)=({q},{r:.3}) spread {spread:.2}"));
        }
    }
    Ok((ok, format!("{} (bound < 3)", parts.join("; "))))
}

fn symbol_bounds(mode: Mode) -> Verdict {
    let n = if mode == Mode::Quick { 2000 } else { 10_000 };
    let grid = log_grid(1e-3, 1e3, n);
    let mut ok = true;
    let mut parts = Vec::new();
    for beta in [0.0, 1.0] {
        let sym = DispersionSymbol::new(beta)?;
        for (name, f) in [
            ("m'", &(|r| sym.m_prime_ratio(r)) as &dyn Fn(f64) -> Result<f64>),
            ("m''", &|r| sym.m_double_prime_ratio(r)),
        ] {
            let v = grid.iter().map(|&r| f(r)).collect::<Result<Vec<f64>>>()?;
            let (lo, hi) = (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(0.0, f64::max));
            ok &= lo > 0.0 && hi / lo <= 10.0;
            parts.push(format!("β={beta} {name} C/c {:.2}", hi / lo));
        }
    }
    let one = DispersionSymbol::new(1.0)?;
    let zero = DispersionSymbol::new(0.0)?;
    let f1 = grid.iter().map(|&r| one.f_beta(r)).collect::<Result<Vec<f64>>>()?;
    let f1_ok = f1.iter().all(|&v| v > 1.0 && v <= 3.0);
    let f0_ok = grid.iter().map(|&r| zero.f_beta(r)).collect::<Result<Vec<f64>>>()?.iter().all(|&v| v == -1.0);
    ok &= f1_ok && f0_ok;
    let (lo, hi) = (f1.iter().cloned().fold(f64::INFINITY, f64::min), f1.iter().cloned().fold(0.0, f64::max));
    parts.push(format!("f_1 ∈ [{lo:.6}, {hi:.6}] at {n} points"));
    parts.push(format!("f_0 ≡ −1: {f0_ok}"));
    Ok((ok, format!("{} (C/c ≤ 10, f_1 ∈ (1,3])", parts.join("; "))))
}

fn reference_config(beta: f64, dt: f64) -> Result<SolverConfig> {
    Ok(SolverConfig::new(beta, Grid2D::new(64, 64, 4.0 * PI, 4.0 * PI)?, dt))
}

fn solver_correctness(_mode: Mode) -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;

    // conservation on constrained data
    let cfg = reference_config(1.0, 0.005)?;
    let solver = Solver::new(&cfg)?;
    let u0 = solver.truncate(&constrained_bump(cfg.grid()?, 0.1)?)?;
    let mut st = EvolutionState::new(u0.clone(), cfg.dt);
    solver.run(&mut st, 1.0, 20)?;
    let l2_drift = (st.field.l2_norm() - u0.l2_norm()).abs() / u0.l2_norm();
    let (_, h0) = conserved_quantities(&u0, cfg.beta);
    let (_, h1) = conserved_quantities(&st.field, cfg.beta);
    let h_drift = match (h0, h1) {
        (Some(a), Some(b)) => ((b - a) / a).abs(),
        _ => f64::INFINITY,
    };
    ok &= l2_drift < 1e-8 && h_drift < 1e-6;
    parts.push(format!("L² drift {l2_drift:.1e} (<1e-8), H drift {h_drift:.1e} (<1e-6)"));

    // 2-D run against the independent 1-D Whitham solver
    let mut reduction = 0.0f64;
    for beta in [0.0, 1.0] {
        let (n, length) = (128, 8.0 * PI);
        let c2 = SolverConfig::new(beta, Grid2D::new(n, 4, length, 2.0 * PI)?, 0.005);
        let profile = |x: f64| 0.3 * (-(x - length / 2.0).powi(2)).exp();
        let mut s2 = EvolutionState::new(SpectralField2D::from_fn(c2.grid()?, |x1, _| profile(x1))?, c2.dt);
        Solver::new(&c2)?.run(&mut s2, 1.0, 1000)?;
        let mut s1 = State1D { values: (0..n).map(|i| profile(length * i as f64 / n as f64)).collect(), length, time: 0.0 };
        Whitham1D::new(n, length, c2.dt, Dispersion1D::Whitham { beta }, 6.0, Dealias::TwoThirds)?.run(&mut s1, 1.0)?;
        for (i, v) in s2.field.values().iter().enumerate() {
            reduction = reduction.max((v - s1.values[i / 4]).abs());
        }
    }
    ok &= reduction < 1e-8;
    parts.push(format!("2-D vs 1-D Whitham L∞ {reduction:.1e} (<1e-8)"));

    // dt-halving
    let base = reference_config(0.0, 0.02)?;
    let u0 = Solver::new(&base)?.truncate(&constrained_bump(base.grid()?, 0.8)?)?;
    let run = |c: &SolverConfig| -> Result<SpectralField2D> {
        let mut st = EvolutionState::new(u0.clone(), c.dt);
        Solver::new(c)?.run(&mut st, 0.5, 1000)?;
        Ok(st.field)
    };
    let reference = run(&base.with_dt(0.02 / 32.0))?;
    let e1 = run(&base)?.sub(&reference)?.l2_norm();
    let e2 = run(&base.with_dt(0.01))?.sub(&reference)?.l2_norm();
    let order = (e1 / e2).log2();
    ok &= order >= 3.0;
    parts.push(format!("dt-halving order {order:.2} (≥3)"));
    Ok((ok, parts.join("; ")))
}

/// Relative spread `|c₁ − c₂| / max(c₁, c₂)`, zero when both vanish.
fn rel_change(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

fn wellposedness(mode: Mode) -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;

    let cfg = reference_config(1.0, 0.01)?;
    let g = cfg.grid()?;
    let ua = constrained_bump(g, 0.5)?;
    let bump = SpectralField2D::from_fn(g, |x1, x2| (x1 - 5.0).sin() * (-(x2 - 6.0).powi(2)).exp())?;
    let ub = ua.add(&bump.scale(1e-3))?;
    let horizon = if mode == Mode::Quick { 0.5 } else { 1.0 };
    let (ra, rb) = rayon::join(
        || twin_run_l2_stability(&ua, &ub, &cfg, horizon),
        || twin_run_l2_stability(&ua, &ub, &cfg.with_dt(cfg.dt / 2.0), horizon),
    );
    let (ra, rb) = (ra?, rb?);
    let dc = rel_change(ra.implied_c, rb.implied_c);
    ok &= dc <= 0.2;
    parts.push(format!(
        "twin run ratio {:.4}, K {:.3}, c {:.4} vs {:.4} at dt/2 (Δ {:.1}% ≤ 20%)",
        ra.sup_ratio,
        ra.k,
        ra.implied_c,
        rb.implied_c,
        100.0 * dc
    ));

    let (s, eps) = (1.76, 0.1);
    let bs_cfg = SolverConfig::new(1.0, Grid2D::new(256, 256, 2.0 * PI, 2.0 * PI)?, 0.01);
    let u0 = rough_data(&bs_cfg, s, eps, 0.1, 0x5EED)?;
    let sigmas = [0.0, 1.0];
    let bs_horizon = if mode == Mode::Quick { 0.25 } else { 0.5 };
    let rep = bona_smith_convergence(&u0, s, &sigmas, &[4.0, 8.0, 16.0], &bs_cfg, bs_horizon, 5)?;
    ok &= rep.monotone_l2;
    for &(sigma, rate) in &rep.rates {
        let dev = (-rate - (s - sigma)).abs();
        ok &= dev <= 0.3;
        parts.push(format!("H^{sigma} Cauchy rate {rate:.3} vs −{:.2} (±0.3)", s - sigma));
    }
    parts.push(format!("monotone L² decrease: {}", rep.monotone_l2));
    Ok((ok, parts.join("; ")))
}
