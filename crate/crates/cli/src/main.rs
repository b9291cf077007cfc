mod output;
mod run_config;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fdkp::besselasym::{j_plus_direct, j_plus_identity, j_plus_laplace, log_grid, verify_fa_decay, Branch, PlanePoint};
use fdkp::oscint::decay_experiment;
use fdkp::solver::{
    bona_smith_convergence, constrained_bump, rough_data, twin_run_l2_stability, Dealias, Dispersion1D, EvolutionState,
    Solver, SolverConfig, State1D, Whitham1D,
};
use fdkp::spectral::{dispersive_sup_experiment, strichartz_scan, ExperimentGrid, Grid2D, SpectralField2D};
use fdkp::symbol::DispersionSymbol;
use fdkp::verify::{self, Mode};
use fdkp::Error;
use output::{emit_csv, emit_dat, gnuplot_script, num, write_atomic, Table};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use run_config::RunConfig;
use serde_json::json;

/// Numerical experiments for the full-dispersion KP equation.
#[derive(Parser, Debug)]
#[command(name = "fdkp", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate m, m', m'', f_β and the two-sided ratios on a log grid.
    #[command(allow_negative_numbers = true)]
    SymbolCheck {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1e-3)]
        r_min: f64,
        #[arg(long, default_value_t = 1e3)]
        r_max: f64,
        #[arg(long, default_value_t = 601)]
        points: usize,
        /// CSV path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dat: Option<PathBuf>,
    },
    /// Three-way J_+ agreement on seeded points plus the f_a^± decay sweep (JSON).
    #[command(allow_negative_numbers = true)]
    BesselCheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 1e4)]
        r_max: f64,
        #[arg(long, default_value_t = 1e-8)]
        bound: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// sup_x |I_{Λ,t}| against t and the fitted decay rate.
    #[command(allow_negative_numbers = true)]
    Decay {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        lambda: f64,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', default_value = "10,31.622776601683793,100,316.22776601683796,1000")]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dat: Option<PathBuf>,
    },
    /// Mixed-norm ratio of S(t)P_Λ f across Λ.
    #[command(allow_negative_numbers = true)]
    Strichartz {
        #[arg(long)]
        beta: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        lambda: Vec<f64>,
        /// `q:r` pairs, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "4:4,8:2.6666666666666665")]
        pairs: Vec<String>,
        /// Horizon in dispersive times.
        #[arg(long, default_value_t = 30.0)]
        horizon: f64,
        #[arg(long, default_value_t = 8)]
        per_td: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dat: Option<PathBuf>,
    },
    /// ‖S(t)P_Λ f‖_∞ on the grid against t.
    #[command(allow_negative_numbers = true)]
    Dispersive {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_delimiter = ',')]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// Box length (default: 128π/Λ).
        #[arg(long)]
        length: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dat: Option<PathBuf>,
    },
    /// Evolve the equation from a TOML configuration.
    #[command(allow_negative_numbers = true)]
    Evolve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compare an x₂-independent 2-D run with the 1-D Whitham solver.
    #[command(allow_negative_numbers = true)]
    WhithamCompare {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 8.0 * PI)]
        length: f64,
        #[arg(long, default_value_t = 0.3)]
        amplitude: f64,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, default_value_t = 0.005)]
        dt: f64,
        #[arg(long, default_value_t = 1e-8)]
        bound: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dat: Option<PathBuf>,
    },
    /// L² stability of the flow for two nearby data.
    #[command(allow_negative_numbers = true)]
    TwinRun {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 4.0 * PI)]
        length: f64,
        #[arg(long, default_value_t = 0.5)]
        amplitude: f64,
        #[arg(long, default_value_t = 1e-3)]
        perturbation: f64,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dat: Option<PathBuf>,
    },
    /// Cauchy rates of the frequency-truncated family P_{≤n}u₀.
    #[command(allow_negative_numbers = true)]
    BonaSmith {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1.76)]
        s: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0.1)]
        amplitude: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        n_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        sigma: Vec<f64>,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, default_value_t = 0.5)]
        t_end: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    #[command(allow_negative_numbers = true)]
    VerifyAll {
        /// Reduced sample counts and grids.
        #[arg(long)]
        quick: bool,
        /// Comma-separated criterion numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// JSON summary path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// How a subcommand ended.
enum Outcome {
    Pass,
    Fail(String),
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::GridMismatch(_) | Error::BoundaryGuard { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match dispatch(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Cap the rayon pool with `FDKP_THREADS`.
fn configure_threads() -> Result<(), String> {
    let Some(v) = std::env::var_os("FDKP_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .to_str()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("FDKP_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn dispatch(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::SymbolCheck { beta, r_min, r_max, points, out, dat } => symbol_check(beta, r_min, r_max, points, out, dat),
        Cmd::BesselCheck { seed, points, r_max, bound, out } => bessel_check(seed, points, r_max, bound, out),
        Cmd::Decay { beta, lambda, t, tol, out, dat } => decay(beta, lambda, &t, tol, out, dat),
        Cmd::Strichartz { beta, lambda, pairs, horizon, per_td, out, dat } => {
            strichartz(beta, &lambda, &pairs, horizon, per_td, out, dat)
        }
        Cmd::Dispersive { beta, lambda, t, n, length, out, dat } => dispersive(beta, lambda, &t, n, length, out, dat),
        Cmd::Evolve { config } => evolve(&config),
        Cmd::WhithamCompare { beta, n, length, amplitude, t_end, dt, bound, out, dat } => {
            whitham_compare(beta, n, length, amplitude, t_end, dt, bound, out, dat)
        }
        Cmd::TwinRun { beta, n, length, amplitude, perturbation, t_end, dt, out, dat } => {
            twin_run(beta, n, length, amplitude, perturbation, t_end, dt, out, dat)
        }
        Cmd::BonaSmith { beta, s, eps, amplitude, seed, n_list, sigma, grid, t_end, dt, out } => {
            bona_smith(beta, s, eps, amplitude, seed, &n_list, &sigma, grid, t_end, dt, out)
        }
        Cmd::VerifyAll { quick, only, out } => verify_all(quick, &only, out),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(usage(msg))
    }
}

fn positive(name: &str, x: f64) -> Result<(), Failure> {
    require(x.is_finite() && x > 0.0, format!("--{name} must be finite and > 0, got {x}"))
}

fn write_json(value: &serde_json::Value, path: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Runtime(e.to_string()))? + "\n";
    match path {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn symbol_check(beta: f64, r_min: f64, r_max: f64, points: usize, out: Option<PathBuf>, dat: Option<PathBuf>) -> CmdResult {
    let sym = DispersionSymbol::new(beta)?;
    positive("r-min", r_min)?;
    require(r_max.is_finite() && r_max > r_min, "--r-max must exceed --r-min")?;
    require(points >= 2, "--points must be ≥ 2")?;
    let mut t = Table::new(&["r", "m", "m_prime", "m_double_prime", "f_beta", "m_prime_ratio", "m_double_prime_ratio"]);
    let (mut f_ok, mut ratios) = (true, [(f64::INFINITY, 0.0f64); 2]);
    for r in log_grid(r_min, r_max, points) {
        let f = sym.f_beta(r)?;
        let (a, b) = (sym.m_prime_ratio(r)?, sym.m_double_prime_ratio(r)?);
        f_ok &= if beta == 0.0 { f == -1.0 } else { f > 1.0 && f <= 3.0 };
        for (k, v) in [a, b].into_iter().enumerate() {
            ratios[k] = (ratios[k].0.min(v), ratios[k].1.max(v));
        }
        t.push_nums(&[r, sym.m(r)?, sym.m_prime(r)?, sym.m_double_prime(r)?, f, a, b]);
    }
    emit_csv(&t, out.as_deref())?;
    emit_dat(&t, dat.as_deref())?;
    let spread: Vec<f64> = ratios.iter().map(|(lo, hi)| hi / lo).collect();
    eprintln!("m' C/c = {:.4}, m'' C/c = {:.4}, f_beta bounds hold: {f_ok}", spread[0], spread[1]);
    if f_ok && spread.iter().all(|&s| s <= 10.0) {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!("f_beta bounds {f_ok}, ratio spreads {spread:?}")))
    }
}

fn bessel_check(seed: u64, points: usize, r_max: f64, bound: f64, out: Option<PathBuf>) -> CmdResult {
    require(points > 0, "--points must be > 0")?;
    require(r_max.is_finite() && r_max > 1.0 && r_max <= 1e4, "--r-max must lie in (1, 1e4]")?;
    positive("bound", bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..points {
        let r: f64 = rng.gen_range(1.0..200.0);
        let th = (i % 4) as f64 * PI / 2.0 + rng.gen_range(0.0..PI / 2.0);
        let x = PlanePoint::new(r * th.cos(), r * th.sin())?;
        let d = j_plus_direct(x, 1e-11)?;
        let id = j_plus_identity(x, 1e-11)?;
        let lp = j_plus_laplace(x, 1e-11)?;
        let e = (d - id).norm().max((d - lp).norm());
        worst = worst.max(e);
        rows.push(json!({"x1": x.x1, "x2": x.x2, "re": d.re, "im": d.im, "max_disagreement": e}));
    }
    let a_grid = [0.0, 0.25, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.9, 1.0];
    let decades = r_max.log10().max(1.0);
    let grid = log_grid(1e-2, r_max, (20.0 * (decades + 2.0)) as usize + 1);
    let decay: Vec<_> = Branch::both()
        .into_iter()
        .map(|b| verify_fa_decay(b, &a_grid, &grid, 1e-10))
        .collect::<Result<_, _>>()?;
    let pass = worst < bound && decay.iter().all(|d| d.sup_j0.is_finite() && d.sup_j1.is_finite());
    let report = json!({
        "seed": seed,
        "points": rows,
        "max_disagreement": worst,
        "bound": bound,
        "decay": decay,
        "pass": pass,
    });
    write_json(&report, out.as_deref())?;
    if pass {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!("J_+ routes disagree by {worst:e} (bound {bound:e})")))
    }
}

fn decay(beta: f64, lambda: f64, t: &[f64], tol: f64, out: Option<PathBuf>, dat: Option<PathBuf>) -> CmdResult {
    positive("lambda", lambda)?;
    positive("tol", tol)?;
    require(t.len() >= 2, "--t needs at least two times")?;
    for &x in t {
        require(x.is_finite() && x != 0.0, format!("times must be finite and non-zero, got {x}"))?;
    }
    let fit = decay_experiment(beta, lambda, t, tol)?;
    let mut table = Table::new(&["t", "sup", "argmax_x1", "argmax_x2", "predicted", "ratio"]);
    for s in &fit.samples {
        table.push_nums(&[s.t, s.sup, s.argmax.x1, s.argmax.x2, s.predicted, s.ratio]);
    }
    emit_csv(&table, out.as_deref())?;
    emit_dat(&table, dat.as_deref())?;
    eprintln!("slope {:.6}, constant {:.6}", fit.slope, fit.constant);
    Ok(Outcome::Pass)
}

fn strichartz(
    beta: f64,
    lambdas: &[f64],
    pairs: &[String],
    horizon: f64,
    per_td: usize,
    out: Option<PathBuf>,
    dat: Option<PathBuf>,
) -> CmdResult {
    DispersionSymbol::new(beta)?;
    require(!lambdas.is_empty(), "--lambda needs at least one value")?;
    for &l in lambdas {
        positive("lambda", l)?;
    }
    positive("horizon", horizon)?;
    require(per_td >= 1, "--per-td must be ≥ 1")?;
    let parsed = pairs
        .iter()
        .map(|p| {
            let (q, r) = p.split_once(':').ok_or_else(|| usage(format!("pair {p:?} is not q:r")))?;
            let q: f64 = q.trim().parse().map_err(|_| usage(format!("bad q in {p:?}")))?;
            let r: f64 = r.trim().parse().map_err(|_| usage(format!("bad r in {p:?}")))?;
            Ok((q, r))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    require(!parsed.is_empty(), "--pairs needs at least one pair")?;
    let mut table = Table::new(&["lambda", "q", "r", "horizon", "samples", "norm", "data_l2", "ratio"]);
    for &l in lambdas {
        for row in strichartz_scan(beta, l, &parsed, horizon, per_td)? {
            table.push_nums(&[row.lambda, row.q, row.r, row.horizon, row.samples as f64, row.norm, row.data_l2, row.ratio]);
        }
    }
    emit_csv(&table, out.as_deref())?;
    emit_dat(&table, dat.as_deref())?;
    Ok(Outcome::Pass)
}

fn dispersive(
    beta: f64,
    lambda: f64,
    t: &[f64],
    n: usize,
    length: Option<f64>,
    out: Option<PathBuf>,
    dat: Option<PathBuf>,
) -> CmdResult {
    positive("lambda", lambda)?;
    require(!t.is_empty(), "--t is required")?;
    let length = length.unwrap_or(128.0 * PI / lambda);
    positive("length", length)?;
    let table_in = dispersive_sup_experiment(beta, lambda, t, ExperimentGrid { n, length })?;
    let mut table = Table::new(&["t", "sup", "ratio"]);
    for r in &table_in.rows {
        table.push_nums(&[r.t, r.sup, r.ratio]);
    }
    emit_csv(&table, out.as_deref())?;
    emit_dat(&table, dat.as_deref())?;
    eprintln!("slope {:.6}, max ratio {:.6}", table_in.slope, table_in.max_ratio);
    Ok(Outcome::Pass)
}

fn ledger_table(state: &EvolutionState) -> Table {
    let mut t = Table::new(&["time", "l2", "hamiltonian", "grad_inf", "hs", "grad_high_inf", "forcing"]);
    for e in &state.ledger {
        t.push(vec![
            num(e.time),
            num(e.l2),
            e.hamiltonian.map_or_else(|| "nan".to_string(), num),
            num(e.grad_inf),
            num(e.hs),
            num(e.grad_high_inf),
            num(e.forcing),
        ]);
    }
    t
}

fn write_snapshot(path: &Path, field: &SpectralField2D, time: f64) -> Result<(), Failure> {
    let mut buf = Vec::new();
    field.write_snapshot(&mut buf, time)?;
    write_atomic(path, &buf)?;
    Ok(())
}

fn evolve(config: &Path) -> CmdResult {
    let text = std::fs::read_to_string(config).map_err(|e| usage(format!("cannot read {}: {e}", config.display())))?;
    let cfg = RunConfig::parse(&text).map_err(usage)?;
    let solver = Solver::new(&cfg.solver)?;
    let u0 = cfg.initial_field(&solver)?;
    let dir = &cfg.output.dir;
    std::fs::create_dir_all(dir)?;

    let mut state = EvolutionState::new(u0, cfg.solver.dt);
    let chunk = cfg.run.record_every.max(1) * cfg.run.snapshot_every.max(1);
    let mut status = Ok(());
    let mut snap = 0usize;
    while state.time < cfg.run.t_end - 0.5 * cfg.solver.dt {
        let target = (state.time + chunk as f64 * cfg.solver.dt).min(cfg.run.t_end);
        status = solver.run(&mut state, target, cfg.run.record_every);
        if status.is_err() {
            break;
        }
        if cfg.run.snapshot_every > 0 {
            snap += 1;
            write_snapshot(&dir.join(format!("snapshot_{snap:05}.bin")), &state.field, state.time)?;
        }
    }
    let table = ledger_table(&state);
    emit_csv(&table, Some(&dir.join("ledger.csv")))?;
    let dat = dir.join("ledger.dat");
    emit_dat(&table, Some(&dat))?;
    let script = gnuplot_script(Path::new("ledger.dat"), "ledger", &[(2, "L2"), (5, "H^s"), (4, "|grad u|_inf")], false);
    write_atomic(&dir.join("ledger.gp"), script.as_bytes())?;
    write_snapshot(&dir.join("final.bin"), &state.field, state.time)?;
    match status {
        Ok(()) => {
            eprintln!("reached t = {} in {} ledger rows", state.time, state.ledger.len());
            Ok(Outcome::Pass)
        }
        Err(e) => Ok(Outcome::Fail(e.to_string())),
    }
}

#[allow(clippy::too_many_arguments)]
fn whitham_compare(
    beta: f64,
    n: usize,
    length: f64,
    amplitude: f64,
    t_end: f64,
    dt: f64,
    bound: f64,
    out: Option<PathBuf>,
    dat: Option<PathBuf>,
) -> CmdResult {
    for (name, x) in [("length", length), ("amplitude", amplitude), ("t-end", t_end), ("dt", dt), ("bound", bound)] {
        positive(name, x)?;
    }
    let cfg = SolverConfig::new(beta, Grid2D::new(n, 4, length, 2.0 * PI)?, dt);
    let profile = |x: f64| amplitude * (-(x - length / 2.0).powi(2)).exp();
    let solver = Solver::new(&cfg)?;
    let mut s2 = EvolutionState::new(SpectralField2D::from_fn(cfg.grid()?, |x1, _| profile(x1))?, dt);
    solver.run(&mut s2, t_end, usize::MAX)?;
    let mut s1 = State1D { values: (0..n).map(|i| profile(length * i as f64 / n as f64)).collect(), length, time: 0.0 };
    Whitham1D::new(n, length, dt, Dispersion1D::Whitham { beta }, 2.0 * cfg.nonlinear_coeff, Dealias::TwoThirds)?
        .run(&mut s1, t_end)?;
    let mut table = Table::new(&["x", "u_2d", "u_1d", "difference"]);
    let mut worst = 0.0f64;
    for i in 0..n {
        let a = s2.field.values()[i * 4];
        let b = s1.values[i];
        for k in 0..4 {
            worst = worst.max((s2.field.values()[i * 4 + k] - b).abs());
        }
        table.push_nums(&[length * i as f64 / n as f64, a, b, a - b]);
    }
    emit_csv(&table, out.as_deref())?;
    emit_dat(&table, dat.as_deref())?;
    eprintln!("max |u_2d − u_1d| = {worst:e}");
    if worst < bound {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!("2-D and 1-D runs differ by {worst:e} (bound {bound:e})")))
    }
}

#[allow(clippy::too_many_arguments)]
fn twin_run(
    beta: f64,
    n: usize,
    length: f64,
    amplitude: f64,
    perturbation: f64,
    t_end: f64,
    dt: f64,
    out: Option<PathBuf>,
    dat: Option<PathBuf>,
) -> CmdResult {
    for (name, x) in [("length", length), ("amplitude", amplitude), ("perturbation", perturbation), ("t-end", t_end), ("dt", dt)] {
        positive(name, x)?;
    }
    let cfg = SolverConfig::new(beta, Grid2D::new(n, n, length, length)?, dt);
    let g = cfg.grid()?;
    let ua = constrained_bump(g, amplitude)?;
    let (c1, c2) = (0.4 * length, 0.48 * length);
    let bump = SpectralField2D::from_fn(g, |x1, x2| (x1 - c1).sin() * (-(x2 - c2).powi(2)).exp())?;
    let ub = ua.add(&bump.scale(perturbation))?;
    let rep = twin_run_l2_stability(&ua, &ub, &cfg, t_end)?;
    let mut table = Table::new(&["time", "ratio"]);
    for &(t, r) in &rep.ratio_history {
        table.push_nums(&[t, r]);
    }
    emit_csv(&table, out.as_deref())?;
    emit_dat(&table, dat.as_deref())?;
    eprintln!("sup ratio {:.6}, K {:.6}, implied c {:.6}", rep.sup_ratio, rep.k, rep.implied_c);
    Ok(Outcome::Pass)
}

#[allow(clippy::too_many_arguments)]
fn bona_smith(
    beta: f64,
    s: f64,
    eps: f64,
    amplitude: f64,
    seed: u64,
    n_list: &[f64],
    sigma: &[f64],
    grid: usize,
    t_end: f64,
    dt: f64,
    out: Option<PathBuf>,
) -> CmdResult {
    for (name, x) in [("s", s), ("eps", eps), ("amplitude", amplitude), ("t-end", t_end), ("dt", dt)] {
        positive(name, x)?;
    }
    require(!sigma.is_empty() && sigma.iter().all(|&x| x >= 0.0 && x < s), "--sigma values must lie in [0, s)")?;
    let cfg = SolverConfig::new(beta, Grid2D::new(grid, grid, 2.0 * PI, 2.0 * PI)?, dt);
    if let Some(&top) = n_list.last() {
        // 2n_max + its smooth cutoff must sit inside the retained band
        require(4.0 * top < grid as f64 / 3.0, format!("--grid {grid} too coarse for n = {top}"))?;
    }
    let u0 = rough_data(&cfg, s, eps, amplitude, seed)?;
    let rep = bona_smith_convergence(&u0, s, sigma, n_list, &cfg, t_end, 5)?;
    let mut table = Table::new(&["n", "sigma", "distance", "weighted"]);
    for r in &rep.rows {
        table.push_nums(&[r.n, r.sigma, r.distance, r.weighted]);
    }
    emit_csv(&table, out.as_deref())?;
    for (sg, rate) in &rep.rates {
        eprintln!("sigma {sg}: rate {rate:.4} (data exponent −{:.4})", s - sg);
    }
    eprintln!("monotone L2 decrease: {}, weighted non-increasing: {}", rep.monotone_l2, rep.weighted_nonincreasing);
    if rep.monotone_l2 {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail("‖u_n − u_2n‖ is not decreasing along --n-list".into()))
    }
}

fn verify_all(quick: bool, only: &[u8], out: Option<PathBuf>) -> CmdResult {
    require(only.iter().all(|&i| (1..=8).contains(&i)), "--only takes criterion numbers 1–8")?;
    let mode = if quick { Mode::Quick } else { Mode::Full };
    let ids: Vec<u8> = if only.is_empty() { (1..=8).collect() } else { only.to_vec() };
    let mut reports = Vec::new();
    for id in ids {
        let r = verify::criterion(id, mode);
        println!("{}", r.line());
        reports.push(r);
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", reports.len() - failed.len(), reports.len());
    if let Some(p) = out {
        write_json(&json!({"mode": mode, "criteria": reports}), Some(&p))?;
    }
    if failed.is_empty() {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(format!("criteria {failed:?}")))
    }
}
