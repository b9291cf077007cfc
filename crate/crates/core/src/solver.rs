//! Pseudo-spectral evolution of
//! `∂_t u + i sgn(D₁) m_β(|D|) u + 3∂_{x₁}(u²) = 0`
//! on a doubly-periodic box, with exponential Runge–Kutta steppers,
//! conserved-quantity and energy diagnostics, a 1-D Whitham oracle and the
//! twin-run / Bona–Smith experiments.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::spectral::{fft2, signed_index, DyadicProjector, Grid2D, SpectralField2D};
use crate::symbol::DispersionSymbol;

/// Points on the contour used for the `φ`-functions.
const CONTOUR_POINTS: usize = 32;

/// `‖u‖_∞` growth factor treated as blow-up.
pub const BLOWUP_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    EtdRk4,
    IfRk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dealias {
    TwoThirds,
    None,
}

fn default_s() -> f64 {
    1.76
}

fn default_coeff() -> f64 {
    3.0
}

fn default_scheme() -> Scheme {
    Scheme::EtdRk4
}

fn default_dealias() -> Dealias {
    Dealias::TwoThirds
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub beta: f64,
    pub n1: usize,
    pub n2: usize,
    pub l1: f64,
    pub l2: f64,
    pub dt: f64,
    #[serde(default = "default_dealias")]
    pub dealias: Dealias,
    /// Sobolev index for the monitored `‖J^s u‖₂`.
    #[serde(default = "default_s")]
    pub s: f64,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    /// Coefficient of `∂_{x₁}(u²)`; 0 switches the nonlinearity off.
    #[serde(default = "default_coeff")]
    pub nonlinear_coeff: f64,
}

impl SolverConfig {
    pub fn new(beta: f64, grid: Grid2D, dt: f64) -> Self {
        Self {
            beta,
            n1: grid.n1,
            n2: grid.n2,
            l1: grid.l1,
            l2: grid.l2,
            dt,
            dealias: Dealias::TwoThirds,
            s: default_s(),
            scheme: Scheme::EtdRk4,
            nonlinear_coeff: default_coeff(),
        }
    }

    pub fn grid(&self) -> Result<Grid2D> {
        Grid2D::new(self.n1, self.n2, self.l1, self.l2)
    }

    pub fn with_dt(&self, dt: f64) -> Self {
        Self { dt, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        DispersionSymbol::new(self.beta)?;
        self.grid()?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(domain("SolverConfig", format!("dt must be finite and > 0, got {}", self.dt)));
        }
        if !(self.s.is_finite() && self.s > 0.0) {
            return Err(domain("SolverConfig", format!("s must be finite and > 0, got {}", self.s)));
        }
        if !self.nonlinear_coeff.is_finite() {
            return Err(domain("SolverConfig", "nonlinear_coeff must be finite"));
        }
        Ok(())
    }
}

/// One ledger row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub time: f64,
    pub l2: f64,
    pub hamiltonian: Option<f64>,
    /// `‖∇u‖_∞`
    pub grad_inf: f64,
    /// `‖J^s u‖₂`
    pub hs: f64,
    /// `‖∇P_{>1}u‖_∞`
    pub grad_high_inf: f64,
    /// `‖J^{s−1}F‖₂` with `F = −3∂_{x₁}(u²)`
    pub forcing: f64,
}

#[derive(Debug, Clone)]
pub struct EvolutionState {
    pub field: SpectralField2D,
    pub time: f64,
    pub dt: f64,
    pub ledger: Vec<LedgerEntry>,
    initial_linf: f64,
}

impl EvolutionState {
    pub fn new(field: SpectralField2D, dt: f64) -> Self {
        let initial_linf = field.linf_norm();
        Self { field, time: 0.0, dt, ledger: Vec::new(), initial_linf }
    }
}

/// `φ`-function weights of the exponential schemes for one mode.
#[derive(Debug, Clone, Copy)]
struct EtdCoeffs {
    e: Complex64,
    e2: Complex64,
    q: Complex64,
    f1: Complex64,
    f2: Complex64,
    f3: Complex64,
}

/// Kassam–Trefethen contour means for `c = L·dt`.
fn etd_coeffs(c: Complex64, dt: f64) -> EtdCoeffs {
    let mut q = Complex64::new(0.0, 0.0);
    let mut f1 = q;
    let mut f2 = q;
    let mut f3 = q;
    for j in 0..CONTOUR_POINTS {
        let z = c + Complex64::from_polar(1.0, PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64 * 2.0);
        let ez = z.exp();
        let z3 = z * z * z;
        q += ((z * 0.5).exp() - 1.0) / z;
        f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
        f2 += (2.0 + z + ez * (z - 2.0)) / z3;
        f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    let k = dt / CONTOUR_POINTS as f64;
    EtdCoeffs { e: c.exp(), e2: (c * 0.5).exp(), q: q * k, f1: f1 * k, f2: f2 * k, f3: f3 * k }
}

/// Strict 2/3-rule: keep `|k| < n/3` along each axis.
fn retained(i: usize, n: usize) -> bool {
    3 * signed_index(i, n).unsigned_abs() < n as u64
}

/// Prepared operators for one configuration.
pub struct Solver {
    config: SolverConfig,
    grid: Grid2D,
    sym: DispersionSymbol,
    /// `−i sgn(ξ₁) m_β(|ξ|)`
    lin: Vec<Complex64>,
    /// `−c·iξ₁·mask` applied to `(u²)^`
    deriv: Vec<Complex64>,
    mask: Vec<f64>,
    etd: Vec<EtdCoeffs>,
}

impl Solver {
    pub fn new(config: &SolverConfig) -> Result<Self> {
        config.validate()?;
        let grid = config.grid()?;
        let sym = DispersionSymbol::new(config.beta)?;
        let n = grid.len();
        let mut lin = Vec::with_capacity(n);
        let mut deriv = Vec::with_capacity(n);
        let mut mask = Vec::with_capacity(n);
        for i in 0..n {
            let (i1, i2) = (i / grid.n2, i % grid.n2);
            let (a, b) = (grid.xi1(i1), grid.xi2(i2));
            lin.push(Complex64::new(0.0, -grid.sign1(i1) * sym.m_unchecked(a.hypot(b))));
            let keep = match config.dealias {
                Dealias::TwoThirds => retained(i1, grid.n1) && retained(i2, grid.n2),
                Dealias::None => true,
            };
            let k = if keep { 1.0 } else { 0.0 };
            mask.push(k);
            // the Nyquist column has no signed derivative
            let xi1 = if grid.sign1(i1) == 0.0 { 0.0 } else { a };
            deriv.push(Complex64::new(0.0, -config.nonlinear_coeff * xi1 * k));
        }
        let etd = lin.iter().map(|&l| etd_coeffs(l * config.dt, config.dt)).collect();
        Ok(Self { config: config.clone(), grid, sym, lin, deriv, mask, etd })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn grid(&self) -> Grid2D {
        self.grid
    }

    /// Physical-space values of coefficients `v` (real part).
    fn synth(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buf = v.to_vec();
        fft2(&mut buf, self.grid.n1, self.grid.n2, true);
        buf.iter_mut().for_each(|c| c.im = 0.0);
        buf
    }

    /// `N(v) = −c·iξ₁·(u²)^` (dealiased).
    fn nonlinear(&self, v: &[Complex64]) -> Vec<Complex64> {
        if self.config.nonlinear_coeff == 0.0 {
            return vec![Complex64::new(0.0, 0.0); v.len()];
        }
        let mut buf = self.synth(v);
        buf.iter_mut().for_each(|c| *c = Complex64::new(c.re * c.re, 0.0));
        fft2(&mut buf, self.grid.n1, self.grid.n2, false);
        let inv = 1.0 / self.grid.len() as f64;
        buf.iter_mut().zip(&self.deriv).for_each(|(c, d)| *c *= d * inv);
        buf
    }

    /// Project onto Hermitian-symmetric coefficient arrays.
    fn symmetrize(&self, v: &mut [Complex64]) {
        let g = self.grid;
        for i1 in 0..g.n1 {
            for i2 in 0..g.n2 {
                let a = i1 * g.n2 + i2;
                let b = ((g.n1 - i1) % g.n1) * g.n2 + (g.n2 - i2) % g.n2;
                if a <= b {
                    let m = 0.5 * (v[a] + v[b].conj());
                    v[a] = m;
                    v[b] = m.conj();
                }
            }
        }
    }

    /// One time step on the coefficient array.
    pub fn step_coeffs(&self, v: &mut [Complex64]) {
        match self.config.scheme {
            Scheme::EtdRk4 => {
                let nv = self.nonlinear(v);
                let a: Vec<Complex64> = (0..v.len()).map(|i| self.etd[i].e2 * v[i] + self.etd[i].q * nv[i]).collect();
                let na = self.nonlinear(&a);
                let b: Vec<Complex64> = (0..v.len()).map(|i| self.etd[i].e2 * v[i] + self.etd[i].q * na[i]).collect();
                let nb = self.nonlinear(&b);
                let c: Vec<Complex64> = (0..v.len())
                    .map(|i| self.etd[i].e2 * a[i] + self.etd[i].q * (nb[i] * 2.0 - nv[i]))
                    .collect();
                let nc = self.nonlinear(&c);
                for i in 0..v.len() {
                    let k = &self.etd[i];
                    v[i] = k.e * v[i] + nv[i] * k.f1 + (na[i] + nb[i]) * 2.0 * k.f2 + nc[i] * k.f3;
                }
            }
            Scheme::IfRk4 => {
                let dt = self.config.dt;
                let k1: Vec<Complex64> = self.nonlinear(v).into_iter().map(|x| x * dt).collect();
                let s2: Vec<Complex64> = (0..v.len()).map(|i| self.etd[i].e2 * (v[i] + k1[i] * 0.5)).collect();
                let k2: Vec<Complex64> = self.nonlinear(&s2).into_iter().map(|x| x * dt).collect();
                let s3: Vec<Complex64> = (0..v.len()).map(|i| self.etd[i].e2 * v[i] + k2[i] * 0.5).collect();
                let k3: Vec<Complex64> = self.nonlinear(&s3).into_iter().map(|x| x * dt).collect();
                let s4: Vec<Complex64> = (0..v.len()).map(|i| self.etd[i].e * v[i] + self.etd[i].e2 * k3[i]).collect();
                let k4: Vec<Complex64> = self.nonlinear(&s4).into_iter().map(|x| x * dt).collect();
                for i in 0..v.len() {
                    let k = &self.etd[i];
                    v[i] = k.e * v[i] + (k.e * k1[i] + k.e2 * (k2[i] + k3[i]) * 2.0 + k4[i]) / 6.0;
                }
            }
        }
        self.symmetrize(v);
    }

    /// Advance one step, refusing non-finite or runaway fields.
    pub fn step(&self, state: &mut EvolutionState) -> Result<()> {
        self.grid.check_same(&state.field.grid())?;
        let mut v = state.field.coeffs().to_vec();
        self.step_coeffs(&mut v);
        let next = SpectralField2D::from_coeffs(self.grid, v)?;
        let linf = next.linf_norm();
        let limit = BLOWUP_FACTOR * state.initial_linf.max(f64::MIN_POSITIVE);
        if !linf.is_finite() || linf > limit {
            return Err(Error::BlowUp {
                time: state.time + self.config.dt,
                detail: format!("‖u‖_∞ = {linf:e} (limit {limit:e}); last good state kept at t = {}", state.time),
            });
        }
        state.field = next;
        state.time += self.config.dt;
        state.dt = self.config.dt;
        Ok(())
    }

    /// Step to `t_end` (rounded to whole steps), recording the ledger every
    /// `record_every` steps and at both ends. On blow-up `state` keeps the
    /// last good field and its ledger.
    pub fn run(&self, state: &mut EvolutionState, t_end: f64, record_every: usize) -> Result<()> {
        let steps = ((t_end - state.time) / self.config.dt).round().max(0.0) as usize;
        let every = record_every.max(1);
        if state.ledger.last().map_or(true, |e| e.time < state.time) {
            state.ledger.push(self.record(&state.field, state.time));
        }
        for k in 1..=steps {
            self.step(state)?;
            if k % every == 0 || k == steps {
                state.ledger.push(self.record(&state.field, state.time));
            }
        }
        Ok(())
    }

    /// Diagnostics for one field.
    pub fn record(&self, u: &SpectralField2D, time: f64) -> LedgerEntry {
        let (l2, hamiltonian) = conserved_quantities(u, self.config.beta);
        LedgerEntry {
            time,
            l2,
            hamiltonian,
            grad_inf: grad_sup(u, None),
            hs: u.sobolev_norm(self.config.s),
            grad_high_inf: grad_sup(u, Some(1.0)),
            forcing: self.forcing_norm(u),
        }
    }

    /// `‖J^{s−1}(−3∂_{x₁}(u²))‖₂`.
    fn forcing_norm(&self, u: &SpectralField2D) -> f64 {
        let f = self.nonlinear(u.coeffs());
        let g = self.grid;
        let sum: f64 = f
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (a, b) = (g.xi1(i / g.n2), g.xi2(i % g.n2));
                (1.0 + a * a + b * b).powf(self.config.s - 1.0) * c.norm_sqr()
            })
            .sum();
        (g.l1 * g.l2 * sum).sqrt()
    }

    pub fn symbol(&self) -> DispersionSymbol {
        self.sym
    }

    /// `e^{L t}` applied exactly (the linear flow of the equation).
    pub fn linear_flow(&self, u: &SpectralField2D, t: f64) -> Result<SpectralField2D> {
        let c: Vec<Complex64> = u.coeffs().iter().zip(&self.lin).map(|(c, l)| c * (l * t).exp()).collect();
        SpectralField2D::from_coeffs(self.grid, c)
    }

    /// Keep only the modes retained by the dealiasing rule.
    pub fn truncate(&self, u: &SpectralField2D) -> Result<SpectralField2D> {
        let c: Vec<Complex64> = u.coeffs().iter().zip(&self.mask).map(|(c, m)| c * m).collect();
        SpectralField2D::from_coeffs(self.grid, c)
    }
}

/// Single step of the equation (builds the operators each call).
pub fn step(state: &mut EvolutionState, config: &SolverConfig) -> Result<()> {
    Solver::new(config)?.step(state)
}

/// `sup |∇u|`, optionally after `P_{>Λ}`.
fn grad_sup(u: &SpectralField2D, high_pass: Option<f64>) -> f64 {
    let g = u.grid();
    let proj = high_pass.map(|l| DyadicProjector::high_pass(l).expect("positive Λ"));
    let mut d1 = Vec::with_capacity(g.len());
    let mut d2 = Vec::with_capacity(g.len());
    for (i, c) in u.coeffs().iter().enumerate() {
        let (i1, i2) = (i / g.n2, i % g.n2);
        let a = if g.sign1(i1) == 0.0 && i1 != 0 { 0.0 } else { g.xi1(i1) };
        let b = if i2 == g.n2 / 2 { 0.0 } else { g.xi2(i2) };
        let w = proj.map_or(1.0, |p| p.symbol(g.xi1(i1).hypot(g.xi2(i2))));
        d1.push(c * Complex64::new(0.0, a * w));
        d2.push(c * Complex64::new(0.0, b * w));
    }
    fft2(&mut d1, g.n1, g.n2, true);
    fft2(&mut d2, g.n1, g.n2, true);
    d1.iter().zip(&d2).map(|(p, q)| p.re.hypot(q.re)).fold(0.0, f64::max)
}

/// Relative size of the `ξ₁ = 0` column above which the Hamiltonian is
/// reported unavailable.
pub const CONSTRAINT_TOL: f64 = 1e-10;

/// `(‖u‖₂, H(u))` with `H = ½⟨u, m_β(|D|)/|D₁| u⟩ + ∫u³`, the `ξ₁ = 0` column
/// excluded; `None` when that column carries more than [`CONSTRAINT_TOL`]
/// of the norm.
pub fn conserved_quantities(u: &SpectralField2D, beta: f64) -> (f64, Option<f64>) {
    let g = u.grid();
    let sym = DispersionSymbol::new(beta).expect("beta validated by caller");
    let l2 = u.l2_norm();
    let total: f64 = u.coeffs().iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return (0.0, Some(0.0));
    }
    let column: f64 = (0..g.n2).map(|i2| u.coeffs()[i2].norm_sqr()).sum();
    if (column / total).sqrt() > CONSTRAINT_TOL {
        return (l2, None);
    }
    let mut quad = 0.0;
    for (i, c) in u.coeffs().iter().enumerate() {
        let i1 = i / g.n2;
        if i1 == 0 {
            continue;
        }
        let (a, b) = (g.xi1(i1), g.xi2(i % g.n2));
        quad += c.norm_sqr() * sym.m_unchecked(a.hypot(b)) / a.abs();
    }
    let quad = 0.5 * g.l1 * g.l2 * quad;
    let cubic = g.cell_area() * u.values().iter().map(|v| v * v * v).sum::<f64>();
    (l2, Some(quad + cubic))
}

/// Trapezoid integral of `‖∇u‖_∞` over the ledger.
pub fn integrated_gradient(ledger: &[LedgerEntry]) -> f64 {
    ledger.windows(2).map(|w| 0.5 * (w[0].grad_inf + w[1].grad_inf) * (w[1].time - w[0].time)).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub s: f64,
    pub horizon: f64,
    /// `‖u(0)‖²_{H^s}`
    pub hs0_sq: f64,
    /// `max_t ‖u(t)‖²_{H^s}`
    pub hs_max_sq: f64,
    /// `∫₀^T ‖∇u‖_∞ dt`
    pub grad_integral: f64,
    /// Smallest `c ≥ 0` making the integrated energy inequality hold.
    pub implied_c: f64,
    /// `‖∇P_{>1}u‖_{L²_T L^∞_x}`
    pub refined_lhs: f64,
    /// `T^{1/2}‖J^s u‖_{L^∞_T L²} + ‖J^{s−1}F‖_{L²_T L²_x}`
    pub refined_rhs: f64,
}

/// Check `‖u‖²_{L^∞_T H^s} ≤ ‖u(0)‖²_{H^s} + c(∫‖∇u‖_∞)‖u‖²_{L^∞_T H^s}` by
/// solving for `c`, and tabulate the refined Strichartz quantities.
pub fn energy_monitor(ledger: &[LedgerEntry], s: f64) -> Result<EnergyReport> {
    if ledger.len() < 2 {
        return Err(Error::Empty("energy monitor needs at least two ledger rows"));
    }
    let horizon = ledger[ledger.len() - 1].time - ledger[0].time;
    let hs0_sq = ledger[0].hs.powi(2);
    let hs_max_sq = ledger.iter().map(|e| e.hs * e.hs).fold(0.0, f64::max);
    let grad_integral = integrated_gradient(ledger);
    let excess = hs_max_sq - hs0_sq;
    let implied_c = if excess <= 0.0 {
        0.0
    } else if grad_integral > 0.0 {
        excess / (grad_integral * hs_max_sq)
    } else {
        f64::INFINITY
    };
    let trap = |f: &dyn Fn(&LedgerEntry) -> f64| -> f64 {
        ledger.windows(2).map(|w| 0.5 * (f(&w[0]) + f(&w[1])) * (w[1].time - w[0].time)).sum()
    };
    let refined_lhs = trap(&|e| e.grad_high_inf * e.grad_high_inf).sqrt();
    let hs_max = hs_max_sq.sqrt();
    let refined_rhs = horizon.sqrt() * hs_max + trap(&|e| e.forcing * e.forcing).sqrt();
    Ok(EnergyReport { s, horizon, hs0_sq, hs_max_sq, grad_integral, implied_c, refined_lhs, refined_rhs })
}

/// First ledger time with `‖J^s u‖₂ ≥ 2‖J^s u(0)‖₂`.
pub fn hs_doubling_time(ledger: &[LedgerEntry]) -> Option<f64> {
    let h0 = ledger.first()?.hs;
    ledger.iter().find(|e| e.hs >= 2.0 * h0).map(|e| e.time)
}

#[derive(Debug, Clone, Serialize)]
pub struct TwinReport {
    pub horizon: f64,
    pub initial_distance: f64,
    /// `sup_t ‖u_a − u_b‖₂ / ‖u_a(0) − u_b(0)‖₂`
    pub sup_ratio: f64,
    /// `K = max(∫‖∇u_a‖_∞, ∫‖∇u_b‖_∞)`
    pub k: f64,
    /// `c = ln(max(ratio, 1))/K`, the smallest exponent with `ratio ≤ e^{cK}`
    pub implied_c: f64,
    pub ratio_history: Vec<(f64, f64)>,
}

/// Evolve two data side by side and measure `L²` stability of the flow.
pub fn twin_run_l2_stability(
    u0_a: &SpectralField2D,
    u0_b: &SpectralField2D,
    config: &SolverConfig,
    horizon: f64,
) -> Result<TwinReport> {
    u0_a.grid().check_same(&u0_b.grid())?;
    let solver = Solver::new(config)?;
    solver.grid().check_same(&u0_a.grid())?;
    let d0 = u0_a.sub(u0_b)?.l2_norm();
    let steps = (horizon / config.dt).round().max(1.0) as usize;
    let mut a = EvolutionState::new(u0_a.clone(), config.dt);
    let mut b = EvolutionState::new(u0_b.clone(), config.dt);
    let mut history = vec![(0.0, if d0 > 0.0 { 1.0 } else { 1.0 })];
    a.ledger.push(solver.record(&a.field, 0.0));
    b.ledger.push(solver.record(&b.field, 0.0));
    for _ in 0..steps {
        let (ra, rb) = rayon::join(|| solver.step(&mut a), || solver.step(&mut b));
        ra?;
        rb?;
        a.ledger.push(LedgerEntry { grad_inf: grad_sup(&a.field, None), ..lean_entry(a.time) });
        b.ledger.push(LedgerEntry { grad_inf: grad_sup(&b.field, None), ..lean_entry(b.time) });
        let d = a.field.sub(&b.field)?.l2_norm();
        history.push((a.time, if d0 > 0.0 { d / d0 } else { 1.0 }));
    }
    let sup_ratio = history.iter().map(|h| h.1).fold(0.0, f64::max);
    let k = integrated_gradient(&a.ledger).max(integrated_gradient(&b.ledger));
    let implied_c = if k > 0.0 { sup_ratio.max(1.0).ln() / k } else { 0.0 };
    Ok(TwinReport { horizon: a.time, initial_distance: d0, sup_ratio, k, implied_c, ratio_history: history })
}

fn lean_entry(time: f64) -> LedgerEntry {
    LedgerEntry { time, l2: 0.0, hamiltonian: None, grad_inf: 0.0, hs: 0.0, grad_high_inf: 0.0, forcing: 0.0 }
}

/// `u₀ = ∂_{x₁}ψ` for an anisotropic Gaussian `ψ` centred in the box, scaled
/// to `‖u₀‖_∞ = amplitude`. The `ξ₁ = 0` column vanishes, so the Hamiltonian
/// is defined.
pub fn constrained_bump(grid: Grid2D, amplitude: f64) -> Result<SpectralField2D> {
    let (c1, c2) = (grid.l1 / 2.0, grid.l2 / 2.0);
    let psi = SpectralField2D::from_fn(grid, |x1, x2| (-((x1 - c1).powi(2) + 0.5 * (x2 - c2).powi(2)) / 1.5).exp())?;
    let u = psi.apply_multiplier(|a, _, i1| Complex64::new(0.0, if grid.sign1(i1) == 0.0 { 0.0 } else { a }))?;
    let peak = u.linf_norm();
    Ok(u.scale(amplitude / peak))
}

/// Rough random data with `|c_k| ∝ |ξ|^{−s−1−ε}` and random phases, kept
/// inside the retained band of `config` and scaled to `‖u‖_∞ = amplitude`.
pub fn rough_data(config: &SolverConfig, s: f64, eps: f64, amplitude: f64, seed: u64) -> Result<SpectralField2D> {
    let solver = Solver::new(config)?;
    let g = solver.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![Complex64::new(0.0, 0.0); g.len()];
    for (i, ci) in c.iter_mut().enumerate() {
        let (a, b) = (g.xi1(i / g.n2), g.xi2(i % g.n2));
        let r = a.hypot(b);
        let phase: f64 = rng.gen_range(0.0..2.0 * PI);
        if r > 0.0 && solver.mask[i] > 0.0 {
            *ci = Complex64::from_polar(r.powf(-s - 1.0 - eps), phase);
        }
    }
    let f = SpectralField2D::from_coeffs(g, c)?;
    Ok(f.scale(amplitude / f.linf_norm()))
}

#[derive(Debug, Clone, Serialize)]
pub struct BonaSmithRow {
    pub n: f64,
    pub sigma: f64,
    /// `sup_t ‖u_n − u_{2n}‖_{H^σ}`
    pub distance: f64,
    /// `distance · n^{s−σ}`
    pub weighted: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BonaSmithReport {
    pub s: f64,
    pub horizon: f64,
    pub rows: Vec<BonaSmithRow>,
    /// Per `σ`: least-squares slope of `ln distance` against `ln n`.
    pub rates: Vec<(f64, f64)>,
    /// `sup_t ‖u_n − u_{2n}‖₂` decreasing along `n_list`.
    pub monotone_l2: bool,
    /// `distance·n^{s−σ}` non-increasing along `n_list` for every `σ`.
    pub weighted_nonincreasing: bool,
}

/// Evolve `P_{≤n}u₀` for each `n` in `n_list` and measure the Cauchy rates
/// `sup_t ‖u_n − u_{2n}‖_{H^σ}`.
pub fn bona_smith_convergence(
    u0: &SpectralField2D,
    s: f64,
    sigmas: &[f64],
    n_list: &[f64],
    config: &SolverConfig,
    horizon: f64,
    record_every: usize,
) -> Result<BonaSmithReport> {
    if n_list.len() < 2 {
        return Err(Error::Empty("Bona-Smith n_list needs at least two entries"));
    }
    for w in n_list.windows(2) {
        if (w[1] / w[0] - 2.0).abs() > 1e-12 {
            return Err(domain("bona_smith_convergence", format!("n_list must be dyadic, got {n_list:?}")));
        }
    }
    let solver = Solver::new(config)?;
    solver.grid().check_same(&u0.grid())?;
    let mut all_n = n_list.to_vec();
    all_n.push(2.0 * n_list[n_list.len() - 1]);
    let steps = (horizon / config.dt).round().max(1.0) as usize;
    let every = record_every.max(1);
    let runs: Vec<Vec<SpectralField2D>> = {
        use rayon::prelude::*;
        all_n
            .par_iter()
            .map(|&n| {
                let mut st = EvolutionState::new(crate::spectral::project(u0, &DyadicProjector::low_pass(n)?)?, config.dt);
                let mut snaps = vec![st.field.clone()];
                for k in 1..=steps {
                    solver.step(&mut st)?;
                    if k % every == 0 || k == steps {
                        snaps.push(st.field.clone());
                    }
                }
                Ok(snaps)
            })
            .collect::<Result<_>>()?
    };
    let mut rows = Vec::new();
    for (j, &n) in n_list.iter().enumerate() {
        for &sigma in sigmas {
            let distance = runs[j]
                .iter()
                .zip(&runs[j + 1])
                .map(|(a, b)| a.sub(b).map(|d| d.sobolev_norm(sigma)))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            rows.push(BonaSmithRow { n, sigma, distance, weighted: distance * n.powf(s - sigma) });
        }
    }
    let rates = sigmas
        .iter()
        .map(|&sigma| {
            let pick: Vec<&BonaSmithRow> = rows.iter().filter(|r| r.sigma == sigma).collect();
            let ns: Vec<f64> = pick.iter().map(|r| r.n).collect();
            let ds: Vec<f64> = pick.iter().map(|r| r.distance).collect();
            (sigma, crate::oscint::loglog_slope(&ns, &ds))
        })
        .collect();
    let series = |sigma: f64, f: &dyn Fn(&BonaSmithRow) -> f64| -> Vec<f64> {
        rows.iter().filter(|r| r.sigma == sigma).map(f).collect()
    };
    let l2: Vec<f64> = runs
        .windows(2)
        .map(|w| {
            w[0].iter().zip(&w[1]).map(|(a, b)| a.sub(b).map(|d| d.l2_norm())).collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?
        .into_iter()
        .map(|v| v.into_iter().fold(0.0, f64::max))
        .collect();
    let monotone_l2 = l2.windows(2).all(|w| w[1] < w[0]);
    let weighted_nonincreasing = sigmas
        .iter()
        .all(|&sg| series(sg, &|r| r.weighted).windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9)));
    Ok(BonaSmithReport { s, horizon, rows, rates, monotone_l2, weighted_nonincreasing })
}

/// One-dimensional state for the Whitham reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct State1D {
    pub values: Vec<f64>,
    pub length: f64,
    pub time: f64,
}

/// Linear part of the 1-D model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dispersion1D {
    /// `sgn(ξ) m_β(|ξ|)`
    Whitham { beta: f64 },
    /// `ξ + ξ³(β/2 − 1/6)`, the long-wave expansion of the above.
    Kdv { beta: f64 },
}

/// 1-D solver for `u_t + i ω(D) u + (c/2)∂_x(u²) = 0`, independent of the
/// 2-D operators (its own FFTs, mask and stepping).
pub struct Whitham1D {
    n: usize,
    length: f64,
    dt: f64,
    etd: Vec<EtdCoeffs>,
    deriv: Vec<Complex64>,
    fwd: std::sync::Arc<dyn rustfft::Fft<f64>>,
    inv: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl Whitham1D {
    /// `coeff` multiplies `u u_x`; the 2-D equation's `3∂_{x₁}(u²)` is `coeff = 6`.
    pub fn new(n: usize, length: f64, dt: f64, dispersion: Dispersion1D, coeff: f64, dealias: Dealias) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(domain("Whitham1D", format!("n must be a power of two ≥ 2, got {n}")));
        }
        if !(length > 0.0 && dt > 0.0 && length.is_finite() && dt.is_finite()) {
            return Err(domain("Whitham1D", "length and dt must be finite and > 0"));
        }
        let mut planner = rustfft::FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let (beta, sym) = match dispersion {
            Dispersion1D::Whitham { beta } | Dispersion1D::Kdv { beta } => (beta, DispersionSymbol::new(beta)?),
        };
        let mut etd = Vec::with_capacity(n);
        let mut deriv = Vec::with_capacity(n);
        for i in 0..n {
            let k = signed_index(i, n);
            let nyq = 2 * k.unsigned_abs() as usize == n;
            let xi = if nyq { 0.0 } else { 2.0 * PI / length * k as f64 };
            let omega = match dispersion {
                Dispersion1D::Whitham { .. } => xi.signum() * sym.m_unchecked(xi.abs()),
                Dispersion1D::Kdv { .. } => xi + xi.powi(3) * (beta / 2.0 - 1.0 / 6.0),
            };
            etd.push(etd_coeffs(Complex64::new(0.0, -omega * dt), dt));
            let keep = match dealias {
                Dealias::TwoThirds => 3 * k.unsigned_abs() < n as u64,
                Dealias::None => true,
            };
            deriv.push(Complex64::new(0.0, if keep { -0.5 * coeff * xi } else { 0.0 }));
        }
        Ok(Self { n, length, dt, etd, deriv, fwd, inv })
    }

    fn nonlinear(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buf = v.to_vec();
        self.inv.process(&mut buf);
        buf.iter_mut().for_each(|c| *c = Complex64::new(c.re * c.re, 0.0));
        self.fwd.process(&mut buf);
        let inv = 1.0 / self.n as f64;
        buf.iter_mut().zip(&self.deriv).for_each(|(c, d)| *c *= d * inv);
        buf
    }

    /// One ETDRK4 step.
    pub fn step(&self, state: &mut State1D) -> Result<()> {
        if state.values.len() != self.n || state.length != self.length {
            return Err(Error::GridMismatch(format!("state has {} points on length {}", state.values.len(), state.length)));
        }
        let mut v: Vec<Complex64> = state.values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.fwd.process(&mut v);
        let inv = 1.0 / self.n as f64;
        v.iter_mut().for_each(|c| *c *= inv);
        let e = &self.etd;
        let nv = self.nonlinear(&v);
        let a: Vec<Complex64> = (0..self.n).map(|i| e[i].e2 * v[i] + e[i].q * nv[i]).collect();
        let na = self.nonlinear(&a);
        let b: Vec<Complex64> = (0..self.n).map(|i| e[i].e2 * v[i] + e[i].q * na[i]).collect();
        let nb = self.nonlinear(&b);
        let c: Vec<Complex64> = (0..self.n).map(|i| e[i].e2 * a[i] + e[i].q * (nb[i] * 2.0 - nv[i])).collect();
        let nc = self.nonlinear(&c);
        for i in 0..self.n {
            v[i] = e[i].e * v[i] + nv[i] * e[i].f1 + (na[i] + nb[i]) * 2.0 * e[i].f2 + nc[i] * e[i].f3;
        }
        self.inv.process(&mut v);
        let values: Vec<f64> = v.iter().map(|c| c.re).collect();
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::BlowUp { time: state.time + self.dt, detail: "non-finite value in 1-D run".into() });
        }
        state.values = values;
        state.time += self.dt;
        Ok(())
    }

    pub fn run(&self, state: &mut State1D, t_end: f64) -> Result<()> {
        let steps = ((t_end - state.time) / self.dt).round().max(0.0) as usize;
        for _ in 0..steps {
            self.step(state)?;
        }
        Ok(())
    }
}

/// One step of the 1-D Whitham equation matching [`SolverConfig`]'s
/// coefficient convention.
pub fn whitham_step(state: &mut State1D, config: &SolverConfig) -> Result<()> {
    Whitham1D::new(
        state.values.len(),
        state.length,
        config.dt,
        Dispersion1D::Whitham { beta: config.beta },
        2.0 * config.nonlinear_coeff,
        config.dealias,
    )?
    .step(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(beta: f64, n: usize, dt: f64) -> SolverConfig {
        SolverConfig::new(beta, Grid2D::new(n, n, 4.0 * PI, 4.0 * PI).unwrap(), dt)
    }

    fn constrained_data(grid: Grid2D, amp: f64) -> SpectralField2D {
        constrained_bump(grid, amp).unwrap()
    }

    #[test]
    fn etd_coefficients_match_closed_forms() {
        for c in [Complex64::new(0.0, 3.0), Complex64::new(0.0, -40.0), Complex64::new(-2.0, 1.0)] {
            let k = etd_coeffs(c, 1.0);
            let e = c.exp();
            let c3 = c * c * c;
            assert!((k.q - ((c * 0.5).exp() - 1.0) / c).norm() < 1e-13);
            assert!((k.f1 - (-4.0 - c + e * (4.0 - 3.0 * c + c * c)) / c3).norm() < 1e-12);
            assert!((k.f2 - (2.0 + c + e * (c - 2.0)) / c3).norm() < 1e-12);
            assert!((k.f3 - (-4.0 - 3.0 * c - c * c + e * (4.0 - c)) / c3).norm() < 1e-12);
        }
        // removable singularity at 0: Q = 1/2, f1 = 1/6, f2 = 1/6, f3 = 1/6
        let k = etd_coeffs(Complex64::new(0.0, 0.0), 1.0);
        assert!((k.q - 0.5).norm() < 1e-14);
        for f in [k.f1, k.f2, k.f3] {
            assert!((f - 1.0 / 6.0).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_stays_zero() {
        let cfg = config(1.0, 32, 0.01);
        let solver = Solver::new(&cfg).unwrap();
        let mut st = EvolutionState::new(SpectralField2D::zeros(cfg.grid().unwrap()), cfg.dt);
        solver.run(&mut st, 0.1, 1).unwrap();
        assert_eq!(st.field.linf_norm(), 0.0);
        let (l2, h) = conserved_quantities(&st.field, 1.0);
        assert_eq!((l2, h), (0.0, Some(0.0)));
    }

    #[test]
    fn linear_step_is_exact_propagator() {
        for scheme in [Scheme::EtdRk4, Scheme::IfRk4] {
            let mut cfg = config(0.0, 32, 0.05);
            cfg.nonlinear_coeff = 0.0;
            cfg.scheme = scheme;
            let solver = Solver::new(&cfg).unwrap();
            let u0 = constrained_data(cfg.grid().unwrap(), 1.0);
            let mut st = EvolutionState::new(u0.clone(), cfg.dt);
            solver.step(&mut st).unwrap();
            // the equation's flow is the time reverse of S(t)
            let want = crate::spectral::propagate_linear(&u0, 0.0, -cfg.dt).unwrap();
            assert!(st.field.sub(&want).unwrap().linf_norm() < 1e-13);
        }
    }

    #[test]
    fn dealiased_product_is_exact() {
        let cfg = config(0.0, 32, 0.01);
        let solver = Solver::new(&cfg).unwrap();
        let g = cfg.grid().unwrap();
        let u = solver.truncate(&crate::solver::rough_data(&cfg, 0.5, 0.1, 1.0, 9).unwrap()).unwrap();
        let n = solver.nonlinear(u.coeffs());
        // double-resolution oracle for −3iξ₁·(u²)^ on the retained modes
        let g2 = Grid2D::new(64, 64, g.l1, g.l2).unwrap();
        let mut big = vec![Complex64::new(0.0, 0.0); g2.len()];
        for i in 0..g.len() {
            let (k1, k2) = (signed_index(i / g.n2, g.n1), signed_index(i % g.n2, g.n2));
            let j1 = k1.rem_euclid(64) as usize;
            let j2 = k2.rem_euclid(64) as usize;
            big[j1 * 64 + j2] = u.coeffs()[i];
        }
        let ub = SpectralField2D::from_coeffs(g2, big).unwrap();
        let sq = SpectralField2D::from_values(g2, ub.values().iter().map(|v| v * v).collect()).unwrap();
        for i in 0..g.len() {
            if solver.mask[i] == 0.0 {
                continue;
            }
            let (k1, k2) = (signed_index(i / g.n2, g.n1), signed_index(i % g.n2, g.n2));
            let c = sq.coeffs()[k1.rem_euclid(64) as usize * 64 + k2.rem_euclid(64) as usize];
            let want = c * Complex64::new(0.0, -3.0 * g.xi1(i / g.n2));
            assert!((n[i] - want).norm() < 1e-13, "mode ({k1},{k2})");
        }
    }

    #[test]
    fn reality_and_l2_conservation() {
        let cfg = config(1.0, 64, 0.005);
        let solver = Solver::new(&cfg).unwrap();
        let u0 = solver.truncate(&constrained_data(cfg.grid().unwrap(), 0.1)).unwrap();
        let mut st = EvolutionState::new(u0.clone(), cfg.dt);
        solver.run(&mut st, 1.0, 10).unwrap();
        assert!(st.field.hermitian_defect() < 1e-12);
        let drift = (st.field.l2_norm() - u0.l2_norm()).abs() / u0.l2_norm();
        assert!(drift < 1e-8, "L2 drift {drift:e}");
        let h0 = st.ledger[0].hamiltonian.unwrap();
        let h1 = st.ledger.last().unwrap().hamiltonian.unwrap();
        assert!(((h1 - h0) / h0).abs() < 1e-6, "H drift {}", (h1 - h0) / h0);
        let times: Vec<f64> = st.ledger.iter().map(|e| e.time).collect();
        assert!(times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn unconstrained_data_has_no_hamiltonian() {
        let g = Grid2D::new(16, 16, 2.0 * PI, 2.0 * PI).unwrap();
        let u = SpectralField2D::from_fn(g, |_, x2| x2.cos()).unwrap();
        assert!(conserved_quantities(&u, 0.0).1.is_none());
    }

    #[test]
    fn schemes_agree_and_converge() {
        let base = config(0.0, 32, 0.02);
        let g = base.grid().unwrap();
        let u0 = Solver::new(&base).unwrap().truncate(&constrained_data(g, 0.8)).unwrap();
        let run = |cfg: &SolverConfig| {
            let s = Solver::new(cfg).unwrap();
            let mut st = EvolutionState::new(u0.clone(), cfg.dt);
            s.run(&mut st, 0.5, 1000).unwrap();
            st.field
        };
        let reference = run(&base.with_dt(0.02 / 32.0));
        let e1 = run(&base).sub(&reference).unwrap().l2_norm();
        let e2 = run(&base.with_dt(0.01)).sub(&reference).unwrap().l2_norm();
        assert!(e1 / e2 >= 8.0, "order ratio {}", e1 / e2);
        let mut ifc = base.clone();
        ifc.scheme = Scheme::IfRk4;
        let d = run(&ifc).sub(&reference).unwrap().l2_norm();
        assert!(d < 1e-5 * u0.l2_norm(), "IF-RK4 distance {d:e}");
    }

    #[test]
    fn two_dimensional_run_reduces_to_whitham() {
        for beta in [0.0, 1.0] {
            let n = 128;
            let length = 8.0 * PI;
            let mut cfg = SolverConfig::new(beta, Grid2D::new(n, 4, length, 2.0 * PI).unwrap(), 0.005);
            cfg.dealias = Dealias::TwoThirds;
            let solver = Solver::new(&cfg).unwrap();
            let profile = |x: f64| 0.3 * (-(x - length / 2.0).powi(2)).exp();
            let u0 = SpectralField2D::from_fn(cfg.grid().unwrap(), |x1, _| profile(x1)).unwrap();
            let mut st = EvolutionState::new(u0, cfg.dt);
            solver.run(&mut st, 1.0, 1000).unwrap();

            let mut s1 = State1D { values: (0..n).map(|i| profile(length * i as f64 / n as f64)).collect(), length, time: 0.0 };
            let w = Whitham1D::new(n, length, cfg.dt, Dispersion1D::Whitham { beta }, 6.0, Dealias::TwoThirds).unwrap();
            w.run(&mut s1, 1.0).unwrap();
            let mut err = 0.0f64;
            for i1 in 0..n {
                for i2 in 0..4 {
                    err = err.max((st.field.values()[i1 * 4 + i2] - s1.values[i1]).abs());
                }
            }
            assert!(err < 1e-8, "beta={beta} err={err:e}");
        }
    }

    #[test]
    fn whitham_step_matches_solver_convention() {
        let cfg = SolverConfig::new(0.0, Grid2D::new(64, 2, 8.0 * PI, 1.0).unwrap(), 0.01);
        let mut s = State1D { values: (0..64).map(|i| (i as f64 * PI / 32.0).sin() * 0.1).collect(), length: 8.0 * PI, time: 0.0 };
        let zero = State1D { values: vec![0.0; 64], length: 8.0 * PI, time: 0.0 };
        let mut z = zero.clone();
        whitham_step(&mut z, &cfg).unwrap();
        assert_eq!(z.values, zero.values);
        whitham_step(&mut s, &cfg).unwrap();
        assert!((s.time - 0.01).abs() < 1e-15);
    }

    #[test]
    fn whitham_linear_run_matches_multiplier() {
        let (n, length, dt) = (64, 8.0 * PI, 0.01);
        let w = Whitham1D::new(n, length, dt, Dispersion1D::Whitham { beta: 1.0 }, 0.0, Dealias::None).unwrap();
        let mut s = State1D { values: (0..n).map(|i| (2.0 * PI * 3.0 * i as f64 / n as f64).cos()).collect(), length, time: 0.0 };
        w.run(&mut s, 0.5).unwrap();
        let xi = 2.0 * PI * 3.0 / length;
        let om = DispersionSymbol::new(1.0).unwrap().m_unchecked(xi);
        for (i, v) in s.values.iter().enumerate() {
            let x = length * i as f64 / n as f64;
            assert!((v - (xi * x - om * 0.5).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn long_waves_follow_kdv() {
        let (n, length, dt) = (256, 64.0 * PI, 0.01);
        let profile = |x: f64| 0.01 / (((x - length / 2.0) / 4.0).cosh().powi(2));
        let init: Vec<f64> = (0..n).map(|i| profile(length * i as f64 / n as f64)).collect();
        let run = |d: Dispersion1D| {
            let w = Whitham1D::new(n, length, dt, d, 6.0, Dealias::TwoThirds).unwrap();
            let mut s = State1D { values: init.clone(), length, time: 0.0 };
            w.run(&mut s, 2.0).unwrap();
            s.values
        };
        for beta in [0.0, 1.0] {
            let a = run(Dispersion1D::Whitham { beta });
            let b = run(Dispersion1D::Kdv { beta });
            let num: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).sum();
            let den: f64 = a.iter().map(|x| x * x).sum();
            assert!((num / den).sqrt() < 1e-2, "beta={beta} rel {}", (num / den).sqrt());
        }
    }

    #[test]
    fn blow_up_is_detected_and_state_kept() {
        let mut cfg = config(0.0, 32, 0.5);
        cfg.dealias = Dealias::None;
        cfg.nonlinear_coeff = 3.0;
        let solver = Solver::new(&cfg).unwrap();
        let u0 = constrained_data(cfg.grid().unwrap(), 1e3);
        let mut st = EvolutionState::new(u0, cfg.dt);
        let res = solver.run(&mut st, 50.0, 1);
        assert!(matches!(res, Err(Error::BlowUp { .. })), "{res:?}");
        assert!(st.field.values().iter().all(|v| v.is_finite()));
        assert!(!st.ledger.is_empty());
    }

    #[test]
    fn linear_energy_monitor_is_trivial() {
        let mut cfg = config(1.0, 32, 0.02);
        cfg.nonlinear_coeff = 0.0;
        let solver = Solver::new(&cfg).unwrap();
        let mut st = EvolutionState::new(constrained_data(cfg.grid().unwrap(), 1.0), cfg.dt);
        solver.run(&mut st, 0.4, 2).unwrap();
        let rep = energy_monitor(&st.ledger, cfg.s).unwrap();
        assert!((rep.hs_max_sq - rep.hs0_sq).abs() < 1e-10 * rep.hs0_sq);
        assert!(rep.implied_c < 1e-6);
        assert!(rep.refined_lhs <= rep.refined_rhs);
    }

    #[test]
    fn twin_identical_data() {
        let cfg = config(1.0, 32, 0.02);
        let u = constrained_data(cfg.grid().unwrap(), 0.5);
        let rep = twin_run_l2_stability(&u, &u, &cfg, 0.2).unwrap();
        assert_eq!(rep.sup_ratio, 1.0);
        assert_eq!(rep.implied_c, 0.0);
    }

    #[test]
    fn bona_smith_band_limited_data() {
        let cfg = config(1.0, 64, 0.01);
        let g = cfg.grid().unwrap();
        let u = SpectralField2D::from_fn(g, |x1, x2| 0.2 * (x1 * 0.5).sin() * (x2 * 0.5).cos()).unwrap();
        let rep = bona_smith_convergence(&u, 1.76, &[0.0], &[2.0, 4.0], &cfg, 0.1, 5).unwrap();
        for r in &rep.rows {
            assert!(r.distance < 1e-12, "{r:?}");
        }
        assert!(bona_smith_convergence(&u, 1.76, &[0.0], &[2.0, 3.0], &cfg, 0.1, 5).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(config(1.0, 32, 0.0).validate().is_err());
        assert!(config(-1.0, 32, 0.1).validate().is_err());
        let mut c = config(1.0, 32, 0.1);
        c.s = -1.0;
        assert!(Solver::new(&c).is_err());
    }
}
