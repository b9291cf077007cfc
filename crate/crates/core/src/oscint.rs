//! The frequency-localised kernel
//! `I_{Λ,t}(x) = ∫ e^{ix·ξ + it sgn(ξ₁) m_β(|ξ|)} ρ(|ξ|/Λ) dξ`,
//! by polar reduction onto `J_+` and by brute-force tensor quadrature,
//! plus stationary-phase diagnostics and the `sup_x` decay sweep.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::besselasym::{j_plus_direct, PlanePoint, RayDirection};
use crate::error::{domain, Error, Result};
use crate::spectral::rho;
use crate::symbol::DispersionSymbol;

/// Oscillation budget `|t|·m_β(2Λ) + 2Λ|x|` for [`kernel_2d`].
pub const TENSOR_BUDGET: f64 = 1e5;

/// Radius below which `J_+` is interpolated directly rather than
/// through its Laplace amplitudes.
const RHO_SPLIT: f64 = 8.0;

/// Spacing of the amplitude table in `ln ρ`.
const LOG_STEP: f64 = 1.0 / 256.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelQuery {
    pub beta: f64,
    pub lambda: f64,
    pub t: f64,
    pub x: PlanePoint,
}

impl KernelQuery {
    pub fn new(beta: f64, lambda: f64, t: f64, x: PlanePoint) -> Result<Self> {
        DispersionSymbol::new(beta)?;
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(domain("KernelQuery", format!("Lambda must be finite and > 0, got {lambda}")));
        }
        if !t.is_finite() {
            return Err(domain("KernelQuery", format!("t must be finite, got {t}")));
        }
        Ok(Self { beta, lambda, t, x })
    }

    fn symbol(&self) -> DispersionSymbol {
        DispersionSymbol::new(self.beta).expect("validated on construction")
    }
}

/// `max m'_β` over the annulus `[Λ/2, 2Λ]` (sampled; `m'` has at most one
/// interior minimum so the endpoints and a few interior samples suffice).
fn max_group_velocity(sym: &DispersionSymbol, lambda: f64) -> f64 {
    (0..=32)
        .map(|k| sym.m_prime_unchecked(lambda * 0.5 * 4f64.powf(k as f64 / 32.0)))
        .fold(0.0, f64::max)
}

fn min_group_velocity(sym: &DispersionSymbol, lambda: f64) -> f64 {
    (0..=32)
        .map(|k| sym.m_prime_unchecked(lambda * 0.5 * 4f64.powf(k as f64 / 32.0)))
        .fold(f64::INFINITY, f64::min)
}

/// Chebyshev interpolant of a complex function on `[lo, hi]`.
#[derive(Debug, Clone)]
struct Cheb {
    lo: f64,
    hi: f64,
    coeffs: Vec<Complex64>,
}

impl Cheb {
    fn fit<F: Fn(f64) -> Result<Complex64> + Sync>(lo: f64, hi: f64, n: usize, f: F) -> Result<Self> {
        let nodes: Vec<f64> = (0..n).map(|k| (PI * (k as f64 + 0.5) / n as f64).cos()).collect();
        let vals: Vec<Complex64> = nodes
            .par_iter()
            .map(|&y| f(lo + 0.5 * (hi - lo) * (y + 1.0)))
            .collect::<Result<_>>()?;
        let coeffs = (0..n)
            .map(|j| {
                let s: Complex64 = (0..n)
                    .map(|k| vals[k] * (PI * j as f64 * (k as f64 + 0.5) / n as f64).cos())
                    .sum();
                s * (if j == 0 { 1.0 } else { 2.0 } / n as f64)
            })
            .collect();
        Ok(Self { lo, hi, coeffs })
    }

    fn eval(&self, x: f64) -> Complex64 {
        let y = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let (mut b1, mut b2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + b1 * (2.0 * y) - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + b1 * y - b2
    }
}

/// `J_+(ρ·e)` for a fixed unit vector `e` and `0 ≤ ρ ≤ ρ_max`.
#[derive(Debug, Clone)]
pub struct RayInterp {
    dir: RayDirection,
    small: Cheb,
    log_lo: f64,
    /// `[f_a^+, f_a^−, f_1^{s₁}]` sampled on a uniform `ln ρ` grid.
    table: Vec<[Complex64; 3]>,
}

impl RayInterp {
    /// Build for the direction of `unit` (any non-zero vector) up to `rho_max`.
    pub fn new(unit: PlanePoint, rho_max: f64, tol: f64) -> Result<Self> {
        let n = unit.norm();
        if n == 0.0 {
            return Err(domain("RayInterp", "direction must be non-zero"));
        }
        let e = unit.scaled(1.0 / n);
        let dir = RayDirection::of(e);
        let small = Cheb::fit(0.0, RHO_SPLIT, 40, |r| j_plus_direct(e.scaled(r), tol))?;
        let log_lo = RHO_SPLIT.ln();
        let mut table = Vec::new();
        if rho_max > RHO_SPLIT {
            let log_hi = rho_max.ln() + 4.0 * LOG_STEP;
            let n_cheb = 40 + (8.0 * (log_hi - log_lo)) as usize;
            let fits: Vec<Cheb> = (0..3)
                .map(|k| {
                    Cheb::fit(log_lo - 2.0 * LOG_STEP, log_hi, n_cheb, |lr| {
                        Ok(dir.amplitudes(lr.exp(), tol)?[k])
                    })
                })
                .collect::<Result<_>>()?;
            let m = ((log_hi - log_lo) / LOG_STEP).ceil() as usize + 3;
            table = (0..m)
                .map(|i| {
                    let lr = log_lo + (i as f64 - 1.0) * LOG_STEP;
                    [fits[0].eval(lr), fits[1].eval(lr), fits[2].eval(lr)]
                })
                .collect();
        }
        Ok(Self { dir, small, log_lo, table })
    }

    fn rho_max(&self) -> f64 {
        if self.table.is_empty() {
            RHO_SPLIT
        } else {
            (self.log_lo + (self.table.len() - 3) as f64 * LOG_STEP).exp()
        }
    }

    /// Cubic Lagrange interpolation in the amplitude table.
    #[inline]
    fn amplitudes(&self, log_rho: f64) -> [Complex64; 3] {
        let u = (log_rho - self.log_lo) / LOG_STEP + 1.0;
        let i = (u.floor() as usize).clamp(1, self.table.len() - 3);
        let s = u - i as f64;
        let w = [
            -s * (s - 1.0) * (s - 2.0) / 6.0,
            (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
            -(s + 1.0) * s * (s - 2.0) / 2.0,
            (s + 1.0) * s * (s - 1.0) / 6.0,
        ];
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (k, wk) in w.iter().enumerate() {
            let row = &self.table[i - 1 + k];
            for j in 0..3 {
                out[j] += row[j] * *wk;
            }
        }
        out
    }

    pub fn j_plus(&self, rho: f64) -> Complex64 {
        debug_assert!(rho <= self.rho_max() * (1.0 + 1e-12));
        if rho <= RHO_SPLIT {
            self.small.eval(rho)
        } else {
            self.dir.assemble(self.amplitudes(rho.ln())).value(rho)
        }
    }

    /// `Σ_j w_j J_+(ρ₀ r_j)` over an equispaced radial grid.
    fn weighted_sum(&self, grid: &RadialGrid, rho0: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if rho0 * grid.r_hi <= RHO_SPLIT || self.table.is_empty() {
            for (j, w) in grid.weights.iter().enumerate() {
                acc += w * self.j_plus(rho0 * grid.r[j]);
            }
            return acc;
        }
        // phases e^{ikρ} advanced by recurrence along the grid
        let freqs = {
            let p = self.dir.assemble([Complex64::new(1.0, 0.0); 3]);
            [p.terms[0].0, p.terms[1].0, p.terms[2].0, p.terms[3].0]
        };
        let step: Vec<Complex64> = freqs.iter().map(|k| Complex64::from_polar(1.0, k * rho0 * grid.h)).collect();
        let mut ph: Vec<Complex64> = freqs.iter().map(|k| Complex64::from_polar(1.0, k * rho0 * grid.r[0])).collect();
        let log_rho0 = rho0.ln();
        for (j, w) in grid.weights.iter().enumerate() {
            let rho = rho0 * grid.r[j];
            if j % 64 == 0 {
                for (p, k) in ph.iter_mut().zip(freqs.iter()) {
                    *p = Complex64::from_polar(1.0, k * rho);
                }
            }
            if w.re != 0.0 || w.im != 0.0 {
                let v = if rho <= RHO_SPLIT {
                    self.small.eval(rho)
                } else {
                    let parts = self.dir.assemble(self.amplitudes(log_rho0 + grid.log_r[j]));
                    parts.terms[0].1 * ph[0] + parts.terms[1].1 * ph[1] + parts.terms[2].1 * ph[2] + parts.terms[3].1 * ph[3]
                };
                acc += w * v;
            }
            for (p, s) in ph.iter_mut().zip(step.iter()) {
                *p *= s;
            }
        }
        acc
    }
}

/// Trapezoid nodes on `[1/2, 2]` with weights `h·r·ρ(r)·e^{itm(Λr)}`.
#[derive(Debug, Clone)]
struct RadialGrid {
    r: Vec<f64>,
    log_r: Vec<f64>,
    weights: Vec<Complex64>,
    h: f64,
    r_hi: f64,
}

impl RadialGrid {
    fn new(sym: &DispersionSymbol, lambda: f64, t: f64, n: usize) -> Self {
        let h = 1.5 / n as f64;
        let r: Vec<f64> = (0..=n).map(|j| 0.5 + j as f64 * h).collect();
        let log_r = r.iter().map(|x| x.ln()).collect();
        let weights = r
            .iter()
            .map(|&x| Complex64::from_polar(h * x * rho(x), t * sym.m_unchecked(lambda * x)))
            .collect();
        Self { r, log_r, weights, h, r_hi: 2.0 }
    }
}

/// Trapezoid node count for a phase of bandwidth `omega` against the bump.
fn radial_nodes(omega: f64) -> usize {
    (1.8 * omega / (2.0 * PI) + 192.0).ceil() as usize
}

fn radial_bandwidth(sym: &DispersionSymbol, lambda: f64, t: f64, dist: f64) -> f64 {
    lambda * (t.abs() * max_group_velocity(sym, lambda) + dist)
}

/// `I_{Λ,t}(x) = 2Λ² Re ∫_{1/2}^{2} e^{itm_β(Λr)} J_+(Λr x) rρ(r) dr`.
pub fn kernel_radial(q: KernelQuery, tol: f64) -> Result<Complex64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain("kernel_radial", format!("tol must be > 0, got {tol}")));
    }
    let sym = q.symbol();
    let dist = q.x.norm();
    let unit = if dist == 0.0 { PlanePoint { x1: 1.0, x2: 0.0 } } else { q.x.scaled(1.0 / dist) };
    let ray = RayInterp::new(unit, 2.0 * q.lambda * dist, (tol * 1e-3).max(1e-14))?;
    let mut n = radial_nodes(radial_bandwidth(&sym, q.lambda, q.t, dist));
    let scale = 2.0 * q.lambda * q.lambda;
    let eval = |n: usize| scale * ray.weighted_sum(&RadialGrid::new(&sym, q.lambda, q.t, n), q.lambda * dist).re;
    let mut prev = eval(n);
    loop {
        n *= 2;
        let next = eval(n);
        if (next - prev).abs() <= tol.max(tol * next.abs()) {
            return Ok(Complex64::new(next, 0.0));
        }
        if n > 1 << 22 {
            return Err(Error::Convergence { partial: Complex64::new(next, 0.0), abs_error: (next - prev).abs(), nodes: n });
        }
        prev = next;
    }
}

/// Gauss–Legendre 16-point nodes and weights on `[−1, 1]`.
fn gauss_legendre_16() -> ([f64; 16], [f64; 16]) {
    let mut x = [0.0; 16];
    let mut w = [0.0; 16];
    let n = 16;
    for i in 0..n / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn tensor_sum(sym: &DispersionSymbol, q: &KernelQuery, panels: usize, m: usize) -> Complex64 {
    let lam = q.lambda;
    let (gx, gw) = gauss_legendre_16();
    let pw = 2.0 * lam / panels as f64;
    let h2 = 4.0 * lam / m as f64;
    let (x1, x2, t) = (q.x.x1, q.x.x2, q.t);
    // e^{ix₂ξ₂} row, shared by every ξ₁
    let row: Vec<(f64, Complex64)> = (1..m)
        .map(|j| {
            let xi2 = -2.0 * lam + j as f64 * h2;
            (xi2, Complex64::from_polar(h2, x2 * xi2))
        })
        .collect();
    (0..panels)
        .into_par_iter()
        .map(|p| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..16 {
                let xi1 = (p as f64 + 0.5 * (gx[k] + 1.0)) * pw;
                let wk = gw[k] * 0.5 * pw;
                let mut pos = Complex64::new(0.0, 0.0);
                let mut neg = Complex64::new(0.0, 0.0);
                for &(xi2, e2) in &row {
                    let r = xi1.hypot(xi2);
                    let b = rho(r / lam);
                    if b == 0.0 {
                        continue;
                    }
                    let m_r = sym.m_unchecked(r);
                    // ξ₁ > 0 with sgn +1, and its mirror ξ₁ → −ξ₁ with sgn −1
                    pos += e2 * Complex64::from_polar(b, t * m_r);
                    neg += e2 * Complex64::from_polar(b, -t * m_r);
                }
                acc += (pos * Complex64::from_polar(1.0, x1 * xi1) + neg * Complex64::from_polar(1.0, -x1 * xi1)) * wk;
            }
            acc
        })
        .sum()
}

/// Brute-force tensor quadrature of `I_{Λ,t}(x)` over `[−2Λ, 2Λ]²`, split at
/// `ξ₁ = 0` (Gauss–Legendre panels in `ξ₁`, trapezoid in `ξ₂`).
pub fn kernel_2d(q: KernelQuery, tol: f64) -> Result<Complex64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain("kernel_2d", format!("tol must be > 0, got {tol}")));
    }
    let sym = q.symbol();
    let lam = q.lambda;
    let load = q.t.abs() * sym.m_unchecked(2.0 * lam) + q.x.norm() * 2.0 * lam;
    if load > TENSOR_BUDGET {
        return Err(Error::Budget(format!("|t|·m(2Λ) + 2Λ|x| = {load:.3e} exceeds {TENSOR_BUDGET:e}")));
    }
    let vmax = max_group_velocity(&sym, lam);
    let phase1 = 2.0 * lam * (q.x.x1.abs() + q.t.abs() * vmax);
    let phase2 = q.x.x2.abs() + q.t.abs() * vmax;
    let mut panels = ((phase1 / 6.0).ceil() as usize).max(8);
    let mut m = ((4.0 * lam * (phase2 + 300.0 / lam) / (2.0 * PI)).ceil() as usize).max(64);
    let mut prev = tensor_sum(&sym, &q, panels, m);
    loop {
        panels *= 2;
        m *= 2;
        if (panels * 16) as f64 * m as f64 > 4e9 {
            return Err(Error::Budget("tensor grid exceeds 4e9 points".into()));
        }
        let next = tensor_sum(&sym, &q, panels, m);
        if (next - prev).norm() <= tol.max(tol * next.norm()) {
            return Ok(next);
        }
        prev = next;
    }
}

/// Stationary-phase regime of a query relative to the critical radius
/// `⟨√βΛ⟩⟨Λ⟩^{-1/2} t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhaseRegime {
    /// `|x|` more than 4× beyond the critical radius.
    NonstationaryPlus,
    /// `|x|` less than a quarter of the critical radius.
    NonstationaryMinus,
    Stationary,
}

fn classify(dist: f64, critical: f64) -> PhaseRegime {
    if dist > 4.0 * critical {
        PhaseRegime::NonstationaryPlus
    } else if dist < 0.25 * critical {
        PhaseRegime::NonstationaryMinus
    } else {
        PhaseRegime::Stationary
    }
}

/// Regime of `|x|` (the `φ^±` phases).
pub fn phase_regime(q: KernelQuery) -> Result<PhaseRegime> {
    if !(q.t > 0.0) {
        return Err(domain("phase_regime", format!("t must be > 0, got {}", q.t)));
    }
    Ok(classify(q.x.norm(), q.symbol().critical_speed(q.lambda) * q.t))
}

/// Regime of `|x₂|` (the `ψ^±` phases).
pub fn phase_regime_transverse(q: KernelQuery) -> Result<PhaseRegime> {
    if !(q.t > 0.0) {
        return Err(domain("phase_regime", format!("t must be > 0, got {}", q.t)));
    }
    Ok(classify(q.x.x2.abs(), q.symbol().critical_speed(q.lambda) * q.t))
}

/// Kernel values along one ray at fixed `(β, Λ, t)`.
pub struct RayKernel {
    sym: DispersionSymbol,
    lambda: f64,
    t: f64,
    unit: PlanePoint,
    interp: RayInterp,
    grids: Vec<(f64, RadialGrid)>,
}

impl RayKernel {
    /// Prepare evaluation for `x = X·unit`, `0 ≤ X ≤ x_max`.
    pub fn new(beta: f64, lambda: f64, t: f64, unit: PlanePoint, x_max: f64, tol: f64) -> Result<Self> {
        let sym = DispersionSymbol::new(beta)?;
        let n = unit.norm();
        let unit = unit.scaled(1.0 / n);
        let interp = RayInterp::new(unit, 2.0 * lambda * x_max, tol)?;
        // one grid per bandwidth octave of X
        let mut grids = Vec::new();
        let mut reach = (4.0 / lambda).min(x_max.max(1e-300));
        loop {
            let nodes = radial_nodes(radial_bandwidth(&sym, lambda, t, reach));
            grids.push((reach, RadialGrid::new(&sym, lambda, t, nodes)));
            if reach >= x_max {
                break;
            }
            reach = (reach * 2.0).min(x_max);
        }
        Ok(Self { sym, lambda, t, unit, interp, grids })
    }

    /// `Ĩ(X·unit)` scaled by `2Λ²`, so that `I = Re` of the result.
    pub fn tilde(&self, dist: f64) -> Complex64 {
        let grid = &self
            .grids
            .iter()
            .find(|(reach, _)| dist <= *reach * (1.0 + 1e-12))
            .unwrap_or_else(|| self.grids.last().expect("at least one grid"))
            .1;
        self.interp.weighted_sum(grid, self.lambda * dist) * (2.0 * self.lambda * self.lambda)
    }

    pub fn value(&self, dist: f64) -> f64 {
        self.tilde(dist).re
    }

    pub fn point(&self, dist: f64) -> PlanePoint {
        self.unit.scaled(dist)
    }

    pub fn critical_radius(&self) -> f64 {
        self.sym.critical_speed(self.lambda) * self.t.abs()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupSample {
    pub beta: f64,
    pub lambda: f64,
    pub t: f64,
    pub sup: f64,
    pub argmax: PlanePoint,
    /// `⟨√βΛ⟩^{-1}⟨Λ⟩^{3/2} / t`
    pub predicted: f64,
    pub ratio: f64,
}

/// Ray directions for the `sup_x` sweep (`I` is even in `x₂`).
pub fn sweep_directions() -> [PlanePoint; 5] {
    let d = std::f64::consts::FRAC_1_SQRT_2;
    [
        PlanePoint { x1: 1.0, x2: 0.0 },
        PlanePoint { x1: -1.0, x2: 0.0 },
        PlanePoint { x1: 0.0, x2: 1.0 },
        PlanePoint { x1: d, x2: d },
        PlanePoint { x1: -d, x2: d },
    ]
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `sup_x |I_{Λ,t}(x)|` over the sweep rays out to 3× the critical radius:
/// a coarse scan of the envelope `|Ĩ|`, a dense local scan of `|I|` around the
/// best candidates, then golden-section refinement.
pub fn sup_kernel(beta: f64, lambda: f64, t: f64, tol: f64) -> Result<SupSample> {
    let sym = DispersionSymbol::new(beta)?;
    if !(t.is_finite() && t != 0.0) {
        return Err(domain("sup_kernel", format!("t must be finite and non-zero, got {t}")));
    }
    let reach = 3.0 * sym.critical_speed(lambda) * t.abs() + 8.0 / lambda;
    let n_coarse = ((reach * lambda / 4.0).ceil() as usize).clamp(200, 1500);
    let dx = reach / n_coarse as f64;
    let fine = PI / (8.0 * lambda);

    let per_ray: Vec<(f64, PlanePoint)> = sweep_directions()
        .par_iter()
        .map(|&dir| {
            let ray = RayKernel::new(beta, lambda, t, dir, reach + dx, tol)?;
            let env: Vec<f64> = (0..=n_coarse).map(|i| ray.tilde(i as f64 * dx).norm()).collect();
            let mut idx: Vec<usize> = (0..=n_coarse)
                .filter(|&i| {
                    let l = if i > 0 { env[i - 1] } else { f64::NEG_INFINITY };
                    let r = if i < n_coarse { env[i + 1] } else { f64::NEG_INFINITY };
                    env[i] >= l && env[i] >= r
                })
                .collect();
            idx.sort_by(|&a, &b| env[b].total_cmp(&env[a]));
            idx.truncate(3);
            let mut best = (0.0f64, 0.0f64);
            for i in idx {
                let lo = (i as f64 - 1.0) * dx;
                let hi = (i as f64 + 1.0) * dx;
                let lo = lo.max(0.0);
                let steps = ((hi - lo) / fine).ceil() as usize;
                let mut local = (lo, ray.value(lo).abs());
                for s in 1..=steps {
                    let x = lo + (hi - lo) * s as f64 / steps as f64;
                    let v = ray.value(x).abs();
                    if v > local.1 {
                        local = (x, v);
                    }
                }
                let h = (hi - lo) / steps as f64;
                let (x, v) = golden_max(|x| ray.value(x).abs(), (local.0 - h).max(0.0), local.0 + h, 40);
                let (x, v) = if v >= local.1 { (x, v) } else { local };
                if v > best.1 {
                    best = (x, v);
                }
            }
            Ok((best.1, ray.point(best.0)))
        })
        .collect::<Result<_>>()?;

    let (sup, argmax) = per_ray
        .into_iter()
        .fold((0.0, PlanePoint { x1: 0.0, x2: 0.0 }), |acc, v| if v.0 > acc.0 { v } else { acc });
    let predicted = sym.dispersive_scale(lambda) / t.abs();
    Ok(SupSample { beta, lambda, t, sup, argmax, predicted, ratio: sup / predicted })
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub beta: f64,
    pub lambda: f64,
    pub samples: Vec<SupSample>,
    /// Least-squares slope of `ln sup` against `ln t`.
    pub slope: f64,
    /// `max_t sup·t / (⟨√βΛ⟩^{-1}⟨Λ⟩^{3/2})`, the smallest constant valid on `t_list`.
    pub constant: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Sweep `sup_x |I_{Λ,t}|` over `t_list` and fit the decay rate.
pub fn decay_experiment(beta: f64, lambda: f64, t_list: &[f64], tol: f64) -> Result<DecayFit> {
    if t_list.len() < 2 {
        return Err(Error::Empty("decay t_list needs at least two times"));
    }
    let samples: Vec<SupSample> = t_list
        .iter()
        .map(|&t| sup_kernel(beta, lambda, t, tol))
        .collect::<Result<_>>()?;
    let ts: Vec<f64> = samples.iter().map(|s| s.t.abs()).collect();
    let sups: Vec<f64> = samples.iter().map(|s| s.sup).collect();
    let slope = loglog_slope(&ts, &sups);
    let constant = samples.iter().map(|s| s.ratio).fold(0.0, f64::max);
    Ok(DecayFit { beta, lambda, samples, slope, constant })
}

/// Group-velocity band `[min m', max m']` over the annulus `[Λ/2, 2Λ]`.
pub fn group_velocity_band(beta: f64, lambda: f64) -> Result<(f64, f64)> {
    let sym = DispersionSymbol::new(beta)?;
    Ok((min_group_velocity(&sym, lambda), max_group_velocity(&sym, lambda)))
}
