//! Doubly-periodic spectral fields, smooth Littlewood–Paley projectors,
//! the linear propagator `S(t)` and discrete mixed space-time norms.
//!
//! Grid values are stored row-major, `values[i1·n2 + i2] = u(i1·L1/n1, i2·L2/n2)`.
//! Fourier coefficients use `c_k = (1/N) Σ_x u(x) e^{−ik·x}`, so that
//! `u(x) = Σ_k c_k e^{ik·x}` and `∫|u|² = L1·L2·Σ|c_k|²`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::{Read, Write};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::symbol::DispersionSymbol;

/// Magic bytes opening a field snapshot.
pub const SNAPSHOT_MAGIC: &[u8; 8] = b"FDKPSNAP";
pub const SNAPSHOT_HEADER_LEN: usize = 64;

#[inline]
fn smooth_h(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp()
    } else {
        0.0
    }
}

/// The fixed cutoff: `χ = 1` on `[−1, 1]`, `0` outside `[−2, 2]`, `C^∞`,
/// non-increasing in `|s|`.
pub fn chi(s: f64) -> f64 {
    let a = s.abs();
    if a <= 1.0 {
        return 1.0;
    }
    if a >= 2.0 {
        return 0.0;
    }
    let p = smooth_h(2.0 - a);
    p / (p + smooth_h(a - 1.0))
}

/// `ρ(s) = χ(s) − χ(2s)`, supported in `1/2 ≤ |s| ≤ 2`.
pub fn rho(s: f64) -> f64 {
    chi(s) - chi(2.0 * s)
}

fn fft_plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("fft cache poisoned");
    map.entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// In-place unnormalised 2-D DFT of a row-major `n1 × n2` array.
pub fn fft2(data: &mut [Complex64], n1: usize, n2: usize, inverse: bool) {
    debug_assert_eq!(data.len(), n1 * n2);
    let rows = fft_plan(n2, inverse);
    rows.process(data);
    let cols = fft_plan(n1, inverse);
    let mut buf = vec![Complex64::new(0.0, 0.0); n1];
    for i2 in 0..n2 {
        for i1 in 0..n1 {
            buf[i1] = data[i1 * n2 + i2];
        }
        cols.process(&mut buf);
        for i1 in 0..n1 {
            data[i1 * n2 + i2] = buf[i1];
        }
    }
}

/// Signed integer frequency of FFT index `i` on an `n`-point grid.
#[inline]
pub fn signed_index(i: usize, n: usize) -> i64 {
    if i <= n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Grid geometry shared by fields: sizes and periods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub n1: usize,
    pub n2: usize,
    pub l1: f64,
    pub l2: f64,
}

impl Grid2D {
    pub fn new(n1: usize, n2: usize, l1: f64, l2: f64) -> Result<Self> {
        for n in [n1, n2] {
            if n < 2 || !n.is_power_of_two() {
                return Err(domain("Grid2D", format!("grid sizes must be powers of two ≥ 2, got {n1}×{n2}")));
            }
        }
        if !(l1.is_finite() && l1 > 0.0 && l2.is_finite() && l2 > 0.0) {
            return Err(domain("Grid2D", format!("periods must be finite and > 0, got {l1}, {l2}")));
        }
        Ok(Self { n1, n2, l1, l2 })
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quadrature weight `L1·L2/(n1·n2)` of one grid cell.
    pub fn cell_area(&self) -> f64 {
        self.l1 * self.l2 / self.len() as f64
    }

    #[inline]
    pub fn xi1(&self, i1: usize) -> f64 {
        2.0 * PI / self.l1 * signed_index(i1, self.n1) as f64
    }

    #[inline]
    pub fn xi2(&self, i2: usize) -> f64 {
        2.0 * PI / self.l2 * signed_index(i2, self.n2) as f64
    }

    /// `sgn(ξ₁)` with 0 on the `ξ₁ = 0` and Nyquist columns.
    #[inline]
    pub fn sign1(&self, i1: usize) -> f64 {
        if i1 == 0 || (self.n1 % 2 == 0 && i1 == self.n1 / 2) {
            0.0
        } else if i1 < self.n1 / 2 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn x1(&self, i1: usize) -> f64 {
        self.l1 * i1 as f64 / self.n1 as f64
    }

    pub fn x2(&self, i2: usize) -> f64 {
        self.l2 * i2 as f64 / self.n2 as f64
    }

    /// Largest `|ξ|` resolved along both axes (the smaller Nyquist).
    pub fn nyquist(&self) -> f64 {
        (PI * self.n1 as f64 / self.l1).min(PI * self.n2 as f64 / self.l2)
    }

    pub fn check_same(&self, other: &Grid2D) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// A real doubly-periodic field with coherent grid values and coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField2D {
    grid: Grid2D,
    values: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl SpectralField2D {
    pub fn from_values(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} values for a {}×{} grid", values.len(), grid.n1, grid.n2)));
        }
        let mut coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft2(&mut coeffs, grid.n1, grid.n2, false);
        let inv = 1.0 / grid.len() as f64;
        coeffs.iter_mut().for_each(|c| *c *= inv);
        Ok(Self { grid, values, coeffs })
    }

    /// Sample `f(x1, x2)` on the grid.
    pub fn from_fn<F: Fn(f64, f64) -> f64 + Sync>(grid: Grid2D, f: F) -> Result<Self> {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|i| f(grid.x1(i / grid.n2), grid.x2(i % grid.n2)))
            .collect();
        Self::from_values(grid, values)
    }

    /// Build from coefficients; the imaginary part of the synthesised field
    /// is discarded and the coefficients recomputed, so the result is the
    /// Hermitian projection of the input.
    pub fn from_coeffs(grid: Grid2D, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} coefficients for a {}×{} grid", coeffs.len(), grid.n1, grid.n2)));
        }
        let mut buf = coeffs;
        fft2(&mut buf, grid.n1, grid.n2, true);
        Self::from_values(grid, buf.iter().map(|c| c.re).collect())
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self { grid, values: vec![0.0; grid.len()], coeffs: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn grid(&self) -> Grid2D {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `(∫|u|²)^{1/2}` by grid quadrature.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.cell_area() * self.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    /// `(L1·L2·Σ|c_k|²)^{1/2}`.
    pub fn l2_norm_coeffs(&self) -> f64 {
        (self.grid.l1 * self.grid.l2 * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `‖u‖_{L^p}` by grid quadrature; `p = ∞` gives the grid maximum.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            self.linf_norm()
        } else {
            (self.grid.cell_area() * self.values.iter().map(|v| v.abs().powf(p)).sum::<f64>()).powf(1.0 / p)
        }
    }

    pub fn linf_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn l1_norm(&self) -> f64 {
        self.grid.cell_area() * self.values.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// `‖⟨D⟩^s u‖₂`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let g = self.grid;
        let sum: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (a, b) = (g.xi1(i / g.n2), g.xi2(i % g.n2));
                (1.0 + a * a + b * b).powf(s) * c.norm_sqr()
            })
            .sum();
        (g.l1 * g.l2 * sum).sqrt()
    }

    /// Largest `|c_k − conj(c_{−k})|`.
    pub fn hermitian_defect(&self) -> f64 {
        let g = self.grid;
        let mut worst = 0.0f64;
        for i1 in 0..g.n1 {
            for i2 in 0..g.n2 {
                let j1 = (g.n1 - i1) % g.n1;
                let j2 = (g.n2 - i2) % g.n2;
                let d = (self.coeffs[i1 * g.n2 + i2] - self.coeffs[j1 * g.n2 + j2].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Multiply every coefficient by `symbol(ξ₁, ξ₂, i1)`.
    pub fn apply_multiplier<F>(&self, symbol: F) -> Result<Self>
    where
        F: Fn(f64, f64, usize) -> Complex64,
    {
        let g = self.grid;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let i1 = i / g.n2;
                c * symbol(g.xi1(i1), g.xi2(i % g.n2), i1)
            })
            .collect();
        Self::from_coeffs(g, coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let v = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Self::from_values(self.grid, v)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let v = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self::from_values(self.grid, v)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * k).collect(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Write the binary snapshot: 64-byte header (magic, n1, n2, L1, L2,
    /// time, zero padding) then little-endian `f64` values, row-major.
    pub fn write_snapshot<W: Write>(&self, mut w: W, time: f64) -> Result<()> {
        let mut header = [0u8; SNAPSHOT_HEADER_LEN];
        header[..8].copy_from_slice(SNAPSHOT_MAGIC);
        header[8..16].copy_from_slice(&(self.grid.n1 as u64).to_le_bytes());
        header[16..24].copy_from_slice(&(self.grid.n2 as u64).to_le_bytes());
        header[24..32].copy_from_slice(&self.grid.l1.to_le_bytes());
        header[32..40].copy_from_slice(&self.grid.l2.to_le_bytes());
        header[40..48].copy_from_slice(&time.to_le_bytes());
        w.write_all(&header)?;
        let mut body = Vec::with_capacity(8 * self.values.len());
        for v in &self.values {
            body.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&body)?;
        Ok(())
    }

    /// Read a snapshot written by [`Self::write_snapshot`]; returns `(field, time)`.
    pub fn read_snapshot<R: Read>(mut r: R) -> Result<(Self, f64)> {
        let mut header = [0u8; SNAPSHOT_HEADER_LEN];
        r.read_exact(&mut header)?;
        if &header[..8] != SNAPSHOT_MAGIC {
            return Err(Error::Io("not a field snapshot (bad magic)".into()));
        }
        let u = |a: usize| u64::from_le_bytes(header[a..a + 8].try_into().expect("8 bytes"));
        let f = |a: usize| f64::from_le_bytes(header[a..a + 8].try_into().expect("8 bytes"));
        let grid = Grid2D::new(u(8) as usize, u(16) as usize, f(24), f(32))?;
        let time = f(40);
        let mut body = vec![0u8; 8 * grid.len()];
        r.read_exact(&mut body)?;
        let values = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
        Ok((Self::from_values(grid, values)?, time))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectorMode {
    /// `P_Λ`, symbol `ρ(|ξ|/Λ)`.
    Annulus,
    /// `P_{≤Λ}`, symbol `χ(|ξ|/Λ)`.
    LowPass,
    /// `P_{>Λ}`, symbol `1 − χ(|ξ|/Λ)`.
    HighPass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicProjector {
    pub lambda: f64,
    pub mode: ProjectorMode,
}

impl DyadicProjector {
    pub fn new(lambda: f64, mode: ProjectorMode) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(domain("DyadicProjector", format!("Lambda must be finite and > 0, got {lambda}")));
        }
        Ok(Self { lambda, mode })
    }

    pub fn annulus(lambda: f64) -> Result<Self> {
        Self::new(lambda, ProjectorMode::Annulus)
    }

    pub fn low_pass(lambda: f64) -> Result<Self> {
        Self::new(lambda, ProjectorMode::LowPass)
    }

    pub fn high_pass(lambda: f64) -> Result<Self> {
        Self::new(lambda, ProjectorMode::HighPass)
    }

    pub fn symbol(&self, xi_norm: f64) -> f64 {
        let s = xi_norm / self.lambda;
        match self.mode {
            ProjectorMode::Annulus => rho(s),
            ProjectorMode::LowPass => chi(s),
            ProjectorMode::HighPass => 1.0 - chi(s),
        }
    }
}

/// Apply a Littlewood–Paley multiplier.
pub fn project(f: &SpectralField2D, p: &DyadicProjector) -> Result<SpectralField2D> {
    f.apply_multiplier(|a, b, _| Complex64::new(p.symbol(a.hypot(b)), 0.0))
}

/// `S(t)f` with multiplier `e^{it sgn(ξ₁) m_β(|ξ|)}`; `sgn := 0` on the
/// `ξ₁ = 0` and Nyquist columns.
pub fn propagate_linear(f: &SpectralField2D, beta: f64, t: f64) -> Result<SpectralField2D> {
    let sym = DispersionSymbol::new(beta)?;
    if !t.is_finite() {
        return Err(domain("propagate_linear", format!("t must be finite, got {t}")));
    }
    let g = f.grid();
    f.apply_multiplier(|a, b, i1| Complex64::from_polar(1.0, t * g.sign1(i1) * sym.m_unchecked(a.hypot(b))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedNormSpec {
    pub q: f64,
    pub r: f64,
    pub horizon: f64,
}

impl MixedNormSpec {
    pub fn new(q: f64, r: f64, horizon: f64) -> Result<Self> {
        for (name, v) in [("q", q), ("r", r)] {
            if !(v >= 1.0) {
                return Err(domain("MixedNormSpec", format!("{name} must lie in [1, ∞], got {v}")));
            }
        }
        if !(horizon.is_finite() && horizon >= 0.0) {
            return Err(domain("MixedNormSpec", format!("horizon must be finite and ≥ 0, got {horizon}")));
        }
        Ok(Self { q, r, horizon })
    }

    /// `2 < q ≤ ∞`, `2 ≤ r < ∞`, `1/r + 1/q = 1/2`.
    pub fn admissible(&self) -> bool {
        self.q > 2.0 && self.r >= 2.0 && self.r.is_finite() && (1.0 / self.r + 1.0 / self.q - 0.5).abs() < 1e-12
    }
}

/// `‖a‖_{L^q}` of uniformly spaced samples by the trapezoid rule.
pub fn time_norm(samples: &[f64], dt: f64, q: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Empty("time samples"));
    }
    if q.is_infinite() {
        return Ok(samples.iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    if samples.len() == 1 {
        return Ok(0.0);
    }
    let n = samples.len();
    let s: f64 = samples
        .iter()
        .enumerate()
        .map(|(i, v)| if i == 0 || i == n - 1 { 0.5 } else { 1.0 } * v.abs().powf(q))
        .sum();
    Ok((dt * s).powf(1.0 / q))
}

/// `‖u‖_{L^q_t L^r_x}` over a uniformly sampled sequence (spacing `dt`).
pub fn mixed_norm(seq: &[SpectralField2D], dt: f64, spec: &MixedNormSpec) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::Empty("field sequence"));
    }
    let g = seq[0].grid();
    for f in seq {
        g.check_same(&f.grid())?;
    }
    let space: Vec<f64> = seq.iter().map(|f| f.lp_norm(spec.r)).collect();
    time_norm(&space, dt, spec.q)
}

/// Rectangular domain and resolution for the linear experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentGrid {
    pub n: usize,
    pub length: f64,
}

/// `P_Λ` of the Gaussian `exp(−|x − c|²/(2w²))`, `w = 1/(8Λ)`, centred in the box.
pub fn localized_packet(grid: Grid2D, lambda: f64) -> Result<SpectralField2D> {
    let w = 1.0 / (8.0 * lambda);
    let (c1, c2) = (0.5 * grid.l1, 0.5 * grid.l2);
    let g = SpectralField2D::from_fn(grid, |x1, x2| {
        let r2 = (x1 - c1).powi(2) + (x2 - c2).powi(2);
        (-r2 / (2.0 * w * w)).exp()
    })?;
    project(&g, &DyadicProjector::annulus(lambda)?)
}

/// Fastest group velocity over the annulus `[Λ/2, 2Λ]`.
pub fn max_group_speed(beta: f64, lambda: f64) -> Result<f64> {
    let sym = DispersionSymbol::new(beta)?;
    Ok(sym.m_prime(0.5 * lambda)?.max(sym.m_prime(2.0 * lambda)?))
}

/// Largest `|t|` keeping `v_max|t| + 4/Λ ≤ L/2`.
pub fn max_admissible_time(beta: f64, lambda: f64, length: f64) -> Result<f64> {
    Ok(((0.5 * length - 4.0 / lambda) / max_group_speed(beta, lambda)?).max(0.0))
}

fn check_resolution(grid: Grid2D, lambda: f64) -> Result<()> {
    if 2.0 * lambda > grid.nyquist() {
        return Err(domain(
            "experiment grid",
            format!("annulus up to |ξ| = {} exceeds the grid Nyquist {}", 2.0 * lambda, grid.nyquist()),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersiveRow {
    pub t: f64,
    pub sup: f64,
    /// `sup·|t| / (⟨√βΛ⟩^{-1}⟨Λ⟩^{3/2}‖P_Λf‖₁)`
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersiveTable {
    pub beta: f64,
    pub lambda: f64,
    pub l1_norm: f64,
    pub rows: Vec<DispersiveRow>,
    pub slope: f64,
    pub max_ratio: f64,
}

/// Tabulate `‖S(t)P_Λf‖_∞` for an approximate point mass `f`.
pub fn dispersive_sup_experiment(beta: f64, lambda: f64, t_list: &[f64], grid: ExperimentGrid) -> Result<DispersiveTable> {
    if t_list.is_empty() {
        return Err(Error::Empty("t_list"));
    }
    let g = Grid2D::new(grid.n, grid.n, grid.length, grid.length)?;
    check_resolution(g, lambda)?;
    let max_t = max_admissible_time(beta, lambda, grid.length)?;
    if let Some(&bad) = t_list.iter().find(|t| !(t.is_finite() && t.abs() <= max_t && **t != 0.0)) {
        return Err(Error::BoundaryGuard {
            detail: format!("t = {bad} lets the packet reach the periodic boundary (or is zero)"),
            max_t,
        });
    }
    let sym = DispersionSymbol::new(beta)?;
    let f = localized_packet(g, lambda)?;
    let l1 = f.l1_norm();
    let scale = sym.dispersive_scale(lambda);
    let rows: Vec<DispersiveRow> = t_list
        .par_iter()
        .map(|&t| {
            let sup = propagate_linear(&f, beta, t)?.linf_norm();
            Ok(DispersiveRow { t, sup, ratio: sup * t.abs() / (scale * l1) })
        })
        .collect::<Result<_>>()?;
    let ts: Vec<f64> = rows.iter().map(|r| r.t.abs()).collect();
    let sups: Vec<f64> = rows.iter().map(|r| r.sup).collect();
    let slope = if rows.len() > 1 { crate::oscint::loglog_slope(&ts, &sups) } else { f64::NAN };
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(DispersiveTable { beta, lambda, l1_norm: l1, rows, slope, max_ratio })
}

#[derive(Debug, Clone, Serialize)]
pub struct StrichartzRow {
    pub beta: f64,
    pub lambda: f64,
    pub q: f64,
    pub r: f64,
    pub horizon: f64,
    pub samples: usize,
    pub norm: f64,
    pub data_l2: f64,
    /// `norm / ([⟨√βΛ⟩^{-1}⟨Λ⟩^{3/2}]^{1/2−1/r} ‖P_Λf‖₂)`
    pub ratio: f64,
}

/// Dispersive time scale `1/(Λ²|m''_β(Λ)|)`.
pub fn dispersive_time(beta: f64, lambda: f64) -> Result<f64> {
    let sym = DispersionSymbol::new(beta)?;
    Ok(1.0 / (lambda * lambda * sym.m_double_prime(lambda)?.abs()))
}

/// Grid that holds `S(t)P_Λf` for `|t| ≤ horizon` and resolves the annulus.
pub fn strichartz_grid(beta: f64, lambda: f64, horizon: f64) -> Result<ExperimentGrid> {
    let v = max_group_speed(beta, lambda)?;
    let need = 2.0 * (v * horizon + 4.0 / lambda) * 1.05;
    let n_min = need * 4.0 * lambda / PI;
    let n = (n_min.ceil() as usize).next_power_of_two().max(32);
    Ok(ExperimentGrid { n, length: n as f64 * PI / (4.0 * lambda) })
}

/// `‖S(t)P_Λf‖_{L^q_t L^r_x}` over `t ∈ [−T, T]` for the localized packet,
/// for every `(q, r)` in `specs` (which must share the horizon `T`).
pub fn strichartz_experiment(
    beta: f64,
    lambda: f64,
    specs: &[MixedNormSpec],
    grid: ExperimentGrid,
    samples_per_side: usize,
) -> Result<Vec<StrichartzRow>> {
    let Some(first) = specs.first() else {
        return Err(Error::Empty("mixed-norm specs"));
    };
    let horizon = first.horizon;
    if specs.iter().any(|s| s.horizon != horizon) {
        return Err(domain("strichartz_experiment", "all specs must share one horizon"));
    }
    if samples_per_side < 2 {
        return Err(Error::Empty("Strichartz time samples"));
    }
    let g = Grid2D::new(grid.n, grid.n, grid.length, grid.length)?;
    check_resolution(g, lambda)?;
    let max_t = max_admissible_time(beta, lambda, grid.length)?;
    if horizon > max_t {
        return Err(Error::BoundaryGuard { detail: format!("horizon {horizon} too long for the box"), max_t });
    }
    let sym = DispersionSymbol::new(beta)?;
    let f = localized_packet(g, lambda)?;
    let dt = horizon / samples_per_side as f64;
    let times: Vec<f64> = (0..=2 * samples_per_side).map(|k| -horizon + k as f64 * dt).collect();
    // space norms per time sample, one column per spec
    let space: Vec<Vec<f64>> = times
        .par_iter()
        .map(|&t| {
            let u = propagate_linear(&f, beta, t)?;
            Ok(specs.iter().map(|s| u.lp_norm(s.r)).collect())
        })
        .collect::<Result<_>>()?;
    let data_l2 = f.l2_norm();
    specs
        .iter()
        .enumerate()
        .map(|(k, spec)| {
            let col: Vec<f64> = space.iter().map(|row| row[k]).collect();
            let norm = time_norm(&col, dt, spec.q)?;
            let weight = sym.dispersive_scale(lambda).powf(0.5 - 1.0 / spec.r);
            Ok(StrichartzRow {
                beta,
                lambda,
                q: spec.q,
                r: spec.r,
                horizon,
                samples: times.len(),
                norm,
                data_l2,
                ratio: norm / (weight * data_l2),
            })
        })
        .collect()
}

/// Strichartz rows for one `(β, Λ)` with horizon `horizon_td` dispersive
/// times and `per_td` samples per dispersive time.
pub fn strichartz_scan(beta: f64, lambda: f64, pairs: &[(f64, f64)], horizon_td: f64, per_td: usize) -> Result<Vec<StrichartzRow>> {
    let td = dispersive_time(beta, lambda)?;
    let horizon = horizon_td * td;
    let specs: Vec<MixedNormSpec> = pairs.iter().map(|&(q, r)| MixedNormSpec::new(q, r, horizon)).collect::<Result<_>>()?;
    let grid = strichartz_grid(beta, lambda, horizon)?;
    let samples = (horizon_td * per_td as f64).ceil() as usize;
    strichartz_experiment(beta, lambda, &specs, grid, samples)
}
