//! Asymmetric Bessel functions
//! `J_+(x) = ∫_{−π/2}^{π/2} e^{i x·ω(θ)} dθ`, `ω(θ) = (cos θ, sin θ)`,
//! together with the half-line pieces `F`, `F^±` and the Laplace-type
//! amplitudes `f_a^±` that carry their large-`|x|` behaviour.
//!
//! Three independent routes to `J_+` are provided: direct angular
//! quadrature, the `F + F^{s₁}` split, and the reassembly from `f_a^±`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quad::{integrate_breakpoints, integrate_laplace};

/// Largest `|x|` accepted by the angular quadratures.
pub const MAX_ARGUMENT: f64 = 1e5;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sign selector for the `±` families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn both() -> [Branch; 2] {
        [Branch::Plus, Branch::Minus]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanePoint {
    pub x1: f64,
    pub x2: f64,
}

impl PlanePoint {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if !(x1.is_finite() && x2.is_finite()) {
            return Err(domain("PlanePoint", format!("coordinates must be finite, got ({x1}, {x2})")));
        }
        Ok(Self { x1, x2 })
    }

    pub fn norm(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// `sgn(x₁) ∈ {−1, 0, 1}`.
    pub fn s1(&self) -> i8 {
        if self.x1 > 0.0 {
            1
        } else if self.x1 < 0.0 {
            -1
        } else {
            0
        }
    }

    /// `a = |x₂|/|x|`, taken as 0 at the origin.
    pub fn a(&self) -> f64 {
        let r = self.norm();
        if r == 0.0 {
            0.0
        } else {
            (self.x2.abs() / r).min(1.0)
        }
    }

    pub fn scaled(&self, k: f64) -> PlanePoint {
        PlanePoint { x1: self.x1 * k, x2: self.x2 * k }
    }

    fn angles(&self) -> (f64, f64) {
        // (arcsin a, arccos a) without cancellation near a = 1
        let (p, q) = (self.x1.abs(), self.x2.abs());
        (q.atan2(p), p.atan2(q))
    }
}

fn check_a(a: f64) -> Result<()> {
    if (0.0..=1.0).contains(&a) {
        Ok(())
    } else {
        Err(domain("besselasym", format!("a must lie in [0, 1], got {a}")))
    }
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() && (0.0..=MAX_ARGUMENT).contains(&r) {
        Ok(())
    } else {
        Err(Error::Budget(format!("|x| = {r} outside [0, {MAX_ARGUMENT}]")))
    }
}

/// Breakpoints splitting `[lo, hi]` so that a phase with slope at most
/// `rate` turns by no more than ~4 radians per panel.
fn oscillation_panels(lo: f64, hi: f64, rate: f64) -> Vec<f64> {
    let n = ((hi - lo) * rate / 4.0).ceil().max(1.0) as usize;
    (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect()
}

/// Direct angular quadrature of `J_+(x)`.
pub fn j_plus_direct(x: PlanePoint, tol: f64) -> Result<Complex64> {
    let r = x.norm();
    check_r(r)?;
    if r == 0.0 {
        return Ok(Complex64::new(PI, 0.0));
    }
    let pts = oscillation_panels(-FRAC_PI_2, FRAC_PI_2, r);
    let res = integrate_breakpoints(
        |th: f64| {
            let (s, c) = th.sin_cos();
            (I * (x.x1 * c + x.x2 * s)).exp()
        },
        &pts,
        tol,
    )?;
    Ok(res.value)
}

fn f_big_angle(r: f64, phi_max: f64, tol: f64) -> Result<Complex64> {
    if phi_max == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pts = oscillation_panels(-phi_max, phi_max, r);
    Ok(integrate_breakpoints(|phi: f64| (I * (r * phi.sin())).exp(), &pts, tol)?.value)
}

fn f_pm_angle(branch: Branch, r: f64, theta_max: f64, tol: f64) -> Result<Complex64> {
    if theta_max == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sg = branch.sign();
    let pts = oscillation_panels(0.0, theta_max, r);
    let res = integrate_breakpoints(|th: f64| (I * (sg * r * th.cos())).exp(), &pts, tol)?;
    Ok(res.value * 2.0)
}

/// `F(r, a) = ∫_{−a}^{a} e^{irs} (1−s²)^{-1/2} ds`, evaluated as
/// `∫_{−arcsin a}^{arcsin a} e^{ir sin φ} dφ`.
pub fn f_big(r: f64, a: f64, tol: f64) -> Result<Complex64> {
    check_r(r)?;
    check_a(a)?;
    f_big_angle(r, a.asin(), tol)
}

/// `F^±(r, a) = 2∫_a^1 e^{±irs} (1−s²)^{-1/2} ds`, evaluated as
/// `2∫_0^{arccos a} e^{±ir cos θ} dθ`.
pub fn f_pm(branch: Branch, r: f64, a: f64, tol: f64) -> Result<Complex64> {
    check_r(r)?;
    check_a(a)?;
    f_pm_angle(branch, r, a.acos(), tol)
}

/// `(s² + 1 − a² ∓ 2ias)^{-1/2}` on the principal branch; `c2 = 1 − a²`.
#[inline]
fn laplace_kernel(sg: f64, a: f64, c2: f64, s: f64) -> Complex64 {
    let z = Complex64::new(s * s + c2, -sg * 2.0 * a * s);
    debug_assert!(!(z.re < 0.0 && z.im == 0.0), "branch cut touched at s = {s}");
    z.sqrt().inv()
}

/// `f_a^±` (or its `r`-derivative when `derivative` is set) with the
/// complement `1 − a²` supplied separately.
pub(crate) fn f_a_with(
    branch: Branch,
    r: f64,
    a: f64,
    c2: f64,
    derivative: bool,
    tol: f64,
) -> Result<Complex64> {
    let sg = branch.sign();
    let res = if derivative {
        integrate_laplace(|s| laplace_kernel(sg, a, c2, s) * (-s), r, tol)?
    } else {
        integrate_laplace(|s| laplace_kernel(sg, a, c2, s), r, tol)?
    };
    Ok(res.value * Complex64::new(0.0, -sg))
}

fn check_laplace_args(r: f64, a: f64) -> Result<()> {
    check_a(a)?;
    if !(r.is_finite() && r >= 1e-3) {
        return Err(domain("f_a", format!("r must be finite and ≥ 1e-3, got {r}")));
    }
    Ok(())
}

/// `f_a^±(r) = ∓i ∫_0^∞ e^{−rs} (s² + 1 − a² ∓ 2ais)^{-1/2} ds`.
pub fn f_a(branch: Branch, r: f64, a: f64, tol: f64) -> Result<Complex64> {
    check_laplace_args(r, a)?;
    f_a_with(branch, r, a, (1.0 - a) * (1.0 + a), false, tol)
}

/// `∂_r f_a^±(r)`, differentiated under the integral sign.
pub fn f_a_deriv(branch: Branch, r: f64, a: f64, tol: f64) -> Result<Complex64> {
    check_laplace_args(r, a)?;
    f_a_with(branch, r, a, (1.0 - a) * (1.0 + a), true, tol)
}

/// `J_+(x) = F(|x|, a) + F^{s₁}(|x|, a)`; points with `x₁ = 0` go to the
/// direct quadrature.
pub fn j_plus_identity(x: PlanePoint, tol: f64) -> Result<Complex64> {
    let r = x.norm();
    check_r(r)?;
    let branch = match x.s1() {
        1 => Branch::Plus,
        -1 => Branch::Minus,
        _ => return j_plus_direct(x, tol),
    };
    let (asin_a, acos_a) = x.angles();
    Ok(f_big_angle(r, asin_a, tol)? + f_pm_angle(branch, r, acos_a, tol)?)
}

/// The decomposition of `J_+(x)` into smooth amplitudes and phases:
/// `J_+ = Σ_k amp_k · e^{i·freq_k·|x|}`.
#[derive(Debug, Clone, Copy)]
pub struct LaplaceParts {
    /// `(frequency, amplitude)` pairs.
    pub terms: [(f64, Complex64); 4],
}

impl LaplaceParts {
    pub fn value(&self, r: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(k, amp)| amp * Complex64::from_polar(1.0, k * r))
            .sum()
    }
}

/// Direction data shared by every point on a ray from the origin.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RayDirection {
    pub s1: f64,
    pub a: f64,
    pub c2: f64,
}

impl RayDirection {
    pub fn of(x: PlanePoint) -> Self {
        let r = x.norm();
        let a = x.a();
        let c2 = if r == 0.0 { 1.0 } else { (x.x1 / r) * (x.x1 / r) };
        // x₁ = 0 is a = 1, where either sign gives the same value
        let s1 = if x.x1 < 0.0 { -1.0 } else { 1.0 };
        Self { s1, a, c2 }
    }

    /// Amplitudes `f_a^+, f_a^−, f_1^{s₁}` at radius `r`.
    pub fn amplitudes(&self, r: f64, tol: f64) -> Result<[Complex64; 3]> {
        let b = if self.s1 > 0.0 { Branch::Plus } else { Branch::Minus };
        Ok([
            f_a_with(Branch::Plus, r, self.a, self.c2, false, tol)?,
            f_a_with(Branch::Minus, r, self.a, self.c2, false, tol)?,
            f_a_with(b, r, 1.0, 0.0, false, tol)?,
        ])
    }

    /// Assemble `J_+` from the three amplitudes at radius `r`.
    pub fn assemble(&self, amps: [Complex64; 3]) -> LaplaceParts {
        let [fp, fm, f1] = amps;
        let (fs, s1) = if self.s1 > 0.0 { (fp, 1.0) } else { (fm, -1.0) };
        LaplaceParts {
            terms: [
                (self.a, fp),
                (-self.a, fm),
                (s1, f1 * 2.0),
                (s1 * self.a, -fs * 2.0),
            ],
        }
    }
}

/// `J_+` reassembled from `f_a^±`:
/// `e^{iar} f_a^+ + e^{−iar} f_a^− + 2e^{±ir} f_1^± − 2e^{±iar} f_a^±`.
pub fn j_plus_laplace(x: PlanePoint, tol: f64) -> Result<Complex64> {
    let r = x.norm();
    if !(r.is_finite() && r >= 1e-3) {
        return Err(domain("j_plus_laplace", format!("|x| must be ≥ 1e-3, got {r}")));
    }
    let dir = RayDirection::of(x);
    Ok(dir.assemble(dir.amplitudes(r, tol)?).value(r))
}

/// `J₀(x)` by Miller's backward recurrence normalised with
/// `J₀ + 2 Σ J_{2k} = 1`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-8 {
        return 1.0 - 0.25 * x * x;
    }
    let mut n = (x + 20.0 + 10.0 * x.powf(1.0 / 3.0)) as usize;
    n += n % 2;
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    let mut j0 = 0.0;
    for k in (0..n).rev() {
        // j_{k} from j_{k+1}, j_{k+2}
        let jm1 = 2.0 * (k + 1) as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        if k % 2 == 0 && k > 0 {
            norm += 2.0 * j;
        }
        if k == 0 {
            j0 = j;
            norm += j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
        }
    }
    j0 / norm
}

/// Weighted suprema of `f_a^±` over an `(a, r)` grid.
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    pub branch: Branch,
    pub r_max: f64,
    /// `sup r^{1/2} |f_a(r)|` over `r ≥ 1`.
    pub sup_j0: f64,
    /// `sup r^{3/2} |∂_r f_a(r)|` over `r ≥ 1`.
    pub sup_j1: f64,
    /// Same suprema restricted to `r < 1` (reported only).
    pub sup_j0_below_one: Option<f64>,
    pub sup_j1_below_one: Option<f64>,
    pub per_a: Vec<DecayRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayRow {
    pub a: f64,
    pub sup_j0: f64,
    pub sup_j1: f64,
    /// `sup r |f_a(r)|`, bounded when `a ≤ 1/√2`.
    pub sup_r_weighted: f64,
}

/// Sweep `r^{j+1/2} |∂_r^j f_a^±(r)|` for `j = 0, 1`.
pub fn verify_fa_decay(branch: Branch, a_grid: &[f64], r_grid: &[f64], tol: f64) -> Result<DecayReport> {
    if a_grid.is_empty() || r_grid.is_empty() {
        return Err(Error::Empty("decay grid"));
    }
    for &a in a_grid {
        check_a(a)?;
    }
    for &r in r_grid {
        if !(r.is_finite() && r > 0.0 && r <= 1e4) {
            return Err(domain("verify_fa_decay", format!("r grid must lie in (0, 1e4], got {r}")));
        }
    }
    let cells: Vec<(usize, f64)> = a_grid
        .iter()
        .enumerate()
        .flat_map(|(i, _)| r_grid.iter().map(move |&r| (i, r)))
        .collect();
    let values: Vec<(usize, f64, f64, f64)> = cells
        .par_iter()
        .map(|&(i, r)| {
            let a = a_grid[i];
            let c2 = (1.0 - a) * (1.0 + a);
            let f = f_a_with(branch, r, a, c2, false, tol)?.norm();
            let df = f_a_with(branch, r, a, c2, true, tol)?.norm();
            Ok((i, r, f, df))
        })
        .collect::<Result<_>>()?;

    let mut per_a: Vec<DecayRow> = a_grid
        .iter()
        .map(|&a| DecayRow { a, sup_j0: 0.0, sup_j1: 0.0, sup_r_weighted: 0.0 })
        .collect();
    let (mut lo0, mut lo1): (Option<f64>, Option<f64>) = (None, None);
    for (i, r, f, df) in values {
        let w0 = r.sqrt() * f;
        let w1 = r.powf(1.5) * df;
        if r >= 1.0 {
            let row = &mut per_a[i];
            row.sup_j0 = row.sup_j0.max(w0);
            row.sup_j1 = row.sup_j1.max(w1);
            row.sup_r_weighted = row.sup_r_weighted.max(r * f);
        } else {
            lo0 = Some(lo0.unwrap_or(0.0).max(w0));
            lo1 = Some(lo1.unwrap_or(0.0).max(w1));
        }
    }
    Ok(DecayReport {
        branch,
        r_max: r_grid.iter().cloned().fold(0.0, f64::max),
        sup_j0: per_a.iter().map(|r| r.sup_j0).fold(0.0, f64::max),
        sup_j1: per_a.iter().map(|r| r.sup_j1).fold(0.0, f64::max),
        sup_j0_below_one: lo0,
        sup_j1_below_one: lo1,
        per_a,
    })
}

/// `n` log-spaced points covering `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
    g[0] = lo;
    g[n - 1] = hi;
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    /// Power series `J₀(x) = Σ (−x²/4)^k / (k!)²` (accurate for small x).
    fn j0_series(x: f64) -> f64 {
        let q = -x * x / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..80 {
            term *= q / (k * k) as f64;
            sum += term;
        }
        sum
    }

    fn pt(x1: f64, x2: f64) -> PlanePoint {
        PlanePoint::new(x1, x2).unwrap()
    }

    #[test]
    fn j0_matches_series() {
        for x in [0.0, 0.5, 1.0, 3.0, 5.0, 10.0] {
            assert!((bessel_j0(x) - j0_series(x)).abs() < 1e-13, "x={x}");
        }
        // zero of J₀
        assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-14);
    }

    #[test]
    fn origin_gives_pi() {
        assert!((j_plus_direct(pt(0.0, 0.0), TOL).unwrap() - PI).norm() < 1e-15);
    }

    #[test]
    fn real_part_is_pi_j0() {
        for r in [0.5, 3.0, 10.0] {
            for th in [0.0, 0.7, 2.0, -2.5] {
                let x = pt(r * f64::cos(th), r * f64::sin(th));
                let j = j_plus_direct(x, TOL).unwrap();
                assert!((j.re - PI * j0_series(r)).abs() < 1e-11, "r={r} th={th}");
            }
        }
    }

    #[test]
    fn stationary_phase_size() {
        // brute-force oracle: 10⁵-node midpoint rule
        let x = pt(20.0, 0.0);
        let n = 100_000;
        let h = PI / n as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let th = -FRAC_PI_2 + (k as f64 + 0.5) * h;
            sum += (I * (20.0 * th.cos())).exp();
        }
        let oracle = sum * h;
        let j = j_plus_direct(x, TOL).unwrap();
        assert!((j - oracle).norm() < 1e-8);
        assert!(j.norm() <= (2.0 * PI / 20.0).sqrt() * 1.2);
    }

    #[test]
    fn empty_intervals() {
        for r in [0.5, 7.0, 40.0] {
            assert_eq!(f_big(r, 0.0, TOL).unwrap(), Complex64::new(0.0, 0.0));
            for b in Branch::both() {
                assert_eq!(f_pm(b, r, 1.0, TOL).unwrap(), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn f_big_full_interval_is_bessel() {
        let v = f_big(5.0, 1.0, TOL).unwrap();
        assert!((v - PI * j0_series(5.0)).norm() < 1e-11);
    }

    #[test]
    fn f_a_zero_matches_trapezoid_oracle() {
        let r = 10.0;
        let n = 1_000_000;
        let h = 8.0 / n as f64;
        let g = |s: f64| (-r * s).exp() / (s * s + 1.0).sqrt();
        let mut sum = 0.5 * (g(0.0) + g(8.0));
        for k in 1..n {
            sum += g(k as f64 * h);
        }
        let integral = sum * h;
        let plus = f_a(Branch::Plus, r, 0.0, TOL).unwrap();
        let minus = f_a(Branch::Minus, r, 0.0, TOL).unwrap();
        assert!((plus - Complex64::new(0.0, -integral)).norm() < 1e-9);
        assert!((minus - Complex64::new(0.0, integral)).norm() < 1e-9);
    }

    #[test]
    fn identities_on_grid() {
        for r in log_grid(1.0, 100.0, 8) {
            for k in 0..=5 {
                let a = k as f64 / 5.0;
                let f = f_big(r, a, TOL).unwrap();
                let fp = f_a(Branch::Plus, r, a, TOL).unwrap();
                let fm = f_a(Branch::Minus, r, a, TOL).unwrap();
                let lhs = Complex64::from_polar(1.0, a * r) * fp + Complex64::from_polar(1.0, -a * r) * fm;
                assert!((f - lhs).norm() < 1e-9, "F-ident r={r} a={a}");
                for (b, fa) in [(Branch::Plus, fp), (Branch::Minus, fm)] {
                    let sg = b.sign();
                    let f1 = f_a(b, r, 1.0, TOL).unwrap();
                    let want = Complex64::from_polar(2.0, sg * r) * f1 - Complex64::from_polar(2.0, sg * a * r) * fa;
                    assert!((f_pm(b, r, a, TOL).unwrap() - want).norm() < 1e-9, "Fpm r={r} a={a}");
                }
            }
        }
    }

    #[test]
    fn three_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let r = rng.gen_range(1.0..200.0);
            let th = rng.gen_range(-PI..PI);
            let x = pt(r * th.cos(), r * th.sin());
            let d = j_plus_direct(x, TOL).unwrap();
            let i = j_plus_identity(x, TOL).unwrap();
            let l = j_plus_laplace(x, TOL).unwrap();
            assert!((d - i).norm() < 1e-9, "identity at {x:?}");
            assert!((d - l).norm() < 1e-9, "laplace at {x:?}");
        }
    }

    #[test]
    fn axis_specialisations() {
        let r = 13.0;
        // x = (r, 0): J_+ = F⁺(r, 0)
        let j = j_plus_identity(pt(r, 0.0), TOL).unwrap();
        assert!((j - f_pm(Branch::Plus, r, 0.0, TOL).unwrap()).norm() < 1e-12);
        // x = (0⁺, r): J_+ → F(r, 1)
        let j = j_plus_identity(pt(1e-12, r), TOL).unwrap();
        assert!((j - f_big(r, 1.0, TOL).unwrap()).norm() < 1e-9);
        // s₁ = 0 is routed to the direct quadrature, and both one-sided limits agree with it
        let on_axis = j_plus_identity(pt(0.0, r), TOL).unwrap();
        let left = j_plus_identity(pt(-1e-12, r), TOL).unwrap();
        let right = j_plus_identity(pt(1e-12, r), TOL).unwrap();
        assert!((on_axis - left).norm() < 1e-9 && (on_axis - right).norm() < 1e-9);
    }

    #[test]
    fn x2_reflection_preserves_identity_value() {
        for (x1, x2) in [(3.0, 4.0), (-7.0, 2.5), (0.5, -40.0)] {
            let a = j_plus_identity(pt(x1, x2), TOL).unwrap();
            let b = j_plus_identity(pt(x1, -x2), TOL).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for (x1, x2) in [(3.0, 4.0), (-7.0, 2.5), (0.5, -40.0)] {
            let x = pt(x1, x2);
            let jp = j_plus_direct(x, TOL).unwrap();
            // J_−(x) = J_+(−x) by rotating the half-circle
            let jm = j_plus_direct(pt(-x1, -x2), TOL).unwrap();
            assert!((jm - jp.conj()).norm() < 1e-11);
            assert!((jp + jp.conj() - 2.0 * PI * bessel_j0(x.norm())).norm() < 1e-10);
        }
    }

    #[test]
    fn decay_report_is_bounded() {
        let a_grid = [0.0, 0.5, 1.0];
        let rep = verify_fa_decay(Branch::Minus, &a_grid, &log_grid(0.5, 100.0, 12), 1e-11).unwrap();
        assert!(rep.sup_j0.is_finite() && rep.sup_j0 > 0.0);
        assert!(rep.sup_j1.is_finite() && rep.sup_j1 > 0.0);
        assert!(rep.sup_j0_below_one.is_some());
        // a = 1: r^{1/2}|f_1(r)| → Γ(1/2)/√2 = √(π/2)
        assert!(rep.per_a[2].sup_j0 < (PI / 2.0).sqrt() * 1.01);
        assert!(verify_fa_decay(Branch::Plus, &[1.5], &[2.0], 1e-10).is_err());
        assert!(verify_fa_decay(Branch::Plus, &[0.5], &[2e4], 1e-10).is_err());
    }

    #[test]
    fn argument_budget() {
        assert!(matches!(j_plus_direct(pt(2e5, 0.0), TOL), Err(Error::Budget(_))));
        assert!(f_a(Branch::Plus, 1e-4, 0.5, TOL).is_err());
        assert!(f_big(1.0, 1.5, TOL).is_err());
    }
}
