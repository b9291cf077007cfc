//! One-dimensional quadrature for complex-valued integrands.
//!
//! The engine is a globally adaptive Gauss–Kronrod 7–15 rule: the interval
//! with the largest error estimate is bisected until the summed estimate
//! meets `max(tol, tol·|I|)`. Subdivision order does not depend on `tol`, so
//! tightening the tolerance only extends the same refinement sequence.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the 7-point rule at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Maximum bisection depth of any subinterval.
pub const MAX_DEPTH: u32 = 50;

/// Cap on live subintervals before the engine gives up.
pub const MAX_INTERVALS: usize = 400_000;

/// Laplace integrals are truncated at `max(40/r, 40)`.
pub const LAPLACE_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexQuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub nodes_used: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; equal errors pop the leftmost segment.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One Gauss–Kronrod 7–15 panel. Returns (kronrod, |kronrod − gauss|, Σ|f|w).
#[inline]
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut absum = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        let s = f1 + f2;
        kron += s * WGK[j];
        absum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).norm(), absum * h.abs())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(domain("quadrature", format!("tol must be finite and > 0, got {tol}")))
    }
}

/// Adaptive integration over consecutive breakpoints `points[0] < … < points[n]`.
pub fn integrate_breakpoints<F>(f: F, points: &[f64], tol: f64) -> Result<ComplexQuadResult>
where
    F: Fn(f64) -> Complex64,
{
    check_tol(tol)?;
    if points.len() < 2 {
        return Err(domain("quadrature", "need at least two breakpoints"));
    }
    for w in points.windows(2) {
        if !(w[0].is_finite() && w[1].is_finite() && w[0] < w[1]) {
            return Err(domain(
                "quadrature",
                format!("breakpoints must be finite and increasing, got {} then {}", w[0], w[1]),
            ));
        }
    }

    let mut heap = BinaryHeap::with_capacity(points.len() * 4);
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut nodes = 0usize;
    let mut splits = 0usize;

    for w in points.windows(2) {
        let (value, err, _) = gk15(&f, w[0], w[1]);
        nodes += 15;
        total += value;
        total_err += err;
        heap.push(Segment { a: w[0], b: w[1], value, err, depth: 0 });
    }

    loop {
        if total_err <= tol.max(tol * total.norm()) {
            return Ok(ComplexQuadResult { value: total, abs_error_estimate: total_err, nodes_used: nodes });
        }
        let Some(seg) = heap.pop() else {
            return Err(Error::Convergence { partial: total, abs_error: total_err, nodes });
        };
        let mid = 0.5 * (seg.a + seg.b);
        let splittable = seg.depth < MAX_DEPTH && mid > seg.a && mid < seg.b;
        if !splittable {
            // Value and error stay in the totals; the segment leaves the queue.
            continue;
        }
        let (v1, e1, _) = gk15(&f, seg.a, mid);
        let (v2, e2, _) = gk15(&f, mid, seg.b);
        nodes += 30;
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.err;
        heap.push(Segment { a: seg.a, b: mid, value: v1, err: e1, depth: seg.depth + 1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, err: e2, depth: seg.depth + 1 });
        splits += 1;
        if splits > MAX_INTERVALS {
            return Err(Error::Convergence { partial: total, abs_error: total_err, nodes });
        }
    }
}

/// `∫_a^b f(s) ds` to `max(tol, tol·|I|)`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, tol: f64) -> Result<ComplexQuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(domain("integrate_finite", format!("need finite a < b, got [{a}, {b}]")));
    }
    integrate_breakpoints(f, &[a, b], tol)
}

/// `∫_a^b f(s) (1−s²)^{-1/2} ds` for `−1 ≤ a < b ≤ 1`, through `s = sin φ`.
pub fn integrate_arcsine<F>(f: F, a: f64, b: f64, tol: f64) -> Result<ComplexQuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(-1.0 <= a && a < b && b <= 1.0) {
        return Err(domain("integrate_arcsine", format!("need −1 ≤ a < b ≤ 1, got [{a}, {b}]")));
    }
    integrate_finite(|phi: f64| f(phi.sin()), a.asin(), b.asin(), tol)
}

/// `∫_0^∞ e^{−r s} g(s) ds`, truncated at `max(40/r, 40)`.
///
/// The substitution `s = u²` absorbs an `s^{-1/2}` endpoint singularity,
/// and geometric breakpoints in `u` resolve the `1/r` decay scale.
pub fn integrate_laplace<G>(g: G, r: f64, tol: f64) -> Result<ComplexQuadResult>
where
    G: Fn(f64) -> Complex64,
{
    if !(r.is_finite() && r > 0.0) {
        return Err(domain("integrate_laplace", format!("r must be finite and > 0, got {r}")));
    }
    let s_max = (LAPLACE_CUTOFF / r).max(LAPLACE_CUTOFF);
    let u_max = s_max.sqrt();
    let s_lo = (1.0 / r).min(1.0) / 1024.0;
    let mut points = vec![0.0];
    let mut u = s_lo.sqrt();
    while u < u_max {
        points.push(u);
        u *= std::f64::consts::SQRT_2;
    }
    points.push(u_max);
    integrate_breakpoints(|u: f64| g(u * u) * (2.0 * u * (-r * u * u).exp()), &points, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sine_integral() {
        let res = integrate_finite(|s| c(s.sin()), 0.0, PI, 1e-12).unwrap();
        assert!((res.value - c(2.0)).norm() < 1e-12);
        assert!(res.abs_error_estimate <= 1e-12 * 2.0);
        assert!(res.nodes_used >= 15);
    }

    #[test]
    fn arcsine_path() {
        let res = integrate_arcsine(|_| c(1.0), -1.0, 1.0, 1e-13).unwrap();
        assert!((res.value - c(PI)).norm() < 1e-12);
        let res = integrate_arcsine(|s| c(s * s), -1.0, 1.0, 1e-13).unwrap();
        assert!((res.value - c(PI / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn oscillatory_exponential() {
        let i = Complex64::i();
        let res = integrate_finite(|r| (i * 50.0 * r).exp(), 0.5, 2.0, 1e-12).unwrap();
        let exact = ((i * 100.0).exp() - (i * 25.0).exp()) / (i * 50.0);
        assert!((res.value - exact).norm() < 1e-12);
    }

    #[test]
    fn laplace_constant() {
        let res = integrate_laplace(|_| c(1.0), 2.0, 1e-13).unwrap();
        assert!((res.value - c(0.5)).norm() < 1e-13);
    }

    #[test]
    fn laplace_matches_trapezoid_oracle() {
        // fine trapezoid on [0, 8] (e^{-80} tail), 10⁶ panels
        let r = 10.0;
        let g = |s: f64| 1.0 / (s * s + 1.0).sqrt();
        let n = 1_000_000;
        let h = 8.0 / n as f64;
        let mut sum = 0.5 * (g(0.0) + g(8.0) * (-r * 8.0f64).exp());
        for k in 1..n {
            let s = k as f64 * h;
            sum += g(s) * (-r * s).exp();
        }
        let oracle = sum * h;
        let res = integrate_laplace(|s| c(g(s)), r, 1e-13).unwrap();
        assert!((res.value.re - oracle).abs() < 1e-8, "{} vs {oracle}", res.value.re);
        assert!(res.value.im == 0.0);
    }

    #[test]
    fn laplace_singular_integrand() {
        // a = 1 integrand (s² − 2is)^{-1/2}: the u-substituted form is bounded.
        let r = 5.0;
        let g = |s: f64| Complex64::new(s * s, -2.0 * s).sqrt().inv();
        let res = integrate_laplace(g, r, 1e-12).unwrap();
        assert!(res.value.norm().is_finite());
        for k in 1..200 {
            let u = k as f64 * 0.01;
            let h = g(u * u) * 2.0 * u;
            assert!(h.norm() < 2.0);
        }
        // oracle: trapezoid in u on [0, sqrt(40/5·…)] with 10⁶ panels
        let u_max = 8.0f64.sqrt() * 1.5;
        let n = 1_000_000;
        let h = u_max / n as f64;
        let f = |u: f64| {
            if u == 0.0 {
                // limit of 2u (−2iu²)^{-1/2}
                Complex64::new(2.0, 0.0) / Complex64::new(0.0, -2.0).sqrt()
            } else {
                g(u * u) * (2.0 * u * (-r * u * u).exp())
            }
        };
        let mut sum = (f(0.0) + f(u_max)) * 0.5;
        for k in 1..n {
            sum += f(k as f64 * h);
        }
        let oracle = sum * h;
        assert!((res.value - oracle).norm() < 1e-8, "{} vs {oracle}", res.value);
    }

    #[test]
    fn errors_are_reported() {
        assert!(integrate_finite(|s| c(s), 1.0, 0.0, 1e-8).is_err());
        assert!(integrate_finite(|s| c(s), 0.0, 1.0, 0.0).is_err());
        assert!(integrate_laplace(|s| c(s), -1.0, 1e-8).is_err());
        // 1/s on (0,1] diverges: the engine must give up with a partial value
        match integrate_finite(|s| c(1.0 / s), 0.0, 1.0, 1e-10) {
            Err(Error::Convergence { partial, .. }) => assert!(partial.re > 10.0),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let f = |s: f64| Complex64::new((3.0 * s).cos(), s.exp().sin());
        let a = integrate_finite(f, -2.0, 3.0, 1e-11).unwrap();
        let b = integrate_finite(f, -2.0, 3.0, 1e-11).unwrap();
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn linearity(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, k in 0.5f64..30.0) {
                let i = Complex64::i();
                let f = move |s: f64| (i * k * s).exp() / (1.0 + s * s);
                let g = move |s: f64| c((k * s).cos() * s);
                let tol = 1e-11;
                let lhs = integrate_finite(|s| f(s) * alpha + g(s) * beta, -1.0, 2.0, tol).unwrap().value;
                let rhs = integrate_finite(f, -1.0, 2.0, tol).unwrap().value * alpha
                    + integrate_finite(g, -1.0, 2.0, tol).unwrap().value * beta;
                prop_assert!((lhs - rhs).norm() < 20.0 * tol * (1.0 + alpha.abs() + beta.abs()));
            }

            #[test]
            fn halving_tol_never_increases_error(k in 1.0f64..60.0, e in 4i32..11) {
                let tol = 10f64.powi(-e);
                let f = move |s: f64| Complex64::new((k * s * s).cos(), (k * s).sin() * s.exp());
                let coarse = integrate_finite(f, 0.0, 2.0, tol).unwrap();
                let fine = integrate_finite(f, 0.0, 2.0, tol / 2.0).unwrap();
                prop_assert!(fine.abs_error_estimate <= coarse.abs_error_estimate);
            }
        }
    }
}
