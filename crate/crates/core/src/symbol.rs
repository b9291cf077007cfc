//! The dispersion symbol `m_β(r) = r (1+βr²)^{1/2} (tanh r / r)^{1/2}`, its
//! first two derivatives, and the auxiliary functions used to factor them.
//!
//! Notation inside this module: `T = tanh`, `S = sech`, `K = sqrt(T(r)/r)`,
//! `⟨x⟩ = sqrt(1+x²)`.

use crate::error::{domain, Result};

/// Below this radius the series branches are used.
pub const R_SWITCH: f64 = 1e-2;

/// Above this radius `tanh ≡ 1` and `sech ≡ 0` to working precision.
pub const R_SATURATE: f64 = 40.0;

/// `⟨x⟩ = sqrt(1 + x²)` without intermediate overflow.
#[inline]
pub fn bracket(x: f64) -> f64 {
    1f64.hypot(x)
}

#[inline]
pub fn tanh_sat(r: f64) -> f64 {
    if r > R_SATURATE {
        1.0
    } else {
        r.tanh()
    }
}

#[inline]
pub fn sech_sat(r: f64) -> f64 {
    if r > R_SATURATE {
        0.0
    } else {
        let e = (-r).exp();
        2.0 * e / (1.0 + e * e)
    }
}

/// `tanh(r)/r`, smooth through `r = 0`.
#[inline]
pub fn tanh_over_r(r: f64) -> f64 {
    if r < R_SWITCH {
        let r2 = r * r;
        1.0 + r2 * (-1.0 / 3.0 + r2 * (2.0 / 15.0 - r2 * 17.0 / 315.0))
    } else {
        tanh_sat(r) / r
    }
}

/// `K(r) = sqrt(tanh(r)/r)`.
#[inline]
pub fn aux_k(r: f64) -> f64 {
    tanh_over_r(r).sqrt()
}

fn e_series(r: f64) -> f64 {
    let r2 = r * r;
    r * (2.0 / 3.0 + r2 * (2.0 / 15.0 + r2 * (4.0 / 315.0 + r2 * 2.0 / 2835.0)))
}

/// `E(r) = (e^{2r} − e^{−2r} − 4r) / (4r²)`.
///
/// Overflows to `+inf` only past `r ≈ 354`.
pub fn aux_e(r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(domain("aux_E", format!("r must be finite and > 0, got {r}")));
    }
    Ok(if r < R_SWITCH {
        e_series(r)
    } else if r < 1.0 {
        ((2.0 * r).sinh() - 2.0 * r) / (2.0 * r * r)
    } else {
        let damp = 1.0 - (-4.0 * r).exp() - 4.0 * r * (-2.0 * r).exp();
        damp / (4.0 * r * r) * (2.0 * r).exp()
    })
}

/// `E(r)·S(r)² = (K² − S²)/r`, finite for every `r > 0`.
#[inline]
fn e_sech2(r: f64) -> f64 {
    let s = sech_sat(r);
    if r < R_SWITCH {
        e_series(r) * s * s
    } else {
        (tanh_sat(r) - r * s * s) / (r * r)
    }
}

fn check_r(what: &'static str, r: f64, strict: bool) -> Result<()> {
    let ok = r.is_finite() && if strict { r > 0.0 } else { r >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(domain(
            what,
            format!("r must be finite and {} 0, got {r}", if strict { ">" } else { "≥" }),
        ))
    }
}

/// The symbol `m_β` for a fixed surface-tension coefficient `β ≥ 0`.
///
/// All evaluators are pure; the `*_unchecked` variants skip argument
/// validation and are meant for quadrature inner loops.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DispersionSymbol {
    beta: f64,
}

impl DispersionSymbol {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(domain("DispersionSymbol", format!("beta must be finite and ≥ 0, got {beta}")));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    fn weight(&self, r: f64) -> f64 {
        bracket(self.beta.sqrt() * r)
    }

    #[inline]
    pub fn m_unchecked(&self, r: f64) -> f64 {
        r * self.weight(r) * aux_k(r)
    }

    #[inline]
    pub fn m_prime_unchecked(&self, r: f64) -> f64 {
        let w = self.weight(r);
        let k = aux_k(r);
        let s = sech_sat(r);
        0.5 * w * (k + s * s / k) + self.beta * r * r * k / w
    }

    #[inline]
    pub fn m_double_prime_unchecked(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let w = self.weight(r);
        let k = aux_k(r);
        let b = aux_b(r);
        0.25 * r * w * k * b * self.f_beta_unchecked_with(r, b)
    }

    #[inline]
    fn f_beta_unchecked_with(&self, r: f64, b: f64) -> f64 {
        if self.beta == 0.0 {
            -1.0
        } else {
            4.0 * self.beta * self.a_beta_unchecked(r) / b - 1.0
        }
    }

    #[inline]
    fn a_beta_unchecked(&self, r: f64) -> f64 {
        let w2 = 1.0 + self.beta * r * r;
        let k = aux_k(r);
        let s = sech_sat(r);
        (1.0 + s * s / (k * k) + 1.0 / w2) / w2
    }

    pub fn m(&self, r: f64) -> Result<f64> {
        check_r("m", r, false)?;
        Ok(self.m_unchecked(r))
    }

    /// `m'_β(r)`; at `r = 0` this is the limit `1`.
    pub fn m_prime(&self, r: f64) -> Result<f64> {
        check_r("m_prime", r, false)?;
        Ok(self.m_prime_unchecked(r))
    }

    /// `m''_β(r) = ¼ r ⟨√β r⟩ K B f_β`; the limit at `r = 0` is `0`.
    pub fn m_double_prime(&self, r: f64) -> Result<f64> {
        check_r("m_double_prime", r, false)?;
        Ok(self.m_double_prime_unchecked(r))
    }

    pub fn a_beta(&self, r: f64) -> Result<f64> {
        check_r("A_beta", r, true)?;
        Ok(self.a_beta_unchecked(r))
    }

    /// `f_β = 4β A_β/B − 1`; identically `−1` for `β = 0`.
    pub fn f_beta(&self, r: f64) -> Result<f64> {
        check_r("f_beta", r, true)?;
        Ok(self.f_beta_unchecked_with(r, aux_b(r)))
    }

    /// `m'_β(r) / (⟨√β r⟩ ⟨r⟩^{-1/2})`.
    pub fn m_prime_ratio(&self, r: f64) -> Result<f64> {
        Ok(self.m_prime(r)? / (self.weight(r) / bracket(r).sqrt()))
    }

    /// `|m''_β(r)| / (r ⟨√β r⟩ ⟨r⟩^{-5/2})`.
    pub fn m_double_prime_ratio(&self, r: f64) -> Result<f64> {
        check_r("m_double_prime_ratio", r, true)?;
        let scale = r * self.weight(r) * bracket(r).powf(-2.5);
        Ok(self.m_double_prime_unchecked(r).abs() / scale)
    }

    /// Group speed scale `⟨√β Λ⟩ ⟨Λ⟩^{-1/2}` at frequency `Λ`.
    pub fn critical_speed(&self, lambda: f64) -> f64 {
        self.weight(lambda) / bracket(lambda).sqrt()
    }

    /// Dispersive constant `⟨√β Λ⟩^{-1} ⟨Λ⟩^{3/2}`.
    pub fn dispersive_scale(&self, lambda: f64) -> f64 {
        bracket(lambda).powf(1.5) / self.weight(lambda)
    }
}

/// `B(r) = 4S² + K^{-4} E² S⁴`.
#[inline]
pub fn aux_b(r: f64) -> f64 {
    let s = sech_sat(r);
    let k2 = tanh_over_r(r);
    let es2 = e_sech2(r);
    4.0 * s * s + es2 * es2 / (k2 * k2)
}
