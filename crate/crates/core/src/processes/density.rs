//! The secant-power law: density `p_t`, its `n`-dependent rescaling, and
//! numerical checks against the closed-form moment generating function.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::gamma::complex_log_gamma;
use super::mgf::mgf_eval;
use super::quad::{integrate_line, tail_cutoff};
use crate::error::{Error, Result};
use crate::fock::kernel_constant;
use crate::number::rational_to_f64;

const QUAD_TOL: f64 = 1e-13;

/// The law of `X_t` with `E[e^{sX_t}] = (sec s)^t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecantDensity {
    t: f64,
    log_norm: f64,
    log_gamma_t: f64,
}

impl SecantDensity {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("time must be positive, got {t}")));
        }
        Ok(SecantDensity {
            t,
            log_norm: (t - 1.0) * 2f64.ln() - (2.0 * PI).ln(),
            log_gamma_t: complex_log_gamma(Complex64::new(t, 0.0))?.re,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `p_t(x) = 2^{t-1}/(2π) · Γ((t+ix)/2) Γ((t-ix)/2) / Γ(t)`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        let a = Complex64::new(self.t / 2.0, x / 2.0);
        let z = complex_log_gamma(a)? + complex_log_gamma(a.conj())? - self.log_gamma_t + self.log_norm;
        let v = z.exp();
        if v.im.abs() > 1e-12 * v.re.abs().max(1.0) {
            return Err(Error::Numerical(format!("density at x = {x} has imaginary part {}", v.im)));
        }
        Ok(v.re)
    }

    fn pdf_or_nan(&self, x: f64) -> f64 {
        self.pdf(x).unwrap_or(f64::NAN)
    }

    /// A point `X ≥ 1` past which `p_t < eps`; the density is even and
    /// decreasing in `|x|`, with tail `~ |x|^{t-1} e^{-π|x|/2}`.
    pub fn tail_cutoff(&self, eps: f64) -> Result<f64> {
        let coarse = tail_cutoff(&|x| self.pdf_or_nan(x), eps)?;
        let (mut lo, mut hi) = (coarse / 2.0, coarse);
        if self.pdf(lo)? < eps {
            return Ok(lo.max(1.0));
        }
        for _ in 0..30 {
            let mid = 0.5 * (lo + hi);
            if self.pdf(mid)? < eps {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// `p_t(x)`.
pub fn density_p(t: f64, x: f64) -> Result<f64> {
    SecantDensity::new(t)?.pdf(x)
}

/// Scale `σ = √c` and time `τ = nt/c` with `x(t) = σ X_τ` in law.
pub fn scaling(n: i64, t: f64) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::OutOfScope(format!(
            "the rescaled secant law needs n ≥ 2 (n = 1 is Gaussian), got {n}"
        )));
    }
    let c = rational_to_f64(&kernel_constant(n));
    Ok((c.sqrt(), n as f64 * t / c))
}

/// Density of `σ X_τ`: `p_τ(y/σ)/σ`.
pub fn density_q_scaled(n: i64, t: f64, y: f64) -> Result<f64> {
    let (sigma, tau) = scaling(n, t)?;
    Ok(density_p(tau, y / sigma)? / sigma)
}

/// `∫_ℝ x^k p_t(x) dx`.
pub fn density_moment(t: f64, k: i32) -> Result<f64> {
    let d = SecantDensity::new(t)?;
    finite(integrate_line(&|x| x.powi(k) * d.pdf_or_nan(x), QUAD_TOL)?)
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numerical("density evaluation failed inside the quadrature".into()))
    }
}

/// Numeric and closed-form values of a moment generating function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MgfCheck {
    pub numeric: f64,
    pub closed_form: f64,
    pub rel_err: f64,
}

impl MgfCheck {
    fn new(numeric: f64, closed_form: f64) -> Self {
        MgfCheck { numeric, closed_form, rel_err: ((numeric - closed_form) / closed_form).abs() }
    }
}

/// `∫ e^{sx} p_t(x) dx` against `(sec s)^t`, `|s| < π/2`.
pub fn mgf_numeric_check(t: f64, s: f64) -> Result<MgfCheck> {
    if !(s.abs() < FRAC_PI_2) {
        return Err(Error::Domain(format!("|s| must be below π/2, got {s}")));
    }
    let d = SecantDensity::new(t)?;
    let numeric = finite(integrate_line(&|x| (s * x).exp() * d.pdf_or_nan(x), QUAD_TOL)?)?;
    Ok(MgfCheck::new(numeric, (1.0 / s.cos()).powf(t)))
}

/// `∫ e^{sy} q(y) dy` for the rescaled density against the order-`n` MGF.
pub fn scaled_mgf_numeric_check(n: i64, t: f64, s: f64) -> Result<MgfCheck> {
    let closed_form = mgf_eval(n, s, t)?;
    let (sigma, tau) = scaling(n, t)?;
    let d = SecantDensity::new(tau)?;
    let q = |y: f64| d.pdf_or_nan(y / sigma) / sigma;
    let numeric = finite(integrate_line(&|y| (s * y).exp() * q(y), QUAD_TOL)?)?;
    Ok(MgfCheck::new(numeric, closed_form))
}
