//! Adaptive quadrature over finite intervals and half-lines with decaying
//! integrands.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 24;

/// `∫_a^b f` by double-exponential quadrature, bisecting until each piece
/// meets its share of `tol` or its error estimate is at round-off level.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let whole = quadrature::double_exponential::integrate(f, a, b, tol);
    let v = if whole.error_estimate <= tol.max(roundoff(whole.integral)) {
        whole.integral
    } else {
        integrate_rec(f, a, b, whole.integral, tol, 0)
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numerical(format!("quadrature on [{a}, {b}] did not produce a finite value")))
    }
}

fn roundoff(v: f64) -> f64 {
    16.0 * f64::EPSILON * v.abs()
}

fn integrate_rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = quadrature::double_exponential::integrate(f, a, m, tol / 2.0);
    let right = quadrature::double_exponential::integrate(f, m, b, tol / 2.0);
    let sum = left.integral + right.integral;
    if !sum.is_finite() || depth >= MAX_DEPTH || (sum - whole).abs() <= tol.max(roundoff(sum)) {
        return sum;
    }
    let half = |r: &quadrature::Output, lo: f64, hi: f64| {
        if r.error_estimate <= (tol / 2.0).max(roundoff(r.integral)) {
            r.integral
        } else {
            integrate_rec(f, lo, hi, r.integral, tol / 2.0, depth + 1)
        }
    };
    half(&left, a, m) + half(&right, m, b)
}

/// Smallest `X = 2^j` past which the nonnegative, eventually decreasing `g`
/// is below `eps` and still falling.
pub fn tail_cutoff(g: &dyn Fn(f64) -> f64, eps: f64) -> Result<f64> {
    let mut prev = g(0.5);
    let mut x = 1.0;
    for _ in 0..40 {
        let v = g(x);
        if !v.is_finite() {
            return Err(Error::Numerical(format!("integrand not finite at {x}")));
        }
        if v < eps && v <= prev {
            return Ok(x);
        }
        prev = v;
        x *= 2.0;
    }
    Err(Error::Numerical(format!("integrand does not fall below {eps}")))
}

/// `∫_0^∞ g` for a nonnegative integrand with an exponentially small tail,
/// truncated where `g < 10⁻¹⁶`.
pub fn integrate_half_line(g: &dyn Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let x = tail_cutoff(g, 1e-16)?;
    integrate(g, 0.0, x, tol)
}

/// `∫_ℝ g`, split at the origin.
pub fn integrate_line(g: &dyn Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let right = integrate_half_line(g, tol / 2.0)?;
    let left = integrate_half_line(&|x| g(-x), tol / 2.0)?;
    Ok(left + right)
}
