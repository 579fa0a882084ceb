//! Moment generating functions of `x(t) = B^n_0(χ_[0,t]) + B^0_n(χ_[0,t])`.

use std::f64::consts::FRAC_PI_2;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::kernel_constant;
use crate::number::{int, rat, rational_to_f64};
use crate::poly::MuPolynomial;

/// `E[e^{s x(t)}]`: `e^{s²t/2}` for `n = 1`, else
/// `sec(√c s)^{nt/c}` with `c = n³(n-1)/2`, for `|s|√c < π/2`.
pub fn mgf_eval(n: i64, s: f64, t: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(format!("order must be ≥ 1, got {n}")));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    if n == 1 {
        return Ok((s * s * t / 2.0).exp());
    }
    let c = rational_to_f64(&kernel_constant(n));
    let x = c.sqrt() * s;
    if !(x.abs() < FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "s = {s} lies at or beyond the secant singularity |s| = {}",
            FRAC_PI_2 / c.sqrt()
        )));
    }
    Ok(x.cos().powf(-(n as f64) * t / c))
}

/// Taylor coefficients `[s^j]` of the MGF through `order`, with the time `t`
/// as the polynomial variable.
///
/// For `n ≥ 2`, `sec(√c s)^a = (1 - u)^{-a}` with `u = 1 - cos(√c s)`, a series
/// in `s²` with rational coefficients, expanded by the binomial series with
/// `a = n t / c`.
pub fn mgf_taylor(n: i64, order: usize) -> Result<Vec<MuPolynomial>> {
    if n < 1 {
        return Err(Error::Domain(format!("order must be ≥ 1, got {n}")));
    }
    let mut out = vec![MuPolynomial::zero(); order + 1];
    if n == 1 {
        // e^{t s²/2}
        let mut fact = BigRational::one();
        for m in 0..=order / 2 {
            if m > 0 {
                fact *= int(2 * m as i64);
            }
            out[2 * m] = MuPolynomial::monomial(fact.recip(), m);
        }
        return Ok(out);
    }
    let c = kernel_constant(n);
    // u = Σ_{m≥1} (-1)^{m+1} c^m s^{2m} / (2m)!
    let mut u = vec![BigRational::zero(); order + 1];
    let mut term = BigRational::one();
    for m in 1..=order / 2 {
        term = term * &c / int((2 * m * (2 * m - 1)) as i64);
        u[2 * m] = if m % 2 == 1 { term.clone() } else { -term.clone() };
    }
    let mul = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut r = vec![BigRational::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                r[i + j] += x * y;
            }
        }
        r
    };
    // Σ_j (a)_j u^j / j!, (a)_j the rising factorial in a = n t / c.
    let a = MuPolynomial::monomial(rat(n, 1) / &c, 1);
    let mut rising = MuPolynomial::one();
    let mut upow = vec![BigRational::zero(); order + 1];
    upow[0] = BigRational::one();
    let mut fact = BigRational::one();
    for j in 0..=order / 2 {
        if j > 0 {
            rising = rising * (a.clone() + MuPolynomial::constant(int(j as i64 - 1)));
            fact *= int(j as i64);
            upow = mul(&upow, &u);
        }
        let w = rising.scale(&fact.recip());
        for (i, x) in upow.iter().enumerate() {
            if !x.is_zero() {
                out[i] = out[i].clone() + w.scale(x);
            }
        }
    }
    Ok(out)
}
