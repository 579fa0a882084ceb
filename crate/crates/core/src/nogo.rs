//! Gram matrix of `{B^{2n}_0 Φ, (B^n_0)² Φ}` in the untruncated algebra and
//! the resulting lower bound on the interval measure for `n ≥ 3`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{int, rat};
use crate::poly::MuPolynomial;
use crate::rewrite::{vacuum_expectation, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct NoGoReport {
    pub n: i64,
    /// `[[⟨B^{2n}_0Φ, B^{2n}_0Φ⟩, ⟨B^{2n}_0Φ, (B^n_0)²Φ⟩], [·, ⟨(B^n_0)²Φ, (B^n_0)²Φ⟩]]`.
    pub entries: [[MuPolynomial; 2]; 2],
    pub d1: MuPolynomial,
    pub d2: MuPolynomial,
    /// `n²(n+1)/2`, the root of `d2`'s nonconstant factor.
    pub threshold: BigRational,
    pub mu: Option<BigRational>,
    pub d1_at_mu: Option<BigRational>,
    pub d2_at_mu: Option<BigRational>,
    /// Whether the matrix is positive semidefinite at `mu`.
    pub psd: Option<bool>,
}

fn poly(cs: &[i64]) -> MuPolynomial {
    MuPolynomial::from_coeffs(cs.iter().map(|&c| int(c)).collect())
}

/// Closed-form entries
/// `[[2nμ, 2n³μ], [2n³μ, 2n²μ² + n⁴(n-1)μ]]`, each checked against the
/// rewrite engine.
pub fn nogo_report(n: i64, mu: Option<BigRational>) -> Result<NoGoReport> {
    if n < 3 {
        return Err(Error::OutOfScope(format!("the obstruction concerns n ≥ 3, got {n}")));
    }
    if let Some(m) = &mu {
        if !m.is_positive() {
            return Err(Error::Domain(format!("interval measure must be positive, got {m}")));
        }
    }
    let a11 = poly(&[0, 2 * n]);
    let a12 = poly(&[0, 2 * n.pow(3)]);
    let a22 = poly(&[0, n.pow(4) * (n - 1), 2 * n * n]);

    let words = [
        (Word::interval(&[(0, 2 * n), (2 * n, 0)]), &a11),
        (Word::interval(&[(0, 2 * n), (n, 0), (n, 0)]), &a12),
        (Word::interval(&[(0, n), (0, n), (2 * n, 0)]), &a12),
        (Word::interval(&[(0, n), (0, n), (n, 0), (n, 0)]), &a22),
    ];
    for (w, expected) in &words {
        let got = vacuum_expectation(w);
        if got != expected.to_complex() {
            return Err(Error::Numerical(format!("engine gives {got} for a Gram entry expected to be {expected}")));
        }
    }

    let d1 = a11.clone();
    let d2 = a11.clone() * a22.clone() - a12.clone() * a12.clone();
    let threshold = rat(n * n * (n + 1), 2);
    let d1_at_mu = mu.as_ref().map(|m| d1.eval(m));
    let d2_at_mu = mu.as_ref().map(|m| d2.eval(m));
    let psd = match (&d1_at_mu, &d2_at_mu, &mu) {
        (Some(a), Some(b), Some(m)) => Some(!a.is_negative() && !b.is_negative() && !a22.eval(m).is_negative()),
        _ => None,
    };
    Ok(NoGoReport { n, entries: [[a11, a12.clone()], [a12, a22]], d1, d2, threshold, mu, d1_at_mu, d2_at_mu, psd })
}

/// `2n³μ²(2μ - n² - n³)`.
pub fn d2_closed_form(n: i64) -> MuPolynomial {
    poly(&[0, 0, -2 * n.pow(3) * (n * n + n.pow(3)), 4 * n.pow(3)])
}

/// Whether `d2(μ)` is zero at `μ`, negative just below and positive just
/// above, with `d2 = 2n³μ²·(2μ - n² - n³)`.
pub fn sign_changes_at(n: i64, mu: &BigRational) -> bool {
    let d2 = d2_closed_form(n);
    let eps = rat(1, 1_000_000);
    d2.eval(mu).is_zero() && d2.eval(&(mu - &eps)).is_negative() && d2.eval(&(mu + &eps)).is_positive()
}
