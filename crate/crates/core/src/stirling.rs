//! Signed Stirling numbers of the first kind and boson normal ordering.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `n` served by the cached table.
pub const STIRLING_MAX: usize = 128;

/// Triangular table `s[n][k]`, `0 ≤ k ≤ n ≤ STIRLING_MAX`.
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Build rows `0..=n_max` with `s(m+1, k) = s(m, k-1) - m s(m, k)`.
    pub fn build(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for m in 0..n_max {
            let prev = &rows[m];
            let mut next = vec![BigInt::zero(); m + 2];
            for k in 1..=m + 1 {
                let left = &prev[k - 1];
                let here = prev.get(k).cloned().unwrap_or_default();
                next[k] = left - BigInt::from(m) * here;
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}

fn table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::build(STIRLING_MAX))
}

/// Signed Stirling number of the first kind `s(n, k)`.
pub fn stirling_first(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 || k > n || n as usize > STIRLING_MAX {
        return Err(Error::Index(format!(
            "s({n}, {k}) needs 0 ≤ k ≤ n ≤ {STIRLING_MAX}"
        )));
    }
    Ok(table().get(n as usize, k as usize).cloned().expect("in range"))
}

/// `(b†)^n b^n = Σ_m s(n, m) (b†b)^m`, as the nonzero pairs `(m, s(n, m))`.
pub fn normal_order_expansion(n: i64) -> Result<Vec<(i64, BigInt)>> {
    if n < 0 {
        return Err(Error::Index(format!("normal ordering needs n ≥ 0, got {n}")));
    }
    (0..=n)
        .map(|m| Ok((m, stirling_first(n, m)?)))
        .filter(|r| !matches!(r, Ok((_, c)) if c.is_zero()))
        .collect()
}

/// `B^n_k(f) = ∫ f (a†)^{n-k} (a†a)^k`: the pair (creation excess `n - k`,
/// number-operator power `k`).
pub fn number_operator_form(n: i64, k: i64) -> Result<(i64, i64)> {
    if k < 0 || n < k {
        return Err(Error::Index(format!(
            "number-operator form needs n ≥ k ≥ 0, got n = {n}, k = {k}"
        )));
    }
    Ok((n - k, k))
}
