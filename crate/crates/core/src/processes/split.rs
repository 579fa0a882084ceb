//! The splitting formula `e^{s(B^n_0 + B^0_n)}Φ = e^{W(s)} e^{V(s)B^n_0}Φ`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::kernel_constant;
use crate::number::{int, rational_to_f64};
use crate::poly::MuPolynomial;
use crate::rewrite::{truncated_step, IntervalFn, NumberState, WordFactor};
use crate::series::Series;

/// Largest series order accepted by [`splitting_series_check`].
pub const SPLIT_MAX_ORDER: usize = 12;

/// `V` and `W` as exact power series in `s`, `W` with `μ`-polynomial
/// coefficients.
#[derive(Clone, Debug)]
pub struct SplittingSolution {
    pub n: i64,
    pub v: Series<BigRational>,
    pub w: Series<MuPolynomial>,
}

impl SplittingSolution {
    /// `V(s) = √(1/c) tan(√c s)`, or `s` for `n = 1`.
    pub fn v_eval(&self, s: f64) -> f64 {
        let c = rational_to_f64(&kernel_constant(self.n));
        if c == 0.0 {
            return s;
        }
        (c.sqrt() * s).tan() / c.sqrt()
    }

    /// `W(s) = -(nμ/c) ln cos(√c s)`, or `s²μ/2` for `n = 1`.
    pub fn w_eval(&self, s: f64, mu: f64) -> f64 {
        let c = rational_to_f64(&kernel_constant(self.n));
        if c == 0.0 {
            return s * s * mu / 2.0;
        }
        -(self.n as f64) * mu / c * (c.sqrt() * s).cos().ln()
    }

    /// `V' - 1 - c V²`, identically zero for the exact solution.
    pub fn riccati_residual(&self) -> Series<BigRational> {
        let c = kernel_constant(self.n);
        let order = self.v.order();
        let v2 = self.v.mul(&self.v).scale(&c);
        let lhs = Series::new(self.v.derivative().coeffs().to_vec(), order.saturating_sub(1));
        let rhs = Series::one(order.saturating_sub(1)).add(&Series::new(v2.coeffs().to_vec(), order.saturating_sub(1)));
        lhs.add(&rhs.scale(&-BigRational::one()))
    }
}

/// Series of `V` and `W` through `s^order`.
///
/// `V = sin(√c s)/(√c cos(√c s))` is built from the two even/odd series in `c`
/// and divided exactly; `W = nμ ∫ V`.
pub fn riccati_split(n: i64, order: usize) -> Result<SplittingSolution> {
    if n < 1 {
        return Err(Error::Domain(format!("order must be ≥ 1, got {n}")));
    }
    let c = kernel_constant(n);
    let mut sin = vec![BigRational::zero(); order + 1];
    let mut cos = vec![BigRational::zero(); order + 1];
    let mut term = BigRational::one(); // c^{⌊j/2⌋} / j!
    for j in 0..=order {
        if j > 0 {
            term /= int(j as i64);
            if j % 2 == 0 {
                term *= &c;
            }
        }
        let sign = if (j / 2) % 2 == 0 { term.clone() } else { -term.clone() };
        if j % 2 == 0 {
            cos[j] = sign;
        } else {
            sin[j] = sign;
        }
    }
    let v = Series::new(sin, order).div(&Series::new(cos, order));
    let w = v.integral().lift(|r| MuPolynomial::monomial(r * int(n), 1));
    Ok(SplittingSolution { n, v, w })
}

/// First coefficient where the two sides of the splitting formula differ.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitMismatch {
    /// Power of `s`.
    pub j: usize,
    /// Power of `B^n_0`.
    pub k: usize,
    pub lhs: MuPolynomial,
    pub rhs: MuPolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitCheckReport {
    pub n: i64,
    pub order: usize,
    /// `lhs[j][k]`: coefficient of `s^j (B^n_0)^k Φ` on the left side.
    pub lhs: Vec<Vec<MuPolynomial>>,
    pub rhs: Vec<Vec<MuPolynomial>>,
    pub mismatch: Option<SplitMismatch>,
}

impl SplitCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    /// `[s^j] ⟨Φ, e^{s(B^n_0 + B^0_n)}Φ⟩` from the left side.
    pub fn vacuum_series(&self) -> Vec<MuPolynomial> {
        self.lhs.iter().map(|row| row[0].clone()).collect()
    }
}

/// Compares `Σ_j s^j/j! (B^n_0 + B^0_n)^j Φ`, expanded with the truncated
/// engine, against `e^{W(s)} Σ_k V(s)^k/k! (B^n_0)^k Φ` coefficient by
/// coefficient, exactly.
pub fn splitting_series_check(n: i64, order: usize) -> Result<SplitCheckReport> {
    if order > SPLIT_MAX_ORDER {
        return Err(Error::Domain(format!("series order must be ≤ {SPLIT_MAX_ORDER}, got {order}")));
    }
    let sol = riccati_split(n, order)?;

    let creator = WordFactor { n, k: 0, f: IntervalFn::indicator() };
    let annihilator = WordFactor { n: 0, k: n, f: IntervalFn::indicator() };
    let mut state = NumberState::new();
    state.insert(0, crate::poly::ComplexMuPolynomial::one());
    let mut fact = BigRational::one();
    let mut lhs = Vec::with_capacity(order + 1);
    for j in 0..=order {
        if j > 0 {
            let up = truncated_step(n, &creator, &state)?;
            let down = truncated_step(n, &annihilator, &state)?;
            state = up;
            for (k, c) in down {
                let e = state.entry(k).or_insert_with(crate::poly::ComplexMuPolynomial::zero);
                *e = e.clone() + c;
            }
            fact *= int(j as i64);
        }
        let mut row = vec![MuPolynomial::zero(); order + 1];
        for (k, c) in &state {
            let real = c
                .to_real()
                .ok_or_else(|| Error::Numerical("splitting coefficient acquired an imaginary part".into()))?;
            row[*k] = real.scale(&fact.recip());
        }
        lhs.push(row);
    }

    let ew = sol.w.exp();
    let vmu = sol.v.lift(|r| MuPolynomial::constant(r.clone()));
    let mut rhs = vec![vec![MuPolynomial::zero(); order + 1]; order + 1];
    let mut vk = Series::one(order);
    let mut kfact = BigRational::one();
    for k in 0..=order {
        if k > 0 {
            vk = vk.mul(&vmu);
            kfact *= int(k as i64);
        }
        let term = ew.mul(&vk).scale(&kfact.recip());
        for (j, row) in rhs.iter_mut().enumerate() {
            row[k] = term.coeff(j).clone();
        }
    }

    let mut mismatch = None;
    'outer: for j in 0..=order {
        for k in 0..=order {
            if lhs[j][k] != rhs[j][k] {
                mismatch = Some(SplitMismatch { j, k, lhs: lhs[j][k].clone(), rhs: rhs[j][k].clone() });
                break 'outer;
            }
        }
    }
    Ok(SplitCheckReport { n, order, lhs, rhs, mismatch })
}
