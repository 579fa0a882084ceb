//! Classicality of `x(t) = Σ c_{n,k} B^n_k(χ_[0,t])`: self-adjointness and
//! mutual commutativity over a finite set of times.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraElement, AlgebraTag};
use crate::error::{Error, Result};
use crate::number::ComplexRational;
use crate::step::StepFunction;

/// Why a coefficient family fails to be classical.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `c_{n,k} ≠ conj(c_{k,n})`.
    NotHermitian { n: i64, k: i64, c_nk: ComplexRational, c_kn: ComplexRational },
    /// `x(t)* - x(t) ≠ 0`.
    NotSelfAdjoint { t: BigRational, difference: AlgebraElement },
    /// `[x(t), x(s)] ≠ 0`.
    NonCommuting { t: BigRational, s: BigRational, commutator: AlgebraElement },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalVerdict {
    pub classical: bool,
    pub witness: Option<Witness>,
}

/// `x(t)` as an RHPWN element.
pub fn process_element(coeffs: &BTreeMap<(i64, i64), ComplexRational>, t: &BigRational) -> Result<AlgebraElement> {
    let chi = StepFunction::indicator(BigRational::zero(), t.clone())?;
    let mut x = AlgebraElement::zero(AlgebraTag::Rhpwn);
    for (&(n, k), c) in coeffs {
        x = x.add(&AlgebraElement::generator(AlgebraTag::Rhpwn, n, k, chi.scale(c))?)?;
    }
    Ok(x)
}

/// Checks the Hermitian symmetry of the coefficients, then self-adjointness
/// of each `x(t)` and exact vanishing of every `[x(t), x(s)]` in the algebra.
pub fn classical_check(
    coeffs: &BTreeMap<(i64, i64), ComplexRational>,
    horizon: &[BigRational],
) -> Result<ClassicalVerdict> {
    for &(n, k) in coeffs.keys() {
        if n < 0 || k < 0 {
            return Err(Error::Index(format!("coefficient index ({n}, {k}) is negative")));
        }
    }
    for t in horizon {
        if !t.is_positive() {
            return Err(Error::Domain(format!("horizon times must be positive, got {t}")));
        }
    }
    let fail = |w: Witness| Ok(ClassicalVerdict { classical: false, witness: Some(w) });

    let zero = ComplexRational::zero();
    for (&(n, k), c) in coeffs {
        let c_kn = coeffs.get(&(k, n)).unwrap_or(&zero);
        if *c != c_kn.conj() {
            return fail(Witness::NotHermitian { n, k, c_nk: c.clone(), c_kn: c_kn.clone() });
        }
    }

    let xs = horizon
        .iter()
        .map(|t| process_element(coeffs, t))
        .collect::<Result<Vec<_>>>()?;
    for (t, x) in horizon.iter().zip(&xs) {
        let difference = x.involution().sub(x)?;
        if !difference.is_zero() {
            return fail(Witness::NotSelfAdjoint { t: t.clone(), difference });
        }
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let commutator = xs[i].commutator(&xs[j])?;
            if !commutator.is_zero() {
                return fail(Witness::NonCommuting { t: horizon[i].clone(), s: horizon[j].clone(), commutator });
            }
        }
    }
    Ok(ClassicalVerdict { classical: true, witness: None })
}
