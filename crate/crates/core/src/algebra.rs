//! Exact RHPWN and w∞ *-Lie algebras over step-function test functions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::ComplexRational;
use crate::step::StepFunction;

/// Which bracket a generator obeys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    /// Renormalized higher powers of white noise, `B^n_k` with `n, k ≥ 0`.
    #[serde(rename = "RHPWN")]
    Rhpwn,
    /// Virasoro–Zamolodchikov–w∞, `B̂^n_k` with `n ≥ 2`, `k ∈ ℤ`.
    #[serde(rename = "WINFTY")]
    Winfty,
}

/// `(tag, n, k)` labelling the generator `B^n_k` or `B̂^n_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorIndex {
    pub tag: AlgebraTag,
    pub n: i64,
    pub k: i64,
}

impl GeneratorIndex {
    /// Validate an index. `Ok(None)` means the generator is zero by the
    /// convention `B^n_k := 0` for negative RHPWN indices.
    pub fn new(tag: AlgebraTag, n: i64, k: i64) -> Result<Option<Self>> {
        match tag {
            AlgebraTag::Rhpwn if n < 0 || k < 0 => Ok(None),
            AlgebraTag::Winfty if n < 2 => Err(Error::Index(format!(
                "w∞ generators need conformal weight n ≥ 2, got n = {n}"
            ))),
            _ => Ok(Some(GeneratorIndex { tag, n, k })),
        }
    }

    /// Structure constant and resulting index of `[self, other]`.
    pub fn bracket(&self, other: &GeneratorIndex) -> (i64, i64, i64) {
        let (n, k, big_n, big_k) = (self.n, self.k, other.n, other.k);
        match self.tag {
            AlgebraTag::Rhpwn => (k * big_n - big_k * n, n + big_n - 1, k + big_k - 1),
            AlgebraTag::Winfty => ((big_n - 1) * k - (n - 1) * big_k, n + big_n - 2, k + big_k),
        }
    }

    /// Index of the adjoint generator.
    pub fn adjoint(&self) -> GeneratorIndex {
        match self.tag {
            AlgebraTag::Rhpwn => GeneratorIndex { tag: self.tag, n: self.k, k: self.n },
            AlgebraTag::Winfty => GeneratorIndex { tag: self.tag, n: self.n, k: -self.k },
        }
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            AlgebraTag::Rhpwn => write!(f, "B^{}_{}", self.n, self.k),
            AlgebraTag::Winfty => write!(f, "B̂^{}_{}", self.n, self.k),
        }
    }
}

/// A finite linear combination `Σ B^n_k(f_{n,k})`, plus a scalar for the
/// central element `B^0_0(f) = ∫ f`.
///
/// Terms with zero coefficient functions are never stored, so equal
/// elements compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    tag: AlgebraTag,
    scalar: ComplexRational,
    terms: BTreeMap<(i64, i64), StepFunction>,
}

impl AlgebraElement {
    pub fn zero(tag: AlgebraTag) -> Self {
        AlgebraElement { tag, scalar: ComplexRational::zero(), terms: BTreeMap::new() }
    }

    pub fn scalar(tag: AlgebraTag, c: ComplexRational) -> Self {
        AlgebraElement { scalar: c, ..Self::zero(tag) }
    }

    /// The single generator `B^n_k(f)`.
    pub fn generator(tag: AlgebraTag, n: i64, k: i64, f: StepFunction) -> Result<Self> {
        let mut out = Self::zero(tag);
        if let Some(idx) = GeneratorIndex::new(tag, n, k)? {
            out.add_term(idx.n, idx.k, f);
        }
        Ok(out)
    }

    fn add_term(&mut self, n: i64, k: i64, f: StepFunction) {
        if f.is_zero() {
            return;
        }
        if self.tag == AlgebraTag::Rhpwn && n == 0 && k == 0 {
            self.scalar += f.integral();
            return;
        }
        let merged = match self.terms.remove(&(n, k)) {
            Some(g) => g.add(&f),
            None => f,
        };
        if !merged.is_zero() {
            self.terms.insert((n, k), merged);
        }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    /// Coefficient of the identity (the `B^0_0` part).
    pub fn scalar_part(&self) -> &ComplexRational {
        &self.scalar
    }

    /// Non-scalar terms, ordered by `(n, k)`.
    pub fn terms(&self) -> impl Iterator<Item = (GeneratorIndex, &StepFunction)> {
        let tag = self.tag;
        self.terms.iter().map(move |(&(n, k), f)| (GeneratorIndex { tag, n, k }, f))
    }

    pub fn coefficient(&self, n: i64, k: i64) -> Option<&StepFunction> {
        self.terms.get(&(n, k))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len() + usize::from(!self.scalar.is_zero())
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch { left: self.tag, right: other.tag });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let mut out = self.clone();
        out.scalar += other.scalar.clone();
        for (&(n, k), f) in &other.terms {
            out.add_term(n, k, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        let mut out = Self::scalar(self.tag, &self.scalar * c);
        for (&(n, k), f) in &self.terms {
            out.add_term(n, k, f.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&ComplexRational::from_int(-1)))
    }

    /// The Lie bracket, extended bilinearly. The scalar part is central.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let mut out = Self::zero(self.tag);
        for (a, g) in self.terms() {
            for (b, f) in other.terms() {
                let (c, n, k) = a.bracket(&b);
                if c == 0 {
                    continue;
                }
                let Some(idx) = GeneratorIndex::new(self.tag, n, k)? else { continue };
                out.add_term(idx.n, idx.k, g.mul(f).scale(&ComplexRational::from_int(c)));
            }
        }
        Ok(out)
    }

    /// The *-involution: `B^n_k(f)* = B^k_n(f̄)`, `B̂^n_k(f)* = B̂^n_{-k}(f̄)`.
    pub fn involution(&self) -> Self {
        let mut out = Self::scalar(self.tag, self.scalar.conj());
        for (idx, f) in self.terms() {
            let adj = idx.adjoint();
            out.add_term(adj.n, adj.k, f.conj());
        }
        out
    }
}

/// Free-function form of [`AlgebraElement::commutator`].
pub fn commutator(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.commutator(b)
}

/// Free-function form of [`AlgebraElement::involution`].
pub fn involution(a: &AlgebraElement) -> AlgebraElement {
    a.involution()
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.scalar.is_zero() {
            write!(f, "{}", self.scalar)?;
            first = false;
        }
        for (idx, g) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{idx}({g})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;

    fn chi(a: i64, b: i64) -> StepFunction {
        StepFunction::indicator(int(a), int(b)).unwrap()
    }

    fn gen(tag: AlgebraTag, n: i64, k: i64, f: &StepFunction) -> AlgebraElement {
        AlgebraElement::generator(tag, n, k, f.clone()).unwrap()
    }

    #[test]
    fn heisenberg_bracket_gives_scalar() {
        let f = chi(1, 3);
        let g = StepFunction::constant_on(int(2), int(5), ComplexRational::from_int(4)).unwrap();
        let c = gen(AlgebraTag::Rhpwn, 0, 1, &f)
            .commutator(&gen(AlgebraTag::Rhpwn, 1, 0, &g))
            .unwrap();
        // B^0_0(fg) = ∫ fg = 4
        assert_eq!(c, AlgebraElement::scalar(AlgebraTag::Rhpwn, ComplexRational::from_int(4)));
    }

    #[test]
    fn annihilator_creator_bracket_is_n_squared_number_operator() {
        let f = chi(1, 2);
        for n in 1..=6 {
            let c = gen(AlgebraTag::Rhpwn, 0, n, &f)
                .commutator(&gen(AlgebraTag::Rhpwn, n, 0, &f))
                .unwrap();
            let expected = gen(AlgebraTag::Rhpwn, n - 1, n - 1, &f.scale(&ComplexRational::from_int(n * n)));
            assert_eq!(c, expected);
        }
    }

    #[test]
    fn virasoro_sector() {
        let f = chi(1, 2);
        let g = chi(-3, -1);
        for (k, big_k) in [(3, -1), (-2, 5), (0, 4)] {
            let c = gen(AlgebraTag::Winfty, 2, k, &g)
                .commutator(&gen(AlgebraTag::Winfty, 2, big_k, &f))
                .unwrap();
            let expected = gen(AlgebraTag::Winfty, 2, k + big_k, &g.mul(&f).scale(&ComplexRational::from_int(k - big_k)));
            assert_eq!(c, expected);
        }
    }

    #[test]
    fn diagonal_bracket_vanishes() {
        let f = chi(1, 2);
        let g = chi(1, 4);
        assert!(gen(AlgebraTag::Rhpwn, 3, 2, &f).commutator(&gen(AlgebraTag::Rhpwn, 3, 2, &g)).unwrap().is_zero());
    }

    #[test]
    fn involution_examples() {
        let f = StepFunction::constant_on(int(1), int(2), ComplexRational::new(int(1), int(2))).unwrap();
        assert_eq!(gen(AlgebraTag::Rhpwn, 3, 1, &f).involution(), gen(AlgebraTag::Rhpwn, 1, 3, &f.conj()));
        assert_eq!(gen(AlgebraTag::Winfty, 4, 2, &f).involution(), gen(AlgebraTag::Winfty, 4, -2, &f.conj()));
    }

    #[test]
    fn index_conventions() {
        assert!(gen(AlgebraTag::Rhpwn, -1, 2, &chi(1, 2)).is_zero());
        assert!(AlgebraElement::generator(AlgebraTag::Winfty, 1, 0, chi(1, 2)).is_err());
        let a = gen(AlgebraTag::Rhpwn, 1, 0, &chi(1, 2));
        let b = gen(AlgebraTag::Winfty, 2, 0, &chi(1, 2));
        assert!(matches!(a.commutator(&b), Err(Error::TagMismatch { .. })));
    }
}
