//! Reduction of RHPWN words acting on the vacuum to creator-monomial normal
//! form, with and without the truncation of the principal number operator.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number::{int, rat, ComplexRational};
use crate::poly::{ComplexMuPolynomial, MuPolynomial};
use crate::step::StepFunction;

/// Coefficient functions the engine can carry through brackets.
pub trait TestFunction: Clone + Ord + fmt::Debug {
    fn product(&self, other: &Self) -> Self;
    fn conjugate(&self) -> Self;
    /// `∫ f`, as a polynomial in the symbolic measure `μ`.
    fn integral(&self) -> ComplexMuPolynomial;
    fn is_zero(&self) -> bool;
    /// Split `f = c · g` with `g` in a canonical form, so that equal creator
    /// vectors get equal keys.
    fn normalize(&self) -> (ComplexRational, Self);
}

/// `c · χ_I` on the fixed interval `I` of symbolic measure `μ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalFn {
    pub scale: ComplexRational,
}

impl IntervalFn {
    pub fn indicator() -> Self {
        IntervalFn { scale: ComplexRational::one() }
    }

    pub fn scaled(scale: ComplexRational) -> Self {
        IntervalFn { scale }
    }
}

impl TestFunction for IntervalFn {
    fn product(&self, other: &Self) -> Self {
        IntervalFn { scale: &self.scale * &other.scale }
    }
    fn conjugate(&self) -> Self {
        IntervalFn { scale: self.scale.conj() }
    }
    fn integral(&self) -> ComplexMuPolynomial {
        ComplexMuPolynomial::monomial(self.scale.clone(), 1)
    }
    fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }
    fn normalize(&self) -> (ComplexRational, Self) {
        (self.scale.clone(), IntervalFn::indicator())
    }
}

impl fmt::Display for IntervalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}χ_I", self.scale)
    }
}

impl TestFunction for StepFunction {
    fn product(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn integral(&self) -> ComplexMuPolynomial {
        ComplexMuPolynomial::constant(StepFunction::integral(self))
    }
    fn is_zero(&self) -> bool {
        StepFunction::is_zero(self)
    }
    fn normalize(&self) -> (ComplexRational, Self) {
        (ComplexRational::one(), self.clone())
    }
}

/// One factor `B^n_k(f)` of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFactor<F> {
    pub n: i64,
    pub k: i64,
    pub f: F,
}

/// An ordered product of generators; the rightmost factor acts first on Φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word<F> {
    pub factors: Vec<WordFactor<F>>,
}

impl<F: TestFunction> Word<F> {
    pub fn identity() -> Self {
        Word { factors: Vec::new() }
    }

    pub fn new(factors: Vec<WordFactor<F>>) -> Self {
        Word { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Concatenation `self · other` (other acts first).
    pub fn times(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Word { factors }
    }

    /// The adjoint word: reversed, indices swapped, functions conjugated.
    pub fn adjoint(&self) -> Self {
        Word {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|w| WordFactor { n: w.k, k: w.n, f: w.f.conjugate() })
                .collect(),
        }
    }
}

impl Word<IntervalFn> {
    /// Word of unscaled single-interval generators `B^n_k := B^n_k(χ_I)`,
    /// listed left to right.
    pub fn interval(indices: &[(i64, i64)]) -> Self {
        Word {
            factors: indices
                .iter()
                .map(|&(n, k)| WordFactor { n, k, f: IntervalFn::indicator() })
                .collect(),
        }
    }

    /// `(B^n_k)^p`.
    pub fn power(n: i64, k: i64, p: usize) -> Self {
        Self::interval(&vec![(n, k); p])
    }
}

/// A product of creators `Π B^{m_i}_0(g_i)`; creators commute, so the
/// factors are kept sorted.
pub type Monomial<F> = Vec<(i64, F)>;

/// `Σ c_j · (monomial_j) Φ` with `μ`-polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct VacuumState<F: Ord> {
    terms: BTreeMap<Monomial<F>, ComplexMuPolynomial>,
}

impl<F: TestFunction> VacuumState<F> {
    pub fn zero() -> Self {
        VacuumState { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        let mut s = Self::zero();
        s.terms.insert(Vec::new(), ComplexMuPolynomial::one());
        s
    }

    fn push(&mut self, mut mono: Monomial<F>, coeff: ComplexMuPolynomial) {
        if coeff.is_zero() {
            return;
        }
        mono.sort();
        let entry = self.terms.entry(mono).or_insert_with(ComplexMuPolynomial::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<F>, &ComplexMuPolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of Φ itself.
    pub fn vacuum_coefficient(&self) -> ComplexMuPolynomial {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(ComplexMuPolynomial::zero)
    }

    pub fn coefficient(&self, mono: &Monomial<F>) -> ComplexMuPolynomial {
        let mut key = mono.clone();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(ComplexMuPolynomial::zero)
    }
}

impl VacuumState<IntervalFn> {
    /// Re-express in the number basis `(B^n_0)^k Φ`; `None` if a monomial
    /// contains any other creator.
    pub fn to_number_basis(&self, n: i64) -> Option<NumberState> {
        let mut out = NumberState::new();
        for (mono, c) in &self.terms {
            if mono.iter().any(|(m, _)| *m != n) {
                return None;
            }
            out.insert(mono.len(), c.clone());
        }
        Some(out)
    }
}

impl<F: TestFunction + fmt::Display> fmt::Display for VacuumState<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (m, g) in mono {
                write!(f, "·B^{m}_0({g})")?;
            }
            write!(f, "Φ")?;
        }
        Ok(())
    }
}

struct Reducer {
    steps: u128,
}

impl Reducer {
    fn apply<F: TestFunction>(&mut self, factor: &WordFactor<F>, state: &VacuumState<F>) -> VacuumState<F> {
        let mut out = VacuumState::zero();
        for (mono, coeff) in &state.terms {
            self.apply_gen(factor.n, factor.k, &factor.f, coeff.clone(), Vec::new(), mono, &mut out);
        }
        out
    }

    /// `B^x_y(f)` acting on `prefix · rest · Φ`, where `prefix` holds the
    /// creators already commuted past.
    #[allow(clippy::too_many_arguments)]
    fn apply_gen<F: TestFunction>(
        &mut self,
        x: i64,
        y: i64,
        f: &F,
        coeff: ComplexMuPolynomial,
        mut prefix: Monomial<F>,
        rest: &[(i64, F)],
        out: &mut VacuumState<F>,
    ) {
        self.steps += 1;
        if x < 0 || y < 0 || f.is_zero() {
            return;
        }
        if y == 0 {
            prefix.extend(rest.iter().cloned());
            if x == 0 {
                out.push(prefix, coeff * f.integral());
            } else {
                let (c, g) = f.normalize();
                prefix.push((x, g));
                out.push(prefix, coeff.mul_coeff(&c));
            }
            return;
        }
        match rest.split_first() {
            None => {
                // action on the vacuum
                if x > y {
                    let (c, g) = f.normalize();
                    prefix.push((x - y, g));
                    out.push(prefix, coeff.mul_coeff(&c));
                } else if x == y {
                    let c = f.integral().scale(&rat(1, x + 1));
                    out.push(prefix, coeff * c);
                }
            }
            Some(((m, g), tail)) => {
                let mut passed = prefix.clone();
                passed.push((*m, g.clone()));
                self.apply_gen(x, y, f, coeff.clone(), passed, tail, out);
                // [B^x_y(f), B^m_0(g)] = y m B^{x+m-1}_{y-1}(f g)
                let c = coeff.scale(&int(y * m));
                self.apply_gen(x + m - 1, y - 1, &f.product(g), c, prefix, tail, out);
            }
        }
    }
}

/// A-priori bound on the number of elementary rewrite steps for a word of
/// `len` factors: the state after `j` factors has monomials of at most `j`
/// creators, and each creator passed doubles the branches.
pub fn untruncated_step_bound(len: usize) -> u128 {
    let mut terms: u128 = 1;
    let mut total: u128 = 0;
    for j in 0..len.min(120) as u32 {
        let per_term = (1u128 << (j + 1)).saturating_sub(1);
        total = total.saturating_add(terms.saturating_mul(per_term));
        terms = terms.saturating_mul(1u128 << j);
    }
    if len > 120 {
        u128::MAX
    } else {
        total
    }
}

/// Reduce `w Φ` to creator-monomial normal form; also returns the number of
/// elementary steps taken.
pub fn reduce_untruncated_with_stats<F: TestFunction>(w: &Word<F>) -> (VacuumState<F>, u128) {
    let mut r = Reducer { steps: 0 };
    let mut state = VacuumState::vacuum();
    for factor in w.factors.iter().rev() {
        state = r.apply(factor, &state);
        if state.is_zero() {
            break;
        }
    }
    (state, r.steps)
}

/// Reduce `w Φ` by commuting annihilation parts to the right and applying the
/// vacuum action `B^n_k(f)Φ = 0 (n<k)`, `B^{n-k}_0(f)Φ (n>k)`,
/// `(1/(n+1))∫f Φ (n=k)`.
pub fn reduce_untruncated<F: TestFunction>(w: &Word<F>) -> VacuumState<F> {
    reduce_untruncated_with_stats(w).0
}

/// `⟨Φ, w Φ⟩`; nonempty creator monomials pair to zero with Φ.
pub fn vacuum_expectation<F: TestFunction>(w: &Word<F>) -> ComplexMuPolynomial {
    reduce_untruncated(w).vacuum_coefficient()
}

/// State in the number basis: `k ↦` coefficient of `(B^n_0)^k Φ`.
pub type NumberState = BTreeMap<usize, ComplexMuPolynomial>;

/// Eigenvalue of the truncated principal number operator on `(B^n_0)^k Φ`:
/// `μ/n + k n (n-1)`.
pub fn number_eigenvalue(n: i64, k: usize) -> MuPolynomial {
    MuPolynomial::from_coeffs(vec![int(k as i64 * n * (n - 1)), rat(1, n)])
}

/// `B^0_n (B^n_0)^k Φ = n k (μ + (k-1) n²(n-1)/2) (B^n_0)^{k-1} Φ`.
pub fn lowering_factor(n: i64, k: usize) -> MuPolynomial {
    if k == 0 {
        return MuPolynomial::zero();
    }
    let k = k as i64;
    let shift = rat((k - 1) * n * n * (n - 1), 2);
    MuPolynomial::from_coeffs(vec![shift, int(1)]).scale(&int(n * k))
}

/// One truncated factor `B^x_y(c χ_I)`, `(x, y) ∈ {(n,0), (0,n), (n-1,n-1)}`,
/// applied to a state in the basis `(B^n_0)^k Φ`.
pub fn truncated_step(n: i64, factor: &WordFactor<IntervalFn>, state: &NumberState) -> Result<NumberState> {
    if n < 1 {
        return Err(Error::Domain(format!("truncated order must be ≥ 1, got {n}")));
    }
    let scale = &factor.f.scale;
    let mut next = NumberState::new();
    let mut push = |k: usize, c: ComplexMuPolynomial| {
        if c.is_zero() {
            return;
        }
        let e = next.entry(k).or_insert_with(ComplexMuPolynomial::zero);
        *e = e.clone() + c;
    };
    let (x, y) = (factor.n, factor.k);
    if (x, y) == (n, 0) {
        for (k, c) in state {
            push(k + 1, c.mul_coeff(scale));
        }
    } else if (x, y) == (0, n) {
        for (k, c) in state {
            if *k > 0 {
                push(k - 1, c.mul_coeff(scale) * lowering_factor(n, *k).to_complex());
            }
        }
    } else if (x, y) == (n - 1, n - 1) {
        for (k, c) in state {
            push(*k, c.mul_coeff(scale) * number_eigenvalue(n, *k).to_complex());
        }
    } else {
        return Err(Error::UnsupportedGenerator { n: x, k: y, order: n as u32 });
    }
    next.retain(|_, c| !c.is_zero());
    Ok(next)
}

/// Reduce a single-interval word over `{B^n_0, B^0_n, B^{n-1}_{n-1}}` with the
/// truncated action, in the basis `(B^n_0)^k Φ`.
pub fn reduce_truncated(n: i64, w: &Word<IntervalFn>) -> Result<NumberState> {
    let mut state = NumberState::new();
    state.insert(0, ComplexMuPolynomial::one());
    if n < 1 {
        return Err(Error::Domain(format!("truncated order must be ≥ 1, got {n}")));
    }
    for factor in w.factors.iter().rev() {
        state = truncated_step(n, factor, &state)?;
    }
    Ok(state)
}

/// `π_{n,k} = ⟨(B^n_0)^k Φ, (B^n_0)^k Φ⟩ = ⟨Φ, (B^0_n)^k (B^n_0)^k Φ⟩`
/// evaluated with the truncated engine.
pub fn kernel_bruteforce(n: i64, k: usize) -> Result<MuPolynomial> {
    let w = Word::power(0, n, k).times(&Word::power(n, 0, k));
    let state = reduce_truncated(n, &w)?;
    let c = state.get(&0).cloned().unwrap_or_else(ComplexMuPolynomial::zero);
    c.to_real()
        .ok_or_else(|| Error::Numerical("kernel acquired an imaginary part".into()))
}

/// The same kernel through `b_{k+1} = n (k+1)(μ + k n²(n-1)/2) b_k`, `b_0 = 1`.
pub fn kernel_recursion(n: i64, k: usize) -> MuPolynomial {
    (0..k).fold(MuPolynomial::one(), |b, j| b * lowering_factor(n, j + 1))
}
