//! Exponential vectors, their directional-derivative jets, and the action of
//! the represented operators on finite sums of jets.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number::{int, rat, ComplexRational};
use crate::step::StepFunction;

use super::{check_admissible, kernel_constant, kernel_exponent};

/// `ψ_n(f)`; `ψ_n(0) = Φ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentialVector {
    n: i64,
    f: StepFunction,
}

impl ExponentialVector {
    pub fn new(n: i64, f: StepFunction) -> Result<Self> {
        check_admissible(n, &f)?;
        Ok(ExponentialVector { n, f })
    }

    pub fn vacuum(n: i64) -> Result<Self> {
        Self::new(n, StepFunction::zero())
    }

    pub fn order(&self) -> i64 {
        self.n
    }

    pub fn function(&self) -> &StepFunction {
        &self.f
    }
}

/// `∂_{ε_1} … ∂_{ε_r} ψ_n(f + Σ ε_i d_i)` at `ε = 0`, `r ≤ 2`.
///
/// Directions are not subject to the sup-norm bound: only the base point
/// enters the kernel.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVector {
    base: ExponentialVector,
    directions: Vec<StepFunction>,
}

impl JetVector {
    pub fn new(base: ExponentialVector, mut directions: Vec<StepFunction>) -> Result<Self> {
        if directions.len() > 2 {
            return Err(Error::UnsupportedOrder(directions.len()));
        }
        directions.sort();
        Ok(JetVector { base, directions })
    }

    pub fn exponential(base: ExponentialVector) -> Self {
        JetVector { base, directions: Vec::new() }
    }

    pub fn base(&self) -> &ExponentialVector {
        &self.base
    }

    pub fn directions(&self) -> &[StepFunction] {
        &self.directions
    }

    pub fn order(&self) -> usize {
        self.directions.len()
    }

    pub fn fock_order(&self) -> i64 {
        self.base.n
    }

    fn with(&self, extra: &[StepFunction]) -> Result<Self> {
        let mut d = self.directions.clone();
        d.extend(extra.iter().cloned());
        JetVector::new(self.base.clone(), d)
    }

    fn is_zero(&self) -> bool {
        self.directions.iter().any(StepFunction::is_zero)
    }
}

/// A finite linear combination of jets with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<JetVector, ComplexRational>,
}

/// Rescale a nonzero direction so its first piece has value 1.
fn normalize_direction(d: &StepFunction) -> (ComplexRational, StepFunction) {
    match d.pieces().first().and_then(|p| p.value.inv().map(|inv| (p.value.clone(), inv))) {
        Some((v, inv)) => (v, d.scale(&inv)),
        None => (ComplexRational::one(), d.clone()),
    }
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_jet(jet: JetVector) -> Self {
        let mut v = Self::zero();
        v.add_term(ComplexRational::one(), jet);
        v
    }

    pub fn exponential(base: ExponentialVector) -> Self {
        Self::from_jet(JetVector::exponential(base))
    }

    /// Adds `c · jet`, using multilinearity in the directions to keep one
    /// representative per jet.
    pub fn add_term(&mut self, mut c: ComplexRational, jet: JetVector) {
        if c.is_zero() || jet.is_zero() {
            return;
        }
        let mut dirs = Vec::with_capacity(jet.directions.len());
        for d in &jet.directions {
            let (s, d) = normalize_direction(d);
            c = c * s;
            dirs.push(d);
        }
        dirs.sort();
        let key = JetVector { base: jet.base, directions: dirs };
        let entry = self.terms.entry(key.clone()).or_insert_with(ComplexRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetVector, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, c) in &other.terms {
            out.add_term(c.clone(), j.clone());
        }
        out
    }

    pub fn scale(&self, s: &ComplexRational) -> Self {
        let mut out = Self::zero();
        for (j, c) in &self.terms {
            out.add_term(c * s, j.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-ComplexRational::one()))
    }

    /// `⟨self, other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                acc += (a.conj() * b.clone()).to_c64() * jet_inner_product(u, v)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·ψ_{}({})", j.base.n, j.base.f)?;
            for d in &j.directions {
                write!(f, "[∂ {d}]")?;
            }
        }
        Ok(())
    }
}

fn same_order(n: i64, v: &JetVector) -> Result<()> {
    if v.base.n != n {
        return Err(Error::Domain(format!(
            "operator on F_{n} applied to a vector of F_{}",
            v.base.n
        )));
    }
    Ok(())
}

/// `B^n_0(f)` on a jet: one more directional derivative in direction `f`.
pub fn apply_creator(n: i64, f: &StepFunction, v: &JetVector) -> Result<JetVector> {
    same_order(n, v)?;
    if v.order() >= 2 {
        return Err(Error::UnsupportedOrder(v.order() + 1));
    }
    v.with(std::slice::from_ref(f))
}

/// `B^0_n(f)` on a jet of order ≤ 1:
/// `B^0_n(f)ψ(h) = n∫fh ψ(h) + c_n ∂_{f h²} ψ(h)`, and its derivative along `d`
/// for first-order jets.
pub fn apply_annihilator(n: i64, f: &StepFunction, v: &JetVector) -> Result<FockVector> {
    same_order(n, v)?;
    let h = &v.base.f;
    let c = ComplexRational::real(kernel_constant(n));
    let nn = ComplexRational::from_int(n);
    let fh = f.mul(h);
    let fhh = fh.mul(h);
    let plain = JetVector::exponential(v.base.clone());
    let mut out = FockVector::zero();
    match v.directions.as_slice() {
        [] => {
            out.add_term(&nn * &fh.integral(), plain.clone());
            out.add_term(c, plain.with(&[fhh])?);
        }
        [d] => {
            out.add_term(&nn * &f.mul(d).integral(), plain.clone());
            out.add_term(&nn * &fh.integral(), v.clone());
            out.add_term(c.clone(), plain.with(&[d.clone(), fhh])?);
            let two = ComplexRational::from_int(2);
            out.add_term(c, plain.with(&[fh.mul(d).scale(&two)])?);
        }
        _ => return Err(Error::UnsupportedOrder(v.order())),
    }
    Ok(out)
}

/// `B^{n-1}_{n-1}(fg)` on `ψ_n(h)`:
/// `(1/n)∫fg ψ(h) + (n(n-1)/2)[∂_g∂_{fh²}ψ(h) + ∂_{2fhg}ψ(h) - ∂_{fh²}∂_g ψ(h)]`.
/// The two second-order terms cancel once merged.
pub fn apply_number(n: i64, f: &StepFunction, g: &StepFunction, v: &JetVector) -> Result<FockVector> {
    same_order(n, v)?;
    if v.order() > 0 {
        return Err(Error::UnsupportedOrder(v.order() + 2));
    }
    let h = &v.base.f;
    let fhh = f.mul(h).mul(h);
    let w = ComplexRational::real(rat(n * (n - 1), 2));
    let mut out = FockVector::zero();
    out.add_term(f.mul(g).integral().scale(&rat(1, n)), v.clone());
    out.add_term(w.clone(), v.with(&[g.clone(), fhh.clone()])?);
    out.add_term(w.clone(), v.with(&[f.mul(h).mul(g).scale(&ComplexRational::from_int(2))])?);
    out.add_term(-w, v.with(&[fhh, g.clone()])?);
    Ok(out)
}

/// Set partitions of the bits of `mask`, each block a bitmask.
fn partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let first = mask & mask.wrapping_neg();
    let rest = mask & !first;
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        let block = first | sub;
        for mut p in partitions(rest & !sub) {
            p.push(block);
            out.push(p);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// `ℓ^{(m)}(z) = n (m-1)! c^{m-1} (1 - c z)^{-m}`, where `ℓ(z) = z` for `n = 1`
/// and `-2/(n²(n-1)) ln(1 - c z)` otherwise.
fn log_kernel_derivative(n: i64, c: &BigRational, m: usize, z: &ComplexRational) -> Result<ComplexRational> {
    let inv = (ComplexRational::one() - z.scale(c))
        .inv()
        .ok_or_else(|| Error::Domain("kernel singular at a jet base".into()))?;
    let mut out = ComplexRational::from_int(n);
    for i in 1..m {
        out = out.scale(&(c * int(i as i64)));
    }
    for _ in 0..m {
        out = out * inv.clone();
    }
    Ok(out)
}

/// `⟨u, v⟩`: the mixed derivative of `K_n(φ + Σε_i d_i, g + Ση_j e_j)` in all
/// jet variables at zero. Writing `K = e^Z`, the derivative is `e^Z` times a sum
/// over set partitions of products of partial derivatives of `Z`, each an exact
/// piecewise integral. Vectors of different Fock orders are orthogonal.
pub fn jet_inner_product(u: &JetVector, v: &JetVector) -> Result<Complex64> {
    let n = u.base.n;
    if n != v.base.n {
        return Ok(Complex64::zero());
    }
    let (a, b) = (u.order(), v.order());
    let vars = a + b;
    let c = if n == 1 { BigRational::zero() } else { kernel_constant(n) };
    let phi = &u.base.f;
    let g = &v.base.f;
    let mut fns: Vec<&StepFunction> = vec![phi, g];
    fns.extend(u.directions.iter());
    fns.extend(v.directions.iter());
    let cells = StepFunction::refine(&fns);

    // ∂_B w for the bilinear w = conj(φ + εd)(g + ηe), per cell.
    let dw = |vals: &[ComplexRational], block: u32| -> ComplexRational {
        let eps: Vec<usize> = (0..a).filter(|i| block & (1 << i) != 0).collect();
        let eta: Vec<usize> = (0..b).filter(|j| block & (1 << (a + j)) != 0).collect();
        match (eps.as_slice(), eta.as_slice()) {
            ([i], []) => vals[2 + i].conj() * vals[1].clone(),
            ([], [j]) => vals[0].conj() * vals[2 + a + j].clone(),
            ([i], [j]) => vals[2 + i].conj() * vals[2 + a + j].clone(),
            _ => ComplexRational::zero(),
        }
    };

    let full: u32 = (1u32 << vars) - 1;
    let mut dz: BTreeMap<u32, ComplexRational> = BTreeMap::new();
    for block in 1..=full {
        if block & !full != 0 {
            continue;
        }
        let mut total = ComplexRational::zero();
        for (s, e, vals) in &cells {
            let w0 = vals[0].conj() * vals[1].clone();
            let mut cell = ComplexRational::zero();
            for p in partitions(block) {
                let mut term = ComplexRational::one();
                for &beta in &p {
                    term = term * dw(vals, beta);
                    if term.is_zero() {
                        break;
                    }
                }
                if term.is_zero() {
                    continue;
                }
                cell += term * log_kernel_derivative(n, &c, p.len(), &w0)?;
            }
            total += cell.scale(&(e - s));
        }
        dz.insert(block, total);
    }

    let mut poly = ComplexRational::zero();
    for p in partitions(full) {
        let mut term = ComplexRational::one();
        for beta in &p {
            term = term * dz[beta].clone();
        }
        poly += term;
    }
    Ok(kernel_exponent(n, phi, g).exp() * poly.to_c64())
}

/// A represented operator on `F_order`.
#[derive(Clone, Debug, PartialEq)]
pub enum FockOperator {
    Creator(StepFunction),
    Annihilator(StepFunction),
    /// `scale · (left·right − right·left)`.
    Commutator { scale: BigRational, left: Box<RepresentedOperator>, right: Box<RepresentedOperator> },
}

/// The operator standing for `B^{index.0}_{index.1}(function)` on `F_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentedOperator {
    pub order: i64,
    pub index: (i64, i64),
    pub function: StepFunction,
    pub op: FockOperator,
}

impl RepresentedOperator {
    pub fn creator(m: i64, f: StepFunction) -> Self {
        RepresentedOperator { order: m, index: (m, 0), function: f.clone(), op: FockOperator::Creator(f) }
    }

    pub fn annihilator(m: i64, f: StepFunction) -> Self {
        RepresentedOperator { order: m, index: (0, m), function: f.clone(), op: FockOperator::Annihilator(f) }
    }

    /// `B^n_k(g)` and `B^N_K(f)` combine into
    /// `B^{n+N-1}_{k+K-1}(gf) := (kN - Kn)^{-1} [B^n_k(g), B^N_K(f)]`.
    pub fn bracket(left: RepresentedOperator, right: RepresentedOperator) -> Result<Self> {
        if left.order != right.order {
            return Err(Error::Domain(format!(
                "operators on F_{} and F_{} do not compose",
                left.order, right.order
            )));
        }
        let (n, k) = left.index;
        let (big_n, big_k) = right.index;
        let d = k * big_n - big_k * n;
        if d == 0 {
            return Err(Error::PrescriptionInapplicable { n, k, big_n, big_k });
        }
        Ok(RepresentedOperator {
            order: left.order,
            index: (n + big_n - 1, k + big_k - 1),
            function: left.function.mul(&right.function),
            op: FockOperator::Commutator { scale: rat(1, d), left: Box::new(left), right: Box::new(right) },
        })
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        match &self.op {
            FockOperator::Creator(f) => {
                for (j, c) in v.terms() {
                    out.add_term(c.clone(), apply_creator(self.order, f, j)?);
                }
            }
            FockOperator::Annihilator(f) => {
                for (j, c) in v.terms() {
                    out = out.add(&apply_annihilator(self.order, f, j)?.scale(c));
                }
            }
            FockOperator::Commutator { scale, left, right } => {
                let lr = left.apply(&right.apply(v)?)?;
                let rl = right.apply(&left.apply(v)?)?;
                out = lr.sub(&rl).scale(&ComplexRational::real(scale.clone()));
            }
        }
        Ok(out)
    }
}

fn primitive(m: i64, n: i64, k: i64, f: &StepFunction) -> Result<RepresentedOperator> {
    match (n, k) {
        _ if (n, k) == (m, 0) => Ok(RepresentedOperator::creator(m, f.clone())),
        _ if (n, k) == (0, m) => Ok(RepresentedOperator::annihilator(m, f.clone())),
        _ => Err(Error::UnsupportedGenerator { n, k, order: m as u32 }),
    }
}

/// Builds the representation of `B^{n+N-1}_{k+K-1}(gf)` on `F_m` from the
/// represented factors `B^n_k(g)` and `B^N_K(f)`, each of which must be the
/// creator `B^m_0` or annihilator `B^0_m`. The prescription is not claimed to
/// be independent of the chosen factorization.
#[allow(clippy::too_many_arguments)]
pub fn generic_rep_build(
    m: i64,
    n: i64,
    k: i64,
    big_n: i64,
    big_k: i64,
    g: &StepFunction,
    f: &StepFunction,
) -> Result<RepresentedOperator> {
    if k * big_n - big_k * n == 0 {
        return Err(Error::PrescriptionInapplicable { n, k, big_n, big_k });
    }
    RepresentedOperator::bracket(primitive(m, n, k, g)?, primitive(m, big_n, big_k, f)?)
}
