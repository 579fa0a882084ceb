//! JSON encodings of the algebraic objects, with conversions that report
//! failures at a JSON-pointer location.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rhpwn_core::number::parse_rational;
use rhpwn_core::rewrite::{IntervalFn, Monomial, NumberState, TestFunction, VacuumState, Word, WordFactor};
use rhpwn_core::{AlgebraElement, AlgebraTag, ComplexMuPolynomial, ComplexRational, MuPolynomial, Piece, StepFunction};

/// An input error located by a JSON pointer into the payload.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "at {}: {}", self.pointer, self.message)
        }
    }
}

fn schema(pointer: impl Into<String>, message: impl std::fmt::Display) -> SchemaError {
    SchemaError { pointer: pointer.into(), message: message.to_string() }
}

/// Deserialize `text` into `T`, locating failures by JSON pointer.
pub fn parse_payload<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let mut pointer = String::new();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => pointer.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
                Segment::Enum { variant } => pointer.push_str(&format!("/{variant}")),
                Segment::Unknown => {}
            }
        }
        schema(pointer, e.into_inner())
    })
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub a: String,
    pub b: String,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

/// One term `B^n_k(f)` of an element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub tag: AlgebraTag,
    pub n: i64,
    pub k: i64,
    pub pieces: Vec<PieceJson>,
}

/// A word factor; `function` absent means `χ_I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub n: i64,
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
}

/// Exactly one of `scale` (the symbolic `c·χ_I`) or `pieces` (a concrete
/// step function).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<ComplexJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pieces: Option<Vec<PieceJson>>,
}

pub fn rational(s: &str, pointer: &str) -> Result<BigRational, SchemaError> {
    parse_rational(s).map_err(|e| schema(pointer, e))
}

pub fn complex_from_json(c: &ComplexJson, pointer: &str) -> Result<ComplexRational, SchemaError> {
    Ok(ComplexRational::new(
        rational(&c.re, &format!("{pointer}/re"))?,
        rational(&c.im, &format!("{pointer}/im"))?,
    ))
}

pub fn complex_to_json(c: &ComplexRational) -> ComplexJson {
    ComplexJson { re: c.re.to_string(), im: c.im.to_string() }
}

/// `"p/q"` for real values, `"p/q+r/si"` otherwise.
pub fn complex_to_string(c: &ComplexRational) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.im.is_negative() {
        format!("{}-{}i", c.re, -c.im.clone())
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

pub fn complex_from_string(s: &str, pointer: &str) -> Result<ComplexRational, SchemaError> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(ComplexRational::real(rational(s, pointer)?));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(|| schema(pointer, format!("expected re+imi, got {s:?}")))?;
    let re = rational(&body[..split], pointer)?;
    let im = rational(body[split..].trim_start_matches('+'), pointer)?;
    Ok(ComplexRational::new(re, im))
}

pub fn step_from_json(pieces: &[PieceJson], pointer: &str) -> Result<StepFunction, SchemaError> {
    let mut out = Vec::with_capacity(pieces.len());
    for (i, p) in pieces.iter().enumerate() {
        let at = format!("{pointer}/{i}");
        out.push(Piece::new(
            rational(&p.a, &format!("{at}/a"))?,
            rational(&p.b, &format!("{at}/b"))?,
            ComplexRational::new(rational(&p.re, &format!("{at}/re"))?, rational(&p.im, &format!("{at}/im"))?),
        ));
    }
    StepFunction::new(out).map_err(|e| schema(pointer, e))
}

pub fn step_to_json(f: &StepFunction) -> Vec<PieceJson> {
    f.pieces()
        .iter()
        .map(|p| PieceJson { a: p.start.to_string(), b: p.end.to_string(), re: p.value.re.to_string(), im: p.value.im.to_string() })
        .collect()
}

/// Parses an element; an empty list is the zero element of `default_tag`.
pub fn element_from_json(terms: &[TermJson], default_tag: AlgebraTag, pointer: &str) -> Result<AlgebraElement, SchemaError> {
    let tag = terms.first().map(|t| t.tag).unwrap_or(default_tag);
    let mut out = AlgebraElement::zero(tag);
    for (i, t) in terms.iter().enumerate() {
        let at = format!("{pointer}/{i}");
        if t.tag != tag {
            return Err(schema(format!("{at}/tag"), format!("mixed algebra tags {tag:?} and {:?}", t.tag)));
        }
        let f = step_from_json(&t.pieces, &format!("{at}/pieces"))?;
        let g = AlgebraElement::generator(tag, t.n, t.k, f).map_err(|e| schema(at.clone(), e))?;
        out = out.add(&g).map_err(|e| schema(at, e))?;
    }
    Ok(out)
}

/// Non-scalar terms in index order, preceded by the scalar part as
/// `B^0_0(c χ_[0,1))`.
pub fn element_to_json(x: &AlgebraElement) -> Vec<TermJson> {
    let mut out = Vec::new();
    if !x.scalar_part().is_zero() {
        let c = x.scalar_part();
        out.push(TermJson {
            tag: x.tag(),
            n: 0,
            k: 0,
            pieces: vec![PieceJson { a: "0".into(), b: "1".into(), re: c.re.to_string(), im: c.im.to_string() }],
        });
    }
    for (idx, f) in x.terms() {
        out.push(TermJson { tag: idx.tag, n: idx.n, k: idx.k, pieces: step_to_json(f) });
    }
    out
}

/// A word over symbolic single-interval functions or over concrete step
/// functions; the two kinds cannot be mixed.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedWord {
    Interval(Word<IntervalFn>),
    Concrete(Word<StepFunction>),
}

pub fn word_from_json(factors: &[FactorJson], pointer: &str) -> Result<ParsedWord, SchemaError> {
    let mut interval = Vec::new();
    let mut concrete = Vec::new();
    for (i, fac) in factors.iter().enumerate() {
        let at = format!("{pointer}/{i}");
        if fac.n < 0 || fac.k < 0 {
            return Err(schema(at, "word indices must be nonnegative"));
        }
        match &fac.function {
            None => interval.push(WordFactor { n: fac.n, k: fac.k, f: IntervalFn::indicator() }),
            Some(FunctionSpec { scale: Some(c), pieces: None }) => {
                let c = complex_from_json(c, &format!("{at}/function/scale"))?;
                interval.push(WordFactor { n: fac.n, k: fac.k, f: IntervalFn::scaled(c) });
            }
            Some(FunctionSpec { scale: None, pieces: Some(p) }) => {
                let f = step_from_json(p, &format!("{at}/function/pieces"))?;
                concrete.push(WordFactor { n: fac.n, k: fac.k, f });
            }
            Some(_) => return Err(schema(format!("{at}/function"), "give exactly one of \"scale\" or \"pieces\"")),
        }
        if !interval.is_empty() && !concrete.is_empty() {
            return Err(schema(at, "a word cannot mix symbolic χ_I factors with concrete step functions"));
        }
    }
    Ok(if concrete.is_empty() { ParsedWord::Interval(Word::new(interval)) } else { ParsedWord::Concrete(Word::new(concrete)) })
}

pub fn word_to_json(w: &ParsedWord) -> Vec<FactorJson> {
    match w {
        ParsedWord::Interval(w) => w
            .factors
            .iter()
            .map(|f| FactorJson {
                n: f.n,
                k: f.k,
                function: Some(FunctionSpec { scale: Some(complex_to_json(&f.f.scale)), pieces: None }),
            })
            .collect(),
        ParsedWord::Concrete(w) => w
            .factors
            .iter()
            .map(|f| FactorJson {
                n: f.n,
                k: f.k,
                function: Some(FunctionSpec { scale: None, pieces: Some(step_to_json(&f.f)) }),
            })
            .collect(),
    }
}

pub fn mu_poly_to_json(p: &ComplexMuPolynomial) -> Vec<String> {
    p.coeffs().iter().map(complex_to_string).collect()
}

pub fn real_mu_poly_to_json(p: &MuPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn mu_poly_from_json(cs: &[String], pointer: &str) -> Result<ComplexMuPolynomial, SchemaError> {
    let coeffs = cs
        .iter()
        .enumerate()
        .map(|(i, c)| complex_from_string(c, &format!("{pointer}/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexMuPolynomial::from_coeffs(coeffs))
}

/// Creator monomials of a reduced state with their coefficients.
pub trait FunctionJson: TestFunction {
    fn function_json(&self) -> Value;
}

impl FunctionJson for IntervalFn {
    fn function_json(&self) -> Value {
        json!({ "scale": complex_to_json(&self.scale) })
    }
}

impl FunctionJson for StepFunction {
    fn function_json(&self) -> Value {
        json!({ "pieces": step_to_json(self) })
    }
}

fn monomial_json<F: FunctionJson>(m: &Monomial<F>) -> Value {
    Value::Array(m.iter().map(|(deg, f)| json!({ "m": deg, "function": f.function_json() })).collect())
}

pub fn vacuum_state_to_json<F: FunctionJson>(s: &VacuumState<F>) -> Value {
    Value::Array(
        s.terms()
            .map(|(m, c)| json!({ "monomial": monomial_json(m), "mu_poly": mu_poly_to_json(c) }))
            .collect(),
    )
}

pub fn number_state_to_json(s: &NumberState) -> Value {
    Value::Array(s.iter().map(|(k, c)| json!({ "k": k, "mu_poly": mu_poly_to_json(c) })).collect())
}

/// A coefficient `c_{n,k}` of a process `x(t) = Σ c_{n,k} B^n_k(χ_[0,t])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientJson {
    pub n: i64,
    pub k: i64,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

pub fn coefficients_from_json(
    cs: &[CoefficientJson],
    pointer: &str,
) -> Result<BTreeMap<(i64, i64), ComplexRational>, SchemaError> {
    let mut out = BTreeMap::new();
    for (i, c) in cs.iter().enumerate() {
        let at = format!("{pointer}/{i}");
        let v = ComplexRational::new(rational(&c.re, &format!("{at}/re"))?, rational(&c.im, &format!("{at}/im"))?);
        if out.insert((c.n, c.k), v).is_some() {
            return Err(schema(at, format!("duplicate coefficient for ({}, {})", c.n, c.k)));
        }
    }
    Ok(out)
}
