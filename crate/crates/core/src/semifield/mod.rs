//! The three semifields the coefficient dynamics runs in: tropical
//! monomials, subtraction-free rational functions, and positive reals.

pub mod poly;
pub mod rational;
pub mod tropical;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use poly::Poly;
pub use rational::{rat_equal, PosRational};
pub use tropical::{monomial_sign, trop_add, MonomialSign, TropMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Tropical,
    Symbolic,
    Numeric,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Tropical => "tropical",
            Backend::Symbolic => "symbolic",
            Backend::Numeric => "numeric",
        })
    }
}

/// A semifield element: a multiplicative group with a compatible addition
/// `⊕`.
pub trait Semifield: Clone + fmt::Debug + Send + Sync {
    const BACKEND: Backend;

    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    /// The multiplicative identity over the same index set.
    fn one_like(&self) -> Self;

    /// `1 ⊕ self`.
    fn one_plus(&self) -> Self {
        self.one_like().add(self)
    }

    /// `self / (1 ⊕ self)`.
    fn over_one_plus(&self) -> Self {
        self.mul(&self.one_plus().inv())
    }

    fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        (0..n.unsigned_abs()).fold(self.one_like(), |acc, _| acc.mul(&base))
    }

    /// False when the value left the semifield (non-finite reals).
    fn is_well_formed(&self) -> bool {
        true
    }

    /// Equality: exact for the algebraic backends, relative tolerance for
    /// the numeric one.
    fn agrees_with(&self, other: &Self, rel_tol: f64) -> bool;

    /// The value as a real number, for backends that have one.
    fn as_f64(&self) -> Option<f64> {
        None
    }
}

impl Semifield for TropMonomial {
    const BACKEND: Backend = Backend::Tropical;

    fn mul(&self, other: &Self) -> Self {
        TropMonomial::mul(self, other)
    }
    fn inv(&self) -> Self {
        TropMonomial::inv(self)
    }
    fn add(&self, other: &Self) -> Self {
        trop_add(self, other).expect("tropical operands over different index sets")
    }
    fn one_like(&self) -> Self {
        TropMonomial::one(self.nvars())
    }
    fn one_plus(&self) -> Self {
        self.negative_part().inv()
    }
    fn over_one_plus(&self) -> Self {
        self.positive_part()
    }
    fn pow(&self, n: i64) -> Self {
        TropMonomial::pow(self, n)
    }
    fn agrees_with(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }
}

impl Semifield for PosRational {
    const BACKEND: Backend = Backend::Symbolic;

    fn mul(&self, other: &Self) -> Self {
        PosRational::mul(self, other)
    }
    fn inv(&self) -> Self {
        PosRational::inv(self)
    }
    fn add(&self, other: &Self) -> Self {
        PosRational::add(self, other)
    }
    fn one_like(&self) -> Self {
        PosRational::one(self.nvars())
    }
    fn one_plus(&self) -> Self {
        PosRational::one_plus(self)
    }
    fn over_one_plus(&self) -> Self {
        PosRational::over_one_plus(self)
    }
    fn agrees_with(&self, other: &Self, _rel_tol: f64) -> bool {
        rat_equal(self, other)
    }
}

/// A positive real number under ordinary `+` and `×`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct PosReal(pub f64);

impl PosReal {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Semifield for PosReal {
    const BACKEND: Backend = Backend::Numeric;

    fn mul(&self, other: &Self) -> Self {
        PosReal(self.0 * other.0)
    }
    fn inv(&self) -> Self {
        PosReal(1.0 / self.0)
    }
    fn add(&self, other: &Self) -> Self {
        PosReal(self.0 + other.0)
    }
    fn one_like(&self) -> Self {
        PosReal(1.0)
    }
    fn one_plus(&self) -> Self {
        PosReal(1.0 + self.0)
    }
    fn over_one_plus(&self) -> Self {
        // 1 / (1 + 1/y) keeps precision for large y
        PosReal(1.0 / (1.0 + 1.0 / self.0))
    }
    fn pow(&self, n: i64) -> Self {
        PosReal(self.0.powi(n as i32))
    }
    fn is_well_formed(&self) -> bool {
        self.0.is_finite() && self.0 > 0.0
    }
    fn agrees_with(&self, other: &Self, rel_tol: f64) -> bool {
        relative_error(self.0, other.0) < rel_tol
    }
    fn as_f64(&self) -> Option<f64> {
        Some(self.0)
    }
}

pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Images of the initial coefficients under a semifield homomorphism to the
/// positive reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PosRealAssignment {
    values: Vec<f64>,
}

impl PosRealAssignment {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((k, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::InvalidAssignment(format!(
                "value {v} for variable {} is not a positive finite real",
                k + 1
            )));
        }
        Ok(PosRealAssignment { values })
    }

    pub fn constant(nvars: usize, t: f64) -> Result<Self> {
        Self::new(vec![t; nvars])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_reals(&self) -> Vec<PosReal> {
        self.values.iter().map(|&v| PosReal(v)).collect()
    }

    /// Parse a JSON object `{label: value}`; every label must be present.
    pub fn from_json(labels: &[String], json: &str) -> Result<Self> {
        let map: BTreeMap<String, f64> = serde_json::from_str(json)
            .map_err(|e| Error::InvalidAssignment(e.to_string()))?;
        if let Some(extra) = map.keys().find(|k| !labels.contains(k)) {
            return Err(Error::InvalidAssignment(format!("unknown variable {extra}")));
        }
        let values = labels
            .iter()
            .map(|l| {
                map.get(l)
                    .copied()
                    .ok_or_else(|| Error::InvalidAssignment(format!("missing variable {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn to_json_map(&self, labels: &[String]) -> BTreeMap<String, f64> {
        labels.iter().cloned().zip(self.values.iter().copied()).collect()
    }

    /// Values drawn log-uniformly from `[lo, hi]`.
    pub fn random<R: Rng + ?Sized>(nvars: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        let (a, b) = (lo.ln(), hi.ln());
        PosRealAssignment {
            values: (0..nvars).map(|_| rng.gen_range(a..=b).exp()).collect(),
        }
    }
}

pub const SAMPLE_RANGE: (f64, f64) = (0.05, 20.0);

/// `count` reproducible assignments, log-uniform in [`SAMPLE_RANGE`].
pub fn sample_assignments(nvars: usize, count: usize, seed: u64) -> Vec<PosRealAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| PosRealAssignment::random(nvars, SAMPLE_RANGE.0, SAMPLE_RANGE.1, &mut rng))
        .collect()
}

/// Values that a homomorphism to the positive reals can be applied to.
pub trait Evaluate {
    fn evaluate(&self, assignment: &PosRealAssignment) -> Result<f64>;
}

impl Evaluate for TropMonomial {
    fn evaluate(&self, assignment: &PosRealAssignment) -> Result<f64> {
        check_len(self.nvars(), assignment)?;
        let v: f64 = self
            .exponents()
            .iter()
            .zip(assignment.values())
            .map(|(&e, &x)| x.powi(e as i32))
            .product();
        finite(v, || format!("monomial {self}"))
    }
}

impl Evaluate for PosRational {
    fn evaluate(&self, assignment: &PosRealAssignment) -> Result<f64> {
        check_len(self.nvars(), assignment)?;
        let n = self.numerator().eval_f64(assignment.values());
        let d = self.denominator().eval_f64(assignment.values());
        if !(n.is_finite() && d.is_finite() && n > 0.0 && d > 0.0) {
            return Err(Error::NumericOverflow {
                context: format!("rational function {self}"),
            });
        }
        finite(n / d, || format!("rational function {self}"))
    }
}

pub fn evaluate<E: Evaluate + ?Sized>(expr: &E, assignment: &PosRealAssignment) -> Result<f64> {
    expr.evaluate(assignment)
}

fn check_len(n: usize, a: &PosRealAssignment) -> Result<()> {
    if n != a.len() {
        return Err(Error::IndexMismatch {
            left: n,
            right: a.len(),
        });
    }
    Ok(())
}

fn finite(v: f64, ctx: impl FnOnce() -> String) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::NumericOverflow { context: ctx() })
    }
}
