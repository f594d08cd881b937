//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
//! order is lexicographic with variable 0 most significant. That order is
//! the monomial order used by exact division.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Exponent, c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// All coefficients are nonnegative and at least one is positive.
    pub fn is_subtraction_free(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| !c.is_negative())
    }

    /// Componentwise minimum of the exponents of all terms (zero vector for
    /// the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        m
    }

    fn leading(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn neg(&self) -> Poly {
        self.scale(&BigInt::from(-1))
    }

    /// Multiply by the monomial `y^e`.
    pub fn shift(&self, e: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divide by the monomial `y^e`; every term must be divisible.
    fn unshift(&self, e: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Gcd of the integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn div_integer(&self, c: &BigInt) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x / c)).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|(_, lc)| lc.is_negative()) {
            c = -c;
        }
        self.div_integer(&c)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[y]`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if d.is_one() {
            return Some(self.clone());
        }
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponent = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            for (e, c) in &d.terms {
                let te: Exponent = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(c * &qc));
            }
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Substitute `y_k = x`.
    fn eval_var(&self, k: usize, x: &BigInt) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let p = std::mem::replace(&mut e2[k], 0);
            out.add_term(e2, c * x.pow(p));
        }
        out
    }

    fn depends_on(&self, k: usize) -> bool {
        self.terms.keys().any(|e| e[k] > 0)
    }

    /// Evaluate at positive reals. Coefficients are converted to `f64`; with
    /// nonnegative coefficients there is no cancellation.
    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::INFINITY);
                for (v, &p) in values.iter().zip(e) {
                    if p > 0 {
                        t *= v.powi(p as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Greatest common divisor, normalized to a positive leading
    /// coefficient. Falls back to the gcd of monomial and integer contents if
    /// the heuristic does not certify a larger divisor; the result always
    /// divides both inputs.
    pub fn gcd(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let mf = self.min_exponents();
        let mg = other.min_exponents();
        let common: Exponent = mf.iter().zip(&mg).map(|(a, b)| *a.min(b)).collect();
        let f = self.unshift(&mf);
        let g = other.unshift(&mg);
        let fallback = || {
            Poly::monomial(self.nvars, common.clone(), self.content().gcd(&other.content()))
        };
        if f.is_constant() || g.is_constant() {
            return fallback();
        }
        match heu_gcd(&f, &g, self.nvars) {
            Some(h) => h.shift(&common),
            None => fallback(),
        }
    }
}

/// Heuristic gcd by evaluation at a large integer and balanced radix
/// reconstruction, recursing on the variables `0..k`. Every candidate is
/// verified by exact division; `None` means no certified candidate was found.
fn heu_gcd(f: &Poly, g: &Poly, k: usize) -> Option<Poly> {
    if f.is_zero() || g.is_zero() {
        let h = if f.is_zero() { g } else { f };
        return Some(h.primitive().scale(&h.content()));
    }
    if k == 0 {
        return Some(Poly::constant(f.nvars, f.constant_term().gcd(&g.constant_term())));
    }
    let main = k - 1;
    if !f.depends_on(main) && !g.depends_on(main) {
        return heu_gcd(f, g, k - 1);
    }
    let gc = f.content().gcd(&g.content());
    let f = f.div_integer(&gc);
    let g = g.div_integer(&gc);

    let norm = |p: &Poly| p.terms.values().map(|c| c.abs()).max().unwrap_or_default();
    let lc = |p: &Poly| p.leading().map(|(_, c)| c.abs()).unwrap_or_else(BigInt::one);
    let (fn_, gn) = (norm(&f), norm(&g));
    let b: BigInt = BigInt::from(2) * fn_.clone().min(gn.clone()) + 29;
    let mut x = (b.clone().min(BigInt::from(99) * b.sqrt())).max(
        BigInt::from(2) * (&fn_ / lc(&f)).min(&gn / lc(&g)) + 2,
    );

    for _ in 0..6 {
        let ff = f.eval_var(main, &x);
        let gg = g.eval_var(main, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let h = heu_gcd(&ff, &gg, k - 1)?;
            let h = interpolate(&h, &x, main).primitive();
            if !h.is_zero() && f.exact_div(&h).is_some() && g.exact_div(&h).is_some() {
                return Some(h.scale(&gc));
            }
        }
        x = BigInt::from(73794) * &x * x.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Expand each coefficient of `h` in balanced base `x`; digit `j` becomes
/// the coefficient of `y_main^j`.
fn interpolate(h: &Poly, x: &BigInt, main: usize) -> Poly {
    let mut out = Poly::zero(h.nvars);
    let half = x / 2;
    for (e, c) in &h.terms {
        let mut c = c.clone();
        let mut j = 0u32;
        while !c.is_zero() {
            let mut r = c.mod_floor(x);
            if r > half {
                r -= x;
            }
            c = (&c - &r) / x;
            let mut e2 = e.clone();
            e2[main] = j;
            out.add_term(e2, r);
            j += 1;
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        // lowest-degree terms first reads naturally: 1 + y1 + y1*y2
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        for (e, c) in terms {
            let neg = c.sign() == BigSign::Minus;
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| {
                    if p == 1 {
                        format!("y{}", k + 1)
                    } else {
                        format!("y{}^{}", k + 1, p)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(n: usize, k: usize) -> Poly {
        Poly::var(n, k)
    }

    fn c(n: usize, v: i64) -> Poly {
        Poly::constant(n, BigInt::from(v))
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let a = c(n, 1).add(&y(n, 0)); // 1 + y1
        let b = c(n, 1).add(&y(n, 1)).add(&y(n, 0).mul(&y(n, 1))); // 1 + y2 + y1 y2
        let p = a.mul(&b).mul(&a);
        assert_eq!(p.exact_div(&a).unwrap(), a.mul(&b));
        assert_eq!(p.exact_div(&a.mul(&a)).unwrap(), b);
        assert!(b.exact_div(&a).is_none());
        assert!(c(n, 3).exact_div(&c(n, 2)).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let n = 3;
        let a = c(n, 1).add(&y(n, 0)).add(&y(n, 0).mul(&y(n, 2)));
        let b = c(n, 1).add(&y(n, 1));
        let d = c(n, 2).add(&y(n, 2).pow(2));
        let f = a.mul(&b).mul(&y(n, 0));
        let g = a.mul(&d).mul(&y(n, 0)).mul(&y(n, 1));
        assert_eq!(f.gcd(&g), a.mul(&y(n, 0)));
        assert!(b.gcd(&d).is_one());
    }

    #[test]
    fn gcd_of_integer_multiples() {
        let n = 1;
        let a = c(n, 6).mul(&c(n, 1).add(&y(n, 0)));
        let b = c(n, 4).mul(&c(n, 1).add(&y(n, 0)).pow(2));
        assert_eq!(a.gcd(&b), c(n, 2).mul(&c(n, 1).add(&y(n, 0))));
    }

    #[test]
    fn display() {
        let n = 2;
        let p = c(n, 1).add(&y(n, 0)).add(&c(n, 3).mul(&y(n, 0)).mul(&y(n, 1).pow(2)));
        assert_eq!(p.to_string(), "1 + y1 + 3*y1*y2^2");
    }

    fn small_poly(n: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), 0i64..4), 1..5).prop_map(
            move |ts| {
                let p = Poly::from_terms(n, ts.into_iter().map(|(e, c)| (e, BigInt::from(c))));
                if p.is_zero() {
                    Poly::one(n)
                } else {
                    p
                }
            },
        )
    }

    proptest! {
        #[test]
        fn product_divides_back(a in small_poly(3), b in small_poly(3)) {
            let p = a.mul(&b);
            prop_assert_eq!(p.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn gcd_divides_and_contains_common_factor(a in small_poly(3), b in small_poly(3), f in small_poly(3)) {
            let x = a.mul(&f);
            let z = b.mul(&f);
            let g = x.gcd(&z);
            prop_assert!(x.exact_div(&g).is_some());
            prop_assert!(z.exact_div(&g).is_some());
            prop_assert!(g.exact_div(&f.primitive()).is_some(), "gcd {} misses factor {}", g, f);
        }
    }
}
