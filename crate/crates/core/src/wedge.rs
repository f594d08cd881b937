//! Symbolic check that `Σ_{S+} y ∧ (1+y)` vanishes, by factoring `y` and
//! `1+y` into initial variables and F-polynomials and expanding the wedge
//! product bilinearly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cluster::fpoly::f_polynomials_from;
use crate::cluster::{tropical_frame, CoefficientFrame, FPolyFamily, SymbolicBudget, YSystem};
use crate::dynkin::Sign;
use crate::error::Result;
use crate::report::{witness, CheckReport};
use crate::semifield::{rat_equal, PosRational, PosReal, Semifield, TropMonomial};

/// A generator of the factor group: an initial variable `y_𝐢` or an
/// interned F-polynomial. Variables sort before F-polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Var(usize),
    F(usize),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(k) => write!(f, "y{}", k + 1),
            Atom::F(id) => write!(f, "F#{id}"),
        }
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finitely supported product of atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorList {
    factors: BTreeMap<Atom, i64>,
}

impl FactorList {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom, e: i64) -> Self {
        let mut f = Self::one();
        f.push(a, e);
        f
    }

    pub fn from_monomial(m: &TropMonomial) -> Self {
        let mut f = Self::one();
        for (k, &e) in m.exponents().iter().enumerate() {
            f.push(Atom::Var(k), e);
        }
        f
    }

    /// Multiply by `a^e`. The F-polynomial 1 is the identity, not an atom.
    pub fn push(&mut self, a: Atom, e: i64) {
        if e == 0 {
            return;
        }
        let v = self.factors.entry(a).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&a);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = self.clone();
        for (&a, &e) in &other.factors {
            f.push(a, e);
        }
        f
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut f = Self::one();
        for (&a, &e) in &self.factors {
            f.push(a, e * n);
        }
        f
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn factors(&self) -> &BTreeMap<Atom, i64> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_rational(&self, fam: &FPolyFamily, nvars: usize) -> PosRational {
        let mut r = PosRational::one(nvars);
        for (&a, &e) in &self.factors {
            let base = match a {
                Atom::Var(k) => PosRational::generator(nvars, k),
                Atom::F(id) => PosRational::from_poly(fam.atom_poly(id).clone())
                    .expect("F-polynomials are subtraction-free"),
            };
            r = r.mul(&Semifield::pow(&base, e));
        }
        r
    }

    pub fn eval(&self, fam: &FPolyFamily, values: &[f64]) -> f64 {
        self.factors
            .iter()
            .map(|(&a, &e)| {
                let v = match a {
                    Atom::Var(k) => values[k],
                    Atom::F(id) => fam.atom_poly(id).eval_f64(values),
                };
                v.powi(e as i32)
            })
            .product()
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(a, &e)| if e == 1 { a.to_string() } else { format!("{a}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// An element of `∧²` of the free abelian group on atoms, stored as
/// coefficients on ordered pairs `a < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WedgeSum {
    coefficients: BTreeMap<(Atom, Atom), i64>,
}

impl WedgeSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Add `c · (a ∧ b)`.
    pub fn add_pair(&mut self, a: Atom, b: Atom, c: i64) {
        if a == b || c == 0 {
            return;
        }
        let (key, c) = if a < b { ((a, b), c) } else { ((b, a), -c) };
        let v = self.coefficients.entry(key).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coefficients.remove(&key);
        }
    }

    /// Add `f ∧ g` expanded by bilinearity.
    pub fn add_wedge(&mut self, f: &FactorList, g: &FactorList) {
        for (&a, &e) in f.factors() {
            for (&b, &d) in g.factors() {
                self.add_pair(a, b, e * d);
            }
        }
    }

    pub fn add(&mut self, other: &WedgeSum) {
        for (&(a, b), &c) in &other.coefficients {
            self.add_pair(a, b, c);
        }
    }

    pub fn neg(&self) -> WedgeSum {
        WedgeSum {
            coefficients: self.coefficients.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<(Atom, Atom), i64> {
        &self.coefficients
    }

    pub fn surviving(&self) -> Vec<SurvivingPair> {
        self.coefficients
            .iter()
            .map(|(&(a, b), &c)| SurvivingPair {
                left: a.to_string(),
                right: b.to_string(),
                coefficient: c,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurvivingPair {
    pub left: String,
    pub right: String,
    pub coefficient: i64,
}

/// Tropical frame and F-polynomials on `[−1, 2(h+h')]`, enough for every
/// factorization over one period.
#[derive(Debug, Clone)]
pub struct WedgeContext {
    sys: YSystem,
    trop: CoefficientFrame<TropMonomial>,
    fpolys: FPolyFamily,
}

impl WedgeContext {
    pub fn new(sys: &YSystem, budget: &SymbolicBudget) -> Result<Self> {
        let (lo, hi) = (-1, sys.period());
        budget.admit(sys, lo, hi)?;
        let trop = tropical_frame(sys, lo, hi)?;
        let fpolys = f_polynomials_from(sys, &trop, lo, hi)?;
        Ok(WedgeContext {
            sys: sys.clone(),
            trop,
            fpolys,
        })
    }

    pub fn system(&self) -> &YSystem {
        &self.sys
    }

    pub fn fpolys(&self) -> &FPolyFamily {
        &self.fpolys
    }

    pub fn tropical(&self) -> &CoefficientFrame<TropMonomial> {
        &self.trop
    }

    fn f(&self, a: usize, u: i64) -> Result<FactorList> {
        let p = self.fpolys.get(a, u)?;
        Ok(if p.is_one() {
            FactorList::one()
        } else {
            FactorList::atom(Atom::F(self.fpolys.atom(a, u)?), 1)
        })
    }

    /// `Π_𝐣 F_𝐣(u)^{M_𝐣𝐢}`.
    fn f_m(&self, a: usize, u: i64) -> Result<FactorList> {
        self.sys.x_neighbors(a).try_fold(FactorList::one(), |acc, b| Ok(acc.mul(&self.f(b, u)?)))
    }

    /// `Π_𝐣 F_𝐣(u)^{M'_𝐣𝐢}`.
    fn f_mp(&self, a: usize, u: i64) -> Result<FactorList> {
        self.sys.xp_neighbors(a).try_fold(FactorList::one(), |acc, b| Ok(acc.mul(&self.f(b, u)?)))
    }

    fn trop_y(&self, a: usize, u: i64) -> Result<&TropMonomial> {
        self.trop.get(a, u)
    }

    /// `[1+y]_T` as a factor list.
    fn trop_one_plus(&self, a: usize, u: i64) -> Result<FactorList> {
        Ok(FactorList::from_monomial(&self.trop_y(a, u)?.negative_part().inv()))
    }

    /// `y_𝐢(u) = [y]_T · Π F^{M} / Π F^{M'}` at a `P+` point.
    pub fn factorize_y(&self, a: usize, u: i64) -> Result<FactorList> {
        self.sys.require_positive_parity(a, u)?;
        let t = FactorList::from_monomial(self.trop_y(a, u)?);
        Ok(t.mul(&self.f_m(a, u)?).mul(&self.f_mp(a, u)?.inv()))
    }

    /// `1 + y_𝐢(u) = [1+y]_T · F(u−1) F(u+1) / Π F^{M'}` at a `P+` point.
    pub fn factorize_one_plus_y(&self, a: usize, u: i64) -> Result<FactorList> {
        self.sys.require_positive_parity(a, u)?;
        Ok(self
            .trop_one_plus(a, u)?
            .mul(&self.f(a, u - 1)?)
            .mul(&self.f(a, u + 1)?)
            .mul(&self.f_mp(a, u)?.inv()))
    }

    fn s_points(&self, parity: Sign) -> Vec<(usize, i64)> {
        let p = self.sys.period();
        (0..p)
            .flat_map(|u| (0..self.sys.size()).map(move |a| (a, u)))
            .filter(|&(a, u)| self.sys.parity(a, u) == parity)
            .collect()
    }

    /// Compare every factorization on `S+` with the symbolic frame value.
    pub fn validate_symbolic(&self, frame: &CoefficientFrame<PosRational>) -> Result<CheckReport> {
        let mut r = CheckReport::new("factorization_symbolic", self.sys.to_string());
        let n = self.sys.size();
        for (a, u) in self.s_points(Sign::Plus) {
            let y = frame.get(a, u)?;
            let (i, ip) = self.sys.one_based(a);
            let fy = self.factorize_y(a, u)?.to_rational(&self.fpolys, n);
            r.record(rat_equal(&fy, y), || witness(i, ip, u, format!("y: {fy} vs {y}")));
            let f1 = self.factorize_one_plus_y(a, u)?.to_rational(&self.fpolys, n);
            let one_plus = y.one_plus();
            r.record(rat_equal(&f1, &one_plus), || witness(i, ip, u, format!("1+y: {f1} vs {one_plus}")));
        }
        Ok(r)
    }

    /// Compare every factorization on `S+` numerically with a frame built
    /// from `values`.
    pub fn validate_numeric(&self, frame: &CoefficientFrame<PosReal>, values: &[f64], tol: f64) -> Result<CheckReport> {
        let mut r = CheckReport::new("factorization_numeric", self.sys.to_string());
        for (a, u) in self.s_points(Sign::Plus) {
            let y = frame.get(a, u)?.0;
            let (i, ip) = self.sys.one_based(a);
            let fy = self.factorize_y(a, u)?.eval(&self.fpolys, values);
            let f1 = self.factorize_one_plus_y(a, u)?.eval(&self.fpolys, values);
            for (got, want) in [(fy, y), (f1, 1.0 + y)] {
                let e = crate::semifield::relative_error(got, want);
                r.observe_error(e);
                r.record(e < tol, || witness(i, ip, u, format!("{got} vs {want}")));
            }
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockReport {
    pub passed: bool,
    pub surviving_pairs: Vec<SurvivingPair>,
}

impl BlockReport {
    fn of(w: &WedgeSum) -> Self {
        BlockReport {
            passed: w.is_zero(),
            surviving_pairs: w.surviving(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WedgeBlocks {
    pub tropical: BlockReport,
    pub symmetric: BlockReport,
    pub mixed_1: BlockReport,
    pub mixed_2: BlockReport,
    pub mixed_3: BlockReport,
    pub mixed_4: BlockReport,
    pub mixed_5: BlockReport,
    /// The five right-hand sides add to zero.
    pub mixed_rhs_total: BlockReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WedgeReport {
    pub pair: String,
    pub total_zero: bool,
    pub blocks: WedgeBlocks,
    pub surviving_pairs: Vec<SurvivingPair>,
    pub atoms: usize,
    pub terms: usize,
    pub diagnosis: String,
    pub passed: bool,
}

/// `Σ_{S+} y ∧ (1+y)` in the order given by `points`.
pub fn wedge_total(ctx: &WedgeContext, points: &[(usize, i64)]) -> Result<WedgeSum> {
    let mut w = WedgeSum::zero();
    for &(a, u) in points {
        w.add_wedge(&ctx.factorize_y(a, u)?, &ctx.factorize_one_plus_y(a, u)?);
    }
    Ok(w)
}

/// The F-only block `Σ_{S+} B ∧ D` in the order given by `points`.
pub fn symmetric_block(ctx: &WedgeContext, points: &[(usize, i64)]) -> Result<WedgeSum> {
    let mut w = WedgeSum::zero();
    for &(a, u) in points {
        let b = ctx.f_m(a, u)?.mul(&ctx.f_mp(a, u)?.inv());
        let d = ctx.f(a, u - 1)?.mul(&ctx.f(a, u + 1)?).mul(&ctx.f_mp(a, u)?.inv());
        w.add_wedge(&b, &d);
    }
    Ok(w)
}

/// Expand the wedge sum and check the total and each cancellation block.
pub fn wedge_vanishing(ctx: &WedgeContext) -> Result<WedgeReport> {
    let sys = ctx.system();
    let splus = ctx.s_points(Sign::Plus);
    let sminus = ctx.s_points(Sign::Minus);
    let total = wedge_total(ctx, &splus)?;

    let mut tropical = WedgeSum::zero();
    for &(a, u) in &splus {
        tropical.add_wedge(&FactorList::from_monomial(ctx.trop_y(a, u)?), &ctx.trop_one_plus(a, u)?);
    }
    let symmetric = symmetric_block(ctx, &splus)?;

    let mut lhs = vec![WedgeSum::zero(); 5];
    for &(a, u) in &splus {
        let t = FactorList::from_monomial(ctx.trop_y(a, u)?);
        let c = ctx.trop_one_plus(a, u)?;
        lhs[0].add_wedge(&t, &ctx.f(a, u - 1)?);
        lhs[1].add_wedge(&t, &ctx.f(a, u + 1)?);
        lhs[2].add_wedge(&t.inv(), &ctx.f_mp(a, u)?);
        lhs[3].add_wedge(&c.inv(), &ctx.f_m(a, u)?);
        lhs[4].add_wedge(&c.inv(), &ctx.f_mp(a, u)?.inv());
    }
    let mut rhs = vec![WedgeSum::zero(); 5];
    for &(a, u) in &sminus {
        let f = ctx.f(a, u)?;
        let mut g3 = FactorList::one();
        let mut g5 = FactorList::one();
        for b in sys.xp_neighbors(a) {
            g3 = g3.mul(&FactorList::from_monomial(ctx.trop_y(b, u)?).inv());
            g5 = g5.mul(&ctx.trop_one_plus(b, u)?);
        }
        let mut g4 = FactorList::one();
        for b in sys.x_neighbors(a) {
            g4 = g4.mul(&ctx.trop_one_plus(b, u)?.inv());
        }
        rhs[0].add_wedge(&FactorList::from_monomial(ctx.trop_y(a, u + 1)?), &f);
        rhs[1].add_wedge(&FactorList::from_monomial(ctx.trop_y(a, u - 1)?), &f);
        rhs[2].add_wedge(&g3, &f);
        rhs[3].add_wedge(&g4, &f);
        rhs[4].add_wedge(&g5, &f);
    }
    let mixed: Vec<BlockReport> = lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| {
            let mut d = l.clone();
            d.add(&r.neg());
            BlockReport::of(&d)
        })
        .collect();
    let mut rhs_total = WedgeSum::zero();
    for r in &rhs {
        rhs_total.add(r);
    }

    let blocks = WedgeBlocks {
        tropical: BlockReport::of(&tropical),
        symmetric: BlockReport::of(&symmetric),
        mixed_1: mixed[0].clone(),
        mixed_2: mixed[1].clone(),
        mixed_3: mixed[2].clone(),
        mixed_4: mixed[3].clone(),
        mixed_5: mixed[4].clone(),
        mixed_rhs_total: BlockReport::of(&rhs_total),
    };
    let blocks_pass = [
        &blocks.tropical,
        &blocks.symmetric,
        &blocks.mixed_1,
        &blocks.mixed_2,
        &blocks.mixed_3,
        &blocks.mixed_4,
        &blocks.mixed_5,
        &blocks.mixed_rhs_total,
    ]
    .iter()
    .all(|b| b.passed);
    let total_zero = total.is_zero();
    let diagnosis = match (total_zero, blocks_pass) {
        (true, true) => "total and all blocks vanish",
        (false, true) => "sub-blocks pass, total fails: implementation bug in the total expansion",
        (_, false) => "sub-block fails: expansion or factorization bug",
    };
    Ok(WedgeReport {
        pair: sys.to_string(),
        total_zero,
        surviving_pairs: total.surviving(),
        blocks,
        atoms: ctx.fpolys().num_atoms(),
        terms: splus.len(),
        diagnosis: diagnosis.to_string(),
        passed: total_zero && blocks_pass,
    })
}
