use serde::Serialize;
use serde_json::{json, Value};

use crate::dynkin::Sign;
use crate::error::{Error, Result};
use crate::semifield::{Backend, PosRational, PosReal, PosRealAssignment, Semifield, TropMonomial};

use super::matrix::{mutate_matrix, ExchangeMatrix};
use super::mutation::mutate_coefficients_with;
use super::system::YSystem;

/// The coefficient tuples `y(u)` for `u` in a contiguous range containing 0.
#[derive(Debug, Clone)]
pub struct CoefficientFrame<S> {
    pair: String,
    labels: Vec<String>,
    parts: Vec<Sign>,
    u_min: i64,
    u_max: i64,
    slices: Vec<Vec<S>>,
}

impl<S: Semifield> CoefficientFrame<S> {
    pub fn pair(&self) -> &str {
        &self.pair
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn u_min(&self) -> i64 {
        self.u_min
    }

    pub fn u_max(&self) -> i64 {
        self.u_max
    }

    pub fn contains(&self, u: i64) -> bool {
        (self.u_min..=self.u_max).contains(&u)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `B` on even slices, `−B` on odd ones.
    pub fn matrix_sign(&self, u: i64) -> Sign {
        Sign::of_parity(u)
    }

    pub fn parity(&self, a: usize, u: i64) -> Sign {
        super::system::parity(self.parts[a], u)
    }

    pub fn slice(&self, u: i64) -> Result<&[S]> {
        if !self.contains(u) {
            return Err(Error::OutOfRange {
                u,
                u_min: self.u_min,
                u_max: self.u_max,
            });
        }
        Ok(&self.slices[(u - self.u_min) as usize])
    }

    pub fn get(&self, a: usize, u: i64) -> Result<&S> {
        Ok(&self.slice(u)?[a])
    }

    /// Every `(𝐢, u)` of the frame, slice by slice.
    pub fn points(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (self.u_min..=self.u_max).flat_map(move |u| (0..self.size()).map(move |a| (a, u)))
    }

    pub fn map<T: Semifield>(&self, f: impl Fn(&S) -> T) -> CoefficientFrame<T> {
        CoefficientFrame {
            pair: self.pair.clone(),
            labels: self.labels.clone(),
            parts: self.parts.clone(),
            u_min: self.u_min,
            u_max: self.u_max,
            slices: self.slices.iter().map(|s| s.iter().map(&f).collect()).collect(),
        }
    }
}

impl<S: Semifield + ExportValue> CoefficientFrame<S> {
    /// `{pair, backend, u_range, entries: [{i, i_prime, u, value}]}` with
    /// 1-based labels.
    pub fn to_json(&self, sys: &YSystem) -> Value {
        let entries: Vec<Value> = self
            .points()
            .map(|(a, u)| {
                let (i, ip) = sys.one_based(a);
                json!({
                    "i": i,
                    "i_prime": ip,
                    "u": u,
                    "value": self.slices[(u - self.u_min) as usize][a].export(&self.labels),
                })
            })
            .collect();
        json!({
            "pair": self.pair,
            "backend": S::BACKEND,
            "u_range": [self.u_min, self.u_max],
            "entries": entries,
        })
    }
}

/// JSON rendering of a frame value.
pub trait ExportValue {
    fn export(&self, labels: &[String]) -> Value;
}

impl ExportValue for TropMonomial {
    fn export(&self, labels: &[String]) -> Value {
        json!(self.sparse(labels))
    }
}

impl ExportValue for PosReal {
    fn export(&self, _labels: &[String]) -> Value {
        json!(self.0)
    }
}

impl ExportValue for PosRational {
    fn export(&self, _labels: &[String]) -> Value {
        json!({
            "numerator": self.numerator().to_string(),
            "denominator": self.denominator().to_string(),
        })
    }
}

/// Apply the composite mutation over one part, mutating the matrix along
/// the way.
fn apply_part<S: Semifield>(
    sys: &YSystem,
    y: &[S],
    b: &ExchangeMatrix,
    part: Sign,
) -> Vec<S> {
    let mut b = b.clone();
    let mut y = y.to_vec();
    for k in sys.part_indices(part) {
        y = mutate_coefficients_with(&b, &y, k, sys.rule());
        b = mutate_matrix(&b, k);
    }
    y
}

/// `y(u+1)` from `y(u)`: the part `+` on even `u`, `−` on odd `u`, with
/// matrix `(−1)^u B`.
pub fn step_forward<S: Semifield>(sys: &YSystem, y: &[S], u: i64) -> Vec<S> {
    let b = sys.matrix().scaled(Sign::of_parity(u));
    apply_part(sys, y, &b, YSystem::step_part(u))
}

/// `y(u)` from `y(u+1)` by the same involutive mutation.
pub fn step_backward<S: Semifield>(sys: &YSystem, y: &[S], u: i64) -> Vec<S> {
    let b = sys.matrix().scaled(Sign::of_parity(u + 1));
    apply_part(sys, y, &b, YSystem::step_part(u))
}

fn check_slice<S: Semifield>(sys: &YSystem, y: &[S], u: i64) -> Result<()> {
    match y.iter().position(|v| !v.is_well_formed()) {
        Some(a) => Err(sys.backend_error(a, u, format!("value left the semifield: {:?}", y[a]))),
        None => Ok(()),
    }
}

/// Build `y(u)` for `u_min ≤ u ≤ u_max` from `y(0) = initial`.
pub fn build_frame<S: Semifield>(
    sys: &YSystem,
    initial: Vec<S>,
    u_min: i64,
    u_max: i64,
) -> Result<CoefficientFrame<S>> {
    if u_min > 0 || u_max < 0 {
        return Err(Error::InvalidRange { u_min, u_max });
    }
    if initial.len() != sys.size() {
        return Err(Error::IndexMismatch {
            left: sys.size(),
            right: initial.len(),
        });
    }
    check_slice(sys, &initial, 0)?;
    let mut back = Vec::with_capacity((-u_min) as usize);
    let mut cur = initial.clone();
    for u in (u_min..0).rev() {
        cur = step_backward(sys, &cur, u);
        check_slice(sys, &cur, u)?;
        back.push(cur.clone());
    }
    back.reverse();
    let mut slices = back;
    slices.push(initial.clone());
    let mut cur = initial;
    for u in 0..u_max {
        cur = step_forward(sys, &cur, u);
        check_slice(sys, &cur, u + 1)?;
        slices.push(cur.clone());
    }
    Ok(CoefficientFrame {
        pair: sys.to_string(),
        labels: sys.labels(),
        parts: (0..sys.size()).map(|a| sys.part(a)).collect(),
        u_min,
        u_max,
        slices,
    })
}

pub fn tropical_frame(sys: &YSystem, u_min: i64, u_max: i64) -> Result<CoefficientFrame<TropMonomial>> {
    let n = sys.size();
    build_frame(sys, (0..n).map(|a| TropMonomial::generator(n, a)).collect(), u_min, u_max)
}

pub fn numeric_frame(
    sys: &YSystem,
    assignment: &PosRealAssignment,
    u_min: i64,
    u_max: i64,
) -> Result<CoefficientFrame<PosReal>> {
    build_frame(sys, assignment.to_reals(), u_min, u_max)
}

/// Subtraction-free rational frame, subject to the symbolic budget.
pub fn symbolic_frame(
    sys: &YSystem,
    budget: &SymbolicBudget,
    u_min: i64,
    u_max: i64,
) -> Result<CoefficientFrame<PosRational>> {
    budget.admit(sys, u_min, u_max)?;
    let n = sys.size();
    build_frame(sys, (0..n).map(|a| PosRational::generator(n, a)).collect(), u_min, u_max)
}

/// Limits on symbolic computations: the rank product `rr'` and the number
/// of periods the u-range may span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymbolicBudget {
    pub max_rank_product: usize,
    pub max_periods: usize,
}

pub const BUDGET_ENV: &str = "YSYSLAB_BUDGET_RR";

impl Default for SymbolicBudget {
    fn default() -> Self {
        SymbolicBudget {
            max_rank_product: 6,
            max_periods: 2,
        }
    }
}

impl SymbolicBudget {
    pub fn with_rank_product(max_rank_product: usize) -> Self {
        SymbolicBudget {
            max_rank_product,
            ..Default::default()
        }
    }

    /// The default, overridden by `YSYSLAB_BUDGET_RR` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Self::with_rank_product)
                .map_err(|_| Error::Config(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn allows(&self, sys: &YSystem) -> bool {
        sys.rank_product() <= self.max_rank_product
    }

    pub fn admit(&self, sys: &YSystem, u_min: i64, u_max: i64) -> Result<()> {
        if !self.allows(sys) {
            return Err(Error::BudgetExceeded {
                rank_product: sys.rank_product(),
                budget: self.max_rank_product,
            });
        }
        let span = (u_max - u_min) as usize;
        let limit = self.max_periods * sys.period() as usize;
        if span > limit {
            return Err(Error::Config(format!(
                "symbolic u-range [{u_min}, {u_max}] spans more than {} periods of {sys}",
                self.max_periods
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i64]) -> TropMonomial {
        TropMonomial::new(e.to_vec())
    }

    fn sys(s: &str) -> YSystem {
        s.parse().unwrap()
    }

    #[test]
    fn a1_a2_forward_columns() {
        let s = sys("A1xA2");
        let f = tropical_frame(&s, 0, 5).unwrap();
        let expect = [
            [m(&[1, 0]), m(&[0, 1])],
            [m(&[-1, 0]), m(&[1, 1])],
            [m(&[0, 1]), m(&[-1, -1])],
            [m(&[0, -1]), m(&[-1, 0])],
            [m(&[0, -1]), m(&[1, 0])],
            [m(&[0, 1]), m(&[1, 0])],
        ];
        for (u, col) in expect.iter().enumerate() {
            assert_eq!(f.slice(u as i64).unwrap(), col, "u = {u}");
        }
    }

    #[test]
    fn backward_then_forward_round_trips() {
        let s = sys("A3xA2");
        let f = tropical_frame(&s, -7, 7).unwrap();
        let g = tropical_frame(&s, 0, 7).unwrap();
        for u in 0..=7 {
            assert_eq!(f.slice(u).unwrap(), g.slice(u).unwrap());
        }
        let start = f.slice(-7).unwrap().to_vec();
        let mut cur = start;
        for u in -7..7 {
            cur = step_forward(&s, &cur, u);
            assert_eq!(&cur[..], f.slice(u + 1).unwrap());
        }
    }

    #[test]
    fn a1_a1_inverts_every_step() {
        let s = sys("A1xA1");
        let f = numeric_frame(&s, &PosRealAssignment::new(vec![2.0]).unwrap(), -2, 2).unwrap();
        assert_eq!(f.get(0, 1).unwrap().0, 0.5);
        assert_eq!(f.get(0, -1).unwrap().0, 2.0);
        assert_eq!(f.get(0, 2).unwrap().0, 0.5);
    }

    #[test]
    fn range_and_budget_errors() {
        let s = sys("A1xA2");
        assert!(matches!(tropical_frame(&s, 1, 3), Err(Error::InvalidRange { .. })));
        let f = tropical_frame(&s, 0, 2).unwrap();
        assert!(matches!(f.get(0, 3), Err(Error::OutOfRange { .. })));
        let big = sys("A4xA2");
        let e = symbolic_frame(&big, &SymbolicBudget::default(), 0, 2).unwrap_err();
        assert!(e.to_string().contains("--budget-rr"));
        assert!(symbolic_frame(&big, &SymbolicBudget::with_rank_product(8), 0, 2).is_ok());
    }

    #[test]
    fn json_export() {
        let s = sys("A1xA2");
        let f = tropical_frame(&s, 0, 1).unwrap();
        let v = f.to_json(&s);
        assert_eq!(v["backend"], "tropical");
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
        assert_eq!(v["entries"][3]["value"]["y_(1,1)"], 1);
        assert_eq!(v["entries"][3]["i_prime"], 2);
    }
}
