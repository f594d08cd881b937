use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::{numeric_frame, tropical_frame, CoefficientFrame, YSystem};
use crate::dynkin::Sign;
use crate::error::{Error, Result};
use crate::report::{witness, CheckReport, Witness};
use crate::semifield::{sample_assignments, MonomialSign, PosReal, PosRealAssignment, SAMPLE_RANGE};

use super::rogers::l_of_ratio;

/// Summation domains: `S±` span one full period, `H±` one half period,
/// filtered by the parity condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    #[serde(rename = "S+")]
    SPlus,
    #[serde(rename = "S-")]
    SMinus,
    #[serde(rename = "H+")]
    HPlus,
    #[serde(rename = "H-")]
    HMinus,
}

impl Domain {
    pub const ALL: [Domain; 4] = [Domain::SPlus, Domain::SMinus, Domain::HPlus, Domain::HMinus];

    pub fn parity(self) -> Sign {
        match self {
            Domain::SPlus | Domain::HPlus => Sign::Plus,
            Domain::SMinus | Domain::HMinus => Sign::Minus,
        }
    }

    /// Last `u` of the window, which starts at 0.
    pub fn u_last(self, sys: &YSystem) -> i64 {
        match self {
            Domain::SPlus | Domain::SMinus => sys.period() - 1,
            Domain::HPlus | Domain::HMinus => sys.half_period() - 1,
        }
    }

    /// The exact value `(numerator, denominator)`.
    pub fn expected(self, sys: &YSystem) -> (usize, usize) {
        let rr = sys.rank_product();
        let (h, hp) = (sys.h(), sys.h_prime());
        let (n, d) = match self {
            Domain::SPlus => (h * rr, 1),
            Domain::SMinus => (hp * rr, 1),
            Domain::HPlus => (h * rr, 2),
            Domain::HMinus => (hp * rr, 2),
        };
        if n % d == 0 {
            (n / d, 1)
        } else {
            (n, d)
        }
    }

    pub fn points(self, sys: &YSystem) -> Vec<(usize, i64)> {
        let last = self.u_last(sys);
        (0..sys.size())
            .flat_map(|a| (0..=last).map(move |u| (a, u)))
            .filter(|&(a, u)| sys.parity(a, u) == self.parity())
            .collect()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::SPlus => "S+",
            Domain::SMinus => "S-",
            Domain::HPlus => "H+",
            Domain::HMinus => "H-",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S+" | "SPLUS" => Ok(Domain::SPlus),
            "S-" | "SMINUS" => Ok(Domain::SMinus),
            "H+" | "HPLUS" => Ok(Domain::HPlus),
            "H-" | "HMINUS" => Ok(Domain::HMinus),
            _ => Err(Error::Config(format!("unknown domain {s:?} (expected S+, S-, H+ or H-)"))),
        }
    }
}

fn format_ratio((n, d): (usize, usize)) -> String {
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// `(6/π²) Σ L(y/(1+y))` over the domain, summed in `(i, i', u)` order.
pub fn domain_sum(sys: &YSystem, frame: &CoefficientFrame<PosReal>, domain: Domain) -> Result<f64> {
    let mut s = 0.0;
    for (a, u) in domain.points(sys) {
        s += l_of_ratio(frame.get(a, u)?.0)?;
    }
    Ok(s)
}

fn window_frame(sys: &YSystem, assignment: &PosRealAssignment) -> Result<CoefficientFrame<PosReal>> {
    numeric_frame(sys, assignment, 0, sys.period() - 1)
}

/// The dilogarithm sum for one assignment.
pub fn dilog_sum(sys: &YSystem, assignment: &PosRealAssignment, domain: Domain) -> Result<f64> {
    domain_sum(sys, &window_frame(sys, assignment)?, domain)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub pair: String,
    pub domain: Domain,
    pub expected: String,
    pub expected_value: f64,
    pub measured: Vec<f64>,
    pub max_abs_error: f64,
    pub samples: usize,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySuite {
    pub pair: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub identities: Vec<IdentityReport>,
    /// `Σ_{S−} L(y/(1+y)) = Σ_{S+} L(1/(1+y))`.
    pub complement: CheckReport,
    /// `S+ + S− = (h+h')rr'`.
    pub sum_rule: CheckReport,
}

/// All four domain identities over `n_samples` random assignments, plus
/// the complement and sum rules that tie `S−` to `S+`.
pub fn verify_identities(sys: &YSystem, n_samples: usize, tol: f64, seed: u64) -> Result<IdentitySuite> {
    if n_samples == 0 {
        return Err(Error::Config("at least one sample is required".into()));
    }
    let assignments = sample_assignments(sys.size(), n_samples, seed);
    let per_sample: Vec<(Vec<f64>, f64)> = assignments
        .par_iter()
        .map(|asg| -> Result<(Vec<f64>, f64)> {
            let f = window_frame(sys, asg)?;
            let sums = Domain::ALL
                .iter()
                .map(|&d| domain_sum(sys, &f, d))
                .collect::<Result<Vec<_>>>()?;
            let mut comp = 0.0;
            for (a, u) in Domain::SPlus.points(sys) {
                comp += l_of_ratio(1.0 / f.get(a, u)?.0)?;
            }
            Ok((sums, comp))
        })
        .collect::<Result<Vec<_>>>()?;

    let identities: Vec<IdentityReport> = Domain::ALL
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            let ex = d.expected(sys);
            let ev = ex.0 as f64 / ex.1 as f64;
            let measured: Vec<f64> = per_sample.iter().map(|(s, _)| s[k]).collect();
            let max_abs_error = measured.iter().map(|m| (m - ev).abs()).fold(0.0, f64::max);
            IdentityReport {
                pair: sys.to_string(),
                domain: d,
                expected: format_ratio(ex),
                expected_value: ev,
                samples: measured.len(),
                measured,
                max_abs_error,
                tol,
                passed: max_abs_error < tol,
            }
        })
        .collect();

    let total = ((sys.h() + sys.h_prime()) * sys.rank_product()) as f64;
    let mut complement = CheckReport::new("complement", sys.to_string());
    let mut sum_rule = CheckReport::new("sum_rule", sys.to_string());
    for (k, (s, comp)) in per_sample.iter().enumerate() {
        let e = (s[1] - comp).abs();
        complement.observe_error(e);
        complement.record(e < tol, || witness(0, 0, 0, format!("sample {k}: S- sum {} vs {comp}", s[1])));
        let e = (s[0] + s[1] - total).abs();
        sum_rule.observe_error(e);
        sum_rule.record(e < tol, || witness(0, 0, 0, format!("sample {k}: S+ + S- = {}", s[0] + s[1])));
    }
    Ok(IdentitySuite {
        pair: sys.to_string(),
        seed,
        samples: n_samples,
        passed: identities.iter().all(|r| r.passed) && complement.passed && sum_rule.passed,
        identities,
        complement,
        sum_rule,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstancyReport {
    pub pair: String,
    pub seed: u64,
    pub samples: usize,
    pub values: Vec<f64>,
    pub range: f64,
    pub tol: f64,
    pub passed: bool,
    /// The assignments giving the smallest and largest sums.
    pub extremes: Vec<Vec<f64>>,
}

/// The `S+` sum over `n_samples` random assignments and the two constant
/// assignments at the ends of the sampling range; its spread must stay
/// below `tol`.
pub fn verify_constancy(sys: &YSystem, n_samples: usize, tol: f64, seed: u64) -> Result<ConstancyReport> {
    let n = sys.size();
    let mut assignments = sample_assignments(n, n_samples, seed);
    assignments.push(PosRealAssignment::constant(n, SAMPLE_RANGE.0)?);
    assignments.push(PosRealAssignment::constant(n, SAMPLE_RANGE.1)?);
    let values = assignments
        .par_iter()
        .map(|a| dilog_sum(sys, a, Domain::SPlus))
        .collect::<Result<Vec<_>>>()?;
    let (mut lo, mut hi) = (0, 0);
    for (k, v) in values.iter().enumerate() {
        if *v < values[lo] {
            lo = k;
        }
        if *v > values[hi] {
            hi = k;
        }
    }
    let range = values[hi] - values[lo];
    Ok(ConstancyReport {
        pair: sys.to_string(),
        seed,
        samples: values.len(),
        range,
        tol,
        passed: range < tol,
        extremes: vec![assignments[lo].values().to_vec(), assignments[hi].values().to_vec()],
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitTerm {
    pub i: usize,
    pub i_prime: usize,
    pub u: i64,
    pub tropical_sign: MonomialSign,
    /// `(6/π²) L(y/(1+y))` at each `t`.
    pub values: Vec<f64>,
    /// Distance of each value from its limit, computed without cancellation.
    pub deviations: Vec<f64>,
    /// Distance of the last dilogarithm argument `y/(1+y)` from 0 or 1.
    pub final_argument_deviation: f64,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub pair: String,
    pub ts: Vec<f64>,
    pub sums: Vec<f64>,
    pub expected: usize,
    pub sum_tol: f64,
    pub argument_tol: f64,
    /// Largest `|(6/π²)L − limit|` at the last `t`; reported, not checked.
    pub max_final_deviation: f64,
    pub max_final_argument_deviation: f64,
    pub passed: bool,
    pub terms: Vec<LimitTerm>,
    pub witnesses: Vec<Witness>,
}

/// Relative tolerance for the `S+` sum against `N−` in the limit check.
pub const LIMIT_SUM_REL_TOL: f64 = 1e-3;

/// Default `t`-sequence for the limit check.
pub const LIMIT_TS: [f64; 3] = [0.1, 0.01, 0.001];

/// Default argument tolerance as a multiple of the last `t`: a degree-one
/// monomial gives an argument of `t(1 + O(t))`.
pub const LIMIT_ARGUMENT_FACTOR: f64 = 2.0;

/// Evaluate the `S+` sum under `y_𝐢 ↦ t` for a decreasing sequence of `t`.
///
/// Each term must move strictly toward 1 (negative tropical sign) or 0
/// (positive sign), and at the last `t` its argument `y/(1+y)` must lie
/// within `argument_tol` of that end point. The sum must stay within
/// `1e−3·N−` of `N− = hrr'`.
pub fn zero_infinity_limit(sys: &YSystem, ts: &[f64], argument_tol: f64) -> Result<LimitReport> {
    if ts.is_empty() || ts.windows(2).any(|w| w[1] >= w[0]) || ts.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::Config("t-sequence must be strictly decreasing inside (0, 1)".into()));
    }
    let p = sys.period();
    let trop = tropical_frame(sys, 0, p - 1)?;
    let frames = ts
        .iter()
        .map(|&t| numeric_frame(sys, &PosRealAssignment::constant(sys.size(), t)?, 0, p - 1))
        .collect::<Result<Vec<_>>>()?;
    let expected = sys.h() * sys.rank_product();
    let mut terms = Vec::new();
    let mut witnesses = Vec::new();
    let mut sums = vec![0.0; ts.len()];
    for (a, u) in Domain::SPlus.points(sys) {
        let sign = trop.get(a, u)?.sign();
        let ys: Vec<f64> = frames.iter().map(|f| f.get(a, u).map(|v| v.0)).collect::<Result<_>>()?;
        let values = ys.iter().map(|&y| l_of_ratio(y)).collect::<Result<Vec<_>>>()?;
        for (s, v) in sums.iter_mut().zip(&values) {
            *s += v;
        }
        // toward 1 the distance is (6/π²) L(1/(1+y)) = l_of_ratio(1/y)
        let toward_one = sign == MonomialSign::Negative;
        let deviations = ys
            .iter()
            .map(|&y| l_of_ratio(if toward_one { 1.0 / y } else { y }))
            .collect::<Result<Vec<_>>>()?;
        let last_y = *ys.last().unwrap();
        let final_argument_deviation = if toward_one { 1.0 / (1.0 + last_y) } else { last_y / (1.0 + last_y) };
        let monotone = deviations.windows(2).all(|w| w[1] < w[0]);
        let (i, ip) = sys.one_based(a);
        let sign_ok = matches!(sign, MonomialSign::Positive | MonomialSign::Negative);
        if !(sign_ok && monotone && final_argument_deviation < argument_tol) {
            witnesses.push(witness(i, ip, u, format!("tropical sign {sign:?}, deviations {deviations:?}")));
        }
        terms.push(LimitTerm {
            i,
            i_prime: ip,
            u,
            tropical_sign: sign,
            values,
            deviations,
            final_argument_deviation,
            monotone,
        });
    }
    let sum_tol = LIMIT_SUM_REL_TOL * expected as f64;
    let sum_ok = (sums.last().unwrap() - expected as f64).abs() < sum_tol;
    let fold = |f: fn(&LimitTerm) -> f64| terms.iter().map(f).fold(0.0, f64::max);
    let max_final_deviation = fold(|t| *t.deviations.last().unwrap());
    let max_final_argument_deviation = fold(|t| t.final_argument_deviation);
    Ok(LimitReport {
        pair: sys.to_string(),
        ts: ts.to_vec(),
        sums,
        expected,
        sum_tol,
        argument_tol,
        max_final_deviation,
        max_final_argument_deviation,
        passed: sum_ok && witnesses.is_empty(),
        terms,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> YSystem {
        s.parse().unwrap()
    }

    #[test]
    fn example_sums() {
        let a = |n| PosRealAssignment::new(vec![1.7; n]).unwrap();
        let s = sys("A1xA1");
        assert!((dilog_sum(&s, &a(1), Domain::SPlus).unwrap() - 2.0).abs() < 1e-12);
        let s = sys("A2xA1");
        assert!((dilog_sum(&s, &a(2), Domain::SPlus).unwrap() - 6.0).abs() < 1e-12);
        let s = sys("A1xA2");
        assert!((dilog_sum(&s, &a(2), Domain::HMinus).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn expected_values() {
        let s = sys("A1xA2");
        assert_eq!(Domain::SPlus.expected(&s), (4, 1));
        assert_eq!(Domain::SMinus.expected(&s), (6, 1));
        let s = sys("A2xA1");
        assert_eq!(Domain::HPlus.expected(&s), (3, 1));
        assert_eq!(Domain::HMinus.expected(&s), (2, 1));
        assert_eq!(format_ratio(Domain::HMinus.expected(&sys("A1xA1"))), "1");
        assert_eq!(format_ratio(Domain::HPlus.expected(&sys("A2xA3"))), "9");
        assert_eq!(format_ratio((9, 2)), "9/2");
        assert_eq!("s-".parse::<Domain>().unwrap(), Domain::SMinus);
    }

    #[test]
    fn identities_and_constancy() {
        for p in ["A2xA2", "D4xA2", "A1xA2"] {
            let s = sys(p);
            let r = verify_identities(&s, 3, 1e-8, 11).unwrap();
            assert!(r.passed, "{p}: {r:?}");
            assert!(verify_constancy(&s, 4, 1e-10, 5).unwrap().passed, "{p}");
        }
        let r = verify_identities(&sys("D4xA2"), 1, 1e-8, 1).unwrap();
        assert!((r.identities[0].measured[0] - 48.0).abs() < 1e-8);
    }

    #[test]
    fn limit_a1_a1() {
        let r = zero_infinity_limit(&sys("A1xA1"), &[0.1, 0.01, 0.001], 1e-3).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.expected, 2);
        let neg: Vec<_> = r.terms.iter().filter(|t| t.tropical_sign == MonomialSign::Negative).collect();
        assert_eq!(neg.len(), 2);
        assert!(zero_infinity_limit(&sys("A1xA1"), &[0.01, 0.1], 1e-3).is_err());
    }
}
