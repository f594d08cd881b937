use serde::Serialize;

use crate::dynkin::Sign;
use crate::error::Result;
use crate::report::{witness, CheckReport};
use crate::semifield::{relative_error, sample_assignments, Backend, PosRealAssignment, Semifield};

use super::frame::{numeric_frame, symbolic_frame, tropical_frame, CoefficientFrame, SymbolicBudget};
use super::system::YSystem;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicityReport {
    pub pair: String,
    pub backend: Backend,
    pub period: i64,
    pub half_period: i64,
    pub passed: bool,
    pub full: CheckReport,
    pub half: CheckReport,
}

fn compare<S: Semifield>(report: &mut CheckReport, a: &S, b: &S, tol: f64, w: impl FnOnce() -> crate::report::Witness) {
    if let (Some(x), Some(y)) = (a.as_f64(), b.as_f64()) {
        report.observe_error(relative_error(x, y));
    }
    let ok = a.agrees_with(b, tol);
    report.record(ok, w);
}

/// Full and half periodicity over `0 ≤ u < 2(h+h')`; the frame must cover
/// `[0, 4(h+h') − 1]`.
pub fn verify_periodicity_frame<S: Semifield>(
    sys: &YSystem,
    frame: &CoefficientFrame<S>,
    tol: f64,
) -> Result<PeriodicityReport> {
    let p = sys.period();
    let hp = sys.half_period();
    let mut full = CheckReport::new("periodicity_full", sys.to_string());
    let mut half = CheckReport::new("periodicity_half", sys.to_string());
    for u in 0..p {
        for a in 0..sys.size() {
            let (i, ip) = sys.one_based(a);
            let later = frame.get(a, u + p)?;
            let now = frame.get(a, u)?;
            compare(&mut full, later, now, tol, || {
                witness(i, ip, u, format!("y(u + {p}) = {later:?} but y(u) = {now:?}"))
            });
            let shifted = frame.get(a, u + hp)?;
            let mirrored = frame.get(sys.omega(a), u)?;
            compare(&mut half, shifted, mirrored, tol, || {
                let (j, jp) = sys.one_based(sys.omega(a));
                witness(i, ip, u, format!("y(u + {hp}) = {shifted:?} but y_({j},{jp})(u) = {mirrored:?}"))
            });
        }
    }
    Ok(PeriodicityReport {
        pair: sys.to_string(),
        backend: S::BACKEND,
        period: p,
        half_period: hp,
        passed: full.passed && half.passed,
        full,
        half,
    })
}

/// Periodicity in the chosen backend. The numeric backend is checked over
/// `trials` random assignments drawn from `seed`.
pub fn verify_periodicity(
    sys: &YSystem,
    backend: Backend,
    trials: usize,
    seed: u64,
    tol: f64,
    budget: &SymbolicBudget,
) -> Result<PeriodicityReport> {
    let u_max = 2 * sys.period() - 1;
    match backend {
        Backend::Tropical => verify_periodicity_frame(sys, &tropical_frame(sys, 0, u_max)?, tol),
        Backend::Symbolic => {
            verify_periodicity_frame(sys, &symbolic_frame(sys, budget, 0, u_max)?, tol)
        }
        Backend::Numeric => {
            let mut merged: Option<PeriodicityReport> = None;
            for asg in sample_assignments(sys.size(), trials, seed) {
                let r = verify_periodicity_frame(sys, &numeric_frame(sys, &asg, 0, u_max)?, tol)?;
                merged = Some(match merged {
                    None => r,
                    Some(mut m) => {
                        m.full.absorb(r.full);
                        m.half.absorb(r.half);
                        m.passed = m.full.passed && m.half.passed;
                        m
                    }
                });
            }
            Ok(merged.unwrap_or_else(|| PeriodicityReport {
                pair: sys.to_string(),
                backend,
                period: sys.period(),
                half_period: sys.half_period(),
                passed: true,
                full: CheckReport::new("periodicity_full", sys.to_string()),
                half: CheckReport::new("periodicity_half", sys.to_string()),
            }))
        }
    }
}

/// The Y-system relations at every interior point of the frame. Around a
/// `P−` point the `P+` family is used with `Y = y`; around a `P+` point the
/// `P−` family with `Y = y⁻¹`.
pub fn verify_y_system<S: Semifield>(sys: &YSystem, frame: &CoefficientFrame<S>, tol: f64) -> Result<CheckReport> {
    let mut report = CheckReport::new("y_system", sys.to_string());
    for u in frame.u_min() + 1..frame.u_max() {
        for a in 0..sys.size() {
            let big_y = |b: usize, v: i64| -> Result<S> {
                let y = frame.get(b, v)?;
                Ok(match sys.parity(a, u) {
                    Sign::Minus => y.clone(),
                    Sign::Plus => y.inv(),
                })
            };
            let lhs = big_y(a, u - 1)?.mul(&big_y(a, u + 1)?);
            let mut rhs = lhs.one_like();
            for b in sys.x_neighbors(a) {
                rhs = rhs.mul(&big_y(b, u)?.one_plus());
            }
            for b in sys.xp_neighbors(a) {
                rhs = rhs.mul(&big_y(b, u)?.inv().one_plus().inv());
            }
            let (i, ip) = sys.one_based(a);
            compare(&mut report, &lhs, &rhs, tol, || {
                witness(i, ip, u, format!("lhs {lhs:?} rhs {rhs:?}"))
            });
        }
    }
    Ok(report)
}

/// The tropical projection of the symbolic frame equals the tropical frame
/// on `[u_min, u_max]`.
pub fn verify_cross_backend(sys: &YSystem, budget: &SymbolicBudget, u_min: i64, u_max: i64) -> Result<CheckReport> {
    let sym = symbolic_frame(sys, budget, u_min, u_max)?;
    let trop = tropical_frame(sys, u_min, u_max)?;
    let mut r = CheckReport::new("cross_backend", sys.to_string());
    for (a, u) in trop.points() {
        let (i, ip) = sys.one_based(a);
        let projected = sym.get(a, u)?.tropical();
        let t = trop.get(a, u)?;
        r.record(&projected == t, || witness(i, ip, u, format!("[symbolic]_T = {projected} but tropical {t}")));
    }
    Ok(r)
}

/// Level-rank duality: the `(X', X)` frame started from `1/y` with labels
/// swapped is the inverse of the `(X, X')` frame, on one period.
pub fn verify_duality(sys: &YSystem, trials: usize, seed: u64, tol: f64) -> Result<CheckReport> {
    let dual = sys.dual();
    let n = sys.size();
    let to_dual = |a: usize| {
        let (i, ip) = sys.unindex(a);
        dual.index(ip, i)
    };
    let p = sys.period();
    let mut r = CheckReport::new("duality", sys.to_string());
    for asg in sample_assignments(n, trials, seed) {
        let frame = numeric_frame(sys, &asg, -1, p)?;
        let mut inv = vec![0.0; n];
        for (a, &v) in asg.values().iter().enumerate() {
            inv[to_dual(a)] = 1.0 / v;
        }
        let dual_frame = numeric_frame(&dual, &PosRealAssignment::new(inv)?, -1, p)?;
        for (a, u) in frame.points() {
            let x = frame.get(a, u)?.0;
            let d = dual_frame.get(to_dual(a), u)?.0;
            let e = relative_error(x * d, 1.0);
            r.observe_error(e);
            let (i, ip) = sys.one_based(a);
            r.record(e < tol, || witness(i, ip, u, format!("y = {x}, dual y = {d}")));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::PosReal;

    fn sys(s: &str) -> YSystem {
        s.parse().unwrap()
    }

    #[test]
    fn a1_a2_periods() {
        let s = sys("A1xA2");
        let r = verify_periodicity(&s, Backend::Tropical, 0, 0, 0.0, &SymbolicBudget::default()).unwrap();
        assert_eq!((r.period, r.half_period), (10, 5));
        assert!(r.passed, "{r:?}");
        assert_eq!(r.full.checked, 20);
    }

    #[test]
    fn a3_a2_full_period_14() {
        let s = sys("A3xA2");
        assert_eq!(s.period(), 14);
        for backend in [Backend::Tropical, Backend::Numeric] {
            let r = verify_periodicity(&s, backend, 3, 1, 1e-9, &SymbolicBudget::default()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn a1_a1_y_system_sides_equal_one() {
        let s = sys("A1xA1");
        let f = numeric_frame(&s, &PosRealAssignment::new(vec![2.0]).unwrap(), -1, 1).unwrap();
        let r = verify_y_system(&s, &f, 1e-12).unwrap();
        assert!(r.passed);
        assert_eq!(r.checked, 1);
        // around u = 0 (a P+ point) Y = y⁻¹: Y(−1) Y(1) = (1/2)(2)
        let lhs = f.get(0, -1).unwrap().inv().mul(&f.get(0, 1).unwrap().inv());
        assert_eq!(lhs, PosReal(1.0));
    }

    #[test]
    fn y_system_holds_numerically_and_tropically() {
        for p in ["A2xA1", "A3xA2", "D4xA2"] {
            let s = sys(p);
            let asg = sample_assignments(s.size(), 1, 9).remove(0);
            let f = numeric_frame(&s, &asg, -s.period(), s.period()).unwrap();
            let r = verify_y_system(&s, &f, 1e-9).unwrap();
            assert!(r.passed, "{p} {r:?}");
            assert!(r.max_error.unwrap() < 1e-12);
            let t = tropical_frame(&s, -4, 4).unwrap();
            assert!(verify_y_system(&s, &t, 0.0).unwrap().passed);
        }
    }

    #[test]
    fn flipped_rule_breaks_periodicity() {
        let s = sys("A2xA1").with_rule(crate::cluster::ExchangeRule::FlippedSign);
        let r = verify_periodicity(&s, Backend::Numeric, 2, 3, 1e-9, &SymbolicBudget::default()).unwrap();
        assert!(!r.passed);
        assert!(!r.full.witnesses.is_empty());
    }

    #[test]
    fn cross_backend_and_duality() {
        for p in ["A1xA1", "A1xA2", "A2xA2", "A3xA2", "D4xA1"] {
            let s = sys(p);
            let c = verify_cross_backend(&s, &SymbolicBudget::default(), -2, s.period()).unwrap();
            assert!(c.passed, "{p}: {c:?}");
            let d = verify_duality(&s, 3, 11, 1e-10).unwrap();
            assert!(d.passed, "{p}: {d:?}");
        }
    }
}
