use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

pub const PI2_6: f64 = PI * PI / 6.0;

/// `Li₂(x)` for `0 ≤ x ≤ 1/2` by its power series.
fn li2_small(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut p = x;
    for k in 1..200 {
        let term = p / (k * k) as f64;
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
        p *= x;
    }
    sum
}

fn rogers_small(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    li2_small(x) + 0.5 * x.ln() * (-x).ln_1p()
}

/// The Rogers dilogarithm `L(x) = Li₂(x) + ½ log x log(1−x)` on `[0, 1]`.
pub fn rogers_l(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DilogDomain(x));
    }
    Ok(if x <= 0.5 {
        rogers_small(x)
    } else {
        PI2_6 - rogers_small(1.0 - x)
    })
}

/// `(6/π²) L(x)`.
pub fn rogers_normalized(x: f64) -> Result<f64> {
    Ok(rogers_l(x)? / PI2_6)
}

/// `(6/π²) L(y/(1+y))` for `y > 0`, computed without cancellation for
/// large and small `y`.
pub fn l_of_ratio(y: f64) -> Result<f64> {
    if !(y.is_finite() && y > 0.0) {
        return Err(Error::DilogDomain(y));
    }
    let (x, comp) = (1.0 / (1.0 + 1.0 / y), 1.0 / (1.0 + y));
    // prefer the argument that is the smaller one: L(x) = π²/6 − L(1−x)
    Ok(if x <= 0.5 {
        rogers_small(x) / PI2_6
    } else {
        1.0 - rogers_small(comp) / PI2_6
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiveTermReport {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub error: f64,
    pub passed: bool,
}

/// `L(x) + L(y) + L(1−xy) + L((1−x)/(1−xy)) + L((1−y)/(1−xy)) = π²/2`.
/// At `x = y = 1` the last two arguments are taken as their limit along
/// the diagonal, `1/2`.
pub fn verify_five_term(x: f64, y: f64, tol: f64) -> Result<FiveTermReport> {
    for v in [x, y] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::DilogDomain(v));
        }
    }
    let d = 1.0 - x * y;
    let (p, q) = if d == 0.0 {
        (0.5, 0.5)
    } else {
        (((1.0 - x) / d).clamp(0.0, 1.0), ((1.0 - y) / d).clamp(0.0, 1.0))
    };
    let value = rogers_l(x)? + rogers_l(y)? + rogers_l(d.clamp(0.0, 1.0))? + rogers_l(p)? + rogers_l(q)?;
    let error = (value - PI * PI / 2.0).abs();
    Ok(FiveTermReport {
        x,
        y,
        value,
        error,
        passed: error < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: composite Gauss–Legendre quadrature of the
    /// integral definition, with a substitution taming the endpoint logs.
    fn quadrature(x: f64) -> f64 {
        let f = |t: f64| -0.5 * ((-t).ln_1p() / t + t.ln() / (1.0 - t));
        // nodes and weights of the 5-point rule on [-1, 1]
        let nodes = [0.0, 0.5384693101056831, -0.5384693101056831, 0.906179845938664, -0.906179845938664];
        let weights = [0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891, 0.2369268850561891];
        // s ↦ t = x s² concentrates nodes near 0
        let g = |s: f64| 2.0 * x * s * f(x * s * s);
        let panels = 4000;
        let mut sum = 0.0;
        for p in 0..panels {
            let (a, b) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
            for (n, w) in nodes.iter().zip(weights) {
                sum += w * (b - a) / 2.0 * g((a + b) / 2.0 + (b - a) / 2.0 * n);
            }
        }
        sum
    }

    #[test]
    fn endpoints_and_midpoint() {
        assert_eq!(rogers_l(0.0).unwrap(), 0.0);
        assert!((rogers_l(1.0).unwrap() - PI2_6).abs() < 1e-13);
        assert!((rogers_l(0.5).unwrap() - PI * PI / 12.0).abs() < 1e-13);
        assert!((rogers_l(0.37).unwrap() + rogers_l(0.63).unwrap() - PI2_6).abs() < 1e-13);
        assert!(rogers_l(-0.1).is_err());
        assert!(rogers_l(1.1).is_err());
    }

    #[test]
    fn matches_integral_definition() {
        for x in [0.01, 0.1, 0.3, 0.5, 0.7, 0.9] {
            let q = quadrature(x);
            assert!((rogers_l(x).unwrap() - q).abs() < 1e-9, "{x}: {} vs {q}", rogers_l(x).unwrap());
        }
    }

    #[test]
    fn five_term_edges() {
        assert!(verify_five_term(0.0, 0.0, 1e-12).unwrap().passed);
        assert!(verify_five_term(1.0, 0.3, 1e-12).unwrap().passed);
        assert!(verify_five_term(1.0, 1.0, 1e-12).unwrap().passed);
    }

    #[test]
    fn ratio_form_agrees() {
        for y in [1e-6, 0.3, 1.0, 7.0, 1e6] {
            let direct = rogers_normalized(y / (1.0 + y)).unwrap();
            assert!((l_of_ratio(y).unwrap() - direct).abs() < 1e-12);
        }
        assert!(l_of_ratio(0.0).is_err());
    }

    proptest! {
        #[test]
        fn reflection(x in 0.0f64..=1.0) {
            prop_assert!((rogers_l(x).unwrap() + rogers_l(1.0 - x).unwrap() - PI2_6).abs() < 1e-12);
        }

        #[test]
        fn five_term(x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
            prop_assert!(verify_five_term(x, y, 1e-12).unwrap().passed);
        }
    }
}
