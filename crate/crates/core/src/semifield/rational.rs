use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::Poly;
use super::tropical::TropMonomial;
use crate::error::{Error, Result};

/// A subtraction-free rational function `numerator / denominator` in the
/// initial coefficients: both polynomials have nonnegative integer
/// coefficients and are nonzero.
///
/// Products are reduced by a polynomial gcd when the reduced pair stays
/// subtraction-free. Equality never depends on that reduction.
#[derive(Clone)]
pub struct PosRational {
    num: Poly,
    den: Poly,
}

impl PosRational {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::IndexMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        if !num.is_subtraction_free() || !den.is_subtraction_free() {
            return Err(Error::Invariant(format!(
                "not subtraction-free: ({num}) / ({den})"
            )));
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: Poly) -> Result<Self> {
        let n = p.nvars();
        Self::new(p, Poly::one(n))
    }

    pub fn one(nvars: usize) -> Self {
        PosRational {
            num: Poly::one(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn generator(nvars: usize, k: usize) -> Self {
        PosRational {
            num: Poly::var(nvars, k),
            den: Poly::one(nvars),
        }
    }

    /// `y^e` for a Laurent monomial.
    pub fn from_monomial(m: &TropMonomial) -> Self {
        let n = m.nvars();
        let pos: Vec<u32> = m.exponents().iter().map(|&e| e.max(0) as u32).collect();
        let neg: Vec<u32> = m.exponents().iter().map(|&e| (-e).max(0) as u32).collect();
        PosRational {
            num: Poly::monomial(n, pos, BigInt::one()),
            den: Poly::monomial(n, neg, BigInt::one()),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        let g = num.gcd(&den);
        if !g.is_one() {
            if let (Some(n), Some(d)) = (num.exact_div(&g), den.exact_div(&g)) {
                if n.is_subtraction_free() && d.is_subtraction_free() {
                    return PosRational { num: n, den: d };
                }
            }
            let c = num_integer::Integer::gcd(&num.content(), &den.content());
            if !c.is_one() {
                let n = num.exact_div(&Poly::constant(num.nvars(), c.clone()));
                let d = den.exact_div(&Poly::constant(den.nvars(), c));
                if let (Some(n), Some(d)) = (n, d) {
                    return PosRational { num: n, den: d };
                }
            }
        }
        PosRational { num, den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Self {
        PosRational {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    /// `1 + self`.
    pub fn one_plus(&self) -> Self {
        Self::reduced(self.num.add(&self.den), self.den.clone())
    }

    /// `self / (1 + self)`.
    pub fn over_one_plus(&self) -> Self {
        Self::reduced(self.num.clone(), self.num.add(&self.den))
    }

    /// Image in the tropical semifield: lowest exponents of the numerator
    /// minus lowest exponents of the denominator.
    pub fn tropical(&self) -> TropMonomial {
        let a = self.num.min_exponents();
        let b = self.den.min_exponents();
        TropMonomial::new(a.iter().zip(&b).map(|(&x, &y)| x as i64 - y as i64).collect())
    }

    pub fn eval(&self, values: &[f64]) -> f64 {
        self.num.eval_f64(values) / self.den.eval_f64(values)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }
}

/// Equality as rational functions, by cross-multiplication.
pub fn rat_equal(a: &PosRational, b: &PosRational) -> bool {
    if a.num == b.num && a.den == b.den {
        return true;
    }
    a.num.mul(&b.den) == b.num.mul(&a.den)
}

impl PartialEq for PosRational {
    fn eq(&self, other: &Self) -> bool {
        rat_equal(self, other)
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosRational({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: usize, k: usize) -> Poly {
        Poly::var(n, k)
    }

    fn one(n: usize) -> Poly {
        Poly::one(n)
    }

    #[test]
    fn equality_examples() {
        let n = 1;
        let opy = one(n).add(&y(n, 0));
        let a = PosRational::new(y(n, 0), one(n)).unwrap();
        // built without reduction to exercise cross-multiplication
        let b = PosRational {
            num: y(n, 0).mul(&opy),
            den: opy.clone(),
        };
        assert!(rat_equal(&a, &b));
        let c = PosRational::from_poly(opy.clone()).unwrap();
        assert!(!rat_equal(&c, &PosRational::one(n)));
        let d = PosRational {
            num: opy.mul(&opy),
            den: opy.clone(),
        };
        assert!(rat_equal(&d, &c));
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let n = 2;
        let f = one(n).add(&y(n, 0)).add(&y(n, 0).mul(&y(n, 1)));
        let r = PosRational::new(f.mul(&y(n, 1)), f.mul(&y(n, 0))).unwrap();
        assert_eq!(r.numerator(), &y(n, 1));
        assert_eq!(r.denominator(), &y(n, 0));
    }

    #[test]
    fn rejects_non_subtraction_free() {
        let n = 1;
        assert!(PosRational::new(one(n).sub(&y(n, 0)), one(n)).is_err());
        assert!(PosRational::new(one(n), Poly::zero(n)).is_err());
    }

    #[test]
    fn evaluation() {
        let n = 2;
        let r = PosRational::from_poly(one(n).add(&y(n, 0))).unwrap();
        assert_eq!(r.eval(&[2.0, 3.0]), 3.0);
        let m = PosRational::from_monomial(&TropMonomial::new(vec![-1, 0]));
        assert_eq!(m.eval(&[2.0, 3.0]), 0.5);
    }

    #[test]
    fn tropical_projection() {
        let n = 2;
        // (y1 + y1 y2) / (y2 + y2^2) -> y1 / y2
        let r = PosRational::new(
            y(n, 0).add(&y(n, 0).mul(&y(n, 1))),
            y(n, 1).add(&y(n, 1).mul(&y(n, 1))),
        )
        .unwrap();
        assert_eq!(r.tropical(), TropMonomial::new(vec![1, -1]));
        assert_eq!(r.one_plus().tropical(), TropMonomial::new(vec![0, -1]));
    }
}
