use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A Laurent monomial `prod y_k^{e_k}` in the tropical semifield. Product
/// adds exponents; `⊕` takes the componentwise minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropMonomial {
    exponents: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialSign {
    Positive,
    Negative,
    Zero,
    Mixed,
}

impl TropMonomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        TropMonomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        TropMonomial::new(vec![0; nvars])
    }

    pub fn generator(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        TropMonomial::new(e)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        TropMonomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn inv(&self) -> Self {
        TropMonomial::new(self.exponents.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, n: i64) -> Self {
        TropMonomial::new(self.exponents.iter().map(|a| a * n).collect())
    }

    /// Componentwise maximum with the identity: `[y/(1+y)]_T` when `self = [y]_T`.
    pub fn positive_part(&self) -> Self {
        TropMonomial::new(self.exponents.iter().map(|&a| a.max(0)).collect())
    }

    /// `[1/(1+y)]_T` when `self = [y]_T`.
    pub fn negative_part(&self) -> Self {
        TropMonomial::new(self.exponents.iter().map(|&a| (-a).max(0)).collect())
    }

    pub fn sign(&self) -> MonomialSign {
        monomial_sign(self)
    }

    /// Sparse exponent map keyed by variable labels.
    pub fn sparse(&self, labels: &[String]) -> std::collections::BTreeMap<String, i64> {
        labels
            .iter()
            .zip(&self.exponents)
            .filter(|(_, &e)| e != 0)
            .map(|(l, &e)| (l.clone(), e))
            .collect()
    }
}

/// Tropical addition: componentwise minimum of exponents.
pub fn trop_add(a: &TropMonomial, b: &TropMonomial) -> Result<TropMonomial> {
    if a.nvars() != b.nvars() {
        return Err(Error::IndexMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    Ok(TropMonomial::new(
        a.exponents
            .iter()
            .zip(&b.exponents)
            .map(|(x, y)| *x.min(y))
            .collect(),
    ))
}

pub fn monomial_sign(m: &TropMonomial) -> MonomialSign {
    let any_pos = m.exponents.iter().any(|&e| e > 0);
    let any_neg = m.exponents.iter().any(|&e| e < 0);
    match (any_pos, any_neg) {
        (false, false) => MonomialSign::Zero,
        (true, false) => MonomialSign::Positive,
        (false, true) => MonomialSign::Negative,
        (true, true) => MonomialSign::Mixed,
    }
}

impl fmt::Display for TropMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| {
                if e == 1 {
                    format!("y{}", k + 1)
                } else {
                    format!("y{}^{}", k + 1, e)
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i64]) -> TropMonomial {
        TropMonomial::new(e.to_vec())
    }

    #[test]
    fn add_examples() {
        assert_eq!(trop_add(&m(&[1, 0]), &m(&[0, 0])).unwrap(), m(&[0, 0]));
        assert_eq!(trop_add(&m(&[2, -1]), &m(&[2, -1])).unwrap(), m(&[2, -1]));
        assert_eq!(trop_add(&m(&[2, -1]), &m(&[-1, 3])).unwrap(), m(&[-1, -1]));
        assert!(matches!(
            trop_add(&m(&[1]), &m(&[1, 2])),
            Err(Error::IndexMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(monomial_sign(&m(&[1, 1])), MonomialSign::Positive);
        assert_eq!(monomial_sign(&m(&[0, 0])), MonomialSign::Zero);
        assert_eq!(monomial_sign(&m(&[-1, -1])), MonomialSign::Negative);
        assert_eq!(monomial_sign(&m(&[1, 0, -2])), MonomialSign::Mixed);
        assert_eq!(monomial_sign(&m(&[0, 3])), MonomialSign::Positive);
    }

    #[test]
    fn parts_of_one_plus_y() {
        let y = m(&[2, -1, 0]);
        let one_plus = trop_add(&TropMonomial::one(3), &y).unwrap();
        assert_eq!(y.mul(&one_plus.inv()), y.positive_part());
        assert_eq!(one_plus.inv(), y.negative_part());
    }

    #[test]
    fn display_and_sparse() {
        assert_eq!(m(&[1, 0, -2]).to_string(), "y1*y3^-2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
        let labels = vec!["a".to_string(), "b".to_string()];
        let s = m(&[0, -1]).sparse(&labels);
        assert_eq!(s.len(), 1);
        assert_eq!(s["b"], -1);
    }
}
