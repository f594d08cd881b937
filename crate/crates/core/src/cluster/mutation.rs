use crate::error::{Error, Result};
use crate::semifield::{Backend, Semifield};

use super::matrix::ExchangeMatrix;
use super::system::ExchangeRule;

/// Coefficient exchange at `k`.
pub fn mutate_coefficients<S: Semifield>(b: &ExchangeMatrix, y: &[S], k: usize) -> Vec<S> {
    mutate_coefficients_with(b, y, k, ExchangeRule::Standard)
}

pub(crate) fn mutate_coefficients_with<S: Semifield>(
    b: &ExchangeMatrix,
    y: &[S],
    k: usize,
    rule: ExchangeRule,
) -> Vec<S> {
    assert_eq!(b.size(), y.len(), "coefficient tuple size");
    let yk = &y[k];
    let up = yk.over_one_plus();
    let down = yk.one_plus();
    y.iter()
        .enumerate()
        .map(|(i, yi)| {
            let bki = b.get(k, i);
            if i == k {
                yk.inv()
            } else if bki > 0 {
                yi.mul(&up.pow(bki))
            } else if bki < 0 {
                let e = match rule {
                    ExchangeRule::Standard => -bki,
                    ExchangeRule::FlippedSign => bki,
                };
                yi.mul(&down.pow(e))
            } else {
                yi.clone()
            }
        })
        .collect()
}

/// Cluster exchange at `k`. The numerator uses ordinary addition, so this
/// is only meaningful where `⊕` is ordinary addition (symbolic or numeric
/// backends).
pub fn mutate_cluster<S: Semifield>(b: &ExchangeMatrix, x: &[S], y: &[S], k: usize) -> Result<Vec<S>> {
    if S::BACKEND == Backend::Tropical {
        return Err(Error::Config(
            "cluster exchange needs a backend whose addition is ordinary addition".into(),
        ));
    }
    if x.len() != b.size() || y.len() != b.size() {
        return Err(Error::IndexMismatch {
            left: b.size(),
            right: x.len().min(y.len()),
        });
    }
    let one = x[k].one_like();
    let (mut pos, mut neg) = (one.clone(), one);
    for (j, xj) in x.iter().enumerate() {
        let bjk = b.get(j, k);
        if bjk > 0 {
            pos = pos.mul(&xj.pow(bjk));
        } else if bjk < 0 {
            neg = neg.mul(&xj.pow(-bjk));
        }
    }
    let xk = y[k].mul(&pos).add(&neg).mul(&y[k].one_plus().mul(&x[k]).inv());
    if !xk.is_well_formed() {
        return Err(Error::NumericOverflow {
            context: format!("cluster exchange at index {k}"),
        });
    }
    let mut out = x.to_vec();
    out[k] = xk;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{rat_equal, PosRational, PosReal, TropMonomial};
    use proptest::prelude::*;

    fn b2() -> ExchangeMatrix {
        ExchangeMatrix::from_entries(vec![vec![0, 1], vec![-1, 0]])
    }

    #[test]
    fn tropical_example() {
        let y = vec![TropMonomial::generator(2, 0), TropMonomial::generator(2, 1)];
        let y1 = mutate_coefficients(&b2(), &y, 0);
        assert_eq!(y1[0], TropMonomial::new(vec![-1, 0]));
        assert_eq!(y1[1], TropMonomial::new(vec![1, 1]));
    }

    #[test]
    fn numeric_example() {
        let y1 = mutate_coefficients(&b2(), &[PosReal(2.0), PosReal(3.0)], 0);
        assert_eq!(y1[0].0, 0.5);
        assert!((y1[1].0 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn flipped_rule_differs() {
        let y = [PosReal(2.0), PosReal(3.0)];
        let y1 = mutate_coefficients_with(&b2(), &y, 1, ExchangeRule::FlippedSign);
        assert!((y1[0].0 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cluster_exchange_a1() {
        let b = ExchangeMatrix::from_entries(vec![vec![0]]);
        let x = [PosReal(3.0)];
        let y = [PosReal(2.0)];
        let x1 = mutate_cluster(&b, &x, &y, 0).unwrap();
        assert!((x1[0].0 - 3.0 / 9.0).abs() < 1e-15);
        // universal semifield: (y+1)/((1+y)x) = 1/x
        let xs = [PosRational::generator(2, 1)];
        let ys = [PosRational::generator(2, 0)];
        let x1 = mutate_cluster(&b, &xs, &ys, 0).unwrap();
        assert!(rat_equal(&x1[0], &xs[0].inv()));
        let yt = [TropMonomial::generator(1, 0)];
        assert!(mutate_cluster(&b, &yt, &yt, 0).is_err());
    }

    #[test]
    fn cluster_exchange_on_an_arrow() {
        // x'_1 = (y1 + x2) / ((1 + y1) x1) for B = [[0,1],[-1,0]]: B_21 = -1
        let n = 4;
        let x = [PosRational::generator(n, 2), PosRational::generator(n, 3)];
        let y = [PosRational::generator(n, 0), PosRational::generator(n, 1)];
        let x1 = mutate_cluster(&b2(), &x, &y, 0).unwrap();
        let expect = y[0].add(&x[1]).mul(&y[0].one_plus().mul(&x[0]).inv());
        assert!(rat_equal(&x1[0], &expect));
        let x2 = mutate_cluster(&crate::cluster::mutate_matrix(&b2(), 0), &x1, &mutate_coefficients(&b2(), &y, 0), 0).unwrap();
        assert!(rat_equal(&x2[0], &x[0]));
    }

    proptest! {
        #[test]
        fn coefficient_mutation_is_an_involution(
            ys in prop::collection::vec(0.05f64..20.0, 3),
            k in 0usize..3,
            upper in prop::collection::vec(-2i64..3, 3),
        ) {
            let e = vec![
                vec![0, upper[0], upper[1]],
                vec![-upper[0], 0, upper[2]],
                vec![-upper[1], -upper[2], 0],
            ];
            let b = ExchangeMatrix::from_entries(e);
            let y: Vec<PosReal> = ys.iter().map(|&v| PosReal(v)).collect();
            let y1 = mutate_coefficients(&b, &y, k);
            let y2 = mutate_coefficients(&crate::cluster::mutate_matrix(&b, k), &y1, k);
            for (a, c) in y.iter().zip(&y2) {
                prop_assert!(a.agrees_with(c, 1e-12));
            }
            let t: Vec<TropMonomial> = (0..3).map(|i| TropMonomial::generator(3, i)).collect();
            let t2 = mutate_coefficients(&crate::cluster::mutate_matrix(&b, k), &mutate_coefficients(&b, &t, k), k);
            prop_assert_eq!(t2, t);
        }
    }
}
