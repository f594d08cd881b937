//! Sign structure of the tropical Y-system: the counts `N±`, the sign
//! regions and the d-vector factorization of tropical coefficients.

use serde::Serialize;

use crate::cluster::{mutate_coefficients, mutate_matrix, tropical_frame, YSystem};
use crate::dynkin::{DynkinDiagram, Sign};
use crate::error::Result;
use crate::report::{witness, CheckReport, Witness};
use crate::semifield::{monomial_sign, MonomialSign, TropMonomial};

/// Signs of `[y_𝐢(u)]_T` over `S+`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignTable {
    pub pair: String,
    pub window: (i64, i64),
    /// `(i, i', u, sign)` with 1-based labels, ordered by `u` then index.
    pub signs: Vec<(usize, usize, i64, MonomialSign)>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// Entries that are neither positive nor negative.
    pub degenerate: Vec<Witness>,
}

pub fn sign_counts(sys: &YSystem) -> Result<SignTable> {
    let p = sys.period();
    let frame = tropical_frame(sys, 0, p - 1)?;
    let mut t = SignTable {
        pair: sys.to_string(),
        window: (0, p - 1),
        signs: Vec::new(),
        n_plus: 0,
        n_minus: 0,
        degenerate: Vec::new(),
    };
    for u in 0..p {
        for a in (0..sys.size()).filter(|&a| sys.parity(a, u) == Sign::Plus) {
            let m = frame.get(a, u)?;
            let s = monomial_sign(m);
            let (i, ip) = sys.one_based(a);
            match s {
                MonomialSign::Positive => t.n_plus += 1,
                MonomialSign::Negative => t.n_minus += 1,
                _ => t.degenerate.push(witness(i, ip, u, format!("[y]_T = {m} is {s:?}"))),
            }
            t.signs.push((i, ip, u, s));
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TropicalReport {
    pub pair: String,
    #[serde(rename = "N_plus")]
    pub n_plus: usize,
    #[serde(rename = "N_minus")]
    pub n_minus: usize,
    pub expected_plus: usize,
    pub expected_minus: usize,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

/// Counts compared with `N+ = h'rr'`, `N− = hrr'`.
pub fn tropical_report(sys: &YSystem) -> Result<TropicalReport> {
    let t = sign_counts(sys)?;
    let expected_plus = sys.h_prime() * sys.rank_product();
    let expected_minus = sys.h() * sys.rank_product();
    Ok(TropicalReport {
        pair: t.pair,
        n_plus: t.n_plus,
        n_minus: t.n_minus,
        expected_plus,
        expected_minus,
        passed: t.degenerate.is_empty() && t.n_plus == expected_plus && t.n_minus == expected_minus,
        witnesses: t.degenerate,
    })
}

/// Positive monomials for `0 ≤ u ≤ h'−1`, negative ones for `−h ≤ u ≤ −1`,
/// at every `P+` point.
pub fn verify_sign_regions(sys: &YSystem) -> Result<CheckReport> {
    let (h, hp) = (sys.h() as i64, sys.h_prime() as i64);
    let frame = tropical_frame(sys, -h, hp - 1)?;
    let mut r = CheckReport::new("sign_regions", sys.to_string());
    for u in -h..hp {
        let want = if u >= 0 { MonomialSign::Positive } else { MonomialSign::Negative };
        for a in (0..sys.size()).filter(|&a| sys.parity(a, u) == Sign::Plus) {
            let m = frame.get(a, u)?;
            let (i, ip) = sys.one_based(a);
            r.record(m.sign() == want, || witness(i, ip, u, format!("[y]_T = {m}, expected {want:?}")));
        }
    }
    Ok(r)
}

/// The exponent vector predicted by the d-vector formulas, or `None` where
/// no formula applies.
pub fn predicted_exponents(sys: &YSystem, a: usize, u: i64) -> Result<Option<Vec<i64>>> {
    let (x, xp) = (sys.x(), sys.x_prime());
    let (h, hp) = (sys.h() as i64, sys.h_prime() as i64);
    let (i, ip) = sys.unindex(a);
    let par = sys.parity(a, u);
    let mut e = vec![0i64; sys.size()];
    let pick = |d: &DynkinDiagram, use_tilde: bool| {
        if use_tilde {
            d.with_swapped_bipartition()
        } else {
            d.clone()
        }
    };
    if (0..hp).contains(&u) && par == Sign::Plus {
        let d = pick(xp, x.part(i) == Sign::Minus).d_vector(xp.omega(ip), hp - u)?;
        for (kp, &c) in d.coords().iter().enumerate() {
            e[sys.index(i, kp)] = c;
        }
        return Ok(Some(e));
    }
    if (-h..0).contains(&u) {
        let dx = pick(x, xp.part(ip) == Sign::Plus);
        let (sign, shift) = match par {
            Sign::Plus => (-1, h + u + 1),
            Sign::Minus => (1, h + u),
        };
        let d = dx.d_vector(x.omega(i), shift)?;
        for (k, &c) in d.coords().iter().enumerate() {
            e[sys.index(k, ip)] = sign * c;
        }
        return Ok(Some(e));
    }
    Ok(None)
}

/// Compare the tropical frame on `[−h, h'−1]` with the d-vector formulas.
/// Mismatches are reported as they are found.
pub fn verify_dvector_factorization(sys: &YSystem) -> Result<CheckReport> {
    let (h, hp) = (sys.h() as i64, sys.h_prime() as i64);
    let frame = tropical_frame(sys, -h, hp - 1)?;
    let mut r = CheckReport::new("dvector_factorization", sys.to_string());
    for u in -h..hp {
        for a in 0..sys.size() {
            let (i, ip) = sys.one_based(a);
            let pred = match predicted_exponents(sys, a, u) {
                Ok(Some(p)) => p,
                Ok(None) => continue,
                Err(e) => {
                    r.fail(witness(i, ip, u, format!("formula undefined: {e}")));
                    continue;
                }
            };
            let got = frame.get(a, u)?;
            r.record(got.exponents() == pred.as_slice(), || {
                witness(i, ip, u, format!("frame {:?} vs d-vector {:?}", got.exponents(), pred))
            });
        }
    }
    Ok(r)
}

/// Every single mutation of the sequence on `[u_min, u_max]` that meets
/// one of the no-change conditions must leave the neighbour's tropical
/// value unchanged.
pub fn verify_mutation_lemma(sys: &YSystem, u_min: i64, u_max: i64) -> Result<CheckReport> {
    let n = sys.size();
    let mut r = CheckReport::new("mutation_lemma", sys.to_string());
    let mut walk = |start: Vec<TropMonomial>, u: i64, b0: crate::cluster::ExchangeMatrix, label_u: i64| {
        let mut y = start;
        let mut b = b0;
        for k in sys.part_indices(YSystem::step_part(u)) {
            let next = mutate_coefficients(&b, &y, k);
            for i in (0..n).filter(|&i| i != k) {
                let bki = b.get(k, i);
                let s = y[k].sign();
                let applies = bki == 0
                    || (bki > 0 && s == MonomialSign::Negative)
                    || (bki < 0 && s == MonomialSign::Positive);
                if applies {
                    let (a, ap) = sys.one_based(i);
                    r.record(next[i] == y[i], || {
                        witness(a, ap, label_u, format!("changed from {} to {} by mutation at {k}", y[i], next[i]))
                    });
                }
            }
            b = mutate_matrix(&b, k);
            y = next;
        }
        y
    };
    let init: Vec<TropMonomial> = (0..n).map(|a| TropMonomial::generator(n, a)).collect();
    let mut cur = init.clone();
    for u in 0..u_max {
        cur = walk(cur, u, sys.matrix().scaled(Sign::of_parity(u)), u);
    }
    let mut cur = init;
    for u in (u_min..0).rev() {
        cur = walk(cur, u, sys.matrix().scaled(Sign::of_parity(u + 1)), u);
    }
    Ok(r)
}
