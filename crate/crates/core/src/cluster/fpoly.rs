use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::dynkin::Sign;
use crate::error::{Error, Result};
use crate::report::{witness, CheckReport};
use crate::semifield::{Poly, TropMonomial};

use super::frame::{tropical_frame, CoefficientFrame, SymbolicBudget};
use super::system::YSystem;

/// The F-polynomials `F_𝐢(u)` over a u-range, with every distinct
/// polynomial interned as an atom.
#[derive(Debug, Clone)]
pub struct FPolyFamily {
    pair: String,
    u_min: i64,
    u_max: i64,
    polys: Vec<Vec<Poly>>,
    atoms: Vec<Vec<usize>>,
    table: Vec<Poly>,
}

impl FPolyFamily {
    pub fn pair(&self) -> &str {
        &self.pair
    }

    pub fn u_min(&self) -> i64 {
        self.u_min
    }

    pub fn u_max(&self) -> i64 {
        self.u_max
    }

    fn offset(&self, u: i64) -> Result<usize> {
        if u < self.u_min || u > self.u_max {
            return Err(Error::OutOfRange {
                u,
                u_min: self.u_min,
                u_max: self.u_max,
            });
        }
        Ok((u - self.u_min) as usize)
    }

    pub fn get(&self, a: usize, u: i64) -> Result<&Poly> {
        Ok(&self.polys[self.offset(u)?][a])
    }

    /// Interned atom id of `F_𝐢(u)`.
    pub fn atom(&self, a: usize, u: i64) -> Result<usize> {
        Ok(self.atoms[self.offset(u)?][a])
    }

    pub fn atom_poly(&self, id: usize) -> &Poly {
        &self.table[id]
    }

    pub fn num_atoms(&self) -> usize {
        self.table.len()
    }

    /// Constant term 1, `F_𝐢(u) = F_𝐢(u−1)` at `P+` points and
    /// `F(u + 2(h+h')) = F(u)` wherever both ends are in range.
    pub fn check_properties(&self, sys: &YSystem) -> CheckReport {
        let mut r = CheckReport::new("f_polynomials", sys.to_string());
        let p = sys.period();
        for u in self.u_min..=self.u_max {
            for a in 0..sys.size() {
                let (i, ip) = sys.one_based(a);
                let f = &self.polys[(u - self.u_min) as usize][a];
                r.record(f.constant_term() == BigInt::one() && f.is_subtraction_free(), || {
                    witness(i, ip, u, format!("F = {f} lacks constant term 1"))
                });
                if u > self.u_min && sys.parity(a, u) == Sign::Plus {
                    let g = &self.polys[(u - 1 - self.u_min) as usize][a];
                    r.record(f == g, || witness(i, ip, u, format!("F(u) = {f} but F(u-1) = {g}")));
                }
                if u + p <= self.u_max {
                    let g = &self.polys[(u + p - self.u_min) as usize][a];
                    r.record(f == g, || witness(i, ip, u, format!("F(u) = {f} but F(u + {p}) = {g}")));
                }
            }
        }
        r
    }
}

fn monomial(m: &TropMonomial) -> Poly {
    let e = m.exponents().iter().map(|&x| x as u32).collect();
    Poly::monomial(m.nvars(), e, BigInt::one())
}

/// Right-hand side of the F-recurrence at a `P+` point `(𝐢, u)`, from the
/// slice `F(u)`.
fn recurrence_rhs(sys: &YSystem, trop: &TropMonomial, f: &[Poly], a: usize) -> Poly {
    let mut up = monomial(&trop.positive_part());
    for b in sys.x_neighbors(a) {
        up = up.mul(&f[b]);
    }
    let mut down = monomial(&trop.negative_part());
    for b in sys.xp_neighbors(a) {
        down = down.mul(&f[b]);
    }
    up.add(&down)
}

fn divide(sys: &YSystem, num: &Poly, den: &Poly, a: usize, u: i64) -> Result<Poly> {
    let q = num.exact_div(den).ok_or_else(|| {
        let (i, ip) = sys.one_based(a);
        Error::Invariant(format!(
            "F-recurrence division not exact at ({i},{ip}) u = {u}: ({num}) / ({den})"
        ))
    })?;
    if q.constant_term() != BigInt::one() || !q.is_subtraction_free() {
        let (i, ip) = sys.one_based(a);
        return Err(Error::Invariant(format!(
            "F at ({i},{ip}) u = {u} is {q}, which lacks constant term 1 or has a negative coefficient"
        )));
    }
    Ok(q)
}

/// F-polynomials on `[u_min, u_max]` by the exact-division recurrence,
/// subject to the symbolic budget.
pub fn f_polynomials(sys: &YSystem, budget: &SymbolicBudget, u_min: i64, u_max: i64) -> Result<FPolyFamily> {
    budget.admit(sys, u_min, u_max)?;
    let trop = tropical_frame(sys, u_min, u_max)?;
    f_polynomials_from(sys, &trop, u_min, u_max)
}

/// The recurrence driven by an existing tropical frame covering the range.
pub fn f_polynomials_from(
    sys: &YSystem,
    trop: &CoefficientFrame<TropMonomial>,
    u_min: i64,
    u_max: i64,
) -> Result<FPolyFamily> {
    if u_min > 0 || u_max < 0 {
        return Err(Error::InvalidRange { u_min, u_max });
    }
    let n = sys.size();
    let zero = vec![Poly::one(n); n];

    let mut back: Vec<Vec<Poly>> = Vec::new();
    let mut next = zero.clone();
    for u in (u_min..0).rev() {
        let ys = trop.slice(u)?;
        let mut cur = next.clone();
        // P− entries first: they are the neighbours used by the P+ ones
        for a in (0..n).filter(|&a| sys.parity(a, u) == Sign::Plus) {
            let rhs = recurrence_rhs(sys, &ys[a], &cur, a);
            cur[a] = divide(sys, &rhs, &next[a], a, u)?;
        }
        back.push(cur.clone());
        next = cur;
    }
    back.reverse();

    let mut polys = back;
    polys.push(zero.clone());
    let mut cur = zero;
    for u in 0..u_max {
        let ys = trop.slice(u)?;
        let mut nxt = cur.clone();
        for a in (0..n).filter(|&a| sys.parity(a, u) == Sign::Plus) {
            let rhs = recurrence_rhs(sys, &ys[a], &cur, a);
            nxt[a] = divide(sys, &rhs, &cur[a], a, u + 1)?;
        }
        polys.push(nxt.clone());
        cur = nxt;
    }

    let mut index: HashMap<Poly, usize> = HashMap::new();
    let mut table = Vec::new();
    let atoms = polys
        .iter()
        .map(|slice| {
            slice
                .iter()
                .map(|p| {
                    *index.entry(p.clone()).or_insert_with(|| {
                        table.push(p.clone());
                        table.len() - 1
                    })
                })
                .collect()
        })
        .collect();

    Ok(FPolyFamily {
        pair: sys.to_string(),
        u_min,
        u_max,
        polys,
        atoms,
        table,
    })
}
