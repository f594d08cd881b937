use std::fmt;
use std::str::FromStr;

use crate::dynkin::{DynkinDiagram, Sign};
use crate::error::{Error, Result};

use super::matrix::ExchangeMatrix;

/// Which exchange rule the frame builders apply. `FlippedSign` is a
/// deliberately broken rule used to check that the verifiers notice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExchangeRule {
    #[default]
    Standard,
    FlippedSign,
}

/// The Y-system of a pair of simply laced diagrams `(X, X')`: the index set
/// `I × I'` in lexicographic order, the square-product exchange matrix and
/// the incidence matrices `M`, `M'`.
#[derive(Clone)]
pub struct YSystem {
    x: DynkinDiagram,
    xp: DynkinDiagram,
    b: ExchangeMatrix,
    m: Vec<Vec<u8>>,
    mp: Vec<Vec<u8>>,
    rule: ExchangeRule,
}

impl YSystem {
    pub fn new(x: DynkinDiagram, xp: DynkinDiagram) -> Self {
        let b = square_product(&x, &xp);
        let (m, mp) = incidence_matrices(&x, &xp);
        YSystem {
            x,
            xp,
            b,
            m,
            mp,
            rule: ExchangeRule::Standard,
        }
    }

    pub fn with_rule(mut self, rule: ExchangeRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn rule(&self) -> ExchangeRule {
        self.rule
    }

    pub fn x(&self) -> &DynkinDiagram {
        &self.x
    }

    pub fn x_prime(&self) -> &DynkinDiagram {
        &self.xp
    }

    /// The same pair with the two diagrams exchanged.
    pub fn dual(&self) -> YSystem {
        YSystem::new(self.xp.clone(), self.x.clone()).with_rule(self.rule)
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn m(&self, a: usize, b: usize) -> u8 {
        self.m[a][b]
    }

    pub fn m_prime(&self, a: usize, b: usize) -> u8 {
        self.mp[a][b]
    }

    pub fn r(&self) -> usize {
        self.x.rank()
    }

    pub fn r_prime(&self) -> usize {
        self.xp.rank()
    }

    pub fn h(&self) -> usize {
        self.x.coxeter_number()
    }

    pub fn h_prime(&self) -> usize {
        self.xp.coxeter_number()
    }

    pub fn rank_product(&self) -> usize {
        self.r() * self.r_prime()
    }

    /// `2(h + h')`.
    pub fn period(&self) -> i64 {
        2 * (self.h() + self.h_prime()) as i64
    }

    pub fn half_period(&self) -> i64 {
        (self.h() + self.h_prime()) as i64
    }

    /// Number of indices `|I × I'|`.
    pub fn size(&self) -> usize {
        self.rank_product()
    }

    pub fn index(&self, i: usize, ip: usize) -> usize {
        i * self.r_prime() + ip
    }

    pub fn unindex(&self, a: usize) -> (usize, usize) {
        (a / self.r_prime(), a % self.r_prime())
    }

    /// `"y_(i,i')"` with 1-based labels.
    pub fn label(&self, a: usize) -> String {
        let (i, ip) = self.unindex(a);
        format!("y_({},{})", i + 1, ip + 1)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.size()).map(|a| self.label(a)).collect()
    }

    /// `ε(𝐢)`.
    pub fn part(&self, a: usize) -> Sign {
        self.b.part(a)
    }

    pub fn part_indices(&self, s: Sign) -> Vec<usize> {
        self.b.part_indices(s)
    }

    /// `P+` or `P−` for `(𝐢, u)`.
    pub fn parity(&self, a: usize, u: i64) -> Sign {
        parity(self.part(a), u)
    }

    /// The part mutated on the step `u → u+1`.
    pub fn step_part(u: i64) -> Sign {
        Sign::of_parity(u)
    }

    /// `(ω(i), ω'(i'))`.
    pub fn omega(&self, a: usize) -> usize {
        let (i, ip) = self.unindex(a);
        self.index(self.x.omega(i), self.xp.omega(ip))
    }

    /// Indices `(j, i')` with `j ∼ i`.
    pub fn x_neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&b| self.m[b][a] == 1)
    }

    /// Indices `(i, j')` with `j' ∼ i'`.
    pub fn xp_neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&b| self.mp[b][a] == 1)
    }

    /// 1-based `(i, i')`, for error messages and reports.
    pub fn one_based(&self, a: usize) -> (usize, usize) {
        let (i, ip) = self.unindex(a);
        (i + 1, ip + 1)
    }

    pub fn backend_error(&self, a: usize, u: i64, message: impl Into<String>) -> Error {
        let (i, ip) = self.one_based(a);
        Error::Backend {
            i,
            ip,
            u,
            message: message.into(),
        }
    }

    pub fn require_positive_parity(&self, a: usize, u: i64) -> Result<()> {
        if self.parity(a, u) != Sign::Plus {
            let (i, ip) = self.one_based(a);
            return Err(Error::NotPositiveParity { i, ip, u });
        }
        Ok(())
    }
}

impl fmt::Display for YSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.x, self.xp)
    }
}

impl fmt::Debug for YSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YSystem({self}, {:?})", self.rule)
    }
}

impl FromStr for YSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (a, b) = lower
            .split_once('x')
            .ok_or_else(|| Error::PairSpec(s.to_string()))?;
        let x = a.parse().map_err(|_| Error::PairSpec(s.to_string()))?;
        let xp = b.parse().map_err(|_| Error::PairSpec(s.to_string()))?;
        Ok(YSystem::new(x, xp))
    }
}

pub fn parse_pair(s: &str) -> Result<YSystem> {
    s.parse()
}

/// `P+` iff `ε(𝐢)(−1)^u = +`.
pub fn parity(part: Sign, u: i64) -> Sign {
    part * Sign::of_parity(u)
}

/// The square-product exchange matrix `B(X, X')`.
pub fn square_product(x: &DynkinDiagram, xp: &DynkinDiagram) -> ExchangeMatrix {
    use Sign::{Minus as M, Plus as P};
    let rp = xp.rank();
    let n = x.rank() * rp;
    let idx = |a: usize| (a / rp, a % rp);
    let parts: Vec<Sign> = (0..n)
        .map(|a| {
            let (i, ip) = idx(a);
            x.part(i) * xp.part(ip)
        })
        .collect();
    let mut e = vec![vec![0i64; n]; n];
    for a in 0..n {
        let (i, ip) = idx(a);
        let pa = (x.part(i), xp.part(ip));
        for b in 0..n {
            let (j, jp) = idx(b);
            let pb = (x.part(j), xp.part(jp));
            let c = if ip == jp && i != j { x.cartan(i, j) } else { 0 };
            let cp = if i == j && ip != jp { xp.cartan(ip, jp) } else { 0 };
            e[a][b] = match (pa, pb) {
                ((M, P), (P, P)) | ((P, M), (M, M)) => -c,
                ((P, P), (M, P)) | ((M, M), (P, M)) => c,
                ((P, P), (P, M)) | ((M, M), (M, P)) => -cp,
                ((P, M), (P, P)) | ((M, P), (M, M)) => cp,
                _ => 0,
            };
        }
    }
    ExchangeMatrix::new(e, parts)
}

/// `M_𝐢𝐣 = 1` iff `i ∼ j, i' = j'`; `M'_𝐢𝐣 = 1` iff `i = j, i' ∼ j'`.
pub fn incidence_matrices(x: &DynkinDiagram, xp: &DynkinDiagram) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
    let rp = xp.rank();
    let n = x.rank() * rp;
    let mut m = vec![vec![0u8; n]; n];
    let mut mp = vec![vec![0u8; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (i, ip) = (a / rp, a % rp);
            let (j, jp) = (b / rp, b % rp);
            m[a][b] = u8::from(ip == jp && x.adjacent(i, j));
            mp[a][b] = u8::from(i == j && xp.adjacent(ip, jp));
        }
    }
    (m, mp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::matrix::mutate_matrix_all;

    fn sys(s: &str) -> YSystem {
        s.parse().unwrap()
    }

    #[test]
    fn square_product_examples() {
        assert_eq!(sys("A1xA2").matrix().entries(), &[vec![0, 1], vec![-1, 0]]);
        assert_eq!(sys("A1xA1").matrix().entries(), &[vec![0]]);
        let b = sys("A2xA1");
        let v = b.matrix().get(0, 1);
        assert_eq!(v.abs(), 1);
        // (1,1') is in 𝐈+, (2,1') in 𝐈−: case (++) -> (−+) gives C_12 = −1
        assert_eq!(b.part(0), Sign::Plus);
        assert_eq!(v, -1);
    }

    #[test]
    fn pair_parsing() {
        let s = sys("a3Xa2");
        assert_eq!(s.to_string(), "A3xA2");
        assert_eq!(s.size(), 6);
        assert_eq!(s.period(), 14);
        assert!("A3".parse::<YSystem>().is_err());
        assert!("A0xA1".parse::<YSystem>().is_err());
    }

    #[test]
    fn incidence_examples() {
        let s = sys("A1xA2");
        assert_eq!(s.m(0, 1), 0);
        assert_eq!(s.m_prime(0, 1), 1);
        let s = sys("A2xA1");
        assert_eq!(s.m(0, 1), 1);
        assert_eq!(s.m_prime(0, 1), 0);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity(Sign::Plus, 0), Sign::Plus);
        assert_eq!(parity(Sign::Plus, 1), Sign::Minus);
        assert_eq!(parity(Sign::Minus, 1), Sign::Plus);
        assert_eq!(parity(Sign::Minus, -2), Sign::Minus);
    }

    #[test]
    fn square_product_invariants_for_all_small_pairs() {
        let ds = crate::dynkin::diagrams_up_to(5, 6, 6);
        for x in &ds {
            for xp in &ds {
                if x.rank() * xp.rank() > 24 {
                    continue;
                }
                let s = YSystem::new(x.clone(), xp.clone());
                let b = s.matrix();
                assert!(b.is_skew_symmetric(), "{s}");
                assert!(b.is_bipartite(), "{s}");
                let neg = b.neg();
                for part in [Sign::Plus, Sign::Minus] {
                    let mut ks = s.part_indices(part);
                    assert_eq!(mutate_matrix_all(b, &ks), neg, "{s} {part}");
                    ks.reverse();
                    assert_eq!(mutate_matrix_all(b, &ks), neg, "{s} {part} reversed");
                }
                for a in 0..s.size() {
                    for c in 0..s.size() {
                        assert_eq!(s.m(a, c), s.m(c, a));
                        assert_eq!(s.m_prime(a, c), s.m_prime(c, a));
                        // B is supported on the union of the two incidences
                        if b.get(a, c) != 0 {
                            assert_eq!(s.m(a, c) + s.m_prime(a, c), 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_matrix_is_negated_transpose_relabeling() {
        let s = sys("A3xA2");
        let d = s.dual();
        for a in 0..s.size() {
            for c in 0..s.size() {
                let (i, ip) = s.unindex(a);
                let (j, jp) = s.unindex(c);
                assert_eq!(
                    d.matrix().get(d.index(ip, i), d.index(jp, j)),
                    -s.matrix().get(a, c)
                );
            }
        }
    }
}
