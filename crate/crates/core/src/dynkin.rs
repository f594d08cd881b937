//! Simply laced Dynkin diagrams and the root-system data the Y-system
//! needs: Cartan matrices, bipartitions, Coxeter numbers, the diagram
//! involution, and the piecewise-linear maps `tau_±` with their d-vectors.
//!
//! Nodes are 0-based internally and follow the Bourbaki labeling. They are
//! printed and serialized 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// A sign `±`, used for bipartition parts and parity conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign of `(-1)^u`.
    pub fn of_parity(u: i64) -> Sign {
        if u.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// An element of the root lattice in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn neg_simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = -1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `Some(i)` if this is `-alpha_i`.
    pub fn as_neg_simple(&self) -> Option<usize> {
        let mut found = None;
        for (k, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                -1 if found.is_none() => found = Some(k),
                _ => return None,
            }
        }
        found
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    adjacency: Vec<Vec<bool>>,
    parts: Vec<Sign>,
    coxeter_number: usize,
    omega: Vec<usize>,
    positive_roots: Vec<RootVector>,
}

impl DynkinDiagram {
    /// Builds the diagram in Bourbaki labeling with `I+` = nodes at even
    /// distance from node 1.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !valid {
            return Err(Error::InvalidDiagram {
                family: family.to_string(),
                rank,
            });
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match family {
            Family::A => edges.extend((0..rank.saturating_sub(1)).map(|i| (i, i + 1))),
            Family::D => {
                edges.extend((0..rank - 2).map(|i| (i, i + 1)));
                edges.push((rank - 3, rank - 1));
            }
            Family::E => {
                // 1-3-4-5-6(-7-8) with 2 attached to 4
                edges.push((0, 2));
                edges.push((1, 3));
                edges.extend((2..rank - 1).map(|i| (i, i + 1)));
            }
        }
        let mut adjacency = vec![vec![false; rank]; rank];
        for &(a, b) in &edges {
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }

        let parts = bipartition_from_node0(&adjacency);
        let omega = diagram_involution(family, rank);
        let mut d = DynkinDiagram {
            family,
            rank,
            adjacency,
            parts,
            coxeter_number: 0,
            omega,
            positive_roots: Vec::new(),
        };
        d.coxeter_number = d.coxeter_element_order();
        d.positive_roots = d.enumerate_positive_roots();
        debug_assert_eq!(d.positive_roots.len(), d.rank * d.coxeter_number / 2);
        Ok(d)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.rank
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i]
            .iter()
            .enumerate()
            .filter_map(|(j, &a)| a.then_some(j))
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if self.adjacency[i][j] {
            -1
        } else {
            0
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.nodes()
            .map(|i| self.nodes().map(|j| self.cartan(i, j)).collect())
            .collect()
    }

    pub fn part(&self, i: usize) -> Sign {
        self.parts[i]
    }

    pub fn part_nodes(&self, s: Sign) -> Vec<usize> {
        self.nodes().filter(|&i| self.parts[i] == s).collect()
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    pub fn dim_g(&self) -> usize {
        self.rank * (self.coxeter_number + 1)
    }

    pub fn omega(&self, i: usize) -> usize {
        self.omega[i]
    }

    /// Whether `omega` maps `I+` onto `I+` (otherwise it swaps the parts).
    pub fn omega_preserves_parts(&self) -> bool {
        self.nodes().all(|i| self.parts[self.omega[i]] == self.parts[i])
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    /// Same diagram with `I+` and `I-` exchanged.
    pub fn with_swapped_bipartition(&self) -> Self {
        let mut d = self.clone();
        for p in &mut d.parts {
            *p = p.flip();
        }
        d
    }

    /// Simple reflection `s_i` in the simple-root basis.
    pub fn reflect(&self, i: usize, v: &RootVector) -> RootVector {
        let pairing: i64 = self.nodes().map(|k| self.cartan(i, k) * v.0[k]).sum();
        let mut out = v.clone();
        out.0[i] -= pairing;
        out
    }

    /// `t_± = prod_{i in I±} s_i`. The factors commute.
    pub fn t(&self, s: Sign, v: &RootVector) -> RootVector {
        self.nodes()
            .filter(|&i| self.parts[i] == s)
            .fold(v.clone(), |acc, i| self.reflect(i, &acc))
    }

    pub fn in_root_set(&self, v: &RootVector) -> bool {
        v.0.len() == self.rank
            && (v.as_neg_simple().is_some() || self.positive_roots.binary_search(v).is_ok())
    }

    /// Piecewise-linear `tau_±` on the set of positive roots and negative
    /// simple roots.
    pub fn tau(&self, s: Sign, alpha: &RootVector) -> Result<RootVector> {
        if !self.in_root_set(alpha) {
            return Err(Error::NotInRootSet(alpha.0.clone()));
        }
        if let Some(i) = alpha.as_neg_simple() {
            if self.parts[i] == s.flip() {
                return Ok(alpha.clone());
            }
        }
        Ok(self.t(s, alpha))
    }

    /// `d(i, u)` for `i in I+`, `u` even or `i in I-`, `u` odd (`u >= 0`).
    pub fn d_vector(&self, i: usize, u: i64) -> Result<RootVector> {
        let parity = Sign::of_parity(u);
        if u < 0 || i >= self.rank || parity != self.parts[i] {
            return Err(Error::DVectorParity { node: i + 1, u });
        }
        let mut v = RootVector::neg_simple(self.rank, i);
        let mut steps = u;
        if self.parts[i] == Sign::Minus {
            v = self.tau(Sign::Minus, &v)?;
            steps -= 1;
        }
        for _ in 0..steps / 2 {
            v = self.tau(Sign::Plus, &v)?;
            v = self.tau(Sign::Minus, &v)?;
        }
        if (1..=self.coxeter_number as i64).contains(&u) && !v.is_positive() {
            return Err(Error::Invariant(format!(
                "d({}, {u}) = {:?} is not a positive root",
                i + 1,
                v.0
            )));
        }
        Ok(v)
    }

    /// Order of `c = t_+ t_-` acting on the root lattice.
    fn coxeter_element_order(&self) -> usize {
        let basis: Vec<RootVector> = self.nodes().map(|i| RootVector::simple(self.rank, i)).collect();
        let apply_c = |v: &RootVector| self.t(Sign::Plus, &self.t(Sign::Minus, v));
        let mut images = basis.clone();
        for n in 1.. {
            images = images.iter().map(apply_c).collect();
            if images == basis {
                return n;
            }
        }
        unreachable!()
    }

    /// Closure of the simple roots under simple reflections, keeping the
    /// positive images. Sorted.
    fn enumerate_positive_roots(&self) -> Vec<RootVector> {
        let mut seen: BTreeSet<RootVector> = BTreeSet::new();
        let mut queue: VecDeque<RootVector> = VecDeque::new();
        for i in self.nodes() {
            let a = RootVector::simple(self.rank, i);
            seen.insert(a.clone());
            queue.push_back(a);
        }
        let max_height = self.coxeter_number as i64;
        while let Some(v) = queue.pop_front() {
            for i in self.nodes() {
                let w = self.reflect(i, &v);
                if w.is_positive() && w.height() <= max_height && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn bipartition_from_node0(adjacency: &[Vec<bool>]) -> Vec<Sign> {
    let r = adjacency.len();
    let mut dist = vec![usize::MAX; r];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for b in 0..r {
            if adjacency[a][b] && dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    dist.iter()
        .map(|d| if d % 2 == 0 { Sign::Plus } else { Sign::Minus })
        .collect()
}

/// The involution used for half periodicity: nontrivial for `A_r` (r >= 2),
/// `D_r` (r odd) and `E6`; identity otherwise (including `D_r`, r even).
fn diagram_involution(family: Family, rank: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (0..rank).collect();
    match (family, rank) {
        (Family::A, _) => w.reverse(),
        (Family::D, r) if r % 2 == 1 => w.swap(r - 2, r - 1),
        (Family::E, 6) => {
            w.swap(0, 5);
            w.swap(2, 4);
        }
        _ => {}
    }
    w
}

impl FromStr for DynkinDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::DiagramSpec(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::DiagramSpec(s.to_string()))?;
        DynkinDiagram::new(family, rank)
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl Serialize for DynkinDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            family: Family,
            rank: usize,
            h: usize,
            #[serde(rename = "I_plus")]
            i_plus: Vec<usize>,
            #[serde(rename = "I_minus")]
            i_minus: Vec<usize>,
            omega: Vec<usize>,
        }
        let one_based = |v: Vec<usize>| v.into_iter().map(|i| i + 1).collect();
        Repr {
            family: self.family,
            rank: self.rank,
            h: self.coxeter_number,
            i_plus: one_based(self.part_nodes(Sign::Plus)),
            i_minus: one_based(self.part_nodes(Sign::Minus)),
            omega: one_based(self.omega.clone()),
        }
        .serialize(serializer)
    }
}

/// Shorthand for `s.parse::<DynkinDiagram>()`.
pub fn parse_diagram(s: &str) -> Result<DynkinDiagram> {
    s.parse()
}

/// All diagrams `A1..A_max_a`, `D4..D_max_d`, `E6..E_max_e` in that order.
pub fn diagrams_up_to(max_a: usize, max_d: usize, max_e: usize) -> Vec<DynkinDiagram> {
    let mut out = Vec::new();
    for r in 1..=max_a {
        out.push(DynkinDiagram::new(Family::A, r).unwrap());
    }
    for r in 4..=max_d {
        out.push(DynkinDiagram::new(Family::D, r).unwrap());
    }
    for r in 6..=max_e.min(8) {
        out.push(DynkinDiagram::new(Family::E, r).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dia(s: &str) -> DynkinDiagram {
        s.parse().unwrap()
    }

    /// Independent oracle: Coxeter number as the order of the Coxeter
    /// element computed by explicit integer matrix powers.
    fn coxeter_order_by_matrices(d: &DynkinDiagram) -> usize {
        let r = d.rank();
        let refl = |i: usize| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; r]; r];
            for (k, row) in m.iter_mut().enumerate() {
                row[k] = 1;
            }
            for k in 0..r {
                m[i][k] -= d.cartan(i, k);
            }
            m
        };
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..r)
                .map(|i| (0..r).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect()
        };
        let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        let mut c = id.clone();
        for i in d.part_nodes(Sign::Plus) {
            c = mul(&c, &refl(i));
        }
        for i in d.part_nodes(Sign::Minus) {
            c = mul(&c, &refl(i));
        }
        let mut p = c.clone();
        let mut n = 1;
        while p != id {
            p = mul(&p, &c);
            n += 1;
        }
        n
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(dia("A1").coxeter_number(), 2);
        assert_eq!(dia("A2").coxeter_number(), 3);
        assert_eq!(dia("A3").coxeter_number(), 4);
        assert_eq!(dia("D4").coxeter_number(), 6);
        assert_eq!(dia("E6").coxeter_number(), 12);
        assert_eq!(dia("E7").coxeter_number(), 18);
        assert_eq!(dia("E8").coxeter_number(), 30);
        for d in diagrams_up_to(8, 8, 8) {
            assert_eq!(d.coxeter_number(), coxeter_order_by_matrices(&d), "{d}");
            assert_eq!(d.positive_roots().len(), d.rank() * d.coxeter_number() / 2, "{d}");
            assert_eq!(d.dim_g(), d.rank() * (d.coxeter_number() + 1));
        }
    }

    #[test]
    fn build_rejects_invalid_types() {
        assert!(DynkinDiagram::new(Family::A, 0).is_err());
        assert!(DynkinDiagram::new(Family::D, 3).is_err());
        assert!(DynkinDiagram::new(Family::E, 9).is_err());
        assert!("B3".parse::<DynkinDiagram>().is_err());
        assert!("Ax".parse::<DynkinDiagram>().is_err());
        assert_eq!(dia("e6"), dia("E6"));
    }

    #[test]
    fn structural_invariants() {
        for d in diagrams_up_to(8, 8, 8) {
            for i in d.nodes() {
                assert!(!d.adjacent(i, i));
                assert_eq!(d.omega(d.omega(i)), i);
                for j in d.nodes() {
                    assert_eq!(d.adjacent(i, j), d.adjacent(j, i));
                    assert_eq!(d.adjacent(d.omega(i), d.omega(j)), d.adjacent(i, j));
                    if d.cartan(i, j) < 0 {
                        assert_ne!(d.part(i), d.part(j));
                    }
                }
            }
        }
    }

    #[test]
    fn omega_conventions() {
        let a1 = dia("A1");
        assert_eq!(a1.omega(0), 0);
        let a3 = dia("A3");
        assert_eq!((a3.omega(0), a3.omega(1), a3.omega(2)), (2, 1, 0));
        assert!(a3.omega_preserves_parts());
        assert!(!dia("A2").omega_preserves_parts());
        let d4 = dia("D4");
        assert!(d4.nodes().all(|i| d4.omega(i) == i));
        let d5 = dia("D5");
        assert_eq!((d5.omega(3), d5.omega(4)), (4, 3));
        let e6 = dia("E6");
        assert_eq!(e6.omega(0), 5);
        assert_eq!(e6.omega(1), 1);
        assert!(dia("E7").nodes().all(|i| dia("E7").omega(i) == i));
    }

    #[test]
    fn bipartition_matches_worked_examples() {
        let a3 = dia("A3");
        assert_eq!(a3.part_nodes(Sign::Plus), vec![0, 2]);
        assert_eq!(a3.part_nodes(Sign::Minus), vec![1]);
        let a2 = dia("A2");
        assert_eq!(a2.part_nodes(Sign::Plus), vec![0]);
    }

    #[test]
    fn tau_examples() {
        let a2 = dia("A2");
        let v = |c: &[i64]| RootVector(c.to_vec());
        assert_eq!(a2.tau(Sign::Plus, &v(&[-1, 0])).unwrap(), v(&[1, 0]));
        assert_eq!(a2.tau(Sign::Minus, &v(&[-1, 0])).unwrap(), v(&[-1, 0]));
        assert_eq!(a2.tau(Sign::Minus, &v(&[1, 0])).unwrap(), v(&[1, 1]));
        assert!(matches!(
            a2.tau(Sign::Plus, &v(&[2, 0])),
            Err(Error::NotInRootSet(_))
        ));
        assert!(a2.tau(Sign::Plus, &v(&[-1, -1])).is_err());
    }

    #[test]
    fn tau_is_an_involution() {
        for d in diagrams_up_to(6, 6, 8) {
            let mut set: Vec<RootVector> = d.positive_roots().to_vec();
            set.extend(d.nodes().map(|i| RootVector::neg_simple(d.rank(), i)));
            for s in [Sign::Plus, Sign::Minus] {
                for a in &set {
                    let b = d.tau(s, a).unwrap();
                    assert!(d.in_root_set(&b), "{d}: tau{s}({a:?})");
                    assert_eq!(&d.tau(s, &b).unwrap(), a, "{d}");
                }
            }
        }
    }

    #[test]
    fn d_vector_examples() {
        let a2 = dia("A2");
        assert_eq!(a2.d_vector(0, 0).unwrap().0, vec![-1, 0]);
        assert_eq!(a2.d_vector(0, 2).unwrap().0, vec![1, 1]);
        assert_eq!(a2.d_vector(1, 1).unwrap().0, vec![0, 1]);
        assert!(matches!(a2.d_vector(0, 1), Err(Error::DVectorParity { .. })));
        assert!(a2.d_vector(1, 2).is_err());
    }

    #[test]
    fn d_vectors_are_positive_roots_up_to_h() {
        for d in diagrams_up_to(7, 7, 8) {
            let h = d.coxeter_number() as i64;
            for i in d.nodes() {
                for u in 1..=h {
                    if Sign::of_parity(u) == d.part(i) {
                        let v = d.d_vector(i, u).unwrap();
                        assert!(d.positive_roots().binary_search(&v).is_ok(), "{d} d({i},{u})");
                    }
                }
            }
        }
    }

    #[test]
    fn serializes_one_based() {
        let j = serde_json::to_value(dia("A3")).unwrap();
        assert_eq!(j["h"], 4);
        assert_eq!(j["I_plus"], serde_json::json!([1, 3]));
        assert_eq!(j["I_minus"], serde_json::json!([2]));
        assert_eq!(j["omega"], serde_json::json!([3, 2, 1]));
    }
}
