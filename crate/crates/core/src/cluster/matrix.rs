use std::fmt;

use serde::Serialize;

use crate::dynkin::Sign;

/// A skew-symmetric integer exchange matrix together with the bipartition
/// `ε` of its index set.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
    #[serde(skip)]
    parts: Vec<Sign>,
}

impl ExchangeMatrix {
    /// Panics unless `entries` is square and matches `parts` in size.
    pub fn new(entries: Vec<Vec<i64>>, parts: Vec<Sign>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|row| row.len() == n), "exchange matrix must be square");
        assert_eq!(parts.len(), n, "part map size");
        ExchangeMatrix { entries, parts }
    }

    /// An unpartitioned matrix; every index is put in the `+` part.
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Self {
        let n = entries.len();
        Self::new(entries, vec![Sign::Plus; n])
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn part(&self, i: usize) -> Sign {
        self.parts[i]
    }

    pub fn parts(&self) -> &[Sign] {
        &self.parts
    }

    pub fn part_indices(&self, s: Sign) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.parts[i] == s).collect()
    }

    pub fn neg(&self) -> Self {
        ExchangeMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|v| -v).collect())
                .collect(),
            parts: self.parts.clone(),
        }
    }

    pub fn scaled(&self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => self.neg(),
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -self.entries[j][i]))
    }

    /// Nonzero entries only connect opposite parts.
    pub fn is_bipartite(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| self.entries[i][j] == 0 || self.parts[i] != self.parts[j])
        })
    }
}

/// Matrix mutation at `k`.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> ExchangeMatrix {
    let n = b.size();
    let e = &b.entries;
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == k || j == k {
                        -e[i][j]
                    } else {
                        e[i][j] + (e[i][k].abs() * e[k][j] + e[i][k] * e[k][j].abs()) / 2
                    }
                })
                .collect()
        })
        .collect();
    ExchangeMatrix {
        entries,
        parts: b.parts.clone(),
    }
}

/// Composite mutation over a set of indices, applied left to right.
pub fn mutate_matrix_all(b: &ExchangeMatrix, ks: &[usize]) -> ExchangeMatrix {
    ks.iter().fold(b.clone(), |acc, &k| mutate_matrix(&acc, k))
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExchangeMatrix [")?;
        for (row, p) in self.entries.iter().zip(&self.parts) {
            writeln!(f, "  {p} {row:?}")?;
        }
        write!(f, "]")
    }
}
