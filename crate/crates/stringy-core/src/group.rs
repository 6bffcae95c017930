//! Finite groups as explicit multiplication tables, plus the symmetric
//! groups in cycle notation.
//!
//! Elements are indexed; names are only labels. The constructor derives the
//! identity and inverse tables and fails fast on gross defects, while
//! [`Group::check_axioms`] re-verifies closure, associativity, identity and
//! inverses exhaustively for the validation report.

use crate::error::{Error, Result};
use crate::report::Report;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct Group {
    pub names: Vec<String>,
    /// `table[i*n + j]` is the index of `g_i · g_j`.
    table: Vec<usize>,
    inverse: Vec<usize>,
    pub identity: usize,
}

impl Group {
    pub fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Group> {
        let n = names.len();
        if table.len() != n * n {
            return Err(Error::InvalidGroup("table size".into()));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] == j && table[j * n + e] == j))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i * n + j] == identity && table[j * n + i] == identity) {
                Some(j) => inverse[i] = j,
                None => {
                    return Err(Error::InvalidGroup(format!("{} has no inverse", names[i])));
                }
            }
        }
        Ok(Group {
            names,
            table,
            inverse,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Order of the element `g_i`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut acc = i;
        while acc != self.identity {
            acc = self.mul(acc, i);
            k += 1;
        }
        k
    }

    /// Exhaustive re-check of the group axioms on the table.
    pub fn check_axioms(&self) -> Report {
        let mut report = Report::new();
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    report.check(
                        "group.associativity",
                        || {
                            format!(
                                "({},{},{})",
                                self.name(i),
                                self.name(j),
                                self.name(k)
                            )
                        },
                        self.mul(self.mul(i, j), k) == self.mul(i, self.mul(j, k)),
                    );
                }
            }
        }
        for i in 0..n {
            report.check(
                "group.identity",
                || self.name(i).to_string(),
                self.mul(self.identity, i) == i && self.mul(i, self.identity) == i,
            );
            report.check(
                "group.inverse",
                || self.name(i).to_string(),
                self.mul(i, self.inv(i)) == self.identity,
            );
        }
        report
    }

    /// Cyclic group of order `n`: elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = (i + j) % n;
            }
        }
        Group::from_table(names, table).expect("cyclic table is a group")
    }

    /// Symmetric group on `{1..n}` in cycle notation, elements ordered
    /// lexicographically by one-line notation so the identity comes first.
    pub fn symmetric(n: usize) -> Group {
        let perms = permutations(n);
        let names = perms.iter().map(|p| cycle_name(p)).collect::<Vec<_>>();
        let size = perms.len();
        let mut table = vec![0; size * size];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let pq = compose(p, q);
                let k = perms.iter().position(|r| r == &pq).expect("closed");
                table[i * size + j] = k;
            }
        }
        Group::from_table(names, table).expect("symmetric table is a group")
    }
}

/// All permutations of `{0..n}` in lexicographic order of one-line notation.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        depth: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current[depth] = v;
                rec(n, depth + 1, current, used, out);
                used[v] = false;
            }
        }
    }
    rec(n, 0, &mut current, &mut used, &mut out);
    out
}

/// `p ∘ q`: apply `q` first, then `p`. With this convention
/// `(12)·(23) = (123)`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Cycles of `p`, each starting at its minimum, sorted by minimum; fixed
/// points included as singletons.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = p[start];
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            cur = p[cur];
        }
        out.push(cyc);
    }
    out
}

/// Cycle notation with 1-based points: identity is `e`, fixed points are
/// dropped, e.g. `(12)(34)`.
pub fn cycle_name(p: &[usize]) -> String {
    let mut parts = Vec::new();
    for cyc in cycles(p) {
        if cyc.len() < 2 {
            continue;
        }
        let body: String = cyc.iter().map(|&x| (x + 1).to_string()).collect();
        parts.push(format!("({body})"));
    }
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.concat()
    }
}
