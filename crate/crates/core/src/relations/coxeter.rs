//! Coxeter groups by reduced words, independent of any representation.
//!
//! An element is stored as the set of its reduced words, which is closed
//! under braid moves; `ws` is reduced exactly when no word in the class of
//! `w` ends in `s`.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::SphereProfile;

/// A symmetric Coxeter matrix: 1 on the diagonal, `m(s,t) ≥ 2` elsewhere.
/// `None` off the diagonal means no relation between `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    m: Vec<Vec<Option<usize>>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let rank = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::precondition("Coxeter matrix must be square"));
            }
            for (j, &entry) in row.iter().enumerate() {
                if entry != m[j][i] {
                    return Err(Error::precondition("Coxeter matrix must be symmetric"));
                }
                let ok = if i == j {
                    entry == Some(1)
                } else {
                    entry.is_none_or(|k| k >= 2)
                };
                if !ok {
                    return Err(Error::precondition(format!(
                        "invalid Coxeter entry at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { m })
    }

    /// Builds from finite entries; the diagonal is ignored and set to 1.
    pub fn from_orders(m: &[&[usize]]) -> Result<Self> {
        let rows = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &k)| Some(if i == j { 1 } else { k }))
                    .collect()
            })
            .collect();
        CoxeterMatrix::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn order(&self, s: usize, t: usize) -> Option<usize> {
        self.m[s][t]
    }
}

/// All words reachable from `word` by braid moves.
pub fn braid_class(matrix: &CoxeterMatrix, word: &[u8]) -> BTreeSet<Vec<u8>> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut stack = vec![word.to_vec()];
    seen.insert(word.to_vec());
    while let Some(w) = stack.pop() {
        for p in 0..w.len() {
            let s = w[p];
            for t in 0..matrix.rank() as u8 {
                if t == s {
                    continue;
                }
                let Some(k) = matrix.order(s as usize, t as usize) else {
                    continue;
                };
                if p + k > w.len() {
                    continue;
                }
                let alternating = (0..k).all(|q| w[p + q] == if q % 2 == 0 { s } else { t });
                if !alternating {
                    continue;
                }
                let mut next = w.clone();
                for q in 0..k {
                    next[p + q] = if q % 2 == 0 { t } else { s };
                }
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen
}

/// Sphere sizes of the Coxeter group up to `depth`.
pub fn coxeter_bfs(matrix: &CoxeterMatrix, depth: usize, limits: &Limits) -> Result<SphereProfile> {
    let rank = matrix.rank() as u8;
    let mut sizes = vec![1];
    let mut layer: Vec<BTreeSet<Vec<u8>>> = vec![BTreeSet::from([Vec::new()])];
    let mut total = 1;
    for _ in 0..depth {
        let mut next: Vec<BTreeSet<Vec<u8>>> = Vec::new();
        let mut keys: HashSet<Vec<u8>> = HashSet::new();
        for class in &layer {
            let rep = class.first().expect("classes are nonempty");
            for s in 0..rank {
                if class.iter().any(|w| w.last() == Some(&s)) {
                    continue;
                }
                let mut word = rep.clone();
                word.push(s);
                let extended = braid_class(matrix, &word);
                let key = extended.first().unwrap().clone();
                if keys.insert(key) {
                    next.push(extended);
                    total += 1;
                    if total > limits.max_elements {
                        return Err(Error::cap("Coxeter group elements", limits.max_elements));
                    }
                }
            }
        }
        next.sort_by(|a, b| a.first().cmp(&b.first()));
        sizes.push(next.len());
        layer = next;
    }
    Ok(SphereProfile { sizes })
}
