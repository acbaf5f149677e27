use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{Sts, StsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum LoopKind {
    /// `x·x = x`, `x·y` the third point of the block.
    Quasigroup,
    /// Identity adjoined as element 0; `x·x = e`.
    Exterior,
    /// `x·y = (a∘x)∘(a∘y)` in the quasigroup, with identity `a`.
    Interior { base: usize },
}

impl LoopKind {
    pub fn name(self) -> &'static str {
        match self {
            LoopKind::Quasigroup => "quasigroup",
            LoopKind::Exterior => "exterior",
            LoopKind::Interior { .. } => "interior",
        }
    }
}

/// A finite Cayley table derived from a triple system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    kind: LoopKind,
    table: Vec<Vec<usize>>,
}

impl FiniteLoop {
    pub fn quasigroup(sts: &Sts) -> Self {
        let m = sts.points();
        let table = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| if x == y { x } else { sts.third(x, y) })
                    .collect()
            })
            .collect();
        FiniteLoop {
            kind: LoopKind::Quasigroup,
            table,
        }
    }

    pub fn exterior(sts: &Sts) -> Self {
        let n = sts.points() + 1;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| match (x, y) {
                        (0, y) => y,
                        (x, 0) => x,
                        (x, y) if x == y => 0,
                        (x, y) => sts.third(x - 1, y - 1) + 1,
                    })
                    .collect()
            })
            .collect();
        FiniteLoop {
            kind: LoopKind::Exterior,
            table,
        }
    }

    /// The interior loop at 0-based point `base`.
    pub fn interior(sts: &Sts, base: usize) -> Result<Self, StsError> {
        let m = sts.points();
        if base >= m {
            return Err(StsError::InvalidBasePoint { point: base + 1, m });
        }
        let q = FiniteLoop::quasigroup(sts);
        let table = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| q.mul(q.mul(base, x), q.mul(base, y)))
                    .collect()
            })
            .collect();
        Ok(FiniteLoop {
            kind: LoopKind::Interior { base },
            table,
        })
    }

    /// Wraps a raw table; rows and columns must be permutations.
    pub fn from_table(kind: LoopKind, table: Vec<Vec<usize>>) -> Result<Self, StsError> {
        let n = table.len();
        let bad = |message: String| StsError::BadTable {
            kind: kind.name(),
            message,
        };
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(bad(format!("entry {v} out of range")));
            }
        }
        if let LoopKind::Interior { base } = kind {
            if base >= n {
                return Err(bad(format!("base {base} out of range")));
            }
        }
        Ok(FiniteLoop { kind, table })
    }

    pub fn kind(&self) -> LoopKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// The neutral element, if the kind has one.
    pub fn identity(&self) -> Option<usize> {
        match self.kind {
            LoopKind::Quasigroup => None,
            LoopKind::Exterior => Some(0),
            LoopKind::Interior { base } => Some(base),
        }
    }

    /// Label of element `x` as printed in tables.
    pub fn label(&self, x: usize) -> String {
        match self.kind {
            LoopKind::Exterior if x == 0 => "e".into(),
            LoopKind::Exterior => x.to_string(),
            _ => (x + 1).to_string(),
        }
    }

    /// Whether every row and column is a permutation.
    pub fn is_latin(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| {
            let row: BTreeSet<usize> = self.table[x].iter().copied().collect();
            let col: BTreeSet<usize> = (0..n).map(|y| self.table[y][x]).collect();
            row.len() == n && col.len() == n
        })
    }

    /// Exhaustive check of the identities defining this kind of table.
    pub fn check_identities(&self) -> Vec<(&'static str, bool)> {
        let n = self.order();
        let all = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| f(x, y)));
        let mut out = vec![("commutative", all(&|x, y| self.mul(x, y) == self.mul(y, x)))];
        if let Some(e) = self.identity() {
            out.push((
                "identity",
                (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x),
            ));
        }
        match self.kind {
            LoopKind::Quasigroup => {
                out.push(("x·x = x", (0..n).all(|x| self.mul(x, x) == x)));
                out.push(("x·(x·y) = y", all(&|x, y| self.mul(x, self.mul(x, y)) == y)));
            }
            LoopKind::Exterior => {
                out.push(("x·x = e", (0..n).all(|x| self.mul(x, x) == 0)));
                out.push(("x·(x·y) = y", all(&|x, y| self.mul(x, self.mul(x, y)) == y)));
            }
            LoopKind::Interior { base } => {
                let sq = |x: usize| self.mul(x, x);
                out.push(("x³ = 1", (0..n).all(|x| self.mul(sq(x), x) == base)));
                out.push((
                    "(x²y²)²y² = x",
                    all(&|x, y| {
                        let t = self.mul(sq(x), sq(y));
                        self.mul(sq(t), sq(y)) == x
                    }),
                ));
            }
        }
        out
    }

    /// Recovers the triple system. Exterior: blocks `{x, y, xy}`; interior:
    /// blocks `{x, y, x²y²}` and `{a, x, x²}`; quasigroup: `{x, y, xy}`.
    pub fn to_sts(&self) -> Result<Sts, StsError> {
        let n = self.order();
        let mut blocks = BTreeSet::new();
        let mut add = |a: usize, b: usize, c: usize| {
            let mut t = [a, b, c];
            t.sort_unstable();
            blocks.insert(t);
        };
        let points = match self.kind {
            LoopKind::Exterior => {
                for x in 1..n {
                    for y in x + 1..n {
                        add(x - 1, y - 1, self.mul(x, y).wrapping_sub(1));
                    }
                }
                n.saturating_sub(1)
            }
            LoopKind::Quasigroup => {
                for x in 0..n {
                    for y in x + 1..n {
                        add(x, y, self.mul(x, y));
                    }
                }
                n
            }
            LoopKind::Interior { base } => {
                let sq = |x: usize| self.mul(x, x);
                for x in 0..n {
                    if x == base {
                        continue;
                    }
                    add(base, x, sq(x));
                    for y in 0..n {
                        if y != base && y != x && y != sq(x) {
                            add(x, y, self.mul(sq(x), sq(y)));
                        }
                    }
                }
                n
            }
        };
        let blocks: Vec<[usize; 3]> = blocks.into_iter().collect();
        Sts::from_blocks(points, &blocks)
    }
}

impl fmt::Display for FiniteLoop {
    /// Comma-separated table with a one-line header naming kind, order and base.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "# {} order={}", self.kind.name(), self.order())?;
        if let LoopKind::Interior { base } = self.kind {
            write!(f, " base={}", base + 1)?;
        }
        writeln!(f)?;
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|&v| self.label(v)).collect();
            writeln!(f, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_hold(l: &FiniteLoop) -> bool {
        l.check_identities().iter().all(|(_, ok)| *ok)
    }

    #[test]
    fn fano_exterior() {
        let l = FiniteLoop::exterior(&Sts::fano());
        assert_eq!(l.order(), 8);
        assert!(all_hold(&l));
        assert!(l.is_latin());
        assert_eq!(l.to_sts().unwrap(), Sts::fano());
    }

    #[test]
    fn fano_interior_identities() {
        let fano = Sts::fano();
        for a in 0..7 {
            let l = FiniteLoop::interior(&fano, a).unwrap();
            assert_eq!(l.identity(), Some(a));
            assert!(all_hold(&l), "{:?}", l.check_identities());
            assert_eq!(l.to_sts().unwrap(), fano);
        }
        assert!(FiniteLoop::interior(&fano, 7).is_err());
    }

    #[test]
    fn quasigroup_round_trip() {
        for sts in [Sts::trivial(), Sts::fano(), Sts::affine_plane_3()] {
            let q = FiniteLoop::quasigroup(&sts);
            assert!(all_hold(&q));
            assert_eq!(q.to_sts().unwrap(), sts);
            let e = FiniteLoop::exterior(&sts);
            assert!(all_hold(&e));
            assert_eq!(e.to_sts().unwrap(), sts);
        }
    }

    #[test]
    fn table_rendering() {
        let l = FiniteLoop::exterior(&Sts::trivial());
        assert_eq!(
            l.to_string(),
            "# exterior order=4\ne,1,2,3\n1,e,3,2\n2,3,e,1\n3,2,1,e\n"
        );
        let i = FiniteLoop::interior(&Sts::trivial(), 0).unwrap();
        assert!(i.to_string().starts_with("# interior order=3 base=1\n"));
    }

    #[test]
    fn corrupted_table_fails_identities() {
        let mut t = FiniteLoop::exterior(&Sts::fano()).table().to_vec();
        t[1][2] = 1;
        let l = FiniteLoop::from_table(LoopKind::Exterior, t).unwrap();
        assert!(!all_hold(&l));
        assert!(!l.is_latin());
    }
}
