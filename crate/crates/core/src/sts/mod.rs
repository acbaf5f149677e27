//! Finite Steiner triple systems and the loops built from them.
//!
//! Points are stored 0-based and printed 1-based. In an exterior loop
//! element 0 is the adjoined identity and element `p + 1` is point `p`.

mod aut;
mod decomp;
mod loops;
mod perm;

use std::fmt;

use thiserror::Error;

pub use aut::{
    aut_coincidence, automorphism_group, loop_automorphisms, sts_automorphisms_naive,
    t4_finite_check, AutCoincidence, T4Report,
};
pub use decomp::{mult_group, s_decomposition_check, Check, MultGroup, SDecompositionReport};
pub use loops::{FiniteLoop, LoopKind};
pub use perm::{naive_closure, Perm, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StsError {
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },

    #[error("no blocks given")]
    Empty,

    #[error("point labels must be exactly 1..{m}; label {missing} is unused")]
    GapInLabels { m: usize, missing: usize },

    #[error("an STS on {m} points is impossible: need m ≡ 1 or 3 (mod 6), but {m} ≡ {} (mod 6)", m % 6)]
    OrderViolation { m: usize },

    #[error("pair {{{a}, {b}}} occurs twice (lines {first} and {second})")]
    DuplicatePair {
        a: usize,
        b: usize,
        first: usize,
        second: usize,
    },

    #[error("pair {{{a}, {b}}} is not covered by any block")]
    MissingPair { a: usize, b: usize },

    #[error("{point} is not a point of this system (1..{m})")]
    InvalidBasePoint { point: usize, m: usize },

    #[error("table is not a valid {kind} loop: {message}")]
    BadTable { kind: &'static str, message: String },
}

/// A Steiner triple system on points `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sts {
    m: usize,
    blocks: Vec<[usize; 3]>,
    third: Vec<Vec<usize>>,
}

impl Sts {
    /// Validates and builds from 0-based blocks. `lines[i]` is the source line
    /// of block `i`, used in error messages.
    fn build(m: usize, raw: Vec<[usize; 3]>, lines: &[usize]) -> Result<Self, StsError> {
        if m % 6 != 1 && m % 6 != 3 {
            return Err(StsError::OrderViolation { m });
        }
        let mut third = vec![vec![usize::MAX; m]; m];
        let mut origin = vec![vec![0usize; m]; m];
        for (i, block) in raw.iter().enumerate() {
            for (x, y, z) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                let (a, b) = (block[x], block[y]);
                if third[a][b] != usize::MAX {
                    let (lo, hi) = (a.min(b), a.max(b));
                    return Err(StsError::DuplicatePair {
                        a: lo + 1,
                        b: hi + 1,
                        first: origin[a][b],
                        second: lines[i],
                    });
                }
                third[a][b] = block[z];
                third[b][a] = block[z];
                origin[a][b] = lines[i];
                origin[b][a] = lines[i];
            }
        }
        for (a, row) in third.iter().enumerate() {
            if let Some(b) = (a + 1..m).find(|&b| row[b] == usize::MAX) {
                return Err(StsError::MissingPair { a: a + 1, b: b + 1 });
            }
        }
        let mut blocks: Vec<[usize; 3]> = raw
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable();
        Ok(Sts { m, blocks, third })
    }

    /// Builds from 0-based blocks on `m` points.
    pub fn from_blocks(m: usize, blocks: &[[usize; 3]]) -> Result<Self, StsError> {
        for (i, b) in blocks.iter().enumerate() {
            if b.iter().any(|&p| p >= m) || b[0] == b[1] || b[0] == b[2] || b[1] == b[2] {
                return Err(StsError::MalformedLine {
                    line: i + 1,
                    message: format!("bad block {b:?}"),
                });
            }
        }
        let lines: Vec<usize> = (1..=blocks.len()).collect();
        Self::build(m, blocks.to_vec(), &lines)
    }

    /// Parses one block per line: three positive integer labels separated by
    /// whitespace. `#` starts a comment. The labels used must be exactly `1..m`.
    pub fn parse(text: &str) -> Result<Self, StsError> {
        let mut raw = Vec::new();
        let mut lines = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(StsError::MalformedLine {
                    line: line_no,
                    message: format!("expected 3 labels, found {}", fields.len()),
                });
            }
            let mut block = [0usize; 3];
            for (slot, field) in block.iter_mut().zip(&fields) {
                *slot = match field.parse::<usize>() {
                    Ok(v) if v > 0 => v - 1,
                    _ => {
                        return Err(StsError::MalformedLine {
                            line: line_no,
                            message: format!("`{field}` is not a positive integer"),
                        })
                    }
                };
            }
            if block[0] == block[1] || block[0] == block[2] || block[1] == block[2] {
                return Err(StsError::MalformedLine {
                    line: line_no,
                    message: "repeated point in block".into(),
                });
            }
            raw.push(block);
            lines.push(line_no);
        }
        if raw.is_empty() {
            return Err(StsError::Empty);
        }
        let m = raw.iter().flatten().max().map_or(0, |&p| p + 1);
        let mut used = vec![false; m];
        for &p in raw.iter().flatten() {
            used[p] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(StsError::GapInLabels {
                m,
                missing: missing + 1,
            });
        }
        Self::build(m, raw, &lines)
    }

    pub fn points(&self) -> usize {
        self.m
    }

    /// Blocks with sorted 0-based points, in lexicographic order.
    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }

    /// The third point of the block through distinct points `a` and `b`.
    pub fn third(&self, a: usize, b: usize) -> usize {
        self.third[a][b]
    }

    pub fn check_point(&self, label: usize) -> Result<usize, StsError> {
        if (1..=self.m).contains(&label) {
            Ok(label - 1)
        } else {
            Err(StsError::InvalidBasePoint {
                point: label,
                m: self.m,
            })
        }
    }

    /// Whether `perm` maps blocks to blocks.
    pub fn preserves(&self, perm: &Perm) -> bool {
        perm.degree() == self.m
            && self
                .blocks
                .iter()
                .all(|b| self.third(perm.image(b[0]), perm.image(b[1])) == perm.image(b[2]))
    }

    /// The one-block system on three points.
    pub fn trivial() -> Self {
        Self::from_blocks(3, &[[0, 1, 2]]).expect("valid")
    }

    /// The Fano plane.
    pub fn fano() -> Self {
        Self::parse("1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n").expect("valid")
    }

    /// The affine plane over GF(3): point `3i + j` is `(i, j)`, and the line
    /// through `p` and `q` contains `-(p + q)`.
    pub fn affine_plane_3() -> Self {
        let mut blocks = Vec::new();
        for p in 0..9 {
            for q in p + 1..9 {
                let r = ((6 - p / 3 - q / 3) % 3) * 3 + (6 - p % 3 - q % 3) % 3;
                if r > q {
                    blocks.push([p, q, r]);
                }
            }
        }
        Self::from_blocks(9, &blocks).expect("valid")
    }
}

impl fmt::Display for Sts {
    /// The file format accepted by [`Sts::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            writeln!(f, "{} {} {}", b[0] + 1, b[1] + 1, b[2] + 1)?;
        }
        Ok(())
    }
}
