//! Relations in the automorphism group of the free Steiner loop on three
//! generators.
//!
//! The group is generated by the swaps `(12)`, `(13)` and `φ = e1(x2)`. Known
//! identities are checked by direct evaluation; growth of the generated
//! groups is compared against independent enumerations of the candidate
//! presentations, a Coxeter group for `⟨φ, (12), (13)⟩` and the free
//! product `S3 * C2` for the stabilizer `⟨φ, τ, ξ⟩` of `x3`.

mod cayley;
mod coxeter;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automorphism::{ElementaryAut, Endomorphism};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::words::SWord;

pub use cayley::{cayley_bfs, evaluate_letters, CayleyBfs, Involution, RelationReport, Relator};
pub use coxeter::{braid_class, coxeter_bfs, CoxeterMatrix};

/// Counts of group elements at each word length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereProfile {
    pub sizes: Vec<usize>,
}

impl SphereProfile {
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Named generators of `Aut(S(x1, x2, x3))` and of the stabilizer of `x3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLetter {
    /// `e1(x2)`: `x1 ↦ x1·x2`.
    Phi,
    /// Swap of `x1` and `x2`.
    S12,
    /// Swap of `x1` and `x3`.
    S13,
    /// Same map as [`GroupLetter::S12`], named as a generator of the stabilizer.
    Tau,
    /// `e1(x3)`: `x1 ↦ x1·x3`.
    Xi,
}

impl GroupLetter {
    pub const ALL: [GroupLetter; 5] = [
        GroupLetter::Phi,
        GroupLetter::S12,
        GroupLetter::S13,
        GroupLetter::Tau,
        GroupLetter::Xi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupLetter::Phi => "phi",
            GroupLetter::S12 => "(12)",
            GroupLetter::S13 => "(13)",
            GroupLetter::Tau => "tau",
            GroupLetter::Xi => "xi",
        }
    }

    pub fn automorphism(self) -> Endomorphism {
        match self {
            GroupLetter::Phi => elementary(0, SWord::generator(1)),
            GroupLetter::S12 | GroupLetter::Tau => Endomorphism::transposition(3, 0, 1),
            GroupLetter::S13 => Endomorphism::transposition(3, 0, 2),
            GroupLetter::Xi => elementary(0, SWord::generator(2)),
        }
    }

    pub fn involution(self) -> Involution {
        Involution::new(self.name(), self.automorphism()).expect("group letters are involutions")
    }
}

impl fmt::Display for GroupLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "phi" | "φ" => Ok(GroupLetter::Phi),
            "12" | "(12)" | "s12" => Ok(GroupLetter::S12),
            "13" | "(13)" | "s13" => Ok(GroupLetter::S13),
            "tau" | "τ" => Ok(GroupLetter::Tau),
            "xi" | "ξ" => Ok(GroupLetter::Xi),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }
}

fn elementary(target: usize, v: SWord) -> Endomorphism {
    ElementaryAut::new(3, target, v)
        .expect("valid elementary automorphism")
        .to_endomorphism()
}

/// Right-action product of the letters, leftmost applied first.
pub fn eval_word(letters: &[GroupLetter]) -> Endomorphism {
    letters.iter().fold(Endomorphism::identity(3), |acc, l| {
        acc.compose(&l.automorphism())
            .expect("three generators throughout")
    })
}

fn product(maps: &[Endomorphism]) -> Endomorphism {
    let n = maps.first().map_or(3, Endomorphism::size);
    maps.iter().fold(Endomorphism::identity(n), |acc, m| {
        acc.compose(m).expect("same alphabet")
    })
}

fn power(map: &Endomorphism, k: usize) -> Endomorphism {
    product(&vec![map.clone(); k])
}

/// One identity checked by evaluating both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn check(name: impl Into<String>, lhs: &Endomorphism, rhs: &Endomorphism) -> RelationCheck {
    RelationCheck {
        name: name.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs == rhs,
    }
}

/// Evaluates every identity known for `Aut(S(x1, x2, x3))`.
pub fn verify_known_relations() -> Vec<RelationCheck> {
    use GroupLetter::*;
    let id = Endomorphism::identity(3);
    let e = |i: usize, j: usize| elementary(i - 1, SWord::generator(j - 1));
    let phi = Phi.automorphism();
    let s12 = S12.automorphism();
    let s13 = S13.automorphism();
    let s23 = Endomorphism::transposition(3, 1, 2);
    let c123 = product(&[s12.clone(), s13.clone()]);
    let c132 = product(&[s13.clone(), s12.clone()]);
    let xi = Xi.automorphism();
    let tau = Tau.automorphism();
    let e1_x2x3 = elementary(0, SWord::generator(2).mul(&SWord::generator(1)));

    let mut out = vec![
        check(
            "(phi (12))^3 = 1",
            &power(&product(&[phi.clone(), s12.clone()]), 3),
            &id,
        ),
        check(
            "(phi (13))^4 = 1",
            &power(&product(&[phi.clone(), s13.clone()]), 4),
            &id,
        ),
        check("((12)(13))^3 = 1", &power(&c123, 3), &id),
        check(
            "(12)(13)(12) = (13)(12)(13)",
            &product(&[s12.clone(), s13.clone(), s12.clone()]),
            &product(&[s13.clone(), s12.clone(), s13.clone()]),
        ),
        check(
            "(123) = (12)(13) sends x1 to x2",
            &c123,
            &Endomorphism::permutation(&[1, 2, 0]).unwrap(),
        ),
    ];

    for i in 1..=3 {
        for j in 1..=3 {
            if i == j {
                continue;
            }
            let swap = Endomorphism::transposition(3, i - 1, j - 1);
            out.push(check(
                format!("({i}{j}) = e{i}(x{j}) e{j}(x{i}) e{i}(x{j})"),
                &product(&[e(i, j), e(j, i), e(i, j)]),
                &swap,
            ));
            out.push(check(
                format!("(e{i}(x{j}) e{j}(x{i}))^3 = 1"),
                &power(&product(&[e(i, j), e(j, i)]), 3),
                &id,
            ));
        }
    }

    out.push(check(
        "e1(x2 x3) = (13) phi (123) phi (132) phi (13)",
        &e1_x2x3,
        &product(&[
            s13.clone(),
            phi.clone(),
            c123.clone(),
            phi.clone(),
            c132.clone(),
            phi.clone(),
            s13.clone(),
        ]),
    ));

    let expansion = [
        (1, 3),
        (3, 1),
        (1, 3),
        (2, 1),
        (1, 2),
        (1, 3),
        (3, 1),
        (1, 3),
        (1, 2),
        (1, 3),
        (3, 1),
        (1, 3),
        (1, 2),
        (2, 1),
        (1, 3),
        (3, 1),
        (1, 3),
    ];
    let expanded: Vec<Endomorphism> = expansion.iter().map(|&(i, j)| e(i, j)).collect();
    out.push(check(
        "e1(x2 x3) = 17-letter elementary expansion",
        &e1_x2x3,
        &product(&expanded),
    ));

    out.push(check(
        "e1(x2 x3) = tau xi phi tau phi xi tau",
        &e1_x2x3,
        &product(&[
            tau.clone(),
            xi.clone(),
            phi.clone(),
            tau.clone(),
            phi.clone(),
            xi.clone(),
            tau.clone(),
        ]),
    ));
    out.push(check(
        "xi = (23) phi (23)",
        &xi,
        &product(&[s23.clone(), phi.clone(), s23]),
    ));
    out.push(check("xi^2 = 1", &power(&xi, 2), &id));
    out.push(check("phi^2 = 1", &power(&phi, 2), &id));
    out.push(check("tau^2 = 1", &power(&tau, 2), &id));
    out.push(check(
        "(tau phi)^3 = 1",
        &power(&product(&[tau, phi]), 3),
        &id,
    ));
    out.push(check("e1(x2 x3)^2 = 1", &power(&e1_x2x3, 2), &id));
    out
}

/// The conjectured presentations whose growth is compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conjecture {
    /// `⟨φ, (12), (13)⟩` is the Coxeter group with `m(φ,(12)) = 3`,
    /// `m(φ,(13)) = 4`, `m((12),(13)) = 3`.
    Coxeter,
    /// The stabilizer `⟨φ, τ, ξ⟩` of `x3` is `⟨φ, τ | φ², τ², (τφ)³⟩ * ⟨ξ | ξ²⟩`.
    StabilizerFreeProduct,
}

impl Conjecture {
    pub fn letters(self) -> [GroupLetter; 3] {
        match self {
            Conjecture::Coxeter => [GroupLetter::Phi, GroupLetter::S12, GroupLetter::S13],
            Conjecture::StabilizerFreeProduct => {
                [GroupLetter::Phi, GroupLetter::Tau, GroupLetter::Xi]
            }
        }
    }

    /// Sphere sizes of the conjectured presentation, computed without
    /// reference to automorphisms.
    pub fn oracle(self, depth: usize, limits: &Limits) -> Result<SphereProfile> {
        match self {
            Conjecture::Coxeter => coxeter_bfs(&aut3_coxeter_matrix(), depth, limits),
            Conjecture::StabilizerFreeProduct => {
                let s3 = CoxeterMatrix::from_orders(&[&[1, 3], &[3, 1]])?;
                let s3 = coxeter_bfs(&s3, 3, limits)?;
                Ok(free_product_spheres(&[s3.sizes, vec![1, 1]], depth))
            }
        }
    }
}

/// Coxeter matrix on the letters `(φ, (12), (13))`.
pub fn aut3_coxeter_matrix() -> CoxeterMatrix {
    CoxeterMatrix::from_orders(&[&[1, 3, 4], &[3, 1, 3], &[4, 3, 1]]).expect("valid matrix")
}

/// Sphere sizes of a free product, given each factor's sphere sizes with
/// respect to its own generators.
///
/// Elements are alternating sequences of nontrivial factor elements; the
/// count ending in factor `i` at length `d` sums over the length of the
/// last block.
pub fn free_product_spheres(factors: &[Vec<usize>], depth: usize) -> SphereProfile {
    let k = factors.len();
    let mut ending = vec![vec![0usize; depth + 1]; k];
    let mut sizes = vec![1usize];
    for d in 1..=depth {
        for i in 0..k {
            let mut count = 0;
            for (len, &c) in factors[i].iter().enumerate().skip(1) {
                if len > d || c == 0 {
                    continue;
                }
                let rest = d - len;
                let before = if rest == 0 {
                    1
                } else {
                    (0..k).filter(|&j| j != i).map(|j| ending[j][rest]).sum()
                };
                count += c * before;
            }
            ending[i][d] = count;
        }
        sizes.push((0..k).map(|i| ending[i][d]).sum());
    }
    SphereProfile { sizes }
}

/// One depth of a growth comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub depth: usize,
    pub cayley_count: usize,
    pub oracle_count: Option<usize>,
    pub new_relators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub target: Conjecture,
    pub depth: usize,
    pub cayley: SphereProfile,
    pub oracle: SphereProfile,
    /// First depth at which the sphere sizes differ.
    pub first_divergence: Option<usize>,
    pub layers: Vec<LayerReport>,
}

impl ConjectureReport {
    pub fn matches(&self) -> bool {
        self.first_divergence.is_none()
    }
}

/// Per-depth summary of a Cayley search, optionally paired with oracle counts.
pub fn layer_reports(
    bfs: &CayleyBfs,
    generators: &[Involution],
    oracle: Option<&SphereProfile>,
) -> Vec<LayerReport> {
    bfs.profile
        .sizes
        .iter()
        .enumerate()
        .map(|(d, &count)| LayerReport {
            depth: d,
            cayley_count: count,
            oracle_count: oracle.and_then(|o| o.sizes.get(d).copied()),
            new_relators: bfs
                .report
                .relators
                .iter()
                .filter(|r| r.depth == d)
                .map(|r| r.render(generators))
                .collect(),
        })
        .collect()
}

/// Compares Cayley-graph growth with the conjectured presentation.
pub fn conjecture_scan(
    target: Conjecture,
    depth: usize,
    limits: &Limits,
) -> Result<ConjectureReport> {
    let generators: Vec<Involution> = target.letters().iter().map(|l| l.involution()).collect();
    let bfs = cayley_bfs(&generators, depth, limits)?;
    let oracle = target.oracle(depth, limits)?;
    let first_divergence = (0..=depth).find(|&d| bfs.profile.sizes.get(d) != oracle.sizes.get(d));
    let layers = layer_reports(&bfs, &generators, Some(&oracle));
    Ok(ConjectureReport {
        target,
        depth,
        cayley: bfs.profile,
        oracle,
        first_divergence,
        layers,
    })
}

/// The automorphisms `e_i(v)` for every nonempty `v` in the subloop of the
/// other generators, up to `max_len`.
pub fn elementary_family(
    n: usize,
    target: usize,
    max_len: usize,
    limits: &Limits,
) -> Result<Vec<Involution>> {
    let others: Vec<usize> = (0..n).filter(|&j| j != target).collect();
    let words = crate::words::enumerate_swords(others.len(), max_len, limits)?;
    let relabel: Vec<SWord> = others.iter().map(|&j| SWord::generator(j)).collect();
    words
        .iter()
        .filter(|w| !w.is_identity())
        .map(|w| {
            let e = ElementaryAut::new(n, target, w.substitute(&relabel))?;
            Involution::new(e.to_string(), e.to_endomorphism())
        })
        .collect()
}

/// Hit of the constrained search: a word `φσ1 φσ2 … φσk` equal to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstrainedHit {
    pub sigmas: Vec<String>,
}

/// Searches words `φσ1 φσ2 … φσk` (`k ≤ max_blocks`) with each `σ_i` in `S3`
/// other than `1` and `(12)`, and no two consecutive `σ_i = (13)`, for words
/// that evaluate to the identity.
pub fn constrained_search(max_blocks: usize, limits: &Limits) -> Result<Vec<ConstrainedHit>> {
    let phi = GroupLetter::Phi.automorphism();
    let s12 = GroupLetter::S12.automorphism();
    let s13 = GroupLetter::S13.automorphism();
    let s23 = Endomorphism::transposition(3, 1, 2);
    let sigmas = [
        s13.clone(),
        s23,
        product(&[s12.clone(), s13.clone()]),
        product(&[s13, s12]),
    ];
    let blocks: Vec<Endomorphism> = sigmas
        .iter()
        .map(|s| product(&[phi.clone(), s.clone()]))
        .collect();

    let names = ["(13)", "(23)", "(123)", "(132)"];

    // Depth-first over block sequences; each stack entry is a path and its value.
    let mut hits = Vec::new();
    let mut stack = vec![(Vec::<usize>::new(), Endomorphism::identity(3))];
    let mut visited = 0usize;
    while let Some((path, current)) = stack.pop() {
        if !path.is_empty() && current.is_identity() {
            hits.push(ConstrainedHit {
                sigmas: path.iter().map(|&i| names[i].to_string()).collect(),
            });
        }
        if path.len() == max_blocks {
            continue;
        }
        for (i, block) in blocks.iter().enumerate().rev() {
            if i == 0 && path.last() == Some(&0) {
                continue;
            }
            visited += 1;
            if visited > limits.max_elements {
                return Err(Error::cap("constrained search words", limits.max_elements));
            }
            let next = current.compose(block)?;
            if next.image_len() > limits.max_image_len {
                return Err(Error::cap(
                    "automorphism image length",
                    limits.max_image_len,
                ));
            }
            let mut longer = path.clone();
            longer.push(i);
            stack.push((longer, next));
        }
    }
    Ok(hits)
}
