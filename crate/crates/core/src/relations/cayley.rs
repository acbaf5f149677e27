//! Breadth-first search of the Cayley graph of a group of automorphisms.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::Endomorphism;
use crate::error::{Error, Result};
use crate::limits::Limits;

use super::SphereProfile;

/// A labelled involutory automorphism used as a Cayley-graph generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    pub label: String,
    pub map: Endomorphism,
}

impl Involution {
    pub fn new(label: impl Into<String>, map: Endomorphism) -> Result<Self> {
        let label = label.into();
        if !map.compose(&map)?.is_identity() {
            return Err(Error::precondition(format!(
                "generator {label} is not an involution"
            )));
        }
        Ok(Involution { label, map })
    }
}

/// A closed walk in the Cayley graph not accounted for by the search tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relator {
    /// Generator indices, leftmost applied first.
    pub letters: Vec<usize>,
    /// Layer whose construction exposed the cycle.
    pub depth: usize,
}

impl Relator {
    pub fn render(&self, generators: &[Involution]) -> String {
        self.letters
            .iter()
            .map(|&i| generators[i].label.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relators: Vec<Relator>,
    pub depth_reached: usize,
    pub element_count: usize,
}

#[derive(Debug, Clone)]
pub struct CayleyBfs {
    pub profile: SphereProfile,
    pub report: RelationReport,
    /// Every element found, in discovery order; index 0 is the identity.
    pub elements: Vec<Endomorphism>,
}

struct Node {
    depth: usize,
    parent: Option<(usize, usize)>,
}

fn word_to(nodes: &[Node], mut idx: usize) -> Vec<usize> {
    let mut word = Vec::new();
    while let Some((p, g)) = nodes[idx].parent {
        word.push(g);
        idx = p;
    }
    word.reverse();
    word
}

/// Explores the subgroup generated by `generators` out to `depth`.
///
/// Elements are identified by their canonical image tuples. Products are
/// computed in parallel per layer and merged in a fixed order, so repeated
/// runs give identical profiles and reports.
pub fn cayley_bfs(generators: &[Involution], depth: usize, limits: &Limits) -> Result<CayleyBfs> {
    let n = generators
        .first()
        .map(|g| g.map.size())
        .ok_or_else(|| Error::precondition("at least one generator is required"))?;
    if let Some(g) = generators.iter().find(|g| g.map.size() != n) {
        return Err(Error::AlphabetMismatch(format!(
            "generator {} acts on a different alphabet",
            g.label
        )));
    }

    let identity = Endomorphism::identity(n);
    let mut elements = vec![identity.clone()];
    let mut nodes = vec![Node {
        depth: 0,
        parent: None,
    }];
    let mut index: HashMap<Endomorphism, usize> = HashMap::from([(identity, 0)]);
    let mut frontier = vec![0usize];
    let mut sizes = vec![1];
    let mut relators = Vec::new();

    for d in 0..depth {
        let products: Vec<Vec<Endomorphism>> = frontier
            .par_iter()
            .map(|&g| {
                generators
                    .iter()
                    .map(|s| elements[g].compose(&s.map))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let mut next = Vec::new();
        for (&g, row) in frontier.iter().zip(products) {
            for (s, p) in row.into_iter().enumerate() {
                if p.image_len() > limits.max_image_len {
                    return Err(Error::cap(
                        "automorphism image length",
                        limits.max_image_len,
                    ));
                }
                match index.get(&p) {
                    None => {
                        if elements.len() >= limits.max_elements {
                            return Err(Error::cap("group elements", limits.max_elements));
                        }
                        let h = elements.len();
                        index.insert(p.clone(), h);
                        elements.push(p);
                        nodes.push(Node {
                            depth: d + 1,
                            parent: Some((g, s)),
                        });
                        next.push(h);
                    }
                    Some(&h) => {
                        if nodes[g].parent == Some((h, s)) || nodes[h].parent == Some((g, s)) {
                            continue;
                        }
                        // Each non-tree edge is recorded once: from its shallower end,
                        // or from the lower index when both ends share a layer.
                        let record = match nodes[h].depth.cmp(&nodes[g].depth) {
                            std::cmp::Ordering::Greater => true,
                            std::cmp::Ordering::Equal => g < h,
                            std::cmp::Ordering::Less => false,
                        };
                        if record {
                            let mut letters = word_to(&nodes, g);
                            letters.push(s);
                            letters.extend(word_to(&nodes, h).into_iter().rev());
                            relators.push(Relator {
                                letters,
                                depth: d + 1,
                            });
                        }
                    }
                }
            }
        }
        sizes.push(next.len());
        frontier = next;
    }

    let report = RelationReport {
        relators,
        depth_reached: depth,
        element_count: elements.len(),
    };
    Ok(CayleyBfs {
        profile: SphereProfile { sizes },
        report,
        elements,
    })
}

/// Evaluates a word in the generators, leftmost applied first.
pub fn evaluate_letters(generators: &[Involution], letters: &[usize]) -> Result<Endomorphism> {
    let n = generators.first().map_or(0, |g| g.map.size());
    letters
        .iter()
        .try_fold(Endomorphism::identity(n), |acc, &i| {
            acc.compose(&generators[i].map)
        })
}
