//! Finitely generated subloops of the free Steiner loop.
//!
//! A tuple `Y` is *reducible* when some entry can be shortened by a product of
//! the other entries. Irreducible tuples generate their subloop freely and
//! isometrically, which turns membership into a plain recursion on the word
//! tree; [`nielsen_reduce`] brings any tuple to that state.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::words::{SWord, WordLayers};

/// An ordered tuple of words viewed as subloop generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenTuple {
    entries: Vec<SWord>,
}

impl GenTuple {
    pub fn new(entries: impl IntoIterator<Item = SWord>) -> Self {
        GenTuple {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[SWord] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of entry lengths.
    pub fn weight(&self) -> usize {
        self.entries.iter().map(SWord::len).sum()
    }

    /// True if some entry is `e` or appears twice.
    pub fn is_degenerate(&self) -> bool {
        let mut seen = HashSet::new();
        self.entries
            .iter()
            .any(|w| w.is_identity() || !seen.insert(w))
    }
}

impl From<Vec<SWord>> for GenTuple {
    fn from(entries: Vec<SWord>) -> Self {
        GenTuple { entries }
    }
}

impl fmt::Display for GenTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// A product expression over the entries of a tuple.
///
/// Subtrees are shared, so substitution chains stay cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct ParseTree(Arc<ParseNode>);

#[derive(Debug, PartialEq, Eq)]
pub enum ParseNode {
    /// The empty product, evaluating to `e`.
    Unit,
    /// The entry at this index.
    Leaf(usize),
    Node(ParseTree, ParseTree),
}

impl ParseTree {
    pub fn unit() -> Self {
        ParseTree(Arc::new(ParseNode::Unit))
    }

    pub fn leaf(index: usize) -> Self {
        ParseTree(Arc::new(ParseNode::Leaf(index)))
    }

    pub fn node(left: ParseTree, right: ParseTree) -> Self {
        ParseTree(Arc::new(ParseNode::Node(left, right)))
    }

    pub fn kind(&self) -> &ParseNode {
        &self.0
    }

    /// Folds the tree with the loop product over `entries`.
    pub fn eval(&self, entries: &[SWord]) -> SWord {
        let mut memo = HashMap::new();
        self.eval_memo(entries, &mut memo)
    }

    fn eval_memo(&self, entries: &[SWord], memo: &mut HashMap<*const ParseNode, SWord>) -> SWord {
        let key = Arc::as_ptr(&self.0);
        if let Some(w) = memo.get(&key) {
            return w.clone();
        }
        let w = match &*self.0 {
            ParseNode::Unit => SWord::identity(),
            ParseNode::Leaf(j) => entries[*j].clone(),
            ParseNode::Node(a, b) => a.eval_memo(entries, memo).mul(&b.eval_memo(entries, memo)),
        };
        memo.insert(key, w.clone());
        w
    }

    /// Length with weights `|y_j|` on the leaves.
    pub fn weighted_length(&self, entries: &[SWord]) -> usize {
        match &*self.0 {
            ParseNode::Unit => 0,
            ParseNode::Leaf(j) => entries[*j].len(),
            ParseNode::Node(a, b) => a.weighted_length(entries) + b.weighted_length(entries),
        }
    }

    /// Replaces every leaf `j` by `images[j]`.
    pub fn substitute(&self, images: &[ParseTree]) -> ParseTree {
        self.map_leaves(&mut |j| images[j].clone())
    }

    pub fn map_leaves(&self, f: &mut impl FnMut(usize) -> ParseTree) -> ParseTree {
        let mut memo = HashMap::new();
        self.map_memo(f, &mut memo)
    }

    fn map_memo(
        &self,
        f: &mut impl FnMut(usize) -> ParseTree,
        memo: &mut HashMap<*const ParseNode, ParseTree>,
    ) -> ParseTree {
        let key = Arc::as_ptr(&self.0);
        if let Some(t) = memo.get(&key) {
            return t.clone();
        }
        let t = match &*self.0 {
            ParseNode::Unit => self.clone(),
            ParseNode::Leaf(j) => f(*j),
            ParseNode::Node(a, b) => ParseTree::node(a.map_memo(f, memo), b.map_memo(f, memo)),
        };
        memo.insert(key, t.clone());
        t
    }

    /// True if some leaf refers to `index`.
    pub fn uses(&self, index: usize) -> bool {
        match &*self.0 {
            ParseNode::Unit => false,
            ParseNode::Leaf(j) => *j == index,
            ParseNode::Node(a, b) => a.uses(index) || b.uses(index),
        }
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            ParseNode::Unit => f.write_str("e"),
            ParseNode::Leaf(j) => write!(f, "y{}", j + 1),
            ParseNode::Node(a, b) => write!(f, "({a} {b})"),
        }
    }
}

impl fmt::Debug for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One length-reducing replacement `y_i ← y_i·v` with `v` built from the
/// other entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub index: usize,
    /// Expression for the reducer over the tuple; never uses `index`.
    pub reducer_parse: ParseTree,
    pub reducer_word: SWord,
    pub before: SWord,
    pub after: SWord,
}

/// Bounded closure of a tuple under the loop product.
///
/// Intermediates longer than `max_len` are discarded. For an irreducible
/// tuple the result is every element of the generated subloop of length at
/// most `max_len`; for a reducible one it may be a proper subset.
pub fn closure(tuple: &GenTuple, max_len: usize, limits: &Limits) -> Result<BTreeSet<SWord>> {
    let mut set: HashSet<SWord> = HashSet::new();
    let mut members: Vec<SWord> = Vec::new();
    for w in std::iter::once(SWord::identity()).chain(tuple.entries.iter().cloned()) {
        if w.len() <= max_len && set.insert(w.clone()) {
            members.push(w);
        }
    }
    let mut next = 0;
    while next < members.len() {
        let a = members[next].clone();
        next += 1;
        let mut k = 0;
        while k < members.len() {
            let p = a.mul(&members[k]);
            k += 1;
            if p.len() <= max_len && !set.contains(&p) {
                if members.len() >= limits.max_closure_size {
                    return Err(Error::cap("closure size", limits.max_closure_size));
                }
                set.insert(p.clone());
                members.push(p);
            }
        }
    }
    Ok(members.into_iter().collect())
}

/// Parse of `w` over an irreducible tuple, or `None` when `w` is not in the
/// generated subloop.
pub fn membership(w: &SWord, tuple: &GenTuple) -> Result<Option<ParseTree>> {
    if let Some(step) = find_reduction(tuple)? {
        return Err(Error::precondition(format!(
            "membership needs an irreducible tuple; entry {} of {tuple} reduces to {}",
            step.index + 1,
            step.after
        )));
    }
    Ok(membership_unchecked(w, tuple.entries()))
}

fn membership_unchecked(w: &SWord, entries: &[SWord]) -> Option<ParseTree> {
    let index: HashMap<&SWord, usize> = entries
        .iter()
        .enumerate()
        .rev()
        .map(|(j, y)| (y, j))
        .collect();
    fn go(w: &SWord, index: &HashMap<&SWord, usize>) -> Option<ParseTree> {
        if w.is_identity() {
            return Some(ParseTree::unit());
        }
        if let Some(&j) = index.get(w) {
            return Some(ParseTree::leaf(j));
        }
        let (a, b) = w.as_pair()?;
        Some(ParseTree::node(go(a, index)?, go(b, index)?))
    }
    go(w, &index)
}

/// Searches for a length-reducing step; `None` means the tuple is irreducible.
///
/// A reducer must cancel against the top of `y_i`, so it is `y_i` itself, one
/// of its two factors, or a word `(y_i u)` with `|u| < |y_i|`. Candidates are
/// tested for membership in the subloop of the other entries after reducing
/// those. Ties resolve to the smallest index, then the shortest result, then
/// the least reducer.
pub fn find_reduction(tuple: &GenTuple) -> Result<Option<ReductionStep>> {
    if let Some(pos) = tuple.entries.iter().position(SWord::is_identity) {
        return Err(Error::precondition(format!(
            "entry {} of {tuple} is the identity",
            pos + 1
        )));
    }
    let entries = tuple.entries();
    for (i, y) in entries.iter().enumerate() {
        let others: Vec<usize> = (0..entries.len()).filter(|&j| j != i).collect();
        let rest: Vec<SWord> = others.iter().map(|&j| entries[j].clone()).collect();
        let reduced = reduce_entries(&rest)?;
        let basis = reduced.reduced.entries();

        let mut candidates: Vec<(SWord, ParseTree)> = Vec::new();
        if let Some(t) = membership_unchecked(y, basis) {
            candidates.push((y.clone(), t));
        }
        if let Some((a, b)) = y.as_pair() {
            for f in [a, b] {
                if let Some(t) = membership_unchecked(f, basis) {
                    candidates.push((f.clone(), t));
                }
            }
        }
        for (k, z) in basis.iter().enumerate() {
            if let Some((first, u)) = z.as_pair() {
                if first == y && u.len() < y.len() {
                    candidates.push((z.clone(), ParseTree::leaf(k)));
                }
            }
        }

        let best = candidates
            .into_iter()
            .map(|(v, t)| (y.mul(&v), v, t))
            .filter(|(after, _, _)| after.len() < y.len())
            .min_by(|(a1, v1, _), (a2, v2, _)| a1.len().cmp(&a2.len()).then_with(|| v1.cmp(v2)));

        if let Some((after, reducer_word, parse)) = best {
            let over_rest = parse.substitute(&reduced.forward);
            let reducer_parse = over_rest.map_leaves(&mut |j| ParseTree::leaf(others[j]));
            debug_assert_eq!(reducer_parse.eval(entries), reducer_word);
            return Ok(Some(ReductionStep {
                index: i,
                reducer_parse,
                reducer_word,
                before: y.clone(),
                after,
            }));
        }
    }
    Ok(None)
}

pub fn is_irreducible(tuple: &GenTuple) -> Result<bool> {
    Ok(find_reduction(tuple)?.is_none())
}

/// Outcome of iterated reduction.
#[derive(Debug, Clone)]
pub struct NielsenReduction {
    /// The irreducible tuple; generates the same subloop as the input.
    pub reduced: GenTuple,
    /// Steps in order; indices refer to positions in the input tuple.
    pub steps: Vec<ReductionStep>,
    /// Input positions whose entry ended as `e` (including initial `e` entries).
    pub dropped: Vec<usize>,
    /// Position in the input tuple of each reduced entry.
    pub origin: Vec<usize>,
    /// Each reduced entry as an expression over the input tuple.
    pub forward: Vec<ParseTree>,
    /// Each input entry as an expression over the reduced tuple.
    pub backward: Vec<ParseTree>,
}

/// Reduces a tuple until irreducible. Weight strictly decreases each step.
pub fn nielsen_reduce(tuple: &GenTuple) -> Result<NielsenReduction> {
    reduce_entries(tuple.entries())
}

fn reduce_entries(entries: &[SWord]) -> Result<NielsenReduction> {
    let mut slots: Vec<Option<SWord>> = entries
        .iter()
        .map(|w| (!w.is_identity()).then(|| w.clone()))
        .collect();
    let mut dropped: Vec<usize> = (0..entries.len()).filter(|&s| slots[s].is_none()).collect();
    let mut forward: Vec<ParseTree> = (0..entries.len()).map(ParseTree::leaf).collect();
    let mut backward: Vec<ParseTree> = entries
        .iter()
        .enumerate()
        .map(|(k, w)| {
            if w.is_identity() {
                ParseTree::unit()
            } else {
                ParseTree::leaf(k)
            }
        })
        .collect();
    let mut steps = Vec::new();

    loop {
        let active: Vec<usize> = (0..slots.len()).filter(|&s| slots[s].is_some()).collect();
        let current = GenTuple::new(active.iter().map(|&s| slots[s].clone().unwrap()));
        let Some(step) = find_reduction(&current)? else {
            break;
        };

        let s = active[step.index];
        let reducer = step
            .reducer_parse
            .map_leaves(&mut |j| ParseTree::leaf(active[j]));
        forward[s] = ParseTree::node(forward[s].clone(), reducer.substitute(&forward));
        let replacement = if step.after.is_identity() {
            reducer.clone()
        } else {
            ParseTree::node(ParseTree::leaf(s), reducer.clone())
        };
        for t in backward.iter_mut() {
            *t = t.map_leaves(&mut |j| {
                if j == s {
                    replacement.clone()
                } else {
                    ParseTree::leaf(j)
                }
            });
        }
        if step.after.is_identity() {
            slots[s] = None;
            dropped.push(s);
        } else {
            slots[s] = Some(step.after.clone());
        }
        steps.push(ReductionStep {
            index: s,
            reducer_parse: reducer,
            ..step
        });
    }

    let origin: Vec<usize> = (0..slots.len()).filter(|&s| slots[s].is_some()).collect();
    let position: HashMap<usize, usize> = origin.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let backward = backward
        .iter()
        .map(|t| t.map_leaves(&mut |j| ParseTree::leaf(position[&j])))
        .collect();
    let reduced = GenTuple::new(origin.iter().map(|&s| slots[s].clone().unwrap()));
    let forward = origin.iter().map(|&s| forward[s].clone()).collect();
    dropped.sort_unstable();
    Ok(NielsenReduction {
        reduced,
        steps,
        dropped,
        origin,
        forward,
        backward,
    })
}

/// Brute-force isometry check over all reduced expressions of weight ≤ `max_weight`.
///
/// Reduced expressions over an `m`-tuple are the canonical words of the free
/// loop on `m` letters; each must evaluate to a word of exactly its weighted
/// length, and distinct expressions to distinct words.
pub fn is_free_isometric_upto(
    tuple: &GenTuple,
    max_weight: usize,
    limits: &Limits,
) -> Result<bool> {
    let entries = tuple.entries();
    if entries.is_empty() {
        return Ok(true);
    }
    if entries.iter().any(SWord::is_identity) {
        // The empty product and that entry collide.
        return Ok(false);
    }
    let weights: Vec<usize> = entries.iter().map(SWord::len).collect();
    let min_weight = *weights.iter().min().unwrap();
    let max_formal = max_weight / min_weight;
    let mut layers = WordLayers::new(entries.len());
    layers.extend_to(max_formal, limits.max_closure_size)?;

    let mut seen: HashSet<SWord> = HashSet::new();
    for formal in layers.up_to(max_formal) {
        let weight = weighted_len(formal, &weights);
        if weight > max_weight {
            continue;
        }
        let image = formal.substitute(entries);
        if image.len() != weight || !seen.insert(image) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn weighted_len(formal: &SWord, weights: &[usize]) -> usize {
    match (formal.as_generator(), formal.as_pair()) {
        (Some(j), _) => weights[j],
        (_, Some((a, b))) => weighted_len(a, weights) + weighted_len(b, weights),
        _ => 0,
    }
}
