//! Canonical words of the free Steiner loop.
//!
//! An [`SWord`] is either the identity `e`, a generator, or a canonical pair
//! `(w v)` with `w > v` and `v` not an immediate factor of `w`. Every element
//! of the free Steiner loop on an ordered alphabet has exactly one such
//! representation, so equality of loop elements is structural equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Largest alphabet supported; generator supports are tracked in a `u64` mask.
pub const MAX_GENERATORS: usize = 64;

/// A free generator, identified by its position in the ordered alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u16);

impl Generator {
    pub fn new(index: usize) -> Self {
        assert!(
            index < MAX_GENERATORS,
            "generator index {index} out of range"
        );
        Generator(index as u16)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered generator names. The default alphabet of size `n` is `x1 … xn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn standard(n: usize) -> Result<Self> {
        Self::with_names((1..=n).map(|i| format!("x{i}")))
    }

    pub fn with_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::precondition(
                "alphabet must contain at least one generator",
            ));
        }
        if names.len() > MAX_GENERATORS {
            return Err(Error::precondition(format!(
                "alphabet of size {} exceeds the supported maximum {MAX_GENERATORS}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) || name == "e" {
                return Err(Error::precondition(format!(
                    "invalid generator name `{name}`"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::precondition(format!(
                    "duplicate generator name `{name}`"
                )));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.index()]
    }

    pub fn generators(&self) -> impl Iterator<Item = SWord> + '_ {
        (0..self.size()).map(SWord::generator)
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Generator::new)
    }

    /// Parses a word and normalizes it to canonical form.
    pub fn parse(&self, text: &str) -> Result<SWord> {
        Ok(self.parse_raw(text)?.normalize())
    }

    /// Parses a word without normalizing, keeping the tree exactly as written.
    pub fn parse_raw(&self, text: &str) -> Result<RawWord> {
        let mut parser = Parser {
            text,
            pos: 0,
            alphabet: self,
        };
        parser.skip_ws();
        let word = parser.word()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(word)
    }

    pub fn render(&self, w: &SWord) -> String {
        let mut out = String::new();
        self.render_into(w, &mut out);
        out
    }

    fn render_into(&self, w: &SWord, out: &mut String) {
        match &w.0 {
            Repr::Identity => out.push('e'),
            Repr::Leaf(g) => out.push_str(self.name(*g)),
            Repr::Pair(node) => {
                out.push('(');
                self.render_into(&node.first, out);
                out.push(' ');
                self.render_into(&node.second, out);
                out.push(')');
            }
        }
    }

    /// Checks that every generator occurring in `w` belongs to this alphabet.
    pub fn check(&self, w: &SWord) -> Result<()> {
        if w.max_generator().is_some_and(|g| g >= self.size()) {
            return Err(Error::AlphabetMismatch(format!(
                "word {w} uses a generator outside an alphabet of size {}",
                self.size()
            )));
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn word(&mut self) -> Result<RawWord> {
        match self.peek() {
            None => Err(self.error("unexpected end of input, expected a word")),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let first = self.word()?;
                let separated = self.skip_ws();
                if !separated && self.peek().is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return Err(self.error("expected whitespace between words"));
                }
                let second = self.word()?;
                self.skip_ws();
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(RawWord::Pair(Box::new(first), Box::new(second)))
                    }
                    None => Err(self.error("unexpected end of input, expected `)`")),
                    Some(_) => Err(self.error("expected `)`")),
                }
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(RawWord::Identity)
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
                {
                    self.pos += 1;
                }
                let ident = &self.text[start..self.pos];
                if ident == "e" {
                    return Ok(RawWord::Identity);
                }
                match self.alphabet.lookup(ident) {
                    Some(g) => Ok(RawWord::Leaf(g.index())),
                    None => Err(Error::UnknownGenerator(ident.to_string())),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}

/// An element of the free Steiner loop in canonical form.
///
/// Cloning is cheap: composite words share their subtrees.
#[derive(Clone)]
pub struct SWord(Repr);

#[derive(Clone)]
enum Repr {
    Identity,
    Leaf(Generator),
    Pair(Arc<PairNode>),
}

struct PairNode {
    first: SWord,
    second: SWord,
    len: usize,
    digest: u64,
    support: u64,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SWord {
    pub fn identity() -> Self {
        SWord(Repr::Identity)
    }

    pub fn generator(index: usize) -> Self {
        SWord(Repr::Leaf(Generator::new(index)))
    }

    /// Builds `(first second)` without checking the canonical-pair conditions.
    fn pair_unchecked(first: SWord, second: SWord) -> Self {
        debug_assert!(is_valid_pair(&first, &second));
        let len = first.len() + second.len();
        let digest = mix(first.digest().rotate_left(17) ^ mix(second.digest()) ^ len as u64);
        let support = first.support() | second.support();
        SWord(Repr::Pair(Arc::new(PairNode {
            first,
            second,
            len,
            digest,
            support,
        })))
    }

    /// Number of generator occurrences; the identity has length 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match &self.0 {
            Repr::Identity => 0,
            Repr::Leaf(_) => 1,
            Repr::Pair(node) => node.len,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.0, Repr::Identity)
    }

    pub fn as_generator(&self) -> Option<usize> {
        match self.0 {
            Repr::Leaf(g) => Some(g.index()),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&SWord, &SWord)> {
        match &self.0 {
            Repr::Pair(node) => Some((&node.first, &node.second)),
            _ => None,
        }
    }

    /// True when `other` is one of the two top-level factors of `self`.
    pub fn has_factor(&self, other: &SWord) -> bool {
        self.as_pair()
            .is_some_and(|(a, b)| a == other || b == other)
    }

    /// Structural digest; equal words have equal digests.
    pub fn digest(&self) -> u64 {
        match &self.0 {
            Repr::Identity => 0x5eed,
            Repr::Leaf(g) => mix(g.0 as u64 + 1),
            Repr::Pair(node) => node.digest,
        }
    }

    /// Bit mask of the generators occurring in the word.
    pub fn support(&self) -> u64 {
        match &self.0 {
            Repr::Identity => 0,
            Repr::Leaf(g) => 1u64 << g.0,
            Repr::Pair(node) => node.support,
        }
    }

    pub fn contains_generator(&self, index: usize) -> bool {
        index < MAX_GENERATORS && self.support() & (1u64 << index) != 0
    }

    pub fn max_generator(&self) -> Option<usize> {
        let s = self.support();
        (s != 0).then(|| 63 - s.leading_zeros() as usize)
    }

    /// The loop product. Equal operands give `e`; an operand that is an
    /// immediate factor of the other cancels; otherwise the canonical pair.
    pub fn mul(&self, other: &SWord) -> SWord {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        if self == other {
            return SWord::identity();
        }
        if let Some((a, b)) = self.as_pair() {
            if other == a {
                return b.clone();
            }
            if other == b {
                return a.clone();
            }
        }
        if let Some((a, b)) = other.as_pair() {
            if self == a {
                return b.clone();
            }
            if self == b {
                return a.clone();
            }
        }
        match compare(self, other) {
            Ordering::Greater => SWord::pair_unchecked(self.clone(), other.clone()),
            _ => SWord::pair_unchecked(other.clone(), self.clone()),
        }
    }

    /// Homomorphic extension of `x_i ↦ images[i]`.
    ///
    /// Panics if the word uses a generator without an image; callers check
    /// the alphabet first.
    pub fn substitute(&self, images: &[SWord]) -> SWord {
        match &self.0 {
            Repr::Identity => SWord::identity(),
            Repr::Leaf(g) => images[g.index()].clone(),
            Repr::Pair(node) => node
                .first
                .substitute(images)
                .mul(&node.second.substitute(images)),
        }
    }

    pub fn to_raw(&self) -> RawWord {
        match &self.0 {
            Repr::Identity => RawWord::Identity,
            Repr::Leaf(g) => RawWord::Leaf(g.index()),
            Repr::Pair(node) => RawWord::Pair(
                Box::new(node.first.to_raw()),
                Box::new(node.second.to_raw()),
            ),
        }
    }
}

/// The total order on words: longer words are greater, generators compare
/// by alphabet position, pairs compare lexicographically on their factors.
pub fn compare(v: &SWord, w: &SWord) -> Ordering {
    if let (Repr::Pair(a), Repr::Pair(b)) = (&v.0, &w.0) {
        if Arc::ptr_eq(a, b) {
            return Ordering::Equal;
        }
    }
    v.len().cmp(&w.len()).then_with(|| match (&v.0, &w.0) {
        (Repr::Identity, Repr::Identity) => Ordering::Equal,
        (Repr::Leaf(a), Repr::Leaf(b)) => a.cmp(b),
        (Repr::Pair(a), Repr::Pair(b)) => {
            compare(&a.first, &b.first).then_with(|| compare(&a.second, &b.second))
        }
        _ => unreachable!("words of equal length have the same shape class"),
    })
}

/// Free function form of [`SWord::mul`].
pub fn mult(v: &SWord, w: &SWord) -> SWord {
    v.mul(w)
}

fn is_valid_pair(first: &SWord, second: &SWord) -> bool {
    !first.is_identity()
        && !second.is_identity()
        && compare(first, second) == Ordering::Greater
        && !first.has_factor(second)
}

impl PartialEq for SWord {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Identity, Repr::Identity) => true,
            (Repr::Leaf(a), Repr::Leaf(b)) => a == b,
            (Repr::Pair(a), Repr::Pair(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.digest == b.digest
                        && a.len == b.len
                        && a.first == b.first
                        && a.second == b.second)
            }
            _ => false,
        }
    }
}

impl Eq for SWord {}

impl Hash for SWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.digest());
    }
}

impl PartialOrd for SWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SWord {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl std::ops::Mul for &SWord {
    type Output = SWord;

    fn mul(self, rhs: &SWord) -> SWord {
        SWord::mul(self, rhs)
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Identity => f.write_str("e"),
            Repr::Leaf(g) => write!(f, "x{}", g.index() + 1),
            Repr::Pair(node) => write!(f, "({} {})", node.first, node.second),
        }
    }
}

impl fmt::Debug for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An arbitrary binary tree over generators and `e`, not necessarily canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawWord {
    Identity,
    Leaf(usize),
    Pair(Box<RawWord>, Box<RawWord>),
}

impl RawWord {
    /// Evaluates the tree with the loop product, bottom-up.
    pub fn normalize(&self) -> SWord {
        match self {
            RawWord::Identity => SWord::identity(),
            RawWord::Leaf(i) => SWord::generator(*i),
            RawWord::Pair(a, b) => a.normalize().mul(&b.normalize()),
        }
    }

    /// Converts to an [`SWord`] only if the tree is already canonical.
    pub fn to_sword(&self) -> Option<SWord> {
        match self {
            RawWord::Identity => Some(SWord::identity()),
            RawWord::Leaf(i) => (*i < MAX_GENERATORS).then(|| SWord::generator(*i)),
            RawWord::Pair(a, b) => {
                let (a, b) = (a.to_sword()?, b.to_sword()?);
                is_valid_pair(&a, &b).then(|| SWord::pair_unchecked(a, b))
            }
        }
    }
}

/// True iff the tree satisfies every canonical-word invariant.
pub fn validate(candidate: &RawWord) -> bool {
    candidate.to_sword().is_some()
}

/// Layered enumeration of canonical words, one length at a time.
///
/// Layer `k` holds all canonical words of length `k`, sorted by [`compare`].
#[derive(Debug, Clone)]
pub struct WordLayers {
    n: usize,
    layers: Vec<Vec<SWord>>,
    total: usize,
}

impl WordLayers {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS);
        WordLayers {
            n,
            layers: vec![
                vec![SWord::identity()],
                (0..n).map(SWord::generator).collect(),
            ],
            total: n + 1,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    /// Highest length enumerated so far.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, len: usize) -> &[SWord] {
        &self.layers[len]
    }

    /// Grows the enumeration to include every word of length `max_len`,
    /// failing once more than `cap` words would be held.
    pub fn extend_to(&mut self, max_len: usize, cap: usize) -> Result<()> {
        if self.total > cap {
            return Err(Error::cap("enumerated words", cap));
        }
        while self.depth() < max_len {
            let len = self.depth() + 1;
            let mut layer = Vec::new();
            for first_len in len.div_ceil(2)..len {
                let second_len = len - first_len;
                for w in &self.layers[first_len] {
                    for v in &self.layers[second_len] {
                        if is_valid_pair(w, v) {
                            layer.push(SWord::pair_unchecked(w.clone(), v.clone()));
                            if self.total + layer.len() > cap {
                                return Err(Error::cap("enumerated words", cap));
                            }
                        }
                    }
                }
            }
            self.total += layer.len();
            self.layers.push(layer);
        }
        Ok(())
    }

    /// All words of length at most `max_len` in increasing order.
    pub fn up_to(&self, max_len: usize) -> impl Iterator<Item = &SWord> + '_ {
        self.layers[..=max_len.min(self.depth())].iter().flatten()
    }
}

/// Every canonical word of length at most `max_len`, in increasing order.
pub fn enumerate_swords(n: usize, max_len: usize, limits: &Limits) -> Result<Vec<SWord>> {
    let mut layers = WordLayers::new(n);
    layers.extend_to(max_len, limits.max_closure_size)?;
    Ok(layers.up_to(max_len).cloned().collect())
}

/// How an associator witness was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WitnessMethod {
    /// `z = y·x_j` for a generator `x_j` that does not cancel against `y`.
    Recipe,
    /// Exhaustive scan through enumerated words.
    Scan,
}

/// `z` together with the two differing products `(xy)z` and `x(yz)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatorWitness {
    pub z: SWord,
    pub left: SWord,
    pub right: SWord,
    pub method: WitnessMethod,
}

/// Finds `z` with `(x·y)·z ≠ x·(y·z)` in the free loop on `n > 2` generators.
pub fn associator_witness(
    x: &SWord,
    y: &SWord,
    n: usize,
    limits: &Limits,
) -> Result<AssociatorWitness> {
    if n <= 2 {
        return Err(Error::precondition(format!(
            "associator witnesses need more than two generators (n = {n})"
        )));
    }
    if x.is_identity() || y.is_identity() {
        return Err(Error::precondition(
            "operands must differ from the identity",
        ));
    }
    if x == y {
        return Err(Error::precondition("operands must be distinct"));
    }
    let alphabet_check = |w: &SWord| w.max_generator().is_none_or(|g| g < n);
    if !alphabet_check(x) || !alphabet_check(y) {
        return Err(Error::AlphabetMismatch(format!(
            "operands must be words over {n} generators"
        )));
    }

    let xy = x.mul(y);
    let try_z = |z: &SWord, method| {
        let left = xy.mul(z);
        let right = x.mul(&y.mul(z));
        (left != right).then(|| AssociatorWitness {
            z: z.clone(),
            left,
            right,
            method,
        })
    };

    for j in 0..n {
        let g = SWord::generator(j);
        if &g == y || y.has_factor(&g) {
            continue;
        }
        if let Some(found) = try_z(&y.mul(&g), WitnessMethod::Recipe) {
            return Ok(found);
        }
    }

    let mut layers = WordLayers::new(n);
    let mut len = 0;
    loop {
        for z in layers.layer(len) {
            if let Some(found) = try_z(z, WitnessMethod::Scan) {
                return Ok(found);
            }
        }
        len += 1;
        if len > limits.max_word_len {
            return Err(Error::cap(
                "associator witness search length",
                limits.max_word_len,
            ));
        }
        layers.extend_to(len, limits.max_closure_size)?;
    }
}

/// A word `u` with `x`, `y` such that `(u·x)·y ≠ u·(x·y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusWitness {
    pub u: SWord,
    pub x: SWord,
    pub y: SWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusScan {
    /// Number of nonempty words examined.
    pub candidates: usize,
    pub witnesses: Vec<NucleusWitness>,
    /// Words for which no witness was found; nonempty only on a bug.
    pub survivors: Vec<SWord>,
}

impl NucleusScan {
    pub fn all_eliminated(&self) -> bool {
        self.survivors.is_empty() && self.witnesses.len() == self.candidates
    }
}

/// Shows that no nonempty word of length ≤ `max_len` lies in the nucleus by
/// exhibiting an associativity failure for each.
pub fn nucleus_scan(n: usize, max_len: usize, limits: &Limits) -> Result<NucleusScan> {
    if n <= 2 {
        return Err(Error::precondition(format!(
            "the nucleus is trivial only with more than two generators (n = {n})"
        )));
    }
    let words = enumerate_swords(n, max_len, limits)?;
    let mut scan = NucleusScan {
        candidates: 0,
        witnesses: Vec::new(),
        survivors: Vec::new(),
    };
    for u in words.into_iter().filter(|u| !u.is_identity()) {
        scan.candidates += 1;
        let x = (0..n)
            .map(SWord::generator)
            .find(|g| g != &u)
            .expect("n > 2");
        let w = associator_witness(&u, &x, n, limits)?;
        if u.mul(&x).mul(&w.z) != u.mul(&x.mul(&w.z)) {
            scan.witnesses.push(NucleusWitness { u, x, y: w.z });
        } else {
            scan.survivors.push(u);
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> SWord {
        Alphabet::standard(4).unwrap().parse(text).unwrap()
    }

    fn raw(text: &str) -> RawWord {
        Alphabet::standard(4).unwrap().parse_raw(text).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&w("x2"), &w("x1")), Ordering::Greater);
        assert_eq!(compare(&w("(x2 x1)"), &w("x3")), Ordering::Greater);
        assert_eq!(compare(&w("(x3 x1)"), &w("(x2 x1)")), Ordering::Greater);
        assert_eq!(compare(&SWord::identity(), &w("x1")), Ordering::Less);
    }

    #[test]
    fn mult_examples() {
        assert!(mult(&w("x1"), &w("x1")).is_identity());
        assert_eq!(mult(&w("(x2 x1)"), &w("x1")), w("x2"));
        assert_eq!(mult(&w("x1"), &w("x2")).to_string(), "(x2 x1)");
        assert_eq!(mult(&w("(x3 (x2 x1))"), &w("(x2 x1)")), w("x3"));
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&raw("(x2 x1)")));
        assert!(!validate(&raw("((x2 x1) x1)")));
        assert!(!validate(&raw("(x1 (x3 x2))")));
        assert!(!validate(&raw("(x1 e)")));
        assert!(!validate(&raw("(x1 x2)")));
        assert!(validate(&raw("e")));
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(w("(x1 (x1 x2))"), w("x2"));
        assert_eq!(w("(x1 x2)").to_string(), "(x2 x1)");
        assert!(w("(x1 x1)").is_identity());
        assert!(w("0").is_identity());
        assert_eq!(w("  ( x1\tx2 ) "), w("(x2 x1)"));
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::standard(3).unwrap();
        assert!(matches!(
            a.parse("(x1"),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            a.parse("(x1 x2))"),
            Err(Error::Syntax { position: 7, .. })
        ));
        assert!(matches!(a.parse("x4"), Err(Error::UnknownGenerator(name)) if name == "x4"));
        assert!(matches!(a.parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            a.parse("(x1 $)"),
            Err(Error::Syntax { position: 4, .. })
        ));
    }

    #[test]
    fn custom_alphabet_render() {
        let a = Alphabet::with_names(["a", "b", "c"]).unwrap();
        let word = a.parse("(a (b c))").unwrap();
        assert_eq!(a.render(&word), "((c b) a)");
        assert!(Alphabet::with_names(["a", "a"]).is_err());
        assert!(Alphabet::with_names(["e"]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let limits = Limits::default();
        let words = enumerate_swords(3, 1, &limits).unwrap();
        assert_eq!(words.len(), 4);
        let words = enumerate_swords(3, 2, &limits).unwrap();
        assert_eq!(words.len(), 7);
        assert_eq!(
            words[4..].iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            ["(x2 x1)", "(x3 x1)", "(x3 x2)"]
        );
        let words = enumerate_swords(2, 3, &limits).unwrap();
        assert_eq!(words.len(), 4);
    }

    #[test]
    fn enumeration_cap_is_hard() {
        let limits = Limits {
            max_closure_size: 10,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_swords(3, 4, &limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn associator_examples() {
        let limits = Limits::default();
        let found = associator_witness(&w("x1"), &w("x2"), 3, &limits).unwrap();
        assert_eq!(found.z, w("(x3 x2)"));
        assert_eq!(found.left.len(), 4);
        assert_eq!(found.right, w("(x3 x1)"));

        let found = associator_witness(&w("x1"), &w("(x2 x1)"), 3, &limits).unwrap();
        assert_ne!(found.left, found.right);
        let x = w("x1");
        let y = w("(x2 x1)");
        assert_eq!(x.mul(&y).mul(&found.z), found.left);
        assert_eq!(x.mul(&y.mul(&found.z)), found.right);

        assert!(associator_witness(&w("x1"), &w("x1"), 3, &limits).is_err());
        assert!(associator_witness(&w("x1"), &w("x2"), 2, &limits).is_err());
    }

    #[test]
    fn digest_and_support() {
        let a = w("((x2 x1) x3)");
        let b = w("(x3 (x1 x2))");
        assert_eq!(a, b);
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.support(), 0b111);
        assert_eq!(a.max_generator(), Some(2));
        assert!(!w("(x3 x2)").contains_generator(0));
    }

    #[test]
    fn nucleus_scan_small() {
        let l = Limits::default();
        let scan = nucleus_scan(3, 1, &l).unwrap();
        assert_eq!(scan.candidates, 3);
        assert!(scan.all_eliminated());
        let scan = nucleus_scan(3, 3, &l).unwrap();
        let expected = enumerate_swords(3, 3, &l).unwrap().len() - 1;
        assert_eq!(scan.candidates, expected);
        assert!(scan.all_eliminated());
        assert!(matches!(
            nucleus_scan(2, 3, &l),
            Err(Error::Precondition(_))
        ));
    }
}
