//! The multiplication group of the free Steiner loop.
//!
//! Right translations `R_v: w ↦ w·v` are involutions and generate a free
//! product of groups of order two, so an element is a reduced sequence of
//! translation letters with no two adjacent letters equal. The stabilizer of
//! `e` is free on the Schreier generators `R_v R_w R_{v·w}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Alphabet, SWord};

/// The right translation `R_v` for some `v ≠ e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslationLetter(SWord);

impl TranslationLetter {
    pub fn new(v: SWord) -> Result<Self> {
        if v.is_identity() {
            return Err(Error::precondition("R_e is the identity, not a letter"));
        }
        Ok(TranslationLetter(v))
    }

    pub fn word(&self) -> &SWord {
        &self.0
    }
}

impl fmt::Display for TranslationLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R[{}]", self.0)
    }
}

/// A reduced word in translation letters. Group product is concatenation
/// followed by reduction; elements act on the right, leftmost letter first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultElement {
    letters: Vec<TranslationLetter>,
}

impl MultElement {
    pub fn identity() -> Self {
        MultElement::default()
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = TranslationLetter>) -> Self {
        reduce_word(letters)
    }

    /// Builds from words, skipping `e` (the identity translation).
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a SWord>) -> Self {
        reduce_word(
            words
                .into_iter()
                .filter(|w| !w.is_identity())
                .map(|w| TranslationLetter(w.clone())),
        )
    }

    pub fn letters(&self) -> &[TranslationLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` followed by `other`.
    pub fn product(&self, other: &MultElement) -> MultElement {
        reduce_word(self.letters.iter().chain(&other.letters).cloned())
    }

    pub fn inverse(&self) -> MultElement {
        MultElement {
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }

    pub fn act(&self, w: &SWord) -> SWord {
        self.letters.iter().fold(w.clone(), |acc, l| acc.mul(&l.0))
    }

    /// Parses `R[<word>]*R[<word>]*…`; `1` or an empty string is the identity.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(MultElement::identity());
        }
        let offset = text.len() - text.trim_start().len();
        let mut letters = Vec::new();
        let mut pos = 0;
        for part in trimmed.split('*') {
            let at = offset + pos + (part.len() - part.trim_start().len());
            let body = part
                .trim()
                .strip_prefix("R[")
                .and_then(|p| p.strip_suffix(']'))
                .ok_or_else(|| Error::Syntax {
                    position: at,
                    message: "expected `R[<word>]`".into(),
                })?;
            let w = alphabet.parse(body).map_err(|e| match e {
                Error::Syntax { position, message } => Error::Syntax {
                    position: position + at + 2,
                    message,
                },
                other => other,
            })?;
            alphabet.check(&w)?;
            if !w.is_identity() {
                letters.push(TranslationLetter(w));
            }
            pos += part.len() + 1;
        }
        Ok(reduce_word(letters))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|l| format!("R[{}]", alphabet.render(&l.0)))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for MultElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Cancels adjacent equal letters until none remain.
pub fn reduce_word(letters: impl IntoIterator<Item = TranslationLetter>) -> MultElement {
    let mut out: Vec<TranslationLetter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    MultElement { letters: out }
}

pub fn act(g: &MultElement, w: &SWord) -> SWord {
    g.act(w)
}

/// `g = h · R_c` with `c = act(g, e)` and `h` fixing `e`. `rep` is `None`
/// when `g` already fixes `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabFactorization {
    pub h: MultElement,
    pub rep: Option<TranslationLetter>,
}

pub fn stab_factor(g: &MultElement) -> StabFactorization {
    let c = g.act(&SWord::identity());
    if c.is_identity() {
        return StabFactorization {
            h: g.clone(),
            rep: None,
        };
    }
    let rep = TranslationLetter(c);
    let h = reduce_word(g.letters.iter().cloned().chain([rep.clone()]));
    StabFactorization { h, rep: Some(rep) }
}

/// The inner mapping `R_v R_w R_{v·w}`, a Schreier generator of the
/// stabilizer of `e` for the transversal `{R_v}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabGenerator {
    pub v: SWord,
    pub w: SWord,
}

impl StabGenerator {
    pub fn new(v: SWord, w: SWord) -> Self {
        StabGenerator { v, w }
    }

    pub fn element(&self) -> MultElement {
        MultElement::from_words([&self.v, &self.w, &self.v.mul(&self.w)])
    }

    /// Trivial exactly when `v = e`, `w = e` or `v = w`.
    pub fn is_degenerate(&self) -> bool {
        self.element().is_identity()
    }

    /// Canonical orientation: `s(v, w)` and `s(v·w, w)` are mutually inverse,
    /// and the one whose coset representative is smaller is chosen.
    /// Returns the canonical generator and the exponent relating it to `self`.
    pub fn canonical(&self) -> (StabGenerator, i8) {
        let vw = self.v.mul(&self.w);
        if self.v < vw {
            (self.clone(), 1)
        } else {
            (
                StabGenerator {
                    v: vw,
                    w: self.w.clone(),
                },
                -1,
            )
        }
    }
}

impl fmt::Display for StabGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s({}, {})", self.v, self.w)
    }
}

/// Rewrites a stabilizer element as a product of canonical Schreier
/// generators with exponents ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierRewrite {
    pub factors: Vec<(StabGenerator, i8)>,
    /// Trivial generators skipped during the scan.
    pub degenerate: usize,
}

impl SchreierRewrite {
    pub fn product(&self) -> MultElement {
        self.factors
            .iter()
            .fold(MultElement::identity(), |acc, (s, exp)| {
                let e = s.element();
                acc.product(&if *exp > 0 { e } else { e.inverse() })
            })
    }
}

/// Scans `h` left to right with running coset representative `v`, emitting
/// `s(v, w)` for each letter `R_w`.
pub fn schreier_rewrite(h: &MultElement) -> Result<SchreierRewrite> {
    if !h.act(&SWord::identity()).is_identity() {
        return Err(Error::precondition(format!("{h} does not fix e")));
    }
    let mut v = SWord::identity();
    let mut factors = Vec::new();
    let mut degenerate = 0;
    for letter in &h.letters {
        let s = StabGenerator::new(v.clone(), letter.0.clone());
        if s.is_degenerate() {
            degenerate += 1;
        } else {
            factors.push(s.canonical());
        }
        v = v.mul(&letter.0);
    }
    Ok(SchreierRewrite {
        factors,
        degenerate,
    })
}

pub fn is_identity(g: &MultElement) -> bool {
    g.is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> SWord {
        Alphabet::standard(3).unwrap().parse(text).unwrap()
    }

    fn r(text: &str) -> TranslationLetter {
        TranslationLetter::new(w(text)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce_word([r("x1"), r("x1")]).is_identity());
        assert!(reduce_word([r("x1"), r("x2"), r("x2"), r("x1")]).is_identity());
        let g = reduce_word([r("x1"), r("x2"), r("x1")]);
        assert_eq!(g.len(), 3);
        assert!(TranslationLetter::new(SWord::identity()).is_err());
    }

    #[test]
    fn act_examples() {
        let e = SWord::identity();
        assert_eq!(act(&reduce_word([r("x1"), r("x2")]), &e), w("(x2 x1)"));
        assert!(act(&reduce_word([r("x1"), r("x2"), r("(x2 x1)")]), &e).is_identity());
        assert_eq!(act(&MultElement::identity(), &w("(x3 x1)")), w("(x3 x1)"));
    }

    #[test]
    fn stab_factor_examples() {
        let g = reduce_word([r("x1"), r("x2")]);
        let f = stab_factor(&g);
        assert_eq!(f.h, reduce_word([r("x1"), r("x2"), r("(x2 x1)")]));
        assert_eq!(f.rep, Some(r("(x2 x1)")));
        assert_eq!(f.h.product(&MultElement::from_letters(f.rep.clone())), g);

        let f = stab_factor(&reduce_word([r("x1")]));
        assert!(f.h.is_identity());
        assert_eq!(f.rep, Some(r("x1")));

        let f = stab_factor(&MultElement::identity());
        assert!(f.h.is_identity() && f.rep.is_none());
    }

    #[test]
    fn schreier_examples() {
        let h = reduce_word([r("x1"), r("x2"), r("(x2 x1)")]);
        let rw = schreier_rewrite(&h).unwrap();
        assert_eq!(rw.factors, vec![(StabGenerator::new(w("x1"), w("x2")), 1)]);
        assert_eq!(rw.degenerate, 2);

        assert!(schreier_rewrite(&MultElement::identity())
            .unwrap()
            .factors
            .is_empty());

        let s1 = StabGenerator::new(w("x1"), w("x2"));
        let s2 = StabGenerator::new(w("x3"), w("(x2 x1)"));
        let h = s1.element().product(&s2.element());
        let rw = schreier_rewrite(&h).unwrap();
        assert_eq!(rw.factors, vec![(s1, 1), (s2, 1)]);
        assert_eq!(rw.product(), h);

        assert!(schreier_rewrite(&reduce_word([r("x1")])).is_err());
    }

    #[test]
    fn inverse_generator_gets_negative_exponent() {
        let s = StabGenerator::new(w("x1"), w("x2"));
        let inv = s.element().inverse();
        let rw = schreier_rewrite(&inv).unwrap();
        assert_eq!(rw.factors, vec![(s, -1)]);
        assert_eq!(rw.product(), inv);
    }

    #[test]
    fn identity_examples() {
        assert!(is_identity(&reduce_word([r("x1"), r("x1")])));
        assert!(!is_identity(&reduce_word([r("x1"), r("x2"), r("(x2 x1)")])));
        assert!(is_identity(&MultElement::identity()));
    }

    #[test]
    fn text_round_trip() {
        let a = Alphabet::standard(3).unwrap();
        let g = MultElement::parse(&a, "R[x1]*R[x2]*R[(x1 x2)]").unwrap();
        assert_eq!(g.render(&a), "R[x1]*R[x2]*R[(x2 x1)]");
        assert_eq!(MultElement::parse(&a, &g.render(&a)).unwrap(), g);
        assert!(MultElement::parse(&a, "R[x1]*R[x1]").unwrap().is_identity());
        assert!(matches!(
            MultElement::parse(&a, "R[x1]*S[x2]"),
            Err(Error::Syntax { position: 6, .. })
        ));
        assert!(matches!(
            MultElement::parse(&a, "R[(x1]"),
            Err(Error::Syntax { .. })
        ));
    }
}
