//! Endomorphisms of the free Steiner loop, elementary automorphisms and tame
//! decomposition.
//!
//! Maps act on the right: in a product `fg`, `f` is applied first, so
//! `x^(fg) = (x^f)^g`. Word sequences are always listed leftmost-first.

use std::fmt;

use crate::error::{Error, Result};
use crate::subloop::{find_reduction, GenTuple};
use crate::words::{Alphabet, SWord};

/// A map of `S(X)` given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    images: Vec<SWord>,
}

impl Endomorphism {
    pub fn new(images: Vec<SWord>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::precondition(
                "an endomorphism needs at least one generator",
            ));
        }
        for (i, w) in images.iter().enumerate() {
            if w.max_generator().is_some_and(|g| g >= n) {
                return Err(Error::AlphabetMismatch(format!(
                    "image {} = {w} leaves an alphabet of size {n}",
                    i + 1
                )));
            }
        }
        Ok(Endomorphism { images })
    }

    /// Parses one image word per generator.
    pub fn parse<S: AsRef<str>>(alphabet: &Alphabet, images: &[S]) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::AlphabetMismatch(format!(
                "expected {} images, got {}",
                alphabet.size(),
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|t| alphabet.parse(t.as_ref()))
            .collect::<Result<_>>()?;
        Endomorphism::new(images)
    }

    pub fn identity(n: usize) -> Self {
        Endomorphism {
            images: (0..n).map(SWord::generator).collect(),
        }
    }

    /// The generator permutation `x_i ↦ x_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::precondition(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Ok(Endomorphism {
            images: perm.iter().map(|&p| SWord::generator(p)).collect(),
        })
    }

    /// Swaps `x_i` and `x_j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        Endomorphism::permutation(&perm).expect("swap of an identity permutation")
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[SWord] {
        &self.images
    }

    pub fn image_len(&self) -> usize {
        self.images.iter().map(SWord::len).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.as_generator() == Some(i))
    }

    pub fn apply(&self, w: &SWord) -> Result<SWord> {
        if w.max_generator().is_some_and(|g| g >= self.size()) {
            return Err(Error::AlphabetMismatch(format!(
                "{w} is not a word over {} generators",
                self.size()
            )));
        }
        Ok(w.substitute(&self.images))
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.size() != other.size() {
            return Err(Error::AlphabetMismatch(format!(
                "cannot compose maps on {} and {} generators",
                self.size(),
                other.size()
            )));
        }
        Ok(Endomorphism {
            images: self
                .images
                .iter()
                .map(|w| w.substitute(&other.images))
                .collect(),
        })
    }

    pub fn is_automorphism(&self) -> Result<bool> {
        match self.tame_decompose() {
            Ok(_) => Ok(true),
            Err(Error::NotAutomorphism(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Writes the map as a product of elementary automorphisms.
    ///
    /// Repeatedly shortens the image tuple with a reduction step
    /// `y_i ← y_i·r(y)`, emitting `e_i(r(x))` for each; the remaining
    /// generator permutation is expanded into transpositions, each as
    /// `e_i(x_j) e_j(x_i) e_i(x_j)`.
    pub fn tame_decompose(&self) -> Result<TameWord> {
        let n = self.size();
        let generators: Vec<SWord> = (0..n).map(SWord::generator).collect();
        let mut current = self.images.clone();
        let mut letters = Vec::new();

        while !is_generator_permutation(&current) {
            if let Some(i) = current.iter().position(SWord::is_identity) {
                return Err(Error::NotAutomorphism(format!("x{} maps to e", i + 1)));
            }
            let Some(step) = find_reduction(&GenTuple::new(current.iter().cloned()))? else {
                return Err(Error::NotAutomorphism(format!(
                    "image tuple reduces to {}, which is irreducible but not the generators",
                    GenTuple::new(current.iter().cloned())
                )));
            };
            if step.after.is_identity() {
                return Err(Error::NotAutomorphism(format!(
                    "image of x{} collapses to e: the map is not injective",
                    step.index + 1
                )));
            }
            let w = step.reducer_parse.eval(&generators);
            letters.push(ElementaryAut::new(n, step.index, w)?);
            current[step.index] = step.after;
        }

        let perm: Vec<usize> = current.iter().map(|w| w.as_generator().unwrap()).collect();
        letters.extend(permutation_letters(&perm));

        let word = TameWord { n, letters };
        let check = word.evaluate();
        assert_eq!(&check, self, "tame decomposition failed to recompose");
        Ok(word)
    }

    pub fn invert(&self) -> Result<Endomorphism> {
        Ok(self.tame_decompose()?.inverse().evaluate())
    }
}

fn is_generator_permutation(images: &[SWord]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|w| match w.as_generator() {
        Some(g) if g < seen.len() => !std::mem::replace(&mut seen[g], true),
        _ => false,
    })
}

/// Elementary letters for `x_i ↦ x_{perm[i]}`.
fn permutation_letters(perm: &[usize]) -> Vec<ElementaryAut> {
    let n = perm.len();
    let mut perm = perm.to_vec();
    let mut swaps = Vec::new();
    // Peel transpositions off the right: perm = perm' · (j k) with perm' fixing j.
    while let Some(j) = (0..n).find(|&j| perm[j] != j) {
        let k = perm[j];
        for p in perm.iter_mut() {
            if *p == j {
                *p = k;
            } else if *p == k {
                *p = j;
            }
        }
        swaps.push((j, k));
    }
    swaps
        .into_iter()
        .rev()
        .flat_map(|(i, j)| {
            let gi = SWord::generator(i);
            let gj = SWord::generator(j);
            [
                ElementaryAut::new(n, i, gj.clone()).unwrap(),
                ElementaryAut::new(n, j, gi).unwrap(),
                ElementaryAut::new(n, i, gj).unwrap(),
            ]
        })
        .collect()
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// `e_i(v)`: `x_i ↦ x_i·v` with `v` a nonempty word avoiding `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryAut {
    n: usize,
    target: usize,
    v: SWord,
}

impl ElementaryAut {
    pub fn new(n: usize, target: usize, v: SWord) -> Result<Self> {
        if target >= n {
            return Err(Error::AlphabetMismatch(format!(
                "no generator x{} among {n}",
                target + 1
            )));
        }
        if v.is_identity() {
            return Err(Error::precondition("elementary factor must differ from e"));
        }
        if v.contains_generator(target) {
            return Err(Error::precondition(format!("{v} contains x{}", target + 1)));
        }
        if v.max_generator().is_some_and(|g| g >= n) {
            return Err(Error::AlphabetMismatch(format!(
                "{v} leaves an alphabet of size {n}"
            )));
        }
        Ok(ElementaryAut { n, target, v })
    }

    /// Parses `e<i>(<word>)` with a 1-based index.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let syntax = |position: usize, message: &str| Error::Syntax {
            position,
            message: message.into(),
        };
        let rest = text
            .strip_prefix('e')
            .ok_or_else(|| syntax(0, "expected `e<i>(<word>)`"))?;
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        let index: usize = rest[..digits]
            .parse()
            .map_err(|_| syntax(1, "expected a generator index"))?;
        let body = rest[digits..]
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| syntax(1 + digits, "expected `(<word>)`"))?;
        if index == 0 {
            return Err(syntax(1, "generator indices start at 1"));
        }
        let v = alphabet.parse(body).map_err(|e| match e {
            Error::Syntax { position, message } => Error::Syntax {
                position: position + 2 + digits,
                message,
            },
            other => other,
        })?;
        ElementaryAut::new(alphabet.size(), index - 1, v)
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn factor(&self) -> &SWord {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn to_endomorphism(&self) -> Endomorphism {
        let mut images: Vec<SWord> = (0..self.n).map(SWord::generator).collect();
        images[self.target] = images[self.target].mul(&self.v);
        Endomorphism { images }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!("e{}({})", self.target + 1, alphabet.render(&self.v))
    }
}

impl fmt::Display for ElementaryAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}({})", self.target + 1, self.v)
    }
}

/// A product of elementary automorphisms, leftmost applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameWord {
    n: usize,
    letters: Vec<ElementaryAut>,
}

impl TameWord {
    pub fn new(n: usize, letters: Vec<ElementaryAut>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| l.n != n) {
            return Err(Error::AlphabetMismatch(format!(
                "{bad} is not over {n} generators"
            )));
        }
        Ok(TameWord { n, letters })
    }

    /// Parses whitespace-separated `e<i>(<word>)` letters.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut depth = 0usize;
        let mut start = None;
        for (pos, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                c if c.is_whitespace() && depth == 0 => {
                    if let Some(s) = start.take() {
                        letters.push(ElementaryAut::parse(alphabet, &text[s..pos])?);
                    }
                    continue;
                }
                _ => {}
            }
            start.get_or_insert(pos);
        }
        if let Some(s) = start {
            letters.push(ElementaryAut::parse(alphabet, &text[s..])?);
        }
        TameWord::new(alphabet.size(), letters)
    }

    pub fn letters(&self) -> &[ElementaryAut] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self) -> Endomorphism {
        self.letters
            .iter()
            .fold(Endomorphism::identity(self.n), |acc, l| {
                acc.compose(&l.to_endomorphism())
                    .expect("letters share the alphabet")
            })
    }

    /// Every letter is an involution, so the inverse is the reversed word.
    pub fn inverse(&self) -> TameWord {
        TameWord {
            n: self.n,
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.letters
            .iter()
            .map(|l| l.render(alphabet))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for TameWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// How an elementary automorphism treats a top-level split `u = (u1 u2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SplitBehaviour {
    /// The images of `u1` and `u2` pair without cancellation.
    SplitPreserved,
    /// `u = (x_i v)` and its image is the generator `x_i`.
    CollapsedToGenerator,
}

/// Classifies `u = (u1 u2)` under `e = e_i(v)`. Exactly one case must hold;
/// anything else is reported as [`Error::Invariant`].
pub fn lemma_l2_classify(u: &SWord, e: &ElementaryAut) -> Result<SplitBehaviour> {
    let (u1, u2) = u
        .as_pair()
        .ok_or_else(|| Error::precondition(format!("{u} is not a composite word")))?;
    let f = e.to_endomorphism();
    let (a, b) = (f.apply(u1)?, f.apply(u2)?);
    let image = f.apply(u)?;
    let split = image
        .as_pair()
        .is_some_and(|(p, q)| (p == &a && q == &b) || (p == &b && q == &a));
    let xi = SWord::generator(e.target());
    let collapsed =
        image == xi && ((u1 == &xi && u2 == e.factor()) || (u2 == &xi && u1 == e.factor()));
    match (split, collapsed) {
        (true, false) => Ok(SplitBehaviour::SplitPreserved),
        (false, true) => Ok(SplitBehaviour::CollapsedToGenerator),
        _ => Err(Error::Invariant(format!(
            "{u} under {e}: image {image}, factor images {a} and {b} fit neither case"
        ))),
    }
}
