//! Symbolic computation with free Steiner loops.
//!
//! * [`words`]: canonical words and the loop product.
//! * [`subloop`]: generated subloops, reducibility and Nielsen-style reduction.
//! * [`automorphism`]: endomorphisms, elementary automorphisms, tame decomposition.
//! * [`multgroup`]: the multiplication group as a free product of involutions.
//! * [`relations`]: relations and growth in the automorphism group on three generators.
//! * [`sts`]: finite Steiner triple systems and their loops.

pub mod automorphism;
mod error;
mod limits;
pub mod multgroup;
pub mod relations;
pub mod sts;
pub mod subloop;
pub mod words;

pub use automorphism::{lemma_l2_classify, ElementaryAut, Endomorphism, SplitBehaviour, TameWord};
pub use error::{Error, Result};
pub use limits::Limits;
pub use subloop::{GenTuple, ParseTree};
pub use words::{compare, mult, Alphabet, RawWord, SWord};
