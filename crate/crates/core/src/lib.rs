//! Dynnikov coordinates on the classical braid groups `B_n` and the virtual
//! braid groups `VB_n`.
//!
//! * [`word`]: braid words, parsing, free reduction, the map to `S_n`.
//! * [`action`]: the exact piecewise-linear action on `Z^{2n}`.
//! * [`word_problem`]: equality deciders built on the action.
//! * [`diagram`]: the sign-pattern diagram certifying faithfulness on `VB_2`.
//! * [`hunt`]: randomized search for words acting trivially.
//! * [`relators`]: rewriting certificates for trivial words.
//!
//! With the default `parallel` feature the batch workloads run on rayon;
//! disabling it gives a sequential build with identical results.

pub mod action;
pub mod battery;
pub mod diagram;
pub mod error;
pub mod hunt;
pub mod par;
pub mod relators;
pub mod word;
pub mod word_problem;

pub use action::{Coordinates, Quad};
pub use error::{Error, ParseError};
pub use word::{BraidWord, Letter, LetterKind, Permutation};
