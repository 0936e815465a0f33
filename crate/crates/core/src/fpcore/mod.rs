//! Free-group words, finite presentations, the presentation DSL, substitution
//! homomorphisms and a bounded relator-derivation checker.

mod derive;
mod parse;
mod presentation;
mod subst;
mod word;

pub use derive::{
    check_homomorphism, check_isomorphism, derive_relator, proves, replay, Derivation,
    DerivationBudget, HomCheck, IsoCheck, ProofStep, ProofTrace, Refutation,
};
pub use parse::{parse_presentation, parse_word, ParseError};
pub use presentation::{format_word, Presentation};
pub use subst::{substitute, SubstitutionMap};
pub use word::{free_reduce, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("generator {name} declared twice (first at position {first})")]
    DuplicateGenerator { name: String, first: usize },
    #[error("relator {relator} references undeclared generator index {index}")]
    UndeclaredGenerator { relator: usize, index: usize },
    #[error("substitution has {got} images for {expected} source generators")]
    ImageCount { expected: usize, got: usize },
    #[error("image of generator {generator} references undeclared target generator index {index}")]
    ImageOutOfRange { generator: usize, index: usize },
}
