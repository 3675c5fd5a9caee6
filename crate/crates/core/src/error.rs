use std::fmt;

use crate::semiring::Axiom;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input text could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Tables are structurally broken (wrong shape, unknown label, ...).
    #[error("malformed tables: {0}")]
    Malformed(String),

    /// A semiring axiom fails; `witness` lists the offending element labels.
    #[error("{axiom} violated, witness ({})", .witness.join(", "))]
    Axiom { axiom: Axiom, witness: Vec<String> },

    #[error("`{0}` is not an element of the semiring")]
    UnknownElement(String),

    #[error("element index {index} out of range for a semiring with {size} elements")]
    ElementOutOfRange { index: usize, size: usize },

    /// A map between semirings fails to preserve structure.
    #[error("not a semiring morphism: {0}")]
    NotAHom(String),

    /// A partition is not stable under translation or scaling.
    #[error("not a congruence: {0}")]
    NotACongruence(String),

    #[error("congruence is not weak prime")]
    NotWeakPrime,

    /// The colimit engine grew past its element budget.
    #[error("element budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("map is not continuous: preimage of open {0} is not open")]
    NotContinuous(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("lattice is not distributive, witness ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },

    #[error("not a frame morphism: {0}")]
    NotAFrameMorphism(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// A presentation has a closed path whose comparison map is not an isomorphism.
    #[error("presentation is not monodromy free, witness path {0}")]
    Monodromy(PathWitness),

    /// The closed-path search hit its length bound before exhausting the cycles.
    #[error("monodromy check inconclusive beyond path length {bound}")]
    Inconclusive { bound: usize },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// A closed path rendered for error messages, e.g. `V <-a- U -b-> V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWitness(pub String);

impl fmt::Display for PathWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}
