use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("group order exceeds the cap of {max_order} elements")]
    OrderCapExceeded { max_order: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation degree {degree} exceeds the limit of {limit} points")]
    DegreeLimitExceeded { degree: usize, limit: usize },
    #[error("generators act on different numbers of points ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse generators: {0}")]
    Parse(String),
    #[error("unknown or invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("{family} parameter {parameter} exceeds the limit of {limit}")]
    ParameterLimit {
        family: &'static str,
        parameter: usize,
        limit: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharacterError {
    #[error("class algebra eigenbasis could not be separated after {attempts} attempts")]
    EigensplitFailure { attempts: usize },
    #[error("Frobenius-Schur indicator of character {character} is off lattice ({value})")]
    IndicatorOffLattice { character: usize, value: f64 },
    #[error("character table failed validation: {0}")]
    Validation(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("probability is not constant on conjugacy class {class}")]
    NotClassFunction { class: usize },
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error("character expansion does not reconstruct the probability (residual {residual:e})")]
    ReconstructionFailure { residual: f64 },
    #[error(
        "convergence predicates disagree: a={a} (no convergence) b={b} (R1 nonempty) \
         c={c} (G != G1) d={d} (|G/G'| even)"
    )]
    EquivalenceViolation { a: bool, b: bool, c: bool, d: bool },
    #[error("|G| m for character {character} is off the {{-1, 0, 1}} lattice ({value})")]
    IndicatorOffLattice { character: usize, value: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("probability mass at element {element} lies outside the subgroup")]
    SupportEscapesSubgroup { element: usize },
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Any failure raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
