use thiserror::Error;

use crate::rational::RationalVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("network has no nodes")]
    EmptyNetwork,
    #[error("node {0} is listed twice")]
    DuplicateNode(RationalVector),
    #[error("edge {edge} is a self loop at node {node}")]
    SelfLoopEdge { edge: usize, node: usize },
    #[error("node {0} is neither the source nor the target of any edge")]
    IsolatedNode(RationalVector),
    #[error("node {0} has a negative coordinate")]
    NegativeCoordinate(RationalVector),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("edge {edge} references node {node}, which does not exist")]
    EdgeOutOfRange { edge: usize, node: usize },
    #[error("edges {first} and {second} have the same source and target")]
    MergeableParallelEdges { first: usize, second: usize },
    #[error("rate assignment has {found} rates for {expected} edges")]
    RateLengthMismatch { expected: usize, found: usize },
    #[error("rate constant {index} is not strictly positive")]
    NonPositiveRate { index: usize },
    #[error("reaction vector of edge {edge} is not in the relative interior of the replacement cone")]
    SplitConeViolation { edge: usize },
    #[error("edge index {0} out of range")]
    NoSuchEdge(usize),
    #[error("exponent coordinate {exponent} cannot be evaluated at non-unit concentration")]
    NonIntegerExponentAtEvaluation { exponent: String },
    #[error("concentration vector has a negative coordinate")]
    NegativeConcentration,
    #[error("point {0} is not a member of the point set")]
    PointNotInSet(RationalVector),
    #[error("network is not endotactic")]
    NotEndotactic,
    #[error("network is not weakly reversible")]
    NotWeaklyReversible,
    #[error("network is not strongly endotactic")]
    NotStronglyEndotactic,
    #[error("operation requires dimension {expected}, network has dimension {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("stoichiometric subspace has dimension {found}, expected {expected}")]
    WrongStoichiometricDimension { expected: usize, found: usize },
    #[error("source {0} lies in the relative interior of the source hull")]
    InteriorSourcePresent(RationalVector),
    #[error("monomial x^{0} of the field is not a source complex of the network")]
    ExponentNotASource(RationalVector),
    #[error("no strictly positive rate solution at source {0}")]
    NoPositiveSolution(RationalVector),
    #[error("replacement for edge {0} is infeasible")]
    ReplacementInfeasible(usize),
    #[error("extremal reaction set is empty")]
    EmptyExtremalSet,
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("line {line}: negative stoichiometric coefficient")]
    NegativeCoefficient { line: usize },
    #[error("line {line}: rate constant must be strictly positive")]
    NonPositiveRateLiteral { line: usize },
    #[error("reaction on line {line} has no rate constant")]
    MissingRate { line: usize },
    #[error("species `{0}` is not in the species list")]
    UnknownSpecies(String),
    #[error("species `{0}` declared twice")]
    DuplicateSpeciesDeclaration(String),
    #[error("rejection budget of {0} attempts exceeded")]
    RejectionBudgetExceeded(usize),
    #[error("request exceeds resource guard: {0}")]
    ResourceGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
