use crate::prelude::*;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported modulus {0}: use 0 for Z or 2 <= k < 2^62")]
    InvalidModulus(u64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("subgroup is infinite (modulus 0)")]
    InfiniteSubgroup,
    #[error("matrix is not invertible over Z_{0}")]
    NotInvertible(u64),
    #[error("subgroup is not invariant under the action")]
    NotInvariant,
    #[error("invalid lifting problem: {0}")]
    InvalidProblem(String),
    #[error("relator {0} does not evaluate to the identity")]
    RelatorViolated(usize),
    #[error("group exceeds the order bound {0}")]
    GroupTooLarge(usize),
    #[error("coset enumeration undecided within {0} cosets")]
    Undecided(usize),
    #[error("relator defects are inconsistent with the action: {0}")]
    InconsistentDefects(String),
    #[error("search budget exceeded: {candidates} candidates would be examined")]
    BudgetExceeded { candidates: u128 },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("Riemann-Hurwitz data does not give an integral genus")]
    NonIntegerGenus,
    #[error("closure iteration over Z did not stabilize after {0} rounds")]
    NonTerminating(usize),
    #[error("canonical form entry does not fit in 64 bits")]
    Overflow,
    #[error("split verdicts disagree: {0}")]
    InconsistentVerdicts(String),
    #[error("word syntax error at byte {position}: {reason}")]
    WordSyntax { position: usize, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}
