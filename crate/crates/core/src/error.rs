use thiserror::Error;

/// Errors surfaced by group construction, counting, and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor order {0} is invalid (must be at least 2)")]
    InvalidOrder(u64),
    #[error("group needs at least one cyclic factor")]
    EmptyGroup,
    #[error("group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u128, cap: u64 },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("element index {index} out of range for group of order {order}")]
    InvalidIndex { index: usize, order: u64 },
    #[error("scale factor {0} must lie in [1, exponent]")]
    InvalidScale(u64),
    #[error("scaled group dG is trivial")]
    TrivialSubgroup,
    #[error("weight {0} is a multiple of the exponent")]
    ZeroWeight(i64),
    #[error("weight set must be nonempty")]
    EmptyWeightSet,
    #[error("sequence length {len} exceeds the naive counting cap {cap}")]
    TooLongForNaive { len: usize, cap: usize },
    #[error("dynamic program exceeded the state budget of {budget} states")]
    StateBudgetExceeded { budget: usize },
    #[error("zero-sum-free search exceeded the depth cap {cap}")]
    SearchCapExceeded { cap: usize },
    #[error("element has no weighted representation over the basis sequence")]
    NotRepresentable,
    #[error("weight set united with zero is not a proper subgroup of Z_n")]
    NotASubgroup,
    #[error("sequence is not reduced (contains an element of order below the exponent)")]
    NotReduced,
    #[error("structure verification requires odd exponent, got {exponent}")]
    OddExponentRequired { exponent: u64 },
    #[error("operation requires the full weight set [1, n-1]")]
    FullWeightsRequired,
    #[error("zero-sum family with {extras} extra elements is too large to emit")]
    FamilyTooLarge { extras: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
