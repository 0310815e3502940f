use crate::cartan::NodeSet;
use crate::weights::DepthVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("diagonal entry a[{i}][{i}] is not 2")]
    DiagonalNotTwo { i: usize },
    #[error("off-diagonal entry a[{i}][{j}] is positive")]
    PositiveOffDiagonal { i: usize, j: usize },
    #[error("entry a[{i}][{j}] is zero but a[{j}][{i}] is not")]
    AsymmetricZero { i: usize, j: usize },
    #[error("node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("expected {expected} entries, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("node set {0:?} is not independent")]
    NotIndependent(NodeSet),
    #[error("pairing at node {0} is not a nonnegative integer")]
    NotDominantOnH(usize),
    #[error("J is not inside J_lambda: pairing at node {0} is not a nonnegative integer")]
    JNotIntegrableForLambda(usize),
    #[error("{0:?} is not a positive root")]
    NotARoot(DepthVector),
    #[error("root {0:?} has I-height <= 1")]
    UnitHeight(DepthVector),
    #[error("no unit-height witness for root {0:?}; root generation is inconsistent")]
    NoWitness(DepthVector),
    #[error("no descent step below root {0:?}; root generation is inconsistent")]
    NoStep(DepthVector),
    #[error("insufficient height: need H >= {required}, have {available}")]
    InsufficientHeight { required: u32, available: u32 },
    #[error("weight-sets truncated at different heights ({0} vs {1})")]
    HeightMismatch(u32, u32),
    #[error("slice member {0:?} is not supported in J_lambda")]
    SliceOutsideJLambda(DepthVector),
    #[error("J = {j:?} does not contain J_V = {jv:?}")]
    JDoesNotContainJV { j: NodeSet, jv: NodeSet },
    #[error("depth {0:?} is not a weight of the module")]
    NotAWeight(DepthVector),
    #[error("no ascent chain from {0:?} within the height bound")]
    ChainNotFound(DepthVector),
    #[error("algebra is not of finite type")]
    NotFiniteType,
    #[error("engine supports finite type of rank <= {max}, got rank {rank}")]
    EngineUnsupported { rank: usize, max: usize },
    #[error("height {height} exceeds the bound {bound}")]
    HeightOverflow { height: u32, bound: u32 },
    #[error("the module is zero (a relation generates the highest-weight vector)")]
    ZeroModule,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

impl Error {
    /// Process exit status: 1 parse, 2 precondition, 3 internal mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::DiagonalNotTwo { .. }
            | Error::PositiveOffDiagonal { .. }
            | Error::AsymmetricZero { .. } => 1,
            Error::InternalMismatch(_) | Error::NoWitness(_) | Error::NoStep(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
