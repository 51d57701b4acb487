use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("player count {0} is outside 1..=64")]
    PlayerCount(usize),
    #[error("player {player} is outside 1..={n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("a simple game needs at least one minimal winning coalition")]
    NoWinningCoalitions,
    #[error("the empty coalition cannot be winning")]
    EmptyCoalition,
    #[error("cycle games need an even player count between 4 and 64, got {0}")]
    CycleSize(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("payoff entry {index} is negative")]
    NegativePayoff { index: usize },
    #[error("payoff is not in Q(W): coalition {coalition} receives less than 1")]
    InfeasiblePayoff { coalition: String },
    #[error("payoff ratio undefined: some winning coalition has payoff 0")]
    ZeroWinningPayoff,
    #[error("graph has a self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has no edges, so no coalition is winning")]
    Edgeless,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("{what}: size {got} exceeds budget {limit}")]
    Budget {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("{0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }

    pub(crate) fn budget(what: &'static str, limit: usize, got: usize) -> Self {
        Error::Budget { what, limit, got }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
