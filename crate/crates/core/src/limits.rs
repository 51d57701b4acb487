/// Size caps for the enumeration-based operations.
///
/// Every operation that walks `2^n` subsets, searches exponentially, or
/// iterates towards a tolerance checks one of these before starting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Player cap for `2^n` subset enumeration (maximal losing, blocker, alpha).
    pub enumeration_players: usize,
    /// Player cap for enumerating every winning and losing coalition.
    pub hull_players: usize,
    /// Player cap for the desirability quantifier over `S ⊆ N \ {i, j}`.
    pub order_players: usize,
    /// Vertex cap for the exact branch-and-bound MWIS oracle and MIS enumeration.
    pub mwis_vertices: usize,
    /// Largest `k` for the brute-force induced `kP2` search.
    pub kp2_max_k: usize,
    /// Maximum number of maximal independent sets to enumerate.
    pub mis_cap: usize,
    /// Maximum cutting-plane rounds in the graphic alpha loop.
    pub cut_rounds: usize,
    /// Major-iteration cap for the min-norm solver.
    pub min_norm_iterations: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_players: 24,
            hull_players: 20,
            order_players: 20,
            mwis_vertices: 40,
            kp2_max_k: 5,
            mis_cap: 1_000_000,
            cut_rounds: 10_000,
            min_norm_iterations: 100_000,
        }
    }
}

impl Limits {
    /// Overrides every player/vertex cap with `n`. Used by the CLI `--budget` flag.
    pub fn with_player_budget(mut self, n: usize) -> Self {
        self.enumeration_players = n;
        self.hull_players = n;
        self.order_players = n;
        self.mwis_vertices = n;
        self
    }
}
