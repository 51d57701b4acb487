//! Complete simple games: the desirability order, suffix-minimal winning
//! sizes `s_i`, and the `p_i = 1/s_i` payoff with its proof-side checks.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alpha::compute_alpha_exact;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{weighted_game, SimpleGame, WinTable};
use crate::limits::Limits;
use crate::lp::{LinearProgram, Relation, Sense};
use crate::payoff::Payoff;
use crate::rational::{self, Rational};

fn check_pair(game: &SimpleGame, i: usize, j: usize) -> Result<()> {
    let n = game.n();
    for p in [i, j] {
        if p == 0 || p > n {
            return Err(Error::PlayerOutOfRange { player: p, n });
        }
    }
    if i == j {
        return Err(Error::InvalidArgument("desirability compares two distinct players".into()));
    }
    Ok(())
}

/// `v(S ∪ j) = 1 ⇒ v(S ∪ i) = 1` for every `S ⊆ N \ {i, j}`.
fn ge_in_table(table: &WinTable, i: usize, j: usize) -> bool {
    let rest = Coalition::full(table.n()).without(i).without(j).bits();
    let mut sub = rest;
    loop {
        let s = Coalition::from_bits(sub);
        if table.is_winning(s.with(j)) && !table.is_winning(s.with(i)) {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & rest;
    }
}

pub fn desirability_ge(game: &SimpleGame, i: usize, j: usize) -> Result<bool> {
    desirability_ge_with(game, i, j, &Limits::default())
}

pub fn desirability_ge_with(game: &SimpleGame, i: usize, j: usize, limits: &Limits) -> Result<bool> {
    check_pair(game, i, j)?;
    game.check_enumerable(limits.order_players, "desirability relation")?;
    Ok(ge_in_table(&game.win_table_with(limits)?, i, j))
}

/// A game together with a desirability-consistent ordering of its players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteGame {
    game: SimpleGame,
    /// `ordering[r]` is the player at position `r + 1`.
    ordering: Vec<usize>,
    relabeled: SimpleGame,
}

impl CompleteGame {
    pub fn game(&self) -> &SimpleGame {
        &self.game
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// The game with players renamed so that position equals label (`1 ⪰ 2 ⪰ …`).
    pub fn relabeled(&self) -> &SimpleGame {
        &self.relabeled
    }

    /// Maps a coalition over positions back to the original players.
    pub fn to_players(&self, positions: Coalition) -> Coalition {
        positions
            .members()
            .fold(Coalition::EMPTY, |acc, r| acc.with(self.ordering[r - 1]))
    }
}

pub fn complete_order(game: &SimpleGame) -> Result<Option<CompleteGame>> {
    complete_order_with(game, &Limits::default())
}

/// Orders the players by desirability if the relation is total; ties keep
/// the lower player index first.
pub fn complete_order_with(game: &SimpleGame, limits: &Limits) -> Result<Option<CompleteGame>> {
    game.check_enumerable(limits.order_players, "desirability relation")?;
    let n = game.n();
    let table = game.win_table_with(limits)?;
    let mut ge = vec![vec![true; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                ge[i][j] = ge_in_table(&table, i, j);
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if !ge[i][j] && !ge[j][i] {
                return Ok(None);
            }
        }
    }
    // in a total preorder, dominating more players means ranking higher
    let mut ordering: Vec<usize> = (1..=n).collect();
    let dominated = |i: usize| (1..=n).filter(|&j| ge[i][j]).count();
    ordering.sort_by_key(|&i| (std::cmp::Reverse(dominated(i)), i));
    Ok(Some(with_ordering(game, ordering)?))
}

fn with_ordering(game: &SimpleGame, ordering: Vec<usize>) -> Result<CompleteGame> {
    let mut position = vec![0; game.n() + 1];
    for (r, &p) in ordering.iter().enumerate() {
        position[p] = r + 1;
    }
    let relabeled = SimpleGame::new(
        game.n(),
        game.minimal_winning()
            .iter()
            .map(|w| w.members().fold(Coalition::EMPTY, |acc, p| acc.with(position[p])))
            .collect(),
    )?;
    Ok(CompleteGame { game: game.clone(), ordering, relabeled })
}

/// For a weighted voting game, sorting by weight (stable in player index)
/// is already a desirability order.
pub fn weighted_order(game: &SimpleGame, weights: &[u64]) -> Result<CompleteGame> {
    if weights.len() != game.n() {
        return Err(Error::DimensionMismatch { expected: game.n(), got: weights.len() });
    }
    let mut ordering: Vec<usize> = (1..=game.n()).collect();
    ordering.sort_by_key(|&i| (std::cmp::Reverse(weights[i - 1]), i));
    with_ordering(game, ordering)
}

/// `k`, the largest position with `{k, …, n}` winning, and `s_i` for `i = 1..=k`,
/// the smallest winning coalition size inside `{i, …, n}`.
pub fn suffix_sizes(cg: &CompleteGame) -> (usize, Vec<usize>) {
    let g = cg.relabeled();
    let n = g.n();
    let suffix = |i: usize| Coalition::full(n).difference(Coalition::full(i - 1));
    let k = (1..=n).rev().find(|&i| g.is_winning(suffix(i))).expect("N is winning");
    let s = (1..=k)
        .map(|i| {
            g.minimal_winning()
                .iter()
                .filter(|w| w.is_subset_of(suffix(i)))
                .map(|w| w.len())
                .min()
                .expect("suffix i ≤ k is winning")
        })
        .collect();
    (k, s)
}

/// `(s_1 − 1)/s_1 + Σ_{i≥2} (s_i − s_{i−1})/s_i`.
pub fn telescoping_bound(s: &[usize]) -> Rational {
    let mut total = Rational::zero();
    let mut prev = 1usize;
    for &si in s {
        total += rational::ratio((si - prev) as i64, si as i64);
        prev = si;
    }
    total
}

/// `1/2 + 1/3 + … + 1/s_k`, which dominates the telescoping bound.
pub fn harmonic_bound(s: &[usize]) -> Rational {
    let top = s.last().copied().unwrap_or(1);
    (2..=top).map(|t| rational::ratio(1, t as i64)).sum()
}

/// `max Σ x_i/s_i` subject to `Σ_{j≤i} x_j ≤ s_i − 1` and `x ≥ 0`, solved exactly.
pub fn greedy_losing_lp(s: &[usize]) -> Result<Rational> {
    let k = s.len();
    let mut lp = LinearProgram::new(k, Sense::Maximize);
    lp.set_objective(s.iter().map(|&si| rational::ratio(1, si as i64)).collect());
    for i in 0..k {
        let row = (0..k).map(|j| if j <= i { Rational::one() } else { Rational::zero() }).collect();
        lp.add_constraint(row, Relation::Le, rational::int(s[i] as i64 - 1));
    }
    let sol = lp.solve()?;
    assert!(sol.is_optimal(), "the prefix model is feasible at 0 and bounded");
    Ok(sol.objective)
}

/// `√n · ln n`.
pub fn csg_bound(n: usize) -> f64 {
    let n = n as f64;
    n.sqrt() * n.ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsgPayoffReport {
    pub k: usize,
    pub s: Vec<usize>,
    /// Payoff to each original player (entry `i - 1` for player `i`).
    pub payoff: Payoff,
    #[serde(with = "rational::serde_str")]
    pub min_winning: Rational,
    #[serde(with = "rational::serde_str")]
    pub max_losing: Rational,
    #[serde(with = "rational::serde_str")]
    pub greedy_bound: Rational,
    #[serde(with = "rational::serde_str")]
    pub harmonic_bound: Rational,
    #[serde(with = "rational::serde_str")]
    pub ratio: Rational,
    pub bound: f64,
    /// `min_W p(W) ≥ 1/√n`.
    pub winning_floor_holds: bool,
    /// `max_L p(L) ≤ greedy_bound`.
    pub losing_bound_holds: bool,
    /// `ratio ≤ √n · ln n`.
    pub ratio_bound_holds: bool,
}

impl CsgPayoffReport {
    pub fn all_hold(&self) -> bool {
        self.winning_floor_holds && self.losing_bound_holds && self.ratio_bound_holds
    }
}

/// `p_i = 1/s_i` for positions `i ≤ k` and `p_i = p_k` beyond, evaluated
/// against every minimal winning and maximal losing coalition.
pub fn csg_payoff(cg: &CompleteGame) -> Result<CsgPayoffReport> {
    let game = cg.game();
    let n = game.n();
    let (k, s) = suffix_sizes(cg);
    let mut values = vec![Rational::zero(); n];
    for r in 1..=n {
        let si = s[r.min(k) - 1];
        values[cg.ordering()[r - 1] - 1] = rational::ratio(1, si as i64);
    }
    let payoff = Payoff::new(values)?;
    let min_winning = game
        .minimal_winning()
        .iter()
        .map(|&w| payoff.of(w))
        .min()
        .expect("nonempty antichain");
    let max_losing = game
        .maximal_losing()?
        .into_iter()
        .map(|l| payoff.of(l))
        .max()
        .unwrap_or_else(Rational::zero);
    let greedy_bound = telescoping_bound(&s);
    let ratio = &max_losing / &min_winning;
    let bound = csg_bound(n);
    Ok(CsgPayoffReport {
        winning_floor_holds: rational::at_least_inv_sqrt(&min_winning, n),
        losing_bound_holds: max_losing <= greedy_bound,
        ratio_bound_holds: rational::to_f64(&ratio) <= bound,
        harmonic_bound: harmonic_bound(&s),
        k,
        s,
        payoff,
        min_winning,
        max_losing,
        greedy_bound,
        ratio,
        bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedVotingGame {
    pub weights: Vec<u64>,
    pub quota: u64,
    pub game: SimpleGame,
}

/// Random `[quota; weights]` with weights uniform in `1..=10` and the quota
/// uniform in `1..=Σw`; deterministic in `(n, seed)`.
pub fn random_weighted_game(n: usize, seed: u64) -> Result<WeightedVotingGame> {
    if !(1..=24).contains(&n) {
        return Err(Error::PlayerCount(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
    let total: u64 = weights.iter().sum();
    let quota = rng.gen_range(1..=total);
    let game = weighted_game(&weights, quota)?;
    Ok(WeightedVotingGame { weights, quota, game })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsgCorpusEntry {
    pub seed: u64,
    pub weights: Vec<u64>,
    pub quota: u64,
    pub complete: bool,
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    pub report: CsgPayoffReport,
    /// `α ≤ ratio` (the construction's payoff is feasible for the min-max).
    pub alpha_below_ratio: bool,
    /// The prefix LP optimum equals the telescoping sum.
    pub greedy_lp_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsgCorpusReport {
    pub n: usize,
    pub bound: f64,
    pub entries: Vec<CsgCorpusEntry>,
}

/// Runs the construction on `random_weighted_game(n, seed)` for each seed, in seed order.
pub fn csg_bound_corpus(n: usize, seeds: &[u64]) -> Result<CsgCorpusReport> {
    if n > 16 {
        return Err(Error::budget("complete-game corpus", 16, n));
    }
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    let mut entries = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let wvg = random_weighted_game(n, seed)?;
        let cg = weighted_order(&wvg.game, &wvg.weights)?;
        let complete = complete_order(&wvg.game)?.is_some();
        let report = csg_payoff(&cg)?;
        let alpha = compute_alpha_exact(&wvg.game)?.alpha;
        let greedy_lp_matches = greedy_losing_lp(&report.s)? == report.greedy_bound;
        entries.push(CsgCorpusEntry {
            seed,
            weights: wvg.weights,
            quota: wvg.quota,
            complete,
            alpha_below_ratio: alpha <= report.ratio,
            alpha,
            report,
            greedy_lp_matches,
        });
    }
    Ok(CsgCorpusReport { n, bound: csg_bound(n), entries })
}
