//! The critical threshold value `α = min_{p∈Q(W)} max_{L∈L} p(L)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::limits::Limits;
use crate::lp::{LinearProgram, Relation, Sense};
use crate::minnorm::indicator;
use crate::payoff::Payoff;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaCertificate {
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    pub payoff: Payoff,
    /// Constraint losing coalitions with `p(L) = α`.
    pub tight_losing: Vec<Coalition>,
    /// Constraint winning coalitions with `p(W) = 1`.
    pub binding_winning: Vec<Coalition>,
}

impl AlphaCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Minimizes `a` subject to `p(W) ≥ 1` over `winning`, `p(L) ≤ a` over `losing`, `p ≥ 0`.
pub(crate) fn threshold_lp(n: usize, winning: &[Coalition], losing: &[Coalition]) -> Result<AlphaCertificate> {
    let mut lp = LinearProgram::new(n + 1, Sense::Minimize);
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    lp.set_objective(objective);
    for &w in winning {
        let mut row = indicator(w, n);
        row.push(Rational::zero());
        lp.add_constraint(row, Relation::Ge, Rational::one());
    }
    for &l in losing {
        let mut row = indicator(l, n);
        row.push(-Rational::one());
        lp.add_constraint(row, Relation::Le, Rational::zero());
    }
    let sol = lp.solve()?;
    assert!(sol.is_optimal(), "the threshold LP is feasible (p = 1) and bounded (a ≥ 0)");
    let alpha = sol.primal[n].clone();
    let payoff = Payoff::new(sol.primal[..n].to_vec())?;
    let tight_losing = losing.iter().copied().filter(|&l| payoff.of(l) == alpha).collect();
    let binding_winning = winning
        .iter()
        .copied()
        .filter(|&w| payoff.of(w) == Rational::one())
        .collect();
    Ok(AlphaCertificate {
        alpha,
        payoff,
        tight_losing,
        binding_winning,
    })
}

pub fn compute_alpha_exact(game: &SimpleGame) -> Result<AlphaCertificate> {
    compute_alpha_exact_with(game, &Limits::default())
}

/// Exact `α` from one LP over the minimal winning and maximal losing coalitions.
pub fn compute_alpha_exact_with(game: &SimpleGame, limits: &Limits) -> Result<AlphaCertificate> {
    let losing = game.maximal_losing_with(limits)?;
    threshold_lp(game.n(), game.minimal_winning(), &losing)
}

/// `max_L p(L) / min_W p(W)` for a fixed payoff.
pub fn alpha_of_payoff(game: &SimpleGame, p: &Payoff) -> Result<Rational> {
    alpha_of_payoff_with(game, p, &Limits::default())
}

pub fn alpha_of_payoff_with(game: &SimpleGame, p: &Payoff, limits: &Limits) -> Result<Rational> {
    p.check_len(game.n())?;
    let min_win = game
        .minimal_winning()
        .iter()
        .map(|&w| p.of(w))
        .min()
        .expect("games have a winning coalition");
    if min_win.is_zero() {
        return Err(Error::ZeroWinningPayoff);
    }
    let max_lose = game
        .maximal_losing_with(limits)?
        .into_iter()
        .map(|l| p.of(l))
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(max_lose / min_win)
}

/// `α < 1`.
pub fn is_weighted(game: &SimpleGame) -> Result<bool> {
    Ok(compute_alpha_exact(game)?.alpha < Rational::one())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusEntry {
    pub label: String,
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    #[serde(with = "rational::serde_str")]
    pub quarter_n: Rational,
    /// `α / (n/4)`.
    #[serde(with = "rational::serde_str")]
    pub ratio: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub entries: Vec<CorpusEntry>,
    #[serde(with = "rational::serde_str")]
    pub max_ratio: Rational,
    pub all_hold: bool,
}

/// Checks `α ≤ n/4` for each labelled game.
pub fn verify_conjecture_games(games: &[(String, SimpleGame)]) -> Result<ConjectureReport> {
    let mut entries = Vec::with_capacity(games.len());
    for (label, game) in games {
        let cert = compute_alpha_exact(game)?;
        let quarter_n = rational::ratio(game.n() as i64, 4);
        let ratio = &cert.alpha / &quarter_n;
        entries.push(CorpusEntry {
            label: label.clone(),
            n: game.n(),
            holds: cert.alpha <= quarter_n,
            alpha: cert.alpha,
            quarter_n,
            ratio,
        });
    }
    let max_ratio = entries.iter().map(|e| e.ratio.clone()).max().unwrap_or_else(Rational::zero);
    let all_hold = entries.iter().all(|e| e.holds);
    Ok(ConjectureReport { entries, max_ratio, all_hold })
}

/// Runs [`verify_conjecture_games`] on `random_game(n, seed, antichain_size)` for each
/// seed, reported in ascending seed order.
pub fn verify_conjecture_corpus(n: usize, seeds: &[u64], antichain_size: usize) -> Result<ConjectureReport> {
    if n > 16 {
        return Err(Error::budget("conjecture corpus", 16, n));
    }
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    let games = seeds
        .iter()
        .map(|&s| Ok((format!("seed:{s}"), crate::game::random_game(n, s, antichain_size)?)))
        .collect::<Result<Vec<_>>>()?;
    verify_conjecture_games(&games)
}
