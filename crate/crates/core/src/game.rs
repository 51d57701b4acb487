//! Simple games represented by their antichain of minimal winning coalitions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GameJson", into = "GameJson")]
pub struct SimpleGame {
    n: usize,
    minimal_winning: Vec<Coalition>,
}

#[derive(Serialize, Deserialize)]
struct GameJson {
    n: usize,
    minimal_winning: Vec<Vec<usize>>,
}

impl TryFrom<GameJson> for SimpleGame {
    type Error = Error;

    fn try_from(raw: GameJson) -> Result<Self> {
        if raw.n == 0 || raw.n > MAX_PLAYERS {
            return Err(Error::PlayerCount(raw.n));
        }
        let coalitions = raw
            .minimal_winning
            .iter()
            .map(|c| Coalition::from_players(c, raw.n))
            .collect::<Result<Vec<_>>>()?;
        SimpleGame::new(raw.n, coalitions)
    }
}

impl From<SimpleGame> for GameJson {
    fn from(g: SimpleGame) -> Self {
        GameJson {
            n: g.n,
            minimal_winning: g.minimal_winning.iter().map(|c| c.to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GameStats {
    pub winning: u64,
    pub losing: u64,
    pub minimal_winning: usize,
    pub maximal_losing: usize,
}

/// Keeps the inclusion-minimal members, sorted lexicographically and deduplicated.
pub(crate) fn minimal_members(mut sets: Vec<Coalition>) -> Vec<Coalition> {
    sets.sort_by_key(|c| (c.len(), c.bits()));
    sets.dedup();
    let mut kept: Vec<Coalition> = Vec::with_capacity(sets.len());
    for c in sets {
        if !kept.iter().any(|k| k.is_subset_of(c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

impl SimpleGame {
    /// Validates the input and prunes it to its inclusion-minimal members.
    pub fn new(n: usize, coalitions: Vec<Coalition>) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        if coalitions.is_empty() {
            return Err(Error::NoWinningCoalitions);
        }
        for c in &coalitions {
            if c.is_empty() {
                return Err(Error::EmptyCoalition);
            }
            if !c.within(n) {
                return Err(Error::PlayerOutOfRange {
                    player: c.max_player().unwrap_or(0),
                    n,
                });
            }
        }
        Ok(SimpleGame {
            n,
            minimal_winning: minimal_members(coalitions),
        })
    }

    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let coalitions = lists
            .iter()
            .map(|l| Coalition::from_players(l, n))
            .collect::<Result<Vec<_>>>()?;
        SimpleGame::new(n, coalitions)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn minimal_winning(&self) -> &[Coalition] {
        &self.minimal_winning
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn is_winning(&self, s: Coalition) -> bool {
        self.minimal_winning.iter().any(|w| w.is_subset_of(s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("game serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub(crate) fn check_enumerable(&self, limit: usize, what: &'static str) -> Result<()> {
        if self.n > limit {
            Err(Error::budget(what, limit, self.n))
        } else {
            Ok(())
        }
    }

    pub fn win_table(&self) -> Result<WinTable> {
        self.win_table_with(&Limits::default())
    }

    pub fn win_table_with(&self, limits: &Limits) -> Result<WinTable> {
        self.check_enumerable(limits.enumeration_players, "subset enumeration")?;
        Ok(WinTable::build(self))
    }

    pub fn maximal_losing(&self) -> Result<Vec<Coalition>> {
        self.maximal_losing_with(&Limits::default())
    }

    /// All inclusion-maximal losing coalitions, by enumerating every subset.
    pub fn maximal_losing_with(&self, limits: &Limits) -> Result<Vec<Coalition>> {
        let table = self.win_table_with(limits)?;
        Ok(table.maximal_losing())
    }

    pub fn blocker(&self) -> Result<Vec<Coalition>> {
        self.blocker_with(&Limits::default())
    }

    /// Minimal covers of the winning family (minimal transversals of the
    /// minimal winning antichain), by Berge's incremental product.
    pub fn blocker_with(&self, limits: &Limits) -> Result<Vec<Coalition>> {
        self.check_enumerable(limits.enumeration_players, "blocker")?;
        let mut transversals = vec![Coalition::EMPTY];
        for &edge in &self.minimal_winning {
            let mut next = Vec::with_capacity(transversals.len() * 2);
            for &t in &transversals {
                if t.intersects(edge) {
                    next.push(t);
                } else {
                    next.extend(edge.members().map(|v| t.with(v)));
                }
            }
            transversals = minimal_members(next);
        }
        Ok(transversals)
    }

    pub fn stats(&self) -> Result<GameStats> {
        let table = self.win_table()?;
        let winning = table.winning_count();
        Ok(GameStats {
            winning,
            losing: (1u64 << self.n) - winning,
            minimal_winning: self.minimal_winning.len(),
            maximal_losing: table.maximal_losing().len(),
        })
    }
}

/// Winning/losing classification of all `2^n` subsets.
pub struct WinTable {
    n: usize,
    winning: Vec<bool>,
}

impl WinTable {
    fn build(game: &SimpleGame) -> Self {
        let n = game.n;
        let size = 1usize << n;
        let mut winning = vec![false; size];
        for w in &game.minimal_winning {
            winning[w.bits() as usize] = true;
        }
        // upward closure, one coordinate at a time
        for bit in 0..n {
            let b = 1usize << bit;
            for s in 0..size {
                if s & b != 0 && winning[s ^ b] {
                    winning[s] = true;
                }
            }
        }
        WinTable { n, winning }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_winning(&self, s: Coalition) -> bool {
        self.winning[s.bits() as usize]
    }

    pub fn winning_count(&self) -> u64 {
        self.winning.iter().filter(|&&w| w).count() as u64
    }

    pub fn winning(&self) -> impl Iterator<Item = Coalition> + '_ {
        self.winning
            .iter()
            .enumerate()
            .filter(|(_, &w)| w)
            .map(|(s, _)| Coalition::from_bits(s as u64))
    }

    pub fn losing(&self) -> impl Iterator<Item = Coalition> + '_ {
        self.winning
            .iter()
            .enumerate()
            .filter(|(_, &w)| !w)
            .map(|(s, _)| Coalition::from_bits(s as u64))
    }

    pub fn maximal_losing(&self) -> Vec<Coalition> {
        let n = self.n;
        let mut out: Vec<Coalition> = self
            .losing()
            .filter(|s| (1..=n).all(|p| s.contains(p) || self.is_winning(s.with(p))))
            .collect();
        out.sort();
        out
    }
}

/// The game whose minimal winning coalitions are the consecutive pairs of an `n`-cycle.
pub fn cycle_game(n: usize) -> Result<SimpleGame> {
    if !(4..=MAX_PLAYERS).contains(&n) || n % 2 == 1 {
        return Err(Error::CycleSize(n));
    }
    let edges = (1..=n)
        .map(|i| Coalition::singleton(i).with(i % n + 1))
        .collect();
    SimpleGame::new(n, edges)
}

/// Deterministic random game: `target_antichain_size` uniform nonempty
/// coalitions, pruned to their minimal members.
pub fn random_game(n: usize, seed: u64, target_antichain_size: usize) -> Result<SimpleGame> {
    if !(2..=24).contains(&n) {
        return Err(Error::PlayerCount(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = Coalition::full(n).bits();
    let mut sets = Vec::with_capacity(target_antichain_size.max(1));
    while sets.len() < target_antichain_size.max(1) {
        let bits = rng.gen::<u64>() & mask;
        if bits != 0 {
            sets.push(Coalition::from_bits(bits));
        }
    }
    SimpleGame::new(n, sets)
}

/// The weighted voting game `[quota; weights]`: `S` wins iff `w(S) ≥ quota`.
pub fn weighted_game(weights: &[u64], quota: u64) -> Result<SimpleGame> {
    let n = weights.len();
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    if n > 24 {
        return Err(Error::budget("weighted game enumeration", 24, n));
    }
    let total: u64 = weights.iter().sum();
    if quota == 0 {
        return Err(Error::EmptyCoalition);
    }
    if quota > total {
        return Err(Error::NoWinningCoalitions);
    }
    let mut minimal = Vec::new();
    for bits in 1u64..(1u64 << n) {
        let s = Coalition::from_bits(bits);
        let w: u64 = s.members().map(|p| weights[p - 1]).sum();
        let lightest = s.members().map(|p| weights[p - 1]).min().unwrap_or(0);
        if w >= quota && w - lightest < quota {
            minimal.push(s);
        }
    }
    SimpleGame::new(n, minimal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players, 64).unwrap()
    }

    pub(crate) fn dictator() -> SimpleGame {
        SimpleGame::from_lists(3, &[&[1]]).unwrap()
    }

    pub(crate) fn majority() -> SimpleGame {
        SimpleGame::from_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap()
    }

    #[test]
    fn new_game_keeps_example_pairs() {
        let g = SimpleGame::from_lists(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap();
        assert_eq!(g.minimal_winning(), &[c(&[1, 2]), c(&[1, 4]), c(&[2, 3]), c(&[3, 4])]);
    }

    #[test]
    fn new_game_prunes_supersets() {
        let g = SimpleGame::from_lists(3, &[&[1], &[1, 2]]).unwrap();
        assert_eq!(g.minimal_winning(), &[c(&[1])]);
    }

    #[test]
    fn new_game_errors() {
        assert_eq!(SimpleGame::from_lists(3, &[&[]]), Err(Error::EmptyCoalition));
        assert_eq!(SimpleGame::new(3, vec![]), Err(Error::NoWinningCoalitions));
        assert!(matches!(
            SimpleGame::from_lists(3, &[&[4]]),
            Err(Error::PlayerOutOfRange { player: 4, n: 3 })
        ));
        assert_eq!(SimpleGame::new(0, vec![c(&[1])]), Err(Error::PlayerCount(0)));
    }

    #[test]
    fn winning_queries() {
        let g = cycle_game(4).unwrap();
        assert!(g.is_winning(c(&[1, 2, 3])));
        assert!(!g.is_winning(c(&[1, 3])));
        assert!(g.is_winning(g.grand_coalition()));
        assert!(!g.is_winning(Coalition::EMPTY));
    }

    #[test]
    fn maximal_losing_examples() {
        assert_eq!(cycle_game(4).unwrap().maximal_losing().unwrap(), vec![c(&[1, 3]), c(&[2, 4])]);
        assert_eq!(dictator().maximal_losing().unwrap(), vec![c(&[2, 3])]);
        assert_eq!(majority().maximal_losing().unwrap(), vec![c(&[1]), c(&[2]), c(&[3])]);
    }

    #[test]
    fn blocker_examples() {
        assert_eq!(cycle_game(4).unwrap().blocker().unwrap(), vec![c(&[1, 3]), c(&[2, 4])]);
        assert_eq!(dictator().blocker().unwrap(), vec![c(&[1])]);
        assert_eq!(
            majority().blocker().unwrap(),
            vec![c(&[1, 2]), c(&[1, 3]), c(&[2, 3])]
        );
    }

    #[test]
    fn enumeration_budget() {
        let big = SimpleGame::from_lists(30, &[&[1, 30]]).unwrap();
        assert!(big.maximal_losing().unwrap_err().is_budget());
        assert!(big.blocker().unwrap_err().is_budget());
    }

    #[test]
    fn cycle_game_sizes() {
        let g = cycle_game(4).unwrap();
        assert_eq!(g.minimal_winning(), &[c(&[1, 2]), c(&[1, 4]), c(&[2, 3]), c(&[3, 4])]);
        let g6 = cycle_game(6).unwrap();
        assert_eq!(g6.minimal_winning().len(), 6);
        assert!(g6.minimal_winning().iter().all(|w| w.len() == 2));
        assert_eq!(cycle_game(5), Err(Error::CycleSize(5)));
        assert_eq!(cycle_game(2), Err(Error::CycleSize(2)));
        assert_eq!(cycle_game(66), Err(Error::CycleSize(66)));
    }

    #[test]
    fn random_game_deterministic() {
        assert_eq!(random_game(6, 1, 5).unwrap(), random_game(6, 1, 5).unwrap());
        let g = random_game(2, 7, 1).unwrap();
        let options = [vec![c(&[1])], vec![c(&[2])], vec![c(&[1, 2])]];
        assert!(options.iter().any(|o| o.as_slice() == g.minimal_winning()));
        let g = random_game(10, 42, 8).unwrap();
        let again = SimpleGame::new(10, g.minimal_winning().to_vec()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn stats_partition() {
        let s = majority().stats().unwrap();
        assert_eq!(s.winning + s.losing, 8);
        assert_eq!(s.winning, 4);
        assert_eq!(s.maximal_losing, 3);
    }

    #[test]
    fn weighted_minimal_winning() {
        let g = weighted_game(&[2, 1, 1, 1], 3).unwrap();
        assert_eq!(
            g.minimal_winning(),
            &[c(&[1, 2]), c(&[1, 3]), c(&[1, 4]), c(&[2, 3, 4])]
        );
        assert!(weighted_game(&[1, 1], 3).is_err());
        assert!(weighted_game(&[1, 1], 0).is_err());
    }

    #[test]
    fn json_canonical() {
        let g = SimpleGame::from_json(r#"{"n":4,"minimal_winning":[[3,4],[2,1],[2,3],[1,4]]}"#).unwrap();
        assert_eq!(g.to_json(), r#"{"n":4,"minimal_winning":[[1,2],[1,4],[2,3],[3,4]]}"#);
        assert!(SimpleGame::from_json(r#"{"n":2,"minimal_winning":[[3]]}"#).is_err());
        assert!(SimpleGame::from_json(r#"{"n":2,"minimal_winning":[[]]}"#).is_err());
    }
}
