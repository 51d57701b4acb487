use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_PLAYERS: usize = 64;

/// A set of players from `1..=64`, stored as a bit mask (player `i` is bit `i - 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        if n >= 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        debug_assert!((1..=MAX_PLAYERS).contains(&player));
        Coalition(1u64 << (player - 1))
    }

    /// Builds a coalition from 1-indexed players, checking each lies in `1..=n`.
    pub fn from_players(players: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &p in players {
            if p == 0 || p > n || p > MAX_PLAYERS {
                return Err(Error::PlayerOutOfRange { player: p, n });
            }
            bits |= 1u64 << (p - 1);
        }
        Ok(Coalition(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, player: usize) -> bool {
        (1..=MAX_PLAYERS).contains(&player) && self.0 >> (player - 1) & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | Coalition::singleton(player).0)
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !Coalition::singleton(player).0)
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    /// `N \ self` for `N = {1, …, n}`.
    pub fn complement(self, n: usize) -> Self {
        Coalition(!self.0 & Coalition::full(n).0)
    }

    /// Whether every member lies in `1..=n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset_of(Coalition::full(n))
    }

    pub fn max_player(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.members().collect()
    }

    /// The 0/1 characteristic vector over players `1..=n`.
    pub fn indicator(self, n: usize) -> Vec<u8> {
        (1..=n).map(|p| self.contains(p) as u8).collect()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

/// Lexicographic order on the ascending member lists.
impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members().cmp(other.members())
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.members().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Coalition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members())
    }
}

impl<'de> Deserialize<'de> for Coalition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let players = Vec::<usize>::deserialize(d)?;
        Coalition::from_players(&players, MAX_PLAYERS).map_err(serde::de::Error::custom)
    }
}
