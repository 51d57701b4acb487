use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::rational::{self, Rational};

/// A nonnegative exact payoff vector; entry `i - 1` belongs to player `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Payoff(#[serde(with = "rational::serde_vec")] Vec<Rational>);

impl Payoff {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::NegativePayoff { index });
        }
        Ok(Payoff(values))
    }

    pub fn uniform(n: usize, value: Rational) -> Result<Self> {
        Payoff::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn get(&self, player: usize) -> &Rational {
        &self.0[player - 1]
    }

    /// `p(S)`.
    pub fn of(&self, s: Coalition) -> Rational {
        s.members().map(|p| &self.0[p - 1]).sum()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Payoff::new(self.0.iter().map(|v| v * c).collect())
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.0.len() });
        }
        Ok(())
    }
}

/// Membership in `Q(W)`: `p ≥ 0` and `p(W) ≥ 1` for every minimal winning `W`.
pub fn is_feasible(game: &SimpleGame, p: &Payoff) -> Result<bool> {
    p.check_len(game.n())?;
    let one = rational::one();
    Ok(game.minimal_winning().iter().all(|&w| p.of(w) >= one))
}

/// Like [`is_feasible`] but names the first violated coalition.
pub(crate) fn require_feasible(game: &SimpleGame, p: &Payoff) -> Result<()> {
    p.check_len(game.n())?;
    let one = rational::one();
    match game.minimal_winning().iter().find(|&&w| p.of(w) < one) {
        Some(w) => Err(Error::InfeasiblePayoff { coalition: w.to_string() }),
        None => Ok(()),
    }
}
