//! Critical threshold value α of simple games: exact rational LP, certified
//! min-norm points, graphic games and complete games.
//!
//! Players are numbered from 1; a [`Coalition`] is a bitmask over at most 64 players.

// index loops mirror the formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod alpha;
pub mod coalition;
pub mod complete;
pub mod error;
pub mod game;
pub mod graphic;
pub mod limits;
pub mod minnorm;
pub mod payoff;
pub mod lp;
pub mod rational;
pub mod spec;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use game::{cycle_game, random_game, weighted_game, GameStats, SimpleGame};
pub use limits::Limits;
pub use lp::{in_convex_hull, solve_lp, LinearProgram, LpSolution, LpStatus, Relation, Sense};
pub use rational::Rational;
