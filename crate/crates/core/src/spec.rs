//! Generator specs shared by front ends: `cycle:n`, `random-game:n:size`,
//! `wvg:n` for games and `cycle:n`, `random-graph:n:m` for graphs.

use crate::complete::random_weighted_game;
use crate::error::{Error, Result};
use crate::game::{cycle_game, random_game, SimpleGame};
use crate::graphic::{random_graph, Graph};

/// `Some(params)` when `spec` is `prefix:` followed by `arity` colon-separated integers.
pub fn spec_numbers(spec: &str, prefix: &str, arity: usize) -> Result<Option<Vec<usize>>> {
    let Some(rest) = spec.strip_prefix(prefix).and_then(|r| r.strip_prefix(':')) else {
        return Ok(None);
    };
    let nums = rest
        .split(':')
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {t:?} in {spec:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if nums.len() != arity {
        return Err(Error::Parse(format!("{prefix} expects {arity} parameter(s), got {spec:?}")));
    }
    Ok(Some(nums))
}

pub fn game_from_spec(spec: &str, seed: u64) -> Result<Option<SimpleGame>> {
    if let Some(v) = spec_numbers(spec, "cycle", 1)? {
        return cycle_game(v[0]).map(Some);
    }
    if let Some(v) = spec_numbers(spec, "random-game", 2)? {
        return random_game(v[0], seed, v[1]).map(Some);
    }
    if let Some(v) = spec_numbers(spec, "wvg", 1)? {
        return Ok(Some(random_weighted_game(v[0], seed)?.game));
    }
    Ok(None)
}

pub fn graph_from_spec(spec: &str, seed: u64) -> Result<Option<Graph>> {
    if let Some(v) = spec_numbers(spec, "cycle", 1)? {
        return Graph::cycle(v[0]).map(Some);
    }
    if let Some(v) = spec_numbers(spec, "random-graph", 2)? {
        return random_graph(v[0], v[1], seed).map(Some);
    }
    Ok(None)
}

/// A generator spec, or failing that, game JSON.
pub fn parse_game(text: &str, seed: u64) -> Result<SimpleGame> {
    match game_from_spec(text.trim(), seed)? {
        Some(g) => Ok(g),
        None => SimpleGame::from_json(text),
    }
}

/// A generator spec, or failing that, graph JSON or DIMACS text.
pub fn parse_graph(text: &str, seed: u64) -> Result<Graph> {
    match graph_from_spec(text.trim(), seed)? {
        Some(g) => Ok(g),
        None => Graph::parse(text),
    }
}
