//! Graphic simple games: every minimal winning coalition is an edge.

mod cuts;
mod mis;
mod mwis;

pub use cuts::{alpha_graph, alpha_graph_with, build_gadget, decide_alpha_at_most, decide_alpha_at_most_with, Decision, DecisionBranch};
pub use mis::{enumerate_mis, find_induced_kp2, find_induced_kp2_with, forcing_set, maximal_independent_sets, MisIter};
pub use mwis::{mwis_bipartite, mwis_exact, mwis_exact_with, WeightedVertexSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::SimpleGame;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        Graph::new(raw.n, raw.edges.into_iter().map(|[i, j]| (i, j)).collect())
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl Graph {
    /// Normalizes each edge to `i < j`, sorts, and drops duplicates.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::PlayerOutOfRange { player: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![0u64; n];
        for &(i, j) in &norm {
            adj[i - 1] |= Coalition::singleton(j).bits();
            adj[j - 1] |= Coalition::singleton(i).bits();
        }
        Ok(Graph { n, edges: norm, adj })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1)).collect())
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i, i + 1)).collect())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Graph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> Coalition {
        Coalition::from_bits(self.adj[v - 1])
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).contains(j)
    }

    pub fn vertices(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn is_independent(&self, s: Coalition) -> bool {
        s.members().all(|v| !self.neighbors(v).intersects(s))
    }

    /// Extends `s` to a maximal independent set by adding vertices in index order.
    pub fn extend_to_maximal(&self, mut s: Coalition) -> Coalition {
        for v in 1..=self.n {
            if !s.contains(v) && !self.neighbors(v).intersects(s) {
                s = s.with(v);
            }
        }
        s
    }

    /// A proper 2-coloring as `(side A, side B)`, or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<(Coalition, Coalition)> {
        let mut color = vec![None; self.n + 1];
        for start in 1..=self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for w in self.neighbors(u).members() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        let mut a = Coalition::EMPTY;
        let mut b = Coalition::EMPTY;
        for v in 1..=self.n {
            if color[v] == Some(false) {
                a = a.with(v);
            } else {
                b = b.with(v);
            }
        }
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for (i, j) in &self.edges {
            out.push_str(&format!("e {i} {j}\n"));
        }
        out
    }

    /// Parses graph JSON, or DIMACS-like text (`p <n> <m>` or `p edge <n> <m>`,
    /// then `e i j` lines; `c` lines are comments).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
        }
        let mut n = None;
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let bad = || Error::Parse(format!("line {}: cannot parse {line:?}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["c", ..] => {}
                ["p", rest @ ..] => {
                    let nums: Vec<&str> = rest.iter().copied().filter(|t| *t != "edge" && *t != "col").collect();
                    let [nv, m] = nums.as_slice() else { return Err(bad()) };
                    n = Some(nv.parse::<usize>().map_err(|_| bad())?);
                    declared = Some(m.parse::<usize>().map_err(|_| bad())?);
                }
                ["e", i, j] => {
                    if n.is_none() {
                        return Err(bad());
                    }
                    edges.push((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?));
                }
                _ => return Err(bad()),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing problem line \"p <n> <m>\"".into()))?;
        if declared != Some(edges.len()) {
            return Err(Error::Parse(format!(
                "problem line declares {} edges, found {}",
                declared.unwrap_or(0),
                edges.len()
            )));
        }
        Graph::new(n, edges)
    }
}

/// The simple game whose minimal winning coalitions are the edges of `g`.
pub fn graphic_game(g: &Graph) -> Result<SimpleGame> {
    if g.edges.is_empty() {
        return Err(Error::Edgeless);
    }
    let pairs = g
        .edges
        .iter()
        .map(|&(i, j)| Coalition::singleton(i).with(j))
        .collect();
    SimpleGame::new(g.n, pairs)
}

/// `m` distinct edges drawn uniformly, deterministic in `(n, m, seed)`.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    if m > pairs.len() {
        return Err(Error::InvalidArgument(format!("{n} vertices allow at most {} edges", pairs.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    Graph::new(n, pairs)
}

/// Random bipartite graph: random sides, each cross pair present with probability
/// `density`; at least one edge is always present.
pub fn random_bipartite(n: usize, density: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument("a bipartite graph with an edge needs 2 vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    side[0] = false;
    side[1] = true;
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if side[i - 1] != side[j - 1] && rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    if edges.is_empty() {
        edges.push((1, 2));
    }
    Graph::new(n, edges)
}
