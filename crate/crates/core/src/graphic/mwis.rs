use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Graph;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedVertexSet {
    pub vertices: Coalition,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

fn check_weights(g: &Graph, weights: &[Rational]) -> Result<()> {
    if weights.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), got: weights.len() });
    }
    if let Some(index) = weights.iter().position(|w| w.is_negative()) {
        return Err(Error::NegativePayoff { index });
    }
    Ok(())
}

fn weight_of(s: Coalition, weights: &[Rational]) -> Rational {
    s.members().map(|v| &weights[v - 1]).sum()
}

struct FlowEdge {
    to: usize,
    cap: Rational,
}

/// Residual network with paired forward/backward arcs (`e ^ 1` is the reverse of `e`).
struct Network {
    adj: Vec<Vec<usize>>,
    edges: Vec<FlowEdge>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { adj: vec![Vec::new(); nodes], edges: Vec::new() }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: Rational) {
        self.adj[from].push(self.edges.len());
        self.edges.push(FlowEdge { to, cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(FlowEdge { to: from, cap: Rational::zero() });
    }

    /// Edmonds–Karp: shortest augmenting paths, exact capacities.
    fn max_flow(&mut self, s: usize, t: usize) {
        loop {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.edges[e].to;
                    if !seen[v] && self.edges[e].cap.is_positive() {
                        seen[v] = true;
                        via[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let e = via[v];
                let c = &self.edges[e].cap;
                if bottleneck.as_ref().is_none_or(|b| c < b) {
                    bottleneck = Some(c.clone());
                }
                v = self.edges[e ^ 1].to;
            }
            let b = bottleneck.expect("path has an arc");
            let mut v = t;
            while v != s {
                let e = via[v];
                self.edges[e].cap -= &b;
                self.edges[e ^ 1].cap += &b;
                v = self.edges[e ^ 1].to;
            }
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if !seen[v] && self.edges[e].cap.is_positive() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Maximum-weight independent set of a bipartite graph, as the complement of a
/// minimum-weight vertex cover read off a minimum `s`–`t` cut.
pub fn mwis_bipartite(g: &Graph, weights: &[Rational]) -> Result<WeightedVertexSet> {
    check_weights(g, weights)?;
    let (left, _) = g.bipartition().ok_or(Error::NotBipartite)?;
    let n = g.n();
    let (s, t) = (0, n + 1);
    // any finite cut weighs at most the total, so this never saturates
    let infinite: Rational = weights.iter().sum::<Rational>() + rational::one();
    let mut net = Network::new(n + 2);
    for v in 1..=n {
        if left.contains(v) {
            net.add_arc(s, v, weights[v - 1].clone());
        } else {
            net.add_arc(v, t, weights[v - 1].clone());
        }
    }
    for &(i, j) in g.edges() {
        let (u, w) = if left.contains(i) { (i, j) } else { (j, i) };
        net.add_arc(u, w, infinite.clone());
    }
    net.max_flow(s, t);
    let reach = net.reachable(s);
    // cover = (left \ R) ∪ (right ∩ R); independent set is the rest
    let mut set = Coalition::EMPTY;
    for v in 1..=n {
        let in_is = if left.contains(v) { reach[v] } else { !reach[v] };
        if in_is {
            set = set.with(v);
        }
    }
    debug_assert!(g.is_independent(set));
    Ok(WeightedVertexSet { weight: weight_of(set, weights), vertices: set })
}

pub fn mwis_exact(g: &Graph, weights: &[Rational]) -> Result<WeightedVertexSet> {
    mwis_exact_with(g, weights, &Limits::default())
}

/// Exact MWIS by branch and bound with a greedy clique-cover bound.
///
/// Branches on the lowest-index candidate, including it first, and only
/// accepts strict improvements. Among optimal sets this returns the one whose
/// indicator string (vertex 1 most significant) is largest, which is the
/// lexicographically smallest member list when all weights are positive.
pub fn mwis_exact_with(g: &Graph, weights: &[Rational], limits: &Limits) -> Result<WeightedVertexSet> {
    check_weights(g, weights)?;
    if g.n() > limits.mwis_vertices {
        return Err(Error::budget("exact MWIS", limits.mwis_vertices, g.n()));
    }
    let mut search = Search {
        g,
        weights,
        best: None,
    };
    search.branch(g.vertices(), Coalition::EMPTY, Rational::zero());
    let (vertices, weight) = search.best.expect("the empty set is always found");
    Ok(WeightedVertexSet { vertices, weight })
}

struct Search<'a> {
    g: &'a Graph,
    weights: &'a [Rational],
    best: Option<(Coalition, Rational)>,
}

impl Search<'_> {
    fn branch(&mut self, candidates: Coalition, current: Coalition, value: Rational) {
        let Some(v) = candidates.members().next() else {
            if self.best.as_ref().is_none_or(|(_, b)| &value > b) {
                self.best = Some((current, value));
            }
            return;
        };
        if let Some((_, best)) = &self.best {
            if &value + self.clique_cover_bound(candidates) <= *best {
                return;
            }
        }
        let rest = candidates.without(v);
        let value_with = &value + &self.weights[v - 1];
        self.branch(rest.difference(self.g.neighbors(v)), current.with(v), value_with);
        self.branch(rest, current, value);
    }

    /// Partition `candidates` greedily into cliques; an independent set takes at
    /// most one vertex, hence at most the heaviest weight, from each.
    fn clique_cover_bound(&self, candidates: Coalition) -> Rational {
        let mut cliques: Vec<(Coalition, &Rational)> = Vec::new();
        for v in candidates.members() {
            let w = &self.weights[v - 1];
            let nb = self.g.neighbors(v);
            match cliques.iter_mut().find(|(c, _)| c.is_subset_of(nb)) {
                Some((c, m)) => {
                    *c = c.with(v);
                    if w > *m {
                        *m = w;
                    }
                }
                None => cliques.push((Coalition::singleton(v), w)),
            }
        }
        cliques.into_iter().map(|(_, m)| m).sum()
    }
}
