use serde::Serialize;

use super::mis::{find_induced_kp2_with, maximal_independent_sets};
use super::mwis::{mwis_bipartite, mwis_exact_with};
use super::{graphic_game, Graph};
use crate::alpha::{threshold_lp, AlphaCertificate};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{self, Rational};

pub fn alpha_graph(g: &Graph) -> Result<AlphaCertificate> {
    alpha_graph_with(g, &Limits::default())
}

/// `α_G` by cutting planes: edge rows `p_i + p_j ≥ 1` are fixed, and each round
/// adds `p(L) ≤ a` for a maximum-weight independent set `L` at the current
/// payoff until no independent set outweighs `a`.
pub fn alpha_graph_with(g: &Graph, limits: &Limits) -> Result<AlphaCertificate> {
    graphic_game(g)?;
    let bipartite = g.is_bipartite();
    if !bipartite && g.n() > limits.mwis_vertices {
        return Err(Error::budget("non-bipartite separation", limits.mwis_vertices, g.n()));
    }
    let edges: Vec<Coalition> = g
        .edges()
        .iter()
        .map(|&(i, j)| Coalition::singleton(i).with(j))
        .collect();
    let mut cuts: Vec<Coalition> = Vec::new();
    for _ in 0..limits.cut_rounds {
        let cert = threshold_lp(g.n(), &edges, &cuts)?;
        let heaviest = if bipartite {
            mwis_bipartite(g, cert.payoff.values())?
        } else {
            mwis_exact_with(g, cert.payoff.values(), limits)?
        };
        if heaviest.weight <= cert.alpha {
            return Ok(cert);
        }
        let cut = g.extend_to_maximal(heaviest.vertices);
        debug_assert!(!cuts.contains(&cut), "a violated cut cannot already be present");
        cuts.push(cut);
    }
    Err(Error::budget("cutting-plane rounds", limits.cut_rounds, limits.cut_rounds + 1))
}

/// Two copies `G′` (vertices `1..=n`) and `G″` (`n+1..=2n`) of `g`, plus the
/// cross edges `{i, n+j}` whenever `i = j` or `ij ∈ E`.
pub fn build_gadget(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if 2 * n > crate::coalition::MAX_PLAYERS {
        return Err(Error::budget("gadget vertices", crate::coalition::MAX_PLAYERS, 2 * n));
    }
    let mut edges = Vec::with_capacity(4 * g.num_edges() + n);
    for &(i, j) in g.edges() {
        edges.push((i, j));
        edges.push((n + i, n + j));
        edges.push((i, n + j));
        edges.push((j, n + i));
    }
    edges.extend((1..=n).map(|i| (i, n + i)));
    Graph::new(2 * n, edges)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum DecisionBranch {
    /// `k` induced disjoint edges: any feasible payoff gives one endpoint per
    /// edge at least 1/2, so `α ≥ k/2 > a`.
    InducedMatching { k: usize, edges: Vec<(usize, usize)> },
    /// The graph is `kP2`-free; `α` came from the LP over all maximal independent sets.
    Enumeration {
        k: usize,
        maximal_independent_sets: usize,
        certificate: AlphaCertificate,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    pub answer: bool,
    #[serde(with = "rational::serde_str")]
    pub a: Rational,
    #[serde(flatten)]
    pub branch: DecisionBranch,
}

impl Decision {
    pub fn alpha(&self) -> Option<&Rational> {
        match &self.branch {
            DecisionBranch::Enumeration { certificate, .. } => Some(&certificate.alpha),
            DecisionBranch::InducedMatching { .. } => None,
        }
    }
}

pub fn decide_alpha_at_most(g: &Graph, a: &Rational) -> Result<Decision> {
    decide_alpha_at_most_with(g, a, &Limits::default())
}

/// Decides `α_G ≤ a` with `k = 2(⌊a⌋ + 1)`: an induced `kP2` refutes it;
/// otherwise the maximal independent sets give the exact LP.
pub fn decide_alpha_at_most_with(g: &Graph, a: &Rational, limits: &Limits) -> Result<Decision> {
    if a <= &rational::zero() {
        return Err(Error::InvalidArgument(format!("a must be positive, got {}", rational::format(a))));
    }
    graphic_game(g)?;
    let floor = a.floor().to_integer();
    let k: usize = (floor + 1u32)
        .try_into()
        .map_err(|_| Error::InvalidArgument("a is too large".into()))?;
    let k = 2 * k;
    if let Some(edges) = find_induced_kp2_with(g, k, limits)? {
        return Ok(Decision {
            answer: false,
            a: a.clone(),
            branch: DecisionBranch::InducedMatching { k, edges },
        });
    }
    let mis = maximal_independent_sets(g, limits)?;
    let edges: Vec<Coalition> = g
        .edges()
        .iter()
        .map(|&(i, j)| Coalition::singleton(i).with(j))
        .collect();
    let certificate = threshold_lp(g.n(), &edges, &mis)?;
    Ok(Decision {
        answer: &certificate.alpha <= a,
        a: a.clone(),
        branch: DecisionBranch::Enumeration {
            k,
            maximal_independent_sets: mis.len(),
            certificate,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn alpha_graph_examples() {
        assert_eq!(alpha_graph(&Graph::cycle(4).unwrap()).unwrap().alpha, int(1));
        let p4 = Graph::path(4).unwrap();
        let c = alpha_graph(&p4).unwrap();
        assert_eq!(c.alpha, int(1));
        assert_eq!(alpha_graph(&Graph::cycle(8).unwrap()).unwrap().alpha, int(2));
        assert_eq!(alpha_graph(&Graph::new(3, vec![]).unwrap()), Err(Error::Edgeless));
    }

    #[test]
    fn gadget_counts() {
        let c5 = Graph::cycle(5).unwrap();
        let gs = build_gadget(&c5).unwrap();
        assert_eq!((gs.n(), gs.num_edges()), (10, 25));
        let dot = build_gadget(&Graph::new(1, vec![]).unwrap()).unwrap();
        assert_eq!(dot.edges(), &[(1, 2)]);
        assert_eq!(alpha_graph(&gs).unwrap().alpha, int(1));
    }

    #[test]
    fn decisions_on_c8() {
        let c8 = Graph::cycle(8).unwrap();
        let d = decide_alpha_at_most(&c8, &int(1)).unwrap();
        assert!(!d.answer);
        assert!(matches!(d.branch, DecisionBranch::Enumeration { k: 4, .. }));
        assert_eq!(d.alpha(), Some(&int(2)));
        let d = decide_alpha_at_most(&c8, &int(2)).unwrap();
        assert!(d.answer);
        let d = decide_alpha_at_most(&c8, &ratio(1, 2)).unwrap();
        assert!(!d.answer);
        assert!(matches!(d.branch, DecisionBranch::InducedMatching { k: 2, .. }));
        assert!(decide_alpha_at_most(&c8, &int(0)).is_err());
    }

    #[test]
    fn decision_json() {
        let d = decide_alpha_at_most(&Graph::cycle(8).unwrap(), &int(1)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&d).unwrap();
        assert_eq!(v["answer"], false);
        assert_eq!(v["branch"], "enumeration");
        assert_eq!(v["certificate"]["alpha"], "2/1");
    }
}
