use super::Graph;
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::payoff::Payoff;
use crate::rational;

/// Streams every maximal independent set exactly once.
///
/// Vertices are added in index order. A node `(i, I)` holds a maximal
/// independent set `I` of `G[1..=i]`; the next vertex either joins `I`
/// outright, or spawns the two children `I` and `(I \ N(v)) ∪ {v}`. The
/// second child is kept only if it is maximal in `G[1..=i+1]` and `I` is the
/// greedy completion of `I \ N(v)`, so each set has exactly one parent. Every
/// node has a descendant leaf, which bounds the delay between outputs by a
/// polynomial.
pub struct MisIter<'a> {
    g: &'a Graph,
    stack: Vec<(usize, Coalition)>,
}

pub fn enumerate_mis(g: &Graph) -> MisIter<'_> {
    MisIter { g, stack: vec![(0, Coalition::EMPTY)] }
}

impl MisIter<'_> {
    fn prefix(i: usize) -> Coalition {
        Coalition::full(i)
    }

    /// Whether `s ⊆ {1..=i}` dominates every vertex of `{1..=i}`.
    fn maximal_in_prefix(&self, s: Coalition, i: usize) -> bool {
        (1..=i).all(|u| s.contains(u) || self.g.neighbors(u).intersects(s))
    }

    fn greedy_completion(&self, mut s: Coalition, i: usize) -> Coalition {
        for u in 1..=i {
            if !s.contains(u) && !self.g.neighbors(u).intersects(s) {
                s = s.with(u);
            }
        }
        s
    }
}

impl Iterator for MisIter<'_> {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let n = self.g.n();
        while let Some((i, set)) = self.stack.pop() {
            if i == n {
                return Some(set);
            }
            let v = i + 1;
            let nb = self.g.neighbors(v).intersection(Self::prefix(i));
            if !nb.intersects(set) {
                self.stack.push((v, set.with(v)));
                continue;
            }
            let core = set.difference(nb);
            let swapped = core.with(v);
            if self.maximal_in_prefix(swapped, v) && self.greedy_completion(core, i) == set {
                self.stack.push((v, swapped));
            }
            self.stack.push((v, set));
        }
        None
    }
}

/// Collects all maximal independent sets, failing once more than `limits.mis_cap` appear.
pub fn maximal_independent_sets(g: &Graph, limits: &Limits) -> Result<Vec<Coalition>> {
    if g.n() > limits.mwis_vertices {
        return Err(Error::budget("MIS enumeration", limits.mwis_vertices, g.n()));
    }
    let mut out = Vec::new();
    for s in enumerate_mis(g) {
        if out.len() == limits.mis_cap {
            return Err(Error::budget("maximal independent sets", limits.mis_cap, limits.mis_cap + 1));
        }
        out.push(s);
    }
    Ok(out)
}

pub fn find_induced_kp2(g: &Graph, k: usize) -> Result<Option<Vec<(usize, usize)>>> {
    find_induced_kp2_with(g, k, &Limits::default())
}

/// `k` vertex-disjoint edges whose endpoints induce exactly those edges.
///
/// Searches edge subsets in lexicographic order; an edge can be added when
/// neither endpoint lies in the closed neighborhood of the endpoints chosen
/// so far. When `2k > n` no such subset can exist and the answer is immediate.
pub fn find_induced_kp2_with(g: &Graph, k: usize, limits: &Limits) -> Result<Option<Vec<(usize, usize)>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if 2 * k > g.n() {
        return Ok(None);
    }
    if k > limits.kp2_max_k {
        return Err(Error::budget("induced kP2 search (k)", limits.kp2_max_k, k));
    }
    if g.n() > limits.mwis_vertices {
        return Err(Error::budget("induced kP2 search (vertices)", limits.mwis_vertices, g.n()));
    }
    let mut chosen = Vec::with_capacity(k);
    Ok(kp2_search(g, k, 0, Coalition::EMPTY, &mut chosen).then_some(chosen))
}

fn kp2_search(g: &Graph, k: usize, from: usize, blocked: Coalition, chosen: &mut Vec<(usize, usize)>) -> bool {
    if chosen.len() == k {
        return true;
    }
    let edges = g.edges();
    for idx in from..edges.len() {
        if edges.len() - idx < k - chosen.len() {
            break;
        }
        let (u, v) = edges[idx];
        if blocked.contains(u) || blocked.contains(v) {
            continue;
        }
        let closed = g.neighbors(u).union(g.neighbors(v)).with(u).with(v);
        chosen.push((u, v));
        if kp2_search(g, k, idx + 1, blocked.union(closed), chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// One endpoint per induced edge, taking the endpoint with payoff at least 1/2
/// (the first endpoint on ties). For feasible `p` the result is independent and
/// has `p(U) ≥ k/2`.
pub fn forcing_set(witness: &[(usize, usize)], p: &Payoff) -> Coalition {
    let half = rational::ratio(1, 2);
    witness.iter().fold(Coalition::EMPTY, |acc, &(u, v)| {
        if p.get(u) >= &half {
            acc.with(u)
        } else {
            acc.with(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_mis(g: &Graph) -> Vec<Coalition> {
        let mut out: Vec<Coalition> = (0u64..1 << g.n())
            .map(Coalition::from_bits)
            .filter(|&s| g.is_independent(s) && g.extend_to_maximal(s) == s)
            .collect();
        out.sort();
        out
    }

    fn sorted(mut v: Vec<Coalition>) -> Vec<Coalition> {
        v.sort();
        v
    }

    #[test]
    fn mis_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let got = sorted(enumerate_mis(&c4).collect());
        assert_eq!(got.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), vec![vec![1, 3], vec![2, 4]]);
        let e = Graph::new(2, vec![(1, 2)]).unwrap();
        assert_eq!(sorted(enumerate_mis(&e).collect()), vec![Coalition::singleton(1), Coalition::singleton(2)]);
        assert_eq!(enumerate_mis(&Graph::cycle(5).unwrap()).count(), 5);
    }

    #[test]
    fn mis_matches_brute_force() {
        for seed in 0..40 {
            let n = 3 + (seed as usize % 8);
            let m = (seed as usize * 7) % (n * (n - 1) / 2 + 1);
            let g = super::super::random_graph(n, m, seed).unwrap();
            let got: Vec<Coalition> = enumerate_mis(&g).collect();
            assert_eq!(sorted(got.clone()).len(), got.len(), "duplicate output");
            assert_eq!(sorted(got), brute_mis(&g));
        }
    }

    #[test]
    fn mis_cap() {
        let limits = Limits { mis_cap: 3, ..Limits::default() };
        assert!(maximal_independent_sets(&Graph::cycle(5).unwrap(), &limits).unwrap_err().is_budget());
        assert_eq!(maximal_independent_sets(&Graph::cycle(4).unwrap(), &limits).unwrap().len(), 2);
    }

    #[test]
    fn kp2_examples() {
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(find_induced_kp2(&c8, 2).unwrap(), Some(vec![(1, 2), (4, 5)]));
        assert_eq!(find_induced_kp2(&c8, 4).unwrap(), None);
        assert_eq!(find_induced_kp2(&Graph::complete(4).unwrap(), 2).unwrap(), None);
        assert_eq!(find_induced_kp2(&c8, 6).unwrap(), None);
        assert!(find_induced_kp2(&Graph::cycle(14).unwrap(), 6).unwrap_err().is_budget());
        assert!(find_induced_kp2(&c8, 0).is_err());
    }

    #[test]
    fn kp2_witness_is_induced() {
        for seed in 0..30 {
            let g = super::super::random_graph(10, 12, seed).unwrap();
            for k in 1..=3 {
                if let Some(w) = find_induced_kp2(&g, k).unwrap() {
                    let ends = w.iter().fold(Coalition::EMPTY, |a, &(u, v)| a.with(u).with(v));
                    assert_eq!(ends.len(), 2 * k);
                    let induced = g.edges().iter().filter(|&&(u, v)| ends.contains(u) && ends.contains(v)).count();
                    assert_eq!(induced, k);
                }
            }
        }
    }
}
