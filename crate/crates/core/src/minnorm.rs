//! Minimum-norm point of `Q(W)` and the bounds it certifies.
//!
//! The solver runs a fully corrective Frank–Wolfe iteration (Wolfe's
//! major/minor cycle) over `Q(W) ∩ [0,1]^n`. The linear minimization step is
//! an exact LP, and its value at the current point is also the optimality
//! certificate: for `p̃ ∈ Q(W)`, `gap = ⟨p̃,p̃⟩ − min_{q∈Q(W)} ⟨p̃,q⟩` bounds
//! `‖p̃ − p*‖²`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::limits::Limits;
use crate::lp::{in_convex_hull, LinearProgram, Relation, Sense};
use crate::payoff::{require_feasible, Payoff};
use crate::rational::{self, Rational};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct MinNormCertificate {
    pub point: Vec<f64>,
    pub squared_norm: f64,
    /// `min_{q ∈ Q(W)} ⟨p̃, q⟩`.
    pub lp_value: f64,
    pub gap: f64,
    pub certified: bool,
    #[serde(skip)]
    pub exact_gap: Rational,
    #[serde(skip)]
    pub iterations: usize,
    /// Squared norm after each major iteration (non-increasing).
    #[serde(skip)]
    pub norm_history: Vec<f64>,
    /// Best certified gap after each major iteration (non-increasing).
    #[serde(skip)]
    pub gap_history: Vec<f64>,
}

/// LP over `Q(W)` (optionally intersected with the unit box) minimizing `⟨c, q⟩`.
pub(crate) fn q_model(game: &SimpleGame, costs: Vec<Rational>, capped: bool) -> LinearProgram {
    let n = game.n();
    let mut lp = LinearProgram::new(n, Sense::Minimize);
    lp.set_objective(costs);
    for &w in game.minimal_winning() {
        lp.add_constraint(indicator(w, n), Relation::Ge, Rational::one());
    }
    if capped {
        for j in 0..n {
            lp.set_bounds(j, Rational::zero(), Some(Rational::one()));
        }
    }
    lp
}

pub(crate) fn indicator(c: Coalition, n: usize) -> Vec<Rational> {
    (1..=n)
        .map(|p| if c.contains(p) { Rational::one() } else { Rational::zero() })
        .collect()
}

/// `min_{q ∈ Q(W)} ⟨p, q⟩` and a minimizing vertex.
fn linear_oracle(game: &SimpleGame, p: &[Rational], capped: bool) -> Result<(Rational, Vec<Rational>)> {
    let sol = q_model(game, p.to_vec(), capped).solve()?;
    debug_assert!(sol.is_optimal(), "Q(W) is nonempty and the objective is nonnegative");
    Ok((sol.objective, sol.primal))
}

pub fn min_norm_point(game: &SimpleGame, tolerance: f64) -> Result<(Payoff, MinNormCertificate)> {
    min_norm_point_with(game, tolerance, &Limits::default())
}

pub fn min_norm_point_with(game: &SimpleGame, tolerance: f64, limits: &Limits) -> Result<(Payoff, MinNormCertificate)> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tolerance}")));
    }
    game.check_enumerable(limits.enumeration_players, "min-norm point")?;
    let n = game.n();
    let tol = rational::from_f64(tolerance);

    // start from the vertex minimizing the coordinate sum
    let (_, v0) = linear_oracle(game, &vec![Rational::one(); n], true)?;
    let mut active = vec![Vertex::new(v0)];
    let mut weights = vec![1.0f64];
    let mut norm_history = Vec::new();
    let mut gap_history: Vec<f64> = Vec::new();

    for iteration in 1..=limits.min_norm_iterations {
        let exact = combine(&active, &weights);
        let sq: Rational = exact.iter().map(|x| x * x).sum();
        let (value, vertex) = linear_oracle(game, &exact, true)?;
        let gap = &sq - &value;
        let gap_f = rational::to_f64(&gap);
        norm_history.push(rational::to_f64(&sq));
        let best = gap_history.last().map_or(gap_f, |b: &f64| b.min(gap_f));
        gap_history.push(best);

        if gap <= tol {
            // certificate over the uncapped Q(W); same value since p̃ ≥ 0
            let (lp_value, _) = linear_oracle(game, &exact, false)?;
            let exact_gap = &sq - &lp_value;
            let payoff = Payoff::new(exact)?;
            let cert = MinNormCertificate {
                point: payoff.to_f64(),
                squared_norm: rational::to_f64(&sq),
                lp_value: rational::to_f64(&lp_value),
                gap: rational::to_f64(&exact_gap),
                certified: exact_gap <= tol,
                exact_gap,
                iterations: iteration,
                norm_history,
                gap_history,
            };
            return Ok((payoff, cert));
        }

        let v = Vertex::new(vertex);
        if active.iter().any(|a| a.exact == v.exact) {
            // the oracle returned an active vertex: the float corrector has stalled
            return Err(Error::budget("min-norm precision", 0, iteration));
        }
        active.push(v);
        weights.push(0.0);
        minor_cycle(&mut active, &mut weights);
    }
    Err(Error::budget("min-norm iterations", limits.min_norm_iterations, limits.min_norm_iterations + 1))
}

struct Vertex {
    exact: Vec<Rational>,
    approx: Vec<f64>,
}

impl Vertex {
    fn new(exact: Vec<Rational>) -> Self {
        let approx = exact.iter().map(rational::to_f64).collect();
        Vertex { exact, approx }
    }
}

/// Exact convex combination with the float weights renormalized to sum to 1.
fn combine(active: &[Vertex], weights: &[f64]) -> Vec<Rational> {
    let n = active[0].exact.len();
    let lambdas: Vec<Rational> = weights.iter().map(|&w| rational::from_f64(w.max(0.0))).collect();
    let total: Rational = lambdas.iter().sum();
    let mut out = vec![Rational::zero(); n];
    for (v, l) in active.iter().zip(&lambdas) {
        if l.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(&v.exact) {
            if !x.is_zero() {
                *o += l * x;
            }
        }
    }
    for o in &mut out {
        *o /= &total;
    }
    out
}

const WEIGHT_EPS: f64 = 1e-12;

/// Wolfe's minor cycle: move to the affine minimizer of the active set,
/// dropping vertices whenever that minimizer leaves the simplex.
fn minor_cycle(active: &mut Vec<Vertex>, weights: &mut Vec<f64>) {
    loop {
        let Some(mu) = affine_minimizer(active) else {
            // affinely dependent set: drop the oldest zero-weight vertex, else stop
            match weights.iter().position(|&w| w <= WEIGHT_EPS) {
                Some(k) if active.len() > 1 => {
                    active.remove(k);
                    weights.remove(k);
                    continue;
                }
                _ => return,
            }
        };
        if mu.iter().all(|&m| m > WEIGHT_EPS) {
            *weights = mu;
            return;
        }
        let mut theta = 1.0f64;
        for (l, m) in weights.iter().zip(&mu) {
            if *m <= WEIGHT_EPS && l - m > 0.0 {
                theta = theta.min(l / (l - m));
            }
        }
        for (l, m) in weights.iter_mut().zip(&mu) {
            *l = (1.0 - theta) * *l + theta * m;
        }
        // drop vertices whose weight hit zero (at least the blocking one)
        let blocking = weights
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        let keep: Vec<bool> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| i != blocking && w > WEIGHT_EPS)
            .collect();
        let mut it = keep.iter();
        active.retain(|_| *it.next().unwrap());
        let mut it = keep.iter();
        weights.retain(|_| *it.next().unwrap());
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
    }
}

/// Weights `μ` with `Σμ = 1` minimizing `‖Σ μ_i s_i‖`, or `None` when the
/// active vertices are affinely dependent.
fn affine_minimizer(active: &[Vertex]) -> Option<Vec<f64>> {
    let k = active.len();
    if k == 1 {
        return Some(vec![1.0]);
    }
    let base = &active[0].approx;
    let diffs: Vec<Vec<f64>> = active[1..]
        .iter()
        .map(|v| v.approx.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // (DᵀD) t = −Dᵀ s₀
    let m = k - 1;
    let mut a = vec![vec![0.0; m + 1]; m];
    for i in 0..m {
        for j in 0..m {
            a[i][j] = dot(&diffs[i], &diffs[j]);
        }
        a[i][m] = -dot(&diffs[i], base);
    }
    let t = solve_dense(a)?;
    let mut mu = Vec::with_capacity(k);
    mu.push(1.0 - t.iter().sum::<f64>());
    mu.extend(t);
    Some(mu)
}

/// Gaussian elimination with partial pivoting on an augmented `m × (m+1)` matrix.
fn solve_dense(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = a.len();
    let scale = (0..m).map(|i| a[i][i].abs()).fold(0.0, f64::max).max(1.0);
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..=m {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let s: f64 = (r + 1..m).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][m] - s) / a[r][r];
    }
    Some(x)
}

/// `p(N) − min_{q∈Q(W)} ⟨p, q⟩ = max_{q∈Q(W)} ⟨p, 1 − q⟩`, by one exact LP.
pub fn strengthened_bound(game: &SimpleGame, p: &Payoff) -> Result<Rational> {
    require_feasible(game, p)?;
    let (value, _) = linear_oracle(game, p.values(), false)?;
    Ok(p.total() - value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullWeights {
    pub coalitions: Vec<Coalition>,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessReport {
    pub tight: bool,
    /// `(2/n)·1` as a convex combination of winning characteristic vectors.
    pub winning: Option<HullWeights>,
    /// `(1/2)·1` as a convex combination of losing characteristic vectors.
    pub losing: Option<HullWeights>,
}

pub fn tightness_check(game: &SimpleGame) -> Result<TightnessReport> {
    tightness_check_with(game, &Limits::default())
}

/// Decides `α = n/4` through the two convex-hull memberships.
pub fn tightness_check_with(game: &SimpleGame, limits: &Limits) -> Result<TightnessReport> {
    game.check_enumerable(limits.hull_players, "tightness enumeration")?;
    let n = game.n();
    let table = game.win_table_with(limits)?;
    let winning: Vec<Coalition> = table.winning().collect();
    let losing: Vec<Coalition> = table.losing().collect();
    let w_point = vec![rational::ratio(2, n as i64); n];
    let l_point = vec![rational::ratio(1, 2); n];
    let hull = |point: &[Rational], family: &[Coalition]| -> Result<Option<HullWeights>> {
        let gens: Vec<Vec<u8>> = family.iter().map(|c| c.indicator(n)).collect();
        Ok(in_convex_hull(point, &gens)?.map(|lambda| {
            let (coalitions, weights) = family
                .iter()
                .zip(lambda)
                .filter(|(_, l)| !l.is_zero())
                .map(|(c, l)| (*c, l))
                .unzip();
            HullWeights { coalitions, weights }
        }))
    };
    let w = hull(&w_point, &winning)?;
    let l = if w.is_some() { hull(&l_point, &losing)? } else { None };
    let tight = w.is_some() && l.is_some();
    Ok(TightnessReport {
        tight,
        winning: if tight { w } else { None },
        losing: if tight { l } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{cycle_game, random_game};
    use crate::rational::{int, ratio};

    fn dictator() -> SimpleGame {
        SimpleGame::from_lists(3, &[&[1]]).unwrap()
    }

    fn majority() -> SimpleGame {
        SimpleGame::from_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn cycle_min_norm_is_half() {
        let (p, cert) = min_norm_point(&cycle_game(4).unwrap(), 1e-6).unwrap();
        assert!(cert.certified);
        assert!(close(&p.to_f64(), &[0.5; 4], 1e-4));
    }

    #[test]
    fn dictator_min_norm() {
        let (p, cert) = min_norm_point(&dictator(), 1e-6).unwrap();
        assert!(cert.certified);
        assert!(close(&p.to_f64(), &[1.0, 0.0, 0.0], 1e-6));
    }

    #[test]
    fn majority_min_norm() {
        // KKT: all three pair constraints active, p = (1/2,1/2,1/2)
        let (p, cert) = min_norm_point(&majority(), 1e-6).unwrap();
        assert!(cert.certified);
        assert!(close(&p.to_f64(), &[0.5; 3], 1e-3));
    }

    #[test]
    fn histories_monotone() {
        for seed in 0..10 {
            let g = random_game(9, seed, 7).unwrap();
            let (_, cert) = min_norm_point(&g, 1e-6).unwrap();
            assert!(cert.gap_history.windows(2).all(|w| w[1] <= w[0]));
            assert!(cert.norm_history.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{:?}", cert.norm_history);
        }
    }

    #[test]
    fn bad_tolerance() {
        assert!(matches!(min_norm_point(&dictator(), 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn strengthened_bound_examples() {
        let half4 = Payoff::uniform(4, ratio(1, 2)).unwrap();
        assert_eq!(strengthened_bound(&cycle_game(4).unwrap(), &half4).unwrap(), int(1));
        let d = Payoff::new(vec![int(1), int(0), int(0)]).unwrap();
        assert_eq!(strengthened_bound(&dictator(), &d).unwrap(), int(0));
        let half3 = Payoff::uniform(3, ratio(1, 2)).unwrap();
        assert_eq!(strengthened_bound(&majority(), &half3).unwrap(), ratio(3, 4));
        let low = Payoff::uniform(3, ratio(1, 4)).unwrap();
        assert!(matches!(strengthened_bound(&majority(), &low), Err(Error::InfeasiblePayoff { .. })));
    }

    #[test]
    fn tightness_examples() {
        let t = tightness_check(&cycle_game(4).unwrap()).unwrap();
        assert!(t.tight);
        for (hull, target) in [(t.winning.unwrap(), ratio(1, 2)), (t.losing.unwrap(), ratio(1, 2))] {
            assert_eq!(hull.weights.iter().sum::<Rational>(), int(1));
            for p in 1..=4 {
                let s: Rational = hull
                    .coalitions
                    .iter()
                    .zip(&hull.weights)
                    .filter(|(c, _)| c.contains(p))
                    .map(|(_, w)| w.clone())
                    .sum();
                assert_eq!(s, target);
            }
        }
        assert!(!tightness_check(&dictator()).unwrap().tight);
        assert!(tightness_check(&cycle_game(6).unwrap()).unwrap().tight);
        let big = SimpleGame::from_lists(21, &[&[1, 21]]).unwrap();
        assert!(tightness_check(&big).unwrap_err().is_budget());
    }

    #[test]
    fn winning_hull_from_duals() {
        // (4/n)·y* for min ⟨½·1, q⟩ over Q(W) is a convex combination giving (2/n)·1
        for n in [4usize, 6, 8] {
            let g = cycle_game(n).unwrap();
            let lp = q_model(&g, vec![ratio(1, 2); n], false);
            let sol = lp.solve().unwrap();
            assert_eq!(sol.objective, ratio(n as i64, 4));
            let scale = ratio(4, n as i64);
            let lambda: Vec<Rational> = sol.dual.iter().map(|y| y * &scale).collect();
            assert_eq!(lambda.iter().sum::<Rational>(), int(1));
            for p in 1..=n {
                let s: Rational = g
                    .minimal_winning()
                    .iter()
                    .zip(&lambda)
                    .filter(|(w, _)| w.contains(p))
                    .map(|(_, l)| l.clone())
                    .sum();
                assert_eq!(s, ratio(2, n as i64));
            }
        }
    }
}
