//! Cross-checks the exact simplex against an independent floating-point solver.

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threshold_core::rational::{int, to_f64};
use threshold_core::{LinearProgram, LpStatus, Relation, Sense};

struct Instance {
    exact: LinearProgram,
    float: Problem,
}

/// Box-bounded variables and constraints that the point `x0` satisfies,
/// so the instance is feasible and bounded.
fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = rng.gen_range(1..=6);
    let rows = rng.gen_range(1..=8);
    let maximize = rng.gen_bool(0.5);
    let (sense, dir) = if maximize {
        (Sense::Maximize, OptimizationDirection::Maximize)
    } else {
        (Sense::Minimize, OptimizationDirection::Minimize)
    };
    let mut exact = LinearProgram::new(vars, sense);
    let mut float = Problem::new(dir);
    let costs: Vec<i64> = (0..vars).map(|_| rng.gen_range(-5..=5)).collect();
    let uppers: Vec<i64> = (0..vars).map(|_| rng.gen_range(1..=10)).collect();
    exact.set_objective(costs.iter().map(|&c| int(c)).collect());
    let handles: Vec<_> = (0..vars)
        .map(|j| {
            exact.set_bounds(j, int(0), Some(int(uppers[j])));
            float.add_var(costs[j] as f64, (0.0, uppers[j] as f64))
        })
        .collect();
    let x0: Vec<i64> = uppers.iter().map(|&u| rng.gen_range(0..=u)).collect();
    for _ in 0..rows {
        let a: Vec<i64> = (0..vars).map(|_| rng.gen_range(-4..=4)).collect();
        let lhs: i64 = a.iter().zip(&x0).map(|(a, x)| a * x).sum();
        let (rel, op, rhs) = match rng.gen_range(0..3) {
            0 => (Relation::Le, ComparisonOp::Le, lhs + rng.gen_range(0..=3)),
            1 => (Relation::Ge, ComparisonOp::Ge, lhs - rng.gen_range(0..=3)),
            _ => (Relation::Eq, ComparisonOp::Eq, lhs),
        };
        exact.add_constraint(a.iter().map(|&c| int(c)).collect(), rel, int(rhs));
        let terms: Vec<_> = handles.iter().zip(&a).map(|(&v, &c)| (v, c as f64)).collect();
        float.add_constraint(&terms[..], op, rhs as f64);
    }
    Instance { exact, float }
}

#[test]
fn exact_simplex_agrees_with_float_solver() {
    for seed in 0..100 {
        let Instance { exact, float } = instance(seed);
        let sol = exact.solve().unwrap();
        assert_eq!(sol.status, LpStatus::Optimal, "seed {seed}");
        assert_eq!(sol.dual_objective(&exact), sol.objective, "seed {seed}: duality");
        let reference = float.solve().expect("feasible bounded instance").objective();
        let ours = to_f64(&sol.objective);
        assert!((ours - reference).abs() <= 1e-6 * (1.0 + reference.abs()), "seed {seed}: {ours} vs {reference}");
    }
}
