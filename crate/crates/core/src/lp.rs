//! Exact rational linear programming: two-phase primal simplex with Bland's
//! anti-cycling rule.
//!
//! Rows are stored sparsely so that the many `p(L) ≤ a` rows produced by the
//! alpha models stay cheap. Duals are read off the final basis through the
//! columns of the initial identity basis, and strong duality is checked
//! exactly before a solution is returned.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// Per-variable lower bounds (default 0).
    pub lower: Vec<Rational>,
    /// Per-variable optional upper bounds.
    pub upper: Vec<Option<Rational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<Rational>,
    /// One multiplier per constraint row, in the row's own orientation.
    /// For minimization, `≥` rows have `y ≥ 0` and `≤` rows `y ≤ 0`;
    /// the signs flip for maximization.
    pub dual: Vec<Rational>,
    /// `c − Aᵀy`; nonzero entries are carried by active variable bounds.
    pub reduced_costs: Vec<Rational>,
    pub objective: Rational,
}

impl LpSolution {
    fn without_solution(status: LpStatus) -> Self {
        LpSolution {
            status,
            primal: Vec::new(),
            dual: Vec::new(),
            reduced_costs: Vec::new(),
            objective: Rational::zero(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Value of the bounded-variable dual at `self.dual`:
    /// `bᵀy` plus each reduced cost times the bound it rests on.
    pub fn dual_objective(&self, lp: &LinearProgram) -> Rational {
        let mut total = Rational::zero();
        for (row, y) in lp.constraints.iter().zip(&self.dual) {
            total += &row.rhs * y;
        }
        for (j, r) in self.reduced_costs.iter().enumerate() {
            let towards_upper = match lp.sense {
                Sense::Minimize => r.is_negative(),
                Sense::Maximize => r.is_positive(),
            };
            if r.is_zero() {
                continue;
            }
            if towards_upper {
                let u = lp.upper[j].as_ref().expect("dual feasible reduced cost needs an upper bound");
                total += r * u;
            } else {
                total += r * &lp.lower[j];
            }
        }
        total
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            lower: vec![Rational::zero(); num_vars],
            upper: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_objective(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        self.objective = coeffs;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: Rational, upper: Option<Rational>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::MalformedLp("bound vectors differ from variable count".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedLp(format!(
                    "row {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
        }
        for j in 0..n {
            if let Some(u) = &self.upper[j] {
                if u < &self.lower[j] {
                    // an empty box is infeasible, not malformed; handled in solve
                    continue;
                }
            }
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpSolution> {
        solve_lp(self)
    }
}

#[derive(Debug, Clone, Default)]
struct SparseRow {
    idx: Vec<usize>,
    val: Vec<Rational>,
}

impl SparseRow {
    fn get(&self, j: usize) -> Option<&Rational> {
        self.idx.binary_search(&j).ok().map(|k| &self.val[k])
    }

    fn push(&mut self, j: usize, v: Rational) {
        debug_assert!(self.idx.last().is_none_or(|&l| l < j));
        if !v.is_zero() {
            self.idx.push(j);
            self.val.push(v);
        }
    }

    fn scale(&mut self, f: &Rational) {
        for v in &mut self.val {
            *v *= f;
        }
    }

    /// `self − f · other`.
    fn sub_scaled(&self, f: &Rational, other: &SparseRow) -> SparseRow {
        let mut out = SparseRow {
            idx: Vec::with_capacity(self.idx.len() + other.idx.len()),
            val: Vec::with_capacity(self.idx.len() + other.idx.len()),
        };
        let (mut a, mut b) = (0, 0);
        while a < self.idx.len() || b < other.idx.len() {
            let ja = self.idx.get(a).copied().unwrap_or(usize::MAX);
            let jb = other.idx.get(b).copied().unwrap_or(usize::MAX);
            if ja < jb {
                out.idx.push(ja);
                out.val.push(self.val[a].clone());
                a += 1;
            } else if jb < ja {
                out.push(jb, -(f * &other.val[b]));
                b += 1;
            } else {
                out.push(ja, &self.val[a] - f * &other.val[b]);
                a += 1;
                b += 1;
            }
        }
        out
    }
}

struct Tableau {
    rows: Vec<SparseRow>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Dense reduced costs, one per column.
    cost_row: Vec<Rational>,
    /// Negated objective value of the current basis.
    cost_rhs: Rational,
    num_cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let piv = self.rows[r].get(e).cloned().expect("nonzero pivot");
        let inv = piv.recip();
        self.rows[r].scale(&inv);
        self.rhs[r] *= &inv;
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            if let Some(f) = self.rows[i].get(e).cloned() {
                self.rows[i] = self.rows[i].sub_scaled(&f, &prow);
                let delta = &f * &prhs;
                self.rhs[i] -= delta;
            }
        }
        let f = self.cost_row[e].clone();
        if !f.is_zero() {
            for (j, v) in prow.idx.iter().zip(&prow.val) {
                let delta = &f * v;
                self.cost_row[*j] -= delta;
            }
            self.cost_rhs -= &f * &prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = e;
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let mut row = costs.to_vec();
        let mut rhs = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].idx.iter().zip(&self.rows[i].val) {
                row[*j] -= cb * v;
            }
            rhs -= cb * &self.rhs[i];
        }
        self.cost_row = row;
        self.cost_rhs = rhs;
    }

    /// Runs Bland's rule to optimality over the columns `allowed` admits.
    /// Returns `false` if the objective is unbounded.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.num_cols).find(|&j| allowed(j) && self.cost_row[j].is_negative());
            let Some(e) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let Some(a) = self.rows[i].get(e) else { continue };
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }
}

/// Solves `lp` exactly. Deterministic for a fixed input.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let nv = lp.num_vars();
    if (0..nv).any(|j| lp.upper[j].as_ref().is_some_and(|u| u < &lp.lower[j])) {
        return Ok(LpSolution::without_solution(LpStatus::Infeasible));
    }

    // Shift x = l + x', append x'_j ≤ u_j − l_j, and flip rows to a nonnegative rhs.
    struct StdRow {
        coeffs: SparseRow,
        relation: Relation,
        rhs: Rational,
        flipped: bool,
    }
    let mut std_rows: Vec<StdRow> = Vec::with_capacity(lp.constraints.len());
    let push_row = |std_rows: &mut Vec<StdRow>, coeffs: SparseRow, relation: Relation, rhs: Rational| {
        if rhs.is_negative() {
            let mut c = coeffs;
            c.scale(&-Rational::one());
            let relation = match relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            std_rows.push(StdRow { coeffs: c, relation, rhs: -rhs, flipped: true });
        } else {
            std_rows.push(StdRow { coeffs, relation, rhs, flipped: false });
        }
    };
    for c in &lp.constraints {
        let mut row = SparseRow::default();
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if !a.is_zero() {
                rhs -= a * &lp.lower[j];
                row.push(j, a.clone());
            }
        }
        push_row(&mut std_rows, row, c.relation, rhs);
    }
    let user_rows = std_rows.len();
    for j in 0..nv {
        if let Some(u) = &lp.upper[j] {
            let mut row = SparseRow::default();
            row.push(j, Rational::one());
            push_row(&mut std_rows, row, Relation::Le, u - &lp.lower[j]);
        }
    }

    // Column layout: structural | slack or surplus (non-Eq rows) | artificial (Ge and Eq rows).
    let m = std_rows.len();
    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    let mut next = nv;
    for (i, r) in std_rows.iter().enumerate() {
        if r.relation != Relation::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    let first_art = next;
    for (i, r) in std_rows.iter().enumerate() {
        if r.relation != Relation::Le {
            art_col[i] = Some(next);
            next += 1;
        }
    }
    let num_cols = next;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut init_col = Vec::with_capacity(m);
    for (i, r) in std_rows.iter().enumerate() {
        let mut row = r.coeffs.clone();
        if let Some(s) = slack_col[i] {
            let sign = if r.relation == Relation::Le { Rational::one() } else { -Rational::one() };
            row.push(s, sign);
        }
        if let Some(a) = art_col[i] {
            row.push(a, Rational::one());
        }
        let b = match r.relation {
            Relation::Le => slack_col[i].unwrap(),
            _ => art_col[i].unwrap(),
        };
        basis.push(b);
        init_col.push(b);
        rows.push(row);
        rhs.push(r.rhs.clone());
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        cost_row: vec![Rational::zero(); num_cols],
        cost_rhs: Rational::zero(),
        num_cols,
    };

    // Phase 1.
    if first_art < num_cols {
        let mut costs = vec![Rational::zero(); num_cols];
        for c in costs.iter_mut().skip(first_art) {
            *c = Rational::one();
        }
        tab.set_costs(&costs);
        let bounded = tab.optimize(|_| true);
        debug_assert!(bounded, "phase 1 is bounded below by zero");
        if !tab.cost_rhs.is_zero() {
            return Ok(LpSolution::without_solution(LpStatus::Infeasible));
        }
        // Drive zero-level artificials out of the basis where possible.
        for i in 0..m {
            if tab.basis[i] < first_art {
                continue;
            }
            let pick = tab.rows[i].idx.iter().copied().find(|&j| j < first_art);
            if let Some(j) = pick {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2 on min c'x (max is negated).
    let mut costs = vec![Rational::zero(); num_cols];
    for j in 0..nv {
        costs[j] = match lp.sense {
            Sense::Minimize => lp.objective[j].clone(),
            Sense::Maximize => -lp.objective[j].clone(),
        };
    }
    tab.set_costs(&costs);
    if !tab.optimize(|j| j < first_art) {
        return Ok(LpSolution::without_solution(LpStatus::Unbounded));
    }

    let mut shifted = vec![Rational::zero(); num_cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        shifted[b] = tab.rhs[i].clone();
    }
    let primal: Vec<Rational> = (0..nv).map(|j| &lp.lower[j] + &shifted[j]).collect();
    let objective: Rational = primal.iter().zip(&lp.objective).map(|(x, c)| x * c).sum();

    // y_std = c_Bᵀ B⁻¹, where B⁻¹ e_i is the current column of row i's initial basic variable.
    let mut y_std = vec![Rational::zero(); m];
    for (k, &b) in tab.basis.iter().enumerate() {
        let cb = &costs[b];
        if cb.is_zero() {
            continue;
        }
        for (i, y) in y_std.iter_mut().enumerate() {
            if let Some(v) = tab.rows[k].get(init_col[i]) {
                *y += cb * v;
            }
        }
    }
    let sense_sign = match lp.sense {
        Sense::Minimize => Rational::one(),
        Sense::Maximize => -Rational::one(),
    };
    let dual: Vec<Rational> = (0..user_rows)
        .map(|i| {
            let y = &y_std[i] * &sense_sign;
            if std_rows[i].flipped { -y } else { y }
        })
        .collect();
    let mut reduced_costs = lp.objective.clone();
    for (row, y) in lp.constraints.iter().zip(&dual) {
        if y.is_zero() {
            continue;
        }
        for (j, a) in row.coeffs.iter().enumerate() {
            if !a.is_zero() {
                reduced_costs[j] -= a * y;
            }
        }
    }

    let sol = LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        reduced_costs,
        objective,
    };
    check_certificate(lp, &sol);
    Ok(sol)
}

/// Exact primal feasibility, dual sign feasibility and strong duality.
fn check_certificate(lp: &LinearProgram, sol: &LpSolution) {
    for (i, row) in lp.constraints.iter().enumerate() {
        let lhs: Rational = row.coeffs.iter().zip(&sol.primal).map(|(a, x)| a * x).sum();
        let ok = match row.relation {
            Relation::Le => lhs <= row.rhs,
            Relation::Ge => lhs >= row.rhs,
            Relation::Eq => lhs == row.rhs,
        };
        assert!(ok, "simplex returned a point violating row {i}");
        let y = &sol.dual[i];
        let sign_ok = match (lp.sense, row.relation) {
            (_, Relation::Eq) => true,
            (Sense::Minimize, Relation::Ge) | (Sense::Maximize, Relation::Le) => !y.is_negative(),
            (Sense::Minimize, Relation::Le) | (Sense::Maximize, Relation::Ge) => !y.is_positive(),
        };
        assert!(sign_ok, "dual multiplier of row {i} has the wrong sign");
    }
    for (j, x) in sol.primal.iter().enumerate() {
        assert!(x >= &lp.lower[j]);
        if let Some(u) = &lp.upper[j] {
            assert!(x <= u);
        }
    }
    assert_eq!(
        sol.dual_objective(lp),
        sol.objective,
        "strong duality failed on an optimal basis"
    );
}

/// Convex-combination weights `λ ≥ 0`, `Σλ = 1`, `Σ λ_g · g = point`, if any exist.
pub fn in_convex_hull(point: &[Rational], generators: &[Vec<u8>]) -> Result<Option<Vec<Rational>>> {
    let d = point.len();
    for g in generators {
        if g.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: g.len() });
        }
    }
    if generators.is_empty() {
        return Ok(None);
    }
    let k = generators.len();
    let mut lp = LinearProgram::new(k, Sense::Minimize);
    lp.add_constraint(vec![Rational::one(); k], Relation::Eq, Rational::one());
    for (j, target) in point.iter().enumerate() {
        let coeffs = generators
            .iter()
            .map(|g| if g[j] != 0 { Rational::one() } else { Rational::zero() })
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, target.clone());
    }
    let sol = solve_lp(&lp)?;
    Ok(sol.is_optimal().then_some(sol.primal))
}
