//! Exact rational linear programming.
//!
//! Two small dense solvers over `BigRational`, both pivoting with Bland's
//! anti-cycling rule so results are deterministic and exact:
//!
//! * [`simplex_max`] solves the packing form `max c·u, A u <= 1, u >= 0`
//!   with a 0/1 constraint matrix given as index sets (the dual-norm LP);
//! * [`solve_eq_min`] solves `min c·x, A x = b, x >= 0` by the two-phase
//!   method (convex-hull membership and decomposition oracles).

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalars::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("malformed LP: {0}")]
    Malformed(String),
    #[error("LP is unbounded; packing problems cannot be, so this is an internal error")]
    Unbounded,
}

/// `max sum(objective[i] * u[i])` subject to `u >= 0` and, for every
/// constraint set `G`, `sum over i in G of u[i] <= 1`.
#[derive(Debug, Clone)]
pub struct PackingLp {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Vec<usize>>,
}

/// Exact optimum plus the primal certificate: a feasible solution
/// attaining the value, and the final basis (column indices, slack
/// columns numbered after the structural ones).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub value: Rational,
    pub solution: Vec<Rational>,
    pub basis: Vec<usize>,
}

impl PackingLp {
    fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if self.objective.iter().any(Rational::is_negative) {
            return Err(LpError::Malformed("objective must be nonnegative".into()));
        }
        let mut covered = vec![false; n];
        for set in &self.constraints {
            if set.is_empty() {
                return Err(LpError::Malformed("empty constraint set".into()));
            }
            for &i in set {
                if i >= n {
                    return Err(LpError::Malformed(format!("variable {i} out of range")));
                }
                covered[i] = true;
            }
        }
        if let Some(i) = covered.iter().position(|&c| !c) {
            return Err(LpError::Malformed(format!("variable {i} appears in no constraint")));
        }
        Ok(())
    }
}

/// Dense tableau in minimization orientation: `rows[i]` holds the
/// constraint coefficients followed by the right-hand side.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n_cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.n_cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        for entry in &mut self.rows[row] {
            *entry /= &factor;
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let scale = self.rows[i][col].clone();
            for j in 0..=self.n_cols {
                let delta = &self.rows[row][j] * &scale;
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes `costs` starting from the current basic feasible point.
    /// Bland's rule: entering column is the smallest index with negative
    /// reduced cost, leaving row is the ratio-test winner with the
    /// smallest basis index. `allowed` masks columns barred from entering.
    fn run_min(&mut self, costs: &[Rational], allowed: &[bool]) -> Result<(), LpError> {
        loop {
            let mut entering = None;
            for j in 0..self.n_cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let z: Rational = (0..self.rows.len())
                    .map(|i| &costs[self.basis[i]] * &self.rows[i][j])
                    .sum();
                if costs[j] < z {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((best_row, best_ratio)) => {
                            ratio < *best_ratio
                                || (ratio == *best_ratio
                                    && self.basis[i] < self.basis[*best_row])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, costs: &[Rational]) -> Rational {
        (0..self.rows.len())
            .map(|i| &costs[self.basis[i]] * self.rhs(i))
            .sum()
    }

    fn solution(&self, n_structural: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n_structural {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Exact optimum of a packing LP. Deterministic: identical inputs produce
/// identical bases and solutions.
pub fn simplex_max(lp: &PackingLp) -> Result<LpResult, LpError> {
    lp.validate()?;
    let n = lp.objective.len();
    let m = lp.constraints.len();
    if n == 0 {
        return Ok(LpResult { value: Rational::zero(), solution: Vec::new(), basis: Vec::new() });
    }
    let n_cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, set) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); n_cols + 1];
        for &v in set {
            row[v] = Rational::one();
        }
        row[n + i] = Rational::one();
        row[n_cols] = Rational::one();
        rows.push(row);
    }
    let mut tableau = Tableau { rows, basis: (n..n + m).collect(), n_cols };
    // Minimize the negated objective; slacks cost nothing.
    let mut costs = vec![Rational::zero(); n_cols];
    for (j, c) in lp.objective.iter().enumerate() {
        costs[j] = -c.clone();
    }
    let allowed = vec![true; n_cols];
    tableau.run_min(&costs, &allowed)?;
    Ok(LpResult {
        value: -tableau.objective_value(&costs),
        solution: tableau.solution(n),
        basis: tableau.basis.clone(),
    })
}

/// Exact optimum of `min c·x` subject to `A x = b`, `x >= 0`, by the
/// two-phase simplex method. Returns `None` when infeasible.
pub fn solve_eq_min(
    c: &[Rational],
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Result<Option<LpResult>, LpError> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(LpError::Malformed("dimension mismatch".into()));
    }
    let n_cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let negate = b[i].is_negative();
        let mut row = Vec::with_capacity(n_cols + 1);
        for entry in &a[i] {
            row.push(if negate { -entry.clone() } else { entry.clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if negate { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut tableau = Tableau { rows, basis: (n..n + m).collect(), n_cols };

    // Phase 1: minimize the artificial mass.
    let mut phase1 = vec![Rational::zero(); n_cols];
    for cost in phase1.iter_mut().skip(n) {
        *cost = Rational::one();
    }
    let allowed = vec![true; n_cols];
    tableau.run_min(&phase1, &allowed)?;
    if !tableau.objective_value(&phase1).is_zero() {
        return Ok(None);
    }

    // Drive any artificial still basic (at value zero) out of the basis
    // with a degenerate pivot; a row offering no structural pivot is
    // redundant and gets dropped. Phase 2 is then free of artificials.
    let mut i = 0;
    while i < tableau.rows.len() {
        if tableau.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tableau.rows[i][j].is_zero()) {
                tableau.pivot(i, j);
                i += 1;
            } else {
                tableau.rows.remove(i);
                tableau.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut costs = vec![Rational::zero(); n_cols];
    costs[..n].clone_from_slice(c);
    let mut allowed = vec![true; n_cols];
    for flag in allowed.iter_mut().skip(n) {
        *flag = false;
    }
    tableau.run_min(&costs, &allowed)?;
    Ok(Some(LpResult {
        value: tableau.objective_value(&costs),
        solution: tableau.solution(n),
        basis: tableau.basis.clone(),
    }))
}

/// Whether `target` lies in the convex hull of `points`, decided exactly.
pub fn in_convex_hull(points: &[Vec<Rational>], target: &[Rational]) -> Result<bool, LpError> {
    if points.is_empty() {
        return Ok(false);
    }
    let dim = target.len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(LpError::Malformed("point dimension mismatch".into()));
    }
    // Rows: one per coordinate, plus the convexity row sum(lambda) = 1.
    let mut a = Vec::with_capacity(dim + 1);
    for coord in 0..dim {
        a.push(points.iter().map(|p| p[coord].clone()).collect());
    }
    a.push(vec![Rational::one(); points.len()]);
    let mut b: Vec<Rational> = target.to_vec();
    b.push(Rational::one());
    let c = vec![Rational::zero(); points.len()];
    Ok(solve_eq_min(&c, &a, &b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, rat_int};

    #[test]
    fn packing_examples() {
        let lp = PackingLp { objective: vec![rat_int(1)], constraints: vec![vec![0]] };
        assert_eq!(simplex_max(&lp).unwrap().value, rat_int(1));

        let lp = PackingLp { objective: vec![rat_int(1), rat_int(1)], constraints: vec![vec![0, 1]] };
        assert_eq!(simplex_max(&lp).unwrap().value, rat_int(1));

        let lp = PackingLp {
            objective: vec![rat_int(1), rat_int(1), rat_int(1)],
            constraints: vec![vec![0], vec![1, 2]],
        };
        let result = simplex_max(&lp).unwrap();
        assert_eq!(result.value, rat_int(2));
        // Feasibility of the returned solution.
        for set in &lp.constraints {
            let total: Rational = set.iter().map(|&i| result.solution[i].clone()).sum();
            assert!(total <= rat_int(1));
        }
    }

    #[test]
    fn packing_with_fractional_optimum() {
        // Three pairwise overlapping pairs on three variables force 1/2s.
        let lp = PackingLp {
            objective: vec![rat_int(1); 3],
            constraints: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        };
        let result = simplex_max(&lp).unwrap();
        assert_eq!(result.value, rat(3, 2));
    }

    #[test]
    fn packing_rejects_uncovered_variable() {
        let lp = PackingLp { objective: vec![rat_int(1), rat_int(1)], constraints: vec![vec![0]] };
        assert!(matches!(simplex_max(&lp), Err(LpError::Malformed(_))));
    }

    #[test]
    fn determinism() {
        let lp = PackingLp {
            objective: vec![rat_int(2), rat_int(1), rat_int(1), rat_int(3)],
            constraints: vec![vec![0, 1], vec![1, 2, 3], vec![0, 3]],
        };
        let a = simplex_max(&lp).unwrap();
        let b = simplex_max(&lp).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn equality_solver_feasibility() {
        // x0 + x1 = 1, x0 - x1 = 0 has the solution (1/2, 1/2).
        let a = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ];
        let b = vec![rat_int(1), rat_int(0)];
        let c = vec![rat_int(1), rat_int(1)];
        let result = solve_eq_min(&c, &a, &b).unwrap().unwrap();
        assert_eq!(result.value, rat_int(1));
        assert_eq!(result.solution, vec![rat(1, 2), rat(1, 2)]);

        // x0 + x1 = -1 is infeasible over x >= 0.
        let a = vec![vec![rat_int(1), rat_int(1)]];
        let b = vec![rat_int(-1)];
        let c = vec![rat_int(0), rat_int(0)];
        assert!(solve_eq_min(&c, &a, &b).unwrap().is_none());
    }

    #[test]
    fn hull_membership() {
        let points = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert!(in_convex_hull(&points, &[rat_int(0), rat(1, 2)]).unwrap());
        assert!(in_convex_hull(&points, &[rat(1, 2), rat(1, 2)]).unwrap());
        assert!(!in_convex_hull(&points, &[rat_int(1), rat_int(1)]).unwrap());
        assert!(!in_convex_hull(&[], &[rat_int(0)]).unwrap());
    }
}
