// SPDX-License-Identifier: Apache-2.0

//! Dense two-phase simplex method for small standard-form programs
//! `min c^T x  s.t.  A x = b, x >= 0`, pivoting with Bland's rule.

const EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over the current basis; `allowed` masks entering columns.
    fn optimize(&mut self, cost: &[f64], allowed: &dyn Fn(usize) -> bool) -> bool {
        let m = self.rows.len();
        loop {
            // reduced costs r_j = c_j - c_B^T B^{-1} a_j
            let mut entering = None;
            for j in 0..self.width {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut rj = cost[j];
                for i in 0..m {
                    rj -= cost[self.basis[i]] * self.rows[i][j];
                }
                if rj < -EPS {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.rows[i][c];
                if a > EPS {
                    let ratio = self.rows[i][self.width] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - EPS
                                || ((ratio - br).abs() <= EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }
}

/// Solves `min c^T x  s.t.  A x = b, x >= 0`. `a` is row-major with `c.len()` columns.
/// `feasibility_tol` bounds the phase-one residual accepted as feasible.
pub fn solve_standard(a: &[Vec<f64>], b: &[f64], c: &[f64], feasibility_tol: f64) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; width + 1];
        for j in 0..n {
            row[j] = sign * a[i][j];
        }
        row[n + i] = 1.0;
        row[width] = sign * b[i];
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };
    let mut phase1 = vec![0.0; width];
    for v in phase1.iter_mut().skip(n) {
        *v = 1.0;
    }
    t.optimize(&phase1, &|_| true);
    let residual: f64 = (0..m)
        .filter(|&i| t.basis[i] >= n)
        .map(|i| t.rhs(i))
        .sum();
    if residual > feasibility_tol {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| t.rows[i][j].abs() > EPS && !t.basis.contains(&j)) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = c.to_vec();
    cost.resize(width, 0.0);
    if !t.optimize(&cost, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rhs(i).max(0.0);
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_combination_program() {
        // min t.l  s.t. sum l = 1, sum l x = 0.25 over points -1, 0, 1 with t = |x|
        let a = vec![vec![1.0, 1.0, 1.0], vec![-1.0, 0.0, 1.0]];
        match solve_standard(&a, &[1.0, 0.25], &[1.0, 0.0, 1.0], 1e-12) {
            LpOutcome::Optimal { value, .. } => assert!((value - 0.25).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            solve_standard(&a, &[1.0, 1.5], &[1.0, 0.0, 1.0], 1e-12),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn unbounded_program() {
        let a = vec![vec![1.0, -1.0]];
        assert_eq!(solve_standard(&a, &[0.0], &[-1.0, 0.0], 1e-12), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![1.0, 1.0], vec![2.0, 2.0]];
        match solve_standard(&a, &[1.0, 2.0], &[3.0, 1.0], 1e-12) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, 1.0);
                assert_eq!(x, vec![0.0, 1.0]);
            }
            other => panic!("{other:?}"),
        }
    }
}
