//! Dense two-phase simplex with Bland's rule.
//!
//! Solves max <c, x> subject to <n_i, x> <= b_i (x free, all b_i > 0, so the
//! origin is feasible) through its dual min b^T y, N^T y = c, y >= 0.
//! Deterministic pivoting; dimensions at desk scale are tiny, so no effort is
//! spent on sparsity or revised factorizations.

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

struct Tableau<S> {
    rows: usize,
    cols: usize,
    a: Vec<S>, // rows x cols constraint matrix
    rhs: Vec<S>,
    basis: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn pivot(&mut self, row: usize, col: usize) {
        let cols = self.cols;
        let p = self.a[row * cols + col];
        let inv = S::one() / p;
        for j in 0..cols {
            self.a[row * cols + j] = self.a[row * cols + j] * inv;
        }
        self.rhs[row] = self.rhs[row] * inv;
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let f = self.a[r * cols + col];
            if f == S::zero() {
                continue;
            }
            for j in 0..cols {
                let t = self.a[row * cols + j] * f;
                self.a[r * cols + j] = self.a[r * cols + j] - t;
            }
            let t = self.rhs[row] * f;
            self.rhs[r] = self.rhs[r] - t;
        }
        self.basis[row] = col;
    }

    /// Minimizes cost over the current basic feasible solution with Bland's
    /// rule; `active` limits the candidate entering columns.
    fn run(&mut self, cost: &[S], active: usize, eps: S) -> Result<S> {
        // reduced costs maintained implicitly: z_j - c_j via basis cost row
        loop {
            // compute reduced cost for each non-basic column, Bland: first negative
            let mut enter = None;
            for j in 0..active {
                if self.basis.contains(&j) {
                    continue;
                }
                // reduced = c_j - c_B^T B^{-1} A_j ; tableau holds B^{-1} A
                let mut red = cost[j];
                for (r, &bi) in self.basis.iter().enumerate() {
                    red = red - cost[bi] * self.a[r * self.cols + j];
                }
                if red < -eps {
                    enter = Some(j);
                    break;
                }
            }
            let Some(col) = enter else {
                let mut obj = S::zero();
                for (r, &bi) in self.basis.iter().enumerate() {
                    obj = obj + cost[bi] * self.rhs[r];
                }
                return Ok(obj);
            };
            // ratio test, Bland ties by lowest basis index
            let mut leave: Option<(usize, S)> = None;
            for r in 0..self.rows {
                let a = self.a[r * self.cols + col];
                if a > eps {
                    let ratio = self.rhs[r] / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - eps
                                || (ratio < lratio + eps && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Err(GeomError::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

/// max <c, x> s.t. <normals[i], x> <= offsets[i]. Requires offsets > 0.
/// Returns the optimal value; `Unbounded` if the constraint set is not
/// compact in direction `c`.
pub fn max_dot_under_halfspaces<S: Scalar>(
    normals: &[Vec<S>],
    offsets: &[S],
    c: &[S],
) -> Result<S> {
    let n = c.len();
    let m = normals.len();
    if m == 0 {
        return Err(GeomError::Unbounded);
    }
    let eps = S::from_f64c(1e-11);
    // Dual: min sum b_i y_i  s.t.  sum_i y_i normals[i] = c,  y >= 0.
    // Columns: m dual variables + n artificials.
    let cols = m + n;
    let mut a = vec![S::zero(); n * cols];
    let mut rhs = vec![S::zero(); n];
    for i in 0..n {
        rhs[i] = c[i];
    }
    for j in 0..m {
        for i in 0..n {
            a[i * cols + j] = normals[j][i];
        }
    }
    // flip rows to make rhs nonnegative, then set artificial columns
    for i in 0..n {
        if rhs[i] < S::zero() {
            rhs[i] = -rhs[i];
            for j in 0..m {
                a[i * cols + j] = -a[i * cols + j];
            }
        }
        a[i * cols + m + i] = S::one();
    }
    let mut t = Tableau {
        rows: n,
        cols,
        a,
        rhs,
        basis: (m..m + n).collect(),
    };
    // Phase 1: drive artificials out.
    let mut phase1_cost = vec![S::zero(); cols];
    for j in m..cols {
        phase1_cost[j] = S::one();
    }
    let infeas = t.run(&phase1_cost, cols, eps)?;
    let scale = crate::geometry::vector::norm(c) + S::one();
    if infeas > eps * scale {
        // dual infeasible => primal unbounded
        return Err(GeomError::Unbounded);
    }
    // pivot any artificial still in the basis onto a structural column
    for r in 0..n {
        if t.basis[r] >= m {
            if let Some(j) = (0..m).find(|&j| t.a[r * t.cols + j].abs() > eps) {
                t.pivot(r, j);
            }
        }
    }
    if t.basis.iter().any(|&b| b >= m) {
        // redundant equality row; value unaffected
    }
    let mut phase2_cost = vec![S::zero(); cols];
    for j in 0..m {
        phase2_cost[j] = offsets[j];
    }
    // artificial columns get a prohibitive cost so they never re-enter
    let big = offsets
        .iter()
        .fold(S::one(), |acc, &v| if v > acc { v } else { acc })
        * S::from_f64c(1e8);
    for j in m..cols {
        phase2_cost[j] = big;
    }
    t.run(&phase2_cost, cols, eps)
}
