//! Dense two-phase simplex for small linear programs.
//!
//! Problems have the form `maximize c.x` subject to linear rows
//! `a.x (<=|>=|=) b` and `x >= 0`. Pivoting follows Bland's rule (lowest
//! eligible index for both the entering and the leaving variable), so the
//! method terminates on degenerate problems and is fully deterministic.
//! Callers are expected to scale their data to order one; the tolerances
//! below are absolute at that scale.

use thiserror::Error;

/// Reduced costs and pivot entries below this are treated as zero.
pub const PIVOT_TOL: f64 = 1e-9;
const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex iteration limit ({0}) reached")]
    IterationLimit(usize),
    #[error("malformed linear program: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<f64>,
    relation: Relation,
    rhs: f64,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub value: f64,
    pub x: Vec<f64>,
}

impl LinearProgram {
    /// New program maximizing `objective . x` over `x >= 0`.
    pub fn maximize(objective: Vec<f64>) -> Self {
        LinearProgram { objective, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.rows.push(Row { coeffs, relation, rhs });
        self
    }

    pub fn solve(&self) -> Result<Solution, LpError> {
        let n = self.num_vars();
        for r in &self.rows {
            if r.coeffs.len() != n {
                return Err(LpError::Malformed(format!(
                    "row has {} coefficients, expected {n}",
                    r.coeffs.len()
                )));
            }
            if !r.rhs.is_finite() || r.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(LpError::Malformed("non-finite coefficient".into()));
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::Malformed("non-finite objective".into()));
        }
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    /// `rows x (cols + 1)`; the last column is the right-hand side.
    cells: Vec<Vec<f64>>,
    basis: Vec<usize>,
    num_vars: usize,
    /// Columns at or beyond this index are artificial.
    art_start: usize,
    cols: usize,
    feas_tol: f64,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars();
        let rows: Vec<Row> = lp
            .rows
            .iter()
            .map(|r| {
                if r.rhs < 0.0 {
                    Row {
                        coeffs: r.coeffs.iter().map(|c| -c).collect(),
                        relation: r.relation.flipped(),
                        rhs: -r.rhs,
                    }
                } else {
                    r.clone()
                }
            })
            .collect();
        let n_slack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.relation != Relation::Le).count();
        let art_start = n + n_slack;
        let cols = art_start + n_art;
        let max_rhs = rows.iter().fold(1.0f64, |m, r| m.max(r.rhs));

        let mut cells = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let (mut slack, mut art) = (n, art_start);
        for r in &rows {
            let mut line = vec![0.0; cols + 1];
            line[..n].copy_from_slice(&r.coeffs);
            line[cols] = r.rhs;
            match r.relation {
                Relation::Le => {
                    line[slack] = 1.0;
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    line[slack] = -1.0;
                    slack += 1;
                    line[art] = 1.0;
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    line[art] = 1.0;
                    basis.push(art);
                    art += 1;
                }
            }
            cells.push(line);
        }
        Tableau { cells, basis, num_vars: n, art_start, cols, feas_tol: PIVOT_TOL * max_rhs }
    }

    fn run(mut self, objective: &[f64]) -> Result<Solution, LpError> {
        if self.art_start < self.cols {
            let mut phase1 = vec![0.0; self.cols];
            for c in &mut phase1[self.art_start..] {
                *c = -1.0;
            }
            let value = self.optimize(&phase1, self.cols)?;
            if value < -self.feas_tol {
                return Err(LpError::Infeasible);
            }
            self.expel_artificials();
        }
        let mut phase2 = vec![0.0; self.cols];
        phase2[..self.num_vars].copy_from_slice(objective);
        let value = self.optimize(&phase2, self.art_start)?;

        let mut x = vec![0.0; self.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_vars {
                x[b] = self.cells[i][self.cols];
            }
        }
        Ok(Solution { value, x })
    }

    /// Pivots zero-valued artificials out of the basis after phase one,
    /// dropping rows that turn out to be redundant.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.basis.len() {
            if self.basis[i] >= self.art_start {
                let col = (0..self.art_start).find(|&j| self.cells[i][j].abs() > PIVOT_TOL);
                match col {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.cells.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    /// Runs Bland-rule simplex iterations over columns `< allowed` and
    /// returns the objective value at the optimum.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<f64, LpError> {
        let rhs = self.cols;
        for _ in 0..MAX_ITERATIONS {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = cost[j]
                    - self
                        .basis
                        .iter()
                        .zip(&self.cells)
                        .map(|(&b, row)| cost[b] * row[j])
                        .sum::<f64>();
                reduced > PIVOT_TOL
            });
            let Some(j) = entering else {
                return Ok(self
                    .basis
                    .iter()
                    .zip(&self.cells)
                    .map(|(&b, row)| cost[b] * row[rhs])
                    .sum());
            };

            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.cells.iter().enumerate() {
                if row[j] <= PIVOT_TOL {
                    continue;
                }
                let ratio = row[rhs] / row[j];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                        if (!tie && ratio < br) || (tie && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((i, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(i, j);
        }
        Err(LpError::IterationLimit(MAX_ITERATIONS))
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols + 1;
        let p = self.cells[r][c];
        for k in 0..width {
            self.cells[r][k] /= p;
        }
        self.cells[r][c] = 1.0;
        let pivot_row = self.cells[r].clone();
        for (i, row) in self.cells.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == 0.0 {
                continue;
            }
            for k in 0..width {
                row[k] -= f * pivot_row[k];
            }
            row[c] = 0.0;
            if row[width - 1] < 0.0 && row[width - 1] > -1e-13 {
                row[width - 1] = 0.0;
            }
        }
        self.basis[r] = c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn textbook_optimum() {
        let mut lp = LinearProgram::maximize(vec![3.0, 2.0]);
        lp.constrain(vec![1.0, 1.0], Relation::Le, 4.0)
            .constrain(vec![1.0, 3.0], Relation::Le, 6.0)
            .constrain(vec![1.0, 0.0], Relation::Le, 3.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 11.0).abs() < 1e-12);
        assert!((s.x[0] - 3.0).abs() < 1e-12 && (s.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn needs_phase_one() {
        // max -x s.t. x >= 1, written with a negative right-hand side
        let mut lp = LinearProgram::maximize(vec![-1.0]);
        lp.constrain(vec![-1.0], Relation::Le, -1.0);
        let s = lp.solve().unwrap();
        assert!((s.value + 1.0).abs() < 1e-12);

        let mut eq = LinearProgram::maximize(vec![1.0, 2.0]);
        eq.constrain(vec![1.0, 1.0], Relation::Eq, 2.0)
            .constrain(vec![1.0, -1.0], Relation::Ge, 0.0);
        let s = eq.solve().unwrap();
        assert!((s.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::maximize(vec![1.0]);
        lp.constrain(vec![1.0], Relation::Ge, 2.0).constrain(vec![1.0], Relation::Le, 1.0);
        assert_eq!(lp.solve(), Err(LpError::Infeasible));

        let mut lp = LinearProgram::maximize(vec![1.0, 0.0]);
        lp.constrain(vec![1.0, -1.0], Relation::Le, 1.0);
        assert_eq!(lp.solve(), Err(LpError::Unbounded));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::maximize(vec![1.0, 1.0]);
        lp.constrain(vec![1.0, 1.0], Relation::Eq, 1.0)
            .constrain(vec![2.0, 2.0], Relation::Eq, 2.0);
        assert!((lp.solve().unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        let mut lp = LinearProgram::maximize(vec![0.75, -150.0, 0.02, -6.0]);
        lp.constrain(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0)
            .constrain(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0)
            .constrain(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 0.05).abs() < 1e-12);
    }

    /// Brute force over all basic points of a 2-variable program: every
    /// intersection of two boundary lines (including the axes).
    fn brute_force_2d(c: [f64; 2], rows: &[([f64; 2], f64)]) -> Option<f64> {
        let mut lines: Vec<([f64; 2], f64)> = rows.to_vec();
        lines.push(([1.0, 0.0], 0.0));
        lines.push(([0.0, 1.0], 0.0));
        let feasible = |x: [f64; 2]| {
            x[0] >= -1e-9
                && x[1] >= -1e-9
                && rows.iter().all(|(a, b)| a[0] * x[0] + a[1] * x[1] <= b + 1e-9)
        };
        let mut best: Option<f64> = None;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a, b) = (lines[i], lines[j]);
                let det = a.0[0] * b.0[1] - a.0[1] * b.0[0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = [(a.1 * b.0[1] - a.0[1] * b.1) / det, (a.0[0] * b.1 - a.1 * b.0[0]) / det];
                if feasible(x) {
                    let v = c[0] * x[0] + c[1] * x[1];
                    best = Some(best.map_or(v, |b: f64| b.max(v)));
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_vertex_enumeration_in_the_plane(
            c in prop::array::uniform2(-3.0f64..3.0),
            rows in prop::collection::vec((prop::array::uniform2(0.1f64..3.0), 0.5f64..5.0), 1..6),
        ) {
            // positive coefficients keep the region bounded
            let mut lp = LinearProgram::maximize(c.to_vec());
            for (a, b) in &rows {
                lp.constrain(a.to_vec(), Relation::Le, *b);
            }
            let s = lp.solve().unwrap();
            let oracle = brute_force_2d(c, &rows).unwrap();
            prop_assert!((s.value - oracle).abs() < 1e-8, "{} vs {}", s.value, oracle);
        }
    }
}
