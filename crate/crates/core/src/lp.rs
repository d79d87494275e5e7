//! Dense linear-program solver: two-phase primal simplex with Bland's rule.
//!
//! Instances produced by the commitment solver are tiny (K variables,
//! Θ·K + 1 constraints), so the engine favors robustness over speed: dense
//! tableaus, anti-cycling pivot selection, and equality rows handled with
//! phase-one artificial variables rather than row elimination.

use serde::Serialize;
use thiserror::Error;

/// Entries at or below this magnitude are not eligible pivots.
pub const PIVOT_TOL: f64 = 1e-9;
/// Feasibility and optimality test tolerance.
pub const FEAS_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("{kind} constraint {index} has {found} coefficients, expected {expected}")]
    DimensionMismatch {
        kind: &'static str,
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("a linear program needs at least one variable")]
    NoVariables,
    #[error("simplex internal inconsistency: {0}")]
    Numerical(String),
}

/// Maximization program over nonnegative variables:
/// maximize objective·x subject to a·x ≤ b and a·x = b rows, x ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub le_constraints: Vec<(Vec<f64>, f64)>,
    pub eq_constraints: Vec<(Vec<f64>, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver verdict. Optimal solutions satisfy every ≤ and = row within
/// [`FEAS_TOL`], are nonnegative within 1e-9 componentwise, and report
/// `value` recomputed as objective·x.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { solution: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible => LpStatus::Infeasible,
            LpOutcome::Unbounded => LpStatus::Unbounded,
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    solve_lp_traced(lp, false)
}

/// Same as [`solve_lp`]; with `trace` set, every tableau is dumped to
/// standard error after each pivot.
pub fn solve_lp_traced(lp: &LinearProgram, trace: bool) -> Result<LpOutcome, LpError> {
    let n = lp.objective.len();
    if n == 0 {
        return Err(LpError::NoVariables);
    }
    for (index, (coeffs, _)) in lp.le_constraints.iter().enumerate() {
        if coeffs.len() != n {
            return Err(LpError::DimensionMismatch {
                kind: "le",
                index,
                expected: n,
                found: coeffs.len(),
            });
        }
    }
    for (index, (coeffs, _)) in lp.eq_constraints.iter().enumerate() {
        if coeffs.len() != n {
            return Err(LpError::DimensionMismatch {
                kind: "eq",
                index,
                expected: n,
                found: coeffs.len(),
            });
        }
    }

    let mut tableau = Tableau::build(lp, trace);
    if tableau.art_count > 0 {
        match tableau.run_phase_one()? {
            PhaseOne::Feasible => {}
            PhaseOne::Infeasible => return Ok(LpOutcome::Infeasible),
        }
    }
    match tableau.run_phase_two(&lp.objective)? {
        Phase::Optimal => {}
        Phase::Unbounded => return Ok(LpOutcome::Unbounded),
    }

    let solution = tableau.extract_solution(n);
    let value = dot(&lp.objective, &solution);
    Ok(LpOutcome::Optimal { solution, value })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

enum Phase {
    Optimal,
    Unbounded,
}

enum PhaseOne {
    Feasible,
    Infeasible,
}

/// Dense simplex tableau. Columns are laid out as
/// [structural | slack | artificial | rhs]; `basis[i]` names the basic
/// column of row i.
struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    zrow: Vec<f64>,
    n_struct: usize,
    art_start: usize,
    art_count: usize,
    trace: bool,
}

impl Tableau {
    fn build(lp: &LinearProgram, trace: bool) -> Self {
        let n = lp.objective.len();
        let m_le = lp.le_constraints.len();
        let m = m_le + lp.eq_constraints.len();
        let art_start = n + m_le;

        // Lay out rows with slacks, flipping rows to make every rhs
        // nonnegative; rows whose slack cannot start the basis (negated ≤
        // rows and all = rows) receive an artificial variable.
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut needs_artificial = Vec::new();
        for (i, (coeffs, bound)) in lp.le_constraints.iter().enumerate() {
            let flip = *bound < 0.0;
            let sign = if flip { -1.0 } else { 1.0 };
            let mut row = vec![0.0; art_start];
            for (j, &a) in coeffs.iter().enumerate() {
                row[j] = sign * a;
            }
            row[n + i] = sign;
            row.push(sign * bound);
            rows.push(row);
            if flip {
                needs_artificial.push(i);
                basis.push(usize::MAX); // patched below
            } else {
                basis.push(n + i);
            }
        }
        for (coeffs, bound) in &lp.eq_constraints {
            let sign = if *bound < 0.0 { -1.0 } else { 1.0 };
            let mut row = vec![0.0; art_start];
            for (j, &a) in coeffs.iter().enumerate() {
                row[j] = sign * a;
            }
            row.push(sign * bound);
            needs_artificial.push(rows.len());
            basis.push(usize::MAX);
            rows.push(row);
        }

        let art_count = needs_artificial.len();
        for row in &mut rows {
            let rhs = row.pop().expect("row has an rhs");
            row.extend(std::iter::repeat_n(0.0, art_count));
            row.push(rhs);
        }
        for (offset, &i) in needs_artificial.iter().enumerate() {
            rows[i][art_start + offset] = 1.0;
            basis[i] = art_start + offset;
        }

        Tableau {
            rows,
            basis,
            zrow: Vec::new(),
            n_struct: n,
            art_start,
            art_count,
            trace,
        }
    }

    fn total_cols(&self) -> usize {
        self.art_start + self.art_count
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.total_cols()]
    }

    /// Installs the reduced-cost row z_j − c_j for the cost vector `costs`
    /// (indexed over all columns), priced out against the current basis.
    fn install_costs(&mut self, costs: &[f64]) {
        let width = self.total_cols() + 1;
        self.zrow = vec![0.0; width];
        for (z, &c) in self.zrow.iter_mut().zip(costs) {
            *z = -c;
        }
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs[b];
            if cb != 0.0 {
                for j in 0..width {
                    self.zrow[j] += cb * self.rows[i][j];
                }
            }
        }
    }

    fn pivot(&mut self, leave: usize, enter: usize) {
        let width = self.total_cols() + 1;
        let p = self.rows[leave][enter];
        for j in 0..width {
            self.rows[leave][j] /= p;
        }
        self.rows[leave][enter] = 1.0;
        for i in 0..self.rows.len() {
            if i == leave {
                continue;
            }
            let factor = self.rows[i][enter];
            if factor != 0.0 {
                for j in 0..width {
                    self.rows[i][j] -= factor * self.rows[leave][j];
                }
                self.rows[i][enter] = 0.0;
            }
        }
        let factor = self.zrow[enter];
        if factor != 0.0 {
            for j in 0..width {
                self.zrow[j] -= factor * self.rows[leave][j];
            }
            self.zrow[enter] = 0.0;
        }
        self.basis[leave] = enter;
        if self.trace {
            self.dump();
        }
    }

    /// Simplex iterations with Bland's rule: enter at the smallest improving
    /// column, leave at the minimum ratio with ties broken by the smallest
    /// basic variable index. Bland's rule excludes cycling.
    fn iterate(&mut self, allowed_cols: usize) -> Result<Phase, LpError> {
        loop {
            let enter = (0..allowed_cols).find(|&j| self.zrow[j] < -FEAS_TOL);
            let Some(enter) = enter else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.rows.len() {
                let a = self.rows[i][enter];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    match leave {
                        None => {
                            leave = Some(i);
                            best_ratio = ratio;
                        }
                        Some(l) => {
                            if ratio < best_ratio
                                || (ratio == best_ratio && self.basis[i] < self.basis[l])
                            {
                                leave = Some(i);
                                best_ratio = ratio;
                            }
                        }
                    }
                }
            }
            match leave {
                Some(leave) => self.pivot(leave, enter),
                None => return Ok(Phase::Unbounded),
            }
        }
    }

    fn run_phase_one(&mut self) -> Result<PhaseOne, LpError> {
        let mut costs = vec![0.0; self.total_cols()];
        // maximize minus the artificial sum
        costs[self.art_start..].fill(-1.0);
        self.install_costs(&costs);
        if self.trace {
            self.dump();
        }
        match self.iterate(self.total_cols())? {
            Phase::Optimal => {}
            Phase::Unbounded => {
                // the phase-one objective is bounded above by zero
                return Err(LpError::Numerical(
                    "phase one reported an unbounded objective".into(),
                ));
            }
        }
        let infeasibility: f64 = (0..self.rows.len())
            .filter(|&i| self.basis[i] >= self.art_start)
            .map(|i| self.rhs(i))
            .sum();
        if infeasibility > FEAS_TOL {
            return Ok(PhaseOne::Infeasible);
        }

        // Drive leftover artificials out of the basis; rows that offer no
        // pivot are redundant and can be dropped outright.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.art_start {
                let pivot_col = (0..self.art_start).find(|&j| self.rows[i][j].abs() > PIVOT_TOL);
                match pivot_col {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        // Cut the artificial columns out of the tableau.
        let art_start = self.art_start;
        let total = self.total_cols();
        for row in &mut self.rows {
            let rhs = row[total];
            row.truncate(art_start);
            row.push(rhs);
        }
        self.art_count = 0;
        Ok(PhaseOne::Feasible)
    }

    fn run_phase_two(&mut self, objective: &[f64]) -> Result<Phase, LpError> {
        let mut costs = vec![0.0; self.total_cols()];
        costs[..self.n_struct].copy_from_slice(objective);
        self.install_costs(&costs);
        if self.trace {
            self.dump();
        }
        self.iterate(self.total_cols())
    }

    fn extract_solution(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i);
            }
        }
        x
    }

    fn dump(&self) {
        eprintln!("simplex tableau (basis {:?}):", self.basis);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.4}")).collect();
            eprintln!("  {}", cells.join(" "));
        }
        let cells: Vec<String> = self.zrow.iter().map(|v| format!("{v:>10.4}")).collect();
        eprintln!("  z {}", cells.join(" "));
    }
}
