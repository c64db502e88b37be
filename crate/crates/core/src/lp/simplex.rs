//! Bounded dual simplex in kernel form.
//!
//! Every row `i` carries a slack `s_i = a_iᵀx` boxed by its sense. A basis is
//! described by the set `W` of active rows (slack nonbasic at a bound) and the
//! set `F` of basic structural variables, with `|W| = |F|`. The basis matrix
//! is nonsingular exactly when the kernel `K = A[W, F]` is, so only `K⁻¹`
//! (at most `min(n, m)` square) is stored and updated by rank-one formulas.
//!
//! The all-slack basis with every variable at the bound favored by its cost is
//! dual feasible, so the method never needs a phase one, and appending rows or
//! changing bounds keeps the current basis dual feasible for a warm restart.

use super::dense::invert;
use super::problem::{LpProblem, Row};
use super::{LpError, LpSolution, LpStatus, FEAS_TOL};

const PIVOT_TOL: f64 = 1e-9;
const HARRIS_TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 100;
const DEGENERATE_BEFORE_BLAND: usize = 50;
const ABSENT: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Lower,
    Upper,
    Basic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowState {
    Inactive,
    Lower,
    Upper,
}

#[derive(Debug, Clone)]
struct KRow {
    coeffs: Vec<(usize, f64)>,
    lo: f64,
    hi: f64,
}

#[derive(Debug, Clone, Copy)]
enum Leave {
    Var(usize),
    Row(usize),
}

#[derive(Debug, Clone, Copy)]
enum Enter {
    Var(usize),
    /// Position in `W`.
    Row(usize),
}

/// Reusable LP solver state.
#[derive(Debug, Clone)]
pub struct Simplex {
    cost: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    rows: Vec<KRow>,
    cols: Vec<Vec<(usize, f64)>>,
    var_state: Vec<VarState>,
    row_state: Vec<RowState>,
    f_cols: Vec<usize>,
    w_rows: Vec<usize>,
    f_pos: Vec<usize>,
    w_pos: Vec<usize>,
    /// `kinv[f][w]`: rows follow `f_cols`, columns follow `w_rows`.
    kinv: Vec<Vec<f64>>,
    pivots_since_refactor: usize,
    x: Vec<f64>,
    status: Option<LpStatus>,
    iteration_limit: Option<usize>,
}

impl Simplex {
    pub fn new(problem: &LpProblem) -> Result<Self, LpError> {
        problem.validate()?;
        let n = problem.num_vars();
        let mut s = Self {
            cost: problem.objective.clone(),
            lower: problem.lower.clone(),
            upper: problem.upper.clone(),
            rows: Vec::new(),
            cols: vec![Vec::new(); n],
            var_state: vec![VarState::Lower; n],
            row_state: Vec::new(),
            f_cols: Vec::new(),
            w_rows: Vec::new(),
            f_pos: vec![ABSENT; n],
            w_pos: Vec::new(),
            kinv: Vec::new(),
            pivots_since_refactor: 0,
            x: vec![0.0; n],
            status: None,
            iteration_limit: None,
        };
        s.cold_start();
        s.push_rows(&problem.rows);
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Overrides the default pivot budget of `50 (n + m) + 10000` per solve.
    pub fn set_iteration_limit(&mut self, limit: Option<usize>) {
        self.iteration_limit = limit;
    }

    /// Status of the last solve, if any.
    pub fn status(&self) -> Option<LpStatus> {
        self.status
    }

    fn cold_start(&mut self) {
        for j in 0..self.num_vars() {
            self.var_state[j] = if self.cost[j] >= 0.0 {
                VarState::Lower
            } else {
                VarState::Upper
            };
            self.f_pos[j] = ABSENT;
        }
        for r in 0..self.rows.len() {
            self.row_state[r] = RowState::Inactive;
            self.w_pos[r] = ABSENT;
        }
        self.f_cols.clear();
        self.w_rows.clear();
        self.kinv.clear();
        self.pivots_since_refactor = 0;
    }

    fn push_rows(&mut self, rows: &[Row]) {
        for row in rows {
            let (lo, hi) = row.bounds();
            let r = self.rows.len();
            for &(j, a) in &row.coeffs {
                if a != 0.0 {
                    self.cols[j].push((r, a));
                }
            }
            self.rows.push(KRow {
                coeffs: row.coeffs.iter().copied().filter(|&(_, a)| a != 0.0).collect(),
                lo,
                hi,
            });
            self.row_state.push(RowState::Inactive);
            self.w_pos.push(ABSENT);
        }
    }

    /// Appends rows; they enter with basic slacks so the basis stays valid.
    pub fn add_rows(&mut self, rows: &[Row]) -> Result<(), LpError> {
        for row in rows {
            row.validate(self.num_vars())?;
        }
        self.push_rows(rows);
        self.status = None;
        Ok(())
    }

    pub fn add_rows_resolve(&mut self, rows: &[Row]) -> Result<LpSolution, LpError> {
        self.add_rows(rows)?;
        self.solve()
    }

    /// Changes the box of `x_j`. A nonbasic variable is placed at whichever
    /// bound keeps its reduced cost dual feasible.
    pub fn set_var_bounds(&mut self, j: usize, lower: f64, upper: f64) -> Result<(), LpError> {
        if j >= self.num_vars() || !lower.is_finite() || !upper.is_finite() || lower > upper {
            return Err(LpError::InvalidProblem(format!(
                "bad bounds [{lower}, {upper}] for x{j}"
            )));
        }
        self.lower[j] = lower;
        self.upper[j] = upper;
        if self.var_state[j] != VarState::Basic {
            let d = self.reduced_cost(j);
            self.var_state[j] = if d >= 0.0 { VarState::Lower } else { VarState::Upper };
        }
        self.status = None;
        Ok(())
    }

    pub fn fix_variable_resolve(&mut self, j: usize, value: f64) -> Result<LpSolution, LpError> {
        self.set_var_bounds(j, value, value)?;
        self.solve()
    }

    /// Current box of `x_j`.
    pub fn var_bounds(&self, j: usize) -> (f64, f64) {
        (self.lower[j], self.upper[j])
    }

    /// Replaces the bounds `lo ≤ a_iᵀx ≤ hi` of row `i`. An active row must
    /// keep a finite bound on the side it is pinned to.
    pub fn set_row_bounds(&mut self, i: usize, lo: f64, hi: f64) -> Result<(), LpError> {
        if i >= self.rows.len() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(LpError::InvalidProblem(format!("bad bounds [{lo}, {hi}] for row {i}")));
        }
        match self.row_state[i] {
            RowState::Lower if !lo.is_finite() => return Err(LpError::RowActive(i)),
            RowState::Upper if !hi.is_finite() => return Err(LpError::RowActive(i)),
            _ => {}
        }
        self.rows[i].lo = lo;
        self.rows[i].hi = hi;
        self.status = None;
        Ok(())
    }

    /// Deletes rows whose slack is basic. Remaining rows are renumbered in
    /// their original order.
    pub fn remove_rows(&mut self, indices: &[usize]) -> Result<(), LpError> {
        let m = self.rows.len();
        let mut drop = vec![false; m];
        for &i in indices {
            if i >= m {
                return Err(LpError::InvalidProblem(format!("row {i} out of range")));
            }
            if self.row_state[i] != RowState::Inactive {
                return Err(LpError::RowActive(i));
            }
            drop[i] = true;
        }
        let mut new_index = vec![ABSENT; m];
        let mut next = 0;
        for i in 0..m {
            if !drop[i] {
                new_index[i] = next;
                next += 1;
            }
        }
        let mut keep = drop.iter().map(|d| !d);
        self.rows.retain(|_| keep.next().unwrap());
        let mut keep = drop.iter().map(|d| !d);
        self.row_state.retain(|_| keep.next().unwrap());
        for w in self.w_rows.iter_mut() {
            *w = new_index[*w];
        }
        self.w_pos = vec![ABSENT; next];
        for (p, &w) in self.w_rows.iter().enumerate() {
            self.w_pos[w] = p;
        }
        for col in self.cols.iter_mut() {
            col.retain(|&(r, _)| !drop[r]);
            for e in col.iter_mut() {
                e.0 = new_index[e.0];
            }
        }
        Ok(())
    }

    /// True if the slack of row `i` is basic, i.e. the row may be removed.
    pub fn row_is_basic(&self, i: usize) -> bool {
        self.row_state[i] == RowState::Inactive
    }

    fn row_activity(&self, r: usize, x: &[f64]) -> f64 {
        self.rows[r].coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    fn active_value(&self, r: usize) -> f64 {
        match self.row_state[r] {
            RowState::Lower => self.rows[r].lo,
            RowState::Upper => self.rows[r].hi,
            RowState::Inactive => unreachable!("inactive row has no pinned value"),
        }
    }

    fn compute_primal(&mut self) {
        let n = self.num_vars();
        for j in 0..n {
            match self.var_state[j] {
                VarState::Lower => self.x[j] = self.lower[j],
                VarState::Upper => self.x[j] = self.upper[j],
                VarState::Basic => self.x[j] = 0.0,
            }
        }
        let k = self.w_rows.len();
        let mut rhs = vec![0.0; k];
        for (p, &w) in self.w_rows.iter().enumerate() {
            // basic entries of x are zero here, so the full activity is A[w,N] x_N
            rhs[p] = self.active_value(w) - self.row_activity(w, &self.x);
        }
        for (fp, &f) in self.f_cols.iter().enumerate() {
            self.x[f] = dot(&self.kinv[fp], &rhs);
        }
    }

    fn duals(&self) -> Vec<f64> {
        let k = self.w_rows.len();
        let mut y = vec![0.0; k];
        for (fp, &f) in self.f_cols.iter().enumerate() {
            let c = self.cost[f];
            if c != 0.0 {
                for (yw, kv) in y.iter_mut().zip(&self.kinv[fp]) {
                    *yw += c * kv;
                }
            }
        }
        y
    }

    fn reduced_costs(&self, y: &[f64]) -> Vec<f64> {
        let mut d = self.cost.clone();
        for (p, &w) in self.w_rows.iter().enumerate() {
            if y[p] != 0.0 {
                for &(j, a) in &self.rows[w].coeffs {
                    d[j] -= y[p] * a;
                }
            }
        }
        d
    }

    fn reduced_cost(&self, j: usize) -> f64 {
        let y = self.duals();
        let mut d = self.cost[j];
        for &(r, a) in &self.cols[j] {
            let p = self.w_pos[r];
            if p != ABSENT {
                d -= y[p] * a;
            }
        }
        d
    }

    /// Picks a primal infeasible basic entity and the direction it must move
    /// (`+1` up to its lower bound, `-1` down to its upper bound).
    fn choose_leaving(&self, bland: bool) -> Option<(Leave, f64)> {
        let mut best: Option<(Leave, f64, f64)> = None;
        for f in (0..self.num_vars()).filter(|&j| self.var_state[j] == VarState::Basic) {
            let v = self.x[f];
            let (l, u) = (self.lower[f], self.upper[f]);
            let found = if l - v > tol(l) {
                Some((Leave::Var(f), 1.0, l - v))
            } else if v - u > tol(u) {
                Some((Leave::Var(f), -1.0, v - u))
            } else {
                None
            };
            if let Some(c) = found {
                if bland {
                    return Some((c.0, c.1));
                }
                if best.is_none_or(|b| c.2 > b.2) {
                    best = Some(c);
                }
            }
        }
        for r in 0..self.rows.len() {
            if self.row_state[r] != RowState::Inactive {
                continue;
            }
            let act = self.row_activity(r, &self.x);
            let (lo, hi) = (self.rows[r].lo, self.rows[r].hi);
            let found = if lo - act > tol(lo) {
                Some((Leave::Row(r), 1.0, lo - act))
            } else if act - hi > tol(hi) {
                Some((Leave::Row(r), -1.0, act - hi))
            } else {
                None
            };
            if let Some(c) = found {
                if bland {
                    return Some((c.0, c.1));
                }
                if best.is_none_or(|b| c.2 > b.2) {
                    best = Some(c);
                }
            }
        }
        best.map(|(l, d, _)| (l, d))
    }

    /// Sensitivities `∂(leaving)/∂(nonbasic)` for every variable and every
    /// active row, plus the row vector used by the kernel update.
    fn leaving_row(&self, leave: Leave) -> (Vec<f64>, Vec<f64>) {
        let n = self.num_vars();
        let k = self.w_rows.len();
        let (mut g, z) = match leave {
            Leave::Var(f) => {
                let v = self.kinv[self.f_pos[f]].clone();
                (vec![0.0; n], v)
            }
            Leave::Row(t) => {
                let mut rho = vec![0.0; k];
                for &(j, a) in &self.rows[t].coeffs {
                    let fp = self.f_pos[j];
                    if fp != ABSENT {
                        for (r, kv) in rho.iter_mut().zip(&self.kinv[fp]) {
                            *r += a * kv;
                        }
                    }
                }
                let mut g = vec![0.0; n];
                for &(j, a) in &self.rows[t].coeffs {
                    g[j] = a;
                }
                (g, rho)
            }
        };
        // leaving a variable: g_j = -Σ_w kinv[f][w] a_wj; leaving a row: a_tj - Σ_w ρ_w a_wj
        for (p, &w) in self.w_rows.iter().enumerate() {
            if z[p] != 0.0 {
                for &(j, a) in &self.rows[w].coeffs {
                    g[j] -= z[p] * a;
                }
            }
        }
        (g, z)
    }

    fn choose_entering(&self, dir: f64, d: &[f64], y: &[f64], g: &[f64], z: &[f64], bland: bool) -> Option<(Enter, f64)> {
        // (entering, |g|, σ·d clipped at 0, global index)
        let mut cands: Vec<(Enter, f64, f64, usize)> = Vec::new();
        for j in 0..self.num_vars() {
            let sigma = match self.var_state[j] {
                VarState::Basic => continue,
                _ if self.lower[j] == self.upper[j] => continue,
                VarState::Lower => 1.0,
                VarState::Upper => -1.0,
            };
            if dir * sigma * g[j] > PIVOT_TOL {
                cands.push((Enter::Var(j), g[j].abs(), (sigma * d[j]).max(0.0), j));
            }
        }
        for (p, &w) in self.w_rows.iter().enumerate() {
            if self.rows[w].lo == self.rows[w].hi {
                continue;
            }
            let sigma = if self.row_state[w] == RowState::Lower { 1.0 } else { -1.0 };
            if dir * sigma * z[p] > PIVOT_TOL {
                cands.push((Enter::Row(p), z[p].abs(), (sigma * y[p]).max(0.0), self.num_vars() + w));
            }
        }
        if cands.is_empty() {
            return None;
        }
        let pick = if bland {
            let best = cands.iter().map(|c| c.2 / c.1).fold(f64::INFINITY, f64::min);
            cands
                .iter()
                .filter(|c| c.2 / c.1 <= best + 1e-12)
                .min_by_key(|c| c.3)
                .copied()
        } else {
            let bound = cands
                .iter()
                .map(|c| (c.2 + HARRIS_TOL) / c.1)
                .fold(f64::INFINITY, f64::min);
            cands
                .iter()
                .filter(|c| c.2 / c.1 <= bound)
                .max_by(|a, b| a.1.total_cmp(&b.1).then(b.3.cmp(&a.3)))
                .copied()
        };
        pick.map(|c| (c.0, c.2 / c.1))
    }

    /// Column `A[W, j]` in `W` order.
    fn kernel_column(&self, j: usize) -> Vec<f64> {
        let mut col = vec![0.0; self.w_rows.len()];
        for &(r, a) in &self.cols[j] {
            let p = self.w_pos[r];
            if p != ABSENT {
                col[p] = a;
            }
        }
        col
    }

    fn kinv_times(&self, col: &[f64]) -> Vec<f64> {
        self.kinv.iter().map(|row| dot(row, col)).collect()
    }

    fn pivot(&mut self, leave: Leave, enter: Enter, dir: f64, g: &[f64], z: &[f64]) -> Result<(), LpError> {
        let bound_var = if dir > 0.0 { VarState::Lower } else { VarState::Upper };
        let bound_row = if dir > 0.0 { RowState::Lower } else { RowState::Upper };
        match (leave, enter) {
            (Leave::Var(f), Enter::Var(j)) => {
                let fp = self.f_pos[f];
                let u = self.kinv_times(&self.kernel_column(j));
                let piv = u[fp];
                if piv.abs() < 1e-12 {
                    return Err(LpError::Singular);
                }
                let prow: Vec<f64> = self.kinv[fp].iter().map(|v| v / piv).collect();
                for (i, row) in self.kinv.iter_mut().enumerate() {
                    if i != fp && u[i] != 0.0 {
                        for (v, p) in row.iter_mut().zip(&prow) {
                            *v -= u[i] * p;
                        }
                    }
                }
                self.kinv[fp] = prow;
                self.f_cols[fp] = j;
                self.f_pos[j] = fp;
                self.f_pos[f] = ABSENT;
                self.var_state[f] = bound_var;
                self.var_state[j] = VarState::Basic;
            }
            (Leave::Var(f), Enter::Row(wp)) => {
                let fp = self.f_pos[f];
                let piv = self.kinv[fp][wp];
                if piv.abs() < 1e-12 {
                    return Err(LpError::Singular);
                }
                let prow = self.kinv[fp].clone();
                for (i, row) in self.kinv.iter_mut().enumerate() {
                    if i == fp {
                        continue;
                    }
                    let factor = row[wp] / piv;
                    if factor != 0.0 {
                        for (v, p) in row.iter_mut().zip(&prow) {
                            *v -= factor * p;
                        }
                    }
                }
                self.remove_f_position(fp);
                let w = self.w_rows[wp];
                self.remove_w_position(wp);
                self.row_state[w] = RowState::Inactive;
                self.var_state[f] = bound_var;
            }
            (Leave::Row(t), Enter::Var(j)) => {
                let u = self.kinv_times(&self.kernel_column(j));
                let s = g[j];
                if s.abs() < 1e-12 {
                    return Err(LpError::Singular);
                }
                for (i, row) in self.kinv.iter_mut().enumerate() {
                    let ui = u[i] / s;
                    if ui != 0.0 {
                        for (v, zw) in row.iter_mut().zip(z) {
                            *v += ui * zw;
                        }
                    }
                    row.push(-ui);
                }
                let mut new_row: Vec<f64> = z.iter().map(|zw| -zw / s).collect();
                new_row.push(1.0 / s);
                self.kinv.push(new_row);
                self.f_pos[j] = self.f_cols.len();
                self.f_cols.push(j);
                self.w_pos[t] = self.w_rows.len();
                self.w_rows.push(t);
                self.row_state[t] = bound_row;
                self.var_state[j] = VarState::Basic;
            }
            (Leave::Row(t), Enter::Row(wp)) => {
                let piv = z[wp];
                if piv.abs() < 1e-12 {
                    return Err(LpError::Singular);
                }
                for row in self.kinv.iter_mut() {
                    let newcol = row[wp] / piv;
                    for (v, zw) in row.iter_mut().zip(z) {
                        *v -= zw * newcol;
                    }
                    row[wp] = newcol;
                }
                let w = self.w_rows[wp];
                self.w_rows[wp] = t;
                self.w_pos[t] = wp;
                self.w_pos[w] = ABSENT;
                self.row_state[w] = RowState::Inactive;
                self.row_state[t] = bound_row;
            }
        }
        self.pivots_since_refactor += 1;
        Ok(())
    }

    fn remove_f_position(&mut self, fp: usize) {
        let f = self.f_cols.swap_remove(fp);
        self.kinv.swap_remove(fp);
        self.f_pos[f] = ABSENT;
        if fp < self.f_cols.len() {
            self.f_pos[self.f_cols[fp]] = fp;
        }
    }

    fn remove_w_position(&mut self, wp: usize) {
        let w = self.w_rows.swap_remove(wp);
        for row in self.kinv.iter_mut() {
            row.swap_remove(wp);
        }
        self.w_pos[w] = ABSENT;
        if wp < self.w_rows.len() {
            self.w_pos[self.w_rows[wp]] = wp;
        }
    }

    /// Recomputes `K⁻¹` from scratch and repairs dual infeasibilities that
    /// drift introduced, by moving boxed nonbasic entities to their other
    /// bound.
    fn refactor(&mut self) -> Result<(), LpError> {
        let k = self.w_rows.len();
        let mut kmat = vec![vec![0.0; k]; k];
        for (p, &w) in self.w_rows.iter().enumerate() {
            for &(j, a) in &self.rows[w].coeffs {
                let fp = self.f_pos[j];
                if fp != ABSENT {
                    kmat[p][fp] = a;
                }
            }
        }
        self.kinv = invert(&kmat).ok_or(LpError::Singular)?;
        self.pivots_since_refactor = 0;
        let y = self.duals();
        let d = self.reduced_costs(&y);
        for j in 0..self.num_vars() {
            match self.var_state[j] {
                VarState::Lower if d[j] < -FEAS_TOL => self.var_state[j] = VarState::Upper,
                VarState::Upper if d[j] > FEAS_TOL => self.var_state[j] = VarState::Lower,
                _ => {}
            }
        }
        for (p, &w) in self.w_rows.iter().enumerate() {
            let (lo, hi) = (self.rows[w].lo, self.rows[w].hi);
            if !(lo.is_finite() && hi.is_finite()) {
                continue;
            }
            match self.row_state[w] {
                RowState::Lower if y[p] < -FEAS_TOL => self.row_state[w] = RowState::Upper,
                RowState::Upper if y[p] > FEAS_TOL => self.row_state[w] = RowState::Lower,
                _ => {}
            }
        }
        Ok(())
    }

    /// Runs the dual simplex from the current basis.
    pub fn solve(&mut self) -> Result<LpSolution, LpError> {
        let limit = self
            .iteration_limit
            .unwrap_or(50 * (self.num_vars() + self.rows.len()) + 10_000);
        let mut iterations = 0;
        let mut degenerate = 0;
        let mut restarted = false;
        let mut fresh = false;
        loop {
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactor_or_restart(&mut restarted)?;
            }
            self.compute_primal();
            let bland = degenerate >= DEGENERATE_BEFORE_BLAND;
            let Some((leave, dir)) = self.choose_leaving(bland) else {
                if !fresh {
                    self.refactor_or_restart(&mut restarted)?;
                    fresh = true;
                    continue;
                }
                return Ok(self.finish(LpStatus::Optimal, iterations));
            };
            let y = self.duals();
            let d = self.reduced_costs(&y);
            let (g, z) = self.leaving_row(leave);
            let Some((enter, step)) = self.choose_entering(dir, &d, &y, &g, &z, bland) else {
                if !fresh {
                    self.refactor_or_restart(&mut restarted)?;
                    fresh = true;
                    continue;
                }
                return Ok(self.finish(LpStatus::Infeasible, iterations));
            };
            if iterations >= limit {
                return Err(LpError::IterationLimit(limit));
            }
            match self.pivot(leave, enter, dir, &g, &z) {
                Ok(()) => {}
                Err(LpError::Singular) => {
                    self.refactor_or_restart(&mut restarted)?;
                    fresh = true;
                    continue;
                }
                Err(e) => return Err(e),
            }
            fresh = false;
            iterations += 1;
            if step <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
        }
    }

    fn refactor_or_restart(&mut self, restarted: &mut bool) -> Result<(), LpError> {
        match self.refactor() {
            Ok(()) => Ok(()),
            Err(LpError::Singular) if !*restarted => {
                *restarted = true;
                self.cold_start();
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    fn finish(&mut self, status: LpStatus, iterations: usize) -> LpSolution {
        self.status = Some(status);
        let x = self.x.clone();
        let value = match status {
            LpStatus::Optimal => self.cost.iter().zip(&x).map(|(c, v)| c * v).sum(),
            LpStatus::Infeasible => f64::INFINITY,
        };
        let active_rows = (0..self.rows.len())
            .filter(|&r| {
                let act = self.row_activity(r, &x);
                let KRow { lo, hi, .. } = self.rows[r];
                (act - lo).abs() <= FEAS_TOL || (act - hi).abs() <= FEAS_TOL
            })
            .collect();
        LpSolution {
            status,
            x,
            value,
            active_rows,
            iterations,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn tol(bound: f64) -> f64 {
    FEAS_TOL * bound.abs().max(1.0)
}
