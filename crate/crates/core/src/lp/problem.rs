use std::fmt;

use super::{LpError, FEAS_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

/// A sparse constraint `aᵀx (≤|≥|=) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Row {
    /// Builds a row with coefficients sorted by variable index.
    pub fn new(mut coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> Self {
        coeffs.sort_by_key(|&(j, _)| j);
        Self { coeffs, sense, rhs }
    }

    pub fn le(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self::new(coeffs, Sense::Le, rhs)
    }

    pub fn ge(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self::new(coeffs, Sense::Ge, rhs)
    }

    pub fn eq(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Self::new(coeffs, Sense::Eq, rhs)
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let act = self.activity(x);
        match self.sense {
            Sense::Le => (act - self.rhs).max(0.0),
            Sense::Ge => (self.rhs - act).max(0.0),
            Sense::Eq => (act - self.rhs).abs(),
        }
    }

    pub fn is_tight(&self, x: &[f64]) -> bool {
        (self.activity(x) - self.rhs).abs() <= FEAS_TOL
    }

    pub(crate) fn bounds(&self) -> (f64, f64) {
        match self.sense {
            Sense::Le => (f64::NEG_INFINITY, self.rhs),
            Sense::Ge => (self.rhs, f64::INFINITY),
            Sense::Eq => (self.rhs, self.rhs),
        }
    }

    pub(crate) fn validate(&self, num_vars: usize) -> Result<(), LpError> {
        if !self.rhs.is_finite() {
            return Err(LpError::InvalidProblem(format!("non-finite right-hand side {}", self.rhs)));
        }
        for (t, &(j, a)) in self.coeffs.iter().enumerate() {
            if j >= num_vars {
                return Err(LpError::InvalidProblem(format!(
                    "coefficient index {j} out of range for {num_vars} variables"
                )));
            }
            if !a.is_finite() {
                return Err(LpError::InvalidProblem(format!("non-finite coefficient on x{j}")));
            }
            if t > 0 && self.coeffs[t - 1].0 >= j {
                return Err(LpError::InvalidProblem(format!(
                    "duplicate or unsorted index x{j} in a row"
                )));
            }
        }
        Ok(())
    }
}

/// `min cᵀx` subject to sparse rows and finite per-variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LpProblem {
    /// `num_vars` variables in the unit box with zero objective.
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
            lower: vec![0.0; num_vars],
            upper: vec![1.0; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, row: Row) -> usize {
        self.rows.push(row);
        self.rows.len() - 1
    }

    pub fn set_bounds(&mut self, j: usize, lower: f64, upper: f64) {
        self.lower[j] = lower;
        self.upper[j] = upper;
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest row or bound violation at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let bounds = (0..self.num_vars())
            .map(|j| (self.lower[j] - x[j]).max(x[j] - self.upper[j]).max(0.0))
            .fold(0.0, f64::max);
        self.rows.iter().map(|r| r.violation(x)).fold(bounds, f64::max)
    }

    pub fn is_feasible(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.num_vars() && self.max_violation(x) <= tol
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::InvalidProblem("bound vectors do not match objective length".into()));
        }
        for j in 0..n {
            let (l, u) = (self.lower[j], self.upper[j]);
            if !l.is_finite() || !u.is_finite() || l > u {
                return Err(LpError::InvalidProblem(format!("bad bounds [{l}, {u}] on x{j}")));
            }
            if !self.objective[j].is_finite() {
                return Err(LpError::InvalidProblem(format!("non-finite cost on x{j}")));
            }
        }
        self.rows.iter().try_for_each(|r| r.validate(n))
    }
}

/// Line-oriented dump:
///
/// ```text
/// lp vars=<n> rows=<m>
/// min <c_0> <c_1> ...
/// bound <j> <lower> <upper>      (one line per variable)
/// row <i> <sense> <rhs> : <j>:<a> <j>:<a> ...
/// ```
impl fmt::Display for LpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lp vars={} rows={}", self.num_vars(), self.num_rows())?;
        write!(f, "min")?;
        for c in &self.objective {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for j in 0..self.num_vars() {
            writeln!(f, "bound {j} {} {}", self.lower[j], self.upper[j])?;
        }
        for (i, r) in self.rows.iter().enumerate() {
            write!(f, "row {i} {} {} :", r.sense.symbol(), r.rhs)?;
            for (j, a) in &r.coeffs {
                write!(f, " {j}:{a}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_is_deterministic() {
        let mut p = LpProblem::new(2);
        p.objective = vec![-1.0, 0.5];
        p.add_row(Row::le(vec![(1, 1.0), (0, 2.0)], 1.5));
        let text = p.to_string();
        assert_eq!(
            text,
            "lp vars=2 rows=1\nmin -1 0.5\nbound 0 0 1\nbound 1 0 1\nrow 0 <= 1.5 : 0:2 1:1\n"
        );
        assert_eq!(text, p.clone().to_string());
    }

    #[test]
    fn validation_catches_bad_input() {
        let mut p = LpProblem::new(2);
        p.add_row(Row::le(vec![(0, 1.0), (0, 1.0)], 1.0));
        assert!(p.validate().is_err());
        let mut p = LpProblem::new(2);
        p.add_row(Row::le(vec![(2, 1.0)], 1.0));
        assert!(p.validate().is_err());
        let mut p = LpProblem::new(1);
        p.upper[0] = f64::INFINITY;
        assert!(p.validate().is_err());
        let mut p = LpProblem::new(1);
        p.set_bounds(0, 1.0, 0.0);
        assert!(p.validate().is_err());
    }

    #[test]
    fn violations() {
        let r = Row::ge(vec![(0, 1.0), (1, 1.0)], 1.0);
        assert_eq!(r.violation(&[0.25, 0.25]), 0.5);
        assert_eq!(r.violation(&[1.0, 1.0]), 0.0);
        assert!(r.is_tight(&[0.5, 0.5]));
    }
}
