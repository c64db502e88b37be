//! Linear programming over boxed variables.
//!
//! [`Simplex`] is a bounded dual simplex that keeps its state between calls,
//! so rows can be appended, variables fixed and slack rows dropped with a
//! warm re-solve. Every decoding LP in this crate lives in a finite box, which
//! makes the all-slack basis dual feasible and rules out unboundedness.

mod dense;
mod problem;
mod simplex;

pub use problem::{LpProblem, Row, Sense};
pub use simplex::Simplex;

/// Primal feasibility and optimality tolerance.
pub const FEAS_TOL: f64 = 1e-9;
/// Distance from `{0, 1}` below which an LP value counts as integral.
pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point, or the last basic point when infeasible.
    pub x: Vec<f64>,
    /// Objective value; `+∞` when infeasible.
    pub value: f64,
    /// Rows with `|aᵀx − b| ≤ 1e-9`.
    pub active_rows: Vec<usize>,
    /// Simplex pivots spent in this call.
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// True if every coordinate is within [`INTEGRALITY_TOL`] of 0 or 1.
    pub fn is_integral(&self) -> bool {
        is_integral(&self.x)
    }
}

pub fn is_integral(x: &[f64]) -> bool {
    x.iter().all(|&v| v.abs() <= INTEGRALITY_TOL || (v - 1.0).abs() <= INTEGRALITY_TOL)
}

/// Rounds an integral LP point to bits.
pub fn round_bits(x: &[f64]) -> Vec<u8> {
    x.iter().map(|&v| u8::from(v > 0.5)).collect()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("basis matrix became numerically singular")]
    Singular,
    #[error("iteration limit of {0} pivots reached")]
    IterationLimit(usize),
    #[error("row {0} is part of the current basis and cannot be removed")]
    RowActive(usize),
}

/// One-shot solve from the all-slack basis.
pub fn solve(problem: &LpProblem) -> Result<LpSolution, LpError> {
    Simplex::new(problem)?.solve()
}
