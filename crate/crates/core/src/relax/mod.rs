//! LP relaxations of binary codes and the cutting-plane machinery that
//! tightens them.

mod cuts;
mod decompose;
mod formulations;
mod fs;

pub use cuts::{matrix_adaptation_cut_search, row_fs_cuts, rpc_cycle_cut_search, rpc_from_rows};
pub use decompose::{decompose_checks, Decomposition};
pub use formulations::{
    build_blpd1, build_blpd2, build_blpd3, build_clpd, build_ipd_relaxation, build_plpd, Formulation,
    FormulationKind, VarRole, MAX_ENUMERATED_DEGREE,
};
pub use fs::{fs_inequalities, most_violated_fs_cut, FsInequality, CUT_TOL};

use crate::gf2::Gf2Error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelaxError {
    #[error("check {check} has degree {degree}, above the enumeration limit {max}")]
    DegreeTooLarge { check: usize, degree: usize, max: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid inequality: {0}")]
    InvalidInequality(String),
    #[error("selected rows sum to the zero vector")]
    EmptyRpc,
    #[error("unknown formulation {0:?}")]
    UnknownFormulation(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}
