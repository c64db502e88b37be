//! Convolutional and turbo-like codes: finite state machines, trellises,
//! Viterbi, the flow LP over two coupled trellises and its Lagrangian
//! relaxation.

mod fsm;
mod graph;
mod turbo;

pub use fsm::Fsm;
pub use graph::{trellis_flow_lp, viterbi, Trellis, TrellisEdge};
pub use turbo::{lagrangian_turbo_decode, tclpd_decode, LagrangianResult, TclpdFormulation, TurboCode};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TrellisError {
    #[error("FSM line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no transition for state {state}, input {input}")]
    MissingTransition { state: usize, input: u8 },
    #[error("no path of length {0} returns to the terminal state")]
    NoTerminatingPath(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("interleaver is not a permutation of 0..{0}")]
    InvalidInterleaver(usize),
    #[error("block length must be at least 1")]
    EmptyBlock,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
