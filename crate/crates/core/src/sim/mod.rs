//! Monte Carlo frame-error campaigns.
//!
//! Every frame transmits the all-zero codeword. All channels here are
//! output-symmetric and every decoder treats the code symmetrically, so the
//! error rates are those of a uniformly random codeword. A decoder that
//! favors particular words (for example one that breaks ties towards zero)
//! looks better than it is under this convention.

mod config;
mod record;
mod run;

pub use config::{ChannelKind, CodeSource, SimConfig, DEFAULT_MAX_FRAMES, DEFAULT_MIN_FRAME_ERRORS};
pub use record::{wilson_interval, CsvLog, SimRecord, CSV_HEADER, CSV_SCHEMA_LINE};
pub use run::{run_trial, simulate, simulate_into, FrameOutcome, PointChannel};

use crate::channel::ChannelError;
use crate::gf2::Gf2Error;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("CSV line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Code(#[from] Gf2Error),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}
