//! Decoders: plain and adaptive LP decoding, cutting planes, guessing and
//! branch-and-bound improvements, the fractional distance, a neighborhood
//! search heuristic and message-passing baselines.
//!
//! Every decoder minimizes `λᵀx` over (a relaxation of) the code, so a
//! positive `λ_j` favors bit `j = 0`.

mod bnb;
mod cutting;
mod fda;
mod guess;
mod lp;
mod message;
mod neighborhood;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use bnb::{branch_and_bound_ml, ocdd, ovdd, BranchAndBoundConfig};
pub use cutting::{cutting_plane_decode, CutSearcher, CuttingPlaneConfig};
pub use fda::{fda, fractional_distance};
pub use guess::{facet_guessing, rbgd, GuessMode};
pub use lp::{alpd, blpd, malpd};
pub use message::{min_sum, sum_product};
pub use neighborhood::neighborhood_search;

use crate::gf2::LinearCode;
use crate::lp::{is_integral, round_bits, LpError};
use crate::relax::{FormulationKind, RelaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    /// Integral LP optimum over a relaxation of the code: the ML codeword.
    MLCertified,
    /// A codeword without an optimality proof.
    CodewordFound,
    /// The decoder ended on a pseudocodeword with fractional entries.
    FractionalFailure,
    /// The decoder ended on an integral word that violates a parity check
    /// (message passing without convergence, or an exhausted cut search).
    NotConverged,
    /// The LP solver gave up.
    SolverError,
}

impl DecodeStatus {
    pub fn name(self) -> &'static str {
        match self {
            Self::MLCertified => "ml_certified",
            Self::CodewordFound => "codeword_found",
            Self::FractionalFailure => "fractional_failure",
            Self::NotConverged => "not_converged",
            Self::SolverError => "solver_error",
        }
    }

    pub fn has_codeword(self) -> bool {
        matches!(self, Self::MLCertified | Self::CodewordFound)
    }
}

impl fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DecodeStats {
    pub lp_solves: usize,
    pub cuts_added: usize,
    /// Decoder-level rounds: cut rounds, message-passing sweeps or
    /// local-search moves.
    pub iterations: usize,
    pub simplex_pivots: usize,
    pub branch_nodes: usize,
    /// Forbidden-set rows in the final LP of the adaptive decoders.
    pub fs_rows: usize,
    /// Largest number of LP rows held at any point.
    pub max_rows: usize,
    pub node_cap_hit: bool,
    /// LP value after every solve of an iterative decoder.
    pub objective_trace: Vec<f64>,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Codeword, pseudocodeword or hard decision, one entry per bit.
    pub point: Vec<f64>,
    /// `λᵀ point`, or the LP value for LP decoders.
    pub value: f64,
    pub stats: DecodeStats,
    /// Solver message when `status` is `SolverError`.
    pub error: Option<String>,
}

impl DecodeResult {
    /// Classifies an LP point: integral codewords are certified when
    /// `certified` holds and merely found otherwise.
    pub(crate) fn from_point(code: &LinearCode, x: Vec<f64>, value: f64, certified: bool, stats: DecodeStats) -> Self {
        let status = if is_integral(&x) {
            if code.is_codeword(&round_bits(&x)) {
                if certified {
                    DecodeStatus::MLCertified
                } else {
                    DecodeStatus::CodewordFound
                }
            } else {
                DecodeStatus::NotConverged
            }
        } else {
            DecodeStatus::FractionalFailure
        };
        let point = if is_integral(&x) {
            round_bits(&x).into_iter().map(f64::from).collect()
        } else {
            x
        };
        Self {
            status,
            point,
            value,
            stats,
            error: None,
        }
    }

    pub(crate) fn solver_error(err: LpError, stats: DecodeStats) -> Self {
        Self {
            status: DecodeStatus::SolverError,
            point: Vec::new(),
            value: f64::NAN,
            stats,
            error: Some(err.to_string()),
        }
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.stats.wall_time = start.elapsed();
        self
    }

    /// The decoded codeword, if the decoder produced one.
    pub fn codeword(&self) -> Option<Vec<u8>> {
        self.status.has_codeword().then(|| round_bits(&self.point))
    }

    /// Frame error against the transmitted word: anything other than a
    /// codeword equal to `sent` counts.
    pub fn is_frame_error(&self, sent: &[u8]) -> bool {
        self.codeword().is_none_or(|c| c != sent)
    }

    /// Positions where the output disagrees with `sent`; fractional entries
    /// are rounded at ½.
    pub fn bit_errors(&self, sent: &[u8]) -> usize {
        if self.point.len() != sent.len() {
            return sent.len();
        }
        round_bits(&self.point).iter().zip(sent).filter(|(a, b)| a != b).count()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecodeError {
    #[error("LLR vector has length {found}, code length is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite LLR at position {0}")]
    NonFiniteLlr(usize),
    #[error("invalid decoder parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown decoder {0:?}")]
    UnknownDecoder(String),
    #[error(transparent)]
    Relax(#[from] RelaxError),
    #[error("LP solver failed: {0}")]
    Solver(#[from] LpError),
}

pub(crate) fn check_llr(code: &LinearCode, llr: &[f64]) -> Result<(), DecodeError> {
    if llr.len() != code.n() {
        return Err(DecodeError::LengthMismatch {
            expected: code.n(),
            found: llr.len(),
        });
    }
    if let Some(j) = llr.iter().position(|v| !v.is_finite()) {
        return Err(DecodeError::NonFiniteLlr(j));
    }
    Ok(())
}

pub(crate) fn objective(llr: &[f64], x: &[f64]) -> f64 {
    llr.iter().zip(x).map(|(l, v)| l * v).sum()
}

/// Default cut-round cap of the cutting-plane decoders.
pub const DEFAULT_MAX_ROUNDS: usize = 100;
/// Default sweep cap of the message-passing decoders.
pub const DEFAULT_MAX_ITER: usize = 50;
/// Default node cap of branch and bound.
pub const DEFAULT_NODE_CAP: usize = 100_000;
/// Default size of the branching set of the ordered depth decoders.
pub const DEFAULT_DEPTH: usize = 8;
/// Default subset size of constant-depth decoding.
pub const DEFAULT_SUBSET: usize = 2;

/// A configured decoder, as named on the command line and in simulation
/// configs.
///
/// | text | decoder |
/// |---|---|
/// | `blpd`, `blpd:<formulation>` | LP decoding (default formulation `blpd2`) |
/// | `alpd`, `malpd` | adaptive LP decoding and its row-dropping variant |
/// | `cp` | cutting planes over `blpd2`: matrix adaptation, then cycle search |
/// | `sad` | cutting planes over the `ipd` relaxation with matrix adaptation |
/// | `bb`, `bb:nocuts`, `bb:ipd` | branch and bound (root cuts as `cp` / none / as `sad`) |
/// | `ovdd[:g]`, `ocdd[:g,m]` | ordered variable / constant depth decoding |
/// | `rbgd[:c]` | randomized bit guessing with `⌈c log₂ n⌉` bits |
/// | `fg`, `fg:random:<K>` | exhaustive or random facet guessing |
/// | `ns[:1\|2]` | neighborhood search with 1- or 2-position moves |
/// | `minsum[:iters]`, `spa[:iters]` | min-sum and sum-product |
#[derive(Debug, Clone, PartialEq)]
pub enum Decoder {
    Blpd(FormulationKind),
    Alpd,
    Malpd,
    CuttingPlane(CuttingPlaneConfig),
    BranchAndBound(BranchAndBoundConfig),
    Ovdd { g: usize },
    Ocdd { g: usize, m: usize },
    Rbgd { c: f64 },
    FacetGuessing(GuessMode),
    NeighborhoodSearch { depth: usize },
    MinSum { max_iter: usize },
    SumProduct { max_iter: usize },
}

impl Decoder {
    /// Decodes one frame. `seed` drives the randomized decoders.
    pub fn decode(&self, code: &LinearCode, llr: &[f64], seed: u64) -> Result<DecodeResult, DecodeError> {
        match self {
            Decoder::Blpd(kind) => blpd(code, llr, *kind),
            Decoder::Alpd => alpd(code, llr),
            Decoder::Malpd => malpd(code, llr),
            Decoder::CuttingPlane(cfg) => cutting_plane_decode(code, llr, cfg, seed),
            Decoder::BranchAndBound(cfg) => branch_and_bound_ml(code, llr, cfg, seed),
            Decoder::Ovdd { g } => ovdd(code, llr, *g),
            Decoder::Ocdd { g, m } => ocdd(code, llr, *g, *m),
            Decoder::Rbgd { c } => rbgd(code, llr, *c, seed),
            Decoder::FacetGuessing(mode) => facet_guessing(code, llr, *mode, seed),
            Decoder::NeighborhoodSearch { depth } => neighborhood_search(code, llr, *depth),
            Decoder::MinSum { max_iter } => min_sum(code, llr, *max_iter),
            Decoder::SumProduct { max_iter } => sum_product(code, llr, *max_iter),
        }
    }

    /// True for decoders whose integral outputs are ML certificates.
    pub fn certifies(&self) -> bool {
        matches!(
            self,
            Decoder::Blpd(_) | Decoder::Alpd | Decoder::Malpd | Decoder::CuttingPlane(_) | Decoder::BranchAndBound(_)
        )
    }
}

impl fmt::Display for Decoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoder::Blpd(FormulationKind::Blpd2) => write!(f, "blpd"),
            Decoder::Blpd(k) => write!(f, "blpd:{k}"),
            Decoder::Alpd => write!(f, "alpd"),
            Decoder::Malpd => write!(f, "malpd"),
            Decoder::CuttingPlane(cfg) if *cfg == CuttingPlaneConfig::sad() => write!(f, "sad"),
            Decoder::CuttingPlane(_) => write!(f, "cp"),
            Decoder::BranchAndBound(cfg) if *cfg == BranchAndBoundConfig::plain() => write!(f, "bb:nocuts"),
            Decoder::BranchAndBound(cfg) if *cfg == BranchAndBoundConfig::over_ipd() => write!(f, "bb:ipd"),
            Decoder::BranchAndBound(_) => write!(f, "bb"),
            Decoder::Ovdd { g } => write!(f, "ovdd:{g}"),
            Decoder::Ocdd { g, m } => write!(f, "ocdd:{g},{m}"),
            Decoder::Rbgd { c } => write!(f, "rbgd:{c}"),
            Decoder::FacetGuessing(GuessMode::Exhaustive) => write!(f, "fg"),
            Decoder::FacetGuessing(GuessMode::Random(k)) => write!(f, "fg:random:{k}"),
            Decoder::NeighborhoodSearch { depth } => write!(f, "ns:{depth}"),
            Decoder::MinSum { max_iter } => write!(f, "minsum:{max_iter}"),
            Decoder::SumProduct { max_iter } => write!(f, "spa:{max_iter}"),
        }
    }
}

impl FromStr for Decoder {
    type Err = DecodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, arg) = s.split_once(':').map_or((s, None), |(a, b)| (a, Some(b)));
        let bad = || DecodeError::InvalidParameter(format!("cannot parse decoder {s:?}"));
        let num = |a: &str| a.trim().parse::<usize>().map_err(|_| bad());
        let positive = |v: usize| if v == 0 { Err(bad()) } else { Ok(v) };
        let d = match (name, arg) {
            ("blpd", None) => Decoder::Blpd(FormulationKind::Blpd2),
            ("blpd", Some(k)) => Decoder::Blpd(k.parse()?),
            ("alpd", None) => Decoder::Alpd,
            ("malpd", None) => Decoder::Malpd,
            ("cp", None) => Decoder::CuttingPlane(CuttingPlaneConfig::default()),
            ("sad", None) => Decoder::CuttingPlane(CuttingPlaneConfig::sad()),
            ("bb", None) => Decoder::BranchAndBound(BranchAndBoundConfig::default()),
            ("bb", Some("nocuts")) => Decoder::BranchAndBound(BranchAndBoundConfig::plain()),
            ("bb", Some("ipd")) => Decoder::BranchAndBound(BranchAndBoundConfig::over_ipd()),
            ("ovdd", None) => Decoder::Ovdd { g: DEFAULT_DEPTH },
            ("ovdd", Some(g)) => Decoder::Ovdd { g: positive(num(g)?)? },
            ("ocdd", None) => Decoder::Ocdd {
                g: DEFAULT_DEPTH,
                m: DEFAULT_SUBSET,
            },
            ("ocdd", Some(a)) => {
                let (g, m) = a.split_once(',').ok_or_else(bad)?;
                let (g, m) = (positive(num(g)?)?, positive(num(m)?)?);
                if m > g {
                    return Err(bad());
                }
                Decoder::Ocdd { g, m }
            }
            ("rbgd", None) => Decoder::Rbgd { c: 1.0 },
            ("rbgd", Some(c)) => {
                let c: f64 = c.parse().map_err(|_| bad())?;
                if !(c >= 1.0 && c.is_finite()) {
                    return Err(bad());
                }
                Decoder::Rbgd { c }
            }
            ("fg", None) | ("fg", Some("exhaustive")) => Decoder::FacetGuessing(GuessMode::Exhaustive),
            ("fg", Some(a)) => {
                let k = a.strip_prefix("random:").ok_or_else(bad)?;
                Decoder::FacetGuessing(GuessMode::Random(positive(num(k)?)?))
            }
            ("ns", None) => Decoder::NeighborhoodSearch { depth: 1 },
            ("ns", Some(d)) => match num(d)? {
                depth @ (1 | 2) => Decoder::NeighborhoodSearch { depth },
                _ => return Err(bad()),
            },
            ("minsum", None) => Decoder::MinSum {
                max_iter: DEFAULT_MAX_ITER,
            },
            ("minsum", Some(i)) => Decoder::MinSum {
                max_iter: positive(num(i)?)?,
            },
            ("spa", None) => Decoder::SumProduct {
                max_iter: DEFAULT_MAX_ITER,
            },
            ("spa", Some(i)) => Decoder::SumProduct {
                max_iter: positive(num(i)?)?,
            },
            _ => return Err(DecodeError::UnknownDecoder(s.to_string())),
        };
        Ok(d)
    }
}
