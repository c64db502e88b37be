use std::time::Duration;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{trial_rng, ChannelModel};
use crate::decode::{DecodeStatus, Decoder};
use crate::gf2::LinearCode;

use super::{ChannelKind, CsvLog, SimConfig, SimError, SimRecord};

const FIRST_BATCH: usize = 32;
const MAX_BATCH: usize = 1024;

/// The channel at one sweep point. Zero crossover probability and infinite
/// SNR are noiseless and produce unit LLRs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointChannel {
    Noiseless,
    Noisy(ChannelModel),
}

impl PointChannel {
    pub fn new(kind: ChannelKind, point: f64, rate: f64) -> Result<Self, SimError> {
        Ok(match kind {
            ChannelKind::Bsc if point == 0.0 => PointChannel::Noiseless,
            ChannelKind::Bsc => PointChannel::Noisy(ChannelModel::bsc(point)?),
            ChannelKind::Biawgn if point == f64::INFINITY => PointChannel::Noiseless,
            ChannelKind::Biawgn => PointChannel::Noisy(ChannelModel::biawgn_from_snr_db(point, rate)?),
        })
    }

    /// LLRs of the all-zero word of length `n`.
    pub fn sample_llr<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        match self {
            PointChannel::Noiseless => vec![1.0; n],
            PointChannel::Noisy(ch) => ch.sample_llr(&vec![0; n], rng),
        }
    }
}

/// What one decoder did on one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameOutcome {
    pub frame_error: bool,
    pub bit_errors: usize,
    /// `None` when the decoder returned an error.
    pub status: Option<DecodeStatus>,
    pub lp_solves: usize,
    pub cuts: usize,
    pub iterations: usize,
    pub wall_time: Duration,
}

/// Decodes frame `trial` of sweep point `point_index`. The noise depends
/// only on the master seed, the point index and the trial index, so
/// different decoders see identical frames.
pub fn run_trial(
    code: &LinearCode,
    channel: &PointChannel,
    decoder: &Decoder,
    master_seed: u64,
    point_index: usize,
    trial: usize,
) -> FrameOutcome {
    let mut rng = trial_rng(master_seed, point_index as u64, trial as u64);
    let llr = channel.sample_llr(code.n(), &mut rng);
    let decoder_seed: u64 = rng.random();
    let zero = vec![0u8; code.n()];
    match decoder.decode(code, &llr, decoder_seed) {
        Ok(r) => FrameOutcome {
            frame_error: r.is_frame_error(&zero),
            bit_errors: r.bit_errors(&zero),
            status: Some(r.status),
            lp_solves: r.stats.lp_solves,
            cuts: r.stats.cuts_added,
            iterations: r.stats.iterations,
            wall_time: r.stats.wall_time,
        },
        Err(_) => FrameOutcome {
            frame_error: true,
            bit_errors: code.n(),
            status: None,
            lp_solves: 0,
            cuts: 0,
            iterations: 0,
            wall_time: Duration::ZERO,
        },
    }
}

fn run_point(code: &LinearCode, cfg: &SimConfig, point_index: usize, decoder: &Decoder) -> Result<SimRecord, SimError> {
    let point = cfg.points[point_index];
    let channel = PointChannel::new(cfg.channel, point, code.rate())?;
    let mut rec = SimRecord {
        decoder: decoder.to_string(),
        point,
        frames: 0,
        frame_errors: 0,
        bit_errors: 0,
        ml_certified: 0,
        fractional: 0,
        avg_lp_solves: 0.0,
        avg_cuts: 0.0,
        avg_iterations: 0.0,
        ms_per_frame: 0.0,
    };
    let (mut lp, mut cuts, mut iters, mut time) = (0usize, 0usize, 0usize, Duration::ZERO);
    let mut batch = FIRST_BATCH;
    // Trials run in parallel batches but are folded in trial order, so the
    // stopping frame and every total are independent of the thread count.
    'outer: while rec.frames < cfg.max_frames {
        let end = (rec.frames + batch).min(cfg.max_frames);
        let outcomes: Vec<FrameOutcome> = (rec.frames..end)
            .into_par_iter()
            .map(|t| run_trial(code, &channel, decoder, cfg.seed, point_index, t))
            .collect();
        for o in outcomes {
            rec.frames += 1;
            rec.frame_errors += usize::from(o.frame_error);
            rec.bit_errors += o.bit_errors;
            rec.ml_certified += usize::from(o.status == Some(DecodeStatus::MLCertified));
            rec.fractional += usize::from(o.status == Some(DecodeStatus::FractionalFailure));
            lp += o.lp_solves;
            cuts += o.cuts;
            iters += o.iterations;
            time += o.wall_time;
            if rec.frame_errors >= cfg.min_frame_errors {
                break 'outer;
            }
        }
        batch = (batch * 2).min(MAX_BATCH);
    }
    let f = rec.frames as f64;
    rec.avg_lp_solves = lp as f64 / f;
    rec.avg_cuts = cuts as f64 / f;
    rec.avg_iterations = iters as f64 / f;
    if cfg.timing {
        rec.ms_per_frame = time.as_secs_f64() * 1e3 / f;
    }
    Ok(rec)
}

/// Runs every decoder at every point, point by point.
pub fn simulate(cfg: &SimConfig, code: &LinearCode) -> Result<Vec<SimRecord>, SimError> {
    cfg.validate()?;
    let mut out = Vec::new();
    for p in 0..cfg.points.len() {
        for d in &cfg.decoders {
            out.push(run_point(code, cfg, p, d)?);
        }
    }
    Ok(out)
}

/// Like [`simulate`], but skips `(decoder, point)` pairs already in `log`
/// and appends each new record as soon as it is finished. `progress` sees
/// every new record. Returns the new records.
pub fn simulate_into(
    cfg: &SimConfig,
    code: &LinearCode,
    log: &mut CsvLog,
    mut progress: impl FnMut(&SimRecord),
) -> Result<Vec<SimRecord>, SimError> {
    cfg.validate()?;
    let mut out = Vec::new();
    for p in 0..cfg.points.len() {
        for d in &cfg.decoders {
            if log.contains(&d.to_string(), cfg.points[p]) {
                continue;
            }
            let rec = run_point(code, cfg, p, d)?;
            progress(&rec);
            log.append(rec.clone())?;
            out.push(rec);
        }
    }
    Ok(out)
}
