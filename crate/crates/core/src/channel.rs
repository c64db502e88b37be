//! Memoryless binary-input channels and their log-likelihood ratios.
//!
//! Randomness comes from [`ChaCha8Rng`], so a seeded transmission is
//! reproducible across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Name of the generator behind every seeded draw, reported by the harness.
pub const RNG_ALGORITHM: &str = "ChaCha8";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("crossover probability {0} must lie strictly between 0 and 0.5")]
    Crossover(f64),
    #[error("noise standard deviation {0} must be positive and finite")]
    Sigma(f64),
    #[error("observation does not match the {0} channel")]
    ObservationKind(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    /// Binary symmetric channel with crossover probability `p`.
    Bsc { p: f64 },
    /// BPSK (`0 → +1`, `1 → −1`) over additive Gaussian noise.
    Biawgn { sigma: f64 },
}

/// What the receiver sees.
#[derive(Debug, Clone, PartialEq)]
pub enum Observation {
    Bits(Vec<u8>),
    Real(Vec<f64>),
}

impl ChannelModel {
    pub fn bsc(p: f64) -> Result<Self, ChannelError> {
        if p > 0.0 && p < 0.5 {
            Ok(Self::Bsc { p })
        } else {
            Err(ChannelError::Crossover(p))
        }
    }

    pub fn biawgn(sigma: f64) -> Result<Self, ChannelError> {
        if sigma > 0.0 && sigma.is_finite() {
            Ok(Self::Biawgn { sigma })
        } else {
            Err(ChannelError::Sigma(sigma))
        }
    }

    /// Gaussian channel at the given `E_b/N_0` (dB) for a code of rate `rate`.
    pub fn biawgn_from_snr_db(snr_db: f64, rate: f64) -> Result<Self, ChannelError> {
        Self::biawgn(snr_db_to_sigma(snr_db, rate))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bsc { .. } => "bsc",
            Self::Biawgn { .. } => "biawgn",
        }
    }

    pub fn transmit<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R) -> Observation {
        match *self {
            Self::Bsc { p } => Observation::Bits(
                x.iter()
                    .map(|&b| if rng.random::<f64>() < p { b ^ 1 } else { b })
                    .collect(),
            ),
            Self::Biawgn { sigma } => Observation::Real(
                x.iter()
                    .map(|&b| {
                        let noise: f64 = rng.sample(StandardNormal);
                        bpsk(b) + sigma * noise
                    })
                    .collect(),
            ),
        }
    }

    pub fn transmit_seeded(&self, x: &[u8], seed: u64) -> Observation {
        self.transmit(x, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn llr(&self, y: &Observation) -> Result<Vec<f64>, ChannelError> {
        match (*self, y) {
            (Self::Bsc { p }, Observation::Bits(bits)) => {
                let mag = ((1.0 - p) / p).ln();
                Ok(bits.iter().map(|&b| if b == 0 { mag } else { -mag }).collect())
            }
            (Self::Biawgn { sigma }, Observation::Real(ys)) => {
                let scale = 2.0 / (sigma * sigma);
                Ok(ys.iter().map(|&v| scale * v).collect())
            }
            _ => Err(ChannelError::ObservationKind(self.name())),
        }
    }

    /// Transmits `x` and returns the resulting LLR vector.
    pub fn sample_llr<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R) -> Vec<f64> {
        let y = self.transmit(x, rng);
        self.llr(&y).expect("observation kind matches its own channel")
    }
}

fn bpsk(b: u8) -> f64 {
    if b == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `σ = sqrt(1 / (2 R 10^{dB/10}))`.
pub fn snr_db_to_sigma(snr_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(snr_db / 10.0))).sqrt()
}

/// Bit 1 where `λ_j < 0`; zero LLRs decide 0.
pub fn hard_decision(llr: &[f64]) -> Vec<u8> {
    llr.iter().map(|&l| u8::from(l < 0.0)).collect()
}

/// Independent generator for one trial, keyed by the master seed, the sweep
/// point and the trial index.
pub fn trial_rng(master_seed: u64, point: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(master_seed ^ splitmix(point.wrapping_add(1))));
    rng.set_stream(trial);
    rng
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
