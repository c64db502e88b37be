use std::time::Instant;

use crate::gf2::LinearCode;

use super::{check_llr, objective, DecodeError, DecodeResult, DecodeStats, DecodeStatus};

/// Messages are clipped to this magnitude.
const CLIP: f64 = 50.0;

#[derive(Clone, Copy)]
enum CheckRule {
    MinSum,
    SumProduct,
}

impl CheckRule {
    /// Writes into `out[k]` the check-to-bit message computed from every
    /// incoming message except `inc[k]`.
    fn apply(self, inc: &[f64], out: &mut [f64]) {
        match self {
            CheckRule::MinSum => {
                let mut sign = 1.0;
                let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
                for (k, &m) in inc.iter().enumerate() {
                    if m < 0.0 {
                        sign = -sign;
                    }
                    let a = m.abs();
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        arg = k;
                    } else if a < min2 {
                        min2 = a;
                    }
                }
                for (k, o) in out.iter_mut().enumerate() {
                    let own = if inc[k] < 0.0 { -1.0 } else { 1.0 };
                    let mag = if k == arg { min2 } else { min1 };
                    *o = (sign * own * mag).clamp(-CLIP, CLIP);
                }
            }
            CheckRule::SumProduct => {
                let t: Vec<f64> = inc.iter().map(|m| (m / 2.0).tanh()).collect();
                // prefix/suffix products avoid dividing by a zero tanh
                let mut prefix = vec![1.0; t.len() + 1];
                for k in 0..t.len() {
                    prefix[k + 1] = prefix[k] * t[k];
                }
                let mut suffix = 1.0;
                for k in (0..t.len()).rev() {
                    let p = (prefix[k] * suffix).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
                    out[k] = (2.0 * p.atanh()).clamp(-CLIP, CLIP);
                    suffix *= t[k];
                }
            }
        }
    }
}

fn flooding(code: &LinearCode, llr: &[f64], max_iter: usize, rule: CheckRule) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    if max_iter == 0 {
        return Err(DecodeError::InvalidParameter("max_iter must be positive".into()));
    }
    let n = code.n();
    let checks = code.checks();
    let mut offsets = Vec::with_capacity(checks.len() + 1);
    offsets.push(0);
    for c in checks {
        offsets.push(offsets.last().unwrap() + c.len());
    }
    let edges = *offsets.last().unwrap();
    let edge_bit: Vec<usize> = checks.iter().flatten().copied().collect();
    let clipped: Vec<f64> = llr.iter().map(|l| l.clamp(-CLIP, CLIP)).collect();
    let mut v2c: Vec<f64> = edge_bit.iter().map(|&j| clipped[j]).collect();
    let mut c2v = vec![0.0; edges];
    let mut posterior = clipped.clone();
    let mut bits = vec![0u8; n];
    let mut stats = DecodeStats::default();
    for it in 1..=max_iter {
        stats.iterations = it;
        for i in 0..checks.len() {
            let (a, b) = (offsets[i], offsets[i + 1]);
            rule.apply(&v2c[a..b], &mut c2v[a..b]);
        }
        posterior.copy_from_slice(&clipped);
        for (e, &j) in edge_bit.iter().enumerate() {
            posterior[j] += c2v[e];
        }
        for (e, &j) in edge_bit.iter().enumerate() {
            v2c[e] = (posterior[j] - c2v[e]).clamp(-CLIP, CLIP);
        }
        for (b, &l) in bits.iter_mut().zip(&posterior) {
            *b = u8::from(l < 0.0);
        }
        if code.is_codeword(&bits) {
            break;
        }
    }
    let point: Vec<f64> = bits.iter().map(|&b| f64::from(b)).collect();
    let status = if code.is_codeword(&bits) {
        DecodeStatus::CodewordFound
    } else {
        DecodeStatus::NotConverged
    };
    Ok(DecodeResult {
        status,
        value: objective(llr, &point),
        point,
        stats,
        error: None,
    }
    .timed(start))
}

/// Flooding min-sum decoding; stops as soon as the hard decision is a
/// codeword.
pub fn min_sum(code: &LinearCode, llr: &[f64], max_iter: usize) -> Result<DecodeResult, DecodeError> {
    flooding(code, llr, max_iter, CheckRule::MinSum)
}

/// Flooding sum-product decoding with messages clipped to ±50.
pub fn sum_product(code: &LinearCode, llr: &[f64], max_iter: usize) -> Result<DecodeResult, DecodeError> {
    flooding(code, llr, max_iter, CheckRule::SumProduct)
}
