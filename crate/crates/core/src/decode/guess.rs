use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::LinearCode;
use crate::lp::{LpError, LpSolution, LpStatus, Simplex, FEAS_TOL};
use crate::relax::{Formulation, FormulationKind};

use super::bnb::{codeword_of, codeword_result, record_solve};
use super::{check_llr, DecodeError, DecodeResult, DecodeStats};

/// Which faces facet guessing tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuessMode {
    /// Every inequality not active at the LP optimum.
    Exhaustive,
    /// A uniform sample of this many such inequalities.
    Random(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Face {
    Row(usize),
    Lower(usize),
    Upper(usize),
}

fn inactive_faces(form: &Formulation, x: &[f64]) -> Vec<Face> {
    let mut faces: Vec<Face> = form
        .lp
        .rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.is_tight(x))
        .map(|(i, _)| Face::Row(i))
        .collect();
    for j in 0..form.lp.num_vars() {
        if x[j] - form.lp.lower[j] > FEAS_TOL {
            faces.push(Face::Lower(j));
        }
        if form.lp.upper[j] - x[j] > FEAS_TOL {
            faces.push(Face::Upper(j));
        }
    }
    faces
}

/// Keeps the lowest-value codeword, breaking ties towards the
/// lexicographically smaller word.
fn keep_best(best: &mut Option<(Vec<u8>, f64)>, bits: Vec<u8>, value: f64) {
    let better = match best {
        None => true,
        Some((b, v)) => value < *v - 1e-9 || (value <= *v + 1e-9 && bits < *b),
    };
    if better {
        *best = Some((bits, value));
    }
}

/// Facet guessing: when the `blpd2` optimum is fractional, re-solves the LP
/// restricted to each face not containing it and keeps the best integral
/// result.
pub fn facet_guessing(code: &LinearCode, llr: &[f64], mode: GuessMode, seed: u64) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    let form = FormulationKind::Blpd2.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<DecodeResult, LpError> {
        let mut root = Simplex::new(&form.lp)?;
        let root_sol = root.solve()?;
        record_solve(stats, &root_sol);
        let root_x = form.project(&root_sol.x);
        if codeword_of(code, &form, &root_sol).is_some() {
            return Ok(DecodeResult::from_point(code, root_x, root_sol.value, true, std::mem::take(stats)));
        }
        let mut faces = inactive_faces(&form, &root_sol.x);
        if let GuessMode::Random(k) = mode {
            if k < faces.len() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut picked = rand::seq::index::sample(&mut rng, faces.len(), k).into_vec();
                picked.sort_unstable();
                faces = picked.into_iter().map(|i| faces[i]).collect();
            }
        }
        let mut best = None;
        for face in faces {
            let mut node = root.clone();
            match face {
                Face::Row(i) => {
                    let rhs = form.lp.rows[i].rhs;
                    node.set_row_bounds(i, rhs, rhs)?;
                }
                Face::Lower(j) => {
                    let l = form.lp.lower[j];
                    node.set_var_bounds(j, l, l)?;
                }
                Face::Upper(j) => {
                    let u = form.lp.upper[j];
                    node.set_var_bounds(j, u, u)?;
                }
            }
            let s = node.solve()?;
            record_solve(stats, &s);
            stats.iterations += 1;
            if s.status == LpStatus::Optimal {
                if let Some(bits) = codeword_of(code, &form, &s) {
                    keep_best(&mut best, bits, s.value);
                }
            }
        }
        Ok(finish(code, best, root_x, &root_sol, stats))
    };
    Ok(match run(&mut stats) {
        Ok(r) => r,
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}

fn finish(
    code: &LinearCode,
    best: Option<(Vec<u8>, f64)>,
    root_x: Vec<f64>,
    root_sol: &LpSolution,
    stats: &mut DecodeStats,
) -> DecodeResult {
    match best {
        Some((bits, value)) => codeword_result(bits, value, false, std::mem::take(stats)),
        None => DecodeResult::from_point(code, root_x, root_sol.value, false, std::mem::take(stats)),
    }
}

/// Randomized bit guessing: fixes `k = ⌈c log₂ n⌉` random bits to each of
/// their `2^k` patterns and keeps the best integral `blpd2` solution.
pub fn rbgd(code: &LinearCode, llr: &[f64], c: f64, seed: u64) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    let n = code.n();
    if !(c > 0.0 && c.is_finite()) {
        return Err(DecodeError::InvalidParameter(format!("guessing constant {c}")));
    }
    let k = ((c * (n as f64).log2()).ceil().max(1.0) as usize).min(n);
    if k > 20 {
        return Err(DecodeError::InvalidParameter(format!("{k} guessed bits need too many LPs")));
    }
    let form = FormulationKind::Blpd2.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<DecodeResult, LpError> {
        let mut root = Simplex::new(&form.lp)?;
        let root_sol = root.solve()?;
        record_solve(stats, &root_sol);
        let root_x = form.project(&root_sol.x);
        if codeword_of(code, &form, &root_sol).is_some() {
            return Ok(DecodeResult::from_point(code, root_x, root_sol.value, true, std::mem::take(stats)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut positions = rand::seq::index::sample(&mut rng, n, k).into_vec();
        positions.sort_unstable();
        let mut best = None;
        for pattern in 0u32..(1 << k) {
            let mut node = root.clone();
            for (t, &j) in positions.iter().enumerate() {
                let b = f64::from((pattern >> t) & 1);
                node.set_var_bounds(form.x_cols()[j], b, b)?;
            }
            let s = node.solve()?;
            record_solve(stats, &s);
            stats.iterations += 1;
            if s.status == LpStatus::Optimal {
                if let Some(bits) = codeword_of(code, &form, &s) {
                    keep_best(&mut best, bits, s.value);
                }
            }
        }
        Ok(finish(code, best, root_x, &root_sol, stats))
    };
    Ok(match run(&mut stats) {
        Ok(r) => r,
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_break_is_lexicographic() {
        let mut best = None;
        keep_best(&mut best, vec![1, 0], 1.0);
        keep_best(&mut best, vec![0, 1], 1.0);
        keep_best(&mut best, vec![1, 1], 1.0 + 1e-12);
        assert_eq!(best, Some((vec![0, 1], 1.0)));
        keep_best(&mut best, vec![1, 1], 0.5);
        assert_eq!(best, Some((vec![1, 1], 0.5)));
    }
}
