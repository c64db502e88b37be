use std::time::Instant;

use crate::channel::hard_decision;
use crate::gf2::{BinaryMatrix, LinearCode};

use super::{check_llr, objective, DecodeError, DecodeResult, DecodeStats, DecodeStatus};

const IMPROVE_TOL: f64 = 1e-12;

/// Local search over codewords around the hard decision.
///
/// The error pattern `e` must reproduce the syndrome of the hard decision
/// `ȳ`. It starts as the solution supported on an information set made of
/// the least reliable positions (pivoting past dependent columns) and is
/// improved by steepest descent: a move flips one nonbasic position (or two
/// when `depth == 2`) together with the basic positions that restore the
/// syndrome, after which each flipped nonbasic position is exchanged with
/// the most reliable basic position in its column. The output
/// `ȳ ⊕ e` is always a codeword and its cost never exceeds the start.
pub fn neighborhood_search(code: &LinearCode, llr: &[f64], depth: usize) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    if !(1..=2).contains(&depth) {
        return Err(DecodeError::InvalidParameter(format!("search depth {depth} must be 1 or 2")));
    }
    let n = code.n();
    let h = code.parity_check();
    let y = hard_decision(llr);
    let s = h.mul_vec(&y).expect("length checked");
    let w: Vec<f64> = llr.iter().map(|l| l.abs()).collect();

    let mut r = BinaryMatrix::zeros(h.rows(), n + 1).expect("nonzero size");
    for i in 0..h.rows() {
        for j in h.row_support(i) {
            r.set(i, j, true);
        }
        r.set(i, n, s[i] == 1);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
    let mut pivot = r.rref_in_place_ordered(order);
    let mut e = vec![0u8; n];
    for (row, &p) in pivot.iter().enumerate() {
        e[p] = u8::from(r.get(row, n));
    }
    let mut is_basic = vec![false; n];
    for &p in &pivot {
        is_basic[p] = true;
    }

    let gain = |e: &[u8], j: usize| if e[j] == 0 { w[j] } else { -w[j] };
    let mut stats = DecodeStats::default();
    loop {
        let nonbasic: Vec<usize> = (0..n).filter(|&j| !is_basic[j]).collect();
        let cols: Vec<Vec<usize>> = nonbasic.iter().map(|&j| column(&r, pivot.len(), j)).collect();
        let single: Vec<f64> = nonbasic
            .iter()
            .zip(&cols)
            .map(|(&j, c)| gain(&e, j) + c.iter().map(|&row| gain(&e, pivot[row])).sum::<f64>())
            .collect();
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut offer = |delta: f64, moves: Vec<usize>| {
            if delta < -IMPROVE_TOL && best.as_ref().is_none_or(|(d, _)| delta < *d) {
                best = Some((delta, moves));
            }
        };
        for a in 0..nonbasic.len() {
            offer(single[a], vec![a]);
        }
        if depth == 2 {
            for a in 0..nonbasic.len() {
                for b in a + 1..nonbasic.len() {
                    let shared: f64 = cols[a]
                        .iter()
                        .filter(|row| cols[b].binary_search(row).is_ok())
                        .map(|&row| gain(&e, pivot[row]))
                        .sum();
                    offer(single[a] + single[b] - 2.0 * shared, vec![a, b]);
                }
            }
        }
        let Some((_, moves)) = best else { break };
        stats.iterations += 1;
        for &a in &moves {
            let j = nonbasic[a];
            e[j] ^= 1;
            for &row in &cols[a] {
                e[pivot[row]] ^= 1;
            }
        }
        for &a in &moves {
            let j = nonbasic[a];
            let col = column(&r, pivot.len(), j);
            let Some(&row) = col.iter().max_by(|&&x, &&y| w[pivot[x]].total_cmp(&w[pivot[y]]).then(y.cmp(&x))) else {
                continue;
            };
            for &other in &col {
                if other != row {
                    r.xor_row_into(row, other);
                }
            }
            is_basic[pivot[row]] = false;
            is_basic[j] = true;
            pivot[row] = j;
        }
    }

    let x: Vec<u8> = y.iter().zip(&e).map(|(a, b)| a ^ b).collect();
    debug_assert!(code.is_codeword(&x));
    let point: Vec<f64> = x.iter().map(|&b| f64::from(b)).collect();
    let value = objective(llr, &point);
    Ok(DecodeResult {
        status: DecodeStatus::CodewordFound,
        point,
        value,
        stats,
        error: None,
    }
    .timed(start))
}

/// Rows among the first `rank` whose entry in column `j` is one.
fn column(r: &BinaryMatrix, rank: usize, j: usize) -> Vec<usize> {
    (0..rank).filter(|&row| r.get(row, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::hamming_code;

    #[test]
    fn output_is_codeword_no_worse_than_start() {
        let code = hamming_code(3).unwrap();
        let llr = [-0.9, 0.4, 0.3, 0.8, -0.2, 1.1, 0.5];
        for depth in [1, 2] {
            let r = neighborhood_search(&code, &llr, depth).unwrap();
            let word = r.codeword().unwrap();
            assert!(code.is_codeword(&word));
            let (_, ml) = code.ml_bruteforce(&llr).unwrap();
            assert!(r.value >= ml - 1e-12);
        }
    }

    #[test]
    fn codeword_hard_decision_is_kept() {
        let code = hamming_code(3).unwrap();
        let r = neighborhood_search(&code, &[2.0; 7], 1).unwrap();
        assert_eq!(r.point, vec![0.0; 7]);
        assert_eq!(r.stats.iterations, 0);
    }
}
