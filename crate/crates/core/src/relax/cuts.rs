use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::BinaryMatrix;
use crate::lp::INTEGRALITY_TOL;

use super::fs::{most_violated_fs_cut, FsInequality};
use super::RelaxError;

fn is_fractional(v: f64) -> bool {
    v.abs() > INTEGRALITY_TOL && (v - 1.0).abs() > INTEGRALITY_TOL
}

/// Support of the GF(2) sum of the selected rows of `h`.
pub fn rpc_from_rows(h: &BinaryMatrix, rows: &[usize]) -> Result<Vec<usize>, RelaxError> {
    if rows.is_empty() {
        return Err(RelaxError::EmptyRpc);
    }
    let words = h.row_words(0).len();
    let mut acc = vec![0u64; words];
    for &i in rows {
        if i >= h.rows() {
            return Err(RelaxError::InvalidInequality(format!("row {i} out of range")));
        }
        for (a, w) in acc.iter_mut().zip(h.row_words(i)) {
            *a ^= w;
        }
    }
    let support = crate::gf2::support_of_words(&acc);
    if support.is_empty() {
        Err(RelaxError::EmptyRpc)
    } else {
        Ok(support)
    }
}

/// Most violated forbidden-set inequality of every row of `h`.
pub fn row_fs_cuts(h: &BinaryMatrix, x: &[f64]) -> Vec<FsInequality> {
    (0..h.rows())
        .filter_map(|i| most_violated_fs_cut(&h.row_support(i), x))
        .collect()
}

/// Searches for cuts from redundant parity checks found as cycles of the
/// Tanner graph restricted to fractional bits and the checks they touch.
///
/// Each walk starts at a random fractional bit, never steps straight back,
/// and stops at the first node it revisits; the checks on the closed loop are
/// summed. `max_tries` defaults to ten walks per fractional bit.
pub fn rpc_cycle_cut_search(h: &BinaryMatrix, x: &[f64], seed: u64, max_tries: Option<usize>) -> Vec<FsInequality> {
    let n = h.cols();
    let frac: Vec<usize> = (0..n).filter(|&j| is_fractional(x[j])).collect();
    if frac.is_empty() {
        return Vec::new();
    }
    // pruned adjacency; nodes 0..n are bits, n.. are checks
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + h.rows()];
    for i in 0..h.rows() {
        for j in h.row_support(i) {
            if is_fractional(x[j]) {
                adj[j].push(n + i);
                adj[n + i].push(j);
            }
        }
    }
    let tries = max_tries.unwrap_or(10 * frac.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut cuts = Vec::new();
    let mut visited_at = vec![usize::MAX; adj.len()];
    for _ in 0..tries {
        let start = *frac.choose(&mut rng).expect("nonempty");
        let mut path = vec![start];
        visited_at.fill(usize::MAX);
        visited_at[start] = 0;
        let cycle_from = loop {
            let cur = *path.last().unwrap();
            let prev = (path.len() >= 2).then(|| path[path.len() - 2]);
            let options: Vec<usize> = adj[cur].iter().copied().filter(|&v| Some(v) != prev).collect();
            let Some(&next) = options.choose(&mut rng) else {
                break None;
            };
            if visited_at[next] != usize::MAX {
                break Some(visited_at[next]);
            }
            visited_at[next] = path.len();
            path.push(next);
        };
        let Some(from) = cycle_from else { continue };
        let checks: Vec<usize> = path[from..].iter().filter(|&&v| v >= n).map(|&v| v - n).collect();
        let Ok(support) = rpc_from_rows(h, &checks) else { continue };
        if let Some(cut) = most_violated_fs_cut(&support, x) {
            if seen.insert(cut.clone()) {
                cuts.push(cut);
            }
        }
    }
    cuts
}

/// Brings `h` to a form with unit columns at fractional positions (most
/// fractional first) and separates over every row of the result.
///
/// Without fractional bits the rows of `h` itself are tried, which still
/// cuts off integral points that are not codewords.
pub fn matrix_adaptation_cut_search(h: &BinaryMatrix, x: &[f64]) -> Vec<FsInequality> {
    let mut order: Vec<usize> = (0..h.cols()).filter(|&j| is_fractional(x[j])).collect();
    order.sort_by(|&a, &b| (x[a] - 0.5).abs().total_cmp(&(x[b] - 0.5).abs()).then(a.cmp(&b)));
    let mut adapted = h.clone();
    adapted.rref_in_place_ordered(order);
    let mut seen = BTreeSet::new();
    (0..adapted.rows())
        .filter_map(|i| {
            let s = adapted.row_support(i);
            if s.is_empty() {
                None
            } else {
                most_violated_fs_cut(&s, x)
            }
        })
        .filter(|c| seen.insert(c.clone()))
        .collect()
}
