#![allow(dead_code)]

use lpdecode::gf2::{BinaryMatrix, LinearCode};
use rand::seq::SliceRandom;
use rand::Rng;

/// The 8-bit, 4-check example code with row weight 4.
pub fn fig1_code() -> LinearCode {
    LinearCode::new(
        BinaryMatrix::from_rows(&[
            [1, 1, 1, 0, 1, 0, 0, 0],
            [1, 1, 0, 1, 0, 1, 0, 0],
            [1, 0, 1, 1, 0, 0, 1, 0],
            [0, 1, 1, 1, 0, 0, 0, 1],
        ])
        .unwrap(),
    )
}

/// Random parity-check matrix with `m` rows of weight in `2..=max_weight`.
pub fn random_sparse_code<R: Rng>(rng: &mut R, n: usize, m: usize, max_weight: usize) -> LinearCode {
    let mut cols: Vec<usize> = (0..n).collect();
    let supports: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let w = rng.random_range(2..=max_weight.min(n));
            cols.shuffle(rng);
            let mut s = cols[..w].to_vec();
            s.sort_unstable();
            s
        })
        .collect();
    LinearCode::new(BinaryMatrix::from_supports(n, &supports).unwrap())
}

/// Random code whose Tanner graph is a forest: every new check joins bits
/// from distinct components.
pub fn random_forest_code<R: Rng>(rng: &mut R, n: usize, m: usize) -> LinearCode {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while comp[r] != r {
            r = comp[r];
        }
        comp[v] = r;
        r
    }
    let mut supports = Vec::new();
    for _ in 0..m {
        let want = rng.random_range(2..=4);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut chosen: Vec<usize> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for j in order {
            let r = find(&mut comp, j);
            if !roots.contains(&r) {
                roots.push(r);
                chosen.push(j);
                if chosen.len() == want {
                    break;
                }
            }
        }
        if chosen.len() < 2 {
            break;
        }
        for &r in &roots[1..] {
            comp[r] = roots[0];
        }
        chosen.sort_unstable();
        supports.push(chosen);
    }
    if supports.is_empty() {
        supports.push(vec![0, 1]);
    }
    LinearCode::new(BinaryMatrix::from_supports(n, &supports).unwrap())
}

/// LLRs of the all-zero word after a BI-AWGN channel with noise `sigma`.
pub fn awgn_llr<R: Rng>(rng: &mut R, n: usize, sigma: f64) -> Vec<f64> {
    use rand_distr::{Distribution, Normal};
    let noise = Normal::new(0.0, sigma).unwrap();
    (0..n).map(|_| 2.0 * (1.0 + noise.sample(rng)) / (sigma * sigma)).collect()
}

/// Uniform objective in `[-1, 1]ⁿ`.
pub fn uniform_llr<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Gap between the best and second best codeword cost; ties make the ML
/// word ambiguous.
pub fn ml_margin(code: &LinearCode, llr: &[f64]) -> f64 {
    let mut costs: Vec<f64> = code
        .enumerate_codewords()
        .unwrap()
        .iter()
        .map(|w| w.iter().zip(llr).map(|(&b, l)| f64::from(b) * l).sum())
        .collect();
    costs.sort_by(f64::total_cmp);
    if costs.len() < 2 {
        f64::INFINITY
    } else {
        costs[1] - costs[0]
    }
}

pub fn is_fractional(v: f64) -> bool {
    v > 1e-6 && v < 1.0 - 1e-6
}
