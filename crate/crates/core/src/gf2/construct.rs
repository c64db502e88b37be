use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BinaryMatrix, Gf2Error, LinearCode};

const MAX_SHUFFLES: usize = 1000;

/// Random `(d_v, d_c)`-regular LDPC code from the socket-matching ensemble.
///
/// Variable sockets are shuffled onto check sockets; parallel edges are
/// repaired by swapping the offending socket with a random one, and the whole
/// shuffle is redrawn (at most 1000 times) if repair stalls.
pub fn random_regular_ldpc(n: usize, dv: usize, dc: usize, seed: u64) -> Result<LinearCode, Gf2Error> {
    let infeasible = Gf2Error::InfeasibleDegrees { n, dv, dc };
    if n == 0 || dv == 0 || dc == 0 || !(n * dv).is_multiple_of(dc) || dc > n {
        return Err(infeasible);
    }
    let m = n * dv / dc;
    if dv > m {
        return Err(infeasible);
    }
    let edges = n * dv;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sockets: Vec<usize> = (0..n).flat_map(|j| std::iter::repeat_n(j, dv)).collect();

    for _ in 0..MAX_SHUFFLES {
        sockets.shuffle(&mut rng);
        if repair_parallel_edges(&mut sockets, dc, &mut rng, 20 * edges) {
            let supports: Vec<Vec<usize>> = sockets
                .chunks(dc)
                .map(|c| {
                    let mut s = c.to_vec();
                    s.sort_unstable();
                    s
                })
                .collect();
            let h = BinaryMatrix::from_supports(n, &supports)?;
            return Ok(LinearCode::new(h));
        }
    }
    Err(Gf2Error::ConstructionFailed {
        attempts: MAX_SHUFFLES,
    })
}

fn has_duplicate(chunk: &[usize]) -> bool {
    chunk
        .iter()
        .enumerate()
        .any(|(a, x)| chunk[a + 1..].contains(x))
}

fn repair_parallel_edges(sockets: &mut [usize], dc: usize, rng: &mut ChaCha8Rng, budget: usize) -> bool {
    let total = sockets.len();
    for _ in 0..budget {
        let Some(bad) = (0..total).find(|&p| {
            let c = p / dc;
            let chunk = &sockets[c * dc..(c + 1) * dc];
            chunk.iter().filter(|&&v| v == sockets[p]).count() > 1
        }) else {
            return true;
        };
        let other = rng.random_range(0..total);
        if other / dc == bad / dc {
            continue;
        }
        sockets.swap(bad, other);
        let cb = other / dc;
        // keep the swap only if the receiving check stays simple
        if has_duplicate(&sockets[cb * dc..(cb + 1) * dc]) {
            sockets.swap(bad, other);
        }
    }
    (0..total / dc).all(|c| !has_duplicate(&sockets[c * dc..(c + 1) * dc]))
}

/// Product of single parity-check codes with the given side lengths.
///
/// Coordinates are laid out in mixed radix with the first axis fastest; every
/// axis-parallel line carries one even-parity check.
pub fn spc_product_code(dims: &[usize]) -> Result<LinearCode, Gf2Error> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Gf2Error::InvalidParameter(
            "product dimensions must be nonempty and each at least 2".into(),
        ));
    }
    let n: usize = dims.iter().product();
    let mut strides = Vec::with_capacity(dims.len());
    let mut s = 1;
    for &d in dims {
        strides.push(s);
        s *= d;
    }
    let mut supports = Vec::new();
    for (axis, &len) in dims.iter().enumerate() {
        for start in 0..n {
            // a line starts wherever the axis coordinate is zero
            if (start / strides[axis]) % len != 0 {
                continue;
            }
            supports.push((0..len).map(|t| start + t * strides[axis]).collect());
        }
    }
    Ok(LinearCode::new(BinaryMatrix::from_supports(n, &supports)?))
}

/// Binary Hamming code with `r` parity bits: length `2^r - 1`.
pub fn hamming_code(r: usize) -> Result<LinearCode, Gf2Error> {
    if !(2..=16).contains(&r) {
        return Err(Gf2Error::InvalidParameter(format!("hamming redundancy {r} out of range")));
    }
    let n = (1 << r) - 1;
    let mut h = BinaryMatrix::zeros(r, n)?;
    for j in 0..n {
        for i in 0..r {
            if ((j + 1) >> i) & 1 == 1 {
                h.set(i, j, true);
            }
        }
    }
    Ok(LinearCode::new(h))
}

/// Array LDPC code: a `rows × cols` grid of `p × p` circulant permutation
/// blocks with shift `a·b mod p`. For prime `p` the Tanner graph has no
/// 4-cycles.
pub fn array_code(p: usize, rows: usize, cols: usize) -> Result<LinearCode, Gf2Error> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime || rows == 0 || cols == 0 || rows > p || cols > p {
        return Err(Gf2Error::InvalidParameter(format!(
            "array code needs prime p and 1 <= rows, cols <= p (got p={p}, rows={rows}, cols={cols})"
        )));
    }
    let mut h = BinaryMatrix::zeros(rows * p, cols * p)?;
    for a in 0..rows {
        for b in 0..cols {
            for r in 0..p {
                h.set(a * p + r, b * p + (r + a * b) % p, true);
            }
        }
    }
    Ok(LinearCode::new(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_two_gives_four_rows() {
        let c = random_regular_ldpc(8, 1, 2, 3).unwrap();
        assert_eq!(c.m(), 4);
        for i in 0..4 {
            assert_eq!(c.parity_check().row_weight(i), 2);
        }
    }

    #[test]
    fn regular_degrees_hold() {
        let c = random_regular_ldpc(60, 3, 4, 11).unwrap();
        assert_eq!(c.m(), 45);
        let h = c.parity_check();
        assert!((0..45).all(|i| h.row_weight(i) == 4));
        assert!((0..60).all(|j| h.col_weight(j) == 3));
        assert_eq!(c.k() + h.rank(), 60);
    }

    #[test]
    fn construction_is_deterministic_per_seed() {
        let a = random_regular_ldpc(40, 3, 6, 99).unwrap();
        let b = random_regular_ldpc(40, 3, 6, 99).unwrap();
        let c = random_regular_ldpc(40, 3, 6, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn dense_regular_codes_still_construct() {
        for seed in 0..5 {
            let c = random_regular_ldpc(120, 3, 6, seed).unwrap();
            let h = c.parity_check();
            assert!((0..60).all(|i| h.row_weight(i) == 6));
        }
    }

    #[test]
    fn infeasible_degrees_rejected() {
        assert!(matches!(
            random_regular_ldpc(10, 3, 4, 0),
            Err(Gf2Error::InfeasibleDegrees { .. })
        ));
        assert!(random_regular_ldpc(3, 1, 6, 0).is_err());
    }

    #[test]
    fn spc_products() {
        let c = spc_product_code(&[3, 3]).unwrap();
        assert_eq!((c.n(), c.m(), c.k()), (9, 6, 4));
        let c = spc_product_code(&[4, 4, 4, 4, 4]).unwrap();
        assert_eq!(c.n(), 1024);
        assert_eq!(c.k(), 243);
        assert!(spc_product_code(&[1, 3]).is_err());
    }

    #[test]
    fn spc_5x5_min_distance_is_four() {
        let c = spc_product_code(&[5, 5]).unwrap();
        assert_eq!(c.k(), 16);
        assert_eq!(c.min_distance().unwrap(), 4);
    }

    #[test]
    fn array_code_has_girth_six() {
        let c = array_code(5, 3, 4).unwrap();
        assert_eq!((c.n(), c.m()), (20, 15));
        assert_eq!(c.tanner_graph().girth(), Some(6));
        assert!(array_code(4, 2, 2).is_err());
    }
}
