use std::cmp::Ordering;

use super::{
    pack_bits, parity_and, support_of_words, unpack_bits, BinaryMatrix, Gf2Error, TannerGraph,
    MAX_ENUMERATION_DIMENSION,
};

/// Binary linear code given by a parity-check matrix.
///
/// The matrix may carry redundant rows; the dimension is always
/// `n - rank(H)`. A generator matrix is kept alongside whenever `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    h: BinaryMatrix,
    k: usize,
    generator: Option<BinaryMatrix>,
    checks: Vec<Vec<usize>>,
}

impl LinearCode {
    pub fn new(h: BinaryMatrix) -> Self {
        let generator = h.null_space();
        let k = generator.as_ref().map_or(0, |g| g.rows());
        let checks = (0..h.rows()).map(|i| h.row_support(i)).collect();
        Self {
            h,
            k,
            generator,
            checks,
        }
    }

    /// Uses a caller-supplied generator, validating `G H^T = 0` and its rank.
    pub fn with_generator(h: BinaryMatrix, g: BinaryMatrix) -> Result<Self, Gf2Error> {
        let mut code = Self::new(h);
        if g.cols() != code.n() || !g.orthogonal_to(&code.h) || g.rank() != code.k || g.rows() != code.k {
            return Err(Gf2Error::GeneratorMismatch);
        }
        code.generator = Some(g);
        Ok(code)
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn generator(&self) -> Option<&BinaryMatrix> {
        self.generator.as_ref()
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of rows of the parity-check matrix (including redundant ones).
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n() as f64
    }

    /// Variable indices of every check, `N_i`.
    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn max_check_degree(&self) -> usize {
        self.checks.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn tanner_graph(&self) -> TannerGraph {
        TannerGraph::new(&self.h)
    }

    pub fn syndrome(&self, x: &[u8]) -> Result<Vec<u8>, Gf2Error> {
        self.h.mul_vec(x)
    }

    pub fn is_codeword(&self, x: &[u8]) -> bool {
        x.len() == self.n() && x.iter().all(|&b| b <= 1) && {
            let p = pack_bits(x);
            (0..self.m()).all(|i| !parity_and(self.h.row_words(i), &p))
        }
    }

    fn check_dimension(&self) -> Result<(), Gf2Error> {
        if self.k > MAX_ENUMERATION_DIMENSION {
            return Err(Gf2Error::DimensionTooLarge {
                k: self.k,
                max: MAX_ENUMERATION_DIMENSION,
            });
        }
        Ok(())
    }

    /// Visits all `2^k` codewords in Gray-code order as packed words; the
    /// second argument is the generator row flipped to reach it (`None` for
    /// the initial all-zero word).
    fn for_each_codeword<F: FnMut(&[u64], Option<usize>)>(&self, mut f: F) -> Result<(), Gf2Error> {
        self.check_dimension()?;
        let words = self.n().div_ceil(64);
        let mut cur = vec![0u64; words];
        f(&cur, None);
        let Some(g) = &self.generator else {
            return Ok(());
        };
        for i in 1u64..(1u64 << self.k) {
            let row = i.trailing_zeros() as usize;
            for (c, w) in cur.iter_mut().zip(g.row_words(row)) {
                *c ^= w;
            }
            f(&cur, Some(row));
        }
        Ok(())
    }

    /// All `2^k` codewords, the zero word first.
    pub fn enumerate_codewords(&self) -> Result<Vec<Vec<u8>>, Gf2Error> {
        let mut out = Vec::with_capacity(1 << self.k.min(MAX_ENUMERATION_DIMENSION));
        let n = self.n();
        self.for_each_codeword(|w, _| out.push(unpack_bits(w, n)))?;
        Ok(out)
    }

    /// Minimum Hamming weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize, Gf2Error> {
        if self.k == 0 {
            return Err(Gf2Error::NoNonzeroCodeword);
        }
        let mut best = usize::MAX;
        self.for_each_codeword(|w, flipped| {
            if flipped.is_some() {
                let wt: usize = w.iter().map(|x| x.count_ones() as usize).sum();
                best = best.min(wt);
            }
        })?;
        Ok(best)
    }

    /// Exhaustive maximum-likelihood decoding: the codeword minimizing
    /// `llr · x`, ties going to the lexicographically smallest word.
    pub fn ml_bruteforce(&self, llr: &[f64]) -> Result<(Vec<u8>, f64), Gf2Error> {
        let n = self.n();
        if llr.len() != n {
            return Err(Gf2Error::LengthMismatch {
                expected: n,
                found: llr.len(),
            });
        }
        let exact = |w: &[u64]| -> f64 { support_of_words(w).iter().map(|&j| llr[j]).sum() };
        let gen_support: Vec<Vec<usize>> = self
            .generator
            .as_ref()
            .map(|g| (0..g.rows()).map(|i| g.row_support(i)).collect())
            .unwrap_or_default();

        let words = n.div_ceil(64);
        let mut best = vec![0u64; words];
        let mut best_cost = 0.0;
        let mut running = 0.0;
        self.for_each_codeword(|w, flipped| {
            let Some(row) = flipped else { return };
            // w already includes the flip; bits now set were zero before.
            for &j in &gen_support[row] {
                if (w[j / 64] >> (j % 64)) & 1 == 1 {
                    running += llr[j];
                } else {
                    running -= llr[j];
                }
            }
            if running < best_cost - 1e-9 {
                best.copy_from_slice(w);
                best_cost = running;
            } else if running <= best_cost + 1e-9 {
                let c = exact(w);
                let better = match c.partial_cmp(&best_cost) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Equal) => lex_less(w, &best),
                    _ => false,
                };
                if better {
                    best.copy_from_slice(w);
                    best_cost = c;
                }
            }
        })?;
        let best_cost = exact(&best);
        Ok((unpack_bits(&best, n), best_cost))
    }
}

fn lex_less(a: &[u64], b: &[u64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        let d = x ^ y;
        if d != 0 {
            let bit = d.trailing_zeros();
            return (x >> bit) & 1 == 0;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{hamming_code, spc_product_code};

    fn spc3() -> LinearCode {
        LinearCode::new(BinaryMatrix::from_rows(&[[1, 1, 1]]).unwrap())
    }

    #[test]
    fn spc3_codewords() {
        let mut words = spc3().enumerate_codewords().unwrap();
        words.sort();
        assert_eq!(
            words,
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn hamming_has_sixteen_codewords_including_all_ones() {
        let code = hamming_code(3).unwrap();
        let words = code.enumerate_codewords().unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.contains(&vec![1; 7]));
        for w in &words {
            assert!(code.is_codeword(w));
        }
        let mut dedup = words.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
    }

    #[test]
    fn full_rank_square_check_gives_trivial_code() {
        let code = LinearCode::new(BinaryMatrix::identity(3).unwrap());
        assert_eq!(code.k(), 0);
        assert_eq!(code.enumerate_codewords().unwrap(), vec![vec![0, 0, 0]]);
        assert_eq!(code.min_distance(), Err(Gf2Error::NoNonzeroCodeword));
    }

    #[test]
    fn minimum_distances() {
        assert_eq!(spc3().min_distance().unwrap(), 2);
        assert_eq!(hamming_code(3).unwrap().min_distance().unwrap(), 3);
        assert_eq!(spc_product_code(&[3, 3]).unwrap().min_distance().unwrap(), 4);
    }

    #[test]
    fn ml_examples() {
        let (x, v) = spc3().ml_bruteforce(&[-1.0, -1.0, 1.0]).unwrap();
        assert_eq!(x, vec![1, 1, 0]);
        assert_eq!(v, -2.0);

        let (x, v) = hamming_code(3).unwrap().ml_bruteforce(&[-1.0; 7]).unwrap();
        assert_eq!(x, vec![1; 7]);
        assert_eq!(v, -7.0);

        let (x, v) = spc3().ml_bruteforce(&[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(x, vec![0, 0, 0]);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn ml_ties_go_to_lexicographically_smallest() {
        // 011 and 101 both cost -1; 011 < 101.
        let (x, _) = spc3().ml_bruteforce(&[-1.0, -1.0, -1.0]).unwrap();
        assert_eq!(x, vec![0, 1, 1]);
        // all four codewords cost 0
        let (x, _) = spc3().ml_bruteforce(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(x, vec![0, 0, 0]);
    }

    #[test]
    fn generator_validation() {
        let h = BinaryMatrix::from_rows(&[[1, 1, 1]]).unwrap();
        let good = BinaryMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]).unwrap();
        let bad = BinaryMatrix::from_rows(&[[1, 0, 0], [0, 1, 1]]).unwrap();
        assert!(LinearCode::with_generator(h.clone(), good).is_ok());
        assert_eq!(
            LinearCode::with_generator(h, bad),
            Err(Gf2Error::GeneratorMismatch)
        );
    }
}
