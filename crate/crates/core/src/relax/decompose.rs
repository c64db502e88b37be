use crate::gf2::{BinaryMatrix, LinearCode};

use super::RelaxError;

/// A code whose checks all have degree at most three, obtained by splitting
/// every check of degree `d ≥ 4` into a chain of `d − 2` checks joined by
/// `d − 3` auxiliary bits.
///
/// Variables `0..n` are the original bits; variable `n + t` is auxiliary `t`,
/// which in any codeword equals the parity of the original bits listed in
/// `aux_prefix[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub code: LinearCode,
    pub original_len: usize,
    pub aux_prefix: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Extends a codeword of the original code with its auxiliary bits.
    pub fn extend(&self, bits: &[u8]) -> Vec<u8> {
        let mut out = bits.to_vec();
        out.extend(
            self.aux_prefix
                .iter()
                .map(|p| p.iter().fold(0, |acc, &j| acc ^ bits[j])),
        );
        out
    }
}

/// Splits a check `{v1, …, vd}` into `{v1, v2, a1}, {a1, v3, a2}, …,
/// {a_{d−3}, v_{d−1}, v_d}`. Checks of degree three or less are copied.
pub fn decompose_checks(code: &LinearCode) -> Result<Decomposition, RelaxError> {
    let n = code.n();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut aux_prefix: Vec<Vec<usize>> = Vec::new();
    for check in code.checks() {
        let d = check.len();
        if d <= 3 {
            supports.push(check.clone());
            continue;
        }
        let mut prev = n + aux_prefix.len();
        aux_prefix.push(check[..2].to_vec());
        supports.push(vec![check[0], check[1], prev]);
        for t in 2..d - 2 {
            let next = n + aux_prefix.len();
            aux_prefix.push(check[..=t].to_vec());
            supports.push(vec![prev, check[t], next]);
            prev = next;
        }
        supports.push(vec![prev, check[d - 2], check[d - 1]]);
    }
    let total = n + aux_prefix.len();
    let mut sorted = supports;
    for s in sorted.iter_mut() {
        s.sort_unstable();
    }
    let h = if sorted.is_empty() {
        BinaryMatrix::zeros(1, total)?
    } else {
        BinaryMatrix::from_supports(total, &sorted)?
    };
    Ok(Decomposition {
        code: LinearCode::new(h),
        original_len: n,
        aux_prefix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::spc_product_code;

    fn single_check(d: usize) -> LinearCode {
        LinearCode::new(BinaryMatrix::from_supports(d, &[(0..d).collect()]).unwrap())
    }

    #[test]
    fn degree_four_splits_in_two() {
        let dec = decompose_checks(&single_check(4)).unwrap();
        assert_eq!(dec.code.checks(), &[vec![0, 1, 4], vec![2, 3, 4]]);
        assert_eq!(dec.aux_prefix, vec![vec![0, 1]]);
    }

    #[test]
    fn degree_three_unchanged() {
        let code = single_check(3);
        let dec = decompose_checks(&code).unwrap();
        assert_eq!(dec.code.parity_check(), code.parity_check());
        assert!(dec.aux_prefix.is_empty());
    }

    fn projected_codewords(dec: &Decomposition) -> Vec<Vec<u8>> {
        let mut words: Vec<Vec<u8>> = dec
            .code
            .enumerate_codewords()
            .unwrap()
            .into_iter()
            .map(|w| w[..dec.original_len].to_vec())
            .collect();
        words.sort();
        words
    }

    #[test]
    fn degree_six_projection_is_exact() {
        let code = single_check(6);
        let dec = decompose_checks(&code).unwrap();
        assert_eq!(dec.aux_prefix.len(), 3);
        assert_eq!(dec.code.m(), 4);
        assert!(dec.code.checks().iter().all(|c| c.len() <= 3));
        let mut expected = code.enumerate_codewords().unwrap();
        expected.sort();
        assert_eq!(projected_codewords(&dec), expected);
    }

    #[test]
    fn product_code_projection_and_extension() {
        let code = spc_product_code(&[4, 4]).unwrap();
        let dec = decompose_checks(&code).unwrap();
        assert_eq!(dec.aux_prefix.len(), 8);
        let mut expected = code.enumerate_codewords().unwrap();
        for w in &expected {
            assert!(dec.code.is_codeword(&dec.extend(w)));
        }
        expected.sort();
        assert_eq!(projected_codewords(&dec), expected);
    }
}
