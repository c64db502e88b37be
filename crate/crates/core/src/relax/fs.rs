use crate::lp::Row;

use super::RelaxError;

/// Violation a cut must exceed to be reported.
pub const CUT_TOL: f64 = 1e-6;

/// Forbidden-set inequality `Σ_{j∈S} x_j − Σ_{j∈N∖S} x_j ≤ |S| − 1` for a
/// check (or redundant check) with support `N` and odd subset `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FsInequality {
    support: Vec<usize>,
    odd: Vec<usize>,
}

impl FsInequality {
    pub fn new(mut support: Vec<usize>, mut odd: Vec<usize>) -> Result<Self, RelaxError> {
        support.sort_unstable();
        support.dedup();
        odd.sort_unstable();
        odd.dedup();
        if odd.len().is_multiple_of(2) {
            return Err(RelaxError::InvalidInequality("odd subset has even size".into()));
        }
        if odd.iter().any(|j| support.binary_search(j).is_err()) {
            return Err(RelaxError::InvalidInequality("odd subset leaves the support".into()));
        }
        Ok(Self { support, odd })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn odd_subset(&self) -> &[usize] {
        &self.odd
    }

    pub fn rhs(&self) -> f64 {
        (self.odd.len() - 1) as f64
    }

    pub fn coefficient(&self, j: usize) -> f64 {
        if self.odd.binary_search(&j).is_ok() {
            1.0
        } else if self.support.binary_search(&j).is_ok() {
            -1.0
        } else {
            0.0
        }
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.support.iter().map(|&j| self.coefficient(j) * x[j]).sum()
    }

    /// `lhs − rhs`; positive means `x` is cut off.
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.lhs(x) - self.rhs()
    }

    pub fn is_satisfied_by(&self, bits: &[u8]) -> bool {
        let lhs: i64 = self
            .support
            .iter()
            .map(|&j| if bits[j] == 0 { 0 } else { self.coefficient(j) as i64 })
            .sum();
        lhs < self.odd.len() as i64
    }

    /// LP row over a model whose bit `j` lives in column `x_cols[j]`.
    pub fn to_row(&self, x_cols: &[usize]) -> Row {
        Row::le(
            self.support.iter().map(|&j| (x_cols[j], self.coefficient(j))).collect(),
            self.rhs(),
        )
    }
}

/// All `2^{|N|−1}` forbidden-set inequalities of one support, in increasing
/// bitmask order over the sorted support.
pub fn fs_inequalities(support: &[usize]) -> Vec<FsInequality> {
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let d = sorted.len();
    assert!(d < 64, "support of size {d} is too large to enumerate");
    (0u64..1 << d)
        .filter(|mask| mask.count_ones() % 2 == 1)
        .map(|mask| FsInequality {
            odd: (0..d).filter(|t| mask >> t & 1 == 1).map(|t| sorted[t]).collect(),
            support: sorted.clone(),
        })
        .collect()
}

/// The forbidden-set inequality of `support` most violated by `x`, if its
/// violation exceeds [`CUT_TOL`].
pub fn most_violated_fs_cut(support: &[usize], x: &[f64]) -> Option<FsInequality> {
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return None;
    }
    let mut odd: Vec<usize> = sorted.iter().copied().filter(|&j| x[j] > 0.5).collect();
    if odd.len().is_multiple_of(2) {
        let flip = sorted
            .iter()
            .copied()
            .min_by(|&a, &b| (x[a] - 0.5).abs().total_cmp(&(x[b] - 0.5).abs()))
            .expect("nonempty support");
        match odd.binary_search(&flip) {
            Ok(p) => {
                odd.remove(p);
            }
            Err(p) => odd.insert(p, flip),
        }
    }
    let ineq = FsInequality { support: sorted, odd };
    (ineq.violation(x) > CUT_TOL).then_some(ineq)
}
