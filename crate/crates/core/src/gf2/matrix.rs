use std::fmt;

use super::Gf2Error;

const WORD: usize = 64;

/// Dense binary matrix with rows packed into `u64` words.
///
/// Row operations are word-wise XORs, which is what elimination, syndrome
/// computation and the brute-force oracles spend their time on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    /// All-zero `rows × cols` matrix. Both dimensions must be at least one.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, Gf2Error> {
        if rows == 0 || cols == 0 {
            return Err(Gf2Error::EmptyMatrix);
        }
        let stride = cols.div_ceil(WORD);
        Ok(Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        })
    }

    pub fn identity(size: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Builds a matrix from 0/1 rows. Any nonzero entry counts as a one.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let m = rows.len();
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut out = Self::zeros(m, n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Gf2Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// Builds a matrix whose row `i` has ones exactly at `supports[i]`.
    pub fn from_supports(cols: usize, supports: &[Vec<usize>]) -> Result<Self, Gf2Error> {
        let mut out = Self::zeros(supports.len(), cols)?;
        for (i, s) in supports.iter().enumerate() {
            for &j in s {
                if j >= cols {
                    return Err(Gf2Error::IndexOutOfRange { index: j, bound: cols });
                }
                out.set(i, j, true);
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.words[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `i`. Bits beyond `cols` are always zero.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as an unpacked 0/1 vector.
    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j) as u8).collect()
    }

    /// Column indices where row `i` is one, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        support_of_words(self.row_words(i))
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            let s = dst * self.stride;
            self.words[s..s + self.stride].fill(0);
            return;
        }
        let (s, d) = (src * self.stride, dst * self.stride);
        for k in 0..self.stride {
            let v = self.words[s + k];
            self.words[d + k] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows).expect("nonempty");
        for i in 0..self.rows {
            for j in support_of_words(self.row_words(i)) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `H x mod 2`. Errors when `x.len() != cols`.
    pub fn mul_vec(&self, x: &[u8]) -> Result<Vec<u8>, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let packed = pack_bits(x);
        Ok((0..self.rows)
            .map(|i| parity_and(self.row_words(i), &packed) as u8)
            .collect())
    }

    /// Reduced row echelon form over GF(2) and its pivot columns.
    ///
    /// Zero rows are kept at the bottom so the result has the same shape as
    /// the input.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place_ordered(0..self.cols);
        (m, pivots)
    }

    /// Eliminates in place, trying pivot columns in the order given.
    /// Returns the pivot columns in the order they were used; pivot `r` lives
    /// in row `r`.
    pub fn rref_in_place_ordered<I: IntoIterator<Item = usize>>(&mut self, order: I) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in order {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, j)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, j) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : M x = 0}` as the rows of a matrix,
    /// or `None` when the null space is trivial.
    pub fn null_space(&self) -> Option<BinaryMatrix> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        if free.is_empty() {
            return None;
        }
        let mut basis = BinaryMatrix::zeros(free.len(), self.cols).ok()?;
        for (b, &f) in free.iter().enumerate() {
            basis.set(b, f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    basis.set(b, p, true);
                }
            }
        }
        Some(basis)
    }

    /// `self · other^T mod 2` is all zero.
    pub fn orthogonal_to(&self, other: &BinaryMatrix) -> bool {
        self.cols == other.cols
            && (0..self.rows).all(|i| {
                (0..other.rows).all(|k| !parity_and(self.row_words(i), other.row_words(k)))
            })
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn pack_bits(x: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; x.len().div_ceil(WORD).max(1)];
    for (j, &b) in x.iter().enumerate() {
        if b != 0 {
            out[j / WORD] |= 1 << (j % WORD);
        }
    }
    out
}

pub(crate) fn unpack_bits(words: &[u64], len: usize) -> Vec<u8> {
    (0..len)
        .map(|j| ((words[j / WORD] >> (j % WORD)) & 1) as u8)
        .collect()
}

pub(crate) fn support_of_words(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            out.push(k * WORD + b);
            w &= w - 1;
        }
    }
    out
}

#[inline]
pub(crate) fn parity_and(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones())
        .sum::<u32>()
        & 1
        == 1
}
