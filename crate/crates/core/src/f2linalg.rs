//! Dense linear algebra over F2.
//!
//! Vectors are packed 64 entries per machine word so that row operations
//! reduce to word-wide XORs. Matrices are stored row-major as a list of
//! packed rows. Zero-row and zero-column matrices are legal everywhere.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A packed vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from a slice of 0/1 bytes. Any nonzero byte is a one.
    pub fn from_u8s(bits: &[u8]) -> Self {
        Self::from_bits(bits.iter().map(|&b| b != 0))
    }

    /// The low `len` bits of `value`, entry `i` taken from bit `i`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// Inner product over F2.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Entries `start..start+len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        BitVector::from_bits((start..start + len).map(|i| self.get(i)))
    }

    /// Entries at the given positions, in the given order.
    pub fn select(&self, positions: &[usize]) -> BitVector {
        BitVector::from_bits(positions.iter().map(|&i| self.get(i)))
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bits(self.iter().chain(other.iter()))
    }

    /// Packs the vector into a `u64` (entry `i` at bit `i`). Only valid for `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, "]")
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison of the entry sequences, entry 0 first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter()).then(self.len.cmp(&other.len))
    }
}

/// A dense `rows x cols` matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: BinaryMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from packed rows. All rows must have length `cols`.
    pub fn from_bit_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "row length",
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Convenience constructor from nested 0/1 slices. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let data: Vec<BitVector> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.as_ref().len(), cols, "ragged rows");
                BitVector::from_u8s(r.as_ref())
            })
            .collect();
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn into_row_vectors(self) -> Vec<BitVector> {
        self.data
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "row length",
                expected: self.cols,
                got: row.len(),
            });
        }
        self.data.push(row);
        self.rows += 1;
        Ok(())
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.data[r].weight()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over F2.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                what: "inner matrix dimension",
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for k in row.iter_ones() {
                acc.xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "vector length",
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(BitVector::from_bits(self.data.iter().map(|row| row.dot(v))))
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> BinaryMatrix {
        BinaryMatrix {
            rows: self.rows,
            cols: cols.len(),
            data: self.data.iter().map(|r| r.select(cols)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Number of nonzero entries.
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BitVector::weight).sum()
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with leftmost-pivot, topmost-row elimination.
pub fn rref(m: &BinaryMatrix) -> Rref {
    let (reduced, pivot_cols, _) = rref_tracked(m, false);
    Rref {
        rank: pivot_cols.len(),
        reduced,
        pivot_cols,
    }
}

/// Row reduction that optionally records the row operations as a transform
/// `T` with `T * m = reduced`.
fn rref_tracked(m: &BinaryMatrix, track: bool) -> (BinaryMatrix, Vec<usize>, Option<BinaryMatrix>) {
    let mut r = m.clone();
    let mut t = track.then(|| BinaryMatrix::identity(m.rows));
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..m.cols {
        if top == m.rows {
            break;
        }
        let Some(p) = (top..m.rows).find(|&i| r.data[i].get(c)) else {
            continue;
        };
        r.data.swap(top, p);
        if let Some(t) = t.as_mut() {
            t.data.swap(top, p);
        }
        let pivot_row = r.data[top].clone();
        let pivot_t = t.as_ref().map(|t| t.data[top].clone());
        for i in 0..m.rows {
            if i != top && r.data[i].get(c) {
                r.data[i].xor_assign(&pivot_row);
                if let (Some(t), Some(pt)) = (t.as_mut(), pivot_t.as_ref()) {
                    t.data[i].xor_assign(pt);
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    (r, pivots, t)
}

/// Basis of `{x : M x = 0}`, one row per free column in increasing order.
pub fn kernel_basis(m: &BinaryMatrix) -> BinaryMatrix {
    let Rref {
        reduced,
        pivot_cols,
        ..
    } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let mut basis = BinaryMatrix::zeros(0, m.cols);
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVector::zeros(m.cols);
        v.set(f, true);
        for (i, &p) in pivot_cols.iter().enumerate() {
            if reduced.get(i, f) {
                v.set(p, true);
            }
        }
        basis.push_row(v).expect("kernel row has matrix width");
    }
    basis
}

/// Whether `v` is an F2 combination of the rows of `m`.
pub fn in_row_span(m: &BinaryMatrix, v: &BitVector) -> Result<bool> {
    if v.len() != m.cols {
        return Err(Error::DimensionMismatch {
            what: "vector length",
            expected: m.cols,
            got: v.len(),
        });
    }
    let Rref {
        reduced,
        pivot_cols,
        ..
    } = rref(m);
    let mut w = v.clone();
    for (i, &p) in pivot_cols.iter().enumerate() {
        if w.get(p) {
            w.xor_assign(reduced.row(i));
        }
    }
    Ok(w.is_zero())
}

/// Coefficients `c` (one per row of `m`) with `sum_i c_i m_i = v`, if any exist.
pub fn row_combination(m: &BinaryMatrix, v: &BitVector) -> Result<Option<BitVector>> {
    if v.len() != m.cols {
        return Err(Error::DimensionMismatch {
            what: "vector length",
            expected: m.cols,
            got: v.len(),
        });
    }
    let (reduced, pivots, t) = rref_tracked(m, true);
    let t = t.expect("tracking requested");
    let mut w = v.clone();
    let mut coeffs = BitVector::zeros(m.rows);
    for (i, &p) in pivots.iter().enumerate() {
        if w.get(p) {
            w.xor_assign(reduced.row(i));
            coeffs.xor_assign(t.row(i));
        }
    }
    Ok(w.is_zero().then_some(coeffs))
}

/// All solutions of `c * m = v` as an affine space: a particular solution
/// plus a basis for the left kernel of `m`.
pub fn row_combination_space(
    m: &BinaryMatrix,
    v: &BitVector,
) -> Result<Option<(BitVector, BinaryMatrix)>> {
    Ok(row_combination(m, v)?.map(|c| (c, kernel_basis(&m.transpose()))))
}

/// Kronecker product over F2: block `(i, j)` of the result is `a[i][j] * b`.
pub fn matrix_tensor(a: &BinaryMatrix, b: &BinaryMatrix) -> BinaryMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = BinaryMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in a.row(ia).iter_ones() {
            for ib in 0..b.rows {
                let r = ia * b.rows + ib;
                for jb in b.row(ib).iter_ones() {
                    out.set(r, ja * b.cols + jb, true);
                }
            }
        }
    }
    out
}

/// Text format: a `<rows> <cols>` header followed by one line of `cols`
/// characters in `{0,1}` per row, each line newline-terminated.
impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for row in &self.data {
            for b in row.iter() {
                f.write_str(if b { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `<rows> <cols>` header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |tok: &str| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad dimension `{tok}`"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected `<rows> <cols>`, found `{header}`"),
            });
        }
        let rows = parse_dim(dims[0])?;
        let cols = parse_dim(dims[1])?;
        let mut data = Vec::with_capacity(rows);
        for r in 0..rows {
            let line_no = r + 2;
            let line = lines.next().ok_or(Error::Parse {
                line: line_no,
                msg: format!("expected {rows} rows, found {r}"),
            })?;
            if line.chars().count() != cols {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {cols} entries, found {}", line.chars().count()),
                });
            }
            let mut v = BitVector::zeros(cols);
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(c, true),
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("invalid character `{other}` (expected 0 or 1)"),
                        })
                    }
                }
            }
            data.push(v);
        }
        if let Some((i, extra)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: rows + 2 + i,
                msg: format!("unexpected trailing content `{extra}`"),
            });
        }
        Ok(BinaryMatrix { rows, cols, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_vectors(n: usize) -> impl Iterator<Item = BitVector> {
        (0..1u64 << n).map(move |x| BitVector::from_u64(x, n))
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = BinaryMatrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rref_already_reduced_local_check() {
        let h = BinaryMatrix::from_rows(&[[1, 0, 0], [0, 1, 1]]);
        let r = rref(&h);
        assert_eq!(r.reduced, h);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_duplicate_rows() {
        let m = BinaryMatrix::from_rows(&[[1, 1], [1, 1]]);
        let r = rref(&m);
        assert_eq!(r.reduced, BinaryMatrix::from_rows(&[[1, 1], [0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&BinaryMatrix::identity(4)).rows(), 0);

        // brute force: the kernel of h is {000, 011}
        let h = BinaryMatrix::from_rows(&[[1, 0, 0], [0, 1, 1]]);
        let brute: Vec<BitVector> = all_vectors(3)
            .filter(|v| h.mul_vec(v).unwrap().is_zero())
            .collect();
        assert_eq!(brute.len(), 2);
        let k = kernel_basis(&h);
        assert_eq!(k, BinaryMatrix::from_rows(&[[0, 1, 1]]));

        let z = BinaryMatrix::zeros(2, 3);
        let k = kernel_basis(&z);
        assert_eq!(k.rows(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn row_span_examples() {
        let m = BinaryMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        assert!(in_row_span(&m, &BitVector::zeros(3)).unwrap());
        assert!(in_row_span(&m, &BitVector::from_u8s(&[1, 0, 1])).unwrap());
        let m = BinaryMatrix::from_rows(&[[1, 1, 0]]);
        assert!(!in_row_span(&m, &BitVector::from_u8s(&[1, 0, 0])).unwrap());
        assert!(matches!(
            in_row_span(&m, &BitVector::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn row_combination_reconstructs_vector() {
        let m = BinaryMatrix::from_rows(&[[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0], [0, 0, 0, 1]]);
        let v = BitVector::from_u8s(&[1, 0, 1, 1]);
        let c = row_combination(&m, &v).unwrap().unwrap();
        let mut acc = BitVector::zeros(4);
        for i in c.iter_ones() {
            acc.xor_assign(m.row(i));
        }
        assert_eq!(acc, v);
        assert!(row_combination(&m, &BitVector::from_u8s(&[1, 0, 0, 0]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn tensor_examples() {
        let one = BinaryMatrix::from_rows(&[[1]]);
        let b = BinaryMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        assert_eq!(matrix_tensor(&one, &b), b);
        let a = BinaryMatrix::from_rows(&[[1, 1]]);
        let id = BinaryMatrix::identity(2);
        assert_eq!(
            matrix_tensor(&a, &id),
            BinaryMatrix::from_rows(&[[1, 0, 1, 0], [0, 1, 0, 1]])
        );
    }

    #[test]
    fn degenerate_shapes() {
        let empty = BinaryMatrix::zeros(0, 5);
        assert_eq!(rref(&empty).rank, 0);
        assert_eq!(kernel_basis(&empty).rows(), 5);
        let no_cols = BinaryMatrix::zeros(3, 0);
        assert_eq!(kernel_basis(&no_cols).rows(), 0);
        assert!(in_row_span(&no_cols, &BitVector::zeros(0)).unwrap());
    }

    #[test]
    fn text_format_round_trip() {
        let m = BinaryMatrix::from_rows(&[[1, 0, 0], [0, 1, 1]]);
        let text = m.to_string();
        assert_eq!(text, "2 3\n100\n011\n");
        assert_eq!(text.parse::<BinaryMatrix>().unwrap(), m);
        assert_eq!("0 4\n".parse::<BinaryMatrix>().unwrap(), BinaryMatrix::zeros(0, 4));
    }

    #[test]
    fn text_format_errors_carry_line_numbers() {
        let err = "2 3\n100\n0a1\n".parse::<BinaryMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = "2 3\n100\n".parse::<BinaryMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = "2 3\n100\n01\n".parse::<BinaryMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = "x 3\n".parse::<BinaryMatrix>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
