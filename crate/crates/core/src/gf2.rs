//! Dense linear algebra over F_2 on bit-packed rows.
//!
//! Every quotient, kernel and intersection in the crate goes through the
//! reduced row-echelon form computed here. Pivots are always taken at the
//! lowest-index column still available, so the echelon form of a row space is
//! canonical for a fixed column order.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length vector over F_2, packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector from the positions of its ones. Repeated positions
    /// cancel in pairs.
    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_ones(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVec { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        xor_words(&mut self.words, &other.words);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one_from(&self.words, 0)
    }

    /// Inner product over F_2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// New vector holding the entries at `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> BitVec {
        BitVec::from_ones(
            positions.len(),
            positions
                .iter()
                .enumerate()
                .filter(|(_, &p)| self.get(p))
                .map(|(i, _)| i),
        )
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Iterator over the set positions of a packed word slice.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
fn first_one_from(words: &[u64], start: usize) -> Option<usize> {
    let mut w = start / WORD;
    if w >= words.len() {
        return None;
    }
    let masked = words[w] & (!0u64 << (start % WORD));
    if masked != 0 {
        return Some(w * WORD + masked.trailing_zeros() as usize);
    }
    w += 1;
    while w < words.len() {
        if words[w] != 0 {
            return Some(w * WORD + words[w].trailing_zeros() as usize);
        }
        w += 1;
    }
    None
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

/// A dense `rows × cols` matrix over F_2, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks `rows` as the rows of a matrix with `cols` columns.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Matrix whose column `j` is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        bit(self.row_words(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_ones(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVec::from_words(self.cols, self.row_words(r).to_vec()).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity: u32 = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let ones: Vec<usize> = BitVec::from_words(self.cols, self.row_words(r).to_vec())
                .iter_ones()
                .collect();
            let dst = &mut out.data[r * other.stride..(r + 1) * other.stride];
            for k in ones {
                xor_words(dst, other.row_words(k));
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// A matrix in reduced row-echelon form together with its pivot columns.
///
/// Row `i` has its leading 1 in `pivot_cols[i]`, pivots increase strictly and
/// every pivot column is zero outside its own row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EchelonForm {
    matrix: BitMatrix,
    pivot_cols: Vec<usize>,
}

impl EchelonForm {
    /// The echelon form of the zero subspace of F_2^cols.
    pub fn empty(cols: usize) -> Self {
        EchelonForm {
            matrix: BitMatrix::zeros(0, cols),
            pivot_cols: Vec::new(),
        }
    }

    /// Trusted constructor for data already known to be in reduced form
    /// (e.g. read back from the on-disk cache). Checked in debug builds.
    pub(crate) fn from_reduced_parts(matrix: BitMatrix, pivot_cols: Vec<usize>) -> Self {
        let e = EchelonForm { matrix, pivot_cols };
        debug_assert!(e.check_invariants());
        e
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn row(&self, i: usize) -> BitVec {
        self.matrix.row(i)
    }

    pub fn rows(&self) -> Vec<BitVec> {
        self.matrix.row_vecs()
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols()];
        for &p in &self.pivot_cols {
            is_pivot[p] = true;
        }
        (0..self.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the row space.
    ///
    /// Returns the canonical residue (zero in every pivot column) and the
    /// coefficients `c` with `residue = v + Σ c_i · row_i`.
    pub fn reduce_vector(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.cols(), "vector length must equal column count");
        let mut residue = v.clone();
        let mut coefficients = BitVec::zeros(self.rank());
        for (i, &p) in self.pivot_cols.iter().enumerate() {
            if v.get(p) {
                coefficients.set(i, true);
                xor_words(&mut residue.words, self.matrix.row_words(i));
            }
        }
        (residue, coefficients)
    }

    /// Canonical residue of `v`, without the coefficients.
    pub fn residue(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols(), "vector length must equal column count");
        let mut residue = v.clone();
        for (i, &p) in self.pivot_cols.iter().enumerate() {
            if v.get(p) {
                xor_words(&mut residue.words, self.matrix.row_words(i));
            }
        }
        residue
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.residue(v).is_zero()
    }

    fn check_invariants(&self) -> bool {
        if self.matrix.rows() != self.pivot_cols.len() {
            return false;
        }
        if self.pivot_cols.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (i, &p) in self.pivot_cols.iter().enumerate() {
            if first_one_from(self.matrix.row_words(i), 0) != Some(p) {
                return false;
            }
            for j in 0..self.rank() {
                if j != i && self.matrix.get(j, p) {
                    return false;
                }
            }
        }
        true
    }
}

/// Incremental Gauss–Jordan elimination that keeps its rows reduced at all
/// times. Suitable for moderate column counts; large sparse systems go
/// through [`echelonize_sparse`].
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    row_of_col: Vec<u32>,
}

const NO_ROW: u32 = u32::MAX;

impl EchelonBuilder {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NO_ROW; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_words(&self, words: &mut [u64]) {
        // Reduced rows vanish at every other pivot, so one pass suffices.
        let hits: Vec<u32> = Ones {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
        .filter_map(|c| {
            let r = self.row_of_col[c];
            (r != NO_ROW).then_some(r)
        })
        .collect();
        for r in hits {
            xor_words(words, &self.rows[r as usize]);
        }
    }

    /// Adds `v` to the spanning set. Returns true when the rank grew.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let mut words = v.words().to_vec();
        self.reduce_words(&mut words);
        let Some(pivot) = first_one_from(&words, 0) else {
            return false;
        };
        for row in &mut self.rows {
            if bit(row, pivot) {
                xor_words(row, &words);
            }
        }
        self.row_of_col[pivot] = self.rows.len() as u32;
        self.rows.push(words);
        self.pivots.push(pivot);
        true
    }

    pub fn finish(self) -> EchelonForm {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut matrix = BitMatrix::zeros(order.len(), self.cols);
        let mut pivot_cols = Vec::with_capacity(order.len());
        for (dst, &src) in order.iter().enumerate() {
            matrix.row_words_mut(dst).copy_from_slice(&self.rows[src]);
            pivot_cols.push(self.pivots[src]);
        }
        EchelonForm { matrix, pivot_cols }
    }
}

/// Reduced row-echelon form of `m`.
pub fn echelonize(m: &BitMatrix) -> EchelonForm {
    let mut b = EchelonBuilder::new(m.cols());
    for r in 0..m.rows() {
        b.insert(&m.row(r));
    }
    b.finish()
}

pub fn rank(m: &BitMatrix) -> usize {
    echelonize(m).rank()
}

/// Reduced row-echelon form of the span of sparse rows.
///
/// Each row is a list of column indices (repeats cancel). Forward
/// elimination keeps rows sparse and only clears leading columns; the
/// reduced form is recovered by one back-substitution pass at the end. The
/// result is identical to [`echelonize`] on the same rows.
pub fn echelonize_sparse<I>(cols: usize, rows: I) -> EchelonForm
where
    I: IntoIterator<Item = Vec<u32>>,
{
    let stride = words_for(cols);
    let mut scratch = vec![0u64; stride];
    let mut lead: Vec<Option<Box<[u32]>>> = vec![None; cols];
    let mut rank = 0usize;

    for row in rows {
        if row.is_empty() {
            continue;
        }
        let mut lo = usize::MAX;
        for &c in &row {
            let c = c as usize;
            assert!(c < cols, "column {c} out of range {cols}");
            scratch[c / WORD] ^= 1u64 << (c % WORD);
            lo = lo.min(c);
        }
        let mut pos = lo;
        let mut new_lead = None;
        while let Some(c) = first_one_from(&scratch, pos) {
            match &lead[c] {
                Some(pr) => {
                    for &x in pr.iter() {
                        let x = x as usize;
                        scratch[x / WORD] ^= 1u64 << (x % WORD);
                    }
                    pos = c + 1;
                }
                None => {
                    new_lead = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = new_lead {
            let mut entries = Vec::new();
            for (w, slot) in scratch.iter_mut().enumerate().skip(c / WORD) {
                let mut word = std::mem::take(slot);
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    entries.push((w * WORD + b) as u32);
                }
            }
            lead[c] = Some(entries.into_boxed_slice());
            rank += 1;
        } else {
            // Everything cancelled; only words at or after `lo` were touched.
            for w in scratch.iter_mut().skip(lo / WORD) {
                *w = 0;
            }
        }
    }

    back_substitute(cols, lead, rank)
}

fn back_substitute(cols: usize, lead: Vec<Option<Box<[u32]>>>, rank: usize) -> EchelonForm {
    let stride = words_for(cols);
    let pivot_cols: Vec<usize> = (0..cols).filter(|&c| lead[c].is_some()).collect();
    debug_assert_eq!(pivot_cols.len(), rank);
    let mut row_index = vec![NO_ROW; cols];
    for (i, &p) in pivot_cols.iter().enumerate() {
        row_index[p] = i as u32;
    }
    let mut matrix = BitMatrix::zeros(rank, cols);
    // Highest pivot first: every row it needs is already fully reduced.
    for (i, &p) in pivot_cols.iter().enumerate().rev() {
        let entries = lead[p].as_ref().expect("pivot row present");
        let (lower, upper) = matrix.data.split_at_mut((i + 1) * stride);
        let dst = &mut lower[i * stride..];
        for &x in entries.iter() {
            let x = x as usize;
            dst[x / WORD] ^= 1u64 << (x % WORD);
        }
        for &x in entries.iter().skip(1) {
            let r = row_index[x as usize];
            if r != NO_ROW {
                let off = (r as usize - i - 1) * stride;
                xor_words(dst, &upper[off..off + stride]);
            }
        }
    }
    EchelonForm { matrix, pivot_cols }
}

/// Basis of the null space `{ v : m·v = 0 }`, one vector per free column.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    kernel_from_echelon(&echelonize(m))
}

/// Null space basis read off a reduced echelon form.
pub fn kernel_from_echelon(e: &EchelonForm) -> Vec<BitVec> {
    let cols = e.cols();
    e.free_cols()
        .into_iter()
        .map(|f| {
            let mut v = BitVec::unit(cols, f);
            for (i, &p) in e.pivot_cols().iter().enumerate() {
                if e.matrix().get(i, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Echelon form of the span of `vectors` (all of length `len`).
pub fn span(len: usize, vectors: &[BitVec]) -> EchelonForm {
    let mut b = EchelonBuilder::new(len);
    for v in vectors {
        b.insert(v);
    }
    b.finish()
}

/// Basis of the intersection of the spans of the given bases.
///
/// Pairwise: for `U ∩ V`, solve `Σ a_i u_i = Σ b_j v_j` through the kernel of
/// the stacked matrix `[U; V]` and map the `a` part back through `U`.
pub fn intersect_subspaces(bases: &[Vec<BitVec>]) -> Vec<BitVec> {
    let Some(first) = bases.first() else {
        return Vec::new();
    };
    let len = bases
        .iter()
        .flatten()
        .map(BitVec::len)
        .next()
        .unwrap_or(0);
    let mut current = span(len, first).rows();
    for other in &bases[1..] {
        if current.is_empty() {
            break;
        }
        current = intersect_pair(len, &current, &span(len, other).rows());
    }
    current
}

fn intersect_pair(len: usize, u: &[BitVec], v: &[BitVec]) -> Vec<BitVec> {
    let stacked: Vec<BitVec> = u.iter().chain(v).cloned().collect();
    // Rows of `stacked` are combined by kernel vectors of its transpose.
    let columns = BitMatrix::from_columns(len, &stacked);
    let relations = kernel_basis(&columns);
    let vectors: Vec<BitVec> = relations
        .iter()
        .map(|rel| {
            let mut acc = BitVec::zeros(len);
            for i in rel.iter_ones().take_while(|&i| i < u.len()) {
                acc.xor_assign(&u[i]);
            }
            acc
        })
        .collect();
    span(len, &vectors).rows()
}
