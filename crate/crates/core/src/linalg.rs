//! Sparse exact linear algebra.
//!
//! Vectors are sorted lists of `(index, value)` pairs without zero entries.
//! [`Echelon`] maintains a row-echelon basis of a growing subspace; every
//! rank, kernel, membership and coordinate computation in the crate goes
//! through it. The pivot of a row is its largest index (its "lead") and
//! rows are only reduced at indices below their pivot, so insertion never
//! rewrites earlier rows and the result depends only on the order in which
//! vectors are inserted. Pivoting on the largest index keeps fill-in low for
//! the matrices met in resolutions, whose coordinates list generators in
//! order of increasing twist.

use std::collections::BinaryHeap;

use crate::scalars::Field;

pub type SparseVec<E> = Vec<(u32, E)>;

/// Drop zeros and merge duplicate indices.
pub fn normalize<F: Field>(field: &F, mut v: SparseVec<F::El>) -> SparseVec<F::El> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::El> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out
}

pub fn scale<F: Field>(field: &F, v: &SparseVec<F::El>, c: &F::El) -> SparseVec<F::El> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(x, c))).collect()
}

/// `a + c * b`
pub fn axpy<F: Field>(field: &F, a: &SparseVec<F::El>, c: &F::El, b: &SparseVec<F::El>) -> SparseVec<F::El> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let jb = b.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ia < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ia {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((jb, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn unit<F: Field>(field: &F, i: usize) -> SparseVec<F::El> {
    vec![(i as u32, field.one())]
}

pub fn to_dense<F: Field>(field: &F, v: &SparseVec<F::El>, len: usize) -> Vec<F::El> {
    let mut out = vec![field.zero(); len];
    for (i, c) in v {
        out[*i as usize] = c.clone();
    }
    out
}

pub fn from_dense<F: Field>(field: &F, v: &[F::El]) -> SparseVec<F::El> {
    v.iter().enumerate().filter(|(_, c)| !field.is_zero(c)).map(|(i, c)| (i as u32, c.clone())).collect()
}

/// Dense accumulator remembering which positions were touched. A max-heap
/// over the touched positions lets elimination find the current lead; it
/// only grows with indices below the last one popped, because echelon rows
/// never reach above their pivot.
struct Scratch<E> {
    vals: Vec<E>,
    touched: Vec<u32>,
    is_touched: Vec<bool>,
    heap: BinaryHeap<u32>,
    in_heap: Vec<bool>,
}

impl<E: Clone> Scratch<E> {
    fn new(len: usize, zero: E) -> Self {
        Scratch {
            vals: vec![zero; len],
            touched: Vec::new(),
            is_touched: vec![false; len],
            heap: BinaryHeap::new(),
            in_heap: vec![false; len],
        }
    }

    fn ensure_len(&mut self, len: usize, zero: &E) {
        if self.vals.len() < len {
            self.vals.resize(len, zero.clone());
            self.is_touched.resize(len, false);
            self.in_heap.resize(len, false);
        }
    }

    #[inline]
    fn touch(&mut self, i: u32, ordered: bool) {
        let k = i as usize;
        if !self.is_touched[k] {
            self.is_touched[k] = true;
            self.touched.push(i);
        }
        if ordered && !self.in_heap[k] {
            self.in_heap[k] = true;
            self.heap.push(i);
        }
    }

    fn load<F: Field<El = E>>(&mut self, field: &F, v: &SparseVec<E>, ordered: bool) {
        for (i, c) in v {
            let slot = &mut self.vals[*i as usize];
            *slot = field.add(slot, c);
            self.touch(*i, ordered);
        }
    }

    /// `self -= c * v`
    fn sub_scaled<F: Field<El = E>>(&mut self, field: &F, c: &E, v: &SparseVec<E>, ordered: bool) {
        for (i, x) in v {
            field.sub_mul_assign(&mut self.vals[*i as usize], c, x);
            self.touch(*i, ordered);
        }
    }

    /// `self += c * v`
    fn add_scaled<F: Field<El = E>>(&mut self, field: &F, c: &E, v: &SparseVec<E>) {
        let minus = field.neg(c);
        self.sub_scaled(field, &minus, v, false);
    }

    /// Largest queued position, removed from the queue.
    fn pop_max(&mut self) -> Option<u32> {
        let i = self.heap.pop()?;
        self.in_heap[i as usize] = false;
        Some(i)
    }

    /// Collect the nonzero entries in index order and reset to zero.
    fn drain<F: Field<El = E>>(&mut self, field: &F) -> SparseVec<E> {
        let zero = field.zero();
        for i in self.heap.drain() {
            self.in_heap[i as usize] = false;
        }
        let mut touched = std::mem::take(&mut self.touched);
        touched.sort_unstable();
        let mut out = Vec::new();
        for &i in &touched {
            self.is_touched[i as usize] = false;
            let v = std::mem::replace(&mut self.vals[i as usize], zero.clone());
            if !field.is_zero(&v) {
                out.push((i, v));
            }
        }
        touched.clear();
        self.touched = touched;
        out
    }
}

const NONE: u32 = u32::MAX;

/// Row-echelon basis of a subspace of `F^len`, optionally tracking for each
/// row a "tag" vector recording how it was obtained.
pub struct Echelon<F: Field> {
    field: F,
    len: usize,
    rows: Vec<SparseVec<F::El>>,
    tags: Vec<SparseVec<F::El>>,
    /// Row index of each pivot position, `NONE` elsewhere.
    pivots: Vec<u32>,
    scratch: Scratch<F::El>,
    tag_scratch: Scratch<F::El>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, len: usize) -> Self {
        let zero = field.zero();
        Echelon {
            field,
            len,
            rows: Vec::new(),
            tags: Vec::new(),
            pivots: vec![NONE; len],
            scratch: Scratch::new(len, zero.clone()),
            tag_scratch: Scratch::new(0, zero),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[SparseVec<F::El>] {
        &self.rows
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r[r.len() - 1].0)
    }

    #[inline]
    fn pivot_row(&self, i: u32) -> Option<usize> {
        match self.pivots[i as usize] {
            NONE => None,
            r => Some(r as usize),
        }
    }

    pub fn is_pivot(&self, i: u32) -> bool {
        self.pivots.get(i as usize).is_some_and(|&r| r != NONE)
    }

    /// Reduce `v` until its lead is not a pivot. With `tag`, the
    /// tag scratch receives `sign * c * tag_row` for every row subtracted.
    fn reduce_core(&mut self, v: &SparseVec<F::El>, track: Option<bool>) -> SparseVec<F::El> {
        let field = self.field.clone();
        self.scratch.load(&field, v, true);
        while let Some(i) = self.scratch.pop_max() {
            if field.is_zero(&self.scratch.vals[i as usize]) {
                continue;
            }
            match self.pivot_row(i) {
                Some(r) => {
                    let c = self.scratch.vals[i as usize].clone();
                    self.scratch.sub_scaled(&field, &c, &self.rows[r], true);
                    // exact cancellation at the pivot
                    self.scratch.vals[i as usize] = field.zero();
                    match track {
                        Some(true) => self.tag_scratch.add_scaled(&field, &c, &self.tags[r]),
                        Some(false) => self.tag_scratch.sub_scaled(&field, &c, &self.tags[r], false),
                        None => {}
                    }
                }
                None => break,
            }
        }
        self.scratch.drain(&field)
    }

    /// Remainder of `v` modulo the span, with a non-pivot lead (or empty).
    pub fn reduce(&mut self, v: &SparseVec<F::El>) -> SparseVec<F::El> {
        self.reduce_core(v, None)
    }

    /// Remainder of `v` with every pivot coordinate eliminated, so that it is
    /// supported on non-pivot indices only.
    pub fn reduce_full(&mut self, v: &SparseVec<F::El>) -> SparseVec<F::El> {
        let field = self.field.clone();
        self.scratch.load(&field, v, true);
        while let Some(i) = self.scratch.pop_max() {
            if field.is_zero(&self.scratch.vals[i as usize]) {
                continue;
            }
            if let Some(r) = self.pivot_row(i) {
                let c = self.scratch.vals[i as usize].clone();
                self.scratch.sub_scaled(&field, &c, &self.rows[r], true);
                self.scratch.vals[i as usize] = field.zero();
            }
        }
        self.scratch.drain(&field)
    }

    pub fn contains(&mut self, v: &SparseVec<F::El>) -> bool {
        self.reduce(v).is_empty()
    }

    fn push_row(&mut self, rem: SparseVec<F::El>, tag: SparseVec<F::El>) {
        let (lead, c) = rem.last().expect("nonzero remainder");
        let lead = *lead;
        let lead_inv = self.field.inv(c).expect("nonzero lead");
        let row = scale(&self.field, &rem, &lead_inv);
        let tag = scale(&self.field, &tag, &lead_inv);
        self.pivots[lead as usize] = self.rows.len() as u32;
        self.rows.push(row);
        self.tags.push(tag);
    }

    /// Insert `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F::El>) -> bool {
        let rem = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        self.push_row(rem, Vec::new());
        true
    }

    /// Insert `v` carrying `tag`. If `v` is dependent, returns
    /// `tag - sum(c_r * tag_r)`, the tag of the zero combination.
    pub fn insert_tagged(
        &mut self,
        v: &SparseVec<F::El>,
        tag: &SparseVec<F::El>,
        tag_len: usize,
    ) -> Option<SparseVec<F::El>> {
        let field = self.field.clone();
        self.tag_scratch.ensure_len(tag_len, &field.zero());
        self.tag_scratch.load(&field, tag, false);
        let rem = self.reduce_core(v, Some(false));
        let tag_out = self.tag_scratch.drain(&field);
        if rem.is_empty() {
            Some(tag_out)
        } else {
            self.push_row(rem, tag_out);
            None
        }
    }

    /// Coordinates of `v` in terms of the tags of the rows, if `v` lies in the span.
    pub fn express(&mut self, v: &SparseVec<F::El>, tag_len: usize) -> Option<SparseVec<F::El>> {
        let field = self.field.clone();
        self.tag_scratch.ensure_len(tag_len, &field.zero());
        let rem = self.reduce_core(v, Some(true));
        let coords = self.tag_scratch.drain(&field);
        if rem.is_empty() {
            Some(coords)
        } else {
            None
        }
    }
}

/// Echelon basis whose row tags are coordinates with respect to the inserted
/// vectors, so that [`Coordinates::express`] solves for a combination of them.
pub struct Coordinates<F: Field> {
    ech: Echelon<F>,
    count: usize,
    dependent: usize,
}

impl<F: Field> Coordinates<F> {
    pub fn new(field: F, len: usize) -> Self {
        Coordinates { ech: Echelon::new(field, len), count: 0, dependent: 0 }
    }

    /// Add a spanning vector; returns its index.
    pub fn push(&mut self, v: &SparseVec<F::El>) -> usize {
        let idx = self.count;
        let field = self.ech.field.clone();
        self.count += 1;
        if self.ech.insert_tagged(v, &unit(&field, idx), self.count).is_some() {
            self.dependent += 1;
        }
        idx
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_independent(&self) -> bool {
        self.dependent == 0
    }

    pub fn express(&mut self, v: &SparseVec<F::El>) -> Option<SparseVec<F::El>> {
        let n = self.count;
        self.ech.express(v, n)
    }
}

pub fn rank<F: Field>(field: &F, len: usize, vectors: &[SparseVec<F::El>]) -> usize {
    let mut ech = Echelon::new(field.clone(), len);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Kernel of the linear map sending the `c`-th unit vector to `columns[c]`.
/// Kernel vectors are returned in the order their last column appears.
pub fn kernel<F: Field>(field: &F, target_len: usize, columns: &[SparseVec<F::El>]) -> Vec<SparseVec<F::El>> {
    let mut ech = Echelon::new(field.clone(), target_len);
    let mut out = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        if let Some(k) = ech.insert_tagged(col, &unit(field, c), columns.len()) {
            out.push(k);
        }
    }
    out
}

/// Dense matrix helper used where sizes are tiny.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<El = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| field.zero())
    }

    pub fn identity<F: Field<El = E>>(field: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { field.one() } else { field.zero() })
    }

    pub fn mul<F: Field<El = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if field.is_zero(b) {
                        continue;
                    }
                    let v = field.add(out.get(r, c), &field.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<El = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    /// Column `c` as a sparse vector.
    pub fn column<F: Field<El = E>>(&self, field: &F, c: usize) -> SparseVec<E> {
        (0..self.rows).filter(|&r| !field.is_zero(self.get(r, c))).map(|r| (r as u32, self.get(r, c).clone())).collect()
    }

    /// Matrix-vector product with a sparse vector.
    pub fn apply<F: Field<El = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut out = vec![field.zero(); self.rows];
        for (c, x) in v {
            for (r, slot) in out.iter_mut().enumerate() {
                let a = self.get(r, *c as usize);
                if !field.is_zero(a) {
                    *slot = field.add(slot, &field.mul(a, x));
                }
            }
        }
        from_dense(field, &out)
    }
}
