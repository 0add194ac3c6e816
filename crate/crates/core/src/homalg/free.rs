//! Graded free modules over the algebra and homogeneous matrices between them.
//!
//! An element of a free module `F` with basis `e_0, .., e_{n-1}` is stored
//! as a sparse k-vector in coordinates `c * dim R + b`, the coefficient of
//! `basis[b] * e_c`.

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::scalars::Field;

/// `R(-a_0) + .. + R(-a_{n-1})`; the generator `e_c` sits in degree `twists[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeModule {
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twist(&self, c: usize) -> i64 {
        self.twists[c]
    }

    /// `Hom_R(F, R)`: the dual basis sits in the negated degrees.
    pub fn dual(&self) -> FreeModule {
        FreeModule { twists: self.twists.iter().map(|t| -t).collect() }
    }

    /// Dimension over k.
    pub fn k_dim<F: Field>(&self, r: &GradedAlgebra<F>) -> usize {
        self.rank() * r.dim()
    }

    /// Internal degree of coordinate `idx`.
    pub fn degree_of<F: Field>(&self, r: &GradedAlgebra<F>, idx: u32) -> i64 {
        let n = r.dim();
        let (c, b) = (idx as usize / n, idx as usize % n);
        self.twists[c] + r.degree(b) as i64
    }

    /// Inclusive range of internal degrees in which `F` is nonzero.
    pub fn degree_range<F: Field>(&self, r: &GradedAlgebra<F>) -> Option<(i64, i64)> {
        let lo = *self.twists.iter().min()?;
        let hi = *self.twists.iter().max()? + r.top_degree() as i64;
        Some((lo, hi))
    }

    /// Coordinates of the degree-`e` piece, in increasing order.
    pub fn basis_of_degree<F: Field>(&self, r: &GradedAlgebra<F>, e: i64) -> Vec<u32> {
        let n = r.dim();
        let mut out = Vec::new();
        for (c, &t) in self.twists.iter().enumerate() {
            for b in r.indices_of_degree(e - t) {
                out.push((c * n + b) as u32);
            }
        }
        out
    }

    /// Rank per twist, i.e. the graded Betti numbers of a minimal resolution.
    pub fn twist_counts(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &t in &self.twists {
            *m.entry(t).or_insert(0) += 1;
        }
        m
    }
}

/// `basis[a] * v` for an element `v` of a free module.
pub fn mul_basis<F: Field>(r: &GradedAlgebra<F>, a: usize, v: &SparseVec<F::El>) -> SparseVec<F::El> {
    let f = r.field();
    let n = r.dim() as u32;
    let mut out = Vec::new();
    for (idx, x) in v {
        let (c, b) = (idx / n, idx % n);
        for (k, y) in r.product(a, b as usize) {
            out.push((c * n + k, f.mul(x, y)));
        }
    }
    linalg::normalize(f, out)
}

/// `a * v` for an algebra element `a` given by sparse coordinates.
pub fn mul_element<F: Field>(r: &GradedAlgebra<F>, a: &SparseVec<F::El>, v: &SparseVec<F::El>) -> SparseVec<F::El> {
    let f = r.field();
    let mut out = Vec::new();
    for (i, c) in a {
        for (k, y) in mul_basis(r, *i as usize, v) {
            out.push((k, f.mul(c, &y)));
        }
    }
    linalg::normalize(f, out)
}

/// Split a free-module element into its components `(c, element of R)`.
pub fn components<F: Field>(r: &GradedAlgebra<F>, v: &SparseVec<F::El>) -> Vec<(u32, SparseVec<F::El>)> {
    let n = r.dim() as u32;
    let mut out: Vec<(u32, SparseVec<F::El>)> = Vec::new();
    for (idx, x) in v {
        let (c, b) = (idx / n, idx % n);
        match out.last_mut() {
            Some((last, comp)) if *last == c => comp.push((b, x.clone())),
            _ => out.push((c, vec![(b, x.clone())])),
        }
    }
    out
}

/// Homogeneous map of free modules. `cols[c]` lists the nonzero entries
/// `(row, element of R)` of column `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix<F: Field> {
    pub source: FreeModule,
    pub target: FreeModule,
    cols: Vec<Vec<(u32, SparseVec<F::El>)>>,
}

impl<F: Field> RMatrix<F> {
    /// Checks shape and homogeneity: entry `(r, c)` must be homogeneous of
    /// degree `source.twist(c) - target.twist(r)`.
    pub fn new(
        r: &GradedAlgebra<F>,
        source: FreeModule,
        target: FreeModule,
        cols: Vec<Vec<(u32, SparseVec<F::El>)>>,
    ) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::DimensionMismatch { expected: source.rank(), actual: cols.len() });
        }
        let f = r.field();
        let mut clean = Vec::with_capacity(cols.len());
        for (c, col) in cols.into_iter().enumerate() {
            let mut entries: Vec<(u32, SparseVec<F::El>)> = Vec::new();
            for (row, a) in col {
                if row as usize >= target.rank() {
                    return Err(Error::DimensionMismatch { expected: target.rank(), actual: row as usize + 1 });
                }
                let a = linalg::normalize(f, a);
                if a.is_empty() {
                    continue;
                }
                let want = source.twist(c) - target.twist(row as usize);
                if let Some((b, _)) = a.iter().find(|(b, _)| r.degree(*b as usize) as i64 != want) {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({row}, {c}) has a term of degree {} where {want} is required",
                        r.degree(*b as usize)
                    )));
                }
                entries.push((row, a));
            }
            entries.sort_by_key(|(row, _)| *row);
            if entries.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Structure(format!("column {c} repeats a row")));
            }
            clean.push(entries);
        }
        Ok(RMatrix { source, target, cols: clean })
    }

    /// From a row-major grid of algebra elements (`None` or empty = 0).
    pub fn from_rows(
        r: &GradedAlgebra<F>,
        source: FreeModule,
        target: FreeModule,
        rows: Vec<Vec<SparseVec<F::El>>>,
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::DimensionMismatch { expected: target.rank(), actual: rows.len() });
        }
        let mut cols = vec![Vec::new(); source.rank()];
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::DimensionMismatch { expected: source.rank(), actual: row.len() });
            }
            for (c, a) in row.into_iter().enumerate() {
                cols[c].push((i as u32, a));
            }
        }
        Self::new(r, source, target, cols)
    }

    /// Matrix whose columns are the given free-module elements of `target`.
    pub fn from_columns(
        r: &GradedAlgebra<F>,
        source: FreeModule,
        target: FreeModule,
        columns: &[SparseVec<F::El>],
    ) -> Result<Self> {
        let cols = columns.iter().map(|v| components(r, v)).collect();
        Self::new(r, source, target, cols)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let cols = vec![Vec::new(); source.rank()];
        RMatrix { source, target, cols }
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn column(&self, c: usize) -> &[(u32, SparseVec<F::El>)] {
        &self.cols[c]
    }

    pub fn entry(&self, row: usize, c: usize) -> Option<&SparseVec<F::El>> {
        self.cols[c].iter().find(|(i, _)| *i as usize == row).map(|(_, a)| a)
    }

    /// Entries grouped by row: `rows[r]` lists `(column, element)`.
    pub fn rows(&self) -> Vec<Vec<(u32, &SparseVec<F::El>)>> {
        let mut rows = vec![Vec::new(); self.nrows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (i, a) in col {
                rows[*i as usize].push((c as u32, a));
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Every entry lies in the maximal ideal.
    pub fn is_minimal(&self, r: &GradedAlgebra<F>) -> bool {
        let one = r.unit_index() as u32;
        self.cols.iter().flatten().all(|(_, a)| a.iter().all(|(b, _)| *b != one))
    }

    /// Column `c` as a free-module element of the target.
    pub fn column_vector(&self, r: &GradedAlgebra<F>, c: usize) -> SparseVec<F::El> {
        let n = r.dim() as u32;
        let mut out = Vec::new();
        for (row, a) in &self.cols[c] {
            for (b, x) in a {
                out.push((row * n + b, x.clone()));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Image of the source coordinate `basis[b] * e_c`.
    pub fn image_of(&self, r: &GradedAlgebra<F>, c: usize, b: usize) -> SparseVec<F::El> {
        mul_basis(r, b, &self.column_vector(r, c))
    }

    /// Image of an arbitrary source element.
    pub fn apply(&self, r: &GradedAlgebra<F>, v: &SparseVec<F::El>) -> SparseVec<F::El> {
        let f = r.field();
        let n = r.dim() as u32;
        let mut out = Vec::new();
        for (idx, x) in v {
            for (k, y) in self.image_of(r, (idx / n) as usize, (idx % n) as usize) {
                out.push((k, f.mul(x, &y)));
            }
        }
        linalg::normalize(f, out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, r: &GradedAlgebra<F>, other: &RMatrix<F>) -> Result<RMatrix<F>> {
        if other.target != self.source {
            return Err(Error::Structure("matrices are not composable".into()));
        }
        let cols: Vec<SparseVec<F::El>> =
            (0..other.ncols()).map(|c| self.apply(r, &other.column_vector(r, c))).collect();
        RMatrix::from_columns(r, other.source.clone(), self.target.clone(), &cols)
    }

    /// `Hom_R(-, R)` of the map: the transpose between dual free modules.
    pub fn transpose(&self) -> RMatrix<F> {
        let mut cols = vec![Vec::new(); self.nrows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (row, a) in col {
                cols[*row as usize].push((c as u32, a.clone()));
            }
        }
        RMatrix { source: self.target.dual(), target: self.source.dual(), cols }
    }

    /// Rank over k, summed over internal degrees.
    pub fn k_rank(&self, r: &GradedAlgebra<F>) -> usize {
        let Some((lo, hi)) = self.source.degree_range(r) else { return 0 };
        (lo..=hi).map(|e| self.rank_in_degree(r, e)).sum()
    }

    pub fn rank_in_degree(&self, r: &GradedAlgebra<F>, e: i64) -> usize {
        let n = r.dim();
        let mut ech = Echelon::new(r.field().clone(), self.target.k_dim(r));
        for idx in self.source.basis_of_degree(r, e) {
            let (c, b) = (idx as usize / n, idx as usize % n);
            ech.insert(&self.image_of(r, c, b));
        }
        ech.rank()
    }

    /// Display entries with the algebra's residue-class names.
    pub fn display(&self, r: &GradedAlgebra<F>) -> Vec<Vec<String>> {
        let f = r.field();
        (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|c| match self.entry(i, c) {
                        None => "0".to_string(),
                        Some(a) => format_element(r, f, a),
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn format_element<F: Field>(r: &GradedAlgebra<F>, f: &F, a: &SparseVec<F::El>) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (b, c)) in a.iter().enumerate() {
        let name = r.basis_name(*b as usize);
        let coeff = f.format(c);
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, coeff),
        };
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        match (mag.as_str(), name.as_str()) {
            (m, "1") => out.push_str(m),
            ("1", n) => out.push_str(n),
            (m, n) => out.push_str(&format!("{m}*{n}")),
        }
    }
    out
}
