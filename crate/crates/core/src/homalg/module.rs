//! Finitely generated graded modules, stored as finite-dimensional graded
//! k-representations: a homogeneous k-basis and the action of each ring
//! variable on it.

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::homalg::free::{self, FreeModule, RMatrix};
use crate::homalg::resolution::GradedSubspace;
use crate::linalg::{self, Coordinates, Echelon, SparseVec};
use crate::scalars::Field;

/// Columns of a linear map: `cols[j]` is the image of the `j`-th basis vector.
pub type SparseCols<E> = Vec<SparseVec<E>>;

/// Where a submodule of a free module sits: `vectors[j]` is the ambient
/// element corresponding to the `j`-th basis vector.
#[derive(Clone, Debug)]
pub struct Embedding<E> {
    pub ambient: FreeModule,
    pub vectors: Vec<SparseVec<E>>,
}

#[derive(Clone, Debug)]
pub struct FpModule<F: Field> {
    name: String,
    degrees: Vec<i64>,
    /// One matrix per ring variable.
    actions: Vec<SparseCols<F::El>>,
    /// One matrix per basis element of the algebra.
    basis_actions: Vec<SparseCols<F::El>>,
    embedding: Option<Embedding<F::El>>,
}

impl<F: Field> FpModule<F> {
    /// Build from variable actions and check that they define an `R`-module:
    /// homogeneity, commutativity, and every defining relation acting as 0.
    pub fn from_actions(
        r: &GradedAlgebra<F>,
        name: impl Into<String>,
        degrees: Vec<i64>,
        actions: Vec<SparseCols<F::El>>,
    ) -> Result<Self> {
        let name = name.into();
        let dim = degrees.len();
        if actions.len() != r.ngens() {
            return Err(Error::DimensionMismatch { expected: r.ngens(), actual: actions.len() });
        }
        let f = r.field();
        let actions: Vec<SparseCols<F::El>> =
            actions.into_iter().map(|cols| cols.into_iter().map(|c| linalg::normalize(f, c)).collect()).collect();
        for (g, cols) in actions.iter().enumerate() {
            if cols.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: cols.len() });
            }
            for (j, col) in cols.iter().enumerate() {
                if let Some((i, _)) =
                    col.iter().find(|(i, _)| (*i as usize) >= dim || degrees[*i as usize] != degrees[j] + 1)
                {
                    return Err(Error::NotHomogeneous(format!(
                        "{name}: variable {g} sends basis vector {j} to coordinate {i}"
                    )));
                }
            }
        }
        let mut m = FpModule { name, degrees, actions, basis_actions: Vec::new(), embedding: None };
        m.check_relations(r)?;
        m.basis_actions = m.compute_basis_actions(r);
        Ok(m)
    }

    fn apply_var(&self, f: &F, g: usize, v: &SparseVec<F::El>) -> SparseVec<F::El> {
        let mut out = Vec::new();
        for (j, x) in v {
            for (i, y) in &self.actions[g][*j as usize] {
                out.push((*i, f.mul(x, y)));
            }
        }
        linalg::normalize(f, out)
    }

    fn check_relations(&self, r: &GradedAlgebra<F>) -> Result<()> {
        let f = r.field();
        let n = r.ngens();
        for j in 0..self.dim() {
            let e = linalg::unit(f, j);
            for g in 0..n {
                for h in (g + 1)..n {
                    let gh = self.apply_var(f, g, &self.apply_var(f, h, &e));
                    let hg = self.apply_var(f, h, &self.apply_var(f, g, &e));
                    if gh != hg {
                        return Err(Error::Structure(format!(
                            "{}: actions of variables {g} and {h} do not commute",
                            self.name
                        )));
                    }
                }
            }
            for (k, (rel, _)) in r.presentation().relations.generators.iter().enumerate() {
                let mut acc = Vec::new();
                for (mono, c) in &rel.terms {
                    let mut v = e.clone();
                    for (var, &exp) in mono.0.iter().enumerate().take(n) {
                        for _ in 0..exp {
                            v = self.apply_var(f, var, &v);
                        }
                    }
                    acc.extend(linalg::scale(f, &v, c));
                }
                if !linalg::normalize(f, acc).is_empty() {
                    return Err(Error::Structure(format!("{}: relation {k} does not act as zero", self.name)));
                }
            }
        }
        Ok(())
    }

    fn compute_basis_actions(&self, r: &GradedAlgebra<F>) -> Vec<SparseCols<F::El>> {
        let f = r.field();
        let mut out: Vec<Option<SparseCols<F::El>>> = vec![None; r.dim()];
        // basis monomials are closed under division, so building them in
        // degree order only ever needs already-computed factors
        let mut order: Vec<usize> = (0..r.dim()).collect();
        order.sort_by_key(|&b| r.degree(b));
        for b in order {
            let mono = r.basis()[b];
            let cols = match (0..r.ngens()).find(|&v| mono.0[v] > 0) {
                None => (0..self.dim()).map(|j| linalg::unit(f, j)).collect(),
                Some(v) => {
                    let rest =
                        crate::polyring::Monomial::var(v).quotient_into(&mono).expect("variable divides monomial");
                    let rest_idx = r.index_of(&rest).expect("standard monomials are closed under division");
                    let prev = out[rest_idx].as_ref().expect("lower degree computed first");
                    prev.iter().map(|col| self.apply_var(f, v, col)).collect()
                }
            };
            out[b] = Some(cols);
        }
        out.into_iter().map(|c| c.expect("every basis element visited")).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, j: usize) -> i64 {
        self.degrees[j]
    }

    pub fn embedding(&self) -> Option<&Embedding<F::El>> {
        self.embedding.as_ref()
    }

    /// Matrix of the `g`-th ring variable.
    pub fn action(&self, g: usize) -> &SparseCols<F::El> {
        &self.actions[g]
    }

    /// Matrix of the `b`-th algebra basis element.
    pub fn basis_action(&self, b: usize) -> &SparseCols<F::El> {
        &self.basis_actions[b]
    }

    pub fn basis_of_degree(&self, e: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.degrees[j] == e).collect()
    }

    pub fn hilbert_function(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    /// `basis[b] * v`.
    pub fn act(&self, f: &F, b: usize, v: &SparseVec<F::El>) -> SparseVec<F::El> {
        let mut out = Vec::new();
        for (j, x) in v {
            for (i, y) in &self.basis_actions[b][*j as usize] {
                out.push((*i, f.mul(x, y)));
            }
        }
        linalg::normalize(f, out)
    }

    /// `a * e_j` for an algebra element `a`.
    pub fn act_element_on_basis(&self, f: &F, a: &SparseVec<F::El>, j: usize) -> SparseVec<F::El> {
        let mut out = Vec::new();
        for (b, c) in a {
            for (i, y) in &self.basis_actions[*b as usize][j] {
                out.push((*i, f.mul(c, y)));
            }
        }
        linalg::normalize(f, out)
    }

    /// Basis indices forming a minimal generating set: a complement of
    /// `m X` chosen degree by degree, lowest index first.
    pub fn minimal_generators(&self, r: &GradedAlgebra<F>) -> Vec<usize> {
        let f = r.field();
        let mut out = Vec::new();
        let degrees: std::collections::BTreeSet<i64> = self.degrees.iter().copied().collect();
        for e in degrees {
            let mut ech = Echelon::new(f.clone(), self.dim());
            for j in self.basis_of_degree(e - 1) {
                for g in 0..r.ngens() {
                    ech.insert(&self.actions[g][j]);
                }
            }
            for j in self.basis_of_degree(e) {
                if ech.insert(&linalg::unit(f, j)) {
                    out.push(j);
                }
            }
        }
        out
    }

    /// `{x : m x = 0}`.
    pub fn socle_dim(&self, r: &GradedAlgebra<F>) -> usize {
        let cols: Vec<SparseVec<F::El>> = (0..self.dim())
            .map(|j| {
                let mut col = Vec::new();
                for g in 0..r.ngens() {
                    for (i, y) in &self.actions[g][j] {
                        col.push(((g * self.dim()) as u32 + i, y.clone()));
                    }
                }
                col
            })
            .collect();
        linalg::kernel(r.field(), self.dim() * r.ngens(), &cols).len()
    }

    /// `Coker(A)` for a homogeneous matrix `A: F -> G`; the basis is the set
    /// of coordinates of `G` that are not pivots of `Im A`, degree by degree.
    pub fn cokernel(r: &GradedAlgebra<F>, name: impl Into<String>, a: &RMatrix<F>) -> Result<Self> {
        let f = r.field();
        let g = &a.target;
        let n = r.dim();
        let Some((lo, hi)) = g.degree_range(r) else {
            return Self::from_actions(r, name, Vec::new(), vec![Vec::new(); r.ngens()]);
        };
        let mut echelons: BTreeMap<i64, Echelon<F>> = BTreeMap::new();
        let mut degrees = Vec::new();
        let mut coord_to_basis: BTreeMap<u32, usize> = BTreeMap::new();
        for e in lo..=hi {
            let mut ech = Echelon::new(f.clone(), g.k_dim(r));
            for idx in a.source.basis_of_degree(r, e) {
                ech.insert(&a.image_of(r, idx as usize / n, idx as usize % n));
            }
            for idx in g.basis_of_degree(r, e) {
                if !ech.is_pivot(idx) {
                    coord_to_basis.insert(idx, degrees.len());
                    degrees.push(e);
                }
            }
            echelons.insert(e, ech);
        }
        let reps: Vec<u32> = {
            let mut v: Vec<(usize, u32)> = coord_to_basis.iter().map(|(c, j)| (*j, *c)).collect();
            v.sort();
            v.into_iter().map(|(_, c)| c).collect()
        };
        let mut actions = vec![Vec::with_capacity(reps.len()); r.ngens()];
        for (gi, &gen) in r.generator_indices().iter().enumerate() {
            for (j, &coord) in reps.iter().enumerate() {
                let image = free::mul_basis(r, gen, &linalg::unit(f, coord as usize));
                let col = match echelons.get_mut(&(degrees[j] + 1)) {
                    None => Vec::new(),
                    Some(ech) => {
                        ech.reduce_full(&image).into_iter().map(|(i, c)| (coord_to_basis[&i] as u32, c)).collect()
                    }
                };
                actions[gi].push(col);
            }
        }
        Self::from_actions(r, name, degrees, actions)
    }

    /// A graded `R`-submodule of a free module, with its embedding recorded.
    pub fn submodule(r: &GradedAlgebra<F>, name: impl Into<String>, s: &GradedSubspace<F::El>) -> Result<Self> {
        let f = r.field();
        let len = s.ambient.k_dim(r);
        let mut degrees = Vec::new();
        let mut vectors = Vec::new();
        let mut offsets = BTreeMap::new();
        let mut coords: BTreeMap<i64, Coordinates<F>> = BTreeMap::new();
        for (&e, piece) in &s.pieces {
            offsets.insert(e, vectors.len());
            let mut c = Coordinates::new(f.clone(), len);
            for v in piece {
                c.push(v);
                degrees.push(e);
                vectors.push(v.clone());
            }
            if !c.is_independent() {
                return Err(Error::Inconsistent(format!("degree {e} piece is not a basis")));
            }
            coords.insert(e, c);
        }
        let name = name.into();
        let mut actions = vec![Vec::with_capacity(vectors.len()); r.ngens()];
        for (gi, &gen) in r.generator_indices().iter().enumerate() {
            for (j, v) in vectors.iter().enumerate() {
                let image = free::mul_basis(r, gen, v);
                let e = degrees[j] + 1;
                let col = if image.is_empty() {
                    Vec::new()
                } else {
                    let c = coords
                        .get_mut(&e)
                        .ok_or_else(|| Error::Structure(format!("{name}: not closed under the action")))?;
                    let x = c
                        .express(&image)
                        .ok_or_else(|| Error::Structure(format!("{name}: not closed under the action")))?;
                    x.into_iter().map(|(i, y)| (i + offsets[&e] as u32, y)).collect()
                };
                actions[gi].push(col);
            }
        }
        let mut m = Self::from_actions(r, name, degrees, actions)?;
        m.embedding = Some(Embedding { ambient: s.ambient.clone(), vectors });
        Ok(m)
    }

    /// `R / (forms)` for homogeneous algebra elements.
    pub fn cyclic(r: &GradedAlgebra<F>, name: impl Into<String>, forms: &[SparseVec<F::El>]) -> Result<Self> {
        let mut twists = Vec::new();
        for a in forms {
            let d = a
                .first()
                .map(|(b, _)| r.degree(*b as usize) as i64)
                .ok_or_else(|| Error::Structure("zero relation in cyclic module".into()))?;
            twists.push(d);
        }
        let source = FreeModule::new(twists);
        let target = FreeModule::new(vec![0]);
        let rows = vec![forms.to_vec()];
        let a = RMatrix::from_rows(r, source, target, rows)?;
        Self::cokernel(r, name, &a)
    }

    /// The free module `R` itself.
    pub fn free_rank_one(r: &GradedAlgebra<F>) -> Result<Self> {
        Self::cyclic(r, "R", &[])
    }

    /// The residue field `k = R / m`.
    pub fn residue_field(r: &GradedAlgebra<F>) -> Result<Self> {
        let forms: Vec<SparseVec<F::El>> = r.generator_indices().iter().map(|&g| linalg::unit(r.field(), g)).collect();
        Self::cyclic(r, "k", &forms)
    }

    /// `k^n` concentrated in degree 0.
    pub fn trivial(r: &GradedAlgebra<F>, name: impl Into<String>, n: usize) -> Result<Self> {
        Self::from_actions(r, name, vec![0; n], vec![vec![Vec::new(); n]; r.ngens()])
    }

    pub fn direct_sum(r: &GradedAlgebra<F>, a: &Self, b: &Self) -> Result<Self> {
        let shift = a.dim() as u32;
        let mut degrees = a.degrees.clone();
        degrees.extend(&b.degrees);
        let actions = (0..r.ngens())
            .map(|g| {
                let mut cols = a.actions[g].clone();
                cols.extend(b.actions[g].iter().map(|c| c.iter().map(|(i, x)| (i + shift, x.clone())).collect()));
                cols
            })
            .collect();
        Self::from_actions(r, format!("{}+{}", a.name, b.name), degrees, actions)
    }

    /// `Hom_k(X, k)`: negated degrees and transposed actions.
    pub fn matlis_dual(&self, r: &GradedAlgebra<F>) -> Result<Self> {
        let degrees = self.degrees.iter().map(|d| -d).collect();
        let actions = self.actions.iter().map(|cols| transpose_cols(cols, self.dim())).collect();
        Self::from_actions(r, format!("{}^v", self.name), degrees, actions)
    }

    /// Dimension of `Hom_R(self, other)`, by solving the commutation
    /// equations directly. Used as an independent check on isomorphisms.
    pub fn hom_dim(&self, r: &GradedAlgebra<F>, other: &Self) -> usize {
        let f = r.field();
        let (m, n) = (self.dim(), other.dim());
        // unknown phi(i <- j) at index i * m + j, for phi: self -> other
        let idx = |i: usize, j: usize| (i * m + j) as u32;
        let mut rows: Vec<SparseVec<F::El>> = Vec::new();
        for g in 0..r.ngens() {
            // phi A_g - B_g phi = 0, entry (i, j)
            let bt = transpose_cols(&other.actions[g], n);
            for i in 0..n {
                for j in 0..m {
                    let mut row = Vec::new();
                    for (k, a) in &self.actions[g][j] {
                        row.push((idx(i, *k as usize), a.clone()));
                    }
                    for (k, b) in &bt[i] {
                        row.push((idx(*k as usize, j), f.neg(b)));
                    }
                    let row = linalg::normalize(f, row);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        // graded maps of every shift: no degree restriction on phi
        m * n - linalg::rank(f, m * n, &rows)
    }
}

fn transpose_cols<E: Clone>(cols: &SparseCols<E>, dim: usize) -> SparseCols<E> {
    let mut out: SparseCols<E> = vec![Vec::new(); dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            out[*i as usize].push((j as u32, x.clone()));
        }
    }
    out
}
