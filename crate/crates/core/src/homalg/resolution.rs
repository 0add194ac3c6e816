//! Graded kernels, minimal generators and minimal free resolutions.
//!
//! Since the algebra is finite-dimensional, every graded piece of a free
//! module is a finite-dimensional k-space. Kernels are computed one internal
//! degree at a time by exact elimination, and minimal generators of a
//! submodule `S` are a complement of `(m S)_e` inside `S_e`.

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::homalg::complex::Complex;
use crate::homalg::free::{self, FreeModule, RMatrix};
use crate::homalg::module::FpModule;
use crate::linalg::{self, Echelon, SparseVec};
use crate::scalars::Field;

/// A graded k-subspace of a free module, by a basis of each graded piece.
#[derive(Clone, Debug)]
pub struct GradedSubspace<E> {
    pub ambient: FreeModule,
    pub pieces: BTreeMap<i64, Vec<SparseVec<E>>>,
}

impl<E> GradedSubspace<E> {
    pub fn dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn dim_in_degree(&self, e: i64) -> usize {
        self.pieces.get(&e).map_or(0, Vec::len)
    }

    pub fn hilbert_function(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().filter(|(_, v)| !v.is_empty()).map(|(e, v)| (*e, v.len())).collect()
    }
}

impl<E: Clone> GradedSubspace<E> {
    pub fn basis(&self) -> Vec<SparseVec<E>> {
        self.pieces.values().flatten().cloned().collect()
    }
}

/// Kernel of the k-linear map on `source` sending the coordinate
/// `basis[b] * e_c` to `image(c, b)`, a vector of length `target_len`.
pub fn kernel_with<F: Field>(
    r: &GradedAlgebra<F>,
    source: &FreeModule,
    target_len: usize,
    image: impl Fn(usize, usize) -> SparseVec<F::El>,
) -> GradedSubspace<F::El> {
    let mut pieces = BTreeMap::new();
    if let Some((lo, hi)) = source.degree_range(r) {
        for e in lo..=hi {
            let piece = kernel_piece(r, source, target_len, &image, e);
            if !piece.is_empty() {
                pieces.insert(e, piece);
            }
        }
    }
    GradedSubspace { ambient: source.clone(), pieces }
}

/// The degree-`e` piece of [`kernel_with`].
fn kernel_piece<F: Field>(
    r: &GradedAlgebra<F>,
    source: &FreeModule,
    target_len: usize,
    image: &impl Fn(usize, usize) -> SparseVec<F::El>,
    e: i64,
) -> Vec<SparseVec<F::El>> {
    let n = r.dim();
    let coords = source.basis_of_degree(r, e);
    if coords.is_empty() {
        return Vec::new();
    }
    let cols: Vec<SparseVec<F::El>> = coords.iter().map(|&idx| image(idx as usize / n, idx as usize % n)).collect();
    let ker = linalg::kernel(r.field(), target_len, &cols);
    drop(cols);
    ker.into_iter().map(|v| v.into_iter().map(|(k, x)| (coords[k as usize], x)).collect()).collect()
}

/// Per-degree k-basis of `Ker m`.
pub fn graded_kernel<F: Field>(r: &GradedAlgebra<F>, m: &RMatrix<F>) -> GradedSubspace<F::El> {
    let columns: Vec<SparseVec<F::El>> = (0..m.ncols()).map(|c| m.column_vector(r, c)).collect();
    kernel_with(r, &m.source, m.target.k_dim(r), |c, b| free::mul_basis(r, b, &columns[c]))
}

/// Per-degree k-basis of `Im m`.
pub fn graded_image<F: Field>(r: &GradedAlgebra<F>, m: &RMatrix<F>) -> GradedSubspace<F::El> {
    let n = r.dim();
    let columns: Vec<SparseVec<F::El>> = (0..m.ncols()).map(|c| m.column_vector(r, c)).collect();
    let mut pieces = BTreeMap::new();
    if let Some((lo, hi)) = m.source.degree_range(r) {
        for e in lo..=hi {
            let mut ech = Echelon::new(r.field().clone(), m.target.k_dim(r));
            let mut basis = Vec::new();
            for idx in m.source.basis_of_degree(r, e) {
                let v = free::mul_basis(r, idx as usize % n, &columns[idx as usize / n]);
                if ech.insert(&v) {
                    basis.push(v);
                }
            }
            if !basis.is_empty() {
                pieces.insert(e, basis);
            }
        }
    }
    GradedSubspace { ambient: m.target.clone(), pieces }
}

/// The `R`-submodule generated by homogeneous elements of a free module.
pub fn submodule_span<F: Field>(
    r: &GradedAlgebra<F>,
    ambient: &FreeModule,
    gens: &[SparseVec<F::El>],
) -> GradedSubspace<F::El> {
    let mut by_degree: BTreeMap<i64, (Echelon<F>, Vec<SparseVec<F::El>>)> = BTreeMap::new();
    for g in gens {
        for b in 0..r.dim() {
            let v = free::mul_basis(r, b, g);
            let Some((idx, _)) = v.first() else { continue };
            let e = ambient.degree_of(r, *idx);
            let (ech, basis) =
                by_degree.entry(e).or_insert_with(|| (Echelon::new(r.field().clone(), ambient.k_dim(r)), Vec::new()));
            if ech.insert(&v) {
                basis.push(v);
            }
        }
    }
    GradedSubspace { ambient: ambient.clone(), pieces: by_degree.into_iter().map(|(e, (_, b))| (e, b)).collect() }
}

/// Homogeneous elements whose classes form a k-basis of `S / m S`: lowest
/// degree first, and within a degree the first basis vectors of `S_e` that
/// are independent modulo `(m S)_e`.
pub fn minimal_generators<F: Field>(r: &GradedAlgebra<F>, s: &GradedSubspace<F::El>) -> Vec<(i64, SparseVec<F::El>)> {
    let mut out = Vec::new();
    let len = s.ambient.k_dim(r);
    for (&e, piece) in &s.pieces {
        let prev = s.pieces.get(&(e - 1)).map(Vec::as_slice).unwrap_or(&[]);
        let chosen = generators_in_degree(r, len, piece, prev);
        out.extend(chosen.into_iter().map(|j| (e, piece[j].clone())));
    }
    out
}

/// Indices into `piece` (a basis of `S_e`) of a complement of `m * S_{e-1}`,
/// where `prev` is a basis of `S_{e-1}`.
fn generators_in_degree<F: Field>(
    r: &GradedAlgebra<F>,
    len: usize,
    piece: &[SparseVec<F::El>],
    prev: &[SparseVec<F::El>],
) -> Vec<usize> {
    match Triangular::detect(piece) {
        Some(tri) => tri.complement(r, piece, prev),
        None => complement_in_ambient(r, len, piece, prev),
    }
}

/// Minimal generators of `Ker m`, computed one degree at a time so that only
/// two graded pieces of the kernel are alive at once.
pub fn kernel_generators<F: Field>(r: &GradedAlgebra<F>, m: &RMatrix<F>) -> Vec<(i64, SparseVec<F::El>)> {
    let columns: Vec<SparseVec<F::El>> = (0..m.ncols()).map(|c| m.column_vector(r, c)).collect();
    let image = |c: usize, b: usize| free::mul_basis(r, b, &columns[c]);
    let (len, target_len) = (m.source.k_dim(r), m.target.k_dim(r));
    let mut out = Vec::new();
    let mut prev: Vec<SparseVec<F::El>> = Vec::new();
    if let Some((lo, hi)) = m.source.degree_range(r) {
        for e in lo..=hi {
            let piece = kernel_piece(r, &m.source, target_len, &image, e);
            for j in generators_in_degree(r, len, &piece, &prev) {
                out.push((e, piece[j].clone()));
            }
            prev = piece;
        }
    }
    out
}

/// Indices of the vectors of `piece` that extend `m * prev` to a basis of
/// the span of `piece`, working in the ambient space.
fn complement_in_ambient<F: Field>(
    r: &GradedAlgebra<F>,
    len: usize,
    piece: &[SparseVec<F::El>],
    prev: &[SparseVec<F::El>],
) -> Vec<usize> {
    let mut ech = Echelon::new(r.field().clone(), len);
    for v in prev {
        for &g in r.generator_indices() {
            ech.insert(&free::mul_basis(r, g, v));
        }
    }
    (0..piece.len()).filter(|&j| ech.insert(&piece[j])).collect()
}

/// A basis in which every vector owns one coordinate and, among the owned
/// coordinates, touches only its own and smaller ones (or, in the other
/// orientation, its own and larger ones). Projecting onto the owned
/// coordinates is then triangular, hence injective on the span, so
/// complements can be found in a space of dimension equal to the number of
/// vectors.
struct Triangular {
    /// Ambient coordinate to position in the projected space.
    position: std::collections::HashMap<u32, u32>,
    /// Position owned by each basis vector.
    owned: Vec<u32>,
}

impl Triangular {
    fn detect<E>(piece: &[SparseVec<E>]) -> Option<Self> {
        let n = piece.len() as u32;
        let distinct = |keys: &[u32]| {
            let mut sorted = keys.to_vec();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        };
        // Kernel and echelon bases: each vector ends at its own coordinate,
        // so among the owned coordinates it touches, its own is the largest.
        let last: Vec<u32> = piece.iter().map(|v| v.last().map(|x| x.0)).collect::<Option<_>>()?;
        if distinct(&last) {
            return Some(Self::with_order(&last, |k| k));
        }
        // Bases echelonized the other way round start at their own
        // coordinate; positions then run in reverse.
        let first: Vec<u32> = piece.iter().map(|v| v[0].0).collect();
        if distinct(&first) {
            return Some(Self::with_order(&first, |k| n - 1 - k));
        }
        None
    }

    fn with_order(owned_coords: &[u32], place: impl Fn(u32) -> u32) -> Self {
        let mut order = owned_coords.to_vec();
        order.sort_unstable();
        let position: std::collections::HashMap<u32, u32> =
            order.iter().enumerate().map(|(k, &c)| (c, place(k as u32))).collect();
        let owned = owned_coords.iter().map(|c| position[c]).collect();
        Triangular { position, owned }
    }

    fn project<E: Clone>(&self, v: &SparseVec<E>) -> SparseVec<E> {
        let mut out: SparseVec<E> =
            v.iter().filter_map(|(i, c)| self.position.get(i).map(|&p| (p, c.clone()))).collect();
        out.sort_unstable_by_key(|(p, _)| *p);
        out
    }

    fn complement<F: Field>(
        &self,
        r: &GradedAlgebra<F>,
        piece: &[SparseVec<F::El>],
        prev: &[SparseVec<F::El>],
    ) -> Vec<usize> {
        let mut ech = Echelon::new(r.field().clone(), piece.len());
        for v in prev {
            for &g in r.generator_indices() {
                ech.insert(&self.project(&free::mul_basis(r, g, v)));
            }
        }
        // Projections of the chosen vectors have distinct non-pivot leads,
        // hence are independent of each other and of the rows.
        (0..piece.len()).filter(|&j| !ech.is_pivot(self.owned[j])).collect()
    }
}

/// Graded Betti numbers: `graded[i][j]` is the number of generators of
/// `F_i` in internal degree `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub graded: Vec<BTreeMap<i64, usize>>,
}

impl BettiTable {
    pub fn totals(&self) -> Vec<usize> {
        self.graded.iter().map(|m| m.values().sum()).collect()
    }

    pub fn total(&self, i: usize) -> usize {
        self.graded.get(i).map_or(0, |m| m.values().sum())
    }

    /// Every `F_i` is generated in degree `i + shift` for a single `shift`.
    pub fn is_linear(&self) -> bool {
        let mut shift = None;
        for (i, m) in self.graded.iter().enumerate() {
            for &j in m.keys() {
                let s = j - i as i64;
                if *shift.get_or_insert(s) != s {
                    return false;
                }
            }
        }
        true
    }
}

/// A minimal free resolution `F_n -> .. -> F_0`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub complex: Complex<F>,
    /// Module basis indices of the generators that `F_0` maps onto.
    pub generators: Vec<usize>,
}

impl<F: Field> Resolution<F> {
    pub fn length(&self) -> usize {
        self.complex.hi() as usize
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable { graded: self.complex.modules().iter().map(FreeModule::twist_counts).collect() }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.betti().totals()
    }
}

fn next_step<F: Field>(r: &GradedAlgebra<F>, d: &RMatrix<F>) -> Result<RMatrix<F>> {
    let gens = kernel_generators(r, d);
    let source = FreeModule::new(gens.iter().map(|(e, _)| *e).collect());
    let cols: Vec<SparseVec<F::El>> = gens.into_iter().map(|(_, v)| v).collect();
    RMatrix::from_columns(r, source, d.source.clone(), &cols)
}

fn extend<F: Field>(
    r: &GradedAlgebra<F>,
    modules: &mut Vec<FreeModule>,
    maps: &mut Vec<RMatrix<F>>,
    n: usize,
) -> Result<()> {
    while modules.len() < n + 1 {
        let d = next_step(r, maps.last().expect("at least one map"))?;
        modules.push(d.source.clone());
        maps.push(d);
    }
    Ok(())
}

/// Minimal free resolution of `x` through homological degree `n`.
pub fn min_free_resolution<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, n: usize) -> Result<Resolution<F>> {
    let f = r.field();
    let generators = x.minimal_generators(r);
    let f0 = FreeModule::new(generators.iter().map(|&j| x.degree(j)).collect());
    let mut modules = vec![f0.clone()];
    let mut maps = Vec::new();
    if n >= 1 {
        let k0 = kernel_with(r, &f0, x.dim(), |c, b| x.act(f, b, &linalg::unit(f, generators[c])));
        let gens = minimal_generators(r, &k0);
        let f1 = FreeModule::new(gens.iter().map(|(e, _)| *e).collect());
        let cols: Vec<SparseVec<F::El>> = gens.into_iter().map(|(_, v)| v).collect();
        maps.push(RMatrix::from_columns(r, f1.clone(), f0, &cols)?);
        modules.push(f1);
        extend(r, &mut modules, &mut maps, n)?;
    }
    let complex = Complex::new(0, modules, maps, true, false)?;
    Ok(Resolution { complex, generators })
}

/// Resolution of `Coker d1` continuing a given first differential
/// (minimal from `F_2` on): `F_0 = target`, `F_1 = source`, then syzygies up to `F_n`.
pub fn resolve_from<F: Field>(r: &GradedAlgebra<F>, d1: RMatrix<F>, n: usize) -> Result<Complex<F>> {
    let mut modules = vec![d1.target.clone(), d1.source.clone()];
    let mut maps = vec![d1];
    extend(r, &mut modules, &mut maps, n.max(1))?;
    let complex = Complex::new(0, modules, maps, true, false)?;
    if n == 0 {
        return complex.window(0, 0);
    }
    Ok(complex)
}

/// Continue `c` by minimal syzygies of its top differential until its top
/// spot is `hi`. The new differentials are built from kernel vectors of the
/// previous ones, so they compose to zero by construction.
pub fn extend_by_syzygies<F: Field>(r: &GradedAlgebra<F>, c: Complex<F>, hi: i64) -> Result<Complex<F>> {
    if hi <= c.hi() {
        return Ok(c);
    }
    let zero_below = c.zero_below;
    let (lo, mut modules, mut maps) = c.into_parts();
    if maps.is_empty() {
        return Err(Error::Structure("a complex with no differential cannot be continued".into()));
    }
    extend(r, &mut modules, &mut maps, (hi - lo) as usize)?;
    Complex::new(lo, modules, maps, zero_below, false)
}

/// `X* = Hom_R(X, R)` together with the data linking it to `X`.
#[derive(Clone, Debug)]
pub struct RDual<F: Field> {
    /// `X*` as a submodule of `F_0*`, where `F_1 -> F_0 -> X` presents `X`.
    pub module: FpModule<F>,
    /// The presentation used, as the first two steps of a resolution of `X`.
    pub presentation: Resolution<F>,
    /// Minimal generators of `X*`, as elements of `F_0*`: the `j`-th
    /// coordinate of `phi_l` is `phi_l(x_j)` for the `j`-th generator `x_j`.
    pub generators: Vec<(i64, SparseVec<F::El>)>,
}

/// `Hom_R(X, R) = Ker(d_1^T: F_0* -> F_1*)`.
pub fn r_dual<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>) -> Result<RDual<F>> {
    let presentation = min_free_resolution(r, x, 1)?;
    let d1t = presentation.complex.d(1)?.transpose();
    let kernel = graded_kernel(r, &d1t);
    let generators = minimal_generators(r, &kernel);
    let module = FpModule::submodule(r, format!("{}^*", x.name()), &kernel)?;
    Ok(RDual { module, presentation, generators })
}
