//! Ext, Tor, their Tate versions, and Betti and Bass numbers.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::homalg::complex::Complex;
use crate::homalg::functors::{hom_cohomology, hom_cohomology_range, tensor_homology, tensor_homology_range};
use crate::homalg::module::FpModule;
use crate::homalg::resolution::{min_free_resolution, r_dual, BettiTable, Resolution};
use crate::scalars::Field;

/// How `Ext^i(X, Y)` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtRoute {
    /// `H^i Hom(F, Y)` for a minimal free resolution `F` of `X`.
    Projective,
    /// `Ext^i(Y*, X*)`, which is isomorphic because `(-)* = Hom_R(-, R)` is
    /// an exact duality over a self-injective ring. Resolves `Y*` instead
    /// of `X`, which pays off when `Y*` has slowly growing Betti numbers.
    Dual,
}

/// How `Tor_i(X, Y)` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorRoute {
    /// `H_i(F ⊗ Y)` for a resolution `F` of `X`.
    ResolveFirst,
    /// `H_i(G ⊗ X)` for a resolution `G` of `Y`.
    ResolveSecond,
}

/// `Ext^i(X, Y)` from a resolution of `X`; needs `F_{i+1}`.
pub fn ext_from<F: Field>(r: &GradedAlgebra<F>, res: &Resolution<F>, y: &FpModule<F>, i: usize) -> Result<usize> {
    if i + 1 > res.length() {
        return Err(Error::ResolutionTooShort { needed: i + 1, available: res.length() });
    }
    hom_cohomology(r, &res.complex, y, i as i64)
}

/// `Tor_i(X, Y)` from a resolution of `X`; needs `F_{i+1}`.
pub fn tor_from<F: Field>(r: &GradedAlgebra<F>, res: &Resolution<F>, y: &FpModule<F>, i: usize) -> Result<usize> {
    if i + 1 > res.length() {
        return Err(Error::ResolutionTooShort { needed: i + 1, available: res.length() });
    }
    tensor_homology(r, &res.complex, y, i as i64)
}

/// `dim Ext^i(X, Y)` for every `i` in `lo..=hi`, resolving once.
pub fn ext_range<F: Field>(
    r: &GradedAlgebra<F>,
    x: &FpModule<F>,
    y: &FpModule<F>,
    lo: usize,
    hi: usize,
    route: ExtRoute,
) -> Result<Vec<usize>> {
    let (first, second) = match route {
        ExtRoute::Projective => (x.clone(), y.clone()),
        ExtRoute::Dual => (r_dual(r, y)?.module, r_dual(r, x)?.module),
    };
    let res = min_free_resolution(r, &first, hi + 1)?;
    (lo..=hi).map(|i| ext_from(r, &res, &second, i)).collect()
}

pub fn ext<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, y: &FpModule<F>, i: usize) -> Result<usize> {
    Ok(ext_range(r, x, y, i, i, ExtRoute::Projective)?[0])
}

/// `dim Tor_i(X, Y)` for every `i` in `lo..=hi`, resolving once.
pub fn tor_range<F: Field>(
    r: &GradedAlgebra<F>,
    x: &FpModule<F>,
    y: &FpModule<F>,
    lo: usize,
    hi: usize,
    route: TorRoute,
) -> Result<Vec<usize>> {
    let (first, second) = match route {
        TorRoute::ResolveFirst => (x, y),
        TorRoute::ResolveSecond => (y, x),
    };
    let res = min_free_resolution(r, first, hi + 1)?;
    (lo..=hi).map(|i| tor_from(r, &res, second, i)).collect()
}

pub fn tor<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, y: &FpModule<F>, i: usize) -> Result<usize> {
    Ok(tor_range(r, x, y, i, i, TorRoute::ResolveFirst)?[0])
}

/// `Êxt^i(X, Y) = H^i Hom(T, Y)` for a complete resolution `T` of `X`.
pub fn tate_ext<F: Field>(r: &GradedAlgebra<F>, t: &Complex<F>, y: &FpModule<F>, i: i64) -> Result<usize> {
    hom_cohomology(r, t, y, i)
}

/// `Tôr_i(X, Y) = H_i(T ⊗ Y)` for a complete resolution `T` of `X`.
pub fn tate_tor<F: Field>(r: &GradedAlgebra<F>, t: &Complex<F>, y: &FpModule<F>, i: i64) -> Result<usize> {
    tensor_homology(r, t, y, i)
}

/// `Êxt^i(X, Y)` when `X` has the complete resolution `T = C*`, read off
/// `C` itself: `Hom_R(F*, Y) = F ⊗ Y` for a free module `F`, so
/// `H^i Hom(T, Y) = H_{-i}(C ⊗ Y)` and no transposed copy of `C` is made.
pub fn tate_ext_via_dual<F: Field>(r: &GradedAlgebra<F>, c: &Complex<F>, y: &FpModule<F>, i: i64) -> Result<usize> {
    tensor_homology(r, c, y, -i)
}

/// `Tôr_i(X, Y)` when `X` has the complete resolution `T = C*`:
/// `F* ⊗ Y = Hom_R(F, Y)`, so `H_i(T ⊗ Y) = H^{-i} Hom(C, Y)`.
pub fn tate_tor_via_dual<F: Field>(r: &GradedAlgebra<F>, c: &Complex<F>, y: &FpModule<F>, i: i64) -> Result<usize> {
    hom_cohomology(r, c, y, -i)
}

/// [`tate_ext_via_dual`] for `i` in `lo..=hi`, sharing the map ranks.
pub fn tate_ext_range_via_dual<F: Field>(
    r: &GradedAlgebra<F>,
    c: &Complex<F>,
    y: &FpModule<F>,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>> {
    let mut dims = tensor_homology_range(r, c, y, -hi, -lo)?;
    dims.reverse();
    Ok(dims)
}

/// [`tate_tor_via_dual`] for `i` in `lo..=hi`, sharing the map ranks.
pub fn tate_tor_range_via_dual<F: Field>(
    r: &GradedAlgebra<F>,
    c: &Complex<F>,
    y: &FpModule<F>,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>> {
    let mut dims = hom_cohomology_range(r, c, y, -hi, -lo)?;
    dims.reverse();
    Ok(dims)
}

pub fn betti_numbers<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, n: usize) -> Result<BettiTable> {
    Ok(min_free_resolution(r, x, n)?.betti())
}

/// Bass numbers `mu^0 ..= mu^n` of `X`, computed both as `dim Ext^i(k, X)`
/// and as the Betti numbers of `X* = Hom_R(X, R)`. Disagreement is an
/// internal-consistency error.
pub fn bass_numbers<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, n: usize) -> Result<Vec<usize>> {
    let via_ext = bass_numbers_via_ext(r, x, n)?;
    let via_dual = bass_numbers_via_dual(r, x, n)?;
    if via_ext != via_dual {
        return Err(Error::Inconsistent(format!(
            "Bass numbers of {}: Ext(k, -) gives {via_ext:?}, Betti numbers of the dual give {via_dual:?}",
            x.name()
        )));
    }
    Ok(via_ext)
}

pub fn bass_numbers_via_ext<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, n: usize) -> Result<Vec<usize>> {
    let k = FpModule::residue_field(r)?;
    ext_range(r, &k, x, 0, n, ExtRoute::Projective)
}

pub fn bass_numbers_via_dual<F: Field>(r: &GradedAlgebra<F>, x: &FpModule<F>, n: usize) -> Result<Vec<usize>> {
    let dual = r_dual(r, x)?.module;
    Ok(min_free_resolution(r, &dual, n)?.betti_numbers())
}
