//! `Hom_R(-, Y)` and `- ⊗_R Y` applied to complexes of free modules.
//!
//! For a free module `B`, `Hom_R(B, Y) = Y^rank B` and `B ⊗_R Y = Y^rank B`.
//! Everything is split by internal degree: a homogeneous `f` of degree `s`
//! sends `e_r` into `Y_{twist(r) + s}`, and `e_c ⊗ y` has degree
//! `twist(c) + deg y`. Only ranks are needed, so no kernels are stored.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::GradedAlgebra;
use crate::error::Result;
use crate::homalg::complex::Complex;
use crate::homalg::free::{FreeModule, RMatrix};
use crate::homalg::module::FpModule;
use crate::linalg::{Echelon, SparseVec};
use crate::scalars::Field;

/// `dim Hom_R(B, Y)_s` for every shift `s` that occurs.
pub fn hom_dims<F: Field>(b: &FreeModule, y: &FpModule<F>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &t in &b.twists {
        for &d in y.degrees() {
            *out.entry(d - t).or_insert(0) += 1;
        }
    }
    out
}

/// `dim (B ⊗ Y)_e` for every degree `e` that occurs.
pub fn tensor_dims<F: Field>(b: &FreeModule, y: &FpModule<F>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &t in &b.twists {
        for &d in y.degrees() {
            *out.entry(t + d).or_insert(0) += 1;
        }
    }
    out
}

/// Rank of `d^*: Hom(B, Y) -> Hom(A, Y)`, `f -> f ∘ d`, per shift.
///
/// The rank is taken over the transpose, one vector per coordinate of
/// `Hom(A, Y)`. Those vectors are indexed by the rows of `d` and stay as
/// sparse under elimination as the columns of `d` themselves.
pub fn hom_map_ranks<F: Field>(r: &GradedAlgebra<F>, d: &RMatrix<F>, y: &FpModule<F>) -> BTreeMap<i64, usize> {
    let f = r.field();
    let dy = y.dim();
    let shifts: BTreeSet<i64> = hom_dims(&d.target, y).into_keys().collect();
    let mut out = BTreeMap::new();
    for s in shifts {
        let mut ech = Echelon::new(f.clone(), d.nrows() * dy);
        for c in 0..d.ncols() {
            // (f ∘ d)(e_c) = sum over rows of d(rho, c) * f(e_rho)
            let mut by_target: BTreeMap<u32, SparseVec<F::El>> = BTreeMap::new();
            for (rho, a) in d.column(c) {
                let want = d.target.twist(*rho as usize) + s;
                for j in (0..dy).filter(|&j| y.degree(j) == want) {
                    for (i, x) in y.act_element_on_basis(f, a, j) {
                        by_target.entry(i).or_default().push((*rho * dy as u32 + j as u32, x));
                    }
                }
            }
            for (_, mut v) in by_target {
                v.sort_by_key(|(i, _)| *i);
                ech.insert(&v);
            }
        }
        if ech.rank() > 0 {
            out.insert(s, ech.rank());
        }
    }
    out
}

/// Rank of `d ⊗ Y: A ⊗ Y -> B ⊗ Y` per internal degree.
pub fn tensor_map_ranks<F: Field>(r: &GradedAlgebra<F>, d: &RMatrix<F>, y: &FpModule<F>) -> BTreeMap<i64, usize> {
    let f = r.field();
    let dy = y.dim();
    let degrees: BTreeSet<i64> = tensor_dims(&d.source, y).into_keys().collect();
    let mut out = BTreeMap::new();
    for e in degrees {
        let mut ech = Echelon::new(f.clone(), d.nrows() * dy);
        for c in 0..d.ncols() {
            let entries = d.column(c);
            if entries.is_empty() {
                continue;
            }
            let want = e - d.source.twist(c);
            for j in (0..dy).filter(|&j| y.degree(j) == want) {
                let mut col: SparseVec<F::El> = Vec::new();
                for (rho, a) in entries {
                    for (i, x) in y.act_element_on_basis(f, a, j) {
                        col.push((*rho * dy as u32 + i, x));
                    }
                }
                col.sort_by_key(|(i, _)| *i);
                ech.insert(&col);
            }
        }
        if ech.rank() > 0 {
            out.insert(e, ech.rank());
        }
    }
    out
}

fn subtract(total: BTreeMap<i64, usize>, ranks: &[BTreeMap<i64, usize>]) -> BTreeMap<i64, usize> {
    let mut out = total;
    for rk in ranks {
        for (k, v) in rk {
            let slot = out.entry(*k).or_insert(0);
            *slot = slot.checked_sub(*v).expect("rank exceeds dimension");
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// Graded pieces of `H` at `Hom(T_i, Y)` in `Hom(T_{i-1}, Y) -> Hom(T_i, Y) -> Hom(T_{i+1}, Y)`.
pub fn hom_cohomology_graded<F: Field>(
    r: &GradedAlgebra<F>,
    t: &Complex<F>,
    y: &FpModule<F>,
    i: i64,
) -> Result<BTreeMap<i64, usize>> {
    let ti = t.module(i)?;
    let outgoing = t.d(i + 1)?;
    let incoming = t.d(i)?;
    Ok(subtract(hom_dims(&ti, y), &[hom_map_ranks(r, &outgoing, y), hom_map_ranks(r, &incoming, y)]))
}

pub fn hom_cohomology<F: Field>(r: &GradedAlgebra<F>, t: &Complex<F>, y: &FpModule<F>, i: i64) -> Result<usize> {
    Ok(hom_cohomology_graded(r, t, y, i)?.values().sum())
}

/// Graded pieces of `H_i(T ⊗ Y)`.
pub fn tensor_homology_graded<F: Field>(
    r: &GradedAlgebra<F>,
    t: &Complex<F>,
    y: &FpModule<F>,
    i: i64,
) -> Result<BTreeMap<i64, usize>> {
    let ti = t.module(i)?;
    let outgoing = t.d(i)?;
    let incoming = t.d(i + 1)?;
    Ok(subtract(tensor_dims(&ti, y), &[tensor_map_ranks(r, &outgoing, y), tensor_map_ranks(r, &incoming, y)]))
}

pub fn tensor_homology<F: Field>(r: &GradedAlgebra<F>, t: &Complex<F>, y: &FpModule<F>, i: i64) -> Result<usize> {
    Ok(tensor_homology_graded(r, t, y, i)?.values().sum())
}

/// `H` at spots `lo..=hi`, where spot `i` sits between the maps with indices
/// `outgoing(i)` and `incoming(i)`. Each map rank is computed once.
fn homology_range<F: Field>(
    t: &Complex<F>,
    lo: i64,
    hi: i64,
    dims: impl Fn(&FreeModule) -> BTreeMap<i64, usize>,
    rank: impl Fn(&RMatrix<F>) -> BTreeMap<i64, usize>,
    outgoing: impl Fn(i64) -> i64,
    incoming: impl Fn(i64) -> i64,
) -> Result<Vec<usize>> {
    let mut ranks: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
    let mut out = Vec::new();
    for i in lo..=hi {
        for j in [outgoing(i), incoming(i)] {
            if !ranks.contains_key(&j) {
                ranks.insert(j, rank(&*t.d(j)?));
            }
        }
        let pair = [ranks[&outgoing(i)].clone(), ranks[&incoming(i)].clone()];
        out.push(subtract(dims(&t.module(i)?), &pair).values().sum());
        ranks.retain(|&j, _| j > outgoing(i).min(incoming(i)));
    }
    Ok(out)
}

/// `dim H^i Hom(T, Y)` for `i` in `lo..=hi`.
pub fn hom_cohomology_range<F: Field>(
    r: &GradedAlgebra<F>,
    t: &Complex<F>,
    y: &FpModule<F>,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>> {
    homology_range(t, lo, hi, |b| hom_dims(b, y), |d| hom_map_ranks(r, d, y), |i| i + 1, |i| i)
}

/// `dim H_i(T ⊗ Y)` for `i` in `lo..=hi`.
pub fn tensor_homology_range<F: Field>(
    r: &GradedAlgebra<F>,
    t: &Complex<F>,
    y: &FpModule<F>,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>> {
    homology_range(t, lo, hi, |b| tensor_dims(b, y), |d| tensor_map_ranks(r, d, y), |i| i, |i| i + 1)
}
