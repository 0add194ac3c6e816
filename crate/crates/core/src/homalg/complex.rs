//! Bounded windows of complexes of graded free modules.

use std::borrow::Cow;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::homalg::free::{FreeModule, RMatrix};
use crate::scalars::Field;

/// Modules `C_lo ..= C_hi` and differentials `d_i: C_i -> C_{i-1}` for
/// `lo < i <= hi`. The flags record whether the complex is known to vanish
/// outside the window (as a free resolution does below 0).
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    lo: i64,
    modules: Vec<FreeModule>,
    maps: Vec<RMatrix<F>>,
    pub zero_below: bool,
    pub zero_above: bool,
}

impl<F: Field> Complex<F> {
    pub fn new(
        lo: i64,
        modules: Vec<FreeModule>,
        maps: Vec<RMatrix<F>>,
        zero_below: bool,
        zero_above: bool,
    ) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Structure(format!(
                "{} modules need {} maps, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (k, d) in maps.iter().enumerate() {
            if d.source != modules[k + 1] || d.target != modules[k] {
                return Err(Error::Structure(format!("d_{} does not match the modules", lo + k as i64 + 1)));
            }
        }
        Ok(Complex { lo, modules, maps, zero_below, zero_above })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    fn out_of_range(&self, i: i64) -> Error {
        Error::OutOfRange { index: i, lo: self.lo, hi: self.hi() }
    }

    /// `C_i`, including the zero modules implied by the flags.
    pub fn module(&self, i: i64) -> Result<FreeModule> {
        if i < self.lo {
            return if self.zero_below { Ok(FreeModule::zero()) } else { Err(self.out_of_range(i)) };
        }
        if i > self.hi() {
            return if self.zero_above { Ok(FreeModule::zero()) } else { Err(self.out_of_range(i)) };
        }
        Ok(self.modules[(i - self.lo) as usize].clone())
    }

    pub fn rank(&self, i: i64) -> Result<usize> {
        Ok(self.module(i)?.rank())
    }

    /// `d_i: C_i -> C_{i-1}`, borrowed when stored and built when it is a
    /// zero map implied by the flags.
    pub fn d(&self, i: i64) -> Result<Cow<'_, RMatrix<F>>> {
        if i > self.lo && i <= self.hi() {
            return Ok(Cow::Borrowed(&self.maps[(i - self.lo - 1) as usize]));
        }
        Ok(Cow::Owned(RMatrix::zero(self.module(i)?, self.module(i - 1)?)))
    }

    /// Borrowing access to the stored differentials.
    pub fn d_ref(&self, i: i64) -> Option<&RMatrix<F>> {
        if i > self.lo && i <= self.hi() {
            Some(&self.maps[(i - self.lo - 1) as usize])
        } else {
            None
        }
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// `(i, rank C_i)` over the window.
    pub fn ranks(&self) -> Vec<(i64, usize)> {
        self.modules.iter().enumerate().map(|(k, m)| (self.lo + k as i64, m.rank())).collect()
    }

    /// `d_i ∘ d_{i+1} = 0` for every adjacent pair, entrywise. Checked one
    /// column at a time so that no product matrix is stored.
    pub fn verify_d_squared(&self, r: &GradedAlgebra<F>) -> Result<()> {
        for w in 0..self.maps.len().saturating_sub(1) {
            let (outer, inner) = (&self.maps[w], &self.maps[w + 1]);
            let nonzero = (0..inner.ncols()).any(|c| !outer.apply(r, &inner.column_vector(r, c)).is_empty());
            if nonzero {
                return Err(Error::Inconsistent(format!(
                    "d_{} d_{} != 0",
                    self.lo + w as i64 + 1,
                    self.lo + w as i64 + 2
                )));
            }
        }
        Ok(())
    }

    /// All differentials have entries in the maximal ideal.
    pub fn is_minimal(&self, r: &GradedAlgebra<F>) -> bool {
        self.maps.iter().all(|d| d.is_minimal(r))
    }

    /// `dim_k H_i = dim C_i - rank d_i - rank d_{i+1}`.
    pub fn homology_dim(&self, r: &GradedAlgebra<F>, i: i64) -> Result<usize> {
        let c = self.module(i)?.k_dim(r);
        let out = self.d(i)?.k_rank(r);
        let inc = self.d(i + 1)?.k_rank(r);
        c.checked_sub(out + inc).ok_or_else(|| Error::Inconsistent(format!("ranks exceed dim C_{i}")))
    }

    /// `dim_k Im d_i`.
    pub fn image_dim(&self, r: &GradedAlgebra<F>, i: i64) -> Result<usize> {
        Ok(self.d(i)?.k_rank(r))
    }

    /// `Hom_R(C, R)`, indexed so that `(C*)_i = (C_{-i})*`.
    pub fn dualize(&self) -> Complex<F> {
        let hi = self.hi();
        let modules: Vec<FreeModule> =
            (self.lo..=hi).rev().map(|i| self.modules[(i - self.lo) as usize].dual()).collect();
        // (C*)_j -> (C*)_{j-1} is the transpose of d_{1-j}: C_{1-j} -> C_{-j}
        let maps: Vec<RMatrix<F>> = self.maps.iter().rev().map(|d| d.transpose()).collect();
        Complex { lo: -hi, modules, maps, zero_below: self.zero_above, zero_above: self.zero_below }
    }

    /// The modules and differentials, consuming the complex.
    pub fn into_parts(self) -> (i64, Vec<FreeModule>, Vec<RMatrix<F>>) {
        (self.lo, self.modules, self.maps)
    }

    /// Sub-window `lo ..= hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Complex<F>> {
        if lo < self.lo || hi > self.hi() || lo > hi {
            return Err(Error::OutOfRange { index: if lo < self.lo { lo } else { hi }, lo: self.lo, hi: self.hi() });
        }
        let a = (lo - self.lo) as usize;
        let b = (hi - self.lo) as usize;
        Ok(Complex {
            lo,
            modules: self.modules[a..=b].to_vec(),
            maps: self.maps[a..b].to_vec(),
            zero_below: self.zero_below && lo == self.lo,
            zero_above: self.zero_above && hi == self.hi(),
        })
    }
}
