//! The explicit complete resolution `C` of the ring, and complete
//! resolutions of general modules obtained by splicing.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::homalg::complex::Complex;
use crate::homalg::free::{FreeModule, RMatrix};
use crate::homalg::module::FpModule;
use crate::homalg::resolution::{min_free_resolution, r_dual, resolve_from};
use crate::linalg::{self, SparseVec};
use crate::scalars::{Field, Scalars};

/// The differentials `d_i` for `i <= 1`, given by formula.
#[derive(Clone, Debug)]
pub struct CompleteResolutionFamily<'a, F: Field> {
    pub ring: &'a GradedAlgebra<F>,
    pub scalars: &'a Scalars<F>,
}

impl<'a, F: Field> CompleteResolutionFamily<'a, F> {
    pub fn new(ring: &'a GradedAlgebra<F>, scalars: &'a Scalars<F>) -> Self {
        CompleteResolutionFamily { ring, scalars }
    }

    fn element(&self, text: &str) -> Result<SparseVec<F::El>> {
        let dense = self.ring.parse_element(&self.scalars.alpha, text)?;
        Ok(linalg::from_dense(self.ring.field(), &dense))
    }

    /// `C_i`: twists `(i, i)` for `i <= 0` and `(1, 1, 2)` for `i = 1`.
    pub fn module(&self, i: i64) -> Result<FreeModule> {
        match i {
            i if i <= 0 => Ok(FreeModule::new(vec![i, i])),
            1 => Ok(FreeModule::new(vec![1, 1, 2])),
            _ => Err(Error::OutOfRange { index: i, lo: i64::MIN, hi: 1 }),
        }
    }

    /// `d_i: C_i -> C_{i-1}` for `i <= 1`.
    pub fn d(&self, i: i64) -> Result<RMatrix<F>> {
        let f = self.ring.field();
        let [v, x, y, z] = ["v", "x", "y", "z"].map(|s| self.element(s));
        let (v, x, y, z) = (v?, x?, y?, z?);
        let rows = if i <= 0 {
            let ax = linalg::scale(f, &x, &self.scalars.alpha_power(i)?);
            vec![vec![v, y], vec![ax, z]]
        } else if i == 1 {
            let tv = self.element("t*v")?;
            vec![vec![v, y, Vec::new()], vec![x, z, tv]]
        } else {
            return Err(Error::OutOfRange { index: i, lo: i64::MIN, hi: 1 });
        };
        RMatrix::from_rows(self.ring, self.module(i)?, self.module(i - 1)?, rows)
    }
}

/// `C_i` for `-neg <= i <= pos`: the formula differentials for `i <= 1`
/// and a minimal resolution of `Coker d_1` for `i >= 2`. Minimality and
/// `d^2 = 0` are checked before returning.
pub fn build_complete_resolution_c<F: Field>(
    r: &GradedAlgebra<F>,
    scalars: &Scalars<F>,
    neg: usize,
    pos: usize,
) -> Result<Complex<F>> {
    if pos < 1 {
        return Err(Error::Config("the complete resolution needs pos >= 1".into()));
    }
    let family = CompleteResolutionFamily::new(r, scalars);
    let neg = neg as i64;
    let mut modules: Vec<FreeModule> = (-neg..=0).map(|i| family.module(i)).collect::<Result<_>>()?;
    let mut maps: Vec<RMatrix<F>> = (-neg + 1..=0).map(|i| family.d(i)).collect::<Result<_>>()?;
    let (_, tail_modules, tail_maps) = resolve_from(r, family.d(1)?, pos)?.into_parts();
    modules.extend(tail_modules.into_iter().skip(1));
    maps.extend(tail_maps);
    let c = Complex::new(-neg, modules, maps, false, false)?;
    if !c.is_minimal(r) {
        return Err(Error::Inconsistent("complete resolution is not minimal".into()));
    }
    c.verify_d_squared(r)?;
    Ok(c)
}

/// Join `lower` (ending at spot 0) and `upper` (starting at spot 0) along
/// their common module `C_0`.
pub fn splice<F: Field>(lower: &Complex<F>, upper: &Complex<F>) -> Result<Complex<F>> {
    if lower.hi() != 0 || upper.lo() != 0 || lower.module(0)? != upper.module(0)? {
        return Err(Error::Structure("complexes do not meet at spot 0".into()));
    }
    let mut modules: Vec<FreeModule> = lower.modules().to_vec();
    let mut maps: Vec<RMatrix<F>> =
        (lower.lo() + 1..=0).map(|i| Ok(lower.d(i)?.into_owned())).collect::<Result<_>>()?;
    for i in 1..=upper.hi() {
        modules.push(upper.module(i)?);
        maps.push(upper.d(i)?.into_owned());
    }
    Complex::new(lower.lo(), modules, maps, lower.zero_below, upper.zero_above)
}

/// Complete resolution `T` of a module `X` on the window `-neg ..= pos`:
/// `T_j = F_j` for a minimal resolution `F` of `X` when `j >= 0`, and
/// `T_{-j-1} = (G_j)*` for a minimal resolution `G` of `X* = Hom_R(X, R)`.
/// The map `T_0 -> T_{-1}` has entries `phi_l(x_j)`.
pub fn complete_resolution_of<F: Field>(
    r: &GradedAlgebra<F>,
    x: &FpModule<F>,
    neg: usize,
    pos: usize,
) -> Result<Complex<F>> {
    let dual = r_dual(r, x)?;
    let f = min_free_resolution(r, x, pos.max(1))?;
    let f0_dual = dual.presentation.complex.module(0)?.dual();
    if f.complex.module(0)?.dual() != f0_dual {
        return Err(Error::Inconsistent("presentations of X disagree".into()));
    }
    let source = FreeModule::new(dual.generators.iter().map(|(e, _)| *e).collect());
    let cols: Vec<SparseVec<F::El>> = dual.generators.iter().map(|(_, v)| v.clone()).collect();
    let phi = RMatrix::from_columns(r, source, f0_dual, &cols)?;
    // G' with G'_0 = F_0*, G'_{j+1} = G_j; its dual ends in F_0 at spot 0
    let g = resolve_from(r, phi, neg.max(1))?;
    let lower = g.dualize();
    let lower = lower.window(-(neg as i64), 0)?;
    let upper = f.complex.window(0, pos as i64)?;
    let t = splice(&lower, &upper)?;
    t.verify_d_squared(r)?;
    Ok(t)
}

/// Coefficients of `num / den` as a power series, through `t^n`.
pub fn series_quotient(num: &[i64], den: &[i64], n: usize) -> Result<Vec<i64>> {
    if den.first() != Some(&1) {
        return Err(Error::Config("series denominator must have constant term 1".into()));
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut c = num.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            c -= den[j] * out[k - j];
        }
        out.push(c);
    }
    Ok(out)
}

/// Coefficient of `t^i` in `(2 + t) / (1 - t - t^2)`: the lower bound for
/// `rank C_{i+2}`.
pub fn fib_lower_bound(i: usize) -> u64 {
    series_quotient(&[2, 1], &[1, -1, -1], i).expect("valid denominator")[i] as u64
}
