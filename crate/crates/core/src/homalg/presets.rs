//! Named modules over the preset ring and a sampler of length-two modules.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::homalg::complete::CompleteResolutionFamily;
use crate::homalg::module::FpModule;
use crate::homalg::resolution::{graded_image, graded_kernel};
use crate::linalg::{self, SparseVec};
use crate::scalars::{Field, Scalars};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulePreset {
    /// `Coker d_0*`.
    M,
    /// `R / (t, u, v - x, y - x, z - x)`.
    N,
    /// `R / (t, u, v - alpha^q x, v - y, v - z)`.
    Nq(u32),
    /// `Ker d_1`.
    E,
    /// `Im d_1`, isomorphic to `M*`.
    MStar,
    /// `Coker d_1`.
    CokerD1,
    K,
    R,
}

impl ModulePreset {
    pub const NAMES: &'static str = "M, N, Nq:<q>, E, Mstar, Coker_d1, k, R";
}

impl FromStr for ModulePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let q = t
            .strip_prefix("Nq:")
            .or_else(|| t.strip_prefix("Nq(").and_then(|x| x.strip_suffix(')')))
            .or_else(|| t.strip_prefix("Nq"));
        if let Some(q) = q {
            let q: u32 = q.parse().map_err(|_| Error::UnknownPreset(s.to_string()))?;
            if q == 0 {
                return Err(Error::Config("Nq requires q >= 1".into()));
            }
            return Ok(ModulePreset::Nq(q));
        }
        match t {
            "M" => Ok(ModulePreset::M),
            "N" => Ok(ModulePreset::N),
            "E" => Ok(ModulePreset::E),
            "Mstar" | "M*" => Ok(ModulePreset::MStar),
            "Coker_d1" | "coker_d1" => Ok(ModulePreset::CokerD1),
            "k" => Ok(ModulePreset::K),
            "R" => Ok(ModulePreset::R),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

impl fmt::Display for ModulePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulePreset::M => write!(f, "M"),
            ModulePreset::N => write!(f, "N"),
            ModulePreset::Nq(q) => write!(f, "Nq:{q}"),
            ModulePreset::E => write!(f, "E"),
            ModulePreset::MStar => write!(f, "Mstar"),
            ModulePreset::CokerD1 => write!(f, "Coker_d1"),
            ModulePreset::K => write!(f, "k"),
            ModulePreset::R => write!(f, "R"),
        }
    }
}

fn element<F: Field>(r: &GradedAlgebra<F>, alpha: &F::El, text: &str) -> Result<SparseVec<F::El>> {
    Ok(linalg::from_dense(r.field(), &r.parse_element(alpha, text)?))
}

/// Build a named module. `r` must be the preset ring over `scalars`.
pub fn preset_module<F: Field>(r: &GradedAlgebra<F>, scalars: &Scalars<F>, which: ModulePreset) -> Result<FpModule<F>> {
    let name = which.to_string();
    let family = CompleteResolutionFamily::new(r, scalars);
    let alpha = &scalars.alpha;
    match which {
        ModulePreset::M => FpModule::cokernel(r, name, &family.d(0)?.transpose()),
        ModulePreset::N => {
            let forms = ["t", "u", "v - x", "y - x", "z - x"]
                .iter()
                .map(|s| element(r, alpha, s))
                .collect::<Result<Vec<_>>>()?;
            FpModule::cyclic(r, name, &forms)
        }
        ModulePreset::Nq(q) => {
            let f = r.field();
            let aq = scalars.alpha_pow(q as i64)?;
            let x = element(r, alpha, "x")?;
            let v = element(r, alpha, "v")?;
            let v_minus = linalg::axpy(f, &v, &f.neg(&aq), &x);
            let forms = vec![
                element(r, alpha, "t")?,
                element(r, alpha, "u")?,
                v_minus,
                element(r, alpha, "v - y")?,
                element(r, alpha, "v - z")?,
            ];
            FpModule::cyclic(r, name, &forms)
        }
        ModulePreset::E => FpModule::submodule(r, name, &graded_kernel(r, &family.d(1)?)),
        ModulePreset::MStar => FpModule::submodule(r, name, &graded_image(r, &family.d(1)?)),
        ModulePreset::CokerD1 => FpModule::cokernel(r, name, &family.d(1)?),
        ModulePreset::K => FpModule::residue_field(r),
        ModulePreset::R => FpModule::free_rank_one(r),
    }
}

/// `R / (V + m^2)` where `V` is the kernel of the functional `lambda` on
/// the span of the variables. Has length two whenever `lambda != 0`.
pub fn length_two_from_functional<F: Field>(
    r: &GradedAlgebra<F>,
    name: impl Into<String>,
    lambda: &[F::El],
) -> Result<FpModule<F>> {
    let f = r.field();
    if lambda.len() != r.ngens() || lambda.iter().all(|c| f.is_zero(c)) {
        return Err(Error::Config("need a nonzero functional on the variables".into()));
    }
    let column: Vec<SparseVec<F::El>> =
        lambda.iter().map(|c| if f.is_zero(c) { Vec::new() } else { vec![(0, c.clone())] }).collect();
    let mut forms: Vec<SparseVec<F::El>> = linalg::kernel(f, 1, &column)
        .into_iter()
        .map(|v| {
            let v = v.into_iter().map(|(g, c)| (r.generator_indices()[g as usize] as u32, c)).collect();
            linalg::normalize(f, v)
        })
        .collect();
    for b in r.indices_of_degree(2).collect::<Vec<_>>() {
        forms.push(linalg::unit(f, b));
    }
    let m = FpModule::cyclic(r, name, &forms)?;
    if m.dim() != 2 {
        return Err(Error::Inconsistent(format!("sampled module has length {}", m.dim())));
    }
    Ok(m)
}

/// A length-two module determined by `seed`: `k ⊕ k` with probability 1/5,
/// otherwise `R / (V + m^2)` for a random hyperplane `V` of `m / m^2`.
pub fn random_length2_module<F: Field>(r: &GradedAlgebra<F>, seed: u64) -> Result<FpModule<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("L{seed}");
    if rng.gen_range(0..5) == 0 {
        return FpModule::trivial(r, name, 2);
    }
    let f = r.field();
    loop {
        let lambda: Vec<F::El> = (0..r.ngens()).map(|_| f.from_i64(rng.gen_range(-4..=4))).collect();
        if lambda.iter().any(|c| !f.is_zero(c)) {
            return length_two_from_functional(r, name, &lambda);
        }
    }
}
