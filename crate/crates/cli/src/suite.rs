//! The verification checks and the single-purpose subcommand reports.
//!
//! Every check is generic over the scalar field. A [`Ctx`] owns the ring for
//! one field and builds the large complete resolution at most once; it is
//! dropped before another field is set up so that two copies never coexist.

use std::cell::{OnceCell, Ref, RefCell};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use tatelab_core::algebra::GradedAlgebra;
use tatelab_core::homalg::{
    bass_numbers_via_dual, bass_numbers_via_ext, build_complete_resolution_c, ext_from, ext_range, extend_by_syzygies,
    fib_lower_bound, min_free_resolution, preset_module, r_dual, random_length2_module, series_quotient,
    tate_ext_range_via_dual, tate_tor_range_via_dual, tor_from, tor_range, Complex, ExtRoute, FpModule, ModulePreset,
    TorRoute,
};
use tatelab_core::invsys::{verify_apolarity, ApolarForm};
use tatelab_core::linalg;
use tatelab_core::polyring::hilbert_function_monomial_quotient;
use tatelab_core::scalars::{Field, FieldConfig, FieldMode, PrimeField, Rationals, Scalars};
use tatelab_core::{Error, Result};

use crate::report::{config_report, CheckResult, FieldEcho, Report};

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Ring,
    Complex,
    Homology,
    Auslander,
    Invsys,
    All,
}

impl Suite {
    pub fn checks(self) -> &'static [u8] {
        match self {
            Suite::Ring => &[1, 2, 4],
            Suite::Invsys => &[3],
            Suite::Complex => &[5, 6],
            Suite::Homology => &[7, 8, 10, 11],
            Suite::Auslander => &[9],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
        }
    }
}

/// Checks rerun over the other field by the field-independence check.
pub const FIELD_INDEPENDENT: [u8; 6] = [1, 2, 3, 5, 7, 9];

/// The prime used when the main run is over the rationals.
pub const SMOKE_PRIME: u64 = 32003;

/// Index ranges for the checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranges {
    /// Negative extent of the complete resolution and the Tate range.
    pub neg: usize,
    /// Positive Tate range.
    pub pos: usize,
    /// Resolution depth for the rank-growth and Ext/Tor checks.
    pub depth: usize,
    /// Resolution depth for the residue field.
    pub k_depth: usize,
    /// Auslander pattern for `q = 1 ..= q_max`.
    pub q_max: u32,
    /// First seed of the length-two sample.
    pub seed: u64,
    pub samples: usize,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges { neg: 8, pos: 8, depth: 8, k_depth: 4, q_max: 3, seed: 0, samples: 20 }
    }
}

impl Ranges {
    pub fn validate(&self) -> Result<()> {
        if self.neg < 1 || self.pos < 1 {
            return Err(Error::Config("--neg and --pos must be at least 1".into()));
        }
        if self.depth < 4 {
            return Err(Error::Config("--depth must be at least 4".into()));
        }
        if self.q_max < 1 {
            return Err(Error::Config("--q must be at least 1".into()));
        }
        if self.samples < 1 {
            return Err(Error::Config("the length-two sample must be nonempty".into()));
        }
        Ok(())
    }

    /// Smallest `range_bound` covering every power of `alpha` the checks use.
    pub fn range_bound(&self) -> u32 {
        FieldConfig::DEFAULT_RANGE_BOUND.max(self.neg as u32 + 1).max(self.q_max)
    }
}

/// An inclusive index range `A..B` (also accepted as `A..=B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
        let hi: i64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IndexRange { lo, hi })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

struct Meta {
    id: &'static str,
    anchor: &'static str,
}

const META: [Meta; 12] = [
    Meta {
        id: "01-ring-structure",
        anchor: "R has basis 1, t, u, v, x, y, z, tv, uv, vx, vy, vz, tx, tvx and H_R(t) = 1 + 6t + 6t^2 + t^3",
    },
    Meta { id: "02-multiplication-table", anchor: "multiplication table of the variables against m^2, s = tvx" },
    Meta {
        id: "03-gorenstein-socle",
        anchor: "R is Gorenstein with socle spanned by tvx, and I is the annihilator of F",
    },
    Meta {
        id: "04-groebner-koszul",
        anchor: "P/J has Hilbert series 1 + 6t + 6t^2 + t^3 and R is Koszul with Poincare series 1/H_R(-t)",
    },
    Meta {
        id: "05-complete-resolution",
        anchor: "C is a minimal complete resolution with rank C_i = 2 and dim Im d_i = 14 for i <= 0",
    },
    Meta { id: "06-growth", anchor: "rank C_{i+2} is bounded below by the coefficients of (2+t)(1-t-t^2)^-1" },
    Meta {
        id: "07-ext-asymmetry",
        anchor: "Ext^i(M,N) = Tor_i(M,N) = 0 for i > 0 but both are nonzero for i < 0, while Ext^i(N,M) != 0 for i > 0",
    },
    Meta {
        id: "08-tate-consistency",
        anchor: "Ext^{-i-1}(M,N) = Tor_i(M*,N) for i >= 1, and Tor_i(N,M^v) is dual to Ext^i(N,M)",
    },
    Meta { id: "09-auslander", anchor: "Ext^i(M,N_q) = 0 if and only if i != 0, q-1, q" },
    Meta {
        id: "10-length-two",
        anchor: "Ext^i(E,L) and Tor_i(E,L) are nonzero for i >= 1 and every module L of length two",
    },
    Meta { id: "11-betti-bass", anchor: "mu^i(X) = beta_i(X*) over an Artinian Gorenstein ring" },
    Meta { id: "12-field-independence", anchor: "the results hold over any field in which alpha has infinite order" },
];

fn meta(id: u8) -> &'static Meta {
    &META[id as usize - 1]
}

fn echo(cfg: &FieldConfig) -> FieldEcho {
    FieldEcho::from(cfg)
}

fn config_failure(cfg: Option<&FieldConfig>, err: impl fmt::Display) -> Report {
    Report { config: cfg.map(echo), ..config_report(err) }
}

/// `true` when the report failed on its configuration.
pub fn is_config_failure(report: &Report) -> bool {
    report.checks.iter().any(|c| c.id == "config")
}

/// Run `$body` with `$ctx` bound to a context over the configured field.
macro_rules! with_ctx {
    ($cfg:expr, $ranges:expr, |$ctx:ident| $body:expr) => {
        match $cfg.mode {
            FieldMode::Rationals => {
                let $ctx = Ctx::new(Scalars::new(Rationals, $cfg.clone())?, $ranges.clone())?;
                $body
            }
            FieldMode::Prime(p) => {
                let $ctx = Ctx::new(Scalars::new(PrimeField::new(p)?, $cfg.clone())?, $ranges.clone())?;
                $body
            }
        }
    };
}

/// Run a suite. Configuration problems become a failed `config` check.
pub fn run_suite(suite: Suite, cfg: &FieldConfig, ranges: &Ranges) -> Report {
    if let Err(e) = cfg.validate().and_then(|_| ranges.validate()) {
        return config_failure(Some(cfg), e);
    }
    let ids = suite.checks();
    let main: Vec<u8> = ids.iter().copied().filter(|&i| i != 12).collect();
    let mut checks = match run_in_field(cfg, ranges, &main) {
        Ok(c) => c,
        Err(e) => vec![CheckResult::error("00-setup", "the ring and its presets can be built", json!("built"), e)],
    };
    if ids.contains(&12) {
        checks.push(field_independence(cfg, ranges, &checks));
    }
    Report::new(Some(echo(cfg)), checks)
}

fn run_in_field(cfg: &FieldConfig, ranges: &Ranges, ids: &[u8]) -> Result<Vec<CheckResult>> {
    with_ctx!(cfg, ranges, |ctx| Ok(ids.iter().map(|&i| ctx.run_check(i)).collect()))
}

/// The other field: the smoke prime when the main run is rational, the
/// rationals otherwise.
pub fn other_field(cfg: &FieldConfig) -> Result<FieldConfig> {
    let mode = match cfg.mode {
        FieldMode::Rationals => FieldMode::Prime(SMOKE_PRIME),
        FieldMode::Prime(_) => FieldMode::Rationals,
    };
    FieldConfig::new(mode, cfg.alpha.clone(), cfg.range_bound)
}

fn field_independence(cfg: &FieldConfig, ranges: &Ranges, main: &[CheckResult]) -> CheckResult {
    let m = meta(12);
    let start = Instant::now();
    let summarize = |checks: &[CheckResult]| -> Value {
        let mut out = serde_json::Map::new();
        for c in checks {
            out.insert(c.id.clone(), json!({ "status": c.status, "actual": c.actual }));
        }
        Value::Object(out)
    };
    let ids: Vec<&str> = FIELD_INDEPENDENT.iter().map(|&i| meta(i).id).collect();
    let mut ours_sorted: Vec<CheckResult> = main.iter().filter(|c| ids.contains(&c.id.as_str())).cloned().collect();
    ours_sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let expected = summarize(&ours_sorted);
    let theirs = other_field(cfg).and_then(|other| {
        let mut checks = run_in_field(&other, ranges, &FIELD_INDEPENDENT)?;
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Ok((other, checks))
    });
    let mut result = match theirs {
        Ok((other, checks)) => {
            let actual = summarize(&checks);
            let pass = ours_sorted.len() == FIELD_INDEPENDENT.len() && actual == expected;
            let actual = json!({ "field": other.mode.to_string(), "checks": actual });
            CheckResult::new(m.id, m.anchor, json!({ "field": cfg.mode.to_string(), "checks": expected }), actual, pass)
        }
        Err(e) => CheckResult::error(m.id, m.anchor, json!({ "field": cfg.mode.to_string(), "checks": expected }), e),
    };
    result.runtime_ms = start.elapsed().as_millis() as u64;
    result
}

/// Dimensions over `lo..=hi` as `{"from": lo, "dims": [..]}`.
fn indexed(lo: i64, dims: &[usize]) -> Value {
    json!({ "from": lo, "dims": dims })
}

fn all_zero(v: &[usize]) -> bool {
    v.iter().all(|&d| d == 0)
}

fn all_nonzero(v: &[usize]) -> bool {
    v.iter().all(|&d| d > 0)
}

/// What a check reports: `expected` is filled in before any computation so
/// that a failing computation still carries it.
struct Outcome {
    expected: Value,
    actual: Value,
    pass: bool,
}

/// Ring, presets and the lazily built complete resolution over one field.
pub struct Ctx<F: Field> {
    s: Scalars<F>,
    r: GradedAlgebra<F>,
    ranges: Ranges,
    big: RefCell<Option<Complex<F>>>,
    ext_nm: OnceCell<Vec<usize>>,
}

impl<F: Field> Ctx<F> {
    pub fn new(s: Scalars<F>, ranges: Ranges) -> Result<Self> {
        let r = GradedAlgebra::preset(&s)?;
        Ok(Ctx { s, r, ranges, big: RefCell::new(None), ext_nm: OnceCell::new() })
    }

    fn module(&self, which: ModulePreset) -> Result<FpModule<F>> {
        preset_module(&self.r, &self.s, which)
    }

    fn element(&self, text: &str) -> Result<Vec<F::El>> {
        self.r.parse_element(&self.s.alpha, text)
    }

    /// `C` on `-(neg+1) ..= hi` at least. Built once and continued by
    /// syzygies when a later check needs a longer window.
    fn big_c(&self, hi: usize) -> Result<Ref<'_, Complex<F>>> {
        {
            let mut slot = self.big.borrow_mut();
            let c = match slot.take() {
                None => build_complete_resolution_c(&self.r, &self.s, self.ranges.neg + 1, hi)?,
                Some(c) => extend_by_syzygies(&self.r, c, hi as i64)?,
            };
            *slot = Some(c);
        }
        Ok(Ref::map(self.big.borrow(), |c| c.as_ref().expect("just stored")))
    }

    /// `dim Ext^i(N, M)` for `i = 0 ..= depth - 2`, computed once.
    fn ext_n_m(&self) -> Result<&[usize]> {
        if self.ext_nm.get().is_none() {
            let n = self.module(ModulePreset::N)?;
            let m = self.module(ModulePreset::M)?;
            let dims = ext_range(&self.r, &n, &m, 0, self.ranges.depth - 2, ExtRoute::Dual)?;
            let _ = self.ext_nm.set(dims);
        }
        Ok(self.ext_nm.get().expect("just set"))
    }

    pub fn run_check(&self, id: u8) -> CheckResult {
        let m = meta(id);
        let start = Instant::now();
        let mut out = Outcome { expected: Value::Null, actual: Value::Null, pass: false };
        let result = match id {
            1 => self.ring_structure(&mut out),
            2 => self.multiplication_table(&mut out),
            3 => self.gorenstein_socle(&mut out),
            4 => self.groebner_koszul(&mut out),
            5 => self.complete_resolution(&mut out),
            6 => self.growth(&mut out),
            7 => self.ext_asymmetry(&mut out),
            8 => self.tate_consistency(&mut out),
            9 => self.auslander(&mut out, 1..=self.ranges.q_max),
            10 => self.length_two(&mut out),
            11 => self.betti_bass(&mut out),
            _ => Err(Error::Config(format!("check {id} is not a single-field check"))),
        };
        let mut c = match result {
            Ok(()) => CheckResult::new(m.id, m.anchor, out.expected, out.actual, out.pass),
            Err(e) => CheckResult::error(m.id, m.anchor, out.expected, e),
        };
        c.runtime_ms = start.elapsed().as_millis() as u64;
        c
    }

    fn ring_structure(&self, out: &mut Outcome) -> Result<()> {
        let mut basis = vec!["1", "t", "u", "v", "x", "y", "z", "tv", "uv", "vx", "vy", "vz", "tx", "tvx"];
        basis.sort();
        out.expected = json!({ "basis": basis, "hilbert_function": [1, 6, 6, 1] });
        let r = &self.r;
        r.verify_structure()?;
        let mut names: Vec<String> = (0..r.dim()).map(|i| r.basis_name(i)).collect();
        names.sort();
        out.actual = json!({ "basis": names, "hilbert_function": r.hilbert_function() });
        out.pass = out.actual == out.expected;
        Ok(())
    }

    fn multiplication_table(&self, out: &mut Outcome) -> Result<()> {
        const ROWS: [&str; 6] = ["t", "u", "v", "x", "y", "z"];
        const COLS: [&str; 6] = ["tv", "uv", "vx", "vy", "vz", "tx"];
        let nonzero = [
            ("x", "tv", "s"),
            ("u", "vz", "s"),
            ("v", "tx", "s"),
            ("y", "vy", "s"),
            ("z", "uv", "s"),
            ("z", "tx", "-alpha*s"),
            ("x", "vx", "s"),
            ("t", "vx", "s"),
        ];
        let grid = |label: &dyn Fn(usize, usize) -> Result<String>| -> Result<Value> {
            let mut rows = serde_json::Map::new();
            for (i, g) in ROWS.iter().enumerate() {
                let row = (0..COLS.len()).map(|j| label(i, j)).collect::<Result<Vec<_>>>()?;
                rows.insert(g.to_string(), json!(row));
            }
            Ok(Value::Object(rows))
        };
        let expected_table = grid(&|i, j| {
            Ok(nonzero.iter().find(|(g, b, _)| *g == ROWS[i] && *b == COLS[j]).map_or("0", |(_, _, l)| l).to_string())
        })?;
        out.expected = json!({ "columns": COLS, "table": expected_table, "associative": true });

        let r = &self.r;
        let f = r.field();
        let s = self.element("t*v*x")?;
        let minus_alpha_s: Vec<F::El> = s.iter().map(|c| f.neg(&f.mul(&self.s.alpha, c))).collect();
        let table = grid(&|i, j| {
            let p =
                r.multiply(&self.element(ROWS[i])?, &self.element(&format!("{}*{}", &COLS[j][..1], &COLS[j][1..]))?)?;
            Ok(if r.is_zero(&p) {
                "0"
            } else if p == s {
                "s"
            } else if p == minus_alpha_s {
                "-alpha*s"
            } else {
                "other"
            }
            .to_string())
        })?;
        let associative = r.associativity_sweep().is_ok();
        out.actual = json!({ "columns": COLS, "table": table, "associative": associative });
        out.pass = out.actual == out.expected;
        Ok(())
    }

    fn gorenstein_socle(&self, out: &mut Outcome) -> Result<()> {
        out.expected = json!({
            "socle_dim": 1,
            "socle_spanned_by_tvx": true,
            "non_annihilating": [],
            "apolar_hilbert": [1, 6, 6, 1, 0],
            "ideal_hilbert": [1, 6, 6, 1, 0],
        });
        let r = &self.r;
        let f = r.field();
        let socle = r.socle();
        let tvx = linalg::from_dense(f, &self.element("t*v*x")?);
        let spanned = socle.len() == 1 && linalg::rank(f, r.dim(), &[linalg::from_dense(f, &socle[0]), tvx]) == 1;
        let form = ApolarForm::preset(f, &self.s.alpha)?;
        let ev = verify_apolarity(f, &r.presentation().relations, &form);
        out.actual = json!({
            "socle_dim": socle.len(),
            "socle_spanned_by_tvx": spanned,
            "non_annihilating": ev.non_annihilating,
            "apolar_hilbert": ev.apolar_hilbert,
            "ideal_hilbert": ev.ideal_hilbert,
        });
        out.pass = out.actual == out.expected && ev.holds();
        Ok(())
    }

    fn groebner_koszul(&self, out: &mut Outcome) -> Result<()> {
        let n = self.ranges.k_depth;
        let betti: Vec<i64> = series_quotient(&[1], &[1, -6, 6, -1], n)?;
        out.expected = json!({
            "initial_ideal_hilbert": [1, 6, 6, 1, 0],
            "groebner_certificate": true,
            "betti_k": betti,
            "linear": true,
        });
        let r = &self.r;
        let j = r.presentation().relations.initial_terms(r.field());
        let hf = hilbert_function_monomial_quotient(r.presentation().ring.nvars(), &j, 4)?;
        let k = self.module(ModulePreset::K)?;
        let table = min_free_resolution(r, &k, n)?.betti();
        out.actual = json!({
            "initial_ideal_hilbert": hf,
            "groebner_certificate": r.groebner_evidence().holds(),
            "betti_k": table.totals(),
            "linear": table.is_linear(),
        });
        out.pass = out.actual == out.expected;
        Ok(())
    }

    fn complete_resolution(&self, out: &mut Outcome) -> Result<()> {
        let neg = self.ranges.neg as i64;
        let nh = (neg + 4) as usize;
        let nn = (neg + 1) as usize;
        out.expected = json!({
            "homology": indexed(-neg, &vec![0; nh]),
            "image_dims": indexed(-neg, &vec![14; nn]),
            "ranks": indexed(-neg - 1, &vec![2; nn + 1]),
            "dual_homology": indexed(-3, &vec![0; nh]),
            "minimal": true,
        });
        let r = &self.r;
        // building verifies d^2 = 0 and minimality
        let c = build_complete_resolution_c(r, &self.s, nn, 4)?;
        let homology = (-neg..=3).map(|i| c.homology_dim(r, i)).collect::<Result<Vec<_>>>()?;
        let images = (-neg..=0).map(|i| c.image_dim(r, i)).collect::<Result<Vec<_>>>()?;
        let ranks = (-neg - 1..=0).map(|i| c.rank(i)).collect::<Result<Vec<_>>>()?;
        let dual = c.dualize();
        let dual_homology = (-3..=neg).map(|i| dual.homology_dim(r, i)).collect::<Result<Vec<_>>>()?;
        out.actual = json!({
            "homology": indexed(-neg, &homology),
            "image_dims": indexed(-neg, &images),
            "ranks": indexed(-neg - 1, &ranks),
            "dual_homology": indexed(-3, &dual_homology),
            "minimal": c.is_minimal(r),
        });
        out.pass = out.actual == out.expected;
        Ok(())
    }

    fn growth(&self, out: &mut Outcome) -> Result<()> {
        let depth = self.ranges.depth;
        let bounds: Vec<u64> = (0..=depth - 2).map(fib_lower_bound).collect();
        out.expected = json!({ "lower_bounds": bounds, "strictly_increasing": true });
        let c = self.big_c(depth)?;
        let ranks = (2..=depth as i64).map(|i| c.rank(i)).collect::<Result<Vec<_>>>()?;
        let above = ranks.iter().zip(&bounds).all(|(&r, &b)| r as u64 >= b);
        let increasing = ranks.windows(2).all(|w| w[0] < w[1]);
        out.actual =
            json!({ "ranks": indexed(2, &ranks), "at_least_bounds": above, "strictly_increasing": increasing });
        out.pass = above && increasing;
        Ok(())
    }

    fn ext_asymmetry(&self, out: &mut Outcome) -> Result<()> {
        let (neg, pos, depth) = (self.ranges.neg as i64, self.ranges.pos as i64, self.ranges.depth);
        out.expected = json!({
            "tate_ext_positive": "zero",
            "tate_ext_negative": "nonzero",
            "tate_tor_positive": "zero",
            "tate_tor_negative": "nonzero",
            "ext_n_m_positive": "nonzero",
        });
        let r = &self.r;
        let n = self.module(ModulePreset::N)?;
        let c = self.big_c(pos as usize + 1)?;
        let c = &*c;
        let ext_pos = tate_ext_range_via_dual(r, c, &n, 1, pos)?;
        let ext_neg = tate_ext_range_via_dual(r, c, &n, -neg, -1)?;
        let tor_pos = tate_tor_range_via_dual(r, c, &n, 1, pos)?;
        let tor_neg = tate_tor_range_via_dual(r, c, &n, -neg, -1)?;
        let ext_nm = &self.ext_n_m()?[1..=depth - 2];
        out.pass = all_zero(&ext_pos)
            && all_nonzero(&ext_neg)
            && all_zero(&tor_pos)
            && all_nonzero(&tor_neg)
            && all_nonzero(ext_nm);
        out.actual = json!({
            "tate_ext_positive": indexed(1, &ext_pos),
            "tate_ext_negative": indexed(-neg, &ext_neg),
            "tate_tor_positive": indexed(1, &tor_pos),
            "tate_tor_negative": indexed(-neg, &tor_neg),
            "ext_n_m_positive": indexed(1, ext_nm),
        });
        Ok(())
    }

    fn tate_consistency(&self, out: &mut Outcome) -> Result<()> {
        let top = self.ranges.depth - 3;
        out.expected = json!({
            "tate_ext_equals_tor_of_dual": true,
            "matlis_pairing": true,
        });
        let r = &self.r;
        let n = self.module(ModulePreset::N)?;
        let m = self.module(ModulePreset::M)?;
        let c = self.big_c(top + 2)?;
        let mstar = r_dual(r, &m)?.module;
        let tor_dual = tor_range(r, &mstar, &n, 1, top, TorRoute::ResolveFirst)?;
        let mut tate = tate_ext_range_via_dual(r, &c, &n, -(top as i64) - 1, -2)?;
        tate.reverse();
        let mv = m.matlis_dual(r)?;
        let tor_matlis = tor_range(r, &n, &mv, 0, top, TorRoute::ResolveFirst)?;
        let ext_nm = &self.ext_n_m()?[..=top];
        let first = tate == tor_dual;
        let second = tor_matlis == ext_nm;
        out.actual = json!({
            "tate_ext_equals_tor_of_dual": first,
            "matlis_pairing": second,
            "tate_ext_at_minus_i_minus_1": indexed(1, &tate),
            "tor_mstar_n": indexed(1, &tor_dual),
            "tor_n_matlis_dual_m": indexed(0, &tor_matlis),
            "ext_n_m": indexed(0, ext_nm),
        });
        out.pass = first && second;
        Ok(())
    }

    fn auslander(&self, out: &mut Outcome, qs: std::ops::RangeInclusive<u32>) -> Result<()> {
        let pattern = |q: u32| -> Vec<&'static str> {
            (0..=q + 4).map(|i| if i == 0 || i == q - 1 || i == q { "nonzero" } else { "zero" }).collect()
        };
        let mut expected = serde_json::Map::new();
        for q in qs.clone() {
            expected.insert(format!("q={q}"), json!(pattern(q)));
        }
        out.expected = Value::Object(expected);
        let m = self.module(ModulePreset::M)?;
        let mut actual = serde_json::Map::new();
        let mut pass = true;
        for q in qs {
            let nq = self.module(ModulePreset::Nq(q))?;
            let dims = ext_range(&self.r, &m, &nq, 0, q as usize + 4, ExtRoute::Projective)?;
            let got: Vec<&str> = dims.iter().map(|&d| if d > 0 { "nonzero" } else { "zero" }).collect();
            pass &= got == pattern(q);
            actual.insert(format!("q={q}"), json!({ "pattern": got, "dims": dims }));
        }
        out.actual = Value::Object(actual);
        out.pass = pass;
        Ok(())
    }

    fn length_two(&self, out: &mut Outcome) -> Result<()> {
        let rg = &self.ranges;
        out.expected = json!({ "samples": rg.samples, "ext_1_to_4": "nonzero", "tor_1_to_4": "nonzero" });
        let r = &self.r;
        let e = self.module(ModulePreset::E)?;
        let res = min_free_resolution(r, &e, 5)?;
        let mut samples = Vec::new();
        let mut pass = true;
        for seed in rg.seed..rg.seed + rg.samples as u64 {
            let l = random_length2_module(r, seed)?;
            let ext = (1..=4).map(|i| ext_from(r, &res, &l, i)).collect::<Result<Vec<_>>>()?;
            let tor = (1..=4).map(|i| tor_from(r, &res, &l, i)).collect::<Result<Vec<_>>>()?;
            pass &= all_nonzero(&ext) && all_nonzero(&tor);
            samples.push(json!({ "seed": seed, "ext": ext, "tor": tor }));
        }
        out.actual = json!({ "samples": samples });
        out.pass = pass;
        Ok(())
    }

    fn betti_bass(&self, out: &mut Outcome) -> Result<()> {
        let which = [ModulePreset::N, ModulePreset::CokerD1, ModulePreset::M];
        out.expected = json!({ "bass_equals_betti_of_dual": true });
        let mut actual = serde_json::Map::new();
        let mut pass = true;
        for w in which {
            let x = self.module(w)?;
            let mu = bass_numbers_via_ext(&self.r, &x, 4)?;
            let beta = bass_numbers_via_dual(&self.r, &x, 4)?;
            pass &= mu == beta;
            actual.insert(w.to_string(), json!({ "mu": mu, "beta_dual": beta }));
        }
        actual.insert("bass_equals_betti_of_dual".into(), json!(pass));
        out.actual = Value::Object(actual);
        out.pass = pass;
        Ok(())
    }
}

/// One informational result: passes whenever the computation succeeds.
fn info(id: &str, anchor: &str, start: Instant, actual: Result<Value>) -> CheckResult {
    let mut c = match actual {
        Ok(v) => CheckResult::new(id, anchor, Value::Null, v, true),
        Err(e) => CheckResult::error(id, anchor, Value::Null, e),
    };
    c.runtime_ms = start.elapsed().as_millis() as u64;
    c
}

fn single(cfg: &FieldConfig, ranges: &Ranges, run: impl FnOnce() -> Result<Vec<CheckResult>>) -> Report {
    if let Err(e) = cfg.validate().and_then(|_| ranges.validate()) {
        return config_failure(Some(cfg), e);
    }
    match run() {
        Ok(checks) => Report::new(Some(echo(cfg)), checks),
        Err(e) => {
            let c = CheckResult::error("00-setup", "the ring and its presets can be built", json!("built"), e);
            Report::new(Some(echo(cfg)), vec![c])
        }
    }
}

/// Structure checks of the preset ring or of a ring read from a file.
pub fn ring_report(cfg: &FieldConfig, text: Option<&str>) -> Report {
    single(cfg, &Ranges::default(), || {
        fn go<F: Field>(s: Scalars<F>, text: Option<&str>) -> Result<Vec<CheckResult>> {
            let start = Instant::now();
            let r = match text {
                Some(t) => GradedAlgebra::from_text(&s, t)?,
                None => GradedAlgebra::preset(&s)?,
            };
            let build = info(
                "ring-build",
                "the quotient is finite dimensional with a monomial basis",
                start,
                Ok(json!({ "dim": r.dim(), "hilbert_function": r.hilbert_function() })),
            );
            let start = Instant::now();
            let assoc = r.verify_structure().and_then(|_| r.associativity_sweep());
            let mut assoc = match assoc {
                Ok(()) => CheckResult::new(
                    "ring-associativity",
                    "the structure constants define an algebra",
                    json!(true),
                    json!(true),
                    true,
                ),
                Err(e) => CheckResult::error(
                    "ring-associativity",
                    "the structure constants define an algebra",
                    json!(true),
                    e,
                ),
            };
            assoc.runtime_ms = start.elapsed().as_millis() as u64;
            let start = Instant::now();
            let socle = r.socle().len();
            let mut gor = CheckResult::new(
                "ring-gorenstein",
                "the socle is one-dimensional",
                json!({ "socle_dim": 1 }),
                json!({ "socle_dim": socle }),
                r.is_gorenstein(),
            );
            gor.runtime_ms = start.elapsed().as_millis() as u64;
            Ok(vec![build, assoc, gor])
        }
        match cfg.mode {
            FieldMode::Rationals => go(Scalars::new(Rationals, cfg.clone())?, text),
            FieldMode::Prime(p) => go(Scalars::new(PrimeField::new(p)?, cfg.clone())?, text),
        }
    })
}

/// `d^2 = 0`, minimality and exactness of `C` on `-neg ..= pos`.
pub fn complex_report(cfg: &FieldConfig, neg: usize, pos: usize) -> Report {
    let ranges = Ranges { neg, pos, ..Ranges::default() };
    single(cfg, &ranges, || {
        with_ctx!(cfg, ranges, |ctx| {
            let start = Instant::now();
            let r = &ctx.r;
            let (neg, pos) = (neg as i64, pos as i64);
            let expected = json!({ "homology": indexed(-neg, &vec![0; (neg + pos + 1) as usize]), "minimal": true });
            let anchor = "C is an exact complex of free modules with differentials in the maximal ideal";
            let built = build_complete_resolution_c(r, &ctx.s, neg as usize + 1, pos as usize + 1).and_then(|c| {
                let h = (-neg..=pos).map(|i| c.homology_dim(r, i)).collect::<Result<Vec<_>>>()?;
                let ranks: Vec<usize> = c.ranks().into_iter().map(|(_, n)| n).collect();
                Ok((h, ranks, c.is_minimal(r)))
            });
            let mut check = match built {
                Ok((h, ranks, minimal)) => {
                    let actual = json!({
                        "homology": indexed(-neg, &h),
                        "minimal": minimal,
                        "ranks": indexed(-neg - 1, &ranks),
                    });
                    CheckResult::new("complex", anchor, expected, actual, all_zero(&h) && minimal)
                }
                Err(e) => CheckResult::error("complex", anchor, expected, e),
            };
            check.runtime_ms = start.elapsed().as_millis() as u64;
            Ok(vec![check])
        })
    })
}

/// Graded Betti numbers of a preset module through homological degree `n`.
pub fn betti_report(cfg: &FieldConfig, which: ModulePreset, n: usize) -> Report {
    let ranges = Ranges {
        q_max: match which {
            ModulePreset::Nq(q) => q,
            _ => 1,
        },
        ..Ranges::default()
    };
    single(cfg, &ranges, || {
        with_ctx!(cfg, ranges, |ctx| {
            let start = Instant::now();
            let actual = ctx.module(which).and_then(|x| {
                let table = min_free_resolution(&ctx.r, &x, n)?.betti();
                let graded: Vec<Value> =
                    table.graded.iter().map(|m| Value::Array(m.iter().map(|(d, k)| json!([d, k])).collect())).collect();
                Ok(json!({ "module": which.to_string(), "totals": table.totals(), "graded": graded }))
            });
            Ok(vec![info("betti", "minimal graded free resolution", start, actual)])
        })
    })
}

/// `dim Ext^i(X, Y)` over a range of non-negative `i`.
pub fn ext_report(cfg: &FieldConfig, from: ModulePreset, to: ModulePreset, range: IndexRange) -> Report {
    let q_max = [from, to].iter().map(|w| if let ModulePreset::Nq(q) = w { *q } else { 1 }).max().unwrap_or(1);
    let ranges = Ranges { q_max, ..Ranges::default() };
    if range.lo < 0 {
        return config_failure(Some(cfg), "Ext is indexed by non-negative integers; use tate for negative indices");
    }
    single(cfg, &ranges, || {
        with_ctx!(cfg, ranges, |ctx| {
            let start = Instant::now();
            let actual = ctx.module(from).and_then(|x| {
                let y = ctx.module(to)?;
                let dims = ext_range(&ctx.r, &x, &y, range.lo as usize, range.hi as usize, ExtRoute::Projective)?;
                Ok(json!({ "from": from.to_string(), "to": to.to_string(), "ext": indexed(range.lo, &dims) }))
            });
            Ok(vec![info("ext", "Ext computed from a minimal free resolution of the first argument", start, actual)])
        })
    })
}

/// `Ext^i(M, N)` and `Tor_i(M, N)` in Tate cohomology over a range of `i`.
pub fn tate_report(cfg: &FieldConfig, range: IndexRange) -> Report {
    let neg = (range.hi + 1).max(1) as usize;
    let pos = (1 - range.lo).max(1) as usize;
    let ranges = Ranges { neg, pos, ..Ranges::default() };
    single(cfg, &ranges, || {
        with_ctx!(cfg, ranges, |ctx| {
            let start = Instant::now();
            let actual = (|| {
                let r = &ctx.r;
                let n = ctx.module(ModulePreset::N)?;
                let c = build_complete_resolution_c(r, &ctx.s, neg, pos)?;
                let ext = tate_ext_range_via_dual(r, &c, &n, range.lo, range.hi)?;
                let tor = tate_tor_range_via_dual(r, &c, &n, range.lo, range.hi)?;
                Ok(json!({ "tate_ext_m_n": indexed(range.lo, &ext), "tate_tor_m_n": indexed(range.lo, &tor) }))
            })();
            Ok(vec![info("tate", "Tate cohomology of M = Coker d_0* with coefficients in N", start, actual)])
        })
    })
}

/// The Auslander vanishing pattern for one `q`.
pub fn auslander_report(cfg: &FieldConfig, q: u32) -> Report {
    let ranges = Ranges { q_max: q, ..Ranges::default() };
    single(cfg, &ranges, || {
        with_ctx!(cfg, ranges, |ctx| {
            let m = meta(9);
            let start = Instant::now();
            let mut out = Outcome { expected: Value::Null, actual: Value::Null, pass: false };
            let mut c = match ctx.auslander(&mut out, q..=q) {
                Ok(()) => CheckResult::new(m.id, m.anchor, out.expected, out.actual, out.pass),
                Err(e) => CheckResult::error(m.id, m.anchor, out.expected, e),
            };
            c.runtime_ms = start.elapsed().as_millis() as u64;
            Ok(vec![c])
        })
    })
}

/// Apolarity of the preset ideal against the built-in cubic or a given one.
pub fn invsys_report(cfg: &FieldConfig, form: Option<&str>) -> Report {
    single(cfg, &Ranges::default(), || {
        fn go<F: Field>(s: Scalars<F>, form: Option<&str>) -> Result<Vec<CheckResult>> {
            let start = Instant::now();
            let anchor = "the defining ideal is the annihilator of the cubic form";
            let expected = json!({ "non_annihilating": [], "hilbert_functions_agree": true });
            let r = GradedAlgebra::preset(&s)?;
            let f = r.field();
            let parsed = match form {
                Some(t) => ApolarForm::parse(f, &s.alpha, t),
                None => ApolarForm::preset(f, &s.alpha),
            };
            let mut c = match parsed {
                Ok(form) => {
                    let ev = verify_apolarity(f, &r.presentation().relations, &form);
                    let actual = json!({
                        "non_annihilating": ev.non_annihilating,
                        "hilbert_functions_agree": ev.apolar_hilbert == ev.ideal_hilbert,
                        "apolar_hilbert": ev.apolar_hilbert,
                        "ideal_hilbert": ev.ideal_hilbert,
                    });
                    CheckResult::new("invsys", anchor, expected, actual, ev.holds())
                }
                Err(e) => CheckResult::error("invsys", anchor, expected, e),
            };
            c.runtime_ms = start.elapsed().as_millis() as u64;
            Ok(vec![c])
        }
        match cfg.mode {
            FieldMode::Rationals => go(Scalars::new(Rationals, cfg.clone())?, form),
            FieldMode::Prime(p) => go(Scalars::new(PrimeField::new(p)?, cfg.clone())?, form),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_inclusively() {
        assert_eq!("-3..3".parse::<IndexRange>().unwrap(), IndexRange { lo: -3, hi: 3 });
        assert_eq!("0..=5".parse::<IndexRange>().unwrap(), IndexRange { lo: 0, hi: 5 });
        assert!("4..2".parse::<IndexRange>().is_err());
        assert!("4".parse::<IndexRange>().is_err());
    }

    #[test]
    fn suites_partition_the_checks() {
        let mut all: Vec<u8> = [Suite::Ring, Suite::Invsys, Suite::Complex, Suite::Homology, Suite::Auslander]
            .iter()
            .flat_map(|s| s.checks().iter().copied())
            .collect();
        all.sort();
        assert_eq!(all, (1..=11).collect::<Vec<u8>>());
        assert_eq!(Suite::All.checks(), &(1..=12).collect::<Vec<u8>>()[..]);
    }

    #[test]
    fn check_ids_sort_in_order() {
        let ids: Vec<&str> = META.iter().map(|m| m.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert!(META.iter().all(|m| !m.anchor.is_empty()));
    }

    #[test]
    fn bad_alpha_is_a_config_failure() {
        let mut cfg = FieldConfig::rationals();
        cfg.alpha = tatelab_core::scalars::parse_rational("1").unwrap();
        let report = run_suite(Suite::Ring, &cfg, &Ranges::default());
        assert!(is_config_failure(&report));
        assert!(!report.all_passed());
    }

    #[test]
    fn small_checks_pass_over_both_fields() {
        let ranges = Ranges { neg: 3, pos: 3, depth: 4, ..Ranges::default() };
        for cfg in [FieldConfig::rationals(), other_field(&FieldConfig::rationals()).unwrap()] {
            let report = run_suite(Suite::Ring, &cfg, &ranges);
            assert!(report.all_passed(), "{}", report.to_text());
            let report = run_suite(Suite::Auslander, &cfg, &Ranges { q_max: 2, ..ranges.clone() });
            assert!(report.all_passed(), "{}", report.to_text());
        }
    }
}
