use proptest::prelude::*;

use tatelab_core::algebra::GradedAlgebra;
use tatelab_core::homalg::free::mul_basis;
use tatelab_core::homalg::*;
use tatelab_core::linalg::{self, Echelon, SparseVec};
use tatelab_core::scalars::{Rat, Rationals, Scalars};

type Q = Rationals;

fn setup() -> (Scalars<Q>, GradedAlgebra<Q>) {
    let s = Scalars::rationals(Rat::integer(2).to_big()).unwrap();
    let r = GradedAlgebra::preset(&s).unwrap();
    (s, r)
}

fn el(s: &Scalars<Q>, r: &GradedAlgebra<Q>, text: &str) -> SparseVec<Rat> {
    linalg::from_dense(r.field(), &r.parse_element(&s.alpha, text).unwrap())
}

/// The free-module element with `text` in component `c` and zero elsewhere.
fn in_component(s: &Scalars<Q>, r: &GradedAlgebra<Q>, c: u32, text: &str) -> SparseVec<Rat> {
    let n = r.dim() as u32;
    el(s, r, text).into_iter().map(|(b, x)| (c * n + b, x)).collect()
}

fn contains(r: &GradedAlgebra<Q>, sub: &GradedSubspace<Rat>, v: &SparseVec<Rat>) -> bool {
    let mut ech = Echelon::new(*r.field(), sub.ambient.k_dim(r));
    for b in sub.basis() {
        ech.insert(&b);
    }
    ech.contains(v)
}

/// Power-series coefficients of `num / den` by long division.
fn series(num: &[i64], den: &[i64], n: usize) -> Vec<i64> {
    let mut rem: Vec<i64> = num.to_vec();
    rem.resize(n + den.len() + 1, 0);
    let mut out = Vec::new();
    for k in 0..=n {
        let c = rem[k] / den[0];
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
        out.push(c);
    }
    out
}

#[test]
fn kernel_of_d0_has_dimension_14() {
    let (s, r) = setup();
    let d0 = CompleteResolutionFamily::new(&r, &s).d(0).unwrap();
    assert_eq!(graded_kernel(&r, &d0).dim(), 14);
}

#[test]
fn kernel_of_zero_and_identity_maps() {
    let (_, r) = setup();
    let zero = RMatrix::<Q>::zero(FreeModule::new(vec![0]), FreeModule::new(vec![0]));
    assert_eq!(graded_kernel(&r, &zero).dim(), 14);
    let f = r.field();
    let one = linalg::unit(f, r.unit_index());
    let id = RMatrix::from_rows(
        &r,
        FreeModule::new(vec![0, 0]),
        FreeModule::new(vec![0, 0]),
        vec![vec![one.clone(), Vec::new()], vec![Vec::new(), one]],
    )
    .unwrap();
    assert_eq!(graded_kernel(&r, &id).dim(), 0);
    assert_eq!(graded_image(&r, &id).dim(), 28);
}

#[test]
fn kernel_of_d1_has_the_five_listed_generators() {
    let (s, r) = setup();
    let d1 = CompleteResolutionFamily::new(&r, &s).d(1).unwrap();
    let ker = graded_kernel(&r, &d1);
    let listed: Vec<SparseVec<Rat>> = ["t", "u", "v", "y", "z"].iter().map(|g| in_component(&s, &r, 2, g)).collect();
    for v in &listed {
        assert!(contains(&r, &ker, v));
    }
    // independent modulo (m Ker d_1)_3, hence part of a minimal generating set
    let mut ech = Echelon::new(*r.field(), d1.source.k_dim(&r));
    for v in ker.pieces.get(&2).into_iter().flatten() {
        for &g in r.generator_indices() {
            ech.insert(&mul_basis(&r, g, v));
        }
    }
    let before = ech.rank();
    for v in &listed {
        ech.insert(v);
    }
    assert_eq!(ech.rank(), before + 5);
    let gens = minimal_generators(&r, &ker);
    assert_eq!(gens.iter().filter(|(e, _)| *e == 3).count(), ker.dim_in_degree(3) - before);
}

#[test]
fn minimal_generators_of_the_maximal_ideal_and_the_socle() {
    let (s, r) = setup();
    let ring = FreeModule::new(vec![0]);
    let vars: Vec<SparseVec<Rat>> = ["t", "u", "v", "x", "y", "z"].iter().map(|g| el(&s, &r, g)).collect();
    let m = submodule_span(&r, &ring, &vars);
    assert_eq!(m.dim(), 13);
    let gens = minimal_generators(&r, &m);
    assert_eq!(gens.len(), 6);
    assert!(gens.iter().all(|(e, _)| *e == 1));

    let soc = submodule_span(&r, &ring, &[el(&s, &r, "t*v*x")]);
    let gens = minimal_generators(&r, &soc);
    assert_eq!(gens, vec![(3, el(&s, &r, "t*v*x"))]);
}

#[test]
fn betti_numbers_of_small_modules() {
    let (s, r) = setup();
    let k = FpModule::residue_field(&r).unwrap();
    let oracle = series(&[1], &[1, -6, 6, -1], 2);
    let got: Vec<i64> = betti_numbers(&r, &k, 2).unwrap().totals().iter().map(|&b| b as i64).collect();
    assert_eq!(got, oracle);

    let coker = preset_module(&r, &s, ModulePreset::CokerD1).unwrap();
    assert_eq!(betti_numbers(&r, &coker, 1).unwrap().totals(), vec![2, 3]);

    let ring = FpModule::free_rank_one(&r).unwrap();
    assert_eq!(betti_numbers(&r, &ring, 3).unwrap().totals(), vec![1, 0, 0, 0]);
}

#[test]
fn resolution_of_k_is_linear() {
    let (_, r) = setup();
    let k = FpModule::residue_field(&r).unwrap();
    let res = min_free_resolution(&r, &k, 3).unwrap();
    assert!(res.betti().is_linear());
    for i in 1..=3 {
        let d = res.complex.d(i).unwrap();
        for c in 0..d.ncols() {
            for (_, a) in d.column(c) {
                assert!(a.iter().all(|(b, _)| r.degree(*b as usize) == 1));
            }
        }
    }
}

#[test]
fn explicit_differentials() {
    let (s, r) = setup();
    let c = build_complete_resolution_c(&r, &s, 3, 3).unwrap();
    let d0 = c.d(0).unwrap();
    assert_eq!(
        d0.column_vector(&r, 0),
        linalg::normalize(r.field(), [in_component(&s, &r, 0, "v"), in_component(&s, &r, 1, "2*x")].concat())
    );
    let d1 = c.d(1).unwrap();
    assert_eq!(d1.column_vector(&r, 2), in_component(&s, &r, 1, "t*v"));
    for i in -3..=0 {
        assert_eq!(c.rank(i).unwrap(), 2);
    }
    assert_eq!(c.rank(1).unwrap(), 3);
}

#[test]
fn complete_resolution_is_exact_and_minimal() {
    let (s, r) = setup();
    let c = build_complete_resolution_c(&r, &s, 6, 4).unwrap();
    assert!(c.is_minimal(&r));
    c.verify_d_squared(&r).unwrap();
    for i in -5..=3 {
        assert_eq!(c.homology_dim(&r, i).unwrap(), 0, "H_{i}(C)");
    }
    for i in -5..=0 {
        assert_eq!(c.image_dim(&r, i).unwrap(), 14);
    }
    let dual = c.dualize();
    for i in -3..=5 {
        assert_eq!(dual.homology_dim(&r, i).unwrap(), 0, "H_{i}(C*)");
    }
}

#[test]
fn zero_maps_give_the_whole_middle_module() {
    let (_, r) = setup();
    let one = FreeModule::new(vec![0]);
    let z = || RMatrix::<Q>::zero(one.clone(), one.clone());
    let c = Complex::new(0, vec![one.clone(), one.clone(), one.clone()], vec![z(), z()], false, false).unwrap();
    assert_eq!(c.homology_dim(&r, 1).unwrap(), 14);
}

#[test]
fn dualize_transposes_and_is_an_involution() {
    let (s, r) = setup();
    let c = build_complete_resolution_c(&r, &s, 3, 3).unwrap();
    let dual = c.dualize();
    assert_eq!((dual.lo(), dual.hi()), (-3, 3));
    // (C*)_1 -> (C*)_0 is the transpose of d_0
    let d = dual.d(1).unwrap();
    assert_eq!(d.entry(0, 0), Some(&el(&s, &r, "v")));
    assert_eq!(d.entry(0, 1), Some(&el(&s, &r, "2*x")));
    assert_eq!(d.entry(1, 0), Some(&el(&s, &r, "y")));
    assert_eq!(d.entry(1, 1), Some(&el(&s, &r, "z")));
    assert_eq!(d.source.twists, vec![1, 1]);
    let back = dual.dualize();
    assert_eq!(back.modules(), c.modules());
    for i in -2..=3 {
        assert_eq!(*back.d(i).unwrap(), *c.d(i).unwrap());
    }
}

#[test]
fn matlis_duals() {
    let (s, r) = setup();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    let nd = n.matlis_dual(&r).unwrap();
    assert_eq!(nd.dim(), 2);

    let m = preset_module(&r, &s, ModulePreset::M).unwrap();
    let mdd = m.matlis_dual(&r).unwrap().matlis_dual(&r).unwrap();
    assert_eq!(mdd.hilbert_function(), m.hilbert_function());
    let end = m.hom_dim(&r, &m);
    assert_eq!(m.hom_dim(&r, &mdd), end);
    assert_eq!(mdd.hom_dim(&r, &m), end);

    let ring = FpModule::free_rank_one(&r).unwrap();
    let rd = ring.matlis_dual(&r).unwrap();
    let hf: Vec<usize> = rd.hilbert_function().into_values().collect();
    assert_eq!(hf, vec![1, 6, 6, 1]);
    assert_eq!(rd.minimal_generators(&r).len(), 1);
}

#[test]
fn ext_and_tor_of_free_and_residue_modules() {
    let (s, r) = setup();
    let ring = FpModule::free_rank_one(&r).unwrap();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    assert_eq!(ext_range(&r, &ring, &n, 0, 3, ExtRoute::Projective).unwrap(), vec![2, 0, 0, 0]);
    assert_eq!(tor_range(&r, &ring, &n, 0, 3, TorRoute::ResolveFirst).unwrap(), vec![2, 0, 0, 0]);
    let k = FpModule::residue_field(&r).unwrap();
    let beta1 = betti_numbers(&r, &k, 1).unwrap().total(1);
    assert_eq!(tor(&r, &k, &k, 1).unwrap(), beta1);
    assert_eq!(beta1, 6);
}

#[test]
fn resolution_too_short_is_an_error() {
    let (_, r) = setup();
    let k = FpModule::residue_field(&r).unwrap();
    let res = min_free_resolution(&r, &k, 2).unwrap();
    assert!(matches!(ext_from(&r, &res, &k, 2), Err(tatelab_core::Error::ResolutionTooShort { .. })));
    assert_eq!(ext_from(&r, &res, &k, 1).unwrap(), 6);
}

#[test]
fn ext_routes_agree() {
    let (s, r) = setup();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    let m = preset_module(&r, &s, ModulePreset::M).unwrap();
    let a = ext_range(&r, &n, &m, 0, 3, ExtRoute::Projective).unwrap();
    let b = ext_range(&r, &n, &m, 0, 3, ExtRoute::Dual).unwrap();
    assert_eq!(a, b);
    assert!(a[1..].iter().all(|&d| d > 0));
    let k = FpModule::residue_field(&r).unwrap();
    let c = tor_range(&r, &k, &n, 0, 3, TorRoute::ResolveFirst).unwrap();
    let d = tor_range(&r, &k, &n, 0, 3, TorRoute::ResolveSecond).unwrap();
    assert_eq!(c, d);
}

#[test]
fn bass_numbers_of_small_modules() {
    let (s, r) = setup();
    let ring = FpModule::free_rank_one(&r).unwrap();
    assert_eq!(bass_numbers(&r, &ring, 3).unwrap(), vec![1, 0, 0, 0]);
    let k = FpModule::residue_field(&r).unwrap();
    assert_eq!(bass_numbers(&r, &k, 3).unwrap(), betti_numbers(&r, &k, 3).unwrap().totals());
    let m = preset_module(&r, &s, ModulePreset::M).unwrap();
    // M* = Im d_1 and d_2 has entries in m, so the columns of d_1 are minimal
    let mstar = r_dual(&r, &m).unwrap();
    let rank_c1 = build_complete_resolution_c(&r, &s, 0, 2).unwrap().rank(1).unwrap();
    assert_eq!(mstar.generators.len(), rank_c1);
    assert_eq!(mstar.module.minimal_generators(&r).len(), 3);
    let im_d1 = preset_module(&r, &s, ModulePreset::MStar).unwrap();
    assert_eq!(im_d1.hom_dim(&r, &mstar.module), mstar.module.hom_dim(&r, &mstar.module));
}

#[test]
fn fib_lower_bound_matches_series_division() {
    let oracle = series(&[2, 1], &[1, -1, -1], 10);
    for (i, c) in oracle.iter().enumerate() {
        assert_eq!(fib_lower_bound(i) as i64, *c);
    }
    assert_eq!([fib_lower_bound(0), fib_lower_bound(1), fib_lower_bound(4)], [2, 3, 13]);
}

#[test]
fn preset_modules() {
    let (s, r) = setup();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    assert_eq!(n.dim(), 2);
    let x = n.action(3);
    assert!(x.iter().any(|col| !col.is_empty()));
    let f = r.field();
    for j in 0..n.dim() {
        assert!(n.act(f, 3, &n.act(f, 3, &linalg::unit(f, j))).is_empty());
    }
    for q in 1..=3 {
        assert_eq!(preset_module(&r, &s, ModulePreset::Nq(q)).unwrap().dim(), 2);
    }
    let e = preset_module(&r, &s, ModulePreset::E).unwrap();
    let emb = e.embedding().unwrap();
    let sub = GradedSubspace { ambient: emb.ambient.clone(), pieces: [(3, emb.vectors.clone())].into_iter().collect() };
    assert!(contains(&r, &sub, &in_component(&s, &r, 2, "t")));
    assert!("bogus".parse::<ModulePreset>().is_err());
    assert!("Nq:0".parse::<ModulePreset>().is_err());
    assert_eq!("Nq:2".parse::<ModulePreset>().unwrap(), ModulePreset::Nq(2));
}

#[test]
fn length_two_modules() {
    let (s, r) = setup();
    let lambda: Vec<Rat> = [0, 0, 1, 1, 1, 1].map(Rat::integer).to_vec();
    let l = length_two_from_functional(&r, "L", &lambda).unwrap();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    assert_eq!(l.minimal_generators(&r).len(), 1);
    assert_eq!(l.hom_dim(&r, &n), 2);
    assert_eq!(n.hom_dim(&r, &l), 2);
    // a module map L -> N that is onto the top exists iff the annihilators agree
    let k2 = FpModule::trivial(&r, "k2", 2).unwrap();
    assert_eq!(k2.hom_dim(&r, &n), 2);
    assert_eq!(n.hom_dim(&r, &k2), 2);

    let mut saw_semisimple = false;
    for seed in 0..20 {
        let l = random_length2_module(&r, seed).unwrap();
        assert_eq!(l.dim(), 2);
        if l.minimal_generators(&r).len() == 2 {
            saw_semisimple = true;
            assert!((0..r.ngens()).all(|g| l.action(g).iter().all(Vec::is_empty)));
        }
    }
    assert!(saw_semisimple);
}

#[test]
fn tate_identities_match_the_transposed_complex() {
    let (s, r) = setup();
    let c = build_complete_resolution_c(&r, &s, 4, 4).unwrap();
    let t = c.dualize();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    for i in -3..=3 {
        assert_eq!(tate_ext(&r, &t, &n, i).unwrap(), tate_ext_via_dual(&r, &c, &n, i).unwrap(), "Ext {i}");
        assert_eq!(tate_tor(&r, &t, &n, i).unwrap(), tate_tor_via_dual(&r, &c, &n, i).unwrap(), "Tor {i}");
    }
}

#[test]
fn spliced_resolution_of_m_matches_the_dual_of_c() {
    let (s, r) = setup();
    let m = preset_module(&r, &s, ModulePreset::M).unwrap();
    let t = complete_resolution_of(&r, &m, 3, 3).unwrap();
    let c = build_complete_resolution_c(&r, &s, 3, 3).unwrap();
    for j in -3..=3 {
        assert_eq!(t.rank(j).unwrap(), c.rank(-j).unwrap(), "rank T_{j}");
    }
    for j in -2..=2 {
        assert_eq!(t.homology_dim(&r, j).unwrap(), 0);
    }
}

#[test]
fn tate_agrees_with_ext_in_positive_degrees() {
    let (s, r) = setup();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    let k = FpModule::residue_field(&r).unwrap();
    let t = complete_resolution_of(&r, &n, 2, 4).unwrap();
    let ext = ext_range(&r, &n, &k, 1, 3, ExtRoute::Projective).unwrap();
    let tor = tor_range(&r, &n, &k, 1, 3, TorRoute::ResolveFirst).unwrap();
    for i in 1..=3 {
        assert_eq!(tate_ext(&r, &t, &k, i as i64).unwrap(), ext[i - 1]);
        assert_eq!(tate_tor(&r, &t, &k, i as i64).unwrap(), tor[i - 1]);
    }
}

#[test]
fn matlis_pairing_on_small_modules() {
    let (s, r) = setup();
    let n = preset_module(&r, &s, ModulePreset::N).unwrap();
    let k = FpModule::residue_field(&r).unwrap();
    let nd = n.matlis_dual(&r).unwrap();
    let tor = tor_range(&r, &k, &nd, 0, 3, TorRoute::ResolveFirst).unwrap();
    let ext = ext_range(&r, &k, &n, 0, 3, ExtRoute::Projective).unwrap();
    assert_eq!(tor, ext);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn resolutions_of_length_two_modules_are_minimal_and_exact(seed in any::<u64>()) {
        let (_, r) = setup();
        let l = random_length2_module(&r, seed).unwrap();
        let res = min_free_resolution(&r, &l, 3).unwrap();
        prop_assert!(res.complex.is_minimal(&r));
        prop_assert!(res.complex.verify_d_squared(&r).is_ok());
        for i in 1..3 {
            prop_assert_eq!(res.complex.homology_dim(&r, i).unwrap(), 0);
        }
        let h0 = res.complex.homology_dim(&r, 0).unwrap();
        prop_assert_eq!(h0, l.dim());
    }

    #[test]
    fn bass_numbers_agree_both_ways(seed in any::<u64>()) {
        let (_, r) = setup();
        let l = random_length2_module(&r, seed).unwrap();
        prop_assert!(bass_numbers(&r, &l, 2).is_ok());
    }

    #[test]
    fn graded_kernel_is_the_kernel(coeffs in prop::collection::vec(-3i64..=3, 12)) {
        let (_, r) = setup();
        let f = r.field();
        let gens = r.generator_indices();
        // R(-1)^2 -> R with two random linear forms
        let forms: Vec<SparseVec<Rat>> = coeffs
            .chunks(6)
            .map(|c| linalg::normalize(f, c.iter().zip(gens).map(|(a, g)| (*g as u32, Rat::integer(*a))).collect()))
            .collect();
        let m = RMatrix::from_rows(&r, FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), vec![forms]).unwrap();
        let ker = graded_kernel(&r, &m);
        for v in ker.basis() {
            prop_assert!(m.apply(&r, &v).is_empty());
        }
        prop_assert_eq!(ker.dim() + graded_image(&r, &m).dim(), m.source.k_dim(&r));
        prop_assert_eq!(graded_image(&r, &m).dim(), m.k_rank(&r));
    }
}
