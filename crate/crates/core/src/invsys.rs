//! Macaulay inverse systems in six dual variables.
//!
//! The divided power algebra `D` has the basis `T^[N]`, and a polynomial
//! acts on it by contraction: `T^M ∘ T^[N] = T^[N - M]` when `M <= N` and 0
//! otherwise. For a cubic form `F`, the annihilator `I_F` of `F` defines a
//! Gorenstein quotient of `P` with socle in degree 3. Showing that the
//! defining ideal of the ring sits inside `I_F` with the same dimension in
//! every degree proves that the ring is that quotient.
//!
//! Forms are written as ordinary polynomials in the dual variables and
//! converted with `T^N = N! T^[N]`. Characteristics 2 and 3 are refused,
//! since then `3!` vanishes and the conversion loses the form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::polyring::{ideal_dimension, parse_poly, MarkedBasis, Monomial, Poly, MAX_VARS};
use crate::scalars::Field;

/// Names of the dual variables, in the order of the ring variables.
pub const DUAL_NAMES: [&str; MAX_VARS] = ["tT", "tU", "tV", "tX", "tY", "tZ"];

/// The cubic form whose annihilator is the defining ideal of the ring.
pub const FORM_TEXT: &str = "-3*tZ*tY^2 + tX^3 - 3*tZ*tT^2 + 3*tY*tT^2 + 6*tZ*tU*tV \
    + 3*tY^2*tV + 3*tX^2*tV + 6*tX*tT*tV - 3*alpha*tZ*(tX + tT)^2";

fn dual_names() -> Vec<String> {
    DUAL_NAMES.iter().map(|s| s.to_string()).collect()
}

fn factorial_product(m: &Monomial) -> i64 {
    m.0.iter().map(|&e| (1..=e as i64).product::<i64>()).product()
}

/// Element of the divided power algebra: coefficients on `T^[N]`, keyed by
/// the divided exponent `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DpElement<F: Field> {
    pub terms: BTreeMap<Monomial, F::El>,
}

impl<F: Field> DpElement<F> {
    pub fn zero() -> Self {
        DpElement { terms: BTreeMap::new() }
    }

    /// `T^[n]`.
    pub fn basis(field: &F, n: Monomial) -> Self {
        DpElement { terms: [(n, field.one())].into_iter().collect() }
    }

    /// The element written as an ordinary polynomial in the dual variables.
    pub fn from_poly(field: &F, p: &Poly<F>) -> Self {
        let mut out = DpElement::zero();
        for (m, c) in &p.terms {
            out.add_term(field, *m, field.mul(c, &field.from_i64(factorial_product(m))));
        }
        out
    }

    fn add_term(&mut self, field: &F, n: Monomial, c: F::El) {
        let sum = match self.terms.remove(&n) {
            Some(old) => field.add(&old, &c),
            None => c,
        };
        if !field.is_zero(&sum) {
            self.terms.insert(n, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn coefficient(&self, n: &Monomial) -> Option<&F::El> {
        self.terms.get(n)
    }
}

/// `g ∘ e`.
pub fn contract<F: Field>(field: &F, g: &Poly<F>, e: &DpElement<F>) -> DpElement<F> {
    let mut out = DpElement::zero();
    for (m, a) in &g.terms {
        for (n, b) in &e.terms {
            if let Some(rest) = m.quotient_into(n) {
                out.add_term(field, rest, field.mul(a, b));
            }
        }
    }
    out
}

/// A cubic form of the divided power algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ApolarForm<F: Field> {
    pub form: DpElement<F>,
}

impl<F: Field> ApolarForm<F> {
    /// Parse a polynomial expression in `tT .. tZ` (and `alpha`).
    pub fn parse(field: &F, alpha: &F::El, text: &str) -> Result<Self> {
        let p = field.characteristic();
        if p == 2 || p == 3 {
            return Err(Error::Characteristic(p));
        }
        let poly = parse_poly(field, &dual_names(), alpha, text)?;
        let form = DpElement::from_poly(field, &poly);
        if form.homogeneous_degree() != Some(3) {
            return Err(Error::Config("the form must be homogeneous of degree 3".into()));
        }
        Ok(ApolarForm { form })
    }

    /// The form for the built-in ring.
    pub fn preset(field: &F, alpha: &F::El) -> Result<Self> {
        Self::parse(field, alpha, FORM_TEXT)
    }

    pub fn degree(&self) -> usize {
        3
    }
}

/// `(I_F)_d`: its dimension and a basis, as the kernel of contraction
/// `P_d -> D_{3-d}`. Every monomial of degree `d > 3` annihilates `F`.
pub fn annihilator<F: Field>(field: &F, f: &ApolarForm<F>, d: usize) -> (usize, Vec<Poly<F>>) {
    let monos = Monomial::all_of_degree(MAX_VARS, d);
    if d > f.degree() {
        return (monos.len(), monos.into_iter().map(|m| Poly::monomial(field, m, field.one())).collect());
    }
    let targets = Monomial::all_of_degree(MAX_VARS, f.degree() - d);
    let index: BTreeMap<Monomial, u32> = targets.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    let columns: Vec<SparseVec<F::El>> = monos
        .iter()
        .map(|m| {
            let image = contract(field, &Poly::monomial(field, *m, field.one()), &f.form);
            let v = image.terms.into_iter().map(|(n, c)| (index[&n], c)).collect();
            linalg::normalize(field, v)
        })
        .collect();
    let kernel = linalg::kernel(field, targets.len(), &columns);
    let basis: Vec<Poly<F>> = kernel
        .iter()
        .map(|v| Poly::from_terms(field, v.iter().map(|(i, c)| (monos[*i as usize], c.clone()))))
        .collect();
    (basis.len(), basis)
}

pub fn annihilator_dim<F: Field>(field: &F, f: &ApolarForm<F>, d: usize) -> usize {
    annihilator(field, f, d).0
}

/// Hilbert function of `P / I_F` in degrees `0 ..= maxdeg`.
pub fn apolar_hilbert_function<F: Field>(field: &F, f: &ApolarForm<F>, maxdeg: usize) -> Vec<usize> {
    (0..=maxdeg).map(|d| Monomial::all_of_degree(MAX_VARS, d).len() - annihilator_dim(field, f, d)).collect()
}

/// Evidence for `P / I = P / I_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarityEvidence {
    /// Indices of generators of `I` that do not annihilate `F`.
    pub non_annihilating: Vec<usize>,
    /// `dim (P / I_F)_d` for `d = 0 ..= 4`.
    pub apolar_hilbert: Vec<usize>,
    /// `dim (P / I)_d` for `d = 0 ..= 4`.
    pub ideal_hilbert: Vec<usize>,
}

impl ApolarityEvidence {
    /// `I ⊆ I_F` and both quotients have the same Hilbert function, so the
    /// ideals agree.
    pub fn holds(&self) -> bool {
        self.non_annihilating.is_empty() && self.apolar_hilbert == self.ideal_hilbert
    }
}

/// Check that `I` annihilates `F` and that `I` and `I_F` have the same
/// dimension in degrees up to 4 (where `I_F` contains everything).
pub fn verify_apolarity<F: Field>(field: &F, ideal: &MarkedBasis<F>, f: &ApolarForm<F>) -> ApolarityEvidence {
    let gens: Vec<Poly<F>> = ideal.generators.iter().map(|(g, _)| g.clone()).collect();
    let non_annihilating =
        gens.iter().enumerate().filter(|(_, g)| !contract(field, g, &f.form).is_zero()).map(|(i, _)| i).collect();
    let maxdeg = f.degree() + 1;
    let ideal_hilbert = (0..=maxdeg)
        .map(|d| Monomial::all_of_degree(MAX_VARS, d).len() - ideal_dimension(field, MAX_VARS, &gens, d))
        .collect();
    ApolarityEvidence { non_annihilating, apolar_hilbert: apolar_hilbert_function(field, f, maxdeg), ideal_hilbert }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::QuotientPresentation;
    use crate::scalars::{PrimeField, Rat, Rationals};
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    fn alpha() -> Rat {
        Rat::integer(2)
    }

    fn poly(text: &str) -> Poly<Rationals> {
        let names: Vec<String> = ["T", "U", "V", "X", "Y", "Z"].iter().map(|s| s.to_string()).collect();
        parse_poly(&q(), &names, &alpha(), text).unwrap()
    }

    fn form() -> ApolarForm<Rationals> {
        ApolarForm::preset(&q(), &alpha()).unwrap()
    }

    #[test]
    fn conversion_uses_factorials() {
        let f = ApolarForm::parse(&q(), &alpha(), "tY^2*tV + tX^3").unwrap();
        let n = |e: [u8; 6]| Monomial(e);
        assert_eq!(f.form.coefficient(&n([0, 0, 1, 0, 2, 0])), Some(&Rat::integer(2)));
        assert_eq!(f.form.coefficient(&n([0, 0, 0, 3, 0, 0])), Some(&Rat::integer(6)));
    }

    #[test]
    fn contraction_examples() {
        let f = form();
        assert!(contract(&q(), &poly("Z^2"), &f.form).is_zero());
        assert!(contract(&q(), &poly("U*Z - T*X - alpha*U*V"), &f.form).is_zero());
        let top = contract(&q(), &poly("T*V*X"), &f.form);
        assert_eq!(top.terms.len(), 1);
        assert_eq!(top.coefficient(&Monomial::one()), Some(&Rat::integer(6)));
    }

    #[test]
    fn annihilator_dimensions() {
        let f = form();
        assert_eq!(annihilator_dim(&q(), &f, 0), 0);
        assert_eq!(annihilator_dim(&q(), &f, 1), 0);
        assert_eq!(annihilator_dim(&q(), &f, 2), 15);
        assert_eq!(annihilator_dim(&q(), &f, 3), 55);
        assert_eq!(annihilator_dim(&q(), &f, 4), 126);
        assert_eq!(apolar_hilbert_function(&q(), &f, 4), vec![1, 6, 6, 1, 0]);
        let (_, basis) = annihilator(&q(), &f, 2);
        for g in &basis {
            assert!(contract(&q(), g, &f.form).is_zero());
        }
    }

    #[test]
    fn apolarity_certificate() {
        let pres = QuotientPresentation::preset(&q(), &alpha()).unwrap();
        let ev = verify_apolarity(&q(), &pres.relations, &form());
        assert!(ev.holds(), "{ev:?}");
        assert_eq!(ev.apolar_hilbert, vec![1, 6, 6, 1, 0]);

        let mut gens = pres.relations.generators.clone();
        gens.push((poly("T*V*X"), Monomial([1, 0, 1, 1, 0, 0])));
        let ev = verify_apolarity(&q(), &MarkedBasis::new(gens), &form());
        assert!(!ev.holds());
        assert_eq!(ev.non_annihilating, vec![15]);

        let cube = ApolarForm::parse(&q(), &alpha(), "tX^3").unwrap();
        let ev = verify_apolarity(&q(), &pres.relations, &cube);
        assert_eq!(ev.apolar_hilbert, vec![1, 1, 1, 1, 0]);
        assert!(!ev.holds());
    }

    #[test]
    fn small_characteristics_are_refused() {
        for p in [2, 3] {
            let field = PrimeField::new(p).unwrap();
            let a = field.from_i64(2);
            assert_eq!(ApolarForm::preset(&field, &a), Err(Error::Characteristic(p)));
        }
        let field = PrimeField::new(32003).unwrap();
        let a = field.from_i64(2);
        let f = ApolarForm::preset(&field, &a).unwrap();
        assert_eq!(apolar_hilbert_function(&field, &f, 4), vec![1, 6, 6, 1, 0]);
    }

    #[test]
    fn forms_must_be_cubic() {
        assert!(ApolarForm::parse(&q(), &alpha(), "tX^2").is_err());
        assert!(ApolarForm::parse(&q(), &alpha(), "tX^3 + tY").is_err());
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rationals>> {
        let monos: Vec<Monomial> = (0..=max_deg).flat_map(|d| Monomial::all_of_degree(MAX_VARS, d)).collect();
        prop::collection::vec((0..monos.len(), -3i64..=3), 1..4).prop_map(move |terms| {
            Poly::from_terms(&Rationals, terms.into_iter().map(|(i, c)| (monos[i], Rat::integer(c))))
        })
    }

    fn dp_element() -> impl Strategy<Value = DpElement<Rationals>> {
        let monos: Vec<Monomial> = (0..=3).flat_map(|d| Monomial::all_of_degree(MAX_VARS, d)).collect();
        prop::collection::vec((0..monos.len(), -3i64..=3), 1..6).prop_map(move |terms| {
            let mut e = DpElement::zero();
            for (i, c) in terms {
                e.add_term(&Rationals, monos[i], Rat::integer(c));
            }
            e
        })
    }

    proptest! {
        #[test]
        fn contraction_is_a_module_action(g in small_poly(2), h in small_poly(2), e in dp_element()) {
            let gh = g.mul(&Rationals, &h);
            prop_assert_eq!(contract(&q(), &gh, &e), contract(&q(), &g, &contract(&q(), &h, &e)));
        }

        #[test]
        fn contraction_lowers_degree(i in 0usize..28, j in 0usize..84) {
            let low: Vec<Monomial> = (0..=2).flat_map(|d| Monomial::all_of_degree(MAX_VARS, d)).collect();
            let all: Vec<Monomial> = (0..=3).flat_map(|d| Monomial::all_of_degree(MAX_VARS, d)).collect();
            let (m, n) = (low[i], all[j]);
            let out = contract(&q(), &Poly::monomial(&Rationals, m, Rat::integer(1)), &DpElement::basis(&Rationals, n));
            prop_assert_eq!(out.is_zero(), !m.divides(&n));
            if let Some(d) = out.homogeneous_degree() {
                prop_assert_eq!(d, n.degree() - m.degree());
            }
        }
    }
}
