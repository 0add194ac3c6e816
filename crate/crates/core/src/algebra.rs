//! Finite-dimensional graded commutative algebras given by structure
//! constants on a basis of standard monomials.

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::polyring::{
    groebner_check_by_hilbert, parse_poly, standard_monomials, GroebnerEvidence, Monomial, Poly, QuotientPresentation,
};
use crate::scalars::{Field, Scalars};

/// Degree bound used for the algebras in this crate (`m^4 = 0`).
pub const DEFAULT_MAXDEG: usize = 4;

/// Coefficient vector with respect to the algebra basis.
pub type AlgebraElement<E> = Vec<E>;

#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    field: F,
    presentation: QuotientPresentation<F>,
    basis: Vec<Monomial>,
    degrees: Vec<usize>,
    /// `table[i][j]` = coordinates of `basis[i] * basis[j]`.
    table: Vec<Vec<SparseVec<F::El>>>,
    unit_index: usize,
    generator_indices: Vec<usize>,
    evidence: GroebnerEvidence,
}

impl<F: Field> GradedAlgebra<F> {
    /// `P/I` for a presentation whose marks pass the Hilbert-function
    /// Groebner certificate up to `maxdeg`, with `(P/I)_maxdeg = 0`.
    pub fn build(field: &F, pres: QuotientPresentation<F>, maxdeg: usize) -> Result<Self> {
        let n = pres.ring.nvars();
        let evidence = groebner_check_by_hilbert(field, n, &pres.relations, maxdeg);
        if let Some(degree) = evidence.first_mismatch() {
            return Err(Error::NotGroebner {
                degree,
                standard: evidence.standard[degree],
                quotient: evidence.quotient[degree],
            });
        }
        if evidence.standard[maxdeg] != 0 {
            return Err(Error::Structure(format!("quotient does not vanish in degree {maxdeg}")));
        }
        let basis: Vec<Monomial> = (0..maxdeg).flat_map(|d| standard_monomials(n, &pres.relations, d)).collect();
        let degrees: Vec<usize> = basis.iter().map(|m| m.degree()).collect();
        let index_of = |m: &Monomial| basis.iter().position(|b| b == m);
        let generator_indices = (0..n)
            .map(|v| {
                index_of(&Monomial::var(v)).ok_or_else(|| {
                    Error::Structure(format!("variable {} is not a standard monomial", pres.ring.names[v]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit_index = index_of(&Monomial::one()).ok_or_else(|| Error::Structure("1 = 0".into()))?;

        let mut table = vec![vec![Vec::new(); basis.len()]; basis.len()];
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let prod = Poly::monomial(field, basis[i].mul(&basis[j]), field.one());
                let nf = pres.normal_form(field, &prod);
                let coords: SparseVec<F::El> = nf
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let k = index_of(m).expect("normal form is supported on standard monomials");
                        (k as u32, c.clone())
                    })
                    .collect();
                let coords = linalg::normalize(field, coords);
                table[i][j] = coords.clone();
                table[j][i] = coords;
            }
        }
        let alg = GradedAlgebra {
            field: field.clone(),
            presentation: pres,
            basis,
            degrees,
            table,
            unit_index,
            generator_indices,
            evidence,
        };
        alg.verify_structure()?;
        Ok(alg)
    }

    /// The codimension-six ring `R` for the given scalars.
    pub fn preset(scalars: &Scalars<F>) -> Result<Self> {
        let pres = QuotientPresentation::preset(&scalars.field, &scalars.alpha)?;
        Self::build(&scalars.field, pres, DEFAULT_MAXDEG)
    }

    /// Parse a presentation in the text format and build the algebra.
    pub fn from_text(scalars: &Scalars<F>, text: &str) -> Result<Self> {
        let pres = QuotientPresentation::parse(&scalars.field, &scalars.alpha, text)?;
        Self::build(&scalars.field, pres, DEFAULT_MAXDEG)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn presentation(&self) -> &QuotientPresentation<F> {
        &self.presentation
    }

    pub fn groebner_evidence(&self) -> &GroebnerEvidence {
        &self.evidence
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn ngens(&self) -> usize {
        self.generator_indices.len()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Basis indices of degree `d`.
    pub fn indices_of_degree(&self, d: i64) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.degrees[i] as i64 == d)
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut hf = vec![0; self.top_degree() + 1];
        for &d in &self.degrees {
            hf[d] += 1;
        }
        hf
    }

    /// Coordinates of `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F::El> {
        &self.table[i][j]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    /// Lowercase residue-class name of a basis element, e.g. `tvx`.
    pub fn basis_name(&self, i: usize) -> String {
        let names: Vec<String> = self.presentation.ring.names.iter().map(|n| n.to_lowercase()).collect();
        self.basis[i].display(&names).replace('^', "")
    }

    pub fn zero(&self) -> AlgebraElement<F::El> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<F::El> {
        let mut e = self.zero();
        e[i] = self.field.one();
        e
    }

    pub fn one(&self) -> AlgebraElement<F::El> {
        self.basis_element(self.unit_index)
    }

    /// Residue class of the `v`-th variable.
    pub fn generator(&self, v: usize) -> AlgebraElement<F::El> {
        self.basis_element(self.generator_indices[v])
    }

    pub fn is_zero(&self, a: &[F::El]) -> bool {
        a.iter().all(|c| self.field.is_zero(c))
    }

    pub fn multiply(&self, a: &[F::El], b: &[F::El]) -> Result<AlgebraElement<F::El>> {
        for v in [a, b] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), actual: v.len() });
            }
        }
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in &self.table[i][j] {
                    let slot = &mut out[*k as usize];
                    *slot = f.add(slot, &f.mul(&xy, c));
                }
            }
        }
        Ok(out)
    }

    /// Residue class of a polynomial written in the presentation's variables.
    pub fn parse_element(&self, alpha: &F::El, text: &str) -> Result<AlgebraElement<F::El>> {
        let upper: Vec<String> = self.presentation.ring.names.clone();
        let lower: Vec<String> = upper.iter().map(|n| n.to_lowercase()).collect();
        let poly =
            parse_poly(&self.field, &upper, alpha, text).or_else(|_| parse_poly(&self.field, &lower, alpha, text))?;
        self.from_poly(&poly)
    }

    pub fn from_poly(&self, poly: &Poly<F>) -> Result<AlgebraElement<F::El>> {
        let nf = self.presentation.normal_form(&self.field, poly);
        let mut out = self.zero();
        for (m, c) in &nf.terms {
            match self.index_of(m) {
                Some(i) => out[i] = c.clone(),
                None if m.degree() > self.top_degree() => {}
                None => return Err(Error::Structure(format!("{m} survives reduction"))),
            }
        }
        Ok(out)
    }

    /// Commutativity, degree additivity, unit law and associativity on all
    /// basis triples.
    pub fn verify_structure(&self) -> Result<()> {
        let f = &self.field;
        let n = self.dim();
        for i in 0..n {
            if self.table[self.unit_index][i] != linalg::unit(f, i) {
                return Err(Error::Structure(format!("unit law fails on basis element {i}")));
            }
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::Structure(format!("product {i}*{j} not commutative")));
                }
                for (k, _) in &self.table[i][j] {
                    if self.degrees[*k as usize] != self.degrees[i] + self.degrees[j] {
                        return Err(Error::Structure(format!("product {i}*{j} not homogeneous")));
                    }
                }
            }
        }
        self.associativity_sweep()
    }

    pub fn associativity_sweep(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = linalg::to_dense(&self.field, &self.table[i][j], n);
                for l in 0..n {
                    let left = self.multiply(&ij, &self.basis_element(l))?;
                    let jl = linalg::to_dense(&self.field, &self.table[j][l], n);
                    let right = self.multiply(&self.basis_element(i), &jl)?;
                    if left != right {
                        return Err(Error::Structure(format!("associativity fails on ({i},{j},{l})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `{a : a * g = 0 for every generator g}`, as the kernel of the stacked
    /// multiplication maps.
    pub fn socle(&self) -> Vec<AlgebraElement<F::El>> {
        let n = self.dim();
        let columns: Vec<SparseVec<F::El>> = (0..n)
            .map(|i| {
                let mut col = Vec::new();
                for (k, &g) in self.generator_indices.iter().enumerate() {
                    for (m, c) in &self.table[g][i] {
                        col.push(((k * n) as u32 + m, c.clone()));
                    }
                }
                col
            })
            .collect();
        linalg::kernel(&self.field, n * self.ngens(), &columns)
            .iter()
            .map(|v| linalg::to_dense(&self.field, v, n))
            .collect()
    }

    /// Artinian local Gorenstein iff the socle is one-dimensional.
    pub fn is_gorenstein(&self) -> bool {
        self.socle().len() == 1
    }

    /// Matrix of multiplication by `basis[b]`: column `i` is `basis[b]*basis[i]`.
    pub fn multiplication_columns(&self, b: usize) -> &[SparseVec<F::El>] {
        &self.table[b]
    }
}
