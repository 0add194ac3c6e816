//! Polynomials in up to six variables, graded reverse-lexicographic order,
//! reduction modulo a marked generating set and Hilbert functions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::scalars::Field;

pub const MAX_VARS: usize = 6;

/// Exponent vector; entries past the ring's variable count stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    /// All monomials of degree `d` in `n` variables, exponent vectors in
    /// lexicographically decreasing order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<Monomial> {
        fn rec(n: usize, i: usize, left: usize, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur[i] = left as u8;
                out.push(Monomial(*cur));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u8;
                rec(n, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(n, 0, d, &mut [0; MAX_VARS], &mut out);
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (i, name) in names.iter().enumerate() {
            match self.0[i] {
                0 => {}
                1 => s.push_str(name),
                e => s.push_str(&format!("{name}^{e}")),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Graded reverse-lexicographic order for a given variable precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// Variable indices from largest to smallest.
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(precedence: Vec<usize>) -> Result<Self> {
        let mut sorted = precedence.clone();
        sorted.sort();
        if sorted != (0..precedence.len()).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("precedence {precedence:?} is not a permutation")));
        }
        Ok(MonomialOrder { precedence })
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        // smallest variable first; less of it means larger
        for &v in self.precedence.iter().rev() {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    }
}

/// Polynomial ring `k[x_1..x_n]` with named variables and a monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub names: Vec<String>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::Parse(format!("at most {MAX_VARS} variables supported")));
        }
        if order.precedence.len() != names.len() {
            return Err(Error::Parse("order does not mention every variable".into()));
        }
        Ok(PolyRing { names, order })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomials_of_degree(&self, d: usize) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars(), d)
    }
}

/// Polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    pub terms: BTreeMap<Monomial, F::El>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial(field: &F, m: Monomial, c: F::El) -> Self {
        let mut p = Poly::zero();
        p.add_term(field, m, c);
        p
    }

    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Monomial, F::El)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(field, m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: &F, m: Monomial, c: F::El) {
        if field.is_zero(&c) {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *m, c.clone());
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *m, field.neg(c));
        }
        out
    }

    pub fn mul(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(field, m.mul(n), field.mul(c, d));
            }
        }
        out
    }

    pub fn scale_shift(&self, field: &F, c: &F::El, m: &Monomial) -> Poly<F> {
        Poly::from_terms(field, self.terms.iter().map(|(n, d)| (n.mul(m), field.mul(c, d))))
    }

    /// `Some(d)` when every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F::El> {
        self.terms.get(m)
    }

    pub fn display(&self, field: &F, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(m, c)| format!("({})*{}", field.format(c), m.display(names))).collect();
        parts.join(" + ")
    }
}

/// Maximal monomial of `f` under `ord`.
pub fn leading_term<F: Field>(f: &Poly<F>, ord: &MonomialOrder) -> Result<Monomial> {
    f.terms.keys().copied().max_by(|a, b| ord.cmp(a, b)).ok_or(Error::ZeroPolynomial)
}

/// Generating set with a marked term per generator.
#[derive(Clone, Debug)]
pub struct MarkedBasis<F: Field> {
    pub generators: Vec<(Poly<F>, Monomial)>,
}

impl<F: Field> MarkedBasis<F> {
    pub fn new(generators: Vec<(Poly<F>, Monomial)>) -> Self {
        MarkedBasis { generators }
    }

    /// Monomial generators marked by themselves.
    pub fn monomial(field: &F, monomials: &[Monomial]) -> Self {
        MarkedBasis { generators: monomials.iter().map(|m| (Poly::monomial(field, *m, field.one()), *m)).collect() }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn marks(&self) -> Vec<Monomial> {
        self.generators.iter().map(|(_, m)| *m).collect()
    }

    /// Every mark is present in its generator and is its leading term.
    pub fn check_marks(&self, ord: &MonomialOrder) -> Result<()> {
        for (index, (g, mark)) in self.generators.iter().enumerate() {
            if g.coefficient(mark).is_none() || leading_term(g, ord)? != *mark {
                return Err(Error::BadMark { index });
            }
        }
        Ok(())
    }

    /// The monomial ideal generated by the marks.
    pub fn initial_terms(&self, field: &F) -> MarkedBasis<F> {
        MarkedBasis::monomial(field, &self.marks())
    }
}

/// Standard-form reduction: repeatedly rewrite the largest term divisible by
/// a mark, using the first generator (in list order) whose mark divides it.
pub fn normal_form<F: Field>(field: &F, f: &Poly<F>, basis: &MarkedBasis<F>, ord: &MonomialOrder) -> Poly<F> {
    let mut f = f.clone();
    loop {
        let mut terms: Vec<Monomial> = f.terms.keys().copied().collect();
        terms.sort_by(|a, b| ord.cmp(b, a));
        let step = terms
            .iter()
            .find_map(|m| basis.generators.iter().find(|(_, mark)| mark.divides(m)).map(|(g, mark)| (*m, g, *mark)));
        let Some((m, g, mark)) = step else { return f };
        let c = f.terms[&m].clone();
        let lc = &g.terms[&mark];
        let factor = field.div(&c, lc).expect("marked coefficient is nonzero");
        let shift = mark.quotient_into(&m).expect("mark divides term");
        f = f.sub(field, &g.scale_shift(field, &factor, &shift));
    }
}

/// Number of degree-`d` monomials divisible by no mark, for `d = 0..=maxdeg`.
pub fn hilbert_function_monomial_quotient<F: Field>(
    nvars: usize,
    basis: &MarkedBasis<F>,
    maxdeg: usize,
) -> Result<Vec<usize>> {
    for (index, (g, mark)) in basis.generators.iter().enumerate() {
        if !g.is_monomial() || g.coefficient(mark).is_none() {
            return Err(Error::NotMonomial { index });
        }
    }
    let marks = basis.marks();
    Ok((0..=maxdeg)
        .map(|d| Monomial::all_of_degree(nvars, d).iter().filter(|m| !marks.iter().any(|g| g.divides(m))).count())
        .collect())
}

/// Standard monomials of degree `d`: those divisible by no mark.
pub fn standard_monomials<F: Field>(nvars: usize, basis: &MarkedBasis<F>, d: usize) -> Vec<Monomial> {
    let marks = basis.marks();
    Monomial::all_of_degree(nvars, d).into_iter().filter(|m| !marks.iter().any(|g| g.divides(m))).collect()
}

/// Dimension of `I_d`, the degree-`d` part of the ideal generated by the
/// homogeneous generators, by row reduction of all their monomial multiples.
pub fn ideal_dimension<F: Field>(field: &F, nvars: usize, gens: &[Poly<F>], d: usize) -> usize {
    let monos = Monomial::all_of_degree(nvars, d);
    let index: BTreeMap<Monomial, u32> = monos.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    let mut vectors: Vec<SparseVec<F::El>> = Vec::new();
    for g in gens {
        let Some(gd) = g.homogeneous_degree() else { continue };
        if gd > d {
            continue;
        }
        for shift in Monomial::all_of_degree(nvars, d - gd) {
            let v = g.terms.iter().map(|(m, c)| (index[&m.mul(&shift)], c.clone())).collect();
            vectors.push(linalg::normalize(field, v));
        }
    }
    linalg::rank(field, monos.len(), &vectors)
}

/// Evidence for the Groebner certificate by Hilbert functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerEvidence {
    /// Standard monomial counts per degree.
    pub standard: Vec<usize>,
    /// `dim_k (P/I)_d` from linear algebra on multiples of the generators.
    pub quotient: Vec<usize>,
}

impl GroebnerEvidence {
    pub fn holds(&self) -> bool {
        self.standard == self.quotient
    }

    pub fn first_mismatch(&self) -> Option<usize> {
        self.standard.iter().zip(&self.quotient).position(|(a, b)| a != b)
    }
}

/// The marks generate the initial ideal iff, in every degree up to
/// `maxdeg`, the standard monomials are as many as `dim (P/I)_d`.
pub fn groebner_check_by_hilbert<F: Field>(
    field: &F,
    nvars: usize,
    basis: &MarkedBasis<F>,
    maxdeg: usize,
) -> GroebnerEvidence {
    let gens: Vec<Poly<F>> = basis.generators.iter().map(|(g, _)| g.clone()).collect();
    let mut standard = Vec::new();
    let mut quotient = Vec::new();
    for d in 0..=maxdeg {
        standard.push(standard_monomials(nvars, basis, d).len());
        let total = Monomial::all_of_degree(nvars, d).len();
        quotient.push(total - ideal_dimension(field, nvars, &gens, d));
    }
    GroebnerEvidence { standard, quotient }
}

// ---------------------------------------------------------------------------
// Expression parsing

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().map_err(|_| Error::Parse(format!("bad number {text}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Terms kept in order of first appearance so that "the first monomial
/// written" is recoverable after expansion.
type OrderedTerms<E> = Vec<(Monomial, E)>;

struct Parser<'a, F: Field> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a F,
    names: &'a [String],
    alpha: &'a F::El,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn combine(&self, terms: OrderedTerms<F::El>) -> OrderedTerms<F::El> {
        let mut out: OrderedTerms<F::El> = Vec::new();
        for (m, c) in terms {
            match out.iter_mut().find(|(n, _)| *n == m) {
                Some((_, acc)) => *acc = self.field.add(acc, &c),
                None => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        out
    }

    fn expr(&mut self) -> Result<OrderedTerms<F::El>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc.extend(self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                acc.extend(t.into_iter().map(|(m, c)| (m, self.field.neg(&c))));
            } else {
                return Ok(self.combine(acc));
            }
        }
    }

    fn term(&mut self) -> Result<OrderedTerms<F::El>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.product(&acc, &rhs);
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let c = match rhs.as_slice() {
                    [(m, c)] if *m == Monomial::one() => c.clone(),
                    _ => return Err(Error::Parse("can only divide by a nonzero constant".into())),
                };
                let inv = self.field.inv(&c)?;
                acc = acc.into_iter().map(|(m, d)| (m, self.field.mul(&d, &inv))).collect();
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&self, a: &OrderedTerms<F::El>, b: &OrderedTerms<F::El>) -> OrderedTerms<F::El> {
        let mut out = Vec::new();
        for (m, c) in a {
            for (n, d) in b {
                out.push((m.mul(n), self.field.mul(c, d)));
            }
        }
        self.combine(out)
    }

    fn unary(&mut self) -> Result<OrderedTerms<F::El>> {
        if self.eat('-') {
            let t = self.unary()?;
            return Ok(t.into_iter().map(|(m, c)| (m, self.field.neg(&c))).collect());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Token::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be a nonnegative integer".into()));
            };
            self.pos += 1;
            let mut acc = vec![(Monomial::one(), self.field.one())];
            for _ in 0..e {
                acc = self.product(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OrderedTerms<F::El>> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(self.combine(vec![(Monomial::one(), self.field.from_i64(n))]))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if name == "alpha" {
                    return Ok(self.combine(vec![(Monomial::one(), self.alpha.clone())]));
                }
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(vec![(Monomial::var(i), self.field.one())])
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse a polynomial expression over the named variables. Returns the
/// expanded terms in order of first appearance. The identifier `alpha`
/// stands for the supplied scalar.
pub fn parse_terms<F: Field>(field: &F, names: &[String], alpha: &F::El, text: &str) -> Result<Vec<(Monomial, F::El)>> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0, field, names, alpha };
    let terms = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(terms)
}

pub fn parse_poly<F: Field>(field: &F, names: &[String], alpha: &F::El, text: &str) -> Result<Poly<F>> {
    Ok(Poly::from_terms(field, parse_terms(field, names, alpha, text)?))
}

/// `P / I` with `I` given by a marked generating set.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<F: Field> {
    pub ring: PolyRing,
    pub relations: MarkedBasis<F>,
}

/// Name of the built-in presentation.
pub const PRESET_NAME: &str = "codim6-gorenstein";

/// The ring `R = k[T,U,V,X,Y,Z]/I` in the presentation text format.
pub const PRESET_TEXT: &str = "\
# fifteen quadrics; the first monomial of each relation is its initial term
vars: T U V X Y Z
order: grevlex Z>U>Y>X>T>V
rel: Z^2
rel: U*Z - T*X - alpha*U*V
rel: U^2
rel: Y*Z + V*Y
rel: U*Y
rel: Y^2 - T*X - (alpha-1)*U*V
rel: X*Z + alpha*V*X
rel: U*X
rel: X*Y
rel: X^2 - T*X - T*V
rel: T*Z + T*Y + alpha*V*X
rel: T*U
rel: T*Y - V*X + T*V
rel: T^2 + (alpha+1)*U*V - V*Y
rel: V^2
";

impl<F: Field> QuotientPresentation<F> {
    /// Parse the `vars:` / `order:` / `rel:` text format. The mark of each
    /// relation is the first monomial written in it.
    pub fn parse(field: &F, alpha: &F::El, text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut order: Option<Vec<String>> = None;
        let mut rels: Vec<&str> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once(':').ok_or_else(|| Error::Parse(format!("expected key: value, got {line:?}")))?;
            match key.trim() {
                "vars" => names = Some(value.split_whitespace().map(String::from).collect()),
                "order" => {
                    let value = value.trim();
                    let spec = value
                        .strip_prefix("grevlex")
                        .ok_or_else(|| Error::Parse(format!("unsupported order {value:?}")))?
                        .trim();
                    order = Some(if spec.is_empty() {
                        Vec::new()
                    } else {
                        spec.split('>').map(|s| s.trim().to_string()).collect()
                    });
                }
                "rel" => rels.push(value),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let names = names.ok_or_else(|| Error::Parse("missing vars: line".into()))?;
        let precedence = match order {
            Some(o) if !o.is_empty() => o
                .iter()
                .map(|n| {
                    names
                        .iter()
                        .position(|m| m == n)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {n:?} in order")))
                })
                .collect::<Result<Vec<_>>>()?,
            _ => (0..names.len()).collect(),
        };
        let ring = PolyRing::new(names, MonomialOrder::grevlex(precedence)?)?;
        let mut generators = Vec::new();
        for rel in rels {
            let terms = parse_terms(field, &ring.names, alpha, rel)?;
            let mark =
                terms.first().map(|(m, _)| *m).ok_or_else(|| Error::Parse(format!("relation {rel:?} is zero")))?;
            generators.push((Poly::from_terms(field, terms), mark));
        }
        let relations = MarkedBasis::new(generators);
        relations.check_marks(&ring.order)?;
        Ok(QuotientPresentation { ring, relations })
    }

    /// The built-in codimension-six presentation.
    pub fn preset(field: &F, alpha: &F::El) -> Result<Self> {
        Self::parse(field, alpha, PRESET_TEXT)
    }

    pub fn normal_form(&self, field: &F, f: &Poly<F>) -> Poly<F> {
        normal_form(field, f, &self.relations, &self.ring.order)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
