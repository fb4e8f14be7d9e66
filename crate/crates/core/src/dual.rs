//! The divided power algebra `Γ(a_1, ..., a_k)`, dual to `P_k`, with the
//! right action of the Steenrod squares, primitives and coinvariants.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{echelonize_sparse, kernel_from_echelon, BitVec, EchelonBuilder, EchelonForm};
use crate::limits::{check_degree, check_vars, MAX_VARS};
use crate::poly::{
    enumerate_monomials, monomial_count, monomial_index, LinearSubstitution, Monomial, Polynomial,
};

/// `a_1^{(i_1)} ... a_k^{(i_k)}`, the dual of `x_1^{i_1} ... x_k^{i_k}`.
///
/// Shares the canonical order of [`Monomial`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DividedMonomial(Monomial);

impl DividedMonomial {
    pub fn new(powers: &[u32]) -> Result<Self> {
        Ok(DividedMonomial(Monomial::new(powers)?))
    }

    pub fn dual_of(m: Monomial) -> Self {
        DividedMonomial(m)
    }

    /// The monomial this element is dual to.
    pub fn monomial(&self) -> Monomial {
        self.0
    }

    pub fn k(&self) -> usize {
        self.0.k()
    }

    pub fn powers(&self) -> &[u16] {
        self.0.exponents()
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }
}

impl fmt::Display for DividedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.powers().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "a{}({e})", i + 1)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DividedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An F_2-sum of divided monomials in `k` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualElement {
    k: usize,
    terms: BTreeSet<DividedMonomial>,
}

impl DualElement {
    pub fn zero(k: usize) -> Self {
        DualElement {
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_monomial(m: DividedMonomial) -> Self {
        let mut e = Self::zero(m.k());
        e.terms.insert(m);
        e
    }

    pub fn from_monomials<I: IntoIterator<Item = DividedMonomial>>(k: usize, terms: I) -> Self {
        let mut e = Self::zero(k);
        for t in terms {
            e.toggle(t);
        }
        e
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &DividedMonomial> {
        self.terms.iter()
    }

    pub fn toggle(&mut self, m: DividedMonomial) {
        assert_eq!(m.k(), self.k, "variable count mismatch");
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &DualElement) {
        assert_eq!(self.k, other.k, "variable count mismatch");
        for t in &other.terms {
            self.toggle(*t);
        }
    }

    pub fn add(&self, other: &DualElement) -> Result<DualElement> {
        same_k(self.k, other.k)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    /// Common degree of the terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|t| t.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Ok(None);
        }
        self.degree().map(Some).ok_or(Error::NotHomogeneous)
    }

    /// Coordinates over the divided monomials of degree `d`, canonical order.
    pub fn to_vector(&self, d: u32) -> Result<BitVec> {
        if let Some(e) = self.homogeneous_degree()? {
            if e != d {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    found: e,
                });
            }
        }
        Ok(BitVec::from_ones(
            monomial_count(self.k, d),
            self.terms.iter().map(|t| monomial_index(&t.0)),
        ))
    }

    pub fn from_vector(k: usize, d: u32, v: &BitVec) -> Result<DualElement> {
        let basis = enumerate_monomials(k, d)?;
        assert_eq!(v.len(), basis.len(), "vector length must match degree");
        Ok(DualElement::from_monomials(
            k,
            v.iter_ones().map(|i| DividedMonomial(basis[i])),
        ))
    }

    /// Whether every `Sq^{2^j}` (hence every positive square) kills this
    /// element.
    pub fn is_primitive(&self) -> Result<bool> {
        let Some(d) = self.homogeneous_degree()? else {
            return Ok(true);
        };
        let mut s = 1;
        while s <= d {
            if !sq_dual(s, self)?.is_zero() {
                return Ok(false);
            }
            s <<= 1;
        }
        Ok(true)
    }

    /// Parses `"a1(1) a2(2) + a1(3)"`; `"0"` and `"1"` as for polynomials.
    pub fn parse(text: &str, k: usize) -> Result<DualElement> {
        check_vars(k)?;
        let text = text.trim();
        let mut out = DualElement::zero(k);
        if text == "0" {
            return Ok(out);
        }
        for part in text.split(" + ") {
            out.toggle(parse_divided_monomial(part, k)?);
        }
        Ok(out)
    }
}

fn parse_divided_monomial(text: &str, k: usize) -> Result<DividedMonomial> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty divided monomial".into()));
    }
    let mut powers = [0u16; MAX_VARS];
    let mut seen = [false; MAX_VARS];
    if text == "1" {
        return Ok(DividedMonomial(Monomial::from_raw(k, powers)));
    }
    for factor in text.split(' ') {
        let bad = || Error::Parse(format!("expected a<index>(<power>), got {factor:?}"));
        let body = factor.strip_prefix('a').ok_or_else(bad)?;
        let (idx, rest) = body.split_once('(').ok_or_else(bad)?;
        let power = rest.strip_suffix(')').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        let power: u16 = power.parse().map_err(|_| bad())?;
        if idx == 0 || idx > k {
            return Err(Error::Parse(format!("generator a{idx} outside 1..={k}")));
        }
        // a^{(i)} a^{(j)} = binom(i+j, i) a^{(i+j)}; keep the text unambiguous
        if std::mem::replace(&mut seen[idx - 1], true) {
            return Err(Error::Parse(format!("generator a{idx} repeated in {text:?}")));
        }
        powers[idx - 1] = power;
    }
    Ok(DividedMonomial(Monomial::from_raw(k, powers)))
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn same_k(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::VariableMismatch { left: a, right: b });
    }
    Ok(())
}

/// The dual-basis pairing `<q, f>`.
pub fn pairing(q: &DualElement, f: &Polynomial) -> Result<bool> {
    same_k(q.k(), f.k())?;
    if let (Some(a), Some(b)) = (q.homogeneous_degree()?, f.degree()) {
        if a != b {
            return Err(Error::DegreeMismatch {
                expected: a,
                found: b,
            });
        }
    } else if !f.is_zero() && !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(q.terms().filter(|t| f.contains(&t.0)).count() % 2 == 1)
}

/// Calls `visit` with every `F = E - R`, `R` a composition of `r` bounded by `E`.
fn for_each_lower(e: &Monomial, r: u32, visit: &mut dyn FnMut(Monomial)) {
    fn rec(e: &Monomial, var: usize, left: u32, cur: &mut [u16; MAX_VARS], visit: &mut dyn FnMut(Monomial)) {
        let k = e.k();
        let ei = e.exponent(var);
        if var + 1 == k {
            if left <= ei {
                cur[var] = (ei - left) as u16;
                visit(Monomial::from_raw(k, *cur));
            }
            return;
        }
        for ri in 0..=left.min(ei) {
            cur[var] = (ei - ri) as u16;
            rec(e, var + 1, left - ri, cur, visit);
        }
    }
    let mut cur = [0u16; MAX_VARS];
    rec(e, 0, r, &mut cur, visit);
}

/// `Sq^r_*` on one divided monomial: the terms `a^F` with `x^E` in `Sq^r(x^F)`.
fn sq_dual_monomial(r: u32, e: &DividedMonomial, out: &mut dyn FnMut(DividedMonomial)) {
    let target = e.0;
    for_each_lower(&target, r, &mut |f| {
        if f.sq(r).contains(&target) {
            out(DividedMonomial(f));
        }
    });
}

/// The right action `Sq^r_*`, adjoint to `Sq^r` on polynomials:
/// `<sq_dual(r, q), f> = <q, Sq^r f>`.
pub fn sq_dual(r: u32, q: &DualElement) -> Result<DualElement> {
    if let Some(d) = q.homogeneous_degree()? {
        if r > d {
            return Err(Error::InvalidArgument(format!(
                "Sq^{r} lowers degree below zero on degree {d}"
            )));
        }
    }
    let mut out = DualElement::zero(q.k());
    for t in q.terms() {
        sq_dual_monomial(r, t, &mut |f| out.toggle(f));
    }
    Ok(out)
}

/// Coordinate vectors (over degree-`d` divided monomials) of a basis of the
/// primitives: one vector per representative of `(QP_k)_d`.
pub fn primitive_vectors(k: usize, d: u32) -> Result<Vec<BitVec>> {
    check_vars(k)?;
    check_degree(d)?;
    let domain = enumerate_monomials(k, d)?;
    let mut offsets = Vec::new();
    let mut total = 0usize;
    let mut s = 1u32;
    while s <= d {
        offsets.push((s, total));
        total += monomial_count(k, d - s);
        s <<= 1;
    }
    // Row (s, F) of the stacked operator lists the E with a^F in Sq^s_*(a^E).
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); total];
    for (c, e) in domain.iter().enumerate() {
        for &(s, offset) in &offsets {
            sq_dual_monomial(s, &DividedMonomial(*e), &mut |f| {
                rows[offset + monomial_index(&f.0)].push(c as u32);
            });
        }
    }
    let echelon = echelonize_sparse(domain.len(), rows);
    Ok(kernel_from_echelon(&echelon))
}

/// Basis of the primitives `P((P_k)^*)_d`.
pub fn primitives(k: usize, d: u32) -> Result<Vec<DualElement>> {
    primitive_vectors(k, d)?
        .iter()
        .map(|v| DualElement::from_vector(k, d, v))
        .collect()
}

/// The transpose of `f ↦ s(f)` on degree `d`: entry `E` lists the indices
/// of `F` with `x^E` in `s(x^F)`.
pub fn substitution_transpose(s: &LinearSubstitution, d: u32) -> Result<Vec<Vec<u32>>> {
    let k = s.k();
    let count = monomial_count(k, d);
    let mut table = vec![Vec::new(); count];
    for (fi, f) in enumerate_monomials(k, d)?.iter().enumerate() {
        for e in s.apply_monomial(f).terms() {
            table[monomial_index(e)].push(fi as u32);
        }
    }
    Ok(table)
}

fn apply_transpose(table: &[Vec<u32>], v: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(v.len());
    for e in v.iter_ones() {
        for &f in &table[e] {
            out.flip(f as usize);
        }
    }
    out
}

/// The adjoint of substitution: `<dual_substitution(s, q), f> = <q, s(f)>`.
pub fn dual_substitution(s: &LinearSubstitution, q: &DualElement) -> Result<DualElement> {
    same_k(s.k(), q.k())?;
    let Some(d) = q.homogeneous_degree()? else {
        return Ok(DualElement::zero(q.k()));
    };
    let table = substitution_transpose(s, d)?;
    DualElement::from_vector(q.k(), d, &apply_transpose(&table, &q.to_vector(d)?))
}

/// `F_2 ⊗_{GL_k} P((P_k)^*)_d`.
#[derive(Debug, Clone)]
pub struct Coinvariants {
    pub k: usize,
    pub d: u32,
    /// Basis of the primitives, as coordinate vectors.
    pub primitives: Vec<BitVec>,
    /// Span of `(ρ_i^* + 1) q` over generators and primitives.
    relations: EchelonForm,
    /// Echelonized residues of the primitives modulo `relations`; its rows
    /// are the chosen representatives.
    quotient: EchelonForm,
}

impl Coinvariants {
    pub fn dim(&self) -> usize {
        self.quotient.rank()
    }

    pub fn representative_vectors(&self) -> Vec<BitVec> {
        self.quotient.rows()
    }

    pub fn representatives(&self) -> Result<Vec<DualElement>> {
        self.representative_vectors()
            .iter()
            .map(|v| DualElement::from_vector(self.k, self.d, v))
            .collect()
    }

    /// Coordinates of the class of a primitive over the representatives.
    pub fn class_of_vector(&self, v: &BitVec) -> Result<BitVec> {
        let (residue, coords) = self.quotient.reduce_vector(&self.relations.residue(v));
        if !residue.is_zero() {
            return Err(Error::NotPrimitive(
                "element is not in the span of the primitives".into(),
            ));
        }
        Ok(coords)
    }

    pub fn class_of(&self, q: &DualElement) -> Result<BitVec> {
        same_k(self.k, q.k())?;
        self.class_of_vector(&q.to_vector(self.d)?)
    }
}

pub fn coinvariants(k: usize, d: u32) -> Result<Coinvariants> {
    let primitives = primitive_vectors(k, d)?;
    let len = monomial_count(k, d);
    let mut relations = EchelonBuilder::new(len);
    for i in 1..=k {
        let table = substitution_transpose(&LinearSubstitution::rho(k, i), d)?;
        for p in &primitives {
            let mut w = apply_transpose(&table, p);
            w.xor_assign(p);
            relations.insert(&w);
        }
    }
    let relations = relations.finish();
    let mut quotient = EchelonBuilder::new(len);
    for p in &primitives {
        quotient.insert(&relations.residue(p));
    }
    Ok(Coinvariants {
        k,
        d,
        primitives,
        relations,
        quotient: quotient.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str, k: usize) -> DualElement {
        DualElement::parse(s, k).unwrap()
    }

    fn p(s: &str, k: usize) -> Polynomial {
        Polynomial::parse(s, k).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let e = q("a1(1) a2(2) + a1(3)", 2);
        assert_eq!(e.to_string(), "a1(3) + a1(1) a2(2)");
        assert_eq!(q(&e.to_string(), 2), e);
        assert_eq!(q("0", 3).to_string(), "0");
        assert!(DualElement::parse("a1(1) a1(2)", 2).is_err());
        assert!(DualElement::parse("a3(1)", 2).is_err());
        assert!(DualElement::parse("a1[1]", 2).is_err());
    }

    #[test]
    fn pairing_is_the_dual_basis() {
        assert!(pairing(&q("a1(1) a2(2)", 2), &p("x1 x2^2", 2)).unwrap());
        assert!(!pairing(&q("a1(1) a2(2)", 2), &p("x1^2 x2", 2)).unwrap());
        assert!(pairing(&q("a1(1) a2(2)", 2), &p("x1", 2)).is_err());
    }

    #[test]
    fn one_variable_squares() {
        assert_eq!(sq_dual(1, &q("a1(2)", 1)).unwrap(), q("a1(1)", 1));
        assert!(sq_dual(1, &q("a1(3)", 1)).unwrap().is_zero());
        assert_eq!(sq_dual(2, &q("a1(5)", 1)).unwrap(), q("a1(3)", 1));
    }

    #[test]
    fn primitives_in_one_variable() {
        assert_eq!(primitives(1, 7).unwrap(), vec![q("a1(7)", 1)]);
        assert!(primitives(1, 2).unwrap().is_empty());
    }

    #[test]
    fn transposition_swaps_generators() {
        let s = LinearSubstitution::rho(2, 1);
        assert_eq!(dual_substitution(&s, &q("a1(1) a2(2)", 2)).unwrap(), q("a1(2) a2(1)", 2));
        let id = LinearSubstitution::identity(3);
        let e = q("a1(1) a2(2) a3(4) + a3(7)", 3);
        assert_eq!(dual_substitution(&id, &e).unwrap(), e);
    }

    #[test]
    fn two_variable_coinvariants() {
        // degree 2^{s+t} + 2^s - 2 with s = 0, t = 2
        let c = coinvariants(2, 3).unwrap();
        assert_eq!(c.dim(), 1);
        let rep = q("a2(3)", 2);
        assert!(rep.is_primitive().unwrap());
        assert_eq!(c.class_of(&rep).unwrap().count_ones(), 1);
        assert_eq!(coinvariants(2, 1).unwrap().dim(), 0);
    }

    #[test]
    fn class_of_rejects_non_primitive() {
        let c = coinvariants(2, 3).unwrap();
        assert!(c.class_of(&q("a1(3)", 2)).is_ok());
        assert!(matches!(
            c.class_of(&q("a1(2) a2(1)", 2)),
            Err(Error::NotPrimitive(_))
        ));
    }
}
