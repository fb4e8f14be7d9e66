//! The polynomial algebra `P_k = F_2[x_1, ..., x_k]` with its Steenrod
//! squares and linear substitutions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::{check_degree, check_vars, MAX_VARS};

/// `binom(a, b) mod 2`, zero unless `0 <= b <= a`.
///
/// Lucas: `binom(a, b)` is odd iff the bits of `b` are a subset of those of `a`.
#[inline]
pub fn binom_mod2(a: i64, b: i64) -> bool {
    if b < 0 || a < 0 || b > a {
        return false;
    }
    (b & (a - b)) == 0
}

/// Smallest `r` such that `n` is a sum of `r` numbers of the form `2^u - 1`
/// with `u > 0`.
///
/// `n = Σ (2^{u_i} - 1)` over `r` terms iff `(n + r) / 2` is a sum of exactly
/// `r` powers of two, i.e. `n + r` is even and `popcount((n + r) / 2) <= r <= n`.
pub fn mu(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidArgument("mu is defined for n >= 1".into()));
    }
    for r in 1..=n {
        let total = n + r;
        if total.is_multiple_of(2) && (total / 2).count_ones() as u64 <= r {
            return Ok(r as u32);
        }
    }
    unreachable!("r = n always works (n copies of 2^1 - 1)")
}

/// A monomial `x_1^{e_1} ... x_k^{e_k}`.
///
/// Ordering is the canonical monomial order: exponent vectors compared
/// lexicographically, larger first. So `x_1^2 < x_1 x_2 < x_2^2` as sort keys.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    k: u8,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Result<Self> {
        check_vars(exps.len())?;
        let mut e = [0u16; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(x)
                .map_err(|_| Error::InvalidArgument(format!("exponent {x} too large")))?;
        }
        Ok(Monomial {
            k: exps.len() as u8,
            exps: e,
        })
    }

    pub(crate) fn from_raw(k: usize, exps: [u16; MAX_VARS]) -> Self {
        Monomial { k: k as u8, exps }
    }

    /// The constant monomial 1 in `k` variables.
    pub fn one(k: usize) -> Self {
        Monomial {
            k: k as u8,
            exps: [0; MAX_VARS],
        }
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.k()]
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.exponents().iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.k, other.k, "variable count mismatch");
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial { k: self.k, exps }
    }

    /// `Sq^i` of this monomial, as a list of distinct monomials.
    ///
    /// Cartan convolution over the variables with
    /// `Sq^r(x^n) = binom(n, r) x^{n+r}`; distinct splittings of `i` give
    /// distinct monomials, so no cancellation occurs.
    pub fn sq(&self, i: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = *self;
        if i > self.degree() {
            return out;
        }
        sq_rec(self, 0, i, &mut cur, &mut out);
        out
    }
}

fn sq_rec(m: &Monomial, var: usize, remaining: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    let k = m.k();
    let e = m.exps[var] as u32;
    if var + 1 == k {
        if remaining <= e && remaining & !e == 0 {
            cur.exps[var] = (e + remaining) as u16;
            out.push(*cur);
            cur.exps[var] = e as u16;
        }
        return;
    }
    // Submasks of e that do not exceed `remaining`.
    let mut r = e;
    loop {
        if r <= remaining {
            cur.exps[var] = (e + r) as u16;
            sq_rec(m, var + 1, remaining - r, cur, out);
        }
        if r == 0 {
            break;
        }
        r = (r - 1) & e;
    }
    cur.exps[var] = e as u16;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| other.exponents().cmp(self.exponents()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Number of monomials of degree `d` in `k` variables, `C(d + k - 1, k - 1)`.
pub fn monomial_count(k: usize, d: u32) -> usize {
    binomial((d as usize) + k - 1, k - 1)
}

pub(crate) fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    acc as usize
}

/// All monomials of degree `d` in `k` variables, in canonical order.
pub fn enumerate_monomials(k: usize, d: u32) -> Result<Vec<Monomial>> {
    check_vars(k)?;
    check_degree(d)?;
    let mut out = Vec::with_capacity(monomial_count(k, d));
    let mut cur = [0u16; MAX_VARS];
    enum_rec(k, 0, d, &mut cur, &mut out);
    Ok(out)
}

fn enum_rec(k: usize, var: usize, remaining: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
    if var + 1 == k {
        cur[var] = remaining as u16;
        out.push(Monomial::from_raw(k, *cur));
        cur[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[var] = e as u16;
        enum_rec(k, var + 1, remaining - e, cur, out);
    }
    cur[var] = 0;
}

/// Position of `m` in [`enumerate_monomials`]`(k, deg m)`.
///
/// Counts the monomials that precede it: at each variable, those agreeing on
/// the prefix with a larger exponent here (a hockey-stick sum).
pub fn monomial_index(m: &Monomial) -> usize {
    let k = m.k();
    let mut remaining = m.degree() as usize;
    let mut idx = 0usize;
    for i in 0..k.saturating_sub(1) {
        let e = m.exps[i] as usize;
        let rest = k - i - 1;
        if remaining > e {
            idx += binomial(remaining - e - 1 + rest, rest);
        }
        remaining -= e;
    }
    idx
}

/// A homogeneous or inhomogeneous element of `P_k`: a set of monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    k: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial {
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::from_monomial(Monomial::one(k))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Self::zero(m.k());
        p.terms.insert(m);
        p
    }

    /// Sums the monomials mod 2 (pairs cancel).
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(k: usize, monomials: I) -> Self {
        let mut p = Self::zero(k);
        for m in monomials {
            p.toggle(m);
        }
        p
    }

    /// The variable `x_i` (1-based, as written).
    pub fn var(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= k, "variable index out of range");
        let mut exps = [0u16; MAX_VARS];
        exps[i - 1] = 1;
        Self::from_monomial(Monomial::from_raw(k, exps))
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

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn toggle(&mut self, m: Monomial) {
        assert_eq!(m.k(), self.k, "variable count mismatch");
        if !self.terms.insert(m) {
            self.terms.remove(&m);
        }
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(Monomial::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_k(self.k, other.k)?;
        let mut out = self.clone();
        for &m in &other.terms {
            out.toggle(m);
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        assert_eq!(self.k, other.k, "variable count mismatch");
        for &m in &other.terms {
            self.toggle(m);
        }
    }

    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        same_k(self.k, other.k)?;
        let mut out = Polynomial::zero(self.k);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        Ok(out)
    }

    /// `Sq^i`, applied term by term.
    pub fn sq(&self, i: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.k);
        for m in &self.terms {
            for t in m.sq(i) {
                out.toggle(t);
            }
        }
        out
    }

    pub fn substitute(&self, s: &LinearSubstitution) -> Result<Polynomial> {
        s.apply(self)
    }

    /// Parses the text form, e.g. `"x1^3 x2 + x4^6"`. `"0"` is the zero
    /// polynomial and `"1"` the unit.
    pub fn parse(text: &str, k: usize) -> Result<Polynomial> {
        check_vars(k)?;
        let text = text.trim();
        if text == "0" {
            return Ok(Polynomial::zero(k));
        }
        let mut p = Polynomial::zero(k);
        for part in text.split(" + ") {
            p.toggle(parse_monomial(part, k)?);
        }
        Ok(p)
    }
}

fn parse_monomial(text: &str, k: usize) -> Result<Monomial> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    let mut exps = [0u16; MAX_VARS];
    if text == "1" {
        return Ok(Monomial::from_raw(k, exps));
    }
    for term in text.split(' ') {
        let body = term
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("expected x<index>, got {term:?}")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in {term:?}")))?;
        let exp: u16 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
        if idx == 0 || idx > k {
            return Err(Error::Parse(format!("variable x{idx} outside 1..={k}")));
        }
        exps[idx - 1] += exp;
    }
    Ok(Monomial::from_raw(k, exps))
}

fn same_k(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::VariableMismatch { left: a, right: b });
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An algebra endomorphism of `P_k` fixed by the images of the variables,
/// each a linear form. Stored as a coefficient matrix: `images[i]` has bit
/// `j` set when `x_{j+1}` occurs in the image of `x_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearSubstitution {
    k: usize,
    images: Vec<u8>,
}

impl LinearSubstitution {
    pub fn identity(k: usize) -> Self {
        LinearSubstitution {
            k,
            images: (0..k).map(|i| 1u8 << i).collect(),
        }
    }

    /// From images given as degree-one polynomials.
    pub fn from_images(images: &[Polynomial]) -> Result<Self> {
        let k = images.len();
        check_vars(k)?;
        let mut rows = Vec::with_capacity(k);
        for img in images {
            same_k(k, img.k())?;
            if !img.is_zero() && img.degree() != Some(1) {
                return Err(Error::InvalidArgument(format!(
                    "substitution image {img} is not linear"
                )));
            }
            let mut mask = 0u8;
            for m in img.terms() {
                let j = m.exponents().iter().position(|&e| e == 1).expect("degree one");
                mask |= 1 << j;
            }
            rows.push(mask);
        }
        Ok(LinearSubstitution { k, images: rows })
    }

    /// From the coefficient bitmasks directly (`masks[i]` bit `j` ⇔ `x_{j+1}`
    /// occurs in the image of `x_{i+1}`).
    pub fn from_masks(k: usize, masks: &[u8]) -> Self {
        assert_eq!(masks.len(), k);
        LinearSubstitution {
            k,
            images: masks.to_vec(),
        }
    }

    /// The standard generator `ρ_i` of `GL_k` (1-based). For `i < k` it
    /// swaps `x_i` and `x_{i+1}`; `ρ_k` sends `x_1` to `x_1 + x_2`. With one
    /// variable `ρ_1` is the identity (`GL_1` is trivial).
    pub fn rho(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= k, "rho index out of range");
        let mut s = Self::identity(k);
        if i < k {
            s.images.swap(i - 1, i);
        } else if k >= 2 {
            s.images[0] = 0b11;
        }
        s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn masks(&self) -> &[u8] {
        &self.images
    }

    pub fn image(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.k);
        for j in 0..self.k {
            if self.images[i] >> j & 1 == 1 {
                p.add_assign(&Polynomial::var(self.k, j + 1));
            }
        }
        p
    }

    /// True when the coefficient matrix is invertible over F_2.
    pub fn is_invertible(&self) -> bool {
        let mut rows = self.images.clone();
        let mut rank = 0;
        for col in 0..self.k {
            if let Some(p) = (rank..self.k).find(|&r| rows[r] >> col & 1 == 1) {
                rows.swap(rank, p);
                for r in 0..self.k {
                    if r != rank && rows[r] >> col & 1 == 1 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank == self.k
    }

    /// Image of a single monomial. Powers of a linear form are built from
    /// its Frobenius powers `L^{2^b} = Σ c_j x_j^{2^b}`.
    pub fn apply_monomial(&self, m: &Monomial) -> Polynomial {
        assert_eq!(m.k(), self.k, "variable count mismatch");
        let mut acc = Polynomial::one(self.k);
        for i in 0..self.k {
            let mut e = m.exponent(i);
            let mut b = 0u32;
            while e != 0 {
                if e & 1 == 1 {
                    let mut frob = Polynomial::zero(self.k);
                    for j in 0..self.k {
                        if self.images[i] >> j & 1 == 1 {
                            let mut exps = [0u16; MAX_VARS];
                            exps[j] = 1 << b;
                            frob.toggle(Monomial::from_raw(self.k, exps));
                        }
                    }
                    acc = acc.multiply(&frob).expect("same k");
                }
                e >>= 1;
                b += 1;
            }
        }
        acc
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        same_k(self.k, f.k())?;
        let mut out = Polynomial::zero(self.k);
        for m in f.terms() {
            out.add_assign(&self.apply_monomial(m));
        }
        Ok(out)
    }

    /// Composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearSubstitution) -> LinearSubstitution {
        assert_eq!(self.k, other.k);
        // x_i ↦ other(x_i) = Σ_j c_ij x_j ↦ Σ_j c_ij self(x_j)
        let images = other
            .images
            .iter()
            .map(|&row| {
                (0..self.k)
                    .filter(|&j| row >> j & 1 == 1)
                    .fold(0u8, |acc, j| acc ^ self.images[j])
            })
            .collect();
        LinearSubstitution { k: self.k, images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, k: usize) -> Polynomial {
        Polynomial::parse(s, k).unwrap()
    }

    #[test]
    fn frobenius_kills_cross_terms() {
        let a = p("x1 + x2", 2);
        assert_eq!(a.multiply(&a).unwrap(), p("x1^2 + x2^2", 2));
        assert_eq!(p("x1", 1).multiply(&p("x1", 1)).unwrap(), p("x1^2", 1));
    }

    #[test]
    fn multiply_rejects_mismatched_k() {
        assert!(matches!(
            p("x1", 1).multiply(&p("x1", 2)),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn sq_examples() {
        assert_eq!(p("x1", 1).sq(1), p("x1^2", 1));
        assert_eq!(p("x1 x2", 2).sq(1), p("x1^2 x2 + x1 x2^2", 2));
        assert_eq!(p("x1^3", 1).sq(2), p("x1^5", 1));
        assert!(p("x1^3", 1).sq(4).is_zero());
        let f = p("x1^2 x2 + x3^3", 3);
        assert_eq!(f.sq(0), f);
        assert_eq!(f.sq(3), f.multiply(&f).unwrap());
    }

    #[test]
    fn substitution_examples() {
        let swap = LinearSubstitution::rho(2, 1);
        assert_eq!(p("x1 x2^2", 2).substitute(&swap).unwrap(), p("x1^2 x2", 2));
        let t = LinearSubstitution::rho(2, 2);
        assert_eq!(p("x1", 2).substitute(&t).unwrap(), p("x1 + x2", 2));
        assert!(t.is_invertible());
        assert_eq!(t.compose(&t), LinearSubstitution::identity(2));
        assert_eq!(LinearSubstitution::rho(1, 1), LinearSubstitution::identity(1));
    }

    #[test]
    fn mu_small_values() {
        assert_eq!(mu(1).unwrap(), 1);
        assert_eq!(mu(5).unwrap(), 3);
        assert_eq!(mu(6).unwrap(), 2);
        assert!(mu(0).is_err());
    }

    #[test]
    fn enumeration_order_and_count() {
        let m = enumerate_monomials(1, 5).unwrap();
        assert_eq!(m, vec![Monomial::new(&[5]).unwrap()]);
        let m = enumerate_monomials(2, 2).unwrap();
        let shown: Vec<String> = m.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1 x2", "x2^2"]);
        assert_eq!(enumerate_monomials(4, 10).unwrap().len(), 286);
        assert!(matches!(
            enumerate_monomials(2, 71),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn index_matches_enumeration() {
        for k in 1..=4 {
            for d in 0..9 {
                for (i, m) in enumerate_monomials(k, d).unwrap().iter().enumerate() {
                    assert_eq!(monomial_index(m), i, "{m}");
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = p("x1^3 x2 + x4^6", 4);
        assert_eq!(f.to_string(), "x1^3 x2 + x4^6");
        assert_eq!(p(&f.to_string(), 4), f);
        assert_eq!(p("0", 3).to_string(), "0");
        assert!(Polynomial::parse("y1", 2).is_err());
        assert!(Polynomial::parse("x3", 2).is_err());
    }
}
