//! The mod 2 lambda algebra.
//!
//! Generators `λ_j` in bidegree `(1, j)`, relations for every `j, m >= 0`
//!
//! ```text
//! λ_j λ_{2j+1+m} = Σ_{ν>=0} binom(m-ν-1, ν) λ_{j+m-ν} λ_{2j+1+ν}
//! ```
//!
//! and differential `δ(λ_i) = Σ_{ν>=0} binom(i-ν-1, ν+1) λ_{i-ν-1} λ_ν`,
//! a derivation. `H^{s,w}` is `Ext_A^{s,s+w}(F_2, F_2)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, BitMatrix, BitVec, EchelonBuilder, EchelonForm};
use crate::limits::check_lambda;
use crate::poly::binom_mod2;

/// `λ_{i_1} ... λ_{i_s}`; the empty sequence is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LambdaMonomial(Vec<u16>);

impl LambdaMonomial {
    pub fn new(indices: &[u32]) -> Result<Self> {
        indices
            .iter()
            .map(|&i| {
                u16::try_from(i).map_err(|_| Error::InvalidArgument(format!("index {i} too large")))
            })
            .collect::<Result<Vec<u16>>>()
            .map(LambdaMonomial)
    }

    pub fn unit() -> Self {
        LambdaMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&i| i as u32).sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[1] <= 2 * w[0])
    }

    pub fn concat(&self, other: &LambdaMonomial) -> LambdaMonomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        LambdaMonomial(v)
    }

    fn reducible_pair(&self, strategy: Strategy) -> Option<usize> {
        let bad = |p: &usize| self.0[p + 1] > 2 * self.0[*p];
        let n = self.0.len().saturating_sub(1);
        match strategy {
            Strategy::Leftmost => (0..n).find(bad),
            Strategy::Rightmost => (0..n).rev().find(bad),
        }
    }
}

impl fmt::Display for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "L{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An F_2-sum of lambda monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaElement {
    terms: BTreeSet<LambdaMonomial>,
}

impl LambdaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(LambdaMonomial::unit())
    }

    pub fn from_monomial(m: LambdaMonomial) -> Self {
        let mut e = Self::zero();
        e.terms.insert(m);
        e
    }

    pub fn from_monomials<I: IntoIterator<Item = LambdaMonomial>>(terms: I) -> Self {
        let mut e = Self::zero();
        for t in terms {
            e.toggle(t);
        }
        e
    }

    /// `λ_{i_1} ... λ_{i_s}` as an element, not normalized.
    pub fn monomial(indices: &[u32]) -> Result<Self> {
        Ok(Self::from_monomial(LambdaMonomial::new(indices)?))
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

    pub fn terms(&self) -> impl Iterator<Item = &LambdaMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &LambdaMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn toggle(&mut self, m: LambdaMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &LambdaElement) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &LambdaElement) -> LambdaElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Product by concatenation, not normalized.
    pub fn concat(&self, other: &LambdaElement) -> LambdaElement {
        let mut out = LambdaElement::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.concat(b));
            }
        }
        out
    }

    /// Product in the algebra (normal form).
    pub fn multiply(&self, other: &LambdaElement) -> LambdaElement {
        normalize(&self.concat(other))
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.iter().all(LambdaMonomial::is_admissible)
    }

    /// Common `(length, weight)` of the terms; `None` for zero or mixed.
    pub fn bidegree(&self) -> Option<(usize, u32)> {
        let mut it = self.terms.iter().map(|t| (t.len(), t.weight()));
        let b = it.next()?;
        it.all(|c| c == b).then_some(b)
    }

    /// Parses `"L6 L2 L3 L3 + L4 L4 L3 L3"`; `"0"` is zero and `"1"` the unit.
    pub fn parse(text: &str) -> Result<LambdaElement> {
        let text = text.trim();
        let mut out = LambdaElement::zero();
        if text == "0" {
            return Ok(out);
        }
        for part in text.split(" + ") {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse("empty lambda monomial".into()));
            }
            if part == "1" {
                out.toggle(LambdaMonomial::unit());
                continue;
            }
            let mut idx = Vec::new();
            for factor in part.split(' ') {
                let i = factor
                    .strip_prefix('L')
                    .and_then(|n| n.parse::<u16>().ok())
                    .ok_or_else(|| Error::Parse(format!("expected L<index>, got {factor:?}")))?;
                idx.push(i);
            }
            out.toggle(LambdaMonomial(idx));
        }
        Ok(out)
    }
}

impl fmt::Display for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which reducible pair a rewrite step acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

type PairTable = RwLock<HashMap<(u16, u16), Arc<[(u16, u16)]>>>;

/// Right-hand side of the relation for `λ_j λ_{2j+1+m}`.
pub fn pair_rewrite(j: u16, m: u16) -> Arc<[(u16, u16)]> {
    static MEMO: OnceLock<PairTable> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(r) = memo.read().expect("pair memo poisoned").get(&(j, m)) {
        return r.clone();
    }
    let (j32, m32) = (j as i64, m as i64);
    let rhs: Arc<[(u16, u16)]> = (0..=m32)
        .filter(|&nu| binom_mod2(m32 - nu - 1, nu))
        .map(|nu| ((j32 + m32 - nu) as u16, (2 * j32 + 1 + nu) as u16))
        .collect();
    // racing writers insert the same value
    memo.write()
        .expect("pair memo poisoned")
        .entry((j, m))
        .or_insert(rhs)
        .clone()
}

/// Sort key comparing index sequences from the right. Every rewrite lowers
/// the right member of its pair and leaves later indices alone, so it
/// strictly decreases this key.
#[derive(PartialEq, Eq)]
struct FromRight(Vec<u16>);

impl Ord for FromRight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for FromRight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn toggle_key(set: &mut BTreeSet<FromRight>, key: FromRight) {
    if let Some(k) = set.take(&key) {
        drop(k);
    } else {
        set.insert(key);
    }
}

/// Admissible normal form, rewriting the leftmost reducible pair first.
pub fn normalize(e: &LambdaElement) -> LambdaElement {
    normalize_with(e, Strategy::Leftmost)
}

/// Admissible normal form.
///
/// Works on the largest monomial (in the from-the-right order) first. Its
/// rewrites are all smaller, so once a monomial is taken off the worklist
/// it never comes back and admissible ones go straight to the output.
pub fn normalize_with(e: &LambdaElement, strategy: Strategy) -> LambdaElement {
    let mut work: BTreeSet<FromRight> = BTreeSet::new();
    for t in &e.terms {
        toggle_key(&mut work, FromRight(t.0.clone()));
    }
    let mut out = LambdaElement::zero();
    while let Some(FromRight(seq)) = work.pop_last() {
        let m = LambdaMonomial(seq);
        let Some(p) = m.reducible_pair(strategy) else {
            out.terms.insert(m);
            continue;
        };
        let j = m.0[p];
        let mm = m.0[p + 1] - 2 * j - 1;
        for &(a, b) in pair_rewrite(j, mm).iter() {
            let mut seq = m.0.clone();
            seq[p] = a;
            seq[p + 1] = b;
            toggle_key(&mut work, FromRight(seq));
        }
    }
    out
}

/// `δ(λ_i)` as a list of index pairs.
fn generator_boundary(i: u16) -> Vec<(u16, u16)> {
    let i64_ = i as i64;
    (0..)
        .take_while(|&nu| 2 * nu + 2 <= i64_)
        .filter(|&nu| binom_mod2(i64_ - nu - 1, nu + 1))
        .map(|nu| ((i64_ - nu - 1) as u16, nu as u16))
        .collect()
}

/// Boundary of an element, extended to products as a derivation (no signs
/// in characteristic 2), then normalized. The generator formula is read with
/// the first index `i - ν - 1`, the only reading that lands in weight `i - 1`.
pub fn differential(e: &LambdaElement) -> LambdaElement {
    let mut raw = LambdaElement::zero();
    for t in &e.terms {
        for (p, &i) in t.0.iter().enumerate() {
            for (a, b) in generator_boundary(i) {
                let mut seq = Vec::with_capacity(t.0.len() + 1);
                seq.extend_from_slice(&t.0[..p]);
                seq.push(a);
                seq.push(b);
                seq.extend_from_slice(&t.0[p + 1..]);
                raw.toggle(LambdaMonomial(seq));
            }
        }
    }
    normalize(&raw)
}

/// `λ_j ↦ λ_{2j+1}` termwise, then normalized.
pub fn sq0_tilde(e: &LambdaElement) -> LambdaElement {
    normalize(&LambdaElement::from_monomials(
        e.terms
            .iter()
            .map(|t| LambdaMonomial(t.0.iter().map(|&j| 2 * j + 1).collect())),
    ))
}

/// Admissible monomials of length `s` and weight `w`, lexicographic order.
pub fn admissible_basis(s: usize, w: u32) -> Result<Vec<LambdaMonomial>> {
    check_lambda(s, w)?;
    Ok(admissible_unchecked(s, w))
}

fn admissible_unchecked(s: usize, w: u32) -> Vec<LambdaMonomial> {
    fn rec(left: usize, weight: u32, prev: u32, cur: &mut Vec<u16>, out: &mut Vec<LambdaMonomial>) {
        if left == 0 {
            if weight == 0 {
                out.push(LambdaMonomial(cur.clone()));
            }
            return;
        }
        let hi = weight.min(2 * prev);
        for i in 0..=hi {
            // the rest can carry at most i(2 + 4 + ... + 2^{left-1})
            let room = (i as u64) * ((1u64 << left) - 2);
            if (weight - i) as u64 > room {
                continue;
            }
            cur.push(i as u16);
            rec(left - 1, weight - i, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s == 0 {
        if w == 0 {
            out.push(LambdaMonomial::unit());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(s);
    for i in 0..=w {
        let room = (i as u64) * ((1u64 << s) - 2);
        if ((w - i) as u64) > room {
            continue;
        }
        cur.push(i as u16);
        rec(s - 1, w - i, i, &mut cur, &mut out);
        cur.pop();
    }
    out
}

/// Admissible basis with a lookup table.
struct Basis {
    monomials: Vec<LambdaMonomial>,
    index: HashMap<LambdaMonomial, usize>,
}

impl Basis {
    fn new(s: usize, w: i64) -> Basis {
        let monomials = if w < 0 {
            Vec::new()
        } else {
            admissible_unchecked(s, w as u32)
        };
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Basis { monomials, index }
    }

    fn vector(&self, e: &LambdaElement) -> Option<BitVec> {
        let mut v = BitVec::zeros(self.monomials.len());
        for t in &e.terms {
            v.flip(*self.index.get(t)?);
        }
        Some(v)
    }

    fn element(&self, v: &BitVec) -> LambdaElement {
        LambdaElement::from_monomials(v.iter_ones().map(|i| self.monomials[i].clone()))
    }
}

/// The chain complex around one bidegree.
struct Bidegree {
    s: usize,
    w: u32,
    basis: Basis,
    cycles: Vec<BitVec>,
    boundaries: EchelonForm,
    homology: EchelonForm,
}

impl Bidegree {
    fn compute(s: usize, w: u32) -> Bidegree {
        let basis = Basis::new(s, w as i64);
        let n = basis.monomials.len();
        let next = Basis::new(s + 1, w as i64 - 1);
        let columns: Vec<BitVec> = basis
            .monomials
            .iter()
            .map(|m| {
                next.vector(&differential(&LambdaElement::from_monomial(m.clone())))
                    .expect("boundary lies in the next bidegree")
            })
            .collect();
        let cycles = kernel_basis(&BitMatrix::from_columns(next.monomials.len(), &columns));
        let mut boundaries = EchelonBuilder::new(n);
        if s >= 1 {
            for m in Basis::new(s - 1, w as i64 + 1).monomials {
                let b = differential(&LambdaElement::from_monomial(m));
                boundaries.insert(&basis.vector(&b).expect("boundary lies in this bidegree"));
            }
        }
        let boundaries = boundaries.finish();
        let mut homology = EchelonBuilder::new(n);
        for z in &cycles {
            homology.insert(&boundaries.residue(z));
        }
        Bidegree {
            s,
            w,
            basis,
            cycles,
            boundaries,
            homology: homology.finish(),
        }
    }

    fn vector_of(&self, e: &LambdaElement) -> Result<BitVec> {
        let e = normalize(e);
        if let Some((s, w)) = e.bidegree() {
            if (s, w) != (self.s, self.w) {
                return Err(Error::InvalidArgument(format!(
                    "element lies in bidegree ({s}, {w}), expected ({}, {})",
                    self.s, self.w
                )));
            }
        }
        self.basis.vector(&e).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "element is not homogeneous of bidegree ({}, {})",
                self.s, self.w
            ))
        })
    }

    fn check_cycle(&self, e: &LambdaElement) -> Result<BitVec> {
        let v = self.vector_of(e)?;
        if !differential(e).is_zero() {
            return Err(Error::NotCycle { s: self.s, w: self.w });
        }
        Ok(v)
    }

    fn class(&self, v: &BitVec) -> BitVec {
        let (residue, coords) = self.homology.reduce_vector(&self.boundaries.residue(v));
        debug_assert!(residue.is_zero(), "cycle outside the computed cycle space");
        coords
    }
}

fn bidegree(s: usize, w: u32) -> Result<Arc<Bidegree>> {
    type Memo = Mutex<HashMap<(usize, u32), Arc<OnceLock<Arc<Bidegree>>>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let slot = MEMO
        .get_or_init(Default::default)
        .lock()
        .expect("homology memo poisoned")
        .entry((s, w))
        .or_default()
        .clone();
    Ok(slot.get_or_init(|| Arc::new(Bidegree::compute(s, w))).clone())
}

/// `H^{s,w}` of the lambda algebra.
#[derive(Clone, Debug)]
pub struct HomologySummary {
    pub s: usize,
    pub w: u32,
    /// Number of admissible monomials in this bidegree.
    pub chain_dim: usize,
    pub cycle_basis: Vec<LambdaElement>,
    pub boundary_rank: usize,
    pub homology_dim: usize,
    /// Canonical cycles whose classes form a basis of the homology.
    pub basis: Vec<LambdaElement>,
    /// Registry name of each basis class, when one matches exactly.
    pub names: Vec<Option<String>>,
    /// Every named nonzero class in this bidegree with its coordinates.
    pub identified: Vec<(String, BitVec)>,
}

pub fn homology(s: usize, w: u32) -> Result<HomologySummary> {
    if s == 0 {
        return Err(Error::InvalidArgument("homology needs s >= 1".into()));
    }
    check_lambda(s, w)?;
    let b = bidegree(s, w)?;
    let dim = b.homology.rank();
    let mut identified = Vec::new();
    for (name, e) in candidates(s, w) {
        let v = b.vector_of(&e)?;
        let coords = b.class(&v);
        if !coords.is_zero() {
            identified.push((name, coords));
        }
    }
    let names = (0..dim)
        .map(|i| {
            let unit = BitVec::unit(dim, i);
            identified
                .iter()
                .find(|(_, c)| *c == unit)
                .map(|(n, _)| n.clone())
        })
        .collect();
    Ok(HomologySummary {
        s,
        w,
        chain_dim: b.basis.monomials.len(),
        cycle_basis: b.cycles.iter().map(|z| b.basis.element(z)).collect(),
        boundary_rank: b.boundaries.rank(),
        homology_dim: dim,
        basis: b.homology.rows().iter().map(|r| b.basis.element(r)).collect(),
        names,
        identified,
    })
}

/// Coordinates of the class of a cycle over [`HomologySummary::basis`].
pub fn homology_class(e: &LambdaElement, s: usize, w: u32) -> Result<BitVec> {
    check_lambda(s, w)?;
    let b = bidegree(s, w)?;
    let v = b.check_cycle(e)?;
    Ok(b.class(&v))
}

/// Whether two cycles of bidegree `(s, w)` differ by a boundary.
pub fn class_equal(e1: &LambdaElement, e2: &LambdaElement, s: usize, w: u32) -> Result<bool> {
    check_lambda(s, w)?;
    let b = bidegree(s, w)?;
    let mut v = b.check_cycle(e1)?;
    v.xor_assign(&b.check_cycle(e2)?);
    Ok(b.boundaries.contains(&v))
}

/// A named Ext class; `representative` is `None` for classes known only by
/// name and bidegree.
#[derive(Clone, Debug)]
pub struct NamedClass {
    pub name: String,
    pub s: usize,
    pub w: u32,
    pub representative: Option<LambdaElement>,
}

/// `λ_2 λ_3 λ_3`, the cycle of `c_0`.
pub fn c0_cycle() -> LambdaElement {
    LambdaElement::parse("L2 L3 L3").expect("fixed text")
}

/// `λ_6λ_2λ_3² + λ_4²λ_3² + λ_2λ_4λ_5λ_3 + λ_1λ_5λ_1λ_7`, the cycle of `d_0`.
pub fn d0_cycle() -> LambdaElement {
    LambdaElement::parse("L6 L2 L3 L3 + L4 L4 L3 L3 + L2 L4 L5 L3 + L1 L5 L1 L7")
        .expect("fixed text")
}

fn iterate_sq0(e: &LambdaElement, times: usize) -> LambdaElement {
    (0..times).fold(e.clone(), |acc, _| sq0_tilde(&acc))
}

/// `h_i = [λ_{2^i - 1}]`.
pub fn h(i: u32) -> LambdaElement {
    LambdaElement::from_monomial(LambdaMonomial(vec![((1u32 << i) - 1) as u16]))
}

/// Product `h_{i_1} ... h_{i_n}` in normal form.
pub fn h_product(indices: &[u32]) -> LambdaElement {
    normalize(
        &indices
            .iter()
            .fold(LambdaElement::one(), |acc, &i| acc.concat(&h(i))),
    )
}

/// Name like `h0^3 h3` for a sorted list of `h` indices.
pub fn h_product_name(indices: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut n = 0;
    while n < indices.len() {
        let i = indices[n];
        let run = indices[n..].iter().take_while(|&&x| x == i).count();
        parts.push(if run > 1 {
            format!("h{i}^{run}")
        } else {
            format!("h{i}")
        });
        n += run;
    }
    parts.join(" ")
}

pub fn named_registry() -> Vec<NamedClass> {
    let mut out = Vec::new();
    for i in 0..=6u32 {
        out.push(NamedClass {
            name: format!("h{i}"),
            s: 1,
            w: (1 << i) - 1,
            representative: Some(h(i)),
        });
    }
    // Sq^0 sends (s, w) to (s, 2w + s)
    let max_w = 70;
    let families: [(&str, usize, u32, Option<LambdaElement>); 8] = [
        ("c", 3, 8, Some(c0_cycle())),
        ("d", 4, 14, Some(d0_cycle())),
        ("e", 4, 17, None),
        ("f", 4, 18, None),
        ("g", 4, 20, None),
        ("p", 4, 33, None),
        ("D3", 4, 61, None),
        ("p'", 4, 56, None),
    ];
    for (stem, s, w0, rep) in families {
        // g starts at g_1
        let first = if stem == "g" { 1 } else { 0 };
        let mut w = w0;
        let mut i = 0;
        while w <= max_w {
            let name = match stem {
                "D3" => format!("D3({})", first + i),
                _ => format!("{stem}{}", first + i),
            };
            out.push(NamedClass {
                name,
                s,
                w,
                representative: rep.as_ref().map(|r| iterate_sq0(r, i)),
            });
            w = 2 * w + s as u32;
            i += 1;
        }
    }
    out
}

/// Sorted `h` index lists of length `s` and total weight `w`.
fn h_monomials(s: usize, w: u32) -> Vec<Vec<u32>> {
    fn rec(left: usize, w: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if w == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut i = min;
        while (1u32 << i) - 1 <= w && i <= 6 {
            cur.push(i);
            rec(left - 1, w - ((1 << i) - 1), i, cur, out);
            cur.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    rec(s, w, 0, &mut Vec::new(), &mut out);
    out
}

/// Named cycles of bidegree `(s, w)`: registry entries, products of `h`s,
/// and `h_j` times a registry entry.
fn candidates(s: usize, w: u32) -> Vec<(String, LambdaElement)> {
    let registry: Vec<NamedClass> = named_registry()
        .into_iter()
        .filter(|c| c.representative.is_some() && c.s > 1)
        .collect();
    let mut out = Vec::new();
    for c in &registry {
        if (c.s, c.w) == (s, w) {
            out.push((c.name.clone(), c.representative.clone().unwrap()));
        }
    }
    for idx in h_monomials(s, w) {
        out.push((h_product_name(&idx), h_product(&idx)));
    }
    for c in &registry {
        if c.s + 1 == s && c.w <= w {
            let rest = w - c.w;
            if (rest + 1).is_power_of_two() {
                let j = rest.trailing_ones();
                let e = h(j).multiply(c.representative.as_ref().unwrap());
                out.push((format!("h{j} {}", c.name), e));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LambdaElement {
        LambdaElement::parse(s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let e = l("L6 L2 L3 L3 + L1");
        assert_eq!(e.to_string(), "L1 + L6 L2 L3 L3");
        assert_eq!(l(&e.to_string()), e);
        assert_eq!(l("0").to_string(), "0");
        assert_eq!(l("1"), LambdaElement::one());
        assert!(LambdaElement::parse("L1 x2").is_err());
        assert!(LambdaElement::parse("L1 + ").is_err());
    }

    #[test]
    fn relation_examples() {
        assert!(normalize(&l("L1 L3")).is_zero());
        assert!(normalize(&l("L0 L1")).is_zero());
        assert_eq!(normalize(&l("L0 L2")), l("L1 L1"));
        assert_eq!(normalize(&l("L1 L4")), l("L2 L3"));
        assert_eq!(normalize(&l("L1 L6")), l("L4 L3 + L3 L4"));
        assert_eq!(normalize(&l("L2 L3 L3")), l("L2 L3 L3"));
        assert_eq!(normalize(&l("L1 L1 L6")), l("L2 L3 L3"));
    }

    #[test]
    fn generator_boundaries() {
        assert_eq!(differential(&l("L2")), l("L1 L0"));
        assert_eq!(differential(&l("L4")), l("L3 L0 + L2 L1"));
        for i in 0..=6 {
            assert!(differential(&h(i)).is_zero(), "h{i}");
        }
        assert!(differential(&d0_cycle()).is_zero());
        assert!(differential(&c0_cycle()).is_zero());
    }

    #[test]
    fn small_bases() {
        assert_eq!(admissible_basis(1, 5).unwrap(), vec![LambdaMonomial(vec![5])]);
        assert_eq!(
            admissible_basis(2, 2).unwrap(),
            vec![LambdaMonomial(vec![1, 1]), LambdaMonomial(vec![2, 0])]
        );
        assert_eq!(admissible_basis(0, 0).unwrap(), vec![LambdaMonomial::unit()]);
        assert!(admissible_basis(0, 3).unwrap().is_empty());
        assert!(admissible_basis(9, 3).is_err());
    }

    #[test]
    fn basis_matches_brute_force() {
        fn all(s: usize, w: u32) -> Vec<LambdaMonomial> {
            if s == 0 {
                return if w == 0 { vec![LambdaMonomial::unit()] } else { vec![] };
            }
            let mut out = Vec::new();
            for i in 0..=w {
                for rest in all(s - 1, w - i) {
                    let mut v = vec![i as u16];
                    v.extend_from_slice(&rest.0);
                    out.push(LambdaMonomial(v));
                }
            }
            out
        }
        for s in 0..=4 {
            for w in 0..=14 {
                let brute: Vec<_> = all(s, w).into_iter().filter(|m| m.is_admissible()).collect();
                assert_eq!(admissible_basis(s, w).unwrap(), brute, "s={s} w={w}");
            }
        }
    }

    #[test]
    fn sq0_examples() {
        assert_eq!(sq0_tilde(&l("L2 L3 L3")), l("L5 L7 L7"));
        assert_eq!(sq0_tilde(&l("L0")), l("L1"));
    }

    #[test]
    fn first_line() {
        for w in 0..=20 {
            let expected = usize::from((w + 1u32).is_power_of_two());
            assert_eq!(homology(1, w).unwrap().homology_dim, expected, "w={w}");
        }
        let hs = homology(1, 7).unwrap();
        assert_eq!(hs.names, vec![Some("h3".to_string())]);
    }

    #[test]
    fn c0_and_d0() {
        let c = homology(3, 8).unwrap();
        assert_eq!(c.homology_dim, 1);
        assert_eq!(c.names, vec![Some("c0".to_string())]);
        let d = homology(4, 14).unwrap();
        assert_eq!(d.homology_dim, 1);
        assert_eq!(d.names, vec![Some("d0".to_string())]);
    }

    #[test]
    fn class_equal_basics() {
        let z = c0_cycle();
        assert!(class_equal(&z, &z, 3, 8).unwrap());
        assert!(!class_equal(&z, &LambdaElement::zero(), 3, 8).unwrap());
        assert!(class_equal(&normalize(&l("L0 L1")), &LambdaElement::zero(), 2, 1).unwrap());
        assert!(matches!(
            class_equal(&l("L2"), &LambdaElement::zero(), 1, 2),
            Err(Error::NotCycle { .. })
        ));
    }

    #[test]
    fn product_names() {
        assert_eq!(h_product_name(&[0, 0, 0, 3]), "h0^3 h3");
        assert_eq!(h_product_name(&[1, 2]), "h1 h2");
    }
}
