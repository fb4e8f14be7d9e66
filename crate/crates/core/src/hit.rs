//! The hit problem, one degree at a time.
//!
//! `(A^+ P_k)_d` is spanned by `Sq^{2^j}(m)` over monomials `m` of degree
//! `d - 2^j`, since every `Sq^i` is a sum of composites of the `Sq^{2^j}`.
//! The quotient `(QP_k)_d` is represented by the monomials that are not
//! pivots of the reduced echelon form of that span.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cache;
use crate::error::{Error, Result};
use crate::gf2::{echelonize_sparse, BitMatrix, BitVec, EchelonForm};
use crate::limits::{check_degree, check_vars};
use crate::poly::{enumerate_monomials, monomial_count, monomial_index, Monomial, Polynomial};

/// Column order used for the echelon form of a degree.
///
/// `Canonical` is the order of [`enumerate_monomials`]; `Reversed` runs it
/// backwards and exists to check that dimensions do not depend on the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Canonical,
    Reversed,
}

impl MonomialOrder {
    pub fn tag(self) -> u32 {
        match self {
            MonomialOrder::Canonical => 1,
            MonomialOrder::Reversed => 2,
        }
    }

    fn column(self, canonical_index: usize, count: usize) -> usize {
        match self {
            MonomialOrder::Canonical => canonical_index,
            MonomialOrder::Reversed => count - 1 - canonical_index,
        }
    }
}

/// Solved hit problem in one degree.
#[derive(Debug)]
pub struct DegreeBasis {
    k: usize,
    d: u32,
    order: MonomialOrder,
    hit_space: EchelonForm,
    representatives: Vec<Monomial>,
    rep_cols: Vec<usize>,
}

impl DegreeBasis {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn hit_space(&self) -> &EchelonForm {
        &self.hit_space
    }

    /// Monomials whose classes form a basis of `(QP_k)_d`, in column order.
    pub fn representatives(&self) -> &[Monomial] {
        &self.representatives
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Number of monomials of this degree.
    pub fn ambient_dim(&self) -> usize {
        self.hit_space.cols()
    }

    pub fn column_of(&self, m: &Monomial) -> usize {
        self.order.column(monomial_index(m), self.ambient_dim())
    }

    /// `f` as a vector over the monomials of degree `d`, in column order.
    pub fn vector_of(&self, f: &Polynomial) -> Result<BitVec> {
        self.check_input(f)?;
        Ok(BitVec::from_ones(
            self.ambient_dim(),
            f.terms().map(|m| self.column_of(m)),
        ))
    }

    fn check_input(&self, f: &Polynomial) -> Result<()> {
        if f.k() != self.k {
            return Err(Error::VariableMismatch {
                left: f.k(),
                right: self.k,
            });
        }
        if f.is_zero() {
            return Ok(());
        }
        match f.degree() {
            Some(d) if d == self.d => Ok(()),
            Some(d) => Err(Error::DegreeMismatch {
                expected: self.d,
                found: d,
            }),
            None => Err(Error::NotHomogeneous),
        }
    }

    /// Coordinates of `[f]` over the representatives. Zero iff `f` is hit.
    pub fn reduce(&self, f: &Polynomial) -> Result<BitVec> {
        let v = self.vector_of(f)?;
        Ok(self.hit_space.residue(&v).select(&self.rep_cols))
    }

    /// The polynomial `Σ c_i r_i` for coordinates `c` over the representatives.
    pub fn polynomial_of(&self, coords: &BitVec) -> Polynomial {
        assert_eq!(coords.len(), self.dim(), "coordinate vector has wrong length");
        Polynomial::from_monomials(self.k, coords.iter_ones().map(|i| self.representatives[i]))
    }
}

/// The echelon form of `(A^+ P_k)_d` in canonical column order.
pub fn hit_space(k: usize, d: u32) -> Result<EchelonForm> {
    Ok(qp_basis(k, d)?.hit_space.clone())
}

/// Generators `Sq^{2^j}(m)` of the hit space, as column lists.
fn hit_generators(k: usize, d: u32, order: MonomialOrder) -> Result<Vec<Vec<u32>>> {
    let count = monomial_count(k, d);
    let mut rows = Vec::new();
    let mut j = 0;
    while (1u32 << j) <= d {
        let s = 1u32 << j;
        for m in enumerate_monomials(k, d - s)? {
            let row: Vec<u32> = m
                .sq(s)
                .iter()
                .map(|t| order.column(monomial_index(t), count) as u32)
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
        j += 1;
    }
    Ok(rows)
}

/// Solves one degree from scratch, bypassing the memo (the disk cache is
/// still consulted).
pub fn build_basis(k: usize, d: u32, order: MonomialOrder) -> Result<DegreeBasis> {
    check_vars(k)?;
    check_degree(d)?;
    let count = monomial_count(k, d);
    let hit_space = match cache::load(k, d, order)? {
        Some(e) => e,
        None => {
            let e = echelonize_sparse(count, hit_generators(k, d, order)?);
            cache::store(k, d, order, &e)?;
            e
        }
    };
    let mut by_column = vec![Monomial::one(k); count];
    for (i, m) in enumerate_monomials(k, d)?.into_iter().enumerate() {
        by_column[order.column(i, count)] = m;
    }
    let rep_cols = hit_space.free_cols();
    let representatives = rep_cols.iter().map(|&c| by_column[c]).collect();
    Ok(DegreeBasis {
        k,
        d,
        order,
        hit_space,
        representatives,
        rep_cols,
    })
}

type Key = (usize, u32, MonomialOrder);
type Slot = Arc<OnceLock<Arc<DegreeBasis>>>;

fn memo() -> &'static Mutex<HashMap<Key, Slot>> {
    static MEMO: OnceLock<Mutex<HashMap<Key, Slot>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Basis of `(QP_k)_d` in canonical order, memoized per process.
pub fn qp_basis(k: usize, d: u32) -> Result<Arc<DegreeBasis>> {
    qp_basis_with_order(k, d, MonomialOrder::Canonical)
}

pub fn qp_basis_with_order(k: usize, d: u32, order: MonomialOrder) -> Result<Arc<DegreeBasis>> {
    check_vars(k)?;
    check_degree(d)?;
    let slot = memo()
        .lock()
        .expect("memo lock poisoned")
        .entry((k, d, order))
        .or_default()
        .clone();
    // Builders of the same key serialize on the slot; distinct keys proceed
    // in parallel.
    if let Some(b) = slot.get() {
        return Ok(b.clone());
    }
    static BUILD_LOCKS: OnceLock<Mutex<HashMap<Key, Arc<Mutex<()>>>>> = OnceLock::new();
    let lock = BUILD_LOCKS
        .get_or_init(Default::default)
        .lock()
        .expect("build lock poisoned")
        .entry((k, d, order))
        .or_default()
        .clone();
    let _guard = lock.lock().expect("build lock poisoned");
    if let Some(b) = slot.get() {
        return Ok(b.clone());
    }
    let built = Arc::new(build_basis(k, d, order)?);
    let _ = slot.set(built.clone());
    Ok(built)
}

/// Drops every memoized degree basis.
pub fn clear_memo() {
    memo().lock().expect("memo lock poisoned").clear();
}

/// Coordinates of `[f]` in `(QP_k)_d`.
pub fn reduce(f: &Polynomial, b: &DegreeBasis) -> Result<BitVec> {
    b.reduce(f)
}

/// Whether a homogeneous polynomial lies in `A^+ P_k`.
pub fn is_hit(f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.degree().ok_or(Error::NotHomogeneous)?;
    Ok(qp_basis(f.k(), d)?.reduce(f)?.is_zero())
}

/// Kameko's map on polynomials: `x_1 ... x_k y^2 ↦ y`, other monomials ↦ 0.
pub fn kameko_psi(f: &Polynomial) -> Result<Polynomial> {
    let k = f.k();
    if f.is_zero() {
        return Ok(Polynomial::zero(k));
    }
    let d = f.degree().ok_or(Error::NotHomogeneous)?;
    if (d as usize) < k || !(d as usize - k).is_multiple_of(2) {
        return Err(Error::KamekoParity { degree: d, k });
    }
    let mut out = Polynomial::zero(k);
    for m in f.terms() {
        if m.exponents().iter().all(|&e| e % 2 == 1) {
            let half: Vec<u32> = m.exponents().iter().map(|&e| (e as u32 - 1) / 2).collect();
            out.toggle(Monomial::new(&half)?);
        }
    }
    Ok(out)
}

/// Kameko's homomorphism `(QP_k)_{2m+k} → (QP_k)_m` in representative
/// coordinates.
#[derive(Debug)]
pub struct KamekoMap {
    pub source: Arc<DegreeBasis>,
    pub target: Arc<DegreeBasis>,
    /// `target.dim() × source.dim()`; column `j` is the image of the `j`-th
    /// source representative.
    pub matrix: BitMatrix,
}

impl KamekoMap {
    pub fn rank(&self) -> usize {
        crate::gf2::rank(&self.matrix)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.rank() == self.matrix.cols()
    }

    /// Kernel basis in source coordinates.
    pub fn kernel(&self) -> Vec<BitVec> {
        crate::gf2::kernel_basis(&self.matrix)
    }
}

pub fn kameko_matrix(k: usize, m: u32) -> Result<KamekoMap> {
    let source = qp_basis(k, 2 * m + k as u32)?;
    let target = qp_basis(k, m)?;
    let mut columns = Vec::with_capacity(source.dim());
    for r in source.representatives() {
        let image = kameko_psi(&Polynomial::from_monomial(*r))?;
        columns.push(target.reduce(&image)?);
    }
    let matrix = BitMatrix::from_columns(target.dim(), &columns);
    Ok(KamekoMap {
        source,
        target,
        matrix,
    })
}

/// Basis (in coordinates of `qp_basis(k, d)`) of the kernel of Kameko's
/// homomorphism out of degree `d`. When `d` is not of the form `2m + k`
/// with `m >= 0` the map has zero target and the kernel is everything.
pub fn kameko_kernel(k: usize, d: u32) -> Result<Vec<BitVec>> {
    if (d as usize) >= k && (d as usize - k).is_multiple_of(2) {
        Ok(kameko_matrix(k, (d - k as u32) / 2)?.kernel())
    } else {
        let dim = qp_basis(k, d)?.dim();
        Ok((0..dim).map(|i| BitVec::unit(dim, i)).collect())
    }
}
