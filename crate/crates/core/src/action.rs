//! The action of `GL_k` and of the symmetric group on `(QP_k)_d`, through
//! the generators `ρ_1, ..., ρ_k`.

use std::sync::Arc;

use crate::error::Result;
use crate::gf2::{intersect_subspaces, kernel_basis, BitMatrix, BitVec};
use crate::hit::DegreeBasis;
use crate::poly::{LinearSubstitution, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// `GL_k`, generated by all of `ρ_1, ..., ρ_k`.
    Gl,
    /// The symmetric group, generated by the transpositions `ρ_1, ..., ρ_{k-1}`.
    Sym,
}

impl Group {
    /// Indices `i` (1-based) of the generators `ρ_i` of this group.
    pub fn generators(self, k: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Group::Gl => 1..=k,
            Group::Sym => 1..=k - 1,
        }
    }
}

/// Matrices of `ρ_1, ..., ρ_k` on representative coordinates.
#[derive(Debug, Clone)]
pub struct InducedAction {
    pub basis: Arc<DegreeBasis>,
    /// `generator_matrices[i - 1]` is the matrix of `ρ_i`; column `j` is the
    /// class of `ρ_i` applied to representative `j`.
    pub generator_matrices: Vec<BitMatrix>,
}

pub fn induced_action(b: &Arc<DegreeBasis>) -> Result<InducedAction> {
    let k = b.k();
    let mut generator_matrices = Vec::with_capacity(k);
    for i in 1..=k {
        let rho = LinearSubstitution::rho(k, i);
        let mut columns = Vec::with_capacity(b.dim());
        for r in b.representatives() {
            let image = rho.apply(&Polynomial::from_monomial(*r))?;
            columns.push(b.reduce(&image)?);
        }
        generator_matrices.push(BitMatrix::from_columns(b.dim(), &columns));
    }
    Ok(InducedAction {
        basis: b.clone(),
        generator_matrices,
    })
}

impl InducedAction {
    pub fn matrix(&self, i: usize) -> &BitMatrix {
        &self.generator_matrices[i - 1]
    }

    /// Basis of the subspace fixed by every generator of `group`.
    pub fn invariants(&self, group: Group) -> Vec<BitVec> {
        let dim = self.basis.dim();
        let identity = BitMatrix::identity(dim);
        let kernels: Vec<Vec<BitVec>> = group
            .generators(self.basis.k())
            .map(|i| kernel_basis(&self.matrix(i).add(&identity)))
            .collect();
        if kernels.is_empty() {
            return (0..dim).map(|i| BitVec::unit(dim, i)).collect();
        }
        intersect_subspaces(&kernels)
    }
}

/// Basis (in representative coordinates) of the invariants of `group` in `b`.
pub fn invariants(b: &Arc<DegreeBasis>, group: Group) -> Result<Vec<BitVec>> {
    Ok(induced_action(b)?.invariants(group))
}
