//! The chain-level transfer `φ_k: Γ(a_1, ..., a_k) → Λ` and the algebraic
//! transfer it induces on coinvariants of primitives.

use std::collections::HashMap;

use crate::dual::{coinvariants, sq_dual, DividedMonomial, DualElement};
use crate::error::{Error, Result};
use crate::gf2::{rank, BitMatrix, BitVec};
use crate::lambda::{differential, homology, homology_class, normalize, LambdaElement, LambdaMonomial};
use crate::poly::Monomial;

/// `φ_k(a^{(I,t)}) = Σ_{t <= i <= t + |I|} φ_{k-1}(Sq^{i-t}_* a^I) λ_i`,
/// with `φ_1(a^{(t)}) = λ_t`. Result in normal form.
pub fn phi(k: usize, q: &DualElement) -> Result<LambdaElement> {
    if q.k() != k {
        return Err(Error::VariableMismatch { left: q.k(), right: k });
    }
    if !q.is_zero() && q.degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let mut memo = HashMap::new();
    let mut out = LambdaElement::zero();
    for t in q.terms() {
        out.add_assign(&phi_monomial(t, &mut memo)?);
    }
    Ok(out)
}

fn phi_monomial(
    e: &DividedMonomial,
    memo: &mut HashMap<DividedMonomial, LambdaElement>,
) -> Result<LambdaElement> {
    if let Some(v) = memo.get(e) {
        return Ok(v.clone());
    }
    let powers: Vec<u32> = e.powers().iter().map(|&p| p as u32).collect();
    let k = powers.len();
    let t = powers[k - 1];
    let value = if k == 1 {
        LambdaElement::monomial(&[t])?
    } else {
        let head = DividedMonomial::new(&powers[..k - 1])?;
        let head_degree = head.degree();
        let head = DualElement::from_monomial(head);
        let mut raw = LambdaElement::zero();
        for r in 0..=head_degree {
            let lowered = if r == 0 { head.clone() } else { sq_dual(r, &head)? };
            let mut part = LambdaElement::zero();
            for m in lowered.terms() {
                part.add_assign(&phi_monomial(m, memo)?);
            }
            raw.add_assign(&part.concat(&LambdaElement::monomial(&[t + r])?));
        }
        normalize(&raw)
    };
    memo.insert(*e, value.clone());
    Ok(value)
}

/// `a^{(i_1)} ... a^{(i_k)} ↦ a^{(2i_1+1)} ... a^{(2i_k+1)}`, adjoint to
/// Kameko's `x_1 ... x_k y^2 ↦ y` on monomials.
pub fn doubling(q: &DualElement) -> Result<DualElement> {
    let mut out = DualElement::zero(q.k());
    for t in q.terms() {
        let powers: Vec<u32> = t.powers().iter().map(|&p| 2 * p as u32 + 1).collect();
        out.toggle(DividedMonomial::dual_of(Monomial::new(&powers)?));
    }
    Ok(out)
}

/// Image of a primitive under the transfer.
#[derive(Clone, Debug)]
pub struct TransferClass {
    pub cycle: LambdaElement,
    pub s: usize,
    pub w: u32,
    /// Coordinates over the homology basis of `(s, w)`.
    pub coordinates: BitVec,
    /// Registry names whose class equals this one.
    pub names: Vec<String>,
}

pub fn transfer_class(k: usize, q: &DualElement) -> Result<TransferClass> {
    if q.k() != k {
        return Err(Error::VariableMismatch { left: q.k(), right: k });
    }
    if !q.is_primitive()? {
        return Err(Error::NotPrimitive(format!(
            "{q} is not annihilated by the positive squares"
        )));
    }
    let w = q.degree().unwrap_or(0);
    let cycle = phi(k, q)?;
    if !differential(&cycle).is_zero() {
        return Err(Error::NotCycle { s: k, w });
    }
    let coordinates = homology_class(&cycle, k, w)?;
    let names = if coordinates.is_zero() {
        Vec::new()
    } else {
        homology(k, w)?
            .identified
            .into_iter()
            .filter(|(_, c)| *c == coordinates)
            .map(|(n, _)| n)
            .collect()
    };
    Ok(TransferClass {
        cycle,
        s: k,
        w,
        coordinates,
        names,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Iso,
    MonoNotEpi,
    EpiNotMono,
    Neither,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Iso => "iso",
            Verdict::MonoNotEpi => "mono-not-epi",
            Verdict::EpiNotMono => "epi-not-mono",
            Verdict::Neither => "neither",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub k: usize,
    pub d: u32,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    /// `codomain_dim × domain_dim`; column `j` is the class of the `j`-th
    /// coinvariant representative.
    pub matrix: BitMatrix,
    pub rank: usize,
    pub verdict: Verdict,
    pub domain: Vec<DualElement>,
    pub images: Vec<TransferClass>,
}

/// The transfer from coinvariants in degree `d` to `H^{k,d}` of the lambda
/// algebra, evaluated on the chosen coinvariant representatives.
pub fn transfer_matrix(k: usize, d: u32) -> Result<TransferMatrix> {
    let domain = coinvariants(k, d)?.representatives()?;
    transfer_matrix_on(k, d, domain)
}

/// As [`transfer_matrix`] on caller-chosen representatives.
pub fn transfer_matrix_on(k: usize, d: u32, domain: Vec<DualElement>) -> Result<TransferMatrix> {
    let codomain_dim = homology(k, d)?.homology_dim;
    let images = domain
        .iter()
        .map(|q| transfer_class(k, q))
        .collect::<Result<Vec<_>>>()?;
    let columns: Vec<BitVec> = images.iter().map(|c| c.coordinates.clone()).collect();
    let matrix = BitMatrix::from_columns(codomain_dim, &columns);
    let r = rank(&matrix);
    let mono = r == domain.len();
    let epi = r == codomain_dim;
    let verdict = match (mono, epi) {
        (true, true) => Verdict::Iso,
        (true, false) => Verdict::MonoNotEpi,
        (false, true) => Verdict::EpiNotMono,
        (false, false) => Verdict::Neither,
    };
    Ok(TransferMatrix {
        k,
        d,
        domain_dim: domain.len(),
        codomain_dim,
        matrix,
        rank: r,
        verdict,
        domain,
        images,
    })
}

/// `λ_{i_1} ... λ_{i_s}` with no normalization, handy for fixtures.
pub fn lambda_word(indices: &[u32]) -> Result<LambdaElement> {
    Ok(LambdaElement::from_monomial(LambdaMonomial::new(indices)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str, k: usize) -> DualElement {
        DualElement::parse(s, k).unwrap()
    }

    fn l(s: &str) -> LambdaElement {
        LambdaElement::parse(s).unwrap()
    }

    #[test]
    fn base_case() {
        assert_eq!(phi(1, &q("a1(3)", 1)).unwrap(), l("L3"));
    }

    #[test]
    fn three_variable_terms() {
        assert_eq!(phi(3, &q("a1(1) a2(1) a3(6)", 3)).unwrap(), normalize(&l("L1 L1 L6")));
        assert_eq!(
            phi(3, &q("a1(2) a2(3) a3(3)", 3)).unwrap(),
            normalize(&l("L2 L3 L3 + L1 L4 L3 + L1 L3 L4"))
        );
        let c0 = q("a1(2) a2(3) a3(3) + a1(1) a2(4) a3(3) + a1(1) a2(2) a3(5) + a1(1) a2(1) a3(6)", 3);
        assert_eq!(phi(3, &c0).unwrap(), l("L2 L3 L3"));
    }

    #[test]
    fn rejects_non_primitive() {
        assert!(matches!(
            transfer_class(2, &q("a1(2) a2(1)", 2)),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn doubling_example() {
        assert_eq!(doubling(&q("a1(1) a3(2)", 3)).unwrap(), q("a1(3) a2(1) a3(5)", 3));
    }

    #[test]
    fn low_degree_verdicts() {
        let t = transfer_matrix(2, 2).unwrap();
        assert_eq!((t.domain_dim, t.codomain_dim, t.verdict), (1, 1, Verdict::Iso));
        let t = transfer_matrix(1, 7).unwrap();
        assert_eq!(t.images[0].names, vec!["h3".to_string()]);
    }
}
