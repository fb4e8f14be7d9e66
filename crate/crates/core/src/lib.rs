//! Steenrod squares on polynomial algebras over F_2, the hit problem in
//! few variables, the lambda algebra and the algebraic transfer.

pub mod action;
pub mod cache;
pub mod dual;
pub mod error;
pub mod gf2;
pub mod hit;
pub mod lambda;
pub mod limits;
pub mod poly;
pub mod transfer;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec, EchelonForm};
pub use hit::{qp_basis, DegreeBasis};
pub use limits::{limits, set_limits, Limits};
pub use poly::{LinearSubstitution, Monomial, Polynomial};
