//! Exact arithmetic for Drinfeld `F_q[t]`-modules over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`ff`]: finite fields and embeddings;
//! - [`poly`]: dense polynomials, factorization, the operator ring `A = F_q[t]`;
//! - [`skew`]: additive polynomials under composition;
//! - [`drinfeld`]: modules, torsion, twists, invariants;
//! - [`moore`]: Moore determinants and the `t`-torsion pairing;
//! - [`modring`]: product-formula and level-structure checks over specializations;
//! - [`groups`]: matrix groups over `A/nA`;
//! - [`galois`]: Frobenius sampling and image certification;
//! - [`suites`]: seeded verification grids.

pub mod drinfeld;
pub mod error;
pub mod ff;
mod fpoly;
pub mod galois;
pub mod groups;
pub mod linalg;
pub mod modring;
pub mod moore;
pub mod parse;
pub mod poly;
pub mod skew;
pub mod suites;

pub use drinfeld::{DrinfeldModule, ModuleRecord, TorsionModule};
pub use error::{Error, ErrorClass, Result};
pub use ff::{construct_field, embed, FieldDesc, FieldElem};
pub use galois::{certify, certify_rank1, CertificationReport, FrobeniusSample};
pub use groups::{GroupClosure, ResidueMatrix, ResidueRing};
pub use poly::{DensePoly, OperatorPoly};
pub use skew::AdditivePoly;
