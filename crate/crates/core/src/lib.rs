//! Minimal value set polynomials over F_{q^n}, the curves
//! y^(q^(n-1)) + ... + y^q + y = f(x) they define, and exact oracles that
//! certify their value sets, point counts, genera and Weierstrass semigroups.

pub(crate) mod bigser;
pub mod check;
pub mod curve;
pub mod error;
pub mod gf;
pub mod mvsp;
pub mod nsg;
pub mod report;
pub mod spoly;
pub mod wsg;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement, FieldSpec};
pub use spoly::{BiPoly, SparsePoly};
