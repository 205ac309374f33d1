//! Exact symbolic engine for eigenfunctions of the Sklyanin B-operator of
//! SL(2) and SL(3) spin magnets.
#![no_std]

extern crate alloc;

pub mod check;
pub mod error;
pub mod frac;
pub mod gcd;
pub mod intertwiners;
pub mod lattice;
pub mod lax;
pub mod number;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod separation;
pub mod sov;
pub mod symbols;
pub mod twisted;
pub mod weyl;

pub use error::{Error, Result};
pub use number::{Number, Rational};
pub use parse::{parse_scalar, sc};
pub use scalar::{Bindings, Scalar};
pub use symbols::{Base, Param, ParamKind, Slot, Var};
pub use frac::{Form, Frac, VarPoly};
pub use weyl::{Limits, Localization, OpMatrix, WeylElement};
pub use check::{Check, Outcome};
pub use lax::{Algebra, ParamMatrix, SiteParams};
pub use twisted::{Mobius, TwistedFunction};
