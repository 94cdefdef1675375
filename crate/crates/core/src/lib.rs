//! Exact computation of canonical bases of the modified quantum group of type A2.

pub mod canonical;
pub mod engine;
pub mod error;
pub mod exactalg;
pub mod qcomb;
pub mod repmod;
pub mod tensorspace;
pub mod udot;

pub use error::{Error, Result};
pub use exactalg::{ExactMatrix, Int, LaurentPoly, RatFunc};
pub use repmod::{Gen, MonomialLabel, Shape, Weight};
