//! Cyclic codes over `Z/p^a` and truncated p-adic integers.
//!
//! Every computation over the p-adic integers runs at an explicit working
//! precision; a "p-adic" result is the residue mod `p^prec`.

pub mod catalog;
pub mod census;
pub mod code;
pub mod error;
pub mod galois_ring;
pub mod gfp;
pub mod hensel;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod verify;
pub mod zq;

pub use error::{Error, Result};
pub use poly::Poly;
pub use quad::QuadInt;
pub use zq::{Zq, ZqInt};
