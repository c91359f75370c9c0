//! Exact verification of the intersection E-polynomial mirror identities for
//! the rank-2 `SL_2` / `PGL_2` character varieties.
//!
//! Module map:
//! - [`poly`]: sparse Laurent polynomials in `u, v, q` over exact rationals.
//! - [`hodge`]: bigraded cohomology models of the fixed loci, built from tori,
//!   abelian varieties, Tate twists and inversion quotients.
//! - [`catalog`]: the closed-form polynomials, parametrised by genus.
//! - [`gamma`]: the 2-torsion group, its Weil pairing, and stringy sums.
//! - [`verify`]: identity checks producing [`verify::VerificationReport`]s.
//! - [`cli`]: the command-line front end.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod genus;
pub mod hodge;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use genus::{Genus, Side};
pub use poly::{Exponent, LaurentPoly};
