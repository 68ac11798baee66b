//! Jet schemes, Frobenius residues and F-pure threshold approximants over F_p.
//!
//! Polynomials are sparse with packed byte exponents ([`PolyMod`],
//! [`Monomial`]) over a [`VarTable`] that names the jet variables
//! `x_i^(j)`. The modules build on each other:
//!
//! - [`jet`]: the jet equations `F^(j)` of a system and the shift identities;
//! - [`frobenius`]: `F^{q-1} mod m^[q]` through the Frobenius recursion,
//!   Fedder's criterion, good-monomial certificates and test-element probes;
//! - [`fpt`]: `r_q` at monomial centers and the jet-level comparison;
//! - [`certificates`]: the L/M monomials for general forms, multinomial
//!   valuations, exponent matrices and an exact simplex;
//! - [`geometry`]: fibre dimensions and irreducibility verdicts;
//! - [`general`]: the seeded general-type generator.
//!
//! ```
//! use jetfrob::{frobenius, jet, poly::text};
//!
//! let f = text::parse("x1^3 + x2^3 + x3^3", 7, None).unwrap();
//! let sys = jet::jet_equations(&[f], 0).unwrap();
//! assert!(frobenius::is_f_pure(&sys).unwrap().f_pure);
//! ```

pub mod certificates;
pub mod error;
pub mod field;
pub mod fpt;
pub mod frobenius;
pub mod general;
pub mod geometry;
pub mod jet;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{Monomial, PolyMod, VarTable};
