//! Correction-capability-optimized Reed-Muller codes.
//!
//! The crate builds the four families of check-monomial sets used to design
//! Reed-Muller-like evaluation codes for a prescribed error weight `t`:
//!
//! * standard codes, the prefix of the graded-lex order up to the last
//!   monomial whose divisor count is below `2t+1`;
//! * Feng-Rao improved codes, every monomial whose divisor count is below
//!   `2t+1`;
//! * generic standard codes, the prefix up to the last monomial that is not a
//!   product `z_j z_k` with `j, k >= t`;
//! * improved generic codes, every monomial that is not such a product.
//!
//! [`check_sets`] builds these sets by enumeration, [`closed_form`] evaluates
//! the explicit redundancy formulas, and [`evaluation_codes`] materializes the
//! resulting codes as parity-check matrices over a finite field from
//! [`gf_arithmetic`].

pub mod binomial;
pub mod check_sets;
pub mod closed_form;
pub mod evaluation_codes;
pub mod gf_arithmetic;
pub mod monomial_order;
pub mod report;

mod error;

pub use error::{Error, Result};
