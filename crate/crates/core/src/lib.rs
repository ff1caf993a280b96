//! B_h-sequences in unit groups of polynomial quotient rings over finite
//! fields, and the lower bounds on binary code sizes `A(n, d, w)` and
//! `A(n, d)` that they certify.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: prime powers, `GF(p^m)` and polynomials over it.
//! * [`bose_chowla`]: quotient rings `F_q[X]/P(X)`, their unit groups (and
//!   quotients by the scalars), the generalized Bose–Chowla sequences, the
//!   map `phi` from binary words into the group and an exhaustive B_h check.
//! * [`mu`]: unit counts `mu(P)`, the minimal unit count `mu(q, n, h)` in
//!   closed form and by exhaustive search, optimal moduli, and upper bounds
//!   on `c(n, h)`.
//! * [`bounds`]: exact big-integer bound pipeline for `A(n, d)` together
//!   with correctly rounded `log2` output.
//! * [`code`]: explicit construction and verification of small codes.
//! * [`table`]: table generation and comparison against the bundled table of
//!   published improvements.

pub mod algebra;
pub mod bose_chowla;
pub mod bounds;
mod budget;
pub mod code;
mod error;
pub mod mu;
pub mod table;

pub use budget::Budget;
pub use error::{Error, Result};
