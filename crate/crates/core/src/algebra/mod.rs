//! Exact arithmetic over `GF(p^m)` and polynomials over it.

mod field;
mod poly;
mod prime;

pub use field::{FieldElement, GaloisField, MAX_FIELD_ORDER};
pub use poly::{count_irreducibles, find_irreducible, Irreducibles, Polynomial};
pub use prime::{is_prime, is_prime_power, smallest_prime_power_geq, PrimePower};
