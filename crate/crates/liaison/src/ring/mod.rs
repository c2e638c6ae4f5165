//! Exact arithmetic for homogeneous multivariate polynomials over GF(p)
//! with pluggable monomial orders.
//!
//! Values are immutable after construction and all operations are pure, so
//! everything here is safe to share across threads.

pub mod field;
pub mod monomial;
pub mod poly;

pub use field::{check_prime, is_prime, FieldElem};
pub use monomial::{
    lex_cmp, monomial_cmp, monomials_of_degree, Monomial, MonomialOrder, OrderKind,
};
pub use poly::{normal_form, Polynomial};

/// Default coefficient prime: large enough to avoid coincidental
/// degenerations in random realizations while keeping arithmetic in u64.
pub const DEFAULT_PRIME: u64 = 32003;
