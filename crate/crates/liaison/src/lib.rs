//! Graded free resolutions of zero-dimensional linked ideals over finite
//! prime fields, with exact verification of the multiplicity bounds
//! `∏ m_i / p! ≤ deg(I) ≤ ∏ M_i / p!` for ideals linked to collinear
//! subschemes and to three general points.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`] — polynomials over GF(p) with grevlex and elimination orders;
//! * [`groebner`] — reduced Gröbner bases, colon ideals, codimension;
//! * [`freemod`] — free modules, Schreyer orders, syzygies, lifting;
//! * [`resolution`] — free resolutions, minimalization, Betti diagrams,
//!   Hilbert numerators and degrees;
//! * [`linkage`] — Koszul shift calculus, mapping cones for linked ideals,
//!   collinear and three-point shift profiles, random realizations;
//! * [`bounds`] — degree-bound verdicts, proof-branch inequality reports,
//!   and the exhaustive sweep engine.
//!
//! Sweeps and oracle cross-checks are data-parallel; build with
//! `--no-default-features` for a fully sequential kernel.

pub mod bounds;
pub mod error;
pub mod freemod;
pub mod groebner;
pub mod linkage;
pub mod parallel;
pub mod resolution;
pub mod ring;
pub mod rng;

pub use error::{Error, Result};
pub use groebner::{buchberger, is_regular_sequence, Ideal};
pub use resolution::{betti, free_resolution, hilbert_degree, minimalize, BettiDiagram, Resolution};
pub use ring::{FieldElem, Monomial, MonomialOrder, Polynomial, DEFAULT_PRIME};
