//! Exact-arithmetic verification of the weight-2 Eisenstein congruences
//! attached to an irregular pair `(p, k)`.
//!
//! The crate builds the Eisenstein series `G_{2,ε}`, `s_{2,ε}`, `G_{1,ε}`,
//! `G_k` and `G_2` as truncated q-expansions over `Z_p`, removes the constant
//! term of `G_{2,ε}` with a unit-constant form, and checks that the resulting
//! semi-cusp form is congruent to `G_k` and is a Hecke eigenvector modulo `p`.
//! Along the way it provides exact Bernoulli numbers, Dirichlet L-values at
//! `0` and `-1`, and relative class numbers of `Q(μ_p)`.

pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod eisenstein;
pub mod error;
pub mod hecke;
pub mod pipeline;
pub mod qseries;

pub use error::{Error, Result};
