//! Exact rationals, absolute-precision p-adic integers, Teichmüller lifts and
//! cyclotomic numbers.

pub mod cyclotomic;
pub mod padic;
pub mod primes;
pub mod rational;

pub use cyclotomic::{cyclo_arith, CycloOp, CyclotomicField, CyclotomicNumber};
pub use padic::{
    embed_rational, padic_arith, teichmuller, PadicNum, PadicOp, Valuation, DEFAULT_PRECISION,
};
pub use rational::BigRational;
