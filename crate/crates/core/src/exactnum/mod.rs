//! Exact arithmetic: rationals, prime fields, small extensions, the DVR
//! Z_(p), polynomials and truncated power series.

mod binom;
mod dvr;
mod fp;
mod fq;
mod mpoly;
mod poly;
mod ratfunc;
mod rational;
mod ring;
mod series;

pub use binom::{binom_i64, binom_int, factorial, lucas_binom};
pub use dvr::{residue, val_p, Dvr, DvrElem, Val};
pub use fp::{is_prime, reduce_int, PrimeField};
pub use fq::{is_irreducible_small, FiniteField};
pub use mpoly::{MPoly, MPolyRing, Mono};
pub use poly::{roots_with_multiplicity, Poly};
pub use ratfunc::{RatFunc, RatFuncField};
pub use rational::{ParseRationalError, Rational};
pub use ring::{Field, RationalField, Ring};
pub use series::{default_precision, Series};
