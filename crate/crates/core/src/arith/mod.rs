//! Exact arithmetic: rationals with p-adic valuations, p-adic approximations, finite fields,
//! Eisenstein extensions, rational functions and their divisors.

pub mod divisor;
pub mod eisenstein;
pub mod ff;
pub mod field;
pub mod padic;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;

pub use divisor::{divisor, ClosedPoint, Divisor};
pub use eisenstein::EisElem;
pub use field::{eisenstein_extension, valuation, BaseFieldDesc, FieldElem};
pub use padic::{hensel_sqrt, hilbert_symbol, HenselSqrt, PAdicApprox};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{qi, qr, ExtQ, Q};
pub use series::{Center, Laurent};

/// Default working precision in p-adic digits and series terms.
pub const DEFAULT_PRECISION: u32 = 32;
