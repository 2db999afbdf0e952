//! Exact coefficient arithmetic: rationals, polynomials, rational functions and
//! truncated graded q-series.

pub mod gcd;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod symbols;

pub use poly::{Mono, Poly};
pub use ratfunc::RatFn;
pub use rational::{q, qi, Q};
pub use series::{GradedSeries, SeriesCmp, Q4};
pub use symbols::{Sym, SymbolSet};
