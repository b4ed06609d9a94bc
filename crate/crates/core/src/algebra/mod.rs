//! Exact arithmetic: rationals, truncated graded polynomial rings, `q^{1/2}`-series,
//! Pontryagin presentation and reduction modulo one relation.

pub mod ideal;
pub mod pontryagin;
pub mod rational;
pub mod ring;
pub mod series;
pub mod univariate;

pub use ideal::ideal_reduce;
pub use pontryagin::{to_pontryagin, PontryaginPoly, RootFamily};
pub use rational::Rational;
pub use ring::{Generator, GradedPoly, Monomial, RingSpec};
pub use series::{Coefficient, HalfQSeries};
pub use univariate::{apply_series, Taylor};
