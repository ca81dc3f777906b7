//! Exact arithmetic: rationals, sparse polynomials, the coefficient ring
//! Q(zeta_m, sqrt D), rational matrices and Bernoulli numbers.

pub mod bernoulli;
pub mod coeff;
pub mod matrix;
pub mod mpoly;
pub mod rat;
pub mod ring;

pub use bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_poly};
pub use coeff::{CoeffElem, CoeffRing};
pub use matrix::Matrix;
pub use mpoly::{Exponent, MPoly};
pub use rat::{fmt_rat, int, parse_rat, rat, sign_of, Rat, RatStr};
pub use ring::{det_columns, OrderedRing, Ring};
