//! Pairing of cone functions with Schwartz functions, valued in quotient
//! series.

pub mod pair;
pub mod quot;
pub mod schwartz;
pub mod series;

pub use pair::{
    cone_denominator_factor, pair_combo, pair_cone, pair_cone_with_scales, parallelotope_points,
    phi_map, scaled_generators,
};
pub use quot::{QuotSeries, QuotSeriesDoc};
pub use schwartz::{CoeffDoc, FiniteSupportFn, RingDoc, SchwartzDoc, SchwartzFn};
pub use series::Series;
