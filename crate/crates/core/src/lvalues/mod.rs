//! Special values of Dirichlet L-functions and of L-functions of real
//! quadratic fields at non-positive integers.

pub mod dirichlet;
pub mod quadratic;

pub use dirichlet::{all_characters, CharDoc, dirichlet_l_closed, dirichlet_l_via_cocycle, euler_correction, DirichletChar};
pub use quadratic::{
    dedekind_zeta, narrow_class_number, norm_character, quad_l_from_s_coeffs, quad_l_value,
    quad_l_value_detailed, s_coeffs, QuadLValue, RealQuadField, SCoeffs,
};
