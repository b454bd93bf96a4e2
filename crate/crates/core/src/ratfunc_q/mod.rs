//! Exact rational functions over `Q` in `w = alpha^(-s)`, factorization over
//! `Q`, number-field arithmetic and pole extraction.

pub mod number_field;
pub mod poles;
pub mod qpoly;
pub mod qratfunc;
pub mod roots;
pub mod zfactor;

pub use number_field::NumberFieldElem;
pub use poles::{
    laurent_at_pole, orbit_contribution, principal_part, principal_part_remainder,
    unit_disk_poles, with_laurent, PoleRecord,
};
pub use qpoly::{q_frac, q_int, q_parse, q_to_f64, q_to_string, QPoly, Q};
pub use qratfunc::{qratfunc_arith, ArithOp, QRatFunc, Var};
pub use roots::complex_roots;
pub use zfactor::{is_irreducible_q, qpoly_factor, QFactorization};
