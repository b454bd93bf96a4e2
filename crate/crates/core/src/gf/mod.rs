//! Finite fields `F_q`, polynomials over them, and the rational function
//! field `F_q(t)`.

pub mod factor;
pub mod field;
pub mod poly;
pub mod ratfunc;

pub use factor::{
    factor, irreducibles_up_to, necklace_count, residue_square_class, Factorization, SquareClass,
};
pub use field::{Fq, FqElem, FqOp};
pub use poly::PolyFq;
pub use ratfunc::{ratfunc_canonical, RatFuncFq};
