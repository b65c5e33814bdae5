//! The scalar field ℚ(i), super-commutative parameter polynomials, and
//! truncated relation ideals.

mod ideal;
mod poly;
mod scalar;

pub use ideal::{ideal_equal, ideal_reduce, IdealBasis, RelationIdeal, DEFAULT_TRUNCATION};
pub use poly::{ParamSpace, Parameter, Parity, SuperMonomial, SuperPolynomial};
pub use scalar::Scalar;

pub(crate) use poly::signed_coefficient;
