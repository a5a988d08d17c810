//! The ground field `Q(v)` with `q = v^2`.

mod parse;
mod poly;
mod scalar;

pub use parse::parse_scalar;
pub use poly::Poly;
pub use scalar::Scalar;
