//! Exact scalars: phases `e^{iπq}` with rational `q`, their finite rational
//! combinations, and rational polynomials used as exponent data.

mod cyc;
mod cyclotomic;
mod phase;
mod poly;

pub use cyc::CycNum;
pub use cyclotomic::cyclotomic_polynomial;
pub use phase::{parse_rational, rational_str, reduce_mod2, Phase};
pub use poly::Poly;

pub(crate) use phase::{is_even_integer, rational};
