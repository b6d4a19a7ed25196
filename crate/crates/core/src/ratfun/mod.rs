//! Univariate rational functions over the exact scalar field, their power
//! series expansions and small dense matrices over them.

mod function;
mod matrix;
mod modular;
mod poly;
mod series;

pub use function::RatFun;
pub use matrix::RatMatrix;
pub use poly::Poly;
pub use series::TruncatedSeries;
