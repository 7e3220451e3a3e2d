//! Exact and numeric real arithmetic for Frobenius-Perron dimensions.
//!
//! Dimensions of the rings in this crate live in `Q`, `Q(√2)` or `Q(√5)`, so
//! the exact type is a quadratic real `a + b·√n`. Anything of higher degree
//! (e.g. `2cos(π/7)`) is carried as a float with an explicit error bound.

mod perron;
mod poly;
mod quadratic;
mod value;

pub use perron::{perron_numeric, perron_root, MAX_ITERATIONS, POWER_TOLERANCE};
pub use poly::{char_poly, recognize, IntPoly, RECOGNITION_TOLERANCE};
pub use quadratic::{quad_arith, QuadOp, QuadResult, QuadraticReal};
pub use value::RealValue;

/// Reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("operands live in different fields Q(sqrt({0})) and Q(sqrt({1}))")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square: {rows} rows but row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("zero matrix has no Perron root")]
    ZeroMatrix,
    #[error("power iteration did not converge after {iterations} steps (bracket width {gap:e})")]
    ConvergenceFailure { iterations: usize, gap: f64 },
    #[error("cannot parse quadratic real {0:?}")]
    Parse(String),
}
