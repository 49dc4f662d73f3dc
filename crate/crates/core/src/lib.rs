//! Sup-norms of homogeneous trinomials `a x^m + b x^(m-n) y^n + c y^m` on
//! the square `[-1,1]^2`, the geometry of their unit ball, and tools to
//! check both numerically.

pub mod cli;
pub mod curves;
pub mod error;
pub mod extreme;
pub mod format;
pub mod norms;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod sphere;
pub mod trinomial;
pub mod verify;

pub use error::{Error, Result};
pub use trinomial::{ParityCase, Trinomial, TrinomialParams};
