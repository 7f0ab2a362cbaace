//! Exact scalar, polynomial and linear-form arithmetic, plus the rank and
//! span decisions everything else is built on. No floating point anywhere.

pub mod linalg;
pub mod linform;
pub mod mat;
pub mod poly;
pub mod scalar;

pub use linalg::{generic_rank, solve_transversal, span_membership, SpanMode, SpanResult};
pub use linform::LinForm;
pub use mat::Mat;
pub use poly::{Monomial, Param, Poly};
pub use scalar::{parse_scalar, Scalar};
