//! Octonion algebra, monogenic and slice monogenic reproducing kernels, and
//! the quadrature used to check them numerically.
//!
//! ```
//! use octonion_kernels::Octonion;
//!
//! let e1 = Octonion::basis(1);
//! let e2 = Octonion::basis(2);
//! assert_eq!(e1 * e2, Octonion::basis(4));
//! ```

pub mod error;
pub mod inner;
pub mod monogenic;
pub mod octonion;
pub mod quadrature;
pub mod series;
pub mod slice;
pub mod slice_kernels;
pub mod verify;

pub use error::{Error, Result};
pub use octonion::{associator, euclid_inner, identity_residuals, Octonion};
pub use series::OctonionPowerSeries;
pub use slice::{decompose, ImaginaryUnit, SlicePoint};
pub use verify::{run_suite, Suite, SuiteSummary, VerificationReport, VerifyConfig};
