//! The chapters of `book/` as doc-tests, so every snippet in the guide is
//! compiled and run by `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/octonions.md")]
pub mod octonions {}

#[doc = include_str!("../../../book/src/slice-structure.md")]
pub mod slice_structure {}

#[doc = include_str!("../../../book/src/power-series.md")]
pub mod power_series {}

#[doc = include_str!("../../../book/src/quadrature.md")]
pub mod quadrature {}

#[doc = include_str!("../../../book/src/monogenic-kernels.md")]
pub mod monogenic_kernels {}

#[doc = include_str!("../../../book/src/inner-products.md")]
pub mod inner_products {}

#[doc = include_str!("../../../book/src/slice-kernels.md")]
pub mod slice_kernels {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
