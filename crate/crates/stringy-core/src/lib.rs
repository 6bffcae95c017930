//! Exact calculator for stringy products on global quotients.
//!
//! A global quotient `[X/G]` is presented by finite fixed-point data: one
//! graded Frobenius algebra per sector `X^m`, restriction and pushforward
//! maps between them, and rational K-classes (formal combinations of
//! declared line generators) recording normal bundles and the
//! eigenvalue-weighted age classes `S_m`. On top of that data the crate
//! computes the stringy product two ways — pulling back to the common fixed
//! locus and pushing forward with the Euler class of the obstruction class
//! (`product::pullpush_product`), or multiplying section images against a
//! cocycle and extracting a `t`-coefficient (`product::pushpull_product`) —
//! and cross-verifies that both routes, the G-Frobenius axioms, and the
//! formal fractional Euler-class calculus (`symbolic`) all agree.
//!
//! All arithmetic is exact over `ℚ`; there is no floating point anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, the dataset file format, and
//! the command-line surface live in the companion `stringy-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod builders;
pub mod error;
pub mod group;
pub mod kclass;
pub mod linalg;
pub mod product;
pub mod quotient;
pub mod rat;
pub mod report;
pub mod roots;
pub mod series;
pub mod symbolic;

pub use algebra::{check_algebra, adjoint_pushforward, Algebra, AlgebraRef, Element, LinearMap};
pub use error::{Error, Result};
pub use kclass::{EulerFlavor, KClass, LineGenerator};
pub use quotient::Presentation;
pub use rat::Rat;
pub use report::{Finding, Report, Status};
