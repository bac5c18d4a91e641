//! Exact curvature and almost product structure computations for Lie groups
//! with left-invariant metrics.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod analysis;
pub mod commands;
pub mod error;
pub mod families;
pub mod geometry;
pub mod input;
pub mod poly;
pub mod product;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use poly::{Assignment, Poly, Rational, Var};
