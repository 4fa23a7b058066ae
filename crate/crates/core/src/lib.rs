//! Exact computations on Artinian Gorenstein quotients of polynomial rings.

pub mod apolarity;
pub mod charge;
pub mod error;
pub mod linalg;
pub mod plane;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod sample;
pub mod strata;
pub mod verification;

pub use error::{Error, Result};
