//! Social-power allocations and the wisdom of crowds.
//!
//! Individuals hold independent unbiased estimates with variances `σ²_i`. A
//! weighted-average influence process ends with the collective estimate
//! `Σ x_i y_i(0)`, where `x` is the social power allocation. This crate
//! decides whether `x` improves, optimizes or undermines the crowd's accuracy
//! relative to plain averaging, builds allocations that do, and runs the
//! French-DeGroot dynamics that produce them.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod orderings;
pub mod profile;
pub mod region;
pub mod sampling;
pub mod stochastics;
pub mod wisdom;

pub use error::{Error, Result};
pub use profile::{Allocation, VarianceProfile, DEFAULT_TOL};
pub use wisdom::{
    baseline_variance, classify, classify_consistency, classify_consistency_with_tol, classify_membership,
    collective_variance, gap_improvement_check, optimal_allocation, Consistency, Membership, RegionVerdict,
};
