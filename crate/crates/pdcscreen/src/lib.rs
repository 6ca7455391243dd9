//! Partial-distance-correlation screening for high-dimensional time series.
//!
//! The crate has four layers:
//!
//! * [`dcor`] — pairwise distance matrices and the distance covariance /
//!   correlation / partial distance correlation estimators, in both the
//!   biased V-statistic and bias-corrected U-centered forms.
//! * [`lagged`] — turning a raw panel (one response series plus `m` predictor
//!   series) into an aligned lagged design with `p = m * h` covariate
//!   columns, and building the conditioning vectors used by the screeners.
//! * [`screen`] — the screening algorithms: SIS, DC-SIS, PDC-SIS, PDC-SIS+
//!   (with its random-decoy threshold) and the grouped variants for
//!   multivariate panels, plus ranking and the minimum-model-size metric.
//! * [`tsgen`] and [`bench`] — seeded generators for the six benchmark data
//!   designs and a deterministic, parallel replication harness.
//!
//! A narrative guide with runnable examples lives in the `book/` directory of
//! the repository; its code snippets are compiled and run as doc-tests of
//! this crate.

pub mod bench;
pub mod dcor;
pub mod error;
pub mod lagged;
pub mod screen;
pub mod tsgen;

pub use error::{Error, Result};

// The book's code blocks double as doc-tests so the guide can never drift
// from the API. Only rustdoc sees this module.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/estimators.md")]
    pub mod estimators {}
    #[doc = include_str!("../../../book/src/lagged-designs.md")]
    pub mod lagged_designs {}
    #[doc = include_str!("../../../book/src/screening.md")]
    pub mod screening {}
    #[doc = include_str!("../../../book/src/group-screening.md")]
    pub mod group_screening {}
    #[doc = include_str!("../../../book/src/simulation-models.md")]
    pub mod simulation_models {}
    #[doc = include_str!("../../../book/src/benchmark-harness.md")]
    pub mod benchmark_harness {}
}
