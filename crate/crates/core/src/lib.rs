//! Difference-coarray analysis of sparse linear arrays and a leap-on-success
//! exhaustive search for robust minimum redundancy arrays (RMRAs): arrays
//! whose coarray is doubly redundant when healthy and stays hole-free after
//! any single interior sensor failure.

pub mod catalog;
pub mod coarray;
pub mod error;
pub mod robustness;
pub mod search;

pub use coarray::{IesVector, LagSet, SensorArray, WeightTable};
pub use error::{Error, Result};
pub use robustness::{ConstraintVerdict, FailureReport, Fraction, RobustnessReport};
