//! Checks shared by the integration suites and the acceptance runner.
#![allow(dead_code)]

pub mod domain;
pub mod sampling;
pub mod truth;
