//! Monte Carlo link-level simulator of an indoor-factory uplink under
//! jamming, with blanking-based jamming detection and mitigation.

pub mod channel;
pub mod config;
pub mod defense;
pub mod detect;
pub mod error;
pub mod figures;
pub mod link;
pub mod report;
pub mod rng;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};
