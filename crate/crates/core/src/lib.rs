//! Computational commutative algebra over local polynomial quotient rings: standard
//! bases, minimal free resolutions, Ext and Tor, and linkage of modules.

pub mod error;
pub mod homcore;
pub mod linkage;
pub mod polycore;
pub mod stdbasis;

pub use error::{Error, Result};
