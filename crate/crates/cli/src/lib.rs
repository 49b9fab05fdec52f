//! Command-line tools and experiment drivers for the `bitretrieval` crate.

pub mod app;
pub mod bench;
pub mod mip;
