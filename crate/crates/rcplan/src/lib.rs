//! File formats, the benchmark harness and the `rcplan` command line on top
//! of `rcplan-core`.

pub mod bench;
pub mod cli;
pub mod clock;
pub mod convert;
pub mod error;
pub mod io;
pub mod pdb_cache;
pub mod render;
pub mod report;

pub use error::{Error, Result};
