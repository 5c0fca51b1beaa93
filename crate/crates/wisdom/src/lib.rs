//! File formats, parallel drivers and the command-line front end for
//! [`wisdom_core`].

pub mod commands;
pub mod error;
pub mod export;
pub mod instance;
pub mod parallel;

pub use error::{CliError, Result};
pub use instance::Instance;
