//! File formats and command-line front end for [`oraclemux`].

pub mod args;
pub mod config;
pub mod error;
pub mod formats;
pub mod json;
pub mod run;

pub use args::execute;
pub use config::{AngleSource, JobConfig, Method, VerifyFileConfig};
pub use error::CliError;
pub use run::{run, verify_file, Outcome};
