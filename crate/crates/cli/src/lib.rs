//! File formats and command-line front end for `fermat-core`.

pub mod app;
pub mod error;
pub mod problem_file;
pub mod report;
pub mod trace;

pub use error::CliError;
pub use problem_file::{load_problem, ProblemFile};
