//! Library surface of the `svcert` command-line tool: matrix file parsing,
//! the bound/sintheta pipelines, the verify property suites, and the JSON
//! report model.

pub mod error;
pub mod matfile;
pub mod pipeline;
pub mod report;
pub mod suites;

pub use error::CliError;
pub use matfile::{matrix_to_string, parse_matrix_file, parse_matrix_str};
pub use pipeline::{run_bound, run_sintheta, BoundArgs, SinThetaArgs};
pub use report::{to_json, Report};
pub use suites::{run_suite, SuiteParams};
