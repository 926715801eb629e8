//! Command-line plumbing around `polyret`: point files, query files, saved
//! indexes, verified query runs and doubling benchmarks.

pub mod bench;
pub mod dataset;
pub mod error;
pub mod persist;
pub mod query;
pub mod report;
pub mod run;

pub use dataset::{ingest, Dataset, Format};
pub use error::{CliError, Result};
pub use query::{generate_queries, parse_queries, Kind, Query, QuerySpec};
pub use report::{BenchReport, QueryRecord, Summary};
pub use run::{run_queries, BuildOptions, EngineChoice, Index, RunOptions};
