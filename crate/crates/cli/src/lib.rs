//! Library surface behind the `residlm` binary: configuration, CSV I/O,
//! synthetic yield generation, and report assembly. Exposed so integration
//! tests can drive the pipeline without shelling out.

pub mod config;
pub mod csv_io;
pub mod error;
pub mod report;
pub mod run;
pub mod synth;

pub use config::{Mode, OutputFormat, RunConfig};
pub use csv_io::{ingest_csv, ingest_input, read_yield_csv, write_csv};
pub use error::{CliError, Result};
pub use report::{Diagnostics, ReportTable};
pub use run::{run, RunReport};
pub use synth::synthetic_yields;
