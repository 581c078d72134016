//! Driver for the curl-curl equivalence study: p-refinement tables,
//! pointwise comparison grids, error decay and operator dumps.

pub mod config;
pub mod error;
pub mod fig2;
pub mod output;
pub mod self_check;
pub mod study;

pub use config::{Emit, StudyConfig};
pub use error::{CliError, Result};
pub use fig2::{compute_fig2, emit_fig2, Fig2Grids};
pub use self_check::{run_self_check, CheckResult, SelfCheckOptions, SelfCheckReport};
pub use study::{run_study, DegreeRecord, StudyReport};
