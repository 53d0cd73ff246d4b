//! Named checks, single runs and prime sweeps.

mod registry;
mod report;
mod sweep;

pub use registry::{lookup, registry, CheckOptions, Entry, Scope};
pub use report::{CheckReport, Status, Summary, SweepReport, COLUMNS};
pub use sweep::{run_check, sweep, sweep_qs};
