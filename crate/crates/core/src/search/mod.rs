//! Parameter searches and sweeps.

mod golden;
mod optimize;
mod sweep;

pub use golden::golden_section_max;
pub use optimize::{optimize, SearchConfig, ViolationReport, MAX_GRID_SLOTS_UNEQUAL};
pub use sweep::{asymptotic_table, linspace, sweep, sweep_n, AsymptoticRow, ParamAxis, SweepPoint};
