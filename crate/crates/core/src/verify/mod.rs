//! Executable reproductions of the level tables, witness elements and
//! classification statements, reported case by case.

mod levels;
mod natural;
mod report;
mod sweep;
mod witnesses;

pub use levels::{computed_level_table, paper_level_table, verify_level_table, LevelTable};
pub use natural::{random_epsilon_tuple, verify_natural_module_regularity};
pub use report::{CaseResult, Status, VerificationReport};
pub use sweep::{
    bounds_report, c99_report, corollary_cap, modules_up_to, stratum_elements, sweep,
    theorem_permits, verify_corollary_bounds, verify_theorem_12, verify_theorem_c99, Module,
    SweepHit, SweepOutcome, SWEEP_SCOPE,
};
pub use witnesses::verify_paper_witnesses;
