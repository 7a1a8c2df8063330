//! Addition and completion times, and finite checks of how Prim prefixes
//! match expanded invasion clusters.

mod times;
mod verify;

pub use times::{addition_times, completion_prediction, completion_time, TimesReport};
pub use verify::{
    ball_change_steps, profile_for, steps_at, verify_exact_step, verify_exact_step_with, verify_marginal,
    verify_marginal_with, verify_process_conditions, verify_process_conditions_with, DeltaStat, ExactStepReport,
    Instance, MarginalReport, Outcome, ProcessReport, VerifyOptions, DEFAULT_ALPHA,
};
