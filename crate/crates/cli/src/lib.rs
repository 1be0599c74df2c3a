//! Verification jobs over the complexes of `prop_homology_core`, with JSON
//! reports and an on-disk result cache.

pub mod cache;
pub mod claims;
pub mod job;
pub mod report;
pub mod run;

pub use cache::Cache;
pub use job::{Caps, Claim, Job, JobError, Params};
pub use report::{Report, Verdict};
pub use run::{run_job, run_jobs, suite_jobs, Suite};
