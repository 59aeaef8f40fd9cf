//! Inequality checks with explicit error budgets: log-Brunn-Minkowski for
//! complex, planar, and unconditional bodies, the Santaló-type product bound,
//! the interpolation-ball inclusion, and volume log-concavity along
//! interpolation families.

pub mod inclusion;
pub mod logbm;
pub mod logconcavity;
pub mod report;
pub mod santalo;
pub mod vbody;

pub use inclusion::{check_inclusion_c_in_l, default_probes};
pub use logbm::{check_log_bm, check_real_2d_log_bm, check_unconditional_log_bm, GridCache};
pub use logconcavity::{check_logconcavity_closed, check_logconcavity_sandwich};
pub use report::{ErrorBudget, InequalityReport, ReportedValue, Verdict};
pub use santalo::check_santalo;
pub use vbody::{CheckBody, VolumeCfg};
