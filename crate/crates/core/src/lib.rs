//! Exact Poincaré polynomials of Grassmannians and of the intersection
//! cohomology of special Schubert varieties, together with exact checks of
//! the local and global polynomial identities relating them.

pub mod cli;
pub mod error;
pub mod identities;
pub mod ihsolver;
pub mod polyring;
pub mod qfactor;
pub mod strata;
pub mod sweeper;

pub use error::{Error, Result};
pub use ihsolver::IHTable;
pub use identities::{IdentityKind, IdentityVerdict, VerdictParams};
pub use polyring::{PolyError, Polynomial};
pub use strata::{ParamClass, SchubertParams, StratumPair};
pub use sweeper::{run_sweep, write_report, ReportFormat, SweepReport, SweepSpec};
