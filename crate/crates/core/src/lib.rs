//! Exact solvers for conflict-free fair allocation.
//!
//! The core decision problem: partition (some of) the jobs into
//! pairwise-disjoint bundles, one per agent, so that no bundle contains two
//! conflicting jobs, every agent values their bundle at least `eta`, and —
//! optionally — no bundle exceeds a size cap.
//!
//! The crate provides:
//!
//! - the problem model and a definitional certificate verifier ([`model`]),
//! - exhaustive reference solvers used as test oracles ([`oracle`]),
//! - a size-bounded weighted independent-set toolkit ([`sbmwis`]),
//! - fast exact algorithms for the general problem and for structured
//!   conflict graphs (remaining modules),
//! - instance encoders from classic hard problems and random generators,
//!   JSON input/output, and a solver dispatcher.
//!
//! Everything is deterministic: given the same input (and seed, where
//! randomness is involved), verdicts, certificates, and work counters are
//! identical across runs. The `parallel` feature (on by default) switches the
//! inner loops to a work-stealing thread pool without changing any output.

pub mod color_coding;
pub mod dispatch;
pub mod error;
pub mod exec;
pub mod io;
pub mod model;
pub mod near_complete;
pub mod oracle;
pub mod reductions;
pub mod sbmwis;
pub mod structured;
pub mod subsetconv;

pub use error::{Error, InvalidCode, Result};
pub use model::{verify_allocation, Allocation, ConflictGraph, Instance, SolveReport};
