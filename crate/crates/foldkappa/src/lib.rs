//! foldkappa: exact and randomized structural analysis of hypercube and
//! folded-hypercube interconnection topologies.
//!
//! The library answers three families of questions about these graphs:
//!
//! * extremal neighborhoods: the smallest open neighborhood any g-vertex
//!   set can have (`extremal::theta_exact`), with a constructive upper
//!   bound from star-shaped sets;
//! * component connectivity: the fewest vertex deletions that shatter the
//!   graph into at least a target number of components
//!   (`cutfinder::ckappa_exact`), certified by exhaustive small-cut sweeps;
//! * fault tolerance under random failures: Monte Carlo estimates of
//!   disconnection probabilities near the analytic thresholds
//!   (`faultsim::simulate`).
//!
//! Closed-form curves for both families live in `closedform`. Every checkable
//! statement is packaged in `verify` as a claim producing a `report::Report`,
//! and the `foldkappa` binary exposes the whole surface on the command line.
//!
//! Searches are budgeted and deterministic: identical inputs produce
//! identical outputs (including witnesses) regardless of thread count, and
//! a budget that runs out degrades the verdict to an upper bound rather
//! than silently truncating.

pub mod closedform;
pub mod cutfinder;
pub mod error;
pub mod extremal;
pub mod faultsim;
pub mod report;
pub mod setcalc;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use report::{Report, Verdict};
pub use topology::{Kind, Topology};
