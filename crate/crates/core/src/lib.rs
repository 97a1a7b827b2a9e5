//! Belief-function fusion under the Shafer model.
//!
//! * [`mass`]: frames, focal sets, mass functions, discounting.
//! * [`conjunctive`]: the conjunctive rule and a normalized Dempster baseline.
//! * [`pcr`]: PCR5 and PCR6 conflict redistribution, three-source closed
//!   forms, and a per-tuple redistribution trace.
//! * [`importance`]: source importance by repeated fusion.
//! * [`cli`]: the `pcrfuse` command-line front end.

pub mod cli;
pub mod conjunctive;
mod enumerate;
pub mod error;
pub mod importance;
pub mod mass;
pub mod pcr;

pub use conjunctive::{conjunctive_combine, dempster_normalize, ConjunctiveResult};
pub use error::{FusionError, Result};
pub use importance::{
    convergence_profile, fuse_with_importance, reduce_weights, Fused, FusionRule, ProfilePoint,
    WeightedSource,
};
pub use mass::{intersect_all, FocalSet, Frame, MassFunction};
pub use pcr::{
    closed_form_pcr5_3, closed_form_pcr6_3, enumerate_conflict_tuples, fuse_pcr5, fuse_pcr6,
    pcr5_shares, pcr6_shares, trace, Assignment, ConflictTuple, PcrRule, RedistributionTrace,
    ShareVector, DEFAULT_SOURCE_CAP,
};
