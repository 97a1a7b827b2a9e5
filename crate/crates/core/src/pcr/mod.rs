//! Proportional conflict redistribution, rules #5 and #6.
//!
//! Each conflicting tuple (one focal set per source, empty joint
//! intersection) has its mass product handed back to the focal sets it
//! involves, proportionally to their weights within the tuple. The rules
//! differ only in how entries naming the same focal set are merged into one
//! weight:
//!
//! * PCR5 multiplies their masses,
//! * PCR6 adds them.
//!
//! With all-distinct sets in a tuple (always the case for two sources) the
//! rules coincide. PCR5 beyond three sources extends the multiplicative
//! grouping to any tuple length; the three-source closed forms in
//! [`closed_form`] are the reference for that generalization.

use std::collections::BTreeMap;
use std::fmt;

use crate::conjunctive::{canonical_order, conjunctive_pass};
use crate::enumerate::for_each_tuple;
use crate::error::{FusionError, Result};
use crate::mass::{lookup, shared_frame, FocalSet, MassFunction};

pub mod closed_form;
pub mod trace;

pub use closed_form::{closed_form_pcr5_3, closed_form_pcr6_3};
pub use trace::{trace, trace_with_cap, RedistributionTrace, TraceEntry};

/// Default cap on the number of sources fused at once.
pub const DEFAULT_SOURCE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PcrRule {
    Pcr5,
    Pcr6,
}

impl fmt::Display for PcrRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PcrRule::Pcr5 => "pcr5",
            PcrRule::Pcr6 => "pcr6",
        })
    }
}

/// One source's contribution to a tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assignment {
    pub source: usize,
    pub set: FocalSet,
    pub mass: f64,
}

/// A tuple of focal sets, one per source, whose joint intersection is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictTuple {
    assignment: Vec<Assignment>,
    product: f64,
}

impl ConflictTuple {
    /// Checks that the sets are jointly disjoint and every mass is a positive
    /// finite number.
    pub fn new(assignment: Vec<Assignment>) -> Result<Self> {
        if assignment.len() < 2 {
            return Err(FusionError::MalformedTuple("needs at least two entries"));
        }
        if assignment
            .iter()
            .any(|a| !(a.mass > 0.0 && a.mass.is_finite()))
        {
            return Err(FusionError::MalformedTuple("masses must be positive"));
        }
        let inter = assignment
            .iter()
            .fold(FocalSet::from_bits(u64::MAX), |acc, a| acc.intersect(a.set));
        if !inter.is_empty() {
            return Err(FusionError::MalformedTuple(
                "joint intersection is not empty",
            ));
        }
        let product = assignment.iter().map(|a| a.mass).product::<f64>();
        Ok(Self {
            assignment,
            product,
        })
    }

    pub fn assignment(&self) -> &[Assignment] {
        &self.assignment
    }

    /// Partial conflict carried by the tuple.
    pub fn product(&self) -> f64 {
        self.product
    }

    /// Per-set weights under `rule`, in ascending bitmask order.
    pub fn grouped_weights(&self, rule: PcrRule) -> Vec<(FocalSet, f64)> {
        let mut groups = Vec::with_capacity(self.assignment.len());
        group_weights(
            self.assignment.iter().map(|a| (a.set, a.mass)),
            rule,
            &mut groups,
        );
        groups
    }

    pub fn shares(&self, rule: PcrRule) -> ShareVector {
        let weights = self.grouped_weights(rule);
        let denom = weight_total(&weights);
        ShareVector {
            shares: weights
                .into_iter()
                .map(|(set, w)| (set, self.product * w / denom))
                .collect(),
        }
    }
}

/// Redistributed mass per focal set for one tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct ShareVector {
    shares: Vec<(FocalSet, f64)>,
}

impl ShareVector {
    /// Entries in ascending bitmask order.
    pub fn entries(&self) -> &[(FocalSet, f64)] {
        &self.shares
    }

    pub fn get(&self, set: FocalSet) -> f64 {
        lookup(&self.shares, set)
    }

    pub fn total(&self) -> f64 {
        self.shares.iter().map(|&(_, m)| m).sum()
    }
}

pub fn pcr5_shares(tuple: &ConflictTuple) -> ShareVector {
    tuple.shares(PcrRule::Pcr5)
}

pub fn pcr6_shares(tuple: &ConflictTuple) -> ShareVector {
    tuple.shares(PcrRule::Pcr6)
}

/// Merges entries naming the same set into one weight, written to `out` in
/// ascending set order. Within a group the weight accumulates in entry order.
fn group_weights<I>(entries: I, rule: PcrRule, out: &mut Vec<(FocalSet, f64)>)
where
    I: IntoIterator<Item = (FocalSet, f64)>,
{
    out.clear();
    for (set, mass) in entries {
        match out.iter_mut().find(|(s, _)| *s == set) {
            Some((_, w)) => match rule {
                PcrRule::Pcr5 => *w *= mass,
                PcrRule::Pcr6 => *w += mass,
            },
            None => out.push((set, mass)),
        }
    }
    out.sort_unstable_by_key(|&(s, _)| s);
}

fn weight_total(weights: &[(FocalSet, f64)]) -> f64 {
    weights.iter().map(|&(_, w)| w).sum()
}

pub(crate) fn check_source_count(got: usize, cap: usize) -> Result<()> {
    if got < 2 {
        return Err(FusionError::TooFewSources { required: 2, got });
    }
    if got > cap {
        return Err(FusionError::TooManySources { got, cap });
    }
    Ok(())
}

/// All conflicting tuples of `sources` with positive product, in
/// lexicographic order of the per-source bitmasks. Source indices refer to
/// positions in `sources` as given.
pub fn enumerate_conflict_tuples(sources: &[MassFunction]) -> Result<Vec<ConflictTuple>> {
    shared_frame(sources)?;
    if sources.len() < 2 {
        return Err(FusionError::TooFewSources {
            required: 2,
            got: sources.len(),
        });
    }
    let refs: Vec<&MassFunction> = sources.iter().collect();
    let mut tuples = Vec::new();
    for_each_tuple(&refs, |idx, inter, product| {
        if !inter.is_empty() || product <= 0.0 {
            return;
        }
        let assignment = idx
            .iter()
            .enumerate()
            .map(|(source, &i)| {
                let (set, mass) = sources[source].entries()[i];
                Assignment { source, set, mass }
            })
            .collect();
        tuples.push(ConflictTuple {
            assignment,
            product,
        });
    });
    Ok(tuples)
}

pub fn fuse_pcr5(sources: &[MassFunction]) -> Result<MassFunction> {
    fuse(sources, PcrRule::Pcr5, DEFAULT_SOURCE_CAP)
}

pub fn fuse_pcr6(sources: &[MassFunction]) -> Result<MassFunction> {
    fuse(sources, PcrRule::Pcr6, DEFAULT_SOURCE_CAP)
}

/// Conjunctive masses plus the redistributed shares of every conflicting
/// tuple. Accepts between 2 and `cap` sources.
pub fn fuse(sources: &[MassFunction], rule: PcrRule, cap: usize) -> Result<MassFunction> {
    let frame = shared_frame(sources)?;
    check_source_count(sources.len(), cap)?;
    let ordered = canonical_order(sources);

    let mut redistributed: BTreeMap<FocalSet, f64> = BTreeMap::new();
    let mut groups = Vec::with_capacity(ordered.len());
    let pass = conjunctive_pass(&ordered, |idx, product| {
        if product <= 0.0 {
            return;
        }
        let entries = idx.iter().zip(&ordered).map(|(&i, m)| m.entries()[i]);
        group_weights(entries, rule, &mut groups);
        let denom = weight_total(&groups);
        for &(set, w) in &groups {
            *redistributed.entry(set).or_insert(0.0) += product * w / denom;
        }
    });

    let mut masses = pass.buckets;
    for (set, share) in redistributed {
        *masses.entry(set).or_insert(0.0) += share;
    }
    MassFunction::from_sorted(frame, masses.into_iter().collect())
}
