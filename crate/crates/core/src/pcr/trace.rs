//! Term-level record of a PCR fusion: one entry per conflicting tuple.

use std::collections::BTreeMap;

use crate::conjunctive::{conjunctive_combine, ConjunctiveResult};
use crate::error::Result;
use crate::mass::{max_gap, FocalSet, Frame, MassFunction};

use super::{
    enumerate_conflict_tuples, fuse, ConflictTuple, PcrRule, ShareVector, DEFAULT_SOURCE_CAP,
};

/// How one conflicting tuple was redistributed.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub tuple: ConflictTuple,
    pub rule: PcrRule,
    /// Denominator weights per focal set, ascending.
    pub weights: Vec<(FocalSet, f64)>,
    pub shares: ShareVector,
}

#[derive(Debug, Clone)]
pub struct RedistributionTrace {
    rule: PcrRule,
    conjunctive: ConjunctiveResult,
    entries: Vec<TraceEntry>,
    fused: MassFunction,
}

impl RedistributionTrace {
    pub fn rule(&self) -> PcrRule {
        self.rule
    }

    pub fn frame(&self) -> &Frame {
        self.fused.frame()
    }

    pub fn conjunctive(&self) -> &ConjunctiveResult {
        &self.conjunctive
    }

    /// Entries in the order of [`enumerate_conflict_tuples`].
    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn fused(&self) -> &MassFunction {
        &self.fused
    }

    /// Total redistributed mass per focal set, ascending.
    pub fn column_sums(&self) -> Vec<(FocalSet, f64)> {
        let mut sums: BTreeMap<FocalSet, f64> = BTreeMap::new();
        for entry in &self.entries {
            for &(set, share) in entry.shares.entries() {
                *sums.entry(set).or_insert(0.0) += share;
            }
        }
        sums.into_iter().collect()
    }

    /// Conjunctive masses plus column sums.
    pub fn reconstructed(&self) -> Vec<(FocalSet, f64)> {
        let mut total: BTreeMap<FocalSet, f64> =
            self.conjunctive.entries().iter().copied().collect();
        for (set, share) in self.column_sums() {
            *total.entry(set).or_insert(0.0) += share;
        }
        total.into_iter().collect()
    }

    /// Largest per-set gap between [`Self::reconstructed`] and the fused result.
    pub fn reconciliation_gap(&self) -> f64 {
        max_gap(&self.reconstructed(), self.fused.entries())
    }
}

pub fn trace(sources: &[MassFunction], rule: PcrRule) -> Result<RedistributionTrace> {
    trace_with_cap(sources, rule, DEFAULT_SOURCE_CAP)
}

/// Traces the fusion of `sources` in the order given; source indices in the
/// entries refer to that order.
pub fn trace_with_cap(
    sources: &[MassFunction],
    rule: PcrRule,
    cap: usize,
) -> Result<RedistributionTrace> {
    let fused = fuse(sources, rule, cap)?;
    let conjunctive = conjunctive_combine(sources)?;
    let entries = enumerate_conflict_tuples(sources)?
        .into_iter()
        .map(|tuple| TraceEntry {
            rule,
            weights: tuple.grouped_weights(rule),
            shares: tuple.shares(rule),
            tuple,
        })
        .collect();
    Ok(RedistributionTrace {
        rule,
        conjunctive,
        entries,
        fused,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: FocalSet = FocalSet::from_bits(1);
    const B: FocalSet = FocalSet::from_bits(2);

    fn frame() -> Frame {
        Frame::new(["A", "B"]).unwrap()
    }
    fn m1() -> MassFunction {
        MassFunction::from_named(&frame(), &[("A", 0.1), ("B", 0.7), ("A|B", 0.2)]).unwrap()
    }
    fn m2() -> MassFunction {
        MassFunction::from_named(&frame(), &[("A", 0.4), ("B", 0.1), ("A|B", 0.5)]).unwrap()
    }

    #[test]
    fn reference_trace_has_twelve_entries() {
        let t = trace(&[m1(), m2(), m2()], PcrRule::Pcr5).unwrap();
        assert_eq!(t.entries().len(), 12);
        let a_total: f64 = t.entries().iter().map(|e| e.shares.get(A)).sum();
        assert!((a_total - 0.152262).abs() < 5e-6);
        assert!((a_total - (t.fused().mass(A) - 0.193)).abs() < 1e-12);
        assert!(t.reconciliation_gap() <= 1e-12);
        for e in t.entries() {
            assert!((e.shares.total() - e.tuple.product()).abs() <= 1e-15);
        }
    }

    #[test]
    fn system_twelve_weights() {
        let t = trace(&[m1(), m2(), m2()], PcrRule::Pcr5).unwrap();
        let e = t
            .entries()
            .iter()
            .find(|e| e.tuple.assignment().iter().map(|a| a.set).eq([B, A, A]))
            .unwrap();
        assert!((e.tuple.product() - 0.112).abs() < 1e-15);
        assert!((e.weights[0].1 - 0.16).abs() < 1e-15);
        assert!((e.weights[1].1 - 0.7).abs() < 1e-15);
    }

    #[test]
    fn vacuous_trace_is_empty() {
        let t = trace(&[m1(), MassFunction::vacuous(&frame())], PcrRule::Pcr6).unwrap();
        assert!(t.entries().is_empty());
        assert_eq!(t.fused(), &m1());
    }
}
