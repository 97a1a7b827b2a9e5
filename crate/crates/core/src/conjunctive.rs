//! Conjunctive combination of s sources and the normalized Dempster baseline.

use std::collections::BTreeMap;

use crate::enumerate::for_each_tuple;
use crate::error::{FusionError, Result};
use crate::mass::{lookup, shared_frame, FocalSet, Frame, MassFunction};

/// Unnormalized conjunctive combination: partial masses on non-empty
/// intersections plus the total conflict carried by the empty set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctiveResult {
    frame: Frame,
    masses: Vec<(FocalSet, f64)>,
    conflict: f64,
}

impl ConjunctiveResult {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Non-empty entries in ascending bitmask order.
    pub fn entries(&self) -> &[(FocalSet, f64)] {
        &self.masses
    }

    pub fn mass(&self, set: FocalSet) -> f64 {
        lookup(&self.masses, set)
    }

    /// Mass committed to the empty set.
    pub fn conflict(&self) -> f64 {
        self.conflict
    }
}

/// Sorts sources into a fixed order so every permutation of the same list is
/// enumerated identically, making results bit-for-bit permutation invariant.
pub(crate) fn canonical_order(sources: &[MassFunction]) -> Vec<&MassFunction> {
    let mut ordered: Vec<&MassFunction> = sources.iter().collect();
    ordered.sort_by(|a, b| a.canonical_cmp(b));
    ordered
}

/// Output of one enumeration pass.
pub(crate) struct Pass {
    pub buckets: BTreeMap<FocalSet, f64>,
    pub conflict: f64,
}

/// Walks every tuple, bucketing non-conflicting products by intersection.
/// Conflicting tuples add to the conflict total and are handed to
/// `on_conflict` with their per-source entry indices and product.
pub(crate) fn conjunctive_pass<F>(ordered: &[&MassFunction], mut on_conflict: F) -> Pass
where
    F: FnMut(&[usize], f64),
{
    let mut buckets = BTreeMap::new();
    let mut conflict = 0.0;
    for_each_tuple(ordered, |idx, inter, product| {
        if inter.is_empty() {
            conflict += product;
            on_conflict(idx, product);
        } else {
            *buckets.entry(inter).or_insert(0.0) += product;
        }
    });
    Pass { buckets, conflict }
}

/// Conjunctive rule over any number of sources sharing a frame.
pub fn conjunctive_combine(sources: &[MassFunction]) -> Result<ConjunctiveResult> {
    let frame = shared_frame(sources)?.clone();
    if let [only] = sources {
        return Ok(ConjunctiveResult {
            frame,
            masses: only.entries().to_vec(),
            conflict: 0.0,
        });
    }
    let ordered = canonical_order(sources);
    let pass = conjunctive_pass(&ordered, |_, _| {});
    Ok(ConjunctiveResult {
        frame,
        masses: pass.buckets.into_iter().collect(),
        conflict: pass.conflict,
    })
}

/// Dempster's rule: conjunctive masses rescaled by `1 / (1 - conflict)`.
///
/// Not part of the PCR family; exposed as a comparison baseline.
pub fn dempster_normalize(result: &ConjunctiveResult) -> Result<MassFunction> {
    let keep = 1.0 - result.conflict;
    if keep.abs() <= 1e-12 || result.masses.is_empty() {
        return Err(FusionError::TotalConflict);
    }
    let masses = result.masses.iter().map(|&(s, m)| (s, m / keep)).collect();
    MassFunction::from_sorted(&result.frame, masses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame() -> Frame {
        Frame::new(["A", "B"]).unwrap()
    }
    fn m1() -> MassFunction {
        MassFunction::from_named(&frame(), &[("A", 0.1), ("B", 0.7), ("A|B", 0.2)]).unwrap()
    }
    fn m2() -> MassFunction {
        MassFunction::from_named(&frame(), &[("A", 0.4), ("B", 0.1), ("A|B", 0.5)]).unwrap()
    }
    const A: FocalSet = FocalSet::from_bits(1);
    const B: FocalSet = FocalSet::from_bits(2);
    const AB: FocalSet = FocalSet::from_bits(3);

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!((got - want).abs() <= tol, "got {got}, want {want}");
    }

    #[test]
    fn two_source_table() {
        let r = conjunctive_combine(&[m1(), m2()]).unwrap();
        assert_close(r.mass(A), 0.17, 1e-12);
        assert_close(r.mass(B), 0.44, 1e-12);
        assert_close(r.mass(AB), 0.10, 1e-12);
        assert_close(r.conflict(), 0.29, 1e-12);
    }

    #[test]
    fn three_source_table() {
        let r = conjunctive_combine(&[m1(), m2(), m2()]).unwrap();
        assert_close(r.mass(A), 0.193, 1e-12);
        assert_close(r.mass(B), 0.274, 1e-12);
        assert_close(r.mass(AB), 0.050, 1e-12);
        assert_close(r.conflict(), 0.483, 1e-12);
    }

    #[test]
    fn vacuous_is_neutral() {
        let r = conjunctive_combine(&[m1(), MassFunction::vacuous(&frame())]).unwrap();
        assert_eq!(r.entries(), m1().entries());
        assert_eq!(r.conflict(), 0.0);
    }

    #[test]
    fn single_source_passes_through() {
        let r = conjunctive_combine(&[m1()]).unwrap();
        assert_eq!(r.entries(), m1().entries());
        assert_eq!(r.conflict(), 0.0);
    }

    #[test]
    fn error_paths() {
        assert_eq!(conjunctive_combine(&[]), Err(FusionError::EmptySourceList));
        let other = MassFunction::vacuous(&Frame::new(["A", "C"]).unwrap());
        assert_eq!(
            conjunctive_combine(&[m1(), other]),
            Err(FusionError::FrameMismatch)
        );
    }

    #[test]
    fn dempster_baseline() {
        let r = conjunctive_combine(&[m1(), m2()]).unwrap();
        let d = dempster_normalize(&r).unwrap();
        assert_close(d.mass(A), 0.17 / 0.71, 1e-12);
        assert_close(d.mass(A), 0.239437, 5e-7);
        assert_close(d.mass(B), 0.619718, 5e-7);
        assert_close(d.mass(AB), 0.140845, 5e-7);
        assert_close(d.total(), 1.0, 1e-12);

        let free = conjunctive_combine(&[m1(), MassFunction::vacuous(&frame())]).unwrap();
        assert_eq!(dempster_normalize(&free).unwrap(), m1());

        let a = MassFunction::from_named(&frame(), &[("A", 1.0)]).unwrap();
        let b = MassFunction::from_named(&frame(), &[("B", 1.0)]).unwrap();
        let clash = conjunctive_combine(&[a, b]).unwrap();
        assert_eq!(clash.conflict(), 1.0);
        assert_eq!(dempster_normalize(&clash), Err(FusionError::TotalConflict));
    }

    #[test]
    fn permutation_is_bit_identical() {
        let f = Frame::new(["A", "B", "C"]).unwrap();
        let x = MassFunction::from_named(&f, &[("A", 0.3), ("B|C", 0.3), ("A|B|C", 0.4)]).unwrap();
        let y = MassFunction::from_named(&f, &[("B", 0.15), ("A|C", 0.45), ("C", 0.4)]).unwrap();
        let z = MassFunction::from_named(&f, &[("A|B", 0.7), ("C", 0.3)]).unwrap();
        let base = conjunctive_combine(&[x.clone(), y.clone(), z.clone()]).unwrap();
        for perm in [[&y, &x, &z], [&z, &y, &x], [&x, &z, &y]] {
            let r = conjunctive_combine(&perm.map(Clone::clone)).unwrap();
            assert_eq!(r, base);
        }
    }
}
