//! Three-source PCR5 and PCR6 written out term by term.
//!
//! For every focal set `A` the fused mass is the conjunctive mass plus three
//! sums over the sets `A` conflicts with:
//!
//! 1. `A` proposed by one source, two further distinct sets `X`, `Y` by the
//!    other two, with `A ∩ X ∩ Y = ∅`;
//! 2. `A` proposed once, the same `X` proposed by both other sources;
//! 3. `A` proposed by two sources, `X` by the remaining one.
//!
//! Sums run over the union of the three sources' focal sets; sets outside it
//! carry zero mass and contribute nothing. This path shares no code with the
//! tuple enumeration in [`super::fuse`] beyond the conjunctive part.

use crate::conjunctive::conjunctive_combine;
use crate::error::{FusionError, Result};
use crate::mass::{FocalSet, MassFunction};

use super::PcrRule;

/// PCR5 for exactly three sources.
pub fn closed_form_pcr5_3(
    m1: &MassFunction,
    m2: &MassFunction,
    m3: &MassFunction,
) -> Result<MassFunction> {
    closed_form_3([m1, m2, m3], PcrRule::Pcr5)
}

/// PCR6 for exactly three sources.
pub fn closed_form_pcr6_3(
    m1: &MassFunction,
    m2: &MassFunction,
    m3: &MassFunction,
) -> Result<MassFunction> {
    closed_form_3([m1, m2, m3], PcrRule::Pcr6)
}

/// `numer / denom`, or 0 when the numerator vanishes (the denominator may
/// then vanish too).
fn ratio(numer: f64, denom: f64) -> f64 {
    if numer == 0.0 {
        0.0
    } else {
        numer / denom
    }
}

fn closed_form_3(sources: [&MassFunction; 3], rule: PcrRule) -> Result<MassFunction> {
    let [s1, s2, s3] = sources;
    let frame = s1.frame();
    if s2.frame() != frame || s3.frame() != frame {
        return Err(FusionError::FrameMismatch);
    }
    let conj = conjunctive_combine(&[s1.clone(), s2.clone(), s3.clone()])?;

    let mut universe: Vec<FocalSet> = s1
        .focal_sets()
        .chain(s2.focal_sets())
        .chain(s3.focal_sets())
        .collect();
    universe.sort_unstable();
    universe.dedup();

    let m1 = |x: FocalSet| s1.mass(x);
    let m2 = |x: FocalSet| s2.mass(x);
    let m3 = |x: FocalSet| s3.mass(x);

    let mut out = Vec::new();
    for &a in &universe {
        let (a1, a2, a3) = (m1(a), m2(a), m3(a));
        let mut total = conj.mass(a);

        // A against two distinct sets.
        for &x in &universe {
            if x == a {
                continue;
            }
            for &y in &universe {
                if y == a || y == x || !a.intersect(x).intersect(y).is_empty() {
                    continue;
                }
                total += ratio(a1 * a1 * m2(x) * m3(y), a1 + m2(x) + m3(y));
                total += ratio(m1(y) * a2 * a2 * m3(x), m1(y) + a2 + m3(x));
                total += ratio(m1(x) * m2(y) * a3 * a3, m1(x) + m2(y) + a3);
            }
        }

        for &x in &universe {
            if !a.intersect(x).is_empty() {
                continue;
            }
            let (x1, x2, x3) = (m1(x), m2(x), m3(x));
            match rule {
                PcrRule::Pcr5 => {
                    // A once, X twice: X's group weight is the product.
                    total += ratio(a1 * a1 * x2 * x3, a1 + x2 * x3);
                    total += ratio(x1 * a2 * a2 * x3, a2 + x1 * x3);
                    total += ratio(x1 * x2 * a3 * a3, a3 + x1 * x2);
                    // A twice, X once.
                    total += ratio(a1 * a1 * a2 * a2 * x3, a1 * a2 + x3);
                    total += ratio(x1 * a2 * a2 * a3 * a3, a2 * a3 + x1);
                    total += ratio(a1 * a1 * x2 * a3 * a3, a1 * a3 + x2);
                }
                PcrRule::Pcr6 => {
                    total += ratio(a1 * a1 * x2 * x3, a1 + x2 + x3);
                    total += ratio(x1 * a2 * a2 * x3, x1 + a2 + x3);
                    total += ratio(x1 * x2 * a3 * a3, x1 + x2 + a3);
                    total += ratio(a1 * a1 * a2 * x3 + a1 * a2 * a2 * x3, a1 + a2 + x3);
                    total += ratio(x1 * a2 * a2 * a3 + x1 * a2 * a3 * a3, x1 + a2 + a3);
                    total += ratio(a1 * a1 * x2 * a3 + a1 * x2 * a3 * a3, a1 + x2 + a3);
                }
            }
        }
        out.push((a, total));
    }

    // Intersections that are not themselves focal in any source.
    for &(set, m) in conj.entries() {
        if universe.binary_search(&set).is_err() {
            out.push((set, m));
        }
    }
    out.sort_unstable_by_key(|&(s, _)| s);
    MassFunction::validate(frame, out)
}
