//! Odometer walk over the cartesian product of the sources' focal lists.

use crate::mass::{FocalSet, MassFunction};

/// Calls `visit(indices, intersection, product)` for every tuple picking one
/// focal entry per source, in lexicographic order of the per-source indices
/// (equivalently of the per-source bitmasks, since entries are sorted).
///
/// Prefix intersections and products are cached per depth; the product is
/// always the left fold `m_0 * m_1 * ... * m_{s-1}`.
pub(crate) fn for_each_tuple<F>(sources: &[&MassFunction], mut visit: F)
where
    F: FnMut(&[usize], FocalSet, f64),
{
    let s = sources.len();
    if s == 0 || sources.iter().any(|m| m.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; s];
    let mut inter = vec![FocalSet::EMPTY; s];
    let mut prod = vec![0.0f64; s];

    let refill = |from: usize, idx: &[usize], inter: &mut [FocalSet], prod: &mut [f64]| {
        for d in from..s {
            let (set, m) = sources[d].entries()[idx[d]];
            if d == 0 {
                inter[0] = set;
                prod[0] = m;
            } else {
                inter[d] = inter[d - 1].intersect(set);
                prod[d] = prod[d - 1] * m;
            }
        }
    };
    refill(0, &idx, &mut inter, &mut prod);

    loop {
        visit(&idx, inter[s - 1], prod[s - 1]);
        let mut depth = s;
        loop {
            if depth == 0 {
                return;
            }
            depth -= 1;
            idx[depth] += 1;
            if idx[depth] < sources[depth].len() {
                break;
            }
            idx[depth] = 0;
        }
        refill(depth, &idx, &mut inter, &mut prod);
    }
}
