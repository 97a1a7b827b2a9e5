//! Frames, focal sets and mass functions under the Shafer model.
//!
//! Singletons of a [`Frame`] are mutually exclusive, so a subset of the frame
//! is a bitmask and intersection is bitwise AND. Every collection of focal
//! sets in this crate is kept in ascending bitmask order; iteration, summation
//! and output all follow that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{FusionError, Result};

/// Tolerance on the sum of input masses.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// Largest supported frame: one machine word of bitmask.
pub const MAX_FRAME_SIZE: usize = 64;

/// Ordered list of mutually exclusive hypotheses.
///
/// The position of a name fixes its bit in every [`FocalSet`] over the frame.
/// Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    names: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(FusionError::EmptyFrame);
        }
        if names.len() > MAX_FRAME_SIZE {
            return Err(FusionError::FrameTooLarge(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(FusionError::EmptySingletonName);
            }
            if names[..i].contains(name) {
                return Err(FusionError::DuplicateSingleton(name.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The whole frame Θ (total ignorance).
    pub fn full(&self) -> FocalSet {
        FocalSet(mask_for(self.len()))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn singleton(&self, name: &str) -> Option<FocalSet> {
        self.index_of(name).map(|i| FocalSet(1 << i))
    }

    /// Builds the union of the named singletons.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<FocalSet> {
        let mut bits = 0u64;
        for name in names {
            let name = name.as_ref();
            let i = self
                .index_of(name)
                .ok_or_else(|| FusionError::UnknownSingleton(name.to_owned()))?;
            bits |= 1 << i;
        }
        Ok(FocalSet(bits))
    }

    pub fn contains_set(&self, set: FocalSet) -> bool {
        set.0 & !mask_for(self.len()) == 0
    }

    /// Renders a set as its singleton names in frame order joined by `|`.
    /// The empty set renders as `∅`.
    pub fn format_set(&self, set: FocalSet) -> String {
        if set.is_empty() {
            return "∅".to_owned();
        }
        set.indices()
            .map(|i| self.names.get(i).map(String::as_str).unwrap_or("?"))
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

fn mask_for(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A subset of a frame, stored as a bitmask over its singletons.
///
/// Ordering is by raw bitmask value, which is the canonical order used
/// throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FocalSet(u64);

impl FocalSet {
    pub const EMPTY: FocalSet = FocalSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn intersect(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }

    pub const fn union(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 | other.0)
    }

    pub const fn is_subset_of(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    /// Indices of the singletons in the set, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }
}

impl fmt::Debug for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FocalSet({:#b})", self.0)
    }
}

/// Joint intersection of `sets`. Returns `None` only for an empty slice; an
/// empty intersection is reported as [`FocalSet::EMPTY`].
pub fn intersect_all(sets: &[FocalSet]) -> Option<FocalSet> {
    let (first, rest) = sets.split_first()?;
    Some(rest.iter().fold(*first, |acc, s| acc.intersect(*s)))
}

/// A basic belief assignment in canonical form.
///
/// Entries are sorted by ascending bitmask, carry strictly positive mass,
/// never include the empty set, and sum to 1 within [`MASS_SUM_TOLERANCE`].
#[derive(Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: Vec<(FocalSet, f64)>,
}

impl MassFunction {
    /// Validates raw `(set, mass)` pairs and brings them into canonical form.
    ///
    /// Duplicate sets are merged by summation and zero entries are dropped.
    pub fn validate<I>(frame: &Frame, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut merged: BTreeMap<FocalSet, f64> = BTreeMap::new();
        for (set, mass) in raw {
            if !frame.contains_set(set) {
                return Err(FusionError::OutOfFrame {
                    bits: set.bits(),
                    frame_len: frame.len(),
                });
            }
            if set.is_empty() {
                return Err(FusionError::EmptyFocalSet);
            }
            if !mass.is_finite() {
                return Err(FusionError::NonFiniteMass {
                    set: frame.format_set(set),
                });
            }
            if mass < 0.0 {
                return Err(FusionError::NegativeMass {
                    set: frame.format_set(set),
                    mass,
                });
            }
            *merged.entry(set).or_insert(0.0) += mass;
        }
        let masses: Vec<(FocalSet, f64)> = merged.into_iter().filter(|&(_, m)| m != 0.0).collect();
        let sum: f64 = masses.iter().map(|&(_, m)| m).sum();
        if (sum - 1.0).abs() > MASS_SUM_TOLERANCE {
            return Err(FusionError::NonUnitSum { sum });
        }
        Ok(Self {
            frame: frame.clone(),
            masses,
        })
    }

    /// Convenience constructor keyed by `|`-joined singleton names.
    pub fn from_named(frame: &Frame, entries: &[(&str, f64)]) -> Result<Self> {
        let raw = entries
            .iter()
            .map(|&(key, mass)| {
                let names: Vec<&str> = key.split('|').collect();
                frame.set_of(&names).map(|set| (set, mass))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::validate(frame, raw)
    }

    /// Mass 1 on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            masses: vec![(frame.full(), 1.0)],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Entries in ascending bitmask order.
    pub fn entries(&self) -> &[(FocalSet, f64)] {
        &self.masses
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = FocalSet> + '_ {
        self.masses.iter().map(|&(s, _)| s)
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Mass of `set`; absent entries read as 0.
    pub fn mass(&self, set: FocalSet) -> f64 {
        lookup(&self.masses, set)
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().map(|&(_, m)| m).sum()
    }

    /// Classical reliability discounting with factor `alpha`.
    pub fn discount(&self, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(FusionError::AlphaOutOfRange(alpha));
        }
        let theta = self.frame.full();
        let mut raw: Vec<(FocalSet, f64)> = self
            .masses
            .iter()
            .map(|&(set, m)| {
                if set == theta {
                    (set, alpha * m + (1.0 - alpha))
                } else {
                    (set, alpha * m)
                }
            })
            .collect();
        if self.mass(theta) == 0.0 {
            raw.push((theta, 1.0 - alpha));
        }
        Self::validate(&self.frame, raw)
    }

    /// Largest absolute mass difference over the union of focal sets.
    pub fn max_distance(&self, other: &MassFunction) -> Result<f64> {
        if self.frame != other.frame {
            return Err(FusionError::FrameMismatch);
        }
        Ok(max_gap(&self.masses, &other.masses))
    }

    /// Builds a mass function from entries already known to be canonical
    /// apart from the sum check, which is still enforced.
    pub(crate) fn from_sorted(frame: &Frame, masses: Vec<(FocalSet, f64)>) -> Result<Self> {
        debug_assert!(masses.windows(2).all(|w| w[0].0 < w[1].0));
        Self::validate(frame, masses)
    }

    /// Total order on mass functions over the same frame, used to fix a
    /// canonical source order before enumeration.
    pub(crate) fn canonical_cmp(&self, other: &MassFunction) -> Ordering {
        let lhs = self.masses.iter().map(|&(s, m)| (s, m.to_bits()));
        let rhs = other.masses.iter().map(|&(s, m)| (s, m.to_bits()));
        lhs.cmp(rhs)
    }
}

impl fmt::Debug for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for &(set, m) in &self.masses {
            map.entry(&self.frame.format_set(set), &m);
        }
        map.finish()
    }
}

pub(crate) fn lookup(masses: &[(FocalSet, f64)], set: FocalSet) -> f64 {
    masses
        .binary_search_by_key(&set, |&(s, _)| s)
        .map(|i| masses[i].1)
        .unwrap_or(0.0)
}

/// Max of `|a(X) - b(X)|` over two sorted entry lists, merging in order.
pub(crate) fn max_gap(a: &[(FocalSet, f64)], b: &[(FocalSet, f64)]) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut gap = 0.0f64;
    while i < a.len() || j < b.len() {
        let d = match (a.get(i), b.get(j)) {
            (Some(&(sa, ma)), Some(&(sb, mb))) => match sa.cmp(&sb) {
                Ordering::Less => {
                    i += 1;
                    ma
                }
                Ordering::Greater => {
                    j += 1;
                    mb
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (ma - mb).abs()
                }
            },
            (Some(&(_, ma)), None) => {
                i += 1;
                ma
            }
            (None, Some(&(_, mb))) => {
                j += 1;
                mb
            }
            (None, None) => unreachable!(),
        };
        gap = gap.max(d);
    }
    gap
}

/// Checks that every source shares the frame of the first one.
pub(crate) fn shared_frame(sources: &[MassFunction]) -> Result<&Frame> {
    let (first, rest) = sources.split_first().ok_or(FusionError::EmptySourceList)?;
    if rest.iter().any(|m| m.frame != first.frame) {
        return Err(FusionError::FrameMismatch);
    }
    Ok(&first.frame)
}
