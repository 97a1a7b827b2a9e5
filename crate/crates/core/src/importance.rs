//! Source importance by repeated fusion.
//!
//! A source twice as important as another is fused twice. Repetition counts
//! are reduced by their gcd first, so weights (4, 6) and (2, 3) produce the
//! same source list.

use std::fmt;

use crate::conjunctive::{conjunctive_combine, ConjunctiveResult};
use crate::error::{FusionError, Result};
use crate::mass::{shared_frame, MassFunction};
use crate::pcr::{self, PcrRule, DEFAULT_SOURCE_CAP};

/// A source paired with its integer repetition count.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSource {
    mass: MassFunction,
    weight: u32,
}

impl WeightedSource {
    pub fn new(mass: MassFunction, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(FusionError::ZeroWeight);
        }
        Ok(Self { mass, weight })
    }

    pub fn mass(&self) -> &MassFunction {
        &self.mass
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionRule {
    Conjunctive,
    Pcr5,
    Pcr6,
}

impl FusionRule {
    pub fn as_pcr(self) -> Option<PcrRule> {
        match self {
            FusionRule::Conjunctive => None,
            FusionRule::Pcr5 => Some(PcrRule::Pcr5),
            FusionRule::Pcr6 => Some(PcrRule::Pcr6),
        }
    }
}

impl From<PcrRule> for FusionRule {
    fn from(rule: PcrRule) -> Self {
        match rule {
            PcrRule::Pcr5 => FusionRule::Pcr5,
            PcrRule::Pcr6 => FusionRule::Pcr6,
        }
    }
}

impl fmt::Display for FusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_pcr() {
            Some(rule) => rule.fmt(f),
            None => f.write_str("conjunctive"),
        }
    }
}

/// Result of [`fuse_with_importance`]: the conjunctive rule keeps its
/// conflict, the PCR rules return a normalized mass function.
#[derive(Debug, Clone, PartialEq)]
pub enum Fused {
    Conjunctive(ConjunctiveResult),
    Redistributed(MassFunction),
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides every weight by the gcd of the whole list.
pub fn reduce_weights(weights: &[u32]) -> Result<Vec<u32>> {
    if weights.contains(&0) {
        return Err(FusionError::ZeroWeight);
    }
    let g = weights.iter().copied().fold(0, gcd);
    Ok(weights.iter().map(|w| w / g.max(1)).collect())
}

/// Expands gcd-reduced weights into a flat source list, keeping input order:
/// `[(m1, 1), (m2, 2)]` becomes `[m1, m2, m2]`.
pub fn expand(sources: &[WeightedSource], cap: usize) -> Result<Vec<MassFunction>> {
    let weights: Vec<u32> = sources.iter().map(WeightedSource::weight).collect();
    let reduced = reduce_weights(&weights)?;
    let total: u64 = reduced.iter().map(|&w| u64::from(w)).sum();
    if total < 2 {
        return Err(FusionError::TooFewSources {
            required: 2,
            got: total as usize,
        });
    }
    if total > cap as u64 {
        return Err(FusionError::TooManySources {
            got: usize::try_from(total).unwrap_or(usize::MAX),
            cap,
        });
    }
    Ok(sources
        .iter()
        .zip(reduced)
        .flat_map(|(s, w)| std::iter::repeat_n(s.mass.clone(), w as usize))
        .collect())
}

pub fn fuse_with_importance(sources: &[WeightedSource], rule: FusionRule) -> Result<Fused> {
    fuse_with_importance_capped(sources, rule, DEFAULT_SOURCE_CAP)
}

pub fn fuse_with_importance_capped(
    sources: &[WeightedSource],
    rule: FusionRule,
    cap: usize,
) -> Result<Fused> {
    let masses: Vec<MassFunction> = sources.iter().map(|s| s.mass.clone()).collect();
    shared_frame(&masses)?;
    let expanded = expand(sources, cap)?;
    match rule.as_pcr() {
        None => conjunctive_combine(&expanded).map(Fused::Conjunctive),
        Some(pcr_rule) => pcr::fuse(&expanded, pcr_rule, cap).map(Fused::Redistributed),
    }
}

/// One point of a convergence profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePoint {
    /// Number of times the repeated source was fused.
    pub k: u32,
    pub fused: MassFunction,
    /// Max distance from `fused` to the repeated source.
    pub distance: f64,
}

/// Fuses `base` once with `repeated` k times for k = 1..=k_max, without gcd
/// reduction, and measures how close each result is to `repeated`.
pub fn convergence_profile(
    base: &MassFunction,
    repeated: &MassFunction,
    rule: PcrRule,
    k_max: u32,
) -> Result<Vec<ProfilePoint>> {
    convergence_profile_capped(base, repeated, rule, k_max, DEFAULT_SOURCE_CAP)
}

pub fn convergence_profile_capped(
    base: &MassFunction,
    repeated: &MassFunction,
    rule: PcrRule,
    k_max: u32,
    cap: usize,
) -> Result<Vec<ProfilePoint>> {
    if base.frame() != repeated.frame() {
        return Err(FusionError::FrameMismatch);
    }
    let total = u64::from(k_max) + 1;
    if total > cap as u64 {
        return Err(FusionError::TooManySources {
            got: usize::try_from(total).unwrap_or(usize::MAX),
            cap,
        });
    }
    if k_max == 0 {
        return Err(FusionError::TooFewSources {
            required: 2,
            got: 1,
        });
    }
    let mut sources = vec![base.clone()];
    let mut profile = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        sources.push(repeated.clone());
        let fused = pcr::fuse(&sources, rule, cap)?;
        let distance = fused.max_distance(repeated)?;
        profile.push(ProfilePoint { k, fused, distance });
    }
    Ok(profile)
}
