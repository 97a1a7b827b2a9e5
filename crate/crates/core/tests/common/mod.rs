//! Shared fixtures and the brute-force fusion oracle.
//!
//! The oracle materializes every tuple as an explicit record (conflicting or
//! not) by recursive expansion, resolves each record on its own, and folds
//! the per-set contributions with Neumaier compensated summation. It uses
//! only the public accessors of `MassFunction`, never the engine's
//! enumeration or grouping code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use pcr_core::{FocalSet, Frame, MassFunction};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::Rng;

pub fn ref_frame() -> Frame {
    Frame::new(["A", "B"]).unwrap()
}

pub fn ref_m1() -> MassFunction {
    MassFunction::from_named(&ref_frame(), &[("A", 0.1), ("B", 0.7), ("A|B", 0.2)]).unwrap()
}

pub fn ref_m2() -> MassFunction {
    MassFunction::from_named(&ref_frame(), &[("A", 0.4), ("B", 0.1), ("A|B", 0.5)]).unwrap()
}

pub const A: FocalSet = FocalSet::from_bits(0b01);
pub const B: FocalSet = FocalSet::from_bits(0b10);
pub const AB: FocalSet = FocalSet::from_bits(0b11);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleRule {
    Conjunctive,
    Pcr5,
    Pcr6,
}

struct Record {
    sets: Vec<u64>,
    masses: Vec<f64>,
}

fn expand_records(sources: &[MassFunction], prefix: &mut Record, out: &mut Vec<Record>) {
    let depth = prefix.sets.len();
    if depth == sources.len() {
        out.push(Record {
            sets: prefix.sets.clone(),
            masses: prefix.masses.clone(),
        });
        return;
    }
    for &(set, mass) in sources[depth].entries() {
        prefix.sets.push(set.bits());
        prefix.masses.push(mass);
        expand_records(sources, prefix, out);
        prefix.sets.pop();
        prefix.masses.pop();
    }
}

/// Neumaier compensated sum.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Fused masses by set bits; under `Conjunctive` the empty set (key 0)
/// carries the conflict.
pub fn oracle_fuse(sources: &[MassFunction], rule: OracleRule) -> BTreeMap<u64, f64> {
    let mut records = Vec::new();
    let mut prefix = Record {
        sets: Vec::new(),
        masses: Vec::new(),
    };
    expand_records(sources, &mut prefix, &mut records);

    let mut contributions: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for r in &records {
        let product: f64 = r.masses.iter().product();
        let joint = r.sets.iter().fold(u64::MAX, |acc, s| acc & s);
        if joint != 0 {
            contributions.entry(joint).or_default().push(product);
            continue;
        }
        if rule == OracleRule::Conjunctive {
            contributions.entry(0).or_default().push(product);
            continue;
        }
        let mut distinct: Vec<u64> = r.sets.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let weight_of = |set: u64| -> f64 {
            let members = r
                .sets
                .iter()
                .zip(&r.masses)
                .filter(|(s, _)| **s == set)
                .map(|(_, m)| *m);
            match rule {
                OracleRule::Pcr5 => members.product(),
                _ => members.sum(),
            }
        };
        let weights: Vec<f64> = distinct.iter().map(|&s| weight_of(s)).collect();
        let denom = compensated_sum(&weights);
        for (&set, &w) in distinct.iter().zip(&weights) {
            contributions
                .entry(set)
                .or_default()
                .push(product * (w / denom));
        }
    }
    contributions
        .into_iter()
        .map(|(set, parts)| (set, compensated_sum(&parts)))
        .collect()
}

/// Largest per-set gap between a mass function and an oracle result, ignoring
/// the oracle's empty-set entry.
pub fn gap_to_oracle(m: &MassFunction, oracle: &BTreeMap<u64, f64>) -> f64 {
    let mut gap = 0.0f64;
    for (&bits, &v) in oracle {
        if bits != 0 {
            gap = gap.max((m.mass(FocalSet::from_bits(bits)) - v).abs());
        }
    }
    for &(set, v) in m.entries() {
        if !oracle.contains_key(&set.bits()) {
            gap = gap.max(v);
        }
    }
    gap
}

/// Random mass function over a frame of `frame_len` singletons with
/// `n_focal` distinct focal sets and strictly positive masses.
pub fn random_source(rng: &mut StdRng, frame: &Frame, n_focal: usize) -> MassFunction {
    let n_sets = (1usize << frame.len()) - 1;
    let picks = sample(rng, n_sets, n_focal.min(n_sets));
    let weights: Vec<f64> = (0..picks.len()).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let raw = picks
        .iter()
        .zip(&weights)
        .map(|(i, w)| (FocalSet::from_bits(i as u64 + 1), w / total));
    MassFunction::validate(frame, raw).unwrap()
}

pub fn random_frame(rng: &mut StdRng) -> Frame {
    let len = rng.gen_range(2..=4);
    Frame::new((0..len).map(|i| format!("h{i}"))).unwrap()
}

/// `count` sources over one random frame of 2–4 singletons, each with 2–4
/// focal sets.
pub fn random_instance(rng: &mut StdRng, count: usize) -> Vec<MassFunction> {
    let frame = random_frame(rng);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            random_source(rng, &frame, n)
        })
        .collect()
}

pub fn max_entry_gap(a: &MassFunction, b: &MassFunction) -> f64 {
    a.max_distance(b).unwrap()
}
