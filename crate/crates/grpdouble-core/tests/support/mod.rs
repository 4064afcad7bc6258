//! Shared fixtures for the sweep suites: group corpora sized by order and a
//! small deterministic generator for sampled sweeps.
#![allow(dead_code)]

use grpdouble_core::{build_group, Group, Subset};
use std::sync::Arc;

/// Groups of order at most `max`, covering cyclic, dihedral, symmetric,
/// quaternion, and direct-product shapes.
pub fn corpus(max: usize) -> Vec<Arc<Group>> {
    let mut specs: Vec<String> = Vec::new();
    for n in 2..=max {
        specs.push(format!("cyclic:{n}"));
    }
    for n in 2..=max / 2 {
        specs.push(format!("dihedral:{n}"));
    }
    specs.push("symmetric:3".into());
    specs.push("symmetric:4".into());
    specs.push("quaternion:8".into());
    for p in [
        "product:cyclic:2,cyclic:2",
        "product:cyclic:2,cyclic:4",
        "product:cyclic:2,cyclic:6",
        "product:cyclic:2,cyclic:8",
        "product:cyclic:2,cyclic:10",
        "product:cyclic:2,cyclic:12",
        "product:cyclic:3,cyclic:3",
        "product:cyclic:3,cyclic:6",
        "product:cyclic:2,product:cyclic:2,cyclic:2",
        "product:cyclic:2,symmetric:3",
        "product:cyclic:4,cyclic:4",
        "product:cyclic:2,quaternion:8",
        "product:cyclic:2,dihedral:4",
    ] {
        specs.push(p.into());
    }
    let mut out: Vec<Arc<Group>> = specs
        .iter()
        .filter_map(|s| build_group(s).ok())
        .filter(|g| g.order() <= max)
        .map(Arc::new)
        .collect();
    out.sort_by_key(|g| g.order());
    out
}

/// The abelian slice of [`corpus`].
pub fn abelian_corpus(max: usize) -> Vec<Arc<Group>> {
    corpus(max).into_iter().filter(|g| g.is_abelian()).collect()
}

/// SplitMix64: the 64-bit state advances by the golden-gamma constant and
/// the output is a finalizer hash of the state.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value below `bound` by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Non-empty subset drawn from the low `order` bits of one generator step.
pub fn random_subset(group: &Arc<Group>, rng: &mut SplitMix64) -> Subset {
    let order = group.order();
    loop {
        let mut s = Subset::empty(group);
        for i in 0..order {
            if rng.next_u64() & 1 == 1 {
                s.insert(group.element(i).unwrap());
            }
        }
        if !s.is_empty() {
            return s;
        }
    }
}

/// The subset whose member indices are the set bits of `mask`.
pub fn mask_subset(group: &Arc<Group>, mask: u64) -> Subset {
    let mut s = Subset::empty(group);
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        s.insert(group.element(i).unwrap());
        m &= m - 1;
    }
    s
}
