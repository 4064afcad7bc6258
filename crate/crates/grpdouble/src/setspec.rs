//! Set specs on the command line: an explicit index list, `gen:` for the
//! subgroup generated by a list, or `random:<k>:<seed>` for a seeded
//! k-element draw.

use crate::rng::SplitMix64;
use anyhow::{bail, Context, Result};
use grpdouble_core::{Group, Subset};
use std::sync::Arc;

fn parse_indices(group: &Arc<Group>, list: &str, what: &str) -> Result<Subset> {
    let mut set = Subset::empty(group);
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            bail!("empty entry in {what} list {list:?}");
        }
        let idx: usize = part
            .parse()
            .with_context(|| format!("bad index {part:?} in {what} list"))?;
        if idx >= group.order() {
            bail!(
                "index {idx} out of range for {} of order {}",
                group.label(),
                group.order()
            );
        }
        set.insert(group.element(idx)?);
    }
    Ok(set)
}

/// Parses a set spec against a built group.
pub fn parse_set_spec(group: &Arc<Group>, spec: &str) -> Result<Subset> {
    let spec = spec.trim();
    if spec.is_empty() {
        bail!("empty set spec");
    }
    if let Some(rest) = spec.strip_prefix("gen:") {
        let generators = parse_indices(group, rest, "generator")?;
        if generators.is_empty() {
            bail!("gen: needs at least one generator");
        }
        return Ok(generators.closure()?);
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let (k, seed) = rest
            .split_once(':')
            .with_context(|| format!("random spec {spec:?} needs random:<k>:<seed>"))?;
        let k: usize = k.trim().parse().context("bad k in random spec")?;
        let seed: u64 = seed.trim().parse().context("bad seed in random spec")?;
        if k == 0 {
            bail!("random spec needs k >= 1");
        }
        if k > group.order() {
            bail!(
                "random spec asks for {k} elements from {} of order {}",
                group.label(),
                group.order()
            );
        }
        let mut rng = SplitMix64::new(seed);
        let mut set = Subset::empty(group);
        while set.len() < k {
            let idx = rng.below(group.order() as u64) as usize;
            set.insert(group.element(idx)?);
        }
        return Ok(set);
    }
    let set = parse_indices(group, spec, "index")?;
    if set.is_empty() {
        bail!("set spec {spec:?} produced an empty set");
    }
    Ok(set)
}
