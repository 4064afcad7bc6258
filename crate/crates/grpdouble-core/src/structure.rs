//! Detectors that turn small doubling into explicit coset structure.
//!
//! Each detector measures its inequalities exactly and reports them; a
//! failed inequality is data, not an error. Searches over subgroups run in
//! increasing size order, so the witness returned is always a smallest one,
//! and fixed points like subgroups themselves come back unchanged.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::convolve::indicator_convolution;
use crate::group::Element;
use crate::subset::{enumerate_subgroups, Subset};
use crate::{Error, Rational, Result};

/// Which structural statement a witness certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremTag {
    /// Symmetric periodicity: D·H = D and |D| ≥ 2|AH| − |H| for D = AA⁻¹
    /// in an abelian group.
    Kneser,
    /// A⁻¹HA = A⁻¹A together with |A⁻¹A| ≥ 2|HA| − |H|.
    Hamidoune1,
    /// AHA⁻¹ = AA⁻¹ together with |AA⁻¹| ≥ 2|AH| − |H|.
    Hamidoune2,
    /// Doubling below 3/2 forces A into a single coset of A⁻¹A.
    Freiman,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TheoremTag::Kneser => "kneser",
            TheoremTag::Hamidoune1 => "hamidoune-1",
            TheoremTag::Hamidoune2 => "hamidoune-2",
            TheoremTag::Freiman => "freiman",
        };
        write!(f, "{name}")
    }
}

/// One verified inequality or set identity: the claim text, both measured
/// sides, and whether it held. Set identities record the two set sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCheck {
    /// Human-readable statement of what was compared.
    pub claim: String,
    /// Measured left side.
    pub left: Rational,
    /// Measured right side.
    pub right: Rational,
    /// Whether the claim held.
    pub pass: bool,
}

impl WitnessCheck {
    fn sizes(claim: &str, left: usize, right: usize, pass: bool) -> WitnessCheck {
        WitnessCheck {
            claim: String::from(claim),
            left: crate::ratio_int(left as u64),
            right: crate::ratio_int(right as u64),
            pass,
        }
    }
}

/// A structural witness: the subgroup found, tagged with the statement it
/// certifies, and the checks that back it. When `found` is false no
/// subgroup passed, which refutes the statement for this input.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    /// Statement certified.
    pub theorem: TheoremTag,
    /// Whether some subgroup passed every check.
    pub found: bool,
    /// The witness subgroup, when found.
    pub subgroup: Option<Subset>,
    /// The checks recorded for the returned subgroup.
    pub checks: Vec<WitnessCheck>,
}

/// Outcome of the sub-3/2 coset test.
#[derive(Clone, Debug, PartialEq)]
pub enum FreimanOutcome {
    /// |AA⁻¹| ≥ (3/2)|A|; the statement says nothing here.
    NotApplicable {
        /// The measured doubling ratio.
        ratio: Rational,
    },
    /// H = A⁻¹A is a subgroup of size at most |AA⁻¹| containing A in the
    /// single coset of the representative.
    Found {
        /// The subgroup A⁻¹A.
        subgroup: Subset,
        /// Representative with A ⊆ aH; the smallest element of A.
        representative: Element,
        /// The measured doubling ratio.
        ratio: Rational,
    },
    /// A check failed below the threshold, which would falsify the
    /// statement; the detail says which one.
    Refuted {
        /// The candidate A⁻¹A that failed.
        candidate: Subset,
        /// The measured doubling ratio.
        ratio: Rational,
        /// Which check failed.
        detail: String,
    },
}

/// Tests whether doubling strictly below 3/2 collapses A into one coset of
/// H = A⁻¹A. The threshold comparison is the integer test
/// 2|AA⁻¹| < 3|A|.
pub fn freiman_coset(a: &Subset) -> Result<FreimanOutcome> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let inv = a.inverse();
    let right = a.product(&inv)?;
    let ratio = Rational::new((right.len() as u64).into(), (a.len() as u64).into());
    if 2 * right.len() >= 3 * a.len() {
        return Ok(FreimanOutcome::NotApplicable { ratio });
    }
    let h = inv.product(a)?;
    if !h.is_subgroup() {
        return Ok(FreimanOutcome::Refuted {
            candidate: h,
            ratio,
            detail: String::from("A⁻¹A is not closed under products"),
        });
    }
    let representative = a.elements().next().expect("A is non-empty");
    if !a.is_subset_of(&h.translate(representative))? {
        return Ok(FreimanOutcome::Refuted {
            candidate: h,
            ratio,
            detail: String::from("A is not contained in one left coset of A⁻¹A"),
        });
    }
    // |H| ≤ K|A| with K = |AA⁻¹|/|A| is exactly |H| ≤ |AA⁻¹|.
    if h.len() > right.len() {
        return Ok(FreimanOutcome::Refuted {
            candidate: h,
            ratio,
            detail: String::from("|A⁻¹A| exceeds |AA⁻¹|"),
        });
    }
    Ok(FreimanOutcome::Found {
        subgroup: h,
        representative,
        ratio,
    })
}

/// Pointwise floor of the difference-set convolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpReport {
    /// min over x ∈ A⁻¹A of 1_{A⁻¹} ∗ 1_A(x).
    pub min_value: u64,
    /// 2|A| − |AA⁻¹|, which may be negative.
    pub bound: i64,
    /// min_value ≥ bound.
    pub pass: bool,
}

/// Checks that 1_{A⁻¹} ∗ 1_A is at least 2|A| − |AA⁻¹| everywhere on its
/// support A⁻¹A: the convolution cannot take small non-zero values.
pub fn jump_check(a: &Subset) -> Result<JumpReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let inv = a.inverse();
    let counts = indicator_convolution(&inv, a)?;
    let support = inv.product(a)?;
    let min_value = support
        .elements()
        .map(|x| counts[x.index()])
        .min()
        .expect("support of a non-empty set is non-empty");
    let product_size = a.product(&inv)?.len();
    let bound = 2 * a.len() as i64 - product_size as i64;
    Ok(JumpReport {
        min_value,
        bound,
        pass: min_value as i64 >= bound,
    })
}

/// One Pareto-optimal covering: A fits inside `r` left cosets of
/// `subgroup`, witnessed by the representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontierEntry {
    /// The covering subgroup H.
    pub subgroup: Subset,
    /// Number of left cosets of H needed.
    pub r: usize,
    /// Representatives, one per coset used: A ⊆ ∪ xH over these x.
    pub representatives: Vec<Element>,
}

/// The (|H|, R) covering trade-off for one set: every subgroup is traced
/// and only the Pareto-optimal points survive.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringFrontier {
    /// Entries in increasing |H|, hence strictly decreasing R.
    pub entries: Vec<FrontierEntry>,
}

impl CoveringFrontier {
    /// Smallest-subgroup entry satisfying both bounds, if any.
    pub fn entry_within(&self, r_bound: &Rational, h_size_bound: usize) -> Option<&FrontierEntry> {
        self.entries.iter().find(|e| {
            e.subgroup.len() <= h_size_bound && &crate::ratio_int(e.r as u64) <= r_bound
        })
    }
}

/// Traces A against every subgroup and keeps the Pareto frontier in
/// (|H|, number of cosets). Propagates the enumeration cap error on groups
/// with more subgroups than the default cap.
pub fn covering_frontier(a: &Subset) -> Result<CoveringFrontier> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    covering_frontier_among(a, &enumerate_subgroups(a.group())?)
}

/// [`covering_frontier`] over a caller-supplied subgroup list, so sweeps
/// can enumerate a group once and trace many sets. The list must be sorted
/// in increasing size, as [`enumerate_subgroups`] returns it.
pub fn covering_frontier_among(a: &Subset, subgroups: &[Subset]) -> Result<CoveringFrontier> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut entries: Vec<FrontierEntry> = Vec::new();
    let mut best_r = usize::MAX;
    // Subgroups arrive sorted by size, so keeping strict improvements in R
    // is the Pareto filter, except that a same-size subgroup improving R
    // again dominates the entry just pushed.
    for h in subgroups {
        let trace = a.coset_trace(h)?;
        if trace.r() < best_r {
            best_r = trace.r();
            while entries.last().is_some_and(|e| e.subgroup.len() == h.len()) {
                entries.pop();
            }
            entries.push(FrontierEntry {
                r: trace.r(),
                representatives: trace.representatives,
                subgroup: h.clone(),
            });
        }
    }
    Ok(CoveringFrontier { entries })
}

/// Finds the smallest subgroup H with D·H = D and |D| ≥ 2|A·H| − |H|,
/// where D = AA⁻¹. Abelian groups only; D·H ⊇ D always holds, so the
/// stabilizer condition is the early-exit check D·H ⊆ D.
pub fn kneser_witness(a: &Subset) -> Result<WitnessReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    kneser_witness_among(a, &enumerate_subgroups(a.group())?)
}

/// [`kneser_witness`] over a caller-supplied subgroup list (sorted in
/// increasing size), for sweeps that test many sets against one group.
pub fn kneser_witness_among(a: &Subset, subgroups: &[Subset]) -> Result<WitnessReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if !a.group().is_abelian() {
        return Err(Error::NonAbelian);
    }
    let d = a.product(&a.inverse())?;
    for h in subgroups {
        if !d.product_stays_within(h, &d) {
            continue;
        }
        let ah = a.product(h)?;
        let rhs = 2 * ah.len() - h.len();
        if d.len() >= rhs {
            return Ok(WitnessReport {
                theorem: TheoremTag::Kneser,
                found: true,
                checks: alloc::vec![
                    WitnessCheck::sizes("DH = D for D = AA^-1", d.len(), d.len(), true),
                    WitnessCheck::sizes("|D| >= 2|AH| - |H|", d.len(), rhs, true),
                ],
                subgroup: Some(h.clone()),
            });
        }
    }
    Ok(WitnessReport {
        theorem: TheoremTag::Kneser,
        found: false,
        subgroup: None,
        checks: Vec::new(),
    })
}

/// Finds the smallest subgroup H certifying one of the two periodicity
/// statements: A⁻¹HA = A⁻¹A with |A⁻¹A| ≥ 2|HA| − |H|, or
/// AHA⁻¹ = AA⁻¹ with |AA⁻¹| ≥ 2|AH| − |H|. For each H the first branch
/// is tested first.
pub fn hamidoune_witness(a: &Subset) -> Result<WitnessReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    hamidoune_witness_among(a, &enumerate_subgroups(a.group())?)
}

/// [`hamidoune_witness`] over a caller-supplied subgroup list (sorted in
/// increasing size), for sweeps that test many sets against one group.
pub fn hamidoune_witness_among(a: &Subset, subgroups: &[Subset]) -> Result<WitnessReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let inv = a.inverse();
    let d1 = inv.product(a)?;
    let d2 = a.product(&inv)?;
    for h in subgroups {
        // |A⁻¹H| = |HA| via the inverse bijection, so the branch-1 size
        // comes out of the set already built for the identity check.
        let left1 = inv.product(h)?;
        if left1.product_stays_within(a, &d1) {
            let rhs = 2 * left1.len() - h.len();
            if d1.len() >= rhs {
                return Ok(WitnessReport {
                    theorem: TheoremTag::Hamidoune1,
                    found: true,
                    checks: alloc::vec![
                        WitnessCheck::sizes("A^-1 H A = A^-1 A", d1.len(), d1.len(), true),
                        WitnessCheck::sizes("|A^-1 A| >= 2|HA| - |H|", d1.len(), rhs, true),
                    ],
                    subgroup: Some(h.clone()),
                });
            }
        }
        let left2 = a.product(h)?;
        if left2.product_stays_within(&inv, &d2) {
            let rhs = 2 * left2.len() - h.len();
            if d2.len() >= rhs {
                return Ok(WitnessReport {
                    theorem: TheoremTag::Hamidoune2,
                    found: true,
                    checks: alloc::vec![
                        WitnessCheck::sizes("A H A^-1 = A A^-1", d2.len(), d2.len(), true),
                        WitnessCheck::sizes("|A A^-1| >= 2|AH| - |H|", d2.len(), rhs, true),
                    ],
                    subgroup: Some(h.clone()),
                });
            }
        }
    }
    Ok(WitnessReport {
        theorem: TheoremTag::Hamidoune2,
        found: false,
        subgroup: None,
        checks: Vec::new(),
    })
}

/// Outcome of the covering-bound consequence check.
#[derive(Clone, Debug, PartialEq)]
pub enum CoveringBound {
    /// Doubling ratio ≥ 2 leaves ε ≤ 0, so the bounds say nothing.
    NotApplicable {
        /// The measured doubling ratio.
        ratio: Rational,
    },
    /// No subgroup passed either periodicity branch, which would falsify
    /// the expected structure.
    NoWitness {
        /// The measured doubling ratio.
        ratio: Rational,
    },
    /// Bounds measured against a periodicity witness.
    Checked(CoveringBoundReport),
}

/// Measured covering bounds for ε = 2 − |AA⁻¹|/|A|.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringBoundReport {
    /// ε = 2 − ratio, strictly positive here.
    pub epsilon: Rational,
    /// The witness subgroup used.
    pub subgroup: Subset,
    /// Which periodicity branch supplied the subgroup.
    pub branch: TheoremTag,
    /// |H| and its required lower bound ε|A|.
    pub h_size: usize,
    /// ε|A|.
    pub h_bound: Rational,
    /// |H| ≥ ε|A|.
    pub h_pass: bool,
    /// Number of left cosets of H meeting A.
    pub r: usize,
    /// 2/ε − 1.
    pub r_bound: Rational,
    /// R ≤ 2/ε − 1.
    pub r_pass: bool,
}

impl CoveringBoundReport {
    /// Both measured bounds held.
    pub fn pass(&self) -> bool {
        self.h_pass && self.r_pass
    }
}

/// Checks the covering consequences of periodicity: with ε = 2 − ratio
/// positive, the witness subgroup satisfies |H| ≥ ε|A| and A meets at most
/// 2/ε − 1 of its left cosets. Prefers a branch-2 witness, whose cosets
/// are the ones traced, and falls back to whatever [`hamidoune_witness`]
/// found otherwise.
pub fn covering_bound_check(a: &Subset) -> Result<CoveringBound> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    covering_bound_check_among(a, &enumerate_subgroups(a.group())?)
}

/// [`covering_bound_check`] over a caller-supplied subgroup list (sorted
/// in increasing size), for sweeps that test many sets against one group.
pub fn covering_bound_check_among(a: &Subset, subgroups: &[Subset]) -> Result<CoveringBound> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let inv = a.inverse();
    let d2 = a.product(&inv)?;
    let ratio = Rational::new((d2.len() as u64).into(), (a.len() as u64).into());
    let two = Rational::from_integer(2.into());
    let epsilon = two.clone() - ratio.clone();
    if epsilon <= Rational::from_integer(0.into()) {
        return Ok(CoveringBound::NotApplicable { ratio });
    }

    let mut witness: Option<(Subset, TheoremTag)> = None;
    for h in subgroups {
        let left2 = a.product(h)?;
        if left2.product_stays_within(&inv, &d2) && d2.len() >= 2 * left2.len() - h.len() {
            witness = Some((h.clone(), TheoremTag::Hamidoune2));
            break;
        }
    }
    if witness.is_none() {
        let report = hamidoune_witness_among(a, subgroups)?;
        witness = report.subgroup.map(|h| (h, report.theorem));
    }
    let Some((subgroup, branch)) = witness else {
        return Ok(CoveringBound::NoWitness { ratio });
    };

    let trace = a.coset_trace(&subgroup)?;
    let h_bound = epsilon.clone() * crate::ratio_int(a.len() as u64);
    let h_size = subgroup.len();
    let r = trace.r();
    let r_bound = two / epsilon.clone() - Rational::one();
    Ok(CoveringBound::Checked(CoveringBoundReport {
        h_pass: crate::ratio_int(h_size as u64) >= h_bound,
        r_pass: crate::ratio_int(r as u64) <= r_bound,
        epsilon,
        subgroup,
        branch,
        h_size,
        h_bound,
        r,
        r_bound,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Group};
    use crate::ratio;
    use alloc::sync::Arc;
    use alloc::vec;

    fn arc(spec: &str) -> Arc<Group> {
        Arc::new(build_group(spec).unwrap())
    }

    fn set(g: &Arc<Group>, idx: &[usize]) -> Subset {
        Subset::from_indices(g, idx).unwrap()
    }

    #[test]
    fn freiman_finds_the_coset_for_a_subgroup_shift() {
        let g = arc("cyclic:6");
        let a = set(&g, &[1, 4]);
        match freiman_coset(&a).unwrap() {
            FreimanOutcome::Found { subgroup, representative, ratio } => {
                assert_eq!(subgroup.to_indices(), vec![0, 3]);
                assert_eq!(representative.index(), 1);
                assert_eq!(ratio, crate::ratio(1, 1));
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn freiman_fixture_z8() {
        let g = arc("cyclic:8");
        let a = set(&g, &[0, 2, 4]);
        match freiman_coset(&a).unwrap() {
            FreimanOutcome::Found { subgroup, representative, ratio } => {
                assert_eq!(subgroup.to_indices(), vec![0, 2, 4, 6]);
                assert_eq!(representative.index(), 0);
                assert_eq!(ratio, crate::ratio(4, 3));
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn freiman_threshold_is_strict() {
        let g = arc("cyclic:4");
        let a = set(&g, &[0, 1]);
        assert!(matches!(
            freiman_coset(&a).unwrap(),
            FreimanOutcome::NotApplicable { .. }
        ));
        assert!(freiman_coset(&Subset::empty(&g)).is_err());
    }

    #[test]
    fn freiman_never_refutes_on_small_groups() {
        for spec in ["cyclic:9", "dihedral:4", "quaternion:8"] {
            let g = arc(spec);
            let n = g.order();
            for mask in 1u64..(1 << n) {
                let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let a = set(&g, &idx);
                assert!(
                    !matches!(freiman_coset(&a).unwrap(), FreimanOutcome::Refuted { .. }),
                    "{spec} mask {mask:b}"
                );
            }
        }
    }

    #[test]
    fn jump_fixtures_hit_the_bound_exactly() {
        let g = arc("cyclic:4");
        let report = jump_check(&set(&g, &[0, 1])).unwrap();
        assert_eq!(report.min_value, 1);
        assert_eq!(report.bound, 1);
        assert!(report.pass);

        let g = arc("cyclic:8");
        let report = jump_check(&set(&g, &[0, 2, 4])).unwrap();
        assert_eq!(report.min_value, 2);
        assert_eq!(report.bound, 2);
        assert!(report.pass);
    }

    #[test]
    fn jump_bound_can_be_negative() {
        let g = arc("cyclic:7");
        let report = jump_check(&set(&g, &[0, 1, 3])).unwrap();
        assert_eq!(report.bound, 6 - 7);
        assert!(report.pass);
    }

    #[test]
    fn frontier_fixture_z4() {
        let g = arc("cyclic:4");
        let frontier = covering_frontier(&set(&g, &[0, 1])).unwrap();
        let shape: Vec<(usize, usize)> = frontier
            .entries
            .iter()
            .map(|e| (e.subgroup.len(), e.r))
            .collect();
        assert_eq!(shape, vec![(1, 2), (4, 1)]);
        for entry in &frontier.entries {
            let mut cover = Subset::empty(&g);
            for &rep in &entry.representatives {
                cover = cover.union(&entry.subgroup.translate(rep)).unwrap();
            }
            assert!(set(&g, &[0, 1]).is_subset_of(&cover).unwrap());
            assert_eq!(entry.representatives.len(), entry.r);
        }
    }

    #[test]
    fn frontier_is_pareto() {
        let g = arc("dihedral:4");
        let a = set(&g, &[0, 1, 5]);
        let frontier = covering_frontier(&a).unwrap();
        for pair in frontier.entries.windows(2) {
            assert!(pair[0].subgroup.len() < pair[1].subgroup.len());
            assert!(pair[0].r > pair[1].r);
        }
        assert!(covering_frontier(&Subset::empty(&g)).is_err());
    }

    #[test]
    fn kneser_fixture_two_cosets_of_z9() {
        let g = arc("cyclic:9");
        let a = set(&g, &[0, 1, 3, 4, 6, 7]);
        let report = kneser_witness(&a).unwrap();
        assert!(report.found);
        assert_eq!(report.subgroup.as_ref().unwrap().to_indices(), vec![0, 3, 6]);
        assert!(report.checks.iter().all(|c| c.pass));
        assert_eq!(report.checks[1].left, ratio(9, 1));
        assert_eq!(report.checks[1].right, ratio(9, 1));
    }

    #[test]
    fn kneser_trivial_and_subgroup_witnesses() {
        let g = arc("cyclic:4");
        let report = kneser_witness(&set(&g, &[0, 1])).unwrap();
        assert!(report.found);
        assert_eq!(report.subgroup.unwrap().len(), 1);

        let g = arc("cyclic:6");
        let a = set(&g, &[0, 2, 4]);
        let report = kneser_witness(&a).unwrap();
        assert_eq!(report.subgroup.unwrap().to_indices(), vec![0, 2, 4]);
    }

    #[test]
    fn kneser_requires_abelian() {
        let g = arc("dihedral:4");
        assert!(matches!(
            kneser_witness(&set(&g, &[0, 1])),
            Err(Error::NonAbelian)
        ));
    }

    #[test]
    fn hamidoune_prefers_branch_one_on_ties() {
        let g = arc("cyclic:4");
        let report = hamidoune_witness(&set(&g, &[0, 1])).unwrap();
        assert!(report.found);
        assert_eq!(report.theorem, TheoremTag::Hamidoune1);
        assert_eq!(report.subgroup.unwrap().len(), 1);
        assert!(report.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn hamidoune_on_rotation_segment_of_dihedral() {
        let g = arc("dihedral:4");
        let report = hamidoune_witness(&set(&g, &[0, 1])).unwrap();
        assert!(report.found);
        assert_eq!(report.subgroup.unwrap().len(), 1);
    }

    #[test]
    fn hamidoune_coset_pair_fixture() {
        let g = arc("cyclic:9");
        let report = hamidoune_witness(&set(&g, &[0, 1, 3, 4, 6, 7])).unwrap();
        assert!(report.found);
        assert_eq!(report.subgroup.unwrap().to_indices(), vec![0, 3, 6]);
        assert_eq!(report.theorem, TheoremTag::Hamidoune1);
    }

    #[test]
    fn covering_bound_fixture_z4() {
        let g = arc("cyclic:4");
        let CoveringBound::Checked(report) = covering_bound_check(&set(&g, &[0, 1])).unwrap()
        else {
            panic!("expected Checked");
        };
        assert_eq!(report.epsilon, ratio(1, 2));
        assert_eq!(report.branch, TheoremTag::Hamidoune2);
        assert_eq!(report.h_size, 1);
        assert_eq!(report.h_bound, ratio(1, 1));
        assert_eq!(report.r, 2);
        assert_eq!(report.r_bound, ratio(3, 1));
        assert!(report.pass());
    }

    #[test]
    fn covering_bound_fixture_z9() {
        let g = arc("cyclic:9");
        let CoveringBound::Checked(report) =
            covering_bound_check(&set(&g, &[0, 1, 3, 4, 6, 7])).unwrap()
        else {
            panic!("expected Checked");
        };
        assert_eq!(report.subgroup.to_indices(), vec![0, 3, 6]);
        assert_eq!(report.epsilon, ratio(1, 2));
        assert_eq!(report.h_size, 3);
        assert_eq!(report.r, 2);
        assert!(report.pass());
    }

    #[test]
    fn covering_bound_subgroup_is_tight() {
        let g = arc("cyclic:6");
        let CoveringBound::Checked(report) = covering_bound_check(&set(&g, &[0, 2, 4])).unwrap()
        else {
            panic!("expected Checked");
        };
        assert_eq!(report.epsilon, ratio(1, 1));
        assert_eq!(report.h_size, 3);
        assert_eq!(report.r, 1);
        assert_eq!(report.r_bound, ratio(1, 1));
        assert!(report.pass());
    }

    #[test]
    fn covering_bound_not_applicable_at_two() {
        let g = arc("cyclic:7");
        let outcome = covering_bound_check(&set(&g, &[0, 1, 3])).unwrap();
        assert!(matches!(outcome, CoveringBound::NotApplicable { .. }));
    }

    #[test]
    fn witnesses_error_on_empty_sets() {
        let g = arc("cyclic:4");
        let empty = Subset::empty(&g);
        assert!(kneser_witness(&empty).is_err());
        assert!(hamidoune_witness(&empty).is_err());
        assert!(jump_check(&empty).is_err());
        assert!(covering_bound_check(&empty).is_err());
    }
}
