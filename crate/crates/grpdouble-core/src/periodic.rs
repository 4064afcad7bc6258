//! Almost-periodicity machinery: power sets, the fourfold convolution, the
//! greedy approximate-period witness, smoothed continuity, and the analytic
//! pipeline that turns small doubling into an explicit coset cover.
//!
//! Every threshold here is an exact rational and every comparison is exact;
//! a pipeline step whose measured inequality fails marks the report failed
//! at that step rather than erroring out.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::convolve::{local_l2_sq, local_linf_distance, GroupFunction, GroupMeasure};
use crate::group::Element;
use crate::subset::{enumerate_subgroups_within, Subset, SUBGROUP_ENUM_CAP};
use crate::{ratio_int, Error, Rational, Result};

/// k-fold product set X^k under binary exponentiation, with the convention
/// X⁰ = {e}. Costs O(log k) product sets.
pub fn power_set(x: &Subset, k: u64) -> Result<Subset> {
    let group = x.group();
    if k == 0 {
        return Ok(Subset::singleton(group, group.identity()));
    }
    let mut base = x.clone();
    let mut acc: Option<Subset> = None;
    let mut k = k;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                Some(a) => a.product(&base)?,
                None => base.clone(),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = base.product(&base)?;
    }
    Ok(acc.expect("k >= 1 sets the accumulator"))
}

/// Integer values of (1_{A⁻¹} ∗ 1_A) ∗ (1_{A⁻¹} ∗ 1_A): the number of
/// quadruples (a,b,c,d) ∈ A⁴ with a⁻¹b c⁻¹d = x. Total mass is |A|⁴ and
/// the function is symmetric under inversion.
pub(crate) fn fourfold_counts(a: &Subset) -> Result<Vec<u64>> {
    let c = crate::convolve::indicator_convolution(&a.inverse(), a)?;
    let group = a.group();
    let n = group.order();
    let mut g = alloc::vec![0u64; n];
    for y in 0..n {
        if c[y] == 0 {
            continue;
        }
        let row = group.mul_row(y);
        for z in 0..n {
            if c[z] == 0 {
                continue;
            }
            g[row[z] as usize] += c[y] * c[z];
        }
    }
    Ok(g)
}

/// The fourfold convolution of A as an exact function; see
/// [`fourfold_counts`] for the combinatorial meaning.
pub fn fourfold(a: &Subset) -> Result<GroupFunction> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let counts = fourfold_counts(a)?;
    let values = counts.iter().map(|&v| ratio_int(v)).collect();
    GroupFunction::from_values(a.group(), values)
}

/// Greedy approximate-period witness: a symmetric set X containing the
/// identity whose k-fold products stay where the fourfold convolution is
/// large.
#[derive(Clone, Debug)]
pub struct CsWitness {
    /// The witness set: symmetric, contains the identity, and X^k ⊆ T.
    pub x: Subset,
    /// The power used for containment.
    pub k: u64,
    /// The level defining T: |A|⁴ / (2|AA⁻¹|).
    pub threshold: Rational,
    /// |X| / |A|.
    pub density_ratio: Rational,
    /// Cached fourfold convolution of A.
    pub fourfold: GroupFunction,
}

/// Builds the witness greedily. T is the superlevel set of the fourfold
/// convolution at |A|⁴/(2|AA⁻¹|); T always contains the identity and is
/// symmetric. Starting from X = {e}, candidate pairs {x, x⁻¹} are taken in
/// decreasing fourfold value (ties by index) and accepted exactly when the
/// enlarged X still has X^k ⊆ T.
pub fn cs_witness(a: &Subset, k: u64) -> Result<CsWitness> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::BadParameter(String::from("k must be positive")));
    }
    let group = a.group();
    // Word-length bookkeeping guard: elements of X^k are words of k
    // generators, each carrying at most ⌈log₂ n⌉ bits.
    let log2_order = 64 - (group.order() as u64).leading_zeros() as u64;
    if k.checked_mul(log2_order).is_none() {
        return Err(Error::BadParameter(format!(
            "k = {k} overflows the k·log₂(order) budget"
        )));
    }

    let counts = fourfold_counts(a)?;
    let size = a.len() as u128;
    let product_size = a.product(&a.inverse())?.len() as u128;
    let t_num = size.pow(4);
    let t_den = 2 * product_size;
    let in_t = |idx: usize| counts[idx] as u128 * t_den >= t_num;

    let mut t = Subset::empty(group);
    for idx in 0..group.order() {
        if in_t(idx) {
            t.insert(group.element(idx)?);
        }
    }
    let e = group.identity();
    // The fourfold value at the identity is the squared norm of the
    // difference convolution, which sits above |A|⁴/|AA⁻¹|.
    assert!(t.contains(e), "identity always clears the threshold");

    let mut candidates: Vec<(u64, usize)> = t
        .elements()
        .filter(|x| *x != e && x.index() <= group.inv_idx(x.index()))
        .map(|x| (counts[x.index()], x.index()))
        .collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut x = Subset::singleton(group, e);
    for (_, idx) in candidates {
        let mut trial = x.clone();
        trial.insert(group.element(idx)?);
        trial.insert(group.element(group.inv_idx(idx))?);
        if power_set(&trial, k)?.is_subset_of(&t)? {
            x = trial;
        }
    }
    debug_assert!(power_set(&x, k)?.is_subset_of(&t)?);

    let threshold = Rational::new(t_num.into(), t_den.into());
    let density_ratio = Rational::new((x.len() as u64).into(), (a.len() as u64).into());
    Ok(CsWitness {
        x,
        k,
        threshold,
        density_ratio,
        fourfold: fourfold(a)?,
    })
}

/// A pair (B, B′) along which the smoothed autocorrelation is flat.
#[derive(Clone, Debug)]
pub struct ContinuityWitness {
    /// Smoothing set: a power of X, symmetric with identity.
    pub b: Subset,
    /// Perturbation subgroup B′ ⊆ B.
    pub bp: Subset,
    /// F = f ∗ f̃ ∗ P̃_B ∗ P_B for the returned B.
    pub smoothed: GroupFunction,
    /// Measured max over x of max_{y ∈ xB′} |F(y) − F(x)|.
    pub linf_sup: Rational,
    /// Measured max over x of the mean-square deviation of f∗f̃ from the
    /// constant F(x) over xB′.
    pub l2_sq_sup: Rational,
    /// ν‖f∗f̃‖∞; the mean-square condition uses its square.
    pub bound: Rational,
}

/// Searches the candidate family for a pair (B, B′) with B′ ⊆ B ⊆ X⁴ such
/// that F = f∗f̃∗P̃_B∗P_B moves by at most ν‖f∗f̃‖∞ under B′ perturbation,
/// in both the sup and the local mean-square sense. B ranges over the
/// powers X⁰..X⁴, B′ over the subgroups of ⟨X⟩ contained in X⁴; pairs are
/// tried in decreasing |B′|, then larger B first. Returns the first pair
/// passing both conditions, or `None` when the family is exhausted.
pub fn continuity_witness(
    x: &Subset,
    f: &GroupFunction,
    nu: &Rational,
) -> Result<Option<ContinuityWitness>> {
    if !alloc::sync::Arc::ptr_eq(f.group(), x.group()) && **f.group() != **x.group() {
        return Err(Error::GroupMismatch);
    }
    let group = x.group();
    if !x.contains(group.identity()) || x.inverse() != *x {
        return Err(Error::BadParameter(String::from(
            "X must be symmetric and contain the identity",
        )));
    }
    if nu <= &Rational::zero() || nu > &Rational::one() {
        return Err(Error::BadParameter(String::from(
            "nu must lie in (0, 1]",
        )));
    }

    let base = f.convolve(&f.adjoint())?;
    let bound = nu.clone() * base.linf_norm();
    let bound_sq = bound.clone() * bound.clone();

    let mut powers: Vec<Subset> = Vec::with_capacity(5);
    powers.push(Subset::singleton(group, group.identity()));
    for j in 1..=4usize {
        let next = powers[j - 1].product(x)?;
        powers.push(next);
    }

    let span = x.closure()?;
    let mut subgroups: Vec<Subset> = enumerate_subgroups_within(&span, SUBGROUP_ENUM_CAP)?
        .into_iter()
        .filter(|h| h.is_subset_of(&powers[4]).unwrap_or(false))
        .collect();
    subgroups.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.words().cmp(b.words())));

    let mut smoothed: [Option<GroupFunction>; 5] = [None, None, None, None, None];
    for bp in &subgroups {
        for j in (0..=4usize).rev() {
            if !bp.is_subset_of(&powers[j])? {
                continue;
            }
            if smoothed[j].is_none() {
                let m = GroupMeasure::uniform(&powers[j])?;
                smoothed[j] = Some(base.convolve_measure(&m.adjoint())?.convolve_measure(&m)?);
            }
            let f_j = smoothed[j].as_ref().expect("just filled");
            if let Some((linf_sup, l2_sq_sup)) =
                check_flatness(&base, f_j, bp, &bound, &bound_sq)?
            {
                return Ok(Some(ContinuityWitness {
                    b: powers[j].clone(),
                    bp: bp.clone(),
                    smoothed: f_j.clone(),
                    linf_sup,
                    l2_sq_sup,
                    bound,
                }));
            }
        }
    }
    Ok(None)
}

/// Both flatness conditions over every base point, bailing at the first
/// violation; on success returns the measured suprema.
fn check_flatness(
    base: &GroupFunction,
    smoothed: &GroupFunction,
    bp: &Subset,
    bound: &Rational,
    bound_sq: &Rational,
) -> Result<Option<(Rational, Rational)>> {
    let mut linf_sup = Rational::zero();
    let mut l2_sq_sup = Rational::zero();
    for x0 in base.group().elements() {
        let wobble = local_linf_distance(smoothed, x0, bp)?;
        if &wobble > bound {
            return Ok(None);
        }
        if wobble > linf_sup {
            linf_sup = wobble;
        }
        let deviation = local_l2_sq(base, smoothed.value(x0), x0, bp)?;
        if &deviation > bound_sq {
            return Ok(None);
        }
        if deviation > l2_sq_sup {
            l2_sq_sup = deviation;
        }
    }
    Ok(Some((linf_sup, l2_sq_sup)))
}

/// One verified pipeline inequality: which step it belongs to, the claim,
/// and the two measured sides.
#[derive(Clone, Debug, PartialEq)]
pub struct StepCheck {
    /// Step identifier, e.g. `"1:approximate-period"`.
    pub step: &'static str,
    /// The inequality or identity in words.
    pub claim: String,
    /// Measured left side.
    pub left: Rational,
    /// Measured right side.
    pub right: Rational,
    /// Whether the claim held.
    pub pass: bool,
}

/// Full trace of the analytic pipeline. Optional fields stay `None` past
/// the first failed step.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    /// The ε the pipeline ran at.
    pub epsilon: Rational,
    /// Smoothing tolerance ν = ε/10.
    pub nu: Rational,
    /// The approximate-period set from step 1.
    pub x: Subset,
    /// |X⁴| / |X|.
    pub x4_ratio: Rational,
    /// Smoothing set from step 2.
    pub b: Option<Subset>,
    /// Perturbation subgroup from step 2.
    pub bp: Option<Subset>,
    /// Superlevel set of the smoothed autocorrelation, step 4.
    pub s: Option<Subset>,
    /// The subgroup ⟨B′⟩ from step 5.
    pub h: Option<Subset>,
    /// Number of left cosets of H covering A, step 7.
    pub r: Option<usize>,
    /// Representatives of those cosets.
    pub cover_reps: Option<Vec<Element>>,
    /// Every inequality measured, in order.
    pub steps: Vec<StepCheck>,
    /// Whether every step passed.
    pub success: bool,
    /// First failed step, when any.
    pub failed_step: Option<&'static str>,
}

struct StepLog {
    steps: Vec<StepCheck>,
    failed: Option<&'static str>,
}

impl StepLog {
    fn new() -> StepLog {
        StepLog { steps: Vec::new(), failed: None }
    }

    fn record(
        &mut self,
        step: &'static str,
        claim: &str,
        left: Rational,
        right: Rational,
        pass: bool,
    ) {
        self.steps.push(StepCheck {
            step,
            claim: String::from(claim),
            left,
            right,
            pass,
        });
        if !pass && self.failed.is_none() {
            self.failed = Some(step);
        }
    }
}

const STEP1: &str = "1:approximate-period";
const STEP2: &str = "2:continuity";
const STEP3: &str = "3:value-gap";
const STEP4: &str = "4:level-set-mass";
const STEP5: &str = "5:periodicity";
const STEP6: &str = "6:dense-coset";
const STEP7: &str = "7:cover";

/// Runs the full analytic argument on one set at tolerance ε ∈ (0, 1),
/// requiring |AA⁻¹| ≤ (2−ε)|A| up front. Steps: build the approximate
/// period set X with k = 8; find a continuity pair (B, B′); exclude the
/// middle value band of the smoothed autocorrelation F; collect the upper
/// level set S and check its mass; verify S is B′-periodic; find a coset
/// of H = ⟨B′⟩ dense in A; and cover A by cosets of H. Each step's
/// inequalities are recorded; the first failure marks the report and stops
/// the run.
pub fn analytic_pipeline(a: &Subset, epsilon: &Rational) -> Result<PipelineReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if epsilon <= &Rational::zero() || epsilon >= &Rational::one() {
        return Err(Error::EpsilonRange(epsilon.clone()));
    }
    let group = a.group();
    let inv = a.inverse();
    let d2 = a.product(&inv)?;
    let size = a.len() as u64;
    let ratio = Rational::new((d2.len() as u64).into(), size.into());
    let limit = ratio_int(2) - epsilon.clone();
    if ratio > limit {
        return Err(Error::DoublingExceedsBound { ratio, limit });
    }
    let nu = epsilon.clone() / ratio_int(10);
    let size_q = ratio_int(size);
    let mut log = StepLog::new();

    // Step 1: approximate periods of the fourfold convolution.
    let cs = cs_witness(a, 8)?;
    let x = cs.x.clone();
    let x4 = power_set(&x, 4)?;
    let x8 = x4.product(&x4)?;
    let min8 = x8
        .elements()
        .map(|e| cs.fourfold.value(e).clone())
        .min()
        .expect("X^8 contains the identity");
    log.record(
        STEP1,
        "g >= |A|^4 / (2|AA^-1|) on X^8",
        min8.clone(),
        cs.threshold.clone(),
        min8 >= cs.threshold,
    );
    let quarter_cubed = size_q.clone() * size_q.clone() * size_q.clone() / ratio_int(4);
    log.record(
        STEP1,
        "g >= |A|^3 / 4 on X^8",
        min8.clone(),
        quarter_cubed.clone(),
        min8 >= quarter_cubed,
    );
    log.record(
        STEP1,
        "|X^4| <= 4|A|",
        ratio_int(x4.len() as u64),
        ratio_int(4 * size),
        x4.len() as u64 <= 4 * size,
    );
    let x4_ratio = Rational::new((x4.len() as u64).into(), (x.len() as u64).into());

    let mut report = PipelineReport {
        epsilon: epsilon.clone(),
        nu: nu.clone(),
        x,
        x4_ratio,
        b: None,
        bp: None,
        s: None,
        h: None,
        r: None,
        cover_reps: None,
        steps: Vec::new(),
        success: false,
        failed_step: None,
    };
    if log.failed.is_some() {
        return Ok(finish(report, log));
    }

    // Step 2: continuity of the smoothed autocorrelation.
    let f: GroupFunction = GroupFunction::indicator(&inv);
    let base = f.convolve(&f.adjoint())?;
    let Some(witness) = continuity_witness(&report.x, &f, &nu)? else {
        return Err(Error::ContinuityNotFound { steps: log.steps });
    };
    let sup_norm = base.linf_norm();
    let combined_bound = ratio_int(2) * nu.clone() * sup_norm;
    let combined_bound_sq = combined_bound.clone() * combined_bound.clone();
    log.record(
        STEP2,
        "local L2 of f*f~ about F(x) over xB' <= 2v|A| (squared)",
        witness.l2_sq_sup.clone(),
        combined_bound_sq.clone(),
        witness.l2_sq_sup <= combined_bound_sq,
    );
    let smoothed = witness.smoothed.clone();
    report.b = Some(witness.b.clone());
    report.bp = Some(witness.bp.clone());
    if log.failed.is_some() {
        return Ok(finish(report, log));
    }
    let bp = witness.bp;

    // Step 3: the value gap. The difference convolution jumps, so F avoids
    // the middle band once the floor ε|A| from the doubling bound is in.
    let support = inv.product(a)?;
    let floor = support
        .elements()
        .map(|e| base.value(e).clone())
        .min()
        .expect("support contains the identity");
    let eps_size = epsilon.clone() * size_q.clone();
    log.record(
        STEP3,
        "min of f*f~ on its support >= e|A|",
        floor.clone(),
        eps_size.clone(),
        floor >= eps_size,
    );
    let lo = eps_size.clone() / ratio_int(4);
    let hi = eps_size.clone() * ratio_int(3) / ratio_int(4);
    let gap_violations = group
        .elements()
        .filter(|&el| {
            let v = smoothed.value(el);
            v > &lo && v < &hi
        })
        .count();
    log.record(
        STEP3,
        "no x with e|A|/4 < F(x) < 3e|A|/4",
        ratio_int(gap_violations as u64),
        Rational::zero(),
        gap_violations == 0,
    );
    if log.failed.is_some() {
        return Ok(finish(report, log));
    }

    // Step 4: the upper level set and its mass.
    let mut s = Subset::empty(group);
    for el in group.elements() {
        if smoothed.value(el) > &hi {
            s.insert(el);
        }
    }
    let b_measure = GroupMeasure::uniform(report.b.as_ref().expect("step 2 set b"))?;
    let smoothing_pair = b_measure.adjoint().convolve(&b_measure)?;
    let mass = cs.fourfold.inner_product(&smoothing_pair.to_function())?;
    log.record(
        STEP4,
        "<g, P~_B * P_B> >= |A|^3 / 4",
        mass.clone(),
        quarter_cubed.clone(),
        mass >= quarter_cubed,
    );
    log.record(
        STEP4,
        "S = {x : F(x) > 3e|A|/4} is non-empty",
        ratio_int(s.len() as u64),
        Rational::one(),
        !s.is_empty(),
    );
    report.s = Some(s.clone());
    if log.failed.is_some() {
        return Ok(finish(report, log));
    }

    // Step 5: S is invariant under the subgroup generated by B'.
    let h = bp.closure()?;
    let sh = s.product(&h)?;
    log.record(
        STEP5,
        "S H = S",
        ratio_int(sh.len() as u64),
        ratio_int(s.len() as u64),
        sh == s,
    );
    report.h = Some(h.clone());
    if log.failed.is_some() {
        return Ok(finish(report, log));
    }

    // Step 6: some coset of H is 3ε/4-dense in A.
    let trace = a.coset_trace(&h)?;
    let density_bound = epsilon.clone() * ratio_int(3) * ratio_int(h.len() as u64) / ratio_int(4);
    log.record(
        STEP6,
        "max_x |A n xH| >= 3e|H|/4",
        ratio_int(trace.max_intersection as u64),
        density_bound.clone(),
        ratio_int(trace.max_intersection as u64) >= density_bound,
    );
    if log.failed.is_some() {
        return Ok(finish(report, log));
    }

    // Step 7: the traced representatives cover A.
    let mut cover = Subset::empty(group);
    for &rep in &trace.representatives {
        cover = cover.union(&h.translate(rep))?;
    }
    let covered = a.intersection_size(&cover)?;
    log.record(
        STEP7,
        "A is contained in the union of the R traced cosets",
        ratio_int(covered as u64),
        size_q.clone(),
        covered == a.len(),
    );
    report.r = Some(trace.r());
    report.cover_reps = Some(trace.representatives);
    Ok(finish(report, log))
}

fn finish(mut report: PipelineReport, log: StepLog) -> PipelineReport {
    report.success = log.failed.is_none();
    report.failed_step = log.failed;
    report.steps = log.steps;
    report
}
