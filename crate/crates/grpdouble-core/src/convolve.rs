//! Convolution calculus on a finite group.
//!
//! Functions carry one scalar per element. The default scalar is the exact
//! rational, so norm identities and thresholds are checked with no rounding;
//! `f64` is available as a construction-time choice for large sweeps where
//! exactness is not needed. Convolution is computed directly from the
//! definition, f∗g(x) = Σ_{yz=x} f(y)g(z), driven by the support of the
//! left factor: O(|supp f|·n) products.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::{Element, Group};
use crate::subset::Subset;
use crate::{Error, Rational, Result};

/// Scalar a [`GroupFunction`] can carry: exact rationals or `f64`.
pub trait Scalar: Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Signed {
    /// Embeds a rational; exact for rationals, rounded for `f64`.
    fn from_rational(r: &Rational) -> Self;
    /// Embeds a non-negative integer.
    fn from_integer(v: u64) -> Self;
    /// Lossy view as a double, for distances and display.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_integer(v: u64) -> Self {
        Rational::from_integer(v.into())
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_integer(v: u64) -> Self {
        v as f64
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

fn compatible(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A scalar-valued function on a group, one value per element.
#[derive(Clone, Debug)]
pub struct GroupFunction<S: Scalar = Rational> {
    group: Arc<Group>,
    values: Vec<S>,
}

impl<S: Scalar> PartialEq for GroupFunction<S> {
    fn eq(&self, other: &Self) -> bool {
        compatible(&self.group, &other.group) && self.values == other.values
    }
}

impl<S: Scalar> GroupFunction<S> {
    /// The zero function.
    pub fn zero(group: &Arc<Group>) -> Self {
        GroupFunction {
            group: Arc::clone(group),
            values: vec![S::zero(); group.order()],
        }
    }

    /// Builds from explicit values, one per element in index order.
    pub fn from_values(group: &Arc<Group>, values: Vec<S>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::BadParameter(alloc::format!(
                "expected {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        Ok(GroupFunction {
            group: Arc::clone(group),
            values,
        })
    }

    /// Indicator function of a set.
    pub fn indicator(set: &Subset) -> Self {
        let mut f = GroupFunction::zero(set.group());
        for el in set.elements() {
            f.values[el.index()] = S::one();
        }
        f
    }

    /// Point mass at one element.
    pub fn delta(group: &Arc<Group>, at: Element) -> Self {
        let mut f = GroupFunction::zero(group);
        f.values[at.index()] = S::one();
        f
    }

    /// The group this function lives on.
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Value at one element.
    pub fn value(&self, x: Element) -> &S {
        &self.values[x.index()]
    }

    /// All values in index order.
    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// Set where the function is non-zero.
    pub fn support(&self) -> Subset {
        let mut s = Subset::empty(&self.group);
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                s.insert(self.group.element(i).expect("value index in range"));
            }
        }
        s
    }

    /// Σ_x f(x).
    pub fn total_mass(&self) -> S {
        self.values
            .iter()
            .fold(S::zero(), |acc, v| acc + v.clone())
    }

    /// max_x |f(x)|.
    pub fn linf_norm(&self) -> S {
        self.values
            .iter()
            .map(|v| v.abs())
            .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
    }

    /// Σ_x f(x)².
    pub fn l2_norm_sq(&self) -> S {
        self.values
            .iter()
            .fold(S::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    fn check_same_group_fn(&self, other: &Self) -> Result<()> {
        if compatible(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn check_same_group_set(&self, set: &Subset) -> Result<()> {
        if compatible(&self.group, set.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Convolution f∗g(x) = Σ_{yz=x} f(y)g(z).
    pub fn convolve(&self, rhs: &Self) -> Result<Self> {
        self.check_same_group_fn(rhs)?;
        let n = self.group.order();
        let mut out: GroupFunction<S> = GroupFunction::zero(&self.group);
        for y in 0..n {
            if self.values[y].is_zero() {
                continue;
            }
            let row = self.group.mul_row(y);
            for z in 0..n {
                if rhs.values[z].is_zero() {
                    continue;
                }
                let x = row[z] as usize;
                out.values[x] =
                    out.values[x].clone() + self.values[y].clone() * rhs.values[z].clone();
            }
        }
        Ok(out)
    }

    /// Adjoint f̃(x) = f(x⁻¹). Scalars here are real, so no conjugation.
    pub fn adjoint(&self) -> Self {
        let n = self.group.order();
        let values = (0..n)
            .map(|x| self.values[self.group.inv_idx(x)].clone())
            .collect();
        GroupFunction {
            group: Arc::clone(&self.group),
            values,
        }
    }

    /// Convolution against a measure: f∗μ(x) = Σ_z f(xz⁻¹) μ(z).
    pub fn convolve_measure(&self, measure: &GroupMeasure) -> Result<Self> {
        if !compatible(&self.group, &measure.group) {
            return Err(Error::GroupMismatch);
        }
        let n = self.group.order();
        let support: Vec<(usize, S)> = measure
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(z, w)| (self.group.inv_idx(z), S::from_rational(w)))
            .collect();
        let mut out: GroupFunction<S> = GroupFunction::zero(&self.group);
        for x in 0..n {
            let row = self.group.mul_row(x);
            let mut acc = S::zero();
            for (zinv, w) in &support {
                acc = acc + self.values[row[*zinv] as usize].clone() * w.clone();
            }
            out.values[x] = acc;
        }
        Ok(out)
    }

    /// ⟨f, g⟩ = Σ_x f(x)g(x).
    pub fn inner_product(&self, rhs: &Self) -> Result<S> {
        self.check_same_group_fn(rhs)?;
        Ok(self
            .values
            .iter()
            .zip(&rhs.values)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// Lossy copy with `f64` values.
    pub fn to_f64(&self) -> GroupFunction<f64> {
        GroupFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(Scalar::to_f64_lossy).collect(),
        }
    }
}

/// A probability measure on a group: non-negative rational weights that sum
/// to exactly one.
#[derive(Clone, Debug)]
pub struct GroupMeasure {
    group: Arc<Group>,
    weights: Vec<Rational>,
}

impl PartialEq for GroupMeasure {
    fn eq(&self, other: &Self) -> bool {
        compatible(&self.group, &other.group) && self.weights == other.weights
    }
}

impl GroupMeasure {
    /// Uniform measure on a non-empty set.
    pub fn uniform(set: &Subset) -> Result<GroupMeasure> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let share = Rational::new(1.into(), (set.len() as u64).into());
        let mut weights = vec![Rational::zero(); set.group().order()];
        for el in set.elements() {
            weights[el.index()] = share.clone();
        }
        Ok(GroupMeasure {
            group: Arc::clone(set.group()),
            weights,
        })
    }

    /// Point mass at one element.
    pub fn point_mass(group: &Arc<Group>, at: Element) -> GroupMeasure {
        let mut weights = vec![Rational::zero(); group.order()];
        weights[at.index()] = Rational::one();
        GroupMeasure {
            group: Arc::clone(group),
            weights,
        }
    }

    /// Builds from explicit weights, validating non-negativity and total
    /// mass exactly one.
    pub fn from_weights(group: &Arc<Group>, weights: Vec<Rational>) -> Result<GroupMeasure> {
        if weights.len() != group.order() {
            return Err(Error::BadParameter(alloc::format!(
                "expected {} weights, got {}",
                group.order(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| w < &Rational::zero()) {
            return Err(Error::BadParameter(String::from(
                "measure weights must be non-negative",
            )));
        }
        let total: Rational = weights.iter().fold(Rational::zero(), |a, w| a + w);
        if total != Rational::one() {
            return Err(Error::BadParameter(alloc::format!(
                "measure weights must sum to 1, got {total}"
            )));
        }
        Ok(GroupMeasure {
            group: Arc::clone(group),
            weights,
        })
    }

    /// The group this measure lives on.
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Weights in element index order.
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Set of elements with positive weight.
    pub fn support(&self) -> Subset {
        let mut s = Subset::empty(&self.group);
        for (i, w) in self.weights.iter().enumerate() {
            if !w.is_zero() {
                s.insert(self.group.element(i).expect("weight index in range"));
            }
        }
        s
    }

    /// Adjoint measure μ̃(x) = μ(x⁻¹); still a probability measure.
    pub fn adjoint(&self) -> GroupMeasure {
        let n = self.group.order();
        let weights = (0..n)
            .map(|x| self.weights[self.group.inv_idx(x)].clone())
            .collect();
        GroupMeasure {
            group: Arc::clone(&self.group),
            weights,
        }
    }

    /// Convolution of probability measures, again a probability measure.
    pub fn convolve(&self, rhs: &GroupMeasure) -> Result<GroupMeasure> {
        if !compatible(&self.group, &rhs.group) {
            return Err(Error::GroupMismatch);
        }
        let n = self.group.order();
        let mut weights = vec![Rational::zero(); n];
        for y in 0..n {
            if self.weights[y].is_zero() {
                continue;
            }
            let row = self.group.mul_row(y);
            for z in 0..n {
                if rhs.weights[z].is_zero() {
                    continue;
                }
                let x = row[z] as usize;
                weights[x] = weights[x].clone() + self.weights[y].clone() * rhs.weights[z].clone();
            }
        }
        Ok(GroupMeasure {
            group: Arc::clone(&self.group),
            weights,
        })
    }

    /// View as a function with the chosen scalar.
    pub fn to_function<S: Scalar>(&self) -> GroupFunction<S> {
        GroupFunction {
            group: Arc::clone(&self.group),
            values: self.weights.iter().map(S::from_rational).collect(),
        }
    }
}

/// Exact integer convolution of two indicators: value at `v` is the number
/// of pairs (a, b) ∈ A×B with ab = v. This is the hot path under every
/// doubling detector.
pub fn indicator_convolution(a: &Subset, b: &Subset) -> Result<Vec<u64>> {
    if !compatible(a.group(), b.group()) {
        return Err(Error::GroupMismatch);
    }
    let group = a.group();
    let mut counts = vec![0u64; group.order()];
    let rhs = b.to_indices();
    for x in a.elements() {
        let row = group.mul_row(x.index());
        for &y in &rhs {
            counts[row[y] as usize] += 1;
        }
    }
    Ok(counts)
}

/// Outcome of the two indicator-convolution identities, each checked
/// through two independent routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorIdentityReport {
    /// supp(1_A ∗ 1_B) = AB held at every element.
    pub support_pass: bool,
    /// 1_A ∗ 1_B(x) = |A ∩ xB⁻¹| held at every element.
    pub count_pass: bool,
    /// First element where either side disagreed.
    pub first_discrepancy: Option<Element>,
}

impl IndicatorIdentityReport {
    /// Both identities held.
    pub fn pass(&self) -> bool {
        self.support_pass && self.count_pass
    }
}

/// Checks supp(1_A ∗ 1_B) = AB and 1_A ∗ 1_B(x) = |A ∩ xB⁻¹| pointwise.
/// The convolution side counts pairs; the right sides come from product-set
/// and translate machinery, so the routes share no arithmetic.
pub fn indicator_identity_check(a: &Subset, b: &Subset) -> Result<IndicatorIdentityReport> {
    let conv = indicator_convolution(a, b)?;
    let product = a.product(b)?;
    let b_inv = b.inverse();
    let group = a.group();
    let mut report = IndicatorIdentityReport {
        support_pass: true,
        count_pass: true,
        first_discrepancy: None,
    };
    for x in group.elements() {
        let c = conv[x.index()];
        let mut bad = false;
        if (c > 0) != product.contains(x) {
            report.support_pass = false;
            bad = true;
        }
        if c != a.intersection_size(&b_inv.translate(x))? as u64 {
            report.count_pass = false;
            bad = true;
        }
        if bad && report.first_discrepancy.is_none() {
            report.first_discrepancy = Some(x);
        }
    }
    Ok(report)
}

/// Squared-norm identity and lower bound for the two difference-set
/// convolutions of one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormReport {
    /// ‖1_{A⁻¹} ∗ 1_A‖².
    pub norm_sq_left: u64,
    /// ‖1_A ∗ 1_{A⁻¹}‖².
    pub norm_sq_right: u64,
    /// The two squared norms agree exactly.
    pub equal: bool,
    /// |A|⁴ / |AA⁻¹|.
    pub bound: Rational,
    /// Both squared norms are at least the bound.
    pub bound_pass: bool,
}

/// Checks ‖1_{A⁻¹} ∗ 1_A‖² = ‖1_A ∗ 1_{A⁻¹}‖² and that both sit above
/// |A|⁴ / |AA⁻¹|. All comparisons are integer cross-multiplications.
pub fn norm_identity_check(a: &Subset) -> Result<NormReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let inv = a.inverse();
    let left: u64 = indicator_convolution(&inv, a)?.iter().map(|&c| c * c).sum();
    let right: u64 = indicator_convolution(a, &inv)?.iter().map(|&c| c * c).sum();
    let product_size = a.product(&inv)?.len() as u64;
    let size = a.len() as u64;
    let fourth = (size as u128).pow(4);
    let bound = Rational::new(fourth.into(), (product_size as u128).into());
    let bound_pass = (left as u128) * (product_size as u128) >= fourth
        && (right as u128) * (product_size as u128) >= fourth;
    Ok(NormReport {
        norm_sq_left: left,
        norm_sq_right: right,
        equal: left == right,
        bound,
        bound_pass,
    })
}

/// Checks ⟨f∗g, h⟩ = ⟨g, f̃∗h⟩ = ⟨f, h∗g̃⟩ exactly for the given scalars.
pub fn adjoint_identity_check<S: Scalar>(
    f: &GroupFunction<S>,
    g: &GroupFunction<S>,
    h: &GroupFunction<S>,
) -> Result<bool> {
    let first = f.convolve(g)?.inner_product(h)?;
    let second = g.inner_product(&f.adjoint().convolve(h)?)?;
    let third = f.inner_product(&h.convolve(&g.adjoint())?)?;
    Ok(first == second && second == third)
}

/// Mean-square deviation of `f` from the constant `c` over the left
/// translate xB′: (1/|B′|) Σ_{y ∈ xB′} (f(y) − c)².
pub fn local_l2_sq<S: Scalar>(
    f: &GroupFunction<S>,
    c: &S,
    x: Element,
    bp: &Subset,
) -> Result<S> {
    f.check_same_group_set(bp)?;
    if bp.is_empty() {
        return Err(Error::EmptySet);
    }
    let row = f.group.mul_row(x.index());
    let mut acc = S::zero();
    for y in bp.elements() {
        let diff = f.values[row[y.index()] as usize].clone() - c.clone();
        acc = acc + diff.clone() * diff;
    }
    Ok(acc / S::from_integer(bp.len() as u64))
}

/// Square root of [`local_l2_sq`], as a double. Exact comparisons should
/// use the squared form.
pub fn local_l2_distance<S: Scalar>(
    f: &GroupFunction<S>,
    c: &S,
    x: Element,
    bp: &Subset,
) -> Result<f64> {
    let sq = local_l2_sq(f, c, x, bp)?.to_f64_lossy();
    Ok(libm::sqrt(sq.max(0.0)))
}

/// max_{y ∈ xB′} |f(y) − f(x)|: how far `f` moves under perturbation of
/// its argument by B′.
pub fn local_linf_distance<S: Scalar>(
    f: &GroupFunction<S>,
    x: Element,
    bp: &Subset,
) -> Result<S> {
    f.check_same_group_set(bp)?;
    if bp.is_empty() {
        return Err(Error::EmptySet);
    }
    let row = f.group.mul_row(x.index());
    let base = f.values[x.index()].clone();
    let mut best = S::zero();
    let mut first = true;
    for y in bp.elements() {
        let diff = (f.values[row[y.index()] as usize].clone() - base.clone()).abs();
        if first || diff > best {
            best = diff;
            first = false;
        }
    }
    Ok(best)
}
