//! Subsets of a group as bit vectors, with the product-set algebra the
//! doubling detectors are built on.
//!
//! A subset keeps an `Arc` to its group plus one bit per element and a
//! cached popcount, so membership, boolean algebra, and translation are
//! word operations. Product sets cost O(|A|·|B|) table lookups.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{Element, Group};
use crate::{Error, Rational, Result};

/// Default ceiling for subgroup enumeration.
pub const SUBGROUP_ENUM_CAP: usize = 256;

/// A subset of a fixed finite group, stored as a bit vector.
#[derive(Clone, Debug)]
pub struct Subset {
    group: Arc<Group>,
    words: Vec<u64>,
    len: usize,
}

impl PartialEq for Subset {
    fn eq(&self, other: &Subset) -> bool {
        compatible(&self.group, &other.group) && self.words == other.words
    }
}

impl Eq for Subset {}

fn word_count(order: usize) -> usize {
    order.div_ceil(64)
}

/// Same group: pointer equality almost always, structural equality as the
/// slow path for independently built copies.
fn compatible(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Subset {
    /// The empty subset.
    pub fn empty(group: &Arc<Group>) -> Subset {
        Subset {
            group: Arc::clone(group),
            words: vec![0; word_count(group.order())],
            len: 0,
        }
    }

    /// The whole group.
    pub fn full(group: &Arc<Group>) -> Subset {
        let order = group.order();
        let mut words = vec![u64::MAX; word_count(order)];
        let tail = order % 64;
        if tail != 0 {
            *words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        Subset {
            group: Arc::clone(group),
            words,
            len: order,
        }
    }

    /// Single-element subset.
    pub fn singleton(group: &Arc<Group>, element: Element) -> Subset {
        let mut s = Subset::empty(group);
        s.insert(element);
        s
    }

    /// Builds a subset from element indices; duplicates are fine.
    pub fn from_indices(group: &Arc<Group>, indices: &[usize]) -> Result<Subset> {
        let mut s = Subset::empty(group);
        for &i in indices {
            let el = group.element(i)?;
            s.insert(el);
        }
        Ok(s)
    }

    /// The group this subset lives in.
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when no element is present.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Membership test.
    pub fn contains(&self, element: Element) -> bool {
        self.bit(element.index())
    }

    /// Adds an element.
    pub fn insert(&mut self, element: Element) {
        let i = element.index();
        debug_assert!(i < self.group.order());
        let mask = 1u64 << (i % 64);
        if self.words[i / 64] & mask == 0 {
            self.words[i / 64] |= mask;
            self.len += 1;
        }
    }

    pub(crate) fn bit(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    /// Raw bitset words; a stable total order for deterministic tie-breaks.
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn set_bit(&mut self, index: usize) {
        self.words[index / 64] |= 1u64 << (index % 64);
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// Iterates the elements in ascending index order.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Element indices in ascending order.
    pub fn to_indices(&self) -> Vec<usize> {
        self.elements().map(Element::index).collect()
    }

    fn check_same_group(&self, other: &Subset) -> Result<()> {
        if compatible(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Set union.
    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        out.recount();
        Ok(out)
    }

    /// Set intersection.
    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        out.recount();
        Ok(out)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.recount();
        Ok(out)
    }

    /// Complement within the group.
    pub fn complement(&self) -> Subset {
        let mut out = Subset::full(&self.group);
        for (w, o) in out.words.iter_mut().zip(&self.words) {
            *w &= !o;
        }
        out.len = self.group.order() - self.len;
        out
    }

    /// Containment test.
    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| w & !o == 0))
    }

    /// Size of the intersection without materializing it.
    pub fn intersection_size(&self, other: &Subset) -> Result<usize> {
        self.check_same_group(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(w, o)| (w & o).count_ones() as usize)
            .sum())
    }

    /// Elementwise inverse `A⁻¹`.
    pub fn inverse(&self) -> Subset {
        let mut out = Subset::empty(&self.group);
        for el in self.elements() {
            out.set_bit(self.group.inv_idx(el.index()));
        }
        out.len = self.len;
        out
    }

    /// Left translate `aA`.
    pub fn translate(&self, a: Element) -> Subset {
        let mut out = Subset::empty(&self.group);
        let row = self.group.mul_row(a.index());
        for el in self.elements() {
            out.set_bit(row[el.index()] as usize);
        }
        out.len = self.len;
        out
    }

    /// Product set `AB = {ab : a ∈ A, b ∈ B}`.
    pub fn product(&self, other: &Subset) -> Result<Subset> {
        self.check_same_group(other)?;
        let mut out = Subset::empty(&self.group);
        let rhs = other.to_indices();
        for a in self.elements() {
            let row = self.group.mul_row(a.index());
            for &b in &rhs {
                out.set_bit(row[b] as usize);
            }
        }
        out.recount();
        Ok(out)
    }

    /// True when every product `ab` stays inside `bound`. Bails out at the
    /// first escape, which makes stabilizer scans cheap.
    pub(crate) fn product_stays_within(&self, other: &Subset, bound: &Subset) -> bool {
        let rhs = other.to_indices();
        for a in self.elements() {
            let row = self.group.mul_row(a.index());
            for &b in &rhs {
                if !bound.bit(row[b] as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// Measures `|AA⁻¹| / |A|` and whether the two difference sets agree.
    pub fn doubling(&self) -> Result<DoublingReport> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let inv = self.inverse();
        let right = self.product(&inv)?;
        let left = inv.product(self)?;
        Ok(DoublingReport {
            set_size: self.len,
            product_size: right.len(),
            ratio: Rational::new((right.len() as u64).into(), (self.len as u64).into()),
            symmetric_agreement: right == left,
        })
    }

    /// Smallest subgroup containing the set: breadth-first products of the
    /// elements, which reach every word in a finite group without needing
    /// explicit inverses.
    pub fn closure(&self) -> Result<Subset> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let gens = self.to_indices();
        Ok(closure_from(&self.group, &gens, None))
    }

    /// Subgroup test: non-empty and closed under products. In a finite
    /// group that already forces the identity and all inverses in, so
    /// nothing else needs checking.
    pub fn is_subgroup(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        self.product_stays_within(self, self)
    }

    /// Traces the left cosets of `subgroup` that meet this set, taking the
    /// smallest member as each coset's representative.
    pub fn coset_trace(&self, subgroup: &Subset) -> Result<CosetTrace> {
        self.check_same_group(subgroup)?;
        if !subgroup.is_subgroup() {
            return Err(Error::NotASubgroup);
        }
        let mut visited = Subset::empty(&self.group);
        let mut representatives = Vec::new();
        let mut max_intersection = 0;
        for a in self.elements() {
            if visited.contains(a) {
                continue;
            }
            let coset = subgroup.translate(a);
            representatives.push(a);
            max_intersection = max_intersection.max(self.intersection_size(&coset)?);
            for (v, c) in visited.words.iter_mut().zip(&coset.words) {
                *v |= c;
            }
        }
        visited.recount();
        Ok(CosetTrace {
            representatives,
            max_intersection,
        })
    }
}

/// Closure of a generating set, optionally confined to a universe that is
/// already known to be closed (then the result stays inside it for free).
fn closure_from(group: &Arc<Group>, gens: &[usize], seed: Option<&Subset>) -> Subset {
    let mut out = match seed {
        Some(s) => s.clone(),
        None => Subset::singleton(group, group.identity()),
    };
    let mut frontier: Vec<usize> = out.to_indices();
    for &g in gens {
        if !out.bit(g) {
            out.set_bit(g);
            frontier.push(g);
        }
    }
    while let Some(x) = frontier.pop() {
        let row = group.mul_row(x);
        for &g in gens {
            let p = row[g] as usize;
            if !out.bit(p) {
                out.set_bit(p);
                frontier.push(p);
            }
        }
    }
    out.recount();
    out
}

/// Iterator over the elements of a [`Subset`].
pub struct ElementIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for ElementIter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(Element((self.word_idx * 64 + bit) as u16))
    }
}

/// Doubling measurements for one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingReport {
    /// |A|.
    pub set_size: usize,
    /// |AA⁻¹|.
    pub product_size: usize,
    /// |AA⁻¹| / |A| as an exact rational. Equals 1 exactly when A is a
    /// coset of a subgroup.
    pub ratio: Rational,
    /// Whether AA⁻¹ = A⁻¹A as sets.
    pub symmetric_agreement: bool,
}

/// Left-coset trace of a set against a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTrace {
    /// One representative per coset meeting the set: the smallest member
    /// of the intersection, in ascending order.
    pub representatives: Vec<Element>,
    /// Largest |A ∩ xH| over the traced cosets.
    pub max_intersection: usize,
}

impl CosetTrace {
    /// Number of cosets met.
    pub fn r(&self) -> usize {
        self.representatives.len()
    }
}

/// All subgroups, each exactly once, up to the default cap of
/// [`SUBGROUP_ENUM_CAP`]. Sorted by size, ties broken by bit pattern.
pub fn enumerate_subgroups(group: &Arc<Group>) -> Result<Vec<Subset>> {
    enumerate_subgroups_capped(group, SUBGROUP_ENUM_CAP)
}

/// [`enumerate_subgroups`] with an explicit cap on how many subgroups may
/// be collected before giving up.
pub fn enumerate_subgroups_capped(group: &Arc<Group>, cap: usize) -> Result<Vec<Subset>> {
    enum_impl(group, &Subset::full(group), cap)
}

/// Subgroups contained in `universe`, which must itself be a subgroup.
pub fn enumerate_subgroups_within(universe: &Subset, cap: usize) -> Result<Vec<Subset>> {
    if !universe.is_subgroup() {
        return Err(Error::NotASubgroup);
    }
    enum_impl(universe.group(), universe, cap)
}

/// Breadth-first closure walk: every subgroup is reached by extending a
/// smaller one with one extra generator, so starting from the trivial
/// subgroup and closing over single extensions finds each exactly once.
fn enum_impl(group: &Arc<Group>, universe: &Subset, cap: usize) -> Result<Vec<Subset>> {
    let trivial = Subset::singleton(group, group.identity());
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(trivial.words.clone());
    // Work items carry their generators so extensions close in
    // O(|result|·|gens|) instead of O(|result|·|H|).
    let mut queue: Vec<(Subset, Vec<usize>)> = vec![(trivial, Vec::new())];
    let mut done = 0;
    while done < queue.len() {
        let (h, gens) = queue[done].clone();
        done += 1;
        for x in universe.elements() {
            let xi = x.index();
            if h.bit(xi) {
                continue;
            }
            let mut ext_gens = gens.clone();
            ext_gens.push(xi);
            let ext = closure_from(group, &ext_gens, Some(&h));
            if seen.insert(ext.words.clone()) {
                if seen.len() > cap {
                    return Err(Error::SubgroupCapExceeded { cap });
                }
                queue.push((ext, ext_gens));
            }
        }
    }
    let mut out: Vec<Subset> = queue.into_iter().map(|(h, _)| h).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.words.cmp(&b.words)));
    Ok(out)
}
