//! Finite groups as explicit multiplication tables.
//!
//! Builders cover the cyclic, dihedral, symmetric, and quaternion families
//! plus direct products; anything else arrives as a raw table. Tables are
//! row-major `u16` with a precomputed inverse column, which keeps the whole
//! structure cache-friendly up to the order cap.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Hard ceiling on group order for every builder and table loader.
pub const ORDER_CAP: usize = 4096;

/// An element of a [`Group`], identified by its index into the tables.
///
/// An element is only meaningful together with the group it came from;
/// mixing indices across groups is a caller bug and panics on table access.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) u16);

impl Element {
    /// Index of the element in its group's tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite group given by its multiplication table.
///
/// `mul` is row-major: entry `a * order + b` holds the product `ab`.
/// Builders always put the identity at index 0; tables loaded from raw data
/// may place it anywhere.
#[derive(Clone)]
pub struct Group {
    order: usize,
    identity: u16,
    mul: Vec<u16>,
    inv: Vec<u16>,
    label: String,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Group) -> bool {
        // Labels are presentation only.
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for Group {}

impl Group {
    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Human-readable spec this group was built from.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The identity element.
    pub fn identity(&self) -> Element {
        Element(self.identity)
    }

    /// Bounds-checked element lookup by index.
    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element(index as u16))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    /// Iterates all elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(|i| Element(i as u16))
    }

    /// Product `ab` by table lookup.
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.mul[a.index() * self.order + b.index()])
    }

    /// Inverse by table lookup.
    pub fn inv(&self, a: Element) -> Element {
        Element(self.inv[a.index()])
    }

    pub(crate) fn mul_row(&self, a: usize) -> &[u16] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    #[cfg(test)]
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[cfg(test)]
    pub(crate) fn identity_idx(&self) -> usize {
        self.identity as usize
    }

    /// True when every pair of elements commutes.
    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul[a * self.order + b] != self.mul[b * self.order + a] {
                    return false;
                }
            }
        }
        true
    }

    /// Cyclic group of order `n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Group> {
        check_order(n)?;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u16;
            }
        }
        Ok(Group::assemble(n, 0, mul, format!("cyclic:{n}")))
    }

    /// Dihedral group of order `2n`: indices `0..n` are the rotations `r^i`,
    /// indices `n..2n` are the reflections `s·r^i`.
    pub fn dihedral(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::BadParameter("dihedral parameter must be positive".into()));
        }
        let order = n
            .checked_mul(2)
            .ok_or(Error::OrderCap { requested: usize::MAX, cap: ORDER_CAP })?;
        check_order(order)?;
        let mut mul = vec![0u16; order * order];
        // Relations: r^n = s^2 = e and s r^i = r^{-i} s.
        for i in 0..n {
            for j in 0..n {
                mul[i * order + j] = ((i + j) % n) as u16;
                mul[i * order + (n + j)] = (n + (n + j - i) % n) as u16;
                mul[(n + i) * order + j] = (n + (i + j) % n) as u16;
                mul[(n + i) * order + (n + j)] = ((n + j - i) % n) as u16;
            }
        }
        Ok(Group::assemble(order, 0, mul, format!("dihedral:{n}")))
    }

    /// Symmetric group on `n` letters, `n ≤ 6`. Elements are the
    /// permutations of `0..n` in lexicographic one-line order, so the
    /// identity permutation sits at index 0. Products compose right to
    /// left: `(pq)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::BadParameter("symmetric parameter must be positive".into()));
        }
        if n > 6 {
            let mut requested: usize = 1;
            for k in 2..=n {
                requested = requested.saturating_mul(k);
            }
            return Err(Error::OrderCap { requested, cap: ORDER_CAP });
        }
        let perms = lex_permutations(n);
        let order = perms.len();
        let index: BTreeMap<&[u8], u16> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i as u16))
            .collect();
        let mut mul = vec![0u16; order * order];
        let mut composed = vec![0u8; n];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                for i in 0..n {
                    composed[i] = p[q[i] as usize];
                }
                mul[a * order + b] = index[composed.as_slice()];
            }
        }
        Ok(Group::assemble(order, 0, mul, format!("symmetric:{n}")))
    }

    /// Quaternion group of order 8. Indices encode `{±1, ±i, ±j, ±k}` as
    /// `sign·4 + axis`, so `0..4` are `1, i, j, k` and `4..8` their
    /// negatives.
    pub fn quaternion() -> Group {
        // Basis products (axis, axis) -> (sign, axis) with axes 1=i, 2=j, 3=k.
        const BASIS: [[(u16, u16); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let order = 8;
        let mut mul = vec![0u16; order * order];
        for a in 0..8u16 {
            for b in 0..8u16 {
                let (sa, ua) = (a / 4, a % 4);
                let (sb, ub) = (b / 4, b % 4);
                let (sp, up) = BASIS[ua as usize][ub as usize];
                mul[(a * 8 + b) as usize] = ((sa ^ sb ^ sp) * 4 + up) as u16;
            }
        }
        Group::assemble(order as usize, 0, mul, "quaternion:8".to_string())
    }

    /// Direct product. The pair `(a, b)` gets index `a·|B| + b`, so the
    /// identity of a product of builders stays at index 0.
    pub fn product(left: &Group, right: &Group) -> Result<Group> {
        let order = left
            .order
            .checked_mul(right.order)
            .ok_or(Error::OrderCap { requested: usize::MAX, cap: ORDER_CAP })?;
        check_order(order)?;
        let (ol, orr) = (left.order, right.order);
        let mut mul = vec![0u16; order * order];
        for a1 in 0..ol {
            for b1 in 0..orr {
                let row = (a1 * orr + b1) * order;
                for a2 in 0..ol {
                    let pa = left.mul[a1 * ol + a2] as usize;
                    for b2 in 0..orr {
                        let pb = right.mul[b1 * orr + b2] as usize;
                        mul[row + a2 * orr + b2] = (pa * orr + pb) as u16;
                    }
                }
            }
        }
        let identity = left.identity as usize * orr + right.identity as usize;
        let label = format!("product:{},{}", left.label, right.label);
        Ok(Group::assemble(order, identity as u16, mul, label))
    }

    /// Validates a raw table against all four group axioms and builds the
    /// group on success.
    pub fn from_table(order: usize, identity: usize, entries: &[usize], label: &str) -> Result<Group> {
        let group = Group::from_table_unchecked(order, identity, entries, label)?;
        let report = verify_group_axioms(&group);
        if let Some((axiom, witness)) = report.first_failure() {
            return Err(Error::AxiomFailure { axiom, witness });
        }
        Ok(group)
    }

    /// Builds from a raw table with shape checks only, so a broken table can
    /// still be handed to [`verify_group_axioms`] for diagnosis. The inverse
    /// table may contain placeholders wherever no two-sided inverse exists.
    pub fn from_table_unchecked(
        order: usize,
        identity: usize,
        entries: &[usize],
        label: &str,
    ) -> Result<Group> {
        if order == 0 {
            return Err(Error::MalformedTable("order must be positive".into()));
        }
        check_order(order)?;
        if entries.len() != order * order {
            return Err(Error::MalformedTable(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if identity >= order {
            return Err(Error::MalformedTable(format!(
                "identity index {identity} out of range for order {order}"
            )));
        }
        let mut mul = Vec::with_capacity(entries.len());
        for &e in entries {
            if e > u16::MAX as usize {
                return Err(Error::MalformedTable(format!("entry {e} does not fit in 16 bits")));
            }
            mul.push(e as u16);
        }
        let inv = compute_inverses(order, identity, &mul);
        Ok(Group {
            order,
            identity: identity as u16,
            mul,
            inv,
            label: label.to_string(),
        })
    }

    fn assemble(order: usize, identity: u16, mul: Vec<u16>, label: String) -> Group {
        let inv = compute_inverses(order, identity as usize, &mul);
        Group {
            order,
            identity,
            mul,
            inv,
            label,
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(Error::BadParameter(String::from(
            "a group has at least the identity",
        )))
    } else if order > ORDER_CAP {
        Err(Error::OrderCap { requested: order, cap: ORDER_CAP })
    } else {
        Ok(())
    }
}

/// Scans each row for a two-sided inverse; rows without one keep the element
/// itself as a placeholder (only reachable through the unchecked path).
fn compute_inverses(order: usize, identity: usize, mul: &[u16]) -> Vec<u16> {
    let e = identity as u16;
    (0..order)
        .map(|a| {
            (0..order)
                .find(|&b| mul[a * order + b] == e && mul[b * order + a] == e)
                .unwrap_or(a) as u16
        })
        .collect()
}

/// Permutations of `0..n` in lexicographic order.
fn lex_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        // Classic next-permutation step.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

/// Outcome of one axiom check. The witness is the first counterexample in
/// scan order: `(a, b, product)` for closure, `(identity, a, product)` for
/// identity, `(a, a, a)` for a missing inverse, `(x, y, a)` with
/// `(xy)a ≠ x(ya)` for associativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    /// Whether the axiom held everywhere.
    pub pass: bool,
    /// First counterexample, when it did not.
    pub witness: Option<[usize; 3]>,
}

impl AxiomCheck {
    fn ok() -> AxiomCheck {
        AxiomCheck { pass: true, witness: None }
    }

    fn fail(witness: [usize; 3]) -> AxiomCheck {
        AxiomCheck { pass: false, witness: Some(witness) }
    }
}

/// Per-axiom verdicts for a multiplication table. Failures are data, not
/// errors; every table gets a full report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// Every product lands inside the index range.
    pub closure: AxiomCheck,
    /// The declared identity is neutral on both sides.
    pub identity: AxiomCheck,
    /// Every element has a two-sided inverse.
    pub inverses: AxiomCheck,
    /// The operation is associative.
    pub associativity: AxiomCheck,
}

impl AxiomReport {
    /// True when all four axioms hold.
    pub fn pass(&self) -> bool {
        self.closure.pass && self.identity.pass && self.inverses.pass && self.associativity.pass
    }

    /// First failing axiom with its witness, in the order closure,
    /// identity, inverses, associativity.
    pub fn first_failure(&self) -> Option<(&'static str, [usize; 3])> {
        let checks = [
            ("closure", &self.closure),
            ("identity", &self.identity),
            ("inverse", &self.inverses),
            ("associativity", &self.associativity),
        ];
        checks
            .into_iter()
            .find(|(_, c)| !c.pass)
            .map(|(name, c)| (name, c.witness.unwrap_or([0; 3])))
    }
}

/// Checks all four group axioms on a table, reporting the first
/// counterexample for each axiom that fails.
///
/// Associativity is not tested over all n³ triples. A generating set S is
/// grown greedily under magma closure, and `(xy)a = x(ya)` is checked for
/// all x, y and a ∈ S. Elements associating in that sense are closed under
/// products, and every element is a product of generators, so the check is
/// complete; its cost is O(n²·|S|) with |S| ≤ log₂ n on actual groups.
/// When closure itself fails, associativity is reported failed with the
/// closure witness, since the operation leaves the index range.
pub fn verify_group_axioms(group: &Group) -> AxiomReport {
    let n = group.order;
    let e = group.identity as usize;
    let mul = &group.mul;

    let mut closure = AxiomCheck::ok();
    'outer: for a in 0..n {
        for b in 0..n {
            let p = mul[a * n + b] as usize;
            if p >= n {
                closure = AxiomCheck::fail([a, b, p]);
                break 'outer;
            }
        }
    }

    let mut identity = AxiomCheck::ok();
    for a in 0..n {
        let left = mul[e * n + a] as usize;
        if left != a {
            identity = AxiomCheck::fail([e, a, left]);
            break;
        }
        let right = mul[a * n + e] as usize;
        if right != a {
            identity = AxiomCheck::fail([e, a, right]);
            break;
        }
    }

    let mut inverses = AxiomCheck::ok();
    for a in 0..n {
        let has = (0..n).any(|b| mul[a * n + b] as usize == e && mul[b * n + a] as usize == e);
        if !has {
            inverses = AxiomCheck::fail([a, a, a]);
            break;
        }
    }

    let associativity = if closure.pass {
        light_associativity(n, mul)
    } else {
        AxiomCheck::fail(closure.witness.unwrap())
    };

    AxiomReport { closure, identity, inverses, associativity }
}

/// Associativity via a greedily grown generating set; see
/// [`verify_group_axioms`]. Requires closure to have passed.
fn light_associativity(n: usize, mul: &[u16]) -> AxiomCheck {
    // Grow generators until their magma closure covers everything. The
    // closure must consider every bracketing, hence products in both orders
    // over all pairs; the i/j sweep below hits each pair once both sides
    // are enqueued.
    let mut in_set = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut gens: Vec<usize> = Vec::new();
    let mut processed = 0;
    for candidate in 0..n {
        if in_set[candidate] {
            continue;
        }
        gens.push(candidate);
        in_set[candidate] = true;
        members.push(candidate);
        while processed < members.len() {
            let x = members[processed];
            for j in 0..=processed {
                let y = members[j];
                for p in [mul[x * n + y] as usize, mul[y * n + x] as usize] {
                    if !in_set[p] {
                        in_set[p] = true;
                        members.push(p);
                    }
                }
            }
            processed += 1;
        }
    }

    let mut col = vec![0usize; n];
    for &a in &gens {
        for (y, slot) in col.iter_mut().enumerate() {
            *slot = mul[y * n + a] as usize;
        }
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            for y in 0..n {
                let lhs = mul[row[y] as usize * n + a] as usize;
                let rhs = row[col[y]] as usize;
                if lhs != rhs {
                    return AxiomCheck::fail([x, y, a]);
                }
            }
        }
    }
    AxiomCheck::ok()
}

/// Builds a group from a spec string.
///
/// Grammar: `cyclic:n`, `dihedral:n` (order 2n), `symmetric:n` (n ≤ 6),
/// `quaternion:8`, and `product:<spec>,<spec>` with arbitrary nesting.
/// `file:` specs need filesystem access and are handled by the `grpdouble`
/// front end, not here.
pub fn build_group(spec: &str) -> Result<Group> {
    let trimmed = spec.trim();
    let (group, rest) = parse_prefix(trimmed)?;
    if !rest.is_empty() {
        return Err(Error::UnknownSpec(spec.to_string()));
    }
    Ok(group)
}

fn parse_prefix(spec: &str) -> Result<(Group, &str)> {
    if let Some(rest) = spec.strip_prefix("cyclic:") {
        let (n, rest) = take_number(rest, spec)?;
        Ok((Group::cyclic(n)?, rest))
    } else if let Some(rest) = spec.strip_prefix("dihedral:") {
        let (n, rest) = take_number(rest, spec)?;
        Ok((Group::dihedral(n)?, rest))
    } else if let Some(rest) = spec.strip_prefix("symmetric:") {
        let (n, rest) = take_number(rest, spec)?;
        Ok((Group::symmetric(n)?, rest))
    } else if let Some(rest) = spec.strip_prefix("quaternion:") {
        let (n, rest) = take_number(rest, spec)?;
        if n != 8 {
            return Err(Error::UnknownSpec(spec.to_string()));
        }
        Ok((Group::quaternion(), rest))
    } else if let Some(rest) = spec.strip_prefix("product:") {
        let (left, rest) = parse_prefix(rest)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::UnknownSpec(spec.to_string()))?;
        let (right, rest) = parse_prefix(rest)?;
        Ok((Group::product(&left, &right)?, rest))
    } else if spec.starts_with("file:") {
        Err(Error::UnknownSpec(
            "file: specs need the grpdouble front end, which has filesystem access".to_string(),
        ))
    } else {
        Err(Error::UnknownSpec(spec.to_string()))
    }
}

fn take_number<'a>(text: &'a str, whole: &str) -> Result<(usize, &'a str)> {
    let digits = text.len() - text.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return Err(Error::UnknownSpec(whole.to_string()));
    }
    let value: usize = text[..digits]
        .parse()
        .map_err(|_| Error::UnknownSpec(whole.to_string()))?;
    Ok((value, &text[digits..]))
}
