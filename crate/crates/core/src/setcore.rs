//! Ground-set subsets, building sets and their structural operations.
//!
//! Every subset of the ground set `{1, .., 64}` is a single machine word
//! ([`ElementSet`]); a [`BuildingSet`] is a canonically sorted family of such
//! words together with the ground set it lives on. Restriction keeps the
//! original labels, so a restricted or contracted building set may live on a
//! ground set such as `{2, 3, 4}` rather than `[3]`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest admissible ground-set label.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("ground set size {0} is outside 1..=64")]
    InvalidGroundSize(usize),
    #[error("element {0} is outside 1..=64")]
    ElementOutOfRange(usize),
    #[error("graph loop at vertex {0}")]
    Loop(usize),
    #[error("building sets cannot contain the empty set")]
    EmptySetMember,
    #[error("{set} is not contained in the ground set {ground}")]
    OutOfRange { set: ElementSet, ground: ElementSet },
    #[error("{first} and {second} intersect but their union {union} is missing")]
    UnionAxiomViolation {
        first: ElementSet,
        second: ElementSet,
        union: ElementSet,
    },
    #[error("restriction or contraction by the empty set")]
    EmptyArgument,
    #[error("contraction by the whole ground set {0}")]
    FullContraction(ElementSet),
    #[error("{0} is not a member of the building set")]
    NotAMember(ElementSet),
    #[error("{inner} is not a proper member-subset of {outer}")]
    InvalidMustContain {
        inner: ElementSet,
        outer: ElementSet,
    },
    #[error("building set is not flag: {0} has no splitting pair")]
    NotFlag(ElementSet),
    #[error("malformed binary tree: {0}")]
    MalformedTree(String),
    #[error("malformed decomposition of {base}: {reason}")]
    MalformedDecomposition { base: ElementSet, reason: String },
}

/// A subset of `{1, .., 64}` stored as a bitmask (bit `i - 1` is element `i`).
///
/// The `Ord` impl is the canonical family order: by cardinality, then by
/// bitmask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{i}`; panics if `i` is not in `1..=64`.
    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_ELEMENTS).contains(&i), "element {i} out of range");
        ElementSet(1u64 << (i - 1))
    }

    /// The interval `[lo, hi]`, empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::EMPTY;
        }
        assert!(
            lo >= 1 && hi <= MAX_ELEMENTS,
            "interval [{lo},{hi}] out of range"
        );
        let width = hi - lo + 1;
        let mask = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        ElementSet(mask << (lo - 1))
    }

    /// `[n] = {1, .., n}`.
    pub fn full(n: usize) -> Self {
        Self::interval(1, n)
    }

    pub fn try_from_elements<I: IntoIterator<Item = usize>>(items: I) -> Result<Self, SetError> {
        let mut bits = 0u64;
        for i in items {
            if !(1..=MAX_ELEMENTS).contains(&i) {
                return Err(SetError::ElementOutOfRange(i));
            }
            bits |= 1u64 << (i - 1);
        }
        Ok(ElementSet(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_ELEMENTS).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ElementSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersects(self, other: ElementSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        !self.intersects(other)
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Nested or disjoint.
    pub fn is_laminar_with(self, other: ElementSet) -> bool {
        self.is_disjoint(other) || self.is_subset(other) || other.is_subset(self)
    }

    /// Renumber the elements of `self` by their rank inside `ground`
    /// (the smallest element of `ground` becomes 1).
    pub fn compress(self, ground: ElementSet) -> ElementSet {
        let mut out = 0u64;
        for (rank, g) in ground.iter().enumerate() {
            if self.contains(g) {
                out |= 1u64 << rank;
            }
        }
        ElementSet(out)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    /// Panics on elements outside `1..=64`; use
    /// [`ElementSet::try_from_elements`] for untrusted input.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::try_from_elements(iter).expect("element out of range")
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ElementSet {
    type Err = SetError;

    /// Accepts `{1,2,3}`, `1 2 3`, `[1, 2]` and similar.
    fn from_str(s: &str) -> Result<Self, SetError> {
        let cleaned: String = s
            .chars()
            .map(|c| if c.is_ascii_digit() { c } else { ' ' })
            .collect();
        let items = cleaned
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| SetError::ElementOutOfRange(0))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::try_from_elements(items)
    }
}

/// Build a set from a literal list of elements.
#[macro_export]
macro_rules! eset {
    ($($x:expr),* $(,)?) => {
        $crate::setcore::ElementSet::from_iter([$($x as usize),*])
    };
}

/// A simple undirected graph on `{1, .., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Result<Self, SetError> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(SetError::InvalidGroundSize(n));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(
        n: usize,
        edges: I,
    ) -> Result<Self, SetError> {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; loops are rejected, repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), SetError> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(SetError::ElementOutOfRange(x));
            }
        }
        if u == v {
            return Err(SetError::Loop(u));
        }
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> ElementSet {
        ElementSet(self.adj[v - 1])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(v)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complete(n: usize) -> Result<Self, SetError> {
        let mut g = Self::new(n)?;
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, SetError> {
        Self::from_edges(n, (1..n).map(|i| (i, i + 1)))
    }

    /// The cycle `1 - 2 - .. - n - 1`; for `n <= 2` this degenerates to a path.
    pub fn cycle(n: usize) -> Result<Self, SetError> {
        let mut g = Self::path(n)?;
        if n >= 3 {
            g.add_edge(n, 1)?;
        }
        Ok(g)
    }

    /// `K_{1,n-1}` with hub `1`.
    pub fn star(n: usize) -> Result<Self, SetError> {
        Self::from_edges(n, (2..=n).map(|i| (1, i)))
    }

    /// Whether the subgraph induced on `set` is connected (and nonempty).
    pub fn induces_connected(&self, set: ElementSet) -> bool {
        let Some(start) = set.min() else {
            return false;
        };
        let mut seen = ElementSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for v in frontier {
                next = next.union(self.neighbors(v));
            }
            frontier = next.intersection(set).difference(seen);
            seen = seen.union(frontier);
        }
        seen == set
    }
}

/// A family of nonempty subsets of a ground set that contains every
/// singleton and is closed under unions of intersecting members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BuildingSet {
    ground: ElementSet,
    family: Vec<ElementSet>,
}

impl fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BuildingSet")
            .field("ground", &self.ground)
            .field("family", &self.family)
            .finish()
    }
}

impl fmt::Display for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.family.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

fn check_ground_size(n: usize) -> Result<ElementSet, SetError> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(SetError::InvalidGroundSize(n));
    }
    Ok(ElementSet::full(n))
}

fn check_members(ground: ElementSet, family: &[ElementSet]) -> Result<(), SetError> {
    for &s in family {
        if s.is_empty() {
            return Err(SetError::EmptySetMember);
        }
        if !s.is_subset(ground) {
            return Err(SetError::OutOfRange { set: s, ground });
        }
    }
    Ok(())
}

fn canonicalize(
    ground: ElementSet,
    family: impl IntoIterator<Item = ElementSet>,
) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = family
        .into_iter()
        .chain(ground.iter().map(ElementSet::singleton))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Validating constructor on the ground set `[n]`. Singletons are added;
/// a family that violates the union axiom is rejected, never closed.
pub fn make_building_set(n: usize, family: &[ElementSet]) -> Result<BuildingSet, SetError> {
    let ground = check_ground_size(n)?;
    BuildingSet::with_ground(ground, family.iter().copied())
}

/// Smallest building set on `[n]` containing `family`.
pub fn closure(n: usize, family: &[ElementSet]) -> Result<BuildingSet, SetError> {
    let ground = check_ground_size(n)?;
    BuildingSet::closure_on(ground, family.iter().copied())
}

/// Members are the vertex sets of connected induced subgraphs.
pub fn graphical_building_set(graph: &SimpleGraph) -> BuildingSet {
    let ground = ElementSet::full(graph.n());
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack: Vec<ElementSet> = ground.iter().map(ElementSet::singleton).collect();
    seen.extend(stack.iter().map(|s| s.bits()));
    let mut family = stack.clone();
    while let Some(s) = stack.pop() {
        let mut boundary = ElementSet::EMPTY;
        for v in s {
            boundary = boundary.union(graph.neighbors(v));
        }
        for u in boundary.difference(s) {
            let t = s.union(ElementSet::singleton(u));
            if seen.insert(t.bits()) {
                family.push(t);
                stack.push(t);
            }
        }
    }
    family.sort_unstable();
    BuildingSet { ground, family }
}

pub fn restriction(b: &BuildingSet, set: ElementSet) -> Result<BuildingSet, SetError> {
    b.restriction(set)
}

pub fn contraction(b: &BuildingSet, set: ElementSet) -> Result<BuildingSet, SetError> {
    b.contraction(set)
}

pub fn maximal_elements(b: &BuildingSet) -> Vec<ElementSet> {
    b.maximal_elements()
}

pub fn is_flag(b: &BuildingSet) -> bool {
    b.is_flag()
}

impl BuildingSet {
    /// Validating constructor on an arbitrary ground set.
    pub fn with_ground(
        ground: ElementSet,
        family: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, SetError> {
        if ground.is_empty() {
            return Err(SetError::InvalidGroundSize(0));
        }
        let family: Vec<ElementSet> = family.into_iter().collect();
        check_members(ground, &family)?;
        let family = canonicalize(ground, family);
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                if a.intersects(b) {
                    let u = a.union(b);
                    if family.binary_search(&u).is_err() {
                        return Err(SetError::UnionAxiomViolation {
                            first: a,
                            second: b,
                            union: u,
                        });
                    }
                }
            }
        }
        Ok(BuildingSet { ground, family })
    }

    pub fn closure_on(
        ground: ElementSet,
        family: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, SetError> {
        if ground.is_empty() {
            return Err(SetError::InvalidGroundSize(0));
        }
        let family: Vec<ElementSet> = family.into_iter().collect();
        check_members(ground, &family)?;
        let mut items = canonicalize(ground, family);
        let mut seen: HashSet<u64> = items.iter().map(|s| s.bits()).collect();
        let mut idx = 0;
        while idx < items.len() {
            let s = items[idx];
            let mut t = 0;
            while t < items.len() {
                let other = items[t];
                if s.intersects(other) {
                    let u = s.union(other);
                    if seen.insert(u.bits()) {
                        items.push(u);
                    }
                }
                t += 1;
            }
            idx += 1;
        }
        items.sort_unstable();
        Ok(BuildingSet {
            ground,
            family: items,
        })
    }

    /// Callers guarantee the axioms; `family` need not be sorted.
    pub(crate) fn from_family_unchecked(ground: ElementSet, mut family: Vec<ElementSet>) -> Self {
        family.sort_unstable();
        family.dedup();
        debug_assert!(family.iter().all(|s| !s.is_empty() && s.is_subset(ground)));
        BuildingSet { ground, family }
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    /// Number of ground-set elements.
    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    /// Largest label of the ground set (`n` for ground `[n]`).
    pub fn n(&self) -> usize {
        self.ground.max().unwrap_or(0)
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.family.binary_search(&s).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.contains(self.ground)
    }

    /// `{b in B : b ⊆ set}`, on ground set `set` (labels kept).
    pub fn restriction(&self, set: ElementSet) -> Result<BuildingSet, SetError> {
        if set.is_empty() {
            return Err(SetError::EmptyArgument);
        }
        if !set.is_subset(self.ground) {
            return Err(SetError::OutOfRange {
                set,
                ground: self.ground,
            });
        }
        let family = self
            .family
            .iter()
            .copied()
            .filter(|b| b.is_subset(set))
            .collect();
        Ok(BuildingSet {
            ground: set,
            family,
        })
    }

    /// `{b \ set : b in B, b ⊄ set}`, on ground set `ground \ set`.
    pub fn contraction(&self, set: ElementSet) -> Result<BuildingSet, SetError> {
        if set.is_empty() {
            return Err(SetError::EmptyArgument);
        }
        if !set.is_subset(self.ground) {
            return Err(SetError::OutOfRange {
                set,
                ground: self.ground,
            });
        }
        if set == self.ground {
            return Err(SetError::FullContraction(set));
        }
        let ground = self.ground.difference(set);
        let family = self
            .family
            .iter()
            .filter(|b| !b.is_subset(set))
            .map(|b| b.difference(set))
            .collect();
        Ok(Self::from_family_unchecked(ground, family))
    }

    /// Inclusion-maximal members, in canonical order. They partition the
    /// ground set.
    pub fn maximal_elements(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = Vec::new();
        for &s in self.family.iter().rev() {
            if !out.iter().any(|m| s.is_subset(*m)) {
                out.push(s);
            }
        }
        out.sort_unstable();
        out
    }

    /// The first disjoint pair `(d1, d2)` of members with union `b`, where
    /// `d1` contains `min(b)` and is smallest in canonical order.
    pub fn split(&self, b: ElementSet) -> Option<(ElementSet, ElementSet)> {
        self.split_where(b, |_, _| true)
    }

    fn split_where(
        &self,
        b: ElementSet,
        mut accept: impl FnMut(ElementSet, ElementSet) -> bool,
    ) -> Option<(ElementSet, ElementSet)> {
        let lowest = b.min()?;
        self.family
            .iter()
            .copied()
            .filter(|d| d.contains(lowest) && d.is_proper_subset(b))
            .map(|d| (d, b.difference(d)))
            .find(|&(d1, d2)| self.contains(d2) && accept(d1, d2))
    }

    /// Every non-singleton member splits into two disjoint members.
    pub fn is_flag(&self) -> bool {
        self.family
            .iter()
            .filter(|b| b.len() > 1)
            .all(|&b| self.split(b).is_some())
    }

    /// First non-singleton member without a splitting pair.
    pub fn first_unsplittable(&self) -> Option<ElementSet> {
        self.family
            .iter()
            .copied()
            .find(|&b| b.len() > 1 && self.split(b).is_none())
    }

    /// Structural key with the ground set renumbered to `1..=m`.
    pub fn dense_key(&self) -> (usize, Vec<u64>) {
        let mut fam: Vec<ElementSet> = self
            .family
            .iter()
            .map(|s| s.compress(self.ground))
            .collect();
        fam.sort_unstable();
        (
            self.ground.len(),
            fam.into_iter().map(ElementSet::bits).collect(),
        )
    }

    /// Whether `self ∪ {s}` is still a building set in which `s` splits
    /// into two disjoint earlier members.
    pub fn admits(&self, s: ElementSet) -> bool {
        if s.is_empty() || !s.is_subset(self.ground) || self.contains(s) {
            return false;
        }
        let union_ok = self.family.iter().all(|&x| {
            if !x.intersects(s) {
                return true;
            }
            let u = x.union(s);
            u == s || self.contains(u)
        });
        union_ok && self.split(s).is_some()
    }

    /// `self ∪ {s}` without checking the axioms.
    pub(crate) fn with_member_unchecked(&self, s: ElementSet) -> BuildingSet {
        let mut family = self.family.clone();
        if let Err(pos) = family.binary_search(&s) {
            family.insert(pos, s);
        }
        BuildingSet {
            ground: self.ground,
            family,
        }
    }
}

/// A minimal flag building set on `base`, sitting inside some building set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    base: ElementSet,
    members: Vec<ElementSet>,
}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Decomposition")
            .field("base", &self.base)
            .field("members", &self.members)
            .finish()
    }
}

impl Decomposition {
    /// Validates: `2|base| - 1` members, laminar, contains `base` and its
    /// singletons, and every non-singleton is the disjoint union of its two
    /// maximal proper sub-members.
    pub fn new(
        base: ElementSet,
        members: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, SetError> {
        let bad = |reason: String| SetError::MalformedDecomposition { base, reason };
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if base.is_empty() {
            return Err(SetError::EmptyArgument);
        }
        if let Some(s) = members.iter().find(|s| s.is_empty() || !s.is_subset(base)) {
            return Err(bad(format!("{s} is not a nonempty subset of the base")));
        }
        if members.len() != 2 * base.len() - 1 {
            return Err(bad(format!(
                "{} members, expected {}",
                members.len(),
                2 * base.len() - 1
            )));
        }
        if members.binary_search(&base).is_err() {
            return Err(bad("base is missing".into()));
        }
        if let Some(i) = base
            .iter()
            .find(|&i| members.binary_search(&ElementSet::singleton(i)).is_err())
        {
            return Err(bad(format!("singleton {{{i}}} is missing")));
        }
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                if !a.is_laminar_with(b) {
                    return Err(bad(format!("{a} and {b} overlap")));
                }
            }
        }
        let decomposition = Decomposition { base, members };
        for &m in decomposition.members.iter().filter(|m| m.len() > 1) {
            let children = decomposition.children(m);
            if children.len() != 2
                || children[0].union(children[1]) != m
                || children[0].intersects(children[1])
            {
                return Err(bad(format!("{m} is not split by its maximal sub-members")));
            }
        }
        Ok(decomposition)
    }

    pub(crate) fn new_unchecked(base: ElementSet, mut members: Vec<ElementSet>) -> Self {
        members.sort_unstable();
        members.dedup();
        Decomposition { base, members }
    }

    pub fn base(&self) -> ElementSet {
        self.base
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Maximal members strictly inside `m`.
    pub fn children(&self, m: ElementSet) -> Vec<ElementSet> {
        let inside: Vec<ElementSet> = self
            .members
            .iter()
            .copied()
            .filter(|s| s.is_proper_subset(m))
            .collect();
        inside
            .iter()
            .copied()
            .filter(|s| !inside.iter().any(|t| s.is_proper_subset(*t)))
            .collect()
    }

    /// The two maximal components of the base (`None` for a singleton base).
    pub fn maximal_components(&self) -> Option<(ElementSet, ElementSet)> {
        match self.children(self.base).as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn to_building_set(&self) -> BuildingSet {
        BuildingSet {
            ground: self.base,
            family: self.members.clone(),
        }
    }
}

/// A binary decomposition of `b` inside `bset`, optionally containing
/// `must_contain`. Deterministic: each split takes the canonically first
/// pair whose lower part contains `min` of the set being split, restricted
/// to pairs that keep `must_contain` inside one part.
pub fn find_binary_decomposition(
    bset: &BuildingSet,
    b: ElementSet,
    must_contain: Option<ElementSet>,
) -> Result<Decomposition, SetError> {
    if !bset.contains(b) {
        return Err(SetError::NotAMember(b));
    }
    if let Some(a) = must_contain {
        if !bset.contains(a) || !a.is_proper_subset(b) {
            return Err(SetError::InvalidMustContain { inner: a, outer: b });
        }
    }
    let mut members = Vec::with_capacity(2 * b.len() - 1);
    decompose_into(bset, b, must_contain, &mut members)?;
    Ok(Decomposition::new_unchecked(b, members))
}

fn decompose_into(
    bset: &BuildingSet,
    b: ElementSet,
    must_contain: Option<ElementSet>,
    out: &mut Vec<ElementSet>,
) -> Result<(), SetError> {
    out.push(b);
    if b.len() == 1 {
        return Ok(());
    }
    let (d1, d2) = bset
        .split_where(b, |d1, d2| match must_contain {
            None => true,
            Some(a) => a.is_subset(d1) || a.is_subset(d2),
        })
        .ok_or(SetError::NotFlag(b))?;
    for part in [d1, d2] {
        let inner = must_contain.filter(|a| a.is_proper_subset(part));
        decompose_into(bset, part, inner, out)?;
    }
    Ok(())
}

/// A rooted binary tree whose leaves are ground-set labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinaryTree {
    Leaf(usize),
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    /// Leaf set; errors on repeated or out-of-range leaves.
    pub fn leaves(&self) -> Result<ElementSet, SetError> {
        match self {
            BinaryTree::Leaf(i) => {
                if !(1..=MAX_ELEMENTS).contains(i) {
                    return Err(SetError::MalformedTree(format!("leaf {i} out of range")));
                }
                Ok(ElementSet::singleton(*i))
            }
            BinaryTree::Node(l, r) => {
                let (a, b) = (l.leaves()?, r.leaves()?);
                if a.intersects(b) {
                    return Err(SetError::MalformedTree(format!(
                        "leaves {} repeated",
                        a.intersection(b)
                    )));
                }
                Ok(a.union(b))
            }
        }
    }

    fn descendant_sets(&self, out: &mut Vec<ElementSet>) -> ElementSet {
        let s = match self {
            BinaryTree::Leaf(i) => ElementSet::singleton(*i),
            BinaryTree::Node(l, r) => l.descendant_sets(out).union(r.descendant_sets(out)),
        };
        out.push(s);
        s
    }
}

impl FromStr for BinaryTree {
    type Err = SetError;

    /// Parses nested pairs such as `((1,2),3)`.
    fn from_str(s: &str) -> Result<Self, SetError> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_tree(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(SetError::MalformedTree(format!("trailing input at {pos}")));
        }
        Ok(tree)
    }
}

fn parse_tree(tokens: &[char], pos: &mut usize) -> Result<BinaryTree, SetError> {
    let malformed = |msg: &str, at: usize| SetError::MalformedTree(format!("{msg} at {at}"));
    match tokens.get(*pos) {
        Some('(') => {
            *pos += 1;
            let left = parse_tree(tokens, pos)?;
            if tokens.get(*pos) != Some(&',') {
                return Err(malformed("expected ','", *pos));
            }
            *pos += 1;
            let right = parse_tree(tokens, pos)?;
            if tokens.get(*pos) != Some(&')') {
                return Err(malformed("expected ')'", *pos));
            }
            *pos += 1;
            Ok(BinaryTree::node(left, right))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while tokens.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let text: String = tokens[start..*pos].iter().collect();
            let leaf = text.parse().map_err(|_| malformed("bad leaf", start))?;
            Ok(BinaryTree::Leaf(leaf))
        }
        _ => Err(malformed("expected '(' or a leaf", *pos)),
    }
}

/// The descendant-set family of `tree`: a minimal flag building set on its
/// leaf set.
pub fn minimal_flag_from_tree(tree: &BinaryTree) -> Result<BuildingSet, SetError> {
    let ground = tree.leaves()?;
    let mut family = Vec::new();
    tree.descendant_sets(&mut family);
    Ok(BuildingSet::from_family_unchecked(ground, family))
}

/// `{1}, .., {n}, [2], .., [n]`: the decomposition shared by the named
/// orderings of the complete graph, the path and the star.
pub fn chain_decomposition(n: usize) -> Decomposition {
    let members = (1..=n)
        .map(ElementSet::singleton)
        .chain((2..=n).map(ElementSet::full))
        .collect();
    Decomposition::new_unchecked(ElementSet::full(n), members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[usize]]) -> Vec<ElementSet> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn element_set_basics() {
        let s = eset![2, 3, 4];
        assert_eq!(s.len(), 3);
        assert_eq!(s.min(), Some(2));
        assert_eq!(s.max(), Some(4));
        assert_eq!(s.to_string(), "{2,3,4}");
        assert_eq!("{2, 3,4}".parse::<ElementSet>().unwrap(), s);
        assert_eq!(ElementSet::interval(2, 4), s);
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(s.compress(eset![2, 3, 4, 7]), eset![1, 2, 3]);
        assert!(eset![3] < eset![1, 2]);
        assert!(ElementSet::try_from_elements([0]).is_err());
        assert!(ElementSet::try_from_elements([65]).is_err());
    }

    #[test]
    fn make_building_set_examples() {
        let b = make_building_set(2, &[]).unwrap();
        assert_eq!(b.members(), &fam(&[&[1], &[2]])[..]);

        let err = make_building_set(3, &fam(&[&[1, 2], &[2, 3]])).unwrap_err();
        assert_eq!(
            err,
            SetError::UnionAxiomViolation {
                first: eset![1, 2],
                second: eset![2, 3],
                union: eset![1, 2, 3]
            }
        );

        let b = make_building_set(3, &fam(&[&[1, 2], &[2, 3], &[1, 2, 3]])).unwrap();
        assert_eq!(b.len(), 6);

        assert_eq!(
            make_building_set(3, &[ElementSet::EMPTY]),
            Err(SetError::EmptySetMember)
        );
        assert!(matches!(
            make_building_set(3, &[eset![4]]),
            Err(SetError::OutOfRange { .. })
        ));
        assert_eq!(
            make_building_set(0, &[]),
            Err(SetError::InvalidGroundSize(0))
        );
    }

    #[test]
    fn closure_examples() {
        let b = closure(3, &fam(&[&[1, 2], &[2, 3]])).unwrap();
        assert_eq!(b, graphical_building_set(&SimpleGraph::path(3).unwrap()));
        assert_eq!(closure(3, &[]).unwrap().len(), 3);
        let b = closure(4, &fam(&[&[1, 2], &[2, 3], &[3, 4]])).unwrap();
        assert_eq!(b.len(), 10);
        assert_eq!(b, graphical_building_set(&SimpleGraph::path(4).unwrap()));
        assert!(closure(3, &[eset![5]]).is_err());
    }

    #[test]
    fn graphical_examples() {
        let p3 = graphical_building_set(&SimpleGraph::path(3).unwrap());
        assert_eq!(
            p3.members(),
            &fam(&[&[1], &[2], &[3], &[1, 2], &[2, 3], &[1, 2, 3]])[..]
        );
        assert_eq!(
            graphical_building_set(&SimpleGraph::complete(3).unwrap()).len(),
            7
        );

        // brute force over all 15 subsets of [4]
        let c4 = SimpleGraph::cycle(4).unwrap();
        let brute: Vec<ElementSet> = (1u64..16)
            .map(ElementSet::from_bits)
            .filter(|&s| c4.induces_connected(s))
            .collect();
        assert_eq!(brute.len(), 13);
        let b = graphical_building_set(&c4);
        assert_eq!(b.len(), 13);
        assert!(brute.iter().all(|&s| b.contains(s)));
    }

    #[test]
    fn restriction_and_contraction() {
        let k3 = graphical_building_set(&SimpleGraph::complete(3).unwrap());
        let r = k3.restriction(eset![1, 2]).unwrap();
        assert_eq!(r.members(), &fam(&[&[1], &[2], &[1, 2]])[..]);
        assert_eq!(r.ground(), eset![1, 2]);
        assert_eq!(k3.restriction(eset![2]).unwrap().members(), &[eset![2]]);

        let p5 = graphical_building_set(&SimpleGraph::path(5).unwrap());
        let r = p5.restriction(eset![2, 3, 4]).unwrap();
        assert_eq!(
            r.members(),
            &fam(&[&[2], &[3], &[4], &[2, 3], &[3, 4], &[2, 3, 4]])[..]
        );

        let p3 = graphical_building_set(&SimpleGraph::path(3).unwrap());
        let c = p3.contraction(eset![2]).unwrap();
        assert_eq!(c.members(), &fam(&[&[1], &[3], &[1, 3]])[..]);
        assert_eq!(c.ground(), eset![1, 3]);
        let c = p3.contraction(eset![1]).unwrap();
        assert_eq!(c.members(), &fam(&[&[2], &[3], &[2, 3]])[..]);
        let c = k3.contraction(eset![1]).unwrap();
        assert_eq!(c.members(), &fam(&[&[2], &[3], &[2, 3]])[..]);

        assert_eq!(
            p3.contraction(eset![1, 2, 3]),
            Err(SetError::FullContraction(eset![1, 2, 3]))
        );
        assert_eq!(
            p3.restriction(ElementSet::EMPTY),
            Err(SetError::EmptyArgument)
        );
    }

    #[test]
    fn maximal_elements_examples() {
        let p3 = graphical_building_set(&SimpleGraph::path(3).unwrap());
        assert_eq!(p3.maximal_elements(), vec![eset![1, 2, 3]]);
        assert_eq!(
            make_building_set(3, &[]).unwrap().maximal_elements(),
            fam(&[&[1], &[2], &[3]])
        );
        assert_eq!(
            closure(4, &[eset![1, 2]]).unwrap().maximal_elements(),
            fam(&[&[3], &[4], &[1, 2]])
        );
    }

    #[test]
    fn flagness() {
        assert!(graphical_building_set(&SimpleGraph::path(3).unwrap()).is_flag());
        let b = make_building_set(3, &[eset![1, 2, 3]]).unwrap();
        assert!(!b.is_flag());
        assert_eq!(b.first_unsplittable(), Some(eset![1, 2, 3]));
        let tree: BinaryTree = "((1,2),(3,4))".parse().unwrap();
        assert!(minimal_flag_from_tree(&tree).unwrap().is_flag());
    }

    #[test]
    fn binary_decomposition_examples() {
        let k3 = graphical_building_set(&SimpleGraph::complete(3).unwrap());
        let d = find_binary_decomposition(&k3, eset![1, 2, 3], Some(eset![1, 2])).unwrap();
        assert_eq!(
            d.members(),
            &fam(&[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]])[..]
        );
        assert_eq!(d.maximal_components(), Some((eset![3], eset![1, 2])));

        let d = find_binary_decomposition(&k3, eset![2], None).unwrap();
        assert_eq!(d.members(), &[eset![2]]);

        let bad = make_building_set(3, &[eset![1, 2, 3]]).unwrap();
        assert_eq!(
            find_binary_decomposition(&bad, eset![1, 2, 3], None),
            Err(SetError::NotFlag(eset![1, 2, 3]))
        );
        assert!(matches!(
            find_binary_decomposition(&k3, eset![1, 2], Some(eset![1, 2])),
            Err(SetError::InvalidMustContain { .. })
        ));
        assert_eq!(
            find_binary_decomposition(&bad, eset![1, 2], None),
            Err(SetError::NotAMember(eset![1, 2]))
        );
    }

    #[test]
    fn decomposition_validation() {
        assert!(Decomposition::new(
            eset![1, 2, 3],
            fam(&[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]])
        )
        .is_ok());
        // overlapping pairs
        assert!(
            Decomposition::new(eset![1, 2, 3], fam(&[&[1], &[2], &[3], &[1, 2], &[2, 3]])).is_err()
        );
        // wrong count
        assert!(Decomposition::new(eset![1, 2, 3], fam(&[&[1], &[2], &[3], &[1, 2, 3]])).is_err());
        assert!(Decomposition::new(
            eset![1, 2, 3, 4],
            fam(&[&[1], &[2], &[3], &[4], &[1, 2], &[1, 2, 4], &[1, 2, 3, 4]])
        )
        .is_ok());
        // {4} missing
        assert!(Decomposition::new(
            eset![1, 2, 3, 4],
            fam(&[
                &[1],
                &[2],
                &[3],
                &[1, 2],
                &[3, 4],
                &[1, 2, 3],
                &[1, 2, 3, 4]
            ])
        )
        .is_err());
    }

    #[test]
    fn trees() {
        let t: BinaryTree = "((1,2),3)".parse().unwrap();
        let b = minimal_flag_from_tree(&t).unwrap();
        assert_eq!(
            b.members(),
            &fam(&[&[1], &[2], &[3], &[1, 2], &[1, 2, 3]])[..]
        );
        let b = minimal_flag_from_tree(&BinaryTree::Leaf(5)).unwrap();
        assert_eq!(b.members(), &[eset![5]]);
        assert_eq!(b.ground(), eset![5]);
        let t: BinaryTree = "((1,2),(3,4))".parse().unwrap();
        let b = minimal_flag_from_tree(&t).unwrap();
        assert_eq!(
            b.members(),
            &fam(&[&[1], &[2], &[3], &[4], &[1, 2], &[3, 4], &[1, 2, 3, 4]])[..]
        );
        assert!(Decomposition::new(b.ground(), b.members().iter().copied()).is_ok());

        for bad in ["((1,2),1)", "(1,2", "(1)", "((1,2),0)", ""] {
            let parsed = bad
                .parse::<BinaryTree>()
                .and_then(|t| minimal_flag_from_tree(&t));
            assert!(matches!(parsed, Err(SetError::MalformedTree(_))), "{bad}");
        }
    }

    #[test]
    fn dense_key_ignores_labels() {
        let p3 = graphical_building_set(&SimpleGraph::path(3).unwrap());
        let p5 = graphical_building_set(&SimpleGraph::path(5).unwrap());
        let r = p5.restriction(eset![3, 4, 5]).unwrap();
        assert_eq!(p3.dense_key(), r.dense_key());
    }
}
