//! Flag orderings: a decomposition of the ground set plus an ordering of the
//! remaining members such that every prefix is a flag building set.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::setcore::{
    chain_decomposition, find_binary_decomposition, graphical_building_set, BuildingSet,
    Decomposition, ElementSet, SetError, SimpleGraph, MAX_ELEMENTS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("building set is not connected")]
    NotConnected,
    #[error("building set is not flag: {0} has no splitting pair")]
    NotFlag(ElementSet),
    #[error("decomposition is not contained in the building set")]
    DecompositionNotInB,
    #[error("greedy construction stalled after {placed} of {total} elements")]
    Stalled { placed: usize, total: usize },
    #[error("size {0} is outside 2..=64")]
    InvalidSize(usize),
    #[error("index {index} is outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid flag ordering: {0}")]
    Invalid(#[from] OrderingDefect),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Why a candidate ordering fails. Indices are 1-based positions in the
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingDefect {
    #[error("decomposition is not a minimal flag building set on the ground set: {0}")]
    BadDecomposition(String),
    #[error("decomposition member {0} is not in the building set")]
    DecompositionNotInB(ElementSet),
    #[error("b_{index} = {set} is not in the building set")]
    NotInB { index: usize, set: ElementSet },
    #[error("b_{index} = {set} already belongs to the decomposition")]
    InDecomposition { index: usize, set: ElementSet },
    #[error("b_{index} = {set} repeats an earlier element")]
    Repeated { index: usize, set: ElementSet },
    #[error("union axiom fails at prefix {index}: {set} ∪ {other} = {union} is missing")]
    UnionAxiom {
        index: usize,
        set: ElementSet,
        other: ElementSet,
        union: ElementSet,
    },
    #[error("flagness fails at prefix {index}: {set} has no disjoint covering pair among earlier elements")]
    NoSplit { index: usize, set: ElementSet },
    #[error("{0} is never listed")]
    Missing(ElementSet),
}

/// A decomposition `D` of the ground set together with an ordering
/// `b_1, .., b_k` of `B - D`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlagOrdering {
    bset: BuildingSet,
    decomposition: Decomposition,
    order: Vec<ElementSet>,
}

impl fmt::Debug for FlagOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagOrdering")
            .field("D", &self.decomposition.members())
            .field("order", &self.order)
            .finish()
    }
}

impl FlagOrdering {
    /// Validating constructor.
    pub fn new(
        bset: BuildingSet,
        decomposition: Decomposition,
        order: Vec<ElementSet>,
    ) -> Result<Self, OrderingError> {
        let o = Self::new_unchecked(bset, decomposition, order);
        o.verify()?;
        Ok(o)
    }

    /// No validation; pair with [`FlagOrdering::verify`].
    pub fn new_unchecked(
        bset: BuildingSet,
        decomposition: Decomposition,
        order: Vec<ElementSet>,
    ) -> Self {
        FlagOrdering {
            bset,
            decomposition,
            order,
        }
    }

    /// Takes `B = D ∪ {b_1, .., b_k}` and validates.
    pub fn from_parts(
        decomposition: Decomposition,
        order: Vec<ElementSet>,
    ) -> Result<Self, OrderingError> {
        let family: Vec<ElementSet> = decomposition
            .members()
            .iter()
            .chain(order.iter())
            .copied()
            .collect();
        let bset = BuildingSet::with_ground(decomposition.base(), family)?;
        Self::new(bset, decomposition, order)
    }

    pub fn building_set(&self) -> &BuildingSet {
        &self.bset
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn order(&self) -> &[ElementSet] {
        &self.order
    }

    /// `k = |B - D|`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `b_j` for `1 <= j <= k`.
    pub fn element(&self, j: usize) -> Option<ElementSet> {
        j.checked_sub(1).and_then(|i| self.order.get(i)).copied()
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<(), OrderingError> {
        if j == 0 || j > self.order.len() {
            return Err(OrderingError::IndexOutOfRange {
                index: j,
                len: self.order.len(),
            });
        }
        Ok(())
    }

    /// `D` followed by `b_1, .., b_k`; the first `|D| + j` entries are `B_j`.
    pub fn sequence(&self) -> Vec<ElementSet> {
        self.decomposition
            .members()
            .iter()
            .chain(self.order.iter())
            .copied()
            .collect()
    }

    /// `B_j = D ∪ {b_1, .., b_j}` as a building set.
    pub fn prefix(&self, j: usize) -> BuildingSet {
        let j = j.min(self.order.len());
        let members: Vec<ElementSet> =
            self.sequence()[..self.decomposition.members().len() + j].to_vec();
        BuildingSet::from_family_unchecked(self.bset.ground(), members)
    }

    /// The flag ordering `(D, b_1, .., b_j)` of `B_j`.
    pub fn truncate(&self, j: usize) -> FlagOrdering {
        let j = j.min(self.order.len());
        FlagOrdering {
            bset: self.prefix(j),
            decomposition: self.decomposition.clone(),
            order: self.order[..j].to_vec(),
        }
    }

    /// Checks every flag-ordering axiom, reporting the first failure.
    pub fn verify(&self) -> Result<(), OrderingDefect> {
        verify_flag_ordering(&self.bset, &self.decomposition, &self.order)
    }
}

/// Validator for `(D, b_1, .., b_k)` as a flag ordering of `bset`.
pub fn verify_flag_ordering(
    bset: &BuildingSet,
    decomposition: &Decomposition,
    order: &[ElementSet],
) -> Result<(), OrderingDefect> {
    let ground = bset.ground();
    Decomposition::new(ground, decomposition.members().iter().copied())
        .map_err(|e| OrderingDefect::BadDecomposition(e.to_string()))?;
    if let Some(&d) = decomposition.members().iter().find(|d| !bset.contains(**d)) {
        return Err(OrderingDefect::DecompositionNotInB(d));
    }
    let mut current: Vec<ElementSet> = decomposition.members().to_vec();
    let mut present: HashSet<ElementSet> = current.iter().copied().collect();
    for (pos, &set) in order.iter().enumerate() {
        let index = pos + 1;
        if !bset.contains(set) {
            return Err(OrderingDefect::NotInB { index, set });
        }
        if decomposition.contains(set) {
            return Err(OrderingDefect::InDecomposition { index, set });
        }
        if present.contains(&set) {
            return Err(OrderingDefect::Repeated { index, set });
        }
        for &other in &current {
            if other.intersects(set) {
                let union = other.union(set);
                if union != set && !present.contains(&union) {
                    return Err(OrderingDefect::UnionAxiom {
                        index,
                        set,
                        other,
                        union,
                    });
                }
            }
        }
        let splits = current
            .iter()
            .any(|&d| d.is_proper_subset(set) && present.contains(&set.difference(d)));
        if !splits {
            return Err(OrderingDefect::NoSplit { index, set });
        }
        current.push(set);
        present.insert(set);
    }
    if let Some(&missing) = bset.members().iter().find(|m| !present.contains(m)) {
        return Err(OrderingDefect::Missing(missing));
    }
    Ok(())
}

/// Candidate order for the greedy construction.
#[derive(Clone, Copy)]
pub enum Strategy<'a> {
    /// Canonical family order.
    Lex,
    /// A seeded shuffle of the canonical order.
    Random(u64),
    /// Sort candidates by a comparator.
    Comparator(&'a (dyn Fn(&ElementSet, &ElementSet) -> Ordering + Sync)),
}

impl fmt::Debug for Strategy<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Lex => f.write_str("Lex"),
            Strategy::Random(seed) => write!(f, "Random({seed})"),
            Strategy::Comparator(_) => f.write_str("Comparator"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct OrderingOptions {
    /// Use this decomposition instead of the default one of the ground set.
    pub decomposition: Option<Decomposition>,
    /// Fall back to exhaustive search if the greedy scan stalls. The greedy
    /// scan is complete for connected flag building sets, so this is a
    /// self-check only.
    pub backtrack: bool,
}

pub fn find_flag_ordering(
    bset: &BuildingSet,
    strategy: Strategy<'_>,
) -> Result<FlagOrdering, OrderingError> {
    find_flag_ordering_with(bset, strategy, &OrderingOptions::default())
}

/// Greedy construction: at each step add the first remaining candidate
/// (in strategy order) whose addition keeps a flag building set.
pub fn find_flag_ordering_with(
    bset: &BuildingSet,
    strategy: Strategy<'_>,
    options: &OrderingOptions,
) -> Result<FlagOrdering, OrderingError> {
    if !bset.is_connected() {
        return Err(OrderingError::NotConnected);
    }
    if let Some(b) = bset.first_unsplittable() {
        return Err(OrderingError::NotFlag(b));
    }
    let decomposition = match &options.decomposition {
        Some(d) => {
            if d.base() != bset.ground() || d.members().iter().any(|m| !bset.contains(*m)) {
                return Err(OrderingError::DecompositionNotInB);
            }
            d.clone()
        }
        None => find_binary_decomposition(bset, bset.ground(), None)?,
    };

    let mut candidates: Vec<ElementSet> = bset
        .members()
        .iter()
        .copied()
        .filter(|m| !decomposition.contains(*m))
        .collect();
    match strategy {
        Strategy::Lex => {}
        Strategy::Random(seed) => candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        Strategy::Comparator(cmp) => candidates.sort_by(cmp),
    }

    let total = candidates.len();
    let mut current = decomposition.to_building_set();
    let mut order = Vec::with_capacity(total);
    while !candidates.is_empty() {
        match candidates.iter().position(|&c| current.admits(c)) {
            Some(pos) => {
                let c = candidates.remove(pos);
                current = current.with_member_unchecked(c);
                order.push(c);
            }
            None if options.backtrack => {
                let rest = backtrack(&current, &candidates).ok_or(OrderingError::Stalled {
                    placed: order.len(),
                    total,
                })?;
                order.extend(rest);
                break;
            }
            None => {
                return Err(OrderingError::Stalled {
                    placed: order.len(),
                    total,
                })
            }
        }
    }
    Ok(FlagOrdering::new_unchecked(
        bset.clone(),
        decomposition,
        order,
    ))
}

fn backtrack(current: &BuildingSet, remaining: &[ElementSet]) -> Option<Vec<ElementSet>> {
    if remaining.is_empty() {
        return Some(Vec::new());
    }
    for (pos, &c) in remaining.iter().enumerate() {
        if current.admits(c) {
            let mut rest = remaining.to_vec();
            rest.remove(pos);
            if let Some(mut tail) = backtrack(&current.with_member_unchecked(c), &rest) {
                tail.insert(0, c);
                return Some(tail);
            }
        }
    }
    None
}

/// Order for `B(K_n)` and `B(K_{1,n-1})`: larger max later; for equal max the
/// larger set first; for equal max and size, the set containing the minimum
/// of the symmetric difference first.
pub fn compare_max_size_symdiff(a: &ElementSet, b: &ElementSet) -> Ordering {
    ElementSet::max(*a)
        .cmp(&ElementSet::max(*b))
        .then_with(|| b.len().cmp(&a.len()))
        .then_with(|| match a.symmetric_difference(*b).min() {
            None => Ordering::Equal,
            Some(m) if a.contains(m) => Ordering::Less,
            Some(_) => Ordering::Greater,
        })
}

/// Order for `B(Path_n)`: larger max later; for equal max the larger set first.
pub fn compare_max_size(a: &ElementSet, b: &ElementSet) -> Ordering {
    ElementSet::max(*a)
        .cmp(&ElementSet::max(*b))
        .then_with(|| b.len().cmp(&a.len()))
}

fn named_ordering(
    graph: SimpleGraph,
    decomposition: Decomposition,
    cmp: fn(&ElementSet, &ElementSet) -> Ordering,
) -> Result<FlagOrdering, OrderingError> {
    let bset = graphical_building_set(&graph);
    let mut order: Vec<ElementSet> = bset
        .members()
        .iter()
        .copied()
        .filter(|m| !decomposition.contains(*m))
        .collect();
    order.sort_by(cmp);
    for w in order.windows(2) {
        assert_eq!(
            cmp(&w[0], &w[1]),
            Ordering::Less,
            "comparator tie between {} and {}",
            w[0],
            w[1]
        );
    }
    FlagOrdering::new(bset, decomposition, order)
}

fn check_named_size(n: usize) -> Result<(), OrderingError> {
    if !(2..=MAX_ELEMENTS).contains(&n) {
        return Err(OrderingError::InvalidSize(n));
    }
    Ok(())
}

/// The flag ordering of `B(K_n)` with `D = {{1}, .., {n}, [2], .., [n]}`.
pub fn ordering_kn(n: usize) -> Result<FlagOrdering, OrderingError> {
    check_named_size(n)?;
    named_ordering(
        SimpleGraph::complete(n)?,
        chain_decomposition(n),
        compare_max_size_symdiff,
    )
}

/// The flag ordering of `B(Path_n)` (intervals) with the chain decomposition.
pub fn ordering_pathn(n: usize) -> Result<FlagOrdering, OrderingError> {
    check_named_size(n)?;
    named_ordering(
        SimpleGraph::path(n)?,
        chain_decomposition(n),
        compare_max_size,
    )
}

/// The flag ordering of `B(K_{1,n-1})` (hub `1`) with the chain decomposition.
pub fn ordering_star(n: usize) -> Result<FlagOrdering, OrderingError> {
    check_named_size(n)?;
    named_ordering(
        SimpleGraph::star(n)?,
        chain_decomposition(n),
        compare_max_size_symdiff,
    )
}
