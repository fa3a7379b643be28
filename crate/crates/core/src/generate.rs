//! Seeded random instances: decompositions, flag orderings, connected flag
//! building sets and graphs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ordering::{
    find_flag_ordering_with, FlagOrdering, OrderingError, OrderingOptions, Strategy,
};
use crate::setcore::{BuildingSet, Decomposition, ElementSet, SetError, SimpleGraph, MAX_ELEMENTS};

/// Every split `(d1, d2)` of `b` into disjoint members of `bset`, with
/// `min(b) ∈ d1`.
pub fn splits(bset: &BuildingSet, b: ElementSet) -> Vec<(ElementSet, ElementSet)> {
    let low = b.min();
    bset.members()
        .iter()
        .copied()
        .filter(|&d| d.is_proper_subset(b) && d.min() == low)
        .map(|d| (d, b.difference(d)))
        .filter(|&(_, rest)| bset.contains(rest))
        .collect()
}

/// A decomposition of `b` chosen by splitting uniformly at random.
pub fn random_decomposition<R: Rng>(
    bset: &BuildingSet,
    b: ElementSet,
    rng: &mut R,
) -> Result<Decomposition, SetError> {
    if !bset.contains(b) {
        return Err(SetError::NotAMember(b));
    }
    let mut members = Vec::new();
    let mut stack = vec![b];
    while let Some(s) = stack.pop() {
        members.push(s);
        if s.len() == 1 {
            continue;
        }
        let (d1, d2) = *splits(bset, s).choose(rng).ok_or(SetError::NotFlag(s))?;
        stack.push(d1);
        stack.push(d2);
    }
    Ok(Decomposition::new_unchecked(b, members))
}

/// A flag ordering with a random decomposition and a shuffled greedy scan.
pub fn random_ordering(bset: &BuildingSet, seed: u64) -> Result<FlagOrdering, OrderingError> {
    if !bset.is_connected() {
        return Err(OrderingError::NotConnected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let decomposition = random_decomposition(bset, bset.ground(), &mut rng)?;
    let options = OrderingOptions {
        decomposition: Some(decomposition),
        backtrack: false,
    };
    find_flag_ordering_with(bset, Strategy::Random(rng.gen()), &options)
}

/// Descendant sets of a random binary tree with leaves `[n]`.
pub fn random_tree_decomposition<R: Rng>(n: usize, rng: &mut R) -> Result<Decomposition, SetError> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(SetError::InvalidGroundSize(n));
    }
    let mut leaves: Vec<usize> = (1..=n).collect();
    leaves.shuffle(rng);
    let mut members = Vec::with_capacity(2 * n - 1);
    let mut stack = vec![leaves];
    while let Some(part) = stack.pop() {
        members.push(part.iter().copied().collect::<ElementSet>());
        if part.len() > 1 {
            let cut = rng.gen_range(1..part.len());
            let (left, right) = part.split_at(cut);
            stack.push(left.to_vec());
            stack.push(right.to_vec());
        }
    }
    Ok(Decomposition::new_unchecked(ElementSet::full(n), members))
}

/// A connected flag building set on `[n]`: a random decomposition grown by
/// random subsets whose addition keeps a flag building set.
pub fn random_flag_building_set<R: Rng>(n: usize, rng: &mut R) -> Result<BuildingSet, SetError> {
    let mut b = random_tree_decomposition(n, rng)?.to_building_set();
    if n < 3 {
        return Ok(b);
    }
    let attempts = rng.gen_range(0..=4 * (1usize << n.min(10)));
    let full = ElementSet::full(n).bits();
    for _ in 0..attempts {
        let s = ElementSet::from_bits(rng.gen::<u64>() & full);
        if s.len() >= 2 && !b.contains(s) && b.admits(s) {
            b = b.with_member_unchecked(s);
        }
    }
    Ok(b)
}

/// Erdős–Rényi graph on `[n]` with edge probability `p`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<SimpleGraph, SetError> {
    let mut g = SimpleGraph::new(n)?;
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::{graphical_building_set, is_flag};

    #[test]
    fn random_sets_are_connected_and_flag() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let b = random_flag_building_set(n, &mut rng).unwrap();
            assert!(b.is_connected() && is_flag(&b));
            assert!(BuildingSet::with_ground(b.ground(), b.members().to_vec()).is_ok());
        }
    }

    #[test]
    fn random_decompositions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = graphical_building_set(&SimpleGraph::cycle(6).unwrap());
        for _ in 0..20 {
            let d = random_decomposition(&b, b.ground(), &mut rng).unwrap();
            assert!(Decomposition::new(d.base(), d.members().to_vec()).is_ok());
            assert!(d.members().iter().all(|m| b.contains(*m)));
        }
        let t = random_tree_decomposition(5, &mut rng).unwrap();
        assert!(Decomposition::new(t.base(), t.members().to_vec()).is_ok());
    }

    #[test]
    fn random_orderings_verify_and_vary() {
        let b = graphical_building_set(&SimpleGraph::complete(4).unwrap());
        let orders: Vec<FlagOrdering> = (0..10).map(|s| random_ordering(&b, s).unwrap()).collect();
        assert!(orders.iter().all(|o| o.verify().is_ok()));
        assert!(orders.iter().any(|o| o != &orders[0]));
    }

    #[test]
    fn splits_of_k3() {
        let b = graphical_building_set(&SimpleGraph::complete(3).unwrap());
        assert_eq!(splits(&b, ElementSet::full(3)).len(), 3);
    }
}
