//! Face counts of the nested set complex, computed directly from `B`, and
//! the γ-vector derived from them.

use crate::polyvec::{
    coeff_from_count, f_to_h, h_to_gamma_with_degree, Coefficient, Poly, PolyError,
};
use crate::setcore::{BuildingSet, ElementSet};

/// Number of nested sets of each size. Entry 0 is the empty set.
pub fn nested_face_counts(b: &BuildingSet) -> Vec<u128> {
    let maximal = b.maximal_elements();
    let candidates: Vec<ElementSet> = b
        .members()
        .iter()
        .copied()
        .filter(|m| !maximal.contains(m))
        .collect();
    let mut counts = vec![0u128; b.ground_size() + 1];
    let mut members = Vec::new();
    let mut roots = Vec::new();
    extend(b, &candidates, 0, &mut members, &mut roots, &mut counts);
    while counts.len() > 1 && counts[counts.len() - 1] == 0 {
        counts.pop();
    }
    counts
}

// Candidates are visited in ascending canonical order, so each new member
// is never a subset of an existing one; it either swallows some roots or
// becomes a new root.
fn extend(
    b: &BuildingSet,
    candidates: &[ElementSet],
    start: usize,
    members: &mut Vec<ElementSet>,
    roots: &mut Vec<ElementSet>,
    counts: &mut [u128],
) {
    counts[members.len()] += 1;
    for (pos, &c) in candidates.iter().enumerate().skip(start) {
        if !members.iter().all(|m| m.is_laminar_with(c)) {
            continue;
        }
        let outside: Vec<ElementSet> = roots.iter().copied().filter(|r| r.is_disjoint(c)).collect();
        if !unions_avoid(b, c, &outside) {
            continue;
        }
        let saved = roots.clone();
        roots.retain(|r| r.is_disjoint(c));
        roots.push(c);
        members.push(c);
        extend(b, candidates, pos + 1, members, roots, counts);
        members.pop();
        *roots = saved;
    }
}

// No union of `c` with a nonempty set of roots disjoint from it lies in `B`.
// The roots inside `c` merge into `c` itself, so only outside roots matter.
fn unions_avoid(b: &BuildingSet, c: ElementSet, outside: &[ElementSet]) -> bool {
    let r = outside.len();
    (1u64..1 << r).all(|mask| {
        let union = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .fold(c, |acc, i| acc.union(outside[i]));
        !b.contains(union)
    })
}

/// f-vector of the nested set complex of `B`.
pub fn nested_f_vector<C: Coefficient>(b: &BuildingSet) -> Poly<C> {
    Poly::new(
        nested_face_counts(b)
            .into_iter()
            .map(coeff_from_count)
            .collect(),
    )
}

/// γ-vector of the nested set complex, with `d = |ground| - |B_max|`.
pub fn gamma_oracle<C: Coefficient>(b: &BuildingSet) -> Result<Poly<C>, PolyError> {
    let d = b.ground_size() - b.maximal_elements().len();
    let h = f_to_h(&nested_f_vector::<C>(b), d)?;
    h_to_gamma_with_degree(&h, d)
}
