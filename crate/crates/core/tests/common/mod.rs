//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::hash::Hash;

use nestoflag::generate::splits;
use nestoflag::{BuildingSet, Decomposition, ElementSet, FlagComplex, FlagOrdering};

/// Face counts of the clique complex by checking every vertex subset.
pub fn brute_clique_counts<L: Clone + Eq + Hash + std::fmt::Debug>(
    g: &FlagComplex<L>,
) -> Vec<u128> {
    let n = g.num_vertices();
    assert!(n <= 22, "brute force is exponential");
    let mut counts = vec![0u128; n + 1];
    for mask in 0u64..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let clique = vs
            .iter()
            .enumerate()
            .all(|(a, &i)| vs[a + 1..].iter().all(|&j| g.has_edge(i, j)));
        if clique {
            counts[vs.len()] += 1;
        }
    }
    while counts.len() > 1 && counts[counts.len() - 1] == 0 {
        counts.pop();
    }
    counts
}

fn colourable(adj: &[u32], colours: &mut Vec<usize>, r: usize) -> bool {
    let v = colours.len();
    if v == adj.len() {
        return true;
    }
    for c in 0..r {
        if (0..v).all(|u| adj[v] >> u & 1 == 0 || colours[u] != c) {
            colours.push(c);
            if colourable(adj, colours, r) {
                return true;
            }
            colours.pop();
        }
    }
    false
}

/// Every face vector `(1, f_1, .., f_r)` of a complex on exactly `m` vertices,
/// `m <= max_vertices`, whose graph is properly `r`-colourable.
pub fn balanced_face_vectors(max_vertices: usize) -> HashSet<Vec<u128>> {
    let mut out = HashSet::new();
    for m in 1..=max_vertices {
        let mut candidates: Vec<u32> = (1u32..1 << m).filter(|s| s.count_ones() >= 2).collect();
        candidates.sort_by_key(|s| (s.count_ones(), *s));
        let mut faces: HashSet<u32> = (0..m).map(|i| 1u32 << i).collect();
        extend(m, &candidates, 0, &mut faces, &mut out);
    }
    out
}

fn extend(
    m: usize,
    candidates: &[u32],
    idx: usize,
    faces: &mut HashSet<u32>,
    out: &mut HashSet<Vec<u128>>,
) {
    if idx == candidates.len() {
        let r = faces
            .iter()
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut f = vec![0u128; r + 1];
        f[0] = 1;
        for s in faces.iter() {
            f[s.count_ones() as usize] += 1;
        }
        let adj: Vec<u32> = (0..m)
            .map(|v| {
                faces
                    .iter()
                    .filter(|s| s.count_ones() == 2 && *s >> v & 1 == 1)
                    .fold(0, |acc, s| acc | (s & !(1 << v)))
            })
            .collect();
        if colourable(&adj, &mut Vec::new(), r) {
            out.insert(f);
        }
        return;
    }
    let s = candidates[idx];
    extend(m, candidates, idx + 1, faces, out);
    let closed = (0..m)
        .filter(|&i| s >> i & 1 == 1)
        .all(|i| faces.contains(&(s & !(1 << i))));
    if closed {
        faces.insert(s);
        extend(m, candidates, idx + 1, faces, out);
        faces.remove(&s);
    }
}

/// All decompositions of `b` inside `bset`.
pub fn all_decompositions(bset: &BuildingSet, b: ElementSet) -> Vec<Vec<ElementSet>> {
    if b.len() == 1 {
        return vec![vec![b]];
    }
    let mut out = Vec::new();
    for (d1, d2) in splits(bset, b) {
        for left in all_decompositions(bset, d1) {
            for right in all_decompositions(bset, d2) {
                let mut m = vec![b];
                m.extend(&left);
                m.extend(&right);
                out.push(m);
            }
        }
    }
    out
}

/// Flag orderings of a connected `bset`, stopping after `cap`.
pub fn enumerate_orderings(bset: &BuildingSet, cap: usize) -> Vec<FlagOrdering> {
    let mut out = Vec::new();
    for members in all_decompositions(bset, bset.ground()) {
        let d = Decomposition::new(bset.ground(), members).expect("valid decomposition");
        let rest: Vec<ElementSet> = bset
            .members()
            .iter()
            .copied()
            .filter(|s| !d.contains(*s))
            .collect();
        let mut prefix = Vec::new();
        extend_ordering(
            &d,
            &rest,
            &mut vec![false; rest.len()],
            &mut prefix,
            cap,
            &mut out,
        );
        if out.len() >= cap {
            break;
        }
    }
    out
}

fn extend_ordering(
    d: &Decomposition,
    rest: &[ElementSet],
    used: &mut Vec<bool>,
    prefix: &mut Vec<ElementSet>,
    cap: usize,
    out: &mut Vec<FlagOrdering>,
) {
    if out.len() >= cap {
        return;
    }
    if prefix.len() == rest.len() {
        out.push(FlagOrdering::from_parts(d.clone(), prefix.clone()).expect("checked prefix"));
        return;
    }
    for i in 0..rest.len() {
        if used[i] {
            continue;
        }
        prefix.push(rest[i]);
        if FlagOrdering::from_parts(d.clone(), prefix.clone()).is_ok() {
            used[i] = true;
            extend_ordering(d, rest, used, prefix, cap, out);
            used[i] = false;
        }
        prefix.pop();
    }
}
