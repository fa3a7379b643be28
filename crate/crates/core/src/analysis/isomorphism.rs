//! Exact isomorphism test for small graphs by backtracking.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::gammacomplex::FlagComplex;

/// Largest vertex count accepted by [`graphs_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsomorphismError {
    #[error("graph has {0} vertices; the limit is {ISOMORPHISM_LIMIT}")]
    SizeLimit(usize),
}

type Signature = (usize, Vec<usize>);

fn signatures<L: Clone + Eq + Hash + fmt::Debug>(g: &FlagComplex<L>) -> Vec<Signature> {
    (0..g.num_vertices())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).into_iter().map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// A bijection `map` with `map[i]` the image in `h` of vertex `i` of `g`,
/// preserving edges and non-edges, or `None` if there is none.
pub fn graphs_isomorphic<L, M>(
    g: &FlagComplex<L>,
    h: &FlagComplex<M>,
) -> Result<Option<Vec<usize>>, IsomorphismError>
where
    L: Clone + Eq + Hash + fmt::Debug,
    M: Clone + Eq + Hash + fmt::Debug,
{
    for n in [g.num_vertices(), h.num_vertices()] {
        if n > ISOMORPHISM_LIMIT {
            return Err(IsomorphismError::SizeLimit(n));
        }
    }
    let n = g.num_vertices();
    if n != h.num_vertices() || g.num_edges() != h.num_edges() {
        return Ok(None);
    }
    let sg = signatures(g);
    let sh = signatures(h);
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }

    let order = search_order(g, &sg);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend(g, h, &sg, &sh, &order, 0, &mut map, &mut used) {
        return Ok(None);
    }
    assert!(
        is_isomorphism(g, h, &map),
        "backtracking produced an invalid witness"
    );
    Ok(Some(map))
}

// Rare signatures first, then vertices with the most already placed
// neighbours.
fn search_order<L: Clone + Eq + Hash + fmt::Debug>(
    g: &FlagComplex<L>,
    sig: &[Signature],
) -> Vec<usize> {
    let n = g.num_vertices();
    let rarity: Vec<usize> = (0..n)
        .map(|v| sig.iter().filter(|s| **s == sig[v]).count())
        .collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = g.neighbors(v).into_iter().filter(|&u| placed[u]).count();
                (
                    links,
                    std::cmp::Reverse(rarity[v]),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend<L, M>(
    g: &FlagComplex<L>,
    h: &FlagComplex<M>,
    sg: &[Signature],
    sh: &[Signature],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool
where
    L: Clone + Eq + Hash + fmt::Debug,
    M: Clone + Eq + Hash + fmt::Debug,
{
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..h.num_vertices() {
        if used[w] || sg[v] != sh[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, sg, sh, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Whether `map` is a bijection carrying edges onto edges and non-edges
/// onto non-edges.
pub fn is_isomorphism<L, M>(g: &FlagComplex<L>, h: &FlagComplex<M>, map: &[usize]) -> bool
where
    L: Clone + Eq + Hash + fmt::Debug,
    M: Clone + Eq + Hash + fmt::Debug,
{
    let n = g.num_vertices();
    if map.len() != n || h.num_vertices() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in map {
        if w >= n || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    (0..n).all(|i| (i + 1..n).all(|j| g.has_edge(i, j) == h.has_edge(map[i], map[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> FlagComplex<usize> {
        FlagComplex::from_edges((0..n).collect(), edges).unwrap()
    }

    #[test]
    fn relabelled_paths() {
        let a = graph(3, &[(0, 1), (1, 2)]);
        let b = graph(3, &[(2, 0), (0, 1)]);
        let map = graphs_isomorphic(&a, &b).unwrap().unwrap();
        assert!(is_isomorphism(&a, &b, &map));
        assert_eq!(map[1], 0);
    }

    #[test]
    fn path_vs_triangle() {
        let a = graph(3, &[(0, 1), (1, 2)]);
        let b = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(graphs_isomorphic(&a, &b).unwrap(), None);
    }

    #[test]
    fn same_degrees_different_graphs() {
        // two triangles vs a hexagon
        let a = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let b = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(graphs_isomorphic(&a, &b).unwrap(), None);
        assert!(graphs_isomorphic(&b, &b).unwrap().is_some());
    }

    #[test]
    fn size_limit() {
        let big = graph(41, &[]);
        assert_eq!(
            graphs_isomorphic(&big, &big),
            Err(IsomorphismError::SizeLimit(41))
        );
        let ok = graph(40, &[]);
        assert!(graphs_isomorphic(&ok, &ok).unwrap().is_some());
    }
}
