//! Comparison complexes built from permutation and pair statistics, and the
//! closed-form adjacency rules for two named orderings.

use std::fmt;

use itertools::Itertools;

use crate::gammacomplex::FlagComplex;
use crate::ordering::{ordering_kn, ordering_star, FlagOrdering, OrderingError};
use crate::setcore::ElementSet;

/// A permutation `u_1 | u_2` with a single peak, increasing runs on both
/// sides of it, and `|u_2| >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeakPermutation {
    word: Vec<usize>,
    peak: usize,
}

impl PeakPermutation {
    /// Accepts `word` (a permutation of `1..=n`) iff it has exactly one
    /// peak, no two consecutive descents and no final descent.
    pub fn from_word(word: Vec<usize>) -> Option<Self> {
        let n = word.len();
        let at = |i: usize| if i == 0 { 0 } else { word[i - 1] };
        let peaks: Vec<usize> = (1..n)
            .filter(|&i| at(i - 1) < at(i) && at(i) > at(i + 1))
            .collect();
        let descent = |i: usize| at(i) > at(i + 1);
        if peaks.len() != 1 || (n >= 2 && descent(n - 1)) {
            return None;
        }
        if (1..n.saturating_sub(1)).any(|i| descent(i) && descent(i + 1)) {
            return None;
        }
        Some(PeakPermutation {
            word,
            peak: peaks[0],
        })
    }

    /// The vertex whose post-peak part is `tail`: `[n] - tail` ascending,
    /// then `tail` ascending.
    pub fn from_tail(n: usize, tail: ElementSet) -> Option<Self> {
        let head = ElementSet::full(n).difference(tail);
        Self::from_word(head.iter().chain(tail.iter()).collect())
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// 1-based position of the peak, `|u_1|`.
    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn head(&self) -> &[usize] {
        &self.word[..self.peak]
    }

    pub fn tail(&self) -> &[usize] {
        &self.word[self.peak..]
    }

    pub fn head_set(&self) -> ElementSet {
        self.head().iter().copied().collect()
    }

    pub fn tail_set(&self) -> ElementSet {
        self.tail().iter().copied().collect()
    }
}

impl fmt::Display for PeakPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[usize]| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(self.head()), join(self.tail()))
    }
}

/// Vertex label `(a, b)` for the pair complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair(pub usize, pub usize);

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// All one-peak permutations without double or final descents, found by
/// scanning every permutation of `[n]`. Sorted by word.
pub fn peak_vertices(n: usize) -> Vec<PeakPermutation> {
    (1..=n)
        .permutations(n)
        .filter_map(PeakPermutation::from_word)
        .collect()
}

/// Closed-form adjacency for `|u_1| < |v_1|`.
pub fn sn_hat_adjacent_closed(u: &PeakPermutation, v: &PeakPermutation) -> bool {
    let (u, v) = if u.peak <= v.peak { (u, v) } else { (v, u) };
    if u.peak == v.peak {
        return false;
    }
    let (u1, u2, v2) = (u.head_set(), u.tail_set(), v.tail_set());
    let a = u2.difference(v2);
    v2.is_subset(u2) && a.len() >= 2 && a.min() < u1.max() && a.max() > v2.min()
}

/// Adjacency by search: some arrangement of `a = [n] - u_1 - v_2` makes
/// `u_1 a v_2` a permutation whose only peaks sit at the two junctions and
/// which has no double or final descent.
pub fn sn_hat_adjacent_brute(u: &PeakPermutation, v: &PeakPermutation) -> bool {
    let (u, v) = if u.peak <= v.peak { (u, v) } else { (v, u) };
    if u.peak == v.peak || u.head_set().intersects(v.tail_set()) {
        return false;
    }
    let n = u.word.len();
    let a: Vec<usize> = ElementSet::full(n)
        .difference(u.head_set())
        .difference(v.tail_set())
        .iter()
        .collect();
    if a.is_empty() {
        return false;
    }
    let first = u.peak;
    let second = u.peak + a.len();
    a.iter().permutations(a.len()).any(|middle| {
        let word: Vec<usize> = u
            .head()
            .iter()
            .chain(middle)
            .chain(v.tail())
            .copied()
            .collect();
        two_peaks_at(&word, first, second)
    })
}

fn two_peaks_at(word: &[usize], first: usize, second: usize) -> bool {
    let n = word.len();
    let at = |i: usize| if i == 0 { 0 } else { word[i - 1] };
    let peaks: Vec<usize> = (1..n)
        .filter(|&i| at(i - 1) < at(i) && at(i) > at(i + 1))
        .collect();
    let descent = |i: usize| at(i) > at(i + 1);
    peaks == [first, second] && !descent(n - 1) && !(1..n - 1).any(|i| descent(i) && descent(i + 1))
}

/// Complex on the one-peak permutations with the closed-form adjacency.
pub fn gamma_complex_sn_hat(n: usize) -> FlagComplex<PeakPermutation> {
    complex_from_rule(peak_vertices(n), sn_hat_adjacent_closed)
}

/// Same vertex set with adjacency decided by [`sn_hat_adjacent_brute`].
pub fn gamma_complex_sn_hat_brute(n: usize) -> FlagComplex<PeakPermutation> {
    complex_from_rule(peak_vertices(n), sn_hat_adjacent_brute)
}

fn complex_from_rule<L, F>(labels: Vec<L>, adjacent: F) -> FlagComplex<L>
where
    L: Clone + Eq + std::hash::Hash + fmt::Debug,
    F: Fn(&L, &L) -> bool,
{
    let mut g = FlagComplex::new(labels.clone()).expect("generated labels are distinct");
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if adjacent(&labels[i], &labels[j]) {
                g.add_edge(i, j).expect("indices in range");
            }
        }
    }
    g
}

/// Distinct `a < b`, `c < d` are non-crossing if nested or separated.
/// Pairs sharing an endpoint count as crossing.
pub fn non_crossing(p: Pair, q: Pair) -> bool {
    let Pair(a, b) = p;
    let Pair(c, d) = q;
    let distinct = a != c && a != d && b != c && b != d;
    distinct && ((a < c && d < b) || (c < a && b < d) || b < c || d < a)
}

/// Pairs `(a, b)` with `1 <= a < b <= n - 1`, adjacent when non-crossing.
pub fn gamma_complex_s312(n: usize) -> FlagComplex<Pair> {
    let top = n.saturating_sub(1);
    let labels: Vec<Pair> = (1..=top)
        .flat_map(|a| (a + 1..=top).map(move |b| Pair(a, b)))
        .collect();
    complex_from_rule(labels, |p, q| non_crossing(*p, *q))
}

/// Pairs `(l, r)` in `[n-1]^2` with `l != r`; adjacent when all four values
/// differ and both coordinates increase together.
pub fn pn_adjacent(p: Pair, q: Pair) -> bool {
    let Pair(l1, r1) = p;
    let Pair(l2, r2) = q;
    let vals = [l1, l2, r1, r2];
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| vals[i] != vals[j]));
    distinct && ((l1 < l2 && r1 < r2) || (l2 < l1 && r2 < r1))
}

pub fn gamma_complex_pn(n: usize) -> FlagComplex<Pair> {
    let top = n.saturating_sub(1);
    let labels: Vec<Pair> = (1..=top)
        .flat_map(|l| (1..=top).filter(move |&r| r != l).map(move |r| Pair(l, r)))
        .collect();
    complex_from_rule(labels, |p, q| pn_adjacent(*p, *q))
}

/// One direction of the closed-form rule for the `K_n` and star orderings.
pub fn set_rule(a: ElementSet, b: ElementSet) -> bool {
    let first = a.is_subset(b) && !b.difference(a).is_empty() && b.difference(a).min() < a.max();
    let second = a.max().is_some_and(|m| !b.contains(m))
        && a.difference(b).len() >= 2
        && b.difference(a).min().is_some_and(|m| Some(m) > a.max());
    first || second
}

/// How to apply [`set_rule`] to a pair of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleReading {
    /// Adjacent if the rule holds in either direction.
    Symmetric,
    /// Adjacent if the rule holds with the earlier element as `a`.
    EarlierFirst,
}

/// Vertices `B - D` of `o` in order, with edges from [`set_rule`].
pub fn combinatorial_complex(o: &FlagOrdering, reading: RuleReading) -> FlagComplex<ElementSet> {
    let labels = o.order().to_vec();
    let mut g = FlagComplex::new(labels.clone()).expect("ordered elements are distinct");
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (a, b) = (labels[i], labels[j]);
            let adjacent = match reading {
                RuleReading::Symmetric => set_rule(a, b) || set_rule(b, a),
                RuleReading::EarlierFirst => set_rule(a, b),
            };
            if adjacent {
                g.add_edge(i, j).expect("indices in range");
            }
        }
    }
    g
}

pub fn combinatorial_kn_complex(n: usize) -> Result<FlagComplex<ElementSet>, OrderingError> {
    Ok(combinatorial_complex(
        &ordering_kn(n)?,
        RuleReading::EarlierFirst,
    ))
}

pub fn combinatorial_star_complex(n: usize) -> Result<FlagComplex<ElementSet>, OrderingError> {
    Ok(combinatorial_complex(
        &ordering_star(n)?,
        RuleReading::EarlierFirst,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eset;
    use crate::gammacomplex::build_gamma_complex;
    use crate::ordering::ordering_pathn;
    use crate::polyvec::Poly;

    fn tail(s: ElementSet) -> PeakPermutation {
        PeakPermutation::from_tail(5, s).unwrap()
    }

    #[test]
    fn peak_vertex_counts() {
        assert!(peak_vertices(2).is_empty());
        let three: Vec<String> = peak_vertices(3).iter().map(ToString::to_string).collect();
        assert_eq!(three, vec!["2|1,3", "3|1,2"]);
        assert_eq!(peak_vertices(5).len(), 22);
    }

    #[test]
    fn vertices_match_tail_sets() {
        for n in 3..=7 {
            let vertices = peak_vertices(n);
            let expected: Vec<ElementSet> = (1u64..1 << n)
                .map(ElementSet::from_bits)
                .filter(|s| s.len() >= 2 && s.len() < n)
                .filter(|s| ElementSet::full(n).difference(*s).max() > (*s).min())
                .collect();
            assert_eq!(vertices.len(), expected.len());
            for v in &vertices {
                assert_eq!(
                    PeakPermutation::from_tail(n, v.tail_set()).as_ref(),
                    Some(v)
                );
                assert!(expected.contains(&v.tail_set()));
            }
        }
        assert!(PeakPermutation::from_tail(5, eset![4, 5]).is_none());
    }

    #[test]
    fn sn_hat_5_edges() {
        let g = gamma_complex_sn_hat(5);
        assert_eq!(g.num_vertices(), 22);
        assert_eq!(g.num_edges(), 16);
        let listed: [(ElementSet, &[ElementSet]); 4] = [
            (
                eset![1, 2, 3, 4],
                &[
                    eset![1, 2],
                    eset![1, 3],
                    eset![1, 4],
                    eset![2, 3],
                    eset![2, 4],
                ],
            ),
            (
                eset![1, 2, 3, 5],
                &[
                    eset![1, 2],
                    eset![1, 3],
                    eset![1, 5],
                    eset![2, 3],
                    eset![2, 5],
                ],
            ),
            (
                eset![1, 2, 4, 5],
                &[eset![1, 4], eset![1, 5], eset![2, 4], eset![2, 5]],
            ),
            (eset![1, 3, 4, 5], &[eset![3, 4], eset![3, 5]]),
        ];
        for (hub, others) in listed {
            for &o in others {
                assert!(g.has_edge_by_label(&tail(hub), &tail(o)), "{hub} {o}");
            }
        }
        assert_eq!(g.f_vector::<i64>(), Poly::from_i64s(&[1, 22, 16]));
    }

    #[test]
    fn sn_hat_closed_form_matches_search() {
        for n in 2..=6 {
            let closed = gamma_complex_sn_hat(n);
            let brute = gamma_complex_sn_hat_brute(n);
            assert!(closed.labeled_eq(&brute), "n = {n}");
        }
    }

    #[test]
    fn s312_small() {
        let g = gamma_complex_s312(5);
        assert_eq!(g.num_vertices(), 6);
        assert!(g.has_edge_by_label(&Pair(1, 2), &Pair(3, 4)));
        assert!(!g.has_edge_by_label(&Pair(1, 3), &Pair(2, 4)));
        let g = gamma_complex_s312(4);
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 0));
        assert_eq!(gamma_complex_s312(3).num_vertices(), 1);
    }

    #[test]
    fn pn_small() {
        let g = gamma_complex_pn(5);
        assert_eq!(g.num_vertices(), 12);
        let mut edges: Vec<(Pair, Pair)> = g.label_edges();
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort();
        let mut expected = vec![
            (Pair(1, 3), Pair(2, 4)),
            (Pair(3, 1), Pair(4, 2)),
            (Pair(1, 2), Pair(3, 4)),
            (Pair(1, 2), Pair(4, 3)),
            (Pair(2, 1), Pair(4, 3)),
            (Pair(2, 1), Pair(3, 4)),
        ];
        expected.sort();
        assert_eq!(edges, expected);
        let g = gamma_complex_pn(4);
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 0));
        assert_eq!(gamma_complex_pn(2).num_vertices(), 0);
    }

    #[test]
    fn combinatorial_rules_match_gamma() {
        for n in 2..=7 {
            for o in [ordering_kn(n).unwrap(), ordering_star(n).unwrap()] {
                let gamma = build_gamma_complex(&o);
                assert!(
                    combinatorial_complex(&o, RuleReading::EarlierFirst).labeled_eq(&gamma),
                    "n = {n}"
                );
            }
        }
        // the symmetric reading adds edges such as {1,2,4} -- {1,4}
        let o = ordering_kn(4).unwrap();
        assert_eq!(
            combinatorial_complex(&o, RuleReading::Symmetric).num_edges(),
            6
        );
        assert_eq!(build_gamma_complex(&o).num_edges(), 0);
    }

    #[test]
    fn star_5_edges() {
        let g = combinatorial_star_complex(5).unwrap();
        let mut edges: Vec<(ElementSet, ElementSet)> = g
            .label_edges()
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![
                (eset![1, 3], eset![1, 2, 3, 5]),
                (eset![1, 4], eset![1, 2, 4, 5]),
                (eset![1, 4], eset![1, 3, 4, 5]),
                (eset![1, 5], eset![1, 2, 4]),
                (eset![1, 5], eset![1, 3, 4]),
            ]
        );
    }

    #[test]
    fn kn_5_cycles() {
        let g = combinatorial_kn_complex(5).unwrap();
        let cycles: [&[ElementSet]; 3] = [
            &[
                eset![1, 4],
                eset![1, 2, 4, 5],
                eset![2, 4],
                eset![2, 3, 4, 5],
                eset![3, 4],
                eset![1, 3, 4, 5],
            ],
            &[eset![1, 3], eset![1, 2, 3, 5], eset![2, 3], eset![4, 5]],
            &[
                eset![1, 2, 4],
                eset![1, 5],
                eset![1, 3, 4],
                eset![3, 5],
                eset![2, 3, 4],
                eset![2, 5],
            ],
        ];
        for cycle in cycles {
            for i in 0..cycle.len() {
                assert!(g.has_edge_by_label(&cycle[i], &cycle[(i + 1) % cycle.len()]));
            }
        }
        assert_eq!(g.num_edges(), 16);
    }

    #[test]
    fn path_relabeling_is_s312() {
        for n in 3..=8 {
            let g = build_gamma_complex(&ordering_pathn(n).unwrap())
                .map_labels(|s| Pair((*s).min().unwrap() - 1, (*s).max().unwrap() - 1))
                .unwrap();
            assert!(g.labeled_eq(&gamma_complex_s312(n)), "n = {n}");
        }
    }
}
