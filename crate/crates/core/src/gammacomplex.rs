//! Flag complexes stored as their 1-skeleton, and the complex `Γ(O)` of a
//! flag ordering.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::ordering::{FlagOrdering, OrderingError};
use crate::polyvec::{coeff_from_count, Coefficient, Poly};
use crate::setcore::{BuildingSet, Decomposition, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),
    #[error("unknown vertex label {0}")]
    UnknownLabel(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
}

/// A simple graph with labelled vertices, read as its clique complex.
#[derive(Clone)]
pub struct FlagComplex<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    adj: Vec<VertexSet>,
}

impl<L: fmt::Debug> fmt::Debug for FlagComplex<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&L, &L)> = (0..self.labels.len())
            .flat_map(|i| {
                self.adj[i]
                    .iter()
                    .filter(move |&j| j > i)
                    .map(move |j| (&self.labels[i], &self.labels[j]))
            })
            .collect();
        f.debug_struct("FlagComplex")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

impl<L: Clone + Eq + Hash + fmt::Debug> FlagComplex<L> {
    pub fn new(labels: Vec<L>) -> Result<Self, ComplexError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(ComplexError::DuplicateLabel(format!("{l:?}")));
            }
        }
        let n = labels.len();
        Ok(FlagComplex {
            labels,
            index,
            adj: vec![VertexSet::with_capacity(n); n],
        })
    }

    /// Vertices plus edges given by index pairs.
    pub fn from_edges(labels: Vec<L>, edges: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let mut g = Self::new(labels)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), ComplexError> {
        let len = self.labels.len();
        for index in [i, j] {
            if index >= len {
                return Err(ComplexError::IndexOutOfRange { index, len });
            }
        }
        if i == j {
            return Err(ComplexError::SelfLoop(i));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn add_edge_by_label(&mut self, a: &L, b: &L) -> Result<(), ComplexError> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        self.add_edge(i, j)
    }

    pub fn index_of(&self, l: &L) -> Result<usize, ComplexError> {
        self.index
            .get(l)
            .copied()
            .ok_or_else(|| ComplexError::UnknownLabel(format!("{l:?}")))
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i).is_some_and(|a| a.contains(j))
    }

    pub fn has_edge_by_label(&self, a: &L, b: &L) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.adj[i].iter().collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Sorted degree sequence.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.labels.len()).map(|i| self.degree(i)).collect();
        d.sort_unstable();
        d
    }

    /// Index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.labels.len())
            .flat_map(|i| {
                self.adj[i]
                    .iter()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    pub fn label_edges(&self) -> Vec<(L, L)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    /// Number of cliques of each size; entry 0 is the empty face.
    pub fn clique_counts(&self) -> Vec<u128> {
        count_cliques(&self.adj)
    }

    /// `f_0 + f_1 t + ...` with `f_i` the number of `i`-cliques.
    pub fn f_vector<C: Coefficient>(&self) -> Poly<C> {
        Poly::new(
            self.clique_counts()
                .into_iter()
                .map(coeff_from_count)
                .collect(),
        )
    }

    /// Subcomplex induced on the given labels, in the given order.
    pub fn induced_subcomplex(&self, labels: &[L]) -> Result<FlagComplex<L>, ComplexError> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.induced_by_indices(&idx))
    }

    pub fn induced_by_indices(&self, idx: &[usize]) -> FlagComplex<L> {
        let mut g = FlagComplex::new(idx.iter().map(|&i| self.labels[i].clone()).collect())
            .expect("labels of a complex are distinct");
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.adj[a].insert(b);
                    g.adj[b].insert(a);
                }
            }
        }
        g
    }

    pub fn map_labels<M, F>(&self, f: F) -> Result<FlagComplex<M>, ComplexError>
    where
        M: Clone + Eq + Hash + fmt::Debug,
        F: FnMut(&L) -> M,
    {
        let mut g = FlagComplex::new(self.labels.iter().map(f).collect())?;
        g.adj = self.adj.clone();
        Ok(g)
    }

    /// Same labels and the same edges between them, ignoring vertex order.
    pub fn labeled_eq(&self, other: &FlagComplex<L>) -> bool {
        if self.labels.len() != other.labels.len() || self.num_edges() != other.num_edges() {
            return false;
        }
        let Some(perm) = self
            .labels
            .iter()
            .map(|l| other.index.get(l).copied())
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        self.edges()
            .iter()
            .all(|&(i, j)| other.has_edge(perm[i], perm[j]))
    }
}

/// Union of both graphs plus every edge between them. Labels must be
/// disjoint.
pub fn join<L: Clone + Eq + Hash + fmt::Debug>(
    a: &FlagComplex<L>,
    b: &FlagComplex<L>,
) -> Result<FlagComplex<L>, ComplexError> {
    let labels: Vec<L> = a.labels.iter().chain(&b.labels).cloned().collect();
    let mut g = FlagComplex::new(labels)?;
    let na = a.num_vertices();
    for (i, j) in a.edges() {
        g.add_edge(i, j)?;
    }
    for (i, j) in b.edges() {
        g.add_edge(na + i, na + j)?;
    }
    for i in 0..na {
        for j in 0..b.num_vertices() {
            g.add_edge(i, na + j)?;
        }
    }
    Ok(g)
}

/// Which side of a [`disjoint_join`] a vertex came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side<L> {
    Left(L),
    Right(L),
}

impl<L: fmt::Display> fmt::Display for Side<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left(l) => write!(f, "L{l}"),
            Side::Right(l) => write!(f, "R{l}"),
        }
    }
}

/// Join with labels tagged by side, so colliding labels are allowed.
pub fn disjoint_join<L: Clone + Eq + Hash + fmt::Debug>(
    a: &FlagComplex<L>,
    b: &FlagComplex<L>,
) -> FlagComplex<Side<L>> {
    let a = a
        .map_labels(|l| Side::Left(l.clone()))
        .expect("tagged labels are distinct");
    let b = b
        .map_labels(|l| Side::Right(l.clone()))
        .expect("tagged labels are distinct");
    join(&a, &b).expect("tagged labels are distinct")
}

fn binomial_rows(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for h in 1..=n {
        let prev = &rows[h - 1];
        let mut row = vec![1u128; h + 1];
        for i in 1..h {
            row[i] = prev[i - 1] + prev[i];
        }
        rows.push(row);
    }
    rows
}

/// Pivot-based clique counting over a degeneracy ordering; each clique is
/// counted once without being listed.
fn count_cliques(adj: &[VertexSet]) -> Vec<u128> {
    let n = adj.len();
    let mut counts = vec![0u128; n + 1];
    counts[0] = 1;
    let binom = binomial_rows(n);
    let mut later = VertexSet::full(n);
    for v in degeneracy_order(adj) {
        later.remove(v);
        let p = adj[v].intersection(&later);
        pivot_count(adj, p, 1, 0, &binom, &mut counts);
    }
    while counts.len() > 1 && counts[counts.len() - 1] == 0 {
        counts.pop();
    }
    counts
}

fn pivot_count(
    adj: &[VertexSet],
    mut p: VertexSet,
    r: usize,
    h: usize,
    binom: &[Vec<u128>],
    counts: &mut [u128],
) {
    if p.is_empty() {
        for (i, &c) in binom[h].iter().enumerate() {
            counts[r + i] += c;
        }
        return;
    }
    let pivot = p
        .iter()
        .max_by_key(|&u| (adj[u].intersection_len(&p), std::cmp::Reverse(u)))
        .expect("nonempty");
    let branch: Vec<usize> = std::iter::once(pivot)
        .chain(p.difference(&adj[pivot]).iter().filter(|&v| v != pivot))
        .collect();
    for v in branch {
        let next = p.intersection(&adj[v]);
        if v == pivot {
            pivot_count(adj, next, r, h + 1, binom, counts);
        } else {
            pivot_count(adj, next, r + 1, h, binom, counts);
        }
        p.remove(v);
    }
}

fn degeneracy_order(adj: &[VertexSet]) -> Vec<usize> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(VertexSet::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| deg[v])
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in adj[v].iter() {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

/// `U_j` and `V_j` as 1-based indices into the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UVSets {
    pub j: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl UVSets {
    /// `U_j ∪ V_j`, sorted.
    pub fn union(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.u.iter().chain(&self.v).copied().collect();
        all.sort_unstable();
        all
    }
}

fn uv_on_sequence(seq: &[ElementSet], dlen: usize, j: usize) -> UVSets {
    let bj = seq[dlen + j - 1];
    let mut u = Vec::new();
    let mut v = Vec::new();
    for i in 1..j {
        let bi = seq[dlen + i - 1];
        let earlier = &seq[..dlen + i - 1];
        if !bi.is_subset(bj) {
            let image = bi.difference(bj);
            if !earlier.iter().any(|b| b.difference(bj) == image) {
                u.push(i);
            }
        } else if earlier
            .iter()
            .any(|&b| bi.is_proper_subset(b) && b.is_proper_subset(bj))
        {
            v.push(i);
        }
    }
    UVSets { j, u, v }
}

pub fn compute_uv(o: &FlagOrdering, j: usize) -> Result<UVSets, OrderingError> {
    o.check_index(j)?;
    Ok(uv_on_sequence(
        &o.sequence(),
        o.decomposition().members().len(),
        j,
    ))
}

/// `U_j, V_j` for every `j = 1..=k`.
pub fn compute_all_uv(o: &FlagOrdering) -> Vec<UVSets> {
    let seq = o.sequence();
    let dlen = o.decomposition().members().len();
    (1..=o.len())
        .map(|j| uv_on_sequence(&seq, dlen, j))
        .collect()
}

/// `Γ(O)`: vertex `b_i` for each ordered element, edge `i < j` iff
/// `i ∈ U_j ∪ V_j`. Vertex `i - 1` carries `b_i`.
pub fn build_gamma_complex(o: &FlagOrdering) -> FlagComplex<ElementSet> {
    let mut g = FlagComplex::new(o.order().to_vec()).expect("ordered elements are distinct");
    for uv in compute_all_uv(o) {
        for i in uv.union() {
            g.add_edge(i - 1, uv.j - 1).expect("indices in range");
        }
    }
    g
}

/// The ordering of `B_k / b_k` induced by `U_k`: decomposition `D / b_k` and
/// elements `b_u \ b_k` for `u ∈ U_k` in index order.
pub fn contracted_ordering(o: &FlagOrdering, k: usize) -> Result<FlagOrdering, OrderingError> {
    let uv = compute_uv(o, k)?;
    let bk = o.order()[k - 1];
    let bset: BuildingSet = o.prefix(k).contraction(bk)?;
    let members: Vec<ElementSet> = o
        .decomposition()
        .members()
        .iter()
        .filter(|d| !d.is_subset(bk))
        .map(|d| d.difference(bk))
        .collect();
    let decomposition = Decomposition::new(bset.ground(), members)?;
    let order =
        uv.u.iter()
            .map(|&u| o.order()[u - 1].difference(bk))
            .collect();
    FlagOrdering::new(bset, decomposition, order)
}

/// The ordering of `B_k |_{b_k}` induced by `V_k`: decomposition
/// `D|_{b_k} ∪ {b_j ⊆ b_k : j <= k, j ∉ V_k}` and elements `b_v` for `v ∈ V_k`.
pub fn restricted_ordering(o: &FlagOrdering, k: usize) -> Result<FlagOrdering, OrderingError> {
    let uv = compute_uv(o, k)?;
    let bk = o.order()[k - 1];
    let bset = o.prefix(k).restriction(bk)?;
    let members: Vec<ElementSet> = o
        .decomposition()
        .members()
        .iter()
        .copied()
        .filter(|d| d.is_subset(bk))
        .chain(
            o.order()[..k]
                .iter()
                .enumerate()
                .filter(|(p, b)| b.is_subset(bk) && !uv.v.contains(&(p + 1)))
                .map(|(_, &b)| b),
        )
        .collect();
    let decomposition = Decomposition::new(bk, members)?;
    let order = uv.v.iter().map(|&v| o.order()[v - 1]).collect();
    FlagOrdering::new(bset, decomposition, order)
}
