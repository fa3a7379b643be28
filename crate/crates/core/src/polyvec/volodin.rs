//! γ of a flag building set by adding elements one at a time:
//! `γ(B ∪ {b}) = γ(B) + t γ(B|_b) γ(B/b)`.

use std::collections::HashMap;
use std::sync::RwLock;

use thiserror::Error;

use super::{poly_add, poly_mul, poly_shift_mul_t, Coefficient, Poly};
use crate::ordering::{find_flag_ordering, FlagOrdering, OrderingError, Strategy};
use crate::setcore::{BuildingSet, ElementSet, SetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VolodinError {
    #[error("building set is not flag: {0} has no splitting pair")]
    NotFlag(ElementSet),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Set(#[from] SetError),
}

type MemoKey = (usize, Vec<u64>);

/// Memoised solver. The table is keyed on the densely relabelled family and
/// may be shared between threads.
pub struct VolodinSolver<C> {
    memo: RwLock<HashMap<MemoKey, Poly<C>>>,
}

impl<C: Coefficient> Default for VolodinSolver<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> std::fmt::Debug for VolodinSolver<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VolodinSolver")
            .field("cached", &self.cache_len())
            .finish()
    }
}

impl<C: Coefficient> VolodinSolver<C> {
    pub fn new() -> Self {
        VolodinSolver {
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn cache_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// γ of a flag building set, connected or not.
    pub fn gamma(&self, b: &BuildingSet) -> Result<Poly<C>, VolodinError> {
        if let Some(s) = b.first_unsplittable() {
            return Err(VolodinError::NotFlag(s));
        }
        self.gamma_flag(b)
    }

    /// Folds over a given flag ordering instead of a freshly chosen one.
    pub fn gamma_with_ordering(&self, o: &FlagOrdering) -> Result<Poly<C>, VolodinError> {
        self.fold(o, false)
    }

    /// The same fold written with the enlarged set:
    /// `γ(B') = γ(B) + t γ(B'|_b) γ(B'/b)`.
    pub fn gamma_with_ordering_primed(&self, o: &FlagOrdering) -> Result<Poly<C>, VolodinError> {
        self.fold(o, true)
    }

    fn gamma_flag(&self, b: &BuildingSet) -> Result<Poly<C>, VolodinError> {
        let maximal = b.maximal_elements();
        if maximal.len() > 1 {
            let mut product = Poly::one();
            for m in maximal {
                product = poly_mul(&product, &self.gamma_flag(&b.restriction(m)?)?);
            }
            return Ok(product);
        }
        if b.len() == 2 * b.ground_size() - 1 {
            return Ok(Poly::one());
        }
        let key = b.dense_key();
        if let Some(g) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(g.clone());
        }
        let o = find_flag_ordering(b, Strategy::Lex)?;
        let g = self.fold(&o, false)?;
        self.memo.write().expect("memo lock").insert(key, g.clone());
        Ok(g)
    }

    fn fold(&self, o: &FlagOrdering, primed: bool) -> Result<Poly<C>, VolodinError> {
        let mut gamma = Poly::one();
        for (j, &bj) in o.order().iter().enumerate() {
            let base = o.prefix(if primed { j + 1 } else { j });
            let term = poly_mul(
                &self.gamma_flag(&base.restriction(bj)?)?,
                &self.gamma_flag(&base.contraction(bj)?)?,
            );
            gamma = poly_add(&gamma, &poly_shift_mul_t(&term));
        }
        Ok(gamma)
    }
}

/// γ of a flag building set with a fresh cache.
pub fn gamma_via_volodin<C: Coefficient>(b: &BuildingSet) -> Result<Poly<C>, VolodinError> {
    VolodinSolver::new().gamma(b)
}
