//! Face-number test for balanced complexes: a vector is the f-vector of an
//! `r`-colourable complex iff, for each `i`, the first `f_{i+1}` colourful
//! `(i+1)`-sets in colex order have a shadow of size at most `f_i`.
//!
//! Vertex `v` of the infinite ground set has colour `v mod r`, and a set is
//! colourful if its colours are distinct.

use std::collections::HashSet;

use thiserror::Error;

use crate::polyvec::{Coefficient, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfkError {
    #[error("malformed face vector {0}: {1}")]
    MalformedVector(String, &'static str),
}

fn colourful(set: u128, r: u32) -> bool {
    let mut seen = 0u128;
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros();
        let bit = 1u128 << (v % r);
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
        s &= s - 1;
    }
    true
}

// Next integer with the same popcount (Gosper).
fn next_same_popcount(x: u128) -> Option<u128> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// Size of the shadow of the first `m` colourful `k`-sets in colex order.
fn colex_shadow(k: u32, m: u128, r: u32) -> Option<u128> {
    if m == 0 {
        return Some(0);
    }
    if k == 0 || k > r {
        return None;
    }
    let mut set: u128 = (1u128 << k) - 1;
    let mut shadow: HashSet<u128> = HashSet::new();
    let mut taken = 0u128;
    while taken < m {
        if colourful(set, r) {
            let mut s = set;
            while s != 0 {
                let low = s & s.wrapping_neg();
                shadow.insert(set & !low);
                s &= s - 1;
            }
            taken += 1;
        }
        set = next_same_popcount(set)?;
    }
    Some(shadow.len() as u128)
}

/// Checks `f = (1, f_1, .., f_r)` with `r` the degree of `f`.
pub fn ffk_check_counts(f: &[u128]) -> bool {
    let mut f = f.to_vec();
    while f.len() > 1 && f[f.len() - 1] == 0 {
        f.pop();
    }
    let r = (f.len() - 1) as u32;
    (1..f.len()).all(|i| match colex_shadow(i as u32, f[i], r) {
        Some(shadow) => shadow <= f[i - 1],
        None => false,
    })
}

pub fn ffk_check<C: Coefficient>(f: &Poly<C>) -> Result<bool, FfkError> {
    let malformed = |why| FfkError::MalformedVector(f.to_string(), why);
    let counts = f
        .coeffs()
        .iter()
        .map(|c| c.to_u128())
        .collect::<Option<Vec<u128>>>()
        .ok_or_else(|| malformed("entries must be nonnegative integers"))?;
    if counts.first() != Some(&1) {
        return Err(malformed("f_0 must be 1"));
    }
    Ok(ffk_check_counts(&counts))
}
