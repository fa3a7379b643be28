//! Graph isomorphism, the balanced face-number test, and cross-validation
//! of the γ computations.

mod ffk;
mod isomorphism;
mod verify;

pub use ffk::{ffk_check, ffk_check_counts, FfkError};
pub use isomorphism::{graphs_isomorphic, is_isomorphism, IsomorphismError, ISOMORPHISM_LIMIT};
pub use verify::{
    check_induced_orderings, cyclic_multinomial, distinct_orderings, verify_named, verify_triple,
    FamilyParseError, InducedCheckError, NamedFamily, ReferenceFormula, Timings, VerifyError,
    VerifyReport,
};

use crate::ordering::{FlagOrdering, OrderingError};
use crate::setcore::{chain_decomposition, ElementSet};

fn sets(lists: &[&[usize]]) -> Vec<ElementSet> {
    lists.iter().map(|l| l.iter().copied().collect()).collect()
}

/// Two orderings of `B(Cyc_5)` over the chain decomposition whose complexes
/// are not isomorphic.
pub fn cyc5_witness_orderings() -> Result<(FlagOrdering, FlagOrdering), OrderingError> {
    let b = NamedFamily::Cycle(5).building_set();
    let first = sets(&[
        &[2, 3],
        &[2, 3, 4],
        &[2, 3, 4, 5],
        &[4, 5],
        &[3, 4, 5],
        &[3, 4],
        &[1, 3, 4, 5],
        &[1, 2, 4, 5],
        &[1, 2, 3, 5],
        &[1, 4, 5],
        &[1, 2, 5],
        &[1, 5],
    ]);
    let second = sets(&[
        &[2, 3],
        &[2, 3, 4],
        &[2, 3, 4, 5],
        &[3, 4],
        &[3, 4, 5],
        &[4, 5],
        &[1, 3, 4, 5],
        &[1, 2, 4, 5],
        &[1, 2, 3, 5],
        &[1, 4, 5],
        &[1, 2, 5],
        &[1, 5],
    ]);
    Ok((
        FlagOrdering::new(b.clone(), chain_decomposition(5), first)?,
        FlagOrdering::new(b, chain_decomposition(5), second)?,
    ))
}
