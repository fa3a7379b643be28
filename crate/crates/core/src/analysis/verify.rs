//! Cross-checks γ three ways and checks the induced-ordering identities of
//! `Γ(O)`.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::ffk::ffk_check;
use crate::gammacomplex::{
    build_gamma_complex, compute_all_uv, contracted_ordering, join, restricted_ordering,
    FlagComplex,
};
use crate::generate::random_ordering;
use crate::oracle::gamma_oracle;
use crate::ordering::{ordering_kn, ordering_pathn, ordering_star, FlagOrdering, OrderingError};
use crate::polyvec::{PolyError, VolodinError, VolodinSolver};
use crate::setcore::{
    graphical_building_set, BuildingSet, ElementSet, SetError, SimpleGraph, MAX_ELEMENTS,
};
use crate::WideCoeffVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("building set is not flag: {0} has no splitting pair")]
    NotFlag(ElementSet),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Volodin(#[from] VolodinError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Graphical building sets addressed as `kn:N`, `path:N`, `cyc:N`, `star:N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFamily {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad family selector {0:?}: expected kn:N, path:N, cyc:N or star:N with 2 <= N <= 64")]
pub struct FamilyParseError(pub String);

impl FromStr for NamedFamily {
    type Err = FamilyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FamilyParseError(s.to_string());
        let (kind, n) = s.trim().split_once(':').ok_or_else(err)?;
        let n: usize = n.trim().parse().map_err(|_| err())?;
        if !(2..=MAX_ELEMENTS).contains(&n) {
            return Err(err());
        }
        match kind.trim() {
            "kn" => Ok(NamedFamily::Complete(n)),
            "path" => Ok(NamedFamily::Path(n)),
            "cyc" => Ok(NamedFamily::Cycle(n)),
            "star" => Ok(NamedFamily::Star(n)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFamily::Complete(n) => write!(f, "kn:{n}"),
            NamedFamily::Path(n) => write!(f, "path:{n}"),
            NamedFamily::Cycle(n) => write!(f, "cyc:{n}"),
            NamedFamily::Star(n) => write!(f, "star:{n}"),
        }
    }
}

impl NamedFamily {
    pub fn n(&self) -> usize {
        match *self {
            NamedFamily::Complete(n)
            | NamedFamily::Path(n)
            | NamedFamily::Cycle(n)
            | NamedFamily::Star(n) => n,
        }
    }

    pub fn graph(&self) -> SimpleGraph {
        let g = match *self {
            NamedFamily::Complete(n) => SimpleGraph::complete(n),
            NamedFamily::Path(n) => SimpleGraph::path(n),
            NamedFamily::Cycle(n) => SimpleGraph::cycle(n),
            NamedFamily::Star(n) => SimpleGraph::star(n),
        };
        g.expect("selector sizes are validated")
    }

    pub fn building_set(&self) -> BuildingSet {
        graphical_building_set(&self.graph())
    }

    /// The fixed ordering that comes with the family, if it has one.
    pub fn named_ordering(&self) -> Option<Result<FlagOrdering, OrderingError>> {
        match *self {
            NamedFamily::Complete(n) => Some(ordering_kn(n)),
            NamedFamily::Path(n) => Some(ordering_pathn(n)),
            NamedFamily::Star(n) => Some(ordering_star(n)),
            NamedFamily::Cycle(_) => None,
        }
    }

    /// Published closed forms to print beside the computed value.
    pub fn reference_formula(&self, oracle: &[i128]) -> Option<ReferenceFormula> {
        let NamedFamily::Cycle(n) = *self else {
            return None;
        };
        let value = cyclic_multinomial(n);
        let shifted = cyclic_multinomial(n - 1);
        let matches_oracle = trimmed(&value) == trimmed(oracle);
        let note = if matches_oracle {
            "formula agrees with the oracle".to_string()
        } else if trimmed(&shifted) == trimmed(oracle) {
            format!(
                "formula diverges from the oracle; the oracle equals the same formula with n replaced by n-1 = {}",
                n - 1
            )
        } else {
            "formula diverges from the oracle".to_string()
        };
        Some(ReferenceFormula {
            formula: "multinomial(n; r, r, n-2r)".to_string(),
            value,
            matches_oracle,
            note,
        })
    }
}

fn trimmed(v: &[i128]) -> &[i128] {
    let end = v.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
    &v[..end]
}

/// `n! / (r! r! (n-2r)!)` for `r = 0..=n/2`.
pub fn cyclic_multinomial(n: usize) -> Vec<i128> {
    let fact = |k: usize| (1..=k as i128).product::<i128>();
    (0..=n / 2)
        .map(|r| fact(n) / (fact(r) * fact(r) * fact(n - 2 * r)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceFormula {
    pub formula: String,
    pub value: Vec<i128>,
    pub matches_oracle: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub oracle_ms: u128,
    pub volodin_ms: u128,
    pub complex_ms: u128,
}

/// Outcome of [`verify_triple`]. Serialises to the structured schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub identifier: String,
    pub ground_size: usize,
    pub members: usize,
    pub orderings_requested: usize,
    pub orderings_distinct: usize,
    pub gamma_oracle: Vec<i128>,
    pub gamma_volodin: Vec<i128>,
    pub gamma_complex: Vec<Vec<i128>>,
    pub agreement: bool,
    pub ffk: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceFormula>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn show(v: &[i128]) -> String {
    WideCoeffVector::new(v.to_vec()).to_string()
}

impl VerifyReport {
    /// Line-oriented rendering; timings appear only if present.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "building set: {}", self.identifier);
        let _ = writeln!(s, "ground size: {}", self.ground_size);
        let _ = writeln!(s, "members: {}", self.members);
        let _ = writeln!(
            s,
            "orderings: {} requested, {} distinct",
            self.orderings_requested, self.orderings_distinct
        );
        let _ = writeln!(s, "gamma oracle: {}", show(&self.gamma_oracle));
        let _ = writeln!(s, "gamma volodin: {}", show(&self.gamma_volodin));
        for (i, g) in self.gamma_complex.iter().enumerate() {
            let _ = writeln!(s, "gamma complex[{}]: {}", i + 1, show(g));
        }
        let _ = writeln!(s, "agreement: {}", yes_no(self.agreement));
        let _ = writeln!(s, "ffk: {}", if self.ffk { "passes" } else { "fails" });
        if let Some(r) = &self.reference {
            let _ = writeln!(s, "reference {}: {}", r.formula, show(&r.value));
            let _ = writeln!(s, "reference note: {}", r.note);
        }
        for note in &self.notes {
            let _ = writeln!(s, "note: {note}");
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(
                s,
                "timings ms: oracle {} volodin {} complex {}",
                t.oracle_ms, t.volodin_ms, t.complex_ms
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn coeffs(v: &WideCoeffVector) -> Vec<i128> {
    v.trimmed().into_coeffs()
}

/// Up to `wanted` distinct random orderings of a connected flag building
/// set, trying at most `16 * wanted` seeds.
pub fn distinct_orderings(
    b: &BuildingSet,
    wanted: usize,
    seed: u64,
) -> Result<Vec<FlagOrdering>, OrderingError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for attempt in 0..16 * wanted.max(1) as u64 {
        if out.len() == wanted {
            break;
        }
        let o = random_ordering(
            b,
            seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(attempt),
        )?;
        if seen.insert(o.sequence()) {
            out.push(o);
        }
    }
    Ok(out)
}

/// γ via the nested-set oracle, the Volodin recursion and clique counts of
/// `Γ(O)` for several random orderings. Disconnected `B` is handled one
/// component at a time, joining the component complexes.
pub fn verify_triple(
    b: &BuildingSet,
    identifier: &str,
    orderings: usize,
    seed: u64,
) -> Result<VerifyReport, VerifyError> {
    if let Some(s) = b.first_unsplittable() {
        return Err(VerifyError::NotFlag(s));
    }
    let ((oracle, oracle_ms), (volodin, volodin_ms)) = rayon::join(
        || timed(|| gamma_oracle::<i128>(b)),
        || timed(|| VolodinSolver::<i128>::new().gamma(b)),
    );
    let oracle = coeffs(&oracle?);
    let volodin = coeffs(&volodin?);

    let start = Instant::now();
    let components: Vec<BuildingSet> = b
        .maximal_elements()
        .into_iter()
        .map(|m| b.restriction(m))
        .collect::<Result<_, _>>()?;
    let per_component: Vec<Vec<FlagOrdering>> = components
        .iter()
        .enumerate()
        .map(|(i, c)| distinct_orderings(c, orderings, seed.wrapping_add(i as u64)))
        .collect::<Result<_, _>>()?;
    let combos: Vec<Vec<&FlagOrdering>> = (0..orderings)
        .map(|t| {
            per_component
                .iter()
                .map(|os| &os[t.min(os.len() - 1)])
                .collect()
        })
        .collect();
    let distinct = combos
        .iter()
        .map(|c| c.iter().map(|o| o.sequence()).collect::<Vec<_>>())
        .collect::<HashSet<_>>()
        .len();
    let complex: Vec<Vec<i128>> = combos
        .par_iter()
        .map(|combo| {
            let g = combo
                .iter()
                .fold(FlagComplex::new(Vec::new()).expect("empty"), |acc, o| {
                    join(&acc, &build_gamma_complex(o)).expect("components have disjoint labels")
                });
            coeffs(&g.f_vector::<i128>())
        })
        .collect();
    let complex_ms = start.elapsed().as_millis();

    let agreement = oracle == volodin && complex.iter().all(|g| *g == oracle);
    let ffk = ffk_check(&WideCoeffVector::new(oracle.clone())).unwrap_or(false);
    let mut notes = Vec::new();
    if distinct < orderings {
        notes.push(format!(
            "only {distinct} distinct orderings found for {orderings} requested"
        ));
    }
    if components.len() > 1 {
        notes.push(format!(
            "disconnected: {} components, complexes joined",
            components.len()
        ));
    }
    Ok(VerifyReport {
        identifier: identifier.to_string(),
        ground_size: b.ground_size(),
        members: b.len(),
        orderings_requested: orderings,
        orderings_distinct: distinct,
        gamma_oracle: oracle,
        gamma_volodin: volodin,
        gamma_complex: complex,
        agreement,
        ffk,
        reference: None,
        notes,
        timings: Some(Timings {
            oracle_ms,
            volodin_ms,
            complex_ms,
        }),
    })
}

/// [`verify_triple`] for a named family, with its reference formula if any.
pub fn verify_named(
    family: NamedFamily,
    orderings: usize,
    seed: u64,
) -> Result<VerifyReport, VerifyError> {
    let mut report = verify_triple(&family.building_set(), &family.to_string(), orderings, seed)?;
    report.reference = family.reference_formula(&report.gamma_oracle);
    Ok(report)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis())
}

/// Which identity failed in [`check_induced_orderings`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InducedCheckError {
    #[error("at k = {k}: {reason}")]
    Mismatch { k: usize, reason: &'static str },
    #[error("at k = {k}: {source}")]
    Construction { k: usize, source: OrderingError },
}

/// For every end index `k`: the contracted ordering's complex equals
/// `Γ(O)|_{U_k}` under `b_u \ b_k ↦ b_u`, the restricted ordering's complex
/// equals `Γ(O)|_{V_k}`, `Γ(O)|_{U_k ∪ V_k}` is the join of the two, and
/// `v(b_k)` has exactly `U_k ∪ V_k` as earlier neighbours.
pub fn check_induced_orderings(o: &FlagOrdering) -> Result<(), InducedCheckError> {
    let gamma = build_gamma_complex(o);
    let order = o.order();
    for uv in compute_all_uv(o) {
        let k = uv.j;
        let fail = |reason| InducedCheckError::Mismatch { k, reason };
        let construction = |source| InducedCheckError::Construction { k, source };
        let u_labels: Vec<ElementSet> = uv.u.iter().map(|&i| order[i - 1]).collect();
        let v_labels: Vec<ElementSet> = uv.v.iter().map(|&i| order[i - 1]).collect();
        let gu = gamma.induced_subcomplex(&u_labels).expect("labels of Γ(O)");
        let gv = gamma.induced_subcomplex(&v_labels).expect("labels of Γ(O)");

        let contracted = contracted_ordering(o, k).map_err(construction)?;
        let back = build_gamma_complex(&contracted)
            .map_labels(|s| {
                let p = contracted
                    .order()
                    .iter()
                    .position(|x| x == s)
                    .expect("own label");
                u_labels[p]
            })
            .expect("U_k labels are distinct");
        if !back.labeled_eq(&gu) {
            return Err(fail("contracted ordering differs from Γ(O)|U_k"));
        }

        let restricted = restricted_ordering(o, k).map_err(construction)?;
        if !build_gamma_complex(&restricted).labeled_eq(&gv) {
            return Err(fail("restricted ordering differs from Γ(O)|V_k"));
        }

        let both: Vec<ElementSet> = u_labels.iter().chain(&v_labels).copied().collect();
        let joined = join(&gu, &gv).expect("U_k and V_k are disjoint");
        if !gamma
            .induced_subcomplex(&both)
            .expect("labels of Γ(O)")
            .labeled_eq(&joined)
        {
            return Err(fail("Γ(O)|(U_k ∪ V_k) is not the join"));
        }

        let earlier: Vec<usize> = gamma
            .neighbors(k - 1)
            .into_iter()
            .filter(|&i| i < k - 1)
            .map(|i| i + 1)
            .collect();
        if earlier != uv.union() {
            return Err(fail("earlier neighbours of v(b_k) differ from U_k ∪ V_k"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eset;
    use crate::setcore::{closure, make_building_set};

    #[test]
    fn selectors() {
        assert_eq!("kn:5".parse(), Ok(NamedFamily::Complete(5)));
        assert_eq!(" cyc : 7 ".parse(), Ok(NamedFamily::Cycle(7)));
        assert!("kn:1".parse::<NamedFamily>().is_err());
        assert!("kn:65".parse::<NamedFamily>().is_err());
        assert!("tree:4".parse::<NamedFamily>().is_err());
        assert!("kn".parse::<NamedFamily>().is_err());
        assert_eq!(NamedFamily::Star(4).to_string(), "star:4");
        assert_eq!(NamedFamily::Path(5).building_set().len(), 15);
    }

    #[test]
    fn cyclic_formula_values() {
        assert_eq!(cyclic_multinomial(5), vec![1, 20, 30]);
        assert_eq!(cyclic_multinomial(4), vec![1, 12, 6]);
    }

    #[test]
    fn path5_triple() {
        let r = verify_named(NamedFamily::Path(5), 3, 0).unwrap();
        assert!(r.agreement && r.ffk);
        assert_eq!(r.gamma_oracle, vec![1, 6, 2]);
        assert_eq!(r.orderings_distinct, 3);
        assert!(r.reference.is_none());
    }

    #[test]
    fn minimal_triple() {
        let b = crate::setcore::minimal_flag_from_tree(&"((1,2),(3,4))".parse().unwrap()).unwrap();
        let r = verify_triple(&b, "tree", 3, 1).unwrap();
        assert!(r.agreement);
        assert_eq!(r.gamma_oracle, vec![1]);
        assert_eq!(r.orderings_distinct, 1);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn cyc5_report_shows_formula() {
        let r = verify_named(NamedFamily::Cycle(5), 3, 0).unwrap();
        assert_eq!(r.gamma_oracle, vec![1, 12, 6]);
        let reference = r.reference.clone().unwrap();
        assert_eq!(reference.value, vec![1, 20, 30]);
        assert!(!reference.matches_oracle);
        let text = r.to_text();
        assert!(text.contains("gamma oracle: (1, 12, 6)"));
        assert!(text.contains("(1, 20, 30)"));
        assert!(text.contains("diverges"));
        assert!(r.to_json().contains("\"matches_oracle\": false"));
    }

    #[test]
    fn disconnected_triple() {
        let b = closure(
            6,
            &[
                eset![1, 2],
                eset![2, 3],
                eset![1, 3],
                eset![4, 5],
                eset![5, 6],
            ],
        )
        .unwrap();
        let r = verify_triple(&b, "k3+p3", 3, 2).unwrap();
        assert!(r.agreement, "{r:?}");
        assert_eq!(r.gamma_oracle, vec![1, 3, 2]);
    }

    #[test]
    fn non_flag_rejected() {
        let b = make_building_set(3, &[eset![1, 2, 3]]).unwrap();
        assert_eq!(
            verify_triple(&b, "x", 1, 0),
            Err(VerifyError::NotFlag(eset![1, 2, 3]))
        );
    }

    #[test]
    fn induced_identities_on_named_orderings() {
        for n in 2..=6 {
            for o in [ordering_kn(n), ordering_pathn(n), ordering_star(n)] {
                check_induced_orderings(&o.unwrap()).unwrap();
            }
        }
    }
}
