//! Building sets, flag orderings and the gamma-complex construction for
//! flag nestohedra.

pub mod analysis;
mod bitset;
pub mod formats;
pub mod gammacomplex;
pub mod generate;
pub mod npcomplexes;
pub mod oracle;
pub mod ordering;
pub mod polyvec;
pub mod setcore;

pub use gammacomplex::{build_gamma_complex, FlagComplex};
pub use num_bigint::BigInt;
pub use oracle::{gamma_oracle, nested_f_vector};
pub use ordering::{find_flag_ordering, FlagOrdering, OrderingError, Strategy};
pub use polyvec::{gamma_via_volodin, Coefficient, Poly};
pub use setcore::{BuildingSet, Decomposition, ElementSet, SetError, SimpleGraph};

/// Coefficient vectors over `i64`.
pub type CoeffVector = Poly<i64>;
/// Coefficient vectors over `i128`.
pub type WideCoeffVector = Poly<i128>;
/// Arbitrary-precision coefficient vectors.
pub type BigCoeffVector = Poly<BigInt>;
