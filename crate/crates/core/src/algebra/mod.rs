//! Finite *-algebras: commutants, the trichotomy of irreducible algebras,
//! symmetries, states and the reduction of complex-induced systems.

pub mod classify;
pub mod reduce;
pub mod star;
pub mod state;
pub mod symmetry;

pub use classify::{
    classification_checks, classify_irreducible, extract_anti_unit, irreducibility, is_irreducible,
    AntiUnit, ClassKind, Classification, Irreducibility,
};
pub use reduce::{reduce_system, ComplexSystem, ReductionReport};
pub use star::{bicommutant, center, commutant, generated_algebra, CommutantBasis, StarAlgebra};
pub use state::{lueders_update, StateFunctional};
pub use symmetry::{induce_symmetry, same_symmetry, same_symmetry_residual};
