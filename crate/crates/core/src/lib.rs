//! Finite-dimensional quaternionic Hilbert spaces and their complex
//! reductions.
//!
//! The crate is organized bottom-up:
//!
//! * [`quat`]: quaternion scalars, imaginary units and symplectic frames;
//! * [`linalg`]: vectors, right-linear operators, the complex embedding,
//!   spectral spheres and the polar decomposition;
//! * [`functors`]: scalar extension and restriction, the `H⁺/H⁻` splitting
//!   induced by an anti-selfadjoint unitary `J`, conjugations and left
//!   multiplications;
//! * [`algebra`]: commutants of finite *-algebras, the real/complex/
//!   quaternionic classification of irreducible algebras, symmetries,
//!   states and the reduction of complex-induced systems;
//! * [`random`]: seeded generators of random and planted instances;
//! * [`suite`]: the registry of randomized invariant checks;
//! * [`dynamics`]: Schrödinger evolution with anti-selfadjoint Hamiltonians,
//!   symplectic components and transition probabilities.

pub mod algebra;
pub mod check;
pub mod dynamics;
pub mod error;
pub mod functors;
pub mod linalg;
pub mod quat;
pub mod random;
pub mod suite;

pub use check::Check;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, QMatrix, QVector};
pub use quat::{frame_complete, qconj, qmul, qnorm, sphere_representative, symplectic_split, Frame, ImaginaryUnit, Quaternion};

pub use algebra::{Classification, ClassKind, CommutantBasis, StarAlgebra, StateFunctional};
pub use dynamics::{Hamiltonian, SymplecticWave};
pub use functors::{Conjugation, LeftMultiplication, SplitSpace};
