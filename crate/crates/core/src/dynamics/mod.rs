//! Schrödinger dynamics with anti-selfadjoint Hamiltonians, symplectic
//! components of waves and the probabilities read off from them.

pub mod counitary;
pub mod evolution;
pub mod probability;
pub mod symplectic;

pub use counitary::{counitary_demo, CounitaryReport, PairDistance};
pub use evolution::{evolve, evolution_trace, propagator, EvolutionTrace, Hamiltonian};
pub use probability::{quaternionic_phase, transition_probs, TransitionProbs};
pub use symplectic::{
    assemble_hamiltonian, block_propagator, disassemble_hamiltonian, hamiltonian_block,
    reconstruct_wave, symplectic_components, SymplecticWave, BLOCK_GENERATOR_SIGN,
};
