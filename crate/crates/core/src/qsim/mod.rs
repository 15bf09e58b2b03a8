//! Desk-scale quantum emulation: state vectors, amplitude encoding, the
//! swap test, norm/inner-product estimation, Grover search, Hamiltonian
//! evolution checks and spectral matrix inversion.
//!
//! All comparisons between states quotient out the global phase.

pub mod evolution;
pub mod grover;
pub mod inner_product;
pub mod inversion;
pub mod state;
pub mod swap;

pub use evolution::{density_commutator_step, first_order_commutator_step, star_graph, trotter_exp, DensityMatrix, TrotterResult};
pub use grover::{grover_query_model, grover_search, no_solution_queries, GroverOutcome, MarkedHint};
pub use inner_product::{inner_product_estimate, shots_for_accuracy, InnerProductEstimate};
pub use inversion::{spectral_invert, SpectralSolution};
pub use state::{amplitude_encode, qram_superposition, QramState, StateVector};
pub use swap::{swap_test, Shots, SwapTestOutcome};
