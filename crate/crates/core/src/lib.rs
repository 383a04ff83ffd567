//! Entanglement measures and bounds for two-mode squeezed non-symmetric
//! thermal Gaussian states.
//!
//! The state family is parametrized by a squeeze strength `λ = tanh r` and
//! two thermal parameters `v_A`, `v_B`, all in `[0, 1)`. On top of it this
//! crate computes:
//!
//! - the Gaussian entanglement of formation `E_G = g(sinh²(r − r₀))` with
//!   `r₀ = artanh √(v_A v_B)` ([`measures::geof`]),
//! - an upper bound `E_ur` on the relative entropy of entanglement, obtained
//!   by maximizing the cross entropy `Tr ρ log ρ̃` over separable squeezed
//!   thermal states on the separability edge ([`reoe::optimize_eur`]),
//! - the coherent information of both reductions ([`measures::coherent_information`]),
//! - independent numerical ground truth in a truncated two-mode Fock basis
//!   ([`fock`]): spectral entropies, partial traces, a coherent-state kernel
//!   and a positive-semidefiniteness search that recovers the GEoF squeezing
//!   parameter from its definition.
//!
//! All closed-form quantities are pure functions of immutable values and can
//! be called concurrently from any number of threads.
//!
//! Entropic quantities are returned in the log base selected by
//! [`measures::LogBase`]; the default choice throughout is base 2 (ebits).

pub mod error;
pub mod fock;
pub mod measures;
pub mod reoe;
pub mod state;

pub use error::Error;
pub use measures::LogBase;
pub use state::StateParams;
