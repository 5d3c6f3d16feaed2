//! Decoherence of entangled coherent states (ECSs) in lossy bosonic channels.
//!
//! The analytic path (`states`, `channels`, `entanglement`) evaluates the
//! closed forms for the decohered odd ECS under an asymmetric channel (one
//! mode lossy) and a symmetric channel (both modes equally lossy). The
//! `fock` module rebuilds the same states by brute force in a truncated
//! photon-number basis and is used to check every closed form.
//!
//! Amplitudes are real throughout. In the master-equation picture the loss
//! parameter maps to a decay time through `t = sqrt(eta) = exp(-gamma*tau/2)`.

pub mod channels;
pub mod entanglement;
mod error;
pub mod fock;
pub mod linalg;
pub mod search;
pub mod states;
pub mod sweep;

pub use error::{EcsError, Result};
