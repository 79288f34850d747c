//! Multi-headed coherent-state superpositions built from the N-th roots of a
//! complex amplitude.
//!
//! * [`roots`]: polar amplitudes and their N-th roots.
//! * [`analytic`]: closed-form moments, statistics, Fock elements, Wigner
//!   function and parity for the incoherent mixture and the coherent
//!   superposition.
//! * [`oracle`]: the same states built in a truncated Fock basis, used to
//!   cross-check every closed form.
//! * [`analysis`]: sweeps over the modulus and threshold crossings.
//! * [`validate`]: analytic-vs-oracle comparison report.
//! * [`grid`]: phase-space Wigner grids.

pub mod analysis;
pub mod analytic;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod roots;
mod special;
pub mod validate;

pub use analytic::{Family, StateSpec};
pub use error::{Error, Result};
pub use roots::{PolarAmplitude, RootSet};
