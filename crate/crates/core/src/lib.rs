//! Hardy-type contextuality with a tunable-entanglement photon-pair source.
//!
//! Layers, bottom-up: [`qstate`] (two-qubit states and operators),
//! [`optics`] (rotated measurement bases and Born-rule context probabilities),
//! [`source`] (noisy source model), [`metrics`] (figures of merit),
//! [`control`] (balanced-rotation search and sweeps), [`sim`] (seeded
//! coincidence counting), [`io`] (raw-count ingestion and reports) and
//! [`verify`] (acceptance checks).

pub mod angle;
pub mod control;
pub mod error;
pub mod io;
pub mod metrics;
pub mod optics;
pub mod published;
pub mod qstate;
pub mod roots;
pub mod sim;
pub mod source;
pub mod stats;
pub mod verify;

pub use angle::Angle;
pub use error::{Error, Result};
