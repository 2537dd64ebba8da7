pub mod cli;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod lr;
pub mod oracle;
pub mod quiver;
pub mod rng;
pub mod schofield;
pub mod semiinv;
pub mod vector;

pub use cone::{ConeDecision, ConeDescription};
pub use error::{Error, Result};
pub use lr::{FlagQuiverInstance, Partition};
pub use oracle::FiniteField;
pub use quiver::{Quiver, Support};
pub use schofield::{HullData, SchofieldSession};
pub use semiinv::{DeltaSystem, GroupElement, Representation, Sampling, Witness, WitnessOutcome};
pub use vector::{DimVector, LatticeVector, Weight};
