//! Superintegrable free and Kepler systems on three-dimensional spaces of
//! variable and constant curvature, built from the Poisson coalgebra of the
//! deformed algebra sl_z(2).
//!
//! The crate is organised bottom-up: [`kernel`] supplies dual numbers and
//! κ-trigonometry, [`coalgebra`] builds the generator realizations, [`spaces`]
//! turns them into Hamiltonians, charts, metrics and curvatures, [`symmetry`]
//! holds the constants of motion and their bracket tables, and [`dynamics`]
//! integrates the flows.

pub mod coalgebra;
pub mod dynamics;
pub mod error;
pub mod kernel;
pub mod observable;
pub mod report;
pub mod sampling;
pub mod spaces;
pub mod state;
pub mod symmetry;

pub use error::{Error, Result};
pub use observable::Observable;
pub use state::{Chart, PhaseState};
