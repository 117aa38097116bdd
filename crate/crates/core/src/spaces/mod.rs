//! Hamiltonian families, charts, metrics and curvature.

pub mod charts;
pub mod curvature;
pub mod hamiltonian;
pub mod metric;
pub mod params;
pub mod radial;

pub use charts::{convert, from_polar, to_polar, transport};
pub use curvature::{curvature, CurvatureReport, Curvatures};
pub use hamiltonian::{hamiltonian, CustomFamily, Family, FamilyKind, HamiltonianSpec};
pub use metric::{metric, Kind};
pub use params::{Preset, SpaceParams, DEFAULT_GAMMA};
pub use radial::{radial_reduction, RadialReduction};
