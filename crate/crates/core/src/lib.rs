//! Requirements and performance bounds for reconfigurable intelligent
//! surfaces (RIS): link budgets and panel sizing, a discrete-aperture
//! simulator for phase quantization and beam squint, and a catalog of RF
//! switch technologies for power and energy projections.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aperture;
pub mod catalog;
pub mod error;
pub mod interval;
pub mod link;
pub mod serialization;
pub mod units;

pub use aperture::{
    build_grid, ApertureDesign, Direction, Incidence, PhaseProfile, PhaseResolution, RadiationPattern, SquintBandwidth,
    SteeringTarget,
};
pub use catalog::{builtin_catalog, SwitchTechnology};
pub use error::{Error, Result};
pub use interval::{Interval, Measure};
pub use link::{evaluate_scenario, BandwidthMethod, RisRequirementsReport, ScenarioSpec};
pub use serialization::ReportRecord;
pub use units::{Frequency, NoiseModel, PowerLevel, SPEED_OF_LIGHT};
