//! Entanglement, mixedness and nonlocality measures for two-qubit states.
//!
//! The crate computes, for an arbitrary 4x4 density matrix:
//!
//! * concurrence and entanglement of formation ([`measures`]),
//! * normalized linear entropy as a mixedness measure ([`measures`]),
//! * the maximal CHSH expectation value over all measurement settings,
//!   obtained from the correlation-matrix criterion ([`chsh`]).
//!
//! On top of those it implements the phase diagram in the
//! (linear entropy, concurrence) plane for the family of states with no
//! population in (and no coherence to) the first basis state: each point
//! below the maximal-entropy frontier is classified into one of three
//! regions by whether CHSH violation is impossible, possible or certain,
//! and for points in the "possible" region a pair of witness states with
//! identical entanglement and mixedness but opposite CHSH verdicts can be
//! constructed explicitly ([`regions`]).
//!
//! Everything is generic over the floating-point scalar through the
//! [`Scalar`] trait; `f64` is the intended default and `f32` works with
//! proportionally looser tolerances. Concrete `f64` aliases for the main
//! types are exported at the crate root.

pub mod chsh;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod regions;
pub mod scalar;
pub mod states;

pub use error::{Error, Result, StateViolation};
pub use scalar::Scalar;

/// `f64` density matrix, the default working type.
pub type DensityMatrix64 = states::DensityMatrix<f64>;
/// `f64` parameter set for the restricted state family.
pub type E0Params64 = states::E0Params<f64>;
/// `f64` Bloch decomposition.
pub type BlochDecomposition64 = states::BlochDecomposition<f64>;
/// `f64` bundle of entanglement and mixedness measures.
pub type MeasureReport64 = measures::MeasureReport<f64>;
/// `f64` CHSH violation report.
pub type ChshReport64 = chsh::ChshReport<f64>;
/// `f64` CHSH measurement settings.
pub type BellOperator64 = chsh::BellOperator<f64>;
/// `f64` numerical CHSH optimum.
pub type ChshOptimum64 = chsh::ChshOptimum<f64>;
/// `f64` point of the (linear entropy, concurrence) plane.
pub type RegionPoint64 = regions::RegionPoint<f64>;
/// `f64` ellipse geometry of a fixed-measure family.
pub type EllipseGeometry64 = regions::EllipseGeometry<f64>;
/// `f64` family of states over the admissible angle set.
pub type PhiFamily64 = regions::PhiFamily<f64>;
/// `f64` witness state pair.
pub type WitnessPair64 = regions::WitnessPair<f64>;

/// `f32` density matrix.
pub type DensityMatrix32 = states::DensityMatrix<f32>;
/// `f32` parameter set for the restricted state family.
pub type E0Params32 = states::E0Params<f32>;
