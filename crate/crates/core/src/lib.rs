//! Linear control systems `x^Δ(t) = A x(t) + B u(t)` on time scales.
//!
//! The crate models bounded time scales exactly ([`timescale`]), evaluates the
//! time-scale matrix exponential piecewise over scattered and dense parts
//! ([`tsexp`]), simulates systems under piecewise-constant inputs
//! ([`system`]) and decides positivity, positive accessibility and positive
//! reachability with checkable certificates ([`reach`]).
//!
//! All numerics are generic over [`Real`]; the `*64` aliases below are what
//! most callers want.

// `!(a < b)` is used deliberately so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod matrix;
pub mod quadrature;
pub mod reach;
pub mod scalar;
pub mod system;
pub mod timescale;
pub mod tsexp;

pub use error::{Error, Result};
pub use matrix::{ExtMat, Extended, Mat};

pub use reach::{Decision, GramSpec, ReachOptions, ReachReport};
pub use scalar::Real;

pub use system::{ControlSegment, ControlSignal, LinearSystem, Trajectory};
pub use timescale::{DeltaSet, ScaleKind, TimeScale, TimeScaleDescriptor, WindowPiece};
pub use tsexp::{ExpFactor, ExpPath};

pub type Mat64 = Mat<f64>;
pub type ExtMat64 = ExtMat<f64>;
pub type TimeScale64 = TimeScale<f64>;
pub type DeltaSet64 = DeltaSet<f64>;
pub type GramSpec64 = GramSpec<f64>;
pub type ReachReport64 = ReachReport<f64>;
pub type ExpPath64 = ExpPath<f64>;

pub type Mat32 = Mat<f32>;
pub type TimeScale32 = TimeScale<f32>;

pub type LinearSystem64 = LinearSystem<f64>;
pub type ControlSignal64 = ControlSignal<f64>;
pub type Trajectory64 = Trajectory<f64>;
