//! Positive accessibility and positive reachability.
//!
//! A positive system is positively reachable on `[t0, t1]` iff some modified
//! Gram matrix
//!
//! ```text
//! W = Σ_{k∈M} ∫_{S_k} e_A(t1,σ(τ)) b_k b_kᵀ e_A(t1,σ(τ))ᵀ Δτ
//! ```
//!
//! is monomial. [`decide_positive_reachability`] builds such a `W` from
//! witness pieces and backs every positive answer with synthesized controls
//! that are simulated to their targets.

mod criteria;
mod decide;
mod gram;
mod synth;

use serde::Serialize;

use crate::matrix::Mat;
use crate::scalar::Real;
use crate::system::ControlSignal;

pub use criteria::{
    check_pr_discrete_homogeneous, check_pr_discrete_nonhomogeneous, check_pr_real_line,
    homogeneous_reachability_matrix, is_positively_accessible, kalman_matrix,
    nonhomogeneous_reachability_matrix,
};
pub use decide::decide_positive_reachability;
pub use gram::{gram, gram_columns, gram_full, GramSpec};
pub use synth::synthesize_control;

/// Numerical knobs shared by the Gram, decision and synthesis routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReachOptions<T> {
    /// Relative tolerance for sign and monomiality tests.
    pub tol: T,
    /// Chebyshev probes per dense segment when classifying `e_A(t1,τ)b_k`.
    pub probe_points: usize,
    /// Piecewise-constant steps per dense stretch of a synthesized control.
    pub control_substeps: usize,
    /// Agreement required between successive quadrature refinements.
    pub quad_tol: T,
    /// Largest accepted `‖x(t1) − x̄‖∞` for a synthesized control.
    pub residual_tol: T,
}

impl<T: Real> Default for ReachOptions<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        ReachOptions {
            tol: T::default_tol(),
            probe_points: 9,
            control_substeps: 64,
            quad_tol: T::lit(1e-10).max(eps * T::lit(100.0)),
            residual_tol: T::lit(1e-6).max(eps * T::lit(1000.0)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    PositivelyReachable,
    /// Not positively reachable, but the reachable cone has interior.
    AccessibleOnly,
    Inaccessible,
}

/// How accessibility was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankSource {
    /// Kalman matrix `[B, AB, …, A^{n-1}B]`.
    Kalman,
    /// Generators `μ(τ)e_A(t1,σ(τ))b_k` of a window with at most `n` points.
    Generators,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Accessibility {
    pub accessible: bool,
    pub rank: usize,
    pub via: RankSource,
}

/// A window piece on which `e_A(t1,σ(τ))b_k` is `i`-monomial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witness<T> {
    /// Input column, 1-based.
    pub k: usize,
    pub start: T,
    pub end: T,
    /// Scattered point `[τ, σ(τ))` rather than a dense stretch.
    pub scattered: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexDiagnostic<T> {
    /// State index, 1-based.
    pub i: usize,
    pub witnesses: Vec<Witness<T>>,
    pub chosen: Option<Witness<T>>,
}

/// A control steering `0` to `target`, with its simulated endpoint.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct SynthesizedControl<T: Real> {
    pub target: Vec<T>,
    pub control: ControlSignal<T>,
    pub endpoint: Vec<T>,
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct Certificate<T: Real> {
    pub spec: GramSpec<T>,
    #[serde(rename = "W")]
    pub w: Mat<T>,
    /// One control per basis target `e_1, …, e_n`.
    pub controls: Vec<SynthesizedControl<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct ReachReport<T: Real> {
    pub t0: T,
    pub t1: T,
    pub decision: Decision,
    pub reachable: bool,
    pub accessibility: Accessibility,
    pub certificate: Option<Certificate<T>>,
    pub diagnostics: Vec<IndexDiagnostic<T>>,
}
