//! The time-scale matrix exponential `e_A(t, t0)`.
//!
//! `e_A(t, t0)` solves `X^Δ = AX, X(t0) = I`. Over a window it is the ordered
//! product of `I + μ(τ)A` for every scattered `τ` and `e^{AΔ}` for every dense
//! stretch of length `Δ`, later factors on the left.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{expm, Mat};
use crate::scalar::Real;
use crate::timescale::{TimeScale, WindowPiece};

/// One factor of an exponential path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpFactor<T> {
    /// `I + μA` at scattered `t`.
    Discrete { t: T, mu: T },
    /// `e^{A(end - start)}` over a dense stretch.
    Continuous { start: T, end: T },
}

/// `e_A(to, from)` together with its factorisation, earliest factor first.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct ExpPath<T: Real> {
    pub from: T,
    pub to: T,
    pub factors: Vec<ExpFactor<T>>,
    pub value: Mat<T>,
}

/// `I + μA` or `e^{AΔ}` for one window piece.
pub fn piece_factor<T: Real>(a: &Mat<T>, piece: &WindowPiece<T>) -> Result<Mat<T>> {
    match *piece {
        WindowPiece::Atom { .. } => Ok(&Mat::identity(a.rows()) + &a.scale(piece.mu())),
        WindowPiece::Dense { start, end } => expm(a, end - start),
    }
}

fn check_generator<T: Real>(a: &Mat<T>) -> Result<usize> {
    a.require_square()
}

/// `e_A(t, t0)` with its factor list.
pub fn ts_exp_path<T: Real>(a: &Mat<T>, ts: &TimeScale<T>, t: T, t0: T) -> Result<ExpPath<T>> {
    let n = check_generator(a)?;
    let (t, t0) = (ts.snap(t)?, ts.snap(t0)?);
    if t < t0 {
        return Err(Error::BackwardWindow {
            t: t.to_f64_lossy(),
            t0: t0.to_f64_lossy(),
        });
    }
    if t == t0 {
        return Ok(ExpPath {
            from: t0,
            to: t,
            factors: Vec::new(),
            value: Mat::identity(n),
        });
    }
    let mut value = Mat::identity(n);
    let mut factors = Vec::new();
    for piece in ts.partition(t0, t)? {
        value = &piece_factor(a, &piece)? * &value;
        factors.push(match piece {
            WindowPiece::Atom { t, .. } => ExpFactor::Discrete { t, mu: piece.mu() },
            WindowPiece::Dense { start, end } => ExpFactor::Continuous { start, end },
        });
    }
    Ok(ExpPath {
        from: t0,
        to: t,
        factors,
        value,
    })
}

/// `e_A(t, t0)` for `t0 ≤ t` in the scale.
pub fn ts_exp<T: Real>(a: &Mat<T>, ts: &TimeScale<T>, t: T, t0: T) -> Result<Mat<T>> {
    ts_exp_path(a, ts, t, t0).map(|p| p.value)
}

/// `e_A(t1, σ(τ))`, the kernel of the variation-of-constants formula.
pub fn ts_exp_at_sigma<T: Real>(a: &Mat<T>, ts: &TimeScale<T>, t1: T, tau: T) -> Result<Mat<T>> {
    let s = ts.sigma(tau)?;
    ts_exp(a, ts, t1, s)
}

/// `e_A(t1, s)` for every piece boundary `s` of `[t0, t1)`, computed by one
/// backward sweep.
///
/// Entry `j` is `e_A(t1, pieces[j].end())`, i.e. the propagator from the end
/// of piece `j` to `t1`.
pub fn tail_propagators<T: Real>(a: &Mat<T>, pieces: &[WindowPiece<T>]) -> Result<Vec<Mat<T>>> {
    let n = check_generator(a)?;
    let mut out = vec![Mat::identity(n); pieces.len()];
    let mut acc = Mat::identity(n);
    for j in (0..pieces.len()).rev() {
        out[j] = acc.clone();
        acc = &acc * &piece_factor(a, &pieces[j])?;
    }
    Ok(out)
}
