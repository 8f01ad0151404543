//! Bounded time scales: finite unions of closed intervals.
//!
//! A [`TimeScale`] stores its components in canonical form (sorted, touching
//! or overlapping intervals merged). Degenerate components are isolated
//! points. Every window `[t0, t1)` splits into scattered atoms (points with
//! positive graininess) and dense segments; the exponential, the simulator
//! and the Gram integrals all walk that partition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Extended;
use crate::scalar::Real;

/// Which unbounded scale a bounded truncation stands for.
///
/// The tag only matters for [`TimeScale::max_graininess`]: the supremum of the
/// graininess is a property of the full scale, not of the truncation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScaleKind<T> {
    Custom,
    RealLine,
    HGrid { h: T },
    QGrid { q: T },
}

impl<T: Real> ScaleKind<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            ScaleKind::Custom => "custom",
            ScaleKind::RealLine => "real_line",
            ScaleKind::HGrid { .. } => "h_grid",
            ScaleKind::QGrid { .. } => "q_grid",
        }
    }
}

/// One element of a window partition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WindowPiece<T> {
    /// Right-scattered point `t` and its successor `sigma = σ(t)`.
    Atom { t: T, sigma: T },
    /// Right-dense stretch `[start, end)`.
    Dense { start: T, end: T },
}

impl<T: Real> WindowPiece<T> {
    pub fn start(&self) -> T {
        match *self {
            WindowPiece::Atom { t, .. } => t,
            WindowPiece::Dense { start, .. } => start,
        }
    }

    /// `σ(t)` for atoms, the right end for dense pieces.
    pub fn end(&self) -> T {
        match *self {
            WindowPiece::Atom { sigma, .. } => sigma,
            WindowPiece::Dense { end, .. } => end,
        }
    }

    /// Graininess of an atom, zero for dense pieces.
    pub fn mu(&self) -> T {
        match *self {
            WindowPiece::Atom { t, sigma } => sigma - t,
            WindowPiece::Dense { .. } => T::zero(),
        }
    }

    /// Δ-measure of the piece.
    pub fn measure(&self) -> T {
        match *self {
            WindowPiece::Atom { t, sigma } => sigma - t,
            WindowPiece::Dense { start, end } => end - start,
        }
    }
}

/// Nonempty closed subset of ℝ made of finitely many closed intervals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "TimeScaleDescriptor<T>", try_from = "TimeScaleDescriptor<T>")]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct TimeScale<T: Real> {
    kind: ScaleKind<T>,
    components: Vec<(T, T)>,
}

impl<T: Real> TimeScale<T> {
    /// Canonicalises `components` and checks them against `kind`.
    pub fn new(kind: ScaleKind<T>, mut components: Vec<(T, T)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidTimeScale("no components".into()));
        }
        for &(a, b) in &components {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidTimeScale("endpoints must be finite".into()));
            }
            if a > b {
                return Err(Error::InvalidTimeScale(format!(
                    "component [{a}, {b}] has a > b"
                )));
            }
        }
        components.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut merged: Vec<(T, T)> = Vec::with_capacity(components.len());
        for (a, b) in components {
            match merged.last_mut() {
                Some(last) if a <= last.1 + T::snap_tol(last.1) => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        let ts = TimeScale {
            kind,
            components: merged,
        };
        ts.check_kind()?;
        Ok(ts)
    }

    fn check_kind(&self) -> Result<()> {
        let rel = T::lit(1e-9);
        match self.kind {
            ScaleKind::Custom => Ok(()),
            ScaleKind::RealLine => match self.components.as_slice() {
                [(a, b)] if a < b => Ok(()),
                _ => Err(Error::InvalidTimeScale(
                    "real_line needs one interval of positive length".into(),
                )),
            },
            ScaleKind::HGrid { h } => {
                if !(h > T::zero()) {
                    return Err(Error::InvalidTimeScale("h_grid needs h > 0".into()));
                }
                self.check_isolated("h_grid")?;
                for w in self.components.windows(2) {
                    if ((w[1].0 - w[0].0) - h).abs() > rel * h.max(T::one()) {
                        return Err(Error::InvalidTimeScale(format!(
                            "h_grid points {} and {} are not {h} apart",
                            w[0].0, w[1].0
                        )));
                    }
                }
                Ok(())
            }
            ScaleKind::QGrid { q } => {
                if !(q > T::one()) {
                    return Err(Error::InvalidTimeScale("q_grid needs q > 1".into()));
                }
                self.check_isolated("q_grid")?;
                if self.components[0].0 <= T::zero() {
                    return Err(Error::InvalidTimeScale(
                        "q_grid points must be positive".into(),
                    ));
                }
                for w in self.components.windows(2) {
                    if (w[1].0 / w[0].0 - q).abs() > rel * q {
                        return Err(Error::InvalidTimeScale(format!(
                            "q_grid points {} and {} do not have ratio {q}",
                            w[0].0, w[1].0
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    fn check_isolated(&self, tag: &str) -> Result<()> {
        if self.components.iter().any(|&(a, b)| a != b) {
            return Err(Error::InvalidTimeScale(format!(
                "{tag} components must be isolated points"
            )));
        }
        Ok(())
    }

    pub fn custom(components: Vec<(T, T)>) -> Result<Self> {
        Self::new(ScaleKind::Custom, components)
    }

    /// Isolated points.
    pub fn points(points: &[T]) -> Result<Self> {
        Self::custom(points.iter().map(|&p| (p, p)).collect())
    }

    /// `[a, b]` standing in for ℝ.
    pub fn real_line(a: T, b: T) -> Result<Self> {
        Self::new(ScaleKind::RealLine, vec![(a, b)])
    }

    /// `{start, start + h, …, start + (count-1)h}` standing in for hℤ.
    pub fn h_grid(h: T, start: T, count: usize) -> Result<Self> {
        let pts = (0..count)
            .map(|i| start + h * T::lit(i as f64))
            .map(|p| (p, p))
            .collect();
        Self::new(ScaleKind::HGrid { h }, pts)
    }

    /// ℤ ∩ [a, b].
    pub fn integers(a: i64, b: i64) -> Result<Self> {
        if b < a {
            return Err(Error::InvalidTimeScale("empty integer range".into()));
        }
        Self::h_grid(T::one(), T::lit(a as f64), (b - a + 1) as usize)
    }

    /// `{start, start·q, …, start·q^(count-1)}` standing in for q^ℕ.
    pub fn q_grid(q: T, start: T, count: usize) -> Result<Self> {
        let mut pts = Vec::with_capacity(count);
        let mut p = start;
        for _ in 0..count {
            pts.push((p, p));
            p *= q;
        }
        Self::new(ScaleKind::QGrid { q }, pts)
    }

    pub fn kind(&self) -> ScaleKind<T> {
        self.kind
    }

    pub fn components(&self) -> &[(T, T)] {
        &self.components
    }

    pub fn inf(&self) -> T {
        self.components[0].0
    }

    pub fn sup(&self) -> T {
        self.components[self.components.len() - 1].1
    }

    /// Number of points, `None` when some component has positive length.
    pub fn cardinality(&self) -> Option<usize> {
        if self.components.iter().any(|&(a, b)| a < b) {
            None
        } else {
            Some(self.components.len())
        }
    }

    fn locate(&self, t: T) -> Option<usize> {
        let tol = T::snap_tol(t);
        let idx = self.components.partition_point(|&(_, b)| b + tol < t);
        match self.components.get(idx) {
            Some(&(a, _)) if a - tol <= t => Some(idx),
            _ => None,
        }
    }

    /// Component index and canonical value of a member point.
    fn resolve(&self, t: T) -> Result<(usize, T)> {
        let idx = self
            .locate(t)
            .ok_or(Error::PointNotInScale(t.to_f64_lossy()))?;
        let (a, b) = self.components[idx];
        let tol = T::snap_tol(t);
        let snapped = if (t - a).abs() <= tol {
            a
        } else if (t - b).abs() <= tol {
            b
        } else {
            t
        };
        Ok((idx, snapped))
    }

    pub fn contains(&self, t: T) -> bool {
        self.locate(t).is_some()
    }

    /// Canonical representative of a member point (endpoints snap exactly).
    pub fn snap(&self, t: T) -> Result<T> {
        self.resolve(t).map(|(_, s)| s)
    }

    /// Forward jump `σ(t) = inf{s ∈ T : s > t}`, with `σ(sup T) = sup T`.
    pub fn sigma(&self, t: T) -> Result<T> {
        let (idx, t) = self.resolve(t)?;
        let (_, b) = self.components[idx];
        if t < b {
            Ok(t)
        } else {
            Ok(self.components.get(idx + 1).map_or(t, |c| c.0))
        }
    }

    /// Backward jump `ρ(t) = sup{s ∈ T : s < t}`, with `ρ(inf T) = inf T`.
    pub fn rho(&self, t: T) -> Result<T> {
        let (idx, t) = self.resolve(t)?;
        let (a, _) = self.components[idx];
        if t > a || idx == 0 {
            Ok(t)
        } else {
            Ok(self.components[idx - 1].1)
        }
    }

    /// Graininess `μ(t) = σ(t) − t`.
    pub fn mu(&self, t: T) -> Result<T> {
        let s = self.snap(t)?;
        Ok(self.sigma(s)? - s)
    }

    /// `σ^k(t)`.
    pub fn sigma_pow(&self, t: T, k: usize) -> Result<T> {
        (0..k).try_fold(self.snap(t)?, |acc, _| self.sigma(acc))
    }

    /// `μ̄ = sup μ` of the scale the truncation represents.
    pub fn max_graininess(&self) -> Extended<T> {
        match self.kind {
            ScaleKind::RealLine => Extended::Finite(T::zero()),
            ScaleKind::HGrid { h } => Extended::Finite(h),
            ScaleKind::QGrid { .. } => Extended::Infinite,
            ScaleKind::Custom => Extended::Finite(self.components_max_gap()),
        }
    }

    /// Largest graininess realised on the stored components.
    pub fn components_max_gap(&self) -> T {
        self.components
            .windows(2)
            .map(|w| w[1].0 - w[0].1)
            .fold(T::zero(), T::max)
    }

    fn window(&self, t0: T, t1: T) -> Result<(usize, T, usize, T)> {
        let (i0, t0) = self.resolve(t0)?;
        let (i1, t1) = self.resolve(t1)?;
        if t0 >= t1 {
            return Err(Error::EmptyWindow {
                t0: t0.to_f64_lossy(),
                t1: t1.to_f64_lossy(),
            });
        }
        Ok((i0, t0, i1, t1))
    }

    /// Splits `[t0, t1)_T` into atoms and dense segments, in time order.
    pub fn partition(&self, t0: T, t1: T) -> Result<Vec<WindowPiece<T>>> {
        let (i0, t0, i1, t1) = self.window(t0, t1)?;
        let mut pieces = Vec::new();
        for idx in i0..=i1 {
            let (a, b) = self.components[idx];
            let lo = a.max(t0);
            let hi = b.min(t1);
            if hi > lo {
                pieces.push(WindowPiece::Dense { start: lo, end: hi });
            }
            if b < t1 && b >= t0 {
                let next = self.components[idx + 1].0;
                pieces.push(WindowPiece::Atom { t: b, sigma: next });
            }
        }
        Ok(pieces)
    }

    /// Right-scattered points of `[t0, t1)` with their graininess.
    pub fn scattered_points(&self, t0: T, t1: T) -> Result<Vec<(T, T)>> {
        Ok(self
            .partition(t0, t1)?
            .into_iter()
            .filter_map(|p| match p {
                WindowPiece::Atom { t, sigma } => Some((t, sigma - t)),
                WindowPiece::Dense { .. } => None,
            })
            .collect())
    }

    /// Maximal dense subintervals `[c, d)` of `[t0, t1)_T`.
    pub fn continuous_segments(&self, t0: T, t1: T) -> Result<Vec<(T, T)>> {
        Ok(self
            .partition(t0, t1)?
            .into_iter()
            .filter_map(|p| match p {
                WindowPiece::Dense { start, end } => Some((start, end)),
                WindowPiece::Atom { .. } => None,
            })
            .collect())
    }

    /// `[t0, t1]_T` has at least `n` elements.
    pub fn window_has_at_least(&self, t0: T, t1: T, n: usize) -> Result<bool> {
        let pieces = self.partition(t0, t1)?;
        if pieces
            .iter()
            .any(|p| matches!(p, WindowPiece::Dense { .. }))
        {
            return Ok(true);
        }
        Ok(pieces.len() + 1 >= n)
    }

    /// The scale has at least `n` elements.
    pub fn has_at_least(&self, n: usize) -> bool {
        self.cardinality().is_none_or(|c| c >= n)
    }

    /// Δ-integral of 1 over `set`.
    pub fn delta_measure(&self, set: &DeltaSet<T>) -> Result<T> {
        let mut total = T::zero();
        for &(c, d) in set.pieces() {
            for p in self.partition(c, d)? {
                total += p.measure();
            }
        }
        Ok(total)
    }

    pub fn descriptor(&self) -> TimeScaleDescriptor<T> {
        self.clone().into()
    }
}

/// Finite disjoint union of half-open Δ-intervals `[c, d)` with endpoints in a
/// time scale.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaSet<T> {
    pieces: Vec<(T, T)>,
}

impl<T: Real> DeltaSet<T> {
    pub fn empty() -> Self {
        DeltaSet { pieces: Vec::new() }
    }

    /// Validates endpoints against `ts`, sorts, and merges touching pieces.
    pub fn new(ts: &TimeScale<T>, pieces: Vec<(T, T)>) -> Result<Self> {
        let mut snapped = Vec::with_capacity(pieces.len());
        for (c, d) in pieces {
            let (c, d) = (ts.snap(c)?, ts.snap(d)?);
            if c >= d {
                return Err(Error::EmptyWindow {
                    t0: c.to_f64_lossy(),
                    t1: d.to_f64_lossy(),
                });
            }
            snapped.push((c, d));
        }
        snapped.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut merged: Vec<(T, T)> = Vec::with_capacity(snapped.len());
        for (c, d) in snapped {
            match merged.last_mut() {
                Some(last) if c < last.1 => {
                    return Err(Error::InvalidTimeScale(format!(
                        "Δ-set pieces overlap: [{}, {}) and [{c}, {d})",
                        last.0, last.1
                    )))
                }
                Some(last) if c == last.1 => last.1 = d,
                _ => merged.push((c, d)),
            }
        }
        Ok(DeltaSet { pieces: merged })
    }

    pub fn pieces(&self) -> &[(T, T)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Every piece lies inside `[t0, t1)`.
    pub fn within(&self, t0: T, t1: T) -> bool {
        self.pieces.iter().all(|&(c, d)| c >= t0 && d <= t1)
    }

    /// Union with another set over the same scale.
    pub fn union(&self, ts: &TimeScale<T>, other: &DeltaSet<T>) -> Result<Self> {
        let mut all = self.pieces.clone();
        all.extend_from_slice(&other.pieces);
        DeltaSet::new(ts, all)
    }
}

/// JSON form of a time scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct TimeScaleDescriptor<T> {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<T>,
    pub components: Vec<[T; 2]>,
}

impl<T: Real> From<TimeScale<T>> for TimeScaleDescriptor<T> {
    fn from(ts: TimeScale<T>) -> Self {
        let (h, q) = match ts.kind {
            ScaleKind::HGrid { h } => (Some(h), None),
            ScaleKind::QGrid { q } => (None, Some(q)),
            _ => (None, None),
        };
        TimeScaleDescriptor {
            tag: ts.kind.tag().to_string(),
            h,
            q,
            components: ts.components.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl<T: Real> TryFrom<TimeScaleDescriptor<T>> for TimeScale<T> {
    type Error = Error;

    fn try_from(d: TimeScaleDescriptor<T>) -> Result<Self> {
        let kind = match d.tag.as_str() {
            "custom" => ScaleKind::Custom,
            "real_line" => ScaleKind::RealLine,
            "h_grid" => ScaleKind::HGrid {
                h: d.h
                    .ok_or_else(|| Error::InvalidTimeScale("h_grid requires \"h\"".into()))?,
            },
            "q_grid" => ScaleKind::QGrid {
                q: d.q
                    .ok_or_else(|| Error::InvalidTimeScale("q_grid requires \"q\"".into()))?,
            },
            other => return Err(Error::InvalidTimeScale(format!("unknown tag {other:?}"))),
        };
        TimeScale::new(
            kind,
            d.components.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}
