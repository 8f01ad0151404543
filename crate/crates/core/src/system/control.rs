use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::timescale::TimeScale;

/// Input value held from `t` until the next segment starts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlSegment<T> {
    pub t: T,
    pub u: Vec<T>,
}

/// Right-continuous piecewise-constant input on `[t0, t1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawControl<T>")]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct ControlSignal<T: Real> {
    t0: T,
    t1: T,
    segments: Vec<ControlSegment<T>>,
}

#[derive(Deserialize)]
struct RawControl<T> {
    t0: T,
    t1: T,
    segments: Vec<ControlSegment<T>>,
}

impl<T: Real> TryFrom<RawControl<T>> for ControlSignal<T> {
    type Error = Error;

    fn try_from(r: RawControl<T>) -> Result<Self> {
        ControlSignal::new(r.t0, r.t1, r.segments)
    }
}

impl<T: Real> ControlSignal<T> {
    pub fn new(t0: T, t1: T, segments: Vec<ControlSegment<T>>) -> Result<Self> {
        if !(t0 < t1) {
            return Err(Error::EmptyWindow {
                t0: t0.to_f64_lossy(),
                t1: t1.to_f64_lossy(),
            });
        }
        let first = segments
            .first()
            .ok_or_else(|| Error::DomainMismatch("control has no segments".into()))?;
        if first.t != t0 {
            return Err(Error::DomainMismatch(format!(
                "first segment starts at {}, not t0 = {t0}",
                first.t
            )));
        }
        let m = first.u.len();
        for w in segments.windows(2) {
            if !(w[1].t > w[0].t) {
                return Err(Error::DomainMismatch(
                    "segment start times must increase".into(),
                ));
            }
        }
        for s in &segments {
            if s.u.len() != m {
                return Err(Error::DomainMismatch(
                    "segments differ in input dimension".into(),
                ));
            }
            if s.t >= t1 {
                return Err(Error::DomainMismatch(format!(
                    "segment at {} starts after the domain",
                    s.t
                )));
            }
            if s.u.iter().any(|v| !v.is_finite()) {
                return Err(Error::DomainMismatch(format!(
                    "segment at {} has a non-finite value",
                    s.t
                )));
            }
        }
        Ok(ControlSignal { t0, t1, segments })
    }

    /// `u ≡ 0` on `[t0, t1)`.
    pub fn zero(m: usize, t0: T, t1: T) -> Result<Self> {
        Self::new(
            t0,
            t1,
            vec![ControlSegment {
                t: t0,
                u: vec![T::zero(); m],
            }],
        )
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn t1(&self) -> T {
        self.t1
    }

    pub fn segments(&self) -> &[ControlSegment<T>] {
        &self.segments
    }

    /// Input dimension.
    pub fn m(&self) -> usize {
        self.segments[0].u.len()
    }

    /// `u(t)`, right-continuous.
    pub fn value_at(&self, t: T) -> &[T] {
        let tol = T::snap_tol(t);
        let idx = self.segments.partition_point(|s| s.t <= t + tol);
        &self.segments[idx.saturating_sub(1)].u
    }

    /// Segment start times strictly inside `(a, b)`.
    pub fn switches_within(&self, a: T, b: T) -> impl Iterator<Item = T> + '_ {
        let (ta, tb) = (a + T::snap_tol(a), b - T::snap_tol(b));
        self.segments
            .iter()
            .map(|s| s.t)
            .filter(move |&t| t > ta && t < tb)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.segments
            .iter()
            .all(|s| s.u.iter().all(|&v| v >= T::zero()))
    }

    /// Checks the control against a scale and an input dimension.
    pub fn validate(&self, ts: &TimeScale<T>, m: usize) -> Result<()> {
        if self.m() != m {
            return Err(Error::DomainMismatch(format!(
                "control has {} inputs, system has {m}",
                self.m()
            )));
        }
        for t in [self.t0, self.t1]
            .into_iter()
            .chain(self.segments.iter().map(|s| s.t))
        {
            if !ts.contains(t) {
                return Err(Error::DomainMismatch(format!(
                    "time {t} is not in the time scale"
                )));
            }
        }
        Ok(())
    }

    /// Same input preceded by `u = 0` on `[new_t0, t0)`.
    pub fn zero_padded(&self, new_t0: T) -> Result<Self> {
        if !(new_t0 < self.t0) {
            return Err(Error::DomainMismatch("padding must start before t0".into()));
        }
        let mut segments = vec![ControlSegment {
            t: new_t0,
            u: vec![T::zero(); self.m()],
        }];
        segments.extend(self.segments.iter().cloned());
        Self::new(new_t0, self.t1, segments)
    }
}
