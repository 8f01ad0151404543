//! The control system `x^Δ = Ax + Bu` on a time scale: positivity tests and
//! forward simulation.

mod control;
mod sampling;
mod simulate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ExtMat, Extended, Mat};
use crate::scalar::Real;
use crate::timescale::TimeScale;

pub use control::{ControlSegment, ControlSignal};
pub use sampling::{random_control, ExpWitness, RandomControlOptions, WitnessSampling};
pub use simulate::{SimulationOptions, Trajectory};

/// `x^Δ(t) = A x(t) + B u(t)` with `A: n x n`, `B: n x m` on `scale`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemDescriptor<T>", into = "SystemDescriptor<T>")]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct LinearSystem<T: Real> {
    scale: TimeScale<T>,
    a: Mat<T>,
    b: Mat<T>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
struct SystemDescriptor<T: Real> {
    timescale: TimeScale<T>,
    #[serde(rename = "A")]
    a: Mat<T>,
    #[serde(rename = "B")]
    b: Mat<T>,
}

impl<T: Real> TryFrom<SystemDescriptor<T>> for LinearSystem<T> {
    type Error = Error;

    fn try_from(d: SystemDescriptor<T>) -> Result<Self> {
        LinearSystem::new(d.timescale, d.a, d.b)
    }
}

impl<T: Real> From<LinearSystem<T>> for SystemDescriptor<T> {
    fn from(s: LinearSystem<T>) -> Self {
        SystemDescriptor {
            timescale: s.scale,
            a: s.a,
            b: s.b,
        }
    }
}

/// Outcome of the algebraic positivity test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct PositivityReport<T: Real> {
    pub positive: bool,
    pub a_t: ExtMat<T>,
    pub violation: Option<Violation<T>>,
}

/// First negative entry found by [`LinearSystem::is_positive`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Violation<T> {
    /// `"A_T"` or `"B"`.
    pub matrix: &'static str,
    pub row: usize,
    pub col: usize,
    pub value: T,
}

impl<T: Real> LinearSystem<T> {
    pub fn new(scale: TimeScale<T>, a: Mat<T>, b: Mat<T>) -> Result<Self> {
        let n = a.require_square()?;
        if b.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "B has {} rows, A is {n}x{n}",
                b.rows()
            )));
        }
        if b.cols() == 0 {
            return Err(Error::DimensionMismatch("B has no columns".into()));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::DimensionMismatch(
                "system matrices must be finite".into(),
            ));
        }
        if !scale.has_at_least(n + 1) {
            return Err(Error::WindowTooSmall { needed: n + 1 });
        }
        Ok(LinearSystem { scale, a, b })
    }

    pub fn scale(&self) -> &TimeScale<T> {
        &self.scale
    }

    pub fn a(&self) -> &Mat<T> {
        &self.a
    }

    pub fn b(&self) -> &Mat<T> {
        &self.b
    }

    /// State dimension.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Input dimension.
    pub fn m(&self) -> usize {
        self.b.cols()
    }

    /// Column `b_k` of `B` (0-based).
    pub fn b_column(&self, k: usize) -> Vec<T> {
        self.b.column(k)
    }

    /// Same system on another scale.
    pub fn with_scale(&self, scale: TimeScale<T>) -> Result<Self> {
        LinearSystem::new(scale, self.a.clone(), self.b.clone())
    }

    /// `A_T = A + I/μ̄`.
    pub fn positivity_matrix(&self) -> ExtMat<T> {
        let shift = Extended::divide(T::one(), self.scale.max_graininess());
        ExtMat::scalar_diagonal(self.n(), shift).add_mat(&self.a)
    }

    /// Decides positivity from `A_T ≥ 0` and `B ≥ 0`.
    pub fn is_positive(&self, tol: T) -> PositivityReport<T> {
        let a_t = self.positivity_matrix();
        let a_floor = tol * self.a.max_abs().max(T::one());
        let b_floor = tol * self.b.max_abs().max(T::one());
        let violation = a_t
            .first_negative(a_floor)
            .map(|(row, col, value)| Violation {
                matrix: "A_T",
                row,
                col,
                value,
            })
            .or_else(|| {
                self.b
                    .as_slice()
                    .iter()
                    .position(|&v| v < -b_floor)
                    .map(|idx| Violation {
                        matrix: "B",
                        row: idx / self.m(),
                        col: idx % self.m(),
                        value: self.b.as_slice()[idx],
                    })
            });
        PositivityReport {
            positive: violation.is_none(),
            a_t,
            violation,
        }
    }

    pub(crate) fn require_positive(&self, tol: T) -> Result<()> {
        let report = self.is_positive(tol);
        match report.violation {
            None => Ok(()),
            Some(v) => Err(Error::NotPositiveSystem(format!(
                "{}[{},{}] = {}",
                v.matrix,
                v.row + 1,
                v.col + 1,
                v.value
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m<const C: usize>(rows: &[[f64; C]]) -> Mat<f64> {
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn positivity_matrix_by_scale() {
        let a = m(&[[-1.0, 2.0], [0.5, -3.0]]);
        let b = m(&[[1.0], [0.0]]);
        let real = LinearSystem::new(
            TimeScale::real_line(0.0, 1.0).unwrap(),
            a.clone(),
            b.clone(),
        )
        .unwrap();
        let at = real.positivity_matrix();
        assert!(at.get(0, 0).is_infinite() && at.get(1, 1).is_infinite());
        assert_eq!(at.get(0, 1), Extended::Finite(2.0));

        let z = real.with_scale(TimeScale::integers(0, 5).unwrap()).unwrap();
        let at = z.positivity_matrix();
        assert_eq!(at.get(0, 0), Extended::Finite(0.0));
        assert_eq!(at.get(1, 1), Extended::Finite(-2.0));
        assert_eq!(at.get(1, 0), Extended::Finite(0.5));

        let q = real
            .with_scale(TimeScale::q_grid(2.0, 1.0, 5).unwrap())
            .unwrap();
        assert_eq!(q.positivity_matrix(), ExtMat::from_mat(&a));
    }

    #[test]
    fn positivity_decisions() {
        let metzler = LinearSystem::new(
            TimeScale::real_line(0.0, 1.0).unwrap(),
            m(&[[-5.0, 2.0], [0.0, -1.0]]),
            m(&[[1.0], [2.0]]),
        )
        .unwrap();
        assert!(metzler.is_positive(1e-9).positive);

        let eq22 = LinearSystem::new(
            TimeScale::integers(0, 2).unwrap(),
            m(&[[-1.0, 1.0], [1.0, 0.0]]),
            m(&[[1.0, 1.0], [0.0, 1.0]]),
        )
        .unwrap();
        assert!(eq22.is_positive(1e-9).positive);

        let bad = LinearSystem::new(
            TimeScale::integers(0, 2).unwrap(),
            m(&[[-2.0, 0.0], [0.0, 0.0]]),
            m(&[[1.0], [1.0]]),
        )
        .unwrap();
        let report = bad.is_positive(1e-9);
        assert!(!report.positive);
        assert_eq!(report.violation.unwrap().matrix, "A_T");
        assert_eq!(report.violation.unwrap().value, -1.0);

        let neg_b = eq22.clone();
        let neg_b = LinearSystem::new(
            neg_b.scale.clone(),
            neg_b.a.clone(),
            m(&[[1.0, -1.0], [0.0, 1.0]]),
        )
        .unwrap();
        assert_eq!(neg_b.is_positive(1e-9).violation.unwrap().matrix, "B");
    }

    #[test]
    fn construction_checks() {
        let ts = TimeScale::integers(0, 1).unwrap();
        assert!(matches!(
            LinearSystem::new(ts.clone(), Mat::<f64>::identity(2), Mat::zeros(2, 1)),
            Err(Error::WindowTooSmall { needed: 3 })
        ));
        assert!(LinearSystem::new(ts.clone(), Mat::<f64>::identity(1), Mat::zeros(2, 1)).is_err());
        assert!(LinearSystem::new(ts, Mat::<f64>::zeros(1, 2), Mat::zeros(1, 1)).is_err());
    }

    #[test]
    fn system_json() {
        let json = r#"{"timescale":{"tag":"h_grid","h":1.0,"components":[[0.0,0.0],[1.0,1.0],[2.0,2.0]]},"A":[[-1.0,1.0],[1.0,0.0]],"B":[[1.0,1.0],[0.0,1.0]]}"#;
        let sys: LinearSystem<f64> = serde_json::from_str(json).unwrap();
        assert_eq!(sys.n(), 2);
        assert_eq!(sys.m(), 2);
        assert_eq!(serde_json::to_string(&sys).unwrap(), json);
    }
}
