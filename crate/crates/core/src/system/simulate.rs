use serde::Serialize;

use super::{ControlSignal, LinearSystem};
use crate::error::{Error, Result};
use crate::matrix::expm_with_integral;
use crate::scalar::Real;
use crate::timescale::WindowPiece;

#[derive(Clone, Copy, Debug)]
pub struct SimulationOptions {
    /// Reporting samples per dense segment; does not affect the endpoint.
    pub dense_samples: usize,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        SimulationOptions { dense_samples: 32 }
    }
}

/// Sampled solution: every scattered point of the window, the dense-part
/// samples and the endpoint, in time order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory<T> {
    pub samples: Vec<(T, Vec<T>)>,
}

impl<T: Real> Trajectory<T> {
    pub fn final_time(&self) -> T {
        self.samples.last().expect("trajectory is never empty").0
    }

    pub fn final_state(&self) -> &[T] {
        &self.samples.last().expect("trajectory is never empty").1
    }

    /// `t,x1,…,xn` rows with a header line.
    pub fn to_csv(&self) -> String {
        let n = self.samples.first().map_or(0, |s| s.1.len());
        let mut out = String::from("t");
        for i in 1..=n {
            out.push_str(&format!(",x{i}"));
        }
        out.push('\n');
        for (t, x) in &self.samples {
            out.push_str(&format!("{t}"));
            for v in x {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn axpy<T: Real>(x: &mut [T], alpha: T, y: &[T]) {
    for (a, &b) in x.iter_mut().zip(y) {
        *a += alpha * b;
    }
}

fn check_finite<T: Real>(x: &[T], t: T) -> Result<()> {
    if x.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteState(t.to_f64_lossy()))
    }
}

impl<T: Real> LinearSystem<T> {
    /// Forward solution from `x(u.t0) = x0` up to `t_end`.
    ///
    /// Scattered points use the one-step law `x(σ) = x + μ(Ax + Bu)`; dense
    /// stretches with constant input use `x(c+Δ) = e^{AΔ}x(c) + ∫₀^Δ e^{As}ds·Bu`.
    pub fn simulate(
        &self,
        x0: &[T],
        u: &ControlSignal<T>,
        t_end: T,
        opts: &SimulationOptions,
    ) -> Result<Trajectory<T>> {
        let n = self.n();
        if x0.len() != n {
            return Err(Error::DomainMismatch(format!(
                "x0 has {} entries, system has n = {n}",
                x0.len()
            )));
        }
        u.validate(self.scale(), self.m())?;
        let t0 = self.scale().snap(u.t0())?;
        let t_end = self
            .scale()
            .snap(t_end)
            .map_err(|_| Error::DomainMismatch("t_end not in scale".into()))?;
        if t_end < t0 || t_end > self.scale().snap(u.t1())? {
            return Err(Error::DomainMismatch(format!(
                "t_end = {t_end} outside the control domain"
            )));
        }
        check_finite(x0, t0)?;
        let mut x = x0.to_vec();
        let mut samples = vec![(t0, x.clone())];
        if t_end == t0 {
            return Ok(Trajectory { samples });
        }
        for piece in self.scale().partition(t0, t_end)? {
            match piece {
                WindowPiece::Atom { t, sigma } => {
                    let mu = piece.mu();
                    let mut drift = self.a().mul_vec(&x);
                    let bu = self.b().mul_vec(u.value_at(t));
                    axpy(&mut drift, T::one(), &bu);
                    axpy(&mut x, mu, &drift);
                    check_finite(&x, sigma)?;
                    samples.push((sigma, x.clone()));
                }
                WindowPiece::Dense { start, end } => {
                    x = self.flow_dense(&x, u, start, end, opts.dense_samples, &mut samples)?;
                }
            }
        }
        Ok(Trajectory { samples })
    }

    /// Closed-form flow over `[start, end)`, split at control switches; the
    /// reporting samples branch off without feeding back into the state.
    fn flow_dense(
        &self,
        x: &[T],
        u: &ControlSignal<T>,
        start: T,
        end: T,
        dense_samples: usize,
        samples: &mut Vec<(T, Vec<T>)>,
    ) -> Result<Vec<T>> {
        let mut cuts: Vec<T> = std::iter::once(start)
            .chain(u.switches_within(start, end))
            .collect();
        cuts.push(end);
        let len = end - start;
        let mut report: Vec<T> = (1..dense_samples.max(1))
            .map(|j| start + len * T::lit(j as f64 / dense_samples as f64))
            .collect();
        report.reverse();

        let mut x = x.to_vec();
        for w in cuts.windows(2) {
            let (p, q) = (w[0], w[1]);
            let bu = self.b().mul_vec(u.value_at(p));
            while let Some(&s) = report.last() {
                if s >= q {
                    break;
                }
                report.pop();
                if s > p {
                    samples.push((s, self.affine_step(&x, &bu, s - p)?));
                }
            }
            x = self.affine_step(&x, &bu, q - p)?;
            check_finite(&x, q)?;
        }
        samples.push((end, x.clone()));
        Ok(x)
    }

    fn affine_step(&self, x: &[T], bu: &[T], h: T) -> Result<Vec<T>> {
        let (e, j) = expm_with_integral(self.a(), h)?;
        let mut out = e.mul_vec(x);
        axpy(&mut out, T::one(), &j.mul_vec(bu));
        Ok(out)
    }
}
