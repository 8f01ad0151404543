use super::gram::{Contribution, GramSpec, WindowKernel};
use super::{ReachOptions, SynthesizedControl};
use crate::error::{Error, Result};
use crate::matrix::{expm, expm_integral, is_monomial, Mat};
use crate::quadrature::adaptive_gauss_legendre;
use crate::scalar::Real;
use crate::system::{ControlSegment, ControlSignal, LinearSystem, SimulationOptions};

fn dot<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).map(|(&a, &b)| a * b).sum()
}

/// Input `value` on column `k` (0-based) over `[start, end)`.
struct Pulse<T> {
    start: T,
    end: T,
    k: usize,
    value: T,
}

/// `u_k(τ) = b_kᵀ e_A(t1,σ(τ))ᵀ W⁻¹ x̄` on `S_k`, zero elsewhere, simulated
/// from `x(t0) = 0`.
///
/// Dense stretches are cut into `opts.control_substeps` constant steps; each
/// step value is the least-squares fit of its closed-form response to the
/// contribution of the exact control on that step.
pub fn synthesize_control<T: Real>(
    sys: &LinearSystem<T>,
    spec: &GramSpec<T>,
    w: &Mat<T>,
    target: &[T],
    opts: &ReachOptions<T>,
) -> Result<SynthesizedControl<T>> {
    let n = sys.n();
    if target.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "target has {} entries, system has n = {n}",
            target.len()
        )));
    }
    if w.rows() != n || !is_monomial(w, opts.tol)? {
        return Err(Error::NotMonomialGram);
    }
    if target.iter().any(|&v| v < T::zero()) {
        return Err(Error::NegativeTarget);
    }
    let y = w.inverse()?.mul_vec(target);
    let kernel = WindowKernel::new(sys, spec.t0, spec.t1)?;
    let mut pulses = Vec::new();
    for (&k1, set) in spec.sets() {
        let k = k1 - 1;
        if k >= sys.m() {
            return Err(Error::SpecOutsideWindow(format!(
                "column {k1} is not in 1..={}",
                sys.m()
            )));
        }
        for c in kernel.contributions(set) {
            match c {
                Contribution::Atom { j, t, sigma } => {
                    let value = dot(&kernel.generator(j, t, k)?, &y);
                    pulses.push(Pulse {
                        start: t,
                        end: sigma,
                        k,
                        value,
                    });
                }
                Contribution::Dense { j, p, q } => {
                    dense_pulses(&kernel, j, p, q, k, &y, opts, &mut pulses)?
                }
            }
        }
    }
    let control = assemble(sys.m(), kernel.t0, kernel.t1, &pulses)?;
    let traj = sys.simulate(
        &vec![T::zero(); n],
        &control,
        kernel.t1,
        &SimulationOptions { dense_samples: 1 },
    )?;
    let endpoint = traj.final_state().to_vec();
    let residual = endpoint
        .iter()
        .zip(target)
        .map(|(&a, &b)| (a - b).abs())
        .fold(T::zero(), T::max);
    Ok(SynthesizedControl {
        target: target.to_vec(),
        control,
        endpoint,
        residual,
    })
}

#[allow(clippy::too_many_arguments)]
fn dense_pulses<T: Real>(
    kernel: &WindowKernel<'_, T>,
    j: usize,
    p: T,
    q: T,
    k: usize,
    y: &[T],
    opts: &ReachOptions<T>,
    out: &mut Vec<Pulse<T>>,
) -> Result<()> {
    let steps = opts.control_substeps.max(1);
    let a = kernel.sys.a();
    let b = kernel.sys.b_column(k);
    let end = kernel.pieces[j].end();
    let width = (q - p) / T::lit(steps as f64);
    for s in 0..steps {
        let lo = p + width * T::lit(s as f64);
        let hi = if s + 1 == steps {
            q
        } else {
            p + width * T::lit((s + 1) as f64)
        };
        let ideal = adaptive_gauss_legendre(lo, hi, opts.quad_tol, |tau| {
            let v = kernel.generator(j, tau, k)?;
            Ok(Mat::column_vector(&v).scale(dot(&v, y)))
        })?;
        let response = &kernel.tails[j] * &(&expm(a, end - hi)? * &expm_integral(a, hi - lo)?);
        let v = response.mul_vec(&b);
        let vv = dot(&v, &v);
        let value = if vv > T::zero() {
            dot(&v, ideal.as_slice()) / vv
        } else {
            T::zero()
        };
        out.push(Pulse {
            start: lo,
            end: hi,
            k,
            value,
        });
    }
    Ok(())
}

/// Sums overlapping pulses into a right-continuous piecewise-constant input,
/// merging equal neighbouring values.
fn assemble<T: Real>(m: usize, t0: T, t1: T, pulses: &[Pulse<T>]) -> Result<ControlSignal<T>> {
    let mut cuts: Vec<T> = vec![t0];
    cuts.extend(
        pulses
            .iter()
            .flat_map(|p| [p.start, p.end])
            .filter(|&t| t < t1),
    );
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite times"));
    cuts.dedup_by(|x, y| (*x - *y).abs() <= T::snap_tol(*y));

    let mut segments: Vec<ControlSegment<T>> = Vec::with_capacity(cuts.len());
    for &t in &cuts {
        let mut u = vec![T::zero(); m];
        for p in pulses {
            let tol = T::snap_tol(t);
            if p.start <= t + tol && t + tol < p.end {
                u[p.k] += p.value;
            }
        }
        if segments.last().is_none_or(|s| s.u != u) {
            segments.push(ControlSegment { t, u });
        }
    }
    ControlSignal::new(t0, t1, segments)
}
