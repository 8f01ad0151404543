use std::collections::BTreeMap;

use super::criteria::kalman_matrix;
use super::gram::{GramSpec, WindowKernel};
use super::synth::synthesize_control;
use super::{
    Accessibility, Certificate, Decision, IndexDiagnostic, RankSource, ReachOptions, ReachReport,
    Witness,
};
use crate::error::{Error, Result};
use crate::matrix::{is_monomial, monomial_index, rank, Mat};
use crate::scalar::Real;
use crate::system::LinearSystem;
use crate::timescale::{DeltaSet, WindowPiece};

/// Chebyshev points of the first kind mapped into `(a, b)`.
fn chebyshev<T: Real>(a: T, b: T, count: usize) -> impl Iterator<Item = T> {
    let half = (b - a) / T::lit(2.0);
    (0..count).map(move |l| {
        let theta = T::PI() * T::lit((2 * l + 1) as f64) / T::lit((2 * count) as f64);
        a + half * (T::one() - theta.cos())
    })
}

/// State index `i` for which `e_A(t1,σ(τ))b_k` is `i`-monomial on all of
/// piece `j`, if any.
fn classify<T: Real>(
    kernel: &WindowKernel<'_, T>,
    j: usize,
    k: usize,
    opts: &ReachOptions<T>,
) -> Result<Option<usize>> {
    match kernel.pieces[j] {
        WindowPiece::Atom { t, .. } => Ok(monomial_index(&kernel.generator(j, t, k)?, opts.tol)),
        WindowPiece::Dense { start, end } => {
            let mut found = None;
            for tau in chebyshev(start, end, opts.probe_points.max(1)) {
                let i = monomial_index(&kernel.generator(j, tau, k)?, opts.tol);
                match (i, found) {
                    (None, _) => return Ok(None),
                    (Some(i), Some(f)) if i != f => return Ok(None),
                    (Some(i), _) => found = Some(i),
                }
            }
            Ok(found)
        }
    }
}

fn accessibility<T: Real>(kernel: &WindowKernel<'_, T>, tol: T) -> Result<Accessibility> {
    let sys = kernel.sys;
    let n = sys.n();
    if sys
        .scale()
        .window_has_at_least(kernel.t0, kernel.t1, n + 1)?
    {
        let r = rank(&kalman_matrix(sys), tol);
        return Ok(Accessibility {
            accessible: r == n,
            rank: r,
            via: RankSource::Kalman,
        });
    }
    // Too few points for the Kalman test: the window is purely scattered and
    // the reachable cone is generated by finitely many vectors.
    let blocks: Vec<Mat<T>> = kernel
        .pieces
        .iter()
        .zip(&kernel.tails)
        .map(|(p, tail)| (tail * sys.b()).scale(p.mu()))
        .collect();
    let r = rank(&Mat::hcat(&blocks)?, tol);
    Ok(Accessibility {
        accessible: r == n,
        rank: r,
        via: RankSource::Generators,
    })
}

/// Decides positive reachability of a positive system on `[t0, t1]`.
///
/// For every state index `i` the window pieces on which some
/// `e_A(t1,σ(τ))b_k` is `i`-monomial are collected; the system is positively
/// reachable iff every `i` has one. One witness per `i` is kept (scattered
/// before dense, then smallest `k`, then earliest), their union forms the
/// Gram specification, and the resulting `W` and one control per basis target
/// are verified before the report is returned.
pub fn decide_positive_reachability<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    t1: T,
    opts: &ReachOptions<T>,
) -> Result<ReachReport<T>> {
    sys.require_positive(opts.tol)?;
    let kernel = WindowKernel::new(sys, t0, t1)?;
    let n = sys.n();
    let access = accessibility(&kernel, opts.tol)?;

    let mut diagnostics: Vec<IndexDiagnostic<T>> = (0..n)
        .map(|i| IndexDiagnostic {
            i: i + 1,
            witnesses: Vec::new(),
            chosen: None,
        })
        .collect();
    for (j, piece) in kernel.pieces.iter().enumerate() {
        for k in 0..sys.m() {
            if let Some(i) = classify(&kernel, j, k, opts)? {
                let scattered = matches!(piece, WindowPiece::Atom { .. });
                diagnostics[i].witnesses.push(Witness {
                    k: k + 1,
                    start: piece.start(),
                    end: piece.end(),
                    scattered,
                });
            }
        }
    }
    for d in &mut diagnostics {
        d.chosen = d
            .witnesses
            .iter()
            .min_by(|x, y| {
                (!x.scattered, x.k)
                    .cmp(&(!y.scattered, y.k))
                    .then(x.start.partial_cmp(&y.start).expect("finite times"))
            })
            .copied();
    }

    let reachable = diagnostics.iter().all(|d| d.chosen.is_some());
    let mut report = ReachReport {
        t0: kernel.t0,
        t1: kernel.t1,
        decision: if reachable {
            Decision::PositivelyReachable
        } else if access.accessible {
            Decision::AccessibleOnly
        } else {
            Decision::Inaccessible
        },
        reachable,
        accessibility: access,
        certificate: None,
        diagnostics,
    };
    if reachable {
        if !access.accessible {
            return Err(Error::CertificateCheckFailed(format!(
                "witnesses found but accessibility rank is {} < {n}",
                access.rank
            )));
        }
        report.certificate = Some(certify(&kernel, &report.diagnostics, opts)?);
    }
    Ok(report)
}

fn certify<T: Real>(
    kernel: &WindowKernel<'_, T>,
    diagnostics: &[IndexDiagnostic<T>],
    opts: &ReachOptions<T>,
) -> Result<Certificate<T>> {
    let sys = kernel.sys;
    let mut pieces: BTreeMap<usize, Vec<(T, T)>> = BTreeMap::new();
    for w in diagnostics.iter().filter_map(|d| d.chosen) {
        pieces.entry(w.k).or_default().push((w.start, w.end));
    }
    let mut sets = BTreeMap::new();
    for (k, p) in pieces {
        sets.insert(k, DeltaSet::new(sys.scale(), p)?);
    }
    let spec = GramSpec::new(kernel.t0, kernel.t1, sets);
    let w = kernel.gram(&spec, opts)?;
    if !is_monomial(&w, opts.tol)? {
        return Err(Error::CertificateCheckFailed(format!(
            "Gram matrix of the witness sets is not monomial: {w:?}"
        )));
    }
    let n = sys.n();
    let mut controls = Vec::with_capacity(n);
    for i in 0..n {
        let mut target = vec![T::zero(); n];
        target[i] = T::one();
        let sc = synthesize_control(sys, &spec, &w, &target, opts)?;
        if !sc.control.is_nonnegative() || !(sc.residual <= opts.residual_tol) {
            return Err(Error::CertificateCheckFailed(format!(
                "control for e_{} misses its target by {}",
                i + 1,
                sc.residual
            )));
        }
        controls.push(sc);
    }
    Ok(Certificate { spec, w, controls })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timescale::TimeScale;

    fn sys(ts: TimeScale<f64>, a: &[[f64; 2]], b: &[&[f64]]) -> LinearSystem<f64> {
        LinearSystem::new(ts, Mat::from_rows(a).unwrap(), Mat::from_rows(b).unwrap()).unwrap()
    }

    #[test]
    fn chebyshev_points_are_interior() {
        let pts: Vec<f64> = chebyshev(1.0, 2.0, 9).collect();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts[0] > 1.0 && pts[8] < 2.0);
        assert!((pts[4] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn eq22_is_reachable_with_identity_gram() {
        let s = sys(
            TimeScale::integers(0, 2).unwrap(),
            &[[-1.0, 1.0], [1.0, 0.0]],
            &[&[1.0, 1.0], &[0.0, 1.0]],
        );
        let r = decide_positive_reachability(&s, 0.0, 2.0, &ReachOptions::default()).unwrap();
        assert_eq!(r.decision, Decision::PositivelyReachable);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.spec.m_set(), vec![1]);
        assert_eq!(cert.spec.set(1).unwrap().pieces(), &[(0.0, 2.0)]);
        assert_eq!(cert.w, Mat::identity(2));
    }

    #[test]
    fn r24_is_reachable_through_the_atoms() {
        let ts = TimeScale::custom(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)]).unwrap();
        let s = sys(ts, &[[-1.0, 0.0], [1.0, -1.0]], &[&[1.0], &[0.0]]);
        let r = decide_positive_reachability(&s, 0.0, 3.0, &ReachOptions::default()).unwrap();
        assert!(r.reachable);
        // the dense stretch also serves index 2 but atoms win the tie-break
        assert_eq!(r.diagnostics[1].witnesses.len(), 2);
        let cert = r.certificate.unwrap();
        assert_eq!(
            cert.spec.set(1).unwrap().pieces(),
            &[(0.0, 1.0), (2.0, 3.0)]
        );
        assert!(cert.w.dist_inf(&Mat::diag(&[1.0, (-2.0f64).exp()])) < 1e-15);
        let e1 = &cert.controls[0];
        assert_eq!(e1.control.value_at(0.0), &[0.0]);
        assert_eq!(e1.control.value_at(2.0), &[1.0]);
    }

    #[test]
    fn short_nonhomogeneous_window_is_accessible_only() {
        let ts = TimeScale::points(&[0.0, 1.0, 2.0, 4.0]).unwrap();
        let s = sys(ts, &[[-0.5, 0.0], [1.0, -0.5]], &[&[1.0], &[0.0]]);
        let opts = ReachOptions::default();
        let r = decide_positive_reachability(&s, 0.0, 2.0, &opts).unwrap();
        assert_eq!(r.decision, Decision::AccessibleOnly);
        assert!(r.certificate.is_none());
        assert!(
            decide_positive_reachability(&s, 0.0, 4.0, &opts)
                .unwrap()
                .reachable
        );
    }

    #[test]
    fn zero_input_is_inaccessible() {
        let s = sys(
            TimeScale::integers(0, 3).unwrap(),
            &[[-0.5, 0.0], [0.0, -0.5]],
            &[&[0.0], &[0.0]],
        );
        let r = decide_positive_reachability(&s, 0.0, 3.0, &ReachOptions::default()).unwrap();
        assert_eq!(r.decision, Decision::Inaccessible);
    }

    #[test]
    fn non_positive_systems_are_refused() {
        let s = sys(
            TimeScale::integers(0, 3).unwrap(),
            &[[-2.0, 0.0], [0.0, -0.5]],
            &[&[1.0], &[0.0]],
        );
        let r = decide_positive_reachability(&s, 0.0, 3.0, &ReachOptions::default());
        assert!(matches!(r, Err(Error::NotPositiveSystem(_))));
    }
}
