//! Acceptance criteria 1-10. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use chronos_core::reach::{
    check_pr_discrete_homogeneous, check_pr_discrete_nonhomogeneous, check_pr_real_line,
    decide_positive_reachability, gram, gram_columns, gram_full, homogeneous_reachability_matrix,
    nonhomogeneous_reachability_matrix, ReachOptions,
};
use chronos_core::system::{
    random_control, RandomControlOptions, SimulationOptions, WitnessSampling,
};
use chronos_core::tsexp::ts_exp;
use chronos_core::{DeltaSet, GramSpec, LinearSystem, Mat, ReachReport, TimeScale};
use common::*;
use rand::Rng;

type Outcome = (bool, String);
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn eq22() -> LinearSystem<f64> {
    system(
        TimeScale::integers(0, 2).unwrap(),
        &vec![vec![-1.0, 1.0], vec![1.0, 0.0]],
        &vec![vec![1.0, 1.0], vec![0.0, 1.0]],
    )
}

fn r24() -> LinearSystem<f64> {
    system(
        TimeScale::custom(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)]).unwrap(),
        &vec![vec![-1.0, 0.0], vec![1.0, -1.0]],
        &vec![vec![1.0], vec![0.0]],
    )
}

fn nonhom() -> LinearSystem<f64> {
    system(
        TimeScale::points(&[0.0, 1.0, 2.0, 4.0]).unwrap(),
        &vec![vec![-0.5, 0.0], vec![1.0, -0.5]],
        &vec![vec![1.0], vec![0.0]],
    )
}

fn max_diff(x: &Dense, y: &Dense) -> f64 {
    x.iter()
        .flatten()
        .zip(y.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// `Σ μ(τ) v vᵀ` over the scattered window `pts`, with `v = e_A(t1,σ(τ))b_k`
/// from exact integer products.
fn integer_gram(
    a: &[[i64; 2]; 2],
    b: &[[i64; 2]; 2],
    cols: &[usize],
    pts: &[i64],
) -> [[i64; 2]; 2] {
    let mut w = [[0i64; 2]; 2];
    let t1 = *pts.last().unwrap();
    for win in pts.windows(2) {
        let (tau, sigma) = (win[0], win[1]);
        let mu = sigma - tau;
        for &k in cols {
            let mut v = [b[0][k], b[1][k]];
            let mut t = sigma;
            while t < t1 {
                let next = pts[pts.iter().position(|&p| p == t).unwrap() + 1];
                let h = next - t;
                v = [
                    v[0] + h * (a[0][0] * v[0] + a[0][1] * v[1]),
                    v[1] + h * (a[1][0] * v[0] + a[1][1] * v[1]),
                ];
                t = next;
            }
            for i in 0..2 {
                for j in 0..2 {
                    w[i][j] += mu * v[i] * v[j];
                }
            }
        }
    }
    w
}

fn to_dense(w: [[i64; 2]; 2]) -> Dense {
    w.iter()
        .map(|r| r.iter().map(|&v| v as f64).collect())
        .collect()
}

fn c1() -> Outcome {
    let sys = eq22();
    let opts = ReachOptions::default();
    let (a, b) = ([[-1, 1], [1, 0]], [[1, 1], [0, 1]]);
    let w_m = gram_columns(&sys, 0.0, 2.0, &[1], &opts).unwrap();
    let w_full = gram_full(&sys, 0.0, 2.0, &opts).unwrap();
    let oracle_m = to_dense(integer_gram(&a, &b, &[0], &[0, 1, 2]));
    let oracle_full = to_dense(integer_gram(&a, &b, &[0, 1], &[0, 1, 2]));
    let d_m = max_diff(&dense(&w_m), &oracle_m).max(max_diff(&dense(&w_m), &eye(2)));
    let d_full = max_diff(&dense(&w_full), &oracle_full).max(max_diff(
        &dense(&w_full),
        &vec![vec![3.0, 3.0], vec![3.0, 6.0]],
    ));
    let report = decide_positive_reachability(&sys, 0.0, 2.0, &opts).unwrap();
    let ok = d_m <= 1e-12 && d_full <= 1e-12 && report.reachable;
    (
        ok,
        format!(
            "|W(M={{1}}) - I| = {d_m:.1e}, |W - [[3,3],[3,6]]| = {d_full:.1e}, decision {:?}",
            report.decision
        ),
    )
}

/// Composite Simpson rule with `panels` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for i in 1..panels {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn c2() -> Outcome {
    let sys = r24();
    let opts = ReachOptions::default();
    let e2 = (-2.0f64).exp();
    let s1 = DeltaSet::new(sys.scale(), vec![(0.0, 1.0), (2.0, 3.0)]).unwrap();
    let spec = GramSpec::new(0.0, 3.0, BTreeMap::from([(1, s1)]));
    let w_s = gram(&sys, &spec, &opts).unwrap();
    let d_s = max_diff(&dense(&w_s), &vec![vec![1.0, 0.0], vec![0.0, e2]]);

    let off_expected = simpson(
        |tau: f64| (3.0 - tau) * (-2.0 * (3.0 - tau)).exp(),
        1.0,
        2.0,
        200_000,
    );
    let w_full = gram_columns(&sys, 0.0, 3.0, &[1], &opts).unwrap();
    let off = [w_full[(0, 1)], w_full[(1, 0)]];
    let d_off = off
        .iter()
        .map(|v| (v - off_expected).abs())
        .fold(0.0, f64::max);
    let monomial = chronos_core::matrix::is_monomial(&w_full, opts.tol).unwrap();
    let report = decide_positive_reachability(&sys, 0.0, 3.0, &opts).unwrap();

    let clauses = [d_s <= 1e-9, d_off <= 1e-8, !monomial, report.reachable];
    let ok = clauses.iter().all(|&c| c);
    (
        ok,
        format!(
            "|W(M,S) - diag(1,e^-2)| = {d_s:.1e} [{}]; full W(M={{1}}) off-diagonal {:.6e} vs integral {off_expected:.6e} [{}]; \
             full W(M={{1}}) = {:?} monomial {monomial} [{}]; decision {:?} [{}]",
            verdict(clauses[0]),
            off[0],
            verdict(clauses[1]),
            dense(&w_full),
            verdict(clauses[2]),
            report.decision,
            verdict(clauses[3]),
        ),
    )
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn c3() -> Outcome {
    let sys = nonhom();
    let tol = 1e-9;
    let three = check_pr_discrete_nonhomogeneous(&sys, 0.0, 3, tol).unwrap();
    let two = check_pr_discrete_nonhomogeneous(&sys, 0.0, 2, tol).unwrap();
    let m2 = nonhomogeneous_reachability_matrix(&sys, 0.0, 2).unwrap();
    let m3 = nonhomogeneous_reachability_matrix(&sys, 0.0, 3).unwrap();
    let second = m2.column(1);
    let a = vec![vec![-0.5, 0.0], vec![1.0, -0.5]];
    let third_oracle = mul_vec(&mul(&step(&a, 2.0), &step(&a, 1.0)), &[1.0, 0.0]);
    let third = m3.column(2);
    let third_ok = third == third_oracle && oracle_monomial(&third, tol) == Some(1);
    let decide3 = decide_positive_reachability(&sys, 0.0, 4.0, &ReachOptions::default())
        .unwrap()
        .reachable;
    let decide2 = decide_positive_reachability(&sys, 0.0, 2.0, &ReachOptions::default())
        .unwrap()
        .reachable;
    let ok = three && !two && second == vec![0.5, 1.0] && third_ok && decide3 && !decide2;
    (
        ok,
        format!(
            "k=3 {three}, k=2 {two}, second column {second:?}, third column {third:?} (direct product {third_oracle:?}), \
             decision on [0,4] {decide3}, on [0,2] {decide2}"
        ),
    )
}

fn random_generator_for_positivity<R: Rng>(rng: &mut R, n: usize, mu_bar: f64) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        let lo = if mu_bar == 0.0 {
                            -2.0
                        } else if mu_bar.is_infinite() {
                            -1.0
                        } else {
                            -1.5 / mu_bar
                        };
                        rng.gen_range(lo..0.5)
                    } else if rng.gen_bool(0.85) {
                        rng.gen_range(0.0..1.0)
                    } else {
                        -rng.gen_range(0.05..1.0)
                    }
                })
                .collect()
        })
        .collect()
}

/// Largest `n ≤ 4` the scale can carry (`n + 1` points).
fn max_dim(ts: &TimeScale<f64>) -> usize {
    ts.cardinality().map_or(4, |c| (c - 1).min(4))
}

fn c4() -> Outcome {
    let mut rng = rng(4);
    let scales = [
        TimeScale::real_line(0.0, 1.0).unwrap(),
        TimeScale::integers(0, 6).unwrap(),
        TimeScale::points(&[0.0, 1.0, 2.0, 4.0]).unwrap(),
        TimeScale::q_grid(2.0, 1.0, 5).unwrap(),
    ];
    let (mut agree, mut positives, mut disagreements) = (0, 0, Vec::new());
    for case in 0..200 {
        let ts = scales[case % 4].clone();
        let n = rng.gen_range(1..=max_dim(&ts));
        let mu_bar = match ts.max_graininess() {
            chronos_core::Extended::Finite(v) => v,
            chronos_core::Extended::Infinite => f64::INFINITY,
        };
        let a = random_generator_for_positivity(&mut rng, n, mu_bar);
        let b = random_matrix(&mut rng, n, 1, 0.0, 1.0);
        let sys = system(ts, &a, &b);
        let algebraic = sys.is_positive(1e-9).positive;
        let sampling = WitnessSampling {
            seed: case as u64,
            ..WitnessSampling::default()
        };
        let sampled = sys.positivity_witness(&sampling).unwrap().is_none();
        positives += algebraic as usize;
        if algebraic == sampled {
            agree += 1;
        } else {
            disagreements.push(case);
        }
    }
    (
        agree == 200,
        format!("{agree}/200 agree ({positives} positive), disagreements at {disagreements:?}"),
    )
}

fn c5() -> Outcome {
    let mut rng = rng(5);
    let zoo = scale_zoo();
    let mut worst = 0.0f64;
    for case in 0..100 {
        let ts = &zoo[case % zoo.len()].1;
        let n = rng.gen_range(1..=4);
        let a = Mat::from_rows(&random_matrix(&mut rng, n, n, -1.0, 1.0)).unwrap();
        let mut p = [
            random_member(&mut rng, ts),
            random_member(&mut rng, ts),
            random_member(&mut rng, ts),
        ];
        p.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let [r, s, t] = p;
        let ets = ts_exp(&a, ts, t, s).unwrap();
        let esr = ts_exp(&a, ts, s, r).unwrap();
        let etr = ts_exp(&a, ts, t, r).unwrap();
        let err = (&ets * &esr).dist_inf(&etr) / etr.norm_inf().max(1.0);
        worst = worst.max(err);
    }
    (
        worst <= 1e-9,
        format!("worst relative defect {worst:.2e} over 100 triples"),
    )
}

/// Random purely scattered scale with 3..=7 points and gaps from {0.5, 1, 2}.
fn random_scattered<R: Rng>(rng: &mut R) -> TimeScale<f64> {
    let count = rng.gen_range(3..=7);
    let mut t = 0.0;
    let mut pts = vec![t];
    for _ in 1..count {
        t += [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        pts.push(t);
    }
    TimeScale::points(&pts).unwrap()
}

fn positive_discrete_instance<R: Rng>(rng: &mut R) -> LinearSystem<f64> {
    loop {
        let ts = random_scattered(rng);
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let (a, b) = sparse_positive(rng, n, m, ts.components_max_gap());
        if ts.cardinality().unwrap() < n + 1 {
            continue;
        }
        let sys = system(ts, &a, &b);
        if sys.is_positive(1e-9).positive {
            return sys;
        }
    }
}

/// Checks a reachability certificate against an independent discrete run
/// where the window is purely scattered, and against the library simulator
/// otherwise.
fn check_certificate(sys: &LinearSystem<f64>, report: &ReachReport<f64>) -> Result<f64, String> {
    let cert = report
        .certificate
        .as_ref()
        .ok_or("positive decision without certificate")?;
    let scattered = sys
        .scale()
        .continuous_segments(report.t0, report.t1)
        .unwrap()
        .is_empty();
    let mut worst = 0.0f64;
    for (i, sc) in cert.controls.iter().enumerate() {
        if !sc.control.is_nonnegative() {
            return Err(format!("control for e_{} has a negative value", i + 1));
        }
        let endpoint = if scattered {
            let pts: Vec<f64> = points_of(sys.scale())
                .into_iter()
                .filter(|&p| p >= report.t0 && p <= report.t1)
                .collect();
            let inputs: Vec<Vec<f64>> = pts
                .iter()
                .map(|&p| sc.control.value_at(p).to_vec())
                .collect();
            oracle_discrete_run(
                &dense(sys.a()),
                &dense(sys.b()),
                &pts,
                &vec![0.0; sys.n()],
                &inputs,
            )
        } else {
            sys.simulate(
                &vec![0.0; sys.n()],
                &sc.control,
                report.t1,
                &SimulationOptions::default(),
            )
            .unwrap()
            .final_state()
            .to_vec()
        };
        let err = endpoint
            .iter()
            .enumerate()
            .map(|(j, v)| (v - if j == i { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        worst = worst.max(err);
    }
    Ok(worst)
}

fn c6() -> Outcome {
    let opts = ReachOptions::default();
    let mut worst = 0.0f64;
    let mut checked = 0;
    let named = [(eq22(), 0.0, 2.0), (r24(), 0.0, 3.0), (nonhom(), 0.0, 4.0)];
    for (sys, t0, t1) in &named {
        let report = decide_positive_reachability(sys, *t0, *t1, &opts).unwrap();
        match check_certificate(sys, &report) {
            Ok(e) => worst = worst.max(e),
            Err(msg) => return (false, msg),
        }
        checked += 1;
    }
    let mut rng = rng(6);
    let mut random = 0;
    let mut attempts = 0;
    while random < 50 && attempts < 5000 {
        attempts += 1;
        let sys = positive_discrete_instance(&mut rng);
        let (t0, t1) = (sys.scale().inf(), sys.scale().sup());
        let report = match decide_positive_reachability(&sys, t0, t1, &opts) {
            Ok(r) => r,
            Err(e) => return (false, format!("decision failed: {e}")),
        };
        if !report.reachable {
            continue;
        }
        match check_certificate(&sys, &report) {
            Ok(e) => worst = worst.max(e),
            Err(msg) => return (false, msg),
        }
        random += 1;
    }
    let ok = random == 50 && worst <= 1e-6;
    (ok, format!("{checked} worked systems + {random} random instances, worst |x(t1) - e_i| = {worst:.2e}"))
}

/// Every index `i` has an `i`-monomial generator `μ(τ)e_A(t1,σ(τ))b_k`.
fn cone_oracle(sys: &LinearSystem<f64>) -> bool {
    let comps = sys.scale().components().to_vec();
    let pts = points_of(sys.scale());
    let t1 = *pts.last().unwrap();
    let a = dense(sys.a());
    let b = dense(sys.b());
    let mut covered = vec![false; sys.n()];
    for w in pts.windows(2) {
        let (tau, sigma) = (w[0], w[1]);
        let e = oracle_exp(&a, &comps, t1, sigma);
        for k in 0..sys.m() {
            let col: Vec<f64> = b.iter().map(|r| r[k]).collect();
            let v: Vec<f64> = mul_vec(&e, &col)
                .into_iter()
                .map(|x| x * (sigma - tau))
                .collect();
            if let Some(i) = oracle_monomial(&v, 1e-9) {
                covered[i] = true;
            }
        }
    }
    covered.into_iter().all(|c| c)
}

fn c7() -> Outcome {
    let mut rng = rng(7);
    let opts = ReachOptions::default();
    let (mut agree, mut reachable, mut bad) = (0, 0, Vec::new());
    for case in 0..200 {
        let sys = positive_discrete_instance(&mut rng);
        let (t0, t1) = (sys.scale().inf(), sys.scale().sup());
        let decided = decide_positive_reachability(&sys, t0, t1, &opts).map(|r| r.reachable);
        let oracle = cone_oracle(&sys);
        if decided == Ok(oracle) {
            agree += 1;
            reachable += oracle as usize;
        } else {
            bad.push(case);
        }
    }
    (
        agree == 200,
        format!("{agree}/200 agree ({reachable} reachable), disagreements at {bad:?}"),
    )
}

fn c8() -> Outcome {
    let mut rng = rng(8);
    let opts = ReachOptions::default();
    let ts = TimeScale::real_line(0.0, 1.0).unwrap();
    let (mut agree, mut bad) = (0, Vec::new());
    for case in 0..200 {
        let n = rng.gen_range(1..=3);
        let positive_case = case < 100;
        let (a, b) = if positive_case {
            let a: Dense = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                rng.gen_range(-2.0..1.0)
                            } else {
                                0.0
                            }
                        })
                        .collect()
                })
                .collect();
            let extra = rng.gen_range(0..=2);
            let mut cols: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|r| if r == i { rng.gen_range(0.5..2.0) } else { 0.0 })
                        .collect()
                })
                .collect();
            for _ in 0..extra {
                cols.push((0..n).map(|_| sparse_entry(&mut rng)).collect());
            }
            let mut order: Vec<usize> = (0..cols.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let b: Dense = (0..n)
                .map(|r| order.iter().map(|&c| cols[c][r]).collect())
                .collect();
            (a, b)
        } else if case % 2 == 0 && n > 1 {
            // Metzler with at least one positive off-diagonal entry
            let mut a: Dense = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                rng.gen_range(-2.0..1.0)
                            } else if rng.gen_bool(0.3) {
                                rng.gen_range(0.2..1.0)
                            } else {
                                0.0
                            }
                        })
                        .collect()
                })
                .collect();
            let (i, j) = loop {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i != j {
                    break (i, j);
                }
            };
            a[i][j] = rng.gen_range(0.2..1.0);
            let m = rng.gen_range(1..=n + 1);
            (
                a,
                (0..n)
                    .map(|_| (0..m).map(|_| sparse_entry(&mut rng)).collect())
                    .collect(),
            )
        } else {
            let a: Dense = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                rng.gen_range(-2.0..1.0)
                            } else {
                                0.0
                            }
                        })
                        .collect()
                })
                .collect();
            let m = rng.gen_range(1..=n + 1);
            let b: Dense = loop {
                let b: Dense = (0..n)
                    .map(|_| (0..m).map(|_| sparse_entry(&mut rng)).collect())
                    .collect();
                let cols: Vec<Vec<f64>> =
                    (0..m).map(|k| b.iter().map(|r| r[k]).collect()).collect();
                let hit: Vec<bool> = (0..n)
                    .map(|i| cols.iter().any(|c| oracle_monomial(c, 1e-9) == Some(i)))
                    .collect();
                if hit.iter().any(|&h| !h) {
                    break b;
                }
            };
            (a, b)
        };
        let sys = system(ts.clone(), &a, &b);
        let criterion = check_pr_real_line(&sys, 1e-9).unwrap();
        let decided = decide_positive_reachability(&sys, 0.0, 1.0, &opts).map(|r| r.reachable);
        if decided == Ok(criterion) && criterion == positive_case {
            agree += 1;
        } else {
            bad.push(case);
        }
    }
    (agree == 200, format!("{agree}/200 agree (100 constructed positives, 100 negatives), disagreements at {bad:?}"))
}

fn c9() -> Outcome {
    let mut rng = rng(9);
    let tol = 1e-9;
    let (mut agree, mut reachable, mut bad) = (0, 0, Vec::new());
    for case in 0..200 {
        let n = rng.gen_range(1..=4);
        let k = n + rng.gen_range(0..=3);
        let mu = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let ts = TimeScale::h_grid(mu, 0.0, k + 1).unwrap();
        let m = rng.gen_range(1..=3);
        let (a, b) = sparse_positive(&mut rng, n, m, mu);
        let sys = system(ts, &a, &b);
        let covers = |x: &Mat<f64>| {
            (0..n).all(|i| (0..x.cols()).any(|c| oracle_monomial(&x.column(c), tol) == Some(i)))
        };
        let full = covers(&homogeneous_reachability_matrix(&sys, k).unwrap());
        let short = covers(&homogeneous_reachability_matrix(&sys, n).unwrap());
        let lib = check_pr_discrete_homogeneous(&sys, 0.0, k, tol).unwrap();
        if full == short && lib == full {
            agree += 1;
            reachable += full as usize;
        } else {
            bad.push(case);
        }
    }
    (
        agree == 200,
        format!("{agree}/200 agree ({reachable} reachable), disagreements at {bad:?}"),
    )
}

fn c10() -> Outcome {
    let mut rng = rng(10);
    let zoo = scale_zoo();
    let mut worst = f64::INFINITY;
    let mut count = 0;
    while count < 100 {
        let ts = zoo[count % zoo.len()].1.clone();
        let mu_bar = match ts.max_graininess() {
            chronos_core::Extended::Finite(v) if v > 0.0 => v,
            chronos_core::Extended::Finite(_) => 1.0,
            chronos_core::Extended::Infinite => f64::INFINITY,
        };
        let n = rng.gen_range(1..=max_dim(&ts));
        let m = rng.gen_range(1..=3);
        let (a, b) = sparse_positive(&mut rng, n, m, mu_bar);
        let sys = system(ts.clone(), &a, &b);
        if !sys.is_positive(1e-9).positive {
            continue;
        }
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let (t0, t1) = (ts.inf(), ts.sup());
        let u = random_control(&ts, m, t0, t1, &mut rng, &RandomControlOptions::default()).unwrap();
        let traj = sys
            .simulate(&x0, &u, t1, &SimulationOptions::default())
            .unwrap();
        let min = traj
            .samples
            .iter()
            .flat_map(|(_, x)| x.iter().copied())
            .fold(f64::INFINITY, f64::min);
        worst = worst.min(min);
        count += 1;
    }
    (
        worst >= -1e-9,
        format!("smallest state entry over 100 trajectories {worst:.3e}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            1,
            "two-state integer grid: Gram matrices and decision",
            Duration::from_secs(1),
            c1,
        ),
        (
            2,
            "mixed scale {0}+[1,2]+{3}: Gram matrices and decision",
            Duration::from_secs(1),
            c2,
        ),
        (
            3,
            "nonhomogeneous counterexample on {0,1,2,4}",
            Duration::from_secs(1),
            c3,
        ),
        (
            4,
            "positivity test vs exponential sampling",
            Duration::from_secs(30),
            c4,
        ),
        (5, "semigroup property", Duration::from_secs(10), c5),
        (6, "synthesis round trip", Duration::from_secs(30), c6),
        (7, "discrete cone oracle", Duration::from_secs(30), c7),
        (8, "real-line criterion", Duration::from_secs(60), c8),
        (
            9,
            "homogeneous truncation to n blocks",
            Duration::from_secs(10),
            c9,
        ),
        (10, "positive invariance", Duration::from_secs(20), c10),
    ];
    let mut failed = Vec::new();
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && elapsed <= budget, detail),
            Err(_) => (false, "panicked".to_string()),
        };
        let detail = format!(
            "{detail} ({:.3} s, budget {} s)",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        report(id, title, ok, &detail);
        if !ok {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
