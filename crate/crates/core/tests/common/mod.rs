#![allow(dead_code)]

use chronos_core::{LinearSystem, Mat, TimeScale};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn eye(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

pub fn mul(x: &Dense, y: &Dense) -> Dense {
    let (r, k, c) = (x.len(), y.len(), y[0].len());
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).map(|l| x[i][l] * y[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mul_vec(x: &Dense, v: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn add_scaled(x: &Dense, y: &Dense, s: f64) -> Dense {
    x.iter()
        .zip(y)
        .map(|(r, q)| r.iter().zip(q).map(|(a, b)| a + s * b).collect())
        .collect()
}

/// `I + μA`.
pub fn step(a: &Dense, mu: f64) -> Dense {
    add_scaled(&eye(a.len()), a, mu)
}

/// `e^{Ah}` by a Taylor series with repeated halving; reference only.
pub fn taylor_exp(a: &Dense, h: f64) -> Dense {
    let n = a.len();
    let norm: f64 = a
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * h.abs();
    let mut halvings = 0;
    while norm / 2f64.powi(halvings) > 0.1 {
        halvings += 1;
    }
    let x: Dense = a
        .iter()
        .map(|r| r.iter().map(|v| v * h / 2f64.powi(halvings)).collect())
        .collect();
    let mut sum = eye(n);
    let mut term = eye(n);
    for k in 1..30 {
        term = mul(&term, &x)
            .into_iter()
            .map(|r| r.into_iter().map(|v| v / k as f64).collect())
            .collect();
        sum = add_scaled(&sum, &term, 1.0);
    }
    for _ in 0..halvings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// Reference `e_A(t, s)` built from the component list of a scale.
pub fn oracle_exp(a: &Dense, components: &[(f64, f64)], t: f64, s: f64) -> Dense {
    let mut e = eye(a.len());
    let mut cur = s;
    for (idx, &(lo, hi)) in components.iter().enumerate() {
        if hi < cur || lo > t {
            continue;
        }
        let seg_end = hi.min(t);
        if seg_end > cur {
            e = mul(&taylor_exp(a, seg_end - cur), &e);
            cur = seg_end;
        }
        if cur == hi && hi < t {
            let next = components[idx + 1].0;
            e = mul(&step(a, next - hi), &e);
            cur = next;
        }
    }
    e
}

/// Points of a purely scattered scale.
pub fn points_of(ts: &TimeScale<f64>) -> Vec<f64> {
    ts.components().iter().map(|c| c.0).collect()
}

/// `x(t_k)` by iterating `x ← x + μ(Ax + Bu_j)` over the points of a purely
/// scattered window, with `u_j` the input at the `j`-th point.
pub fn oracle_discrete_run(
    a: &Dense,
    b: &Dense,
    pts: &[f64],
    x0: &[f64],
    inputs: &[Vec<f64>],
) -> Vec<f64> {
    let mut x = x0.to_vec();
    for (j, w) in pts.windows(2).enumerate() {
        let mu = w[1] - w[0];
        let ax = mul_vec(a, &x);
        let bu = mul_vec(b, &inputs[j]);
        for i in 0..x.len() {
            x[i] += mu * (ax[i] + bu[i]);
        }
    }
    x
}

/// `i` with `v` a positive multiple of `e_i`; entries with `|v_j| ≤ tol·‖v‖∞` count as zero.
pub fn oracle_monomial(v: &[f64], tol: f64) -> Option<usize> {
    let norm = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if norm <= tol {
        return None;
    }
    let big: Vec<usize> = (0..v.len()).filter(|&j| v[j].abs() > tol * norm).collect();
    (big.len() == 1 && v[big[0]] > 0.0).then(|| big[0])
}

pub fn dense(m: &Mat<f64>) -> Dense {
    m.to_rows()
}

pub fn system(ts: TimeScale<f64>, a: &Dense, b: &Dense) -> LinearSystem<f64> {
    LinearSystem::new(ts, Mat::from_rows(a).unwrap(), Mat::from_rows(b).unwrap()).unwrap()
}

/// Value drawn from `{0, 0, 0.5, 1, 1.5, 2}`, so products stay exact.
pub fn sparse_entry<R: Rng>(rng: &mut R) -> f64 {
    [0.0, 0.0, 0.5, 1.0, 1.5, 2.0][rng.gen_range(0..6)]
}

/// Positive pair `(A, B)` for graininess bound `mu_bar` with many exact zeros.
pub fn sparse_positive<R: Rng>(rng: &mut R, n: usize, m: usize, mu_bar: f64) -> (Dense, Dense) {
    let a = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        sparse_entry(rng)
                    } else {
                        // diagonal in [-1/μ̄, 1], hitting the boundary now and then
                        match rng.gen_range(0..4) {
                            0 => -1.0 / mu_bar,
                            1 => 0.0,
                            2 => -0.5 / mu_bar,
                            _ => 0.5,
                        }
                    }
                })
                .collect()
        })
        .collect();
    let b = (0..n)
        .map(|_| (0..m).map(|_| sparse_entry(rng)).collect())
        .collect();
    (a, b)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: f64, hi: f64) -> Dense {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..hi)).collect())
        .collect()
}

/// The four scales exercised by the randomized checks.
pub fn scale_zoo() -> Vec<(&'static str, TimeScale<f64>)> {
    vec![
        ("[0,1]", TimeScale::real_line(0.0, 1.0).unwrap()),
        ("Z∩[0,6]", TimeScale::integers(0, 6).unwrap()),
        (
            "{0,1,2,4}",
            TimeScale::points(&[0.0, 1.0, 2.0, 4.0]).unwrap(),
        ),
        ("2^N", TimeScale::q_grid(2.0, 1.0, 5).unwrap()),
        (
            "mixed",
            TimeScale::custom(vec![(0.0, 0.0), (0.5, 1.5), (2.0, 2.0), (3.0, 4.0)]).unwrap(),
        ),
    ]
}

/// Uniformly chosen member of `ts`: a stored isolated point or a point of a
/// dense component.
pub fn random_member<R: Rng>(rng: &mut R, ts: &TimeScale<f64>) -> f64 {
    let c = ts.components();
    let (a, b) = c[rng.gen_range(0..c.len())];
    if a == b {
        a
    } else {
        rng.gen_range(a..=b)
    }
}

/// One line of the acceptance log.
pub fn report(id: u32, title: &str, ok: bool, detail: &str) {
    println!(
        "criterion {id:>2} {}  {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}
