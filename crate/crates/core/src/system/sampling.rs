use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ControlSegment, ControlSignal, LinearSystem, SimulationOptions};
use crate::error::Result;
use crate::matrix::Mat;
use crate::scalar::Real;
use crate::timescale::{ScaleKind, TimeScale, WindowPiece};
use crate::tsexp::ts_exp;

/// How [`LinearSystem::exp_nonneg_witness`] picks `(t, t0)` pairs.
#[derive(Clone, Copy, Debug)]
pub struct WitnessSampling {
    /// Random pairs on top of the deterministic ones.
    pub random_pairs: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for WitnessSampling {
    fn default() -> Self {
        WitnessSampling {
            random_pairs: 64,
            seed: 0,
            tol: 1e-9,
        }
    }
}

/// Negative entry of `e_A(t, t0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpWitness<T> {
    pub t: T,
    pub t0: T,
    pub row: usize,
    pub col: usize,
    pub value: T,
}

/// Random nonnegative inputs for reachable-set sampling.
#[derive(Clone, Copy, Debug)]
pub struct RandomControlOptions {
    pub u_max: f64,
    /// Equispaced interior switches per dense segment.
    pub dense_switches: usize,
}

impl Default for RandomControlOptions {
    fn default() -> Self {
        RandomControlOptions {
            u_max: 1.0,
            dense_switches: 4,
        }
    }
}

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_point<T: Real, R: Rng>(pieces: &[WindowPiece<T>], t1: T, rng: &mut R) -> T {
    let idx = rng.gen_range(0..=pieces.len());
    match pieces.get(idx) {
        None => t1,
        Some(&WindowPiece::Atom { t, .. }) => t,
        Some(&WindowPiece::Dense { start, end }) => {
            start + (end - start) * T::lit(rng.gen::<f64>())
        }
    }
}

/// Piecewise-constant input, uniform on `[0, u_max]^m`, switching at every
/// scattered point of `[t0, t1)` and at equispaced points of dense segments.
pub fn random_control<T: Real, R: Rng>(
    ts: &TimeScale<T>,
    m: usize,
    t0: T,
    t1: T,
    rng: &mut R,
    opts: &RandomControlOptions,
) -> Result<ControlSignal<T>> {
    let mut starts = Vec::new();
    for piece in ts.partition(t0, t1)? {
        match piece {
            WindowPiece::Atom { t, .. } => starts.push(t),
            WindowPiece::Dense { start, end } => {
                let k = opts.dense_switches + 1;
                starts.extend((0..k).map(|j| start + (end - start) * T::lit(j as f64 / k as f64)));
            }
        }
    }
    let segments = starts
        .into_iter()
        .map(|t| ControlSegment {
            t,
            u: (0..m)
                .map(|_| T::lit(rng.gen::<f64>() * opts.u_max))
                .collect(),
        })
        .collect();
    ControlSignal::new(ts.snap(t0)?, ts.snap(t1)?, segments)
}

impl<T: Real> LinearSystem<T> {
    /// Searches `[t0, t1]` for a pair `t0' ≤ t'` with a negative entry in
    /// `e_A(t', t0')`.
    ///
    /// Every single scattered step is checked, each dense segment is probed
    /// with short steps from its left end, and `random_pairs` further pairs are
    /// drawn. A test oracle for the algebraic criterion, not a decision
    /// procedure.
    pub fn exp_nonneg_witness(
        &self,
        t0: T,
        t1: T,
        sampling: &WitnessSampling,
    ) -> Result<Option<ExpWitness<T>>> {
        let pieces = self.scale().partition(t0, t1)?;
        let t1 = self.scale().snap(t1)?;
        let mut pairs: Vec<(T, T)> = Vec::new();
        for p in &pieces {
            match *p {
                WindowPiece::Atom { t, sigma } => pairs.push((sigma, t)),
                WindowPiece::Dense { start, end } => {
                    for k in 0..6 {
                        pairs.push((start + (end - start) * T::lit(10f64.powi(-k)), start));
                    }
                }
            }
        }
        let mut rng = rng_for(sampling.seed, 0);
        for _ in 0..sampling.random_pairs {
            let a = random_point(&pieces, t1, &mut rng);
            let b = random_point(&pieces, t1, &mut rng);
            pairs.push(if a >= b { (a, b) } else { (b, a) });
        }
        let tol = T::lit(sampling.tol);
        for (t, s) in pairs {
            let e = ts_exp(self.a(), self.scale(), t, s)?;
            let floor = -tol * e.max_abs().max(T::one());
            for i in 0..e.rows() {
                for j in 0..e.cols() {
                    if e[(i, j)] < floor {
                        return Ok(Some(ExpWitness {
                            t,
                            t0: s,
                            row: i,
                            col: j,
                            value: e[(i, j)],
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// [`exp_nonneg_witness`](Self::exp_nonneg_witness) over the whole scale
    /// the truncation stands for. A `q_grid` continues past its last stored
    /// point with single steps of graininess `(q − 1)t` until `μ‖A‖∞` exceeds
    /// `1/tol`.
    pub fn positivity_witness(&self, sampling: &WitnessSampling) -> Result<Option<ExpWitness<T>>> {
        let ts = self.scale();
        if ts.inf() < ts.sup() {
            if let Some(w) = self.exp_nonneg_witness(ts.inf(), ts.sup(), sampling)? {
                return Ok(Some(w));
            }
        }
        if let ScaleKind::QGrid { q } = ts.kind() {
            let n = self.n();
            let tol = T::lit(sampling.tol);
            let limit = T::one() / tol;
            let norm = self.a().norm_inf();
            let mut t = ts.sup();
            for _ in 0..10_000 {
                let mu = (q - T::one()) * t;
                let step = &Mat::identity(n) + &self.a().scale(mu);
                let floor = -tol * step.max_abs().max(T::one());
                for i in 0..n {
                    for j in 0..n {
                        if step[(i, j)] < floor {
                            return Ok(Some(ExpWitness {
                                t: t + mu,
                                t0: t,
                                row: i,
                                col: j,
                                value: step[(i, j)],
                            }));
                        }
                    }
                }
                if mu * norm > limit || !mu.is_finite() {
                    break;
                }
                t += mu;
            }
        }
        Ok(None)
    }

    /// Endpoints `x(t1; t0, 0, u)` for `n_controls` nonnegative inputs; input 0
    /// is `u ≡ 0` and input `i` draws from stream `i` of a generator seeded
    /// with `seed`.
    pub fn sample_positive_reachable(
        &self,
        t0: T,
        t1: T,
        n_controls: usize,
        seed: u64,
        opts: &RandomControlOptions,
    ) -> Result<Vec<Vec<T>>> {
        self.require_positive(T::default_tol())?;
        let zero = vec![T::zero(); self.n()];
        let sim = SimulationOptions { dense_samples: 1 };
        (0..n_controls)
            .map(|i| {
                let u = if i == 0 {
                    ControlSignal::zero(self.m(), self.scale().snap(t0)?, self.scale().snap(t1)?)?
                } else {
                    random_control(
                        self.scale(),
                        self.m(),
                        t0,
                        t1,
                        &mut rng_for(seed, i as u64),
                        opts,
                    )?
                };
                Ok(self.simulate(&zero, &u, t1, &sim)?.final_state().to_vec())
            })
            .collect()
    }
}
