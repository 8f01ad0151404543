use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::ReachOptions;
use crate::error::{Error, Result};
use crate::matrix::{expm, Mat};
use crate::quadrature::adaptive_gauss_legendre;
use crate::scalar::Real;
use crate::system::LinearSystem;
use crate::timescale::{DeltaSet, WindowPiece};
use crate::tsexp::tail_propagators;

/// Column selection `M` with one Δ-set `S_k ⊆ [t0, t1)` per selected column.
///
/// Column indices are 1-based, as in `b_1, …, b_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramSpec<T> {
    pub t0: T,
    pub t1: T,
    sets: BTreeMap<usize, DeltaSet<T>>,
}

impl<T: Real> GramSpec<T> {
    pub fn new(t0: T, t1: T, sets: BTreeMap<usize, DeltaSet<T>>) -> Self {
        GramSpec { t0, t1, sets }
    }

    /// `M = {1..m}`, `S_k = [t0, t1)`.
    pub fn full(sys: &LinearSystem<T>, t0: T, t1: T) -> Result<Self> {
        let all: Vec<usize> = (1..=sys.m()).collect();
        Self::columns(sys, t0, t1, &all)
    }

    /// `S_k = [t0, t1)` for every `k ∈ M`.
    pub fn columns(sys: &LinearSystem<T>, t0: T, t1: T, m_set: &[usize]) -> Result<Self> {
        if m_set.is_empty() {
            return Err(Error::EmptyM);
        }
        let window = DeltaSet::new(sys.scale(), vec![(t0, t1)])?;
        let sets = m_set.iter().map(|&k| (k, window.clone())).collect();
        let (t0, t1) = (sys.scale().snap(t0)?, sys.scale().snap(t1)?);
        Ok(GramSpec { t0, t1, sets })
    }

    /// Selected columns, ascending.
    pub fn m_set(&self) -> Vec<usize> {
        self.sets.keys().copied().collect()
    }

    pub fn set(&self, k: usize) -> Option<&DeltaSet<T>> {
        self.sets.get(&k)
    }

    pub fn sets(&self) -> &BTreeMap<usize, DeltaSet<T>> {
        &self.sets
    }

    fn validate(&self, sys: &LinearSystem<T>) -> Result<()> {
        for (&k, set) in &self.sets {
            if k == 0 || k > sys.m() {
                return Err(Error::SpecOutsideWindow(format!(
                    "column {k} is not in 1..={}",
                    sys.m()
                )));
            }
            if !set.within(self.t0, self.t1) {
                return Err(Error::SpecOutsideWindow(format!(
                    "S_{k} leaves [{}, {})",
                    self.t0, self.t1
                )));
            }
            for &(c, d) in set.pieces() {
                if !sys.scale().contains(c) || !sys.scale().contains(d) {
                    return Err(Error::SpecOutsideWindow(format!(
                        "S_{k} piece [{c}, {d}) is not in the scale"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct SpecRepr<'a, T> {
    t0: T,
    t1: T,
    #[serde(rename = "M")]
    m: Vec<usize>,
    #[serde(rename = "S")]
    s: &'a BTreeMap<usize, DeltaSet<T>>,
}

impl<T: Real + Serialize> Serialize for GramSpec<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpecRepr {
            t0: self.t0,
            t1: self.t1,
            m: self.m_set(),
            s: &self.sets,
        }
        .serialize(serializer)
    }
}

/// Part of a Δ-set that falls on one window piece.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Contribution<T> {
    /// Scattered point `t` of piece `j`.
    Atom { j: usize, t: T, sigma: T },
    /// Dense subinterval `[p, q)` of piece `j`.
    Dense { j: usize, p: T, q: T },
}

/// Partition of `[t0, t1)` with the propagators `e_A(t1, ·)` from each piece end.
pub(crate) struct WindowKernel<'a, T: Real> {
    pub sys: &'a LinearSystem<T>,
    pub t0: T,
    pub t1: T,
    pub pieces: Vec<WindowPiece<T>>,
    pub tails: Vec<Mat<T>>,
}

impl<'a, T: Real> WindowKernel<'a, T> {
    pub fn new(sys: &'a LinearSystem<T>, t0: T, t1: T) -> Result<Self> {
        let (t0, t1) = (sys.scale().snap(t0)?, sys.scale().snap(t1)?);
        let pieces = sys.scale().partition(t0, t1)?;
        let tails = tail_propagators(sys.a(), &pieces)?;
        Ok(WindowKernel {
            sys,
            t0,
            t1,
            pieces,
            tails,
        })
    }

    /// `e_A(t1, σ(τ))` for `τ` in piece `j`.
    pub fn propagator(&self, j: usize, tau: T) -> Result<Mat<T>> {
        match self.pieces[j] {
            WindowPiece::Atom { .. } => Ok(self.tails[j].clone()),
            WindowPiece::Dense { end, .. } => Ok(&self.tails[j] * &expm(self.sys.a(), end - tau)?),
        }
    }

    /// `e_A(t1, σ(τ)) b_k` for `τ` in piece `j`, `k` 0-based.
    pub fn generator(&self, j: usize, tau: T, k: usize) -> Result<Vec<T>> {
        Ok(self.propagator(j, tau)?.mul_vec(&self.sys.b_column(k)))
    }

    /// Splits `set` along the window pieces.
    pub fn contributions(&self, set: &DeltaSet<T>) -> Vec<Contribution<T>> {
        let mut out = Vec::new();
        for (j, piece) in self.pieces.iter().enumerate() {
            for &(c, d) in set.pieces() {
                match *piece {
                    WindowPiece::Atom { t, sigma } => {
                        if c <= t && t < d {
                            out.push(Contribution::Atom { j, t, sigma });
                        }
                    }
                    WindowPiece::Dense { start, end } => {
                        let (p, q) = (start.max(c), end.min(d));
                        if q > p {
                            out.push(Contribution::Dense { j, p, q });
                        }
                    }
                }
            }
        }
        out
    }

    /// `∫_p^q e^{A(e-τ)} b bᵀ e^{A(e-τ)}ᵀ dτ` mapped through the tail of piece `j`.
    fn dense_gram(&self, j: usize, p: T, q: T, b: &[T], quad_tol: T) -> Result<Mat<T>> {
        let end = self.pieces[j].end();
        let a = self.sys.a();
        let inner = adaptive_gauss_legendre(p, q, quad_tol, |tau| {
            let v = Mat::column_vector(&expm(a, end - tau)?.mul_vec(b));
            Ok(&v * &v.transpose())
        })?;
        let tail = &self.tails[j];
        Ok(&(tail * &inner) * &tail.transpose())
    }

    pub fn gram(&self, spec: &GramSpec<T>, opts: &ReachOptions<T>) -> Result<Mat<T>> {
        let n = self.sys.n();
        let mut w = Mat::zeros(n, n);
        for (&k, set) in spec.sets() {
            let b = self.sys.b_column(k - 1);
            for c in self.contributions(set) {
                let term = match c {
                    Contribution::Atom { j, t, sigma } => {
                        let v = Mat::column_vector(&self.tails[j].mul_vec(&b));
                        (&v * &v.transpose()).scale(sigma - t)
                    }
                    Contribution::Dense { j, p, q } => {
                        self.dense_gram(j, p, q, &b, opts.quad_tol)?
                    }
                };
                w = &w + &term;
            }
        }
        Ok(w)
    }
}

/// The modified Gram matrix `W(M, S_M)` on `[spec.t0, spec.t1]`.
///
/// Scattered points contribute `μ(τ)·v vᵀ` exactly; dense stretches are
/// integrated by adaptive Gauss–Legendre quadrature.
pub fn gram<T: Real>(
    sys: &LinearSystem<T>,
    spec: &GramSpec<T>,
    opts: &ReachOptions<T>,
) -> Result<Mat<T>> {
    let ts = sys.scale();
    let spec = GramSpec {
        t0: ts.snap(spec.t0)?,
        t1: ts.snap(spec.t1)?,
        sets: spec.sets.clone(),
    };
    spec.validate(sys)?;
    WindowKernel::new(sys, spec.t0, spec.t1)?.gram(&spec, opts)
}

/// The ordinary Gram matrix: every column over the whole window.
pub fn gram_full<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    t1: T,
    opts: &ReachOptions<T>,
) -> Result<Mat<T>> {
    gram(sys, &GramSpec::full(sys, t0, t1)?, opts)
}

/// `W(M)`: the columns in `m_set` (1-based) over the whole window.
pub fn gram_columns<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    t1: T,
    m_set: &[usize],
    opts: &ReachOptions<T>,
) -> Result<Mat<T>> {
    gram(sys, &GramSpec::columns(sys, t0, t1, m_set)?, opts)
}
