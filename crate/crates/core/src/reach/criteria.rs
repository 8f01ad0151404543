use crate::error::{Error, Result};
use crate::matrix::{has_monomial_submatrix, rank, Mat};
use crate::scalar::Real;
use crate::system::LinearSystem;
use crate::timescale::ScaleKind;

/// `[B, AB, …, A^{n-1}B]`.
pub fn kalman_matrix<T: Real>(sys: &LinearSystem<T>) -> Mat<T> {
    let mut blocks = Vec::with_capacity(sys.n());
    let mut block = sys.b().clone();
    for _ in 0..sys.n() {
        let next = sys.a() * &block;
        blocks.push(block);
        block = next;
    }
    Mat::hcat(&blocks).expect("blocks share the row count")
}

/// Kalman rank test on a window of at least `n + 1` points.
pub fn is_positively_accessible<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    t1: T,
    tol: T,
) -> Result<bool> {
    let needed = sys.n() + 1;
    if !sys.scale().window_has_at_least(t0, t1, needed)? {
        return Err(Error::WindowTooSmall { needed });
    }
    Ok(rank(&kalman_matrix(sys), tol) == sys.n())
}

/// Criterion on `T = ℝ` (or an interval of it): `A` diagonal and `B`
/// contains an `n x n` monomial submatrix. Independent of the window.
pub fn check_pr_real_line<T: Real>(sys: &LinearSystem<T>, tol: T) -> Result<bool> {
    if !matches!(sys.scale().kind(), ScaleKind::RealLine) {
        return Err(Error::WrongScaleTag {
            expected: "real_line",
        });
    }
    let a = sys.a();
    let floor = tol * a.max_abs().max(T::one());
    let diagonal = (0..sys.n()).all(|i| (0..sys.n()).all(|j| i == j || a[(i, j)].abs() <= floor));
    Ok(diagonal && has_monomial_submatrix(sys.b(), tol))
}

fn grid_step<T: Real>(sys: &LinearSystem<T>) -> Result<T> {
    match sys.scale().kind() {
        ScaleKind::HGrid { h } => Ok(h),
        _ => Err(Error::WrongScaleTag { expected: "h_grid" }),
    }
}

/// `[B, (I+μA)B, …, (I+μA)^{blocks-1}B]` on an `h_grid` scale.
pub fn homogeneous_reachability_matrix<T: Real>(
    sys: &LinearSystem<T>,
    blocks: usize,
) -> Result<Mat<T>> {
    let mu = grid_step(sys)?;
    let step = &Mat::identity(sys.n()) + &sys.a().scale(mu);
    let mut out = Vec::with_capacity(blocks);
    let mut block = sys.b().clone();
    for _ in 0..blocks {
        let next = &step * &block;
        out.push(block);
        block = next;
    }
    if out.is_empty() {
        return Ok(Mat::zeros(sys.n(), 0));
    }
    Mat::hcat(&out)
}

/// `σ^k(t0)`, failing when the window runs into a right-dense point or the end
/// of the scale.
fn scattered_steps<T: Real>(sys: &LinearSystem<T>, t0: T, k: usize) -> Result<Vec<(T, T)>> {
    let ts = sys.scale();
    let mut t = ts.snap(t0)?;
    let mut steps = Vec::with_capacity(k);
    for _ in 0..k {
        let s = ts.sigma(t)?;
        if s == t {
            if t >= ts.sup() {
                return Err(Error::WindowTooSmall { needed: k + 1 });
            }
            return Err(Error::DenseWindow(t.to_f64_lossy()));
        }
        steps.push((t, s - t));
        t = s;
    }
    Ok(steps)
}

/// Homogeneous discrete criterion on `[t0, t0 + kμ]`; powers beyond `n − 1`
/// add nothing, so at most `n` blocks are built.
pub fn check_pr_discrete_homogeneous<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    k: usize,
    tol: T,
) -> Result<bool> {
    grid_step(sys)?;
    if k == 0 {
        let t0 = t0.to_f64_lossy();
        return Err(Error::EmptyWindow { t0, t1: t0 });
    }
    scattered_steps(sys, t0, k)?;
    let x = homogeneous_reachability_matrix(sys, k.min(sys.n()))?;
    Ok(has_monomial_submatrix(&x, tol))
}

/// Generator matrix of a purely scattered window `[t0, σ^k(t0)]`.
///
/// Block `j` is `e_A(t1, σ(τ))B` for the `j`-th point `τ` counted backwards
/// from `t1`: `B`, `(I+μ(τ_{k-1})A)B`, `(I+μ(τ_{k-1})A)(I+μ(τ_{k-2})A)B`, ….
pub fn nonhomogeneous_reachability_matrix<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    k: usize,
) -> Result<Mat<T>> {
    let steps = scattered_steps(sys, t0, k)?;
    let n = sys.n();
    let mut blocks = Vec::with_capacity(k);
    let mut tail = Mat::identity(n);
    for &(_, mu) in steps.iter().rev() {
        blocks.push(&tail * sys.b());
        tail = &tail * &(&Mat::identity(n) + &sys.a().scale(mu));
    }
    if blocks.is_empty() {
        return Ok(Mat::zeros(n, 0));
    }
    Mat::hcat(&blocks)
}

/// Nonhomogeneous discrete criterion on `[t0, σ^k(t0)]`. No truncation to `n`
/// blocks: irregular steps can need more than `n` jumps.
pub fn check_pr_discrete_nonhomogeneous<T: Real>(
    sys: &LinearSystem<T>,
    t0: T,
    k: usize,
    tol: T,
) -> Result<bool> {
    if k == 0 {
        let t0 = t0.to_f64_lossy();
        return Err(Error::EmptyWindow { t0, t1: t0 });
    }
    Ok(has_monomial_submatrix(
        &nonhomogeneous_reachability_matrix(sys, t0, k)?,
        tol,
    ))
}
