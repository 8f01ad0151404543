use super::Mat;
use crate::error::Result;
use crate::scalar::Real;

/// All entries `≥ -tol·max(1, max|x|)`.
pub fn is_nonneg<T: Real>(x: &Mat<T>, tol: T) -> bool {
    let floor = -tol * x.max_abs().max(T::one());
    x.as_slice().iter().all(|&v| v >= floor)
}

/// Index `i` such that `v` is a positive multiple of `e_i`, up to `tol`.
///
/// Zero vectors and vectors with two or more non-negligible entries yield
/// `None`; entries count as zero when `|v_j| ≤ tol·‖v‖∞`.
pub fn monomial_index<T: Real>(v: &[T], tol: T) -> Option<usize> {
    let norm = v.iter().map(|x| x.abs()).fold(T::zero(), T::max);
    if !(norm > tol) {
        return None;
    }
    let cutoff = tol * norm;
    let mut found = None;
    for (j, &x) in v.iter().enumerate() {
        if x.abs() > cutoff {
            if found.is_some() || x <= T::zero() {
                return None;
            }
            found = Some(j);
        }
    }
    found
}

/// Every row and every column of the square matrix `x` is monomial.
pub fn is_monomial<T: Real>(x: &Mat<T>, tol: T) -> Result<bool> {
    let n = x.require_square()?;
    let mut row_hit = vec![false; n];
    for j in 0..n {
        match monomial_index(&x.column(j), tol) {
            Some(i) if !row_hit[i] => row_hit[i] = true,
            _ => return Ok(false),
        }
    }
    Ok((0..n).all(|i| monomial_index(x.row(i), tol).is_some()))
}

/// For each row index `i`, the first column of `x` that is `i`-monomial;
/// `None` unless every `i` is covered.
pub fn monomial_submatrix<T: Real>(x: &Mat<T>, tol: T) -> Option<Vec<usize>> {
    let mut witness: Vec<Option<usize>> = vec![None; x.rows()];
    for j in 0..x.cols() {
        if let Some(i) = monomial_index(&x.column(j), tol) {
            witness[i].get_or_insert(j);
        }
    }
    witness.into_iter().collect()
}

/// `x` contains an `n x n` monomial submatrix (`n` = row count).
pub fn has_monomial_submatrix<T: Real>(x: &Mat<T>, tol: T) -> bool {
    monomial_submatrix(x, tol).is_some()
}
