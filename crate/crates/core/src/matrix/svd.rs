use super::Mat;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 60;

/// Singular values in descending order (one-sided Jacobi).
pub fn singular_values<T: Real>(x: &Mat<T>) -> Vec<T> {
    // Orthogonalise the columns of a tall copy.
    let mut a = if x.rows() >= x.cols() {
        x.clone()
    } else {
        x.transpose()
    };
    let (rows, cols) = (a.rows(), a.cols());
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for i in 0..rows {
                    let (ap, aq) = (a[(i, p)], a[(i, q)]);
                    alpha += ap * ap;
                    beta += aq * aq;
                    gamma += ap * aq;
                }
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let (ap, aq) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = c * ap - s * aq;
                    a[(i, q)] = s * ap + c * aq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = (0..cols)
        .map(|j| (0..rows).map(|i| a[(i, j)] * a[(i, j)]).sum::<T>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Number of singular values above `tol·σ_max`.
pub fn rank<T: Real>(x: &Mat<T>, tol: T) -> usize {
    let sv = singular_values(x);
    let Some(&largest) = sv.first() else { return 0 };
    if largest == T::zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * largest).count()
}
