//! Composite Gauss–Legendre quadrature for smooth matrix-valued integrands.

use crate::error::Result;
use crate::matrix::Mat;
use crate::scalar::Real;

// 8-point rule on [-1, 1]: (node, weight), symmetric pairs.
#[allow(clippy::excessive_precision)]
const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_3),
];

const MAX_PANELS: usize = 1 << 14;

/// One composite 8-point pass over `[a, b]` with `panels` equal panels.
pub fn gauss_legendre<T, F>(a: T, b: T, panels: usize, f: &mut F) -> Result<Mat<T>>
where
    T: Real,
    F: FnMut(T) -> Result<Mat<T>>,
{
    let width = (b - a) / T::lit(panels as f64);
    let half = width / T::lit(2.0);
    let mut acc: Option<Mat<T>> = None;
    for p in 0..panels {
        let mid = a + width * T::lit(p as f64) + half;
        for &(x, w) in &GL8 {
            for sign in [-1.0, 1.0] {
                let v = f(mid + half * T::lit(sign * x))?.scale(half * T::lit(w));
                acc = Some(match acc {
                    Some(s) => &s + &v,
                    None => v,
                });
            }
        }
    }
    Ok(acc.expect("at least one panel"))
}

/// Doubles the panel count until two successive composite values agree to
/// `tol·max(1, ‖value‖∞)`.
pub fn adaptive_gauss_legendre<T, F>(a: T, b: T, tol: T, mut f: F) -> Result<Mat<T>>
where
    T: Real,
    F: FnMut(T) -> Result<Mat<T>>,
{
    let mut panels = 1;
    let mut prev = gauss_legendre(a, b, panels, &mut f)?;
    loop {
        panels *= 2;
        let next = gauss_legendre(a, b, panels, &mut f)?;
        let scale = next.norm_inf().max(T::one());
        if next.dist_inf(&prev) <= tol * scale || panels >= MAX_PANELS {
            return Ok(next);
        }
        prev = next;
    }
}
