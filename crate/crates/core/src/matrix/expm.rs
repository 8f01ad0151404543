use super::Mat;
use crate::error::{Error, Result};
use crate::scalar::Real;

// Diagonal [6/6] Padé coefficients of exp; q(x) = p(-x).
const PADE6: [f64; 7] = [
    1.0,
    0.5,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

// Scaled 1-norm bound for the Padé core; backward error is below f64 roundoff there.
const SCALED_NORM_BOUND: f64 = 0.5;

/// `e^{X s}` by scaling and squaring around a [6/6] Padé approximant.
pub fn expm<T: Real>(x: &Mat<T>, s: T) -> Result<Mat<T>> {
    let n = x.require_square()?;
    if s == T::zero() {
        return Ok(Mat::identity(n));
    }
    let y = x.scale(s);
    let norm = y.norm_one();
    if !norm.is_finite() {
        return Err(Error::NonFiniteState(s.to_f64_lossy()));
    }
    let mut squarings = 0u32;
    let bound = T::lit(SCALED_NORM_BOUND);
    let mut scaled_norm = norm;
    while scaled_norm > bound {
        scaled_norm /= T::lit(2.0);
        squarings += 1;
    }
    let y = y.scale(T::lit(0.5).powi(squarings as i32));

    let eye = Mat::identity(n);
    let mut numer = eye.clone();
    let mut denom = eye.clone();
    let mut power = eye;
    for (k, &c) in PADE6.iter().enumerate().skip(1) {
        power = &power * &y;
        let term = power.scale(T::lit(c));
        numer = &numer + &term;
        denom = if k % 2 == 0 {
            &denom + &term
        } else {
            &denom - &term
        };
    }
    let mut e = denom.solve(&numer)?;
    for _ in 0..squarings {
        e = &e * &e;
    }
    Ok(e)
}

/// `(e^{X s}, ∫₀ˢ e^{Xτ} dτ)` read off one exponential of `[[X, I], [0, 0]]·s`.
pub fn expm_with_integral<T: Real>(x: &Mat<T>, s: T) -> Result<(Mat<T>, Mat<T>)> {
    let n = x.require_square()?;
    if s < T::zero() {
        return Err(Error::NegativeHorizon(s.to_f64_lossy()));
    }
    if s == T::zero() {
        return Ok((Mat::identity(n), Mat::zeros(n, n)));
    }
    let mut aug = Mat::zeros(2 * n, 2 * n);
    aug.set_block(0, 0, x);
    aug.set_block(0, n, &Mat::identity(n));
    let e = expm(&aug, s)?;
    Ok((e.block(0, 0, n, n), e.block(0, n, n, n)))
}

/// `∫₀ˢ e^{Xτ} dτ` for `s ≥ 0`.
pub fn expm_integral<T: Real>(x: &Mat<T>, s: T) -> Result<Mat<T>> {
    expm_with_integral(x, s).map(|(_, j)| j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[f64; 2]]) -> Mat<f64> {
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn zero_generator_gives_identity() {
        let e = expm(&Mat::<f64>::zeros(2, 2), 7.0).unwrap();
        assert_eq!(e, Mat::identity(2));
    }

    #[test]
    fn identity_at_zero_horizon_is_exact() {
        let x = m(&[[3.0, -1.0], [2.0, 0.5]]);
        assert_eq!(expm(&x, 0.0).unwrap(), Mat::identity(2));
    }

    #[test]
    fn diagonal_case() {
        let e = expm(&Mat::diag(&[-1.0, -1.0]), 2.0).unwrap();
        let expected = Mat::diag(&[(-2.0f64).exp(), (-2.0f64).exp()]);
        assert!(e.dist_inf(&expected) < 1e-15);
    }

    #[test]
    fn shifted_nilpotent_closed_form() {
        // X = -I + N with N² = 0, so e^{Xs} = e^{-s}(I + N s).
        let x = m(&[[-1.0, 0.0], [1.0, -1.0]]);
        let e = expm(&x, 1.0).unwrap();
        let expected = m(&[[1.0, 0.0], [1.0, 1.0]]).scale((-1.0f64).exp());
        assert!(e.dist_inf(&expected) < 1e-15);
    }

    #[test]
    fn large_norm_rotation() {
        // e^{[[0,-w],[w,0]]} is a rotation by w.
        let w = 30.0f64;
        let e = expm(&m(&[[0.0, -w], [w, 0.0]]), 1.0).unwrap();
        let expected = m(&[[w.cos(), -w.sin()], [w.sin(), w.cos()]]);
        assert!(e.dist_inf(&expected) < 1e-12);
    }

    #[test]
    fn integral_of_zero_generator() {
        let j = expm_integral(&Mat::<f64>::zeros(2, 2), 3.0).unwrap();
        assert!(j.dist_inf(&Mat::identity(2).scale(3.0)) < 1e-14);
    }

    #[test]
    fn integral_scalar() {
        let j = expm_integral(&Mat::diag(&[-1.0]), 1.0).unwrap();
        assert!((j[(0, 0)] - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn integral_shifted_nilpotent() {
        let x = m(&[[-1.0, 0.0], [1.0, -1.0]]);
        let j = expm_integral(&x, 1.0).unwrap();
        let e1 = (-1.0f64).exp();
        let expected = m(&[[1.0 - e1, 0.0], [1.0 - 2.0 * e1, 1.0 - e1]]);
        assert!(j.dist_inf(&expected) < 1e-15);
    }

    #[test]
    fn errors() {
        let rect = Mat::<f64>::zeros(2, 3);
        assert!(matches!(expm(&rect, 1.0), Err(Error::NotSquare { .. })));
        assert!(matches!(
            expm_integral(&Mat::<f64>::identity(2), -1.0),
            Err(Error::NegativeHorizon(_))
        ));
    }

    #[test]
    fn single_precision_matches_double() {
        let x = m(&[[-1.0, 0.5], [0.25, -2.0]]);
        let e64 = expm(&x, 1.5).unwrap();
        let e32 = expm(&x.cast::<f32>(), 1.5f32).unwrap();
        assert!(e32.cast::<f64>().dist_inf(&e64) < 1e-5);
    }
}
