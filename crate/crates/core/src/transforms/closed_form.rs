//! Product-rule expansions, used as independent oracles.
//!
//! These suffer cancellation near `t = 0` and are only evaluated for
//! `|t| ≥ 0.1`.

use crate::error::{domain, parameter, Result};
use crate::scalar::{lit, Real};

/// Smallest `|t|` accepted by the product-rule formulas.
pub const MIN_ABS_T: f64 = 0.1;

/// Highest derivative order of `tan` supported by [`tan_derivative`].
pub const MAX_TAN_ORDER: usize = 12;

fn check_away_from_zero<T: Real>(t: T) -> Result<()> {
    if !(t.abs() >= lit(MIN_ABS_T)) || !t.is_finite() {
        return Err(domain(format!(
            "product-rule formula needs |t| ≥ {MIN_ABS_T}, got {t}"
        )));
    }
    Ok(())
}

/// `d⁴/dt⁴ (sin t / t) = sin t/t + 4cos t/t² - 12 sin t/t³ - 24 cos t/t⁴ + 24 sin t/t⁵`.
pub fn sinc_fourth_derivative<T: Real>(t: T) -> Result<T> {
    check_away_from_zero(t)?;
    let (s, c) = t.sin_cos();
    let l = |x: f64| lit::<T>(x);
    Ok(
        s / t + l(4.0) * c / t.powi(2) - l(12.0) * s / t.powi(3) - l(24.0) * c / t.powi(4)
            + l(24.0) * s / t.powi(5),
    )
}

/// `d⁴/dt⁴ ((1 - cos t)/t²) = 120(1-cos t)/t⁶ - 96 sin t/t⁵ + 36 cos t/t⁴ + 8 sin t/t³ - cos t/t²`.
pub fn cin_over_t2_fourth_derivative<T: Real>(t: T) -> Result<T> {
    check_away_from_zero(t)?;
    let (s, c) = t.sin_cos();
    let l = |x: f64| lit::<T>(x);
    Ok(
        l(120.0) * (T::one() - c) / t.powi(6) - l(96.0) * s / t.powi(5)
            + l(36.0) * c / t.powi(4)
            + l(8.0) * s / t.powi(3)
            - c / t.powi(2),
    )
}

/// Coefficients of `P_m` with `d^m tan / dt^m = P_m(tan t)`, from
/// `P_0 = y`, `P_{m+1} = (1 + y²) P_m'`.
pub fn tan_derivative_polynomial(order: usize) -> Vec<f64> {
    let mut p = vec![0.0, 1.0];
    for _ in 0..order {
        let deriv: Vec<f64> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as f64 * c)
            .collect();
        let mut next = vec![0.0; deriv.len() + 2];
        for (i, &c) in deriv.iter().enumerate() {
            next[i] += c;
            next[i + 2] += c;
        }
        p = next;
    }
    p
}

/// `d^order tan / dt^order` at `t`, `|t| < π/2`, by the derivative polynomials.
pub fn tan_derivative<T: Real>(order: usize, t: T) -> Result<T> {
    if order > MAX_TAN_ORDER {
        return Err(parameter(format!(
            "tan derivative order {order} exceeds {MAX_TAN_ORDER}"
        )));
    }
    if !(t.abs() < T::FRAC_PI_2()) {
        return Err(domain(format!("|t| = {} must be below π/2", t.abs())));
    }
    let y = t.tan();
    Ok(tan_derivative_polynomial(order)
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| acc * y + lit::<T>(c)))
}
