//! Even derivatives of `tan t` from
//!
//! ```text
//! tan t = 2 ∫_0^∞ sinh(2st)/sinh(πs) ds,   |t| < π/2
//! d^{2k}/dt^{2k} tan t = 2 ∫_0^∞ (2s)^{2k} sinh(2st)/sinh(πs) ds
//! ```
//!
//! With `sinh(2s|t|)/sinh(πs) ≤ e^{(2|t|-π)s}` the `2k`-th derivative is
//! bounded by `(2k)!/(π/2 - |t|)^{2k+1}`.

use crate::error::{domain, parameter, Result};
use crate::quadrature::{integrate, Estimate, PanelConfig};
use crate::scalar::{count, lit, Real};
use crate::summation::CompensatedSum;

/// Largest half-order `k` (derivative order `2k`).
pub const MAX_TAN_HALF_ORDER: usize = 6;

/// Minimum distance from `±π/2`.
pub const EDGE_GUARD: f64 = 0.01;

/// Relative tail tolerance used to choose the truncation point.
const TAIL_TOLERANCE: f64 = 1e-16;

/// `sinh(2s|t|)/sinh(πs)`, evaluated without overflow as
/// `e^{-cs} (1 - e^{-4|t|s}) / (1 - e^{-2πs})` with `c = π - 2|t|`.
pub fn tan_kernel_ratio<T: Real>(s: T, t: T) -> T {
    let at = t.abs();
    let two = lit::<T>(2.0);
    if s == T::zero() {
        return two * at / T::PI();
    }
    let c = T::PI() - two * at;
    (-c * s).exp() * (-(-lit::<T>(4.0) * at * s).exp_m1()) / (-(-two * T::PI() * s).exp_m1())
}

/// The majorant `e^{(2|t|-π)s}` of [`tan_kernel_ratio`].
pub fn tan_kernel_majorant<T: Real>(s: T, t: T) -> T {
    ((lit::<T>(2.0) * t.abs() - T::PI()) * s).exp()
}

/// `(2k)!/(π/2 - |t|)^{2k+1}`, the integral of the majorant.
pub fn tan_even_bound<T: Real>(k: usize, t: T) -> Result<T> {
    if !(t.abs() < T::FRAC_PI_2()) {
        return Err(domain(format!("|t| = {} must be below π/2", t.abs())));
    }
    let fact = (1..=2 * k).fold(T::one(), |acc, j| acc * count::<T>(j));
    Ok(fact / (T::FRAC_PI_2() - t.abs()).powi(2 * k as i32 + 1))
}

/// Regularized upper incomplete gamma `Q(m, y) = e^{-y} Σ_{j<m} y^j/j!`.
fn upper_gamma_q<T: Real>(m: usize, y: T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    for j in 1..m {
        term = term * y / count(j);
        sum += term;
    }
    (-y).exp() * sum
}

/// Truncation point `S` with `∫_S^∞` of the majorant at most
/// [`TAIL_TOLERANCE`] times the full bound, i.e. `Q(2k+1, cS) ≤ tol`.
fn split_point<T: Real>(k: usize, c: T) -> T {
    let mut s = lit::<T>(20.0).max(lit::<T>(20.0) / c);
    while upper_gamma_q(2 * k + 1, c * s) > lit(TAIL_TOLERANCE) {
        s *= lit(1.25);
    }
    s
}

fn check<T: Real>(k: usize, t: T) -> Result<()> {
    if k > MAX_TAN_HALF_ORDER {
        return Err(parameter(format!(
            "tan half-order {k} exceeds {MAX_TAN_HALF_ORDER}"
        )));
    }
    if !(t.abs() < T::FRAC_PI_2() - lit(EDGE_GUARD)) {
        return Err(domain(format!(
            "|t| = {} too close to π/2 (guard {EDGE_GUARD})",
            t.abs()
        )));
    }
    Ok(())
}

/// `2k`-th derivative of `tan` at `t` with an error estimate (tail plus
/// rounding relative to the bound).
pub fn tan_even_derivative_estimate<T: Real>(k: usize, t: T) -> Result<Estimate<T>> {
    check(k, t)?;
    let bound = tan_even_bound(k, t)?;
    if t == T::zero() {
        return Ok(Estimate {
            value: T::zero(),
            error: T::zero(),
        });
    }
    let two = lit::<T>(2.0);
    let c = T::PI() - two * t.abs();
    let split = split_point(k, c);
    let sign = t.signum();
    let f = |s: T| two * (two * s).powi(2 * k as i32) * tan_kernel_ratio(s, t);
    let near = lit::<T>(10.0).min(split);
    let mut acc = CompensatedSum::new();
    acc.add(integrate(
        f,
        T::zero(),
        near,
        &PanelConfig::with_width(lit(0.5)),
    )?);
    if split > near {
        let width = lit::<T>(0.5).max((split - near) / lit(400.0));
        acc.add(integrate(f, near, split, &PanelConfig::with_width(width))?);
    }
    let tail = bound * upper_gamma_q(2 * k + 1, c * split);
    Ok(Estimate {
        value: sign * acc.value(),
        error: tail + lit::<T>(64.0) * T::epsilon() * bound,
    })
}

/// `2k`-th derivative of `tan` at `t`, for `k ≤ 6` and `|t| < π/2 - 0.01`.
pub fn tan_even_derivative<T: Real>(k: usize, t: T) -> Result<T> {
    tan_even_derivative_estimate(k, t).map(|e| e.value)
}
