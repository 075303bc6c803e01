//! `arctan(t)/t` as a cosine transform of the exponential integral:
//!
//! ```text
//! arctan(t)/t = ∫_0^∞ E1(v) cos(vt) dv
//! d^k/dt^k    = ∫_0^∞ v^k E1(v) cos(vt + kπ/2) dv
//! ```
//!
//! so `|d^k/dt^k arctan(t)/t| ≤ ∫_0^∞ v^k E1(v) dv = k!/(k+1)`.

use crate::error::{parameter, Result};
use crate::quadrature::{integrate_semi_infinite, Estimate, PanelConfig, SemiInfiniteConfig};
use crate::scalar::{count, lit, Real};
use crate::specfun::e1;

/// Largest derivative order for the arctan transform.
pub const MAX_ARCTAN_ORDER: usize = 8;

/// Truncation point of the `v` integral.
const SPLIT: f64 = 64.0;

/// Majorant of `∫_L^∞ v^k E1(v) dv`, using `E1(v) ≤ e^{-v}/v`:
/// `e^{-L}/L` for `k = 0`, else `Γ(k, L) = (k-1)! e^{-L} Σ_{j<k} L^j/j!`.
fn moment_tail<T: Real>(k: usize, l: T) -> T {
    let el = (-l).exp();
    if k == 0 {
        return el / l;
    }
    let mut term = T::one();
    let mut sum = T::one();
    for j in 1..k {
        term = term * l / count(j);
        sum += term;
    }
    let fact = (1..k).fold(T::one(), |acc, j| acc * count::<T>(j));
    fact * el * sum
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_ARCTAN_ORDER {
        return Err(parameter(format!(
            "arctan derivative order {k} exceeds {MAX_ARCTAN_ORDER}"
        )));
    }
    Ok(())
}

/// `∫_0^∞ v^k E1(v) g(v) dv` for `|g| ≤ 1` oscillating at frequency `freq`.
fn weighted<T: Real, G: Fn(T) -> T>(k: usize, freq: T, g: G) -> Result<Estimate<T>> {
    let width = lit::<T>(0.5).min(lit::<T>(2.0) / freq.abs().max(T::one()));
    let cfg = SemiInfiniteConfig::new(lit(SPLIT), move |l| moment_tail(k, l))
        .panels(PanelConfig::with_width(width))
        .graded();
    integrate_semi_infinite(
        |v: T| v.powi(k as i32) * e1(v).unwrap_or_else(|_| T::nan()) * g(v),
        &cfg,
    )
}

/// `∫_0^∞ v^k E1(v) dv`, whose exact value is `k!/(k+1)`.
pub fn e1_moment<T: Real>(k: usize) -> Result<Estimate<T>> {
    check_order(k)?;
    weighted(k, T::zero(), |_| T::one())
}

/// `k`-th derivative of `arctan(t)/t` with an error estimate covering the
/// truncation tail and cancellation against the moment `k!/(k+1)`.
pub fn arctan_derivative_estimate<T: Real>(k: usize, t: T) -> Result<Estimate<T>> {
    check_order(k)?;
    if !t.is_finite() {
        return Err(parameter("t must be finite"));
    }
    let est = weighted(k, t, |v| match k % 4 {
        0 => (v * t).cos(),
        1 => -(v * t).sin(),
        2 => -(v * t).cos(),
        _ => (v * t).sin(),
    })?;
    let fact = (1..=k).fold(T::one(), |acc, j| acc * count::<T>(j));
    let scale = fact / count::<T>(k + 1);
    Ok(Estimate {
        value: est.value,
        error: est.error + lit::<T>(64.0) * T::epsilon() * scale,
    })
}

/// `k`-th derivative of `arctan(t)/t`, `k ≤ 8`.
pub fn arctan_derivative<T: Real>(k: usize, t: T) -> Result<T> {
    arctan_derivative_estimate(k, t).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|j| j as f64).product()
    }

    /// Leibniz rule on arctan(t)·(1/t), using the polar formula for the
    /// arctan derivatives; well conditioned for |t| ≳ 1.
    fn leibniz(k: usize, t: f64) -> f64 {
        let atan_d = |m: usize| -> f64 {
            if m == 0 {
                return t.atan();
            }
            let r2 = 1.0 + t * t;
            let phi = 1f64.atan2(t);
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sign * factorial(m - 1) * (m as f64 * phi).sin() / r2.powf(m as f64 / 2.0)
        };
        let inv_d = |m: usize| -> f64 {
            let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * factorial(m) / t.powi(m as i32 + 1)
        };
        (0..=k)
            .map(|j| factorial(k) / (factorial(j) * factorial(k - j)) * atan_d(j) * inv_d(k - j))
            .sum()
    }

    #[test]
    fn moments_match_factorial_ratio() {
        for k in 0..=MAX_ARCTAN_ORDER {
            let m = e1_moment::<f64>(k).unwrap();
            let exact = factorial(k) / (k as f64 + 1.0);
            assert!(
                (m.value - exact).abs() <= 1e-12 * exact,
                "k={k}: {}",
                m.value
            );
            assert!(m.error < 1e-9 * exact);
        }
    }

    #[test]
    fn value_matches_arctan() {
        for t in [0.0f64, 0.3, 1.0, 2.5, 7.0, 19.0] {
            let v = arctan_derivative(0, t).unwrap();
            let exact = if t == 0.0 { 1.0 } else { t.atan() / t };
            assert!((v - exact).abs() < 1e-13, "t={t}: {v} vs {exact}");
        }
    }

    #[test]
    fn derivatives_match_leibniz() {
        for k in 1..=6 {
            for t in [1.0f64, 2.0, -3.5, 8.0] {
                let v = arctan_derivative(k, t).unwrap();
                let o = leibniz(k, t);
                assert!(
                    (v - o).abs() < 1e-11 * (1.0 + o.abs()),
                    "k={k} t={t}: {v} vs {o}"
                );
            }
        }
    }

    #[test]
    fn even_derivatives_at_zero() {
        // arctan(t)/t = Σ (-1)^j t^{2j}/(2j+1)
        for j in 0..=4 {
            let k = 2 * j;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let exact = sign * factorial(k) / (k as f64 + 1.0);
            let v = arctan_derivative(k, 0.0f64).unwrap();
            assert!((v - exact).abs() < 1e-12 * exact.abs());
        }
    }

    #[test]
    fn order_guard() {
        assert!(arctan_derivative(9, 0.5f64).is_err());
        assert!(e1_moment::<f64>(9).is_err());
    }

    #[test]
    fn tail_bound_majorizes() {
        // ∫_L^∞ v E1(v) dv = (L E1... ) is dominated by Γ(1, L) = e^{-L}.
        let l = 10.0f64;
        assert!((moment_tail::<f64>(1, l) - (-l).exp()).abs() < 1e-20);
        assert!((moment_tail::<f64>(2, l) - (-l).exp() * (1.0 + l)).abs() < 1e-18);
    }
}
