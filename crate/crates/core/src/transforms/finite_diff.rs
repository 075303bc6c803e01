//! Central finite differences with Richardson extrapolation (Ridders'
//! tableau), an oracle independent of the integral representations.

use crate::error::{parameter, Error, Result};
use crate::scalar::{count, lit, Real};

/// Largest derivative order supported.
pub const MAX_FD_ORDER: usize = 6;

/// Initial step of the tableau.
pub const DEFAULT_STEP: f64 = 0.4;

const SHRINK: f64 = 1.4;
const TABLE: usize = 14;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `k`-th central difference quotient with half-spacing `h`:
/// `Σ_j (-1)^j C(k, j) f(t + (k/2 - j) h) / h^k`.
fn central<T: Real, F: Fn(T) -> T>(f: &F, k: usize, t: T, h: T) -> Result<T> {
    let mut acc = T::zero();
    let half_k = count::<T>(k) / lit(2.0);
    for j in 0..=k {
        let x = t + (half_k - count::<T>(j)) * h;
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite {
                at: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        let c = lit::<T>(binomial(k, j));
        if j % 2 == 0 {
            acc += c * fx;
        } else {
            acc -= c * fx;
        }
    }
    Ok(acc / h.powi(k as i32))
}

/// `k`-th derivative of `f` at `t` by Ridders' extrapolation, starting from
/// [`DEFAULT_STEP`] and keeping the tableau entry with the smallest
/// error estimate. Accurate to about 1e-6 absolute for the kernel families
/// with `k ≤ 4` (`f` must be analytic within about `0.4 k` of `t`).
pub fn finite_difference_derivative<T: Real, F: Fn(T) -> T>(f: F, k: usize, t: T) -> Result<T> {
    finite_difference_derivative_with_step(f, k, t, lit(DEFAULT_STEP))
}

/// As [`finite_difference_derivative`] with initial step `h0`; all
/// evaluations stay within `t ± k·h0/2`.
pub fn finite_difference_derivative_with_step<T: Real, F: Fn(T) -> T>(
    f: F,
    k: usize,
    t: T,
    h0: T,
) -> Result<T> {
    if k > MAX_FD_ORDER {
        return Err(parameter(format!(
            "finite-difference order {k} exceeds {MAX_FD_ORDER}"
        )));
    }
    if !(h0 > T::zero()) || !t.is_finite() {
        return Err(parameter("step must be positive and t finite"));
    }
    if k == 0 {
        let v = f(t);
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                at: t.to_f64().unwrap_or(f64::NAN),
            })
        };
    }
    let con2 = lit::<T>(SHRINK * SHRINK);
    let mut h = h0;
    let mut prev: Vec<T> = vec![central(&f, k, t, h)?];
    let mut best = prev[0];
    let mut err = T::max_value();
    for _ in 1..TABLE {
        h /= lit(SHRINK);
        let mut row = Vec::with_capacity(prev.len() + 1);
        row.push(central(&f, k, t, h)?);
        let mut fac = con2;
        for j in 1..=prev.len() {
            let v = (row[j - 1] * fac - prev[j - 1]) / (fac - T::one());
            fac *= con2;
            let e = (v - row[j - 1]).abs().max((v - prev[j - 1]).abs());
            if e <= err {
                err = e;
                best = v;
            }
            row.push(v);
        }
        prev = row;
    }
    Ok(best)
}
