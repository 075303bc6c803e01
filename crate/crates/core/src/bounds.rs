//! Closed-form derivative bounds and the Simpson error bound built on them.

use crate::error::{domain, parameter, Error, Result};
use crate::scalar::{count, lit, Real};
use crate::transforms::tan::tan_even_bound;
use crate::transforms::KernelFamily;

/// Largest `n + k + 1` accepted by [`taylor_bound`] (factorials up to 20!
/// fit in `u64`).
pub const MAX_FACTORIAL: usize = 20;

/// Derivative orders for which a bound is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Always,
}

impl Parity {
    pub fn matches(self, k: usize) -> bool {
        match self {
            Parity::Even => k.is_multiple_of(2),
            Parity::Odd => k % 2 == 1,
            Parity::Always => true,
        }
    }
}

/// A bound together with where (if anywhere) it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult<T> {
    pub value: T,
    /// Point where `|derivative| = value`, present only for the queried `k`.
    pub sharp_at: Option<T>,
    /// Orders `k` for which the family's bound is sharp.
    pub parity: Option<Parity>,
}

impl<T: Real> BoundResult<T> {
    fn plain(value: T) -> Self {
        BoundResult {
            value,
            sharp_at: None,
            parity: None,
        }
    }
}

fn factorial_u64(n: usize) -> u64 {
    (2..=n as u64).product()
}

/// `k! M / (n+k+1)!`, the bound on the `k`-th derivative of a Taylor
/// quotient of order `n` whose base satisfies `|f^(n+k+1)| ≤ M`.
pub fn taylor_bound<T: Real>(n: usize, k: usize, m: T) -> Result<BoundResult<T>> {
    if n + k + 1 > MAX_FACTORIAL {
        return Err(parameter(format!(
            "n + k + 1 = {} exceeds {MAX_FACTORIAL}",
            n + k + 1
        )));
    }
    if !(m > T::zero()) || !m.is_finite() {
        return Err(parameter("M must be positive and finite"));
    }
    // k!/(n+k+1)! = 1/((k+1)(k+2)...(n+k+1)), an exact integer product.
    let denom: u64 = (k as u64 + 1..=(n + k + 1) as u64).product();
    let value = m / lit::<T>(denom as f64);
    Ok(BoundResult::plain(value))
}

/// The bound on the `k`-th derivative of a family's function at `t`.
/// For [`KernelFamily::TanEven`], `k` is the half-order (derivative `2k`).
pub fn family_bound<T: Real>(family: &KernelFamily<T>, k: usize, t: T) -> Result<BoundResult<T>> {
    if !t.is_finite() {
        return Err(domain("t must be finite"));
    }
    let at_zero = |parity: Parity, value: T, t_dependent: bool| -> BoundResult<T> {
        let sharp = parity.matches(k) && (!t_dependent || t == T::zero());
        BoundResult {
            value,
            sharp_at: sharp.then(T::zero),
            parity: Some(parity),
        }
    };
    let kp1 = count::<T>(k + 1);
    Ok(match family {
        KernelFamily::Sinc => at_zero(Parity::Even, taylor_bound(0, k, T::one())?.value, false),
        KernelFamily::CinKernel => at_zero(Parity::Odd, taylor_bound(0, k, T::one())?.value, false),
        KernelFamily::EinKernel => {
            at_zero(Parity::Always, taylor_bound(0, k, T::one())?.value, false)
        }
        KernelFamily::CinOverT2 => {
            at_zero(Parity::Even, taylor_bound(1, k, T::one())?.value, false)
        }
        KernelFamily::SinhOverT => {
            let v = if k.is_multiple_of(2) {
                t.cosh()
            } else {
                t.sinh().abs()
            };
            at_zero(Parity::Always, v / kp1, true)
        }
        KernelFamily::CoshKernel => {
            let v = if k.is_multiple_of(2) {
                t.sinh().abs()
            } else {
                t.cosh()
            };
            at_zero(Parity::Always, v / kp1, true)
        }
        KernelFamily::ArcTanOverT => {
            if k > MAX_FACTORIAL {
                return Err(parameter(format!("k = {k} exceeds {MAX_FACTORIAL}")));
            }
            let v = lit::<T>(factorial_u64(k) as f64) / kp1;
            at_zero(Parity::Even, v, false)
        }
        KernelFamily::TanEven => {
            if 2 * k > MAX_FACTORIAL {
                return Err(parameter(format!("2k = {} exceeds {MAX_FACTORIAL}", 2 * k)));
            }
            BoundResult::plain(tan_even_bound(k, t)?)
        }
        KernelFamily::QIntegrand { .. } => {
            return Err(Error::Unsupported(
                "the q-integrand has no closed-form derivative bound".into(),
            ))
        }
    })
}

fn check_simpson(m4: f64, n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(parameter(format!("n must be even and at least 2, got {n}")));
    }
    if !(m4 >= 0.0) || !m4.is_finite() {
        return Err(parameter("M4 must be nonnegative and finite"));
    }
    Ok(())
}

/// `x⁵ M4 / (180 n⁴)`, the composite Simpson error bound on `[0, x]`.
pub fn simpson_error_bound<T: Real>(m4: T, x: T, n: usize) -> Result<T> {
    simpson_error_bound_interval(m4, T::zero(), x, n)
}

/// `(b-a)⁵ M4 / (180 n⁴)` on `[a, b]`.
pub fn simpson_error_bound_interval<T: Real>(m4: T, a: T, b: T, n: usize) -> Result<T> {
    check_simpson(m4.to_f64().unwrap_or(f64::NAN), n)?;
    if !(b >= a) || !a.is_finite() || !b.is_finite() {
        return Err(parameter("interval must be finite with a ≤ b"));
    }
    let nn = count::<T>(n);
    Ok((b - a).powi(5) * m4 / (lit::<T>(180.0) * nn.powi(4)))
}
