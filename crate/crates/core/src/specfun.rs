//! Sine, cosine, exponential and inverse tangent integrals, plus Γ and γ.
//!
//! The entire functions (Si, Cin, Ein, Shi, Cinh) have two independent
//! evaluation routes, a power series and panel quadrature of the defining
//! integral. [`eval_special`] picks one per argument range; [`series`] and
//! [`quadrature`] expose both for cross-checking.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, parameter, Error, Result};
use crate::quadrature::{integrate, integrate_semi_infinite, PanelConfig, SemiInfiniteConfig};
use crate::scalar::{count, lit, Real};
use crate::summation::CompensatedSum;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest |x| accepted by [`eval_special`].
pub const WORKING_RANGE: f64 = 50.0;

/// Below this |x| the power series is used for Si and Cin.
const SERIES_CUTOFF: f64 = 8.0;

pub fn euler_gamma<T: Real>() -> T {
    lit(EULER_GAMMA)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathConstants<T> {
    pub euler_gamma: T,
    pub pi: T,
}

impl<T: Real> Default for MathConstants<T> {
    fn default() -> Self {
        MathConstants {
            euler_gamma: euler_gamma(),
            pi: T::PI(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialFnId {
    /// ∫_0^x sin t / t dt
    Si,
    /// ∫_0^x (1 - cos t) / t dt
    Cin,
    /// γ + ln x - Cin(x), x > 0
    Ci,
    /// ∫_0^x (1 - e^{-t}) / t dt
    Ein,
    /// ∫_1^∞ e^{-xt} / t dt, x > 0
    E1,
    /// ∫_0^x sinh t / t dt
    Shi,
    /// ∫_0^x (1 - cosh t) / t dt
    Cinh,
    /// γ + ln x - Cinh(x), x > 0
    Chi,
    /// ∫_0^x arctan t / t dt
    Ti2,
}

impl SpecialFnId {
    pub const ALL: [SpecialFnId; 9] = [
        SpecialFnId::Si,
        SpecialFnId::Cin,
        SpecialFnId::Ci,
        SpecialFnId::Ein,
        SpecialFnId::E1,
        SpecialFnId::Shi,
        SpecialFnId::Cinh,
        SpecialFnId::Chi,
        SpecialFnId::Ti2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialFnId::Si => "si",
            SpecialFnId::Cin => "cin",
            SpecialFnId::Ci => "ci",
            SpecialFnId::Ein => "ein",
            SpecialFnId::E1 => "e1",
            SpecialFnId::Shi => "shi",
            SpecialFnId::Cinh => "cinh",
            SpecialFnId::Chi => "chi",
            SpecialFnId::Ti2 => "ti2",
        }
    }

    /// Ci, Chi and E1 are defined for x > 0 only.
    pub fn requires_positive(self) -> bool {
        matches!(self, SpecialFnId::Ci | SpecialFnId::Chi | SpecialFnId::E1)
    }
}

impl fmt::Display for SpecialFnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialFnId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpecialFnId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| parameter(format!("unknown special function '{s}'")))
    }
}

/// Evaluates a special function. Absolute accuracy is about 1e-14 for
/// |x| <= 40 (relative for the exponentially growing Shi, Cinh, Chi).
pub fn eval_special<T: Real>(id: SpecialFnId, x: T) -> Result<T> {
    if !x.is_finite() || x.abs() > lit(WORKING_RANGE) {
        return Err(domain(format!(
            "{id}: |x| must be <= {WORKING_RANGE}, got {x}"
        )));
    }
    if id.requires_positive() && !(x > T::zero()) {
        return Err(domain(format!("{id}: x must be positive, got {x}")));
    }
    let cutoff = lit::<T>(SERIES_CUTOFF);
    let g = euler_gamma::<T>();
    Ok(match id {
        SpecialFnId::Si => {
            if x.abs() <= cutoff {
                si_series(x)
            } else {
                quadrature(id, x)?
            }
        }
        SpecialFnId::Cin => {
            if x.abs() <= cutoff {
                cin_series(x)
            } else {
                quadrature(id, x)?
            }
        }
        SpecialFnId::Ci => g + x.ln() - eval_special(SpecialFnId::Cin, x)?,
        SpecialFnId::Ein => {
            if x <= lit(2.0) {
                ein_series(x)
            } else {
                x.ln() + g + e1_continued_fraction(x)
            }
        }
        SpecialFnId::E1 => {
            if x <= T::one() {
                -g - x.ln() + ein_series(x)
            } else {
                e1_continued_fraction(x)
            }
        }
        SpecialFnId::Shi => shi_series(x),
        SpecialFnId::Cinh => cinh_series(x),
        SpecialFnId::Chi => g + x.ln() - cinh_series(x),
        SpecialFnId::Ti2 => ti2(x)?,
    })
}

pub fn si<T: Real>(x: T) -> Result<T> {
    eval_special(SpecialFnId::Si, x)
}

pub fn cin<T: Real>(x: T) -> Result<T> {
    eval_special(SpecialFnId::Cin, x)
}

pub fn ci<T: Real>(x: T) -> Result<T> {
    eval_special(SpecialFnId::Ci, x)
}

pub fn ein<T: Real>(x: T) -> Result<T> {
    eval_special(SpecialFnId::Ein, x)
}

/// E1 without the working-range cap (used inside semi-infinite integrands).
pub fn e1<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain(format!("e1: x must be positive, got {x}")));
    }
    if x <= T::one() {
        Ok(-euler_gamma::<T>() - x.ln() + ein_series(x))
    } else {
        Ok(e1_continued_fraction(x))
    }
}

/// Power-series route. `None` where no convergent series is used
/// (Ci, Chi; E1 above 1; Ti2 outside |x| <= 1).
pub fn series<T: Real>(id: SpecialFnId, x: T) -> Option<T> {
    match id {
        SpecialFnId::Si => Some(si_series(x)),
        SpecialFnId::Cin => Some(cin_series(x)),
        SpecialFnId::Ein => Some(ein_series(x)),
        SpecialFnId::Shi => Some(shi_series(x)),
        SpecialFnId::Cinh => Some(cinh_series(x)),
        SpecialFnId::E1 if x > T::zero() && x <= T::one() => {
            Some(-euler_gamma::<T>() - x.ln() + ein_series(x))
        }
        SpecialFnId::Ti2 if x.abs() <= T::one() => Some(ti2_series(x)),
        _ => None,
    }
}

/// Panel-quadrature route through the defining integral.
pub fn quadrature<T: Real>(id: SpecialFnId, x: T) -> Result<T> {
    let cfg = PanelConfig::default();
    let signed = |f: fn(T) -> T, odd_integrand: bool| -> Result<T> {
        let v = integrate(f, T::zero(), x.abs(), &cfg)?;
        // Odd integrands give even primitives and vice versa.
        Ok(if x < T::zero() && !odd_integrand {
            -v
        } else {
            v
        })
    };
    match id {
        SpecialFnId::Si => signed(sinc, false),
        SpecialFnId::Cin => signed(cin_integrand, true),
        SpecialFnId::Shi => signed(shi_integrand, false),
        SpecialFnId::Cinh => signed(cinh_integrand, true),
        SpecialFnId::Ti2 => signed(atan_over_t, false),
        SpecialFnId::Ein => integrate(ein_integrand, x.min(T::zero()), x.max(T::zero()), &cfg)
            .map(|v| if x < T::zero() { -v } else { v }),
        SpecialFnId::Ci => Ok(euler_gamma::<T>() + x.ln() - quadrature(SpecialFnId::Cin, x)?),
        SpecialFnId::Chi => Ok(euler_gamma::<T>() + x.ln() - quadrature(SpecialFnId::Cinh, x)?),
        SpecialFnId::E1 => {
            if !(x > T::zero()) {
                return Err(domain("e1: x must be positive"));
            }
            // ∫_1^L e^{-xt}/t dt; tail ≤ e^{-xL}/(xL).
            let split = T::one() + lit::<T>(40.0) / x;
            let sc = SemiInfiniteConfig::new(split, move |l: T| (-x * l).exp() / (x * l))
                .lower(T::one())
                .panels(PanelConfig::with_width(
                    lit::<T>(0.5).min(lit::<T>(2.0) / x),
                ));
            Ok(integrate_semi_infinite(|t: T| (-x * t).exp() / t, &sc)?.value)
        }
    }
}

fn sinc<T: Real>(t: T) -> T {
    if t.abs() < lit(1e-8) {
        T::one() - t * t / lit(6.0)
    } else {
        t.sin() / t
    }
}

fn cin_integrand<T: Real>(t: T) -> T {
    if t.abs() < lit(1e-8) {
        t / lit(2.0)
    } else {
        let h = (t / lit(2.0)).sin();
        lit::<T>(2.0) * h * h / t
    }
}

fn ein_integrand<T: Real>(t: T) -> T {
    if t.abs() < lit(1e-8) {
        T::one() - t / lit(2.0)
    } else {
        -(-t).exp_m1() / t
    }
}

fn shi_integrand<T: Real>(t: T) -> T {
    if t.abs() < lit(1e-8) {
        T::one()
    } else {
        t.sinh() / t
    }
}

fn cinh_integrand<T: Real>(t: T) -> T {
    if t.abs() < lit(1e-8) {
        -t / lit(2.0)
    } else {
        let h = (t / lit(2.0)).sinh();
        -lit::<T>(2.0) * h * h / t
    }
}

fn atan_over_t<T: Real>(t: T) -> T {
    if t.abs() < lit(1e-8) {
        T::one() - t * t / lit(3.0)
    } else {
        t.atan() / t
    }
}

const MAX_TERMS: usize = 1000;

/// Sums `Σ_{m≥m0} a_m / d_m` where `a_{m+1} = a_m * ratio(m)`; stops when a
/// term drops below 1e-17 of the running sum.
fn ratio_series<T: Real>(
    first: T,
    m0: usize,
    ratio: impl Fn(usize) -> T,
    denom: impl Fn(usize) -> T,
) -> T {
    let mut acc = CompensatedSum::new();
    let mut a = first;
    let tiny = lit::<T>(1e-17);
    for m in m0..m0 + MAX_TERMS {
        let term = a / denom(m);
        acc.add(term);
        if term.abs() <= tiny * acc.value().abs() || term == T::zero() {
            break;
        }
        a *= ratio(m);
    }
    acc.value()
}

fn si_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    ratio_series(
        x,
        0,
        |m| -x2 / (count::<T>(2 * m + 2) * count::<T>(2 * m + 3)),
        |m| count(2 * m + 1),
    )
}

fn cin_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    if x2 == T::zero() {
        return T::zero();
    }
    ratio_series(
        x2 / lit(2.0),
        1,
        |m| -x2 / (count::<T>(2 * m + 1) * count::<T>(2 * m + 2)),
        |m| count(2 * m),
    )
}

fn ein_series<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    ratio_series(x, 1, |m| -x / count::<T>(m + 1), count)
}

fn shi_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    ratio_series(
        x,
        0,
        |m| x2 / (count::<T>(2 * m + 2) * count::<T>(2 * m + 3)),
        |m| count(2 * m + 1),
    )
}

fn cinh_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    if x2 == T::zero() {
        return T::zero();
    }
    -ratio_series(
        x2 / lit(2.0),
        1,
        |m| x2 / (count::<T>(2 * m + 1) * count::<T>(2 * m + 2)),
        |m| count(2 * m),
    )
}

/// Σ (-1)^m x^{2m+1} / (2m+1)², |x| <= 1 (slow at |x| = 1).
fn ti2_series<T: Real>(x: T) -> T {
    if x.abs() > lit(0.5) {
        return x.signum() * ti2_accelerated(x.abs());
    }
    let x2 = x * x;
    ratio_series(
        x,
        0,
        |_| -x2,
        |m| {
            let d = count::<T>(2 * m + 1);
            d * d
        },
    )
}

/// `Σ (-1)^k x^{2k+1}/(2k+1)²` for `0 < x ≤ 1` by the Cohen-Villegas-Zagier
/// acceleration; the terms form a moment sequence, so the error is about
/// `5.83^{-TERMS}` times the first term.
fn ti2_accelerated<T: Real>(x: T) -> T {
    const TERMS: usize = 32;
    let n = count::<T>(TERMS);
    let d0 = (lit::<T>(3.0) + lit::<T>(8.0).sqrt()).powi(TERMS as i32);
    let d = (d0 + d0.recip()) / lit(2.0);
    let x2 = x * x;
    let mut b = -T::one();
    let mut c = -d;
    let mut power = x;
    let mut acc = CompensatedSum::new();
    for k in 0..TERMS {
        let kk = count::<T>(k);
        let den = count::<T>(2 * k + 1);
        c = b - c;
        acc.add(c * power / (den * den));
        b = b * (kk + n) * (kk - n) / ((kk + lit(0.5)) * (kk + T::one()));
        power *= x2;
    }
    acc.value() / d
}

fn ti2<T: Real>(x: T) -> Result<T> {
    let ax = x.abs();
    let sign = if x < T::zero() { -T::one() } else { T::one() };
    let v = if ax <= T::one() {
        ti2_series(ax)
    } else {
        // Ti2(x) = Ti2(1/x) + (π/2) ln x for x > 0.
        ti2_series(ax.recip()) + T::FRAC_PI_2() * ax.ln()
    };
    Ok(sign * v)
}

/// E1 by the modified-Lentz continued fraction, valid for x > 1.
fn e1_continued_fraction<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one();
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -count::<T>(i * i);
        b += lit(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let del = c * d;
        h *= del;
        if (del - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    h * (-x).exp()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(κ) for 0 < κ <= 20 (Lanczos, with reflection below 1/2).
pub fn gamma_function<T: Real>(kappa: T) -> Result<T> {
    if !(kappa > T::zero()) || kappa > lit(20.0) {
        return Err(domain(format!("gamma: need 0 < κ <= 20, got {kappa}")));
    }
    Ok(lanczos_gamma(kappa))
}

fn lanczos_gamma<T: Real>(z: T) -> T {
    if z < lit(0.5) {
        return T::PI() / ((T::PI() * z).sin() * lanczos_gamma(T::one() - z));
    }
    // Exact for small integers.
    if z == z.round() && z <= lit(20.0) {
        let n = z.to_usize().unwrap_or(1);
        return (1..n).fold(T::one(), |acc, j| acc * count::<T>(j));
    }
    let z = z - T::one();
    let mut a = lit::<T>(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += lit::<T>(c) / (z + count(i));
    }
    let t = z + lit(LANCZOS_G + 0.5);
    (T::PI() * lit(2.0)).sqrt() * t.powf(z + lit(0.5)) * (-t).exp() * a
}
