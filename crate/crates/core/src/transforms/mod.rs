//! Derivatives by differentiating under the integral sign.
//!
//! A function with `n + 1` continuous derivatives satisfies
//!
//! ```text
//! (f(t) - Σ_{j≤n} (t-a)^j f^(j)(a)/j!) / (t-a)^{n+1} = (1/n!) ∫_0^1 (1-s)^n f^(n+1)((t-a)s + a) ds
//! ```
//!
//! so the `k`-th derivative of the left side is
//! `(1/n!) ∫_0^1 s^k (1-s)^n f^(n+k+1)((t-a)s + a) ds`, which is smooth and
//! easy to bound even where the closed form of the left side is not.
//! `sin t / t`, `(1 - cos t)/t`, `(1 - cos t)/t²`, `(1 - e^{-t})/t` and the
//! hyperbolic analogues are all of this form with `a = 0`.
//!
//! Two families use other representations: `arctan(t)/t` is a cosine
//! transform of `E1` ([`arctan`]) and the even derivatives of `tan t` come
//! from a Laplace-type integral ([`tan`]).

pub mod arctan;
pub mod closed_form;
pub mod finite_diff;
pub mod tan;

use std::fmt;
use std::str::FromStr;

pub use arctan::{arctan_derivative, e1_moment};
pub use finite_diff::{finite_difference_derivative, finite_difference_derivative_with_step};
pub use tan::tan_even_derivative;

use crate::error::{domain, parameter, Error, Result};
use crate::quadrature::{integrate, PanelConfig};
use crate::scalar::{count, lit, Real};
use crate::specfun;

/// Largest derivative order accepted by [`transform_derivative`].
pub const MAX_DERIVATIVE_ORDER: usize = 12;

/// Base function `f` of a Taylor-quotient family. Derivatives of every order
/// are closed form (sin/cos and sinh/cosh cycle, exp scales, arctan has a
/// polar formula).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseFunction {
    Sin,
    NegCos,
    /// `-e^{-t}`
    NegExpNeg,
    Sinh,
    NegCosh,
    Atan,
}

impl BaseFunction {
    /// `f^(order)(t)`.
    pub fn derivative<T: Real>(self, order: usize, t: T) -> T {
        match self {
            BaseFunction::Sin => sin_cycle(order, t),
            BaseFunction::NegCos => -sin_cycle(order + 1, t),
            BaseFunction::NegExpNeg => {
                let e = (-t).exp();
                if order.is_multiple_of(2) {
                    -e
                } else {
                    e
                }
            }
            BaseFunction::Sinh => {
                if order.is_multiple_of(2) {
                    t.sinh()
                } else {
                    t.cosh()
                }
            }
            BaseFunction::NegCosh => {
                if order.is_multiple_of(2) {
                    -t.cosh()
                } else {
                    -t.sinh()
                }
            }
            BaseFunction::Atan => atan_derivative(order, t),
        }
    }
}

/// `sin^(order)(t) = sin(t + order·π/2)`, by the 4-cycle.
fn sin_cycle<T: Real>(order: usize, t: T) -> T {
    match order % 4 {
        0 => t.sin(),
        1 => t.cos(),
        2 => -t.sin(),
        _ => -t.cos(),
    }
}

/// `d^m/dt^m arctan t = (-1)^{m-1} (m-1)! sin(mφ) / (1+t²)^{m/2}`, φ = atan2(1, t).
fn atan_derivative<T: Real>(order: usize, t: T) -> T {
    if order == 0 {
        return t.atan();
    }
    let m = count::<T>(order);
    let phi = T::one().atan2(t);
    let fact = (1..order).fold(T::one(), |acc, j| acc * count::<T>(j));
    let sign = if order % 2 == 1 { T::one() } else { -T::one() };
    sign * fact * (m * phi).sin() / (T::one() + t * t).powf(m / lit(2.0))
}

/// The function families with integral representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily<T> {
    /// `sin t / t`, with value 1 at 0.
    Sinc,
    /// `(1 - cos t) / t`, the Cin integrand.
    CinKernel,
    /// `(1 - cos t) / t²`.
    CinOverT2,
    /// `(1 - e^{-t}) / t`, the Ein integrand. Its continuous value at 0 is 1,
    /// the value of `∫_0^1 e^{-st} ds`.
    EinKernel,
    /// `sinh t / t`.
    SinhOverT,
    /// `(1 - cosh t) / t`, the Cinh integrand.
    CoshKernel,
    /// `arctan(t) / t`.
    ArcTanOverT,
    /// `tan t`; derivative order `k` means the `2k`-th derivative.
    TanEven,
    /// `t^{-2κ} e^{-ut} e^{κ Ein(t)}` for t > 0.
    QIntegrand { kappa: T, u: T },
}

impl<T: Real> KernelFamily<T> {
    /// Families with closed-form bounds, in a fixed order.
    pub fn bounded() -> [KernelFamily<T>; 8] {
        [
            KernelFamily::Sinc,
            KernelFamily::CinKernel,
            KernelFamily::CinOverT2,
            KernelFamily::EinKernel,
            KernelFamily::SinhOverT,
            KernelFamily::CoshKernel,
            KernelFamily::ArcTanOverT,
            KernelFamily::TanEven,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::Sinc => "sinc",
            KernelFamily::CinKernel => "cin",
            KernelFamily::CinOverT2 => "cin2",
            KernelFamily::EinKernel => "ein",
            KernelFamily::SinhOverT => "shi",
            KernelFamily::CoshKernel => "cinh",
            KernelFamily::ArcTanOverT => "atan",
            KernelFamily::TanEven => "tan",
            KernelFamily::QIntegrand { .. } => "qint",
        }
    }

    /// Base function when the family is a Taylor quotient.
    pub fn base(&self) -> Option<BaseFunction> {
        match self {
            KernelFamily::Sinc => Some(BaseFunction::Sin),
            KernelFamily::CinKernel | KernelFamily::CinOverT2 => Some(BaseFunction::NegCos),
            KernelFamily::EinKernel => Some(BaseFunction::NegExpNeg),
            KernelFamily::SinhOverT => Some(BaseFunction::Sinh),
            KernelFamily::CoshKernel => Some(BaseFunction::NegCosh),
            KernelFamily::ArcTanOverT => Some(BaseFunction::Atan),
            KernelFamily::TanEven | KernelFamily::QIntegrand { .. } => None,
        }
    }

    /// Taylor order `n` of the family's own quotient.
    pub fn canonical_order(&self) -> usize {
        match self {
            KernelFamily::CinOverT2 => 1,
            _ => 0,
        }
    }

    /// Sup of |f^(j)| over the working domain, for every j ≥ 1.
    pub fn default_m_bound(&self) -> T {
        match self {
            KernelFamily::SinhOverT | KernelFamily::CoshKernel => self.working_domain().1.cosh(),
            _ => T::one(),
        }
    }

    /// Whether `t` lies in the domain where the family is defined.
    pub fn contains(&self, t: T) -> bool {
        if !t.is_finite() {
            return false;
        }
        match self {
            KernelFamily::TanEven => t.abs() < T::FRAC_PI_2(),
            KernelFamily::QIntegrand { .. } => t > T::zero(),
            _ => true,
        }
    }

    /// Interval used for sampling bound and sharpness properties. For
    /// EinKernel it is `t ≥ 0`, where `e^{-st} ≤ 1`.
    pub fn working_domain(&self) -> (T, T) {
        let sym = |r: f64| (lit::<T>(-r), lit::<T>(r));
        match self {
            KernelFamily::Sinc | KernelFamily::CinKernel | KernelFamily::CinOverT2 => sym(50.0),
            KernelFamily::EinKernel => (T::zero(), lit(50.0)),
            KernelFamily::SinhOverT | KernelFamily::CoshKernel => sym(10.0),
            KernelFamily::ArcTanOverT => sym(20.0),
            KernelFamily::TanEven => sym(1.5),
            KernelFamily::QIntegrand { .. } => (T::one(), lit(10.0)),
        }
    }

    /// Continuous extension of the family's own function at `t`.
    fn closed_value(&self, t: T) -> Result<T> {
        let small = t.abs() < lit(1e-8);
        let two = lit::<T>(2.0);
        Ok(match *self {
            KernelFamily::Sinc => {
                if small {
                    T::one() - t * t / lit(6.0)
                } else {
                    t.sin() / t
                }
            }
            KernelFamily::CinKernel => {
                if small {
                    t / two
                } else {
                    let h = (t / two).sin();
                    two * h * h / t
                }
            }
            KernelFamily::CinOverT2 => {
                if small {
                    T::one() / two - t * t / lit(24.0)
                } else {
                    let r = (t / two).sin() / (t / two);
                    r * r / two
                }
            }
            KernelFamily::EinKernel => {
                if small {
                    T::one() - t / two
                } else {
                    -(-t).exp_m1() / t
                }
            }
            KernelFamily::SinhOverT => {
                if small {
                    T::one() + t * t / lit(6.0)
                } else {
                    t.sinh() / t
                }
            }
            KernelFamily::CoshKernel => {
                if small {
                    -t / two
                } else {
                    let h = (t / two).sinh();
                    -two * h * h / t
                }
            }
            KernelFamily::ArcTanOverT => {
                if small {
                    T::one() - t * t / lit(3.0)
                } else {
                    t.atan() / t
                }
            }
            KernelFamily::TanEven => t.tan(),
            KernelFamily::QIntegrand { kappa, u } => {
                let ein = specfun::ein(t)?;
                (-two * kappa * t.ln() - u * t + kappa * ein).exp()
            }
        })
    }
}

impl<T: Real> fmt::Display for KernelFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelFamily::QIntegrand { kappa, u } => write!(f, "qint(kappa={kappa}, u={u})"),
            other => f.write_str(other.name()),
        }
    }
}

impl<T: Real> FromStr for KernelFamily<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::bounded()
            .into_iter()
            .find(|fam| fam.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| parameter(format!("unknown kernel family '{s}'")))
    }
}

/// A family together with the expansion point `a`, Taylor order `n`, and a
/// uniform bound `M` on the base function's derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorKernelSpec<T> {
    pub family: KernelFamily<T>,
    pub a: T,
    pub n: usize,
    pub m_bound: T,
}

impl<T: Real> TaylorKernelSpec<T> {
    /// The family's own function (`a = 0`, its natural `n`).
    pub fn canonical(family: KernelFamily<T>) -> Self {
        TaylorKernelSpec {
            family,
            a: T::zero(),
            n: family.canonical_order(),
            m_bound: family.default_m_bound(),
        }
    }

    /// A general Taylor quotient of the family's base function.
    pub fn new(family: KernelFamily<T>, a: T, n: usize, m_bound: T) -> Result<Self> {
        if !(m_bound > T::zero()) {
            return Err(parameter("M must be positive"));
        }
        if !a.is_finite() {
            return Err(parameter("expansion point must be finite"));
        }
        let spec = TaylorKernelSpec {
            family,
            a,
            n,
            m_bound,
        };
        if !spec.is_canonical() && family.base().is_none() {
            return Err(parameter(format!(
                "{family} has no Taylor-quotient form; only the canonical spec is allowed"
            )));
        }
        Ok(spec)
    }

    pub fn is_canonical(&self) -> bool {
        self.a == T::zero() && self.n == self.family.canonical_order()
    }
}

fn factorial<T: Real>(n: usize) -> T {
    (2..=n).fold(T::one(), |acc, j| acc * count::<T>(j))
}

/// Panel layout for `∫_0^1 g(s) ds` where `g` oscillates like `e^{i(t-a)s}`.
fn unit_panels<T: Real>(span: T) -> PanelConfig<T> {
    let panels = (span.abs() / lit(2.0)).ceil().max(lit(2.0));
    PanelConfig::with_width(panels.recip())
}

/// Value of the Taylor quotient `(f(t) - Σ Taylor)/(t-a)^{n+1}`; at `t = a`
/// this is `f^(n+1)(a)/(n+1)!`.
pub fn ratio_value<T: Real>(spec: &TaylorKernelSpec<T>, t: T) -> Result<T> {
    if !spec.family.contains(t) {
        return Err(domain(format!(
            "t = {t} outside the domain of {}",
            spec.family
        )));
    }
    if spec.is_canonical() {
        return spec.family.closed_value(t);
    }
    let base = spec
        .family
        .base()
        .ok_or_else(|| Error::Unsupported(format!("{} has no Taylor form", spec.family)))?;
    let (a, n) = (spec.a, spec.n);
    let dt = t - a;
    let v = integrate(
        |s: T| (T::one() - s).powi(n as i32) * base.derivative(n + 1, dt * s + a),
        T::zero(),
        T::one(),
        &unit_panels(dt),
    )?;
    Ok(v / factorial::<T>(n))
}

/// `k`-th derivative of the family's function at `t`, through its integral
/// representation. For [`KernelFamily::TanEven`] this is the `2k`-th
/// derivative of `tan`.
pub fn transform_derivative<T: Real>(spec: &TaylorKernelSpec<T>, k: usize, t: T) -> Result<T> {
    if k > MAX_DERIVATIVE_ORDER {
        return Err(parameter(format!(
            "derivative order {k} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    if !spec.family.contains(t) {
        return Err(domain(format!(
            "t = {t} outside the domain of {}",
            spec.family
        )));
    }
    match spec.family {
        KernelFamily::ArcTanOverT if spec.is_canonical() => arctan_derivative(k, t),
        KernelFamily::TanEven => tan_even_derivative(k, t),
        KernelFamily::QIntegrand { kappa, u } => {
            let grid = crate::lambda::build_lambda_grid(
                kappa,
                crate::lambda::DEFAULT_V_MAX,
                crate::lambda::DEFAULT_STEP_EXP,
            )?;
            let q = crate::lambda::QIntSpec::new(kappa, u, t, t + T::one())?;
            Ok(crate::lambda::q_derivative(&q, k, t, &grid)?.value)
        }
        _ => taylor_derivative(spec, k, t),
    }
}

/// `(1/n!) ∫_0^1 s^k (1-s)^n f^(n+k+1)((t-a)s + a) ds`, the Taylor-quotient
/// route, available for every family with a base function.
pub fn taylor_derivative<T: Real>(spec: &TaylorKernelSpec<T>, k: usize, t: T) -> Result<T> {
    if k > MAX_DERIVATIVE_ORDER {
        return Err(parameter(format!(
            "derivative order {k} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let base = spec
        .family
        .base()
        .ok_or_else(|| Error::Unsupported(format!("{} has no Taylor form", spec.family)))?;
    let (a, n) = (spec.a, spec.n);
    let dt = t - a;
    let v = integrate(
        |s: T| {
            s.powi(k as i32)
                * (T::one() - s).powi(n as i32)
                * base.derivative(n + k + 1, dt * s + a)
        },
        T::zero(),
        T::one(),
        &unit_panels(dt),
    )?;
    Ok(v / factorial::<T>(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn canon(f: KernelFamily<f64>) -> TaylorKernelSpec<f64> {
        TaylorKernelSpec::canonical(f)
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_value(&canon(KernelFamily::Sinc), 0.0).unwrap(), 1.0);
        assert_eq!(
            ratio_value(&canon(KernelFamily::CinOverT2), 0.0).unwrap(),
            0.5
        );
        assert_abs_diff_eq!(
            ratio_value(&canon(KernelFamily::ArcTanOverT), 1.0).unwrap(),
            std::f64::consts::FRAC_PI_4,
            epsilon = 1e-15
        );
        assert_eq!(
            ratio_value(&canon(KernelFamily::EinKernel), 0.0).unwrap(),
            1.0
        );
    }

    #[test]
    fn cin_kernel_removable_point() {
        let v = ratio_value(&canon(KernelFamily::CinKernel), 1e-12).unwrap();
        assert_abs_diff_eq!(v, 5e-13, epsilon = 1e-25);
    }

    #[test]
    fn tan_domain_error() {
        let spec = canon(KernelFamily::TanEven);
        assert!(matches!(ratio_value(&spec, 1.6), Err(Error::Domain(_))));
        assert!(matches!(
            transform_derivative(&spec, 1, -1.6),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        let d = |f, k, t| transform_derivative(&canon(f), k, t).unwrap();
        assert_abs_diff_eq!(d(KernelFamily::Sinc, 4, 0.0), 0.2, epsilon = 1e-15);
        assert_eq!(d(KernelFamily::CinKernel, 4, 0.0), 0.0);
        assert_abs_diff_eq!(
            d(KernelFamily::CinOverT2, 4, 0.0),
            1.0 / 30.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(d(KernelFamily::EinKernel, 1, 0.0), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn order_guard() {
        let spec = canon(KernelFamily::Sinc);
        assert!(matches!(
            transform_derivative(&spec, 13, 0.0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn quadrature_ratio_matches_closed_form_off_canonical() {
        // Sinc spec with n = 1 is (sin t - t)/t²; compare with a direct formula
        // where it is well conditioned.
        let spec = TaylorKernelSpec::new(KernelFamily::Sinc, 0.0, 1, 1.0).unwrap();
        for t in [1.5f64, 3.0, -7.0] {
            let direct = (t.sin() - t) / (t * t);
            assert_abs_diff_eq!(ratio_value(&spec, t).unwrap(), direct, epsilon = 1e-14);
        }
        // Shifted expansion point: (sin t - sin 1)/(t - 1).
        let spec = TaylorKernelSpec::new(KernelFamily::Sinc, 1.0, 0, 1.0).unwrap();
        let t = 2.5f64;
        assert_abs_diff_eq!(
            ratio_value(&spec, t).unwrap(),
            (t.sin() - 1f64.sin()) / (t - 1.0),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            ratio_value(&spec, 1.0).unwrap(),
            1f64.cos(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn canonical_closed_values_match_integral_form() {
        for fam in [
            KernelFamily::Sinc,
            KernelFamily::CinKernel,
            KernelFamily::CinOverT2,
            KernelFamily::EinKernel,
            KernelFamily::SinhOverT,
            KernelFamily::CoshKernel,
            KernelFamily::ArcTanOverT,
        ] {
            let spec = canon(fam);
            for t in [-3.0f64, -0.2, 0.0, 1e-9, 0.7, 4.0] {
                let closed = ratio_value(&spec, t).unwrap();
                let integral = taylor_derivative(&spec, 0, t).unwrap();
                assert!(
                    (closed - integral).abs() < 1e-14,
                    "{fam} at {t}: {closed} vs {integral}"
                );
            }
        }
    }

    #[test]
    fn base_derivative_cycles() {
        let t = 0.37f64;
        for order in 0..8 {
            let s = BaseFunction::Sin.derivative(order, t);
            assert_abs_diff_eq!(
                s,
                (t + order as f64 * std::f64::consts::FRAC_PI_2).sin(),
                epsilon = 4e-15
            );
        }
        assert_abs_diff_eq!(
            BaseFunction::Atan.derivative(1, t),
            1.0 / (1.0 + t * t),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            BaseFunction::Atan.derivative(2, t),
            -2.0 * t / (1.0 + t * t).powi(2),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            BaseFunction::Atan.derivative(3, t),
            (6.0 * t * t - 2.0) / (1.0 + t * t).powi(3),
            epsilon = 1e-14
        );
    }

    #[test]
    fn unit_m_bound_valid_for_trig_and_exp() {
        for fam in [
            KernelFamily::<f64>::Sinc,
            KernelFamily::CinKernel,
            KernelFamily::CinOverT2,
            KernelFamily::EinKernel,
        ] {
            let base = fam.base().unwrap();
            let (lo, hi): (f64, f64) = fam.working_domain();
            assert_eq!(fam.default_m_bound(), 1.0);
            for i in 0..1000 {
                let t = lo + (hi - lo) * i as f64 / 999.0;
                for j in 1..=13 {
                    assert!(base.derivative(j, t).abs() <= 1.0 + 1e-15);
                }
            }
        }
    }

    #[test]
    fn non_taylor_family_rejects_general_spec() {
        assert!(TaylorKernelSpec::new(KernelFamily::TanEven, 0.5, 0, 1.0).is_err());
        assert!(TaylorKernelSpec::new(KernelFamily::Sinc, 0.0, 0, 0.0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for fam in KernelFamily::<f64>::bounded() {
            assert_eq!(fam.name().parse::<KernelFamily<f64>>().unwrap(), fam);
        }
    }

    #[test]
    fn f32_transform() {
        let spec = TaylorKernelSpec::<f32>::canonical(KernelFamily::Sinc);
        let v = transform_derivative(&spec, 4, 0.0f32).unwrap();
        assert!((v - 0.2).abs() < 1e-6);
    }
}
