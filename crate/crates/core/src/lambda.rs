//! The sieve function `λ_κ`, defined by
//!
//! ```text
//! λ_κ(v) = 0                                  v ≤ 0
//! λ_κ(v) = e^{κγ} v^{κ-1} / Γ(κ)              0 < v ≤ 1
//! (v^{1-κ} λ_κ(v))' = κ v^{-κ} λ_κ(v - 1)     v > 1
//! ```
//!
//! with Laplace transform `∫_0^∞ e^{-vt} λ_κ(v) dv = t^{-2κ} e^{κ Ein(t)}`.
//! Since `λ_κ ≥ 0`, every derivative of
//! `f(t) = t^{-2κ} e^{-ut} e^{κ Ein(t)} = ∫_0^∞ e^{-(u+v)t} λ_κ(v) dv`
//! has constant sign, which certifies the Simpson error for `∫_a^b f`.

use crate::bounds::simpson_error_bound_interval;
use crate::error::{domain, parameter, Result};
use crate::quadrature::{
    gauss_legendre_rule, integrate, integrate_graded, simpson_interval, Estimate, PanelConfig,
};
use crate::scalar::{count, lit, Real};
use crate::specfun::{ein, euler_gamma, gamma_function, WORKING_RANGE};
use crate::summation::CompensatedSum;

/// Default truncation of the grid.
pub const DEFAULT_V_MAX: usize = 40;
/// Default grid spacing `2^{-10}`.
pub const DEFAULT_STEP_EXP: u32 = 10;
/// Smallest `v_max` for which Laplace-type integrals are certified.
pub const MIN_CERTIFIED_V_MAX: usize = 40;

const MAX_KAPPA: f64 = 5.0;
const MAX_V_MAX: usize = 64;
const STEP_EXP_RANGE: (u32, u32) = (8, 14);

/// `λ_κ` tabulated at `v_j = j·2^{-p}` for `0 ≤ v_j ≤ v_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid<T> {
    kappa: T,
    step_exp: u32,
    v_max: usize,
    boundary_coeff: T,
    values: Vec<T>,
}

/// Cubic Lagrange weights for the points `0, 1, 2, 3` at position `x`.
fn lagrange4<T: Real>(x: T) -> [T; 4] {
    let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
    let six = lit::<T>(6.0);
    [
        -(x - one) * (x - two) * (x - three) / six,
        x * (x - two) * (x - three) / two,
        -x * (x - one) * (x - three) / two,
        x * (x - one) * (x - two) / six,
    ]
}

impl<T: Real> LambdaGrid<T> {
    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    pub fn step_exp(&self) -> u32 {
        self.step_exp
    }

    /// Grid spacing `2^{-p}`.
    pub fn step(&self) -> T {
        T::one() / count::<T>(self.per_unit())
    }

    /// Nodes per unit interval.
    pub fn per_unit(&self) -> usize {
        1usize << self.step_exp
    }

    /// `λ_κ(v_j)` for every node.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Abscissa of node `j`.
    pub fn node(&self, j: usize) -> T {
        count::<T>(j) * self.step()
    }

    /// `e^{κγ} v^{κ-1} / Γ(κ)`, the closed form on `[0, 1]`.
    pub fn boundary(&self, v: T) -> T {
        if v <= T::zero() {
            T::zero()
        } else {
            self.boundary_coeff * v.powf(self.kappa - T::one())
        }
    }

    /// Value inside the unit interval `[m, m+1]` (m ≥ 1) by cubic
    /// interpolation on nodes from that interval only.
    fn interpolate(&self, m: usize, x: T) -> T {
        let n = self.per_unit();
        let base = m * n;
        let pos = x * count::<T>(n);
        let i = pos.floor().to_usize().unwrap_or(0).min(n - 1);
        let start = i.saturating_sub(1).min(n - 3);
        let w = lagrange4(pos - count::<T>(start));
        (0..4).fold(T::zero(), |acc, r| {
            acc + w[r] * self.values[base + start + r]
        })
    }

    /// `λ_κ(v)`: zero for `v ≤ 0`, the closed form on `[0, 1]`, cubic
    /// interpolation of the grid on `(1, v_max]`.
    pub fn eval(&self, v: T) -> Result<T> {
        if v.is_nan() {
            return Err(parameter("v is NaN"));
        }
        if v <= T::one() {
            return Ok(self.boundary(v));
        }
        let vmax = count::<T>(self.v_max);
        if v > vmax {
            return Err(domain(format!("v = {v} beyond grid end {}", self.v_max)));
        }
        if v == vmax {
            return Ok(*self.values.last().unwrap_or(&T::zero()));
        }
        let m = v.floor().to_usize().unwrap_or(1);
        Ok(self.interpolate(m, v - count::<T>(m)))
    }

    /// Left limit at `v` (evaluated inside the unit interval to the left).
    pub fn eval_left(&self, m: usize) -> Result<T> {
        if m == 0 || m > self.v_max {
            return Err(domain("left limit needs 1 ≤ m ≤ v_max"));
        }
        if m == 1 {
            return Ok(self.boundary(T::one()));
        }
        Ok(self.interpolate(m - 1, T::one()))
    }

    /// Right limit at integer `m` (evaluated inside `[m, m+1]`).
    pub fn eval_right(&self, m: usize) -> Result<T> {
        if m == 0 || m >= self.v_max {
            return Err(domain("right limit needs 1 ≤ m < v_max"));
        }
        Ok(self.interpolate(m, T::zero()))
    }

    /// `∫_0^{v_max} w(v) λ_κ(v) dv` for a smooth weight: graded Gauss-Legendre
    /// on the closed form over `[0, 1]`, Simpson on the nodes of each later
    /// unit interval. The error estimate compares Simpson at `h` and `2h`.
    fn weighted_integral<W: Fn(T) -> T>(&self, weight: W) -> Result<Estimate<T>> {
        let head = integrate_graded(
            |v: T| weight(v) * self.boundary(v),
            T::zero(),
            T::one(),
            &PanelConfig::with_width(T::one()),
            60,
        )?;
        let n = self.per_unit();
        let h = self.step();
        let mut fine = CompensatedSum::new();
        let mut coarse = CompensatedSum::new();
        fine.add(head);
        coarse.add(head);
        for m in 1..self.v_max {
            let base = m * n;
            let g = |i: usize| weight(self.node(base + i)) * self.values[base + i];
            let ends = g(0) + g(n);
            let (mut odd, mut even) = (T::zero(), T::zero());
            let (mut odd2, mut even2) = (T::zero(), T::zero());
            for i in 1..n {
                let gi = g(i);
                if i % 2 == 1 {
                    odd += gi;
                } else {
                    even += gi;
                    if (i / 2) % 2 == 1 {
                        odd2 += gi;
                    } else {
                        even2 += gi;
                    }
                }
            }
            let three = lit::<T>(3.0);
            fine.add(h / three * (ends + lit::<T>(4.0) * odd + lit::<T>(2.0) * even));
            coarse.add(
                lit::<T>(2.0) * h / three * (ends + lit::<T>(4.0) * odd2 + lit::<T>(2.0) * even2),
            );
        }
        let value = fine.value();
        let error = (value - coarse.value()).abs() / lit(15.0)
            + lit::<T>(64.0) * T::epsilon() * value.abs();
        Ok(Estimate { value, error })
    }

    /// Majorant for `∫_{v_max}^∞ (u+v)^k e^{-(u+v)t} λ_κ(v) dv`, using the
    /// polynomial growth `λ_κ(v) ≲ λ_κ(V)(v/V)^{2κ-1} ≤ λ_κ(V) e^{(2κ-1)(v-V)/V}`
    /// and `(u+v)^k ≤ (u+V)^k e^{k(v-V)/(u+V)}`.
    fn tail(&self, u: T, k: usize, t: T) -> Result<T> {
        let big_v = count::<T>(self.v_max);
        let q = lit::<T>(2.0) * self.kappa - T::one();
        let rate = t - q / big_v - count::<T>(k) / (u + big_v);
        if !(rate > T::zero()) {
            return Err(domain(format!("t = {t} too small to bound the tail")));
        }
        let last = *self.values.last().unwrap_or(&T::zero());
        Ok((u + big_v).powi(k as i32) * last * (-(u + big_v) * t).exp() / rate)
    }
}

/// Tabulate `λ_κ` on `[0, v_max]` with spacing `2^{-step_exp}` by the method
/// of steps.
pub fn build_lambda_grid<T: Real>(kappa: T, v_max: usize, step_exp: u32) -> Result<LambdaGrid<T>> {
    if !(kappa > T::one() && kappa <= lit(MAX_KAPPA)) {
        return Err(parameter(format!(
            "kappa must lie in (1, {MAX_KAPPA}], got {kappa}"
        )));
    }
    if !(STEP_EXP_RANGE.0..=STEP_EXP_RANGE.1).contains(&step_exp) {
        return Err(parameter(format!(
            "step exponent must lie in {}..={}, got {step_exp}",
            STEP_EXP_RANGE.0, STEP_EXP_RANGE.1
        )));
    }
    if !(2..=MAX_V_MAX).contains(&v_max) {
        return Err(parameter(format!(
            "v_max must lie in 2..={MAX_V_MAX}, got {v_max}"
        )));
    }
    let n = 1usize << step_exp;
    let h = T::one() / count::<T>(n);
    let km1 = kappa - T::one();
    let coeff = (kappa * euler_gamma::<T>()).exp() / gamma_function(kappa)?;
    let mut grid = LambdaGrid {
        kappa,
        step_exp,
        v_max,
        boundary_coeff: coeff,
        values: vec![T::zero(); v_max * n + 1],
    };
    for j in 0..=n {
        grid.values[j] = grid.boundary(count::<T>(j) * h);
    }

    // w(v) = v^{1-κ} λ(v), continuous, with w(1) = coeff.
    let mut w = CompensatedSum::new();
    w.add(coeff);

    // [1, 2]: λ(u-1) is the closed form, so integrate it directly in
    // x = u - 1; the first cell holds the x^{κ-1} endpoint behavior.
    let rule = gauss_legendre_rule::<T>(16)?;
    let g1 = |x: T| kappa * coeff * (T::one() + x).powf(-kappa) * x.powf(km1);
    for j in 1..=n {
        let lo = count::<T>(j - 1) * h;
        let hi = count::<T>(j) * h;
        let piece = if j == 1 {
            integrate_graded(g1, lo, hi, &PanelConfig::with_width(h), 60)?
        } else {
            rule.apply(g1, lo, hi)?
        };
        w.add(piece);
        grid.values[n + j] = w.value() * (T::one() + hi).powf(km1);
    }

    // [m, m+1], m ≥ 2: Simpson per cell, the midpoint of λ(u-1) by cubic
    // interpolation within [m-1, m].
    let centered = [
        lit::<T>(-1.0 / 16.0),
        lit(9.0 / 16.0),
        lit(9.0 / 16.0),
        lit(-1.0 / 16.0),
    ];
    let left = [
        lit::<T>(5.0 / 16.0),
        lit(15.0 / 16.0),
        lit(-5.0 / 16.0),
        lit(1.0 / 16.0),
    ];
    let right = [
        lit::<T>(1.0 / 16.0),
        lit(-5.0 / 16.0),
        lit(15.0 / 16.0),
        lit(5.0 / 16.0),
    ];
    let sixth = h / lit(6.0);
    let four = lit::<T>(4.0);
    for m in 2..v_max {
        let prev = (m - 1) * n;
        for i in 0..n {
            let (start, wts) = if i == 0 {
                (0, &left)
            } else if i == n - 1 {
                (n - 3, &right)
            } else {
                (i - 1, &centered)
            };
            let mid_lambda = (0..4).fold(T::zero(), |acc, r| {
                acc + wts[r] * grid.values[prev + start + r]
            });
            let u0 = count::<T>(m * n + i) * h;
            let u1 = count::<T>(m * n + i + 1) * h;
            let um = u0 + h / lit(2.0);
            let s = u0.powf(-kappa) * grid.values[prev + i]
                + four * um.powf(-kappa) * mid_lambda
                + u1.powf(-kappa) * grid.values[prev + i + 1];
            w.add(kappa * sixth * s);
            grid.values[m * n + i + 1] = w.value() * u1.powf(km1);
        }
    }
    Ok(grid)
}

/// Result of comparing the grid's Laplace transform with the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceCheck<T> {
    /// `∫_0^{v_max} e^{-vt} λ_κ(v) dv` by grid quadrature.
    pub lhs: T,
    /// `t^{-2κ} e^{κ Ein(t)}`.
    pub rhs: T,
    /// `|lhs - rhs|`.
    pub defect: T,
    /// Majorant of the neglected `∫_{v_max}^∞`.
    pub tail: T,
    /// Discretization estimate of `lhs`.
    pub quadrature_error: T,
}

/// Check `∫_0^∞ e^{-vt} λ_κ(v) dv = t^{-2κ} e^{κ Ein(t)}` on the grid.
pub fn laplace_check<T: Real>(grid: &LambdaGrid<T>, t: T) -> Result<LaplaceCheck<T>> {
    if !(t >= T::one()) || t > lit(WORKING_RANGE) {
        return Err(domain(format!(
            "Laplace check needs 1 ≤ t ≤ {WORKING_RANGE}, got {t}"
        )));
    }
    let est = grid.weighted_integral(|v| (-v * t).exp())?;
    let rhs = (-lit::<T>(2.0) * grid.kappa * t.ln() + grid.kappa * ein(t)?).exp();
    Ok(LaplaceCheck {
        lhs: est.value,
        rhs,
        defect: (est.value - rhs).abs(),
        tail: grid.tail(T::zero(), 0, t)?,
        quadrature_error: est.error,
    })
}

/// Parameters of `∫_a^b t^{-2κ} e^{-ut} e^{κ Ein(t)} dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QIntSpec<T> {
    pub kappa: T,
    pub u: T,
    pub a: T,
    pub b: T,
}

impl<T: Real> QIntSpec<T> {
    /// Requires `κ > 1`, `u > 0`, `0 < a ≤ b ≤ 50`; `a = b` is the
    /// degenerate empty integral.
    pub fn new(kappa: T, u: T, a: T, b: T) -> Result<Self> {
        if !(kappa > T::one()) || !kappa.is_finite() {
            return Err(parameter(format!("kappa must exceed 1, got {kappa}")));
        }
        if !(u > T::zero()) || !u.is_finite() {
            return Err(parameter(format!("u must be positive, got {u}")));
        }
        if !(a > T::zero()) || !(b >= a) || !(b <= lit(WORKING_RANGE)) {
            return Err(parameter(format!(
                "need 0 < a ≤ b ≤ {WORKING_RANGE}, got a = {a}, b = {b}"
            )));
        }
        Ok(QIntSpec { kappa, u, a, b })
    }

    /// `t^{-2κ} e^{-ut} e^{κ Ein(t)}`.
    pub fn integrand(&self, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(domain(format!("q-integrand needs t > 0, got {t}")));
        }
        Ok((-lit::<T>(2.0) * self.kappa * t.ln() - self.u * t + self.kappa * ein(t)?).exp())
    }
}

fn check_grid<T: Real>(spec: &QIntSpec<T>, grid: &LambdaGrid<T>) -> Result<()> {
    if grid.kappa != spec.kappa {
        return Err(parameter(format!(
            "grid built for kappa = {} but spec has {}",
            grid.kappa, spec.kappa
        )));
    }
    if grid.v_max < MIN_CERTIFIED_V_MAX {
        return Err(parameter(format!(
            "grid v_max = {} below the certified {MIN_CERTIFIED_V_MAX}",
            grid.v_max
        )));
    }
    Ok(())
}

/// `f^(k)(t) = (-1)^k ∫_0^∞ (u+v)^k e^{-(u+v)t} λ_κ(v) dv` for the
/// q-integrand `f`, with the tail and discretization folded into the error.
pub fn q_derivative<T: Real>(
    spec: &QIntSpec<T>,
    k: usize,
    t: T,
    grid: &LambdaGrid<T>,
) -> Result<Estimate<T>> {
    check_grid(spec, grid)?;
    if !(t >= T::one()) || !t.is_finite() {
        return Err(domain(format!(
            "q_derivative is certified for t ≥ 1, got {t}"
        )));
    }
    let u = spec.u;
    let est = grid.weighted_integral(|v| (u + v).powi(k as i32) * (-(u + v) * t).exp())?;
    let tail = grid.tail(u, k, t)?;
    let sign = if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    Ok(Estimate {
        value: sign * est.value,
        error: est.error + tail,
    })
}

/// Simpson value of the q-integral with a certified error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QIntResult<T> {
    pub value: T,
    /// `(b-a)⁵ (f⁽⁴⁾(a) + err) / (180 n⁴)`.
    pub bound: T,
    /// `f⁽⁴⁾(a)` with its uncertainty.
    pub f4_at_a: Estimate<T>,
}

/// Composite Simpson on `[a, b]` with `n` subintervals. Because `f⁽⁴⁾ ≥ 0`
/// is nonincreasing, `sup |f⁽⁴⁾| = f⁽⁴⁾(a)`.
pub fn qint_eval<T: Real>(
    spec: &QIntSpec<T>,
    n: usize,
    grid: &LambdaGrid<T>,
) -> Result<QIntResult<T>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(parameter(format!("n must be even and at least 2, got {n}")));
    }
    if !(spec.a >= T::one()) {
        return Err(parameter(format!(
            "certified range needs a ≥ 1, got {}",
            spec.a
        )));
    }
    let f4 = q_derivative(spec, 4, spec.a, grid)?;
    if spec.a == spec.b {
        return Ok(QIntResult {
            value: T::zero(),
            bound: T::zero(),
            f4_at_a: f4,
        });
    }
    let value = simpson_interval(
        |t| spec.integrand(t).unwrap_or_else(|_| T::nan()),
        spec.a,
        spec.b,
        n,
    )?;
    let bound = simpson_error_bound_interval(f4.value + f4.error, spec.a, spec.b, n)?;
    Ok(QIntResult {
        value,
        bound,
        f4_at_a: f4,
    })
}

/// Reference value of the q-integral: Gauss-Legendre panels of width 0.05.
pub fn qint_oracle<T: Real>(spec: &QIntSpec<T>) -> Result<T> {
    integrate(
        |t| spec.integrand(t).unwrap_or_else(|_| T::nan()),
        spec.a,
        spec.b,
        &PanelConfig::with_width(lit(0.05)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;
    use crate::transforms::finite_difference_derivative_with_step;

    fn grid(kappa: f64) -> LambdaGrid<f64> {
        build_lambda_grid(kappa, 40, 10).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let g = grid(2.0);
        let e2g = (2.0 * EULER_GAMMA).exp();
        assert!((g.eval(1.0).unwrap() - e2g).abs() < 1e-14);
        assert!((g.eval(1.0).unwrap() - 3.172219).abs() < 1e-6);
        assert!((g.eval(0.25).unwrap() - 0.25 * e2g).abs() < 1e-14);
        assert_eq!(g.eval(0.0).unwrap(), 0.0);
        assert_eq!(g.eval(-3.0).unwrap(), 0.0);
        assert_eq!(g.values()[0], 0.0);
    }

    #[test]
    fn parameter_checks() {
        assert!(build_lambda_grid(1.0f64, 40, 10).is_err());
        assert!(build_lambda_grid(5.5f64, 40, 10).is_err());
        assert!(build_lambda_grid(2.0f64, 40, 7).is_err());
        assert!(build_lambda_grid(2.0f64, 40, 15).is_err());
        assert!(build_lambda_grid(2.0f64, 65, 10).is_err());
        assert!(QIntSpec::new(2.0f64, 0.0, 1.0, 2.0).is_err());
        assert!(QIntSpec::new(2.0f64, 1.0, 2.0, 1.0).is_err());
        assert!(QIntSpec::new(0.5f64, 1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn kappa_two_second_interval_closed_form() {
        // For κ = 2: v^{-1} λ(v) = C + 2C ∫_1^v (u-1)/u² du = C(1 + 2(ln v + 1/v - 1)).
        let g = grid(2.0);
        let c = (2.0 * EULER_GAMMA).exp();
        for v in [1.1f64, 1.5, 1.999, 2.0] {
            let exact = v * c * (1.0 + 2.0 * (v.ln() + 1.0 / v - 1.0));
            assert!((g.eval(v).unwrap() - exact).abs() < 1e-12, "v={v}");
        }
    }

    #[test]
    fn nonnegative_and_continuous() {
        for kappa in [1.5, 2.0, 3.0] {
            let g = grid(kappa);
            let min = g.values().iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(min >= -1e-12);
            for m in 1..40 {
                let l = g.eval_left(m).unwrap();
                let r = g.eval_right(m).unwrap();
                assert!(
                    (l - r).abs() <= 1e-9 * (1.0 + l.abs()),
                    "kappa={kappa} m={m}"
                );
            }
        }
    }

    #[test]
    fn laplace_identity() {
        let g = grid(2.0);
        let c = laplace_check(&g, 1.0).unwrap();
        assert!((c.rhs - 4.919_462_116_407).abs() < 1e-11);
        assert!(c.defect <= 1e-6 * (1.0 + c.rhs), "{c:?}");
        let c2 = laplace_check(&g, 2.0).unwrap();
        let exact = 2f64.powi(-4) * (2.0 * crate::specfun::ein(2.0f64).unwrap()).exp();
        assert!((c2.rhs - exact).abs() < 1e-15);
        assert!(laplace_check(&g, 0.5).is_err());
    }

    #[test]
    fn q_derivative_signs_and_monotone() {
        let g = grid(2.0);
        let spec = QIntSpec::new(2.0, 1.0, 1.0, 2.0).unwrap();
        let d4a = q_derivative(&spec, 4, 1.0, &g).unwrap();
        let d4b = q_derivative(&spec, 4, 1.5, &g).unwrap();
        let d5 = q_derivative(&spec, 5, 1.2, &g).unwrap();
        assert!(d4a.value >= 0.0 && d4b.value >= 0.0);
        assert!(d4a.value >= d4b.value);
        assert!(d5.value <= 0.0);
        assert!(q_derivative(&spec, 4, 0.9, &g).is_err());
    }

    #[test]
    fn q_derivative_matches_finite_differences() {
        let g = grid(2.0);
        let spec = QIntSpec::new(2.0, 1.0, 1.0, 4.0).unwrap();
        for k in [0usize, 1, 2, 4] {
            for t in [1.5f64, 2.5] {
                let d = q_derivative(&spec, k, t, &g).unwrap();
                let fd = finite_difference_derivative_with_step(
                    |x: f64| spec.integrand(x).unwrap(),
                    k,
                    t,
                    0.2,
                )
                .unwrap();
                assert!(
                    (d.value - fd).abs() < 1e-6 * (1.0 + fd.abs()),
                    "k={k} t={t}: {} vs {fd}",
                    d.value
                );
            }
        }
    }

    #[test]
    fn qint_bound_holds() {
        let g = grid(2.0);
        let spec = QIntSpec::new(2.0, 1.0, 1.0, 3.0).unwrap();
        let oracle = qint_oracle(&spec).unwrap();
        let r10 = qint_eval(&spec, 10, &g).unwrap();
        let r20 = qint_eval(&spec, 20, &g).unwrap();
        assert!((r10.value - oracle).abs() <= r10.bound);
        assert!((r20.value - oracle).abs() <= r20.bound);
        assert!(r10.bound / r20.bound >= 15.0);
        assert!(qint_eval(&spec, 7, &g).is_err());
    }

    #[test]
    fn degenerate_qint() {
        let g = grid(2.0);
        let spec = QIntSpec::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let r = qint_eval(&spec, 10, &g).unwrap();
        assert_eq!((r.value, r.bound), (0.0, 0.0));
    }

    #[test]
    fn grid_mismatch_rejected() {
        let g = grid(2.0);
        let spec = QIntSpec::new(3.0, 1.0, 1.0, 2.0).unwrap();
        assert!(q_derivative(&spec, 4, 1.0, &g).is_err());
        let small = build_lambda_grid(2.0f64, 20, 8).unwrap();
        let spec = QIntSpec::new(2.0, 1.0, 1.0, 2.0).unwrap();
        assert!(q_derivative(&spec, 4, 1.0, &small).is_err());
    }
}
