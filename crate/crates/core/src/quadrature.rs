//! Numeric integration: Gauss-Legendre rules, composite panel integration,
//! composite Simpson's rule, and semi-infinite integrals with an analytic
//! tail majorant.

use std::sync::OnceLock;

use crate::error::{parameter, Error, Result};
use crate::scalar::{count, lit, to_f64, Real};
use crate::summation::CompensatedSum;

pub const MAX_RULE_ORDER: usize = 64;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    order: usize,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes in strictly increasing order.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Applies the rule once on `[a, b]` (no panel splitting).
    pub fn apply<F: Fn(T) -> T>(&self, f: F, a: T, b: T) -> Result<T> {
        let mut acc = CompensatedSum::new();
        self.accumulate(&f, a, b, &mut acc)?;
        Ok(acc.value())
    }

    fn accumulate<F: Fn(T) -> T>(
        &self,
        f: &F,
        a: T,
        b: T,
        acc: &mut CompensatedSum<T>,
    ) -> Result<()> {
        let half = (b - a) / lit(2.0);
        let mid = a + half;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half * x;
            let y = f(t);
            if !y.is_finite() {
                return Err(Error::NonFinite { at: to_f64(t) });
            }
            acc.add(half * w * y);
        }
        Ok(())
    }
}

static RULE_CACHE: [OnceLock<QuadratureRule<f64>>; MAX_RULE_ORDER] =
    [const { OnceLock::new() }; MAX_RULE_ORDER];

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let j = j as f64;
        let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_rule(order: usize) -> QuadratureRule<f64> {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        // Newton from the Tricomi-style initial guess; converges to the i-th
        // largest root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(order, x);
            let dx = p / d;
            x -= dx;
            dp = d;
            if dx.abs() < 1e-15 {
                dp = legendre(order, x).1;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        let (lo, hi) = (i, order - 1 - i);
        if lo == hi {
            nodes[lo] = 0.0;
            weights[lo] = w;
        } else {
            nodes[lo] = -x;
            nodes[hi] = x;
            weights[lo] = w;
            weights[hi] = w;
        }
    }
    QuadratureRule {
        order,
        nodes,
        weights,
    }
}

/// Gauss-Legendre rule of the given order (1..=64). Computed once per order
/// in `f64` and cached.
pub fn gauss_legendre_rule<T: Real>(order: usize) -> Result<QuadratureRule<T>> {
    if !(1..=MAX_RULE_ORDER).contains(&order) {
        return Err(parameter(format!(
            "Gauss-Legendre order must be in 1..={MAX_RULE_ORDER}, got {order}"
        )));
    }
    let rule = RULE_CACHE[order - 1].get_or_init(|| compute_rule(order));
    Ok(QuadratureRule {
        order,
        nodes: rule.nodes.iter().map(|&x| lit(x)).collect(),
        weights: rule.weights.iter().map(|&w| lit(w)).collect(),
    })
}

/// Settings for composite Gauss-Legendre integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelConfig<T> {
    pub panel_width: T,
    pub rule_order: usize,
    pub compensated: bool,
}

impl<T: Real> Default for PanelConfig<T> {
    fn default() -> Self {
        PanelConfig {
            panel_width: lit(0.5),
            rule_order: 16,
            compensated: true,
        }
    }
}

impl<T: Real> PanelConfig<T> {
    pub fn with_width(panel_width: T) -> Self {
        PanelConfig {
            panel_width,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.panel_width > T::zero()) || !self.panel_width.is_finite() {
            return Err(parameter("panel_width must be positive and finite"));
        }
        if self.rule_order < 2 || self.rule_order > MAX_RULE_ORDER {
            return Err(parameter(format!(
                "rule_order must be in 2..={MAX_RULE_ORDER}"
            )));
        }
        Ok(())
    }
}

fn check_interval<T: Real>(a: T, b: T) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(parameter("integration limits must be finite"));
    }
    if a > b {
        return Err(parameter(format!(
            "integration limits out of order: a = {a} > b = {b}"
        )));
    }
    Ok(())
}

/// Composite Gauss-Legendre integral of `f` over `[a, b]`.
///
/// The interval is split into `ceil((b - a) / panel_width)` equal panels and
/// panel contributions are accumulated with compensated summation.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, cfg: &PanelConfig<T>) -> Result<T> {
    cfg.validate()?;
    check_interval(a, b)?;
    if a == b {
        return Ok(T::zero());
    }
    let rule = gauss_legendre_rule::<T>(cfg.rule_order)?;
    let panels = ((b - a) / cfg.panel_width)
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .max(1);
    let width = b - a;
    let mut acc = CompensatedSum::with_mode(cfg.compensated);
    for p in 0..panels {
        let lo = a + width * count(p) / count(panels);
        let hi = if p + 1 == panels {
            b
        } else {
            a + width * count(p + 1) / count(panels)
        };
        rule.accumulate(&f, lo, hi, &mut acc)?;
    }
    Ok(acc.value())
}

/// Like [`integrate`], but refines geometrically toward `a` so that
/// integrable endpoint singularities (`ln(t - a)`, `(t - a)^p`) are resolved.
///
/// `[a, a + w]` with `w = min(panel_width, b - a)` is cut into `levels`
/// pieces `[a + w 2^{-j-1}, a + w 2^{-j}]` plus the innermost `[a, a + w 2^{-levels}]`;
/// the remainder `[a + w, b]` uses ordinary panels.
pub fn integrate_graded<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    cfg: &PanelConfig<T>,
    levels: usize,
) -> Result<T> {
    cfg.validate()?;
    check_interval(a, b)?;
    if a == b {
        return Ok(T::zero());
    }
    let rule = gauss_legendre_rule::<T>(cfg.rule_order)?;
    let w = cfg.panel_width.min(b - a);
    let mut acc = CompensatedSum::with_mode(cfg.compensated);
    let mut hi = a + w;
    let half = lit::<T>(0.5);
    let mut scale = w;
    for _ in 0..levels {
        scale *= half;
        let lo = a + scale;
        rule.accumulate(&f, lo, hi, &mut acc)?;
        hi = lo;
    }
    if hi > a {
        rule.accumulate(&f, a, hi, &mut acc)?;
    }
    let rest = integrate(&f, a + w, b, cfg)?;
    acc.add(rest);
    Ok(acc.value())
}

/// Composite Simpson's rule on `[0, x]` with `n` subintervals:
/// `(x/3n) {f(0) + 4 sum f((2j-1)x/n) + 2 sum f(2jx/n) + f(x)}`.
pub fn simpson_composite<T: Real, F: Fn(T) -> T>(f: F, x: T, n: usize) -> Result<T> {
    simpson_interval(f, T::zero(), x, n)
}

/// Composite Simpson's rule on `[a, b]` with `n` subintervals.
pub fn simpson_interval<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, n: usize) -> Result<T> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(parameter(format!(
            "Simpson's rule needs an even number of subintervals >= 2, got {n}"
        )));
    }
    check_interval(a, b)?;
    let width = b - a;
    let nn = count::<T>(n);
    let eval = |i: usize| -> Result<T> {
        let t = if i == n { b } else { a + width * count(i) / nn };
        let y = f(t);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: to_f64(t) })
        }
    };
    let mut acc = CompensatedSum::new();
    acc.add(eval(0)?);
    for j in 1..=n / 2 {
        acc.add(lit::<T>(4.0) * eval(2 * j - 1)?);
    }
    for j in 1..n / 2 {
        acc.add(lit::<T>(2.0) * eval(2 * j)?);
    }
    acc.add(eval(n)?);
    Ok(width / (lit::<T>(3.0) * nn) * acc.value())
}

/// Value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

/// Configuration for `∫_lower^∞ f`.
///
/// `tail_bound(split_point)` must majorize `|∫_split^∞ f|`; it is an analytic
/// bound supplied by the caller, not estimated.
#[derive(Debug, Clone)]
pub struct SemiInfiniteConfig<T, B> {
    pub lower: T,
    pub split_point: T,
    pub tail_bound: B,
    pub panels: PanelConfig<T>,
    /// Geometric refinement toward `lower` (for log/power endpoint behavior).
    pub graded_start: bool,
}

impl<T: Real, B: Fn(T) -> T> SemiInfiniteConfig<T, B> {
    pub fn new(split_point: T, tail_bound: B) -> Self {
        SemiInfiniteConfig {
            lower: T::zero(),
            split_point,
            tail_bound,
            panels: PanelConfig::default(),
            graded_start: false,
        }
    }

    pub fn lower(mut self, lower: T) -> Self {
        self.lower = lower;
        self
    }

    pub fn panels(mut self, panels: PanelConfig<T>) -> Self {
        self.panels = panels;
        self
    }

    pub fn graded(mut self) -> Self {
        self.graded_start = true;
        self
    }
}

/// `∫_lower^∞ f` as a finite panel integral up to `split_point` plus the
/// caller's tail majorant, which is folded into the reported error.
pub fn integrate_semi_infinite<T: Real, F: Fn(T) -> T, B: Fn(T) -> T>(
    f: F,
    cfg: &SemiInfiniteConfig<T, B>,
) -> Result<Estimate<T>> {
    if !(cfg.split_point >= cfg.lower) {
        return Err(parameter("split_point must not precede the lower limit"));
    }
    let tail = (cfg.tail_bound)(cfg.split_point);
    if !(tail >= T::zero()) {
        return Err(parameter(format!(
            "tail bound must be nonnegative, got {tail}"
        )));
    }
    let value = if cfg.graded_start {
        integrate_graded(&f, cfg.lower, cfg.split_point, &cfg.panels, 60)?
    } else {
        integrate(&f, cfg.lower, cfg.split_point, &cfg.panels)?
    };
    let rounding = lit::<T>(32.0) * T::epsilon() * value.abs();
    Ok(Estimate {
        value,
        error: tail + rounding,
    })
}
