//! Derivative bounds for quadrature error analysis, obtained by
//! differentiating integral representations under the integral sign.
//!
//! The numerical core is generic over [`Real`] (`f32` and `f64`); the `*64`
//! aliases below fix the scalar to `f64`.
//!
//! ```
//! use derivbound::{family_bound, transform_derivative, KernelFamily, TaylorKernelSpec};
//!
//! let spec = TaylorKernelSpec::canonical(KernelFamily::Sinc);
//! let d4 = transform_derivative(&spec, 4, 0.0_f64).unwrap();
//! let b = family_bound(&KernelFamily::Sinc, 4, 0.0_f64).unwrap();
//! assert!((d4 - 0.2).abs() < 1e-15 && (b.value - 0.2).abs() < 1e-15);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bounds;
pub mod error;
pub mod lambda;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod summation;
pub mod transforms;

pub use analysis::{
    cin_simpson_error, frullani_check, locate_error_zero, scan_ratio, simpson_report, table1,
    FrullaniCheck, ScanPoint, SimpsonReport, ZeroBracket, ZeroSearch,
};
pub use bounds::{family_bound, simpson_error_bound, taylor_bound, BoundResult, Parity};
pub use error::{Error, Result};
pub use lambda::{
    build_lambda_grid, laplace_check, q_derivative, qint_eval, qint_oracle, LambdaGrid,
    LaplaceCheck, QIntResult, QIntSpec,
};
pub use quadrature::{
    gauss_legendre_rule, integrate, integrate_semi_infinite, simpson_composite, Estimate,
    PanelConfig, QuadratureRule, SemiInfiniteConfig,
};
pub use scalar::Real;
pub use specfun::{eval_special, SpecialFnId};
pub use summation::{compensated_sum, CompensatedSum};
pub use transforms::{
    arctan_derivative, finite_difference_derivative, ratio_value, tan_even_derivative,
    transform_derivative, KernelFamily, TaylorKernelSpec,
};

pub type KernelFamily64 = KernelFamily<f64>;
pub type TaylorKernelSpec64 = TaylorKernelSpec<f64>;
pub type BoundResult64 = BoundResult<f64>;
pub type SimpsonReport64 = SimpsonReport<f64>;
pub type LambdaGrid64 = LambdaGrid<f64>;
pub type QIntSpec64 = QIntSpec<f64>;
pub type Estimate64 = Estimate<f64>;
pub type QuadratureRule64 = QuadratureRule<f64>;
