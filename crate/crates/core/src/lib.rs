//! Fitting of generalized tropical Puiseux polynomials to sampled data.
//!
//! A polynomial `P(x) = θ_1 x^{p_1} ⊕ … ⊕ θ_N x^{p_N}` is fitted with both
//! coefficients and real exponents unknown. In max-plus algebra this is
//! Chebyshev approximation by a convex piecewise-linear function
//! `max_j(p_j·x + θ_j)`; in max-times algebra it is approximation by a
//! piecewise power law `max_j θ_j·x^{p_j}` under the ratio metric.
//!
//! The coefficient vector for fixed exponents has a closed form
//! ([`linalg::best_approx_solve`]). Exponents are found by greedy
//! agglomerative merging of per-sample polynomials, each cluster minimized
//! in closed form ([`poly::TropPolynomial::minimize`]).
//!
//! ```
//! use tropfit::{fit, FitConfig, SampleSet, SemifieldTag};
//!
//! let xs: Vec<f64> = (0..5).map(f64::from).collect();
//! let ys: Vec<f64> = xs.iter().map(|x| (x - 2.0f64).abs()).collect();
//! let samples = SampleSet::new(xs, ys, SemifieldTag::MaxPlus).unwrap();
//! let result = fit(&samples, &FitConfig::new(2, SemifieldTag::MaxPlus)).unwrap();
//! assert!(result.delta_star.abs() < 1e-12);
//! ```

pub mod cli;
pub mod dataset;
pub mod error;
pub mod fitter;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod semifield;

pub use error::{Error, Result};
pub use fitter::{
    agglomerate, build_phi, finalize, fit, fit_maxalgebra, predict, sweep, ClusterState, FitConfig,
    FitResult, SampleSet,
};
pub use linalg::{best_approx_solve, BestApproxResult, Distance, TropMatrix, TropVector};
pub use oracle::{exact_fit, grid_minimize, residual_check, OracleResult};
pub use poly::{Bound, MinResult, Monomial, TropPolynomial};
pub use semifield::{SemifieldTag, TropScalar};
