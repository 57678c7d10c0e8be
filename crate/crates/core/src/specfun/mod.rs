//! Special functions and integration kernels shared by the physics modules.

mod gamma;
mod laguerre;
mod quadrature;
mod signed_log;

pub use gamma::{ln_binomial, ln_factorial, log_gamma};
pub use laguerre::{laguerre, laguerre_series};
pub use quadrature::{
    gauss_hermite, integrate_adaptive, integrate_momentum, integrate_radial,
    try_integrate_momentum, QuadratureConfig,
};
pub use signed_log::{signed_log_sum, signed_log_sum_with_bound, SignedLogValue};
