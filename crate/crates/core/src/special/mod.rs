//! Complex special functions: log-Gamma and the archimedean factors, Bernoulli numbers,
//! Hurwitz and Riemann zeta by Euler-Maclaurin, the completed zeta function, and the
//! K-Bessel function of complex order.

mod bernoulli;
mod bessel;
mod gamma;
mod zeta;

pub use bernoulli::{BernoulliTable, BERNOULLI};
pub use bessel::{bessel_k, bessel_k_with, QuadratureSpec};
pub use gamma::{gamma, gamma_c, gamma_r, log_gamma};
pub use zeta::{hurwitz_zeta, inv_lambda, lambda_completed, riemann_zeta};
