#![no_std]
#![forbid(unsafe_code)]
// f64 math goes through num_traits::Float (libm). When std is linked into the build
// (dev-dependencies), the inherent methods win and those imports look unused.
#![allow(unused_imports)]
//! Numerical core for toroidal periods of Eisenstein series over quadratic fields.
//!
//! Everything here is pure computation in binary64 arithmetic: exact quadratic-field
//! arithmetic ([`nfield`]), complex special functions ([`special`]), Dirichlet and Hecke
//! L-functions with critical-line zero scanning ([`lfun`]), the level-one real-analytic
//! Eisenstein series with truncation and fundamental-domain quadrature ([`eis`]),
//! toroidal period integrals ([`periods`]) and the spectral layer built on top of them
//! ([`spectral`]).
//!
//! The crate is `no_std` and only needs `alloc`.

extern crate alloc;

mod error;
pub mod quad;

pub mod eis;
pub mod lfun;
pub mod nfield;
pub mod periods;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `Complex64::new` shorthand used throughout the crate.
#[inline]
pub(crate) const fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
