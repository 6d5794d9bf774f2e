//! Fundamental units of real quadratic orders by continued fractions.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::forms::isqrt;

/// A unit (a + b√d)/2 with exact big-integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    pub a: BigInt,
    pub b: BigInt,
    /// Norm, ±1.
    pub norm: i8,
}

/// ln of a positive big integer, accurate to a few ulps however large it is.
pub(crate) fn big_ln(n: &BigInt) -> f64 {
    debug_assert!(n.sign() == Sign::Plus);
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * core::f64::consts::LN_2
}

impl Unit {
    /// log ε, computed from the big-integer coordinates.
    pub fn log(&self) -> f64 {
        // ε = (a + b√d)/2 with a, b > 0 and a ≈ b√d; ln ε = ln a + ln((1 + b√d/a)/2)
        let d = (&self.a * &self.a - BigInt::from(4 * self.norm as i64)) / (&self.b * &self.b);
        let d = d.to_f64().unwrap();
        let ln_a = big_ln(&self.a);
        let ln_b = big_ln(&self.b);
        let ratio = (ln_b - ln_a + 0.5 * d.ln()).exp();
        ln_a + ((1.0 + ratio) / 2.0).ln()
    }

    pub fn to_f64(&self) -> f64 {
        self.log().exp()
    }

    /// Generator of the totally positive units: ε if N(ε) = 1, else ε².
    pub fn totally_positive(&self, d: i64) -> Unit {
        if self.norm == 1 {
            return self.clone();
        }
        // ((a + b√d)/2)² = ((a² + d b²)/2 + ab √d)/2
        let a = (&self.a * &self.a + BigInt::from(d) * &self.b * &self.b) / 2;
        let b = &self.a * &self.b;
        Unit { a, b, norm: 1 }
    }
}

/// Fundamental unit ε > 1 of the maximal order of discriminant `d > 0`.
///
/// Units x + yω (ω = (σ + √d)/2) satisfy x/y ≈ (-σ + √d)/2, so the first convergent of
/// that number with norm ±1 gives ε.
pub fn fundamental_unit(d: i64) -> Unit {
    debug_assert!(d > 1);
    let sigma = d.rem_euclid(2);
    let n_omega = BigInt::from((sigma * sigma - d) / 4);
    let sigma_b = BigInt::from(sigma);
    let r = isqrt(d);
    // θ = (P + √d)/Q
    let (mut p, mut q) = (-sigma, 2i64);
    let (mut x0, mut x1) = (BigInt::zero(), BigInt::one());
    let (mut y0, mut y1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = Integer::div_floor(&(p + r), &q);
        let ab = BigInt::from(a);
        let x2 = &ab * &x1 + &x0;
        let y2 = &ab * &y1 + &y0;
        let norm = &x2 * &x2 + &sigma_b * &x2 * &y2 + &n_omega * &y2 * &y2;
        if norm.abs().is_one() && y2.is_positive() {
            let a = BigInt::from(2) * &x2 + &sigma_b * &y2;
            let norm = if norm.is_positive() { 1 } else { -1 };
            return Unit { a, b: y2, norm };
        }
        x0 = core::mem::replace(&mut x1, x2);
        y0 = core::mem::replace(&mut y1, y2);
        p = a * q - p;
        q = (d - p * p) / q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_units() {
        let u = fundamental_unit(5);
        assert_eq!(
            (u.a.clone(), u.b.clone(), u.norm),
            (BigInt::from(1), BigInt::from(1), -1)
        );
        assert!((u.log() - 0.481_211_825_059_603_4).abs() < 1e-15);
        let u = fundamental_unit(8);
        // 1 + √2 = (2 + √8)/2
        assert_eq!(
            (u.a.clone(), u.b.clone(), u.norm),
            (BigInt::from(2), BigInt::from(1), -1)
        );
        let u = fundamental_unit(12);
        // 2 + √3 = (4 + √12)/2
        assert_eq!(
            (u.a.clone(), u.b.clone(), u.norm),
            (BigInt::from(4), BigInt::from(1), 1)
        );
    }

    #[test]
    fn large_unit_is_exact() {
        // d = 4·94: ε = 2143295 + 221064√94
        let u = fundamental_unit(376);
        assert_eq!(u.a, BigInt::from(2 * 2_143_295i64));
        assert_eq!(u.b, BigInt::from(221_064));
        let d = BigInt::from(376);
        assert_eq!(&u.a * &u.a - d * &u.b * &u.b, BigInt::from(4 * u.norm as i64));
    }
}
