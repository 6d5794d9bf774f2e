//! Binary quadratic forms a x² + b xy + c y²: reduction, composition, and the cycles of
//! reduced indefinite forms.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Float;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub(crate) fn isqrt(n: i64) -> i64 {
    debug_assert!(n >= 0);
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl Form {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The identity of the form class group of discriminant `d`.
    pub fn principal(d: i64) -> Self {
        let b = if d.rem_euclid(4) == 0 { 0 } else { 1 };
        Form::new(1, b, (b * b - d) / 4)
    }

    pub fn inverse(&self) -> Self {
        Form::new(self.a, -self.b, self.c)
    }

    /// Reducedness for positive definite forms: |b| ≤ a ≤ c, b ≥ 0 if |b| = a or a = c.
    pub fn is_reduced_definite(&self) -> bool {
        self.a > 0
            && self.b.abs() <= self.a
            && self.a <= self.c
            && !((self.b.abs() == self.a || self.a == self.c) && self.b < 0)
    }

    /// Reducedness for indefinite forms: 0 < b < √d and √d - b < 2|a| < √d + b.
    pub fn is_reduced_indefinite(&self) -> bool {
        let d = self.discriminant();
        if d <= 0 {
            return false;
        }
        let r = (d as f64).sqrt();
        let b = self.b as f64;
        let a2 = 2.0 * self.a.abs() as f64;
        self.b > 0 && b < r && r - b < a2 && a2 < r + b
    }

    /// Gauss reduction of a positive definite form.
    pub fn reduce_definite(mut self) -> Self {
        debug_assert!(self.discriminant() < 0 && self.a > 0);
        loop {
            if self.b.abs() > self.a || self.b == -self.a {
                // normalize b into (-a, a]
                let two_a = 2 * self.a;
                let mut b = self.b.rem_euclid(two_a);
                if b > self.a {
                    b -= two_a;
                }
                let k = (b - self.b) / two_a;
                // x ↦ x + k y
                self.c = self.a * k * k + self.b * k + self.c;
                self.b = b;
            }
            if self.a > self.c {
                self = Form::new(self.c, -self.b, self.a);
                continue;
            }
            if self.a == self.c && self.b < 0 {
                self.b = -self.b;
            }
            return self;
        }
    }

    /// One step of the reduction operator ρ on indefinite forms: (a, b, c) ↦ (c, b', a')
    /// with b' ≡ -b (mod 2c) and √d - 2|c| < b' < √d. Maps reduced forms to reduced forms.
    pub fn rho(&self) -> Self {
        let d = self.discriminant();
        let r = isqrt(d);
        let c = self.c;
        let two_c = 2 * c.abs();
        let b = r - (r + self.b).rem_euclid(two_c);
        Form::new(c, b, (b * b - d) / (4 * c))
    }

    /// The cycle of a reduced indefinite form under ρ.
    pub fn cycle(&self) -> Vec<Form> {
        let mut out = Vec::new();
        let mut f = *self;
        loop {
            out.push(f);
            f = f.rho();
            if f == *self || out.len() > 1_000_000 {
                return out;
            }
        }
    }

    /// A positive integer represented by the form and coprime to `m`, together with a
    /// witnessing vector, searching small coprime (x, y).
    pub fn represented_coprime_to(&self, m: i64) -> Option<(i64, i64, i64)> {
        for r in 1..200i64 {
            for x in -r..=r {
                for &y in &[r - x.abs(), -(r - x.abs())] {
                    if x.gcd(&y) != 1 {
                        continue;
                    }
                    let n = self.eval(x, y);
                    if n != 0 && n.abs().gcd(&m.abs()) == 1 {
                        return Some((n, x, y));
                    }
                }
            }
        }
        None
    }
}

/// Reduced positive definite forms of discriminant `d < 0`, sorted lexicographically.
pub fn reduced_definite_forms(d: i64) -> Result<Vec<Form>> {
    if d >= 0 {
        return Err(Error::invalid(alloc::format!(
            "reduced_forms: discriminant {d} is not negative"
        )));
    }
    let mut out = Vec::new();
    let n = -d;
    // a ≤ √(|d|/3)
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form::new(a, b, num / (4 * a));
            if f.is_reduced_definite() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// All reduced indefinite forms of discriminant `d > 0`.
pub fn reduced_indefinite_forms(d: i64) -> Vec<Form> {
    let r = isqrt(d);
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= r {
        let prod = (d - b * b) / 4; // = -ac > 0
                                    // reduced forms have |a| < √d
        for a in 1..=prod.min(r) {
            if prod % a != 0 {
                continue;
            }
            for &sa in &[a, -a] {
                let f = Form::new(sa, b, -prod / sa);
                if f.is_reduced_indefinite() {
                    out.push(f);
                }
            }
        }
        b += 2;
    }
    out.sort();
    out
}

/// Cycles of reduced indefinite forms: one per narrow (proper) class.
pub fn indefinite_cycles(d: i64) -> Vec<Vec<Form>> {
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for f in reduced_indefinite_forms(d) {
        if seen.contains(&f) {
            continue;
        }
        let cyc = f.cycle();
        for g in &cyc {
            seen.insert(*g);
        }
        cycles.push(cyc);
    }
    cycles
}

/// Composition of two primitive positive definite forms of the same discriminant,
/// followed by reduction.
pub fn compose(f1: Form, f2: Form) -> Result<Form> {
    let d = f1.discriminant();
    if d != f2.discriminant() || d >= 0 {
        return Err(Error::invalid("compose: forms must share a negative discriminant"));
    }
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, dd) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let e = a2.extended_gcd(&a1);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s % dd == 0 {
        (0, -1, dd)
    } else {
        let e = s.extended_gcd(&dd);
        (e.x, -e.y, e.gcd)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    let f = Form::new(a3 as i64, b3 as i64, c3 as i64);
    debug_assert_eq!(f.discriminant(), d);
    Ok(f.reduce_definite())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definite_enumeration() {
        assert_eq!(reduced_definite_forms(-4).unwrap(), [Form::new(1, 0, 1)]);
        assert_eq!(
            reduced_definite_forms(-20).unwrap(),
            [Form::new(1, 0, 5), Form::new(2, 2, 3)]
        );
        assert_eq!(reduced_definite_forms(-23).unwrap().len(), 3);
        assert!(reduced_definite_forms(5).is_err());
    }

    #[test]
    fn composition_group_laws() {
        let forms = reduced_definite_forms(-23).unwrap();
        let e = Form::principal(-23);
        for &f in &forms {
            assert_eq!(compose(f, e).unwrap(), f);
            assert_eq!(compose(f, f.inverse()).unwrap(), e);
        }
        // cyclic of order 3
        let g = forms[1];
        let g2 = compose(g, g).unwrap();
        assert_ne!(g2, e);
        assert_eq!(compose(g2, g).unwrap(), e);
    }

    #[test]
    fn indefinite_cycles_small() {
        // h⁺ = 1 for d = 5, 8; h⁺ = 2 for d = 12 (N ε = +1)
        assert_eq!(indefinite_cycles(5).len(), 1);
        assert_eq!(indefinite_cycles(8).len(), 1);
        assert_eq!(indefinite_cycles(12).len(), 2);
        for cyc in indefinite_cycles(40) {
            for f in cyc {
                assert!(f.is_reduced_indefinite(), "{f}");
                assert_eq!(f.discriminant(), 40);
            }
        }
    }
}
