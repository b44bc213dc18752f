//! Prime fields F_p for small p.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest characteristic accepted. Products of two residues stay far below `u32::MAX`.
pub const MAX_CHAR: u32 = 97;

/// The characteristic of a prime field, `2 <= p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeChar(u32);

impl PrimeChar {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_CHAR).contains(&p) {
            return Err(Error::CharacteristicOutOfRange(p));
        }
        if (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeChar(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce_u64(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i64(t0))
    }

    /// True iff `n` is `p^e` for some `e >= 0`.
    pub fn is_power(self, mut n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let p = self.0 as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Returns `e >= 1` with `n = p^e`, if any.
    pub fn log_exact(self, mut n: u64) -> Option<u32> {
        let p = self.0 as u64;
        let mut e = 0;
        while n > 1 && n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        (n == 1 && e >= 1).then_some(e)
    }
}

impl fmt::Display for PrimeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p, carrying its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    char: PrimeChar,
}

#[allow(clippy::should_implement_trait)]
impl FpElem {
    pub fn new(value: i64, char: PrimeChar) -> Self {
        FpElem {
            value: char.reduce_i64(value),
            char,
        }
    }

    pub fn zero(char: PrimeChar) -> Self {
        FpElem { value: 0, char }
    }

    pub fn one(char: PrimeChar) -> Self {
        FpElem { value: 1, char }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn characteristic(self) -> PrimeChar {
        self.char
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FpElem) -> Result<PrimeChar> {
        if self.char != other.char {
            return Err(Error::CharacteristicMismatch {
                left: self.char.get(),
                right: other.char.get(),
            });
        }
        Ok(self.char)
    }

    pub fn add(self, other: FpElem) -> Result<FpElem> {
        let p = self.check(other)?;
        Ok(FpElem {
            value: p.add(self.value, other.value),
            char: p,
        })
    }

    pub fn sub(self, other: FpElem) -> Result<FpElem> {
        let p = self.check(other)?;
        Ok(FpElem {
            value: p.sub(self.value, other.value),
            char: p,
        })
    }

    pub fn mul(self, other: FpElem) -> Result<FpElem> {
        let p = self.check(other)?;
        Ok(FpElem {
            value: p.mul(self.value, other.value),
            char: p,
        })
    }

    pub fn neg(self) -> FpElem {
        FpElem {
            value: self.char.neg(self.value),
            char: self.char,
        }
    }

    pub fn inv(self) -> Result<FpElem> {
        let value = self.char.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FpElem {
            value,
            char: self.char,
        })
    }

    pub fn pow(self, exp: u64) -> FpElem {
        FpElem {
            value: self.char.pow(self.value, exp),
            char: self.char,
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: i64, p: u32) -> FpElem {
        FpElem::new(v, PrimeChar::new(p).unwrap())
    }

    #[test]
    fn construction_rejects_composites_and_range() {
        assert!(PrimeChar::new(2).is_ok());
        assert!(PrimeChar::new(97).is_ok());
        assert!(matches!(
            PrimeChar::new(1),
            Err(Error::CharacteristicOutOfRange(1))
        ));
        assert!(matches!(
            PrimeChar::new(101),
            Err(Error::CharacteristicOutOfRange(101))
        ));
        assert!(matches!(PrimeChar::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(PrimeChar::new(91), Err(Error::NotPrime(91))));
    }

    #[test]
    fn small_identities() {
        assert_eq!(el(1, 2).add(el(1, 2)).unwrap().value(), 0);
        assert_eq!(el(2, 3).mul(el(2, 3)).unwrap().value(), 1);
        assert_eq!(el(3, 5).add(el(4, 5)).unwrap().value(), 2);
        assert_eq!(el(-1, 7).value(), 6);
        assert_eq!(el(3, 7).neg().value(), 4);
    }

    #[test]
    fn inverses() {
        assert_eq!(el(2, 5).inv().unwrap().value(), 3);
        assert_eq!(el(2, 3).inv().unwrap().value(), 2);
        assert_eq!(el(3, 7).inv().unwrap().value(), 5);
        assert!(matches!(el(0, 7).inv(), Err(Error::DivisionByZero)));
        assert!(matches!(el(5, 5).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mismatched_characteristics() {
        assert!(matches!(
            el(1, 2).add(el(1, 3)),
            Err(Error::CharacteristicMismatch { left: 2, right: 3 })
        ));
        assert!(el(1, 5).mul(el(1, 7)).is_err());
    }

    #[test]
    fn exhaustive_field_axioms_small_primes() {
        for p in [2u32, 3, 5, 7] {
            let all: Vec<FpElem> = (0..p as i64).map(|v| el(v, p)).collect();
            for &a in &all {
                if !a.is_zero() {
                    assert_eq!(
                        a.mul(a.inv().unwrap()).unwrap(),
                        FpElem::one(a.characteristic())
                    );
                }
                for &b in &all {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    assert_eq!(a.sub(b).unwrap().add(b).unwrap(), a);
                    // Frobenius is additive
                    let lhs = a.add(b).unwrap().pow(p as u64);
                    let rhs = a.pow(p as u64).add(b.pow(p as u64)).unwrap();
                    assert_eq!(lhs, rhs);
                    for &c in &all {
                        let ab_c = a.add(b).unwrap().add(c).unwrap();
                        let a_bc = a.add(b.add(c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let m1 = a.mul(b).unwrap().mul(c).unwrap();
                        let m2 = a.mul(b.mul(c).unwrap()).unwrap();
                        assert_eq!(m1, m2);
                        let d1 = a.mul(b.add(c).unwrap()).unwrap();
                        let d2 = a.mul(b).unwrap().add(a.mul(c).unwrap()).unwrap();
                        assert_eq!(d1, d2);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_powers() {
        let two = PrimeChar::new(2).unwrap();
        assert!(two.is_power(1));
        assert!(two.is_power(8));
        assert!(!two.is_power(6));
        assert_eq!(two.log_exact(8), Some(3));
        assert_eq!(two.log_exact(1), None);
        let five = PrimeChar::new(5).unwrap();
        assert_eq!(five.log_exact(5), Some(1));
        assert!(!five.is_power(0));
    }
}
