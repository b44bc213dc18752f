//! Exponent vectors and the two monomial orderings used by the engine.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 8;

/// An exponent vector. Unused slots beyond the ring's variable count are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            m.deg += e;
        }
        Ok(m)
    }

    pub fn var(index: usize, power: u16) -> Self {
        let mut m = Monomial::ONE;
        m.exps[index] = power;
        m.deg = power as u32;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Index of the variable if this is a pure power `x_i^k` with `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        out.deg = self.deg + other.deg;
        Some(out)
    }

    pub fn checked_pow(&self, k: u32) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = (self.exps[i] as u32).checked_mul(k)?;
            out.exps[i] = u16::try_from(e).ok()?;
        }
        out.deg = self.deg.checked_mul(k)?;
        Some(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out.deg = other.deg - self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Relabels variables: exponent of variable `i` moves to slot `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (i, &target) in perm.iter().enumerate() {
            out.exps[target] = self.exps[i];
        }
        out.deg = self.deg;
        out
    }

    /// Reverse lexicographic tie-break: the monomial with the smaller exponent
    /// in the last differing variable is larger.
    #[inline]
    fn cmp_revlex(&self, other: &Monomial) -> Ordering {
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Which monomial ordering a ring uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic; a well-ordering.
    #[serde(rename = "GLOBAL_DEGREVLEX")]
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic; `1` is the largest monomial.
    #[serde(rename = "LOCAL_NEG_DEGREVLEX")]
    LocalNegDegRevLex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = match self {
            MonomialOrder::GlobalDegRevLex => a.deg.cmp(&b.deg),
            MonomialOrder::LocalNegDegRevLex => b.deg.cmp(&a.deg),
        };
        by_degree.then_with(|| a.cmp_revlex(b))
    }

    pub fn is_local(self) -> bool {
        matches!(self, MonomialOrder::LocalNegDegRevLex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::GlobalDegRevLex;
        // x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn local_order_puts_one_on_top() {
        let o = MonomialOrder::LocalNegDegRevLex;
        assert_eq!(o.cmp(&Monomial::ONE, &m(&[0, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_detected() {
        let big = Monomial::var(0, u16::MAX);
        assert!(big.checked_mul(&Monomial::var(0, 1)).is_none());
        assert!(Monomial::var(1, 40000).checked_pow(2).is_none());
        assert!(Monomial::from_exponents(&[70000]).is_err());
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[3, 1, 4]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 4]));
        assert_eq!(m(&[2, 0, 1]).lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
        assert!(m(&[2, 0, 0]).is_coprime(&m(&[0, 3, 1])));
        assert_eq!(m(&[0, 4, 0]).pure_power_var(), Some(1));
        assert_eq!(m(&[1, 4, 0]).pure_power_var(), None);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, 3).prop_map(|e| Monomial::from_exponents(&e).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn orders_are_total_and_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            for o in [MonomialOrder::GlobalDegRevLex, MonomialOrder::LocalNegDegRevLex] {
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                let ac = a.checked_mul(&c).unwrap();
                let bc = b.checked_mul(&c).unwrap();
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&ac, &bc));
            }
        }
    }
}
