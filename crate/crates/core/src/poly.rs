//! Sparse multivariate polynomials over F_p.
//!
//! A [`Polynomial`] is a list of terms sorted strictly decreasing under the
//! ordering of its [`Ring`], with no zero coefficients. The zero polynomial
//! has no terms. All arithmetic keeps this canonical form, so structural
//! equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FpElem, PrimeChar};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Ambient ring `F_p[x_1, ..., x_n]` together with a monomial ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    char: PrimeChar,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(
        char: PrimeChar,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Ring>> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "need between 1 and {MAX_VARS} variables, got {}",
                vars.len()
            )));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(Ring { char, vars, order }))
    }

    /// `F_p[x, y, z]` with the given ordering.
    pub fn xyz(char: PrimeChar, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(char, &["x", "y", "z"], order).expect("static variable names are valid")
    }

    #[inline]
    pub fn characteristic(&self) -> PrimeChar {
        self.char
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same characteristic and variables, different ordering.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            char: self.char,
            vars: self.vars.clone(),
            order,
        })
    }

    /// Same field and variable names, ignoring the ordering.
    pub fn same_variables(&self, other: &Ring) -> bool {
        self.char == other.char && self.vars == other.vars
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        Polynomial::monomial(ring, Monomial::ONE, c)
    }

    pub fn monomial(ring: &Arc<Ring>, mono: Monomial, c: i64) -> Self {
        let coeff = ring.char.reduce_i64(c);
        let terms = if coeff == 0 {
            Vec::new()
        } else {
            vec![Term { mono, coeff }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::VariableOutOfRange {
                index,
                nvars: ring.nvars(),
            });
        }
        Ok(Polynomial::monomial(ring, Monomial::var(index, 1), 1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let p = ring.char;
        let raw = terms
            .into_iter()
            .map(|(mono, c)| Term {
                mono,
                coeff: p.reduce_i64(c),
            })
            .collect();
        Polynomial::from_raw(ring, raw)
    }

    /// Canonicalizes a vector of terms with coefficients already in `[0, p)`.
    pub(crate) fn from_raw(ring: &Arc<Ring>, mut raw: Vec<Term>) -> Self {
        let order = ring.order;
        let p = ring.char;
        raw.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = p.add(last.coeff, t.coeff),
                _ => terms.push(t),
            }
        }
        terms.retain(|t| t.coeff != 0);
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    /// Maximum total degree over all terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .max()
            .unwrap_or(0)
    }

    /// Minimum total degree over all terms (the order at the origin).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).min()
    }

    pub fn constant_term(&self) -> FpElem {
        let c = self
            .terms
            .iter()
            .find(|t| t.mono.is_one())
            .map_or(0, |t| t.coeff);
        FpElem::new(c as i64, self.ring.char)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn coefficient(&self, mono: &Monomial) -> FpElem {
        let c = self
            .terms
            .iter()
            .find(|t| t.mono == *mono)
            .map_or(0, |t| t.coeff);
        FpElem::new(c as i64, self.ring.char)
    }

    /// True iff variable `index` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(index) > 0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let terms = merge_scaled(&self.ring, &self.terms, 1, &Monomial::ONE, &other.terms)?;
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.ring.char.neg(1);
        let terms = merge_scaled(
            &self.ring,
            &self.terms,
            minus_one,
            &Monomial::ONE,
            &other.terms,
        )?;
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.char.neg(1))
    }

    /// Multiplies every coefficient by `c` (taken mod p).
    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.ring.char;
        let c = c % p.get();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono,
                coeff: p.mul(t.coeff, c),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => {
                let inv = self
                    .ring
                    .char
                    .inv(t.coeff)
                    .expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    /// Multiplies by the term `c * mono`.
    pub fn mul_term(&self, c: u32, mono: &Monomial) -> Result<Polynomial> {
        let p = self.ring.char;
        let c = c % p.get();
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                mono: t.mono.checked_mul(mono).ok_or(Error::ExponentOverflow)?,
                coeff: p.mul(t.coeff, c),
            });
        }
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.char;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push(Term {
                    mono: a.mono.checked_mul(&b.mono).ok_or(Error::ExponentOverflow)?,
                    coeff: p.mul(a.coeff, b.coeff),
                });
            }
        }
        Ok(Polynomial::from_raw(&self.ring, raw))
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if index >= n {
            return Err(Error::VariableOutOfRange { index, nvars: n });
        }
        let p = self.ring.char;
        let raw = self
            .terms
            .iter()
            .filter_map(|t| {
                let e = t.mono.exp(index);
                let c = p.mul(t.coeff, e as u32 % p.get());
                if c == 0 {
                    return None;
                }
                let lowered = Monomial::var(index, 1).quotient_of(&t.mono);
                Some(Term {
                    mono: lowered,
                    coeff: c,
                })
            })
            .collect();
        // lowering one exponent can reorder terms, so re-canonicalize
        Ok(Polynomial::from_raw(&self.ring, raw))
    }

    /// `f^(p^e)`, computed term-wise via additivity of Frobenius.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let p = self.ring.char;
        let q = (p.get() as u64)
            .checked_pow(e)
            .filter(|&q| q <= u16::MAX as u64)
            .ok_or(Error::ExponentOverflow)? as u32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                mono: t.mono.checked_pow(q).ok_or(Error::ExponentOverflow)?,
                coeff: p.pow(t.coeff, q as u64),
            });
        }
        // raising every exponent vector to the same power preserves both orderings
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Relabels variables: variable `i` becomes variable `perm[i]`.
    pub fn substitute_rename(&self, perm: &[usize]) -> Result<Polynomial> {
        let n = self.ring.nvars();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::InvalidPermutation(n));
        }
        for &t in perm {
            if t >= n || seen[t] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[t] = true;
        }
        let raw = self
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono.permuted(perm),
                coeff: t.coeff,
            })
            .collect();
        Ok(Polynomial::from_raw(&self.ring, raw))
    }

    /// Moves the polynomial into a ring with the same variables but another ordering.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if !self.ring.same_variables(ring) {
            return Err(Error::RingMismatch);
        }
        if self.ring.order == ring.order {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        Ok(Polynomial::from_raw(ring, self.terms.clone()))
    }

    /// Drops all terms of total degree `>= bound`.
    pub fn truncate_degree(&self, bound: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .copied()
            .filter(|t| t.mono.degree() < bound)
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }
}

/// `a + c * mono * b` for canonical term lists in the same ring.
pub(crate) fn merge_scaled(
    ring: &Ring,
    a: &[Term],
    c: u32,
    mono: &Monomial,
    b: &[Term],
) -> Result<Vec<Term>> {
    let p = ring.char;
    let order = ring.order;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let next_b = |j: usize| -> Result<Term> {
        let t = &b[j];
        Ok(Term {
            mono: t.mono.checked_mul(mono).ok_or(Error::ExponentOverflow)?,
            coeff: p.mul(t.coeff, c),
        })
    };
    let mut pending_b = if b.is_empty() || c == 0 {
        None
    } else {
        Some(next_b(0)?)
    };
    let b_len = if c == 0 { 0 } else { b.len() };
    while i < a.len() || pending_b.is_some() {
        match pending_b {
            None => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            Some(tb) => {
                let ord = if i < a.len() {
                    order.cmp(&a[i].mono, &tb.mono)
                } else {
                    Ordering::Less
                };
                match ord {
                    Ordering::Greater => {
                        out.push(a[i]);
                        i += 1;
                        continue;
                    }
                    Ordering::Less => out.push(tb),
                    Ordering::Equal => {
                        let s = p.add(a[i].coeff, tb.coeff);
                        if s != 0 {
                            out.push(Term {
                                mono: tb.mono,
                                coeff: s,
                            });
                        }
                        i += 1;
                    }
                }
                j += 1;
                pending_b = if j < b_len { Some(next_b(j)?) } else { None };
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if t.coeff != 1 || t.mono.is_one() {
                factors.push(t.coeff.to_string());
            }
            for (i, name) in self.ring.vars.iter().enumerate() {
                match t.mono.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
