//! Gröbner bases for the global ordering and standard bases for the local
//! ordering, plus everything computed from a finished basis: normal forms,
//! membership, the leading-term ideal, and quotient dimensions.

mod complete;
mod reduce;

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use reduce::{
    global_normal_form, local_tail_reduce, mora_weak_normal_form, Elem, NoRecord, Recorder,
    ReducerRef, StepBudget,
};

/// Resource caps for one engine call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of single reduction steps.
    pub step_cap: u64,
    /// Maximum number of terms written by all reduction steps together.
    pub term_cap: u64,
    /// Maximum number of critical pairs processed.
    pub pair_cap: u64,
    /// Apply the product and chain criteria when updating the pair queue.
    pub use_criteria: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            step_cap: 1_000_000,
            term_cap: 100_000_000,
            pair_cap: 1_000_000,
            use_criteria: true,
        }
    }
}

/// A quotient dimension or length: finite, or infinite when the ideal is
/// not zero-dimensional (resp. not primary to the origin).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// Minimal generators of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingIdeal {
    nvars: usize,
    monomials: Vec<Monomial>,
}

impl LeadingIdeal {
    /// Builds the ideal, discarding generators divisible by others.
    pub fn new(nvars: usize, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by_key(|m| m.degree());
        monomials.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(monomials.len());
        for m in monomials {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        LeadingIdeal {
            nvars,
            monomials: minimal,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.iter().any(|g| g.divides(m))
    }

    pub fn is_whole_ring(&self) -> bool {
        self.monomials.iter().any(Monomial::is_one)
    }

    /// True iff every variable has a pure power in the ideal.
    pub fn is_dimension_zero(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.monomials
                .iter()
                .any(|m| m.is_one() || m.pure_power_var() == Some(i))
        })
    }

    /// Monomials outside the ideal, or `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_dimension_zero() {
            return None;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars];
        self.walk(0, &mut exps, &mut out);
        Some(out)
    }

    fn walk(&self, var: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == self.nvars {
            out.push(Monomial::from_exponents(exps).expect("bounded by pure powers"));
            return;
        }
        loop {
            let m = Monomial::from_exponents(exps).expect("bounded by pure powers");
            // a monomial in the ideal stays there when any exponent grows
            if self.contains(&m) {
                break;
            }
            self.walk(var + 1, exps, out);
            exps[var] += 1;
        }
        exps[var] = 0;
    }

    pub fn standard_monomial_count(&self) -> Length {
        match self.standard_monomials() {
            Some(v) => Length::Finite(v.len() as u64),
            None => Length::Infinite,
        }
    }

    /// `1 + max degree of a standard monomial`: every monomial of at least this
    /// degree lies in the ideal. `None` for infinite quotients.
    pub fn corner_bound(&self) -> Option<u32> {
        let std = self.standard_monomials()?;
        Some(std.iter().map(|m| m.degree() + 1).max().unwrap_or(0))
    }
}

/// A completed Gröbner basis (global ordering) or standard basis (local
/// ordering). Generators are monic with pairwise non-divisible leading
/// monomials, sorted by decreasing leading monomial.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    elems: Vec<Elem>,
    leading: LeadingIdeal,
    corner_bound: Option<u32>,
}

/// Outcome of a traced reduction: `unit * f - sum(quotients[i] * generators[i]) = remainder`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl StandardBasis {
    fn from_parts(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Self {
        let elems: Vec<Elem> = generators
            .iter()
            .map(|g| Elem::new(g.terms().to_vec()))
            .collect();
        let leading = LeadingIdeal::new(ring.nvars(), elems.iter().map(|e| e.lm).collect());
        let corner_bound = if ring.order().is_local() {
            leading.corner_bound()
        } else {
            None
        };
        StandardBasis {
            ring: ring.clone(),
            generators,
            elems,
            leading,
            corner_bound,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ordering(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_ideal(&self) -> &LeadingIdeal {
        &self.leading
    }

    pub fn is_dimension_zero(&self) -> bool {
        self.leading.is_dimension_zero()
    }

    /// Number of monomials outside the leading ideal. For a local standard
    /// basis of an ideal primary to the origin this is the length of the
    /// local quotient ring.
    pub fn standard_monomial_count(&self) -> Length {
        self.leading.standard_monomial_count()
    }

    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        self.leading.standard_monomials()
    }

    fn bring(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_variables(&self.ring) {
            return Err(Error::RingMismatch);
        }
        f.in_ring(&self.ring)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.normal_form_with(f, &EngineConfig::default())
    }

    /// Reduces `f` modulo the basis.
    ///
    /// Global ordering: the classical remainder, with no term divisible by a
    /// leading monomial. Local ordering: Mora's normal form, representing the
    /// class of `u*f` for a unit `u` of the local ring; when the quotient is
    /// finite the tail is reduced too and terms beyond the highest corner are
    /// dropped, otherwise only the leading term is guaranteed irreducible.
    pub fn normal_form_with(&self, f: &Polynomial, cfg: &EngineConfig) -> Result<Polynomial> {
        let f = self.bring(f)?;
        let ring = self.ring.as_ref();
        let mut budget = StepBudget::new(cfg);
        let basis: Vec<&Elem> = self.elems.iter().collect();
        let terms = if ring.order().is_local() {
            let weak = mora_weak_normal_form(
                ring,
                f.into_terms(),
                &basis,
                self.corner_bound,
                &mut budget,
                &mut NoRecord,
            )?;
            match self.corner_bound {
                Some(bound) => local_tail_reduce(ring, weak, &basis, bound, &mut budget)?,
                None => weak,
            }
        } else {
            global_normal_form(ring, f.into_terms(), &basis, &mut budget, &mut NoRecord)?
        };
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Membership of `f` in the ideal (extended to the local ring for the local ordering).
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.contains_with(f, &EngineConfig::default())
    }

    pub fn contains_with(&self, f: &Polynomial, cfg: &EngineConfig) -> Result<bool> {
        let f = self.bring(f)?;
        let ring = self.ring.as_ref();
        let mut budget = StepBudget::new(cfg);
        let basis: Vec<&Elem> = self.elems.iter().collect();
        let rem = if ring.order().is_local() {
            let corner = self.corner_bound;
            mora_weak_normal_form(
                ring,
                f.into_terms(),
                &basis,
                corner,
                &mut budget,
                &mut NoRecord,
            )?
        } else {
            global_normal_form(ring, f.into_terms(), &basis, &mut budget, &mut NoRecord)?
        };
        Ok(rem.is_empty())
    }

    /// Reduction with explicit cofactors. The remainder is the weak normal
    /// form (local) or the full remainder (global); no truncation is applied,
    /// so the identity in [`Reduction`] holds exactly in the polynomial ring.
    pub fn reduce_with_trace(&self, f: &Polynomial) -> Result<Reduction> {
        let f = self.bring(f)?;
        let ring = self.ring.as_ref();
        let mut budget = StepBudget::new(&EngineConfig::default());
        let basis: Vec<&Elem> = self.elems.iter().collect();
        let mut rec = TraceRecorder::new(&self.ring, self.generators.len());
        let terms = if ring.order().is_local() {
            mora_weak_normal_form(
                ring,
                f.clone().into_terms(),
                &basis,
                None,
                &mut budget,
                &mut rec,
            )?
        } else {
            global_normal_form(ring, f.clone().into_terms(), &basis, &mut budget, &mut rec)?
        };
        Ok(Reduction {
            unit: rec.unit,
            quotients: rec.quotients,
            remainder: Polynomial::from_sorted(&self.ring, terms),
        })
    }

    /// Normal forms of all S-polynomials of generator pairs; all zero for a
    /// correctly completed basis.
    pub fn s_pair_residues(&self) -> Result<Vec<Polynomial>> {
        self.s_pair_residues_with(&EngineConfig::default())
    }

    pub fn s_pair_residues_with(&self, cfg: &EngineConfig) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let (a, b) = (&self.elems[i], &self.elems[j]);
                let lcm = a.lm.lcm(&b.lm);
                let sa = self.generators[i].mul_term(1, &a.lm.quotient_of(&lcm))?;
                let sb = self.generators[j].mul_term(1, &b.lm.quotient_of(&lcm))?;
                let s = sa.sub(&sb)?;
                let ring = self.ring.as_ref();
                let mut budget = StepBudget::new(cfg);
                let basis: Vec<&Elem> = self.elems.iter().collect();
                let rem = if ring.order().is_local() {
                    let terms = s.into_terms();
                    mora_weak_normal_form(ring, terms, &basis, None, &mut budget, &mut NoRecord)?
                } else {
                    global_normal_form(ring, s.into_terms(), &basis, &mut budget, &mut NoRecord)?
                };
                out.push(Polynomial::from_sorted(&self.ring, rem));
            }
        }
        Ok(out)
    }
}

/// Completes `gens` to a standard basis under `order` with default caps.
pub fn complete_basis(gens: &[Polynomial], order: MonomialOrder) -> Result<StandardBasis> {
    complete_basis_with(gens, order, &EngineConfig::default())
}

pub fn complete_basis_with(
    gens: &[Polynomial],
    order: MonomialOrder,
    cfg: &EngineConfig,
) -> Result<StandardBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Usage("an ideal needs at least one generator".into()))?;
    let ring = first.ring().with_order(order);
    let moved = gens
        .iter()
        .map(|g| {
            if g.ring().same_variables(&ring) {
                g.in_ring(&ring)
            } else {
                Err(Error::RingMismatch)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    complete::complete(&ring, moved, cfg)
}

struct TraceRecorder {
    ring: Arc<Ring>,
    unit: Polynomial,
    quotients: Vec<Polynomial>,
    // cofactors (unit, quotients) of each intermediate remainder Mora appended
    extras: Vec<(Polynomial, Vec<Polynomial>)>,
}

impl TraceRecorder {
    fn new(ring: &Arc<Ring>, nbasis: usize) -> Self {
        TraceRecorder {
            ring: ring.clone(),
            unit: Polynomial::constant(ring, 1),
            quotients: vec![Polynomial::zero(ring); nbasis],
            extras: Vec::new(),
        }
    }
}

impl Recorder for TraceRecorder {
    fn step(&mut self, reducer: ReducerRef, c: u32, mono: &Monomial) -> Result<()> {
        let shift = Polynomial::monomial(&self.ring, *mono, c as i64);
        match reducer {
            ReducerRef::Basis(k) => {
                self.quotients[k] = self.quotients[k].add(&shift)?;
            }
            ReducerRef::Extra(k) => {
                // the extra remainder is u_e*f - sum(q_e * basis)
                let (u, qs) = &self.extras[k];
                self.unit = self.unit.sub(&shift.mul(u)?)?;
                for (q, qe) in self.quotients.iter_mut().zip(qs) {
                    *q = q.sub(&shift.mul(qe)?)?;
                }
            }
        }
        Ok(())
    }

    fn push_extra(&mut self) -> Result<()> {
        self.extras
            .push((self.unit.clone(), self.quotients.clone()));
        Ok(())
    }
}
