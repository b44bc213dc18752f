//! Division routines: classical full reduction for the global ordering and
//! Mora's écart-driven weak normal form for the local ordering.

use super::EngineConfig;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{merge_scaled, Ring, Term};

/// A reducer: canonical nonzero terms plus cached leading monomial and écart.
#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub terms: Vec<Term>,
    pub lm: Monomial,
    pub ecart: u32,
}

impl Elem {
    pub fn new(terms: Vec<Term>) -> Self {
        let lm = terms[0].mono;
        let ecart = ecart(&terms);
        Elem { terms, lm, ecart }
    }

    #[inline]
    pub fn lc(&self) -> u32 {
        self.terms[0].coeff
    }
}

/// `max total degree - degree of leading monomial`; zero for global degree orderings.
pub(crate) fn ecart(terms: &[Term]) -> u32 {
    let lead = terms[0].mono.degree();
    let top = terms.iter().map(|t| t.mono.degree()).max().unwrap_or(lead);
    top - lead
}

/// Counts reduction steps, and the terms they write, against the caps of
/// one engine call.
#[derive(Debug)]
pub(crate) struct StepBudget {
    steps: u64,
    terms: u64,
    step_cap: u64,
    term_cap: u64,
}

impl StepBudget {
    pub fn new(cfg: &EngineConfig) -> Self {
        StepBudget {
            steps: 0,
            terms: 0,
            step_cap: cfg.step_cap,
            term_cap: cfg.term_cap,
        }
    }

    /// One reduction step that produced a polynomial of `written` terms.
    #[inline]
    pub fn tick(&mut self, written: usize) -> Result<()> {
        self.steps += 1;
        self.terms += written as u64;
        if self.steps > self.step_cap {
            return Err(Error::EngineLimit {
                what: "reduction steps",
                cap: self.step_cap,
            });
        }
        if self.terms > self.term_cap {
            return Err(Error::EngineLimit {
                what: "terms written",
                cap: self.term_cap,
            });
        }
        Ok(())
    }
}

/// Which polynomial served as reducer in one step.
#[derive(Clone, Copy, Debug)]
pub(crate) enum ReducerRef {
    Basis(usize),
    /// An intermediate remainder that Mora's algorithm appended to the reducer set.
    Extra(usize),
}

/// Observer for reduction steps; lets tests reconstruct exact cofactors.
pub(crate) trait Recorder {
    /// `h <- h - c * mono * reducer`.
    fn step(&mut self, reducer: ReducerRef, c: u32, mono: &Monomial) -> Result<()>;
    /// The current remainder was appended to the reducer set.
    fn push_extra(&mut self) -> Result<()>;
}

pub(crate) struct NoRecord;

impl Recorder for NoRecord {
    #[inline]
    fn step(&mut self, _: ReducerRef, _: u32, _: &Monomial) -> Result<()> {
        Ok(())
    }
    #[inline]
    fn push_extra(&mut self) -> Result<()> {
        Ok(())
    }
}

#[inline]
fn reduce_once(
    ring: &Ring,
    h: &[Term],
    target: Term,
    reducer: &Elem,
) -> Result<(Vec<Term>, u32, Monomial)> {
    let p = ring.characteristic();
    let shift = reducer.lm.quotient_of(&target.mono);
    let factor = p.mul(target.coeff, p.inv(reducer.lc()).expect("nonzero lc"));
    let c = p.neg(factor);
    let out = merge_scaled(ring, h, c, &shift, &reducer.terms)?;
    Ok((out, factor, shift))
}

/// Full division for a global (well-)ordering: no term of the result is
/// divisible by a leading monomial of `basis`.
pub(crate) fn global_normal_form<R: Recorder>(
    ring: &Ring,
    f: Vec<Term>,
    basis: &[&Elem],
    budget: &mut StepBudget,
    rec: &mut R,
) -> Result<Vec<Term>> {
    let mut h = f;
    let mut done: Vec<Term> = Vec::new();
    // terms before `start` are irreducible and already copied into `done`
    let mut start = 0;
    while start < h.len() {
        let t = h[start];
        match basis.iter().position(|g| g.lm.divides(&t.mono)) {
            Some(k) => {
                let (next, factor, shift) = reduce_once(ring, &h[start..], t, basis[k])?;
                rec.step(ReducerRef::Basis(k), factor, &shift)?;
                budget.tick(next.len())?;
                h = next;
                start = 0;
            }
            None => {
                done.push(t);
                start += 1;
            }
        }
    }
    Ok(done)
}

/// Mora's weak normal form. The result `h` satisfies `u*f - h in <basis>` for a
/// unit `u` of the local ring, and `LM(h)` is not divisible by any leading
/// monomial of `basis` (tail terms are left untouched).
///
/// With `corner = Some(d)` the caller asserts that every monomial of degree
/// `d` lies in the ideal; terms of degree `>= d` are then dropped as they
/// appear.
pub(crate) fn mora_weak_normal_form<R: Recorder>(
    ring: &Ring,
    f: Vec<Term>,
    basis: &[&Elem],
    corner: Option<u32>,
    budget: &mut StepBudget,
    rec: &mut R,
) -> Result<Vec<Term>> {
    let mut h = f;
    if let Some(d) = corner {
        cut_at_corner(&mut h, d);
    }
    let mut extra: Vec<Elem> = Vec::new();
    while let Some(&lead) = h.first() {
        let mut best: Option<(u32, ReducerRef)> = None;
        for (k, g) in basis.iter().enumerate() {
            if g.lm.divides(&lead.mono) && best.is_none_or(|(e, _)| g.ecart < e) {
                best = Some((g.ecart, ReducerRef::Basis(k)));
            }
        }
        for (k, g) in extra.iter().enumerate() {
            if g.lm.divides(&lead.mono) && best.is_none_or(|(e, _)| g.ecart < e) {
                best = Some((g.ecart, ReducerRef::Extra(k)));
            }
        }
        let Some((reducer_ecart, which)) = best else {
            break;
        };
        if reducer_ecart > ecart(&h) {
            extra.push(Elem::new(h.clone()));
            rec.push_extra()?;
        }
        let reducer = match which {
            ReducerRef::Basis(k) => basis[k],
            ReducerRef::Extra(k) => &extra[k],
        };
        let (next, factor, shift) = reduce_once(ring, &h, lead, reducer)?;
        rec.step(which, factor, &shift)?;
        budget.tick(next.len())?;
        h = next;
        if let Some(d) = corner {
            cut_at_corner(&mut h, d);
        }
    }
    Ok(h)
}

/// Drops the terms of degree `>= d` from a polynomial sorted by a local
/// degree ordering; if the leading term itself is that high, the whole
/// polynomial goes.
pub(crate) fn cut_at_corner(h: &mut Vec<Term>, d: u32) {
    let k = h
        .iter()
        .position(|t| t.mono.degree() >= d)
        .unwrap_or(h.len());
    h.truncate(k);
}

/// Like [`cut_at_corner`] but always keeps the leading term.
pub(crate) fn cut_tail_at_corner(h: &mut Vec<Term>, d: u32) {
    let k = h
        .iter()
        .skip(1)
        .position(|t| t.mono.degree() >= d)
        .map_or(h.len(), |k| k + 1);
    h.truncate(k);
}

/// Reduces the tail of `h` (whose leading term is already irreducible) in the
/// local ring, discarding every term of total degree `>= bound`. Sound only
/// when all monomials of degree `bound` lie in the ideal's extension to the
/// local ring.
pub(crate) fn local_tail_reduce(
    ring: &Ring,
    mut h: Vec<Term>,
    basis: &[&Elem],
    bound: u32,
    budget: &mut StepBudget,
) -> Result<Vec<Term>> {
    let mut k = 0;
    while k < h.len() {
        let t = h[k];
        if t.mono.degree() >= bound {
            // local order lists terms by increasing degree
            h.truncate(k);
            break;
        }
        match basis.iter().find(|g| g.lm.divides(&t.mono)) {
            Some(g) => {
                let (tail, _, _) = reduce_once(ring, &h[k..], t, g)?;
                budget.tick(tail.len())?;
                h.truncate(k);
                h.extend(tail);
            }
            None => k += 1,
        }
    }
    Ok(h)
}
