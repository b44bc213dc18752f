//! Buchberger completion with the Gebauer–Möller pair update.
//!
//! The same loop serves both orderings; only the division routine differs.
//! For the local ordering the S-polynomials are reduced with Mora's weak
//! normal form, which is what makes the result a standard basis of the
//! ideal's extension to the local ring at the origin.

use std::sync::Arc;

use super::reduce::{
    cut_tail_at_corner, ecart, global_normal_form, local_tail_reduce, mora_weak_normal_form, Elem,
    NoRecord, StepBudget,
};
use super::{EngineConfig, LeadingIdeal, StandardBasis};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{merge_scaled, Polynomial, Ring, Term};

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Completion<'a> {
    ring: &'a Arc<Ring>,
    cfg: &'a EngineConfig,
    polys: Vec<Elem>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    budget: StepBudget,
    pairs_done: u64,
    /// Local ordering only: once the leading ideal contains every monomial
    /// of this degree, so does the ideal, and higher terms can be dropped.
    corner: Option<u32>,
}

impl<'a> Completion<'a> {
    fn reduce(&mut self, f: Vec<Term>) -> Result<Vec<Term>> {
        let ring = self.ring.as_ref();
        let basis: Vec<&Elem> = self
            .polys
            .iter()
            .zip(&self.active)
            .filter_map(|(g, &a)| a.then_some(g))
            .collect();
        if ring.order().is_local() {
            mora_weak_normal_form(
                ring,
                f,
                &basis,
                self.corner,
                &mut self.budget,
                &mut NoRecord,
            )
        } else {
            global_normal_form(ring, f, &basis, &mut self.budget, &mut NoRecord)
        }
    }

    fn spoly(&self, pair: &Pair) -> Result<Vec<Term>> {
        let ring = self.ring.as_ref();
        let p = ring.characteristic();
        let (a, b) = (&self.polys[pair.i], &self.polys[pair.j]);
        // both elements are monic
        let ma = a.lm.quotient_of(&pair.lcm);
        let mb = b.lm.quotient_of(&pair.lcm);
        let scaled_a = merge_scaled(ring, &[], 1, &ma, &a.terms)?;
        merge_scaled(ring, &scaled_a, p.neg(1), &mb, &b.terms)
    }

    /// Inserts a monic element whose leading monomial is irreducible
    /// modulo the active set, updating the pair queue.
    fn insert(&mut self, h: Elem) {
        let t = self.polys.len();
        let lm_h = h.lm;

        // pairs (i, t) for all active i, pruned by criterion M and the product criterion
        let mut fresh: Vec<(Pair, bool)> = self
            .polys
            .iter()
            .enumerate()
            .filter(|(i, _)| self.active[*i])
            .map(|(i, g)| {
                (
                    Pair {
                        i,
                        j: t,
                        lcm: g.lm.lcm(&lm_h),
                    },
                    g.lm.is_coprime(&lm_h),
                )
            })
            .collect();

        if self.cfg.use_criteria {
            let mut kept: Vec<(Pair, bool)> = Vec::with_capacity(fresh.len());
            for k in 0..fresh.len() {
                let (pair, coprime) = fresh[k];
                let dominated = !coprime
                    && fresh.iter().enumerate().any(|(l, (other, _))| {
                        l != k && other.lcm.divides(&pair.lcm) && (other.lcm != pair.lcm || l < k)
                    });
                if !dominated {
                    kept.push((pair, coprime));
                }
            }
            // a surviving coprime pair witnesses its whole lcm class; drop it last
            fresh = kept.into_iter().filter(|(_, coprime)| !coprime).collect();

            // chain criterion on old pairs
            let polys = &self.polys;
            self.pairs.retain(|old| {
                !(lm_h.divides(&old.lcm)
                    && polys[old.i].lm.lcm(&lm_h) != old.lcm
                    && polys[old.j].lm.lcm(&lm_h) != old.lcm)
            });
        }
        self.pairs.extend(fresh.into_iter().map(|(pair, _)| pair));

        for (g, a) in self.polys.iter().zip(self.active.iter_mut()) {
            if *a && lm_h.divides(&g.lm) {
                *a = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
        if self.ring.order().is_local()
            && (self.corner.is_some() || lm_h.pure_power_var().is_some())
        {
            self.update_corner();
        }
    }

    fn update_corner(&mut self) {
        let lms = self
            .polys
            .iter()
            .zip(&self.active)
            .filter_map(|(g, &a)| a.then_some(g.lm))
            .collect();
        let Some(bound) = LeadingIdeal::new(self.ring.nvars(), lms).corner_bound() else {
            return;
        };
        if self.corner.is_some_and(|c| c <= bound) {
            return;
        }
        self.corner = Some(bound);
        for g in &mut self.polys {
            cut_tail_at_corner(&mut g.terms, bound);
            g.ecart = ecart(&g.terms);
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        // normal strategy: smallest lcm degree, ties to the oldest pair
        let idx = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, pr)| (pr.lcm.degree(), pr.j, pr.i))?
            .0;
        Some(self.pairs.swap_remove(idx))
    }
}

pub(super) fn complete(
    ring: &Arc<Ring>,
    gens: Vec<Polynomial>,
    cfg: &EngineConfig,
) -> Result<StandardBasis> {
    let mut run = Completion {
        ring,
        cfg,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        budget: StepBudget::new(cfg),
        pairs_done: 0,
        corner: None,
    };

    let one = || Polynomial::constant(ring, 1);

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let h = run.reduce(g.into_terms())?;
        if h.is_empty() {
            continue;
        }
        let h = monic(ring, h);
        if h.lm.is_one() {
            return Ok(StandardBasis::from_parts(ring, vec![one()]));
        }
        run.insert(h);
    }

    while let Some(pair) = run.next_pair() {
        run.pairs_done += 1;
        if run.pairs_done > cfg.pair_cap {
            return Err(Error::EngineLimit {
                what: "critical pairs",
                cap: cfg.pair_cap,
            });
        }
        let s = run.spoly(&pair)?;
        let h = run.reduce(s)?;
        if h.is_empty() {
            continue;
        }
        let h = monic(ring, h);
        if h.lm.is_one() {
            return Ok(StandardBasis::from_parts(ring, vec![one()]));
        }
        run.insert(h);
    }

    // keep the minimal basis and sort it by leading monomial, largest first
    let mut minimal: Vec<Elem> = run
        .polys
        .into_iter()
        .zip(run.active)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    let order = ring.order();
    minimal.sort_by(|a, b| order.cmp(&b.lm, &a.lm));

    let leading = LeadingIdeal::new(ring.nvars(), minimal.iter().map(|g| g.lm).collect());
    let mut budget = run.budget;
    let reduced = interreduce(ring, minimal, &leading, &mut budget)?;
    let polys = reduced
        .into_iter()
        .map(|g| Polynomial::from_sorted(ring, g.terms))
        .collect();
    Ok(StandardBasis::from_parts(ring, polys))
}

fn monic(ring: &Ring, mut h: Vec<Term>) -> Elem {
    let p = ring.characteristic();
    let inv = p.inv(h[0].coeff).expect("nonzero leading coefficient");
    if inv != 1 {
        for t in &mut h {
            t.coeff = p.mul(t.coeff, inv);
        }
    }
    Elem::new(h)
}

/// Tail-reduces every basis element against the others. For the local
/// ordering this is only done when the quotient is finite, where terms
/// above the highest corner can be dropped.
fn interreduce(
    ring: &Arc<Ring>,
    basis: Vec<Elem>,
    leading: &LeadingIdeal,
    budget: &mut StepBudget,
) -> Result<Vec<Elem>> {
    let r = ring.as_ref();
    if r.order().is_local() {
        let Some(bound) = leading.corner_bound() else {
            return Ok(basis);
        };
        let mut out = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&Elem> = basis
                .iter()
                .enumerate()
                .filter_map(|(l, g)| (l != k).then_some(g))
                .collect();
            let g = &basis[k];
            let lead = g.terms[0];
            let mut tail = local_tail_reduce(r, g.terms[1..].to_vec(), &others, bound, budget)?;
            tail.insert(0, lead);
            out.push(Elem::new(tail));
        }
        Ok(out)
    } else {
        let mut out = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&Elem> = basis
                .iter()
                .enumerate()
                .filter_map(|(l, g)| (l != k).then_some(g))
                .collect();
            let g = &basis[k];
            let mut tail =
                global_normal_form(r, g.terms[1..].to_vec(), &others, budget, &mut NoRecord)?;
            tail.insert(0, g.terms[0]);
            out.push(Elem::new(tail));
        }
        Ok(out)
    }
}
