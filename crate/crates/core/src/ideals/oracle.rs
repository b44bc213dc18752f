//! Independent length computation by linear algebra in `k[x]/m^D`.
//!
//! For an ideal `I` and the maximal ideal `m` at the origin,
//! `(I*O + m^D)/m^D` is spanned by the truncations of `u*g` for monomials
//! `u` and generators `g`. Echelonizing those rows with pivots on the lowest
//! degree term gives `c(D) = dim O/(I + m^D)` for every `D` up to the
//! truncation degree at once. Once `c(D + 1) = c(D)`, Nakayama's lemma gives
//! `m^D` inside `I*O`, so the length is `c(D)`.
//!
//! No standard basis is involved, which makes this a cross-check of the
//! completion engine.

use std::collections::HashMap;

use serde::Serialize;

use super::IdealPresentation;
use crate::field::PrimeChar;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OracleOutcome {
    /// `m^degree` lies in the ideal and the quotient has length `length`.
    Stable { length: u64, degree: u32 },
    /// No stabilization below the degree cap.
    Unstable { cap: u32 },
}

impl OracleOutcome {
    pub fn length(self) -> Option<u64> {
        match self {
            OracleOutcome::Stable { length, .. } => Some(length),
            OracleOutcome::Unstable { .. } => None,
        }
    }
}

/// A truncation degree that leaves every generator intact: at least 64 and
/// at least twice the largest generator degree.
pub fn degree_cap_for(ideal: &IdealPresentation) -> u32 {
    let top = ideal
        .gens()
        .iter()
        .map(Polynomial::total_degree)
        .max()
        .unwrap_or(0);
    (2 * top).max(64)
}

/// Computes the local length of `O/I*O`, truncating at degrees 8, 16, 32, ...
/// up to `degree_cap`.
pub fn truncation_length_oracle(ideal: &IdealPresentation, degree_cap: u32) -> OracleOutcome {
    let degree_cap = degree_cap.max(1);
    let mut d = 8.min(degree_cap);
    loop {
        let counts = colengths(ideal, d);
        // counts[k] = dim O/(I + m^k) for k = 0..=d
        if let Some(k) = (0..d as usize).find(|&k| counts[k] == counts[k + 1]) {
            return OracleOutcome::Stable {
                length: counts[k],
                degree: k as u32,
            };
        }
        if d >= degree_cap {
            return OracleOutcome::Unstable { cap: degree_cap };
        }
        d = (d * 2).min(degree_cap);
    }
}

/// Monomials of degree `< d` in `n` variables, by increasing degree.
fn monomials_below(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::ONE];
    let mut layer = vec![Monomial::ONE];
    for _ in 1..d {
        let mut next = Vec::new();
        for m in &layer {
            // extend only at or after the last variable used, so each monomial appears once
            let last = (0..n).rev().find(|&i| m.exp(i) > 0).unwrap_or(0);
            for i in last..n {
                next.push(m.checked_mul(&Monomial::var(i, 1)).expect("small degree"));
            }
        }
        out.extend_from_slice(&next);
        layer = next;
    }
    out
}

type Row = Vec<(u32, u32)>;

/// Returns `c(0), ..., c(d)`.
fn colengths(ideal: &IdealPresentation, d: u32) -> Vec<u64> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let p = ring.characteristic();
    let columns = monomials_below(n, d);
    let index: HashMap<Monomial, u32> = columns
        .iter()
        .enumerate()
        .map(|(k, m)| (*m, k as u32))
        .collect();
    let degree_of_col: Vec<u32> = columns.iter().map(Monomial::degree).collect();

    let mut rows: Vec<Row> = Vec::new();
    for g in ideal.gens() {
        let Some(low) = g.order_at_origin() else {
            continue;
        };
        for u in columns.iter().take_while(|u| u.degree() + low < d) {
            if let Some(row) = shifted_row(g, u, d, &index) {
                rows.push(row);
            }
        }
    }
    // rows with high pivots first, so low rows meet a filled pivot table
    rows.sort_by_key(|r| std::cmp::Reverse(r[0].0));

    let mut pivots: Vec<Option<Row>> = vec![None; columns.len()];
    for row in rows {
        if let Some(reduced) = reduce_row(row, &pivots, p) {
            let c = reduced[0].0 as usize;
            pivots[c] = Some(reduced);
        }
    }

    let mut pivots_below = vec![0u64; d as usize + 1];
    for (c, slot) in pivots.iter().enumerate() {
        if slot.is_some() {
            pivots_below[degree_of_col[c] as usize + 1] += 1;
        }
    }
    let mut monos_below = vec![0u64; d as usize + 1];
    for &deg in &degree_of_col {
        monos_below[deg as usize + 1] += 1;
    }
    let mut out = vec![0u64; d as usize + 1];
    let (mut monos, mut pivs) = (0u64, 0u64);
    for k in 0..=d as usize {
        monos += monos_below[k];
        pivs += pivots_below[k];
        out[k] = monos - pivs;
    }
    out
}

fn shifted_row(
    g: &Polynomial,
    u: &Monomial,
    d: u32,
    index: &HashMap<Monomial, u32>,
) -> Option<Row> {
    let mut row: Row = g
        .terms()
        .iter()
        .filter(|t| t.mono.degree() + u.degree() < d)
        .map(|t| {
            let m = t.mono.checked_mul(u).expect("degree below truncation");
            (index[&m], t.coeff)
        })
        .collect();
    if row.is_empty() {
        return None;
    }
    row.sort_unstable_by_key(|e| e.0);
    Some(row)
}

/// Eliminates the lowest entry of `row` against existing pivots until it is
/// new or the row vanishes.
fn reduce_row(mut row: Row, pivots: &[Option<Row>], p: PrimeChar) -> Option<Row> {
    loop {
        let &(col, coeff) = row.first()?;
        let Some(piv) = &pivots[col as usize] else {
            return Some(row);
        };
        let factor = p.mul(coeff, p.inv(piv[0].1).expect("nonzero pivot"));
        row = axpy(&row, p.neg(factor), piv, p);
    }
}

/// `a + c * b` on sorted sparse rows.
fn axpy(a: &[(u32, u32)], c: u32, b: &[(u32, u32)], p: PrimeChar) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, p.mul(c, b[j].1)));
            j += 1;
        } else {
            let v = p.add(a[i].1, p.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
