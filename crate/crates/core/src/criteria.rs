//! Descent criteria for hypersurface singularities and the aggregated verdict.
//!
//! Every criterion except [`CriterionId::ShapeWitness`] is necessary: a FAIL
//! rules out descent. A passing shape witness is sufficient. The verdict is
//! never DESCENDS on the strength of necessary criteria alone.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::gbasis::{EngineConfig, Length};
use crate::ideals::{
    bracket_ideal_power, contains_with, jacobian_ideal, local_length_with, HypersurfaceGerm,
    IdealPresentation,
};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CriterionId {
    AnPPower,
    PicTorsionPGroup,
    Pi1Trivial,
    TjurinaPDivisible,
    LengthFormula,
    ThetaFree,
    InvertibleSummand,
    ShapeWitness,
}

impl CriterionId {
    /// Evaluation order: catalog lookups first, then the engine-backed tests.
    pub const ALL: [CriterionId; 8] = [
        CriterionId::AnPPower,
        CriterionId::PicTorsionPGroup,
        CriterionId::Pi1Trivial,
        CriterionId::TjurinaPDivisible,
        CriterionId::LengthFormula,
        CriterionId::ThetaFree,
        CriterionId::InvertibleSummand,
        CriterionId::ShapeWitness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CriterionId::AnPPower => "AN_P_POWER",
            CriterionId::PicTorsionPGroup => "PIC_TORSION_P_GROUP",
            CriterionId::Pi1Trivial => "PI1_TRIVIAL",
            CriterionId::TjurinaPDivisible => "TJURINA_P_DIVISIBLE",
            CriterionId::LengthFormula => "LENGTH_FORMULA",
            CriterionId::ThetaFree => "THETA_FREE",
            CriterionId::InvertibleSummand => "INVERTIBLE_SUMMAND",
            CriterionId::ShapeWitness => "SHAPE_WITNESS",
        }
    }

    pub fn is_necessary(self) -> bool {
        self != CriterionId::ShapeWitness
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
            Status::Undecided => "UNDECIDED",
        })
    }
}

/// The local fundamental group as recorded in the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pi1 {
    Trivial,
    Group {
        name: String,
        order: u64,
    },
    /// Tame group in large characteristic, known through the order of the
    /// characteristic-zero group.
    TameChar0 {
        order: u64,
    },
    Unknown,
}

impl Pi1 {
    /// Parses `0`, `-`, `NAME[ORDER]` or `tame[ORDER]`.
    pub fn parse(s: &str) -> Option<Pi1> {
        let s = s.trim();
        match s {
            "0" => return Some(Pi1::Trivial),
            "-" | "?" => return Some(Pi1::Unknown),
            _ => {}
        }
        let (name, rest) = s.split_once('[')?;
        let order: u64 = rest.strip_suffix(']')?.parse().ok()?;
        if order == 0 || name.is_empty() {
            return None;
        }
        if name == "tame" {
            Some(Pi1::TameChar0 { order })
        } else {
            Some(Pi1::Group {
                name: name.to_string(),
                order,
            })
        }
    }
}

impl fmt::Display for Pi1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1::Trivial => f.write_str("0"),
            Pi1::Group { name, order } => write!(f, "{name}[{order}]"),
            Pi1::TameChar0 { order } => write!(f, "tame[{order}]"),
            Pi1::Unknown => f.write_str("-"),
        }
    }
}

/// Facts about a germ that the engine cannot compute, taken from the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogFacts {
    /// `Some(n)` for type `A_n`.
    pub a_index: Option<u32>,
    pub pi1: Pi1,
    pub pic_order: u64,
    /// Descent established by an explicit construction not covered by the shape witness.
    pub known_descent: bool,
}

/// Outcome of testing one omitted variable in the invertible-summand criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandChoice {
    pub omitted: String,
    /// Local length of `(f_u, f_v, f)`.
    pub length: Length,
    pub parameter_ideal: bool,
    /// Whether `f_w` lies in the ideal; only tested for parameter ideals.
    pub contains_partial: Option<bool>,
}

impl SummandChoice {
    pub fn succeeds(&self) -> bool {
        self.parameter_ideal && self.contains_partial == Some(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Tjurina {
        tjurina: Length,
        p: u32,
    },
    Lengths {
        len_j: Length,
        len_jp: Length,
        expected_jp: Option<u64>,
    },
    ThetaFree {
        len_j: Length,
        len_jp: Length,
        expected_jp: Option<u64>,
        via: &'static str,
    },
    Summand {
        found: Option<String>,
        choices: Vec<SummandChoice>,
    },
    AnIndex {
        n: u32,
        n_plus_1: u64,
        exponent: Option<u32>,
    },
    PicOrder {
        order: u64,
    },
    Pi1 {
        pi1: Pi1,
    },
    Shape {
        variable: String,
        q: u32,
        rest: String,
    },
    ShapeSearch {
        max_q: u32,
    },
    Note {
        note: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: CriterionId,
    pub status: Status,
    pub witness: Option<Witness>,
}

impl CriterionReport {
    fn new(id: CriterionId, status: Status, witness: Witness) -> Self {
        CriterionReport {
            id,
            status,
            witness: Some(witness),
        }
    }

    fn not_applicable(id: CriterionId, note: impl Into<String>) -> Self {
        CriterionReport::new(
            id,
            Status::NotApplicable,
            Witness::Note { note: note.into() },
        )
    }

    fn undecided(id: CriterionId, err: &Error) -> Self {
        CriterionReport::new(
            id,
            Status::Undecided,
            Witness::Note {
                note: err.to_string(),
            },
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Descends,
    Blocked,
    Undetermined,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Descends => "DESCENDS",
            Outcome::Blocked => "BLOCKED",
            Outcome::Undetermined => "UNDETERMINED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Failing necessary criteria for BLOCKED, the passing shape witness for DESCENDS.
    pub reasons: Vec<CriterionReport>,
    /// DESCENDS rests on a catalog fact rather than a computed witness.
    pub from_catalog: bool,
}

impl Verdict {
    pub fn reason_ids(&self) -> Vec<CriterionId> {
        self.reasons.iter().map(|r| r.id).collect()
    }
}

/// Lengths of `O/J` and `O/J^[p]`, shared by three criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobianLengths {
    pub p: u32,
    pub dim: u32,
    pub len_j: Length,
    pub len_jp: Length,
}

impl JacobianLengths {
    pub fn compute(g: &HypersurfaceGerm, cfg: &EngineConfig) -> Result<Self> {
        let p = g.ring().characteristic();
        let j = jacobian_ideal(g);
        let len_j = local_length_with(&j, cfg)?;
        let len_jp = if len_j.is_finite() {
            local_length_with(&bracket_ideal_power(&j, g, 1, cfg)?, cfg)?
        } else {
            Length::Infinite
        };
        Ok(JacobianLengths {
            p: p.get(),
            dim: g.dim(),
            len_j,
            len_jp,
        })
    }

    /// `p^d * l(O/J)`, if finite and representable.
    pub fn expected_jp(&self) -> Option<u64> {
        let lj = self.len_j.finite()?;
        (self.p as u64).checked_pow(self.dim)?.checked_mul(lj)
    }

    pub fn formula_holds(&self) -> bool {
        self.expected_jp().is_some() && self.len_jp.finite() == self.expected_jp()
    }
}

const NON_ISOLATED: &str =
    "the jacobian quotient has infinite length: the origin is not an isolated singular point";
const SMOOTH: &str = "the jacobian ideal is the unit ideal: the origin is a smooth point";

fn tjurina_report(l: &JacobianLengths) -> CriterionReport {
    let id = CriterionId::TjurinaPDivisible;
    match l.len_j {
        Length::Infinite => CriterionReport::not_applicable(id, NON_ISOLATED),
        Length::Finite(0) => CriterionReport::not_applicable(id, SMOOTH),
        Length::Finite(t) => {
            let status = if t % l.p as u64 == 0 {
                Status::Pass
            } else {
                Status::Fail
            };
            CriterionReport::new(
                id,
                status,
                Witness::Tjurina {
                    tjurina: l.len_j,
                    p: l.p,
                },
            )
        }
    }
}

fn length_report(l: &JacobianLengths, id: CriterionId) -> CriterionReport {
    match l.len_j {
        Length::Infinite => return CriterionReport::not_applicable(id, NON_ISOLATED),
        Length::Finite(0) => return CriterionReport::not_applicable(id, SMOOTH),
        Length::Finite(_) => {}
    }
    let status = if l.formula_holds() {
        Status::Pass
    } else {
        Status::Fail
    };
    let witness = if id == CriterionId::ThetaFree {
        Witness::ThetaFree {
            len_j: l.len_j,
            len_jp: l.len_jp,
            expected_jp: l.expected_jp(),
            via: "the tangent module is free exactly when the length formula holds",
        }
    } else {
        Witness::Lengths {
            len_j: l.len_j,
            len_jp: l.len_jp,
            expected_jp: l.expected_jp(),
        }
    };
    CriterionReport::new(id, status, witness)
}

fn guarded(id: CriterionId, r: Result<CriterionReport>) -> Result<CriterionReport> {
    match r {
        Err(e) if e.is_engine_limit() => Ok(CriterionReport::undecided(id, &e)),
        other => other,
    }
}

/// PASS iff `p` divides the Tjurina number `l(O/J)`.
pub fn tjurina_p_divisible(g: &HypersurfaceGerm, cfg: &EngineConfig) -> Result<CriterionReport> {
    let id = CriterionId::TjurinaPDivisible;
    guarded(
        id,
        JacobianLengths::compute(g, cfg).map(|l| tjurina_report(&l)),
    )
}

/// PASS iff `l(O/J^[p]) = p^d * l(O/J)` with `d = n - 1`.
pub fn length_formula(g: &HypersurfaceGerm, cfg: &EngineConfig) -> Result<CriterionReport> {
    let id = CriterionId::LengthFormula;
    guarded(
        id,
        JacobianLengths::compute(g, cfg).map(|l| length_report(&l, id)),
    )
}

/// Freeness of the tangent module of a surface germ, decided through its
/// equivalence with the length formula.
pub fn theta_free(g: &HypersurfaceGerm, cfg: &EngineConfig) -> Result<CriterionReport> {
    let id = CriterionId::ThetaFree;
    if g.nvars() != 3 {
        return Ok(CriterionReport::not_applicable(
            id,
            "defined for surfaces in 3 variables",
        ));
    }
    guarded(
        id,
        JacobianLengths::compute(g, cfg).map(|l| length_report(&l, id)),
    )
}

/// Searches for an omitted variable `w` such that `(f_u, f_v, f)` is a
/// parameter ideal containing `f_w`.
pub fn invertible_summand(g: &HypersurfaceGerm, cfg: &EngineConfig) -> Result<CriterionReport> {
    let id = CriterionId::InvertibleSummand;
    if g.nvars() != 3 {
        return Ok(CriterionReport::not_applicable(
            id,
            "defined for surfaces in 3 variables",
        ));
    }
    guarded(id, invertible_summand_inner(g, cfg))
}

/// The ideal `(f_u, f_v, f)` obtained by omitting the partial derivative in variable `w`.
pub fn summand_ideal(g: &HypersurfaceGerm, w: usize) -> IdealPresentation {
    let partials = g.partials();
    let mut gens: Vec<Polynomial> = partials
        .iter()
        .enumerate()
        .filter(|&(i, _d)| i != w).map(|(_i, d)| d.clone())
        .collect();
    gens.push(g.equation().clone());
    IdealPresentation::new(gens).expect("nonempty, one ring")
}

fn invertible_summand_inner(g: &HypersurfaceGerm, cfg: &EngineConfig) -> Result<CriterionReport> {
    let id = CriterionId::InvertibleSummand;
    match local_length_with(&jacobian_ideal(g), cfg)? {
        Length::Infinite => return Ok(CriterionReport::not_applicable(id, NON_ISOLATED)),
        Length::Finite(0) => return Ok(CriterionReport::not_applicable(id, SMOOTH)),
        Length::Finite(_) => {}
    }
    let partials = g.partials();
    let names = g.ring().var_names();
    let mut choices = Vec::with_capacity(3);
    for w in 0..3 {
        let ideal = summand_ideal(g, w);
        let length = local_length_with(&ideal, cfg)?;
        let parameter_ideal = matches!(length, Length::Finite(n) if n > 0);
        let contains_partial = if parameter_ideal {
            Some(contains_with(&ideal, &partials[w], cfg)?)
        } else {
            None
        };
        choices.push(SummandChoice {
            omitted: names[w].clone(),
            length,
            parameter_ideal,
            contains_partial,
        });
    }
    let found = choices
        .iter()
        .find(|c| c.succeeds())
        .map(|c| c.omitted.clone());
    let status = if found.is_some() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CriterionReport::new(
        id,
        status,
        Witness::Summand { found, choices },
    ))
}

/// PASS iff `n + 1 = p^e` with `e >= 1`.
pub fn an_p_power(n: u32, p: PrimeChar) -> CriterionReport {
    let n_plus_1 = n as u64 + 1;
    let exponent = p.log_exact(n_plus_1);
    let status = if exponent.is_some() {
        Status::Pass
    } else {
        Status::Fail
    };
    CriterionReport::new(
        CriterionId::AnPPower,
        status,
        Witness::AnIndex {
            n,
            n_plus_1,
            exponent,
        },
    )
}

/// PASS iff the local Picard group has `p`-power order (the trivial group included).
pub fn pic_torsion_p_group(pic_order: u64, p: PrimeChar) -> CriterionReport {
    let status = if pic_order > 0 && p.is_power(pic_order) {
        Status::Pass
    } else {
        Status::Fail
    };
    CriterionReport::new(
        CriterionId::PicTorsionPGroup,
        status,
        Witness::PicOrder { order: pic_order },
    )
}

/// PASS iff the catalogued local fundamental group is trivial. A tame group
/// is trivial exactly when its characteristic-zero order is a power of `p`.
pub fn pi1_trivial(pi1: &Pi1, p: PrimeChar) -> CriterionReport {
    let id = CriterionId::Pi1Trivial;
    let status = match pi1 {
        Pi1::Trivial => Status::Pass,
        Pi1::Group { order, .. } => {
            if *order == 1 {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        Pi1::TameChar0 { order } => {
            if p.is_power(*order) {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        Pi1::Unknown => {
            return CriterionReport::not_applicable(id, "local fundamental group not catalogued");
        }
    };
    CriterionReport::new(id, status, Witness::Pi1 { pi1: pi1.clone() })
}

/// Tests `f = c*v^q + g` with `g` free of `v` and of order at least 2, for
/// the given `q`. Returns the variable and `g`.
pub fn shape_split(f: &Polynomial, q: u32) -> Option<(usize, Polynomial)> {
    let ring = f.ring();
    for v in 0..ring.nvars() {
        let Ok(q16) = u16::try_from(q) else {
            return None;
        };
        let power = Monomial::var(v, q16);
        if f.coefficient(&power).is_zero() {
            continue;
        }
        let rest_terms = f.terms().iter().filter(|t| t.mono != power).copied();
        let rest = Polynomial::from_terms(ring, rest_terms.map(|t| (t.mono, t.coeff as i64)));
        if rest.involves(v) {
            continue;
        }
        if rest.terms().iter().all(|t| t.mono.degree() >= 2) {
            return Some((v, rest));
        }
    }
    None
}

/// Searches every variable and every `q = p^e <= deg f` for the split
/// `f = v^q + g`, a sufficient condition for descent.
pub fn shape_witness(g: &HypersurfaceGerm) -> CriterionReport {
    let f = g.equation();
    let p = g.ring().characteristic().get();
    let deg = f.total_degree();
    let mut q = p;
    while q <= deg {
        if let Some(report) = shape_witness_for(g, q) {
            return report;
        }
        q = match q.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    CriterionReport::new(
        CriterionId::ShapeWitness,
        Status::Fail,
        Witness::ShapeSearch { max_q: deg },
    )
}

/// The shape test for one fixed `q`; `None` if it does not apply.
pub fn shape_witness_for(g: &HypersurfaceGerm, q: u32) -> Option<CriterionReport> {
    let (v, rest) = shape_split(g.equation(), q)?;
    Some(CriterionReport::new(
        CriterionId::ShapeWitness,
        Status::Pass,
        Witness::Shape {
            variable: g.ring().var_names()[v].clone(),
            q,
            rest: rest.to_string(),
        },
    ))
}

/// Combines reports into a verdict. Errors with [`Error::Inconsistent`] when
/// sufficient evidence of descent meets a failing necessary criterion.
pub fn aggregate_verdict(reports: &[CriterionReport], catalog_fact: bool) -> Result<Verdict> {
    let fails: Vec<CriterionReport> = reports
        .iter()
        .filter(|r| r.id.is_necessary() && r.status == Status::Fail)
        .cloned()
        .collect();
    let shape: Vec<CriterionReport> = reports
        .iter()
        .filter(|r| r.id == CriterionId::ShapeWitness && r.status == Status::Pass)
        .cloned()
        .collect();
    let descends = catalog_fact || !shape.is_empty();
    if descends && !fails.is_empty() {
        let ids: Vec<&str> = fails.iter().map(|r| r.id.as_str()).collect();
        return Err(Error::Inconsistent(format!(
            "descent evidence contradicts failing necessary criteria {}",
            ids.join(", ")
        )));
    }
    Ok(if !fails.is_empty() {
        Verdict {
            outcome: Outcome::Blocked,
            reasons: fails,
            from_catalog: false,
        }
    } else if descends {
        Verdict {
            outcome: Outcome::Descends,
            from_catalog: shape.is_empty(),
            reasons: shape,
        }
    } else {
        Verdict {
            outcome: Outcome::Undetermined,
            reasons: Vec::new(),
            from_catalog: false,
        }
    })
}

#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    pub engine: EngineConfig,
    /// Stop after the first failing necessary criterion.
    pub short_circuit: bool,
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub reports: Vec<CriterionReport>,
    pub verdict: Verdict,
}

impl Evaluation {
    pub fn report(&self, id: CriterionId) -> Option<&CriterionReport> {
        self.reports.iter().find(|r| r.id == id)
    }

    pub fn status(&self, id: CriterionId) -> Option<Status> {
        self.report(id).map(|r| r.status)
    }
}

/// Runs the criteria in [`CriterionId::ALL`] order and aggregates.
pub fn evaluate(
    g: &HypersurfaceGerm,
    facts: Option<&CatalogFacts>,
    opts: &EvalOptions,
) -> Result<Evaluation> {
    let p = g.ring().characteristic();
    let cfg = &opts.engine;
    let surface = g.nvars() == 3;
    let mut lengths: Option<std::result::Result<JacobianLengths, Error>> = None;
    let mut reports = Vec::with_capacity(CriterionId::ALL.len());

    for id in CriterionId::ALL {
        let report = match id {
            CriterionId::AnPPower => match facts.and_then(|f| f.a_index) {
                Some(n) => an_p_power(n, p),
                None => CriterionReport::not_applicable(id, "applies to catalogued type A germs"),
            },
            CriterionId::PicTorsionPGroup => match facts {
                Some(f) if surface => pic_torsion_p_group(f.pic_order, p),
                _ => CriterionReport::not_applicable(id, "local Picard group not catalogued"),
            },
            CriterionId::Pi1Trivial => match facts {
                Some(f) if surface => pi1_trivial(&f.pi1, p),
                _ => CriterionReport::not_applicable(id, "local fundamental group not catalogued"),
            },
            CriterionId::TjurinaPDivisible
            | CriterionId::LengthFormula
            | CriterionId::ThetaFree => {
                if id == CriterionId::ThetaFree && !surface {
                    CriterionReport::not_applicable(id, "defined for surfaces in 3 variables")
                } else {
                    let l = lengths.get_or_insert_with(|| JacobianLengths::compute(g, cfg));
                    match l {
                        Ok(l) if id == CriterionId::TjurinaPDivisible => tjurina_report(l),
                        Ok(l) => length_report(l, id),
                        Err(e) if e.is_engine_limit() => CriterionReport::undecided(id, e),
                        Err(e) => return Err(e.clone()),
                    }
                }
            }
            CriterionId::InvertibleSummand => invertible_summand(g, cfg)?,
            CriterionId::ShapeWitness => shape_witness(g),
        };
        let stop = opts.short_circuit && id.is_necessary() && report.status == Status::Fail;
        reports.push(report);
        if stop {
            break;
        }
    }
    let catalog_fact = facts.is_some_and(|f| f.known_descent);
    let verdict = aggregate_verdict(&reports, catalog_fact)?;
    Ok(Evaluation { reports, verdict })
}
