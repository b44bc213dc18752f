//! Command implementations behind the `rdpd` binary. Each command returns a
//! serializable report plus the process exit code; rendering to text or
//! JSON happens in [`render`].

pub mod render;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use rdpd_core::catalog::{Catalog, SingularityRecord};
use rdpd_core::criteria::{evaluate, CriterionId, CriterionReport, EvalOptions, Outcome, Status};
use rdpd_core::gbasis::{EngineConfig, Length};
use rdpd_core::ideals::{
    bracket_ideal, degree_cap_for, jacobian_ideal, local_length_with, truncation_length_oracle,
    HypersurfaceGerm, IdealPresentation, OracleOutcome,
};
use rdpd_core::{parse_poly, parse_poly_list, Error, Exec, MonomialOrder, PrimeChar, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BLOCKED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

/// Exit code for a library error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::EngineLimit { .. } | Error::Inconsistent(_) => EXIT_ENGINE,
        _ => EXIT_USAGE,
    }
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub engine: EngineConfig,
    pub short_circuit: bool,
    /// Oracle truncation cap; `None` uses [`degree_cap_for`].
    pub degree_cap: Option<u32>,
    pub max_n: u32,
    pub exec: Exec,
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            engine: EngineConfig::default(),
            short_circuit: false,
            degree_cap: None,
            max_n: 12,
            exec: Exec::default(),
            timings: false,
        }
    }
}

impl Settings {
    fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            engine: self.engine.clone(),
            short_circuit: self.short_circuit,
        }
    }
}

pub fn make_ring(char: u32, vars: &str) -> Result<Arc<Ring>, Error> {
    let p = PrimeChar::new(char)?;
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    Ring::new(p, &names, MonomialOrder::GlobalDegRevLex)
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub equation: String,
    pub char: u32,
    pub vars: Vec<String>,
    pub catalog: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictOut {
    pub outcome: Outcome,
    pub reasons: Vec<CriterionId>,
    pub catalog_fact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisOutput {
    pub input: InputEcho,
    pub criteria: Vec<CriterionReport>,
    pub verdict: VerdictOut,
    pub notes: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl AnalysisOutput {
    pub fn exit_code(&self) -> i32 {
        if self.verdict.outcome == Outcome::Blocked {
            EXIT_BLOCKED
        } else if self.criteria.iter().any(|r| r.status == Status::Undecided) {
            EXIT_ENGINE
        } else {
            EXIT_OK
        }
    }
}

fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs the criterion battery on one equation.
pub fn analyze(
    char: u32,
    vars: &str,
    poly: &str,
    settings: &Settings,
) -> Result<AnalysisOutput, Error> {
    let start = Instant::now();
    let ring = make_ring(char, vars)?;
    let f = parse_poly(poly, &ring)?;
    let germ = HypersurfaceGerm::new(f.clone())?;
    let record = Catalog::builtin().find_equation(&f, settings.max_n);
    let facts = record.as_ref().map(SingularityRecord::facts);

    let t = Instant::now();
    let eval = evaluate(&germ, facts.as_ref(), &settings.eval_options())?;
    let criteria_ms = millis(t);

    let mut notes = record.as_ref().map(|r| r.notes.clone()).unwrap_or_default();
    if record.is_none() && ring.nvars() == 3 {
        notes
            .push("equation not in the catalog: group-theoretic criteria are not evaluated".into());
    }
    if ring.nvars() != 3 {
        notes.push(format!(
            "{} variables: only the length criteria and the shape witness apply",
            ring.nvars()
        ));
    }
    let mut timings_ms = BTreeMap::new();
    if settings.timings {
        timings_ms.insert("criteria".to_string(), criteria_ms);
        timings_ms.insert("total".to_string(), millis(start));
    }
    Ok(AnalysisOutput {
        input: InputEcho {
            source: poly.to_string(),
            equation: f.to_string(),
            char,
            vars: ring.var_names().to_vec(),
            catalog: record.as_ref().map(SingularityRecord::name),
        },
        verdict: VerdictOut {
            outcome: eval.verdict.outcome,
            reasons: eval.verdict.reason_ids(),
            catalog_fact: eval.verdict.from_catalog,
        },
        criteria: eval.reports,
        notes,
        timings_ms,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub name: String,
    pub equation: String,
    pub pi1: String,
    pub len_j: Length,
    pub len_jp: Length,
    pub theta_free: bool,
    pub verdict: Outcome,
    pub stored_len_j: Option<u64>,
    pub stored_len_jp: Option<u64>,
    pub stored_theta_free: Option<bool>,
    pub stored_verdict: Outcome,
    pub diffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TablesOutput {
    pub char: u32,
    pub rows: Vec<TableRow>,
    pub all_match: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

impl TablesOutput {
    pub fn exit_code(&self) -> i32 {
        if self.all_match {
            EXIT_OK
        } else {
            EXIT_BLOCKED
        }
    }
}

fn table_row(rec: &SingularityRecord, settings: &Settings) -> Result<TableRow, Error> {
    let germ = rec.germ();
    let eval = evaluate(&germ, Some(&rec.facts()), &settings.eval_options())?;
    let j = jacobian_ideal(&germ);
    let len_j = local_length_with(&j, &settings.engine)?;
    let len_jp = local_length_with(&bracket_ideal(&j, &germ)?, &settings.engine)?;
    let theta_free = eval.status(CriterionId::ThetaFree) == Some(Status::Pass);

    let mut diffs = Vec::new();
    let mut check = |what: &str, computed: String, stored: Option<String>| {
        if let Some(stored) = stored {
            if stored != computed {
                diffs.push(format!("{what}: computed {computed}, stored {stored}"));
            }
        }
    };
    check(
        "l(O/J)",
        len_j.to_string(),
        rec.table_len_j.map(|v| v.to_string()),
    );
    check(
        "l(O/J^[p])",
        len_jp.to_string(),
        rec.table_len_jp.map(|v| v.to_string()),
    );
    check(
        "theta free",
        theta_free.to_string(),
        rec.table_theta_free.map(|v| v.to_string()),
    );
    check(
        "verdict",
        eval.verdict.outcome.to_string(),
        Some(rec.reference_verdict.to_string()),
    );
    Ok(TableRow {
        name: rec.name(),
        equation: rec.display_equation(),
        pi1: rec.pi1.to_string(),
        len_j,
        len_jp,
        theta_free,
        verdict: eval.verdict.outcome,
        stored_len_j: rec.table_len_j,
        stored_len_jp: rec.table_len_jp,
        stored_theta_free: rec.table_theta_free,
        stored_verdict: rec.reference_verdict,
        diffs,
    })
}

/// Recomputes the E-type table for a characteristic and diffs it against the catalog.
pub fn tables(char: u32, settings: &Settings) -> Result<TablesOutput, Error> {
    let start = Instant::now();
    let p = PrimeChar::new(char)?;
    if ![2, 3, 5].contains(&char) {
        return Err(Error::Usage(format!(
            "tables exist for characteristics 2, 3 and 5, not {char}"
        )));
    }
    let records = Catalog::builtin().e_records(p);
    let rows = settings
        .exec
        .map(&records, |rec| table_row(rec, settings))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let all_match = rows.iter().all(|r| r.diffs.is_empty());
    let mut timings_ms = BTreeMap::new();
    if settings.timings {
        timings_ms.insert("total".to_string(), millis(start));
    }
    Ok(TablesOutput {
        char,
        rows,
        all_match,
        timings_ms,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedRecord {
    pub name: String,
    pub equation: String,
    pub verdict: Outcome,
    pub reasons: Vec<CriterionId>,
    pub catalog_fact: bool,
    pub expected: Outcome,
    pub citation: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyOutput {
    pub char: u32,
    pub max_n: u32,
    pub records: Vec<ClassifiedRecord>,
    pub descending: Vec<String>,
    pub mismatches: Vec<String>,
    pub flagged: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl ClassifyOutput {
    pub fn exit_code(&self) -> i32 {
        if self.mismatches.is_empty() {
            EXIT_OK
        } else {
            EXIT_BLOCKED
        }
    }
}

/// Evaluates every catalog record up to `max_n` and lists the descending types.
pub fn classify(char: u32, settings: &Settings) -> Result<ClassifyOutput, Error> {
    let start = Instant::now();
    let p = PrimeChar::new(char)?;
    let records = Catalog::builtin().all_records(p, settings.max_n);
    let opts = settings.eval_options();
    let evals = settings
        .exec
        .map(&records, |rec| {
            evaluate(&rec.germ(), Some(&rec.facts()), &opts)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = Vec::with_capacity(records.len());
    let mut mismatches = Vec::new();
    let mut flagged = Vec::new();
    for (rec, eval) in records.iter().zip(evals) {
        let name = rec.name();
        if eval.verdict.outcome != rec.reference_verdict {
            mismatches.push(format!(
                "{name}: computed {}, expected {}",
                eval.verdict.outcome, rec.reference_verdict
            ));
        }
        if rec.dynkin == rdpd_core::Dynkin::E {
            for note in &rec.notes {
                flagged.push(format!("{name}: {note}"));
            }
        }
        out.push(ClassifiedRecord {
            name,
            equation: rec.display_equation(),
            verdict: eval.verdict.outcome,
            reasons: eval.verdict.reason_ids(),
            catalog_fact: eval.verdict.from_catalog,
            expected: rec.reference_verdict,
            citation: rec.citation.clone(),
            notes: rec.notes.clone(),
        });
    }
    let descending = out
        .iter()
        .filter(|r| r.verdict == Outcome::Descends)
        .map(|r| r.name.clone())
        .collect();
    let mut timings_ms = BTreeMap::new();
    if settings.timings {
        timings_ms.insert("total".to_string(), millis(start));
    }
    Ok(ClassifyOutput {
        char,
        max_n: settings.max_n,
        records: out,
        descending,
        mismatches,
        flagged,
        timings_ms,
    })
}

/// What ideal the oracle command compares.
#[derive(Clone, Debug)]
pub enum OracleInput {
    Generators(String),
    /// The jacobian ideal of an equation, or its bracket power.
    Jacobian {
        poly: String,
        bracket: bool,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleOutput {
    pub char: u32,
    pub generators: Vec<String>,
    pub engine: Length,
    pub oracle: OracleOutcome,
    pub agree: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

impl OracleOutput {
    pub fn exit_code(&self) -> i32 {
        if self.agree {
            EXIT_OK
        } else {
            EXIT_BLOCKED
        }
    }
}

/// Local length by the standard-basis engine next to the truncation oracle.
pub fn oracle(
    char: u32,
    vars: &str,
    input: &OracleInput,
    settings: &Settings,
) -> Result<OracleOutput, Error> {
    let ring = make_ring(char, vars)?;
    let ideal = match input {
        OracleInput::Generators(src) => IdealPresentation::new(parse_poly_list(src, &ring)?)?,
        OracleInput::Jacobian { poly, bracket } => {
            let germ = HypersurfaceGerm::new(parse_poly(poly, &ring)?)?;
            let j = jacobian_ideal(&germ);
            if *bracket {
                bracket_ideal(&j, &germ)?
            } else {
                j
            }
        }
    };
    let t = Instant::now();
    let engine = local_length_with(&ideal, &settings.engine)?;
    let engine_ms = millis(t);
    let t = Instant::now();
    let cap = settings
        .degree_cap
        .unwrap_or_else(|| degree_cap_for(&ideal));
    let oracle = truncation_length_oracle(&ideal, cap);
    let oracle_ms = millis(t);
    let agree = match (engine, oracle) {
        (Length::Finite(a), OracleOutcome::Stable { length, .. }) => a == length,
        (Length::Infinite, OracleOutcome::Unstable { .. }) => true,
        _ => false,
    };
    let mut timings_ms = BTreeMap::new();
    if settings.timings {
        timings_ms.insert("engine".to_string(), engine_ms);
        timings_ms.insert("oracle".to_string(), oracle_ms);
    }
    Ok(OracleOutput {
        char,
        generators: ideal.gens().iter().map(ToString::to_string).collect(),
        engine,
        oracle,
        agree,
        timings_ms,
    })
}
