//! Text and JSON rendering of command reports.

use serde::Serialize;

use rdpd_core::criteria::{CriterionReport, Pi1, Witness};
use rdpd_core::ideals::OracleOutcome;

use crate::{AnalysisOutput, ClassifyOutput, OracleOutput, TablesOutput};

/// Pretty JSON with a trailing newline; key order follows the struct
/// definitions, so output is byte-stable.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(&format!("{cell:<w$}  "));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One-line summary of a witness.
pub fn describe(report: &CriterionReport) -> String {
    let Some(w) = &report.witness else {
        return String::new();
    };
    match w {
        Witness::Tjurina { tjurina, p } => format!("tjurina number {tjurina}, p = {p}"),
        Witness::Lengths {
            len_j,
            len_jp,
            expected_jp,
        }
        | Witness::ThetaFree {
            len_j,
            len_jp,
            expected_jp,
            ..
        } => match expected_jp {
            Some(e) => format!("l(O/J) = {len_j}, l(O/J^[p]) = {len_jp}, p^d l(O/J) = {e}"),
            None => format!("l(O/J) = {len_j}, l(O/J^[p]) = {len_jp}"),
        },
        Witness::Summand { found, choices } => {
            let parts: Vec<String> = choices
                .iter()
                .map(|c| {
                    let what = if !c.parameter_ideal {
                        "not a parameter ideal".to_string()
                    } else if c.contains_partial == Some(true) {
                        format!(
                            "parameter ideal of length {}, contains the partial",
                            c.length
                        )
                    } else {
                        format!("parameter ideal of length {}, misses the partial", c.length)
                    };
                    format!("omit {}: {what}", c.omitted)
                })
                .collect();
            match found {
                Some(v) => format!("found by omitting {v}; {}", parts.join("; ")),
                None => parts.join("; "),
            }
        }
        Witness::AnIndex {
            n,
            n_plus_1,
            exponent,
        } => match exponent {
            Some(e) => format!("A_{n}: n+1 = {n_plus_1} = p^{e}"),
            None => format!("A_{n}: n+1 = {n_plus_1} is not a power of p"),
        },
        Witness::PicOrder { order } => format!("local Picard group of order {order}"),
        Witness::Pi1 { pi1: Pi1::Trivial } => "trivial local fundamental group".to_string(),
        Witness::Pi1 { pi1 } => format!("local fundamental group {pi1}"),
        Witness::Shape { variable, q, rest } => format!("f = {variable}^{q} + ({rest})"),
        Witness::ShapeSearch { max_q } => {
            format!("no split f = v^q + g with q a power of p up to {max_q}")
        }
        Witness::Note { note } => note.clone(),
    }
}

pub fn analysis_text(out: &AnalysisOutput) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "equation  {}  (char {}, vars {})\n",
        out.input.equation,
        out.input.char,
        out.input.vars.join(",")
    ));
    if let Some(name) = &out.input.catalog {
        s.push_str(&format!("catalog   {name}\n"));
    }
    s.push('\n');
    let rows: Vec<Vec<String>> = out
        .criteria
        .iter()
        .map(|r| vec![r.id.to_string(), r.status.to_string(), describe(r)])
        .collect();
    s.push_str(&table(&["criterion", "status", "detail"], &rows));
    s.push('\n');
    let reasons: Vec<String> = out
        .verdict
        .reasons
        .iter()
        .map(ToString::to_string)
        .collect();
    let why = if out.verdict.catalog_fact {
        " (known construction)".to_string()
    } else if reasons.is_empty() {
        String::new()
    } else {
        format!(" ({})", reasons.join(", "))
    };
    s.push_str(&format!("verdict   {}{why}\n", out.verdict.outcome));
    for note in &out.notes {
        s.push_str(&format!("note      {note}\n"));
    }
    for (k, v) in &out.timings_ms {
        s.push_str(&format!("time      {k} {v} ms\n"));
    }
    s
}

pub fn tables_text(out: &TablesOutput) -> String {
    let rows: Vec<Vec<String>> = out
        .rows
        .iter()
        .map(|r| {
            let stored = match (r.stored_len_j, r.stored_len_jp) {
                (Some(a), Some(b)) => format!("{a},{b}"),
                _ => "-".to_string(),
            };
            vec![
                r.name.clone(),
                r.equation.clone(),
                r.pi1.clone(),
                format!("{},{}", r.len_j, r.len_jp),
                stored,
                yes_no(r.theta_free).to_string(),
                r.verdict.to_string(),
                if r.diffs.is_empty() { "ok" } else { "DIFF" }.to_string(),
            ]
        })
        .collect();
    let mut s = format!(
        "E-type rational double points in characteristic {}\n\n",
        out.char
    );
    s.push_str(&table(
        &[
            "type",
            "equation",
            "pi1",
            "l(O/J),l(O/J^[p])",
            "stored",
            "theta free",
            "verdict",
            "match",
        ],
        &rows,
    ));
    for r in &out.rows {
        for d in &r.diffs {
            s.push_str(&format!("{}: {d}\n", r.name));
        }
    }
    s.push_str(if out.all_match {
        "\nall rows match the catalog\n"
    } else {
        "\nrows differ from the catalog\n"
    });
    for (k, v) in &out.timings_ms {
        s.push_str(&format!("time {k} {v} ms\n"));
    }
    s
}

pub fn classify_text(out: &ClassifyOutput) -> String {
    let rows: Vec<Vec<String>> = out
        .records
        .iter()
        .map(|r| {
            let reasons: Vec<String> = r.reasons.iter().map(ToString::to_string).collect();
            let why = if r.catalog_fact {
                "known construction".to_string()
            } else {
                reasons.join(", ")
            };
            vec![
                r.name.clone(),
                r.equation.clone(),
                r.verdict.to_string(),
                why,
            ]
        })
        .collect();
    let mut s = format!(
        "Rational double points in characteristic {}, n <= {}\n\n",
        out.char, out.max_n
    );
    s.push_str(&table(&["type", "equation", "verdict", "reasons"], &rows));
    s.push_str(&format!("\ndescending: {}\n", out.descending.join(", ")));
    for f in &out.flagged {
        s.push_str(&format!("flagged: {f}\n"));
    }
    if out.mismatches.is_empty() {
        s.push_str("all verdicts match the catalog\n");
    } else {
        for m in &out.mismatches {
            s.push_str(&format!("mismatch: {m}\n"));
        }
    }
    for (k, v) in &out.timings_ms {
        s.push_str(&format!("time {k} {v} ms\n"));
    }
    s
}

pub fn oracle_text(out: &OracleOutput) -> String {
    let oracle = match out.oracle {
        OracleOutcome::Stable { length, degree } => format!("{length} (m^{degree} in the ideal)"),
        OracleOutcome::Unstable { cap } => format!("UNSTABLE up to degree {cap}"),
    };
    let mut s = String::new();
    s.push_str(&format!("ideal   ({})\n", out.generators.join(", ")));
    s.push_str(&format!("engine  {}\n", out.engine));
    s.push_str(&format!("oracle  {oracle}\n"));
    s.push_str(&format!("agree   {}\n", yes_no(out.agree)));
    for (k, v) in &out.timings_ms {
        s.push_str(&format!("time    {k} {v} ms\n"));
    }
    s
}
