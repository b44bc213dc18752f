//! Catalog of rational double points: the E-type tables shipped in
//! `data/catalog.txt`, and the A and D families generated from their
//! equations.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::criteria::{CatalogFacts, Outcome, Pi1};
use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::ideals::HypersurfaceGerm;
use crate::monomial::MonomialOrder;
use crate::parser::parse_poly;
use crate::poly::{Polynomial, Ring};

const BUILTIN: &str = include_str!("../data/catalog.txt");
const FORMAT_LINE: &str = "catalog-format 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dynkin {
    A,
    D,
    E,
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dynkin::A => "A",
            Dynkin::D => "D",
            Dynkin::E => "E",
        })
    }
}

impl FromStr for Dynkin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Dynkin::A),
            "D" | "d" => Ok(Dynkin::D),
            "E" | "e" => Ok(Dynkin::E),
            other => Err(Error::Usage(format!(
                "unknown Dynkin type {other:?}; expected A, D or E"
            ))),
        }
    }
}

/// Characteristics a stored row applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharSpec {
    Exactly(PrimeChar),
    AtLeast7,
}

impl CharSpec {
    pub fn matches(self, p: PrimeChar) -> bool {
        match self {
            CharSpec::Exactly(q) => q == p,
            CharSpec::AtLeast7 => p.get() >= 7,
        }
    }
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpec::Exactly(p) => write!(f, "{p}"),
            CharSpec::AtLeast7 => f.write_str(">=7"),
        }
    }
}

/// One line of the catalog file, before instantiation in a characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub dynkin: Dynkin,
    pub n: u32,
    pub r: Option<u32>,
    pub p: CharSpec,
    pub equation: String,
    pub pi1: Pi1,
    pub pic_order: u64,
    pub len_j: Option<u64>,
    pub len_jp: Option<u64>,
    pub theta_free: Option<bool>,
    pub verdict: Outcome,
    pub citation: String,
    pub notes: Vec<String>,
}

impl CatalogRow {
    /// Renders the row in file syntax, notes included.
    pub fn render(&self) -> String {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        let theta = self.theta_free.map(|t| if t { "yes" } else { "no" });
        let mut out = format!(
            "{};{};{};{};{};{};{};{};{};{};{};{}",
            self.dynkin,
            self.n,
            opt(self.r),
            self.p,
            self.equation,
            self.pi1,
            self.pic_order,
            opt(self.len_j),
            opt(self.len_jp),
            opt(theta),
            self.verdict,
            self.citation
        );
        for note in &self.notes {
            out.push_str("\n@note ");
            out.push_str(note);
        }
        out
    }

    fn instantiate(&self, p: PrimeChar) -> Result<SingularityRecord> {
        let ring = Ring::xyz(p, MonomialOrder::GlobalDegRevLex);
        let equation = parse_poly(&self.equation, &ring)?;
        Ok(SingularityRecord {
            dynkin: self.dynkin,
            n: self.n,
            r: self.r,
            char: p,
            equation,
            pi1: self.pi1.clone(),
            pic_order: self.pic_order,
            table_len_j: self.len_j,
            table_len_jp: self.len_jp,
            table_theta_free: self.theta_free,
            reference_verdict: self.verdict,
            citation: self.citation.clone(),
            known_descent: false,
            notes: self.notes.clone(),
        })
    }
}

/// A rational double point in a fixed characteristic, with its reference data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityRecord {
    pub dynkin: Dynkin,
    pub n: u32,
    pub r: Option<u32>,
    pub char: PrimeChar,
    pub equation: Polynomial,
    pub pi1: Pi1,
    pub pic_order: u64,
    pub table_len_j: Option<u64>,
    pub table_len_jp: Option<u64>,
    pub table_theta_free: Option<bool>,
    pub reference_verdict: Outcome,
    pub citation: String,
    /// Descent shown by an explicit construction rather than the shape witness.
    pub known_descent: bool,
    pub notes: Vec<String>,
}

impl SingularityRecord {
    /// `E_8^3`, `D_9^0`, `A_7`, `E_6`.
    pub fn name(&self) -> String {
        match self.r {
            Some(r) => format!("{}_{}^{}", self.dynkin, self.n, r),
            None => format!("{}_{}", self.dynkin, self.n),
        }
    }

    /// The equation listed by increasing degree, the way the tables print it.
    pub fn display_equation(&self) -> String {
        let local = self
            .equation
            .ring()
            .with_order(MonomialOrder::LocalNegDegRevLex);
        self.equation
            .in_ring(&local)
            .expect("same variables")
            .to_string()
    }

    pub fn germ(&self) -> HypersurfaceGerm {
        HypersurfaceGerm::new(self.equation.clone())
            .expect("catalog equations vanish at the origin")
    }

    pub fn facts(&self) -> CatalogFacts {
        CatalogFacts {
            a_index: (self.dynkin == Dynkin::A).then_some(self.n),
            pi1: self.pi1.clone(),
            pic_order: self.pic_order,
            known_descent: self.known_descent,
        }
    }

    pub fn has_table_lengths(&self) -> bool {
        self.table_len_j.is_some() && self.table_len_jp.is_some()
    }
}

/// Order of the local Picard group by Dynkin type.
pub fn pic_order(dynkin: Dynkin, n: u32) -> u64 {
    match (dynkin, n) {
        (Dynkin::A, n) => n as u64 + 1,
        (Dynkin::D, _) => 4,
        (Dynkin::E, 6) => 3,
        (Dynkin::E, 7) => 2,
        (Dynkin::E, _) => 1,
    }
}

/// Order of the local fundamental group in characteristic zero.
pub fn pi1_char0_order(dynkin: Dynkin, n: u32) -> u64 {
    match (dynkin, n) {
        (Dynkin::A, n) => n as u64 + 1,
        (Dynkin::D, n) => 2 * (n as u64 - 2),
        (Dynkin::E, 6) => 24,
        (Dynkin::E, 7) => 48,
        (Dynkin::E, _) => 120,
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    rows: Vec<CatalogRow>,
}

impl Catalog {
    /// The catalog compiled into the library, parsed and validated once.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::parse(BUILTIN).expect("built-in catalog is valid"))
    }

    pub fn rows(&self) -> &[CatalogRow] {
        &self.rows
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let mut rows: Vec<CatalogRow> = Vec::new();
        let mut saw_format = false;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            let err = |message: String| Error::Catalog {
                line: line_no,
                message,
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !saw_format {
                if line != FORMAT_LINE {
                    return Err(err(format!("expected {FORMAT_LINE:?} before any record")));
                }
                saw_format = true;
                continue;
            }
            if let Some(note) = line.strip_prefix("@note") {
                let row = rows
                    .last_mut()
                    .ok_or_else(|| err("@note before any record".to_string()))?;
                row.notes.push(note.trim().to_string());
                continue;
            }
            let row = parse_row(line).map_err(err)?;
            validate_row(&row).map_err(err)?;
            rows.push(row);
        }
        if !saw_format {
            return Err(Error::Catalog {
                line: 0,
                message: format!("missing {FORMAT_LINE:?} line"),
            });
        }
        Ok(Catalog { rows })
    }

    /// The catalog in file syntax; parses back to an equal catalog.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(FORMAT_LINE);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.render());
            out.push('\n');
        }
        out
    }

    /// Stored E-type records for characteristic `p`, in file order.
    pub fn e_records(&self, p: PrimeChar) -> Vec<SingularityRecord> {
        self.rows
            .iter()
            .filter(|row| row.p.matches(p))
            .map(|row| row.instantiate(p).expect("validated at load"))
            .collect()
    }

    /// All records for characteristic `p`: `A_1..A_max_n`, the D types up to
    /// `max_n`, then the E types.
    pub fn all_records(&self, p: PrimeChar, max_n: u32) -> Vec<SingularityRecord> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            out.push(a_record(n, p));
        }
        for n in 4..=max_n {
            if p.get() == 2 {
                for r in 0..n / 2 {
                    out.push(d_record(n, Some(r), p));
                }
            } else {
                out.push(d_record(n, None, p));
            }
        }
        out.extend(self.e_records(p));
        out
    }

    /// Builds one record, checking the parameters against the types that
    /// exist in characteristic `p`.
    pub fn instantiate(
        &self,
        dynkin: Dynkin,
        n: u32,
        r: Option<u32>,
        p: PrimeChar,
    ) -> Result<SingularityRecord> {
        match dynkin {
            Dynkin::A => {
                if n < 1 {
                    return Err(Error::Usage("A_n needs n >= 1".into()));
                }
                if r.is_some() {
                    return Err(Error::Usage("A_n has no co-index".into()));
                }
                Ok(a_record(n, p))
            }
            Dynkin::D => {
                if n < 4 {
                    return Err(Error::Usage("D_n needs n >= 4".into()));
                }
                match (p.get(), r) {
                    (2, Some(r)) if r < n / 2 => Ok(d_record(n, Some(r), p)),
                    (2, _) => Err(Error::Usage(format!(
                        "D_{n} in characteristic 2 needs a co-index r with 0 <= r <= {}",
                        n / 2 - 1
                    ))),
                    (_, None) => Ok(d_record(n, None, p)),
                    (_, Some(_)) => Err(Error::Usage(format!(
                        "D_{n} has no co-index in characteristic {p}"
                    ))),
                }
            }
            Dynkin::E => {
                if !(6..=8).contains(&n) {
                    return Err(Error::Usage("E_n needs n in 6..=8".into()));
                }
                let candidates: Vec<&CatalogRow> = self
                    .rows
                    .iter()
                    .filter(|row| row.dynkin == Dynkin::E && row.n == n && row.p.matches(p))
                    .collect();
                match candidates.iter().find(|row| row.r == r) {
                    Some(row) => row.instantiate(p),
                    None => {
                        let valid: Vec<String> = candidates
                            .iter()
                            .map(|row| row.r.map_or_else(|| "none".to_string(), |r| r.to_string()))
                            .collect();
                        Err(Error::Usage(format!(
                            "E_{n} in characteristic {p} has co-index {}",
                            valid.join(" or ")
                        )))
                    }
                }
            }
        }
    }

    /// Finds the record whose equation equals `f` term by term, in a ring of
    /// three variables in the order `x, y, z`.
    pub fn find_equation(&self, f: &Polynomial, max_n: u32) -> Option<SingularityRecord> {
        let ring = f.ring();
        if ring.nvars() != 3 {
            return None;
        }
        let p = ring.characteristic();
        let xyz = Ring::xyz(p, MonomialOrder::GlobalDegRevLex);
        let g = Polynomial::from_terms(&xyz, f.terms().iter().map(|t| (t.mono, t.coeff as i64)));
        // A_n has degree n + 1 and D_n degree about n / 2, so this bound covers every match
        let bound = max_n.max(2 * f.total_degree() + 2);
        self.all_records(p, bound)
            .into_iter()
            .find(|rec| rec.equation == g)
    }
}

fn a_record(n: u32, p: PrimeChar) -> SingularityRecord {
    let ring = Ring::xyz(p, MonomialOrder::GlobalDegRevLex);
    let equation = parse_poly(&format!("z^{}-x*y", n + 1), &ring).expect("family equation");
    let descends = p.log_exact(n as u64 + 1).is_some();
    let pi1 = if p.get() >= 7 {
        Pi1::TameChar0 {
            order: pi1_char0_order(Dynkin::A, n),
        }
    } else {
        Pi1::Unknown
    };
    SingularityRecord {
        dynkin: Dynkin::A,
        n,
        r: None,
        char: p,
        equation,
        pi1,
        pic_order: pic_order(Dynkin::A, n),
        table_len_j: None,
        table_len_jp: None,
        table_theta_free: None,
        reference_verdict: if descends {
            Outcome::Descends
        } else {
            Outcome::Blocked
        },
        citation: if descends { "shape" } else { "an-p-power,pic" }.to_string(),
        known_descent: false,
        notes: Vec::new(),
    }
}

/// The D family: in characteristic 2 the co-indexed forms with
/// `m = floor(n / 2)`, otherwise `z^2 + x^2 y + y^(n-1)`.
fn d_record(n: u32, r: Option<u32>, p: PrimeChar) -> SingularityRecord {
    let ring = Ring::xyz(p, MonomialOrder::GlobalDegRevLex);
    let m = n / 2;
    let src = match (n % 2, r) {
        (_, None) => format!("z^2+x^2*y+y^{}", n - 1),
        (0, Some(0)) => format!("z^2+x^2*y+x*y^{m}"),
        (0, Some(r)) => format!("z^2+x^2*y+x*y^{m}+x*y^{}*z", m - r),
        (_, Some(0)) => format!("z^2+x^2*y+y^{m}*z"),
        (_, Some(r)) => format!("z^2+x^2*y+y^{m}*z+x*y^{}*z", m - r),
    };
    let equation = parse_poly(&src, &ring).expect("family equation");
    let (verdict, citation) = match r {
        Some(0) if n.is_multiple_of(2) => (Outcome::Descends, "shape"),
        Some(0) => (Outcome::Descends, "known-descent"),
        Some(_) => (Outcome::Blocked, "invertible-summand"),
        None => (Outcome::Blocked, "pic"),
    };
    let pi1 = if p.get() >= 7 {
        Pi1::TameChar0 {
            order: pi1_char0_order(Dynkin::D, n),
        }
    } else {
        Pi1::Unknown
    };
    let notes = if n.is_multiple_of(2) && r == Some(0) {
        vec![format!(
            "z^2+x^2*y+x*y^{m} is contact equivalent to z^2+x^2*y+x*y^{m}+x*y^{m}*z, the r = 0 case of the co-indexed form"
        )]
    } else {
        Vec::new()
    };
    SingularityRecord {
        dynkin: Dynkin::D,
        n,
        r,
        char: p,
        equation,
        pi1,
        pic_order: pic_order(Dynkin::D, n),
        table_len_j: None,
        table_len_jp: None,
        table_theta_free: None,
        reference_verdict: verdict,
        citation: citation.to_string(),
        known_descent: p.get() == 2 && n % 2 == 1 && r == Some(0),
        notes,
    }
}

fn parse_row(line: &str) -> std::result::Result<CatalogRow, String> {
    let fields: Vec<&str> = line.split(';').map(str::trim).collect();
    if fields.len() != 12 {
        return Err(format!(
            "expected 12 ';'-separated fields, found {}",
            fields.len()
        ));
    }
    fn opt_u64(s: &str, what: &str) -> std::result::Result<Option<u64>, String> {
        if s == "-" {
            return Ok(None);
        }
        s.parse().map(Some).map_err(|_| format!("bad {what} {s:?}"))
    }
    let dynkin: Dynkin = fields[0].parse().map_err(|e: Error| e.to_string())?;
    let n: u32 = fields[1]
        .parse()
        .map_err(|_| format!("bad index {:?}", fields[1]))?;
    let r = opt_u64(fields[2], "co-index")?.map(|r| r as u32);
    let p = match fields[3] {
        ">=7" => CharSpec::AtLeast7,
        s => {
            let v: u32 = s.parse().map_err(|_| format!("bad characteristic {s:?}"))?;
            CharSpec::Exactly(PrimeChar::new(v).map_err(|e| e.to_string())?)
        }
    };
    let pi1 =
        Pi1::parse(fields[5]).ok_or_else(|| format!("bad group descriptor {:?}", fields[5]))?;
    let pic_order = opt_u64(fields[6], "Picard order")?.ok_or("missing Picard order")?;
    let theta_free = match fields[9] {
        "yes" => Some(true),
        "no" => Some(false),
        "-" => None,
        s => return Err(format!("bad theta flag {s:?}; expected yes, no or -")),
    };
    let verdict = match fields[10] {
        "DESCENDS" => Outcome::Descends,
        "BLOCKED" => Outcome::Blocked,
        s => return Err(format!("bad verdict {s:?}; expected DESCENDS or BLOCKED")),
    };
    Ok(CatalogRow {
        dynkin,
        n,
        r,
        p,
        equation: fields[4].to_string(),
        pi1,
        pic_order,
        len_j: opt_u64(fields[7], "length")?,
        len_jp: opt_u64(fields[8], "length")?,
        theta_free,
        verdict,
        citation: fields[11].to_string(),
        notes: Vec::new(),
    })
}

fn validate_row(row: &CatalogRow) -> std::result::Result<(), String> {
    if row.pic_order != pic_order(row.dynkin, row.n) {
        return Err(format!(
            "Picard order {} does not match type {}_{}",
            row.pic_order, row.dynkin, row.n
        ));
    }
    if row.dynkin == Dynkin::E && !(6..=8).contains(&row.n) {
        return Err(format!("E_{} does not exist", row.n));
    }
    if row.len_j == Some(0) || row.len_jp == Some(0) {
        return Err("stored lengths must be positive".into());
    }
    let p = match row.p {
        CharSpec::Exactly(p) => p,
        CharSpec::AtLeast7 => PrimeChar::new(7).expect("prime"),
    };
    let ring: Arc<Ring> = Ring::xyz(p, MonomialOrder::GlobalDegRevLex);
    let f = parse_poly(&row.equation, &ring).map_err(|e| e.to_string())?;
    if f.order_at_origin().is_none_or(|d| d < 2) {
        return Err("equation must vanish at the origin with zero linear part".into());
    }
    Ok(())
}
