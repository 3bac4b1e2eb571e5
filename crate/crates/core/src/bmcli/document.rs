use crate::azumaya::{AzumayaClass, ClassReport, PlaceReport, Verdict};
use crate::eisenstein::{EisensteinNumber, InvariantValue};
use crate::lines27::SurfaceCoefficients;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Bumped whenever a field changes meaning or disappears.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Failed,
    Inconclusive,
    MissingCharts,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Inconclusive => 2,
            Status::MissingCharts => 3,
        }
    }
}

/// The configuration as it affects results; `--jobs` is deliberately absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<[i64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub places: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub precision: BTreeMap<String, u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charts: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input: InputEcho,
    pub status: Status,
    pub result: CommandResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CommandResult {
    H1(H1Report),
    Lines(LinesReport),
    Scan(ScanReport),
    Local(LocalReport),
    Obstruct(ObstructReport),
    Verify(VerifyReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Agreement {
    Agree,
    Disagree,
}

/// `c(g)` for one Galois element, in the 27 line coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleValue {
    pub g: [u8; 3],
    pub lines: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Report {
    pub structure: String,
    pub table: String,
    pub agreement: Agreement,
    pub galois_group_order: usize,
    /// 𝔽₃-basis of exponent vectors `λ` making `(b/a)^λ₁ (c/a)^λ₂ (d/a)^λ₃` a cube.
    pub cube_relations: Vec<[u8; 3]>,
    /// One 1-cocycle per generator of H¹, lifted to ℤ²⁷.
    pub cocycles: Vec<Vec<CocycleValue>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineEntry {
    pub index: usize,
    pub label: String,
    pub planes: [String; 2],
    pub meets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinesReport {
    pub lines: Vec<LineEntry>,
    pub gram_rank: usize,
    pub galois_group_order: usize,
    pub orbits: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanMismatch {
    pub coefficients: [i64; 4],
    pub h1: String,
    pub table: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub tuples: u64,
    pub agree: u64,
    pub disagreements: Vec<ScanMismatch>,
    pub distribution: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartSummary {
    pub name: String,
    pub denominator: String,
    pub constant: EisensteinNumber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub name: String,
    pub theta: EisensteinNumber,
    pub charts: Vec<ChartSummary>,
}

impl ClassSummary {
    pub fn of(class: &AzumayaClass) -> Self {
        ClassSummary {
            name: class.name.clone(),
            theta: class.theta.clone(),
            charts: class
                .charts
                .iter()
                .map(|c| ChartSummary {
                    name: c.name.clone(),
                    denominator: ["x", "y", "z", "t"][c.denominator].into(),
                    constant: c.constant.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityEntry {
    pub place: String,
    /// `None` when the search did not stabilize.
    pub solvable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub h1: String,
    pub class: Option<ClassSummary>,
    /// Filled when no class is available.
    pub solvability: Vec<SolvabilityEntry>,
    pub invariants: Vec<PlaceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructReport {
    pub h1: String,
    pub class: Option<ClassSummary>,
    pub solvability: Vec<SolvabilityEntry>,
    pub classes: Vec<ClassReport>,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub status: CheckStatus,
}

impl Check {
    pub fn new(name: &str, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        let (expected, observed) = (expected.into(), observed.into());
        let status = if expected == observed { CheckStatus::Pass } else { CheckStatus::Fail };
        Check { name: name.into(), expected, observed, status }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

/// `{0, 2/3}` style rendering of an invariant set.
pub fn invariant_set(s: &BTreeSet<InvariantValue>) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// The serialized name of a unit enum variant.
pub fn serde_tag<T: Serialize>(v: T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = self.input.coefficients {
            if let Ok(c) = SurfaceCoefficients::new(c[0], c[1], c[2], c[3]) {
                let _ = writeln!(out, "surface {}", c);
            }
        }
        match &self.result {
            CommandResult::H1(r) => {
                let _ = writeln!(out, "|G| = {}", r.galois_group_order);
                let _ = writeln!(out, "H^1 (cohomology) = {}", r.structure);
                let _ = writeln!(out, "H^1 (table)      = {}", r.table);
                let _ = writeln!(out, "{}", serde_tag(r.agreement));
            }
            CommandResult::Lines(r) => {
                for l in &r.lines {
                    let _ = writeln!(out, "{:>2} {:<8} {} ; {}", l.index, l.label, l.planes[0], l.planes[1]);
                }
                let _ = writeln!(out, "gram rank {}, |G| = {}, {} orbits", r.gram_rank, r.galois_group_order, r.orbits.len());
                for o in &r.orbits {
                    let _ = writeln!(out, "  orbit {{{}}}", o.join(", "));
                }
            }
            CommandResult::Scan(r) => {
                let _ = writeln!(out, "{} tuples, {} agree, {} disagree", r.tuples, r.agree, r.disagreements.len());
                for (k, v) in &r.distribution {
                    let _ = writeln!(out, "  H^1 = {k}: {v}");
                }
                for m in &r.disagreements {
                    let _ = writeln!(out, "  DISAGREE {:?}: cohomology {} table {}", m.coefficients, m.h1, m.table);
                }
            }
            CommandResult::Local(r) => {
                let _ = writeln!(out, "H^1 = {}", r.h1);
                write_solvability(&mut out, &r.solvability);
                for p in &r.invariants {
                    write_place(&mut out, p);
                }
            }
            CommandResult::Obstruct(r) => {
                let _ = writeln!(out, "H^1 = {}", r.h1);
                write_solvability(&mut out, &r.solvability);
                for c in &r.classes {
                    let _ = writeln!(out, "class {}", c.name);
                    for p in &c.places {
                        write_place(&mut out, p);
                    }
                    let _ = writeln!(out, "  sum of invariants {}", invariant_set(&c.sumset));
                }
                match r.verdict {
                    Some(v) => {
                        let _ = writeln!(out, "verdict {}", serde_tag(v));
                    }
                    None => {
                        let _ = writeln!(out, "no chart data for a nontrivial H^1");
                    }
                }
            }
            CommandResult::Verify(r) => {
                for c in &r.checks {
                    let tag = if c.status == CheckStatus::Pass { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{tag} {:<34} expected {}  observed {}", c.name, c.expected, c.observed);
                }
                let _ = writeln!(out, "{} passed, {} failed", r.passed, r.failed);
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "elapsed {ms} ms");
        }
        out
    }
}

fn write_solvability(out: &mut String, entries: &[SolvabilityEntry]) {
    for e in entries {
        let s = match e.solvable {
            Some(true) => "points",
            Some(false) => "NO points",
            None => "undecided",
        };
        let _ = writeln!(out, "  {:>10}: {s}", e.place);
    }
}

fn write_place(out: &mut String, p: &PlaceReport) {
    let runs: Vec<String> = p.runs.iter().map(|r| format!("N={} classes={}", r.precision, r.classes)).collect();
    let method = serde_tag(p.method);
    let _ = writeln!(
        out,
        "  {:>10}: {:<15} attained {:<10} {}[{}]",
        p.place,
        method,
        invariant_set(&p.attained),
        if p.stable { "" } else { "UNSTABLE " },
        runs.join("; ")
    );
}
