//! The report written to stdout, as JSON or as plain text.

use std::fmt::Write;

use gfcoh::cochain::StabilizedCohomology;
use gfcoh::derham::DeRhamBetti;
use gfcoh::kunneth::{BettiTable, MainTheoremReport, Verdict};
use serde::Serialize;

use crate::config::RunConfig;
use crate::properties::Tally;

pub const SCHEMA: &str = "gfcoh-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_COMPARISON: i32 = 2;
pub const EXIT_NOT_STABILIZED: i32 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub status: Status,
    pub result: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct Status {
    pub exit_code: i32,
    /// Every comparison and property check agreed.
    pub consistent: bool,
    /// Every reported dimension stabilized in its truncation parameter.
    pub stabilized: bool,
}

impl Status {
    pub fn new(consistent: bool, stabilized: bool) -> Self {
        let exit_code = if !consistent {
            EXIT_COMPARISON
        } else if !stabilized {
            EXIT_NOT_STABILIZED
        } else {
            EXIT_OK
        };
        Status {
            exit_code,
            consistent,
            stabilized,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DerhamResult {
    pub variety: String,
    pub truncation: u32,
    pub dims: Vec<usize>,
    /// Closed-form Betti numbers of the variety.
    pub expected: Vec<usize>,
    pub rows: Vec<DeRhamBetti>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LplusResult {
    pub module: String,
    pub truncation: u32,
    pub table: BettiTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct GfResult {
    pub variety: String,
    pub module: String,
    pub p_max: u32,
    pub dims: Vec<usize>,
    pub rows: Vec<StabilizedCohomology>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub derham: Vec<DerhamResult>,
    pub lplus: Vec<LplusResult>,
    pub main_theorem: Vec<MainTheoremReport>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Derham(DerhamResult),
    Lplus(LplusResult),
    Gf(GfResult),
    MainTheorem(MainTheoremReport),
    Properties { tallies: Vec<Tally> },
    Full(FullReport),
}

fn flag(stable: bool) -> &'static str {
    if stable {
        ""
    } else {
        " (not stabilized)"
    }
}

fn dims(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("({})", parts.join(", "))
}

fn write_derham(out: &mut String, r: &DerhamResult) {
    let stable = r.rows.iter().all(|x| x.stabilized);
    let mismatch = if r.dims == r.expected {
        String::new()
    } else {
        format!(" MISMATCH, expected {}", dims(&r.expected))
    };
    let _ = writeln!(
        out,
        "de Rham {}  window {}: {}{}{mismatch}",
        r.variety,
        r.truncation,
        dims(&r.dims),
        flag(stable)
    );
}

fn write_lplus(out: &mut String, r: &LplusResult) {
    let _ = writeln!(
        out,
        "H(L+, {})  truncation {}: {}{}",
        r.module,
        r.truncation,
        dims(&r.table.dims),
        flag(r.table.all_stabilized())
    );
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::EqualStabilized => "equal",
        Verdict::EqualNotStabilized => "equal, not stabilized",
        Verdict::Different => "DIFFERENT",
        Verdict::RhsOnly => "theorem side only",
    }
}

fn write_main(out: &mut String, r: &MainTheoremReport) {
    let _ = writeln!(out, "{} with {}  (p_max {}): {}", r.variety, r.module, r.p_max, r.rhs.label);
    for row in &r.rows {
        let direct = match &row.direct {
            Some(d) => format!("direct {} {}", d.value(), dims(&d.dims)),
            None => "direct -".into(),
        };
        let _ = writeln!(out, "  k={}  theorem {}  {}  [{}]", row.k, row.rhs, direct, verdict(row.verdict));
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            Outcome::Derham(r) => write_derham(&mut out, r),
            Outcome::Lplus(r) => write_lplus(&mut out, r),
            Outcome::Gf(r) => {
                let _ = writeln!(out, "H_GF({}, {})  p_max {}: {}", r.variety, r.module, r.p_max, dims(&r.dims));
                for row in &r.rows {
                    let _ = writeln!(out, "  k={}  by order p=1..: {}{}", row.k, dims(&row.dims), flag(row.stabilized));
                }
            }
            Outcome::MainTheorem(r) => write_main(&mut out, r),
            Outcome::Properties { tallies } => {
                for t in tallies {
                    let _ = writeln!(out, "{:<24} {}/{}", t.property, t.passed, t.total);
                }
            }
            Outcome::Full(f) => {
                for r in &f.derham {
                    write_derham(&mut out, r);
                }
                for r in &f.lplus {
                    write_lplus(&mut out, r);
                }
                for r in &f.main_theorem {
                    write_main(&mut out, r);
                }
            }
        }
        let s = &self.status;
        let _ = writeln!(
            out,
            "status: {} (exit {})",
            match s.exit_code {
                EXIT_OK => "ok",
                EXIT_COMPARISON => "comparison failed",
                _ => "not stabilized",
            },
            s.exit_code
        );
        out
    }
}
