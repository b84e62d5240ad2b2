//! Machine-readable reports (schema-versioned JSON with all integers as
//! decimal strings) and the human-readable table rendering.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Clone, Debug, Default)]
pub struct InputEcho {
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct ValidationReport {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colength: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct TableEntry {
    pub nu: String,
    pub lambda: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct TableReport {
    pub t: String,
    pub entries: Vec<TableEntry>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CoeffReport {
    pub degree: String,
    pub e: Vec<String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_from: Option<String>,
    pub nu_max_used: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct MultiplicityReport {
    pub chi: String,
    pub homology_lengths: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerdictRowReport {
    pub nu: String,
    pub lambda: String,
    pub bound: String,
    pub geq: bool,
    pub equal: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerdictReport {
    pub t: String,
    pub inequality_ok: bool,
    pub equality_at: Vec<String>,
    pub consistent: bool,
    pub rows: Vec<VerdictRowReport>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CorollaryReport {
    pub e1: String,
    pub nonpositive: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct RemarkInitial {
    pub t: String,
    pub lambda: String,
    pub equals_e0: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct RemarkTwoDim {
    pub nu: String,
    pub lambda: String,
    pub expected: String,
    pub equal: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct RemarkBeyond {
    pub lambda: String,
    pub bound: String,
    pub strict: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct RemarksJson {
    pub initial_lengths: Vec<RemarkInitial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_dimensional: Option<Vec<RemarkTwoDim>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beyond_range: Option<RemarkBeyond>,
    pub ok: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct EnReport {
    pub length: String,
    pub ranks: Vec<String>,
    /// differentials[p][i][j]: entry (i, j) of d_{p+1}, present only
    /// with --dump-en.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub differentials: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ExpectationReport {
    pub field: String,
    pub expected: String,
    pub observed: String,
    pub matched: bool,
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct Timings {
    pub total_ms: String,
    pub steps: BTreeMap<String, String>,
}

/// The single top-level record every subcommand emits.
#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub field: String,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub tables: Vec<TableReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoeffReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<MultiplicityReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub verdicts: Vec<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<CorollaryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remarks: Option<RemarksJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub en: Option<EnReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub expectations: Vec<ExpectationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub errors: Vec<String>,
    pub timings: Timings,
}

impl Report {
    pub fn new(command: &str, field: String, input: InputEcho) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            field,
            input,
            validation: None,
            tables: Vec::new(),
            coefficients: None,
            multiplicity: None,
            verdicts: Vec::new(),
            corollary: None,
            remarks: None,
            cm: None,
            consistent: None,
            en: None,
            expectations: Vec::new(),
            errors: Vec::new(),
            timings: Timings::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering for terminal use.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}   field: {}", self.command, self.field);
        if let (Some(d), Some(r), Some(n)) = (&self.input.d, &self.input.r, &self.input.n) {
            let _ = writeln!(out, "d = {d}, r = {r}, n = {n}");
        }
        if let Some(v) = &self.validation {
            if v.ok {
                let _ = write!(out, "validation: ok");
                if let Some(c) = &v.colength {
                    let _ = write!(out, "   colength l(F/N) = {c}");
                }
                let _ = writeln!(out);
            } else {
                let _ = writeln!(
                    out,
                    "validation: FAILED ({})",
                    v.violation.as_deref().unwrap_or("unknown")
                );
            }
        }
        if let Some(m) = &self.multiplicity {
            let _ = writeln!(
                out,
                "chi = {} (homology lengths: {})",
                m.chi,
                m.homology_lengths.join(", ")
            );
        }
        if let Some(c) = &self.coefficients {
            let _ = writeln!(
                out,
                "coefficients e = [{}]  status = {}{}",
                c.e.join(", "),
                c.status,
                c.stable_from
                    .as_ref()
                    .map(|s| format!("  stable_from = {s}"))
                    .unwrap_or_default()
            );
        }
        for t in &self.tables {
            let _ = writeln!(out, "t = {}:", t.t);
            let _ = writeln!(out, "  nu     lambda(nu, t)");
            for e in &t.entries {
                let _ = writeln!(out, "  {:<6} {}", e.nu, e.lambda);
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "verdict t = {}: inequality {}  equality at [{}]  consistent: {}",
                v.t,
                if v.inequality_ok { "holds" } else { "VIOLATED" },
                v.equality_at.join(", "),
                v.consistent
            );
            let _ = writeln!(out, "  nu     lambda         bound          cmp");
            for r in &v.rows {
                let cmp = if r.equal {
                    "="
                } else if r.geq {
                    ">"
                } else {
                    "< !!"
                };
                let _ = writeln!(out, "  {:<6} {:<14} {:<14} {}", r.nu, r.lambda, r.bound, cmp);
            }
        }
        if let Some(c) = &self.corollary {
            let _ = writeln!(
                out,
                "e1 = {} ({})",
                c.e1,
                if c.nonpositive { "nonpositive, as required" } else { "POSITIVE: violation" }
            );
        }
        if let Some(rm) = &self.remarks {
            let _ = writeln!(out, "remarks: {}", if rm.ok { "all hold" } else { "FAILED" });
            for i in &rm.initial_lengths {
                let _ = writeln!(
                    out,
                    "  lambda(0, {}) = {} {} e0",
                    i.t,
                    i.lambda,
                    if i.equals_e0 { "=" } else { "!=" }
                );
            }
            if let Some(rows) = &rm.two_dimensional {
                for r in rows {
                    let _ = writeln!(
                        out,
                        "  lambda({}, 2) = {} expected {} ({})",
                        r.nu,
                        r.lambda,
                        r.expected,
                        if r.equal { "=" } else { "!=" }
                    );
                }
            }
            if let Some(b) = &rm.beyond_range {
                let _ = writeln!(
                    out,
                    "  beyond range: lambda = {} vs bound {} ({})",
                    b.lambda,
                    b.bound,
                    if b.strict { "strict" } else { "NOT strict" }
                );
            }
        }
        if let Some(en) = &self.en {
            let _ = writeln!(
                out,
                "Eagon-Northcott complex: length {}  ranks [{}]",
                en.length,
                en.ranks.join(", ")
            );
            if let Some(diffs) = &en.differentials {
                for (p, m) in diffs.iter().enumerate() {
                    let _ = writeln!(out, "  d_{}:", p + 1);
                    for row in m {
                        let _ = writeln!(out, "    [{}]", row.join(", "));
                    }
                }
            }
        }
        if let Some(cm) = self.cm {
            let _ = writeln!(out, "Cohen-Macaulay: {cm}");
        }
        if let Some(c) = self.consistent {
            let _ = writeln!(out, "consistent: {c}");
        }
        for e in &self.expectations {
            let _ = writeln!(
                out,
                "expected {} = {}, observed {} ({})",
                e.field,
                e.expected,
                e.observed,
                if e.matched { "ok" } else { "MISMATCH" }
            );
        }
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(out, "elapsed: {} ms", self.timings.total_ms);
        out
    }
}
