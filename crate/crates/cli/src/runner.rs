//! Command dispatch: builds the ring and module from a parsed problem,
//! runs the requested computation and assembles the report.
//!
//! Exit codes: 0 = success and every theorem check consistent;
//! 1 = input error (syntax, unknown variable, validation failure);
//! 2 = theorem inconsistency or an engine cross-check failure.

use crate::parse::parse_problem;
use crate::problem::ProblemSpec;
use crate::report::*;
use brim_core::analyzer::{
    br_table, fit_coefficients, first_coefficient_check, remarks_suite, verify_main_theorem,
    BrCoefficients, FitStatus, VerifyOutcome,
};
use brim_core::en::{build_en_complex, br_multiplicity};
use brim_core::error::EngineError;
use brim_core::groebner::QuotientRing;
use brim_core::modules::{validate_parameter_module, ParameterModule};
use brim_core::poly::{Field, FieldKind, MonomialOrder, PolyRing, PrimeField, Rationals};
use num_bigint::BigInt;
use std::time::{Duration, Instant};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INCONSISTENT: u8 = 2;

pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Length,
    Table,
    Multiplicity,
    Coefficients,
    En,
    Verify,
    Remarks,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Length => "length",
            Command::Table => "table",
            Command::Multiplicity => "multiplicity",
            Command::Coefficients => "coefficients",
            Command::En => "en",
            Command::Verify => "verify",
            Command::Remarks => "remarks",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// --nu-max flag.
    pub nu_max: Option<u32>,
    /// --t flag.
    pub ts: Option<Vec<u32>>,
    /// --field flag (highest precedence).
    pub field: Option<FieldKind>,
    /// Environment override for the built-in default field only.
    pub default_field: Option<FieldKind>,
    /// --dump-en flag.
    pub dump_en: bool,
    /// --budget flag, in seconds.
    pub budget_secs: Option<u64>,
}

impl RunConfig {
    fn budget(&self) -> Option<Duration> {
        self.budget_secs.map(Duration::from_secs)
    }
}

/// Parses and runs one problem, returning the report and the exit code.
pub fn run_problem(text: &str, cmd: Command, cfg: &RunConfig) -> (Report, u8) {
    let started = Instant::now();
    let spec = match parse_problem(text) {
        Ok(s) => s,
        Err(e) => {
            let mut report = Report::new(
                cmd.name(),
                String::new(),
                InputEcho { text: text.to_string(), ..Default::default() },
            );
            report.errors.push(e.to_string());
            report.timings.total_ms = started.elapsed().as_millis().to_string();
            return (report, EXIT_INPUT);
        }
    };

    // Field resolution: flag > file options > file ring block >
    // environment default > GF(32003).
    let kind = cfg
        .field
        .or(spec.options.field)
        .or(spec.field)
        .or(cfg.default_field)
        .unwrap_or(FieldKind::PrimeField(DEFAULT_PRIME));

    let (mut report, exit) = match kind {
        FieldKind::Rationals => run_typed(Rationals, &spec, cmd, cfg, started),
        FieldKind::PrimeField(p) => match PrimeField::try_new(p) {
            Some(f) => run_typed(f, &spec, cmd, cfg, started),
            None => {
                let mut report = Report::new(
                    cmd.name(),
                    format!("GF({p})"),
                    InputEcho { text: spec.serialize(), ..Default::default() },
                );
                report.errors.push(format!("{p} is not a usable prime modulus"));
                (report, EXIT_INPUT)
            }
        },
    };
    report.timings.total_ms = started.elapsed().as_millis().to_string();
    (report, exit)
}

fn run_typed<F: Field>(
    field: F,
    spec: &ProblemSpec,
    cmd: Command,
    cfg: &RunConfig,
    started: Instant,
) -> (Report, u8) {
    let mut report = Report::new(
        cmd.name(),
        field.kind().to_string(),
        InputEcho { text: spec.serialize(), ..Default::default() },
    );
    let mut steps: Vec<(&'static str, Duration)> = Vec::new();

    let ring = PolyRing::new(field, spec.vars.clone(), MonomialOrder::GrevLex);
    let relations = spec.relations.iter().map(|p| p.to_polynomial(&ring)).collect();
    let quotient = match QuotientRing::new(ring.clone(), relations) {
        Ok(q) => q,
        Err(e) => {
            report.errors.push(e.to_string());
            return (report, EXIT_INPUT);
        }
    };
    report.input.d = Some(quotient.krull_dim().to_string());
    report.input.r = Some(spec.rank.to_string());
    report.input.n = Some(spec.columns.len().to_string());

    let columns: Vec<Vec<_>> = spec
        .columns
        .iter()
        .map(|col| col.iter().map(|p| p.to_polynomial(quotient.poly_ring())).collect())
        .collect();

    let t0 = Instant::now();
    let pm = match validate_parameter_module(&quotient, spec.rank, columns) {
        Ok(pm) => pm,
        Err(e) => {
            report.validation = Some(ValidationReport {
                ok: false,
                violation: Some(e.to_string()),
                colength: None,
            });
            report.errors.push(e.to_string());
            return (report, EXIT_INPUT);
        }
    };
    steps.push(("validate", t0.elapsed()));
    report.validation = Some(ValidationReport {
        ok: true,
        violation: None,
        colength: Some(pm.colength().to_string()),
    });

    let d = pm.dim();
    let r = pm.rank();
    let nu_max = cfg.nu_max.or(spec.options.nu_max).unwrap_or((d + r + 3) as u32);
    let default_ts: Vec<u32> = (0..=(d as u32 + 1)).collect();
    let ts = cfg.ts.clone().or_else(|| spec.options.t.clone());

    let exit = match cmd {
        Command::Validate | Command::Length => EXIT_OK,
        Command::Table => {
            let ts = ts.unwrap_or_else(|| vec![1]);
            match tables_into_report(&pm, nu_max, &ts, &mut report) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    report.errors.push(e.to_string());
                    EXIT_INCONSISTENT
                }
            }
        }
        Command::Multiplicity => match br_multiplicity(&pm) {
            Ok((chi, hom)) => {
                report.multiplicity = Some(MultiplicityReport {
                    chi: chi.to_string(),
                    homology_lengths: hom.lengths.iter().map(|l| l.to_string()).collect(),
                });
                EXIT_OK
            }
            Err(e) => {
                report.errors.push(e.to_string());
                EXIT_INCONSISTENT
            }
        },
        Command::Coefficients => match fit_with_retries(&pm, nu_max, cfg.budget()) {
            Ok((fit, used)) => {
                report.coefficients = Some(coeff_report(&fit, used));
                match first_coefficient_check(&fit) {
                    Ok((e1, nonpositive)) => {
                        report.corollary =
                            Some(CorollaryReport { e1: e1.to_string(), nonpositive });
                        if nonpositive {
                            EXIT_OK
                        } else {
                            report.errors.push("e1 is positive".to_string());
                            EXIT_INCONSISTENT
                        }
                    }
                    Err(e) => {
                        report.errors.push(e.to_string());
                        EXIT_INCONSISTENT
                    }
                }
            }
            Err(e) => {
                report.errors.push(e.to_string());
                EXIT_INCONSISTENT
            }
        },
        Command::En => match build_en_complex(&pm) {
            Ok(c) => {
                let ranks: Vec<String> =
                    (0..=c.length()).map(|p| c.rank(p).to_string()).collect();
                let differentials = cfg.dump_en.then(|| {
                    c.diffs
                        .iter()
                        .map(|m| {
                            (0..m.nrows)
                                .map(|i| {
                                    (0..m.ncols())
                                        .map(|j| quotient.poly_ring().format(m.entry(i, j)))
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                });
                report.en = Some(EnReport {
                    length: c.length().to_string(),
                    ranks,
                    differentials,
                });
                EXIT_OK
            }
            Err(e) => {
                report.errors.push(e.to_string());
                EXIT_INCONSISTENT
            }
        },
        Command::Verify => {
            let ts = ts.unwrap_or(default_ts);
            match verify_main_theorem(&pm, nu_max, &ts, cfg.budget()) {
                Ok(out) => fill_verify_report(&pm, &out, spec, &mut report),
                Err(e) => {
                    report.errors.push(e.to_string());
                    EXIT_INCONSISTENT
                }
            }
        }
        Command::Remarks => {
            if !quotient.is_cohen_macaulay() {
                report.cm = Some(false);
                report
                    .errors
                    .push("the remarks suite requires a Cohen-Macaulay base ring".to_string());
                EXIT_INPUT
            } else {
                match br_multiplicity(&pm)
                    .and_then(|(chi, _)| remarks_suite(&pm, &BigInt::from(chi)))
                {
                    Ok(rm) => {
                        let ok = rm.ok;
                        report.cm = Some(true);
                        report.remarks = Some(remarks_json(&rm));
                        if ok {
                            EXIT_OK
                        } else {
                            report.errors.push("a remark check failed".to_string());
                            EXIT_INCONSISTENT
                        }
                    }
                    Err(e) => {
                        report.errors.push(e.to_string());
                        EXIT_INCONSISTENT
                    }
                }
            }
        }
    };

    report.timings.steps = steps
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.as_millis().to_string()))
        .collect();
    report.timings.total_ms = started.elapsed().as_millis().to_string();
    (report, exit)
}

fn tables_into_report<F: Field>(
    pm: &ParameterModule<'_, F>,
    nu_max: u32,
    ts: &[u32],
    report: &mut Report,
) -> Result<(), EngineError> {
    for &t in ts {
        let table = br_table(pm, nu_max, t)?;
        report.tables.push(TableReport {
            t: t.to_string(),
            entries: table
                .entries
                .iter()
                .enumerate()
                .map(|(nu, l)| TableEntry { nu: nu.to_string(), lambda: l.to_string() })
                .collect(),
        });
    }
    Ok(())
}

/// Fit with the same doubling policy the verifier uses.
fn fit_with_retries<F: Field>(
    pm: &ParameterModule<'_, F>,
    nu_max: u32,
    budget: Option<Duration>,
) -> Result<(BrCoefficients, u32), EngineError> {
    let start = Instant::now();
    let d = pm.dim();
    let r = pm.rank();
    let mut used = nu_max.max((d + r) as u32);
    let mut attempts = 0;
    loop {
        let table = br_table(pm, used, 1)?;
        let fit = fit_coefficients(&table, d, r)?;
        if fit.status == FitStatus::Stable {
            return Ok((fit, used));
        }
        attempts += 1;
        if attempts > 3 || budget.is_some_and(|b| start.elapsed() > b) {
            return Err(EngineError::FitInconclusive { nu_max: used });
        }
        used *= 2;
    }
}

fn coeff_report(fit: &BrCoefficients, nu_max_used: u32) -> CoeffReport {
    CoeffReport {
        degree: fit.degree.to_string(),
        e: fit.e.iter().map(|c| c.to_string()).collect(),
        status: match fit.status {
            FitStatus::Stable => "stable".to_string(),
            FitStatus::Inconclusive => "inconclusive".to_string(),
        },
        stable_from: fit.stable_from.map(|s| s.to_string()),
        nu_max_used: nu_max_used.to_string(),
    }
}

fn remarks_json(rm: &brim_core::analyzer::RemarksReport) -> RemarksJson {
    RemarksJson {
        initial_lengths: rm
            .initial_lengths
            .iter()
            .map(|(t, l, ok)| RemarkInitial {
                t: t.to_string(),
                lambda: l.to_string(),
                equals_e0: *ok,
            })
            .collect(),
        two_dimensional: rm.two_dimensional.as_ref().map(|rows| {
            rows.iter()
                .map(|(nu, l, exp, eq)| RemarkTwoDim {
                    nu: nu.to_string(),
                    lambda: l.to_string(),
                    expected: exp.to_string(),
                    equal: *eq,
                })
                .collect()
        }),
        beyond_range: rm.beyond_range.as_ref().map(|(l, b, s)| RemarkBeyond {
            lambda: l.to_string(),
            bound: b.to_string(),
            strict: *s,
        }),
        ok: rm.ok,
    }
}

fn fill_verify_report<F: Field>(
    pm: &ParameterModule<'_, F>,
    out: &VerifyOutcome,
    spec: &ProblemSpec,
    report: &mut Report,
) -> u8 {
    report.multiplicity = Some(MultiplicityReport {
        chi: out.chi.to_string(),
        homology_lengths: out.homology.lengths.iter().map(|l| l.to_string()).collect(),
    });
    report.coefficients = Some(coeff_report(&out.fit, out.fit_nu_max));
    report.cm = Some(out.cm);
    report.consistent = Some(out.consistent);
    for table in &out.tables {
        report.tables.push(TableReport {
            t: table.t.to_string(),
            entries: table
                .entries
                .iter()
                .enumerate()
                .map(|(nu, l)| TableEntry { nu: nu.to_string(), lambda: l.to_string() })
                .collect(),
        });
    }
    for v in &out.verdicts {
        report.verdicts.push(VerdictReport {
            t: v.t.to_string(),
            inequality_ok: v.inequality_ok,
            equality_at: v.equality_at.iter().map(|n| n.to_string()).collect(),
            consistent: v.consistent,
            rows: v
                .rows
                .iter()
                .map(|r| VerdictRowReport {
                    nu: r.nu.to_string(),
                    lambda: r.lambda.to_string(),
                    bound: r.bound.to_string(),
                    geq: r.geq,
                    equal: r.equal,
                })
                .collect(),
        });
    }
    if let (Some(e1), Some(ok)) = (&out.e1, out.e1_nonpositive) {
        report.corollary = Some(CorollaryReport { e1: e1.to_string(), nonpositive: ok });
    }

    let mut exit = if out.consistent { EXIT_OK } else { EXIT_INCONSISTENT };

    if out.cm {
        match remarks_suite(pm, &BigInt::from(out.chi)) {
            Ok(rm) => {
                if !rm.ok {
                    report.errors.push("a remark check failed".to_string());
                    exit = EXIT_INCONSISTENT;
                }
                report.remarks = Some(remarks_json(&rm));
            }
            Err(e) => {
                report.errors.push(e.to_string());
                exit = EXIT_INCONSISTENT;
            }
        }
    }

    // Cross-check any expectations the file carries.
    if let Some(expect) = &spec.expect {
        let mut push = |field: &str, expected: String, observed: String| {
            let matched = expected == observed;
            report.expectations.push(ExpectationReport {
                field: field.to_string(),
                expected,
                observed,
                matched,
            });
            matched
        };
        let mut all = true;
        if let Some(cm) = expect.cm {
            all &= push("cm", cm.to_string(), out.cm.to_string());
        }
        if let Some(e0) = &expect.e0 {
            all &= push("e0", e0.to_string(), out.chi.to_string());
        }
        if let Some(e1) = &expect.e1 {
            let observed =
                out.e1.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "?".to_string());
            all &= push("e1", e1.to_string(), observed);
        }
        if !all {
            report.errors.push("expected values do not match observations".to_string());
            exit = EXIT_INCONSISTENT;
        }
    }
    exit
}

/// Runs `verify` over every embedded corpus entry, concurrently.
pub fn run_corpus(cfg: &RunConfig) -> (Vec<(String, Report, u8)>, u8) {
    let entries = crate::corpus::entries();
    let results: Vec<(String, Report, u8)> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| {
                let cfg = cfg.clone();
                scope.spawn(move || {
                    let (report, exit) = run_problem(e.text, Command::Verify, &cfg);
                    (e.name.to_string(), report, exit)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("corpus worker panicked")).collect()
    });
    let overall = results.iter().map(|(_, _, e)| *e).max().unwrap_or(EXIT_OK);
    (results, overall)
}
