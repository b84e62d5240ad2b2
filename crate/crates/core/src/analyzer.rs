//! Buchsbaum-Rim tables, coefficient fitting and theorem verdicts.
//!
//! The multiplicity e0 used for all bounds is the Euler characteristic
//! of the Eagon-Northcott complex; the polynomial fit of the length
//! table is the secondary witness and must agree whenever it
//! stabilizes.

use crate::en::{br_multiplicity, HomologyReport};
use crate::error::EngineError;
use crate::modules::ParameterModule;
use crate::poly::{binomial, Field};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::time::{Duration, Instant};

/// One length table: entries[nu] = lambda(nu, t) for nu = 0..=nu_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrTable {
    pub t: u32,
    pub entries: Vec<u64>,
}

/// Computes the table entries, each (nu, t) pair independently (and
/// concurrently over nu).
pub fn br_table<F: Field>(
    pm: &ParameterModule<'_, F>,
    nu_max: u32,
    t: u32,
) -> Result<BrTable, EngineError> {
    let results: Vec<Result<u64, EngineError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=nu_max)
            .map(|nu| scope.spawn(move || pm.graded_piece_length(nu, t)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect()
    });
    let mut entries = Vec::with_capacity(nu_max as usize + 1);
    for (nu, r) in results.into_iter().enumerate() {
        entries.push(r.map_err(|e| {
            EngineError::Internal(format!("lambda({nu}, {t}) failed: {e}"))
        })?);
    }
    Ok(BrTable { t, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitStatus {
    Stable,
    Inconclusive,
}

/// Coefficients e_0..e_{d+r-1} of the fitted polynomial
/// P(nu) = sum_i (-1)^i e_i C(nu + d + r - 1 - i, d + r - 1 - i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrCoefficients {
    pub degree: usize,
    pub e: Vec<BigInt>,
    pub stable_from: Option<u32>,
    pub status: FitStatus,
}

/// Evaluates the fitted polynomial at nu.
pub fn evaluate_fit(e: &[BigInt], g: usize, nu: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, ei) in e.iter().enumerate() {
        let gi = (g - i) as i64;
        let term = ei * binomial(nu + gi, gi);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Solves for the coefficients from the trailing window of the table
/// (exact integer linear solve) and decides stability: the fit must
/// also match the entry immediately before the window, the top finite
/// difference of the trailing entries must be constant, and e0 >= 1.
pub fn fit_coefficients(table: &BrTable, d: usize, r: usize) -> Result<BrCoefficients, EngineError> {
    let g = d + r - 1;
    let len = table.entries.len();
    if len < g + 2 {
        return Err(EngineError::FitInconclusive { nu_max: len.saturating_sub(1) as u32 });
    }
    let window_start = len - (g + 1);

    // Solve the (g+1) x (g+1) system on the window.
    let mut matrix = Vec::with_capacity(g + 1);
    let mut rhs = Vec::with_capacity(g + 1);
    for k in 0..=g {
        let nu = (window_start + k) as i64;
        let row: Vec<BigRational> = (0..=g)
            .map(|i| {
                let gi = (g - i) as i64;
                let b = binomial(nu + gi, gi);
                let signed = if i % 2 == 0 { b } else { -b };
                BigRational::from_integer(signed)
            })
            .collect();
        matrix.push(row);
        rhs.push(BigRational::from_integer(BigInt::from(table.entries[window_start + k])));
    }
    let solution = match solve_exact(matrix, rhs) {
        Some(s) => s,
        None => {
            return Ok(BrCoefficients {
                degree: g,
                e: Vec::new(),
                stable_from: None,
                status: FitStatus::Inconclusive,
            })
        }
    };
    if solution.iter().any(|c| !c.denom().is_one()) {
        return Ok(BrCoefficients {
            degree: g,
            e: Vec::new(),
            stable_from: None,
            status: FitStatus::Inconclusive,
        });
    }
    let e: Vec<BigInt> = solution.into_iter().map(|c| c.numer().clone()).collect();

    // Where does the fit start matching the table for good?
    let mut stable_from = None;
    for start in (0..len).rev() {
        if evaluate_fit(&e, g, start as i64)
            == BigInt::from(table.entries[start])
        {
            stable_from = Some(start as u32);
        } else {
            break;
        }
    }

    // The fit must reproduce the entry immediately preceding the window.
    let lookback_ok = stable_from.is_some_and(|s| (s as usize) < window_start);
    let diff_ok = constant_top_difference(&table.entries[len - (g + 2)..], g);
    let e0_ok = e[0] >= BigInt::one();
    let status = if lookback_ok && diff_ok && e0_ok {
        FitStatus::Stable
    } else {
        FitStatus::Inconclusive
    };
    Ok(BrCoefficients { degree: g, e, stable_from, status })
}

/// Checks that the g-th finite difference of the given entries is
/// constant.
fn constant_top_difference(entries: &[u64], g: usize) -> bool {
    let mut row: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
    for _ in 0..g {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    row.windows(2).all(|w| w[0] == w[1])
}

#[allow(clippy::needless_range_loop)]
fn solve_exact(
    mut m: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let f = &m[row][col] / &m[col][col];
                for k in col..n {
                    let v = &m[row][k] - &f * &m[col][k];
                    m[row][k] = v;
                }
                let v = &b[row] - &f * &b[col];
                b[row] = v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// The right-hand side of the length inequality:
/// e0 * C(nu + d + r - 1, d + r - 1).
pub fn theorem_bound(e0: &BigInt, nu: u32, d: usize, r: usize) -> BigInt {
    let g = (d + r - 1) as i64;
    e0 * binomial(i64::from(nu) + g, g)
}

/// Per-nu comparison of lambda(nu, t) against the bound.
#[derive(Clone, Debug)]
pub struct VerdictRow {
    pub nu: u32,
    pub lambda: u64,
    pub bound: BigInt,
    pub geq: bool,
    pub equal: bool,
}

/// The verdict for one value of t.
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub t: u32,
    pub rows: Vec<VerdictRow>,
    pub inequality_ok: bool,
    pub equality_at: Vec<u32>,
    pub cm_oracle: bool,
    pub consistent: bool,
}

fn build_verdict(table: &BrTable, e0: &BigInt, d: usize, r: usize, cm: bool) -> TheoremVerdict {
    let mut rows = Vec::with_capacity(table.entries.len());
    let mut equality_at = Vec::new();
    for (nu, &lambda) in table.entries.iter().enumerate() {
        let nu = nu as u32;
        let bound = theorem_bound(e0, nu, d, r);
        let lam = BigInt::from(lambda);
        let geq = lam >= bound;
        let equal = lam == bound;
        if equal {
            equality_at.push(nu);
        }
        rows.push(VerdictRow { nu, lambda, bound, geq, equal });
    }
    let inequality_ok = rows.iter().all(|row| row.geq);
    let consistent =
        verdict_consistent(table.t, d, r, cm, inequality_ok, &equality_at, rows.len());
    TheoremVerdict { t: table.t, rows, inequality_ok, equality_at, cm_oracle: cm, consistent }
}

/// Equality logic: equality anywhere with t <= d forces the ring to be
/// Cohen-Macaulay; a Cohen-Macaulay ring forces equality at every nu
/// for t in {0, 1} and, when d = 2, for t = 2; for r >= 2 and
/// t = d + 1 equality must fail at nu = 0 even over a Cohen-Macaulay
/// ring. For r = 1 every graded piece is A/Q^{nu+1} regardless of t,
/// so no strictness is expected beyond t = d. Other (t, nu) pairs are
/// recorded as observations only.
fn verdict_consistent(
    t: u32,
    d: usize,
    r: usize,
    cm: bool,
    inequality_ok: bool,
    equality_at: &[u32],
    num_rows: usize,
) -> bool {
    if !inequality_ok {
        return false;
    }
    let all_equal = equality_at.len() == num_rows;
    if (t as usize) <= d && !equality_at.is_empty() && !cm {
        return false;
    }
    if cm {
        let equality_guaranteed = t <= 1 || (d == 2 && t == 2);
        if equality_guaranteed && !all_equal {
            return false;
        }
        if r >= 2 && t as usize == d + 1 && equality_at.contains(&0) {
            return false;
        }
    }
    true
}

/// The full verification outcome for one parameter module.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub chi: u64,
    pub homology: HomologyReport,
    pub cm: bool,
    pub tables: Vec<BrTable>,
    pub verdicts: Vec<TheoremVerdict>,
    pub fit: BrCoefficients,
    pub fit_nu_max: u32,
    pub e1: Option<BigInt>,
    pub e1_nonpositive: Option<bool>,
    pub consistent: bool,
}

/// Runs the whole pipeline: chi from the Eagon-Northcott complex, the
/// t = 1 table and its fit (raising nu_max by doubling while the fit is
/// inconclusive, within the time budget), cross-validation of the two
/// multiplicities, per-t verdicts against the bound, and the first
/// coefficient check.
pub fn verify_main_theorem<F: Field>(
    pm: &ParameterModule<'_, F>,
    nu_max: u32,
    ts: &[u32],
    budget: Option<Duration>,
) -> Result<VerifyOutcome, EngineError> {
    let start = Instant::now();
    let d = pm.dim();
    let r = pm.rank();
    let (chi, homology) = br_multiplicity(pm)?;
    let cm = pm.ring().is_cohen_macaulay();

    // Fit on the t = 1 table, doubling the window on failure.
    let mut fit_nu_max = nu_max.max((d + r + 1) as u32 - 1);
    let mut attempts = 0;
    let (fit, fit_table) = loop {
        let table = br_table(pm, fit_nu_max, 1)?;
        let fit = fit_coefficients(&table, d, r)?;
        if fit.status == FitStatus::Stable {
            break (fit, table);
        }
        attempts += 1;
        let out_of_budget = budget.is_some_and(|b| start.elapsed() > b);
        if attempts > 3 || out_of_budget {
            return Err(EngineError::FitInconclusive { nu_max: fit_nu_max });
        }
        fit_nu_max *= 2;
    };

    // The two multiplicity routes must agree.
    let e0 = BigInt::from(chi);
    if fit.e[0] != e0 {
        return Err(EngineError::MultiplicitiesDisagree { chi: chi as i64, e0: fit.e[0].to_string() });
    }

    let mut tables = Vec::new();
    for &t in ts {
        if t == 1 && nu_max == fit_nu_max {
            tables.push(BrTable { t: 1, entries: fit_table.entries[..=(nu_max as usize)].to_vec() });
        } else {
            tables.push(br_table(pm, nu_max, t)?);
        }
    }
    let verdicts: Vec<TheoremVerdict> =
        tables.iter().map(|tab| build_verdict(tab, &e0, d, r, cm)).collect();

    let (e1, e1_nonpositive) = if fit.e.len() > 1 {
        let e1 = fit.e[1].clone();
        let ok = !e1.is_positive();
        (Some(e1), Some(ok))
    } else {
        (None, None)
    };

    let consistent = verdicts.iter().all(|v| v.consistent) && e1_nonpositive != Some(false);
    Ok(VerifyOutcome {
        chi,
        homology,
        cm,
        tables,
        verdicts,
        fit,
        fit_nu_max,
        e1,
        e1_nonpositive,
        consistent,
    })
}

/// Corollary check: the first coefficient of a stable fit must be
/// non-positive.
pub fn first_coefficient_check(fit: &BrCoefficients) -> Result<(BigInt, bool), EngineError> {
    if fit.status != FitStatus::Stable || fit.e.len() < 2 {
        return Err(EngineError::FitInconclusive { nu_max: 0 });
    }
    let e1 = fit.e[1].clone();
    let nonpositive = !e1.is_positive();
    Ok((e1, nonpositive))
}

/// Checks for Cohen-Macaulay rings: lambda(0, t) equals e0 for every
/// t up to d; when d = 2, lambda(nu, 2) = e0 C(nu + r + 1, r + 1) for
/// small nu; and for r >= 2 the bound is strictly exceeded at
/// (nu, t) = (0, d + 1). For r = 1 the beyond-range check is skipped
/// because S_t/Q S_{t-1} is A/Q for every t.
#[derive(Clone, Debug)]
pub struct RemarksReport {
    /// (t, lambda(0, t), equals e0) for t = 0..=d.
    pub initial_lengths: Vec<(u32, u64, bool)>,
    /// d = 2 only: (nu, lambda(nu, 2), expected, equal) for nu = 0..=2.
    pub two_dimensional: Option<Vec<(u32, u64, BigInt, bool)>>,
    /// r >= 2 only: (lambda(0, d+1), bound, strictly greater).
    pub beyond_range: Option<(u64, BigInt, bool)>,
    pub ok: bool,
}

pub fn remarks_suite<F: Field>(
    pm: &ParameterModule<'_, F>,
    e0: &BigInt,
) -> Result<RemarksReport, EngineError> {
    assert!(
        pm.ring().is_cohen_macaulay(),
        "the remarks suite applies to Cohen-Macaulay rings only"
    );
    let d = pm.dim();
    let r = pm.rank();

    let mut initial_lengths = Vec::new();
    for t in 0..=(d as u32) {
        let lambda = pm.graded_piece_length(0, t)?;
        initial_lengths.push((t, lambda, BigInt::from(lambda) == *e0));
    }

    let two_dimensional = if d == 2 {
        let mut rows = Vec::new();
        for nu in 0..=2u32 {
            let lambda = pm.graded_piece_length(nu, 2)?;
            let expected = e0 * binomial(i64::from(nu) + r as i64 + 1, r as i64 + 1);
            let equal = BigInt::from(lambda) == expected;
            rows.push((nu, lambda, expected, equal));
        }
        Some(rows)
    } else {
        None
    };

    let beyond_range = if r >= 2 {
        let lambda_beyond = pm.graded_piece_length(0, d as u32 + 1)?;
        let bound = e0.clone();
        let strict = BigInt::from(lambda_beyond) > bound;
        Some((lambda_beyond, bound, strict))
    } else {
        None
    };

    let ok = initial_lengths.iter().all(|(_, _, ok)| *ok)
        && two_dimensional
            .as_ref()
            .is_none_or(|rows| rows.iter().all(|(_, _, _, eq)| *eq))
        && beyond_range.as_ref().is_none_or(|(_, _, strict)| *strict);
    Ok(RemarksReport { initial_lengths, two_dimensional, beyond_range, ok })
}

/// lambda(nu, 1) compared against the classical ideal-power colength
/// for rank-one modules: both paths must agree entry by entry.
pub fn classical_cross_check<F: Field>(
    pm: &ParameterModule<'_, F>,
    nu_max: u32,
) -> Result<bool, EngineError> {
    assert_eq!(pm.rank(), 1, "the classical path applies to parameter ideals");
    let gens: Vec<_> = pm.columns().iter().map(|c| c[0].clone()).collect();
    for nu in 0..=nu_max {
        let lambda = pm.graded_piece_length(nu, 1)?;
        let classical = crate::modules::ideal_power_colength(pm.ring(), &gens, nu + 1)?;
        if lambda != classical {
            return Ok(false);
        }
    }
    Ok(true)
}
