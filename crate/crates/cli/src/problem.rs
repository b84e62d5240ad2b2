//! The parsed problem description and its canonical serialization.
//!
//! Polynomials are held field-independently with integer coefficients
//! and only compiled into a coefficient field once the effective field
//! is known.

use brim_core::poly::{Field, FieldKind, Monomial, MonomialOrder, PolyRing, Polynomial};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A sparse polynomial with big-integer coefficients, keyed by exponent
/// vector. Canonical: no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = IntPoly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        IntPoly { terms: BTreeMap::from([(exps, BigInt::one())]) }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let e = out.terms.entry(m.clone()).or_insert_with(BigInt::zero);
                *e += ca * cb;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, nvars: usize) -> IntPoly {
        let mut acc = IntPoly::constant(nvars, BigInt::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Common degree of all terms; `Ok(None)` for zero, `Err(())` for
    /// mixed degrees.
    #[allow(clippy::result_unit_err)]
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, ()> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: u32 = m.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return Err(()),
            }
        }
        Ok(deg)
    }

    /// Compiles into a concrete coefficient field.
    pub fn to_polynomial<F: Field>(&self, ring: &PolyRing<F>) -> Polynomial<F> {
        ring.from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.clone()), ring.field().from_bigint(c)))
                .collect(),
        )
    }

    /// Canonical rendering: terms in descending grevlex order.
    pub fn format(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = MonomialOrder::GrevLex;
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            order.compare(&Monomial::new((*b).clone()), &Monomial::new((*a).clone()))
        });
        let mut out = String::new();
        for (idx, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let (neg, abs) = if c < &BigInt::zero() {
                (true, (-c).to_string())
            } else {
                (false, c.to_string())
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, vars);
            if mono.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{abs}*{mono}");
            }
        }
        out
    }
}

fn format_monomial(exps: &[u32], vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 1 {
            parts.push(vars[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars[i], e));
        }
    }
    parts.join("*")
}

/// Options block of a problem file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProblemOptions {
    pub nu_max: Option<u32>,
    pub t: Option<Vec<u32>>,
    pub field: Option<FieldKind>,
}

/// Expected results a corpus file carries for cross-checking.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expectations {
    pub cm: Option<bool>,
    pub e0: Option<BigInt>,
    pub e1: Option<BigInt>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        self.cm.is_none() && self.e0.is_none() && self.e1.is_none()
    }
}

/// A fully parsed problem file.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub field: Option<FieldKind>,
    pub vars: Vec<String>,
    pub relations: Vec<IntPoly>,
    pub rank: usize,
    pub columns: Vec<Vec<IntPoly>>,
    pub options: ProblemOptions,
    pub expect: Option<Expectations>,
}

impl ProblemSpec {
    /// Canonical text form; parsing it back yields an equal spec.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("ring { ");
        if let Some(f) = self.field {
            let _ = write!(out, "field {f} ; ");
        }
        let _ = write!(out, "vars {}", self.vars.join(", "));
        if !self.relations.is_empty() {
            let rels: Vec<String> =
                self.relations.iter().map(|p| p.format(&self.vars)).collect();
            let _ = write!(out, " ; relations {}", rels.join(", "));
        }
        out.push_str(" }\n");

        out.push_str("module { ");
        let _ = write!(out, "rank {} ; columns ", self.rank);
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|col| {
                let entries: Vec<String> =
                    col.iter().map(|p| p.format(&self.vars)).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        out.push_str(&cols.join(", "));
        out.push_str(" }\n");

        let o = &self.options;
        if o.nu_max.is_some() || o.t.is_some() || o.field.is_some() {
            out.push_str("options { ");
            let mut stmts = Vec::new();
            if let Some(n) = o.nu_max {
                stmts.push(format!("nu_max {n}"));
            }
            if let Some(ts) = &o.t {
                let list: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                stmts.push(format!("t {}", list.join(", ")));
            }
            if let Some(f) = o.field {
                stmts.push(format!("field {f}"));
            }
            out.push_str(&stmts.join(" ; "));
            out.push_str(" }\n");
        }

        if let Some(e) = &self.expect {
            if !e.is_empty() {
                out.push_str("expect { ");
                let mut stmts = Vec::new();
                if let Some(cm) = e.cm {
                    stmts.push(format!("cm {cm}"));
                }
                if let Some(v) = &e.e0 {
                    stmts.push(format!("e0 {v}"));
                }
                if let Some(v) = &e.e1 {
                    stmts.push(format!("e1 {v}"));
                }
                out.push_str(&stmts.join(" ; "));
                out.push_str(" }\n");
            }
        }
        out
    }
}

/// Parses "QQ" or "GF(p)".
pub fn parse_field_kind(s: &str) -> Option<FieldKind> {
    let s = s.trim();
    if s == "QQ" {
        return Some(FieldKind::Rationals);
    }
    let inner = s.strip_prefix("GF(")?.strip_suffix(')')?;
    inner.trim().parse::<u64>().ok().map(FieldKind::PrimeField)
}
