//! Sparse polynomials inside a ring context.
//!
//! A [`Polynomial`] stores its nonzero terms sorted strictly descending
//! under the order of the [`PolyRing`] that produced it. All arithmetic
//! goes through the ring context, which owns the field, the variable
//! names and the monomial order.

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use std::cmp::Ordering;
use std::fmt::Write as _;

/// A sparse multivariate polynomial. Zero is the empty term list; no
/// zero coefficients are ever stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in strictly descending order of the owning ring.
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common degree of all terms, or `None` for zero. Errors if the
    /// terms have mixed degrees.
    #[allow(clippy::result_unit_err)]
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, ()> {
        let mut deg = None;
        for (m, _) in &self.terms {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d == m.degree() => {}
                Some(_) => return Err(()),
            }
        }
        Ok(deg)
    }
}

/// Ring context: coefficient field, ambient variables and the monomial
/// order under which polynomials are kept sorted.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing { field, vars, order }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The same ring resorted under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        }
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    /// The variable `x_i`.
    pub fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars(), "variable index out of range");
        Polynomial {
            terms: vec![(Monomial::var(self.nvars(), i, 1), self.field.one())],
        }
    }

    pub fn term(&self, mono: Monomial, coeff: F::Elem) -> Polynomial<F> {
        assert_eq!(mono.nvars(), self.nvars(), "monomial from a different context");
        if self.field.is_zero(&coeff) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(mono, coeff)] }
        }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs:
    /// sorts, merges duplicates, drops zeros.
    pub fn from_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        let mut terms = terms;
        for (m, _) in &terms {
            assert_eq!(m.nvars(), self.nvars(), "monomial from a different context");
        }
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(&last.1, &c);
                    if self.field.is_zero(&last.1) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !self.field.is_zero(&c) {
                out.push((m, c));
            }
        }
        Polynomial { terms: out }
    }

    /// Re-canonicalizes a polynomial that was built under another order
    /// over the same variables.
    pub fn import(&self, p: &Polynomial<F>) -> Polynomial<F> {
        self.from_terms(p.terms.clone())
    }

    pub fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        self.merge(a, b, true)
    }

    fn merge(&self, a: &Polynomial<F>, b: &Polynomial<F>, negate_b: bool) -> Polynomial<F> {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = &a.terms[i];
            let (mb, cb) = &b.terms[j];
            match self.order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_b { self.field.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        self.field.sub(ca, cb)
                    } else {
                        self.field.add(ca, cb)
                    };
                    if !self.field.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for (mb, cb) in &b.terms[j..] {
            let c = if negate_b { self.field.neg(cb) } else { cb.clone() };
            out.push((mb.clone(), c));
        }
        Polynomial { terms: out }
    }

    pub fn neg(&self, a: &Polynomial<F>) -> Polynomial<F> {
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    /// Multiplies by a single term. Sortedness is preserved because the
    /// order is multiplicative.
    pub fn mul_term(&self, a: &Polynomial<F>, mono: &Monomial, coeff: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(coeff) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), self.field.mul(c, coeff)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Polynomial<F>, coeff: &F::Elem) -> Polynomial<F> {
        self.mul_term(a, &Monomial::one(self.nvars()), coeff)
    }

    pub fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: std::collections::HashMap<Monomial, F::Elem> =
            std::collections::HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = self.field.mul(ca, cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = self.field.add(e.get(), &c);
                        if self.field.is_zero(&s) {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        terms.sort_by(|x, y| self.order.compare(&y.0, &x.0));
        Polynomial { terms }
    }

    pub fn pow(&self, a: &Polynomial<F>, k: u32) -> Polynomial<F> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Renders a polynomial with the ring's variable names, terms in the
    /// ring's descending order.
    pub fn format(&self, p: &Polynomial<F>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in p.terms.iter().enumerate() {
            let cs = self.field.format(c);
            let (neg, abs) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
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

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 1 {
                parts.push(self.vars[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.vars[i], e));
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals};

    fn qring() -> PolyRing<Rationals> {
        PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        )
    }

    #[test]
    fn add_cancellation() {
        let r = qring();
        let x = r.var(0);
        let y = r.var(1);
        // (x + y) + (x - y) = 2x
        let s = r.add(&r.add(&x, &y), &r.sub(&x, &y));
        assert_eq!(r.format(&s), "2*x");
    }

    #[test]
    fn mul_absorbing_zero() {
        let r = qring();
        let x = r.var(0);
        assert!(r.mul(&x, &r.zero()).is_zero());
    }

    #[test]
    fn prime_field_product() {
        // Over GF(5): (x + 1)(x + 4) = x^2 + 4 since 4 = -1.
        let r = PolyRing::new(PrimeField::new(5), vec!["x".into()], MonomialOrder::GrevLex);
        let x = r.var(0);
        let a = r.add(&x, &r.one());
        let b = r.add(&x, &r.constant(4));
        let p = r.mul(&a, &b);
        assert_eq!(r.format(&p), "x^2 + 4");
    }

    #[test]
    fn homogeneous_degree_detection() {
        let r = qring();
        let x = r.var(0);
        let y = r.var(1);
        let h = r.add(&r.mul(&x, &x), &r.mul(&x, &y));
        assert_eq!(h.homogeneous_degree(), Ok(Some(2)));
        let mixed = r.add(&x, &r.mul(&x, &y));
        assert!(mixed.homogeneous_degree().is_err());
        assert_eq!(r.zero().homogeneous_degree(), Ok(None));
    }

    #[test]
    fn formatting() {
        let r = qring();
        let x = r.var(0);
        let y = r.var(1);
        let p = r.sub(&r.mul(&x, &r.mul(&x, &y)), &r.constant(Rationals.from_i64(3)));
        assert_eq!(r.format(&p), "x^2*y - 3");
    }
}
