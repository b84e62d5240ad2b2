//! Monomials (exponent vectors) and monomial / module-term orders.

use std::cmp::Ordering;

/// A monomial in a fixed ambient variable list, stored as its exponent
/// vector. The vector length is fixed per ring context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The monomial `x_i^e`.
    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }
}

/// Total orders on monomials of a fixed variable context.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: higher total degree first; ties are
    /// broken in favour of the smaller last nonzero exponent difference.
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Graded lexicographic: total degree, then lex.
    GradedLex,
}

impl MonomialOrder {
    /// Compares two monomials. The exponent vectors must have equal length.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(
            a.nvars(),
            b.nvars(),
            "monomial comparison across different variable contexts"
        );
        match self {
            MonomialOrder::GrevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        match x.cmp(y) {
                            Ordering::Equal => continue,
                            // Last nonzero entry of a - b negative => a > b.
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                d => d,
            },
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(&b.exps) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        d => return d,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GradedLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => MonomialOrder::Lex.compare(a, b),
                d => d,
            },
        }
    }
}

/// Orders on module terms `(position, monomial)` of a free module.
///
/// Position ties always resolve toward the lower index: position 0
/// beats position 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleOrder {
    /// Compare monomials first, positions only on ties.
    TermOverPosition(MonomialOrder),
    /// Compare positions first, monomials on ties.
    PositionOverTerm(MonomialOrder),
    /// Block elimination order: positions below `split` dominate all
    /// positions at or above it; within a block, term over position.
    Elimination { split: usize, inner: MonomialOrder },
}

impl ModuleOrder {
    pub fn monomial_order(&self) -> MonomialOrder {
        match self {
            ModuleOrder::TermOverPosition(o)
            | ModuleOrder::PositionOverTerm(o)
            | ModuleOrder::Elimination { inner: o, .. } => *o,
        }
    }

    pub fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self {
            ModuleOrder::TermOverPosition(o) => o
                .compare(a.1, b.1)
                .then_with(|| b.0.cmp(&a.0)),
            ModuleOrder::PositionOverTerm(o) => b
                .0
                .cmp(&a.0)
                .then_with(|| o.compare(a.1, b.1)),
            ModuleOrder::Elimination { split, inner } => {
                let block = |p: usize| usize::from(p >= *split);
                block(b.0)
                    .cmp(&block(a.0))
                    .then_with(|| inner.compare(a.1, b.1))
                    .then_with(|| b.0.cmp(&a.0))
            }
        }
    }
}
