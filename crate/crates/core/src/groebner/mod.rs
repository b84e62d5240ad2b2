//! Gröbner machinery for submodules of free modules over k[x_1..x_D].
//!
//! Quotient rings are handled by adjoining the defining relations to
//! every position, so one engine serves ideals, rings and modules. Only
//! homogeneous (graded, possibly with degree shifts) input is accepted.

mod quotient;
mod resolution;
mod solver;

pub use quotient::QuotientRing;
pub use resolution::{free_resolution, min_generators, trim_generators, FreeResolution};
pub(crate) use resolution::column_degrees;
pub use solver::{syzygies, PolyMatrix, SubmoduleSolver};

use crate::poly::{Field, ModuleOrder, Monomial, PolyRing, Polynomial};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

/// One term of a free-module element: coefficient, monomial, position.
#[derive(Clone, Debug)]
pub(crate) struct ModTerm<F: Field> {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: F::Elem,
}

/// A free-module element as a flat term list, sorted strictly
/// descending under a fixed [`ModuleOrder`].
#[derive(Clone, Debug)]
pub struct ModVec<F: Field> {
    pub(crate) terms: Vec<ModTerm<F>>,
}

impl<F: Field> ModVec<F> {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lt(&self) -> &ModTerm<F> {
        &self.terms[0]
    }

    /// All terms share one position (the element is a polynomial times a
    /// unit vector).
    pub(crate) fn single_position(&self) -> bool {
        self.terms.iter().all(|t| t.pos == self.terms[0].pos)
    }

    /// Shifted degree if homogeneous; `Ok(None)` for zero.
    pub(crate) fn shifted_degree(&self, shifts: &[i64]) -> Result<Option<i64>, ()> {
        let mut deg = None;
        for t in &self.terms {
            let d = t.mono.degree() as i64 + shifts[t.pos];
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return Err(()),
            }
        }
        Ok(deg)
    }
}

/// The reduction/Buchberger engine for one (field, module order) pair.
pub(crate) struct Engine<'a, F: Field> {
    pub field: &'a F,
    pub order: ModuleOrder,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(field: &'a F, order: ModuleOrder) -> Self {
        Engine { field, order }
    }

    fn cmp(&self, a: &ModTerm<F>, b: &ModTerm<F>) -> Ordering {
        self.order.compare((a.pos, &a.mono), (b.pos, &b.mono))
    }

    /// Builds a sorted module vector from per-position components.
    #[allow(clippy::wrong_self_convention)]
    pub fn from_components(&self, comps: &[Polynomial<F>]) -> ModVec<F> {
        let mut terms = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(ModTerm {
                    pos,
                    mono: m.clone(),
                    coeff: c.clone(),
                });
            }
        }
        terms.sort_by(|a, b| self.cmp(b, a));
        ModVec { terms }
    }

    pub fn to_components(&self, v: &ModVec<F>, rank: usize, ring: &PolyRing<F>) -> Vec<Polynomial<F>> {
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
        for t in &v.terms {
            buckets[t.pos].push((t.mono.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| ring.from_terms(b)).collect()
    }

    /// `a - c * x^m * b`, merging sorted term lists.
    pub fn sub_mul(&self, a: &ModVec<F>, c: &F::Elem, m: &Monomial, b: &ModVec<F>) -> ModVec<F> {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let tb_mono = b.terms[j].mono.mul(m);
            let tb = ModTerm {
                pos: b.terms[j].pos,
                mono: tb_mono,
                coeff: self.field.mul(c, &b.terms[j].coeff),
            };
            match self.cmp(&a.terms[i], &tb) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(ModTerm {
                        pos: tb.pos,
                        mono: tb.mono,
                        coeff: self.field.neg(&tb.coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = self.field.sub(&a.terms[i].coeff, &tb.coeff);
                    if !self.field.is_zero(&coeff) {
                        out.push(ModTerm {
                            pos: tb.pos,
                            mono: tb.mono,
                            coeff,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for t in &b.terms[j..] {
            out.push(ModTerm {
                pos: t.pos,
                mono: t.mono.mul(m),
                coeff: self.field.neg(&self.field.mul(c, &t.coeff)),
            });
        }
        ModVec { terms: out }
    }

    pub fn mul_term(&self, a: &ModVec<F>, c: &F::Elem, m: &Monomial) -> ModVec<F> {
        ModVec {
            terms: a
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coeff: self.field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// Divides through by the field's canonical scale (monic over GF(p),
    /// integral content-free over the rationals).
    pub fn canonicalize(&self, v: &mut ModVec<F>) {
        if v.is_zero() {
            return;
        }
        let coeffs: Vec<&F::Elem> = v.terms.iter().map(|t| &t.coeff).collect();
        let s = self.field.canonical_scale(&coeffs);
        let inv = self.field.inv(&s);
        for t in &mut v.terms {
            t.coeff = self.field.mul(&t.coeff, &inv);
        }
    }

    /// Full normal form: no term of the result is divisible by any
    /// leading term of `basis`. Optionally tracks cofactors so that
    /// `input = sum_i cofactor_i * basis_i + result` holds exactly.
    #[allow(clippy::type_complexity)]
    pub fn normal_form(
        &self,
        mut e: ModVec<F>,
        basis: &[ModVec<F>],
        mut track: Option<&mut Vec<Vec<(Monomial, F::Elem)>>>,
    ) -> ModVec<F> {
        if let Some(cof) = track.as_deref_mut() {
            cof.clear();
            cof.resize(basis.len(), Vec::new());
        }
        let mut idx = 0;
        while idx < e.terms.len() {
            let t = &e.terms[idx];
            let reducer = basis.iter().position(|g| {
                !g.is_zero() && g.lt().pos == t.pos && g.lt().mono.divides(&t.mono)
            });
            match reducer {
                None => idx += 1,
                Some(gi) => {
                    let g = &basis[gi];
                    let q_mono = t.mono.try_div(&g.lt().mono).expect("divisibility checked");
                    let q_coeff = self.field.div(&t.coeff, &g.lt().coeff);
                    if let Some(cof) = track.as_deref_mut() {
                        cof[gi].push((q_mono.clone(), q_coeff.clone()));
                    }
                    e = self.sub_mul(&e, &q_coeff, &q_mono, g);
                }
            }
        }
        e
    }

    /// The S-vector of two elements whose leading terms share a position.
    fn s_pair(&self, f: &ModVec<F>, g: &ModVec<F>) -> ModVec<F> {
        debug_assert_eq!(f.lt().pos, g.lt().pos);
        let lcm = f.lt().mono.lcm(&g.lt().mono);
        let u = lcm.try_div(&f.lt().mono).unwrap();
        let v = lcm.try_div(&g.lt().mono).unwrap();
        let scaled_f = self.mul_term(f, &g.lt().coeff, &u);
        self.sub_mul(&scaled_f, &f.lt().coeff, &v, g)
    }

    /// Buchberger's algorithm with the normal selection strategy, the
    /// product criterion (restricted to single-position elements, where
    /// it stays valid for modules) and the chain criterion. Returns the
    /// reduced Gröbner basis, canonically scaled, sorted by descending
    /// leading term.
    pub fn buchberger(&self, gens: Vec<ModVec<F>>) -> Vec<ModVec<F>> {
        let mut basis: Vec<ModVec<F>> = Vec::new();
        for mut g in gens {
            if !g.is_zero() {
                self.canonicalize(&mut g);
                basis.push(g);
            }
        }

        // Pair queue ordered by ascending lcm degree (normal strategy).
        let mut queue: BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>> = BinaryHeap::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let push_pairs = |basis: &[ModVec<F>],
                              queue: &mut BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>>,
                              pending: &mut HashSet<(usize, usize)>,
                              j: usize| {
            for i in 0..j {
                if basis[i].lt().pos == basis[j].lt().pos {
                    let lcm = basis[i].lt().mono.lcm(&basis[j].lt().mono);
                    queue.push(std::cmp::Reverse((lcm.degree(), i, j)));
                    pending.insert((i, j));
                }
            }
        };
        for j in 0..basis.len() {
            push_pairs(&basis, &mut queue, &mut pending, j);
        }

        while let Some(std::cmp::Reverse((_, i, j))) = queue.pop() {
            pending.remove(&(i, j));
            let (f, g) = (&basis[i], &basis[j]);
            let lcm = f.lt().mono.lcm(&g.lt().mono);

            // Product criterion: valid whenever both elements live in a
            // single (common) position.
            if f.single_position()
                && g.single_position()
                && f.lt().mono.coprime(&g.lt().mono)
            {
                continue;
            }

            // Chain criterion: some other element divides the lcm and
            // both companion pairs have already been treated.
            let pos = f.lt().pos;
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].lt().pos == pos
                    && basis[k].lt().mono.divides(&lcm)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chained {
                continue;
            }

            let s = self.s_pair(f, g);
            let mut nf = self.normal_form(s, &basis, None);
            if !nf.is_zero() {
                self.canonicalize(&mut nf);
                basis.push(nf);
                push_pairs(&basis, &mut queue, &mut pending, basis.len() - 1);
            }
        }

        self.inter_reduce(basis)
    }

    /// Minimalizes and tail-reduces a Gröbner basis into the reduced one.
    fn inter_reduce(&self, basis: Vec<ModVec<F>>) -> Vec<ModVec<F>> {
        // Keep only elements whose leading term no other kept element
        // divides; among equal leading terms the earliest survives.
        let mut dropped = vec![false; basis.len()];
        for gi in 0..basis.len() {
            for hi in 0..basis.len() {
                if gi == hi || dropped[hi] {
                    continue;
                }
                let (lg, lh) = (basis[gi].lt(), basis[hi].lt());
                if lh.pos == lg.pos && lh.mono.divides(&lg.mono) && (lh.mono != lg.mono || hi < gi)
                {
                    dropped[gi] = true;
                    break;
                }
            }
        }
        let keep: Vec<ModVec<F>> = basis
            .into_iter()
            .zip(&dropped)
            .filter(|(_, d)| !**d)
            .map(|(g, _)| g)
            .collect();
        // Tail-reduce each element against the others.
        let mut reduced = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<ModVec<F>> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            let mut nf = self.normal_form(keep[i].clone(), &others, None);
            debug_assert!(!nf.is_zero(), "minimal GB element reduced to zero");
            self.canonicalize(&mut nf);
            reduced.push(nf);
        }
        reduced.sort_by(|a, b| self.cmp(b.lt(), a.lt()));
        reduced
    }
}

/// Whether a graded quotient is finite-dimensional, and its length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

/// A reduced Gröbner basis of a submodule of `R^rank` (ring relations
/// already adjoined at every position).
pub struct SubmoduleGb<F: Field> {
    pub rank: usize,
    pub shifts: Vec<i64>,
    pub order: ModuleOrder,
    pub(crate) elements: Vec<ModVec<F>>,
}

impl<F: Field> SubmoduleGb<F> {
    /// Leading terms as (position, monomial) pairs.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|g| (g.lt().pos, g.lt().mono.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis elements as component vectors.
    pub fn generators(&self, ring: &PolyRing<F>) -> Vec<Vec<Polynomial<F>>> {
        let engine = Engine::new(ring.field(), self.order);
        self.elements
            .iter()
            .map(|g| engine.to_components(g, self.rank, ring))
            .collect()
    }

    /// Normal form of an element of `R^rank` against this basis.
    pub fn normal_form(&self, ring: &PolyRing<F>, comps: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        assert_eq!(comps.len(), self.rank, "rank mismatch in normal form");
        let engine = Engine::new(ring.field(), self.order);
        let e = engine.from_components(comps);
        let nf = engine.normal_form(e, &self.elements, None);
        engine.to_components(&nf, self.rank, ring)
    }

    /// Normal form together with the division witness: returns
    /// `(nf, q)` such that the input equals `sum_i q_i * basis_i + nf`
    /// exactly in the free module.
    pub fn normal_form_with_cofactors(
        &self,
        ring: &PolyRing<F>,
        comps: &[Polynomial<F>],
    ) -> (Vec<Polynomial<F>>, Vec<Polynomial<F>>) {
        assert_eq!(comps.len(), self.rank, "rank mismatch in normal form");
        let engine = Engine::new(ring.field(), self.order);
        let e = engine.from_components(comps);
        let mut raw: Vec<Vec<(Monomial, F::Elem)>> = Vec::new();
        let nf = engine.normal_form(e, &self.elements, Some(&mut raw));
        let cofactors = raw.into_iter().map(|t| ring.from_terms(t)).collect();
        (engine.to_components(&nf, self.rank, ring), cofactors)
    }

    pub fn contains(&self, ring: &PolyRing<F>, comps: &[Polynomial<F>]) -> bool {
        self.normal_form(ring, comps).iter().all(|p| p.is_zero())
    }

    /// Number of standard monomials (monomial-times-unit-vector pairs
    /// outside the leading-term module), i.e. the k-dimension of the
    /// quotient.
    pub fn standard_monomial_count(&self, nvars: usize) -> Length {
        count_standard_monomials(&self.leading_terms(), self.rank, nvars)
    }
}

/// Counts monomials of `R^rank` outside the monomial module generated by
/// the given leading terms. Finite iff every position has, for every
/// variable, a pure power of that variable among its leading monomials.
pub fn count_standard_monomials(
    lts: &[(usize, Monomial)],
    rank: usize,
    nvars: usize,
) -> Length {
    let mut total: u64 = 0;
    for pos in 0..rank {
        let monos: Vec<&Monomial> =
            lts.iter().filter(|(p, _)| *p == pos).map(|(_, m)| m).collect();
        // Minimalize: drop monomials strictly divisible by another, and
        // duplicates beyond the first.
        let mut minimal: Vec<&Monomial> = Vec::new();
        for (i, m) in monos.iter().enumerate() {
            let redundant = monos.iter().enumerate().any(|(j, n)| {
                j != i && n.divides(m) && (*n != *m || j < i)
            });
            if !redundant {
                minimal.push(m);
            }
        }
        if minimal.iter().any(|m| m.is_one()) {
            continue; // this component is entirely covered
        }
        if nvars == 0 {
            total += 1; // only the constant monomial
            continue;
        }
        // Pure-power bounds per variable.
        let mut bounds = vec![None::<u32>; nvars];
        for m in &minimal {
            let support: Vec<usize> = m.support().collect();
            if support.len() == 1 {
                let v = support[0];
                let e = m.exps()[v];
                bounds[v] = Some(bounds[v].map_or(e, |b| b.min(e)));
            }
        }
        if bounds.iter().any(|b| b.is_none()) {
            return Length::Infinite;
        }
        let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();
        let mut cur = vec![0u32; nvars];
        total += count_box(&minimal, &bounds, 0, &mut cur);
    }
    Length::Finite(total)
}

/// Counts standard monomials inside the box `prod [0, bounds[v])` by
/// depth-first assignment, filtering the candidate divisors per level.
fn count_box(cands: &[&Monomial], bounds: &[u32], var: usize, cur: &mut Vec<u32>) -> u64 {
    if var == bounds.len() {
        return u64::from(cands.is_empty());
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        cur[var] = e;
        let next: Vec<&Monomial> = cands
            .iter()
            .filter(|m| m.exps()[var] <= e)
            .copied()
            .collect();
        total += count_box(&next, bounds, var + 1, cur);
    }
    cur[var] = 0;
    total
}

/// Krull dimension of `R/M` for a monomial ideal `M`: the largest
/// cardinality of a variable subset containing the support of no
/// generator.
pub fn staircase_dimension(monos: &[Monomial], nvars: usize) -> usize {
    assert!(nvars <= 24, "too many variables for subset enumeration");
    if monos.iter().any(|m| m.is_one()) {
        return 0; // the zero ring
    }
    let supports: Vec<u32> = monos
        .iter()
        .map(|m| m.support().fold(0u32, |acc, v| acc | (1 << v)))
        .collect();
    let mut best = 0;
    for mask in 0u32..(1 << nvars) {
        if supports.iter().any(|s| s & !mask == 0) {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
    }
    best
}
