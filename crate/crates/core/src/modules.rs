//! Parameter modules and the graded pieces of their Rees algebras.
//!
//! A parameter module N in F = A^r is presented by an r x n matrix of
//! homogeneous elements of A with n = d + r - 1, subject to: F/N has
//! finite length, N lies inside mF, and the columns generate N
//! minimally. The symmetric algebra S = A[t_1..t_r] is never
//! materialized; each graded piece N^{nu+1} S_{t-1} inside S_{nu+t} is
//! flattened to a submodule of a free module using a fixed basis of
//! monomials in the t variables.

use crate::error::{EngineError, ParameterViolation};
use crate::groebner::{min_generators, Length, PolyMatrix, QuotientRing};
use crate::poly::{binomial, Field, Monomial, MonomialOrder, PolyRing, Polynomial};
use num_traits::ToPrimitive;
use std::collections::HashMap;

/// A validated parameter module, immutable after construction.
#[derive(Debug)]
pub struct ParameterModule<'a, F: Field> {
    ring: &'a QuotientRing<F>,
    rank: usize,
    columns: Vec<Vec<Polynomial<F>>>,
    col_degrees: Vec<i64>,
    colength: u64,
}

/// Checks conditions (ii) membership in mF, (i) finite colength and
/// (iii) minimal generation, in that order, after reducing all entries
/// modulo the ring relations. The column count must equal d + r - 1.
pub fn validate_parameter_module<'a, F: Field>(
    ring: &'a QuotientRing<F>,
    rank: usize,
    columns: Vec<Vec<Polynomial<F>>>,
) -> Result<ParameterModule<'a, F>, EngineError> {
    assert!(rank >= 1, "rank must be positive");
    let d = ring.krull_dim();
    if d == 0 {
        return Err(ParameterViolation::ZeroDimensionalRing.into());
    }

    // Reduce entries into A.
    let mut cols: Vec<Vec<Polynomial<F>>> = Vec::with_capacity(columns.len());
    for col in columns {
        if col.len() != rank {
            return Err(EngineError::RankMismatch { expected: rank, got: col.len() });
        }
        cols.push(col.iter().map(|p| ring.nf(p)).collect());
    }

    // Homogeneity of each column as a vector.
    let shifts = vec![0i64; rank];
    let mut col_degrees = Vec::with_capacity(cols.len());
    for (j, col) in cols.iter().enumerate() {
        let mut deg: Option<u32> = None;
        for p in col {
            match p.homogeneous_degree() {
                Err(()) => return Err(ParameterViolation::NonHomogeneousColumn { col: j }.into()),
                Ok(None) => {}
                Ok(Some(e)) => match deg {
                    None => deg = Some(e),
                    Some(d0) if d0 == e => {}
                    Some(_) => {
                        return Err(ParameterViolation::NonHomogeneousColumn { col: j }.into())
                    }
                },
            }
        }
        col_degrees.push(deg.map_or(0, i64::from));
    }

    // Condition (ii): every nonzero entry has positive degree.
    for (j, col) in cols.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            if !p.is_zero() && p.degree() == Some(0) {
                return Err(ParameterViolation::NotInMaximalIdeal { row: i, col: j }.into());
            }
        }
    }

    // Condition (i): finite colength of F/N.
    let colength = match ring.quotient_length(rank, &shifts, &cols)? {
        Length::Finite(n) => n,
        Length::Infinite => return Err(ParameterViolation::InfiniteColength.into()),
    };

    // Structural count n = d + r - 1.
    let expected = d + rank - 1;
    if cols.len() != expected {
        return Err(ParameterViolation::WrongColumnCount { expected, got: cols.len() }.into());
    }

    // Condition (iii): the columns generate minimally.
    let mu = min_generators(ring, rank, &shifts, &cols)?;
    if mu != expected {
        return Err(ParameterViolation::NotMinimal { mu, expected }.into());
    }

    Ok(ParameterModule { ring, rank, columns: cols, col_degrees, colength })
}

impl<'a, F: Field> ParameterModule<'a, F> {
    pub fn ring(&self) -> &'a QuotientRing<F> {
        self.ring
    }

    /// The rank r of the ambient free module F = A^r.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The number of columns n = d + r - 1.
    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn dim(&self) -> usize {
        self.ring.krull_dim()
    }

    pub fn columns(&self) -> &[Vec<Polynomial<F>>] {
        &self.columns
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn matrix(&self) -> PolyMatrix<F> {
        PolyMatrix::new(self.rank, self.columns.clone())
    }

    /// The length of F/N, cached at validation time.
    pub fn colength(&self) -> u64 {
        self.colength
    }

    /// The 0-th Fitting ideal I(N): all maximal minors of the matrix,
    /// one per r-subset of columns in lexicographic order, reduced mod I.
    pub fn fitting_ideal(&self) -> Vec<Polynomial<F>> {
        let subsets = combinations(self.num_cols(), self.rank);
        subsets
            .iter()
            .map(|js| {
                let sub: Vec<Vec<Polynomial<F>>> =
                    js.iter().map(|&j| self.columns[j].clone()).collect();
                self.ring.nf(&determinant(self.ring.poly_ring(), &sub))
            })
            .collect()
    }

    /// Flattened generators of N^{nu+1} S_{t-1} inside S_{nu+t}. For
    /// t = 0 the convention N S_{-1} = I(N) applies, so the piece is
    /// I(N) N^{nu} inside S_{nu}.
    pub fn graded_piece(&self, nu: u32, t: u32) -> GradedPiece<F> {
        let r = self.rank;
        let base = self.ring.poly_ring();
        let ext = extended_ring(base, r);
        let nvars = base.nvars();

        // Columns as degree-one forms in the t variables.
        let cols_s1: Vec<Polynomial<F>> = self
            .columns
            .iter()
            .map(|col| {
                let mut acc = ext.zero();
                for (i, c) in col.iter().enumerate() {
                    let ti = ext.var(nvars + i);
                    acc = ext.add(&acc, &ext.mul(&lift(&ext, c, nvars), &ti));
                }
                acc
            })
            .collect();

        let target = sym_power_basis(r, nu + t);
        let index: HashMap<&[u32], usize> = target
            .exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let ambient_rank = target.exponents.len();

        let mut generators: Vec<Vec<Polynomial<F>>> = Vec::new();
        let mut emit = |p: &Polynomial<F>| {
            generators.push(split_by_t_part(self.ring, p, nvars, ambient_rank, &index));
        };

        if t >= 1 {
            let w_basis = sym_power_basis(r, t - 1);
            for_each_multiset_product(&ext, &cols_s1, nu as usize + 1, &mut |prod| {
                for w in &w_basis.exponents {
                    let mut exps = vec![0u32; nvars];
                    exps.extend_from_slice(w);
                    let p = ext.mul_term(prod, &Monomial::new(exps), &ext.field().one());
                    emit(&p);
                }
            });
        } else {
            for delta in self.fitting_ideal() {
                let delta_ext = lift(&ext, &delta, nvars);
                for_each_multiset_product(&ext, &cols_s1, nu as usize, &mut |prod| {
                    emit(&ext.mul(&delta_ext, prod));
                });
            }
        }

        GradedPiece { nu, t, ambient_rank, generators }
    }

    /// lambda(nu, t): the length of S_{nu+t} / N^{nu+1} S_{t-1}. Always
    /// finite for a validated parameter module.
    pub fn graded_piece_length(&self, nu: u32, t: u32) -> Result<u64, EngineError> {
        let piece = self.graded_piece(nu, t);
        let shifts = vec![0i64; piece.ambient_rank];
        match self
            .ring
            .quotient_length(piece.ambient_rank, &shifts, &piece.generators)?
        {
            Length::Finite(n) => Ok(n),
            Length::Infinite => Err(EngineError::Internal(format!(
                "graded piece (nu = {nu}, t = {t}) has infinite length; validation is broken"
            ))),
        }
    }
}

/// The ordered monomial basis of the m-th symmetric power of A^r:
/// exponent vectors of total degree m, descending grevlex, stable
/// across calls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPowerBasis {
    pub r: usize,
    pub m: u32,
    pub exponents: Vec<Vec<u32>>,
}

pub fn sym_power_basis(r: usize, m: u32) -> SymPowerBasis {
    let mut exponents = Vec::new();
    let mut cur = vec![0u32; r];
    compositions(m, 0, &mut cur, &mut exponents);
    let order = MonomialOrder::GrevLex;
    exponents.sort_by(|a, b| {
        order.compare(&Monomial::new(b.clone()), &Monomial::new(a.clone()))
    });
    SymPowerBasis { r, m, exponents }
}

fn compositions(left: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if var + 1 == cur.len() {
        cur[var] = left;
        out.push(cur.clone());
        cur[var] = 0;
        return;
    }
    for e in 0..=left {
        cur[var] = e;
        compositions(left - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

/// A flattened presentation of one graded piece.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    pub nu: u32,
    pub t: u32,
    pub ambient_rank: usize,
    pub generators: Vec<Vec<Polynomial<F>>>,
}

/// The expected number of flattened generators: multisets of column
/// indices times a monomial basis (or minors for t = 0).
pub fn expected_generator_count(n: usize, r: usize, nu: u32, t: u32) -> u64 {
    let n = n as i64;
    let r = r as i64;
    let nu = i64::from(nu);
    let t = i64::from(t);
    let count = if t >= 1 {
        binomial(n + nu, nu + 1) * binomial(t - 1 + r - 1, r - 1)
    } else {
        binomial(n, r) * binomial(n + nu - 1, nu)
    };
    count.to_u64().expect("generator count fits in u64")
}

/// Length of A/J^k computed directly from k-fold products of the ideal
/// generators: the classical path for parameter ideals, independent of
/// the symmetric-power flattening.
pub fn ideal_power_colength<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F>],
    k: u32,
) -> Result<u64, EngineError> {
    assert!(k >= 1, "ideal power exponent must be positive");
    let r = ring.poly_ring();
    let mut products: Vec<Polynomial<F>> = Vec::new();
    for_each_multiset_product(r, gens, k as usize, &mut |p| products.push(ring.nf(p)));
    match ring.ideal_colength(&products)? {
        Length::Finite(n) => Ok(n),
        Length::Infinite => Err(EngineError::InfiniteLength),
    }
}

/// Determinant of a square column-major polynomial matrix by cofactor
/// expansion along the first row.
pub fn determinant<F: Field>(ring: &PolyRing<F>, cols: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = cols.len();
    if n == 0 {
        return ring.one();
    }
    for c in cols {
        assert_eq!(c.len(), n, "determinant of a non-square matrix");
    }
    if n == 1 {
        return cols[0][0].clone();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if cols[j][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> = cols
            .iter()
            .enumerate()
            .filter(|(jj, _)| *jj != j)
            .map(|(_, col)| col[1..].to_vec())
            .collect();
        let term = ring.mul(&cols[j][0], &determinant(ring, &minor));
        acc = if j % 2 == 0 {
            ring.add(&acc, &term)
        } else {
            ring.sub(&acc, &term)
        };
    }
    acc
}

/// All r-subsets of {0..n-1} in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < r - cur.len() {
                break;
            }
            cur.push(j);
            rec(n, r, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

/// Enumerates non-decreasing index tuples of the given size and feeds
/// the running product of the chosen elements to the callback.
fn for_each_multiset_product<F: Field>(
    ring: &PolyRing<F>,
    elems: &[Polynomial<F>],
    size: usize,
    f: &mut impl FnMut(&Polynomial<F>),
) {
    fn rec<F: Field>(
        ring: &PolyRing<F>,
        elems: &[Polynomial<F>],
        size: usize,
        start: usize,
        acc: &Polynomial<F>,
        f: &mut impl FnMut(&Polynomial<F>),
    ) {
        if size == 0 {
            f(acc);
            return;
        }
        for j in start..elems.len() {
            let next = ring.mul(acc, &elems[j]);
            rec(ring, elems, size - 1, j, &next, f);
        }
    }
    rec(ring, elems, size, 0, &ring.one(), f);
}

/// The base ring with r extra symmetric-power variables appended.
fn extended_ring<F: Field>(base: &PolyRing<F>, r: usize) -> PolyRing<F> {
    let mut vars = base.vars().to_vec();
    for i in 0..r {
        vars.push(format!("@t{i}"));
    }
    PolyRing::new(base.field().clone(), vars, base.order())
}

/// Lifts a base-ring polynomial into the extended ring.
fn lift<F: Field>(ext: &PolyRing<F>, p: &Polynomial<F>, nvars: usize) -> Polynomial<F> {
    let pad = ext.nvars() - nvars;
    ext.from_terms(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.extend(std::iter::repeat_n(0, pad));
                (Monomial::new(exps), c.clone())
            })
            .collect(),
    )
}

/// Splits an extended-ring polynomial into base-ring components indexed
/// by the t-monomial basis of the target symmetric power.
fn split_by_t_part<F: Field>(
    ring: &QuotientRing<F>,
    p: &Polynomial<F>,
    nvars: usize,
    ambient_rank: usize,
    index: &HashMap<&[u32], usize>,
) -> Vec<Polynomial<F>> {
    let base = ring.poly_ring();
    let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); ambient_rank];
    for (m, c) in p.terms() {
        let (x_part, t_part) = m.exps().split_at(nvars);
        let pos = *index
            .get(t_part)
            .expect("t-degree of a graded piece generator out of range");
        buckets[pos].push((Monomial::new(x_part.to_vec()), c.clone()));
    }
    buckets
        .into_iter()
        .map(|b| ring.nf(&base.from_terms(b)))
        .collect()
}
