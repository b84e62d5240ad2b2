//! Kernels and membership-with-witness for module maps over A.
//!
//! Both are answered by one Gröbner basis of the graph module
//! `{(col_j, e_j)}` under a block elimination order: basis elements
//! supported entirely in the tracking block are syzygies, and reducing
//! `(v, 0)` expresses `v` in terms of the columns when the first block
//! vanishes.

use super::{Engine, ModVec, QuotientRing};
use crate::error::EngineError;
use crate::poly::{Field, ModuleOrder, Polynomial};

/// A matrix over the ring, stored column-major.
#[derive(Clone, Debug)]
pub struct PolyMatrix<F: Field> {
    pub nrows: usize,
    pub columns: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(nrows: usize, columns: Vec<Vec<Polynomial<F>>>) -> Self {
        for c in &columns {
            assert_eq!(c.len(), nrows, "column length mismatch");
        }
        PolyMatrix { nrows, columns }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.columns[j][i]
    }

    /// Matrix product over the quotient ring (entries reduced mod I).
    pub fn mul(&self, ring: &QuotientRing<F>, other: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch in product");
        let r = ring.poly_ring();
        let columns = other
            .columns
            .iter()
            .map(|col| {
                (0..self.nrows)
                    .map(|i| {
                        let mut acc = r.zero();
                        for (k, c) in col.iter().enumerate() {
                            acc = r.add(&acc, &r.mul(self.entry(i, k), c));
                        }
                        ring.nf(&acc)
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { nrows: self.nrows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }
}

/// Precomputed elimination basis for the submodule of `A^rank` spanned
/// by a fixed list of columns.
pub struct SubmoduleSolver<'a, F: Field> {
    ring: &'a QuotientRing<F>,
    target_rank: usize,
    ncols: usize,
    order: ModuleOrder,
    gb: Vec<ModVec<F>>,
}

impl<'a, F: Field> SubmoduleSolver<'a, F> {
    /// Builds the solver. Columns must be homogeneous with respect to
    /// `target_shifts`; their own degrees become the tracking shifts.
    pub fn new(
        ring: &'a QuotientRing<F>,
        target_rank: usize,
        target_shifts: &[i64],
        columns: &[Vec<Polynomial<F>>],
    ) -> Result<Self, EngineError> {
        assert_eq!(target_shifts.len(), target_rank);
        let ncols = columns.len();
        let combined_rank = target_rank + ncols;
        let order = ModuleOrder::Elimination {
            split: target_rank,
            inner: ring.poly_ring().order(),
        };
        let engine = Engine::new(ring.field(), order);

        // Degrees of the columns, needed as shifts of the tracking block.
        let mut col_shifts = Vec::with_capacity(ncols);
        let probe = Engine::new(ring.field(), ring.module_order());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != target_rank {
                return Err(EngineError::RankMismatch { expected: target_rank, got: col.len() });
            }
            let v = probe.from_components(col);
            match v.shifted_degree(target_shifts) {
                Err(()) => {
                    return Err(EngineError::NonHomogeneous {
                        what: format!("column {} of the matrix", j + 1),
                    })
                }
                Ok(deg) => col_shifts.push(deg.unwrap_or(0)),
            }
        }

        let r = ring.poly_ring();
        let mut gens: Vec<ModVec<F>> = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            let mut comps = col.clone();
            comps.resize(combined_rank, r.zero());
            comps[target_rank + j] = r.one();
            gens.push(engine.from_components(&comps));
        }
        for q in ring.relations_gb() {
            for pos in 0..combined_rank {
                let mut comps = vec![r.zero(); combined_rank];
                comps[pos] = q.clone();
                gens.push(engine.from_components(&comps));
            }
        }
        let gb = engine.buchberger(gens);
        Ok(SubmoduleSolver { ring, target_rank, ncols, order, gb })
    }

    fn engine(&self) -> Engine<'_, F> {
        Engine::new(self.ring.field(), self.order)
    }

    /// Generators of the kernel of the map `A^ncols -> A^rank` defined by
    /// the columns: the tracking blocks of basis elements whose target
    /// block vanished.
    pub fn kernel(&self) -> Vec<Vec<Polynomial<F>>> {
        let engine = self.engine();
        let r = self.ring.poly_ring();
        let mut out = Vec::new();
        for g in &self.gb {
            if g.terms.iter().all(|t| t.pos >= self.target_rank) {
                let comps = engine.to_components(g, self.target_rank + self.ncols, r);
                let tail: Vec<Polynomial<F>> = comps[self.target_rank..].to_vec();
                // Multiples of the relations in the tracking block are
                // zero as syzygies over A.
                if tail.iter().any(|p| !self.ring.is_zero_mod(p)) {
                    out.push(tail.iter().map(|p| self.ring.nf(p)).collect());
                }
            }
        }
        out
    }

    /// Writes `v` as an A-combination of the columns: returns `q` with
    /// `v = sum_j q_j * col_j` over A, or None if `v` is not a member.
    pub fn express(&self, v: &[Polynomial<F>]) -> Option<Vec<Polynomial<F>>> {
        assert_eq!(v.len(), self.target_rank, "rank mismatch in express");
        let engine = self.engine();
        let r = self.ring.poly_ring();
        let mut comps = v.to_vec();
        comps.resize(self.target_rank + self.ncols, r.zero());
        let nf = engine.normal_form(engine.from_components(&comps), &self.gb, None);
        if nf.terms.iter().any(|t| t.pos < self.target_rank) {
            return None;
        }
        let parts = engine.to_components(&nf, self.target_rank + self.ncols, r);
        Some(
            parts[self.target_rank..]
                .iter()
                .map(|p| self.ring.nf(&r.neg(p)))
                .collect(),
        )
    }
}

/// Columns generating the kernel of the A-module map given by `matrix`.
pub fn syzygies<F: Field>(
    ring: &QuotientRing<F>,
    matrix: &PolyMatrix<F>,
) -> Result<PolyMatrix<F>, EngineError> {
    let shifts = vec![0i64; matrix.nrows];
    let solver = SubmoduleSolver::new(ring, matrix.nrows, &shifts, &matrix.columns)?;
    Ok(PolyMatrix::new(matrix.ncols(), solver.kernel()))
}
