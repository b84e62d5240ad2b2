//! Graded minimal generators and minimal free resolutions.
//!
//! The resolution of A = R/I over the ambient polynomial ring R is the
//! independent Cohen-Macaulay oracle: depth A = D - pd_R(A) by the
//! Auslander-Buchsbaum formula, and A is Cohen-Macaulay iff depth
//! equals Krull dimension.

use super::solver::{PolyMatrix, SubmoduleSolver};
use super::{Engine, ModVec, QuotientRing};
use crate::error::EngineError;
use crate::poly::{Field, Monomial, Polynomial};
use std::collections::BTreeMap;

/// Homogeneous degrees of module elements with respect to position
/// shifts. Zero elements report degree 0.
pub(crate) fn column_degrees<F: Field>(
    ring: &QuotientRing<F>,
    rank: usize,
    shifts: &[i64],
    cols: &[Vec<Polynomial<F>>],
) -> Result<Vec<i64>, EngineError> {
    let engine = Engine::new(ring.field(), ring.module_order());
    let mut out = Vec::with_capacity(cols.len());
    for (j, col) in cols.iter().enumerate() {
        if col.len() != rank {
            return Err(EngineError::RankMismatch { expected: rank, got: col.len() });
        }
        let v = engine.from_components(col);
        match v.shifted_degree(shifts) {
            Err(()) => {
                return Err(EngineError::NonHomogeneous {
                    what: format!("column {}", j + 1),
                })
            }
            Ok(d) => out.push(d.unwrap_or(0)),
        }
    }
    Ok(out)
}

/// Trims homogeneous generators of a submodule N of `A^rank` to a
/// minimal generating set by graded Nakayama: working degree by degree
/// upward, a generator is kept iff its normal form modulo mN + IF is
/// k-linearly independent of the earlier ones.
pub fn trim_generators<F: Field>(
    ring: &QuotientRing<F>,
    rank: usize,
    shifts: &[i64],
    gens: &[Vec<Polynomial<F>>],
) -> Result<Vec<Vec<Polynomial<F>>>, EngineError> {
    let degrees = column_degrees(ring, rank, shifts, gens)?;
    let r = ring.poly_ring();
    let engine = Engine::new(ring.field(), ring.module_order());

    let nonzero: Vec<usize> = (0..gens.len())
        .filter(|&j| gens[j].iter().any(|p| !p.is_zero()))
        .collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }

    // mN: every variable times every generator (relations adjoined by
    // the submodule GB itself).
    let mut m_n: Vec<Vec<Polynomial<F>>> = Vec::new();
    for &j in &nonzero {
        for v in 0..r.nvars() {
            let xv = r.var(v);
            m_n.push(gens[j].iter().map(|p| r.mul(&xv, p)).collect());
        }
    }
    let gb = ring.gb_of_submodule(rank, shifts, &m_n)?;

    // Sort by degree ascending, stable in the original order.
    let mut order_idx = nonzero.clone();
    order_idx.sort_by_key(|&j| (degrees[j], j));

    let mut pivots: Vec<ModVec<F>> = Vec::new();
    let mut kept: Vec<usize> = Vec::new();
    let one = Monomial::one(r.nvars());
    for &j in &order_idx {
        let nf_comps = gb.normal_form(r, &gens[j]);
        let mut v = engine.from_components(&nf_comps);
        // Gaussian reduction against the pivot rows over k.
        while !v.is_zero() {
            let lead = (v.lt().pos, v.lt().mono.clone());
            match pivots
                .iter()
                .find(|p| p.lt().pos == lead.0 && p.lt().mono == lead.1)
            {
                Some(p) => {
                    let c = ring.field().div(&v.lt().coeff, &p.lt().coeff);
                    v = engine.sub_mul(&v, &c, &one, p);
                }
                None => break,
            }
        }
        if !v.is_zero() {
            pivots.push(v);
            kept.push(j);
        }
    }
    kept.sort_unstable();
    Ok(kept.into_iter().map(|j| gens[j].clone()).collect())
}

/// mu(N): the size of a minimal homogeneous generating set.
pub fn min_generators<F: Field>(
    ring: &QuotientRing<F>,
    rank: usize,
    shifts: &[i64],
    gens: &[Vec<Polynomial<F>>],
) -> Result<usize, EngineError> {
    Ok(trim_generators(ring, rank, shifts, gens)?.len())
}

/// A minimal graded free resolution of A = R/I over the ambient
/// polynomial ring R.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    /// differentials[k] maps F_{k+1} -> F_k; differentials[0] is the row
    /// of minimal generators of I.
    pub differentials: Vec<PolyMatrix<F>>,
    /// Graded Betti numbers: betti[k] maps degree -> multiplicity in F_k.
    pub betti: Vec<BTreeMap<i64, usize>>,
    /// Projective dimension, when the resolution terminated.
    pub pd: Option<usize>,
    pub complete: bool,
}

/// Resolves A = R/I minimally over R, stopping after `budget`
/// differentials. Minimality is maintained by trimming each syzygy
/// module to minimal generators, so no differential has a unit entry.
pub fn free_resolution<F: Field>(
    ring: &QuotientRing<F>,
    budget: usize,
) -> Result<FreeResolution<F>, EngineError> {
    let ambient = ring.ambient();
    let mut betti = vec![BTreeMap::from([(0i64, 1usize)])];

    let rel_cols: Vec<Vec<Polynomial<F>>> =
        ring.relations().iter().map(|p| vec![p.clone()]).collect();
    let mingens = trim_generators(&ambient, 1, &[0], &rel_cols)?;
    if mingens.is_empty() {
        return Ok(FreeResolution { differentials: Vec::new(), betti, pd: Some(0), complete: true });
    }

    let mut differentials = vec![PolyMatrix::new(1, mingens)];
    let mut shifts = vec![0i64];
    loop {
        let d = differentials.last().unwrap();
        let col_degs = column_degrees(&ambient, d.nrows, &shifts, &d.columns)?;
        let solver = SubmoduleSolver::new(&ambient, d.nrows, &shifts, &d.columns)?;
        let kernel = solver.kernel();
        let trimmed = trim_generators(&ambient, d.ncols(), &col_degs, &kernel)?;
        betti.push(degree_multiset(&col_degs));
        if trimmed.is_empty() {
            let pd = differentials.len();
            return Ok(FreeResolution { differentials, betti, pd: Some(pd), complete: true });
        }
        if differentials.len() == budget {
            return Ok(FreeResolution { differentials, betti, pd: None, complete: false });
        }
        shifts = col_degs;
        differentials.push(PolyMatrix::new(differentials.last().unwrap().ncols(), trimmed));
    }
}

fn degree_multiset(degs: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &d in degs {
        *m.entry(d).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing, Rationals};

    fn ring_xy() -> PolyRing<Rationals> {
        PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        )
    }

    #[test]
    fn min_generators_examples() {
        let a = QuotientRing::new(ring_xy(), vec![]).unwrap();
        let r = a.poly_ring().clone();
        let x = r.var(0);
        let y = r.var(1);
        // Duplicate generator counts once.
        let mu = min_generators(&a, 1, &[0], &[vec![x.clone()], vec![x.clone()]]).unwrap();
        assert_eq!(mu, 1);
        // x, y, x + y span a 2-dimensional degree-1 space.
        let mu = min_generators(
            &a,
            1,
            &[0],
            &[vec![x.clone()], vec![y.clone()], vec![r.add(&x, &y)]],
        )
        .unwrap();
        assert_eq!(mu, 2);
        // Empty input.
        assert_eq!(min_generators(&a, 1, &[0], &[]).unwrap(), 0);
        // Redundancy in mixed degrees: x and x^2.
        let x2 = r.mul(&x, &x);
        let mu = min_generators(&a, 1, &[0], &[vec![x2], vec![x.clone()]]).unwrap();
        assert_eq!(mu, 1);
    }

    #[test]
    fn resolution_of_free_ring() {
        let a = QuotientRing::new(ring_xy(), vec![]).unwrap();
        let res = free_resolution(&a, 4).unwrap();
        assert_eq!(res.pd, Some(0));
        assert_eq!(a.depth(), 2);
        assert!(a.is_cohen_macaulay());
    }

    #[test]
    fn resolution_of_non_cm_ring() {
        // I = (x^2, xy): one linear syzygy (y, -x), then done. pd 2,
        // depth 0, dim 1: not Cohen-Macaulay.
        let r = ring_xy();
        let x = r.var(0);
        let y = r.var(1);
        let a = QuotientRing::new(r.clone(), vec![r.mul(&x, &x), r.mul(&x, &y)]).unwrap();
        let res = free_resolution(&a, 4).unwrap();
        assert_eq!(res.pd, Some(2));
        assert_eq!(res.differentials[0].ncols(), 2);
        assert_eq!(res.differentials[1].ncols(), 1);
        assert_eq!(a.depth(), 0);
        assert_eq!(a.krull_dim(), 1);
        assert!(!a.is_cohen_macaulay());
        // d1 * d2 = 0 over the ambient ring.
        let ambient = a.ambient();
        assert!(res.differentials[0].mul(&ambient, &res.differentials[1]).is_zero());
    }

    #[test]
    fn resolution_of_hypersurface() {
        // I = (x^2): Koszul resolution of a principal ideal. pd 1,
        // depth 1 = dim 1: Cohen-Macaulay.
        let r = ring_xy();
        let x = r.var(0);
        let a = QuotientRing::new(r.clone(), vec![r.mul(&x, &x)]).unwrap();
        let res = free_resolution(&a, 4).unwrap();
        assert_eq!(res.pd, Some(1));
        assert_eq!(a.depth(), 1);
        assert_eq!(a.krull_dim(), 1);
        assert!(a.is_cohen_macaulay());
    }

    #[test]
    fn minimality_no_unit_entries() {
        let r = ring_xy();
        let x = r.var(0);
        let y = r.var(1);
        let a = QuotientRing::new(r.clone(), vec![r.mul(&x, &x), r.mul(&x, &y)]).unwrap();
        let res = free_resolution(&a, 4).unwrap();
        for d in &res.differentials {
            for col in &d.columns {
                for p in col {
                    if let Some(deg) = p.degree() {
                        assert!(deg > 0, "unit entry in a minimal resolution");
                    }
                }
            }
        }
    }

    #[test]
    fn cm_oracle_dimension_two() {
        // k[x,y,z]/(xy, xz): dim 2, depth 1 (one syzygy (z, -y)).
        let r = PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::GrevLex,
        );
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let a = QuotientRing::new(r.clone(), vec![r.mul(&x, &y), r.mul(&x, &z)]).unwrap();
        assert_eq!(a.krull_dim(), 2);
        assert_eq!(a.depth(), 1);
        assert!(!a.is_cohen_macaulay());
    }
}
