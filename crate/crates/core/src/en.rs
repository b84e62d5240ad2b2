//! The Eagon-Northcott complex of the presentation matrix and its
//! finite-length homology.
//!
//! For an r x n matrix the complex has length n - r + 1 = d. K_0 = A;
//! for p >= 1, K_p is free on pairs (J, alpha) with J an (r+p-1)-subset
//! of the columns and alpha an exponent vector of weight p - 1. The
//! first differential sends e_J to the maximal minor det(N_J); higher
//! differentials strip one column index and decrement one exponent. For
//! r = 1 this is the ordinary Koszul complex of the entries. The
//! alternating sum of the homology lengths is the Buchsbaum-Rim
//! multiplicity e(F/N).

use crate::error::EngineError;
use crate::groebner::{trim_generators, Length, PolyMatrix, QuotientRing, SubmoduleSolver};
use crate::modules::{combinations, determinant, sym_power_basis, ParameterModule};
use crate::poly::{Field, Polynomial};
use std::collections::HashMap;

/// A basis element (J, alpha) of one term of the complex. K_0 has the
/// single element with empty `cols` and `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnBasisElem {
    pub cols: Vec<usize>,
    pub alpha: Vec<u32>,
}

/// The Eagon-Northcott complex with explicit differential matrices over
/// A, verified to compose to zero at construction.
pub struct EnComplex<'a, F: Field> {
    ring: &'a QuotientRing<F>,
    pub r: usize,
    pub n: usize,
    /// basis[p] labels the free generators of K_p, p = 0..=length.
    pub basis: Vec<Vec<EnBasisElem>>,
    /// Degree shifts of the K_p basis elements.
    pub shifts: Vec<Vec<i64>>,
    /// diffs[p-1] is d_p : K_p -> K_{p-1}.
    pub diffs: Vec<PolyMatrix<F>>,
}

impl<'a, F: Field> EnComplex<'a, F> {
    /// Complex length n - r + 1 (= the dimension d for parameter modules).
    pub fn length(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self, p: usize) -> usize {
        self.basis[p].len()
    }
}

/// Builds K_.(N~) for the presentation matrix of a validated parameter
/// module.
pub fn build_en_complex<'a, F: Field>(
    pm: &ParameterModule<'a, F>,
) -> Result<EnComplex<'a, F>, EngineError> {
    let ring = pm.ring();
    let base = ring.poly_ring();
    let r = pm.rank();
    let n = pm.num_cols();
    let len = n - r + 1;

    let mut basis: Vec<Vec<EnBasisElem>> = Vec::with_capacity(len + 1);
    basis.push(vec![EnBasisElem { cols: Vec::new(), alpha: Vec::new() }]);
    for p in 1..=len {
        let mut layer = Vec::new();
        let alphas = sym_power_basis(r, p as u32 - 1);
        for cols in combinations(n, r + p - 1) {
            for alpha in &alphas.exponents {
                layer.push(EnBasisElem { cols: cols.clone(), alpha: alpha.clone() });
            }
        }
        basis.push(layer);
    }

    let shifts: Vec<Vec<i64>> = basis
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|b| b.cols.iter().map(|&j| pm.col_degrees()[j]).sum())
                .collect()
        })
        .collect();

    let mut diffs: Vec<PolyMatrix<F>> = Vec::with_capacity(len);
    for p in 1..=len {
        let target_index: HashMap<&EnBasisElem, usize> =
            basis[p - 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut columns = Vec::with_capacity(basis[p].len());
        for b in &basis[p] {
            let mut col = vec![base.zero(); basis[p - 1].len()];
            if p == 1 {
                // d_1(e_J) = det of the chosen columns.
                let sub: Vec<Vec<Polynomial<F>>> =
                    b.cols.iter().map(|&j| pm.columns()[j].clone()).collect();
                col[0] = ring.nf(&determinant(base, &sub));
            } else {
                for (jpos, &j) in b.cols.iter().enumerate() {
                    for (i, &a) in b.alpha.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        let mut target = EnBasisElem {
                            cols: b.cols.clone(),
                            alpha: b.alpha.clone(),
                        };
                        target.cols.remove(jpos);
                        target.alpha[i] -= 1;
                        let row = *target_index
                            .get(&target)
                            .expect("differential target missing from basis");
                        let entry = &pm.columns()[j][i];
                        let signed = if jpos % 2 == 0 {
                            entry.clone()
                        } else {
                            base.neg(entry)
                        };
                        col[row] = base.add(&col[row], &signed);
                    }
                }
            }
            columns.push(col);
        }
        diffs.push(PolyMatrix::new(basis[p - 1].len(), columns));
    }

    // The complex property is the construction contract.
    for p in 1..diffs.len() {
        let prod = diffs[p - 1].mul(ring, &diffs[p]);
        if !prod.is_zero() {
            return Err(EngineError::Internal(format!(
                "Eagon-Northcott differentials d_{} . d_{} do not compose to zero",
                p,
                p + 1
            )));
        }
    }

    Ok(EnComplex { ring, r, n, basis, shifts, diffs })
}

/// Homology lengths and the Euler-Poincaré characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub lengths: Vec<u64>,
    pub euler_char: i64,
}

/// Computes ker d_p / im d_{p+1} at every homological degree: kernel
/// generators come from the syzygy solver, the image is lifted into
/// them by module division, and the length of the quotient is one
/// standard-monomial count over the kernel presentation.
pub fn homology_lengths<F: Field>(c: &EnComplex<'_, F>) -> Result<HomologyReport, EngineError> {
    let ring = c.ring;
    let len = c.length();
    let mut lengths = Vec::with_capacity(len + 1);

    for p in 0..=len {
        let rank_p = c.rank(p);
        // Generators of ker d_p.
        let kernel: Vec<Vec<Polynomial<F>>> = if p == 0 {
            (0..rank_p)
                .map(|i| {
                    let mut v = vec![ring.poly_ring().zero(); rank_p];
                    v[i] = ring.poly_ring().one();
                    v
                })
                .collect()
        } else {
            let d_p = &c.diffs[p - 1];
            let solver =
                SubmoduleSolver::new(ring, d_p.nrows, &c.shifts[p - 1], &d_p.columns)?;
            solver.kernel()
        };
        let kgens = trim_generators(ring, rank_p, &c.shifts[p], &kernel)?;

        let image_cols: &[Vec<Polynomial<F>>] = if p < len {
            &c.diffs[p].columns
        } else {
            &[]
        };

        if kgens.is_empty() {
            for (j, col) in image_cols.iter().enumerate() {
                if col.iter().any(|q| !ring.is_zero_mod(q)) {
                    return Err(EngineError::Internal(format!(
                        "column {} of d_{} is nonzero but ker d_{} vanishes",
                        j + 1,
                        p + 1,
                        p
                    )));
                }
            }
            lengths.push(0);
            continue;
        }

        let ksolver = SubmoduleSolver::new(ring, rank_p, &c.shifts[p], &kgens)?;
        let mut presentation: Vec<Vec<Polynomial<F>>> = Vec::new();
        for (j, col) in image_cols.iter().enumerate() {
            let lifted = ksolver.express(col).ok_or_else(|| {
                EngineError::Internal(format!(
                    "column {} of d_{} does not lie in ker d_{}",
                    j + 1,
                    p + 1,
                    p
                ))
            })?;
            presentation.push(lifted);
        }
        presentation.extend(ksolver.kernel());

        let kshifts = kernel_degrees(ring, rank_p, &c.shifts[p], &kgens)?;
        match ring.quotient_length(kgens.len(), &kshifts, &presentation)? {
            Length::Finite(l) => lengths.push(l),
            Length::Infinite => {
                return Err(EngineError::Internal(format!(
                    "homology at degree {p} has infinite length"
                )))
            }
        }
    }

    let mut euler_char = 0i64;
    for (p, l) in lengths.iter().enumerate() {
        let signed = *l as i64;
        euler_char += if p % 2 == 0 { signed } else { -signed };
    }
    Ok(HomologyReport { lengths, euler_char })
}

fn kernel_degrees<F: Field>(
    ring: &QuotientRing<F>,
    rank: usize,
    shifts: &[i64],
    cols: &[Vec<Polynomial<F>>],
) -> Result<Vec<i64>, EngineError> {
    crate::groebner::column_degrees(ring, rank, shifts, cols)
}

/// chi(K_.(N~)) = e(F/N), the Buchsbaum-Rim multiplicity, together with
/// the homology lengths it came from.
pub fn br_multiplicity<F: Field>(
    pm: &ParameterModule<'_, F>,
) -> Result<(u64, HomologyReport), EngineError> {
    let complex = build_en_complex(pm)?;
    let report = homology_lengths(&complex)?;
    if report.euler_char < 1 {
        return Err(EngineError::Internal(format!(
            "Euler characteristic {} of a parameter module must be positive",
            report.euler_char
        )));
    }
    Ok((report.euler_char as u64, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::validate_parameter_module;
    use crate::poly::{MonomialOrder, PolyRing, Rationals};

    fn ring_k_x() -> QuotientRing<Rationals> {
        let r = PolyRing::new(Rationals, vec!["x".into()], MonomialOrder::GrevLex);
        QuotientRing::new(r, vec![]).unwrap()
    }

    fn ring_k_xy() -> QuotientRing<Rationals> {
        let r = PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        );
        QuotientRing::new(r, vec![]).unwrap()
    }

    fn ring_noncm() -> QuotientRing<Rationals> {
        let r = PolyRing::new(
            Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        );
        let x = r.var(0);
        let y = r.var(1);
        QuotientRing::new(r.clone(), vec![r.mul(&x, &x), r.mul(&x, &y)]).unwrap()
    }

    #[test]
    fn koszul_specialization() {
        // r = 1, matrix [x y] over k[x,y]: 0 -> A -> A^2 -> A.
        let a = ring_k_xy();
        let r = a.poly_ring().clone();
        let pm =
            validate_parameter_module(&a, 1, vec![vec![r.var(0)], vec![r.var(1)]]).unwrap();
        let c = build_en_complex(&pm).unwrap();
        assert_eq!(c.length(), 2);
        assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (1, 2, 1));
        // d_1 = [x y].
        assert_eq!(r.format(c.diffs[0].entry(0, 0)), "x");
        assert_eq!(r.format(c.diffs[0].entry(0, 1)), "y");
        // d_2 = (-y, x) against the basis order {0} < {1}.
        assert_eq!(r.format(c.diffs[1].entry(0, 0)), "-y");
        assert_eq!(r.format(c.diffs[1].entry(1, 0)), "x");
    }

    #[test]
    fn diagonal_complex_is_single_minor() {
        let a = ring_k_x();
        let r = a.poly_ring().clone();
        let x = r.var(0);
        let cols = vec![vec![x.clone(), r.zero()], vec![r.zero(), x.clone()]];
        let pm = validate_parameter_module(&a, 2, cols).unwrap();
        let c = build_en_complex(&pm).unwrap();
        assert_eq!(c.length(), 1);
        assert_eq!((c.rank(0), c.rank(1)), (1, 1));
        assert_eq!(r.format(c.diffs[0].entry(0, 0)), "x^2");
    }

    #[test]
    fn rank_formula_r2_n3() {
        let a = ring_k_xy();
        let r = a.poly_ring().clone();
        let x = r.var(0);
        let y = r.var(1);
        let cols = vec![
            vec![x.clone(), r.zero()],
            vec![r.zero(), y.clone()],
            vec![y.clone(), x.clone()],
        ];
        let pm = validate_parameter_module(&a, 2, cols).unwrap();
        let c = build_en_complex(&pm).unwrap();
        assert_eq!(c.length(), 2);
        assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (1, 3, 2));
    }

    #[test]
    fn homology_of_regular_sequence() {
        let a = ring_k_xy();
        let r = a.poly_ring().clone();
        let pm =
            validate_parameter_module(&a, 1, vec![vec![r.var(0)], vec![r.var(1)]]).unwrap();
        let c = build_en_complex(&pm).unwrap();
        let h = homology_lengths(&c).unwrap();
        assert_eq!(h.lengths, vec![1, 0, 0]);
        assert_eq!(h.euler_char, 1);
    }

    #[test]
    fn homology_with_annihilator() {
        // Koszul of (y) over A = k[x,y]/(x^2, xy): H_0 = A/y of length 2,
        // H_1 = (0 : y) = (x) of length 1, chi = 1.
        let a = ring_noncm();
        let r = a.poly_ring().clone();
        let pm = validate_parameter_module(&a, 1, vec![vec![r.var(1)]]).unwrap();
        let c = build_en_complex(&pm).unwrap();
        let h = homology_lengths(&c).unwrap();
        assert_eq!(h.lengths, vec![2, 1]);
        assert_eq!(h.euler_char, 1);
    }

    #[test]
    fn multiplicity_examples() {
        let a = ring_k_x();
        let r = a.poly_ring().clone();
        let x = r.var(0);
        let x2 = r.mul(&x, &x);
        let pm = validate_parameter_module(&a, 1, vec![vec![x2]]).unwrap();
        assert_eq!(br_multiplicity(&pm).unwrap().0, 2);

        let cols = vec![vec![x.clone(), r.zero()], vec![r.zero(), x.clone()]];
        let pm = validate_parameter_module(&a, 2, cols).unwrap();
        let (chi, h) = br_multiplicity(&pm).unwrap();
        assert_eq!(chi, 2);
        assert_eq!(h.lengths, vec![2, 0]);

        let a = ring_noncm();
        let r = a.poly_ring().clone();
        let pm = validate_parameter_module(&a, 1, vec![vec![r.var(1)]]).unwrap();
        assert_eq!(br_multiplicity(&pm).unwrap().0, 1);
    }
}
