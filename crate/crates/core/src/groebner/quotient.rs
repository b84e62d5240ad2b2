//! Standard-graded quotient rings A = k[x_1..x_D]/I.
//!
//! All computations over A happen in the ambient polynomial ring with
//! the generators of I adjoined per free-module component, so normal
//! forms over A are ambient normal forms. Lengths of finite graded
//! quotients equal their standard-monomial counts.

use super::{count_standard_monomials, staircase_dimension, Engine, Length, ModVec, SubmoduleGb};
use crate::error::EngineError;
use crate::poly::{Field, ModuleOrder, MonomialOrder, PolyRing, Polynomial};

/// A standard-graded quotient ring with cached Gröbner data, Krull
/// dimension and depth. Immutable after construction.
#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    ring: PolyRing<F>,
    relations: Vec<Polynomial<F>>,
    relations_gb: Vec<Polynomial<F>>,
    dim: usize,
    depth: usize,
}

impl<F: Field> QuotientRing<F> {
    /// Builds `k[vars]/I` from homogeneous relations of positive degree.
    pub fn new(ring: PolyRing<F>, relations: Vec<Polynomial<F>>) -> Result<Self, EngineError> {
        let relations: Vec<Polynomial<F>> =
            relations.into_iter().filter(|p| !p.is_zero()).collect();
        for (i, p) in relations.iter().enumerate() {
            match p.homogeneous_degree() {
                Err(()) => {
                    return Err(EngineError::NonHomogeneous {
                        what: format!("relation {} has terms of mixed degree", i + 1),
                    })
                }
                Ok(Some(0)) => {
                    return Err(EngineError::NonHomogeneous {
                        what: format!("relation {} is a nonzero constant", i + 1),
                    })
                }
                _ => {}
            }
        }

        if relations.is_empty() {
            let d = ring.nvars();
            return Ok(QuotientRing {
                ring,
                relations: Vec::new(),
                relations_gb: Vec::new(),
                dim: d,
                depth: d,
            });
        }

        let order = ModuleOrder::TermOverPosition(ring.order());
        let engine = Engine::new(ring.field(), order);
        let gens: Vec<ModVec<F>> = relations
            .iter()
            .map(|p| engine.from_components(std::slice::from_ref(p)))
            .collect();
        let gb = engine.buchberger(gens);
        let relations_gb: Vec<Polynomial<F>> = gb
            .iter()
            .map(|g| engine.to_components(g, 1, &ring).pop().unwrap())
            .collect();
        let lead_monos: Vec<_> = relations_gb
            .iter()
            .map(|p| p.leading().unwrap().0.clone())
            .collect();
        let dim = staircase_dimension(&lead_monos, ring.nvars());

        let mut out = QuotientRing {
            ring,
            relations,
            relations_gb,
            dim,
            depth: 0,
        };
        // Depth via the Auslander-Buchsbaum formula over the regular
        // ambient ring: depth A = D - pd_R(A).
        let resolution = super::resolution::free_resolution(&out, out.ring.nvars() + 1)?;
        let pd = resolution
            .pd
            .ok_or(EngineError::ResolutionBudget { budget: out.ring.nvars() + 1 })?;
        out.depth = out.ring.nvars() - pd;
        Ok(out)
    }

    /// The polynomial ring `k[vars]` on the same variables (I = 0).
    pub fn ambient(&self) -> QuotientRing<F> {
        QuotientRing {
            ring: self.ring.clone(),
            relations: Vec::new(),
            relations_gb: Vec::new(),
            dim: self.ring.nvars(),
            depth: self.ring.nvars(),
        }
    }

    /// The same quotient recomputed under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<QuotientRing<F>, EngineError> {
        let ring = self.ring.with_order(order);
        let relations = self.relations.iter().map(|p| ring.import(p)).collect();
        QuotientRing::new(ring, relations)
    }

    pub fn poly_ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.relations
    }

    pub fn relations_gb(&self) -> &[Polynomial<F>] {
        &self.relations_gb
    }

    /// Krull dimension of A, read off the staircase of in(I).
    pub fn krull_dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth == self.dim
    }

    /// The default module order: term over position on the ring's order.
    pub fn module_order(&self) -> ModuleOrder {
        ModuleOrder::TermOverPosition(self.ring.order())
    }

    /// Normal form of a ring element modulo I.
    pub fn nf(&self, p: &Polynomial<F>) -> Polynomial<F> {
        if self.relations_gb.is_empty() {
            return p.clone();
        }
        let order = self.module_order();
        let engine = Engine::new(self.ring.field(), order);
        let gens: Vec<ModVec<F>> = self
            .relations_gb
            .iter()
            .map(|q| engine.from_components(std::slice::from_ref(q)))
            .collect();
        let e = engine.from_components(std::slice::from_ref(p));
        let nf = engine.normal_form(e, &gens, None);
        engine.to_components(&nf, 1, &self.ring).pop().unwrap()
    }

    pub fn is_zero_mod(&self, p: &Polynomial<F>) -> bool {
        self.nf(p).is_zero()
    }

    /// Reduced Gröbner basis of the submodule of `A^rank` generated by
    /// `gens`, with the ring relations adjoined per component. Input must
    /// be homogeneous with respect to `shifts`.
    pub fn gb_of_submodule(
        &self,
        rank: usize,
        shifts: &[i64],
        gens: &[Vec<Polynomial<F>>],
    ) -> Result<SubmoduleGb<F>, EngineError> {
        self.gb_of_submodule_with_order(rank, shifts, gens, self.module_order())
    }

    /// Same as [`Self::gb_of_submodule`] under an explicit module order.
    pub fn gb_of_submodule_with_order(
        &self,
        rank: usize,
        shifts: &[i64],
        gens: &[Vec<Polynomial<F>>],
        order: ModuleOrder,
    ) -> Result<SubmoduleGb<F>, EngineError> {
        assert_eq!(shifts.len(), rank, "one degree shift per position");
        let engine = Engine::new(self.ring.field(), order);
        let mut vecs: Vec<ModVec<F>> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.len() != rank {
                return Err(EngineError::RankMismatch { expected: rank, got: g.len() });
            }
            let v = engine.from_components(g);
            if v.shifted_degree(shifts).is_err() {
                return Err(EngineError::NonHomogeneous {
                    what: format!("generator {} of the submodule", i + 1),
                });
            }
            vecs.push(v);
        }
        for q in &self.relations_gb {
            for pos in 0..rank {
                let mut comps = vec![self.ring.zero(); rank];
                comps[pos] = q.clone();
                vecs.push(engine.from_components(&comps));
            }
        }
        let elements = engine.buchberger(vecs);
        Ok(SubmoduleGb {
            rank,
            shifts: shifts.to_vec(),
            order,
            elements,
        })
    }

    /// Length of `A^rank / <gens>` as a count of standard monomials.
    pub fn quotient_length(
        &self,
        rank: usize,
        shifts: &[i64],
        gens: &[Vec<Polynomial<F>>],
    ) -> Result<Length, EngineError> {
        let gb = self.gb_of_submodule(rank, shifts, gens)?;
        Ok(gb.standard_monomial_count(self.nvars()))
    }

    /// Length of `A/J` for an ideal J given by generators.
    pub fn ideal_colength(&self, gens: &[Polynomial<F>]) -> Result<Length, EngineError> {
        let cols: Vec<Vec<Polynomial<F>>> = gens.iter().map(|p| vec![p.clone()]).collect();
        self.quotient_length(1, &[0], &cols)
    }

    /// Length of A itself (finite only in dimension zero).
    pub fn length(&self) -> Length {
        if self.relations_gb.is_empty() {
            if self.nvars() == 0 {
                return Length::Finite(1);
            }
            return Length::Infinite;
        }
        let lts: Vec<(usize, _)> = self
            .relations_gb
            .iter()
            .map(|p| (0usize, p.leading().unwrap().0.clone()))
            .collect();
        count_standard_monomials(&lts, 1, self.nvars())
    }
}
