//! Randomized invariants: field/ring axioms, order totality, Gröbner
//! division contracts, syzygy products and order independence of
//! lengths.

use brim_core::groebner::{syzygies, PolyMatrix, QuotientRing};
use brim_core::modules::validate_parameter_module;
use brim_core::poly::{
    Field, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Rationals,
};
use proptest::prelude::*;

type RawPoly = Vec<(Vec<u32>, i64)>;

fn arb_raw_poly(nvars: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, nvars), -20i64..21),
        0..5,
    )
}

fn promote<F: Field>(ring: &PolyRing<F>, raw: &RawPoly) -> Polynomial<F> {
    ring.from_terms(
        raw.iter()
            .map(|(e, c)| (Monomial::new(e.clone()), ring.field().from_i64(*c)))
            .collect(),
    )
}

fn ring_axioms_hold<F: Field>(ring: &PolyRing<F>, ra: &RawPoly, rb: &RawPoly, rc: &RawPoly) {
    let a = promote(ring, ra);
    let b = promote(ring, rb);
    let c = promote(ring, rc);
    // Additive associativity and commutativity.
    assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
    assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
    // Multiplicative associativity and commutativity.
    assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
    assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
    // Distributivity.
    assert_eq!(
        ring.mul(&a, &ring.add(&b, &c)),
        ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
    );
    // Subtraction is inverse of addition.
    assert_eq!(ring.sub(&ring.add(&a, &b), &b), a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_rationals(
        ra in arb_raw_poly(3),
        rb in arb_raw_poly(3),
        rc in arb_raw_poly(3),
    ) {
        let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let ring = PolyRing::new(Rationals, vars, MonomialOrder::GrevLex);
        ring_axioms_hold(&ring, &ra, &rb, &rc);
    }

    #[test]
    fn ring_axioms_prime_field(
        ra in arb_raw_poly(3),
        rb in arb_raw_poly(3),
        rc in arb_raw_poly(3),
    ) {
        let vars = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let ring = PolyRing::new(PrimeField::new(32003), vars, MonomialOrder::GrevLex);
        ring_axioms_hold(&ring, &ra, &rb, &rc);
    }

    /// Antisymmetry and transitivity of the monomial orders.
    #[test]
    fn monomial_orders_are_total(
        ea in prop::collection::vec(0u32..6, 4),
        eb in prop::collection::vec(0u32..6, 4),
        ec in prop::collection::vec(0u32..6, 4),
    ) {
        use std::cmp::Ordering;
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::GradedLex] {
            let a = Monomial::new(ea.clone());
            let b = Monomial::new(eb.clone());
            let c = Monomial::new(ec.clone());
            // Antisymmetry.
            prop_assert_eq!(order.compare(&a, &b), order.compare(&b, &a).reverse());
            prop_assert_eq!(order.compare(&a, &b) == Ordering::Equal, a == b);
            // Transitivity of <=.
            let le = |x: &Monomial, y: &Monomial| order.compare(x, y) != Ordering::Greater;
            if le(&a, &b) && le(&b, &c) {
                prop_assert!(le(&a, &c));
            }
            // Multiplicativity.
            let m = Monomial::new(vec![1, 0, 2, 0]);
            prop_assert_eq!(order.compare(&a.mul(&m), &b.mul(&m)), order.compare(&a, &b));
        }
    }
}

/// Monomials of fixed total degree in `nvars` variables.
fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(left: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(cur.clone());
            cur[var] = 0;
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            rec(left - e, var + 1, cur, out);
        }
        cur[var] = 0;
    }
    rec(deg, 0, &mut cur, &mut out);
    out
}

fn arb_homogeneous(nvars: usize) -> impl Strategy<Value = RawPoly> {
    (1u32..=3).prop_flat_map(move |deg| {
        let monos = monomials_of_degree(nvars, deg);
        let len = monos.len();
        prop::collection::vec((0..len, -9i64..10), 1..4).prop_map(move |picks| {
            picks
                .into_iter()
                .map(|(i, c)| (monos[i].clone(), c))
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Division contract: the normal form of an explicit combination of
    /// the generators vanishes, and the tracked division identity is
    /// exact for arbitrary elements.
    #[test]
    fn groebner_membership_and_division(
        g1 in arb_homogeneous(2),
        g2 in arb_homogeneous(2),
        g3 in arb_homogeneous(2),
        a1 in arb_raw_poly(2),
        a2 in arb_raw_poly(2),
        a3 in arb_raw_poly(2),
        probe in arb_raw_poly(2),
    ) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let ring = PolyRing::new(PrimeField::new(32003), vars, MonomialOrder::GrevLex);
        let quotient = QuotientRing::new(ring.clone(), vec![]).unwrap();
        let gens: Vec<Vec<Polynomial<PrimeField>>> = [&g1, &g2, &g3]
            .iter()
            .map(|raw| vec![promote(&ring, raw)])
            .collect();
        let gb = quotient.gb_of_submodule(1, &[0], &gens).unwrap();

        // Membership: a random combination reduces to zero.
        let mut combo = ring.zero();
        for (raw, g) in [&a1, &a2, &a3].iter().zip(&gens) {
            combo = ring.add(&combo, &ring.mul(&promote(&ring, raw), &g[0]));
        }
        let nf = gb.normal_form(&ring, &[combo]);
        prop_assert!(nf[0].is_zero(), "combination failed membership");

        // Division identity: e = sum q_i b_i + nf exactly.
        let e = promote(&ring, &probe);
        let (nf, cof) = gb.normal_form_with_cofactors(&ring, std::slice::from_ref(&e));
        let mut rebuilt = nf[0].clone();
        for (q, b) in cof.iter().zip(gb.generators(&ring)) {
            rebuilt = ring.add(&rebuilt, &ring.mul(q, &b[0]));
        }
        prop_assert_eq!(ring.format(&rebuilt), ring.format(&e));

        // Nothing in the normal form is divisible by a leading term.
        let lts = gb.leading_terms();
        for (m, _) in nf[0].terms() {
            prop_assert!(!lts.iter().any(|(_, lt)| lt.divides(m)));
        }
    }

    /// Syzygy columns multiply the matrix to zero over the ring, on
    /// random homogeneous 2 x 2 matrices over a quotient ring.
    #[test]
    fn syzygy_product_vanishes(
        e11 in arb_homogeneous(2),
        e12 in arb_homogeneous(2),
        e21 in arb_homogeneous(2),
        e22 in arb_homogeneous(2),
    ) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let ring = PolyRing::new(PrimeField::new(32003), vars, MonomialOrder::GrevLex);
        let x = ring.var(0);
        let y = ring.var(1);
        let rel = ring.mul(&ring.mul(&x, &x), &y); // A = k[x,y]/(x^2 y)
        let quotient = QuotientRing::new(ring.clone(), vec![rel]).unwrap();

        // Columns must be homogeneous vectors: use one raw generator per
        // column, scaled across the rows by monomials of matched degree.
        let c1 = vec![promote(&ring, &e11), promote(&ring, &e12)];
        let c2 = vec![promote(&ring, &e21), promote(&ring, &e22)];
        for col in [&c1, &c2] {
            let degs: Vec<_> = col
                .iter()
                .filter_map(|p| p.degree())
                .collect();
            prop_assume!(degs.windows(2).all(|w| w[0] == w[1]));
            prop_assume!(col.iter().all(|p| p.homogeneous_degree().is_ok()));
        }
        let m = PolyMatrix::new(2, vec![c1, c2]);
        let syz = syzygies(&quotient, &m).unwrap();
        prop_assert!(m.mul(&quotient, &syz).is_zero());
    }
}

/// Lengths are independent of the monomial order.
#[test]
fn length_is_order_independent() {
    #[allow(clippy::type_complexity)]
    let cases: Vec<(Vec<&str>, Vec<&str>, Vec<Vec<&str>>, usize)> = vec![
        // (vars, relations, generator columns, rank)
        (vec!["x", "y"], vec![], vec![vec!["x^2"], vec!["x*y"], vec!["y^3"]], 1),
        (vec!["x", "y"], vec![], vec![vec!["x^2"], vec!["y"]], 1),
        (vec!["x", "y"], vec!["x^2", "x*y"], vec![vec!["y"]], 1),
        (vec!["x"], vec![], vec![vec!["x", "0"], vec!["0", "x"]], 2),
        (vec!["x", "y"], vec![], vec![vec!["x", "0"], vec!["0", "y"], vec!["y", "x"]], 2),
        (vec!["x", "y", "z"], vec!["x*y", "x*z"], vec![vec!["x + y"], vec!["z"]], 1),
    ];
    for (vars, rels, cols, rank) in cases {
        let mut lengths = Vec::new();
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::GradedLex] {
            let ring = PolyRing::new(
                PrimeField::new(32003),
                vars.iter().map(|s| s.to_string()).collect(),
                order,
            );
            let parse = |s: &str| parse_poly(&ring, s);
            let relations = rels.iter().map(|s| parse(s)).collect();
            let quotient = QuotientRing::new(ring.clone(), relations).unwrap();
            let gens: Vec<Vec<_>> = cols
                .iter()
                .map(|col| col.iter().map(|s| parse(s)).collect())
                .collect();
            let shifts = vec![0i64; rank];
            let len = quotient.quotient_length(rank, &shifts, &gens).unwrap();
            lengths.push(len);
        }
        assert!(
            lengths.windows(2).all(|w| w[0] == w[1]),
            "order-dependent lengths {lengths:?} for generators {cols:?}"
        );
    }
}

/// A tiny expression helper for the order-independence table: products
/// of powers joined by + and -, e.g. "x^2", "x*y", "x + y", "0".
fn parse_poly<F: Field>(ring: &PolyRing<F>, s: &str) -> Polynomial<F> {
    let mut acc = ring.zero();
    let normalized = s.replace(" - ", " +- ");
    for chunk in normalized.split(" + ") {
        let (neg, chunk) = match chunk.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, chunk.trim()),
        };
        if chunk == "0" {
            continue;
        }
        let mut term = ring.one();
        for factor in chunk.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().unwrap()),
                None => (factor, 1),
            };
            let idx = ring
                .vars()
                .iter()
                .position(|v| v == name)
                .unwrap_or_else(|| panic!("unknown variable {name}"));
            term = ring.mul(&term, &ring.pow(&ring.var(idx), exp));
        }
        if neg {
            term = ring.neg(&term);
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

/// Random degree-one 2 x 3 matrices over k[x,y] that survive validation
/// produce complexes with the documented ranks; the d^2 = 0 contract is
/// enforced by the constructor itself.
#[test]
fn random_en_complexes_compose_to_zero() {
    let vars = vec!["x".to_string(), "y".to_string()];
    let ring = PolyRing::new(PrimeField::new(32003), vars, MonomialOrder::GrevLex);
    let quotient = QuotientRing::new(ring.clone(), vec![]).unwrap();
    let x = ring.var(0);
    let y = ring.var(1);
    let lin = |a: i64, b: i64| {
        ring.add(
            &ring.scale(&x, &ring.field().from_i64(a)),
            &ring.scale(&y, &ring.field().from_i64(b)),
        )
    };
    // A deterministic sweep of small coefficient patterns.
    let mut built = 0;
    for seed in 0..200i64 {
        let c = |k: i64| (seed * 7 + k * 13) % 5 - 2;
        let cols = vec![
            vec![lin(c(0), c(1)), lin(c(2), c(3))],
            vec![lin(c(4), c(5)), lin(c(6), c(7))],
            vec![lin(c(8), c(9)), lin(c(10), c(11))],
        ];
        match validate_parameter_module(&quotient, 2, cols) {
            Ok(pm) => {
                let complex = brim_core::en::build_en_complex(&pm).expect("d^2 = 0");
                assert_eq!(
                    (complex.rank(0), complex.rank(1), complex.rank(2)),
                    (1, 3, 2)
                );
                built += 1;
            }
            Err(_) => continue,
        }
    }
    assert!(built >= 20, "only {built} random matrices validated");
}
