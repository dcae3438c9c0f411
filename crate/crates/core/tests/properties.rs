//! Property tests over random small multigraphs, divisors and matrices.

use graphjac::linalg::{determinant, invert, invert_rational, smith_normal_form, solve_integer};
use graphjac::pairing::{gen_inverse_minor, monodromy_pairing, moore_penrose, pairing_by_definition, PairingValue};
use graphjac::{
    analyze, dhar_reduce, div_of_function, dlp_cyclic, dlp_general, is_principal, is_q_reduced, verify_solution,
    BigInt, Divisor, DlpInstance, IntegerMatrix, MultiGraph, RationalMatrix, VertexFunction, BASE_VERTEX,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 256,
        ..ProptestConfig::default()
    }
}

/// A random spanning tree on `n` vertices plus up to `n + 2` extra edges,
/// parallel edges allowed.
fn graph() -> impl Strategy<Value = MultiGraph> {
    (2usize..7).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..n + 3);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            MultiGraph::new(n, &edges).expect("tree plus extra edges is connected")
        })
    })
}

/// Degree-zero divisor from arbitrary coefficients, fixed up at vertex 0.
fn degree_zero(raw: &[i64]) -> Divisor {
    let mut c = raw.to_vec();
    c[0] -= raw.iter().sum::<i64>();
    Divisor::from_i64s(&c)
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-8i64..=8, n)
}

/// A graph with three degree-zero divisors and a vertex function.
fn graph_with_divisors() -> impl Strategy<Value = (MultiGraph, Divisor, Divisor, Divisor, Vec<i64>)> {
    graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), coeffs(n), coeffs(n), coeffs(n), coeffs(n))
            .prop_map(|(g, a, b, c, f)| (g, degree_zero(&a), degree_zero(&b), degree_zero(&c), f))
    })
}

fn square(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec(-6i64..=6, n * n).prop_map(move |v| {
        IntegerMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]))
    })
}

fn principal(g: &MultiGraph, f: &[i64]) -> Divisor {
    div_of_function(g, &VertexFunction::from_i64s(f)).unwrap()
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..5).prop_flat_map(|n| (square(n), square(n)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(determinant(&ab).unwrap(), determinant(&a).unwrap() * determinant(&b).unwrap());
        prop_assert_eq!(determinant(&a.transpose()).unwrap(), determinant(&a).unwrap());
    }

    #[test]
    fn inverse_round_trips(a in (1usize..5).prop_flat_map(square)) {
        let n = a.rows();
        if determinant(&a).unwrap().is_zero() {
            prop_assert!(invert(&a).is_err());
        } else {
            let inv = invert(&a).unwrap();
            prop_assert_eq!(a.to_rational().mul(&inv).unwrap(), RationalMatrix::identity(n));
            prop_assert_eq!(invert_rational(&inv).unwrap(), a.to_rational());
        }
    }

    #[test]
    fn smith_form_is_valid(a in (1usize..5).prop_flat_map(square)) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.d.clone());
        prop_assert!(determinant(&snf.u).unwrap().abs().is_one());
        prop_assert!(determinant(&snf.v).unwrap().abs().is_one());
        let diag = snf.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert!(i == j || snf.d[(i, j)].is_zero());
            }
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        let product: BigInt = diag.iter().product();
        prop_assert_eq!(product, determinant(&a).unwrap().abs());
    }

    #[test]
    fn integer_solutions_are_found_and_sound(
        (a, x) in (1usize..5).prop_flat_map(|n| (square(n), proptest::collection::vec(-5i64..=5, n))),
    ) {
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        let b = a.mul_vec(&x);
        let found = solve_integer(&a, &b).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(a.mul_vec(&found.unwrap()), b.clone());
        let mut shifted = b;
        shifted[0] += 1;
        if let Some(y) = solve_integer(&a, &shifted).unwrap() {
            prop_assert_eq!(a.mul_vec(&y), shifted);
        }
    }

    #[test]
    fn principal_divisors((g, _, _, _, f) in graph_with_divisors()) {
        let d = principal(&g, &f);
        prop_assert!(d.degree().is_zero());
        let fb: Vec<BigInt> = f.iter().map(|&x| big(x)).collect();
        prop_assert_eq!(d.coefficients(), &g.laplacian().mul_vec(&fb)[..]);
        let shifted: Vec<i64> = f.iter().map(|x| x + 3).collect();
        prop_assert_eq!(principal(&g, &shifted), d.clone());
        let witness = is_principal(&g, &d).unwrap().expect("div(f) is principal");
        prop_assert_eq!(div_of_function(&g, &witness).unwrap(), d);
    }

    #[test]
    fn reduction_is_canonical((g, d, _, _, f) in graph_with_divisors()) {
        let s = analyze(&g);
        let r = dhar_reduce(&g, &d, BASE_VERTEX).unwrap();
        prop_assert!(is_q_reduced(&g, &r, BASE_VERTEX));
        prop_assert_eq!(dhar_reduce(&g, &r, BASE_VERTEX).unwrap(), r.clone());
        prop_assert_eq!(s.reduce(&d), r.clone());
        let moved = &d + &principal(&g, &f);
        prop_assert_eq!(dhar_reduce(&g, &moved, BASE_VERTEX).unwrap(), r.clone());
        prop_assert_eq!(s.reduce(&moved), r.clone());
        prop_assert!(s.equivalent(&d, &r).unwrap());
        prop_assert_eq!(s.is_principal(&d), r.is_zero());
        prop_assert_eq!(is_principal(&g, &d).unwrap().is_some(), r.is_zero());
    }

    #[test]
    fn reduction_at_any_base_vertex((g, d, _, _, f) in graph_with_divisors(), q in any::<prop::sample::Index>()) {
        let q = q.index(g.vertex_count());
        let r = dhar_reduce(&g, &d, q).unwrap();
        prop_assert!(is_q_reduced(&g, &r, q));
        let moved = &d + &principal(&g, &f);
        prop_assert_eq!(dhar_reduce(&g, &moved, q).unwrap(), r);
    }

    #[test]
    fn pairing_axioms((g, a, b, c, f) in graph_with_divisors(), k in -20i64..=20) {
        let s = analyze(&g);
        let p = |x: &Divisor, y: &Divisor| s.pairing(x, y).unwrap();
        prop_assert_eq!(p(&(&a + &b), &c), p(&a, &c).add(&p(&b, &c)));
        prop_assert_eq!(p(&a, &b), p(&b, &a));
        prop_assert_eq!(p(&a.scale(&big(k)), &b), p(&a, &b).scale(&big(k)));
        prop_assert_eq!(p(&(&a + &principal(&g, &f)), &b), p(&a, &b));
        prop_assert!(p(&principal(&g, &f), &c).is_zero());
        prop_assert_eq!(p(&a, &Divisor::zero(g.vertex_count())), PairingValue::zero());
    }

    #[test]
    fn every_generalized_inverse_agrees((g, a, b, _, _) in graph_with_divisors()) {
        let mp = moore_penrose(&g);
        prop_assert!(mp.satisfies(&g));
        let want = monodromy_pairing(&a, &b, &mp).unwrap();
        for i in 0..g.vertex_count() {
            let l = gen_inverse_minor(&g, i).unwrap();
            prop_assert!(l.satisfies(&g));
            prop_assert_eq!(monodromy_pairing(&a, &b, &l).unwrap(), want.clone());
        }
        prop_assert_eq!(pairing_by_definition(&g, &a, &b).unwrap(), want);
    }

    #[test]
    fn orders_annihilate((g, a, _, _, _) in graph_with_divisors()) {
        let s = analyze(&g);
        let order = s.order_general(&a).unwrap();
        prop_assert!(s.is_principal(&a.scale(&order)));
        prop_assert!(s.group_order().is_multiple_of(&order));
        if s.is_cyclic() {
            prop_assert_eq!(s.element_order(&a).unwrap(), order);
        }
    }

    #[test]
    fn class_arithmetic((g, a, b, _, _) in graph_with_divisors(), k in -10i64..=10) {
        let s = analyze(&g);
        prop_assert_eq!(s.class_add(&a, &b).unwrap(), s.reduce(&(&a + &b)));
        prop_assert_eq!(s.class_scale(&a, &big(k)).unwrap(), s.reduce(&a.scale(&big(k))));
        prop_assert!(s.class_add(&a, &s.class_neg(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn dlp_recovers_planted_secret((g, a, _, _, f) in graph_with_divisors(), secret in 0i64..500) {
        let s = analyze(&g);
        let target = &a.scale(&big(secret)) + &principal(&g, &f);
        let inst = DlpInstance::new(&s, a.clone(), target.clone()).unwrap();
        let sol = dlp_general(&inst).unwrap();
        prop_assert!(verify_solution(&inst, &sol));
        prop_assert_eq!(sol.x.clone(), big(secret).mod_floor(&sol.modulus));
        if s.is_cyclic() {
            prop_assert_eq!(dlp_cyclic(&inst).unwrap(), sol.clone());
        }
        let lifted = DlpInstance::new(&s, &a + &principal(&g, &f), s.reduce(&target)).unwrap();
        prop_assert_eq!(dlp_general(&lifted).unwrap(), sol);
    }

    #[test]
    fn dlp_answers_are_always_correct((g, a, b, _, _) in graph_with_divisors()) {
        let s = analyze(&g);
        let inst = DlpInstance::new(&s, a.clone(), b.clone()).unwrap();
        match dlp_general(&inst) {
            Ok(sol) => prop_assert!(verify_solution(&inst, &sol)),
            Err(_) => {
                let order = s.order_general(&a).unwrap();
                let mut k = BigInt::zero();
                while k < order {
                    prop_assert!(!s.equivalent(&a.scale(&k), &b).unwrap());
                    k += 1;
                }
            }
        }
    }
}

#[test]
fn lift_to_bigger_coefficients_keeps_class() {
    let g = graphjac::families::wheel(6);
    let s = analyze(&g);
    let d = degree_zero(&[0, 3, -1, 0, 2, 0, -5]);
    let huge = &d + &principal(&g, &[1_000_000, -999_999, 0, 7, 123_456, -1, 42]);
    assert_eq!(s.reduce(&huge), s.reduce(&d));
    assert_eq!(dhar_reduce(&g, &huge, BASE_VERTEX).unwrap(), s.reduce(&d));
}
