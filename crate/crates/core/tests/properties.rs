mod common;

use common::*;
use gbscert::certificate::{build_algebra_chain, is_nil, reduce_to_bijective};
use gbscert::graph::{
    enumerate_graphs, graph_value, graph_value_rank_one, power_sum_decomposition, DecoratedGraph,
};
use gbscert::problem::{pairing_to_spec, poly_to_spec, ProblemFile, RunOptions};
use gbscert::symops::{con1_apply, mul1_apply, operator_matrix};
use gbscert::{matrix_product, matrix_rank, matrix_trace, OperatorFactor, PairingForm, Scalar, SymPoly};
use num_traits::One;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let mut g = rng(seed);
        let a = matrix(&mut g, rows, cols);
        prop_assert_eq!(matrix_rank(&a), matrix_rank(&a.transpose()));
        let b = matrix(&mut g, cols, 3);
        prop_assert!(matrix_rank(&matrix_product(&a, &b).unwrap()) <= matrix_rank(&a).min(matrix_rank(&b)));
    }

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), n in 1usize..5, k in 1usize..5) {
        let mut g = rng(seed);
        let a = matrix(&mut g, n, k);
        let b = matrix(&mut g, k, n);
        prop_assert_eq!(
            matrix_trace(&matrix_product(&a, &b).unwrap()).unwrap(),
            matrix_trace(&matrix_product(&b, &a).unwrap()).unwrap()
        );
    }

    #[test]
    fn contraction_is_a_derivation(seed in any::<u64>(), d in 1usize..4, p in 0usize..4, q in 0usize..4) {
        let mut g = rng(seed);
        let u = pairing(&mut g, d, d);
        let w = vector(&mut g, d);
        let f = form(&mut g, d, p);
        let h = form(&mut g, d, q);
        let lhs = con1_apply(&w, &f.mul(&h), &u).unwrap();
        let left = con1_apply(&w, &f, &u).unwrap().mul(&h);
        let right = f.mul(&con1_apply(&w, &h, &u).unwrap());
        // The contraction of a constant is the zero map.
        match (p, q) {
            (0, 0) => prop_assert!(lhs.is_zero()),
            (0, _) => prop_assert_eq!(lhs, right),
            (_, 0) => prop_assert_eq!(lhs, left),
            _ => prop_assert_eq!(lhs, left.add(&right).unwrap()),
        }
    }

    #[test]
    fn heisenberg_relation(seed in any::<u64>(), d in 1usize..4, n in 1usize..4) {
        let mut g = rng(seed);
        let u = pairing(&mut g, d, d);
        let v = vector(&mut g, d);
        let w = vector(&mut g, d);
        let p = form(&mut g, d, n);
        let ab = con1_apply(&w, &mul1_apply(&v, &p).unwrap(), &u).unwrap();
        let ba = mul1_apply(&v, &con1_apply(&w, &p, &u).unwrap()).unwrap();
        prop_assert_eq!(ab.sub(&ba).unwrap(), p.scale(&u.pair(&v, &w).unwrap()));
    }

    #[test]
    fn powers_of_linear_forms(seed in any::<u64>(), d in 1usize..4, r in 1usize..4, n in 0usize..4) {
        let mut g = rng(seed);
        let u = pairing(&mut g, d, d);
        let v = vector(&mut g, d);
        let mut composed = operator_matrix(&OperatorFactor::con(SymPoly::linear(&v)), n + 1, &u).unwrap();
        for k in 2..=r {
            let step = operator_matrix(&OperatorFactor::con(SymPoly::linear(&v)), n + k, &u).unwrap();
            composed = matrix_product(&composed, &step).unwrap();
        }
        let direct = operator_matrix(&OperatorFactor::con(SymPoly::linear_power(&v, r)), n + r, &u).unwrap();
        prop_assert_eq!(direct, composed);
        let mut raised = operator_matrix(&OperatorFactor::mul(SymPoly::linear(&v)), n, &u).unwrap();
        for k in 1..r {
            let step = operator_matrix(&OperatorFactor::mul(SymPoly::linear(&v)), n + k, &u).unwrap();
            raised = matrix_product(&step, &raised).unwrap();
        }
        let direct = operator_matrix(&OperatorFactor::mul(SymPoly::linear_power(&v, r)), n, &u).unwrap();
        prop_assert_eq!(direct, raised);
    }

    #[test]
    fn graph_value_matches_contraction_oracle(seed in any::<u64>(), d in 1usize..3, e in 1usize..3, m in 1usize..3, r in 1usize..3) {
        let mut g = rng(seed);
        let u = pairing(&mut g, d, e);
        let vs: Vec<_> = (0..m).map(|_| form(&mut g, d, r)).collect();
        let ws: Vec<_> = (0..m).map(|_| form(&mut g, e, r)).collect();
        for mult in enumerate_graphs(m, r as u32) {
            let graph = DecoratedGraph::new(mult.clone(), vs.clone(), ws.clone(), u.clone()).unwrap();
            prop_assert_eq!(graph_value(&graph).unwrap(), contraction_oracle(&mult, &vs, &ws, &u));
        }
    }

    #[test]
    fn graph_value_is_multilinear(seed in any::<u64>(), d in 1usize..3, m in 1usize..3, r in 1usize..3) {
        let mut g = rng(seed);
        let u = pairing(&mut g, d, d);
        let vs: Vec<_> = (0..m).map(|_| form(&mut g, d, r)).collect();
        let ws: Vec<_> = (0..m).map(|_| form(&mut g, d, r)).collect();
        let extra = form(&mut g, d, r);
        let c = small_rational(&mut g);
        let mult = enumerate_graphs(m, r as u32).pop().unwrap();
        let value = |v0: SymPoly| {
            let mut vs = vs.clone();
            vs[0] = v0;
            graph_value(&DecoratedGraph::new(mult.clone(), vs, ws.clone(), u.clone()).unwrap()).unwrap()
        };
        let combined = vs[0].add(&extra.scale(&c)).unwrap();
        prop_assert_eq!(value(combined), value(vs[0].clone()) + c * value(extra));
    }

    #[test]
    fn rank_one_decorations(seed in any::<u64>(), d in 1usize..4, m in 1usize..4, r in 1usize..3) {
        let mut g = rng(seed);
        let u = pairing(&mut g, d, d);
        let vs: Vec<_> = (0..m).map(|_| vector(&mut g, d)).collect();
        let ws: Vec<_> = (0..m).map(|_| vector(&mut g, d)).collect();
        let vp: Vec<_> = vs.iter().map(|v| SymPoly::linear_power(v, r)).collect();
        let wp: Vec<_> = ws.iter().map(|w| SymPoly::linear_power(w, r)).collect();
        for mult in enumerate_graphs(m, r as u32) {
            let graph = DecoratedGraph::new(mult.clone(), vp.clone(), wp.clone(), u.clone()).unwrap();
            prop_assert_eq!(graph_value(&graph).unwrap(), graph_value_rank_one(&vs, &ws, &mult, &u).unwrap());
        }
    }

    #[test]
    fn power_sums_reconstruct(seed in any::<u64>(), d in 1usize..4, r in 1usize..4) {
        let mut g = rng(seed);
        let p = form(&mut g, d, r);
        let mut back = SymPoly::zero(d, r);
        for (l, c) in power_sum_decomposition(&p) {
            let l: Vec<Scalar> = l.into_iter().map(gbscert::scalar::int).collect();
            back = back.add(&SymPoly::linear_power(&l, r).scale(&c)).unwrap();
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn reduction_preserves_graph_values(seed in any::<u64>(), d in 1usize..4, rank in 1usize..4, r in 1usize..3, m in 1usize..3) {
        let rank = rank.min(d);
        let mut g = rng(seed);
        let u = pairing_of_rank(&mut g, d, d, rank);
        let a: Vec<_> = (0..2).map(|_| form(&mut g, d, r)).collect();
        let b: Vec<_> = (0..2).map(|_| form(&mut g, d, r)).collect();
        let red = reduce_to_bijective(&u, &a, &b).unwrap();
        prop_assert_eq!(red.reduced_dim, rank);
        let ca: Vec<_> = (0..m).map(|_| vector(&mut g, 2)).collect();
        let cb: Vec<_> = (0..m).map(|_| vector(&mut g, 2)).collect();
        let combine = |gens: &[SymPoly], cs: &[Vec<Scalar>]| {
            cs.iter().map(|c| SymPoly::combination(gens, c).unwrap()).collect::<Vec<_>>()
        };
        for mult in enumerate_graphs(m, r as u32) {
            let full = DecoratedGraph::new(mult.clone(), combine(&a, &ca), combine(&b, &cb), u.clone()).unwrap();
            let small = DecoratedGraph::new(mult.clone(), combine(&red.a, &ca), combine(&red.b, &cb), red.pairing.clone()).unwrap();
            prop_assert_eq!(graph_value(&full).unwrap(), graph_value(&small).unwrap());
        }
    }

    #[test]
    fn algebra_chain_grows_monotonically(seed in any::<u64>(), d in 1usize..3, r in 1usize..3) {
        let mut g = rng(seed);
        let a = basepoint_free_span(&mut g, d, r, 1);
        let b = basepoint_free_span(&mut g, d, r, 1);
        let chain = build_algebra_chain(&a, &b, r * d, 3).unwrap();
        prop_assert!(chain.dims.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(chain.elements.len(), *chain.dims.last().unwrap());
        prop_assert!(!is_nil(&chain).unwrap());
    }

    #[test]
    fn problem_files_round_trip(seed in any::<u64>(), d in 1usize..4, e in 1usize..4, r in 1usize..3) {
        let mut g = rng(seed);
        let mut p = ProblemFile::empty();
        p.d = Some(d);
        p.e = Some(e);
        p.r = Some(r);
        p.pairing = Some(pairing_to_spec(&pairing(&mut g, d, e)));
        p.a = (0..2).map(|_| poly_to_spec(&form(&mut g, d, r))).collect();
        p.b = (0..3).map(|_| poly_to_spec(&form(&mut g, e, r))).collect();
        p.options = Some(RunOptions { seed: Some(seed), m_max: Some(3), ..RunOptions::default() });
        let text = p.to_json();
        let back = ProblemFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.spanning_b().unwrap().len(), 3);
    }
}

#[test]
fn identity_pairing_is_the_apolar_pairing() {
    // i(x1^2) on x1^2 with u = id gives 2.
    let u = PairingForm::identity(1);
    let sq = SymPoly::linear_power(&[Scalar::one()], 2);
    let m = operator_matrix(&OperatorFactor::con(sq), 2, &u).unwrap();
    assert_eq!(m.get(0, 0), &gbscert::scalar::int(2));
}
