//! Property-based checks against the test-side oracles.

mod oracle;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crystal_forge::adhm::{random_preprojective, AdhmJson};
use crystal_forge::decompose::{decompose, highest_weight_multiset, levi_dicts};
use crystal_forge::linalg::{q, Matrix, Subspace};
use crystal_forge::quiver::{delta_vec, QuiverParams};
use crystal_forge::sl2::{sl2_crystal, sl2_tau2};
use crystal_forge::{build_crystal, DynkinDiagram, HighestWeightCache, Weight};

fn diagram(name: &str) -> Arc<DynkinDiagram> {
    Arc::new(name.parse().unwrap())
}

fn small_weight(rank: usize, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0..=hi, rank)
}

fn named_weight() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop_oneof![
        small_weight(1, 6).prop_map(|w| ("A1", w)),
        small_weight(2, 3).prop_map(|w| ("A2", w)),
        small_weight(3, 2).prop_map(|w| ("A3", w)),
        small_weight(4, 1).prop_map(|w| ("A4", w)),
        small_weight(4, 1).prop_map(|w| ("D4", w)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_dimension_matches_oracle(
        (name, lambda) in prop_oneof![
            small_weight(5, 2).prop_map(|w| ("D5", w)),
            small_weight(6, 1).prop_map(|w| ("E6", w)),
            small_weight(3, 4).prop_map(|w| ("A3", w)),
        ]
    ) {
        let g = diagram(name);
        prop_assert_eq!(g.weyl_dimension(&Weight(lambda.clone())).unwrap(), Some(oracle::weyl_dim(name, &lambda)));
    }

    #[test]
    fn crystal_size_and_symmetry((name, lambda) in named_weight()) {
        let g = diagram(name);
        let c = build_crystal(g.clone(), &Weight(lambda.clone())).unwrap();
        prop_assert_eq!(c.cardinality() as u64, oracle::weyl_dim(name, &lambda));
        prop_assert!(c.verify_axioms().is_empty());
        let ch = c.character();
        for (w, m) in &ch {
            for i in 0..g.rank() {
                let r = g.weyl_reflect(i, w).unwrap();
                prop_assert_eq!(ch.get(&r), Some(m));
            }
        }
    }

    #[test]
    fn tensor_axioms_and_multiset(a in small_weight(2, 2), b in small_weight(2, 2)) {
        let g = diagram("A2");
        let mut cache = HighestWeightCache::new(g.clone());
        let (wa, wb) = (Weight(a.clone()), Weight(b.clone()));
        let t = cache.get(&wa).unwrap().tensor(&cache.get(&wb).unwrap()).unwrap();
        prop_assert!(t.verify_axioms().is_empty());
        prop_assert_eq!(t.cardinality() as u64, oracle::weyl_dim("A2", &a) * oracle::weyl_dim("A2", &b));
        let dec = decompose(&t).unwrap();
        let fast = highest_weight_multiset(&mut cache, &[wa, wb]).unwrap();
        let slow: std::collections::BTreeMap<Weight, u64> =
            dec.summands.iter().map(|(w, &m)| (w.clone(), m as u64)).collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn tau2_matches_chain_walk(d1 in 0i64..9, d2 in 0i64..9, s1 in 0i64..5, s2 in 0i64..5) {
        let (v1, v2) = (s1.min(d1 / 2), s2.min(d2 / 2));
        let (m1, m2) = (sl2_crystal(d1, v1), sl2_crystal(d2, v2));
        prop_assert_eq!(m1.cardinality() as i64, d1 - 2 * v1 + 1);
        prop_assert_eq!(m2.cardinality() as i64, d2 - 2 * v2 + 1);
        for u1 in v1..=d1 - v1 {
            for u2 in v2..=d2 - v2 {
                let (v0, u) = sl2_tau2(d1, v1, u1, d2, v2, u2).unwrap();
                prop_assert_eq!(u, u1 + u2);
                let top = oracle::chain_component(d1 - 2 * v1, d2 - 2 * v2, u1 - v1, u2 - v2);
                prop_assert_eq!(top, d1 + d2 - 2 * v0);
            }
        }
    }

    #[test]
    fn levi_identity(
        name in prop_oneof![Just("A3"), Just("D4"), Just("E6"), Just("D5")],
        seed in any::<u64>(),
    ) {
        let g = diagram(name);
        let n = g.rank();
        let mut s = seed;
        let mut next = |m: u64| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) % m };
        let d: Vec<i64> = (0..n).map(|_| next(5) as i64).collect();
        let v: Vec<i64> = (0..n).map(|_| next(5) as i64).collect();
        let subset: Vec<usize> = (0..n).filter(|_| next(2) == 1).collect();
        let lhs = delta_vec(&g, &Weight(d.clone()), &Weight(v.clone())).unwrap().restrict(&subset);
        prop_assert_eq!(lhs.0.clone(), oracle::levi_lhs(name, &d, &v, &subset));
        let (delta, rho) = levi_dicts(&g, &Weight(d.clone()), &Weight(v.clone()), &subset).unwrap();
        let x = oracle::adjacency(name);
        let rhs: Vec<i64> = subset.iter().enumerate().map(|(k, &i)| {
            delta[k] - 2 * rho[k] + subset.iter().enumerate().map(|(l, &j)| x[i][j] * rho[l]).sum::<i64>()
        }).collect();
        prop_assert_eq!(lhs.0, rhs);
    }

    #[test]
    fn halved_dimensions_are_integral(
        name in prop_oneof![Just("A2"), Just("A3"), Just("D4")],
        parts in proptest::collection::vec((0i64..3, 0i64..3, 0i64..3), 1..4),
        seed in any::<u64>(),
    ) {
        let g = diagram(name);
        let r = g.rank();
        let spread = |base: i64, k: usize| Weight((0..r).map(|i| (base + ((seed >> (i + k)) as i64 & 1)) % 3).collect());
        let dt: Vec<Weight> = parts.iter().enumerate().map(|(k, p)| spread(p.0, k)).collect();
        let vt_v: Vec<Weight> = parts.iter().enumerate().map(|(k, p)| spread(p.1, k + 3)).collect();
        let vt: Vec<Weight> = parts.iter().enumerate().map(|(k, p)| spread(p.2, k + 7)).collect();
        let sum = |ws: &[Weight]| ws.iter().fold(Weight::zero(r), |a, w| &a + w);
        let d = sum(&dt);
        let v = &sum(&vt_v) + &sum(&vt);
        let p = QuiverParams::new(g, d, v.clone(), v, dt, vt_v, Some(vt)).unwrap();
        let s = p.strat_dims().unwrap();
        prop_assert_eq!(s.dim_t, s.dim_t_closed);
        prop_assert_eq!(s.dim_pi_vvt, Some(s.dim_pi_flag.unwrap() + s.dim_flag_variety.unwrap()));
        prop_assert!(s.dim_flag_variety.unwrap() >= 0);
    }

    #[test]
    fn unframed_preprojective_data_are_nilpotent(
        name in prop_oneof![Just("A2"), Just("A3"), Just("D4")],
        v in small_weight(4, 2),
        seed in any::<u64>(),
    ) {
        let g = diagram(name);
        let v = Weight(v[..g.rank()].to_vec());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let datum = random_preprojective(g.clone(), Weight::zero(g.rank()), v, &mut rng).unwrap();
        prop_assert!(datum.check_preprojective().holds);
        prop_assert!(datum.is_nilpotent());
    }

    #[test]
    fn adhm_json_round_trip(d in small_weight(2, 2), v in small_weight(2, 2), seed in any::<u64>()) {
        let g = diagram("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let datum = random_preprojective(g, Weight(d), Weight(v), &mut rng).unwrap();
        let doc = AdhmJson::from_datum(&datum, None).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let back: AdhmJson = serde_json::from_str(&text).unwrap();
        let (again, flag) = back.to_datum().unwrap();
        prop_assert!(flag.is_none());
        prop_assert_eq!(again, datum);
    }

    #[test]
    fn weight_text_round_trip(w in proptest::collection::vec(-50i64..50, 0..6)) {
        let w = Weight(w);
        let text = w.to_string();
        let inner = text.trim_start_matches('(').trim_end_matches(')');
        prop_assert_eq!(inner.parse::<Weight>().unwrap(), w);
    }

    #[test]
    fn subspace_dimension_formula(
        a in proptest::collection::vec(proptest::collection::vec(-2i64..3, 4), 0..4),
        b in proptest::collection::vec(proptest::collection::vec(-2i64..3, 4), 0..4),
    ) {
        let to_q = |vs: &[Vec<i64>]| vs.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>();
        let (u, w) = (Subspace::span(4, to_q(&a)), Subspace::span(4, to_q(&b)));
        prop_assert_eq!(u.sum(&w).dim() + u.intersection(&w).dim(), u.dim() + w.dim());
        let rows: Vec<&[i64]> = a.iter().map(|r| r.as_slice()).collect();
        if !rows.is_empty() {
            let m = Matrix::from_i64(&rows);
            prop_assert_eq!(m.rank() + m.kernel().len(), 4);
            prop_assert_eq!(m.rank(), u.dim());
        }
    }
}
