mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use common::*;
use equivar::fields::{series_as_field, witness_field, RationalPoint};
use equivar::integrate::{modified_field_polynomials, Method};
use equivar::io::Document;
use equivar::random::InstanceGenerator;
use equivar::rational::{q, qi, Q};
use equivar::series::{
    check_affine_root_condition, check_partitioned_qfe, check_quadratic_fe, modified_field_series, standard,
    ButcherTableau, Flavor, SeriesMap,
};
use equivar::trees::{enumerate_trees, Tree};
use equivar::Limits;
use num_traits::Zero;
use proptest::prelude::*;

fn t(s: &str) -> Tree {
    s.parse().unwrap()
}

fn fixture(name: &str) -> SeriesMap {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/series").join(name);
    SeriesMap::read(&path).unwrap()
}

fn pairs(report: &equivar::series::ConditionReport) -> Vec<(String, String, Q)> {
    report.violations.iter().map(|v| (v.left.notation(v.right.max_color() > 1), v.right.notation(v.right.max_color() > 1), v.residual.clone())).collect()
}

/// Elementary weight by summing over every assignment of stages to vertices.
fn weight_oracle(tableau: &ButcherTableau, tau: &Tree) -> Q {
    let (a, b) = tableau.rational_coefficients().unwrap();
    let (parent, _) = parents_of(tau);
    let n = parent.len();
    let s = b.len();
    let mut total = Q::zero();
    let mut idx = vec![0usize; n];
    loop {
        let mut term = b[idx[0]].clone();
        for v in 1..n {
            term *= &a[idx[parent[v]]][idx[v]];
        }
        total += term;
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < s {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return total;
        }
    }
}

#[test]
fn fixture_verdicts() {
    let r = check_quadratic_fe(&fixture("qfe-cubic-combination.json")).unwrap();
    assert!(r.holds);

    let r = check_quadratic_fe(&fixture("tree-ff.json")).unwrap();
    assert_eq!(pairs(&r), vec![("[]".into(), "[]".into(), qi(2))]);
    let r = check_quadratic_fe(&fixture("tree-fff.json")).unwrap();
    assert_eq!(pairs(&r), vec![("[]".into(), "[[]]".into(), qi(1))]);
    let r = check_quadratic_fe(&fixture("tree-f2ff.json")).unwrap();
    assert_eq!(pairs(&r), vec![("[]".into(), "[[]]".into(), qi(2))]);
    assert!(check_quadratic_fe(&fixture("empty.json")).unwrap().holds);

    assert!(check_affine_root_condition(&fixture("nb-root-balanced.json")).holds);
    let r = check_affine_root_condition(&fixture("nb-root-unbalanced.json"));
    assert_eq!(pairs(&r), vec![("[^1]".into(), "[^2]".into(), qi(1))]);

    let p = fixture("p-cross-root.json");
    assert!(check_partitioned_qfe(&p, true).holds);
    let full = check_partitioned_qfe(&p, false);
    assert!(!full.holds);
    assert!(full.violations.iter().all(|v| v.left.color() == v.right.color()));
}

#[test]
fn fixtures_round_trip() {
    for name in ["qfe-cubic-combination.json", "tree-f2ff.json", "nb-root-unbalanced.json", "p-cross-root.json"] {
        let s = fixture(name);
        assert_eq!(SeriesMap::from_json(&s.to_json()).unwrap(), s, "{name}");
    }
}

#[test]
fn violations_are_unordered_pairs() {
    let mut phi = SeriesMap::zero(1, 5, Flavor::IntegratorMap).unwrap();
    for (i, tau) in enumerate_trees(5, 1).unwrap().concat().iter().enumerate() {
        phi.set(tau, qi(i as i64 + 1)).unwrap();
    }
    let r = check_quadratic_fe(&phi).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for v in &r.violations {
        assert!(v.left <= v.right);
        assert!(v.left.order() + v.right.order() <= 5);
        assert!(seen.insert((v.left.clone(), v.right.clone())));
        assert_eq!(v.residual, phi.get(&v.left.butcher_product(&v.right)) + phi.get(&v.right.butcher_product(&v.left)));
    }
}

#[test]
fn condition_rejects_colored_series() {
    assert!(check_quadratic_fe(&fixture("p-cross-root.json")).is_err());
}

#[test]
fn rk4_weights_match_exact_flow_through_order_four() {
    let rk4 = standard::rk4();
    for tau in enumerate_trees(5, 1).unwrap().concat() {
        let w = rk4.elementary_weight(&tau).unwrap();
        assert_eq!(w, weight_oracle(&rk4, &tau), "{tau}");
        if tau.order() <= 4 {
            assert_eq!(w, q(1, gamma_oracle(&parents_of(&tau).0) as i64), "{tau}");
        }
    }
    let fifth = enumerate_trees(5, 1).unwrap().pop().unwrap();
    assert!(fifth.iter().any(|tau| rk4.elementary_weight(tau).unwrap() != q(1, tau.gamma() as i64)));
}

#[test]
fn weights_match_oracle_for_rational_tableaux() {
    for tab in [standard::euler(), standard::heun(), standard::implicit_midpoint(), standard::lobatto_iiia2()] {
        for tau in enumerate_trees(4, 1).unwrap().concat() {
            assert_eq!(tab.elementary_weight(&tau).unwrap(), weight_oracle(&tab, &tau), "{tau}");
        }
    }
}

#[test]
fn gauss2_is_irrational_but_has_rational_weights_through_order_four() {
    let g = standard::gauss2();
    assert!(!g.is_rational());
    for tau in enumerate_trees(4, 1).unwrap().concat() {
        let w = g.elementary_weight_surd(&tau);
        assert!(w.is_rational(), "{tau}");
        assert_eq!(w.rational, q(1, tau.gamma() as i64), "{tau}");
    }
}

#[test]
fn midpoint_modified_coefficients() {
    let a = SeriesMap::from_tableau(&standard::implicit_midpoint(), 3).unwrap();
    let m = modified_field_series(&a).unwrap();
    assert_eq!(m.get(&t("[]")), qi(1));
    assert_eq!(m.get(&t("[[]]")), qi(0));
    assert_eq!(m.get(&t("[[[]]]")), q(1, 12));
    assert_eq!(m.get(&t("[[][]]")), q(-1, 12));
    assert_eq!(m.differential_coefficient(&t("[[][]]")), q(-1, 24));
}

#[test]
fn exact_flow_has_trivial_modified_field() {
    let m = modified_field_series(&SeriesMap::exact_flow(5).unwrap()).unwrap();
    for (tau, b) in m.iter() {
        assert_eq!(*b, if tau.order() == 1 { qi(1) } else { qi(0) }, "{tau}");
    }
}

#[test]
fn modified_series_agrees_with_polynomial_route() {
    let limits = Limits::default();
    let mut gen = InstanceGenerator::new(7);
    for tab in [standard::euler(), standard::implicit_midpoint(), standard::rk4()] {
        let a = SeriesMap::from_tableau(&tab, 4).unwrap();
        let m = modified_field_series(&a).unwrap();
        for _ in 0..3 {
            let f = gen.field(2, 2);
            let poly = modified_field_polynomials(&Method::RungeKutta(tab.clone()), &f, 4, &limits).unwrap();
            for j in 1..=4 {
                let from_series = series_as_field(&m.homogeneous_term(j), &f, &limits).unwrap();
                assert_eq!(&from_series, poly.term(j), "order {j}");
            }
        }
    }
}

#[test]
fn witness_fields_extract_coefficients() {
    let mut phi = SeriesMap::zero(1, 4, Flavor::IntegratorMap).unwrap();
    for (i, tau) in enumerate_trees(4, 1).unwrap().concat().iter().enumerate() {
        phi.set(tau, q(i as i64 - 3, 5)).unwrap();
    }
    for tau in enumerate_trees(4, 1).unwrap().concat() {
        let f = witness_field(&tau);
        let v = equivar::fields::apply_series(&phi, &f, &RationalPoint::origin(tau.order())).unwrap();
        assert_eq!(v[tau.order() - 1], phi.get(&tau), "{tau}");
    }
}

#[test]
fn two_color_copy_of_a_qfe_series_satisfies_both_conditions() {
    // b(τ) depends only on the uncolored shape
    let base = fixture("qfe-cubic-combination.json");
    let mut colored = SeriesMap::zero(2, 3, Flavor::IntegratorMap).unwrap();
    for tau in enumerate_trees(3, 2).unwrap().concat() {
        colored.set(&tau, base.get(&tau.uncolored())).unwrap();
    }
    assert!(check_affine_root_condition(&colored).holds);
    assert!(check_partitioned_qfe(&colored, false).holds);
}

fn residual_map(phi: &SeriesMap) -> BTreeMap<(Tree, Tree), Q> {
    check_quadratic_fe(phi).unwrap().violations.into_iter().map(|v| ((v.left, v.right), v.residual)).collect()
}

proptest! {
    #[test]
    fn residuals_are_linear(xs in proptest::collection::vec(-5i64..=5, 9), ys in proptest::collection::vec(-5i64..=5, 9), s in -3i64..=3) {
        let trees = enumerate_trees(4, 1).unwrap().concat();
        let a = SeriesMap::from_pairs(1, 4, Flavor::IntegratorMap, trees.iter().cloned().zip(xs.iter().map(|&x| qi(x)))).unwrap();
        let b = SeriesMap::from_pairs(1, 4, Flavor::IntegratorMap, trees.iter().cloned().zip(ys.iter().map(|&y| qi(y)))).unwrap();
        let combo = a.add(&b.scale(&qi(s))).unwrap();
        let (ra, rb, rc) = (residual_map(&a), residual_map(&b), residual_map(&combo));
        let keys: std::collections::BTreeSet<_> = ra.keys().chain(rb.keys()).chain(rc.keys()).cloned().collect();
        for k in keys {
            let get = |m: &BTreeMap<(Tree, Tree), Q>| m.get(&k).cloned().unwrap_or_else(Q::zero);
            prop_assert_eq!(get(&rc), get(&ra) + get(&rb) * qi(s));
        }
    }

    #[test]
    fn json_round_trip(xs in proptest::collection::vec((-9i64..=9, 1i64..=7), 17), colors in 1u32..=2) {
        let trees = enumerate_trees(if colors == 1 { 5 } else { 3 }, colors).unwrap().concat();
        let phi = SeriesMap::from_pairs(
            colors,
            if colors == 1 { 5 } else { 3 },
            Flavor::IntegratorMap,
            trees.into_iter().zip(xs.iter().map(|&(n, d)| q(n, d))),
        ).unwrap();
        prop_assert_eq!(SeriesMap::from_json(&phi.to_json()).unwrap(), phi);
    }
}
