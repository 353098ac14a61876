//! Production routines checked against independent, slower formulations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use kbase::basesize::{base_size_all, stabilizer_graph};
use kbase::classfun::{induce, ClassFunction, Cyclotomic};
use kbase::irreducibles::character_table;
use kbase::permcore::*;

fn fixtures() -> Vec<(String, GroupAction)> {
    let mut out = vec![
        ("pgl2(5)".to_string(), pgl2_action(5, DEFAULT_CAP).unwrap()),
        ("pgl2(7)".to_string(), pgl2_action(7, DEFAULT_CAP).unwrap()),
        (
            "snk(6,2)".to_string(),
            ksubset_action(6, 2, false, DEFAULT_CAP).unwrap(),
        ),
        (
            "snk(6,3)".to_string(),
            ksubset_action(6, 3, false, DEFAULT_CAP).unwrap(),
        ),
        (
            "alt(6)".to_string(),
            natural_action(Arc::new(alternating_group(6, DEFAULT_CAP).unwrap())),
        ),
    ];
    for n in [4, 5, 6, 9] {
        out.push((
            format!("dihedral({n})"),
            dihedral_action(n, DEFAULT_CAP).unwrap(),
        ));
    }
    out
}

/// `α↑(g) = |C_G(g)| / |H| · Σ |d| α(d)` over the H-classes `d` fusing into
/// the class of `g`.
fn induce_by_fusion(alpha: &ClassFunction, sub: &Subgroup) -> ClassFunction {
    let parent = sub.parent();
    let h_sizes = &sub.group().classes().sizes;
    let e = parent.exponent();
    let values = (0..parent.num_classes())
        .map(|c| {
            let mut acc = Cyclotomic::zero(e);
            for (d, &fc) in sub.fusion().iter().enumerate() {
                if fc == c {
                    let w = BigRational::from_integer(BigInt::from(h_sizes[d]));
                    acc = &acc + &alpha.value(d).scale(&w);
                }
            }
            let factor = BigRational::new(
                BigInt::from(parent.centralizer_order(c)),
                BigInt::from(sub.order()),
            );
            acc.scale(&factor)
        })
        .collect();
    ClassFunction::new(parent.clone(), values).unwrap()
}

#[test]
fn induction_matches_fusion_formula() {
    let mut compared = 0;
    for (name, a) in fixtures() {
        let sub = a.point_stabilizer(0).unwrap();
        let table = character_table(sub.group()).unwrap();
        for alpha in table.irreducibles() {
            assert_eq!(
                induce(alpha, &sub).unwrap(),
                induce_by_fusion(alpha, &sub),
                "{name}"
            );
            compared += 1;
        }
        // A subgroup that is not a point stabilizer.
        let two = a.pointwise_stabilizer(&[0, 1]).unwrap();
        let table = character_table(two.group()).unwrap();
        for alpha in table.irreducibles() {
            assert_eq!(
                induce(alpha, &two).unwrap(),
                induce_by_fusion(alpha, &two),
                "{name}"
            );
            compared += 1;
        }
    }
    assert!(compared >= 50, "{compared}");
}

/// Smallest base by trying every point subset in increasing size.
fn brute_force_base_size(a: &GroupAction) -> usize {
    let n = a.domain_size();
    (0..=n)
        .find(|&l| k_subsets(n, l).iter().any(|s| is_base(a, s).unwrap()))
        .unwrap()
}

#[test]
fn search_matches_brute_force() {
    let mut actions = fixtures();
    for n in 3..=7 {
        let g = Arc::new(symmetric_group(n, DEFAULT_CAP).unwrap());
        actions.push((format!("sym({n})"), natural_action(g)));
    }
    for n in 2..=6 {
        let g = Arc::new(cyclic_group(n, DEFAULT_CAP).unwrap());
        actions.push((format!("cyclic({n})"), natural_action(g)));
    }
    for (name, a) in actions {
        if a.domain_size() > 15 {
            continue;
        }
        let found = min_base_search(&a).unwrap();
        assert!(is_base(&a, &found.points).unwrap(), "{name}");
        assert_eq!(found.size(), brute_force_base_size(&a), "{name}");
    }
}

#[test]
fn num_irreducibles_is_num_classes() {
    for (name, a) in fixtures() {
        let g = a.group();
        let t = character_table(g).unwrap();
        assert_eq!(t.len(), g.num_classes(), "{name}");
        let sum_sq: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum_sq as usize, g.order(), "{name}");
    }
}

/// Values of the subset actions frozen from the search oracle.
#[test]
fn subset_action_base_sizes() {
    let expected = [
        ((2, 1), 1),
        ((3, 1), 2),
        ((4, 1), 3),
        ((4, 2), 2),
        ((5, 1), 4),
        ((5, 2), 3),
        ((6, 1), 5),
        ((6, 2), 4),
        ((6, 3), 3),
        ((7, 1), 6),
        ((7, 2), 4),
        ((7, 3), 3),
    ];
    for ((n, k), b) in expected {
        let a = ksubset_action(n, k, false, DEFAULT_CAP).unwrap();
        let r = base_size_all(&a).unwrap();
        assert!(r.agree, "S_({n},{k})");
        assert_eq!(r.sizes(), vec![b, b, b], "S_({n},{k})");
    }
}

#[test]
fn pgl2_7_graph_snapshot() {
    let a = pgl2_action(7, DEFAULT_CAP).unwrap();
    let (_, g) = stabilizer_graph(&a, 0).unwrap();
    assert_eq!(g.table().degrees(), &[1, 1, 1, 1, 1, 1, 6]);
    assert_eq!(
        g.edges(),
        vec![
            (0, 6),
            (1, 6),
            (2, 3),
            (2, 6),
            (3, 6),
            (4, 5),
            (4, 6),
            (5, 6)
        ]
    );
    let r = base_size_all(&a).unwrap();
    let phi = r.phi_used.unwrap();
    let rendered: Vec<String> = phi.values().iter().map(ToString::to_string).collect();
    assert_eq!(rendered, ["1", "1", "-1", "-1", "1", "-1", "1", "-1", "1"]);
}
