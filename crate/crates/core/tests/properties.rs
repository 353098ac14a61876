use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kbase::classfun::{induce, inner_product, restrict, ClassFunction, Cyclotomic};
use kbase::permcore::*;

static ACTIONS: LazyLock<Vec<GroupAction>> = LazyLock::new(|| {
    vec![
        pgl2_action(7, DEFAULT_CAP).unwrap(),
        pgl2_action(5, DEFAULT_CAP).unwrap(),
        dihedral_action(7, DEFAULT_CAP).unwrap(),
        dihedral_action(10, DEFAULT_CAP).unwrap(),
        ksubset_action(6, 2, false, DEFAULT_CAP).unwrap(),
        ksubset_action(5, 3, true, DEFAULT_CAP).unwrap(),
        natural_action(Arc::new(alternating_group(6, DEFAULT_CAP).unwrap())),
        natural_action(Arc::new(cyclic_group(9, DEFAULT_CAP).unwrap())),
    ]
});

/// An action with two element indices and a point, all in range.
fn action_elements() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (
        0..ACTIONS.len(),
        any::<usize>(),
        any::<usize>(),
        any::<usize>(),
    )
        .prop_map(|(i, g, h, w)| {
            let a = &ACTIONS[i];
            let n = a.group().order();
            (i, g % n, h % n, w % a.domain_size())
        })
}

proptest! {
    #[test]
    fn action_is_a_homomorphism((i, g, h, w) in action_elements()) {
        let a = &ACTIONS[i];
        let gh = a.group().mul(g, h);
        prop_assert_eq!(a.apply(gh, w), a.apply(g, a.apply(h, w)));
        prop_assert_eq!(a.apply(0, w), w);
    }

    #[test]
    fn orbit_stabilizer((i, _, _, w) in action_elements()) {
        let a = &ACTIONS[i];
        let stab = a.point_stabilizer(w).unwrap();
        prop_assert_eq!(a.orbit(w).len() * stab.order(), a.group().order());
    }

    #[test]
    fn pointwise_stabilizer_depends_on_the_set(
        (i, points) in (0..ACTIONS.len()).prop_flat_map(|i| {
            let n = ACTIONS[i].domain_size();
            (Just(i), proptest::collection::vec(0..n, 0..4))
        }),
        seed in any::<u64>(),
    ) {
        let a = &ACTIONS[i];
        let mut shuffled = points.clone();
        // Rotate and reverse: a deterministic rearrangement driven by the seed.
        if !shuffled.is_empty() {
            let k = (seed as usize) % shuffled.len();
            shuffled.rotate_left(k);
            if seed & 1 == 1 {
                shuffled.reverse();
            }
        }
        prop_assert_eq!(
            a.pointwise_stabilizer_indices(&points).unwrap(),
            a.pointwise_stabilizer_indices(&shuffled).unwrap()
        );
    }

    #[test]
    fn element_orders_divide_group_order((i, g, h, _) in action_elements()) {
        let grp = ACTIONS[i].group();
        let x = grp.element(g);
        prop_assert_eq!(grp.order() % x.order(), 0);
        prop_assert_eq!(x.cycle_type().iter().sum::<usize>(), grp.degree());
        let y = grp.element(h);
        let conj = y.compose(x).unwrap().compose(&y.inverse()).unwrap();
        let classes = grp.classes();
        prop_assert_eq!(
            classes.class_of[g],
            classes.class_of[grp.index_of(conj.images()).unwrap()]
        );
    }
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1usize, 2, 3, 4, 5, 7, 8, 12, 15, 24]),
        proptest::collection::vec((0usize..48, -5i64..=5, 1i64..=3), 0..5),
    )
        .prop_map(|(m, terms)| {
            Cyclotomic::from_power_terms(
                m,
                terms
                    .into_iter()
                    .map(|(k, p, q)| (k, BigRational::new(BigInt::from(p), BigInt::from(q)))),
            )
        })
}

proptest! {
    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn lift_then_descend_is_identity(a in cyclotomic()) {
        let big = a.conductor() * 7;
        let lifted = a.lift(big);
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.descend(a.conductor()).unwrap(), a);
    }

    #[test]
    fn norm_is_nonnegative_rational(a in cyclotomic()) {
        // a · conj(a) is fixed by conjugation; for rational a it is a square.
        let n = &a * &a.conj();
        prop_assert_eq!(n.conj(), n.clone());
        if let Some(r) = a.to_rational() {
            prop_assert_eq!(n.to_rational().unwrap(), &r * &r);
        }
    }
}

/// Integer-valued class functions on a fixture.
fn class_function_pair() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (0..ACTIONS.len()).prop_flat_map(|i| {
        let sub = ACTIONS[i].point_stabilizer(0).unwrap();
        let nh = sub.group().num_classes();
        let ng = ACTIONS[i].group().num_classes();
        (
            Just(i),
            proptest::collection::vec(-4i64..=4, nh),
            proptest::collection::vec(-4i64..=4, ng),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_reciprocity_for_class_functions((i, alpha, beta) in class_function_pair()) {
        let a = &ACTIONS[i];
        let sub = a.point_stabilizer(0).unwrap();
        let alpha = ClassFunction::from_integers(sub.group().clone(), &alpha).unwrap();
        let beta = ClassFunction::from_integers(a.group().clone(), &beta).unwrap();
        let lhs = inner_product(&induce(&alpha, &sub).unwrap(), &beta).unwrap();
        let rhs = inner_product(&alpha, &restrict(&beta, &sub).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inner_product_is_hermitian((i, _, beta) in class_function_pair(), shift in 0usize..8) {
        let g = ACTIONS[i].group().clone();
        let f1 = ClassFunction::from_integers(g.clone(), &beta).unwrap();
        let mut rotated = beta.clone();
        rotated.rotate_left(shift % beta.len());
        let f2 = ClassFunction::from_integers(g, &rotated).unwrap();
        prop_assert_eq!(
            inner_product(&f1, &f2).unwrap(),
            inner_product(&f2, &f1).unwrap().conj()
        );
    }
}
