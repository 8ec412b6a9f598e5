use std::sync::Arc;

use proptest::prelude::*;
use qweyl::{CommAlgebra, Scalar, Subspace, Vector};

fn algebras() -> Vec<Arc<CommAlgebra>> {
    let t2 = CommAlgebra::truncated_poly(2).unwrap();
    vec![
        Arc::new(CommAlgebra::truncated_poly(3).unwrap()),
        Arc::new(CommAlgebra::truncated_poly(4).unwrap()),
        Arc::new(CommAlgebra::direct_sum(&CommAlgebra::field(), &CommAlgebra::field())),
        Arc::new(CommAlgebra::direct_sum(&t2, &CommAlgebra::field())),
    ]
}

fn element(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-2i64..=2, dim).prop_map(|v| v.into_iter().map(Scalar::from_int).collect())
}

fn case() -> impl Strategy<Value = (usize, Vec<Vector>, Vec<Vector>)> {
    (0..4usize).prop_flat_map(|k| {
        let d = algebras()[k].dim();
        (Just(k), prop::collection::vec(element(d), 0..3), prop::collection::vec(element(d), 0..3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_inside_intersection((k, g1, g2) in case()) {
        let a = &algebras()[k];
        let (i, j) = (a.ideal_generated(&g1), a.ideal_generated(&g2));
        let prod = i.product(&j).unwrap();
        let meet = i.intersect(&j).unwrap();
        prop_assert!(meet.space().contains_subspace(prod.space()).unwrap());
        if i.is_comaximal(&j).unwrap() {
            prop_assert_eq!(prod.dim(), meet.dim());
        }
    }

    #[test]
    fn power_codims_increase_then_settle((k, g, _) in case()) {
        let a = &algebras()[k];
        let i = a.ideal_generated(&g);
        let codims: Vec<usize> = (1..=a.dim() as u32 + 2).map(|n| i.power(n).codim()).collect();
        prop_assert!(codims.windows(2).all(|w| w[0] <= w[1]));
        let last = codims[codims.len() - 1];
        prop_assert_eq!(codims[codims.len() - 2], last);
    }

    #[test]
    fn largest_ideal_is_inside_and_closed((k, g, _) in case()) {
        let a = &algebras()[k];
        let s = Subspace::span(a.dim(), &g);
        let i = a.largest_ideal_inside(&s);
        prop_assert!(s.contains_subspace(i.space()).unwrap());
        prop_assert!(a.ideal(i.space().clone()).is_ok());
        // any ideal generated by one element of S that stays in S lies in I
        for x in &g {
            let gen = a.ideal_generated(std::slice::from_ref(x));
            if s.contains_subspace(gen.space()).unwrap() {
                prop_assert!(i.space().contains_subspace(gen.space()).unwrap());
            }
        }
    }
}

#[test]
fn monomial_ideals() {
    let a = Arc::new(CommAlgebra::truncated_poly(3).unwrap());
    let t = a.ideal_generated(&[a.basis(1)]);
    let t2 = a.ideal_generated(&[a.basis(2)]);
    assert_eq!(t.power(2).space(), t2.space());
    assert_eq!(t.power(2).codim(), 2);
    assert!(!t.is_comaximal(&t2).unwrap());
}

#[test]
fn unit_decomposition_is_comaximal() {
    let a = Arc::new(CommAlgebra::direct_sum(&CommAlgebra::field(), &CommAlgebra::field()));
    let i = a.ideal_generated(&[a.basis(0)]);
    let j = a.ideal_generated(&[a.basis(1)]);
    assert!(i.is_comaximal(&j).unwrap());
    assert!(i.product(&j).unwrap().is_zero());
}

#[test]
fn largest_ideal_examples() {
    let a = Arc::new(CommAlgebra::truncated_poly(2).unwrap());
    assert!(a.largest_ideal_inside(&Subspace::full(2)).is_whole());
    let t = a.largest_ideal_inside(&Subspace::span(2, &[a.basis(1)]));
    assert_eq!(t.dim(), 1);
    let one_plus_t: Vector = vec![Scalar::one(), Scalar::one()];
    assert!(a.largest_ideal_inside(&Subspace::span(2, &[one_plus_t])).is_zero());
}
