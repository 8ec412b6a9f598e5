use std::sync::Arc;

use proptest::prelude::*;
use qweyl::clifford::{build_h, irreducible_module};
use qweyl::{CliffordAlgebra, CommAlgebra, CurrentAlgebra, MapWeight, QuadraticPair, Scalar, WeightVector};

fn nonzero() -> impl Strategy<Value = Scalar> {
    prop::sample::select(vec![1i64, -1, 2, 3, -5, 4, 9]).prop_map(Scalar::from_int)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dimension_depends_only_on_rank(values in prop::collection::vec(nonzero(), 0..5)) {
        let r = values.len();
        let pair = QuadraticPair::diagonal(&values);
        let m = irreducible_module(&CliffordAlgebra::new(pair.clone())).unwrap();
        prop_assert_eq!(m.dim().total(), 1 << r.div_ceil(2));
        prop_assert!(m.satisfies_relations(&pair));
    }

    #[test]
    fn h_dimension_follows_rank(lambda in prop::collection::vec(-3i64..=3, 2..=4)) {
        let n = lambda.len();
        let alg = CurrentAlgebra::new(n, Arc::new(CommAlgebra::field())).unwrap();
        let h = build_h(&MapWeight::over_field(&WeightVector(lambda.clone())), &alg).unwrap();
        let ell = lambda.iter().filter(|&&x| x != 0).count();
        prop_assert_eq!(h.rank, ell);
        prop_assert_eq!(h.kernel.len(), n - ell);
        prop_assert_eq!(h.dim().total(), 1 << ell.div_ceil(2));
        prop_assert!(h.kernel_acts_as_zero());
    }
}

#[test]
fn degenerate_forms_are_rejected() {
    let pair = QuadraticPair::diagonal(&[Scalar::one(), Scalar::zero()]);
    assert!(irreducible_module(&CliffordAlgebra::new(pair)).is_err());
}

#[test]
fn exterior_algebra_when_form_vanishes() {
    let c = CliffordAlgebra::new(QuadraticPair::diagonal(&[Scalar::zero(), Scalar::zero()]));
    assert_eq!(c.dim(), 4);
    let x = c.generator(0);
    assert!(c.mul(&x, &x).iter().all(Scalar::is_zero));
}

#[test]
fn product_of_two_generators_squares_to_minus_one() {
    let c = CliffordAlgebra::new(QuadraticPair::standard(2));
    let tt = c.mul(&c.generator(0), &c.generator(1));
    let sq = c.mul(&tt, &tt);
    let minus_one: Vec<Scalar> = c.one().iter().map(|x| -x).collect();
    assert_eq!(sq, minus_one);
}

#[test]
fn h_examples() {
    let alg = CurrentAlgebra::new(2, Arc::new(CommAlgebra::field())).unwrap();
    let h = build_h(&MapWeight::over_field(&WeightVector(vec![0, 0])), &alg).unwrap();
    assert_eq!(h.dim(), qweyl::SuperDim::new(1, 0));
    let h = build_h(&MapWeight::over_field(&WeightVector(vec![2, 1])), &alg).unwrap();
    assert_eq!(h.dim().total(), 2);
}
