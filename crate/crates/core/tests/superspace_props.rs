use proptest::prelude::*;
use qweyl::superspace::{sign, GradedMap};
use qweyl::{Matrix, Parity, SuperDim, SuperSpace};

fn parity() -> impl Strategy<Value = Parity> {
    prop::bool::ANY.prop_map(|b| if b { Parity::Odd } else { Parity::Even })
}

fn superdim() -> impl Strategy<Value = SuperDim> {
    (0usize..4, 0usize..4).prop_map(|(e, o)| SuperDim::new(e, o))
}

proptest! {
    #[test]
    fn signs_square_to_one(x in parity(), m in parity()) {
        let s = sign(x, m);
        prop_assert!(s == 1 || s == -1);
        prop_assert_eq!(s * s, 1);
        prop_assert_eq!(s, sign(m, x));
    }

    #[test]
    fn tensor_dimensions(v in superdim(), w in superdim()) {
        let t = SuperSpace::of_dim(v).tensor(&SuperSpace::of_dim(w)).dim();
        prop_assert_eq!(t, SuperDim::new(v.even * w.even + v.odd * w.odd, v.even * w.odd + v.odd * w.even));
        prop_assert_eq!(t, v.tensor(w));
    }

    #[test]
    fn parity_shift_is_an_involution(v in superdim()) {
        let s = SuperSpace::of_dim(v);
        prop_assert_eq!(s.parity_shift().dim(), v.swapped());
        prop_assert_eq!(s.parity_shift().parity_shift(), s);
    }
}

#[test]
fn shift_examples() {
    let v = SuperSpace::of_dim(SuperDim::new(1, 0));
    assert_eq!(v.parity_shift().dim(), SuperDim::new(0, 1));
    assert_eq!(SuperSpace::of_dim(SuperDim::new(4, 4)).parity_shift().dim(), SuperDim::new(4, 4));
}

#[test]
fn odd_identity_squared_through_tensor() {
    let v = SuperSpace::of_dim(SuperDim::new(1, 1));
    let swap = GradedMap::new(v.clone(), v.clone(), Matrix::from_ints(&[&[0, 1], &[1, 0]]), Parity::Odd).unwrap();
    // (1⊗J)(J⊗1) = -(J⊗1)(1⊗J) for odd J
    let id = GradedMap::identity(&v);
    let a = id.tensor(&swap).compose(&swap.tensor(&id));
    let b = swap.tensor(&id).compose(&id.tensor(&swap));
    assert_eq!(a.matrix, b.matrix.scale(&qweyl::Scalar::from_int(-1)));
}
