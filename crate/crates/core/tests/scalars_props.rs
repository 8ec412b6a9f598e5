use proptest::prelude::*;
use qweyl::{FieldSpec, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3, -3i64..=3, -2i64..=2).prop_map(|(a, d, b, c, e)| {
        let mut x = Scalar::from_ratio(a, d);
        x += &(&Scalar::from_int(b) * &Scalar::sqrt_int(2));
        x += &(&Scalar::from_int(c) * &Scalar::i());
        x += &(&Scalar::from_int(e) * &Scalar::sqrt_int(3));
        x
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn inverses(a in scalar()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn extension_does_not_change_products(a in scalar(), b in scalar(), p in prop::sample::select(vec![5u64, 7, 11])) {
        let before = &a * &b;
        let field = FieldSpec::of_scalar(&a).join(&FieldSpec::of_scalar(&b)).extend(p);
        prop_assert!(field.contains(&before));
        let s = Scalar::sqrt_int(p);
        let after = &(&(&a + &s) * &b) - &(&s * &b);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn worked_examples() {
    let one_i = &Scalar::one() + &Scalar::i();
    assert!((&one_i / &one_i).is_one());
    let r2 = Scalar::sqrt_int(2);
    assert_eq!(&r2 * &r2, Scalar::from_int(2));
    let inv = (&Scalar::one() + &r2).inv().unwrap();
    assert_eq!(inv, &Scalar::from_int(-1) + &r2);
    assert!(Scalar::zero().inv().is_err());
}

#[test]
fn field_extension_examples() {
    assert!(FieldSpec::gaussian().extend(4).radicands().is_empty());
    assert_eq!(FieldSpec::gaussian().extend(8).radicands(), &[2]);
    let f = FieldSpec::gaussian().extend(2);
    assert_eq!(f.extend(2), f);
}
