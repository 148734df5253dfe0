use chartab::exact::Scalar;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12, -40i64..=40, 1i64..=12).prop_map(|(a, b, c, d)| {
        &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::sqrt3())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn addition_is_an_abelian_group(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert_eq!(&a + &(-&a), Scalar::zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn nonzero_elements_are_invertible(a in scalar(), b in scalar()) {
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, Scalar::one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn norm_and_conjugation_are_multiplicative(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        prop_assert_eq!((&a * &b).galois_conjugate(), &a.galois_conjugate() * &b.galois_conjugate());
        prop_assert_eq!(&a * &a.galois_conjugate(), Scalar::from_rational(a.norm()));
    }

    #[test]
    fn order_is_compatible_with_addition(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a < b, &a + &c < &b + &c);
        prop_assert_eq!(a.cmp(&b), (&a - &b).signum());
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn textual_forms_parse() {
    let cases = [
        ("-4", Scalar::from_int(-4)),
        ("7/81", Scalar::from_ratio(7, 81)),
        ("r3", Scalar::sqrt3()),
        ("1+2r3", &Scalar::one() + &(&Scalar::from_int(2) * &Scalar::sqrt3())),
        ("-r3/12", &Scalar::sqrt3() * &Scalar::from_ratio(-1, 12)),
        ("(3+r3)/12", &(&Scalar::from_int(3) + &Scalar::sqrt3()) * &Scalar::from_ratio(1, 12)),
        ("2*r3", &Scalar::from_int(2) * &Scalar::sqrt3()),
    ];
    for (text, want) in cases {
        assert_eq!(text.parse::<Scalar>().unwrap(), want, "{}", text);
    }
    assert!("r2".parse::<Scalar>().is_err());
    assert_eq!(&Scalar::sqrt3() * &Scalar::sqrt3(), Scalar::from_int(3));
}
