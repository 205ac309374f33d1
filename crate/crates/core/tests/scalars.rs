use proptest::prelude::*;
use sov_core::{parse_scalar, sc, Bindings, Error, Param, Scalar};

fn bind(pairs: &[(&str, &str)]) -> Bindings {
    pairs.iter().map(|(k, v)| (Param::parse(k).unwrap(), sc(v))).collect()
}

#[test]
fn cancellation() {
    assert_eq!(sc("u - sigma_1").add(&sc("sigma_1")), sc("u"));
}

#[test]
fn gcd_reduction() {
    let q = sc("u^2 - sigma^2").div(&sc("u - sigma")).unwrap();
    assert_eq!(q, sc("u + sigma"));
    assert_eq!(q.to_text(), "u + sigma");
}

#[test]
fn inverse_cancels() {
    let a = sc("c_1_1*c_2_1").mul(&sc("1/c_2_1"));
    assert_eq!(a, sc("c_1_1"));
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(sc("u").div(&Scalar::zero()), Err(Error::DivisionByZero));
}

#[test]
fn substitution_examples() {
    assert_eq!(sc("u - q_1").substitute(&bind(&[("u", "q_1 + 1")])).unwrap(), Scalar::one());
    assert_eq!(sc("sigma_1 + sigma_2").substitute(&bind(&[("sigma_1", "1 - sigma_2")])).unwrap(), Scalar::one());
    match sc("1/u").substitute(&bind(&[("u", "0")])) {
        Err(Error::Pole { bindings }) => assert!(bindings.contains('u'), "{bindings}"),
        other => panic!("expected a pole, got {other:?}"),
    }
}

#[test]
fn imaginary_unit() {
    assert_eq!(sc("i*i"), sc("-1"));
    assert_eq!(sc("(1 + i)*(1 - i)"), sc("2"));
}

const ATOMS: [&str; 6] = ["u", "v", "q_1", "c_1_2", "sigma", "p"];

fn scalar() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        (-5i64..=5).prop_map(Scalar::int),
        (0usize..ATOMS.len()).prop_map(|i| sc(ATOMS[i])),
        ((-4i64..=4), (1i64..=4)).prop_map(|(n, d)| Scalar::ratio(n, d)),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(&b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.div(&b).unwrap_or(a)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
        }
    }

    #[test]
    fn print_parse_round_trip(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in scalar(), b in scalar(), n in 7i64..40) {
        // Large integer values keep denominators away from zero.
        let b_map = bind(&[("u", &format!("v + {n}")), ("q_1", &format!("{}", 2 * n + 1))]);
        if let (Ok(sa), Ok(sb)) = (a.substitute(&b_map), b.substitute(&b_map)) {
            prop_assert_eq!(a.mul(&b).substitute(&b_map).unwrap(), sa.mul(&sb));
            prop_assert_eq!(a.add(&b).substitute(&b_map).unwrap(), sa.add(&sb));
        }
    }
}
