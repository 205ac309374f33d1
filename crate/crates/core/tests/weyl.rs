use proptest::prelude::*;
use sov_core::frac::var_poly;
use sov_core::lax::{gauss_factors, global_entry, lax, monodromy};
use sov_core::{sc, Algebra, Frac, Limits, Localization, OpMatrix, ParamMatrix, Scalar, SiteParams, Var, WeylElement};

fn x(k: usize) -> WeylElement {
    WeylElement::var(Var::x(k))
}

fn dx(k: usize) -> WeylElement {
    WeylElement::d(Var::x(k))
}

fn s(t: &str) -> WeylElement {
    WeylElement::scalar(sc(t))
}

#[test]
fn normal_ordering_examples() {
    assert_eq!(dx(1).mul(&x(1)), x(1).mul(&dx(1)).add(&WeylElement::one()));
    let d2x = dx(1).pow(2).mul(&x(1));
    assert_eq!(d2x, x(1).mul(&dx(1).pow(2)).add(&dx(1).scale(&Scalar::int(2))));
    let e = x(1).mul(&dx(1));
    assert_eq!(e.mul(&e), x(1).pow(2).mul(&dx(1).pow(2)).add(&e));
    assert_eq!(e.mul(&e).to_text(), "x1^2*dx1^2 + x1*dx1");
}

#[test]
fn commutator_examples() {
    assert_eq!(dx(1).commutator(&x(1)), WeylElement::one());
    let s3 = x(1).mul(&dx(1)).sub(&s("sigma_1 - 1"));
    let s_minus = dx(1).neg();
    assert_eq!(s3.commutator(&s_minus), s_minus.neg());
    // E11 + E22 at one sl2 site is a Scalar, so it is central.
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    let trace = global_entry(&u, 1, 1).unwrap().add(&global_entry(&u, 2, 2).unwrap());
    assert!(trace.as_scalar().is_some());
    assert!(trace.commutator(&x(1).pow(2).mul(&dx(1))).is_zero());
}

#[test]
fn conjugation_examples() {
    let mut loc = Localization::new();
    let px = var_poly(Var::x(1));
    loc.register(&px);
    let alpha = sc("alpha");
    let c = dx(1).conjugate_by_power(&px, &alpha, &loc).unwrap();
    let want = dx(1).add(&WeylElement::frac(Frac::power(&px, -1).unwrap().scale(&alpha)));
    assert_eq!(c, want);
    let diff = var_poly(Var::x(2)).sub(&var_poly(Var::x(1)));
    loc.register(&diff);
    let c = dx(2).conjugate_by_power(&diff, &alpha, &loc).unwrap();
    assert_eq!(c, dx(2).add(&WeylElement::frac(Frac::power(&diff, -1).unwrap().scale(&alpha))));
    assert_eq!(x(1).conjugate_by_power(&diff, &alpha, &loc).unwrap(), x(1));
}

#[test]
fn unregistered_form_is_rejected() {
    let loc = Localization::new();
    assert!(dx(1).conjugate_by_power(&var_poly(Var::x(1)), &sc("alpha"), &loc).is_err());
}

#[test]
fn degree_cap_overflow() {
    let lim = Limits { max_order: 3 };
    assert!(dx(1).pow(2).mul_checked(&dx(1).pow(2), &lim).is_err());
}

#[test]
fn identity_matrix_is_neutral() {
    let l = lax(&SiteParams::generic(Algebra::Sl3, 1)).unwrap();
    assert_eq!(OpMatrix::identity(3).mul(&l).unwrap(), l);
    assert_eq!(l.mul(&OpMatrix::identity(3)).unwrap(), l);
}

#[test]
fn gauss_product_is_the_l_operator() {
    for alg in [Algebra::Sl2, Algebra::Sl3] {
        let p = SiteParams::generic(alg, 1);
        let [a, b, c] = gauss_factors(&p).unwrap();
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), lax(&p).unwrap());
    }
}

#[test]
fn two_site_monodromy_entry() {
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    let t = monodromy(&u, &Limits::default()).unwrap();
    let (l2, l1) = (lax(&u.columns[0]).unwrap(), lax(&u.columns[1]).unwrap());
    let want = l2.at(1, 1).mul(l1.at(1, 2)).add(&l2.at(1, 2).mul(l1.at(2, 2)));
    assert_eq!(t.at(1, 2), &want);
    assert_ne!(l1.mul(&l2).unwrap(), t);
}

#[test]
fn shape_mismatch_is_an_error() {
    assert!(OpMatrix::zeros(2, 3).mul(&OpMatrix::zeros(2, 3)).is_err());
}

fn element() -> impl Strategy<Value = WeylElement> {
    let gens = vec![x(1), x(2), dx(1), dx(2), s("u"), s("c_1_1"), WeylElement::var(Var::y(1)), WeylElement::d(Var::y(1))];
    let atom = (0..gens.len(), -3i64..=3).prop_map(move |(i, c)| gens[i].scale(&Scalar::int(c)));
    atom.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.mul(&b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn bilinear(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(c.mul(&a.add(&b)), c.mul(&a).add(&c.mul(&b)));
    }

    #[test]
    fn jacobi(a in element(), b in element(), c in element()) {
        let j = a.commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in element(), b in element(), n in 0i64..3) {
        let mut loc = Localization::new();
        let form = var_poly(Var::x(2)).sub(&var_poly(Var::x(1)));
        loc.register(&form);
        let alpha = sc("alpha").add(&Scalar::int(n));
        let ca = a.conjugate_by_power(&form, &alpha, &loc).unwrap();
        let cb = b.conjugate_by_power(&form, &alpha, &loc).unwrap();
        prop_assert_eq!(a.mul(&b).conjugate_by_power(&form, &alpha, &loc).unwrap(), ca.mul(&cb));
        prop_assert_eq!(a.conjugate_by_power(&form, &Scalar::zero(), &loc).unwrap(), a);
    }

    #[test]
    fn matrix_product_associative(i in 0usize..3) {
        let algs = [Algebra::Sl2, Algebra::Sl2, Algebra::Sl3];
        let a = lax(&SiteParams::generic(algs[i], 1)).unwrap();
        let b = lax(&SiteParams::generic(algs[i], 2)).unwrap();
        let c = lax(&SiteParams::generic(algs[i], 1)).unwrap().scale(&sc("v"));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}
