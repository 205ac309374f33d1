use proptest::prelude::*;
use sov_core::frac::{const_poly, var_poly};
use sov_core::lax::lax;
use sov_core::{sc, Algebra, Frac, Mobius, Scalar, SiteParams, TwistedFunction, Var, VarPoly, WeylElement};

fn xp(k: usize) -> VarPoly {
    var_poly(Var::x(k))
}

fn ip(p: &str) -> Scalar {
    Scalar::i().mul(&sc(p))
}

fn plane_wave() -> TwistedFunction {
    TwistedFunction::exp(Frac::poly(xp(1).scale(&ip("p"))))
}

fn sl3_wave() -> TwistedFunction {
    let (x, y, z) = (xp(1), var_poly(Var::y(1)), var_poly(Var::z(1)));
    TwistedFunction::exp(Frac::poly(y.sub(&x.mul(&z)).scale(&ip("p1")).add(&z.scale(&ip("p2")))))
}

#[test]
fn derivative_examples() {
    let f = plane_wave();
    assert!(f.differentiate(Var::x(1)).unwrap().equals(&f.scale(&ip("p"))).unwrap());
    let form = xp(1).sub(&const_poly(sc("c")));
    let g = TwistedFunction::power(&form, &sc("alpha")).unwrap();
    let want = g.mul_frac(&Frac::power(&form, -1).unwrap().scale(&sc("alpha")));
    assert!(g.differentiate(Var::x(1)).unwrap().equals(&want).unwrap());
    let h = sl3_wave();
    assert!(h.differentiate(Var::y(1)).unwrap().equals(&h.scale(&ip("p1"))).unwrap());
}

#[test]
fn application_examples() {
    let f = plane_wave();
    let xd = WeylElement::var(Var::x(1)).mul(&WeylElement::d(Var::x(1)));
    assert!(f.apply(&xd).unwrap().equals(&f.mul_frac(&Frac::poly(xp(1).scale(&ip("p"))))).unwrap());
    let l = lax(&SiteParams::generic(Algebra::Sl2, 1)).unwrap();
    // u1 − u2 + 1 = c_1_1 − c_2_1 + 1 for generic parameters.
    let inner = xp(1).scale(&ip("p")).add(&const_poly(sc("c_1_1 - c_2_1 + 1")));
    let want = f.mul_frac(&Frac::poly(xp(1).mul(&inner)));
    assert!(f.apply(l.at(2, 1)).unwrap().equals(&want).unwrap());
    assert!(f.apply(&WeylElement::one()).unwrap().equals(&f).unwrap());
}

#[test]
fn power_examples() {
    let diff = xp(2).sub(&xp(1));
    let f = plane_wave().multiply_power(&diff, &sc("beta")).unwrap();
    assert_eq!(f.powers().len(), 1);
    let back = f.multiply_power(&diff, &sc("-beta")).unwrap();
    assert!(back.equals(&plane_wave()).unwrap());
    assert!(back.powers().is_empty());
}

#[test]
fn integer_exponents_fold_into_the_prefactor() {
    let f = TwistedFunction::power(&xp(1), &sc("alpha")).unwrap().multiply_power(&xp(1), &sc("2 - alpha")).unwrap();
    assert!(f.powers().is_empty());
    assert_eq!(f.prefactor(), &Frac::poly(xp(1).mul(&xp(1))));
}

#[test]
fn scalar_multiple_detection() {
    let f = plane_wave();
    assert_eq!(f.scale(&Scalar::int(2)).is_scalar_multiple(&f).unwrap(), Some(Scalar::int(2)));
    assert_eq!(f.mul_frac(&Frac::var(Var::x(1))).is_scalar_multiple(&f).unwrap(), None);
    assert!(f.is_scalar_multiple(&TwistedFunction::zero()).is_err());
}

#[test]
fn mobius_identity_and_omega_one_site() {
    let f = plane_wave();
    let id = f.mobius_substitute(&[Mobius::identity(Var::x(1))], &TwistedFunction::one()).unwrap();
    assert!(id.equals(&f).unwrap());
    let (p1, p2) = (sc("p1"), sc("p2"));
    let form = const_poly(p2.clone()).sub(&xp(1).scale(&p1));
    let alpha = sc("c_2_1 - c_1_1 - 1");
    let map = Mobius::new(Var::x(1), p2.inv().unwrap(), Scalar::zero(), p1.neg(), p2.clone());
    let cof = TwistedFunction::power(&form, &alpha).unwrap();
    let got = f.mobius_substitute(&[map], &cof).unwrap();
    let phase = Frac::poly(xp(1).scale(&ip("p"))).mul(&Frac::power(&form, -1).unwrap()).scale(&p2.inv().unwrap());
    let want = TwistedFunction::exp(phase).multiply_power(&form, &alpha).unwrap();
    assert!(got.equals(&want).unwrap(), "{got} vs {want}");
}

#[test]
fn mobius_inverse_cancels() {
    let f = plane_wave().multiply_power(&xp(1).sub(&const_poly(sc("c"))), &sc("alpha")).unwrap();
    // The one-site Ω group element and its inverse, both of unit determinant.
    let m = Mobius::new(Var::x(1), sc("1/p2"), Scalar::zero(), sc("-p1"), sc("p2"));
    let inv = Mobius::new(Var::x(1), sc("p2"), Scalar::zero(), sc("p1"), sc("1/p2"));
    let once = f.mobius_substitute(&[m.clone()], &TwistedFunction::one()).unwrap();
    let twice = once.mobius_substitute(&[inv.clone()], &TwistedFunction::one()).unwrap();
    let direct = f.mobius_substitute(&[m.after(&inv)], &TwistedFunction::one()).unwrap();
    assert!(twice.equals(&direct).unwrap());
    // The composed map is the identity.
    assert!(direct.equals(&f).unwrap());
}

#[test]
fn degenerate_map_is_rejected() {
    let m = Mobius::new(Var::x(1), sc("1"), sc("2"), sc("2"), sc("4"));
    assert!(plane_wave().mobius_substitute(&[m], &TwistedFunction::one()).is_err());
}

fn ops() -> impl Strategy<Value = WeylElement> {
    let x1 = WeylElement::var(Var::x(1));
    let x2 = WeylElement::var(Var::x(2));
    let d1 = WeylElement::d(Var::x(1));
    let d2 = WeylElement::d(Var::x(2));
    let gens = vec![x1.clone(), x2, d1.clone(), d2, x1.mul(&d1), WeylElement::scalar(sc("u"))];
    prop::collection::vec((0..gens.len(), -2i64..=2), 1..4).prop_map(move |v| {
        v.into_iter().fold(WeylElement::zero(), |acc, (i, c)| acc.add(&gens[i].scale(&Scalar::int(c))))
    })
}

fn panel() -> TwistedFunction {
    plane_wave().multiply_power(&xp(2).sub(&xp(1)), &sc("alpha")).unwrap().mul_frac(&Frac::poly(xp(2).add(&const_poly(sc("3")))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn application_respects_products(a in ops(), b in ops()) {
        let f = panel();
        let lhs = f.apply(&a.mul(&b)).unwrap();
        let rhs = f.apply(&b).unwrap().apply(&a).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn mixed_partials_commute(i in 0usize..3, j in 0usize..3) {
        let vars = [Var::x(1), Var::x(2), Var::y(1)];
        let f = panel().multiply_power(&var_poly(Var::y(1)).sub(&xp(2)), &sc("beta")).unwrap();
        let a = f.differentiate(vars[i]).unwrap().differentiate(vars[j]).unwrap();
        let b = f.differentiate(vars[j]).unwrap().differentiate(vars[i]).unwrap();
        prop_assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn powers_add(a in -3i64..3, b in -3i64..3) {
        let form = xp(2).sub(&xp(1));
        let (ea, eb) = (sc("alpha").add(&Scalar::int(a)), sc("beta").add(&Scalar::int(b)));
        let f = panel();
        let twice = f.multiply_power(&form, &ea).unwrap().multiply_power(&form, &eb).unwrap();
        let once = f.multiply_power(&form, &ea.add(&eb)).unwrap();
        prop_assert!(twice.equals(&once).unwrap());
    }
}
