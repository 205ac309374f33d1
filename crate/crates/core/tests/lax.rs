use sov_core::lax::*;
use sov_core::{sc, Algebra, Bindings, Limits, OpMatrix, Param, ParamMatrix, Scalar, SiteParams, Var, WeylElement};

fn lim() -> Limits {
    Limits::default()
}

fn w(s: &str) -> WeylElement {
    WeylElement::scalar(sc(s))
}

fn v(kind: char, k: usize) -> WeylElement {
    WeylElement::var(match kind {
        'x' => Var::x(k),
        'y' => Var::y(k),
        _ => Var::z(k),
    })
}

fn d(kind: char, k: usize) -> WeylElement {
    WeylElement::d(match kind {
        'x' => Var::x(k),
        'y' => Var::y(k),
        _ => Var::z(k),
    })
}

#[test]
fn sl2_entries() {
    let l = lax_sl2(&SiteParams::generic(Algebra::Sl2, 3)).unwrap();
    assert_eq!(l.at(1, 2), &d('x', 3).neg());
    assert_eq!(l.at(1, 1), &v('x', 3).mul(&d('x', 3)).add(&w("u + c_1_3 + 1")));
}

#[test]
fn sl3_entries() {
    let l = lax_sl3(&SiteParams::generic(Algebra::Sl3, 1)).unwrap();
    assert_eq!(l.at(1, 3), &d('y', 1).neg());
    let want = w("u + c_3_1").sub(&v('y', 1).mul(&d('y', 1))).sub(&v('z', 1).mul(&d('z', 1)));
    assert_eq!(l.at(3, 3), &want);
}

#[test]
fn gauss_factorizations() {
    for alg in [Algebra::Sl2, Algebra::Sl3] {
        let c = check_gauss(&SiteParams::representation(alg, 2));
        assert!(c.passed(), "{alg}: {:?}", c.outcome);
    }
}

#[test]
fn one_site_monodromy_is_the_l_operator() {
    let u = ParamMatrix::generic(Algebra::Sl3, 1);
    assert_eq!(monodromy(&u, &lim()).unwrap(), lax(&u.columns[0]).unwrap());
}

#[test]
fn asymptotics_give_the_global_lowering_generator() {
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    let t = monodromy(&u, &lim()).unwrap();
    let s_minus = global_entry(&u, 1, 2).unwrap();
    assert_eq!(s_minus, d('x', 1).neg().sub(&d('x', 2)));
    assert_eq!(t.at(1, 2).coefficient_of_param(Param::u(), 1), s_minus);
    // Leading term u^N on the diagonal, u^{N-1} E_{ji} below it.
    assert_eq!(t.at(1, 1).coefficient_of_param(Param::u(), 2), WeylElement::one());
    assert_eq!(t.at(2, 1).coefficient_of_param(Param::u(), 1), global_entry(&u, 2, 1).unwrap());
}

#[test]
fn minor_examples() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    let t = monodromy(&u, &lim()).unwrap();
    let m = quantum_minor(&t, u.spectral, &[1], &[2], MinorVariant::Minor1, &lim()).unwrap();
    assert_eq!(&m.value, t.at(1, 2));
    let full = quantum_minor(&t, u.spectral, &[1, 2], &[1, 2], MinorVariant::Minor1, &lim()).unwrap();
    assert_eq!(full.value, w("(u + c_1_1)*(u + c_2_1)"));
    let rep = quantum_minor(&t, u.spectral, &[1, 1], &[1, 2], MinorVariant::Minor1, &lim()).unwrap();
    assert!(rep.repeated_indices && rep.value.is_zero());
    let u3 = ParamMatrix::generic(Algebra::Sl3, 1);
    let t3 = monodromy(&u3, &lim()).unwrap();
    assert!(check_minor_variants(&t3, u3.spectral, &[1, 2], &[1, 3], &lim()).passed());
}

#[test]
fn minors_agree_and_are_antisymmetric() {
    for (alg, n) in [(Algebra::Sl2, 1), (Algebra::Sl2, 2), (Algebra::Sl3, 1)] {
        let u = ParamMatrix::generic(alg, n);
        let t = monodromy(&u, &lim()).unwrap();
        let r = alg.rank();
        for a in 1..=r {
            for b in a + 1..=r {
                for c in 1..=r {
                    for e in c + 1..=r {
                        let c1 = check_minor_variants(&t, u.spectral, &[a, b], &[c, e], &lim());
                        let c2 = check_minor_antisymmetry(&t, u.spectral, &[a, b], &[c, e], &lim());
                        assert!(c1.passed() && c2.passed(), "{alg} N={n} {a}{b}/{c}{e}: {:?} {:?}", c1.outcome, c2.outcome);
                    }
                }
            }
        }
    }
}

#[test]
fn quantum_determinant() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    assert_eq!(quantum_det(&u, &lim()).unwrap(), w("(u + c_1_1)*(u + c_2_1)"));
    for (alg, n) in [(Algebra::Sl2, 1), (Algebra::Sl2, 2), (Algebra::Sl3, 1)] {
        let u = ParamMatrix::representation(alg, n);
        assert!(check_qdet_value(&u, &lim()).passed(), "{alg} N={n}");
        let c = check_qdet_central(&u, Param::v(), &lim());
        assert!(c.passed(), "{alg} N={n}: {:?}", c.outcome);
    }
}

#[test]
fn transfer_matrices_examples() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    let (t, t2) = transfer_matrices(&u, &lim()).unwrap();
    assert_eq!(t.as_scalar(), Some(sc("2*u + c_1_1 + c_2_1 + 1")));
    assert!(t2.is_none());
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    assert!(check_transfer_commute(&u, Param::v(), &lim()).passed());
    let (t, _) = transfer_matrices(&u, &lim()).unwrap();
    // Trace of the two-site product: leading 2u^2, and the u^1 coefficient is a Scalar.
    assert_eq!(t.coefficient_of_param(Param::u(), 2), w("2"));
    let u3 = ParamMatrix::generic(Algebra::Sl3, 1);
    let tm = monodromy(&u3, &lim()).unwrap();
    let (_, t2) = transfer_matrices(&u3, &lim()).unwrap();
    let mut sum = WeylElement::zero();
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        sum = sum.add(&quantum_minor(&tm, u3.spectral, &[a, b], &[a, b], MinorVariant::Minor1, &lim()).unwrap().value);
    }
    assert_eq!(t2.unwrap(), sum);
}

#[test]
fn b_operator_examples() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    assert_eq!(b_operator(&u, &lim()).unwrap(), d('x', 1).neg());
    // sl3, one site: −(∂y, ∂z + x∂y) M (−∂z − x∂y, ∂y)^T.
    let u = ParamMatrix::generic(Algebra::Sl3, 1);
    let (x, y, z) = (v('x', 1), v('y', 1), v('z', 1));
    let (dx, dy, dz) = (d('x', 1), d('y', 1), d('z', 1));
    let m11 = w("u + c_1_1 + 2").add(&x.mul(&dx)).add(&y.mul(&dy));
    let m12 = y.mul(&dz).add(&x.mul(&x.mul(&dx).add(&y.mul(&dy)).sub(&z.mul(&dz)).add(&w("c_1_1 - c_2_1 + 1"))));
    let m21 = dx.neg();
    let m22 = w("u + c_2_1 + 1").sub(&x.mul(&dx)).add(&z.mul(&dz));
    let row = [dy.clone(), dz.add(&x.mul(&dy))];
    let col = [dz.neg().sub(&x.mul(&dy)), dy.clone()];
    let mid = [
        m11.mul(&col[0]).add(&m12.mul(&col[1])),
        m21.mul(&col[0]).add(&m22.mul(&col[1])),
    ];
    let want = row[0].mul(&mid[0]).add(&row[1].mul(&mid[1])).neg();
    assert_eq!(b_operator(&u, &lim()).unwrap(), want);
}

#[test]
fn b_does_not_depend_on_the_last_parameter() {
    for (alg, n) in [(Algebra::Sl2, 2), (Algebra::Sl3, 1)] {
        let c = check_b_independence(&ParamMatrix::generic(alg, n), &sc("w"), &lim());
        assert!(c.passed(), "{alg}: {:?}", c.outcome);
    }
}

#[test]
fn rtt_relations() {
    for (alg, n) in [(Algebra::Sl2, 1), (Algebra::Sl2, 2), (Algebra::Sl3, 1)] {
        let u = ParamMatrix::generic(alg, n);
        let t = monodromy(&u, &lim()).unwrap();
        let c = check_rtt(&t, u.spectral, Param::v(), &lim());
        assert!(c.passed(), "{alg} N={n}: {:?}", c.outcome);
    }
}

#[test]
fn rtt_detects_a_broken_monodromy() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    let mut t = monodromy(&u, &lim()).unwrap();
    t.set(1, 1, t.at(1, 1).add(&v('x', 1)));
    assert!(!check_rtt(&t, u.spectral, Param::v(), &lim()).passed());
}

#[test]
fn tt_identity_and_coproduct() {
    for n in [1, 2] {
        let u = ParamMatrix::generic(Algebra::Sl3, n);
        let t = monodromy(&u, &lim()).unwrap();
        assert!(check_tt_identity(&t, u.spectral, &lim()).passed(), "N={n}");
    }
    let u = ParamMatrix::generic(Algebra::Sl3, 2);
    assert!(check_coproduct_minor(&u, &[1, 2], &[1, 3], &lim()).passed());
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    assert!(check_coproduct_minor(&u, &[1, 2], &[1, 2], &lim()).passed());
    assert!(check_coproduct_minor(&u, &[1], &[2], &lim()).passed());
}

#[test]
fn proposition_one() {
    for n in [1, 2] {
        let u = ParamMatrix::generic(Algebra::Sl2, n);
        for c in check_prop1_sl2(&u, Param::v(), &lim()) {
            assert!(c.passed(), "N={n} {}: {:?}", c.name, c.outcome);
        }
    }
}

#[test]
fn exchange_relation_depends_on_the_choice_of_a() {
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    let t = monodromy(&u, &lim()).unwrap();
    let tv = t.try_map(|e| e.subst1(u.spectral, &Scalar::param(Param::v()))).unwrap();
    assert!(check_prop2_sl2(&t, &tv, u.spectral, Param::v(), (1, 1), &lim()).passed());
    assert!(!check_prop2_sl2(&t, &tv, u.spectral, Param::v(), (2, 1), &lim()).passed());
    assert!(!check_prop2_sl2(&t, &tv, u.spectral, Param::v(), (2, 2), &lim()).passed());
    // With A = B the exchange relation collapses to [B(u), B(v)] = 0.
    assert!(check_prop2_sl2(&t, &tv, u.spectral, Param::v(), (1, 2), &lim()).passed());
}

#[test]
fn sl3_b_commutes() {
    let u = ParamMatrix::generic(Algebra::Sl3, 1);
    assert!(check_b_commute(&u, Param::v(), None, &lim()).passed());
    for c in check_b_global(&u, &lim()) {
        assert!(c.passed(), "{}", c.name);
    }
}

#[test]
fn sl3_two_sites_specialized() {
    let u = ParamMatrix::generic(Algebra::Sl3, 2);
    let params: Vec<Param> = (1..=3).flat_map(|i| (1..=2).map(move |k| Param::parse(&format!("c_{i}_{k}")).unwrap())).collect();
    let b: Bindings = sov_core::lattice::specialize(&params, &|_| false);
    assert!(check_b_commute(&u, Param::v(), Some(&b), &lim()).passed());
    for c in check_b_global(&u.substitute(&b).unwrap(), &lim()) {
        assert!(c.passed(), "{}", c.name);
    }
}

#[test]
fn invalid_site_parameters() {
    assert!(SiteParams::new(Algebra::Sl3, 1, vec![sc("u"), sc("u")], Param::u()).is_err());
    assert!(SiteParams::new(Algebra::Sl2, 0, vec![sc("u"), sc("u")], Param::u()).is_err());
    assert!(OpMatrix::zeros(2, 2).add(&OpMatrix::zeros(3, 3)).is_err());
}
