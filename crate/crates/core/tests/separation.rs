use proptest::prelude::*;
use sov_core::lax::{quantum_det, transfer_matrices};
use sov_core::separation::*;
use sov_core::*;

fn q() -> Param {
    Param::plain(Base::Q)
}

fn at_q(s: &Scalar) -> Scalar {
    s.subst1(Param::u(), &Scalar::param(q())).unwrap()
}

/// Transfer eigenvalue and quantum determinant of the one-site sl2 chain at
/// rational parameters, written in `q`.
fn sl2_data() -> (Scalar, Scalar) {
    let b: Bindings = [("c_1_1", "1/3"), ("c_2_1", "2/7")].iter().map(|(k, v)| (Param::parse(k).unwrap(), sc(v))).collect();
    let u = ParamMatrix::generic(Algebra::Sl2, 1).substitute(&b).unwrap();
    let lim = Limits::default();
    let t = transfer_matrices(&u, &lim).unwrap().0.as_scalar().unwrap();
    let d = quantum_det(&u, &lim).unwrap().as_scalar().unwrap();
    (at_q(&t), at_q(&d))
}

#[test]
fn transfer_data_of_one_site() {
    let (t, d) = sl2_data();
    assert_eq!(t, sc("2*q + 34/21"));
    assert_eq!(d, sc("(q + 1/3)*(q + 2/7)"));
}

#[test]
fn generated_table_satisfies_its_recurrence() {
    let (t, d) = sl2_data();
    let r = Recurrence::sl2(&t, &d, q(), sc("0")).unwrap();
    let values = recurrence_generate(&r, &[sc("1"), sc("1/2")], 12).unwrap();
    assert_eq!(values.len(), 14);
    assert!(check_residuals("recurrence", "Sepsl2", &r, &values).passed());
    let mut bad = values.clone();
    bad[7] = bad[7].add(&sc("1"));
    let c = check_residuals("recurrence", "Sepsl2", &r, &bad);
    assert!(!c.passed());
    assert!(format!("{:?}", c.outcome).contains("q = 5"));
}

#[test]
fn zero_seeds_give_the_zero_table() {
    let (t, d) = sl2_data();
    let r = Recurrence::sl2(&t, &d, q(), sc("0")).unwrap();
    let values = recurrence_generate(&r, &[sc("0"), sc("0")], 10).unwrap();
    assert!(values.iter().all(Scalar::is_zero));
    assert!(check_residuals("recurrence", "Sepsl2", &r, &values).passed());
}

#[test]
fn sl3_recurrence_has_order_three() {
    let r = Recurrence::sl3(&sc("q"), &sc("q + 1"), &sc("1"), q(), sc("1/2")).unwrap();
    assert_eq!(r.order(), 3);
    assert_eq!(r.coeffs[0], sc("1"));
    assert_eq!(r.coeffs[2], sc("q + 2"));
    let values = recurrence_generate(&r, &[sc("0"), sc("0"), sc("1")], 6).unwrap();
    assert_eq!(values[3], sc("-5/2"));
    assert!(check_residuals("recurrence", "Sepsl3", &r, &values).passed());
    assert!(recurrence_generate(&r, &[sc("0"), sc("1")], 6).is_err());
}

#[test]
fn factorized_solution_of_two_variables() {
    let (t, d) = sl2_data();
    let r = Recurrence::sl2(&t, &d, q(), sc("0")).unwrap();
    let a = Table { values: recurrence_generate(&r, &[sc("1"), sc("2")], 6).unwrap() };
    let b = Table { values: recurrence_generate(&r, &[sc("3"), sc("-1")], 6).unwrap() };
    let c = factorized_solution_check("product", "sepsl2", &[a.clone(), b.clone()], &[r.clone(), r.clone()]);
    assert!(c.passed(), "{:?}", c.outcome);

    // A factor built from a different transfer eigenvalue breaks the second equation.
    let other = Recurrence::sl2(&t.add(&sc("1")), &d, q(), sc("0")).unwrap();
    let wrong = Table { values: recurrence_generate(&other, &[sc("3"), sc("-1")], 6).unwrap() };
    let c = factorized_solution_check("product", "sepsl2", &[a, wrong], &[r.clone(), r]);
    assert!(!c.passed());
    assert!(format!("{:?}", c.outcome).contains("equation 2"));
}

#[test]
fn factorized_check_needs_one_equation_per_factor() {
    let t = Table { values: vec![sc("1"); 4] };
    let c = factorized_solution_check("product", "sepsl2", &[t], &[]);
    assert!(matches!(c.outcome, Outcome::Error { .. }), "{:?}", c.outcome);
}

#[test]
fn momentum_sectors() {
    let k = Var::k(1);
    let s3 = Scalar::param(Param::plain(Base::S3));
    for m in [-2, 0, 1, 3] {
        assert!(momentum_equation_check("momentum", "Sepsl2", &s3, m, k).passed(), "m={m}");
    }
    for e in ["e11", "e22"] {
        let e = Scalar::param(Param::parse(e).unwrap());
        assert!(momentum_equation_check("momentum", "Sepsl3", &e, 1, Var::k(2)).passed());
    }
    // e = m gives a constant solution.
    assert!(momentum_equation_check("momentum", "Sepsl2", &Scalar::int(2), 2, k).passed());
}

proptest! {
    #[test]
    fn residuals_are_linear(
        s in prop::collection::vec(-9i64..9, 2),
        t in prop::collection::vec(-9i64..9, 2),
        a in -5i64..5,
        b in -5i64..5,
    ) {
        let r = Recurrence::sl2(&sc("2*q + 1"), &sc("q^2 + 1/3"), q(), sc("1/2")).unwrap();
        let mut x: Vec<Scalar> = s.iter().map(|v| Scalar::int(*v)).collect();
        let mut y: Vec<Scalar> = t.iter().map(|v| Scalar::int(*v)).collect();
        // Arbitrary tails, not solutions.
        for j in 0..4 {
            x.push(Scalar::int(j * a + 1));
            y.push(Scalar::int(j - b));
        }
        let (sa, sb) = (Scalar::int(a), Scalar::int(b));
        let z: Vec<Scalar> = x.iter().zip(&y).map(|(p, q)| p.mul(&sa).add(&q.mul(&sb))).collect();
        let rx = r.residuals(&x).unwrap();
        let ry = r.residuals(&y).unwrap();
        let rz = r.residuals(&z).unwrap();
        for j in 0..rz.len() {
            prop_assert_eq!(&rz[j], &rx[j].mul(&sa).add(&ry[j].mul(&sb)));
        }
    }
}
