use sov_core::frac::{const_poly, var_poly};
use sov_core::intertwiners::Mode;
use sov_core::lax::b_operator;
use sov_core::sov::*;
use sov_core::*;

fn p(s: &str) -> Scalar {
    Scalar::param(Param::parse(s).unwrap())
}

fn assert_all(e: &Eigen) {
    for c in &e.checks {
        assert!(c.passed(), "{} ({}): {:?}", c.name, c.anchor, c.outcome);
    }
}

#[test]
fn sl2_one_site_is_the_plane_wave() {
    let pb = Sl2Problem::new(ParamMatrix::generic(Algebra::Sl2, 1));
    let lat = pb.solve().unwrap();
    assert!(lat.values.is_empty());
    let e = eigenfunction_sl2(&pb, &lat).unwrap();
    assert_all(&e);
    assert_eq!(e.program.to_text(), "1");
    assert_eq!(e.eigenvalue, sc("-i*p"));
    assert!(e.function.equals(&seed_sl2(&p("p"), 1)).unwrap());
}

#[test]
fn sl2_two_sites() {
    let pb = Sl2Problem::new(ParamMatrix::generic(Algebra::Sl2, 2));
    let lat = pb.solve().unwrap();
    assert_eq!(lat.bindings[&Param::parse("q_1").unwrap()], sc("-c_2_1 + 2"));
    let e = eigenfunction_sl2(&pb, &lat).unwrap();
    assert_all(&e);
    assert_eq!(e.eigenvalue, sc("-i*p*(u + c_2_1 - 2)"));
    assert_eq!(e.program.len(), 4);
}

#[test]
fn sl2_three_sites() {
    let pb = Sl2Problem::new(ParamMatrix::generic(Algebra::Sl2, 3));
    let lat = pb.solve().unwrap();
    let e = eigenfunction_sl2(&pb, &lat).unwrap();
    assert_all(&e);
    let q1 = &lat.bindings[&Param::parse("q_1").unwrap()];
    let q2 = &lat.bindings[&Param::parse("q_2").unwrap()];
    assert_ne!(q1, q2);
    assert_eq!(e.eigenvalue, sc("-i*p").mul(&sc("u").sub(q1)).mul(&sc("u").sub(q2)));
}

#[test]
fn a_shifts_the_root() {
    let pb = Sl2Problem::new(ParamMatrix::generic(Algebra::Sl2, 2));
    let lat = pb.solve().unwrap();
    let c = check_shift_property(&pb, &lat, 1, &Scalar::zero());
    assert!(c.passed(), "{:?}", c.outcome);
    assert_eq!(c.note.as_deref(), Some("A(q_1) Psi(q) = (c_1_1 - c_2_1 + 3) Psi(q + e_1)"));
    assert!(!check_shift_property(&pb, &lat, 1, &Scalar::ratio(1, 2)).passed());
}

#[test]
fn w_target_counts_are_checked() {
    let u = ParamMatrix::generic(Algebra::Sl2, 3);
    assert!(build_w(&u, &WTarget::Sl2(vec![sc("u")]), Mode::Collect).is_err());
    assert!(build_w(&u, &WTarget::Sl2(vec![sc("2*u"), sc("u")]), Mode::Collect).is_err());
    assert!(build_w(&u, &WTarget::Sl3(vec![], vec![]), Mode::Collect).is_err());
}

#[test]
fn sl3_one_site_closed_form() {
    let u = ParamMatrix::generic(Algebra::Sl3, 1);
    let e = eigenfunction_sl3_n1(&u, &p("p1"), &p("p2"), &p("p")).unwrap();
    assert_all(&e);
    assert_eq!(e.eigenvalue, sc("i*p"));

    // [p2 − p1 x]^{u2 − u1 − 1} exp(i p1 (y − x z) + i p2 z + i p x / (p2 (p2 − p1 x)))
    let (x, y, z) = (var_poly(Var::x(1)), var_poly(Var::y(1)), var_poly(Var::z(1)));
    let i = Scalar::i();
    let form = const_poly(p("p2")).sub(&x.scale(&p("p1")));
    let phase = y.sub(&x.mul(&z)).scale(&i.mul(&p("p1"))).add(&z.scale(&i.mul(&p("p2"))));
    let phase = Frac::poly(phase)
        .add(&Frac::power(&form, -1).unwrap().mul_poly(&x).scale(&i.mul(&p("p")).div(&p("p2")).unwrap()));
    let alpha = u.entry(2, 0).sub(u.entry(1, 0)).sub(&Scalar::one());
    let psi = TwistedFunction::exp(phase).multiply_power(&form, &alpha).unwrap();
    assert!(psi.equals(&e.function).unwrap());
    let b = b_operator(&u, &Limits::default()).unwrap();
    assert_eq!(psi.apply(&b).unwrap().is_scalar_multiple(&psi).unwrap(), Some(sc("i*p")));
}

#[test]
fn sl3_two_sites_specialized() {
    let pb = Sl3Problem::new(ParamMatrix::generic(Algebra::Sl3, 2));
    let lat = pb.solve().unwrap();
    for b in lat.bindings.values() {
        assert!(b.is_constant(), "{b}");
    }
    let e = eigenfunction_sl3(&pb, &lat).unwrap();
    assert_all(&e);
    let names: Vec<&str> = e.checks.iter().map(|c| c.name.as_ref()).collect();
    assert_eq!(
        names,
        ["inner-eigenvalue", "omega-covariance", "minor-column", "third-column", "reduction", "reduced-eigenvalue", "eigenvalue", "e31", "e32"]
    );
}

#[test]
fn sl3_two_sites_symbolic() {
    let mut pb = Sl3Problem::new(ParamMatrix::generic(Algebra::Sl3, 2));
    pb.specialize = false;
    let lat = pb.solve().unwrap();
    let e = eigenfunction_sl3(&pb, &lat).unwrap();
    assert_all(&e);
    assert_eq!(e.eigenvalue, sc("i*p*(u + w_2)*(u + w_2 + 3)^2"));
}

#[test]
fn sl3_pipeline_needs_two_sites() {
    let pb = Sl3Problem::new(ParamMatrix::generic(Algebra::Sl3, 1));
    let lat = sov_core::lattice::LatticeAssignment::default();
    assert!(eigenfunction_sl3(&pb, &lat).is_err());
    assert!(eigenfunction_sl3_n1(&ParamMatrix::generic(Algebra::Sl2, 1), &p("p1"), &p("p2"), &p("p")).is_err());
}

#[test]
fn omega_covariance_on_a_panel() {
    let inner = ParamMatrix::generic(Algebra::Sl2, 2);
    let panel = function_panel(&inner, 3, 7);
    let c = check_omega_covariance(&inner, &p("p1"), &p("p2"), &panel);
    assert!(c.passed(), "{:?}", c.outcome);
}
