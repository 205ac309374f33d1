use sov_core::intertwiners::*;
use sov_core::lax::{b_operator, monodromy};
use sov_core::sov::lambda_chain;
use sov_core::*;

fn bind(pairs: &[(&str, &str)]) -> Bindings {
    pairs.iter().map(|(k, v)| (Param::parse(k).unwrap(), sc(v))).collect()
}

fn lim() -> Limits {
    Limits::default()
}

fn sl2_one_site(shift: &str) -> ParamMatrix {
    ParamMatrix::generic(Algebra::Sl2, 1).substitute(&bind(&[("c_1_1", shift)])).unwrap()
}

#[test]
fn s1_intertwines_on_the_lattice() {
    for n in 0..4 {
        let u = sl2_one_site(&format!("c_2_1 + {n}"));
        let p = s1_lattice(&u, 0).unwrap();
        assert_eq!(p.to_text(), format!("S1_1({n})"));
        let c = verify_chain(&p, Level::Monodromy, "s1", "S1defsl2", &lim());
        assert!(c.passed(), "n={n}: {:?}", c.outcome);
    }
}

#[test]
fn s1_with_the_opposite_sign_fails() {
    for n in 1..4 {
        let u = ParamMatrix::generic(Algebra::Sl2, 1).substitute(&bind(&[("c_2_1", &format!("c_1_1 + {n}"))])).unwrap();
        let mut w = Walker::new(u, Mode::Collect);
        w.s1(0).unwrap();
        let mut prog = w.finish();
        if let Action::Diff { power, .. } = &mut prog.factors[0].action {
            *power = n;
        }
        assert!(!verify_chain(&prog, Level::Monodromy, "s1", "S1defsl2", &lim()).passed(), "n={n}");
    }
}

#[test]
fn off_lattice_arguments() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1);
    assert!(matches!(s1_lattice(&u, 0), Err(Error::OffLattice(_))));
    let u = sl2_one_site("c_2_1 - 1");
    assert!(matches!(s1_lattice(&u, 0), Err(Error::OffLattice(_))));
    let u = sl2_one_site("c_2_1 + 1/2");
    assert!(matches!(s1_lattice(&u, 0), Err(Error::OffLattice(_))));
    assert!(s2_lattice(&sl2_one_site("c_2_1"), 0).is_err());
}

#[test]
fn collect_mode_records_conditions() {
    let mut w = Walker::new(ParamMatrix::generic(Algebra::Sl3, 1), Mode::Collect);
    w.s1(0).unwrap().s2(0).unwrap();
    let args: Vec<String> = w.conditions.iter().map(|c| c.arg.to_string()).collect();
    assert_eq!(args, ["c_1_1 - c_2_1", "c_1_1 - c_3_1"]);
    assert_eq!(w.current.entry(3, 0), &sc("u + c_1_1"));
}

#[test]
fn cross_operators_are_symbolic() {
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    let p = s_cross(&u, 0).unwrap();
    assert_eq!(p.to_text(), "S_21(-c_1_2 + c_2_1)");
    assert!(verify_chain(&p, Level::Monodromy, "cross", "S2def", &lim()).passed());
    let (a, b) = p.ends().unwrap();
    let c = verify_intertwining(&p, &monodromy(a, &lim()).unwrap(), &monodromy(b, &lim()).unwrap(), &lim());
    assert!(c.passed(), "{:?}", c.outcome);
    let u = ParamMatrix::generic(Algebra::Sl3, 2);
    let p = s_cross(&u, 0).unwrap();
    assert!(verify_chain(&p, Level::Monodromy, "cross", "s3l", &lim()).passed());
}

#[test]
fn sl3_local_intertwiners() {
    for n in 0..3 {
        let u = ParamMatrix::generic(Algebra::Sl3, 1)
            .substitute(&bind(&[("c_2_1", &format!("c_3_1 + {n}")), ("c_1_1", &format!("c_3_1 + {}", 2 * n))]))
            .unwrap();
        for p in [s1_lattice(&u, 0).unwrap(), s2_lattice(&u, 0).unwrap()] {
            let c = verify_chain(&p, Level::Monodromy, "local", "S1sl3", &lim());
            assert!(c.passed(), "n={n} {}: {:?}", p.to_text(), c.outcome);
        }
    }
}

#[test]
fn sl2_r_operator() {
    let u = ParamMatrix::generic(Algebra::Sl2, 2).substitute(&bind(&[("c_1_2", "c_2_2 + 1"), ("c_2_1", "c_2_2 + 2")])).unwrap();
    let p = r_operator(&u, 0).unwrap();
    assert_eq!(p.to_text(), "S1_2(1) · S_21(2) · S1_2(1)");
    assert!(verify_chain(&p, Level::Monodromy, "r", "R", &lim()).passed());
    // The product is a polynomial differential operator and intertwines as a whole.
    assert!(p.realize(&lim()).unwrap().is_some());
    let (a, b) = p.ends().unwrap();
    assert!(verify_intertwining(&p, &monodromy(a, &lim()).unwrap(), &monodromy(b, &lim()).unwrap(), &lim()).passed());
    // R exchanges the lower entries of the two columns.
    assert_eq!(b.entry(2, 0), a.entry(2, 1));
    assert_eq!(b.entry(2, 1), a.entry(2, 0));
}

#[test]
fn sl3_r_operator() {
    let u = ParamMatrix::generic(Algebra::Sl3, 2)
        .substitute(&bind(&[("c_2_2", "c_3_2"), ("c_1_2", "c_3_2 + 1"), ("c_3_1", "c_3_2 + 2")]))
        .unwrap();
    let p = r_operator(&u, 0).unwrap();
    assert_eq!(p.to_text(), "S2_2(0) · S1_2(1) · S_21(2) · S1_2(1) · S2_2(2)");
    let c = verify_chain(&p, Level::Monodromy, "r", "R3", &lim());
    assert!(c.passed(), "{:?}", c.outcome);
}

#[test]
fn lambda_chain_intertwines_three_sites() {
    let u = ParamMatrix::generic(Algebra::Sl2, 3);
    let v = sc("u + w");
    let w = lambda_chain(&u, &v, Mode::Collect).unwrap();
    let lat = sov_core::lattice::Solver::default().solve(&w.conditions, &Bindings::new(), &|_| true).unwrap();
    let u2 = u.substitute(&lat.bindings).unwrap();
    let p = lambda_chain(&u2, &v.substitute(&lat.bindings).unwrap(), Mode::Strict).unwrap().finish();
    assert_eq!(p.len(), 6);
    let (a, b) = p.ends().unwrap();
    let c = verify_intertwining(&p, &monodromy(a, &lim()).unwrap(), &monodromy(b, &lim()).unwrap(), &lim());
    assert!(c.passed(), "{:?}", c.outcome);
    assert_eq!(b.entry(2, b.position_of_site(1).unwrap()), &v.substitute(&lat.bindings).unwrap());
}

#[test]
fn relabel_holds_for_b_only() {
    let u = ParamMatrix::generic(Algebra::Sl2, 2);
    let mut w = Walker::new(u.clone(), Mode::Strict);
    w.relabel(0, 2, sc("u + w")).unwrap();
    let p = w.finish();
    assert!(verify_chain(&p, Level::B, "relabel", "v", &lim()).passed());
    let c = verify_factor(&p.factors[0], Level::Monodromy, &lim());
    assert_eq!(c.outcome.status(), "skipped");
    let (a, b) = p.ends().unwrap();
    assert_eq!(b_operator(a, &lim()).unwrap(), b_operator(b, &lim()).unwrap());
}

#[test]
fn spectral_dependence_is_rejected() {
    let u = ParamMatrix::generic(Algebra::Sl2, 1).substitute(&bind(&[("c_1_1", "u + c_2_1")])).unwrap();
    assert!(matches!(s1_lattice(&u, 0), Err(Error::InvalidParams(_))));
}
