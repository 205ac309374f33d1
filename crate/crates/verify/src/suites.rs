//! Registered suites and the concurrent runner.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use sov_core::intertwiners::{self, s1_lattice, s2_lattice, s_cross, Action, Level, Mode, Walker};
use sov_core::lattice::{specialize, Solver};
use sov_core::lax::{self, monodromy, quantum_det, transfer_matrices};
use sov_core::separation::{self, recurrence_generate, Recurrence, Table};
use sov_core::sov::{self, build_w, Sl2Problem, Sl3Problem};
use sov_core::{
    sc, Algebra, Base, Bindings, Check, Limits, Outcome, Param, ParamKind, ParamMatrix, Scalar, SiteParams, Var,
};

use crate::concordance;
use crate::config::{ConfigError, Suite, SuiteConfig};
use crate::oracle::OracleConfig;
use crate::report::{Header, Record, Report, ReportWriter, SCHEMA, SCHEMA_VERSION};
use crate::tables;

/// Everything a suite needs, resolved from the config.
#[derive(Clone, Debug)]
pub struct Context {
    pub algebra: Algebra,
    pub n: usize,
    pub limits: Limits,
    pub oracle: OracleConfig,
    pub specialization: Bindings,
    pub overrides: BTreeMap<usize, i64>,
}

impl Context {
    pub fn from_config(cfg: &SuiteConfig) -> Result<Self, ConfigError> {
        Ok(Context {
            algebra: cfg.algebra.algebra(),
            n: cfg.n,
            limits: cfg.limits(),
            oracle: cfg.oracle,
            specialization: cfg.bindings()?,
            overrides: cfg.overrides()?,
        })
    }

    /// The configured chain with the user specialization applied.
    pub fn chain(&self) -> sov_core::Result<ParamMatrix> {
        ParamMatrix::generic(self.algebra, self.n).substitute(&self.specialization)
    }

    /// sl3 chains of two or more sites are too large to check with every
    /// parameter symbolic; all non-spectral parameters get exact values.
    fn heavy(&self) -> bool {
        self.algebra == Algebra::Sl3 && self.n >= 2
    }

    /// The chain with every non-spectral parameter bound to a rational.
    pub fn specialized_chain(&self) -> sov_core::Result<ParamMatrix> {
        let u = self.chain()?;
        let mut params = Vec::new();
        for c in &u.columns {
            for e in &c.entries {
                params.extend(e.params());
            }
        }
        params.sort();
        params.dedup();
        let b = specialize(&params, &|p| p.kind() == ParamKind::Spectral);
        u.substitute(&b)
    }

    fn working_chain(&self) -> sov_core::Result<ParamMatrix> {
        if self.heavy() {
            self.specialized_chain()
        } else {
            self.chain()
        }
    }

    fn solver(&self) -> Solver {
        Solver { overrides: self.overrides.clone(), ..Solver::default() }
    }
}

/// Checks of one suite, each with its own wall time.
#[derive(Default)]
struct Out {
    checks: Vec<(Check, u64)>,
}

impl Out {
    fn push(&mut self, f: impl FnOnce() -> Check) {
        let t = Instant::now();
        let c = f();
        self.checks.push((c, t.elapsed().as_millis() as u64));
    }

    fn extend(&mut self, f: impl FnOnce() -> Vec<Check>) {
        let t = Instant::now();
        let cs = f();
        let ms = t.elapsed().as_millis() as u64;
        self.checks.extend(cs.into_iter().map(|c| (c, ms)));
    }

    fn skip(&mut self, name: &str, anchor: &str, reason: &str) {
        self.checks.push((Check::new(name, anchor, Outcome::Skipped { reason: reason.into() }), 0));
    }

    fn error(&mut self, name: &str, anchor: &str, e: sov_core::Error) {
        self.checks.push((Check::new(name, anchor, e.into()), 0));
    }
}

/// Inverts a negative control: the record passes when the wrapped check
/// fails with a mismatch.
fn expect_failure(c: Check, name: &str) -> Check {
    let outcome = match &c.outcome {
        Outcome::Fail { .. } => Outcome::Pass,
        Outcome::Pass => Outcome::fail("negative control unexpectedly holds"),
        other => other.clone(),
    };
    Check { name: name.into(), outcome, ..c }
}

fn bind(pairs: &[(&str, &str)]) -> Bindings {
    pairs.iter().map(|(k, v)| (Param::parse(k).expect("known parameter"), sc(v))).collect()
}

fn rtt(cx: &Context, out: &mut Out) {
    let u = match cx.working_chain() {
        Ok(u) => u,
        Err(e) => return out.error("rtt", "yangian", e),
    };
    out.push(|| match monodromy(&u, &cx.limits) {
        Ok(t) => {
            let c = lax::check_rtt(&t, u.spectral, Param::v(), &cx.limits);
            if cx.heavy() {
                c.with_note("non-spectral parameters specialized")
            } else {
                c
            }
        }
        Err(e) => Check::new("rtt", "yangian", e.into()),
    });
}

fn minors(cx: &Context, out: &mut Out) {
    let u = match cx.chain() {
        Ok(u) => u,
        Err(e) => return out.error("minors", "minor1", e),
    };
    let t = match monodromy(&u, &cx.limits) {
        Ok(t) => t,
        Err(e) => return out.error("minors", "minor1", e),
    };
    let r = cx.algebra.rank();
    let pairs: Vec<[usize; 2]> = (1..=r).flat_map(|a| (a + 1..=r).map(move |b| [a, b])).collect();
    for rows in &pairs {
        for cols in &pairs {
            out.push(|| {
                let c = lax::check_minor_variants(&t, u.spectral, rows, cols, &cx.limits);
                Check { name: format!("minor1-minor2 {}{}/{}{}", rows[0], rows[1], cols[0], cols[1]), ..c }
            });
            out.push(|| {
                let c = lax::check_minor_antisymmetry(&t, u.spectral, rows, cols, &cx.limits);
                Check { name: format!("minor-antisymmetry {}{}/{}{}", rows[0], rows[1], cols[0], cols[1]), ..c }
            });
        }
    }
    if cx.algebra == Algebra::Sl3 {
        out.push(|| lax::check_tt_identity(&t, u.spectral, &cx.limits));
    }
    if u.len() >= 2 {
        for (rows, cols) in [([1, 2], [1, 2]), ([1, 2], [1, 3])] {
            if cols[1] > r {
                continue;
            }
            out.push(|| {
                let c = lax::check_coproduct_minor(&u, &rows, &cols, &cx.limits);
                Check { name: format!("coproduct {}{}/{}{}", rows[0], rows[1], cols[0], cols[1]), ..c }
            });
        }
    }
}

fn qdet_central(cx: &Context, out: &mut Out) {
    let u = match cx.working_chain() {
        Ok(u) => u,
        Err(e) => return out.error("qdet", "qdet", e),
    };
    out.push(|| lax::check_qdet_central(&u, Param::v(), &cx.limits));
    out.push(|| lax::check_qdet_value(&u, &cx.limits));
    out.push(|| {
        let oracle = concordance::minor_expr(&u, &(1..=u.algebra.rank()).collect::<Vec<_>>(), &(1..=u.algebra.rank()).collect::<Vec<_>>())
            .map_err(|e| e.to_string())
            .and_then(|e| {
                crate::oracle::oracle_equiv(&e, &crate::oracle::Expr::scalar(lax::qdet_product(&u)), &cx.oracle).map_err(|e| e.to_string())
            });
        let outcome = match oracle {
            Ok(v) if v.agree => Outcome::Pass,
            Ok(v) => Outcome::fail(v.mismatch.unwrap_or_default()),
            Err(e) => Outcome::Error { message: e },
        };
        Check::new("qdet-value-oracle", "qdet", outcome)
    });
}

fn gauss(cx: &Context, out: &mut Out) {
    for k in (1..=cx.n).rev() {
        out.push(|| {
            let c = lax::check_gauss(&SiteParams::generic(cx.algebra, k));
            Check { name: format!("gauss site {k}"), ..c }
        });
    }
}

fn prop1_sl2(cx: &Context, out: &mut Out) {
    if cx.algebra != Algebra::Sl2 {
        return out.skip("prop1", "prop1", "the B-equals-A check concerns sl2 chains");
    }
    let u = match cx.chain() {
        Ok(u) => u,
        Err(e) => return out.error("prop1", "prop1", e),
    };
    out.extend(|| lax::check_prop1_sl2(&u, Param::v(), &cx.limits));
    out.push(|| {
        let run = || -> sov_core::Result<Check> {
            let t = monodromy(&u, &cx.limits)?;
            let tv = t.try_map(|e| e.subst1(u.spectral, &Scalar::param(Param::v())))?;
            Ok(lax::check_prop2_sl2(&t, &tv, u.spectral, Param::v(), (2, 1), &cx.limits))
        };
        match run() {
            Ok(c) => expect_failure(c, "prop2-control-T21"),
            Err(e) => Check::new("prop2-control-T21", "prop2", e.into()),
        }
    });
}

fn prop2_sl3_b(cx: &Context, out: &mut Out) {
    if cx.algebra != Algebra::Sl3 {
        return out.skip("b-commute", "commsl3", "the B-operator commutativity suite concerns sl3 chains");
    }
    let u = match cx.chain() {
        Ok(u) => u,
        Err(e) => return out.error("b-commute", "commsl3", e),
    };
    let spec = if cx.heavy() {
        match cx.specialized_chain() {
            Ok(s) => Some(s),
            Err(e) => return out.error("b-commute", "commsl3", e),
        }
    } else {
        None
    };
    let target = spec.as_ref().unwrap_or(&u);
    out.push(|| lax::check_b_commute(target, Param::v(), None, &cx.limits));
    out.extend(|| lax::check_b_global(target, &cx.limits));
    out.push(|| lax::check_b_independence(target, &sc("w"), &cx.limits));
}

fn intertwiners_suite(cx: &Context, out: &mut Out) {
    let lim = cx.limits;
    match cx.algebra {
        Algebra::Sl2 => {
            for n in 0..=3 {
                out.push(|| {
                    let u = ParamMatrix::generic(Algebra::Sl2, 1).substitute(&bind(&[("c_1_1", &format!("c_2_1 + {n}"))]));
                    match u.and_then(|u| s1_lattice(&u, 0)) {
                        Ok(p) => intertwiners::verify_chain(&p, Level::Monodromy, &format!("S1 n={n}"), "S1defsl2", &lim),
                        Err(e) => Check::new(format!("S1 n={n}"), "S1defsl2", e.into()),
                    }
                });
            }
            for n in 1..=3 {
                out.push(|| {
                    let name = format!("S1 sign control n={n}");
                    let run = || -> sov_core::Result<Check> {
                        let u = ParamMatrix::generic(Algebra::Sl2, 1).substitute(&bind(&[("c_2_1", &format!("c_1_1 + {n}"))]))?;
                        let mut w = Walker::new(u, Mode::Collect);
                        w.s1(0)?;
                        let mut p = w.finish();
                        if let Action::Diff { power, .. } = &mut p.factors[0].action {
                            *power = n;
                        }
                        Ok(intertwiners::verify_chain(&p, Level::Monodromy, &name, "S1defsl2", &lim))
                    };
                    match run() {
                        Ok(c) => expect_failure(c, &name),
                        Err(e) => Check::new(name.clone(), "S1defsl2", e.into()),
                    }
                });
            }
            out.push(|| match s_cross(&ParamMatrix::generic(Algebra::Sl2, 2), 0) {
                Ok(p) => intertwiners::verify_chain(&p, Level::Monodromy, "cross symbolic", "S2def", &lim),
                Err(e) => Check::new("cross symbolic", "S2def", e.into()),
            });
        }
        Algebra::Sl3 => {
            for n in 0..=2 {
                for (which, row) in [("S1", 1), ("S2", 2)] {
                    out.push(|| {
                        let name = format!("{which} n={n}");
                        let u = ParamMatrix::generic(Algebra::Sl3, 1)
                            .substitute(&bind(&[("c_2_1", &format!("c_3_1 + {n}")), ("c_1_1", &format!("c_3_1 + {}", 2 * n))]));
                        let p = u.and_then(|u| if row == 1 { s1_lattice(&u, 0) } else { s2_lattice(&u, 0) });
                        match p {
                            Ok(p) => intertwiners::verify_chain(&p, Level::Monodromy, &name, "S1sl3", &lim),
                            Err(e) => Check::new(name, "S1sl3", e.into()),
                        }
                    });
                }
            }
            out.push(|| match s_cross(&ParamMatrix::generic(Algebra::Sl3, 2), 0) {
                Ok(p) => intertwiners::verify_chain(&p, Level::Monodromy, "cross symbolic", "s3l", &lim),
                Err(e) => Check::new("cross symbolic", "s3l", e.into()),
            });
        }
    }
}

fn r_ops(cx: &Context, out: &mut Out) {
    let (u, anchor) = match cx.algebra {
        Algebra::Sl2 => (ParamMatrix::generic(Algebra::Sl2, 2).substitute(&bind(&[("c_1_2", "c_2_2 + 1"), ("c_2_1", "c_2_2 + 2")])), "R"),
        Algebra::Sl3 => (
            ParamMatrix::generic(Algebra::Sl3, 2)
                .substitute(&bind(&[("c_2_2", "c_3_2"), ("c_1_2", "c_3_2 + 1"), ("c_3_1", "c_3_2 + 2")])),
            "R3",
        ),
    };
    out.push(|| match u.and_then(|u| intertwiners::r_operator(&u, 0)) {
        Ok(p) => intertwiners::verify_chain(&p, Level::Monodromy, "R factors", anchor, &cx.limits).with_note(p.to_text()),
        Err(e) => Check::new("R factors", anchor, e.into()),
    });
}

fn w_chain(cx: &Context, out: &mut Out) {
    if cx.n < 2 {
        return out.skip("W(U,V)", "BW", "the W chain needs at least two sites");
    }
    match cx.algebra {
        Algebra::Sl2 => {
            out.push(|| {
                let run = || -> sov_core::Result<Check> {
                    let u = cx.chain()?;
                    let v = sc("u + w");
                    let conds = sov::lambda_chain(&u, &v, Mode::Collect)?.conditions;
                    let lat = cx.solver().solve(&conds, &Bindings::new(), &|_| true)?;
                    let p = sov::lambda_chain(&u.substitute(&lat.bindings)?, &v.substitute(&lat.bindings)?, Mode::Strict)?.finish();
                    let (a, b) = p.ends().ok_or_else(|| sov_core::Error::InvalidParams("empty chain".into()))?;
                    let c = intertwiners::verify_intertwining(&p, &monodromy(a, &cx.limits)?, &monodromy(b, &cx.limits)?, &cx.limits);
                    Ok(Check { name: "lambda chain".into(), anchor: "BW".into(), ..c }.with_note(p.to_text()))
                };
                run().unwrap_or_else(|e| Check::new("lambda chain", "BW", e.into()))
            });
            out.push(|| {
                let run = || -> sov_core::Result<Check> {
                    let pb = Sl2Problem { solver: cx.solver(), start: cx.specialization.clone(), ..Sl2Problem::new(ParamMatrix::generic(Algebra::Sl2, cx.n)) };
                    let lat = pb.solve()?;
                    let u = pb.u.substitute(&lat.bindings)?;
                    let target = sov::WTarget::Sl2((1..cx.n).map(|j| sc("u").sub(&Scalar::param(Param::idx(Base::Q, j)))).collect());
                    let p = build_w(&u, &target.substitute(&lat.bindings)?, Mode::Strict)?.finish();
                    Ok(intertwiners::verify_chain(&p, Level::B, "W(U,V)", "BW", &cx.limits))
                };
                run().unwrap_or_else(|e| Check::new("W(U,V)", "BW", e.into()))
            });
        }
        Algebra::Sl3 => {
            out.push(|| {
                let run = || -> sov_core::Result<Check> {
                    let pb = Sl3Problem { solver: cx.solver(), start: cx.specialization.clone(), ..Sl3Problem::new(ParamMatrix::generic(Algebra::Sl3, cx.n)) };
                    let e = sov::eigenfunction_sl3(&pb, &pb.solve()?)?;
                    let mut check = intertwiners::verify_chain(&e.program, Level::B, "W(U,V)", "BW", &cx.limits);
                    if check.passed() {
                        check = check.with_note(format!("{} factors at specialized parameters", e.program.len()));
                    }
                    Ok(check)
                };
                run().unwrap_or_else(|e| Check::new("W(U,V)", "BW", e.into()))
            });
        }
    }
}

fn eigen_sl2(cx: &Context, out: &mut Out) {
    if cx.algebra != Algebra::Sl2 {
        return out.skip("eigenfunction", "Psipdef", "the sl2 pipeline needs an sl2 chain");
    }
    let pb = Sl2Problem { solver: cx.solver(), start: cx.specialization.clone(), ..Sl2Problem::new(ParamMatrix::generic(Algebra::Sl2, cx.n)) };
    let t = Instant::now();
    let lat = match pb.solve() {
        Ok(l) => l,
        Err(e) => return out.checks.push((Check::new("lattice", "qcond", e.into()), t.elapsed().as_millis() as u64)),
    };
    out.extend(|| match sov::eigenfunction_sl2(&pb, &lat) {
        Ok(e) => e.checks,
        Err(err) => vec![Check::new("eigenfunction", "Psipdef", err.into())],
    });
    if cx.n >= 2 {
        out.push(|| sov::check_shift_property(&pb, &lat, 1, &Scalar::zero()));
        out.push(|| expect_failure(sov::check_shift_property(&pb, &lat, 1, &Scalar::ratio(1, 2)), "shift-off-root control"));
    }
}

fn p(base: Base) -> Scalar {
    Scalar::param(Param::plain(base))
}

fn eigen_sl3_n1(cx: &Context, out: &mut Out) {
    if cx.algebra != Algebra::Sl3 {
        return out.skip("eigenfunction", "Psisl3", "the one-site closed form is an sl3 function");
    }
    out.extend(|| {
        let u = ParamMatrix::generic(Algebra::Sl3, 1).substitute(&cx.specialization);
        match u.and_then(|u| sov::eigenfunction_sl3_n1(&u, &p(Base::P1), &p(Base::P2), &p(Base::P))) {
            Ok(e) => e.checks,
            Err(err) => vec![Check::new("eigenfunction", "Psisl3", err.into())],
        }
    });
}

fn eigen_sl3(cx: &Context, out: &mut Out) {
    if cx.algebra != Algebra::Sl3 {
        return out.skip("eigenfunction", "final", "the sl3 pipeline needs an sl3 chain");
    }
    if cx.n < 2 {
        return out.skip("eigenfunction", "final", "the sl3 pipeline needs at least two sites; see eigen-sl3-n1");
    }
    let pb = Sl3Problem { solver: cx.solver(), start: cx.specialization.clone(), ..Sl3Problem::new(ParamMatrix::generic(Algebra::Sl3, cx.n)) };
    let t = Instant::now();
    let lat = match pb.solve() {
        Ok(l) => l,
        Err(e) => return out.checks.push((Check::new("lattice", "qcond", e.into()), t.elapsed().as_millis() as u64)),
    };
    out.extend(|| match sov::eigenfunction_sl3(&pb, &lat) {
        Ok(e) => e.checks,
        Err(err) => vec![Check::new("eigenfunction", "final", err.into())],
    });
}

/// Transfer and determinant data of a one-site chain at exact parameters,
/// written in the lattice variable `q`.
fn one_site_data(cx: &Context) -> sov_core::Result<Vec<Scalar>> {
    let q = Scalar::param(Param::plain(Base::Q));
    let one = Context { n: 1, ..cx.clone() };
    let u = one.specialized_chain()?;
    let (t1, t2) = transfer_matrices(&u, &cx.limits)?;
    let d = quantum_det(&u, &cx.limits)?;
    let mut out = vec![t1];
    out.extend(t2);
    out.push(d);
    out.iter()
        .map(|w| {
            w.as_scalar()
                .ok_or_else(|| sov_core::Error::Unsupported("one-site transfer data is not a Scalar".into()))?
                .subst1(Param::u(), &q)
        })
        .collect()
}

fn separation_suite(cx: &Context, out: &mut Out) {
    let qp = Param::plain(Base::Q);
    let (anchor, multi) = match cx.algebra {
        Algebra::Sl2 => ("Sepsl2", "sepsl2"),
        Algebra::Sl3 => ("Sepsl3", "sepsl3"),
    };
    let data = match one_site_data(cx) {
        Ok(d) => d,
        Err(e) => return out.error("recurrence", anchor, e),
    };
    let build = |shift: &Scalar| match cx.algebra {
        Algebra::Sl2 => Recurrence::sl2(&data[0].add(shift), &data[1], qp, Scalar::zero()),
        Algebra::Sl3 => Recurrence::sl3(&data[0].add(shift), &data[1], &data[2], qp, Scalar::zero()),
    };
    let seeds = |a: i64| -> Vec<Scalar> { (0..cx.algebra.rank() as i64).map(|k| Scalar::int(a + k * k)).collect() };
    let r = match build(&Scalar::zero()) {
        Ok(r) => r,
        Err(e) => return out.error("recurrence", anchor, e),
    };
    let values = match recurrence_generate(&r, &seeds(1), 12) {
        Ok(v) => v,
        Err(e) => return out.error("recurrence", anchor, e),
    };
    out.push(|| separation::check_residuals("recurrence", anchor, &r, &values).with_note(format!("{} values", values.len())));
    out.push(|| {
        let zeros = vec![Scalar::zero(); r.order()];
        Check::run("zero seeds", anchor, || {
            let seq = recurrence_generate(&r, &zeros, 10)?;
            Ok(Outcome::from_bool(seq.iter().all(Scalar::is_zero), || "nonzero value from zero seeds".into()))
        })
    });
    out.push(|| {
        Check::run("table json", anchor, || {
            let text = tables::to_json(&values).map_err(|e| sov_core::Error::Unsupported(e.to_string()))?;
            let back = tables::from_json(&text).map_err(|e| sov_core::Error::Unsupported(e.to_string()))?;
            Ok(Outcome::from_bool(back == values, || "table changed in a JSON round trip".into()))
        })
    });
    let run = |other: &Recurrence| -> sov_core::Result<Check> {
        let a = Table { values: recurrence_generate(&r, &seeds(2), 5)? };
        let b = Table { values: recurrence_generate(other, &seeds(-3), 5)? };
        Ok(separation::factorized_solution_check("factorized", multi, &[a, b], &[r.clone(), r.clone()]))
    };
    out.push(|| run(&r).unwrap_or_else(|e| Check::new("factorized", multi, e.into())));
    out.push(|| match build(&Scalar::one()).and_then(|o| run(&o)) {
        Ok(c) => expect_failure(c, "factorized mismatched-tau control"),
        Err(e) => Check::new("factorized mismatched-tau control", multi, e.into()),
    });
}

fn momentum(cx: &Context, out: &mut Out) {
    match cx.algebra {
        Algebra::Sl2 => {
            let s3 = p(Base::S3);
            for m in [0, 1, 2, -1] {
                out.push(|| {
                    let c = separation::momentum_equation_check("momentum", "Sepsl2", &s3, m, Var::k(1));
                    Check { name: format!("s3 m={m}"), ..c }
                });
            }
            out.push(|| {
                let c = separation::momentum_equation_check("momentum", "Sepsl2", &Scalar::int(2), 2, Var::k(1));
                Check { name: "constant solution".into(), ..c }
            });
        }
        Algebra::Sl3 => {
            for (name, base, k) in [("e11", Base::E11, 1), ("e22", Base::E22, 2)] {
                for m in [0, 1] {
                    out.push(|| {
                        let c = separation::momentum_equation_check("momentum", "Sepsl3", &p(base), m, Var::k(k));
                        Check { name: format!("{name} m={m}"), ..c }
                    });
                }
            }
        }
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, cx: &Context) -> Vec<(Check, u64)> {
    let mut out = Out::default();
    match suite {
        Suite::Rtt => rtt(cx, &mut out),
        Suite::Minors => minors(cx, &mut out),
        Suite::QdetCentral => qdet_central(cx, &mut out),
        Suite::Gauss => gauss(cx, &mut out),
        Suite::Prop1Sl2 => prop1_sl2(cx, &mut out),
        Suite::Prop2Sl3B => prop2_sl3_b(cx, &mut out),
        Suite::Intertwiners => intertwiners_suite(cx, &mut out),
        Suite::ROps => r_ops(cx, &mut out),
        Suite::WChain => w_chain(cx, &mut out),
        Suite::EigenSl2 => eigen_sl2(cx, &mut out),
        Suite::EigenSl3N1 => eigen_sl3_n1(cx, &mut out),
        Suite::EigenSl3 => eigen_sl3(cx, &mut out),
        Suite::Separation => separation_suite(cx, &mut out),
        Suite::Momentum => momentum(cx, &mut out),
    }
    out.checks
}

pub fn header(cfg: &SuiteConfig) -> Header {
    Header {
        schema: SCHEMA.into(),
        version: SCHEMA_VERSION,
        algebra: cfg.algebra.algebra().to_string(),
        n: cfg.n,
        seed: cfg.oracle.seed,
        suites: cfg.suites.clone(),
    }
}

/// Runs every configured suite on up to `jobs` threads. Records are written
/// in config order by the calling thread as soon as they are available.
pub fn run_suites_to<W: Write>(cfg: &SuiteConfig, jobs: usize, sink: W) -> Result<(Report, W), RunError> {
    cfg.validate()?;
    let cx = Context::from_config(cfg)?;
    let suites = cfg.suite_list()?;
    let header = header(cfg);
    let mut writer = ReportWriter::new(sink, &header)?;
    let mut records = Vec::new();
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Vec<Record>)>();
    std::thread::scope(|s| -> Result<(), RunError> {
        for _ in 0..jobs.max(1).min(suites.len().max(1)) {
            let tx = tx.clone();
            let (cx, suites, next) = (&cx, &suites, &next);
            s.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(&suite) = suites.get(i) else { break };
                let recs = run_suite(suite, cx).iter().map(|(c, ms)| Record::from_check(suite.name(), c, *ms)).collect();
                if tx.send((i, recs)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut emit = 0;
        for (i, recs) in rx {
            pending.insert(i, recs);
            while let Some(recs) = pending.remove(&emit) {
                for r in &recs {
                    writer.write(r)?;
                }
                records.extend(recs);
                emit += 1;
            }
        }
        Ok(())
    })?;
    Ok((Report { header, records }, writer.into_inner()))
}

pub fn run_suites(cfg: &SuiteConfig, jobs: usize) -> Result<Report, RunError> {
    run_suites_to(cfg, jobs, std::io::sink()).map(|(r, _)| r)
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("writing the report: {0}")]
    Io(#[from] std::io::Error),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AlgebraName;

    #[test]
    fn empty_suite_list_gives_an_empty_passing_report() {
        let r = run_suites(&SuiteConfig::new(AlgebraName::Sl2, 1), 2).unwrap();
        assert!(r.records.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        let mut cfg = SuiteConfig::new(AlgebraName::Sl2, 1);
        cfg.suites = vec!["rtt".into(), "nope".into()];
        assert!(matches!(run_suites(&cfg, 1), Err(RunError::Config(ConfigError::UnknownSuite(_)))));
    }

    #[test]
    fn records_follow_config_order() {
        let mut cfg = SuiteConfig::new(AlgebraName::Sl2, 1);
        cfg.suites = vec!["momentum".into(), "gauss".into(), "rtt".into()];
        let r = run_suites(&cfg, 3).unwrap();
        let order: Vec<&str> = r.records.iter().map(|r| r.suite.as_str()).collect();
        let mut dedup = order.clone();
        dedup.dedup();
        assert_eq!(dedup, ["momentum", "gauss", "rtt"]);
    }
}
