//! Eigenfunctions of the B-operator: Λ-chains, the intertwiner W(U, V),
//! seeds, the Ω transform and the end-to-end pipelines.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::check::{Check, Outcome};
use crate::error::{Error, Result};
use crate::frac::{const_poly, var_poly, Frac, VarPoly};
use crate::intertwiners::{Condition, Mode, OpProgram, Walker};
use crate::lattice::{specialize, LatticeAssignment, Solver};
use crate::lax::{global_entry, lax, Algebra, ParamMatrix, SiteParams};
use crate::scalar::{Bindings, Scalar};
use crate::symbols::{Base, Param, ParamKind, Var};
use crate::twisted::{Mobius, TwistedFunction};
use crate::weyl::OpMatrix;

fn spectral(u: &ParamMatrix) -> Scalar {
    Scalar::param(u.spectral)
}

/// Rejects entries that are not `u + shift`.
fn check_linear(u: &ParamMatrix, v: &Scalar) -> Result<()> {
    match v.affine_in(u.spectral) {
        Some((a, b)) if a.is_one() && !b.contains(u.spectral) => Ok(()),
        _ => Err(Error::InvalidParams(alloc::format!(
            "new parameter {v} must be {} plus a constant shift",
            u.spectral
        ))),
    }
}

/// Relabels the lowest row at position 0 to `v` and moves it to position
/// `stop` with R-operators.
pub fn lambda_on(w: &mut Walker, v: &Scalar, stop: usize) -> Result<()> {
    let low = w.current.algebra.rank();
    w.relabel(0, low, v.clone())?;
    for pos in 0..stop {
        w.r(pos)?;
    }
    Ok(())
}

/// `R_{N,N−1} ⋯ R_{21}` acting on the matrix with `v` in the lowest row of
/// the leftmost column; `v` ends up at site 1.
pub fn lambda_chain(u: &ParamMatrix, v: &Scalar, mode: Mode) -> Result<Walker> {
    check_linear(u, v)?;
    let mut start = u.clone();
    start.replace(0, u.algebra.rank(), v.clone());
    start.log.clear();
    let mut w = Walker::new(start, mode);
    for pos in 0..u.len() - 1 {
        w.r(pos)?;
    }
    Ok(w)
}

/// New parameters for [`build_w`].
#[derive(Clone, Debug)]
pub enum WTarget {
    /// sl2: `v_1, …, v_{N−1}`.
    Sl2(Vec<Scalar>),
    /// sl3: `v_{1k}` and `v_{2k}` indexed by site `k = 1..N`.
    Sl3(Vec<Scalar>, Vec<Scalar>),
}

impl WTarget {
    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let sub = |vs: &[Scalar]| vs.iter().map(|v| v.substitute(b)).collect::<Result<Vec<_>>>();
        Ok(match self {
            WTarget::Sl2(vs) => WTarget::Sl2(sub(vs)?),
            WTarget::Sl3(a, c) => WTarget::Sl3(sub(a)?, sub(c)?),
        })
    }
}

/// Walks `W(U, V)`; the final matrix of the walker is `V`.
pub fn build_w(u: &ParamMatrix, target: &WTarget, mode: Mode) -> Result<Walker> {
    let n = u.len();
    let mut w = Walker::new(u.clone(), mode);
    match (u.algebra, target) {
        (Algebra::Sl2, WTarget::Sl2(vs)) => {
            if vs.len() + 1 != n {
                return Err(Error::InvalidParams(alloc::format!("sl2 chain of {n} sites needs {} new parameters", n - 1)));
            }
            for (j, v) in vs.iter().enumerate() {
                check_linear(u, v)?;
                lambda_on(&mut w, v, n - 1 - j)?;
            }
        }
        (Algebra::Sl3, WTarget::Sl3(v1, v2)) => {
            if v1.len() != n || v2.len() != n {
                return Err(Error::InvalidParams(alloc::format!("sl3 chain of {n} sites needs {n} parameters per row")));
            }
            for v in v1.iter().chain(v2) {
                check_linear(u, v)?;
            }
            // W(U, V1): v_{1j} lands in the first row at site j.
            for (j, v) in v1.iter().enumerate() {
                let pos = n - 1 - j;
                lambda_on(&mut w, v, pos)?;
                w.s2(pos)?.s1(pos)?;
            }
            // W(V1, V): v_{2j} lands in the second row.
            for (j, v) in v2.iter().enumerate() {
                let pos = n - 1 - j;
                lambda_on(&mut w, v, pos)?;
                w.s2(pos)?;
            }
        }
        _ => return Err(Error::InvalidParams("target does not match the algebra".into())),
    }
    Ok(w)
}

/// `T^i_j f` for every row `i`, applying one L-operator at a time.
pub fn apply_column(u: &ParamMatrix, j: usize, f: &TwistedFunction) -> Result<Vec<TwistedFunction>> {
    let n = u.algebra.rank();
    let mut cur: Vec<TwistedFunction> = Vec::with_capacity(n);
    let last = lax(&u.columns[u.len() - 1])?;
    for a in 1..=n {
        cur.push(f.apply(last.at(a, j))?);
    }
    for c in u.columns[..u.len() - 1].iter().rev() {
        let l = lax(c)?;
        cur = apply_matrix(&l, &cur)?;
    }
    Ok(cur)
}

/// `M · (f_1, …, f_n)` for an operator matrix `M`.
pub fn apply_matrix(m: &OpMatrix, fs: &[TwistedFunction]) -> Result<Vec<TwistedFunction>> {
    let mut out = Vec::with_capacity(m.rows());
    for a in 1..=m.rows() {
        let mut s = TwistedFunction::zero();
        for (b, f) in fs.iter().enumerate() {
            let e = m.at(a, b + 1);
            if e.is_zero() || f.is_zero() {
                continue;
            }
            s = s.add(&f.apply(e)?)?;
        }
        out.push(s);
    }
    Ok(out)
}

/// `B(U) f` without expanding `B`.
pub fn apply_b(u: &ParamMatrix, f: &TwistedFunction) -> Result<TwistedFunction> {
    match u.algebra {
        Algebra::Sl2 => Ok(apply_column(u, 2, f)?.swap_remove(0)),
        Algebra::Sl3 => {
            let (m1, m2) = b_column(u, f)?;
            let a = apply_column(u, 3, &m1)?;
            let b = apply_column(u, 3, &m2)?;
            a[0].add(&b[1])
        }
    }
}

/// The column `(T^{12}_{13}(u+1), T^{12}_{23}(u+1))` of the sl3 B-operator
/// applied to `f`.
pub fn b_column(u: &ParamMatrix, f: &TwistedFunction) -> Result<(TwistedFunction, TwistedFunction)> {
    let mut b = Bindings::new();
    b.insert(u.spectral, spectral(u).add(&Scalar::one()));
    let up = u.substitute(&b)?;
    let g = apply_column(&up, 3, f)?;
    let c1 = g[1].clone();
    let c2 = g[0].scale(&Scalar::int(-1));
    let a1 = apply_column(u, 1, &c1)?;
    let a2 = apply_column(u, 1, &c2)?;
    let b1 = apply_column(u, 2, &c1)?;
    let b2 = apply_column(u, 2, &c2)?;
    Ok((a1[0].add(&a2[1])?, b1[0].add(&b2[1])?))
}

fn eigen_check(name: &str, anchor: &str, lhs: &TwistedFunction, psi: &TwistedFunction, expected: &Scalar) -> Check {
    Check::run(name, anchor, || {
        let got = lhs.is_scalar_multiple(psi)?;
        Ok(match got {
            Some(c) if c.sub(expected).is_zero() => Outcome::Pass,
            Some(c) => Outcome::fail(alloc::format!("eigenvalue {c}, expected {expected}")),
            None => Outcome::fail("result is not proportional to the function"),
        })
    })
}

fn function_check(name: &str, anchor: &str, lhs: &TwistedFunction, rhs: &TwistedFunction) -> Check {
    Check::run(name, anchor, || {
        let ok = lhs.equals(rhs)?;
        Ok(Outcome::from_bool(ok, || alloc::format!("lhs = {lhs} ; rhs = {rhs}")))
    })
}

/// `exp(i p x_site)`.
pub fn seed_sl2(p: &Scalar, site: usize) -> TwistedFunction {
    TwistedFunction::exp(Frac::poly(var_poly(Var::x(site)).scale(&Scalar::i().mul(p))))
}

/// `exp(i p1 (y_1 − x_1 z_1) + i p2 z_1)`.
pub fn sl3_prefactor(p1: &Scalar, p2: &Scalar) -> TwistedFunction {
    let (x, y, z) = (var_poly(Var::x(1)), var_poly(Var::y(1)), var_poly(Var::z(1)));
    let g = y.sub(&x.mul(&z)).scale(&Scalar::i().mul(p1)).add(&z.scale(&Scalar::i().mul(p2)));
    TwistedFunction::exp(Frac::poly(g))
}

/// `Ω f` on an sl2 chain: `x_k ↦ (x_k/p2)/(p2 − p1 x_k)` with cofactor
/// `∏ [p2 − p1 x_k]^{u_{2k} − u_{1k} − 1}`.
pub fn omega(inner: &ParamMatrix, p1: &Scalar, p2: &Scalar, f: &TwistedFunction) -> Result<TwistedFunction> {
    if p2.is_zero() {
        return Err(Error::Degenerate("omega needs p2 != 0".into()));
    }
    let inv = p2.inv().ok_or(Error::DivisionByZero)?;
    let mut maps = Vec::new();
    let mut cof = TwistedFunction::one();
    for c in &inner.columns {
        let x = Var::x(c.site);
        maps.push(Mobius::new(x, inv.clone(), Scalar::zero(), p1.neg(), p2.clone()));
        let form = omega_form(c.site, p1, p2);
        cof = cof.multiply_power(&form, &c.u(2).sub(c.u(1)).sub(&Scalar::one()))?;
    }
    f.mobius_substitute(&maps, &cof)
}

fn omega_form(site: usize, p1: &Scalar, p2: &Scalar) -> VarPoly {
    const_poly(p2.clone()).sub(&var_poly(Var::x(site)).scale(p1))
}

/// `b̃ f = (p2, −p1) M (p1, p2)^T f` for the sl2 monodromy `M`.
pub fn apply_b_tilde(inner: &ParamMatrix, p1: &Scalar, p2: &Scalar, f: &TwistedFunction) -> Result<TwistedFunction> {
    let c1 = apply_column(inner, 1, f)?;
    let c2 = apply_column(inner, 2, f)?;
    let pp = p1.mul(p2);
    c1[0]
        .scale(&pp)
        .add(&c2[0].scale(&p2.mul(p2)))?
        .add(&c1[1].scale(&p1.mul(p1).neg()))?
        .add(&c2[1].scale(&pp.neg()))
}

/// `Ω (b f) = b̃ (Ω f)` on each panel function.
pub fn check_omega_covariance(inner: &ParamMatrix, p1: &Scalar, p2: &Scalar, panel: &[TwistedFunction]) -> Check {
    Check::run("omega-covariance", "Omega", || {
        for (i, f) in panel.iter().enumerate() {
            let lhs = omega(inner, p1, p2, &apply_b(inner, f)?)?;
            let rhs = apply_b_tilde(inner, p1, p2, &omega(inner, p1, p2, f)?)?;
            if !lhs.equals(&rhs)? {
                return Ok(Outcome::fail(alloc::format!("panel function {i}: {lhs} != {rhs}")));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// A constructed eigenfunction with its stage checks.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub function: TwistedFunction,
    /// Expected eigenvalue of `B(u)`.
    pub eigenvalue: Scalar,
    pub assignment: LatticeAssignment,
    /// The parameter matrix after lattice bindings.
    pub params: ParamMatrix,
    pub program: OpProgram,
    pub checks: Vec<Check>,
}

impl Eigen {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

fn root(base: Base, i: usize) -> Param {
    Param::idx(base, i)
}

fn distinct(exprs: &[Scalar]) -> bool {
    for i in 0..exprs.len() {
        for j in i + 1..exprs.len() {
            if exprs[i].sub(&exprs[j]).is_zero() {
                return false;
            }
        }
    }
    true
}

fn bound(b: &Bindings, p: Param) -> Result<Scalar> {
    Scalar::param(p).substitute(b)
}

/// Whether the program kills `exp(Σ c_j v_j)` for distinct rationals `c_j`.
/// Lattice points where this happens give a zero eigenfunction.
fn annihilates(program: &OpProgram, vars: &[Var]) -> bool {
    let mut g = VarPoly::zero();
    for (j, v) in vars.iter().enumerate() {
        g = g.add(&var_poly(*v).scale(&Scalar::ratio(j as i64 + 2, 3)));
    }
    match program.apply(&TwistedFunction::exp(Frac::poly(g))) {
        Ok(f) => f.is_zero(),
        Err(_) => true,
    }
}

/// Program of `W(U, V)` at the bindings, if every factor is on the lattice.
fn bound_program(u: &ParamMatrix, target: &WTarget, b: &Bindings) -> Option<OpProgram> {
    let u = u.substitute(b).ok()?;
    let t = target.substitute(b).ok()?;
    build_w(&u, &t, Mode::Strict).ok().map(|w| w.finish())
}

/// Setup of an sl2 eigenfunction problem.
#[derive(Clone, Debug)]
pub struct Sl2Problem {
    pub u: ParamMatrix,
    pub p: Scalar,
    pub solver: Solver,
    /// Bindings applied before the search.
    pub start: Bindings,
}

impl Sl2Problem {
    pub fn new(u: ParamMatrix) -> Self {
        Sl2Problem { u, p: Scalar::param(Param::plain(Base::P)), solver: Solver::default(), start: Bindings::new() }
    }

    pub fn roots(&self) -> Vec<Param> {
        (1..self.u.len()).map(|j| root(Base::Q, j)).collect()
    }

    fn target(&self) -> WTarget {
        let u = spectral(&self.u);
        WTarget::Sl2(self.roots().into_iter().map(|q| u.sub(&Scalar::param(q))).collect())
    }

    /// Intertwiner conditions of `W(U, V)`.
    pub fn conditions(&self) -> Result<Vec<Condition>> {
        Ok(build_w(&self.u, &self.target(), Mode::Collect)?.conditions)
    }

    pub fn solve(&self) -> Result<LatticeAssignment> {
        let conds = self.conditions()?;
        let roots = self.roots();
        let target = self.target();
        let seed_var = [Var::x(self.u.columns[0].site)];
        self.solver.solve(&conds, &self.start, &|b| {
            let e: Vec<Scalar> = roots.iter().filter_map(|q| bound(b, *q).ok()).collect();
            distinct(&e)
                && bound_program(&self.u, &target, b).is_some_and(|p| !annihilates(&p, &seed_var))
        })
    }
}

/// Builds `Ψ = W(U, V) exp(i p x_N)` at the given lattice point and checks
/// the seed, the final eigenvalue and the `S−` eigenvalue.
pub fn eigenfunction_sl2(pb: &Sl2Problem, lat: &LatticeAssignment) -> Result<Eigen> {
    if pb.u.algebra != Algebra::Sl2 {
        return Err(Error::InvalidParams("sl2 pipeline needs an sl2 chain".into()));
    }
    let b = &lat.bindings;
    let u = pb.u.substitute(b)?;
    let p = pb.p.substitute(b)?;
    let target = pb.target().substitute(b)?;
    let w = build_w(&u, &target, Mode::Strict)?;
    let v = w.current.clone();
    let program = w.finish();
    let seed = seed_sl2(&p, u.columns[0].site);
    let mut checks = Vec::new();

    let mut seed_val = Scalar::i().mul(&p).neg();
    if let WTarget::Sl2(vs) = &target {
        for x in vs {
            seed_val = seed_val.mul(x);
        }
    }
    checks.push(eigen_check("seed", "want", &apply_b(&v, &seed)?, &seed, &seed_val));

    let psi = program.apply(&seed)?;
    let mut expected = Scalar::i().mul(&p).neg();
    for q in pb.roots() {
        expected = expected.mul(&spectral(&u).sub(&bound(b, q)?));
    }
    checks.push(eigen_check("eigenvalue", "Psipdef", &apply_b(&u, &psi)?, &psi, &expected));
    let s_minus = global_entry(&u, 1, 2)?;
    checks.push(eigen_check("s-minus", "asympt", &psi.apply(&s_minus)?, &psi, &Scalar::i().mul(&p).neg()));
    Ok(Eigen { function: psi, eigenvalue: expected, assignment: lat.clone(), params: u, program, checks })
}

/// `A(q_i) Ψ(q)` against `Ψ(q + e_i)`; the proportionality factor goes into
/// the note. With `offset` nonzero `A` is evaluated at `q_i + offset`.
pub fn check_shift_property(pb: &Sl2Problem, lat: &LatticeAssignment, i: usize, offset: &Scalar) -> Check {
    let name = if offset.is_zero() { "shift" } else { "shift-off-root" };
    let mut note = None;
    let mut c = Check::run(name, "Aaction", || {
        if pb.u.len() < 2 {
            return Ok(Outcome::Pass);
        }
        let q = root(Base::Q, i);
        let here = eigenfunction_sl2(pb, lat)?;
        let qv = bound(&lat.bindings, q)?;
        let mut start = lat.bindings.clone();
        start.insert(q, qv.add(&Scalar::one()));
        let shifted = Sl2Problem { start, ..pb.clone() }.solve()?;
        let there = eigenfunction_sl2(pb, &shifted)?;
        let mut at = Bindings::new();
        at.insert(here.params.spectral, qv.add(offset));
        let uq = here.params.substitute(&at)?;
        let a_psi = apply_column(&uq, 1, &here.function)?.swap_remove(0);
        Ok(match a_psi.is_scalar_multiple(&there.function)? {
            Some(k) if !k.is_zero() => {
                note = Some(alloc::format!("A(q_{i}) Psi(q) = ({k}) Psi(q + e_{i})"));
                Outcome::Pass
            }
            Some(_) => Outcome::fail("A(q) annihilates the eigenfunction"),
            None => Outcome::fail("A(q) Psi(q) is not proportional to Psi(q + e_i)"),
        })
    });
    if let Some(n) = note {
        c = c.with_note(n);
    }
    c
}

/// The one-site closed form
/// `[p2 − p1 x]^{u2 − u1 − 1} exp(i p1 (y − x z) + i p2 z + i p x/(p2 (p2 − p1 x)))`
/// with its three eigenvalue checks.
pub fn eigenfunction_sl3_n1(u: &ParamMatrix, p1: &Scalar, p2: &Scalar, p: &Scalar) -> Result<Eigen> {
    if u.algebra != Algebra::Sl3 || u.len() != 1 {
        return Err(Error::InvalidParams("closed form needs a one-site sl3 chain".into()));
    }
    let c = &u.columns[0];
    let inner = sl2_site(c, 1, &Scalar::zero())?;
    let phi = seed_sl2(p, c.site);
    let psi = sl3_prefactor(p1, p2).multiply(&omega(&ParamMatrix::new(Algebra::Sl2, alloc::vec![inner])?, p1, p2, &phi)?)?;
    let expected = Scalar::i().mul(p);
    let checks = sl3_checks(u, &psi, &expected, p1, p2)?;
    Ok(Eigen {
        function: psi,
        eigenvalue: expected,
        assignment: LatticeAssignment::default(),
        params: u.clone(),
        program: OpProgram::identity(),
        checks,
    })
}

fn sl3_checks(u: &ParamMatrix, psi: &TwistedFunction, expected: &Scalar, p1: &Scalar, p2: &Scalar) -> Result<Vec<Check>> {
    let e31 = global_entry(u, 1, 3)?;
    let e32 = global_entry(u, 2, 3)?;
    Ok(alloc::vec![
        eigen_check("eigenvalue", "final", &apply_b(u, psi)?, psi, expected),
        eigen_check("e31", "Psisl3", &psi.apply(&e31)?, psi, &Scalar::i().mul(p1).neg()),
        eigen_check("e32", "Psisl3", &psi.apply(&e32)?, psi, &Scalar::i().mul(p2).neg()),
    ])
}

/// sl2 parameters `(u_1 + shift, u_2 + shift)` of an sl3 column.
fn sl2_site(c: &SiteParams, site: usize, shift: &Scalar) -> Result<SiteParams> {
    Ok(SiteParams {
        algebra: Algebra::Sl2,
        site,
        entries: alloc::vec![c.u(1).add(shift), c.u(2).add(shift)],
    })
}

/// Setup of an sl3 eigenfunction problem with `N ≥ 2` sites.
///
/// The new parameters are `v_{1k} = u − 2 − r_{k−1}`, `v_{2k} = u − 2 − s_{k−1}`
/// for `k ≥ 2`, and `v_{11} = u + w_1`, `v_{21} = u + w_2` at site 1, which
/// drop out of the eigenvalue.
#[derive(Clone, Debug)]
pub struct Sl3Problem {
    pub u: ParamMatrix,
    pub p1: Scalar,
    pub p2: Scalar,
    pub p: Scalar,
    pub solver: Solver,
    pub start: Bindings,
    /// Bind every remaining non-momentum parameter to a rational.
    pub specialize: bool,
}

impl Sl3Problem {
    pub fn new(u: ParamMatrix) -> Self {
        Sl3Problem {
            u,
            p1: Scalar::param(Param::plain(Base::P1)),
            p2: Scalar::param(Param::plain(Base::P2)),
            p: Scalar::param(Param::plain(Base::P)),
            solver: Solver::default(),
            start: Bindings::new(),
            specialize: true,
        }
    }

    fn n(&self) -> usize {
        self.u.len()
    }

    fn new_rows(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let u = spectral(&self.u);
        let two = Scalar::int(2);
        let mut v1 = alloc::vec![u.add(&Scalar::param(Param::idx(Base::W, 1)))];
        let mut v2 = alloc::vec![u.add(&Scalar::param(Param::idx(Base::W, 2)))];
        for k in 2..=self.n() {
            v1.push(u.sub(&two).sub(&Scalar::param(root(Base::R, k - 1))));
            v2.push(u.sub(&two).sub(&Scalar::param(root(Base::S, k - 1))));
        }
        (v1, v2)
    }

    /// Root symbols `q_i, r_i, s_i`, `i = 1..N−1`.
    pub fn roots(&self) -> Vec<Param> {
        let mut out = Vec::new();
        for i in 1..self.n() {
            out.push(root(Base::Q, i));
            out.push(root(Base::R, i));
            out.push(root(Base::S, i));
        }
        out
    }

    /// The inner sl2 chain: sites `1, N, …, 2` from the left with entries
    /// `v_{1k} + 1, v_{2k} + 1`.
    pub fn inner_chain(&self, v1: &[Scalar], v2: &[Scalar]) -> Result<ParamMatrix> {
        let mut order = alloc::vec![1];
        order.extend((2..=self.n()).rev());
        let one = Scalar::one();
        let cols = order
            .into_iter()
            .map(|k| SiteParams {
                algebra: Algebra::Sl2,
                site: k,
                entries: alloc::vec![v1[k - 1].add(&one), v2[k - 1].add(&one)],
            })
            .collect();
        ParamMatrix::new(Algebra::Sl2, cols)
    }

    fn inner_target(&self) -> WTarget {
        let u = spectral(&self.u);
        WTarget::Sl2((1..self.n()).map(|j| u.sub(&Scalar::param(root(Base::Q, j)))).collect())
    }

    /// The `q` are distinct from each other and from every `r`, `s`, and the
    /// `r` (resp. `s`) are distinct among themselves. `r_i = s_i` is allowed:
    /// on the integer lattice a nonvanishing `Ψ` at two sites forces it.
    fn roots_ok(&self, b: &Bindings) -> bool {
        let get = |base| -> Vec<Scalar> { (1..self.n()).filter_map(|i| bound(b, root(base, i)).ok()).collect() };
        let (q, r, s) = (get(Base::Q), get(Base::R), get(Base::S));
        let qr: Vec<Scalar> = q.iter().chain(&r).cloned().collect();
        let qs: Vec<Scalar> = q.iter().chain(&s).cloned().collect();
        distinct(&qr) && distinct(&qs)
    }

    pub fn conditions(&self) -> Result<Vec<Condition>> {
        let (v1, v2) = self.new_rows();
        let mut conds = build_w(&self.u, &WTarget::Sl3(v1.clone(), v2.clone()), Mode::Collect)?.conditions;
        let inner = self.inner_chain(&v1, &v2)?;
        conds.extend(build_w(&inner, &self.inner_target(), Mode::Collect)?.conditions);
        Ok(conds)
    }

    pub fn solve(&self) -> Result<LatticeAssignment> {
        let conds = self.conditions()?;
        let roots = self.roots();
        let (v1, v2) = self.new_rows();
        let outer = WTarget::Sl3(v1.clone(), v2.clone());
        let inner = self.inner_chain(&v1, &v2)?;
        let inner_target = self.inner_target();
        let mut outer_vars = alloc::vec![Var::x(1), Var::y(1), Var::z(1)];
        outer_vars.extend((2..=self.n()).map(Var::x));
        let mut lat = self.solver.solve(&conds, &self.start, &|b| {
            self.roots_ok(b)
                && bound_program(&inner, &inner_target, b).is_some_and(|p| !annihilates(&p, &[Var::x(1)]))
                && bound_program(&self.u, &outer, b).is_some_and(|p| !annihilates(&p, &outer_vars))
        })?;
        if self.specialize {
            let mut free: Vec<Param> = Vec::new();
            for c in &conds {
                free.extend(c.arg.substitute(&lat.bindings)?.params());
            }
            for col in &self.u.columns {
                for e in &col.entries {
                    free.extend(e.substitute(&lat.bindings)?.params());
                }
            }
            for r in &roots {
                free.extend(bound(&lat.bindings, *r)?.params());
            }
            free.push(Param::idx(Base::W, 1));
            free.push(Param::idx(Base::W, 2));
            free.sort();
            free.dedup();
            let spec = specialize(&free, &|p| {
                matches!(p.kind(), ParamKind::Spectral | ParamKind::Momentum) || lat.bindings.contains_key(&p)
            });
            let mut b = Bindings::new();
            for (k, v) in &lat.bindings {
                b.insert(*k, v.substitute(&spec)?);
            }
            b.extend(spec);
            if !self.roots_ok(&b) {
                return Err(Error::OffLattice("specialized roots coincide".into()));
            }
            lat.bindings = b;
        }
        Ok(lat)
    }
}

/// `Ψ = W(U, V) · exp(i p1 (y_1 − x_1 z_1) + i p2 z_1) · Ω φ` with staged
/// checks of every reduction step.
pub fn eigenfunction_sl3(pb: &Sl3Problem, lat: &LatticeAssignment) -> Result<Eigen> {
    if pb.u.algebra != Algebra::Sl3 || pb.n() < 2 {
        return Err(Error::InvalidParams("sl3 pipeline needs an sl3 chain with at least two sites".into()));
    }
    let b = &lat.bindings;
    let u = pb.u.substitute(b)?;
    let (p1, p2, p) = (pb.p1.substitute(b)?, pb.p2.substitute(b)?, pb.p.substitute(b)?);
    let (v1, v2) = pb.new_rows();
    let v1: Vec<Scalar> = v1.iter().map(|x| x.substitute(b)).collect::<Result<_>>()?;
    let v2: Vec<Scalar> = v2.iter().map(|x| x.substitute(b)).collect::<Result<_>>()?;
    let w = build_w(&u, &WTarget::Sl3(v1.clone(), v2.clone()), Mode::Strict)?;
    let v = w.current.clone();
    let program = w.finish();

    let inner_u = pb.inner_chain(&v1, &v2)?;
    let inner_target = pb.inner_target().substitute(b)?;
    let iw = build_w(&inner_u, &inner_target, Mode::Strict)?;
    let inner_program = iw.finish();
    let uu = spectral(&u);
    let mut checks = Vec::new();

    // Inner sl2 eigenfunction.
    let phi = inner_program.apply(&seed_sl2(&p, 1))?;
    let mut inner_val = Scalar::i().mul(&p).neg();
    for j in 1..pb.n() {
        inner_val = inner_val.mul(&uu.sub(&bound(b, root(Base::Q, j))?));
    }
    checks.push(eigen_check("inner-eigenvalue", "final", &apply_b(&inner_u, &phi)?, &phi, &inner_val));

    // Ω covariance on φ and a small panel.
    let omega_phi = omega(&inner_u, &p1, &p2, &phi)?;
    let mut panel = alloc::vec![phi.clone()];
    panel.extend(function_panel(&inner_u, 2, 0x5eed));
    checks.push(check_omega_covariance(&inner_u, &p1, &p2, &panel));

    let pre = sl3_prefactor(&p1, &p2);
    let psi_v = pre.multiply(&omega_phi)?;
    let two = Scalar::int(2);
    let mut prod = Scalar::one();
    for k in 2..=pb.n() {
        prod = prod.mul(&v1[k - 1].add(&two)).mul(&v2[k - 1].add(&two));
    }

    // Column of quantum minors against the one-site formula.
    let (m1, m2) = b_column(&v, &psi_v)?;
    let site1 = sl2_site(&SiteParams { algebra: Algebra::Sl3, site: 1, entries: alloc::vec![v1[0].clone(), v2[0].clone(), Scalar::zero()] }, 1, &Scalar::one())?;
    let l1 = crate::lax::lax_sl2(&site1)?;
    let ip1 = Scalar::i().mul(&p1);
    let ip2 = Scalar::i().mul(&p2);
    // The one-site matrix acts transposed: rows (a, c) and (b, d).
    let lt = transpose(&l1)?;
    let r = apply_matrix(&lt, &[omega_phi.scale(&ip2.neg()), omega_phi.scale(&ip1)])?;
    let r0 = pre.multiply(&r[0])?.scale(&prod);
    let r1 = pre.multiply(&r[1])?.scale(&prod);
    checks.push(Check::run("minor-column", "act1", || {
        let ok = m1.equals(&r0)? && m2.equals(&r1)?;
        Ok(Outcome::from_bool(ok, || alloc::format!("first: {m1} vs {r0}; second: {m2} vs {r1}")))
    }));

    // Third column of T(V) against the product over sites 2..N.
    let col = apply_column(&v, 3, &psi_v)?;
    let mut vec = alloc::vec![omega_phi.scale(&ip1.neg()), omega_phi.scale(&ip2.neg())];
    for k in 2..=pb.n() {
        let s = SiteParams { algebra: Algebra::Sl2, site: k, entries: alloc::vec![v1[k - 1].add(&Scalar::one()), v2[k - 1].add(&Scalar::one())] };
        vec = apply_matrix(&crate::lax::lax_sl2(&s)?, &vec)?;
    }
    let e0 = pre.multiply(&vec[0])?;
    let e1 = pre.multiply(&vec[1])?;
    checks.push(Check::run("third-column", "act2", || {
        let ok = col[0].equals(&e0)? && col[1].equals(&e1)?;
        Ok(Outcome::from_bool(ok, || alloc::format!("T13: {} vs {e0}; T23: {} vs {e1}", col[0], col[1])))
    }));

    // B(V) through b̃.
    let bv = apply_b(&v, &psi_v)?;
    let reduced = pre.multiply(&apply_b_tilde(&inner_u, &p1, &p2, &omega_phi)?)?.scale(&prod.neg());
    checks.push(function_check("reduction", "Bact", &bv, &reduced));

    let v_val = Scalar::i().mul(&p).mul(&prod).mul(&inner_val.div(&Scalar::i().mul(&p).neg())?);
    checks.push(eigen_check("reduced-eigenvalue", "Bact", &bv, &psi_v, &v_val));

    let psi = program.apply(&psi_v)?;
    let mut expected = Scalar::i().mul(&p);
    for q in pb.roots() {
        expected = expected.mul(&uu.sub(&bound(b, q)?));
    }
    checks.extend(sl3_checks(&u, &psi, &expected, &p1, &p2)?);
    Ok(Eigen { function: psi, eigenvalue: expected, assignment: lat.clone(), params: u, program, checks })
}

fn transpose(m: &OpMatrix) -> Result<OpMatrix> {
    let rows = (1..=m.cols()).map(|j| (1..=m.rows()).map(|i| m.at(i, j).clone()).collect()).collect();
    OpMatrix::from_rows(rows)
}

/// Deterministic pseudo-random polynomials in the chain's `x` variables.
pub fn function_panel(u: &ParamMatrix, count: usize, seed: u64) -> Vec<TwistedFunction> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut p = VarPoly::zero();
        for _ in 0..3 {
            let mut t = const_poly(Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
            for c in &u.columns {
                let e = rng.gen_range(0..=2);
                for _ in 0..e {
                    t = t.mul(&var_poly(Var::x(c.site)));
                }
            }
            p = p.add(&t);
        }
        if p.is_zero() {
            p = const_poly(Scalar::one());
        }
        out.push(TwistedFunction::new(Frac::poly(p)));
    }
    out
}

/// Text summary of a stage list, e.g. for notes.
pub fn summary(checks: &[Check]) -> String {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.to_string()).collect();
    if failed.is_empty() {
        alloc::format!("{} stages passed", checks.len())
    } else {
        alloc::format!("failed stages: {}", failed.join(", "))
    }
}
