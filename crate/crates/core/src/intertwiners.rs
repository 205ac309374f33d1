//! Elementary parameter-permuting operators and programs built from them.
//!
//! A program is a product `F_1 F_2 ⋯ F_m` in operator order, so `F_m` acts
//! first on functions. Each factor records the parameter matrix before and
//! after it: `T(before) F = F T(after)`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::check::{Check, Outcome};
use crate::error::{Error, Result};
use crate::frac::{display_var_poly, var_poly, Frac, VarPoly};
use crate::lax::{b_operator, monodromy, Algebra, ParamMatrix};
use crate::scalar::{Bindings, Scalar};
use crate::symbols::Var;
use crate::twisted::TwistedFunction;
use crate::weyl::{Limits, Localization, OpMatrix, WeylElement};

#[derive(Clone, Debug)]
pub enum Action {
    /// `op^power`.
    Diff { op: WeylElement, power: u32 },
    /// Multiplication by `form^exponent`.
    Mul { form: VarPoly, exponent: Scalar },
    /// Replacement of a parameter the B-operator does not depend on.
    Relabel,
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub action: Action,
    pub tag: String,
    pub anchor: &'static str,
    pub before: ParamMatrix,
    pub after: ParamMatrix,
}

impl Factor {
    /// The factor as an operator, when it has one.
    pub fn operator(&self) -> Option<WeylElement> {
        match &self.action {
            Action::Diff { op, power } => Some(op.pow(*power)),
            Action::Mul { form, exponent } => {
                let n = exponent.as_integer()?;
                Frac::power(form, n).ok().map(WeylElement::frac)
            }
            Action::Relabel => Some(WeylElement::one()),
        }
    }

    pub fn apply(&self, f: &TwistedFunction) -> Result<TwistedFunction> {
        match &self.action {
            Action::Diff { op, power } => {
                let mut g = f.clone();
                for _ in 0..*power {
                    g = g.apply(op)?;
                }
                Ok(g)
            }
            Action::Mul { form, exponent } => f.multiply_power(form, exponent),
            Action::Relabel => Ok(f.clone()),
        }
    }
}

/// An ordered product of factors.
#[derive(Clone, Debug, Default)]
pub struct OpProgram {
    pub factors: Vec<Factor>,
}

impl OpProgram {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `self · o`.
    pub fn then(mut self, o: OpProgram) -> Self {
        self.factors.extend(o.factors);
        self
    }

    /// Acts on a function, rightmost factor first.
    pub fn apply(&self, f: &TwistedFunction) -> Result<TwistedFunction> {
        let mut g = f.clone();
        for fac in self.factors.iter().rev() {
            g = fac.apply(&g)?;
        }
        Ok(g)
    }

    /// The whole program as one operator when every factor has one.
    pub fn realize(&self, limits: &Limits) -> Result<Option<WeylElement>> {
        let mut w = WeylElement::one();
        for f in &self.factors {
            match f.operator() {
                Some(op) => w = w.mul_checked(&op, limits)?,
                None => return Ok(None),
            }
        }
        Ok(Some(w))
    }

    /// Localization containing every multiplication form of the program.
    pub fn localization(&self) -> Localization {
        let mut loc = Localization::new();
        for f in &self.factors {
            if let Action::Mul { form, .. } = &f.action {
                loc.register(form);
            }
        }
        loc
    }

    /// Parameter matrices at both ends.
    pub fn ends(&self) -> Option<(&ParamMatrix, &ParamMatrix)> {
        Some((&self.factors.first()?.before, &self.factors.last()?.after))
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        let mut out = self.clone();
        for f in out.factors.iter_mut() {
            f.before = f.before.substitute(b)?;
            f.after = f.after.substitute(b)?;
            if let Action::Mul { form, exponent } = &mut f.action {
                *form = crate::frac::subst_poly(form, b)?;
                *exponent = exponent.substitute(b)?;
            }
        }
        Ok(out)
    }

    /// Factor tags in operator order, e.g. `S1_2(1) · S_21(c_2_1 - c_1_2) · S1_2(0)`.
    pub fn to_text(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let tags: Vec<&str> = self.factors.iter().map(|f| f.tag.as_str()).collect();
        tags.join(" · ")
    }
}

/// How lattice conditions are treated while walking a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Off-lattice arguments are errors.
    Strict,
    /// Arguments are only recorded; the program is not meant to be applied.
    Collect,
}

/// A lattice condition met while walking: `arg` must be a nonnegative
/// integer.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub tag: String,
    pub arg: Scalar,
}

/// Builds programs by moving parameters of a [`ParamMatrix`].
#[derive(Clone, Debug)]
pub struct Walker {
    pub current: ParamMatrix,
    pub program: OpProgram,
    pub conditions: Vec<Condition>,
    pub mode: Mode,
}

/// `∂_{x_k}` (sl2) or `∂_{x_k} + z_k ∂_{y_k}` (sl3).
pub fn s1_generator(algebra: Algebra, site: usize) -> WeylElement {
    let dx = WeylElement::d(Var::x(site));
    match algebra {
        Algebra::Sl2 => dx,
        Algebra::Sl3 => dx.add(&WeylElement::var(Var::z(site)).mul(&WeylElement::d(Var::y(site)))),
    }
}

/// `∂_{z_k}`.
pub fn s2_generator(site: usize) -> WeylElement {
    WeylElement::d(Var::z(site))
}

/// The multiplication form of the cross operator between the column at the
/// left site and the one at the right site.
pub fn cross_form(algebra: Algebra, left: usize, right: usize) -> VarPoly {
    let dx = var_poly(Var::x(left)).sub(&var_poly(Var::x(right)));
    match algebra {
        Algebra::Sl2 => dx,
        Algebra::Sl3 => var_poly(Var::y(left))
            .sub(&var_poly(Var::y(right)))
            .sub(&var_poly(Var::z(right)).mul(&dx)),
    }
}

fn lattice_value(arg: &Scalar) -> Option<u32> {
    arg.as_integer().and_then(|n| u32::try_from(n).ok())
}

impl Walker {
    pub fn new(u: ParamMatrix, mode: Mode) -> Self {
        Walker { current: u, program: OpProgram::identity(), conditions: Vec::new(), mode }
    }

    fn spectral_free(&self, arg: &Scalar, what: &str) -> Result<()> {
        if arg.contains(self.current.spectral) {
            return Err(Error::InvalidParams(alloc::format!(
                "{what} argument {arg} depends on the spectral parameter"
            )));
        }
        Ok(())
    }

    fn push(&mut self, action: Action, tag: String, anchor: &'static str, before: ParamMatrix) {
        let after = self.current.clone();
        self.program.factors.push(Factor { action, tag, anchor, before, after });
    }

    fn within(&mut self, pos: usize, row: usize) -> Result<()> {
        let alg = self.current.algebra;
        if row == 2 && alg != Algebra::Sl3 {
            return Err(Error::InvalidParams("S2 exists only for sl3".into()));
        }
        let site = self.current.columns[pos].site;
        let arg = self.current.entry(row, pos).sub(self.current.entry(row + 1, pos));
        self.spectral_free(&arg, "intertwiner")?;
        let tag = alloc::format!("S{row}_{site}({arg})");
        self.conditions.push(Condition { tag: tag.clone(), arg: arg.clone() });
        let power = match (lattice_value(&arg), self.mode) {
            (Some(n), _) => n,
            (None, Mode::Collect) => 0,
            (None, Mode::Strict) => {
                return Err(Error::OffLattice(alloc::format!(
                    "{tag}: argument is not a nonnegative integer; integral realization out of scope"
                )))
            }
        };
        let op = if row == 1 { s1_generator(alg, site) } else { s2_generator(site) };
        let anchor = match alg {
            Algebra::Sl2 => "S1defsl2",
            Algebra::Sl3 => "S1sl3",
        };
        let before = self.current.clone();
        self.current.swap_within(pos, row, row + 1);
        self.push(Action::Diff { op, power }, tag, anchor, before);
        Ok(())
    }

    /// `S1` at chain position `pos`.
    pub fn s1(&mut self, pos: usize) -> Result<&mut Self> {
        self.within(pos, 1)?;
        Ok(self)
    }

    /// `S2` at chain position `pos` (sl3).
    pub fn s2(&mut self, pos: usize) -> Result<&mut Self> {
        self.within(pos, 2)?;
        Ok(self)
    }

    /// The cross operator between positions `pos` and `pos + 1`.
    pub fn cross(&mut self, pos: usize) -> Result<&mut Self> {
        let alg = self.current.algebra;
        let low = alg.rank();
        let (l, r) = (self.current.columns[pos].site, self.current.columns[pos + 1].site);
        let exponent = self.current.entry(low, pos + 1).sub(self.current.entry(1, pos));
        self.spectral_free(&exponent, "cross")?;
        let form = cross_form(alg, l, r);
        let tag = alloc::format!("S_{l}{r}({exponent})");
        let anchor = match alg {
            Algebra::Sl2 => "S2def",
            Algebra::Sl3 => "s3l",
        };
        let before = self.current.clone();
        self.current.swap_cross(pos, 1, low);
        self.push(Action::Mul { form, exponent }, tag, anchor, before);
        Ok(self)
    }

    /// The R-operator exchanging the lowest-row entries of positions `pos`
    /// and `pos + 1`.
    pub fn r(&mut self, pos: usize) -> Result<&mut Self> {
        match self.current.algebra {
            Algebra::Sl2 => {
                self.s1(pos)?.cross(pos)?.s1(pos)?;
            }
            Algebra::Sl3 => {
                self.s2(pos)?.s1(pos)?.cross(pos)?.s1(pos)?.s2(pos)?;
            }
        }
        Ok(self)
    }

    /// Replaces an entry the B-operator does not depend on.
    pub fn relabel(&mut self, pos: usize, row: usize, value: Scalar) -> Result<&mut Self> {
        let before = self.current.clone();
        let site = self.current.columns[pos].site;
        let old = self.current.entry(row, pos).clone();
        self.current.replace(pos, row, value.clone());
        let tag = alloc::format!("[u{row}_{site}: {old} -> {value}]");
        self.push(Action::Relabel, tag, "v", before);
        Ok(self)
    }

    pub fn finish(self) -> OpProgram {
        self.program
    }
}

/// `S1` at position `pos` as a one-factor program.
pub fn s1_lattice(u: &ParamMatrix, pos: usize) -> Result<OpProgram> {
    let mut w = Walker::new(u.clone(), Mode::Strict);
    w.s1(pos)?;
    Ok(w.finish())
}

/// `S2` at position `pos` as a one-factor program (sl3).
pub fn s2_lattice(u: &ParamMatrix, pos: usize) -> Result<OpProgram> {
    let mut w = Walker::new(u.clone(), Mode::Strict);
    w.s2(pos)?;
    Ok(w.finish())
}

/// The cross multiplication operator between positions `pos`, `pos + 1`.
pub fn s_cross(u: &ParamMatrix, pos: usize) -> Result<OpProgram> {
    let mut w = Walker::new(u.clone(), Mode::Strict);
    w.cross(pos)?;
    Ok(w.finish())
}

/// The R-operator at positions `pos`, `pos + 1`.
pub fn r_operator(u: &ParamMatrix, pos: usize) -> Result<OpProgram> {
    let mut w = Walker::new(u.clone(), Mode::Strict);
    w.r(pos)?;
    Ok(w.finish())
}

/// Which objects a chain check compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Monodromy,
    B,
}

fn first_mismatch(lhs: &OpMatrix, rhs: &OpMatrix) -> Outcome {
    match lhs.first_difference(rhs) {
        None => Outcome::Pass,
        Some((i, j, d)) => Outcome::fail(alloc::format!("entry ({i},{j}): {d}")),
    }
}

/// `lhs · F = F · rhs` for an operator `F`, entrywise.
fn check_operator(f: &WeylElement, lhs: &OpMatrix, rhs: &OpMatrix, limits: &Limits) -> Result<Outcome> {
    let l = lhs.try_map(|e| e.mul_checked(f, limits))?;
    let r = rhs.try_map(|e| f.mul_checked(e, limits))?;
    Ok(first_mismatch(&l, &r))
}

/// `P^{-α} lhs P^{α} = rhs`, entrywise.
fn check_conjugation(form: &VarPoly, alpha: &Scalar, lhs: &OpMatrix, rhs: &OpMatrix) -> Result<Outcome> {
    let mut loc = Localization::new();
    loc.register(form);
    let l = lhs.try_map(|e| e.conjugate_by_power(form, alpha, &loc))?;
    Ok(first_mismatch(&l, rhs))
}

/// Checks `lhs · W = W · rhs` for a program `W`.
///
/// Realizable programs are multiplied out; pure multiplication programs are
/// checked as conjugations. Mixed programs need [`verify_chain`].
pub fn verify_intertwining(program: &OpProgram, lhs: &OpMatrix, rhs: &OpMatrix, limits: &Limits) -> Check {
    let anchor = program.factors.first().map(|f| f.anchor).unwrap_or("S1k");
    Check::run("intertwining", anchor, || {
        if let Some(w) = program.realize(limits)? {
            return check_operator(&w, lhs, rhs, limits);
        }
        let mut l = lhs.clone();
        for f in &program.factors {
            match &f.action {
                Action::Mul { form, exponent } => {
                    let mut loc = Localization::new();
                    loc.register(form);
                    l = l.try_map(|e| e.conjugate_by_power(form, exponent, &loc))?;
                }
                _ => {
                    return Err(Error::Unsupported(
                        "mixed program with symbolic multiplications; check it factor by factor".into(),
                    ))
                }
            }
        }
        Ok(first_mismatch(&l, rhs))
    })
}

/// Checks one factor against its recorded parameter matrices.
pub fn verify_factor(f: &Factor, level: Level, limits: &Limits) -> Check {
    Check::run(f.tag.clone(), f.anchor, || {
        let pair = |u: &ParamMatrix| -> Result<OpMatrix> {
            match level {
                Level::Monodromy => monodromy(u, limits),
                Level::B => Ok(OpMatrix::from_rows(alloc::vec![alloc::vec![b_operator(u, limits)?]])?),
            }
        };
        if matches!(f.action, Action::Relabel) && level == Level::Monodromy {
            return Ok(Outcome::Skipped { reason: "relabelling only holds for the B-operator".to_string() });
        }
        let lhs = pair(&f.before)?;
        let rhs = pair(&f.after)?;
        match &f.action {
            Action::Diff { op, power } => check_operator(&op.pow(*power), &lhs, &rhs, limits),
            Action::Mul { form, exponent } => check_conjugation(form, exponent, &lhs, &rhs),
            Action::Relabel => Ok(first_mismatch(&lhs, &rhs)),
        }
    })
}

/// Checks every factor of a program; the first failure decides.
pub fn verify_chain(program: &OpProgram, level: Level, name: &str, anchor: &str, limits: &Limits) -> Check {
    for f in &program.factors {
        let c = verify_factor(f, level, limits);
        match &c.outcome {
            Outcome::Pass => {}
            Outcome::Skipped { .. } if matches!(f.action, Action::Relabel) => {}
            _ => {
                return Check::new(name, anchor, c.outcome.clone()).with_note(alloc::format!("factor {}", f.tag));
            }
        }
    }
    Check::new(name, anchor, Outcome::Pass).with_note(alloc::format!("{} factors", program.len()))
}

/// Text of a multiplication form, e.g. for notes.
pub fn form_text(p: &VarPoly) -> String {
    display_var_poly(p)
}
