//! Functions of the form `prefactor · ∏ P_k^{α_k} · exp(G)`.
//!
//! The prefactor and the phase `G` are localized polynomials in the site
//! variables; the exponents `α_k` are symbolic. Integer exponents are folded
//! into the prefactor, so a power entry always carries a non-integer exponent.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::frac::{display_var_poly, same_form, var_poly, Form, Frac, VarPoly};
use crate::poly::Monomial;
use crate::scalar::{Bindings, Scalar};
use crate::symbols::Var;
use crate::weyl::WeylElement;

#[derive(Clone)]
pub struct TwistedFunction {
    prefactor: Frac,
    powers: Vec<(VarPoly, Scalar)>,
    phase: Frac,
}

/// `v ↦ (a·v + b)/(c·v + d)` for one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    pub var: Var,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Mobius {
    pub fn new(var: Var, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Mobius { var, a, b, c, d }
    }

    pub fn identity(var: Var) -> Self {
        Mobius::new(var, Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    pub fn det(&self) -> Scalar {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// `self ∘ inner`: the argument is first mapped by `inner`.
    pub fn after(&self, inner: &Mobius) -> Mobius {
        let (a, b, c, d) = (&inner.a, &inner.b, &inner.c, &inner.d);
        Mobius {
            var: self.var,
            a: self.a.mul(a).add(&self.b.mul(c)),
            b: self.a.mul(b).add(&self.b.mul(d)),
            c: self.c.mul(a).add(&self.d.mul(c)),
            d: self.c.mul(b).add(&self.d.mul(d)),
        }
    }

    fn numerator(&self) -> VarPoly {
        var_poly(self.var).scale(&self.a).add(&VarPoly::constant(self.b.clone()))
    }

    fn denominator(&self) -> VarPoly {
        var_poly(self.var).scale(&self.c).add(&VarPoly::constant(self.d.clone()))
    }
}

/// `P ∘ maps = num · ∏ q_v^{-deg_v P}`; returns `num` and the degrees.
fn homogenize(p: &VarPoly, maps: &[Mobius]) -> (VarPoly, Vec<u32>) {
    let degs: Vec<u32> = maps.iter().map(|m| p.degree(m.var.0)).collect();
    let nums: Vec<VarPoly> = maps.iter().map(|m| m.numerator()).collect();
    let dens: Vec<VarPoly> = maps.iter().map(|m| m.denominator()).collect();
    let mut out = VarPoly::zero();
    for (mono, c) in p.terms() {
        let mut rest = mono.clone();
        let mut t = VarPoly::constant(c.clone());
        for (i, m) in maps.iter().enumerate() {
            let (r, e) = rest.without(m.var.0);
            rest = r;
            if degs[i] == 0 {
                continue;
            }
            t = t.mul(&nums[i].pow(e)).mul(&dens[i].pow(degs[i] - e));
        }
        out = out.add(&t.mul_monomial(&rest, &Scalar::one()));
    }
    (out, degs)
}

impl TwistedFunction {
    pub fn new(prefactor: Frac) -> Self {
        TwistedFunction { prefactor, powers: Vec::new(), phase: Frac::zero() }
    }

    pub fn one() -> Self {
        Self::new(Frac::one())
    }

    pub fn zero() -> Self {
        Self::new(Frac::zero())
    }

    /// `exp(G)`.
    pub fn exp(phase: Frac) -> Self {
        TwistedFunction { prefactor: Frac::one(), powers: Vec::new(), phase }
    }

    /// `P^α`.
    pub fn power(p: &VarPoly, alpha: &Scalar) -> Result<Self> {
        Self::one().multiply_power(p, alpha)
    }

    pub fn prefactor(&self) -> &Frac {
        &self.prefactor
    }

    pub fn powers(&self) -> &[(VarPoly, Scalar)] {
        &self.powers
    }

    pub fn phase(&self) -> &Frac {
        &self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    /// Localization forms that operators applied to this function may use.
    pub fn forms(&self) -> Vec<Form> {
        let mut out: Vec<Form> = Vec::new();
        let mut push = |f: Form| {
            if !out.iter().any(|g| same_form(&f, g)) {
                out.push(f);
            }
        };
        for (f, _) in self.prefactor.den().iter().chain(self.phase.den()) {
            push(f.clone());
        }
        for (p, _) in &self.powers {
            if !p.is_constant() {
                push(alloc::sync::Arc::new(p.monic()));
            }
        }
        out
    }

    /// Same powers and phase, new prefactor.
    pub fn with_prefactor(&self, prefactor: Frac) -> Self {
        TwistedFunction { prefactor, powers: self.powers.clone(), phase: self.phase.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.with_prefactor(self.prefactor.scale(s))
    }

    pub fn mul_frac(&self, f: &Frac) -> Self {
        self.with_prefactor(self.prefactor.mul(f))
    }

    /// Logarithmic derivative of the power and phase part.
    fn log_derivative(&self, v: Var) -> Result<Frac> {
        let mut acc = self.phase.derivative(v);
        for (p, a) in &self.powers {
            let dp = p.derivative(v.0);
            if dp.is_zero() {
                continue;
            }
            acc = acc.add(&Frac::power(p, -1)?.mul_poly(&dp).scale(a));
        }
        Ok(acc)
    }

    fn derive_prefactor(&self, pref: &Frac, v: Var, log: &Frac) -> Frac {
        pref.derivative(v).add(&pref.mul(log)).normalize()
    }

    pub fn differentiate(&self, v: Var) -> Result<Self> {
        let log = self.log_derivative(v)?;
        Ok(self.with_prefactor(self.derive_prefactor(&self.prefactor, v, &log)))
    }

    /// Applies an operator; its denominators must be among [`Self::forms`].
    pub fn apply(&self, a: &WeylElement) -> Result<Self> {
        let allowed = self.forms();
        for f in a.forms() {
            if !allowed.iter().any(|g| same_form(&f, g)) {
                return Err(Error::Unsupported(alloc::format!(
                    "operator uses form {} that the function does not carry",
                    display_var_poly(&f)
                )));
            }
        }
        let mut logs: BTreeMap<u32, Frac> = BTreeMap::new();
        let mut memo: BTreeMap<Monomial, Frac> = BTreeMap::new();
        memo.insert(Monomial::one(), self.prefactor.clone());
        let mut out = Frac::zero();
        for (key, c) in a.terms() {
            let d = self.derivative_memo(key, &mut memo, &mut logs)?;
            out = out.add(&c.mul(&d));
        }
        Ok(self.with_prefactor(out.normalize()))
    }

    fn derivative_memo(
        &self,
        key: &Monomial,
        memo: &mut BTreeMap<Monomial, Frac>,
        logs: &mut BTreeMap<u32, Frac>,
    ) -> Result<Frac> {
        if let Some(f) = memo.get(key) {
            return Ok(f.clone());
        }
        let (v, e) = key.0[0];
        let lower = key.div(&Monomial::var(v, 1)).expect("positive exponent");
        debug_assert!(e > 0);
        let base = self.derivative_memo(&lower, memo, logs)?;
        if !logs.contains_key(&v) {
            logs.insert(v, self.log_derivative(Var(v))?);
        }
        let d = self.derive_prefactor(&base, Var(v), &logs[&v]);
        memo.insert(key.clone(), d.clone());
        Ok(d)
    }

    /// Multiplies by `P^β`.
    pub fn multiply_power(&self, p: &VarPoly, beta: &Scalar) -> Result<Self> {
        if beta.is_zero() {
            return Ok(self.clone());
        }
        if let Some(n) = beta.as_integer() {
            return Ok(self.mul_frac(&Frac::power(p, n)?));
        }
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = self.clone();
        match out.powers.iter().position(|(q, _)| q == p) {
            Some(i) => {
                let e = out.powers[i].1.add(beta);
                if let Some(n) = e.as_integer() {
                    let (q, _) = out.powers.remove(i);
                    out.prefactor = out.prefactor.mul(&Frac::power(&q, n)?);
                } else {
                    out.powers[i].1 = e;
                }
            }
            None => out.powers.push((p.clone(), beta.clone())),
        }
        Ok(out)
    }

    /// Pointwise product.
    pub fn multiply(&self, o: &Self) -> Result<Self> {
        let mut out = TwistedFunction {
            prefactor: self.prefactor.mul(&o.prefactor),
            powers: self.powers.clone(),
            phase: self.phase.add(&o.phase),
        };
        for (p, a) in &o.powers {
            out = out.multiply_power(p, a)?;
        }
        Ok(out)
    }

    /// Sum of two functions with the same powers and phase.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        let k = self.aligned_ratio(o)?.ok_or_else(|| {
            Error::Unsupported("sum of functions with different power or phase parts".into())
        })?;
        Ok(self.with_prefactor(self.prefactor.add(&o.prefactor.mul(&k)).normalize()))
    }

    /// Rational factor `k` with `powers(o)·exp(phase(o)) = k·powers(self)·exp(phase(self))`.
    fn aligned_ratio(&self, o: &Self) -> Result<Option<Frac>> {
        if !self.phase.equals(&o.phase) {
            return Ok(None);
        }
        let mut k = Frac::one();
        let mut seen = alloc::vec![false; o.powers.len()];
        for (p, a) in &self.powers {
            let b = match o.powers.iter().position(|(q, _)| q == p) {
                Some(j) => {
                    seen[j] = true;
                    o.powers[j].1.clone()
                }
                None => Scalar::zero(),
            };
            match b.sub(a).as_integer() {
                Some(n) => k = k.mul(&Frac::power(p, n)?),
                None => return Ok(None),
            }
        }
        for (j, (q, b)) in o.powers.iter().enumerate() {
            if seen[j] {
                continue;
            }
            match b.as_integer() {
                Some(n) => k = k.mul(&Frac::power(q, n)?),
                None => return Ok(None),
            }
        }
        Ok(Some(k))
    }

    /// `Some(c)` when `self = c·g` with a variable-free `c`.
    pub fn is_scalar_multiple(&self, g: &Self) -> Result<Option<Scalar>> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Scalar::zero()));
        }
        match g.aligned_ratio(self)? {
            Some(k) => self.prefactor.mul(&k).proportional(&g.prefactor),
            None => Ok(None),
        }
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        if o.is_zero() {
            return Ok(self.is_zero());
        }
        Ok(self.is_scalar_multiple(o)?.map(|c| c.is_one()).unwrap_or(false))
    }

    pub fn substitute_params(&self, b: &Bindings) -> Result<Self> {
        let mut out = TwistedFunction::new(self.prefactor.substitute_params(b)?);
        out.phase = self.phase.substitute_params(b)?;
        for (p, a) in &self.powers {
            let q = crate::frac::subst_poly(p, b)?;
            out = out.multiply_power(&q, &a.substitute(b)?)?;
        }
        Ok(out)
    }

    /// `cofactor · (self ∘ maps)`; each map must have nonzero determinant.
    pub fn mobius_substitute(&self, maps: &[Mobius], cofactor: &Self) -> Result<Self> {
        for m in maps {
            if m.det().is_zero() {
                return Err(Error::Degenerate(alloc::format!("map of {} has zero determinant", m.var)));
            }
        }
        let dens: Vec<VarPoly> = maps.iter().map(|m| m.denominator()).collect();
        // Integer powers of the map denominators collected along the way.
        let mut q_int: Vec<i64> = alloc::vec![0; maps.len()];
        let mut q_sym: Vec<Scalar> = alloc::vec![Scalar::zero(); maps.len()];
        let frac_image = |f: &Frac, q_int: &mut Vec<i64>| -> Result<Frac> {
            let (n, dn) = homogenize(f.numer(), maps);
            let mut out = Frac::poly(n);
            for (i, d) in dn.iter().enumerate() {
                q_int[i] -= *d as i64;
            }
            for (g, e) in f.den() {
                let (gn, dg) = homogenize(g, maps);
                out = out.mul(&Frac::power(&gn, -(*e as i64))?);
                for (i, d) in dg.iter().enumerate() {
                    q_int[i] += (*d as i64) * (*e as i64);
                }
            }
            Ok(out)
        };
        let mut pref = frac_image(&self.prefactor, &mut q_int)?;
        let mut phase_q = alloc::vec![0i64; maps.len()];
        let mut phase = frac_image(&self.phase, &mut phase_q)?;
        for (i, k) in phase_q.iter().enumerate() {
            phase = phase.mul(&Frac::power(&dens[i], *k)?);
        }
        let mut powers: Vec<(VarPoly, Scalar)> = Vec::new();
        for (p, a) in &self.powers {
            let (pn, dp) = homogenize(p, maps);
            for (i, d) in dp.iter().enumerate() {
                q_sym[i] = q_sym[i].sub(&a.mul(&Scalar::int(*d as i64)));
            }
            if let Some(c) = pn.constant_value() {
                pref = pref.mul(&Frac::scalar(constant_power(&c, a)?));
            } else {
                powers.push((pn, a.clone()));
            }
        }
        let mut out = TwistedFunction { prefactor: pref, powers: Vec::new(), phase };
        for (p, a) in powers {
            out = out.multiply_power(&p, &a)?;
        }
        for (i, d) in dens.iter().enumerate() {
            let e = q_sym[i].add(&Scalar::int(q_int[i]));
            if e.is_zero() {
                continue;
            }
            match d.constant_value() {
                Some(c) => out = out.mul_frac(&Frac::scalar(constant_power(&c, &e)?)),
                None => out = out.multiply_power(d, &e)?,
            }
        }
        cofactor.multiply(&out)
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

fn constant_power(c: &Scalar, e: &Scalar) -> Result<Scalar> {
    if c.is_one() {
        return Ok(Scalar::one());
    }
    match e.as_integer() {
        Some(n) => c.pow(n),
        None => Err(Error::Unsupported(alloc::format!("constant {c} raised to symbolic power {e}"))),
    }
}

impl fmt::Display for TwistedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefactor)?;
        for (p, a) in &self.powers {
            write!(f, " * ({})^({})", display_var_poly(p), a)?;
        }
        if !self.phase.is_zero() {
            write!(f, " * exp({})", self.phase)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TwistedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
