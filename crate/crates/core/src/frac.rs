//! Polynomials in the site variables with `Scalar` coefficients, and their
//! localizations at products of tracked polynomial forms.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, Poly};
use crate::scalar::{monomial_text, number_term, render_terms, Bindings, Scalar, TermText};
use crate::symbols::Var;

/// Polynomial in the variables `x_k, y_k, z_k`.
pub type VarPoly = Poly<Scalar>;

/// A monic polynomial used as a localization denominator.
pub type Form = Arc<VarPoly>;

pub fn var_poly(v: Var) -> VarPoly {
    VarPoly::var(v.0)
}

pub fn const_poly(s: Scalar) -> VarPoly {
    VarPoly::constant(s)
}

/// Splits `p` into its leading coefficient and the monic form.
pub fn make_form(p: &VarPoly) -> (Scalar, VarPoly) {
    let lc = p.leading_coeff();
    (lc, p.monic())
}

pub(crate) fn same_form(a: &Form, b: &Form) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Substitutes parameters inside every coefficient.
pub fn subst_poly(p: &VarPoly, b: &Bindings) -> Result<VarPoly> {
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        terms.push((m.clone(), c.substitute(b)?));
    }
    Ok(VarPoly::from_terms(terms))
}

/// The variables that occur in `p`.
pub fn poly_vars(p: &VarPoly) -> Vec<Var> {
    p.keys().into_iter().map(Var).collect()
}

/// `num / ∏ form^e`; `form`s are monic and pairwise distinct.
#[derive(Clone)]
pub struct Frac {
    num: VarPoly,
    den: Vec<(Form, u32)>,
}

impl Frac {
    pub fn zero() -> Self {
        Frac { num: VarPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Frac { num: VarPoly::constant(s), den: Vec::new() }
    }

    pub fn poly(p: VarPoly) -> Self {
        Frac { num: p, den: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Self::poly(var_poly(v))
    }

    /// `p^e` for any integer `e`; negative powers localize at `p`.
    pub fn power(p: &VarPoly, e: i64) -> Result<Self> {
        if e >= 0 {
            return Ok(Self::poly(p.pow(e as u32)));
        }
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = p.constant_value() {
            let k = c.pow(e)?;
            return Ok(Self::scalar(k));
        }
        let (lc, f) = make_form(p);
        let k = lc.pow(e)?;
        Ok(Frac { num: VarPoly::constant(k), den: alloc::vec![(Arc::new(f), (-e) as u32)] })
    }

    /// `1 / form^e` with a registered (monic) form.
    pub fn inv_form(f: &Form, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Frac { num: VarPoly::one(), den: alloc::vec![(f.clone(), e)] }
    }

    pub fn numer(&self) -> &VarPoly {
        &self.num
    }

    pub fn den(&self) -> &[(Form, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The numerator when there are no denominators left.
    pub fn as_poly(&self) -> Option<&VarPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// The value when it is a constant (after normalization).
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Frac { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &VarPoly) -> Self {
        Frac { num: self.num.mul(p), den: self.den.clone() }
    }

    /// Brings both operands to the least common denominator.
    fn align(&self, o: &Self) -> (VarPoly, VarPoly, Vec<(Form, u32)>) {
        if self.den.is_empty() && o.den.is_empty() {
            return (self.num.clone(), o.num.clone(), Vec::new());
        }
        let mut den: Vec<(Form, u32)> = self.den.clone();
        for (f, e) in &o.den {
            match den.iter_mut().find(|(g, _)| same_form(f, g)) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => den.push((f.clone(), *e)),
            }
        }
        let lift = |x: &Frac| -> VarPoly {
            let mut n = x.num.clone();
            for (f, e) in &den {
                let have = x.den.iter().find(|(g, _)| same_form(f, g)).map(|(_, k)| *k).unwrap_or(0);
                if *e > have {
                    n = n.mul(&f.pow(*e - have));
                }
            }
            n
        };
        (lift(self), lift(o), den)
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (a, b, den) = self.align(o);
        Frac { num: a.add(&b), den }.prune()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            match den.iter_mut().find(|(g, _)| same_form(f, g)) {
                Some(slot) => slot.1 += *e,
                None => den.push((f.clone(), *e)),
            }
        }
        Frac { num: self.num.mul(&o.num), den }
    }

    fn prune(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
        }
        self
    }

    /// Cancels every denominator form that divides the numerator.
    pub fn normalize(&self) -> Self {
        if self.den.is_empty() || self.num.is_zero() {
            return self.clone().prune();
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, e) in &self.den {
            let mut e = *e;
            while e > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                den.push((f.clone(), e));
            }
        }
        Frac { num, den }
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        if self.den.is_empty() && o.den.is_empty() {
            return self.num == o.num;
        }
        self.sub(o).is_zero()
    }

    pub fn derivative(&self, v: Var) -> Self {
        if self.den.is_empty() {
            return Frac { num: self.num.derivative(v.0), den: Vec::new() };
        }
        // Only forms depending on v gain one extra power.
        let dep: Vec<usize> = (0..self.den.len()).filter(|&i| self.den[i].0.contains_key(v.0)).collect();
        if dep.is_empty() {
            return Frac { num: self.num.derivative(v.0), den: self.den.clone() };
        }
        let prod_except = |skip: Option<usize>| -> VarPoly {
            let mut p = VarPoly::one();
            for &i in &dep {
                if Some(i) != skip {
                    p = p.mul(&self.den[i].0);
                }
            }
            p
        };
        let mut num = self.num.derivative(v.0).mul(&prod_except(None));
        for &i in &dep {
            let (f, e) = &self.den[i];
            let t = self.num.mul(&f.derivative(v.0)).mul(&prod_except(Some(i))).scale(&Scalar::int(*e as i64));
            num = num.sub(&t);
        }
        let mut den = self.den.clone();
        for &i in &dep {
            den[i].1 += 1;
        }
        Frac { num, den }.prune()
    }

    /// Substitutes parameters; fails when a denominator form vanishes.
    pub fn substitute_params(&self, b: &Bindings) -> Result<Self> {
        let num = subst_poly(&self.num, b)?;
        let mut out = Frac::poly(num);
        for (f, e) in &self.den {
            let g = subst_poly(f, b)?;
            if g.is_zero() {
                let names: Vec<String> = b.keys().map(|p| p.name()).collect();
                return Err(Error::Pole { bindings: names.join(", ") });
            }
            out = out.mul(&Frac::power(&g, -(*e as i64))?);
        }
        Ok(out)
    }

    /// Substitutes polynomials for variables; each denominator form is
    /// replaced by its image, which must not vanish.
    pub fn substitute_vars<F: Fn(u32) -> Option<VarPoly>>(&self, f: F) -> Result<Self> {
        let mut out = Frac::poly(self.num.substitute(&f));
        for (g, e) in &self.den {
            let h = g.substitute(&f);
            out = out.mul(&Frac::power(&h, -(*e as i64))?);
        }
        Ok(out)
    }

    /// Evaluates at a point where every variable is bound.
    pub fn evaluate(&self, point: &dyn Fn(u32) -> Option<Scalar>) -> Result<Scalar> {
        let ev = |p: &VarPoly| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut t = c.clone();
                for &(k, e) in m.0.iter() {
                    let v = point(k).ok_or_else(|| Error::Unsupported(alloc::format!("unbound variable {}", Var(k))))?;
                    t = t.mul(&v.pow(e as i64)?);
                }
                acc = acc.add(&t);
            }
            Ok(acc)
        };
        let mut d = Scalar::one();
        for (f, e) in &self.den {
            d = d.mul(&ev(f)?.pow(*e as i64)?);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        ev(&self.num)?.div(&d)
    }

    /// `Some(c)` with `self = c·o` when `c` is variable-free; `o` must be
    /// nonzero.
    pub fn proportional(&self, o: &Self) -> Result<Option<Scalar>> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Scalar::zero()));
        }
        let (a, b, _) = self.align(o);
        let (m, cb) = b.leading().cloned().expect("nonzero");
        let ca = a.coeff_of(&m);
        if ca.is_zero() {
            return Ok(None);
        }
        let c = ca.div(&cb)?;
        Ok(if a.sub(&b.scale(&c)).is_zero() { Some(c) } else { None })
    }

    /// Variables occurring in numerator or denominators.
    pub fn vars(&self) -> Vec<Var> {
        let mut k = self.num.keys();
        for (f, _) in &self.den {
            k.extend(f.keys());
        }
        k.sort_unstable();
        k.dedup();
        k.into_iter().map(Var).collect()
    }

    /// Applies `f` to every coefficient of the numerator.
    pub fn map_coeffs<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Self {
        Frac { num: self.num.map_coeffs(f), den: self.den.clone() }
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sign and coefficient text of a variable-polynomial term.
pub(crate) fn scalar_term(c: &Scalar) -> (bool, Option<String>) {
    if let Some(n) = c.as_number() {
        return number_term(&n);
    }
    if c.is_polynomial() && c.numer().len() == 1 && !c.numer().leading_coeff().is_compound() {
        let lc = c.numer().leading_coeff();
        let neg = lc.is_negative_for_print();
        let a = if neg { c.neg() } else { c.clone() };
        return (neg, Some(a.to_text()));
    }
    (false, Some(alloc::format!("({c})")))
}

pub fn display_var_poly(p: &VarPoly) -> String {
    render_terms(p.terms().iter().map(|(m, c)| {
        let (negative, coeff) = scalar_term(c);
        TermText { negative, coeff, mono: monomial_text(m, |k| alloc::format!("{}", Var(k))) }
    }))
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = display_var_poly(&self.num);
        if self.den.is_empty() {
            return f.write_str(&n);
        }
        write!(f, "({n})/(")?;
        for (i, (g, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", display_var_poly(g))?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}

/// `x^e` monomial helper.
pub fn var_monomial(v: Var, e: u32) -> Monomial {
    Monomial::var(v.0, e)
}

impl Coeff for Frac {
    fn zero() -> Self {
        Frac::zero()
    }
    fn one() -> Self {
        Frac::one()
    }
    fn from_i64(n: i64) -> Self {
        Frac::scalar(Scalar::int(n))
    }
    fn is_zero(&self) -> bool {
        Frac::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.as_scalar().map(|s| s.is_one()).unwrap_or(false)
    }
    fn add(&self, o: &Self) -> Self {
        Frac::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Frac::sub(self, o)
    }
    fn neg(&self) -> Self {
        Frac::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Frac::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_inverse_power() {
        let x = var_poly(Var::x(1));
        let f = Frac::power(&x, -2).unwrap();
        let d = f.derivative(Var::x(1));
        let expect = Frac::power(&x, -3).unwrap().scale(&Scalar::int(-2));
        assert!(d.equals(&expect));
    }

    #[test]
    fn normalize_cancels() {
        let x1 = var_poly(Var::x(1));
        let x2 = var_poly(Var::x(2));
        let p = x2.sub(&x1);
        let f = Frac::power(&p, -1).unwrap().mul_poly(&p.mul(&x1));
        let n = f.normalize();
        assert!(n.is_polynomial());
        assert_eq!(n.numer(), &x1);
    }
}
