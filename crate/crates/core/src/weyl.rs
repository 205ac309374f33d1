//! Normal-ordered differential operators with localized polynomial
//! coefficients, and matrices of them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::frac::{display_var_poly, var_poly, Form, Frac, VarPoly};
use crate::poly::Monomial;
use crate::scalar::{Bindings, Scalar};
use crate::symbols::Var;

/// Hard limits on operator size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximal total derivative order of any product.
    pub max_order: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 48 }
    }
}

/// Registered localization forms; conjugation only accepts these.
#[derive(Clone, Debug, Default)]
pub struct Localization {
    forms: Vec<Form>,
}

impl Localization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `p` (normalized to monic) and returns the stored form.
    pub fn register(&mut self, p: &VarPoly) -> Form {
        let m = p.monic();
        if let Some(f) = self.forms.iter().find(|f| ***f == m) {
            return f.clone();
        }
        let f = Arc::new(m);
        self.forms.push(f.clone());
        f
    }

    pub fn lookup(&self, p: &VarPoly) -> Option<Form> {
        let m = p.monic();
        self.forms.iter().find(|f| ***f == m).cloned()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }
}

/// Derivative multi-index `∏ ∂_v^{b_v}`, keyed by variable.
pub type DerivKey = Monomial;

/// `Σ coeff_b · ∂^b` with every coefficient standing to the left.
#[derive(Clone, Default)]
pub struct WeylElement {
    terms: BTreeMap<DerivKey, Frac>,
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Self::frac(Frac::scalar(s))
    }

    pub fn frac(f: Frac) -> Self {
        let mut w = Self::zero();
        if !f.is_zero() {
            w.terms.insert(Monomial::one(), f);
        }
        w
    }

    pub fn poly(p: VarPoly) -> Self {
        Self::frac(Frac::poly(p))
    }

    /// Multiplication by a coordinate.
    pub fn var(v: Var) -> Self {
        Self::poly(var_poly(v))
    }

    /// The derivation `∂_v`.
    pub fn d(v: Var) -> Self {
        Self::term(Frac::one(), Monomial::var(v.0, 1))
    }

    pub fn term(c: Frac, key: DerivKey) -> Self {
        let mut w = Self::zero();
        if !c.is_zero() {
            w.terms.insert(key, c);
        }
        w
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivKey, &Frac)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    /// Maximal total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.total_degree()).max().unwrap_or(0)
    }

    /// The value when the operator is a multiplication by a constant.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        if !k.is_one() {
            return None;
        }
        c.normalize().as_scalar()
    }

    pub fn coeff(&self, key: &DerivKey) -> Frac {
        self.terms.get(key).cloned().unwrap_or_else(Frac::zero)
    }

    fn add_term(&mut self, key: DerivKey, c: Frac) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        WeylElement { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.neg());
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        WeylElement { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.scale(s))).collect() }
    }

    /// Left multiplication by a function.
    pub fn mul_frac_left(&self, f: &Frac) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(k.clone(), f.mul(c));
        }
        r
    }

    /// Normal-ordered product `self · o` (operator composition, `o` acts
    /// first).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        // Memo of ∂^c applied to the coefficients of o.
        let mut memo: Vec<BTreeMap<DerivKey, Frac>> = o.terms.values().map(|_| BTreeMap::new()).collect();
        let o_terms: Vec<(&DerivKey, &Frac)> = o.terms.iter().collect();
        for (a, f) in &self.terms {
            for sub in sub_multi_indices(a) {
                let binom = multi_binomial(a, &sub);
                let rest = a.div(&sub).expect("sub-index");
                for (j, (b, g)) in o_terms.iter().enumerate() {
                    let dg = derivative_memo(&mut memo[j], g, &sub);
                    if dg.is_zero() {
                        continue;
                    }
                    let coeff = f.mul(&dg).scale(&Scalar::int(binom));
                    out.add_term(rest.mul(b), coeff);
                }
            }
        }
        out
    }

    /// Product with an order check against `limits`.
    pub fn mul_checked(&self, o: &Self, limits: &Limits) -> Result<Self> {
        let ord = self.order() + o.order();
        if ord > limits.max_order {
            return Err(Error::DegreeLimit(alloc::format!(
                "product of order {ord} exceeds cap {}",
                limits.max_order
            )));
        }
        Ok(self.mul(o))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = self.mul(&r);
        }
        r
    }

    /// Cancels localized denominators where possible.
    pub fn normalize(&self) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(k.clone(), c.normalize());
        }
        r
    }

    /// Exact equality of canonical forms.
    pub fn equals(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    pub fn substitute_params(&self, b: &Bindings) -> Result<Self> {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(k.clone(), c.substitute_params(b)?);
        }
        Ok(r)
    }

    /// Substitutes one parameter.
    pub fn subst1(&self, p: crate::symbols::Param, v: &Scalar) -> Result<Self> {
        let mut b = Bindings::new();
        b.insert(p, v.clone());
        self.substitute_params(&b)
    }

    /// `P^{-α} · self · P^{α}` via `∂_v ↦ ∂_v + α ∂_v P / P`; `P` must be
    /// registered in `loc`.
    pub fn conjugate_by_power(&self, p: &VarPoly, alpha: &Scalar, loc: &Localization) -> Result<Self> {
        let form = loc
            .lookup(p)
            .ok_or_else(|| Error::Unsupported(alloc::format!("unregistered form {}", display_var_poly(p))))?;
        if alpha.is_zero() {
            return Ok(self.clone());
        }
        // Image of each derivation; ∂_v P / P = ∂_v form / form.
        let mut images: BTreeMap<u32, WeylElement> = BTreeMap::new();
        let mut powers: BTreeMap<(u32, u32), WeylElement> = BTreeMap::new();
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let mut acc = Self::frac(c.clone());
            for &(v, e) in k.0.iter() {
                let img = images
                    .entry(v)
                    .or_insert_with(|| {
                        let dp = form.derivative(v);
                        let shift = Frac::inv_form(&form, 1).mul_poly(&dp).scale(alpha);
                        WeylElement::d(Var(v)).add(&WeylElement::frac(shift))
                    })
                    .clone();
                let pw = powers.entry((v, e)).or_insert_with(|| img.pow(e)).clone();
                acc = acc.mul(&pw);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Variables that occur in coefficients or derivatives.
    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = Vec::new();
        for (k, c) in &self.terms {
            v.extend(k.0.iter().map(|(x, _)| Var(*x)));
            v.extend(c.vars());
        }
        v.sort();
        v.dedup();
        v
    }

    /// Localization forms used by coefficients.
    pub fn forms(&self) -> Vec<Form> {
        let mut out: Vec<Form> = Vec::new();
        for c in self.terms.values() {
            for (f, _) in c.den() {
                if !out.iter().any(|g| crate::frac::same_form(f, g)) {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// Coefficient of `param^k` when every coefficient is polynomial in
    /// `param`.
    pub fn coefficient_of_param(&self, p: crate::symbols::Param, k: u32) -> Self {
        let mut r = Self::zero();
        for (key, c) in &self.terms {
            let num = c.numer().map_coeffs(|s| {
                let cs = s.numer().coefficients_in(p.0);
                let top = cs.get(k as usize).cloned().unwrap_or_default();
                Scalar::from_parts(top, s.denom().clone()).expect("nonzero denominator")
            });
            let mut f = Frac::poly(num);
            for (form, e) in c.den() {
                f = f.mul(&Frac::inv_form(form, *e));
            }
            r.add_term(key.clone(), f);
        }
        r
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

fn sub_multi_indices(a: &DerivKey) -> Vec<DerivKey> {
    let mut out = alloc::vec![Monomial::one()];
    for &(v, e) in a.0.iter() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for m in &out {
            for k in 0..=e {
                next.push(m.mul(&Monomial::var(v, k)));
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

fn multi_binomial(a: &DerivKey, c: &DerivKey) -> i64 {
    a.0.iter().map(|&(v, e)| binomial(e, c.degree(v))).product()
}

fn derivative_memo(memo: &mut BTreeMap<DerivKey, Frac>, g: &Frac, c: &DerivKey) -> Frac {
    if c.is_one() {
        return g.clone();
    }
    if let Some(r) = memo.get(c) {
        return r.clone();
    }
    // Peel one derivative off the last variable.
    let &(v, e) = c.0.last().expect("nonempty");
    let prev = c.div(&Monomial::var(v, 1)).expect("divides");
    let _ = e;
    let base = derivative_memo(memo, g, &prev);
    let r = base.derivative(Var(v));
    memo.insert(c.clone(), r.clone());
    r
}

impl PartialEq for WeylElement {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

fn deriv_text(k: &DerivKey) -> String {
    let mut s = String::new();
    for (i, &(v, e)) in k.0.iter().enumerate() {
        if i > 0 {
            s.push('*');
        }
        s.push_str(&alloc::format!("d{}", Var(v)));
        if e > 1 {
            s.push_str(&alloc::format!("^{e}"));
        }
    }
    s
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        // Highest derivative order first.
        for (k, c) in self.terms.iter().rev() {
            let c = c.normalize();
            let d = deriv_text(k);
            match c.as_poly() {
                Some(p) => {
                    for (m, s) in p.terms() {
                        let (neg, coeff) = crate::frac::scalar_term(s);
                        let mut mono = crate::scalar::monomial_text(m, |x| alloc::format!("{}", Var(x)));
                        if !d.is_empty() {
                            if !mono.is_empty() {
                                mono.push('*');
                            }
                            mono.push_str(&d);
                        }
                        let body = match (coeff, mono.is_empty()) {
                            (None, true) => String::from("1"),
                            (None, false) => mono,
                            (Some(c), true) => c,
                            (Some(c), false) => alloc::format!("{c}*{mono}"),
                        };
                        pieces.push(if neg { alloc::format!("-{body}") } else { body });
                    }
                }
                None => {
                    let body = if d.is_empty() { alloc::format!("{c}") } else { alloc::format!("{c}*{d}") };
                    pieces.push(body);
                }
            }
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in pieces.iter().enumerate() {
            if i == 0 {
                write!(f, "{p}")?;
            } else if let Some(rest) = p.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rectangular matrix of operators; products compose entries with the left
/// factor acting last.
#[derive(Clone, PartialEq)]
pub struct OpMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<WeylElement>,
}

impl OpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        OpMatrix { rows, cols, entries: (0..rows * cols).map(|_| WeylElement::zero()).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, WeylElement::one());
        }
        m
    }

    /// Builds from rows of entries.
    pub fn from_rows(rows: Vec<Vec<WeylElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if r == 0 || c == 0 || rows.iter().any(|x| x.len() != c) {
            return Err(Error::Index("ragged or empty matrix".into()));
        }
        Ok(OpMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &WeylElement {
        &self.entries[i * self.cols + j]
    }

    /// One-based entry `T^i_j` (row `i`, column `j`).
    pub fn at(&self, i: usize, j: usize) -> &WeylElement {
        self.get(i - 1, j - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, w: WeylElement) {
        self.entries[i * self.cols + j] = w;
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.mul_checked(o, &Limits { max_order: u32::MAX })
    }

    pub fn mul_checked(&self, o: &Self, limits: &Limits) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Index(alloc::format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = WeylElement::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul_checked(b, limits)?);
                }
                r.set(i, j, acc);
            }
        }
        Ok(r)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.sub(b))
    }

    fn zip<F: Fn(&WeylElement, &WeylElement) -> WeylElement>(&self, o: &Self, f: F) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Index("shape mismatch".into()));
        }
        Ok(OpMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|w| w.scale(s))
    }

    pub fn map<F: Fn(&WeylElement) -> WeylElement>(&self, f: F) -> Self {
        OpMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<F: Fn(&WeylElement) -> Result<WeylElement>>(&self, f: F) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(OpMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn substitute_params(&self, b: &Bindings) -> Result<Self> {
        self.try_map(|w| w.substitute_params(b))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// First nonzero entry `(i, j)` (one-based) of `self − o`.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, WeylElement)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j).sub(o.get(i, j));
                if !d.is_zero() {
                    return Some((i + 1, j + 1, d));
                }
            }
        }
        None
    }
}

impl fmt::Debug for OpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "[{},{}] {}", i + 1, j + 1, self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> WeylElement {
        WeylElement::var(Var::x(1))
    }
    fn dx() -> WeylElement {
        WeylElement::d(Var::x(1))
    }

    #[test]
    fn defining_commutator() {
        assert_eq!(dx().mul(&x()), x().mul(&dx()).add(&WeylElement::one()));
        assert_eq!(dx().commutator(&x()), WeylElement::one());
    }

    #[test]
    fn canonical_text() {
        let a = dx().mul(&dx()).mul(&x());
        assert_eq!(a.to_text(), "x1*dx1^2 + 2*dx1");
        let b = x().mul(&dx()).mul(&x().mul(&dx()));
        assert_eq!(b.to_text(), "x1^2*dx1^2 + x1*dx1");
    }

    #[test]
    fn conjugation_of_derivative() {
        let mut loc = Localization::new();
        let p = var_poly(Var::x(1));
        loc.register(&p);
        let a = crate::parse::sc("a");
        let c = dx().conjugate_by_power(&p, &a, &loc).unwrap();
        let expect = dx().add(&WeylElement::frac(Frac::power(&p, -1).unwrap().scale(&a)));
        assert_eq!(c, expect);
        assert!(dx().conjugate_by_power(&var_poly(Var::x(2)), &a, &loc).is_err());
    }

    #[test]
    fn degree_cap() {
        let lim = Limits { max_order: 3 };
        assert!(dx().pow(2).mul_checked(&dx().pow(2), &lim).is_err());
    }
}
