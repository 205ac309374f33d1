//! Rational functions of the parameters with `Q(i)` coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gcd::{gcd, NPoly};
use crate::number::{Number, Rational};
use crate::poly::{Coeff, Monomial, Poly};
use crate::symbols::Param;

/// A reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq)]
pub struct Scalar {
    num: NPoly,
    den: NPoly,
}

/// Parameter bindings used by [`Scalar::substitute`].
pub type Bindings = BTreeMap<Param, Scalar>;

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: NPoly::zero(), den: NPoly::one() }
    }

    pub fn one() -> Self {
        Self::number(Number::ONE)
    }

    pub fn i() -> Self {
        Self::number(Number::I)
    }

    pub fn number(n: Number) -> Self {
        Scalar { num: NPoly::constant(n), den: NPoly::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::number(Number::from_i64(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::number(Number::ratio(n, d))
    }

    pub fn param(p: Param) -> Self {
        Scalar { num: NPoly::var(p.0), den: NPoly::one() }
    }

    pub fn poly(p: NPoly) -> Self {
        Scalar { num: p, den: NPoly::one() }
    }

    /// `num/den`, reduced; errors when `den` is zero.
    pub fn from_parts(num: NPoly, den: NPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: NPoly, den: NPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.constant_value().expect("constant");
            if c.is_one() {
                return Scalar { num, den };
            }
            let k = c.inv().expect("nonzero");
            return Scalar { num: num.scale(&k), den: NPoly::one() };
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = d.leading_coeff();
        if lc.is_one() {
            Scalar { num: n, den: d }
        } else {
            let k = lc.inv().expect("nonzero");
            Scalar { num: n.scale(&k), den: d.scale(&k) }
        }
    }

    pub fn numer(&self) -> &NPoly {
        &self.num
    }

    pub fn denom(&self) -> &NPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value when it is a constant.
    pub fn as_number(&self) -> Option<Number> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// The value when it is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_number().and_then(|n| n.to_i64())
    }

    pub fn is_constant(&self) -> bool {
        self.as_number().is_some()
    }

    pub fn params(&self) -> Vec<Param> {
        let mut k = self.num.keys();
        k.extend(self.den.keys());
        k.sort_unstable();
        k.dedup();
        k.into_iter().map(Param).collect()
    }

    pub fn contains(&self, p: Param) -> bool {
        self.num.contains_key(p.0) || self.den.contains_key(p.0)
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.add(&o.num), den: NPoly::one() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        Self::reduce(num, self.den.mul(&d2))
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: NPoly::one() };
        }
        if let Some(c) = self.as_number() {
            return Scalar { num: o.num.scale(&c), den: o.den.clone() };
        }
        if let Some(c) = o.as_number() {
            return Scalar { num: self.num.scale(&c), den: self.den.clone() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = o.den.div_exact(&g1).expect("divides");
        let n2 = o.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let k = lc.inv().expect("nonzero");
            Scalar { num: num.scale(&k), den: den.scale(&k) }
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        o.inv().map(|i| self.mul(&i)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv().ok_or(Error::DivisionByZero)? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(Scalar { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale(&self, n: &Number) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        Scalar { num: self.num.scale(n), den: self.den.clone() }
    }

    pub fn derivative(&self, p: Param) -> Self {
        let dn = self.num.derivative(p.0);
        let dd = self.den.derivative(p.0);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        Self::reduce(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }

    /// Evaluation homomorphism: replaces bound parameters. Fails with the
    /// offending bindings when the denominator vanishes.
    pub fn substitute(&self, b: &Bindings) -> Result<Self> {
        if b.is_empty() || !self.params().iter().any(|p| b.contains_key(p)) {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.num, b);
        let d = eval_poly(&self.den, b);
        if d.is_zero() {
            let names: Vec<String> =
                self.den.keys().into_iter().map(Param).filter(|p| b.contains_key(p)).map(|p| p.name()).collect();
            return Err(Error::Pole { bindings: names.join(", ") });
        }
        n.div(&d)
    }

    /// Substitutes a single parameter.
    pub fn subst1(&self, p: Param, v: &Scalar) -> Result<Self> {
        let mut b = Bindings::new();
        b.insert(p, v.clone());
        self.substitute(&b)
    }

    /// Coefficient of `u^1` and `u^0` when `self` is affine in `p` with a
    /// polynomial dependence; `None` otherwise.
    pub fn affine_in(&self, p: Param) -> Option<(Scalar, Scalar)> {
        if !self.den.is_one() && self.den.contains_key(p.0) {
            return None;
        }
        let cs = self.num.coefficients_in(p.0);
        if cs.len() > 2 {
            return None;
        }
        let den = Scalar::reduce(self.den.clone(), NPoly::one()).inv()?;
        let c0 = Scalar::poly(cs[0].clone()).mul(&den);
        let c1 = if cs.len() == 2 { Scalar::poly(cs[1].clone()).mul(&den) } else { Scalar::zero() };
        Some((c1, c0))
    }

    /// Canonical text; parses back to an equal value.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

fn eval_poly(p: &NPoly, b: &Bindings) -> Scalar {
    let mut acc = Scalar::zero();
    let mut cache: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
    let mut poly_part: Vec<(Monomial, Number)> = Vec::new();
    for (m, c) in p.terms() {
        let mut kept = Monomial::one();
        let mut f = Scalar::one();
        let mut bound = false;
        for &(k, e) in m.0.iter() {
            match b.get(&Param(k)) {
                None => kept = kept.mul(&Monomial::var(k, e)),
                Some(v) => {
                    bound = true;
                    let pe = cache.entry((k, e)).or_insert_with(|| v.pow(e as i64).expect("nonnegative power")).clone();
                    f = f.mul(&pe);
                }
            }
        }
        if bound {
            acc = acc.add(&f.mul(&Scalar::poly(NPoly::term(kept, c.clone()))));
        } else {
            poly_part.push((kept, c.clone()));
        }
    }
    acc.add(&Scalar::poly(Poly::from_terms(poly_part)))
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Param> for Scalar {
    fn from(p: Param) -> Self {
        Scalar::param(p)
    }
}

impl From<Number> for Scalar {
    fn from(n: Number) -> Self {
        Scalar::number(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::number(Number::real(r))
    }
}

/// One printed term: sign, coefficient text without sign (`None` for a unit
/// coefficient) and power-product text (empty for the constant monomial).
pub(crate) struct TermText {
    pub negative: bool,
    pub coeff: Option<String>,
    pub mono: String,
}

pub(crate) fn render_terms<I: IntoIterator<Item = TermText>>(terms: I) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        match (i == 0, t.negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        match (t.coeff, t.mono.is_empty()) {
            (None, true) => out.push('1'),
            (None, false) => out.push_str(&t.mono),
            (Some(c), true) => out.push_str(&c),
            (Some(c), false) => {
                out.push_str(&c);
                out.push('*');
                out.push_str(&t.mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn monomial_text<F: Fn(u32) -> String>(m: &Monomial, name: F) -> String {
    let mut s = String::new();
    for (i, &(k, e)) in m.0.iter().enumerate() {
        if i > 0 {
            s.push('*');
        }
        s.push_str(&name(k));
        if e > 1 {
            s.push_str(&alloc::format!("^{e}"));
        }
    }
    s
}

pub(crate) fn number_term(c: &Number) -> (bool, Option<String>) {
    let neg = c.is_negative_for_print();
    let a = if neg { c.neg() } else { c.clone() };
    (neg, if a.is_one() { None } else { Some(alloc::format!("{a}")) })
}

/// Canonical text of a parameter polynomial.
pub fn display_npoly(p: &NPoly) -> String {
    render_terms(p.terms().iter().map(|(m, c)| {
        let (negative, coeff) = number_term(c);
        TermText { negative, coeff, mono: monomial_text(m, |k| Param(k).name()) }
    }))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = display_npoly(&self.num);
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let d = display_npoly(&self.den);
        let n_simple = self.num.len() == 1 && !self.num.leading_coeff().is_compound();
        let d_simple = self.den.len() == 1 && self.den.leading_coeff().is_one();
        if n_simple {
            write!(f, "{n}")?;
        } else {
            write!(f, "({n})")?;
        }
        if d_simple {
            write!(f, "/{d}")
        } else {
            write!(f, "/({d})")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Base;

    fn u() -> Scalar {
        Scalar::param(Param::u())
    }

    #[test]
    fn reduces_common_factors() {
        let q = Scalar::param(Param::idx(Base::Q, 1));
        let a = u().sub(&q).mul(&u().add(&Scalar::int(1)));
        let b = u().sub(&q).scale(&Number::from_i64(3));
        let r = a.div(&b).unwrap();
        assert_eq!(r, u().add(&Scalar::int(1)).scale(&Number::ratio(1, 3)));
        assert!(r.is_polynomial());
    }

    #[test]
    fn pole_names_binding() {
        let s = Scalar::one().div(&u().sub(&Scalar::int(2))).unwrap();
        let mut b = Bindings::new();
        b.insert(Param::u(), Scalar::int(2));
        let e = s.substitute(&b).unwrap_err();
        assert!(alloc::format!("{e}").contains('u'));
    }

    #[test]
    fn printing() {
        let p1 = Scalar::param(Param::plain(Base::P1));
        let s = u().mul(&u()).scale(&Number::from_i64(2)).sub(&p1.mul(&Scalar::i()).scale(&Number::ratio(3, 4))).add(&Scalar::one());
        assert_eq!(s.to_text(), "2*u^2 - 3/4*i*p1 + 1");
        let t = Scalar::one().div(&u()).unwrap();
        assert_eq!(t.to_text(), "1/u");
    }
}
