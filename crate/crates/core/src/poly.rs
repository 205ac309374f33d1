//! Sparse multivariate polynomials over an exact field, keyed by `u32`
//! symbols, in lexicographic order (smaller key = higher priority).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use smallvec::SmallVec;

/// Field operations required of polynomial coefficients.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Coeff for crate::number::Number {
    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    fn from_i64(n: i64) -> Self {
        crate::number::Number::from_i64(n)
    }
    fn is_zero(&self) -> bool {
        crate::number::Number::is_zero(self)
    }
    fn is_one(&self) -> bool {
        crate::number::Number::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        crate::number::Number::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        crate::number::Number::sub(self, o)
    }
    fn neg(&self) -> Self {
        crate::number::Number::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        crate::number::Number::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        crate::number::Number::inv(self)
    }
}

/// Power product of symbols, stored as `(key, exponent)` sorted by key with
/// positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub SmallVec<[(u32, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(key: u32, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((key, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, key: u32) -> u32 {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(k, e) in self.0.iter() {
            if j < o.0.len() && o.0[j].0 < k {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == k {
                let f = o.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((k, e - f));
                }
                j += 1;
            } else {
                out.push((k, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(k, e) in self.0.iter() {
            let f = o.degree(k);
            if f > 0 {
                out.push((k, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Removes `key` and returns its former exponent.
    pub fn without(&self, key: u32) -> (Monomial, u32) {
        let mut e0 = 0;
        let v = self
            .0
            .iter()
            .filter(|(k, e)| {
                if *k == key {
                    e0 = *e;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(v), e0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let (a, b) = (&self.0, &o.0);
        let n = a.len().min(b.len());
        for i in 0..n {
            if a[i].0 != b[i].0 {
                // The monomial containing the higher-priority symbol is larger.
                return if a[i].0 < b[i].0 { Ordering::Greater } else { Ordering::Less };
            }
            if a[i].1 != b[i].1 {
                return a[i].1.cmp(&b[i].1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial; terms are sorted by decreasing monomial, nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Coeff> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: alloc::vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(key: u32) -> Self {
        Self::term(Monomial::var(key, 1), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: alloc::vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn degree(&self, key: u32) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree(key)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// Sorted list of symbol keys that occur.
    pub fn keys(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.iter().flat_map(|(m, _)| m.0.iter().map(|(k, _)| *k)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains_key(&self, key: u32) -> bool {
        self.terms.iter().any(|(m, _)| m.degree(key) > 0)
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, d)| {
                    let p = d.mul(c);
                    if p.is_zero() {
                        None
                    } else {
                        Some((m.clone(), p))
                    }
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter_map(|(n, d)| {
                    let p = d.mul(c);
                    if p.is_zero() {
                        None
                    } else {
                        Some((n.mul(m), p))
                    }
                })
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_monomial(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                prods.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        Self::from_terms(prods)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, key: u32) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(key);
            if e == 0 {
                continue;
            }
            let mut nm = rest;
            if e > 1 {
                nm = nm.mul(&Monomial::var(key, e - 1));
            }
            out.push((nm, c.mul(&C::from_i64(e as i64))));
        }
        Self::from_terms(out)
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect())
    }

    /// Coefficients in `key`: entry `e` is the coefficient of `key^e`.
    pub fn coefficients_in(&self, key: u32) -> Vec<Self> {
        let d = self.degree(key) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = (0..=d).map(|_| Vec::new()).collect();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(key);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Self::from_terms).collect()
    }

    pub fn from_coefficients_in(key: u32, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            let xm = Monomial::var(key, e as u32);
            for (m, c) in &p.terms {
                terms.push((m.mul(&xm), c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Substitutes polynomials for symbols; `f` returns `None` to keep a
    /// symbol unchanged.
    pub fn substitute<F: Fn(u32) -> Option<Self>>(&self, f: F) -> Self {
        let mut cache: Vec<(u32, u32, Self)> = Vec::new();
        let mut acc: Vec<(Monomial, C)> = Vec::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor: Option<Self> = None;
            for &(k, e) in m.0.iter() {
                match f(k) {
                    None => kept = kept.mul(&Monomial::var(k, e)),
                    Some(p) => {
                        let pe = match cache.iter().find(|(kk, ee, _)| *kk == k && *ee == e) {
                            Some((_, _, q)) => q.clone(),
                            None => {
                                let q = p.pow(e);
                                cache.push((k, e, q.clone()));
                                q
                            }
                        };
                        factor = Some(match factor {
                            None => pe,
                            Some(fp) => fp.mul(&pe),
                        });
                    }
                }
            }
            match factor {
                None => acc.push((kept, c.clone())),
                Some(fp) => out = out.add(&fp.mul_monomial(&kept, c)),
            }
        }
        out.add(&Self::from_terms(acc))
    }

    /// Exact division by lex-leading terms; `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lm, lc) = d.leading().cloned()?;
        let lc_inv = lc.inv()?;
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(&lm)?, c.mul(&lc_inv)));
            }
            return Some(Poly { terms: out });
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.leading().cloned() {
            let qm = m.div(&lm)?;
            let qc = c.mul(&lc_inv);
            r = r.sub(&d.mul_monomial(&qm, &qc));
            q.push((qm, qc));
        }
        Some(Self::from_terms(q))
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Highest common power product of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(),
        };
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::Number;

    type P = Poly<Number>;

    fn x() -> P {
        P::var(1)
    }
    fn y() -> P {
        P::var(2)
    }

    #[test]
    fn lex_order_leading_term() {
        let p = y().pow(5).add(&x());
        assert_eq!(p.leading().unwrap().0, Monomial::var(1, 1));
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(a.div_exact(&x().add(&y())).unwrap(), x().sub(&y()));
        assert!(a.div_exact(&x().add(&P::one())).is_none());
    }

    #[test]
    fn substitute_and_derivative() {
        let p = x().pow(3).mul(&y());
        let q = p.substitute(|k| if k == 1 { Some(y().add(&P::one())) } else { None });
        assert_eq!(q, y().add(&P::one()).pow(3).mul(&y()));
        assert_eq!(p.derivative(1), x().pow(2).mul(&y()).scale(&Number::from_i64(3)));
    }
}
