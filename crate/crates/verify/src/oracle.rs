//! Brute-force random-evaluation oracle.
//!
//! Operators are applied to random polynomial test functions through
//! truncated Taylor jets at a random exact point, so no operator product is
//! ever normal-ordered here. Only field arithmetic in Q(i) is shared with the
//! symbolic engine.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sov_core::frac::VarPoly;
use sov_core::poly::Monomial;
use sov_core::{Frac, Number, Param, Rational, Scalar, TwistedFunction, Var, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub retries: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { trials: 8, seed: 0, max_degree: 3, retries: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("no pole-free sample point after {0} retries")]
    NoPoint(usize),
    #[error("power exponents differ between the two sides: {0}")]
    Unbalanced(String),
    #[error("exponent {0} is not rational")]
    Exponent(String),
    #[error("cannot build the expressions: {0}")]
    Setup(String),
}

/// One factor of an operator product.
#[derive(Clone, Debug)]
pub enum Factor {
    Op(WeylElement),
    /// Multiplication by `form^exponent`.
    Power(VarPoly, Scalar),
}

impl Factor {
    fn order(&self) -> u32 {
        match self {
            Factor::Op(w) => w.order(),
            Factor::Power(..) => 0,
        }
    }
}

/// A Scalar times a product of factors, leftmost factor outermost.
#[derive(Clone, Debug)]
pub struct Product {
    pub coeff: Scalar,
    pub factors: Vec<Factor>,
}

/// A sum of products.
#[derive(Clone, Debug, Default)]
pub struct Expr {
    pub terms: Vec<Product>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn op(w: WeylElement) -> Self {
        Expr { terms: vec![Product { coeff: Scalar::one(), factors: vec![Factor::Op(w)] }] }
    }

    pub fn scalar(s: Scalar) -> Self {
        Expr { terms: vec![Product { coeff: s, factors: Vec::new() }] }
    }

    pub fn power(form: VarPoly, exponent: Scalar) -> Self {
        Expr { terms: vec![Product { coeff: Scalar::one(), factors: vec![Factor::Power(form, exponent)] }] }
    }

    /// Product of operators, leftmost first.
    pub fn chain(ops: &[WeylElement]) -> Self {
        Expr { terms: vec![Product { coeff: Scalar::one(), factors: ops.iter().cloned().map(Factor::Op).collect() }] }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Expr { terms }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Expr { terms: self.terms.iter().map(|t| Product { coeff: t.coeff.mul(s), factors: t.factors.clone() }).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &o.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Product { coeff: a.coeff.mul(&b.coeff), factors });
            }
        }
        Expr { terms }
    }

    /// Substitutes one parameter everywhere.
    pub fn subst1(&self, p: Param, v: &Scalar) -> sov_core::Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut factors = Vec::with_capacity(t.factors.len());
            for f in &t.factors {
                factors.push(match f {
                    Factor::Op(w) => Factor::Op(w.subst1(p, v)?),
                    Factor::Power(form, e) => Factor::Power(
                        sov_core::frac::subst_poly(form, &[(p, v.clone())].into_iter().collect())?,
                        e.subst1(p, v)?,
                    ),
                });
            }
            terms.push(Product { coeff: t.coeff.subst1(p, v)?, factors });
        }
        Ok(Expr { terms })
    }

    fn collect(&self, params: &mut Vec<Param>, vars: &mut Vec<Var>) {
        for t in &self.terms {
            params.extend(t.coeff.params());
            for f in &t.factors {
                match f {
                    Factor::Op(w) => {
                        vars.extend(w.vars());
                        for (_, c) in w.terms() {
                            frac_params(c, params);
                        }
                    }
                    Factor::Power(form, e) => {
                        vars.extend(sov_core::frac::poly_vars(form));
                        poly_params(form, params);
                        params.extend(e.params());
                    }
                }
            }
        }
    }
}

fn poly_params(p: &VarPoly, out: &mut Vec<Param>) {
    for (_, c) in p.terms() {
        out.extend(c.params());
    }
}

fn frac_params(f: &Frac, out: &mut Vec<Param>) {
    poly_params(f.numer(), out);
    for (form, _) in f.den() {
        poly_params(form, out);
    }
}

/// Outcome of a comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub agree: bool,
    pub trials: usize,
    /// Description of the first disagreeing trial.
    pub mismatch: Option<String>,
}

/// A random exact point: parameter values and variable values.
#[derive(Clone, Debug)]
struct Point {
    params: BTreeMap<u32, Number>,
    vars: Vec<(u32, Number)>,
}

#[derive(Debug)]
struct Pole;

impl Point {
    fn param(&self, key: u32) -> Number {
        self.params.get(&key).cloned().unwrap_or(Number::ZERO)
    }

    fn scalar(&self, s: &Scalar) -> Result<Number, Pole> {
        let eval = |p: &sov_core::gcd::NPoly| {
            let mut acc = Number::ZERO;
            for (m, c) in p.terms() {
                let mut t = c.clone();
                for &(k, e) in m.0.iter() {
                    t = t.mul(&pow(&self.param(k), e));
                }
                acc = acc.add(&t);
            }
            acc
        };
        let d = eval(s.denom());
        if d.is_zero() {
            return Err(Pole);
        }
        Ok(eval(s.numer()).div(&d).expect("nonzero"))
    }

    fn index(&self, key: u32) -> usize {
        self.vars.iter().position(|(k, _)| *k == key).expect("variable registered")
    }
}

fn pow(x: &Number, e: u32) -> Number {
    let mut r = Number::ONE;
    for _ in 0..e {
        r = r.mul(x);
    }
    r
}

/// Truncated multivariate power series in the offsets `h` from a point.
#[derive(Clone, Debug, PartialEq)]
struct Jet {
    n: usize,
    deg: u32,
    terms: BTreeMap<Vec<u8>, Number>,
}

impl Jet {
    fn zero(n: usize, deg: u32) -> Self {
        Jet { n, deg, terms: BTreeMap::new() }
    }

    fn constant(n: usize, deg: u32, c: Number) -> Self {
        let mut j = Jet::zero(n, deg);
        if !c.is_zero() {
            j.terms.insert(vec![0; n], c);
        }
        j
    }

    fn value(&self) -> Number {
        self.terms.get(&vec![0u8; self.n]).cloned().unwrap_or(Number::ZERO)
    }

    fn truncate(&self, deg: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.iter().map(|&e| e as u32).sum::<u32>() <= deg)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Jet { n: self.n, deg, terms }
    }

    fn add_into(&mut self, o: &Jet) {
        for (k, v) in &o.terms {
            let e = self.terms.entry(k.clone()).or_insert(Number::ZERO);
            *e = e.add(v);
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    fn scale(&self, c: &Number) -> Self {
        if c.is_zero() {
            return Jet::zero(self.n, self.deg);
        }
        Jet { n: self.n, deg: self.deg, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect() }
    }

    fn mul(&self, o: &Jet) -> Self {
        let deg = self.deg.min(o.deg);
        let mut out = Jet::zero(self.n, deg);
        for (ka, va) in &self.terms {
            let da: u32 = ka.iter().map(|&e| e as u32).sum();
            for (kb, vb) in &o.terms {
                let db: u32 = kb.iter().map(|&e| e as u32).sum();
                if da + db > deg {
                    continue;
                }
                let k: Vec<u8> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                let e = out.terms.entry(k).or_insert(Number::ZERO);
                *e = e.add(&va.mul(vb));
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    /// `∂/∂h_i`; the result is known to one degree less.
    fn derivative(&self, i: usize) -> Self {
        let mut out = Jet::zero(self.n, self.deg.saturating_sub(1));
        for (k, v) in &self.terms {
            if k[i] == 0 {
                continue;
            }
            let mut nk = k.clone();
            nk[i] -= 1;
            out.terms.insert(nk, v.mul(&Number::from_i64(k[i] as i64)));
        }
        out
    }

    /// `Σ_k coeffs[k] δ^k` where `δ = self − self(0)`.
    fn compose_series(&self, coeffs: &[Number]) -> Self {
        let mut delta = self.clone();
        delta.terms.remove(&vec![0u8; self.n]);
        let mut out = Jet::zero(self.n, self.deg);
        let mut dk = Jet::constant(self.n, self.deg, Number::ONE);
        for c in coeffs {
            out.add_into(&dk.scale(c));
            dk = dk.mul(&delta);
            if dk.terms.is_empty() {
                break;
            }
        }
        out
    }

    fn inverse(&self) -> Result<Self, Pole> {
        let c = self.value();
        let inv = c.inv().ok_or(Pole)?;
        // 1/(c+δ) = Σ (−1)^k δ^k / c^{k+1}
        let mut coeffs = Vec::new();
        let mut t = inv.clone();
        for _ in 0..=self.deg {
            coeffs.push(t.clone());
            t = t.mul(&inv).neg();
        }
        Ok(self.compose_series(&coeffs))
    }

    /// `(self/self(0))^α` for rational `α`.
    fn normalized_power(&self, alpha: &Number) -> Result<Self, Pole> {
        let c = self.value();
        let inv = c.inv().ok_or(Pole)?;
        // (1 + δ/c)^α = Σ binom(α, k) (δ/c)^k
        let mut coeffs = Vec::new();
        let mut b = Number::ONE;
        let mut ck = Number::ONE;
        for k in 0..=self.deg {
            coeffs.push(b.mul(&ck));
            b = b.mul(&alpha.sub(&Number::from_i64(k as i64))).div(&Number::from_i64(k as i64 + 1)).expect("nonzero");
            ck = ck.mul(&inv);
        }
        Ok(self.compose_series(&coeffs))
    }

    /// `exp(self − self(0))`.
    fn normalized_exp(&self) -> Self {
        let mut coeffs = Vec::new();
        let mut f = Number::ONE;
        for k in 0..=self.deg {
            coeffs.push(f.clone());
            f = f.div(&Number::from_i64(k as i64 + 1)).expect("nonzero");
        }
        self.compose_series(&coeffs)
    }
}

struct Ctx<'a> {
    pt: &'a Point,
    n: usize,
}

impl Ctx<'_> {
    /// Jet of a polynomial in the variables at the point.
    fn poly(&self, p: &VarPoly, deg: u32) -> Result<Jet, Pole> {
        let mut out = Jet::zero(self.n, deg);
        for (m, c) in p.terms() {
            let mut t = Jet::constant(self.n, deg, self.pt.scalar(c)?);
            for &(k, e) in m.0.iter() {
                let i = self.pt.index(k);
                let mut lin = Jet::constant(self.n, deg, self.pt.vars[i].1.clone());
                let mut unit = vec![0u8; self.n];
                unit[i] = 1;
                lin.terms.insert(unit, Number::ONE);
                for _ in 0..e {
                    t = t.mul(&lin);
                }
            }
            out.add_into(&t);
        }
        Ok(out)
    }

    fn frac(&self, f: &Frac, deg: u32) -> Result<Jet, Pole> {
        let mut j = self.poly(f.numer(), deg)?;
        for (form, e) in f.den() {
            let inv = self.poly(form, deg)?.inverse()?;
            for _ in 0..*e {
                j = j.mul(&inv);
            }
        }
        Ok(j)
    }

    fn apply_op(&self, w: &WeylElement, g: &Jet, deg: u32) -> Result<Jet, Pole> {
        let mut out = Jet::zero(self.n, deg);
        for (key, c) in w.terms() {
            let mut d = g.clone();
            for &(k, e) in key.0.iter() {
                let i = self.pt.index(k);
                for _ in 0..e {
                    d = d.derivative(i);
                }
            }
            out.add_into(&self.frac(c, deg)?.mul(&d.truncate(deg)));
        }
        Ok(out)
    }

    /// Applies a product; non-integral powers contribute their normalized
    /// series and are reported through `dropped`.
    fn apply_product(&self, p: &Product, g: &Jet, dropped: &mut Vec<String>) -> Result<Number, OracleFailure> {
        let orders: Vec<u32> = p.factors.iter().map(Factor::order).collect();
        let mut acc = g.clone();
        for (i, f) in p.factors.iter().enumerate().rev() {
            let out_deg: u32 = orders[..i].iter().sum();
            acc = match f {
                Factor::Op(w) => self.apply_op(w, &acc, out_deg)?,
                Factor::Power(form, e) => {
                    let base = self.poly(form, out_deg)?;
                    let alpha = self.pt.scalar(e)?;
                    let pj = power_jet(&base, &alpha, form, e, dropped)?;
                    pj.mul(&acc.truncate(out_deg))
                }
            };
        }
        Ok(acc.value().mul(&self.pt.scalar(&p.coeff)?))
    }
}

enum OracleFailure {
    Pole,
    Fatal(OracleError),
}

impl From<Pole> for OracleFailure {
    fn from(_: Pole) -> Self {
        OracleFailure::Pole
    }
}

fn power_jet(base: &Jet, alpha: &Number, form: &VarPoly, e: &Scalar, dropped: &mut Vec<String>) -> Result<Jet, OracleFailure> {
    if !alpha.is_real() {
        return Err(OracleFailure::Fatal(OracleError::Exponent(e.to_string())));
    }
    match alpha.to_i64() {
        Some(k) if k >= 0 => {
            let mut j = Jet::constant(base.n, base.deg, Number::ONE);
            for _ in 0..k {
                j = j.mul(base);
            }
            Ok(j)
        }
        Some(k) => {
            let inv = base.inverse()?;
            let mut j = Jet::constant(base.n, base.deg, Number::ONE);
            for _ in 0..(-k) {
                j = j.mul(&inv);
            }
            Ok(j)
        }
        None => {
            dropped.push(format!("[{}]^({})", sov_core::frac::display_var_poly(form), e));
            Ok(base.normalized_power(alpha)?)
        }
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Number {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=7);
    Number::real(Rational::new(n, d))
}

fn sample_point(rng: &mut ChaCha8Rng, params: &[Param], vars: &[Var]) -> Point {
    Point {
        params: params.iter().map(|p| (p.0, small_rational(rng))).collect(),
        vars: vars.iter().map(|v| (v.0, small_rational(rng))).collect(),
    }
}

/// Random polynomial of total degree `≤ max_degree`, as a jet at the point.
fn test_function(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, pt: &Point, deg: u32) -> Jet {
    let mut exps: Vec<Vec<u8>> = vec![vec![0; n]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &exps {
            for i in 0..n {
                let mut f = e.clone();
                f[i] += 1;
                next.push(f);
            }
        }
        exps.extend(next);
        exps.sort();
        exps.dedup();
    }
    exps.retain(|e| e.iter().map(|&x| x as u32).sum::<u32>() <= max_degree);
    let ctx = Ctx { pt, n };
    let mut poly = VarPoly::zero();
    for e in exps {
        let c = small_rational(rng);
        let mono: Vec<(u32, u32)> = e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (pt.vars[i].0, x as u32)).collect();
        poly = poly.add(&VarPoly::term(Monomial(mono.into_iter().collect()), Scalar::number(c)));
    }
    ctx.poly(&poly, deg).expect("polynomials have no poles")
}

fn total_order(e: &Expr) -> u32 {
    e.terms.iter().map(|t| t.factors.iter().map(Factor::order).sum::<u32>()).max().unwrap_or(0)
}

fn evaluate(ctx: &Ctx, e: &Expr, g: &Jet) -> Result<(Number, Vec<String>), OracleFailure> {
    let mut sum = Number::ZERO;
    let mut dropped_all: Option<Vec<String>> = None;
    for t in &e.terms {
        let mut dropped = Vec::new();
        let v = ctx.apply_product(t, g, &mut dropped)?;
        dropped.sort();
        match &dropped_all {
            None => dropped_all = Some(dropped),
            Some(d) if *d == dropped => {}
            Some(d) => {
                return Err(OracleFailure::Fatal(OracleError::Unbalanced(format!("{} vs {}", d.join(" "), dropped.join(" ")))))
            }
        }
        sum = sum.add(&v);
    }
    Ok((sum, dropped_all.unwrap_or_default()))
}

fn variables(exprs: &[&Expr], extra_vars: &[Var], extra_params: &[Param]) -> (Vec<Param>, Vec<Var>) {
    let mut params = extra_params.to_vec();
    let mut vars = extra_vars.to_vec();
    for e in exprs {
        e.collect(&mut params, &mut vars);
    }
    params.sort();
    params.dedup();
    vars.sort();
    vars.dedup();
    (params, vars)
}

/// Compares two operator expressions on random polynomial test functions at
/// random exact points.
pub fn oracle_equiv(a: &Expr, b: &Expr, cfg: &OracleConfig) -> Result<Verdict, OracleError> {
    let (params, vars) = variables(&[a, b], &[], &[]);
    let n = vars.len();
    let deg = total_order(a).max(total_order(b));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..cfg.trials {
        let mut attempt = 0;
        loop {
            let pt = sample_point(&mut rng, &params, &vars);
            let g = test_function(&mut rng, n, cfg.max_degree, &pt, deg);
            let ctx = Ctx { pt: &pt, n };
            let res = evaluate(&ctx, a, &g).and_then(|x| evaluate(&ctx, b, &g).map(|y| (x, y)));
            match res {
                Ok(((va, da), (vb, db))) => {
                    if da != db && !(va.is_zero() && vb.is_zero()) {
                        return Err(OracleError::Unbalanced(format!("{} vs {}", da.join(" "), db.join(" "))));
                    }
                    if va != vb {
                        return Ok(Verdict {
                            agree: false,
                            trials: trial + 1,
                            mismatch: Some(format!("trial {}: {} vs {}", trial + 1, va, vb)),
                        });
                    }
                    break;
                }
                Err(OracleFailure::Pole) => {
                    attempt += 1;
                    if attempt > cfg.retries {
                        return Err(OracleError::NoPoint(cfg.retries));
                    }
                }
                Err(OracleFailure::Fatal(e)) => return Err(e),
            }
        }
    }
    Ok(Verdict { agree: true, trials: cfg.trials, mismatch: None })
}

fn function_jet(ctx: &Ctx, f: &TwistedFunction, deg: u32, dropped: &mut Vec<String>) -> Result<Jet, OracleFailure> {
    let mut j = ctx.frac(f.prefactor(), deg)?;
    for (form, e) in f.powers() {
        let base = ctx.poly(form, deg)?;
        let alpha = ctx.pt.scalar(e)?;
        j = j.mul(&power_jet(&base, &alpha, form, e, dropped)?);
    }
    if !f.phase().is_zero() {
        dropped.push(format!("exp({})", f.phase().to_text()));
        j = j.mul(&ctx.frac(f.phase(), deg)?.normalized_exp());
    }
    Ok(j)
}

/// Compares `a·f` with `b·g` on twisted functions; transcendental factors
/// shared by both sides (non-integral powers, exponentials) are divided out
/// at the sample point.
pub fn oracle_function_equiv(
    a: &Expr,
    f: &TwistedFunction,
    b: &Expr,
    g: &TwistedFunction,
    cfg: &OracleConfig,
) -> Result<Verdict, OracleError> {
    let mut fp = Vec::new();
    let mut fv = Vec::new();
    for h in [f, g] {
        for form in h.powers().iter().map(|(p, _)| p) {
            fv.extend(sov_core::frac::poly_vars(form));
            poly_params(form, &mut fp);
        }
        for (_, e) in h.powers() {
            fp.extend(e.params());
        }
        fv.extend(h.prefactor().vars());
        frac_params(h.prefactor(), &mut fp);
        fv.extend(h.phase().vars());
        frac_params(h.phase(), &mut fp);
    }
    let (params, vars) = variables(&[a, b], &fv, &fp);
    let n = vars.len();
    let (da_ord, db_ord) = (total_order(a), total_order(b));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..cfg.trials {
        let mut attempt = 0;
        loop {
            let pt = sample_point(&mut rng, &params, &vars);
            let ctx = Ctx { pt: &pt, n };
            let side = |e: &Expr, h: &TwistedFunction, deg: u32| -> Result<(Number, Vec<String>), OracleFailure> {
                let mut dropped = Vec::new();
                let j = function_jet(&ctx, h, deg, &mut dropped)?;
                let (v, mut d2) = evaluate(&ctx, e, &j)?;
                dropped.append(&mut d2);
                dropped.sort();
                Ok((v, dropped))
            };
            match side(a, f, da_ord).and_then(|x| side(b, g, db_ord).map(|y| (x, y))) {
                Ok(((va, da), (vb, db))) => {
                    if da != db && !(va.is_zero() && vb.is_zero()) {
                        return Err(OracleError::Unbalanced(format!("{} vs {}", da.join(" "), db.join(" "))));
                    }
                    if va != vb {
                        return Ok(Verdict {
                            agree: false,
                            trials: trial + 1,
                            mismatch: Some(format!("trial {}: {} vs {}", trial + 1, va, vb)),
                        });
                    }
                    break;
                }
                Err(OracleFailure::Pole) => {
                    attempt += 1;
                    if attempt > cfg.retries {
                        return Err(OracleError::NoPoint(cfg.retries));
                    }
                }
                Err(OracleFailure::Fatal(e)) => return Err(e),
            }
        }
    }
    Ok(Verdict { agree: true, trials: cfg.trials, mismatch: None })
}

/// Evaluates a Scalar at random points; used for identities between
/// Scalars such as recurrence residuals.
pub fn oracle_scalar_equiv(a: &Scalar, b: &Scalar, cfg: &OracleConfig) -> Result<Verdict, OracleError> {
    oracle_equiv(&Expr::scalar(a.clone()), &Expr::scalar(b.clone()), cfg)
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
    fn jet_inverse_times_self_is_one() {
        let pt = Point { params: BTreeMap::new(), vars: vec![(Var::x(1).0, Number::ratio(2, 3))] };
        let ctx = Ctx { pt: &pt, n: 1 };
        let p = sov_core::frac::var_poly(Var::x(1)).add(&VarPoly::constant(Scalar::int(1)));
        let j = ctx.poly(&p, 4).unwrap();
        let one = j.mul(&j.inverse().unwrap());
        assert_eq!(one, Jet::constant(1, 4, Number::ONE));
    }

    #[test]
    fn defining_relation() {
        let cfg = OracleConfig::default();
        let lhs = Expr::chain(&[dx(), x()]);
        let rhs = Expr::chain(&[x(), dx()]).add(&Expr::scalar(Scalar::one()));
        assert!(oracle_equiv(&lhs, &rhs, &cfg).unwrap().agree);
        let v = oracle_equiv(&lhs, &Expr::chain(&[x(), dx()]), &cfg).unwrap();
        assert!(!v.agree);
        assert_eq!(v.trials, 1);
    }
}
