//! One-dimensional finite-difference equations in the separated variables
//! and the first-order equations of the momentum sectors.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::check::{Check, Outcome};
use crate::error::{Error, Result};
use crate::frac::var_poly;
use crate::scalar::Scalar;
use crate::symbols::{Param, Var};
use crate::twisted::TwistedFunction;
use crate::weyl::WeylElement;

/// A monic linear recurrence
/// `φ(q+n) + c_{n-1}(q)φ(q+n-1) + … + c_0(q)φ(q) = 0`
/// on the lattice `q0 + ℤ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    /// `coeffs[j]` multiplies `φ(q+j)`; each is a Scalar in `var`.
    pub coeffs: Vec<Scalar>,
    /// The lattice variable the coefficients depend on.
    pub var: Param,
    /// Base point `q0`.
    pub base: Scalar,
}

fn shift(s: &Scalar, var: Param, by: i64) -> Result<Scalar> {
    s.subst1(var, &Scalar::param(var).add(&Scalar::int(by)))
}

impl Recurrence {
    /// `φ(q+2) − τ(q+1)φ(q+1) + d(q+1)φ(q) = 0` with `τ`, `d` given in `var`.
    pub fn sl2(tau: &Scalar, d: &Scalar, var: Param, base: Scalar) -> Result<Self> {
        Ok(Recurrence { coeffs: alloc::vec![shift(d, var, 1)?, shift(tau, var, 1)?.neg()], var, base })
    }

    /// `φ(q+3) + t1(q+2)φ(q+2) + t2(q+2)φ(q+1) + d(q+2)φ(q) = 0`.
    pub fn sl3(t1: &Scalar, t2: &Scalar, d: &Scalar, var: Param, base: Scalar) -> Result<Self> {
        Ok(Recurrence { coeffs: alloc::vec![shift(d, var, 2)?, shift(t2, var, 2)?, shift(t1, var, 2)?], var, base })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The lattice point `q0 + k`.
    pub fn point(&self, k: i64) -> Scalar {
        self.base.add(&Scalar::int(k))
    }

    fn point_text(&self, k: i64) -> String {
        format!("{} = {}", self.var, self.point(k))
    }

    /// Coefficients evaluated at `q0 + k`.
    pub fn coefficients_at(&self, k: i64) -> Result<Vec<Scalar>> {
        let q = self.point(k);
        self.coeffs
            .iter()
            .map(|c| {
                c.subst1(self.var, &q).map_err(|e| match e {
                    Error::Pole { .. } | Error::DivisionByZero => Error::Pole { bindings: self.point_text(k) },
                    other => other,
                })
            })
            .collect()
    }

    /// Left-hand side at `q0 + k` for a table starting at `q0`.
    pub fn residual_at(&self, values: &[Scalar], k: usize) -> Result<Scalar> {
        let n = self.order();
        if k + n >= values.len() {
            return Err(Error::Index(format!("residual at step {k} needs {} values", k + n + 1)));
        }
        let c = self.coefficients_at(k as i64)?;
        let mut acc = values[k + n].clone();
        for (j, cj) in c.iter().enumerate() {
            acc = acc.add(&cj.mul(&values[k + j]));
        }
        Ok(acc)
    }

    /// Residuals at every point where the table is long enough.
    pub fn residuals(&self, values: &[Scalar]) -> Result<Vec<Scalar>> {
        let count = values.len().saturating_sub(self.order());
        (0..count).map(|k| self.residual_at(values, k)).collect()
    }

    /// Replaces the lattice variable's base point.
    pub fn with_base(&self, base: Scalar) -> Self {
        Recurrence { base, ..self.clone() }
    }
}

/// Runs the recurrence forward from `order` seed values; returns the seeds
/// followed by `steps` new values.
pub fn recurrence_generate(r: &Recurrence, seeds: &[Scalar], steps: usize) -> Result<Vec<Scalar>> {
    let n = r.order();
    if seeds.len() != n {
        return Err(Error::InvalidParams(format!("recurrence of order {n} needs {n} seeds, got {}", seeds.len())));
    }
    let mut out = seeds.to_vec();
    for k in 0..steps {
        let c = r.coefficients_at(k as i64)?;
        let mut next = Scalar::zero();
        for (j, cj) in c.iter().enumerate() {
            next = next.sub(&cj.mul(&out[k + j]));
        }
        out.push(next);
    }
    Ok(out)
}

/// Checks that every residual of `values` vanishes.
pub fn check_residuals(name: &str, anchor: &str, r: &Recurrence, values: &[Scalar]) -> Check {
    Check::run(name, anchor, || {
        for (k, res) in r.residuals(values)?.into_iter().enumerate() {
            if !res.is_zero() {
                return Ok(Outcome::fail(format!("at {}: {}", r.point_text(k as i64), res)));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// A table of one-variable values `φ(q0), φ(q0+1), …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub values: Vec<Scalar>,
}

/// Checks the product ansatz `Φ(q_1, …, q_n) = φ_1(q_1)⋯φ_n(q_n)` against
/// the multidimensional equations: for each index `k`, `eqs[k]` acting in
/// `q_k` must annihilate `Φ` at every grid point the tables reach.
pub fn factorized_solution_check(name: &str, anchor: &str, tables: &[Table], eqs: &[Recurrence]) -> Check {
    Check::run(name, anchor, || {
        if tables.len() != eqs.len() || tables.is_empty() {
            return Err(Error::InvalidParams("one equation per factor is required".into()));
        }
        let dims: Vec<usize> = tables.iter().map(|t| t.values.len()).collect();
        let total: usize = dims.iter().product();
        let value = |idx: &[usize]| {
            idx.iter().zip(tables).fold(Scalar::one(), |acc, (&i, t)| acc.mul(&t.values[i]))
        };
        let mut idx = alloc::vec![0usize; dims.len()];
        for flat in 0..total {
            let mut rest = flat;
            for (slot, d) in idx.iter_mut().zip(&dims) {
                *slot = rest % d;
                rest /= d;
            }
            for (k, eq) in eqs.iter().enumerate() {
                let n = eq.order();
                if idx[k] + n >= dims[k] {
                    continue;
                }
                let c = eq.coefficients_at(idx[k] as i64)?;
                let mut shifted = idx.clone();
                shifted[k] += n;
                let mut acc = value(&shifted);
                for (j, cj) in c.iter().enumerate() {
                    shifted[k] = idx[k] + j;
                    acc = acc.add(&cj.mul(&value(&shifted)));
                }
                if !acc.is_zero() {
                    let at: Vec<String> = idx.iter().zip(eqs).map(|(i, e)| format!("{}", e.point(*i as i64))).collect();
                    return Ok(Outcome::fail(format!("equation {} at ({}): {}", k + 1, at.join(", "), acc)));
                }
            }
        }
        Ok(Outcome::Pass)
    })
}

/// Checks that `φ(k) = k^{e−m}` solves `e·φ = (k∂_k + m)φ` in the momentum
/// variable `var`, with `e` the eigenvalue of the global generator.
pub fn momentum_equation_check(name: &str, anchor: &str, e: &Scalar, m: i64, var: Var) -> Check {
    Check::run(name, anchor, || {
        let m = Scalar::int(m);
        let phi = TwistedFunction::power(&var_poly(var), &e.sub(&m))?;
        let op = WeylElement::var(var).mul(&WeylElement::d(var)).add(&WeylElement::scalar(m));
        let lhs = phi.scale(e);
        let rhs = phi.apply(&op)?;
        Ok(Outcome::from_bool(lhs.equals(&rhs)?, || format!("{} vs {}", lhs, rhs)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sc;

    #[test]
    fn geometric_when_d_vanishes() {
        let r = Recurrence::sl2(&sc("3"), &sc("0"), Param::u(), sc("0")).unwrap();
        let seq = recurrence_generate(&r, &[sc("1"), sc("3")], 4).unwrap();
        assert_eq!(seq, ["1", "3", "9", "27", "81", "243"].map(sc).to_vec());
    }

    #[test]
    fn pole_names_the_point() {
        let r = Recurrence::sl2(&sc("1/(u - 3)"), &sc("1"), Param::u(), sc("0")).unwrap();
        let err = recurrence_generate(&r, &[sc("1"), sc("1")], 5).unwrap_err();
        assert_eq!(err, Error::Pole { bindings: "u = 2".into() });
    }

    #[test]
    fn seed_count_enforced() {
        let r = Recurrence::sl2(&sc("u"), &sc("u"), Param::u(), sc("0")).unwrap();
        assert!(recurrence_generate(&r, &[sc("1")], 3).is_err());
    }
}
