//! Integer points where every intertwiner argument of a chain is a
//! nonnegative integer.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::intertwiners::Condition;
use crate::scalar::{Bindings, Scalar};
use crate::symbols::{Param, ParamKind};

/// A solution: parameter bindings plus the integer chosen for each factor.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LatticeAssignment {
    pub bindings: Bindings,
    /// `(factor tag, value)` in the order the conditions were met.
    pub values: Vec<(String, i64)>,
}

impl LatticeAssignment {
    pub fn value(&self, tag: &str) -> Option<i64> {
        self.values.iter().find(|(t, _)| t == tag).map(|(_, v)| *v)
    }
}

/// Search settings.
#[derive(Clone, Debug)]
pub struct Solver {
    /// Integers tried for a free argument, in order.
    pub choices: Vec<i64>,
    /// Forced values keyed by condition index.
    pub overrides: BTreeMap<usize, i64>,
    /// Parameters that must stay symbolic.
    pub frozen: Vec<Param>,
    pub max_nodes: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { choices: alloc::vec![1, 0, 2], overrides: BTreeMap::new(), frozen: Vec::new(), max_nodes: 20_000 }
    }
}

fn rank(p: Param) -> Option<u8> {
    match p.kind() {
        ParamKind::Root => Some(0),
        ParamKind::Representation => Some(1),
        ParamKind::Other => Some(2),
        ParamKind::Spectral | ParamKind::Momentum => None,
    }
}

fn compose(b: &Bindings, p: Param, v: &Scalar) -> Result<Bindings> {
    let mut out = Bindings::new();
    for (k, x) in b {
        out.insert(*k, x.subst1(p, v)?);
    }
    out.insert(p, v.clone());
    Ok(out)
}

struct Search<'a> {
    solver: &'a Solver,
    conds: &'a [Condition],
    accept: &'a dyn Fn(&Bindings) -> bool,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, i: usize, b: &Bindings, vals: &mut Vec<(String, i64)>) -> Result<Option<Bindings>> {
        self.nodes += 1;
        if self.nodes > self.solver.max_nodes {
            return Err(Error::OffLattice("lattice search exceeded its node budget".into()));
        }
        if i == self.conds.len() {
            return Ok(if (self.accept)(b) { Some(b.clone()) } else { None });
        }
        let c = &self.conds[i];
        let arg = c.arg.substitute(b)?;
        let forced = self.solver.overrides.get(&i).copied();
        if let Some(n) = arg.as_integer() {
            if n < 0 || forced.is_some_and(|f| f != n) {
                return Ok(None);
            }
            vals.push((c.tag.clone(), n));
            let r = self.run(i + 1, b, vals)?;
            if r.is_none() {
                vals.pop();
            }
            return Ok(r);
        }
        if arg.is_constant() {
            return Ok(None);
        }
        let mut cands: Vec<(u8, Param)> = arg
            .params()
            .into_iter()
            .filter(|p| !self.solver.frozen.contains(p))
            .filter_map(|p| rank(p).map(|r| (r, p)))
            .collect();
        cands.sort();
        let Some(&(_, pivot)) = cands.first() else {
            return Ok(None);
        };
        let Some((a, rest)) = arg.affine_in(pivot) else {
            return Ok(None);
        };
        if a.is_zero() || !a.is_constant() {
            return Ok(None);
        }
        let choices = match forced {
            Some(f) => alloc::vec![f],
            None => self.solver.choices.clone(),
        };
        for n in choices {
            let val = Scalar::int(n).sub(&rest).div(&a)?;
            let nb = compose(b, pivot, &val)?;
            vals.push((c.tag.clone(), n));
            if let Some(r) = self.run(i + 1, &nb, vals)? {
                return Ok(Some(r));
            }
            vals.pop();
        }
        Ok(None)
    }
}

impl Solver {
    /// Finds bindings making every argument a nonnegative integer, starting
    /// from `start` and subject to `accept` on the final bindings.
    pub fn solve(&self, conds: &[Condition], start: &Bindings, accept: &dyn Fn(&Bindings) -> bool) -> Result<LatticeAssignment> {
        let mut s = Search { solver: self, conds, accept, nodes: 0 };
        let mut vals = Vec::new();
        match s.run(0, start, &mut vals)? {
            Some(bindings) => Ok(LatticeAssignment { bindings, values: vals }),
            None => Err(Error::OffLattice("no lattice point satisfies every intertwiner condition".into())),
        }
    }
}

/// Checks a fixed assignment: every argument must already be a
/// nonnegative integer.
pub fn check_assignment(conds: &[Condition], b: &Bindings) -> Result<Vec<(String, i64)>> {
    let mut out = Vec::new();
    for c in conds {
        let arg = c.arg.substitute(b)?;
        match arg.as_integer() {
            Some(n) if n >= 0 => out.push((c.tag.clone(), n)),
            _ => {
                return Err(Error::OffLattice(alloc::format!(
                    "{}: argument {} is not a nonnegative integer",
                    c.tag, arg
                )))
            }
        }
    }
    Ok(out)
}

/// Binds each parameter not skipped to a distinct small rational.
pub fn specialize(params: &[Param], skip: &dyn Fn(Param) -> bool) -> Bindings {
    let mut out = Bindings::new();
    let mut k = 0i64;
    for p in params {
        if skip(*p) || out.contains_key(p) {
            continue;
        }
        // 1/3, 2/7, 3/11, … keep values away from integers and each other.
        k += 1;
        out.insert(*p, Scalar::ratio(k, 4 * k - 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sc;

    fn cond(tag: &str, s: &str) -> Condition {
        Condition { tag: tag.into(), arg: sc(s) }
    }

    #[test]
    fn roots_are_pivoted_first() {
        let conds = [cond("a", "c_1_2 + q_1"), cond("b", "c_2_1 - c_1_2")];
        let sol = Solver::default().solve(&conds, &Bindings::new(), &|_| true).unwrap();
        assert_eq!(sol.bindings[&Param::parse("q_1").unwrap()], sc("-c_2_1 + 2"));
        assert_eq!(sol.bindings[&Param::parse("c_1_2").unwrap()], sc("c_2_1 - 1"));
        assert_eq!(check_assignment(&conds, &sol.bindings).unwrap().len(), 2);
    }

    #[test]
    fn negative_constant_is_rejected() {
        let conds = [cond("a", "-1")];
        assert!(Solver::default().solve(&conds, &Bindings::new(), &|_| true).is_err());
    }

    #[test]
    fn backtracks_on_conflict() {
        // q = 1 forces the second argument to -1; the solver must back off to q = 0 or 2.
        let conds = [cond("a", "q_1"), cond("b", "q_1 - 2")];
        let sol = Solver::default().solve(&conds, &Bindings::new(), &|_| true).unwrap();
        assert_eq!(sol.values, alloc::vec![("a".into(), 2), ("b".into(), 0)]);
    }
}
