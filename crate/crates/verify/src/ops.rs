//! Named operators for `print-op`.

use sov_core::lax::{b_operator, global_entry, monodromy, quantum_det, transfer_matrices};
use sov_core::{Algebra, Error, Limits, ParamMatrix, Result, WeylElement};

fn two_indices(s: &str, rank: usize) -> Option<(usize, usize)> {
    let b = s.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let (i, j) = ((b[0] as char).to_digit(10)? as usize, (b[1] as char).to_digit(10)? as usize);
    (1..=rank).contains(&i).then_some(())?;
    (1..=rank).contains(&j).then_some((i, j))
}

/// Operators by name: `B`, `A`, `T<ij>`, `E<ij>`, `qdet`, `t`, `t2`.
pub fn named_operator(algebra: Algebra, n: usize, op: &str, limits: &Limits) -> Result<WeylElement> {
    if n == 0 {
        return Err(Error::InvalidParams("chain length must be at least 1".into()));
    }
    let u = ParamMatrix::generic(algebra, n);
    let r = algebra.rank();
    match op {
        "B" => b_operator(&u, limits),
        "A" => Ok(monodromy(&u, limits)?.at(1, 1).clone()),
        "qdet" => quantum_det(&u, limits),
        "t" => Ok(transfer_matrices(&u, limits)?.0),
        "t2" => transfer_matrices(&u, limits)?
            .1
            .ok_or_else(|| Error::InvalidParams("t2 exists only for sl3".into())),
        _ => {
            let (kind, rest) = op.split_at(1.min(op.len()));
            match (kind, two_indices(rest, r)) {
                ("T", Some((i, j))) => Ok(monodromy(&u, limits)?.at(i, j).clone()),
                ("E", Some((i, j))) => global_entry(&u, j, i),
                _ => Err(Error::InvalidParams(format!("unknown operator `{op}`"))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_one_site() {
        let lim = Limits::default();
        assert_eq!(named_operator(Algebra::Sl2, 1, "B", &lim).unwrap().to_string(), "-dx1");
        assert!(named_operator(Algebra::Sl2, 1, "T13", &lim).is_err());
        assert!(named_operator(Algebra::Sl2, 1, "t2", &lim).is_err());
        assert!(named_operator(Algebra::Sl2, 1, "Z", &lim).is_err());
        assert_eq!(named_operator(Algebra::Sl2, 1, "E21", &lim).unwrap(), global_entry(&ParamMatrix::generic(Algebra::Sl2, 1), 1, 2).unwrap());
    }
}
