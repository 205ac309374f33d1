//! L-operators, monodromy matrices, quantum minors, transfer matrices and the
//! B-operator, plus the RTT and coproduct checks.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{Check, Outcome};
use crate::error::{Error, Result};
use crate::frac::{var_poly, Frac};
use crate::scalar::Scalar;
use crate::symbols::{Base, Param, Var};
use crate::weyl::{Limits, OpMatrix, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    Sl2,
    Sl3,
}

impl Algebra {
    /// Size of the auxiliary matrix.
    pub fn rank(self) -> usize {
        match self {
            Algebra::Sl2 => 2,
            Algebra::Sl3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Sl2 => "sl2",
            Algebra::Sl3 => "sl3",
        }
    }

    pub fn parse(s: &str) -> Option<Algebra> {
        match s {
            "sl2" => Some(Algebra::Sl2),
            "sl3" => Some(Algebra::Sl3),
            _ => None,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters `u_{1k}, u_{2k}(, u_{3k})` of one L-operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteParams {
    pub algebra: Algebra,
    /// Variable site the operator acts on.
    pub site: usize,
    pub entries: Vec<Scalar>,
}

impl SiteParams {
    /// Validates that each entry is `spectral + (spectral-free part)`.
    pub fn new(algebra: Algebra, site: usize, entries: Vec<Scalar>, spectral: Param) -> Result<Self> {
        if entries.len() != algebra.rank() {
            return Err(Error::InvalidParams(alloc::format!(
                "{} needs {} entries, got {}",
                algebra,
                algebra.rank(),
                entries.len()
            )));
        }
        if site == 0 {
            return Err(Error::InvalidParams("sites are numbered from 1".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            match e.affine_in(spectral) {
                Some((c1, c0)) if c1.is_one() && !c0.contains(spectral) => {}
                _ => {
                    return Err(Error::InvalidParams(alloc::format!(
                        "entry u_{}_{} = {} is not {} plus a {}-free shift",
                        i + 1,
                        site,
                        e,
                        spectral,
                        spectral
                    )))
                }
            }
        }
        Ok(SiteParams { algebra, site, entries })
    }

    /// `u_{ik} = u + c_i_k` with fresh symbols.
    pub fn generic(algebra: Algebra, site: usize) -> Self {
        let u = Scalar::param(Param::u());
        let entries = (1..=algebra.rank()).map(|i| u.add(&Scalar::param(Param::idx2(Base::C, i, site)))).collect();
        SiteParams { algebra, site, entries }
    }

    /// `u_{ik} = u − σ_i^{(k)} + δ_k`.
    pub fn representation(algebra: Algebra, site: usize) -> Self {
        let u = Scalar::param(Param::u());
        let d = Scalar::param(Param::idx(Base::Delta, site));
        let entries = (1..=algebra.rank())
            .map(|i| u.sub(&Scalar::param(Param::idx2(Base::Sigma, i, site))).add(&d))
            .collect();
        SiteParams { algebra, site, entries }
    }

    /// One-based entry.
    pub fn u(&self, i: usize) -> &Scalar {
        &self.entries[i - 1]
    }
}

/// Elementary parameter moves recorded by [`ParamMatrix`].
#[derive(Clone, Debug, PartialEq)]
pub enum Move {
    /// Swap rows `i` and `j` inside the column at chain position `pos`.
    Within { pos: usize, i: usize, j: usize },
    /// Swap row `row_left` at position `pos` with row `row_right` at
    /// `pos + 1` (the column to its right).
    Cross { pos: usize, row_left: usize, row_right: usize },
    /// Replace an entry the B-operator does not depend on.
    Replace { pos: usize, row: usize, value: Scalar },
}

/// Parameter matrix: column 0 is the leftmost factor of the monodromy
/// (chain position N).
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMatrix {
    pub algebra: Algebra,
    pub spectral: Param,
    pub columns: Vec<SiteParams>,
    pub log: Vec<Move>,
}

impl ParamMatrix {
    pub fn new(algebra: Algebra, columns: Vec<SiteParams>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidParams("empty chain".into()));
        }
        if columns.iter().any(|c| c.algebra != algebra) {
            return Err(Error::InvalidParams("mixed algebras".into()));
        }
        Ok(ParamMatrix { algebra, spectral: Param::u(), columns, log: Vec::new() })
    }

    /// Chain of length `n` with sites `n, …, 1` from left to right and
    /// entries `u + c_i_k`.
    pub fn generic(algebra: Algebra, n: usize) -> Self {
        let columns = (1..=n).rev().map(|k| SiteParams::generic(algebra, k)).collect();
        ParamMatrix { algebra, spectral: Param::u(), columns, log: Vec::new() }
    }

    /// As [`ParamMatrix::generic`] with `u − σ_i^{(k)} + δ_k` entries.
    pub fn representation(algebra: Algebra, n: usize) -> Self {
        let columns = (1..=n).rev().map(|k| SiteParams::representation(algebra, k)).collect();
        ParamMatrix { algebra, spectral: Param::u(), columns, log: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Position (from the left) of the column acting on `site`.
    pub fn position_of_site(&self, site: usize) -> Option<usize> {
        self.columns.iter().position(|c| c.site == site)
    }

    /// One-based row, zero-based position.
    pub fn entry(&self, row: usize, pos: usize) -> &Scalar {
        self.columns[pos].u(row)
    }

    pub fn swap_within(&mut self, pos: usize, i: usize, j: usize) {
        self.columns[pos].entries.swap(i - 1, j - 1);
        self.log.push(Move::Within { pos, i, j });
    }

    pub fn swap_cross(&mut self, pos: usize, row_left: usize, row_right: usize) {
        let a = self.columns[pos].entries[row_left - 1].clone();
        let b = self.columns[pos + 1].entries[row_right - 1].clone();
        self.columns[pos].entries[row_left - 1] = b;
        self.columns[pos + 1].entries[row_right - 1] = a;
        self.log.push(Move::Cross { pos, row_left, row_right });
    }

    pub fn replace(&mut self, pos: usize, row: usize, value: Scalar) {
        self.columns[pos].entries[row - 1] = value.clone();
        self.log.push(Move::Replace { pos, row, value });
    }

    /// Substitutes parameters in every entry.
    pub fn substitute(&self, b: &crate::scalar::Bindings) -> Result<Self> {
        let mut out = self.clone();
        for c in out.columns.iter_mut() {
            for e in c.entries.iter_mut() {
                *e = e.substitute(b)?;
            }
        }
        Ok(out)
    }

    /// Entries printed column by column, e.g. `[site 2: a, b | site 1: c, d]`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("[");
        for (p, c) in self.columns.iter().enumerate() {
            if p > 0 {
                s.push_str(" | ");
            }
            s.push_str(&alloc::format!("site {}: ", c.site));
            for (i, e) in c.entries.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                s.push_str(&e.to_text());
            }
        }
        s.push(']');
        s
    }
}

fn w(s: &Scalar) -> WeylElement {
    WeylElement::scalar(s.clone())
}

fn int(n: i64) -> WeylElement {
    WeylElement::scalar(Scalar::int(n))
}

/// The SL(2) L-operator acting on `x_k`.
pub fn lax_sl2(params: &SiteParams) -> Result<OpMatrix> {
    if params.algebra != Algebra::Sl2 {
        return Err(Error::InvalidParams("lax_sl2 needs sl2 parameters".into()));
    }
    let k = params.site;
    let x = WeylElement::var(Var::x(k));
    let d = WeylElement::d(Var::x(k));
    let (u1, u2) = (w(params.u(1)), w(params.u(2)));
    let xd = x.mul(&d);
    OpMatrix::from_rows(alloc::vec![
        alloc::vec![xd.add(&u1).add(&int(1)), d.neg()],
        alloc::vec![x.mul(&xd.add(&u1).sub(&u2).add(&int(1))), u2.sub(&xd)],
    ])
}

/// The SL(3) L-operator acting on `x_k, y_k, z_k`.
pub fn lax_sl3(params: &SiteParams) -> Result<OpMatrix> {
    if params.algebra != Algebra::Sl3 {
        return Err(Error::InvalidParams("lax_sl3 needs sl3 parameters".into()));
    }
    let k = params.site;
    let (x, y, z) = (WeylElement::var(Var::x(k)), WeylElement::var(Var::y(k)), WeylElement::var(Var::z(k)));
    let (dx, dy, dz) = (WeylElement::d(Var::x(k)), WeylElement::d(Var::y(k)), WeylElement::d(Var::z(k)));
    let (u1, u2, u3) = (w(params.u(1)), w(params.u(2)), w(params.u(3)));
    let xdx = x.mul(&dx);
    let ydy = y.mul(&dy);
    let zdz = z.mul(&dz);
    let l11 = u1.add(&int(2)).add(&xdx).add(&ydy);
    let l21 = y.mul(&dz).add(&x.mul(&xdx.add(&ydy).sub(&zdz).add(&u1).sub(&u2).add(&int(1))));
    let l22 = u2.add(&int(1)).sub(&xdx).add(&zdz);
    let l23 = dz.neg().sub(&x.mul(&dy));
    let l31 = y
        .mul(&xdx.add(&ydy).add(&zdz).add(&u1).sub(&u3).add(&int(2)))
        .sub(&x.mul(&z).mul(&zdz.add(&u2).sub(&u3).add(&int(1))));
    let l32 = y.mul(&dx).neg().add(&z.mul(&zdz.add(&u2).sub(&u3).add(&int(1))));
    let l33 = u3.sub(&ydy).sub(&zdz);
    OpMatrix::from_rows(alloc::vec![
        alloc::vec![l11, dx.neg(), dy.neg()],
        alloc::vec![l21, l22, l23],
        alloc::vec![l31, l32, l33],
    ])
}

pub fn lax(params: &SiteParams) -> Result<OpMatrix> {
    match params.algebra {
        Algebra::Sl2 => lax_sl2(params),
        Algebra::Sl3 => lax_sl3(params),
    }
}

/// Lower-unipotent × upper-triangular × lower-unipotent factors of the
/// L-operator.
pub fn gauss_factors(params: &SiteParams) -> Result<[OpMatrix; 3]> {
    let k = params.site;
    let x = WeylElement::var(Var::x(k));
    let dx = WeylElement::d(Var::x(k));
    let one = WeylElement::one();
    let zero = WeylElement::zero();
    match params.algebra {
        Algebra::Sl2 => Ok([
            OpMatrix::from_rows(alloc::vec![alloc::vec![one.clone(), zero.clone()], alloc::vec![x.clone(), one.clone()]])?,
            OpMatrix::from_rows(alloc::vec![
                alloc::vec![w(params.u(1)), dx.neg()],
                alloc::vec![zero.clone(), w(params.u(2))]
            ])?,
            OpMatrix::from_rows(alloc::vec![alloc::vec![one.clone(), zero], alloc::vec![x.neg(), one]])?,
        ]),
        Algebra::Sl3 => {
            let y = WeylElement::var(Var::y(k));
            let z = WeylElement::var(Var::z(k));
            let dy = WeylElement::d(Var::y(k));
            let dz = WeylElement::d(Var::z(k));
            Ok([
                OpMatrix::from_rows(alloc::vec![
                    alloc::vec![one.clone(), zero.clone(), zero.clone()],
                    alloc::vec![x.clone(), one.clone(), zero.clone()],
                    alloc::vec![y.clone(), z.clone(), one.clone()],
                ])?,
                OpMatrix::from_rows(alloc::vec![
                    alloc::vec![w(params.u(1)), dx.neg().sub(&z.mul(&dy)), dy.neg()],
                    alloc::vec![zero.clone(), w(params.u(2)), dz.neg()],
                    alloc::vec![zero.clone(), zero.clone(), w(params.u(3))],
                ])?,
                OpMatrix::from_rows(alloc::vec![
                    alloc::vec![one.clone(), zero.clone(), zero.clone()],
                    alloc::vec![x.neg(), one.clone(), zero.clone()],
                    alloc::vec![x.mul(&z).sub(&y), z.neg(), one],
                ])?,
            ])
        }
    }
}

/// `L_N ⋯ L_1` following the column order of `u`.
pub fn monodromy(u: &ParamMatrix, limits: &Limits) -> Result<OpMatrix> {
    let mut t = lax(&u.columns[0])?;
    for c in &u.columns[1..] {
        t = t.mul_checked(&lax(c)?, limits)?;
    }
    Ok(t)
}

/// The monodromy with the spectral symbol replaced by `spectral + shift`.
pub fn shifted(t: &OpMatrix, spectral: Param, shift: &Scalar) -> Result<OpMatrix> {
    if shift.is_zero() {
        return Ok(t.clone());
    }
    let target = Scalar::param(spectral).add(shift);
    t.try_map(|e| e.subst1(spectral, &target))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorVariant {
    Minor1,
    Minor2,
}

/// A quantum minor; `repeated_indices` flags the identically-zero case.
#[derive(Clone, Debug)]
pub struct Minor {
    pub value: WeylElement,
    pub repeated_indices: bool,
}

/// Permutations of `0..m` with their signs.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, m: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == m {
            let mut inv = 0;
            for i in 0..m {
                for j in i + 1..m {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, m, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut alloc::vec![false; m], m, &mut out);
    out
}

fn has_repeat(v: &[usize]) -> bool {
    (0..v.len()).any(|i| v[i + 1..].contains(&v[i]))
}

/// Quantum minor `T^{rows}_{cols}(u)` of a monodromy template in `spectral`.
/// Indices are one-based.
pub fn quantum_minor(
    t: &OpMatrix,
    spectral: Param,
    rows: &[usize],
    cols: &[usize],
    variant: MinorVariant,
    limits: &Limits,
) -> Result<Minor> {
    let m = rows.len();
    if m == 0 || m != cols.len() || m > t.rows() {
        return Err(Error::Index(alloc::format!("minor of size {}x{} in a {}x{} matrix", m, cols.len(), t.rows(), t.cols())));
    }
    if rows.iter().chain(cols).any(|&i| i == 0 || i > t.rows()) {
        return Err(Error::Index("minor index out of range".into()));
    }
    if has_repeat(rows) || has_repeat(cols) {
        return Ok(Minor { value: WeylElement::zero(), repeated_indices: true });
    }
    let shifts: Vec<OpMatrix> =
        (0..m).map(|a| shifted(t, spectral, &Scalar::int(-(a as i64)))).collect::<Result<_>>()?;
    let mut total = WeylElement::zero();
    for (perm, sign) in permutations(m) {
        let mut prod = WeylElement::one();
        for a in 0..m {
            let factor = match variant {
                Minor1 => shifts[a].at(rows[a], cols[perm[a]]),
                Minor2 => shifts[m - 1 - a].at(rows[perm[a]], cols[a]),
            };
            prod = prod.mul_checked(factor, limits)?;
            if prod.is_zero() {
                break;
            }
        }
        total = if sign > 0 { total.add(&prod) } else { total.sub(&prod) };
    }
    Ok(Minor { value: total, repeated_indices: false })
}

use MinorVariant::{Minor1, Minor2};

/// `d(u) = T^{1…n}_{1…n}(u)`.
pub fn quantum_det(u: &ParamMatrix, limits: &Limits) -> Result<WeylElement> {
    let t = monodromy(u, limits)?;
    let idx: Vec<usize> = (1..=u.algebra.rank()).collect();
    Ok(quantum_minor(&t, u.spectral, &idx, &idx, Minor1, limits)?.value)
}

/// Transfer matrix `t(u)` (sl2) or `(t1(u), t2(u))` (sl3).
pub fn transfer_matrices(u: &ParamMatrix, limits: &Limits) -> Result<(WeylElement, Option<WeylElement>)> {
    let t = monodromy(u, limits)?;
    transfer_from(&t, u.algebra, u.spectral, limits)
}

pub fn transfer_from(
    t: &OpMatrix,
    algebra: Algebra,
    spectral: Param,
    limits: &Limits,
) -> Result<(WeylElement, Option<WeylElement>)> {
    let n = algebra.rank();
    let mut t1 = WeylElement::zero();
    for i in 1..=n {
        t1 = t1.add(t.at(i, i));
    }
    if algebra == Algebra::Sl2 {
        return Ok((t1, None));
    }
    let mut t2 = WeylElement::zero();
    for (a, b) in [(1, 2), (2, 3), (1, 3)] {
        t2 = t2.add(&quantum_minor(t, spectral, &[a, b], &[a, b], Minor1, limits)?.value);
    }
    Ok((t1, Some(t2)))
}

/// `B(u)` for a monodromy template.
pub fn b_from_monodromy(t: &OpMatrix, algebra: Algebra, spectral: Param, limits: &Limits) -> Result<WeylElement> {
    match algebra {
        Algebra::Sl2 => Ok(t.at(1, 2).clone()),
        Algebra::Sl3 => {
            let up = shifted(t, spectral, &Scalar::one())?;
            let (c1, c2) = (up.at(2, 3).clone(), up.at(1, 3).neg());
            let m1 = t.at(1, 1).mul_checked(&c1, limits)?.add(&t.at(2, 1).mul_checked(&c2, limits)?);
            let m2 = t.at(1, 2).mul_checked(&c1, limits)?.add(&t.at(2, 2).mul_checked(&c2, limits)?);
            Ok(t.at(1, 3).mul_checked(&m1, limits)?.add(&t.at(2, 3).mul_checked(&m2, limits)?))
        }
    }
}

pub fn b_operator(u: &ParamMatrix, limits: &Limits) -> Result<WeylElement> {
    let t = monodromy(u, limits)?;
    b_from_monodromy(&t, u.algebra, u.spectral, limits)
}

/// Verifies `(u−v)[T^i_j(u), T^k_l(v)] = T^k_j(v)T^i_l(u) − T^k_j(u)T^i_l(v)`
/// for all index quadruples.
pub fn check_rtt(t: &OpMatrix, u: Param, v: Param, limits: &Limits) -> Check {
    Check::run("rtt", "yangian", || {
        let n = t.rows();
        let tv = t.try_map(|e| e.subst1(u, &Scalar::param(v)))?;
        let uv = Scalar::param(u).sub(&Scalar::param(v));
        // uv_prod[i][j][k][l] = T^i_j(u) T^k_l(v); vu_prod = T^k_l(v) T^i_j(u).
        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
        let mut uv_prod = Vec::with_capacity(n * n * n * n);
        let mut vu_prod = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        uv_prod.push(t.get(i, j).mul_checked(tv.get(k, l), limits)?);
                        vu_prod.push(tv.get(k, l).mul_checked(t.get(i, j), limits)?);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = uv_prod[idx(i, j, k, l)].sub(&vu_prod[idx(i, j, k, l)]).scale(&uv);
                        // T^k_j(v) T^i_l(u) and T^k_j(u) T^i_l(v).
                        let rhs = vu_prod[idx(i, l, k, j)].sub(&uv_prod[idx(k, j, i, l)]);
                        if !lhs.equals(&rhs) {
                            return Ok(Outcome::fail(alloc::format!(
                                "(i,j,k,l)=({},{},{},{}): lhs = {} ; rhs = {}",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1,
                                lhs,
                                rhs
                            )));
                        }
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    })
}

/// Sum over increasing index tuples of size `m` in `1..=n`.
fn increasing_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(1, n, m, &mut Vec::new(), &mut out);
    out
}

/// Minor of the monodromy against the sum over intermediate increasing index
/// tuples of products of local minors.
pub fn check_coproduct_minor(u: &ParamMatrix, rows: &[usize], cols: &[usize], limits: &Limits) -> Check {
    Check::run("coproduct-minor", "coprod", || {
        if u.len() < 2 {
            return Err(Error::InvalidParams("coproduct check needs N >= 2".into()));
        }
        let t = monodromy(u, limits)?;
        let lhs = quantum_minor(&t, u.spectral, rows, cols, Minor1, limits)?.value;
        let locals: Vec<OpMatrix> = u.columns.iter().map(lax).collect::<Result<_>>()?;
        let n = u.algebra.rank();
        let m = rows.len();
        let tuples = increasing_tuples(n, m);
        // Dynamic programming over the chain: acc[tuple] = Σ L_N(rows; a) ⋯ L_k(…; tuple).
        let mut acc: Vec<WeylElement> = tuples
            .iter()
            .map(|a| quantum_minor(&locals[0], u.spectral, rows, a, Minor1, limits).map(|x| x.value))
            .collect::<Result<_>>()?;
        for l in &locals[1..] {
            let mut next = Vec::with_capacity(tuples.len());
            for b in &tuples {
                let mut s = WeylElement::zero();
                for (a, prev) in tuples.iter().zip(&acc) {
                    if prev.is_zero() {
                        continue;
                    }
                    let loc = quantum_minor(l, u.spectral, a, b, Minor1, limits)?.value;
                    s = s.add(&prev.mul_checked(&loc, limits)?);
                }
                next.push(s);
            }
            acc = next;
        }
        let pos = tuples.iter().position(|t| t.as_slice() == cols);
        let rhs = match pos {
            Some(p) => acc[p].clone(),
            None => return Err(Error::Index("coproduct check needs increasing column indices".into())),
        };
        Ok(Outcome::from_bool(lhs.equals(&rhs), || alloc::format!("{}", lhs.sub(&rhs))))
    })
}

/// `S3 = Σ_k (L_k^1_1 − u)` for sl2, the Cartan generator in the L-operator
/// normalization.
pub fn s3_global(u: &ParamMatrix) -> Result<WeylElement> {
    let mut s = WeylElement::zero();
    let uu = Scalar::param(u.spectral);
    for c in &u.columns {
        s = s.add(&lax(c)?.at(1, 1).sub(&WeylElement::scalar(uu.clone())));
    }
    Ok(s)
}

/// Global generator `E_{ji} = Σ_k L_k^i_j − u δ_ij` in matrix-entry indexing.
pub fn global_entry(u: &ParamMatrix, i: usize, j: usize) -> Result<WeylElement> {
    let mut s = WeylElement::zero();
    for c in &u.columns {
        let mut e = lax(c)?.at(i, j).clone();
        if i == j {
            e = e.sub(&WeylElement::scalar(Scalar::param(u.spectral)));
        }
        s = s.add(&e);
    }
    Ok(s)
}

/// `x_k` multiplication used by callers building matrices by hand.
pub fn x_op(site: usize) -> WeylElement {
    WeylElement::frac(Frac::poly(var_poly(Var::x(site))))
}

fn diff_text(a: &WeylElement, b: &WeylElement) -> String {
    alloc::format!("{}", a.sub(b))
}

fn with_spectral(t: &OpMatrix, from: Param, to: Param) -> Result<OpMatrix> {
    t.try_map(|e| e.subst1(from, &Scalar::param(to)))
}

/// Factored and expanded L-operator agree entrywise.
pub fn check_gauss(params: &SiteParams) -> Check {
    let anchor = match params.algebra {
        Algebra::Sl2 => "Laxsl2",
        Algebra::Sl3 => "Laxsl3",
    };
    Check::run("gauss", anchor, || {
        let [a, b, c] = gauss_factors(params)?;
        let prod = a.mul(&b)?.mul(&c)?;
        let l = lax(params)?;
        Ok(match prod.first_difference(&l) {
            None => Outcome::Pass,
            Some((i, j, d)) => Outcome::fail(alloc::format!("entry ({i},{j}): {d}")),
        })
    })
}

/// The two alternating-sum forms of a minor agree.
pub fn check_minor_variants(t: &OpMatrix, spectral: Param, rows: &[usize], cols: &[usize], limits: &Limits) -> Check {
    Check::run("minor1-minor2", "minor2", || {
        let a = quantum_minor(t, spectral, rows, cols, Minor1, limits)?.value;
        let b = quantum_minor(t, spectral, rows, cols, Minor2, limits)?.value;
        Ok(Outcome::from_bool(a.equals(&b), || diff_text(&a, &b)))
    })
}

/// Swapping the two row indices, or the two column indices, of a 2×2 minor
/// flips its sign.
pub fn check_minor_antisymmetry(t: &OpMatrix, spectral: Param, rows: &[usize; 2], cols: &[usize; 2], limits: &Limits) -> Check {
    Check::run("minor-antisymmetry", "minor1", || {
        let base = quantum_minor(t, spectral, rows, cols, Minor1, limits)?.value;
        let sr = quantum_minor(t, spectral, &[rows[1], rows[0]], cols, Minor1, limits)?.value;
        let sc = quantum_minor(t, spectral, rows, &[cols[1], cols[0]], Minor1, limits)?.value;
        if !sr.add(&base).is_zero() {
            return Ok(Outcome::fail(alloc::format!("rows swapped: {}", sr.add(&base))));
        }
        Ok(Outcome::from_bool(sc.add(&base).is_zero(), || alloc::format!("columns swapped: {}", sc.add(&base))))
    })
}

/// The minor column `(T^{12}_{13}(u+1), T^{12}_{23}(u+1))` equals the 2×2
/// block of `T(u)` times the column `(T^2_3(u+1), −T^1_3(u+1))`.
pub fn check_tt_identity(t: &OpMatrix, spectral: Param, limits: &Limits) -> Check {
    Check::run("tt-identity", "TT", || {
        if t.rows() != 3 {
            return Err(Error::InvalidParams("the minor-column identity needs a 3x3 monodromy".into()));
        }
        let up = shifted(t, spectral, &Scalar::one())?;
        let (c1, c2) = (up.at(2, 3).clone(), up.at(1, 3).neg());
        for (col, j) in [(1usize, 1usize), (2, 2)] {
            let minor = quantum_minor(&up, spectral, &[1, 2], &[col, 3], Minor1, limits)?.value;
            let prod = t.at(1, j).mul_checked(&c1, limits)?.add(&t.at(2, j).mul_checked(&c2, limits)?);
            if !minor.equals(&prod) {
                return Ok(Outcome::fail(alloc::format!("T^12_{col}3: {}", diff_text(&minor, &prod))));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// `[d(u), T^i_j(v)] = 0` for every entry.
pub fn check_qdet_central(u: &ParamMatrix, v: Param, limits: &Limits) -> Check {
    Check::run("qdet-central", "qdet", || {
        let d = quantum_det(u, limits)?;
        let tv = with_spectral(&monodromy(u, limits)?, u.spectral, v)?;
        for i in 1..=tv.rows() {
            for j in 1..=tv.cols() {
                let c = d.mul_checked(tv.at(i, j), limits)?.sub(&tv.at(i, j).mul_checked(&d, limits)?);
                if !c.is_zero() {
                    return Ok(Outcome::fail(alloc::format!("[d(u), T^{i}_{j}(v)] = {c}")));
                }
            }
        }
        Ok(Outcome::Pass)
    })
}

/// `∏_k ∏_i u_{ik}`.
pub fn qdet_product(u: &ParamMatrix) -> Scalar {
    u.columns.iter().flat_map(|c| c.entries.iter()).fold(Scalar::one(), |acc, e| acc.mul(e))
}

/// The quantum determinant reduces to the product of all parameters.
pub fn check_qdet_value(u: &ParamMatrix, limits: &Limits) -> Check {
    Check::run("qdet-value", "qdet", || {
        let d = quantum_det(u, limits)?;
        let want = WeylElement::scalar(qdet_product(u));
        Ok(Outcome::from_bool(d.equals(&want), || diff_text(&d, &want)))
    })
}

/// `[t(u), t(v)] = 0` (and the same for `t2` on sl3).
pub fn check_transfer_commute(u: &ParamMatrix, v: Param, limits: &Limits) -> Check {
    Check::run("transfer-commute", "trans", || {
        let (t1, t2) = transfer_matrices(u, limits)?;
        for t in core::iter::once(t1).chain(t2) {
            let tv = t.subst1(u.spectral, &Scalar::param(v))?;
            let c = t.mul_checked(&tv, limits)?.sub(&tv.mul_checked(&t, limits)?);
            if !c.is_zero() {
                return Ok(Outcome::fail(c));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// The sl2 relations between `B(u) = T^1_2(u)` and `A(u) = T^{a}_{b}(u)`:
/// `[B(u), B(v)] = 0`, the exchange relation, the quantum-determinant
/// relation, and `[S3, B(v)] = −B(v)`.
pub fn check_prop1_sl2(u: &ParamMatrix, v: Param, limits: &Limits) -> Vec<Check> {
    let mut out = Vec::new();
    let prep = || -> Result<(OpMatrix, OpMatrix)> {
        if u.algebra != Algebra::Sl2 {
            return Err(Error::InvalidParams("these relations are for sl2".into()));
        }
        let t = monodromy(u, limits)?;
        let tv = with_spectral(&t, u.spectral, v)?;
        Ok((t, tv))
    };
    let (t, tv) = match prep() {
        Ok(x) => x,
        Err(e) => return alloc::vec![Check::new("prop1", "prop1", e.into())],
    };
    out.push(Check::run("prop1", "prop1", || {
        let (bu, bv) = (t.at(1, 2), tv.at(1, 2));
        let c = bu.mul_checked(bv, limits)?.sub(&bv.mul_checked(bu, limits)?);
        Ok(Outcome::from_bool(c.is_zero(), || c.to_text()))
    }));
    out.push(check_prop2_sl2(&t, &tv, u.spectral, v, (1, 1), limits));
    out.push(Check::run("prop3", "prop3", || {
        let t1 = shifted(&t, u.spectral, &Scalar::one())?;
        let (tr, _) = transfer_from(&t1, Algebra::Sl2, u.spectral, limits)?;
        let d1 = quantum_det(u, limits)?
            .subst1(u.spectral, &Scalar::param(u.spectral).add(&Scalar::one()))?;
        let a = t.at(1, 1);
        let a1 = t1.at(1, 1);
        let lhs = a1.mul_checked(a, limits)?.sub(&tr.mul_checked(a, limits)?).add(&d1);
        let rhs = t1.at(2, 1).mul_checked(t.at(1, 2), limits)?.neg();
        Ok(Outcome::from_bool(lhs.equals(&rhs), || diff_text(&lhs, &rhs)))
    }));
    out.push(Check::run("s3-scaling", "prop2", || {
        let s3 = s3_global(u)?;
        let bv = tv.at(1, 2);
        let c = s3.mul_checked(bv, limits)?.sub(&bv.mul_checked(&s3, limits)?);
        Ok(Outcome::from_bool(c.add(bv).is_zero(), || c.add(bv).to_text()))
    }));
    out
}

/// `(u−v+1)A(u)B(v) = (u−v)B(v)A(u) + A(v)B(u)` with `A = T^{a.0}_{a.1}`.
pub fn check_prop2_sl2(t: &OpMatrix, tv: &OpMatrix, u: Param, v: Param, a: (usize, usize), limits: &Limits) -> Check {
    Check::run("prop2", "prop2", || {
        let uv = Scalar::param(u).sub(&Scalar::param(v));
        let (au, av, bu, bv) = (t.at(a.0, a.1), tv.at(a.0, a.1), t.at(1, 2), tv.at(1, 2));
        let lhs = au.mul_checked(bv, limits)?.scale(&uv.add(&Scalar::one()));
        let rhs = bv.mul_checked(au, limits)?.scale(&uv).add(&av.mul_checked(bu, limits)?);
        Ok(Outcome::from_bool(lhs.equals(&rhs), || diff_text(&lhs, &rhs)))
    })
}

/// `[B(u), B(v)] = 0` for sl3, optionally after binding the non-spectral
/// parameters.
pub fn check_b_commute(u: &ParamMatrix, v: Param, bindings: Option<&crate::scalar::Bindings>, limits: &Limits) -> Check {
    Check::run("b-commute", "commsl3", || {
        let u = match bindings {
            Some(b) => u.substitute(b)?,
            None => u.clone(),
        };
        let bu = b_operator(&u, limits)?;
        let bv = bu.subst1(u.spectral, &Scalar::param(v))?;
        let c = bu.mul_checked(&bv, limits)?.sub(&bv.mul_checked(&bu, limits)?);
        Ok(Outcome::from_bool(c.is_zero(), || c.to_text()))
    })
}

/// `[B(u), E31] = [B(u), E32] = 0`.
pub fn check_b_global(u: &ParamMatrix, limits: &Limits) -> Vec<Check> {
    let b = b_operator(u, limits);
    [("b-e31", 1usize), ("b-e32", 2usize)]
        .into_iter()
        .map(|(name, j)| {
            Check::run(name, "Psisl3", || {
                let b = b.clone()?;
                // E_{3j} sits at matrix entry (j, 3).
                let e = global_entry(u, j, 3)?;
                let c = b.mul_checked(&e, limits)?.sub(&e.mul_checked(&b, limits)?);
                Ok(Outcome::from_bool(c.is_zero(), || c.to_text()))
            })
        })
        .collect()
}

/// `B(u)` does not depend on the lowest parameter of the leftmost site.
pub fn check_b_independence(u: &ParamMatrix, other: &Scalar, limits: &Limits) -> Check {
    let anchor = match u.algebra {
        Algebra::Sl2 => "v",
        Algebra::Sl3 => "Bsl3",
    };
    Check::run("b-independence", anchor, || {
        let n = u.algebra.rank();
        let b = b_operator(u, limits)?;
        let mut alt = u.clone();
        alt.replace(0, n, Scalar::param(u.spectral).add(other));
        let b2 = b_operator(&alt, limits)?;
        Ok(Outcome::from_bool(b.equals(&b2), || diff_text(&b, &b2)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_entries() {
        let p = SiteParams::generic(Algebra::Sl2, 1);
        let l = lax_sl2(&p).unwrap();
        assert_eq!(l.at(1, 2).to_text(), "-dx1");
        assert_eq!(l.at(1, 1).to_text(), "x1*dx1 + (u + c_1_1 + 1)");
    }

    #[test]
    fn rejects_nonlinear_entries() {
        let e = alloc::vec![crate::sc("u^2"), crate::sc("u")];
        assert!(SiteParams::new(Algebra::Sl2, 1, e, Param::u()).is_err());
        let e = alloc::vec![crate::sc("2*u"), crate::sc("u")];
        assert!(SiteParams::new(Algebra::Sl2, 1, e, Param::u()).is_err());
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i64>(), 0);
    }
}
