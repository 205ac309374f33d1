//! Parameter and variable symbols.
//!
//! Symbols are packed into a `u32`; a smaller key means a higher priority in
//! the lexicographic monomial order.

use alloc::string::String;
use core::fmt;

/// Base names for parameter symbols, in priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Base {
    U = 1,
    V,
    P,
    P1,
    P2,
    Q,
    R,
    S,
    Sigma,
    Delta,
    C,
    W,
    A,
    B,
    T,
    Lambda,
    M,
    N,
    E11,
    E22,
    S3,
    Alpha,
    Beta,
    Gamma,
    K,
}

/// What role a parameter plays; used by the lattice solver and specializer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Spectral,
    Momentum,
    Root,
    Representation,
    Other,
}

const BASES: [(Base, &str); 25] = [
    (Base::U, "u"),
    (Base::V, "v"),
    (Base::P, "p"),
    (Base::P1, "p1"),
    (Base::P2, "p2"),
    (Base::Q, "q"),
    (Base::R, "r"),
    (Base::S, "s"),
    (Base::Sigma, "sigma"),
    (Base::Delta, "delta"),
    (Base::C, "c"),
    (Base::W, "w"),
    (Base::A, "a"),
    (Base::B, "b"),
    (Base::T, "t"),
    (Base::Lambda, "lambda"),
    (Base::M, "m"),
    (Base::N, "n"),
    (Base::E11, "e11"),
    (Base::E22, "e22"),
    (Base::S3, "s3"),
    (Base::Alpha, "alpha"),
    (Base::Beta, "beta"),
    (Base::Gamma, "gamma"),
    (Base::K, "k"),
];

impl Base {
    pub fn name(self) -> &'static str {
        BASES.iter().find(|(b, _)| *b == self).map(|(_, n)| *n).unwrap_or("?")
    }

    pub fn from_name(s: &str) -> Option<Base> {
        BASES.iter().find(|(_, n)| *n == s).map(|(b, _)| *b)
    }

    fn from_u8(x: u8) -> Option<Base> {
        BASES.iter().find(|(b, _)| *b as u8 == x).map(|(b, _)| *b)
    }

    pub fn kind(self) -> ParamKind {
        match self {
            Base::U | Base::V => ParamKind::Spectral,
            Base::P | Base::P1 | Base::P2 => ParamKind::Momentum,
            Base::Q | Base::R | Base::S => ParamKind::Root,
            Base::Sigma | Base::Delta | Base::C => ParamKind::Representation,
            _ => ParamKind::Other,
        }
    }
}

/// A named parameter such as `u`, `p1`, `q_2` or `c_1_3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(pub u32);

impl Param {
    /// Builds `base_i_j`; indices must lie in `1..=255`, zero means absent.
    pub fn new(base: Base, i: u8, j: u8) -> Param {
        assert!(j == 0 || i != 0, "second index without first");
        Param(((base as u32) << 16) | ((i as u32) << 8) | j as u32)
    }

    pub fn plain(base: Base) -> Param {
        Param::new(base, 0, 0)
    }

    pub fn idx(base: Base, i: usize) -> Param {
        Param::new(base, i as u8, 0)
    }

    pub fn idx2(base: Base, i: usize, j: usize) -> Param {
        Param::new(base, i as u8, j as u8)
    }

    pub fn u() -> Param {
        Param::plain(Base::U)
    }

    pub fn v() -> Param {
        Param::plain(Base::V)
    }

    pub fn base(self) -> Base {
        Base::from_u8((self.0 >> 16) as u8).expect("valid base")
    }

    pub fn indices(self) -> (u8, u8) {
        (((self.0 >> 8) & 0xff) as u8, (self.0 & 0xff) as u8)
    }

    pub fn kind(self) -> ParamKind {
        self.base().kind()
    }

    /// Parses `name`, `name_i` or `name_i_j`.
    pub fn parse(s: &str) -> Option<Param> {
        let mut parts = s.split('_');
        let base = Base::from_name(parts.next()?)?;
        let mut idx = [0u8; 2];
        for slot in idx.iter_mut() {
            match parts.next() {
                Some(p) => {
                    let v: u8 = p.parse().ok()?;
                    if v == 0 {
                        return None;
                    }
                    *slot = v;
                }
                None => break,
            }
        }
        if parts.next().is_some() {
            return None;
        }
        Some(Param::new(base, idx[0], idx[1]))
    }

    pub fn name(self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base().name())?;
        let (i, j) = self.indices();
        if i != 0 {
            write!(f, "_{i}")?;
        }
        if j != 0 {
            write!(f, "_{j}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Coordinate slot of a site: `x`, `y` or `z`. `K` is the momentum
/// variable of the separated one-dimensional sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    X = 0,
    Y = 1,
    Z = 2,
    K = 3,
}

impl Slot {
    pub fn letter(self) -> char {
        match self {
            Slot::X => 'x',
            Slot::Y => 'y',
            Slot::Z => 'z',
            Slot::K => 'k',
        }
    }
}

/// A coordinate variable `x_k`, `y_k` or `z_k` at site `k >= 1`, or a
/// momentum variable `k_j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn new(site: usize, slot: Slot) -> Var {
        assert!(site >= 1);
        Var(((site as u32) << 2) | slot as u32)
    }

    pub fn x(site: usize) -> Var {
        Var::new(site, Slot::X)
    }

    pub fn y(site: usize) -> Var {
        Var::new(site, Slot::Y)
    }

    pub fn z(site: usize) -> Var {
        Var::new(site, Slot::Z)
    }

    pub fn k(j: usize) -> Var {
        Var::new(j, Slot::K)
    }

    pub fn site(self) -> usize {
        (self.0 >> 2) as usize
    }

    pub fn slot(self) -> Slot {
        match self.0 & 3 {
            0 => Slot::X,
            1 => Slot::Y,
            2 => Slot::Z,
            _ => Slot::K,
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        let mut ch = s.chars();
        let slot = match ch.next()? {
            'x' => Slot::X,
            'y' => Slot::Y,
            'z' => Slot::Z,
            'k' => Slot::K,
            _ => return None,
        };
        let site: usize = ch.as_str().parse().ok()?;
        if site == 0 {
            return None;
        }
        Some(Var::new(site, slot))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.slot().letter(), self.site())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_names_round_trip() {
        for s in ["u", "p1", "q_3", "c_2_1", "sigma_1_2", "delta_4"] {
            assert_eq!(Param::parse(s).unwrap().name(), s);
        }
        assert!(Param::parse("q_0").is_none());
        assert!(Param::parse("zz").is_none());
    }

    #[test]
    fn var_names() {
        assert_eq!(alloc::format!("{}", Var::y(3)), "y3");
        assert_eq!(Var::parse("z12"), Some(Var::z(12)));
    }
}
