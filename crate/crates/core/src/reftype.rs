//! Reflection types: formal products of irreducible factors with their
//! degree data.
//!
//! The factors cover what the computations produce (G(r,p,m) and cyclic
//! groups) plus the Coxeter and exceptional atoms used by the embedded
//! orbit tables.  Degrees of G(r,p,m) come from the closed formula;
//! degrees of the named atoms are embedded constants.

use crate::error::{Error, Result};
use std::fmt;

/// One irreducible factor of a reflection type.  The declaration order
/// fixes the canonical factor order used for display.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TypeAtom {
    /// Coxeter type A_n (A_0 never occurs as an atom; it is the empty product).
    A(u32),
    B(u32),
    /// Cyclic group of order k acting on one dimension; k = 1 is the
    /// trivial group on one dimension (sole degree 1, exponent 0).
    Cyclic(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    /// G(r,p,m) in the three-parameter family, m >= 1.
    Grpn { r: u32, p: u32, m: u32 },
    /// Shephard-Todd exceptional group G_k, 4 <= k <= 37.
    Exceptional(u32),
    H3,
    H4,
    I2(u32),
}

impl TypeAtom {
    pub fn rank(&self) -> usize {
        match *self {
            TypeAtom::Grpn { m, .. } => m as usize,
            TypeAtom::Cyclic(_) => 1,
            TypeAtom::A(n) => n as usize,
            TypeAtom::B(n) => n as usize,
            TypeAtom::D(n) => n as usize,
            TypeAtom::I2(_) | TypeAtom::G2 => 2,
            TypeAtom::H3 => 3,
            TypeAtom::F4 | TypeAtom::H4 => 4,
            TypeAtom::E6 => 6,
            TypeAtom::E7 => 7,
            TypeAtom::E8 => 8,
            TypeAtom::Exceptional(k) => exceptional_degrees(k).len(),
        }
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d = match *self {
            TypeAtom::Grpn { r, p, m } => {
                let mut d: Vec<u64> = (1..m as u64).map(|l| l * r as u64).collect();
                d.push(m as u64 * (r / p) as u64);
                d
            }
            TypeAtom::Cyclic(k) => vec![k as u64],
            TypeAtom::A(n) => (2..=n as u64 + 1).collect(),
            TypeAtom::B(n) => (1..=n as u64).map(|i| 2 * i).collect(),
            TypeAtom::D(n) => {
                let mut d: Vec<u64> = (1..n as u64).map(|i| 2 * i).collect();
                d.push(n as u64);
                d
            }
            TypeAtom::I2(m) => vec![2, m as u64],
            TypeAtom::G2 => vec![2, 6],
            TypeAtom::F4 => vec![2, 6, 8, 12],
            TypeAtom::H3 => vec![2, 6, 10],
            TypeAtom::H4 => vec![2, 12, 20, 30],
            TypeAtom::E6 => vec![2, 5, 6, 8, 9, 12],
            TypeAtom::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            TypeAtom::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            TypeAtom::Exceptional(k) => exceptional_degrees(k),
        };
        d.sort_unstable();
        d
    }

    pub fn order(&self) -> u64 {
        self.degrees().iter().product()
    }

    /// Number of reflecting hyperplanes, where it is derivable from the
    /// family formulas or realness; None for the non-real exceptional atoms
    /// whose coexponents are not embedded.
    pub fn hyperplane_count(&self) -> Option<u64> {
        match *self {
            TypeAtom::Grpn { r, p, m } => {
                let m = m as u64;
                let coords = if p < r { m } else { 0 };
                Some(r as u64 * m * (m - 1) / 2 + coords)
            }
            TypeAtom::Cyclic(k) => Some(if k > 1 { 1 } else { 0 }),
            // real reflection groups: #hyperplanes = #reflections = sum of exponents
            TypeAtom::A(_)
            | TypeAtom::B(_)
            | TypeAtom::D(_)
            | TypeAtom::I2(_)
            | TypeAtom::G2
            | TypeAtom::F4
            | TypeAtom::H3
            | TypeAtom::H4
            | TypeAtom::E6
            | TypeAtom::E7
            | TypeAtom::E8 => Some(self.degrees().iter().map(|d| d - 1).sum()),
            TypeAtom::Exceptional(k) => match k {
                23 => TypeAtom::H3.hyperplane_count(),
                28 => TypeAtom::F4.hyperplane_count(),
                30 => TypeAtom::H4.hyperplane_count(),
                35 => TypeAtom::E6.hyperplane_count(),
                36 => TypeAtom::E7.hyperplane_count(),
                37 => TypeAtom::E8.hyperplane_count(),
                _ => None,
            },
        }
    }
}

fn exceptional_degrees(k: u32) -> Vec<u64> {
    match k {
        4 => vec![4, 6],
        5 => vec![6, 12],
        6 => vec![4, 12],
        7 => vec![12, 12],
        8 => vec![8, 12],
        9 => vec![8, 24],
        10 => vec![12, 24],
        11 => vec![24, 24],
        12 => vec![6, 8],
        13 => vec![8, 12],
        14 => vec![6, 24],
        15 => vec![12, 24],
        16 => vec![20, 30],
        17 => vec![20, 60],
        18 => vec![30, 60],
        19 => vec![60, 60],
        20 => vec![12, 30],
        21 => vec![12, 60],
        22 => vec![12, 20],
        23 => vec![2, 6, 10],
        24 => vec![4, 6, 14],
        25 => vec![6, 9, 12],
        26 => vec![6, 12, 18],
        27 => vec![6, 12, 30],
        28 => vec![2, 6, 8, 12],
        29 => vec![4, 8, 12, 20],
        30 => vec![2, 12, 20, 30],
        31 => vec![8, 12, 20, 24],
        32 => vec![12, 18, 24, 30],
        33 => vec![4, 6, 10, 12, 18],
        34 => vec![6, 12, 18, 24, 30, 42],
        35 => vec![2, 5, 6, 8, 9, 12],
        36 => vec![2, 6, 8, 10, 12, 14, 18],
        37 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        _ => panic!("G_{k} is not an exceptional reflection group"),
    }
}

impl fmt::Display for TypeAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TypeAtom::Grpn { r, p, m } => write!(f, "G({r},{p},{m})"),
            TypeAtom::Cyclic(k) => write!(f, "C_{k}"),
            TypeAtom::A(n) => write!(f, "A_{n}"),
            TypeAtom::B(n) => write!(f, "B_{n}"),
            TypeAtom::D(n) => write!(f, "D_{n}"),
            TypeAtom::I2(m) => write!(f, "I2({m})"),
            TypeAtom::G2 => write!(f, "G2"),
            TypeAtom::F4 => write!(f, "F4"),
            TypeAtom::H3 => write!(f, "H3"),
            TypeAtom::H4 => write!(f, "H4"),
            TypeAtom::E6 => write!(f, "E6"),
            TypeAtom::E7 => write!(f, "E7"),
            TypeAtom::E8 => write!(f, "E8"),
            TypeAtom::Exceptional(k) => write!(f, "G{k}"),
        }
    }
}

/// A formal product of factors; the empty product is the trivial type A_0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct ReflectionType {
    pub atoms: Vec<TypeAtom>,
}

impl ReflectionType {
    pub fn trivial() -> Self {
        ReflectionType { atoms: vec![] }
    }

    /// Build from factors, normalizing rank-one members of the family to
    /// cyclic groups (G(r,p,1) = C_{r/p}) and dropping rank-zero atoms.
    pub fn product(atoms: impl IntoIterator<Item = TypeAtom>) -> Self {
        let mut out: Vec<TypeAtom> = atoms
            .into_iter()
            .filter_map(|a| match a {
                TypeAtom::A(0) => None,
                TypeAtom::Grpn { r, p, m: 1 } => Some(TypeAtom::Cyclic(r / p)),
                other => Some(other),
            })
            .collect();
        out.sort_unstable();
        ReflectionType { atoms: out }
    }

    pub fn rank(&self) -> usize {
        self.atoms.iter().map(|a| a.rank()).sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.atoms.iter().flat_map(|a| a.degrees()).collect();
        d.sort_unstable();
        d
    }

    pub fn exponents(&self) -> Vec<u64> {
        let mut e = self.degrees();
        for x in &mut e {
            *x -= 1;
        }
        e.sort_unstable();
        e
    }

    pub fn order(&self) -> u64 {
        self.degrees().iter().product()
    }

    pub fn hyperplane_count(&self) -> Option<u64> {
        self.atoms.iter().map(|a| a.hyperplane_count()).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl fmt::Display for ReflectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "A_0");
        }
        // collapse repeated atoms into powers
        let mut i = 0;
        let mut first = true;
        while i < self.atoms.len() {
            let mut j = i;
            while j < self.atoms.len() && self.atoms[j] == self.atoms[i] {
                j += 1;
            }
            if !first {
                write!(f, "x")?;
            }
            first = false;
            write!(f, "{}", self.atoms[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Is `sub` a sub-multiset of `sup`?  Both must be sorted.
pub fn multiset_subset(sub: &[u64], sup: &[u64]) -> bool {
    let mut i = 0;
    for &x in sub {
        while i < sup.len() && sup[i] < x {
            i += 1;
        }
        if i == sup.len() || sup[i] != x {
            return false;
        }
        i += 1;
    }
    true
}

/// Parse a reflection-type expression: atoms `A_n`, `B_n`, `D_n`, `C_k`,
/// `I2(m)`, `G2`, `F4`, `H3`, `H4`, `E6`, `E7`, `E8`, `G(r,p,n)`,
/// `G4`..`G37`, `A_0`; powers with `^`; products by juxtaposition or `x`.
/// Underscores, braces and spaces are cosmetic.
pub fn parse_type_expr(input: &str) -> Result<ReflectionType> {
    Parser {
        bytes: input.as_bytes(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<ReflectionType> {
        let mut atoms: Vec<TypeAtom> = Vec::new();
        self.skip_fluff();
        if self.peek().is_none() {
            return Err(self.err("empty type expression"));
        }
        while let Some(c) = self.peek() {
            match c {
                b'x' | b'X' => {
                    self.pos += 1;
                }
                b'^' => {
                    self.pos += 1;
                    let e = self.number()? as usize;
                    if e == 0 {
                        return Err(self.err("power must be positive"));
                    }
                    let last = *atoms
                        .last()
                        .ok_or_else(|| self.err("power without a preceding atom"))?;
                    for _ in 1..e {
                        atoms.push(last);
                    }
                }
                _ => atoms.push(self.atom()?),
            }
            self.skip_fluff();
        }
        Ok(ReflectionType::product(atoms))
    }

    fn skip_fluff(&mut self) {
        while let Some(c) = self.peek() {
            if c == b'_' || c == b' ' || c == b'{' || c == b'}' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_fluff();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_fluff();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn atom(&mut self) -> Result<TypeAtom> {
        self.skip_fluff();
        let c = self.peek().ok_or_else(|| self.err("expected an atom"))?;
        self.pos += 1;
        match c {
            b'A' => Ok(TypeAtom::A(self.number()?)),
            b'B' => {
                let n = self.number()?;
                if n < 2 {
                    return Err(self.err("B_n needs n >= 2"));
                }
                Ok(TypeAtom::B(n))
            }
            b'D' => {
                let n = self.number()?;
                if n < 4 {
                    return Err(self.err("D_n needs n >= 4"));
                }
                Ok(TypeAtom::D(n))
            }
            b'C' => Ok(TypeAtom::Cyclic(self.number()?)),
            b'I' => {
                let two = self.number()?;
                if two != 2 {
                    return Err(self.err("dihedral atoms are written I2(m)"));
                }
                self.expect(b'(')?;
                let m = self.number()?;
                self.expect(b')')?;
                Ok(TypeAtom::I2(m))
            }
            b'E' => match self.number()? {
                6 => Ok(TypeAtom::E6),
                7 => Ok(TypeAtom::E7),
                8 => Ok(TypeAtom::E8),
                _ => Err(self.err("E atoms are E6, E7, E8")),
            },
            b'F' => {
                if self.number()? == 4 {
                    Ok(TypeAtom::F4)
                } else {
                    Err(self.err("F atom is F4"))
                }
            }
            b'H' => match self.number()? {
                3 => Ok(TypeAtom::H3),
                4 => Ok(TypeAtom::H4),
                _ => Err(self.err("H atoms are H3 and H4")),
            },
            b'G' => {
                self.skip_fluff();
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let r = self.number()?;
                    self.expect(b',')?;
                    let p = self.number()?;
                    self.expect(b',')?;
                    let m = self.number()?;
                    self.expect(b')')?;
                    if r < 1 || p < 1 || m < 1 || r % p != 0 {
                        return Err(self.err("G(r,p,n) needs positive r, n and p | r"));
                    }
                    Ok(TypeAtom::Grpn { r, p, m })
                } else {
                    match self.number()? {
                        2 => Ok(TypeAtom::G2),
                        k @ 4..=37 => Ok(TypeAtom::Exceptional(k)),
                        _ => Err(self.err("G atoms are G2, G(r,p,n), or G4..G37")),
                    }
                }
            }
            _ => Err(Error::Parse {
                pos: self.pos - 1,
                msg: format!("unexpected character '{}'", c as char),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grpn_degrees() {
        let g = TypeAtom::Grpn { r: 4, p: 1, m: 2 };
        assert_eq!(g.degrees(), vec![4, 8]);
        let g = TypeAtom::Grpn { r: 2, p: 2, m: 2 };
        assert_eq!(g.degrees(), vec![2, 2]);
        let g = TypeAtom::Grpn { r: 6, p: 3, m: 2 };
        assert_eq!(g.degrees(), vec![4, 6]);
    }

    #[test]
    fn normalization() {
        let t = ReflectionType::product([TypeAtom::Grpn { r: 4, p: 2, m: 1 }]);
        assert_eq!(t.atoms, vec![TypeAtom::Cyclic(2)]);
        let t = ReflectionType::product([TypeAtom::Grpn { r: 3, p: 3, m: 1 }]);
        assert_eq!(t.atoms, vec![TypeAtom::Cyclic(1)]);
        assert_eq!(t.exponents(), vec![0]);
        assert!(ReflectionType::trivial().is_trivial());
    }

    #[test]
    fn order_is_product_of_degrees() {
        for atom in [
            TypeAtom::H3,
            TypeAtom::F4,
            TypeAtom::E8,
            TypeAtom::Exceptional(34),
            TypeAtom::Grpn { r: 3, p: 1, m: 2 },
        ] {
            assert_eq!(atom.order(), atom.degrees().iter().product::<u64>());
        }
        assert_eq!(TypeAtom::Exceptional(34).order(), 39_191_040);
    }

    #[test]
    fn coxeter_exponents_are_palindromic() {
        // e_i + e_{a+1-i} is constant for the real atoms
        for atom in [
            TypeAtom::A(5),
            TypeAtom::B(4),
            TypeAtom::D(6),
            TypeAtom::I2(7),
            TypeAtom::G2,
            TypeAtom::F4,
            TypeAtom::H3,
            TypeAtom::H4,
            TypeAtom::E6,
            TypeAtom::E7,
            TypeAtom::E8,
        ] {
            let e: Vec<u64> = atom.degrees().iter().map(|d| d - 1).collect();
            let s = e[0] + e[e.len() - 1];
            assert!(
                (0..e.len()).all(|i| e[i] + e[e.len() - 1 - i] == s),
                "{atom}"
            );
        }
    }

    #[test]
    fn parse_round_trips() {
        for s in [
            "A_0",
            "A_1^2",
            "C_6",
            "G(3,1,2)",
            "C_3xG(3,1,2)",
            "I2(5)",
            "G2^2",
            "G26",
            "A_1xB_3",
            "E7",
        ] {
            let t = parse_type_expr(s).unwrap();
            assert_eq!(t.to_string(), s, "round trip of {s}");
            assert_eq!(parse_type_expr(&t.to_string()).unwrap(), t);
        }
        // cosmetic characters and juxtaposition
        assert_eq!(
            parse_type_expr("C_3 G_{3,1,2}").unwrap(),
            parse_type_expr("C3xG(3,1,2)").unwrap()
        );
        assert_eq!(
            parse_type_expr("A_1A_2").unwrap(),
            parse_type_expr("A1 x A2").unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_type_expr("A_1xQ_3") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_type_expr("").is_err());
        assert!(parse_type_expr("G(6,4,2)").is_err());
        assert!(parse_type_expr("^2").is_err());
    }

    #[test]
    fn multiset_inclusion() {
        assert!(multiset_subset(&[3, 7, 11], &[3, 7, 11, 11, 15, 19]));
        assert!(!multiset_subset(&[3, 3], &[3, 7]));
        assert!(multiset_subset(&[], &[1]));
        assert!(!multiset_subset(&[0], &[1, 2]));
    }
}
