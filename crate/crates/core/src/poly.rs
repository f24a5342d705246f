//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, plus a fraction-free determinant.
//!
//! Terms are keyed by exponent vectors in graded-lex order; no zero
//! coefficient is ever stored.  The deterministic text form lists terms
//! in descending graded-lex order, e.g. `2*x1^2*x2 - 3*x3`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector ordered by (total degree, then lex).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Mono, BigInt>,
}

impl SparsePoly {
    pub fn zero(vars: Vec<String>) -> Self {
        SparsePoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: impl Into<BigInt>) -> Self {
        let mut p = SparsePoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            let nv = p.vars.len();
            p.terms.insert(Mono(vec![0; nv]), c);
        }
        p
    }

    /// c * x_i^e
    pub fn monomial(vars: Vec<String>, i: usize, e: u32, c: impl Into<BigInt>) -> Self {
        let mut p = SparsePoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            let mut exps = vec![0; p.vars.len()];
            exps[i] = e;
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    /// Standard variable set x1..xn.
    pub fn x_vars(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    /// Standard variable set y1..ym for restricted polynomials.
    pub fn y_vars(m: usize) -> Vec<String> {
        (1..=m).map(|i| format!("y{i}")).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars());
        let key = Mono(exps);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), &(-c));
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = SparsePoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> SparsePoly {
        let c = c.into();
        let mut out = SparsePoly::zero(self.vars.clone());
        for (m, a) in &self.terms {
            out.add_term(m.0.clone(), &(a * &c));
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.add_term(exps, &(c * BigInt::from(e)));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The unique degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division; panics if the divisor does not divide exactly.
    pub fn exact_div(&self, divisor: &SparsePoly) -> SparsePoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.vars.clone());
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let exps: Option<Vec<u32>> = rm
                .0
                .iter()
                .zip(&dm.0)
                .map(|(a, b)| a.checked_sub(*b))
                .collect();
            let exps = exps.expect("inexact polynomial division (monomial)");
            let (q, r) = num_integer::div_rem(rc.clone(), dc.clone());
            assert!(r.is_zero(), "inexact polynomial division (coefficient)");
            let mut t = SparsePoly::zero(self.vars.clone());
            t.add_term(exps, &q);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        quot
    }

    fn fmt_term(m: &Mono, c: &BigInt, vars: &[String], lead: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mag = c.abs();
        if lead {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let is_const = m.degree() == 0;
        if !mag.is_one() || is_const {
            write!(f, "{mag}")?;
            if !is_const {
                write!(f, "*")?;
            }
        }
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            SparsePoly::fmt_term(m, c, &self.vars, i == 0, f)?;
        }
        Ok(())
    }
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
/// Every division in the elimination is exact over the polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<SparsePoly>>) -> SparsePoly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        let vars: Vec<String> = vec![];
        return SparsePoly::constant(vars, 1);
    }
    let vars = m[0][0].vars.clone();
    let one = SparsePoly::constant(vars.clone(), 1);
    let mut sign = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return SparsePoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
        }
        for i in k + 1..n {
            m[i][k] = SparsePoly::zero(vars.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}
