//! Exact arithmetic with roots of unity.
//!
//! A value is stored as an integer vector of length `m` representing
//! `sum c_k w^k` in `Z[x]/(x^m - 1)`, where `w = exp(2*pi*i/m)`.  The
//! representation is redundant; zero tests and integer extraction reduce
//! modulo the m-th cyclotomic polynomial, which is computed by exact
//! division of `x^m - 1` by the lower-order cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Vec<i128>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i128>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic(m: u32) -> Vec<i128> {
    assert!(m >= 1);
    if let Some(phi) = cyclotomic_cache().lock().unwrap().get(&m) {
        return phi.clone();
    }
    let phi = if m == 1 {
        vec![-1, 1]
    } else {
        // x^m - 1 divided by the product of Phi_d for proper divisors d.
        let mut num = vec![0i128; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in 1..m {
            if m % d == 0 {
                num = poly_exact_div(&num, &cyclotomic(d));
            }
        }
        num
    };
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(m, phi.clone());
    phi
}

/// Exact division of integer polynomials; panics if the division is inexact.
fn poly_exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    assert!(den[dd] == 1 || den[dd] == -1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dn = rem.len() - 1;
    assert!(dn >= dd);
    let mut quot = vec![0i128; dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd] / den[dd];
        quot[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// Remainder of `poly` modulo the monic polynomial `modp`.
fn poly_rem(poly: &[i128], modp: &[i128]) -> Vec<i128> {
    let dd = modp.len() - 1;
    let mut rem = poly.to_vec();
    while rem.len() > dd {
        let top = rem.len() - 1;
        let c = rem[top];
        if c != 0 {
            for j in 0..dd {
                rem[top - dd + j] -= c * modp[j];
            }
        }
        rem.pop();
    }
    rem
}

/// An element of `Z[x]/(x^m - 1)`, read as a cyclotomic integer at `w_m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cyc {
    pub modulus: u32,
    pub coeffs: Vec<i128>,
}

impl Cyc {
    pub fn zero(m: u32) -> Self {
        Cyc {
            modulus: m,
            coeffs: vec![0; m as usize],
        }
    }

    pub fn integer(m: u32, v: i128) -> Self {
        let mut c = Cyc::zero(m);
        c.coeffs[0] = v;
        c
    }

    /// w_m^k
    pub fn root_power(m: u32, k: i64) -> Self {
        let mut c = Cyc::zero(m);
        let idx = k.rem_euclid(m as i64) as usize;
        c.coeffs[idx] = 1;
        c
    }

    pub fn add_assign(&mut self, other: &Cyc) {
        debug_assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Cyc) {
        debug_assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn scale(&mut self, s: i128) {
        for a in &mut self.coeffs {
            *a *= s;
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        debug_assert_eq!(self.modulus, other.modulus);
        let m = self.modulus as usize;
        let mut out = Cyc::zero(self.modulus);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out.coeffs[(i + j) % m] += a * b;
                }
            }
        }
        out
    }

    /// Multiply by w_m^k (a cyclic rotation of the coefficient vector).
    pub fn rotated(&self, k: i64) -> Cyc {
        let m = self.modulus as usize;
        let shift = k.rem_euclid(self.modulus as i64) as usize;
        let mut out = Cyc::zero(self.modulus);
        for (i, &a) in self.coeffs.iter().enumerate() {
            out.coeffs[(i + shift) % m] = a;
        }
        out
    }

    /// Remainder modulo Phi_m, degree < phi(m); the value is zero iff this is zero.
    fn reduced(&self) -> Vec<i128> {
        let phi = cyclotomic(self.modulus);
        poly_rem(&self.coeffs, &phi)
    }

    /// True iff the represented cyclotomic integer is 0.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        self.reduced().iter().all(|&c| c == 0)
    }

    /// Returns `Some(v)` iff the represented value is the rational integer v.
    pub fn as_integer(&self) -> Option<i128> {
        let rem = self.reduced();
        if rem.iter().skip(1).all(|&c| c == 0) {
            Some(rem.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}
