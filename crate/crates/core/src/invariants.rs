//! Basic invariants of G(r,p,n), the restriction map onto a lattice
//! subspace, and the Jacobian-determinant surjectivity check.
//!
//! The invariant ring of G(r,p,n) is generated by the power sums
//! f_l = sum_i x_i^{rl} for l = 1..n-1 together with (x_1...x_n)^q.
//! Restriction to an orbit representative X_lambda substitutes the block
//! variable for each coordinate of a block and 0 for the zero block, so
//! all main-path coefficients stay integral.  Restriction to a general
//! descriptor (nonzero phases) is also provided, with cyclotomic
//! coefficients.

use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, MonomialElement};
use crate::lattice::{fixed_space, standard_subspace, PartitionIndex, SubspaceDescriptor};
use crate::poly::{bareiss_det, Mono, SparsePoly};
use crate::reftype::ReflectionType;
use crate::stabilizer::{cx_index, cx_ref_type};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// f_1, ..., f_{n-1}, (x_1...x_n)^q; the degree multiset equals the
/// degree multiset of the group.
pub fn basic_invariants(spec: &GroupSpec) -> Vec<SparsePoly> {
    let n = spec.n;
    let vars = SparsePoly::x_vars(n);
    let mut out = Vec::new();
    for l in 1..n as u32 {
        let mut f = SparsePoly::zero(vars.clone());
        for i in 0..n {
            let mut exps = vec![0u32; n];
            exps[i] = spec.r * l;
            f.add_term(exps, &BigInt::from(1));
        }
        out.push(f);
    }
    let mut prod = SparsePoly::zero(vars);
    prod.add_term(vec![spec.q; n], &BigInt::from(1));
    out.push(prod);
    out
}

/// Restriction along X_lambda (u = 0): x_k goes to the block variable of
/// its block, zero-block coordinates go to 0.
pub fn restrict(f: &SparsePoly, spec: &GroupSpec, idx: &PartitionIndex) -> Result<SparsePoly> {
    let x = standard_subspace(spec, &PartitionIndex::new(idx.lambda.clone(), 0))?;
    Ok(restrict_to_descriptor_integral(f, &x))
}

/// Integral restriction along a descriptor with all phases zero.
fn restrict_to_descriptor_integral(f: &SparsePoly, x: &SubspaceDescriptor) -> SparsePoly {
    debug_assert!(x.phases.iter().all(|&p| p == 0));
    let a = x.dim();
    let mut block_of = vec![usize::MAX; x.n];
    for (bi, b) in x.blocks.iter().enumerate() {
        for &k in b {
            block_of[k] = bi;
        }
    }
    let mut out = SparsePoly::zero(SparsePoly::y_vars(a));
    'terms: for (m, c) in &f.terms {
        let mut exps = vec![0u32; a];
        for (k, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if block_of[k] == usize::MAX {
                continue 'terms; // a zero coordinate kills the term
            }
            exps[block_of[k]] += e;
        }
        out.add_term(exps, c);
    }
    out
}

/// A polynomial with cyclotomic-integer coefficients, used for the
/// direct restriction at nonzero phases and for directional derivatives.
#[derive(Clone, Debug)]
pub struct CycPoly {
    pub modulus: u32,
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Cyc>,
}

impl CycPoly {
    pub fn zero(modulus: u32, nvars: usize) -> Self {
        CycPoly {
            modulus,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &Cyc) {
        let entry = self
            .terms
            .entry(Mono(exps))
            .or_insert_with(|| Cyc::zero(self.modulus));
        entry.add_assign(c);
    }

    /// True iff every coefficient reduces to zero modulo the cyclotomic
    /// polynomial of the modulus.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        debug_assert_eq!(self.modulus, other.modulus);
        let mut out = CycPoly::zero(self.modulus, self.nvars);
        for (ma, ca) in &self.terms {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(exps, &ca.mul(cb));
            }
        }
        out
    }

    pub fn sub(&self, other: &CycPoly) -> CycPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let mut neg = c.clone();
            neg.scale(-1);
            out.add_term(m.0.clone(), &neg);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> CycPoly {
        let mut out = CycPoly::zero(self.modulus, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            let mut cc = c.clone();
            cc.scale(e as i128);
            out.add_term(exps, &cc);
        }
        out
    }
}

/// Direct restriction of an integer polynomial along any descriptor:
/// x_k -> w^{phase_k} y_{block(k)}, zero coordinates -> 0.  Coefficients
/// live at the given modulus, which must be a multiple of the phase
/// modulus of the descriptor.
pub fn restrict_to_descriptor_cyc(
    f: &SparsePoly,
    x: &SubspaceDescriptor,
    modulus: u32,
) -> CycPoly {
    assert_eq!(modulus % x.r, 0);
    let scale = (modulus / x.r) as i64;
    let a = x.dim();
    let mut block_of = vec![usize::MAX; x.n];
    for (bi, b) in x.blocks.iter().enumerate() {
        for &k in b {
            block_of[k] = bi;
        }
    }
    let mut out = CycPoly::zero(modulus, a);
    'terms: for (m, c) in &f.terms {
        let mut exps = vec![0u32; a];
        let mut phase: i64 = 0;
        for (k, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if block_of[k] == usize::MAX {
                continue 'terms;
            }
            exps[block_of[k]] += e;
            phase += scale * x.phases[k] as i64 * e as i64;
        }
        let mut coeff = Cyc::root_power(modulus, phase);
        coeff.scale(bigint_to_i128(c));
        out.add_term(exps, &coeff);
    }
    out
}

/// Restriction of a cyclotomic-coefficient polynomial along a descriptor.
fn restrict_cyc_poly(f: &CycPoly, x: &SubspaceDescriptor) -> CycPoly {
    let modulus = f.modulus;
    assert_eq!(modulus % x.r, 0);
    let scale = (modulus / x.r) as i64;
    let a = x.dim();
    let mut block_of = vec![usize::MAX; x.n];
    for (bi, b) in x.blocks.iter().enumerate() {
        for &k in b {
            block_of[k] = bi;
        }
    }
    let mut out = CycPoly::zero(modulus, a);
    'terms: for (m, c) in &f.terms {
        let mut exps = vec![0u32; a];
        let mut phase: i64 = 0;
        for (k, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if block_of[k] == usize::MAX {
                continue 'terms;
            }
            exps[block_of[k]] += e;
            phase += scale * x.phases[k] as i64 * e as i64;
        }
        out.add_term(exps, &c.rotated(phase));
    }
    out
}

fn bigint_to_i128(c: &BigInt) -> i128 {
    i128::try_from(c.clone()).expect("coefficient fits in i128")
}

/// The action (g . f)(v) = f(g^{-1} v) on an integer polynomial, with
/// cyclotomic coefficients in the result.
pub fn apply_element(f: &SparsePoly, spec: &GroupSpec, g: &MonomialElement) -> CycPoly {
    let h = g.inverse(spec.r);
    let n = spec.n;
    let mut out = CycPoly::zero(spec.r, n);
    for (m, c) in &f.terms {
        // x_j -> w^{b_{tau^{-1}(j)}} x_{tau^{-1}(j)} for h = (tau, b),
        // and tau^{-1}(j) = g.perm[j]
        let mut exps = vec![0u32; n];
        let mut phase: i64 = 0;
        for (j, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let src = g.perm[j];
            exps[src] += e;
            phase += h.phases[src] as i64 * e as i64;
        }
        let mut coeff = Cyc::root_power(spec.r, phase);
        coeff.scale(bigint_to_i128(c));
        out.add_term(exps, &coeff);
    }
    out
}

/// Exact invariance test g . f = f.
pub fn is_invariant(f: &SparsePoly, spec: &GroupSpec, g: &MonomialElement) -> bool {
    let mut diff = apply_element(f, spec, g);
    for (m, c) in &f.terms {
        let neg = Cyc::integer(spec.r, -bigint_to_i128(c));
        diff.add_term(m.0.clone(), &neg);
    }
    diff.is_zero()
}

/// Outcome of the Jacobian surjectivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianOutcome {
    pub surjective: bool,
    /// Why the check failed, when it did.
    pub reason: Option<String>,
    /// Degrees of the selected invariants, when a nonzero determinant exists.
    pub subset_degrees: Option<Vec<u64>>,
    /// Leading term of the nonzero Jacobian determinant.
    pub det_leading_term: Option<String>,
}

impl JacobianOutcome {
    fn no(reason: String) -> Self {
        JacobianOutcome {
            surjective: false,
            reason: Some(reason),
            subset_degrees: None,
            det_leading_term: None,
        }
    }
}

/// Decide surjectivity of the restriction map onto X_{lambda,u} by
/// Jacobian determinants.
///
/// Requires C_X to act as a reflection group (index one); otherwise the
/// answer is false outright.  Among the basic invariants, every subset
/// whose degree multiset equals the degrees of C_X is restricted to
/// X_lambda and its Jacobian determinant computed by fraction-free
/// elimination; the map is surjective iff some subset gives a nonzero
/// determinant.  The u-twist never changes the answer, so the check runs
/// at u = 0.
pub fn jacobian_surjectivity(spec: &GroupSpec, idx: &PartitionIndex) -> Result<JacobianOutcome> {
    idx.validate(spec)?;
    // force the lattice-membership errors early
    let _ = standard_subspace(spec, &PartitionIndex::new(idx.lambda.clone(), 0))?;
    if cx_index(spec, &idx.lambda) != 1 {
        return Ok(JacobianOutcome::no(
            "C_X is not a reflection group (reflection subgroup has index > 1)".into(),
        ));
    }
    let target: ReflectionType = cx_ref_type(spec, &idx.lambda);
    let target_degrees = target.degrees();
    let basics = basic_invariants(spec);
    let basic_degrees: Vec<u64> = basics
        .iter()
        .map(|f| f.homogeneous_degree().unwrap() as u64)
        .collect();
    let subsets = degree_matching_subsets(&basic_degrees, &target_degrees);
    if subsets.is_empty() {
        return Ok(JacobianOutcome::no(format!(
            "exponent obstruction: no subset of the basic degrees {basic_degrees:?} \
             matches the target degrees {target_degrees:?}"
        )));
    }
    let a = target_degrees.len();
    for subset in &subsets {
        let restricted: Vec<SparsePoly> = subset
            .iter()
            .map(|&i| restrict(&basics[i], spec, idx))
            .collect::<Result<_>>()?;
        let jac: Vec<Vec<SparsePoly>> = restricted
            .iter()
            .map(|f| (0..a).map(|j| f.derivative(j)).collect())
            .collect();
        let det = bareiss_det(jac);
        if !det.is_zero() {
            let lead = det
                .leading()
                .map(|(m, c)| {
                    let mut p = SparsePoly::zero(det.vars.clone());
                    p.add_term(m.0.clone(), c);
                    p.to_string()
                })
                .unwrap();
            return Ok(JacobianOutcome {
                surjective: true,
                reason: None,
                subset_degrees: Some(subset.iter().map(|&i| basic_degrees[i]).collect()),
                det_leading_term: Some(lead),
            });
        }
    }
    Ok(JacobianOutcome::no(
        "every degree-matching subset has identically vanishing Jacobian".into(),
    ))
}

/// All index subsets of `degrees` realizing the multiset `target`.
fn degree_matching_subsets(degrees: &[u64], target: &[u64]) -> Vec<Vec<usize>> {
    let mut need: BTreeMap<u64, usize> = BTreeMap::new();
    for &d in target {
        *need.entry(d).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        degrees: &[u64],
        from: usize,
        need: &mut BTreeMap<u64, usize>,
        remaining: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        if from >= degrees.len() {
            return;
        }
        // take degrees[from] if still needed
        if let Some(cnt) = need.get_mut(&degrees[from]) {
            if *cnt > 0 {
                *cnt -= 1;
                chosen.push(from);
                rec(degrees, from + 1, need, remaining - 1, chosen, out);
                chosen.pop();
                *need.get_mut(&degrees[from]).unwrap() += 1;
            }
        }
        rec(degrees, from + 1, need, remaining, chosen, out);
    }
    rec(degrees, 0, &mut need, target.len(), &mut chosen, &mut out);
    out
}

/// Derivative-vanishing check: every directional derivative of an
/// invariant along a non-fixed eigendirection of g restricts to zero on
/// Fix(g).
///
/// Directions are taken per permutation cycle of g: coordinate vectors
/// for 1-cycles, and the phase-twisted discrete-Fourier combinations for
/// longer cycles, with coefficients at modulus r * cycle length.
pub fn lemma_pz_check(spec: &GroupSpec, g: &MonomialElement, f: &SparsePoly) -> Result<bool> {
    if !is_invariant(f, spec, g) {
        return Err(Error::Internal(
            "derivative check requires an invariant polynomial".into(),
        ));
    }
    let x = fixed_space(spec, g);
    let r = spec.r;
    for cyc in g.cycles() {
        let len = cyc.len() as u32;
        let modulus = r * len;
        let scale = len as i64; // w_r = w_modulus^len
        let total: i64 = cyc.iter().map(|&i| g.phases[i] as i64).sum();
        // partial phase sums along the cycle
        let mut partial = vec![0i64; cyc.len()];
        for j in 1..cyc.len() {
            partial[j] = partial[j - 1] + g.phases[cyc[j - 1]] as i64;
        }
        for m in 0..len as i64 {
            // eigenvalues are w_modulus^{total + r*m}
            let mu_exp = total + r as i64 * m;
            if mu_exp.rem_euclid(modulus as i64) == 0 {
                continue; // the fixed direction of a surviving cycle
            }
            // direction v with v_{c_j} = w_r^{partial_j} * mu^{-j}
            let mut deriv = CycPoly::zero(modulus, spec.n);
            for (j, &c) in cyc.iter().enumerate() {
                let coeff_exp = scale * partial[j] - mu_exp * j as i64;
                let df = f.derivative(c);
                for (mono, coeff) in &df.terms {
                    let mut cc = Cyc::root_power(modulus, coeff_exp);
                    cc.scale(bigint_to_i128(coeff));
                    deriv.add_term(mono.0.clone(), &cc);
                }
            }
            let restricted = restrict_cyc_poly(&deriv, &x);
            if !restricted.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
