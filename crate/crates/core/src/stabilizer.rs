//! Setwise and pointwise stabilizers of lattice subspaces.
//!
//! Closed forms for |C_X|, the reflection subgroup of C_X and its index,
//! plus a brute-force path that enumerates the group, realizes C_X as
//! monomial matrices in the block basis of X, and reads off invariant
//! degrees by exact Molien averaging.

use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::group::{elements_bounded, GroupSpec, MonomialElement};
use crate::lattice::{act, delta_lambda_p, PartitionIndex, SubspaceDescriptor};
use crate::reftype::{ReflectionType, TypeAtom};
use num_integer::Integer;
use std::collections::{BTreeMap, HashSet, VecDeque};

/// The reflection subgroup of C_X for X in the orbit of X_{lambda,u}:
/// G(r,1,m_1) x ... x G(r,1,m_c) when k < n, and
/// G(r,p_{i_1},m_1) x ... x G(r,p_{i_c},m_c) with p_i = lcm(i,p)/i when
/// k = n.  Rank-one factors normalize to cyclic groups.
pub fn cx_ref_type(spec: &GroupSpec, lambda: &[u32]) -> ReflectionType {
    let k: u32 = lambda.iter().sum();
    let idx = PartitionIndex::new(lambda.to_vec(), 0);
    let atoms = idx.distinct_parts().into_iter().map(|(i, m)| {
        let p_i = if (k as usize) < spec.n {
            1
        } else {
            i.lcm(&spec.p) / i
        };
        TypeAtom::Grpn {
            r: spec.r,
            p: p_i,
            m,
        }
    });
    ReflectionType::product(atoms)
}

/// |C_X|: m_1! ... m_c! r^a when k < n, times delta_{lambda,p}/p when k = n.
pub fn cx_order_formula(spec: &GroupSpec, lambda: &[u32]) -> u64 {
    let k: u32 = lambda.iter().sum();
    let a = lambda.len() as u32;
    let idx = PartitionIndex::new(lambda.to_vec(), 0);
    let mut o: u64 = idx
        .distinct_parts()
        .iter()
        .map(|&(_, m)| factorial(m))
        .product();
    o *= (spec.r as u64).pow(a);
    if k as usize == spec.n {
        o = o * delta_lambda_p(spec, lambda) as u64 / spec.p as u64;
    }
    o
}

/// |Z_X|: n_1! ... n_a! (n-k)! r^{n-k}/p when k < n, and n_1! ... n_a!
/// when k = n.
pub fn z_order_formula(spec: &GroupSpec, lambda: &[u32]) -> u64 {
    let k: u32 = lambda.iter().sum();
    let mut o: u64 = lambda.iter().map(|&x| factorial(x)).product();
    if (k as usize) < spec.n {
        let m = (spec.n - k as usize) as u32;
        o *= factorial(m);
        o *= (spec.r as u64).pow(m) / spec.p as u64;
    }
    o
}

/// |C_X : C_X^ref| = p^{c-1} gcd(i_1,...,i_c,p) / prod gcd(i_j,p) when
/// k = n, and 1 when k < n.  The index is 1 iff C_X acts on X as a
/// reflection group.
pub fn cx_index(spec: &GroupSpec, lambda: &[u32]) -> u64 {
    let k: u32 = lambda.iter().sum();
    if (k as usize) < spec.n || lambda.is_empty() {
        return 1;
    }
    let parts = PartitionIndex::new(lambda.to_vec(), 0).distinct_parts();
    let c = parts.len() as u32;
    let gcd_all = parts.iter().fold(spec.p, |g, &(i, _)| g.gcd(&i));
    let denom: u64 = parts.iter().map(|&(i, _)| i.gcd(&spec.p) as u64).product();
    (spec.p as u64).pow(c - 1) * gcd_all as u64 / denom
}

fn factorial(m: u32) -> u64 {
    (2..=m as u64).product::<u64>().max(1)
}

/// Everything the brute-force pass measures about N_X, Z_X, C_X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    pub n_order: u64,
    pub z_order: u64,
    pub c_order: u64,
    pub cx_ref_order: u64,
    pub cx_ref_degrees: Vec<u64>,
    pub cx_ref_hyperplanes: u64,
    pub cx_index: u64,
    pub is_reflection_group: bool,
}

/// Fast setwise-stabilizer test g(X) = X without building the image.
pub fn stabilizes(spec: &GroupSpec, g: &MonomialElement, x: &SubspaceDescriptor) -> bool {
    let r = spec.r;
    // zero coordinates must map to zero coordinates
    for &k in &x.zero_block {
        if x.block_of(g.perm[k]).is_some() {
            return false;
        }
    }
    for b in &x.blocks {
        let k0 = b[0];
        let target = match x.block_of(g.perm[k0]) {
            Some(t) => t,
            None => return false,
        };
        if x.blocks[target].len() != b.len() {
            return false;
        }
        let shift =
            (g.phases[k0] + x.phases[k0] + r - x.phases[g.perm[k0]] % r) % r;
        for &k in &b[1..] {
            if x.block_of(g.perm[k]) != Some(target) {
                return false;
            }
            let s = (g.phases[k] + x.phases[k] + r - x.phases[g.perm[k]] % r) % r;
            if s != shift {
                return false;
            }
        }
    }
    true
}

/// The matrix of g on the block basis of X, as a monomial element of
/// dimension dim X.  Requires g(X) = X.
pub fn matrix_on_subspace(
    spec: &GroupSpec,
    g: &MonomialElement,
    x: &SubspaceDescriptor,
) -> MonomialElement {
    let r = spec.r;
    let a = x.dim();
    let mut perm = vec![0usize; a];
    let mut phases = vec![0u32; a];
    for (bi, b) in x.blocks.iter().enumerate() {
        let k0 = b[0];
        let target = x.block_of(g.perm[k0]).expect("g must stabilize X");
        perm[bi] = target;
        phases[bi] = (g.phases[k0] + x.phases[k0] + r - x.phases[g.perm[k0]] % r) % r;
    }
    MonomialElement { perm, phases }
}

/// Left-multiplication closure of a generating set (with inverses thrown
/// in), as a full element list.
pub fn subgroup_closure(gens: &[MonomialElement], dim: usize, r: u32) -> Vec<MonomialElement> {
    let id = MonomialElement::identity(dim);
    let mut all_gens: Vec<MonomialElement> = gens.to_vec();
    all_gens.extend(gens.iter().map(|g| g.inverse(r)));
    let mut seen: HashSet<MonomialElement> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &all_gens {
            let h = s.compose(&g, r);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<MonomialElement> = seen.into_iter().collect();
    out.sort();
    out
}

/// Distinct reflecting hyperplanes among the reflections of a monomial
/// group on a-dimensional space.
fn reflection_hyperplane_count(elems: &[MonomialElement], r: u32) -> u64 {
    let mut set: HashSet<(usize, usize, u32)> = HashSet::new();
    for g in elems {
        if g.dim() == 0 || !g.is_reflection(r) {
            continue;
        }
        // either one diagonal phase (hyperplane y_i = 0) or one
        // transposition with cancelling phases (y_i = w^s y_j)
        let mut swap: Option<(usize, usize)> = None;
        let mut diag: Option<usize> = None;
        for (i, &pi) in g.perm.iter().enumerate() {
            if pi != i && i < pi {
                swap = Some((i, pi));
            }
            if pi == i && g.phases[i] != 0 {
                diag = Some(i);
            }
        }
        match (swap, diag) {
            (Some((i, j)), None) => {
                // fixed hyperplane is v_i = w^{phases[j]} v_j
                set.insert((i, j, g.phases[j] % r));
            }
            (None, Some(i)) => {
                set.insert((i, i, 0));
            }
            _ => unreachable!("reflection with unexpected cycle shape"),
        }
    }
    set.len() as u64
}

/// Enumerate the group, compute N_X, Z_X, C_X and the reflection subgroup
/// of C_X, then read its invariant degrees off an exact Molien series.
pub fn bruteforce_stabilizers(
    spec: &GroupSpec,
    x: &SubspaceDescriptor,
    bound: u128,
) -> Result<StabilizerReport> {
    let elems = elements_bounded(spec, bound)?;
    let mut n_order = 0u64;
    let mut cx: HashSet<MonomialElement> = HashSet::new();
    for g in &elems {
        if stabilizes(spec, g, x) {
            debug_assert_eq!(act(g, x), *x);
            n_order += 1;
            cx.insert(matrix_on_subspace(spec, g, x));
        }
    }
    let c_order = cx.len() as u64;
    let z_order = n_order / c_order;
    let reflections: Vec<MonomialElement> = cx
        .iter()
        .filter(|m| m.dim() > 0 && m.is_reflection(spec.r))
        .cloned()
        .collect();
    let closure = subgroup_closure(&reflections, x.dim(), spec.r);
    let cx_ref_order = closure.len() as u64;
    let cx_ref_degrees = degrees_via_molien(&closure, x.dim(), spec.r)?;
    let cx_ref_hyperplanes = reflection_hyperplane_count(&closure, spec.r);
    Ok(StabilizerReport {
        n_order,
        z_order,
        c_order,
        cx_ref_order,
        cx_ref_degrees,
        cx_ref_hyperplanes,
        cx_index: c_order / cx_ref_order,
        is_reflection_group: c_order == cx_ref_order,
    })
}

/// Invariant degrees of a finite monomial matrix group, by exact Molien
/// averaging.
///
/// The dimension of the degree-d invariants is the average over the group
/// of the degree-d coefficient of 1/det(1 - t g); for a monomial g this
/// determinant factors as a product of (1 - w^s t^l) over the permutation
/// cycles.  Averages are cyclotomic integers checked to be rational
/// integers.  The Hilbert series is then factored greedily as a product
/// of 1/(1 - t^{d_i}): repeatedly take the smallest degree with a nonzero
/// coefficient, using the coefficient as its multiplicity.  The series
/// cap grows adaptively and is bounded by the group order; failure to
/// factor is an error, not a guess.
pub fn degrees_via_molien(elems: &[MonomialElement], dim: usize, r: u32) -> Result<Vec<u64>> {
    let order = elems.len() as i128;
    assert!(order > 0, "need a nonempty group");
    if dim == 0 {
        return Ok(vec![]);
    }
    // bucket elements by the multiset of (cycle length, cycle phase sum)
    let mut buckets: BTreeMap<Vec<(usize, u32)>, i128> = BTreeMap::new();
    for g in elems {
        let mut sig: Vec<(usize, u32)> = g
            .cycles()
            .iter()
            .map(|cyc| {
                let s = cyc
                    .iter()
                    .map(|&i| g.phases[i])
                    .fold(0u32, |a, b| (a + b) % r);
                (cyc.len(), s)
            })
            .collect();
        sig.sort_unstable();
        *buckets.entry(sig).or_insert(0) += 1;
    }

    let mut cap = 32usize;
    loop {
        let dims = molien_dims(&buckets, order, r, cap)?;
        match extract_degrees(&dims, dim) {
            Ok(mut degrees) => {
                let prod: u128 = degrees.iter().map(|&d| d as u128).product();
                if prod != order as u128 {
                    return Err(Error::NotReflectionGroup(format!(
                        "degrees {degrees:?} multiply to {prod}, group order is {order}"
                    )));
                }
                degrees.sort_unstable();
                return Ok(degrees);
            }
            Err(ExtractFailure::NeedLargerCap) => {
                if cap as i128 >= order {
                    return Err(Error::NotReflectionGroup(
                        "no factorization up to the group-order cap".into(),
                    ));
                }
                cap = (cap * 2).min(order as usize);
            }
            Err(ExtractFailure::NotAProduct(msg)) => {
                return Err(Error::NotReflectionGroup(msg));
            }
        }
    }
}

/// Invariant dimensions for degrees 0..=cap.
fn molien_dims(
    buckets: &BTreeMap<Vec<(usize, u32)>, i128>,
    order: i128,
    r: u32,
    cap: usize,
) -> Result<Vec<i128>> {
    let mut total: Vec<Cyc> = (0..=cap).map(|_| Cyc::zero(r)).collect();
    for (sig, count) in buckets {
        // expand prod 1/(1 - w^s t^l) up to degree cap
        let mut series: Vec<Cyc> = (0..=cap).map(|_| Cyc::zero(r)).collect();
        series[0] = Cyc::integer(r, 1);
        for &(l, s) in sig {
            for d in l..=cap {
                let prev = series[d - l].rotated(s as i64);
                series[d].add_assign(&prev);
            }
        }
        for (t, v) in total.iter_mut().zip(series.iter_mut()) {
            v.scale(*count);
            t.add_assign(v);
        }
    }
    let mut dims = Vec::with_capacity(cap + 1);
    for (d, c) in total.iter().enumerate() {
        let v = c
            .as_integer()
            .ok_or(Error::NonIntegerMolien { degree: d })?;
        if v % order != 0 {
            return Err(Error::NonIntegerMolien { degree: d });
        }
        dims.push(v / order);
    }
    Ok(dims)
}

enum ExtractFailure {
    NeedLargerCap,
    NotAProduct(String),
}

fn extract_degrees(dims: &[i128], want: usize) -> std::result::Result<Vec<u64>, ExtractFailure> {
    let mut c = dims.to_vec();
    if c[0] != 1 {
        return Err(ExtractFailure::NotAProduct(format!(
            "constant term {} != 1",
            c[0]
        )));
    }
    let mut degrees: Vec<u64> = Vec::new();
    loop {
        let d = match (1..c.len()).find(|&d| c[d] != 0) {
            Some(d) => d,
            None => break,
        };
        let mult = c[d];
        if mult < 0 {
            return Err(ExtractFailure::NotAProduct(format!(
                "negative coefficient {mult} at degree {d}"
            )));
        }
        for _ in 0..mult {
            degrees.push(d as u64);
            // multiply by (1 - t^d)
            for j in (d..c.len()).rev() {
                c[j] -= c[j - d];
            }
        }
        if degrees.len() > want {
            return Err(ExtractFailure::NotAProduct(format!(
                "more than {want} generator degrees extracted"
            )));
        }
    }
    if degrees.len() < want {
        // all computed coefficients are consumed but degrees are missing:
        // generators live beyond the cap
        return Err(ExtractFailure::NeedLargerCap);
    }
    Ok(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_subspace;

    fn spec(r: u32, p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(r, p, n).unwrap()
    }

    #[test]
    fn cx_ref_type_examples() {
        // (4,2,4), lambda = (2,2): p_2 = 1, so G(4,1,2)
        let t = cx_ref_type(&spec(4, 2, 4), &[2, 2]);
        assert_eq!(t.atoms, vec![TypeAtom::Grpn { r: 4, p: 1, m: 2 }]);
        // (2,2,6), lambda = (3,3): p_3 = 2, so G(2,2,2)
        let t = cx_ref_type(&spec(2, 2, 6), &[3, 3]);
        assert_eq!(t.atoms, vec![TypeAtom::Grpn { r: 2, p: 2, m: 2 }]);
        // lambda = (1^n) is the whole group
        let t = cx_ref_type(&spec(4, 2, 3), &[1, 1, 1]);
        assert_eq!(t.atoms, vec![TypeAtom::Grpn { r: 4, p: 2, m: 3 }]);
        assert_eq!(t.order(), spec(4, 2, 3).order() as u64);
    }

    #[test]
    fn cx_order_examples() {
        // (2,1,4), lambda = (2,2): both branches agree at p = 1
        assert_eq!(cx_order_formula(&spec(2, 1, 4), &[2, 2]), 8);
        // (2,2,4), lambda = (3,1): 1!1! * 4 * 1/2 = 2
        assert_eq!(cx_order_formula(&spec(2, 2, 4), &[3, 1]), 2);
        // (3,1,3), lambda = (2): k < n
        assert_eq!(cx_order_formula(&spec(3, 1, 3), &[2]), 3);
    }

    #[test]
    fn branch_overlap_at_p_equal_one() {
        // with p = 1 and k = n, delta = 1 and the two branch values agree
        for n in 1..=5u32 {
            let s = spec(3, 1, n);
            for lambda in crate::lattice::partitions(n) {
                let a = lambda.len() as u32;
                let parts = PartitionIndex::new(lambda.clone(), 0).distinct_parts();
                let k_lt_n: u64 = parts.iter().map(|&(_, m)| factorial(m)).product::<u64>()
                    * (s.r as u64).pow(a);
                assert_eq!(cx_order_formula(&s, &lambda), k_lt_n);
            }
        }
    }

    #[test]
    fn cx_index_examples() {
        assert_eq!(cx_index(&spec(3, 1, 3), &[2]), 1); // k < n
        assert_eq!(cx_index(&spec(2, 2, 4), &[3, 1]), 2);
        assert_eq!(cx_index(&spec(4, 2, 4), &[2, 2]), 1); // single distinct part
        assert_eq!(cx_index(&spec(5, 5, 3), &[2, 1]), 5);
        assert_eq!(cx_index(&spec(5, 5, 5), &[2, 1]), 1); // k < n again
    }

    #[test]
    fn molien_examples() {
        // {1, -1} on one dimension: degrees {2}
        let id = MonomialElement::identity(1);
        let neg = MonomialElement {
            perm: vec![0],
            phases: vec![1],
        };
        assert_eq!(degrees_via_molien(&[id.clone(), neg], 1, 2).unwrap(), vec![2]);
        // trivial group on 3 dimensions: degrees {1,1,1}
        let id3 = MonomialElement::identity(3);
        assert_eq!(degrees_via_molien(&[id3], 3, 2).unwrap(), vec![1, 1, 1]);
        // all of G(2,1,2): degrees {2,4}
        let s = spec(2, 1, 2);
        let elems: Vec<_> = crate::group::elements(&s).collect();
        assert_eq!(degrees_via_molien(&elems, 2, 2).unwrap(), vec![2, 4]);
    }

    #[test]
    fn molien_rejects_non_reflection_groups() {
        // {I, -I} on two dimensions is not a reflection group
        let id = MonomialElement::identity(2);
        let neg = MonomialElement {
            perm: vec![0, 1],
            phases: vec![1, 1],
        };
        assert!(matches!(
            degrees_via_molien(&[id, neg], 2, 2),
            Err(Error::NotReflectionGroup(_))
        ));
    }

    #[test]
    fn bruteforce_on_named_cases() {
        // (2,1,4), lambda = (2,2): C_X = G(2,1,2) of order 8
        let s = spec(2, 1, 4);
        let x = standard_subspace(&s, &PartitionIndex::new(vec![2, 2], 0)).unwrap();
        let rep = bruteforce_stabilizers(&s, &x, 1 << 20).unwrap();
        assert_eq!(rep.c_order, 8);
        assert_eq!(rep.cx_ref_order, 8);
        assert_eq!(rep.cx_ref_degrees, vec![2, 4]);
        assert!(rep.is_reflection_group);
        assert_eq!(rep.c_order, cx_order_formula(&s, &[2, 2]));

        // (2,2,4), lambda = (3,1): index 2, C_X not a reflection group
        let s = spec(2, 2, 4);
        let x = standard_subspace(&s, &PartitionIndex::new(vec![3, 1], 0)).unwrap();
        let rep = bruteforce_stabilizers(&s, &x, 1 << 20).unwrap();
        assert_eq!(rep.c_order, 2);
        assert_eq!(rep.cx_ref_order, 1);
        assert_eq!(rep.cx_index, 2);
        assert!(!rep.is_reflection_group);
        assert_eq!(rep.cx_index, cx_index(&s, &[3, 1]));

        // X = V: N = G, Z = 1, C = G
        let s = spec(3, 3, 3);
        let v = SubspaceDescriptor::full(3, 3);
        let rep = bruteforce_stabilizers(&s, &v, 1 << 20).unwrap();
        assert_eq!(rep.n_order as u128, s.order());
        assert_eq!(rep.z_order, 1);
        assert_eq!(rep.cx_ref_degrees, s.degrees());

        // X = {0}: N = G, Z = G, C trivial
        let o = SubspaceDescriptor::origin(3, 3);
        let rep = bruteforce_stabilizers(&s, &o, 1 << 20).unwrap();
        assert_eq!(rep.z_order as u128, s.order());
        assert_eq!(rep.c_order, 1);
        assert_eq!(rep.cx_ref_degrees, Vec::<u64>::new());
    }
}
