//! The intersection lattice of the reflection arrangement of G(r,p,n).
//!
//! A lattice element is a subspace of the form t(X_N): a set of
//! coordinates forced to zero, a partition of the remaining coordinates
//! into blocks, and a phase exponent per coordinate twisting the equality
//! constraints inside each block.  Descriptors are kept in a canonical
//! form so that equality of descriptors is equality of subspaces.

use crate::error::{Error, Result};
use crate::group::{GroupSpec, MonomialElement};
use num_integer::Integer;
use std::collections::BTreeSet;

/// Canonical descriptor of a subspace t(X_N).
///
/// Canonical form: blocks sorted by (size descending, minimal element
/// ascending), coordinates inside a block sorted ascending, and the
/// phase of each block's minimal element normalized to 0.  Coordinates
/// in the zero block carry phase 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SubspaceDescriptor {
    pub n: usize,
    pub r: u32,
    pub zero_block: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub phases: Vec<u32>,
}

impl SubspaceDescriptor {
    /// Build the canonical form from raw parts.  `phases` are read per
    /// coordinate; entries for zero-block coordinates are ignored.
    pub fn new(
        n: usize,
        r: u32,
        zero_block: Vec<usize>,
        blocks: Vec<Vec<usize>>,
        phases: Vec<u32>,
    ) -> Self {
        let mut zero = zero_block;
        zero.sort_unstable();
        let mut blks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blks.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut ph = vec![0u32; n];
        for b in &blks {
            let base = phases[b[0]] % r;
            for &k in b {
                ph[k] = (phases[k] % r + r - base) % r;
            }
        }
        SubspaceDescriptor {
            n,
            r,
            zero_block: zero,
            blocks: blks,
            phases: ph,
        }
    }

    /// The whole space V.
    pub fn full(n: usize, r: u32) -> Self {
        SubspaceDescriptor::new(
            n,
            r,
            vec![],
            (0..n).map(|i| vec![i]).collect(),
            vec![0; n],
        )
    }

    /// The origin {0}.
    pub fn origin(n: usize, r: u32) -> Self {
        SubspaceDescriptor::new(n, r, (0..n).collect(), vec![], vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `coord`, or None for the zero block.
    pub fn block_of(&self, coord: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&coord))
    }

    /// Block sizes in canonical (weakly decreasing) order.
    pub fn block_sizes(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.len() as u32).collect()
    }
}

/// Orbit index: a partition lambda of k <= n and a phase-coset index u.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PartitionIndex {
    pub lambda: Vec<u32>,
    pub u: u32,
}

impl PartitionIndex {
    pub fn new(lambda: Vec<u32>, u: u32) -> Self {
        PartitionIndex { lambda, u }
    }

    pub fn k(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// Distinct parts with multiplicities, largest part first.
    pub fn distinct_parts(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &part in &self.lambda {
            match out.last_mut() {
                Some((i, m)) if *i == part => *m += 1,
                _ => out.push((part, 1)),
            }
        }
        out
    }

    pub fn validate(&self, spec: &GroupSpec) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidPartition {
            lambda: self.lambda.clone(),
            u: self.u,
            n: spec.n,
            reason: reason.into(),
        };
        if self.lambda.iter().any(|&x| x == 0) {
            return Err(invalid("parts must be positive"));
        }
        if self.lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid("parts must be weakly decreasing"));
        }
        if self.k() as usize > spec.n {
            return Err(invalid("partition exceeds the rank"));
        }
        if self.u >= delta_lambda_p(spec, &self.lambda) {
            return Err(invalid("u out of range for delta_{lambda,p}"));
        }
        Ok(())
    }
}

/// gcd(p, n_1, ..., n_a); equals p for the empty partition.
pub fn delta_lambda_p(spec: &GroupSpec, lambda: &[u32]) -> u32 {
    lambda.iter().fold(spec.p, |g, &x| g.gcd(&x))
}

/// Whether the descriptor lies in the lattice of the arrangement of G(r,p,n).
///
/// For p < r every t(X_N) occurs.  For p = r (and r > 1) exactly those with
/// |N_0| != 1 occur.  For r = 1 the arrangement has no coordinate
/// hyperplanes at all, so the zero block must be empty.
pub fn in_lattice(spec: &GroupSpec, x: &SubspaceDescriptor) -> bool {
    if spec.r == 1 {
        x.zero_block.is_empty()
    } else if spec.p == spec.r {
        x.zero_block.len() != 1
    } else {
        true
    }
}

fn lattice_check(spec: &GroupSpec, zero_len: usize, lambda: &[u32], u: u32) -> Result<()> {
    let fail = |reason: String| Error::InvalidPartition {
        lambda: lambda.to_vec(),
        u,
        n: spec.n,
        reason,
    };
    if spec.r == 1 && zero_len != 0 {
        return Err(fail("for r = 1 the lattice contains no zero coordinates".into()));
    }
    if spec.r > 1 && spec.p == spec.r && zero_len == 1 {
        return Err(fail("|N_0| = 1 is excluded from the lattice when p = r".into()));
    }
    Ok(())
}

/// The standard orbit representative X_{lambda,u} = t_0^u(X_lambda):
/// blocks are consecutive intervals of the partial sums of lambda, the
/// zero block is {k+1, ..., n}, and coordinate 1 is twisted by w^u.
pub fn standard_subspace(spec: &GroupSpec, idx: &PartitionIndex) -> Result<SubspaceDescriptor> {
    idx.validate(spec)?;
    let k = idx.k() as usize;
    lattice_check(spec, spec.n - k, &idx.lambda, idx.u)?;
    let mut blocks = Vec::new();
    let mut start = 0usize;
    for &part in &idx.lambda {
        blocks.push((start..start + part as usize).collect::<Vec<_>>());
        start += part as usize;
    }
    let zero = (k..spec.n).collect();
    let mut phases = vec![0u32; spec.n];
    if spec.n > 0 {
        phases[0] = idx.u % spec.r;
    }
    Ok(SubspaceDescriptor::new(spec.n, spec.r, zero, blocks, phases))
}

/// Image g(X), recanonicalized.  This is a left action.
pub fn act(g: &MonomialElement, x: &SubspaceDescriptor) -> SubspaceDescriptor {
    debug_assert_eq!(g.dim(), x.n);
    let r = x.r;
    let zero: Vec<usize> = x.zero_block.iter().map(|&k| g.perm[k]).collect();
    let blocks: Vec<Vec<usize>> = x
        .blocks
        .iter()
        .map(|b| b.iter().map(|&k| g.perm[k]).collect())
        .collect();
    let mut phases = vec![0u32; x.n];
    for b in &x.blocks {
        for &k in b {
            phases[g.perm[k]] = (x.phases[k] + g.phases[k]) % r;
        }
    }
    SubspaceDescriptor::new(x.n, r, zero, blocks, phases)
}

/// Exact intersection of two descriptors over the same (n, r).
///
/// Implemented as a union-find with phase potentials: inconsistent phase
/// constraints inside one class force the whole class to zero.
pub fn intersect(x: &SubspaceDescriptor, y: &SubspaceDescriptor) -> SubspaceDescriptor {
    assert_eq!(x.n, y.n);
    assert_eq!(x.r, y.r);
    let n = x.n;
    let r = x.r;
    let mut parent: Vec<usize> = (0..n).collect();
    let mut pot: Vec<u32> = vec![0; n]; // v_i = w^{pot[i]} v_{parent[i]}
    let mut is_zero: Vec<bool> = vec![false; n];

    fn find(parent: &mut [usize], pot: &mut [u32], r: u32, i: usize) -> (usize, u32) {
        if parent[i] == i {
            return (i, 0);
        }
        let (root, pp) = find(parent, pot, r, parent[i]);
        parent[i] = root;
        pot[i] = (pot[i] + pp) % r;
        (root, pot[i])
    }

    let mut mark_zero = |parent: &mut Vec<usize>, pot: &mut Vec<u32>, z: &mut Vec<bool>, i: usize| {
        let (root, _) = find(parent, pot, r, i);
        z[root] = true;
    };

    // relation v_i = w^s v_j
    let mut relate = |parent: &mut Vec<usize>,
                      pot: &mut Vec<u32>,
                      z: &mut Vec<bool>,
                      i: usize,
                      j: usize,
                      s: u32| {
        let (ri, pi) = find(parent, pot, r, i);
        let (rj, pj) = find(parent, pot, r, j);
        if ri == rj {
            // consistent iff pi = s + pj mod r; otherwise the class collapses
            if (pi % r) != ((s + pj) % r) {
                z[ri] = true;
            }
        } else {
            parent[ri] = rj;
            pot[ri] = ((s + pj) % r + r - pi) % r;
            if z[ri] {
                z[rj] = true;
            }
        }
    };

    for d in [x, y] {
        for &k in &d.zero_block {
            mark_zero(&mut parent, &mut pot, &mut is_zero, k);
        }
        for b in &d.blocks {
            let k0 = b[0];
            for &k in &b[1..] {
                // v_k = w^{phi_k - phi_k0} v_k0
                let s = (d.phases[k] + r - d.phases[k0]) % r;
                relate(&mut parent, &mut pot, &mut is_zero, k, k0, s);
            }
        }
    }

    let mut zero = Vec::new();
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    let mut phases = vec![0u32; n];
    for i in 0..n {
        let (root, p) = find(&mut parent, &mut pot, r, i);
        if is_zero[root] {
            zero.push(i);
        } else {
            groups.entry(root).or_default().push(i);
            phases[i] = p;
        }
    }
    let blocks: Vec<Vec<usize>> = groups.into_values().collect();
    SubspaceDescriptor::new(n, r, zero, blocks, phases)
}

/// The fixed subspace of a group element, computed per permutation cycle:
/// a cycle survives iff its phase sum is 0 mod r, and contributes the
/// partial phase sums as relative phases; otherwise its coordinates are
/// forced to zero.
pub fn fixed_space(spec: &GroupSpec, g: &MonomialElement) -> SubspaceDescriptor {
    let r = spec.r;
    let mut zero = Vec::new();
    let mut blocks = Vec::new();
    let mut phases = vec![0u32; spec.n];
    for cyc in g.cycles() {
        let total: u32 = cyc.iter().map(|&i| g.phases[i]).fold(0, |a, b| (a + b) % r);
        if total % r != 0 {
            zero.extend_from_slice(&cyc);
            continue;
        }
        let mut acc = 0u32;
        for &i in &cyc {
            phases[i] = acc;
            acc = (acc + g.phases[i]) % r;
        }
        blocks.push(cyc);
    }
    SubspaceDescriptor::new(spec.n, r, zero, blocks, phases)
}

/// Orbit representative (lambda, u) of X under G(r,p,n), together with a
/// witness g in the group with g(X_{lambda,u}) = X.
pub fn orbit_representative(
    spec: &GroupSpec,
    x: &SubspaceDescriptor,
) -> Result<(PartitionIndex, MonomialElement)> {
    if !in_lattice(spec, x) {
        return Err(Error::NotInLattice(format!(
            "zero block of size {} is not admissible for (r,p) = ({},{})",
            x.zero_block.len(),
            spec.r,
            spec.p
        )));
    }
    let lambda = x.block_sizes();
    let k: u32 = lambda.iter().sum();
    let delta = delta_lambda_p(spec, &lambda);
    let phase_sum: u64 = x.phases.iter().map(|&a| a as u64).sum();
    let u = if (k as usize) < spec.n {
        0
    } else {
        (phase_sum % delta as u64) as u32
    };
    let idx = PartitionIndex::new(lambda.clone(), u);
    let rep = standard_subspace(spec, &idx)?;

    // sigma maps the i-th standard block onto the i-th block of X, and the
    // standard zero block onto the zero block of X.
    let mut perm = vec![0usize; spec.n];
    let mut source_block = vec![usize::MAX; spec.n];
    let mut cursor = 0usize;
    for (bi, part) in lambda.iter().enumerate() {
        for j in 0..*part as usize {
            perm[cursor + j] = x.blocks[bi][j];
            source_block[cursor + j] = bi;
        }
        cursor += *part as usize;
    }
    for (j, &z) in x.zero_block.iter().enumerate() {
        perm[cursor + j] = z;
    }

    // per-block phase offsets: for k = n solve sum n_i v_i = u - phase_sum mod p
    let mut offsets = vec![0i64; lambda.len()];
    if k as usize == spec.n && spec.p > 1 {
        let d = (u as i64 - phase_sum as i64).rem_euclid(spec.p as i64);
        offsets = solve_block_congruence(&lambda, d, spec.p as i64);
    }

    let mut phases = vec![0u32; spec.n];
    let r = spec.r as i64;
    for j in 0..spec.n {
        if source_block[j] != usize::MAX {
            let off = offsets[source_block[j]];
            phases[j] = ((x.phases[perm[j]] as i64 + off).rem_euclid(r)) as u32;
        }
    }
    // balance the phase sum on a zero coordinate when k < n
    if (k as usize) < spec.n {
        let total: u64 = phases.iter().map(|&a| a as u64).sum();
        let fix = ((spec.p as u64 - total % spec.p as u64) % spec.p as u64) as u32;
        phases[cursor] = (phases[cursor] + fix) % spec.r;
    }
    // fold in t_0^{-u}
    if spec.n > 0 {
        phases[0] = ((phases[0] as i64 - u as i64).rem_euclid(r)) as u32;
    }
    let witness = MonomialElement { perm, phases };
    debug_assert!(witness.is_member(spec));
    assert_eq!(
        act(&witness, &rep),
        *x,
        "orbit witness must map the representative onto the input"
    );
    Ok((idx, witness))
}

/// Solve sum_i lambda_i v_i = d (mod p); solvable because gcd(p, lambda) | d.
fn solve_block_congruence(lambda: &[u32], d: i64, p: i64) -> Vec<i64> {
    // bezout chain for gcd(lambda_1, ..., lambda_a)
    let mut g = lambda[0] as i64;
    let mut coef = vec![0i64; lambda.len()];
    coef[0] = 1;
    for i in 1..lambda.len() {
        let (gg, s, t) = egcd(g, lambda[i] as i64);
        for c in coef.iter_mut().take(i) {
            *c *= s;
        }
        coef[i] = t;
        g = gg;
    }
    // solve g*z = d (mod p)
    let (gp, s, _) = egcd(g, p);
    debug_assert_eq!(d.rem_euclid(gp.abs()), 0, "congruence must be solvable");
    let z = ((d / gp) * s).rem_euclid(p);
    coef.iter().map(|&c| (c * z).rem_euclid(p)).collect()
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// All orbit representatives (lambda, u) for the action of G(r,p,n) on its
/// lattice, in deterministic order: k ascending, partitions in descending
/// lexicographic order, u ascending.
pub fn orbit_representatives(spec: &GroupSpec) -> Vec<PartitionIndex> {
    let mut out = Vec::new();
    for k in 0..=spec.n as u32 {
        if spec.r == 1 && (k as usize) < spec.n {
            continue;
        }
        if spec.r > 1 && spec.p == spec.r && spec.n - k as usize == 1 {
            continue;
        }
        for lambda in partitions(k) {
            let umax = if k as usize == spec.n {
                delta_lambda_p(spec, &lambda)
            } else {
                1
            };
            for u in 0..umax {
                out.push(PartitionIndex::new(lambda.clone(), u));
            }
        }
    }
    out
}

/// Partitions of k in descending lexicographic order; the empty partition
/// for k = 0.
pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = remaining.min(max);
        for part in (1..=top).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k.max(1), &mut Vec::new(), &mut out);
    out
}

/// A hyperplane of the restricted arrangement, as a linear form on the
/// block coordinates y_1..y_a of X: either y_b = 0 or y_a = w^shift y_b.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RestrictedHyperplane {
    Coordinate(usize),
    Relation { a: usize, b: usize, shift: u32 },
}

/// The distinct intersections H & X over hyperplanes H of the arrangement
/// of G(r,p,n) with X not contained in H.
pub fn restricted_arrangement(
    spec: &GroupSpec,
    x: &SubspaceDescriptor,
) -> Vec<RestrictedHyperplane> {
    let r = spec.r;
    let mut block_of = vec![usize::MAX; spec.n];
    for (bi, b) in x.blocks.iter().enumerate() {
        for &k in b {
            block_of[k] = bi;
        }
    }
    let is_zero = |k: usize| block_of[k] == usize::MAX;
    let mut set: BTreeSet<RestrictedHyperplane> = BTreeSet::new();

    // coordinate hyperplanes H_i exist only when p < r
    if spec.p < spec.r {
        for i in 0..spec.n {
            if !is_zero(i) {
                set.insert(RestrictedHyperplane::Coordinate(block_of[i]));
            }
        }
    }
    // H_{ij}(w^s): v_i = w^s v_j
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            for s in 0..r {
                match (is_zero(i), is_zero(j)) {
                    (true, true) => {}
                    (true, false) => {
                        set.insert(RestrictedHyperplane::Coordinate(block_of[j]));
                    }
                    (false, true) => {
                        set.insert(RestrictedHyperplane::Coordinate(block_of[i]));
                    }
                    (false, false) => {
                        let (bi, bj) = (block_of[i], block_of[j]);
                        if bi == bj {
                            // contained iff the phase relation matches
                            if (x.phases[i] + r - x.phases[j]) % r != s {
                                set.insert(RestrictedHyperplane::Coordinate(bi));
                            }
                        } else {
                            // y_bi = w^{s + phi_j - phi_i} y_bj
                            let shift =
                                ((s + x.phases[j]) % r + r - x.phases[i] % r) % r;
                            let h = if bi < bj {
                                RestrictedHyperplane::Relation { a: bi, b: bj, shift }
                            } else {
                                RestrictedHyperplane::Relation {
                                    a: bj,
                                    b: bi,
                                    shift: (r - shift) % r,
                                }
                            };
                            set.insert(h);
                        }
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Closed-form size of the restricted arrangement on X_{lambda,u}:
/// a + r*a(a-1)/2 hyperplanes when p < r or k < n, and psi_1 + r*a(a-1)/2
/// when p = r and k = n, where psi_1 counts the parts greater than one.
/// For r = 1 there are no coordinate restrictions at all.
pub fn restricted_count_formula(spec: &GroupSpec, lambda: &[u32]) -> u64 {
    let a = lambda.len() as u64;
    let k: u32 = lambda.iter().sum();
    let pairs = spec.r as u64 * a * a.saturating_sub(1) / 2;
    let coords = if spec.p < spec.r || (k as usize) < spec.n {
        a
    } else if spec.r > 1 {
        lambda.iter().filter(|&&x| x > 1).count() as u64
    } else {
        0
    };
    coords + pairs
}

/// Every descriptor the structure theorem predicts for L(A(G(r,p,n))):
/// all t(X_N), with |N_0| != 1 excluded when p = r > 1 and N_0 empty when
/// r = 1.  Intended for oracle sweeps on small groups.
pub fn predicted_lattice(spec: &GroupSpec) -> Vec<SubspaceDescriptor> {
    let n = spec.n;
    let mut out = BTreeSet::new();
    // enumerate set partitions of [n] with a distinguished (possibly empty) zero set
    let mut assign = vec![0usize; n]; // 0 = zero block, b >= 1 = block id
    loop {
        // block ids must appear in first-use order to cut duplicates
        let mut max_seen = 0usize;
        let mut ok = true;
        for &a in &assign {
            if a > max_seen + 1 {
                ok = false;
                break;
            }
            max_seen = max_seen.max(a);
        }
        if ok {
            let zero: Vec<usize> = (0..n).filter(|&i| assign[i] == 0).collect();
            let nblocks = max_seen;
            let admissible = if spec.r == 1 {
                zero.is_empty()
            } else if spec.p == spec.r {
                zero.len() != 1
            } else {
                true
            };
            if admissible {
                let blocks: Vec<Vec<usize>> = (1..=nblocks)
                    .map(|b| (0..n).filter(|&i| assign[i] == b).collect())
                    .collect();
                // free phases on non-minimal coordinates of each block
                let free: Vec<usize> = blocks.iter().flat_map(|b| b[1..].to_vec()).collect();
                let mut digits = vec![0u32; free.len()];
                loop {
                    let mut phases = vec![0u32; n];
                    for (d, &c) in digits.iter().zip(&free) {
                        phases[c] = *d;
                    }
                    out.insert(SubspaceDescriptor::new(
                        n,
                        spec.r,
                        zero.clone(),
                        blocks.clone(),
                        phases,
                    ));
                    let mut i = 0;
                    loop {
                        if i == digits.len() {
                            break;
                        }
                        digits[i] += 1;
                        if digits[i] < spec.r {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                    if i == digits.len() {
                        break;
                    }
                }
            }
        }
        // odometer over assignments with values in 0..=n
        let mut i = 0;
        loop {
            if i == n {
                return out.into_iter().collect();
            }
            assign[i] += 1;
            if assign[i] <= n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: u32, p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(r, p, n).unwrap()
    }

    #[test]
    fn standard_subspace_examples() {
        let s = spec(2, 1, 4);
        let x = standard_subspace(&s, &PartitionIndex::new(vec![2, 2], 0)).unwrap();
        assert_eq!(x.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert!(x.zero_block.is_empty());
        assert!(x.phases.iter().all(|&p| p == 0));

        // |N_0| = 1 is rejected when p = r
        let s33 = spec(3, 3, 3);
        assert!(standard_subspace(&s33, &PartitionIndex::new(vec![1, 1], 0)).is_err());
        // |N_0| = 2 is fine
        assert!(standard_subspace(&s33, &PartitionIndex::new(vec![1], 0)).is_ok());

        // lambda = (1^n) is the full space
        let v = standard_subspace(&s, &PartitionIndex::new(vec![1; 4], 0)).unwrap();
        assert_eq!(v, SubspaceDescriptor::full(4, 2));
    }

    #[test]
    fn act_examples() {
        let s = spec(2, 1, 4);
        let x = standard_subspace(&s, &PartitionIndex::new(vec![2, 2], 0)).unwrap();
        assert_eq!(act(&s.identity(), &x), x);

        // sigma = (1 3) sends blocks {1,2},{3,4} to {2,3},{1,4}
        let mut g = s.identity();
        g.perm.swap(0, 2);
        let y = act(&g, &x);
        assert_eq!(y.blocks, vec![vec![0, 3], vec![1, 2]]);

        // diag(w,1,1,1) in G(4,1,4) shifts the relative phase by -1 mod 4
        let s4 = spec(4, 1, 4);
        let x4 = standard_subspace(&s4, &PartitionIndex::new(vec![2, 2], 0)).unwrap();
        let mut d = s4.identity();
        d.phases[0] = 1;
        let y4 = act(&d, &x4);
        assert_eq!(y4.blocks, x4.blocks);
        assert_eq!(y4.phases[1], 3);
    }

    #[test]
    fn intersect_examples() {
        let v = SubspaceDescriptor::full(2, 2);
        let h0 = SubspaceDescriptor::new(2, 2, vec![], vec![vec![0, 1]], vec![0, 0]);
        let h1 = SubspaceDescriptor::new(2, 2, vec![], vec![vec![0, 1]], vec![0, 1]);
        assert_eq!(intersect(&h0, &v), h0);
        // two distinct phase constraints on the same pair collapse it to zero
        assert_eq!(intersect(&h0, &h1), SubspaceDescriptor::origin(2, 2));

        // chain of equalities in rank 3
        let s3 = spec(2, 1, 3);
        let h01 = fixed_space(
            &s3,
            &MonomialElement {
                perm: vec![1, 0, 2],
                phases: vec![0, 0, 0],
            },
        );
        let h12 = fixed_space(
            &s3,
            &MonomialElement {
                perm: vec![0, 2, 1],
                phases: vec![0, 0, 0],
            },
        );
        let meet = intersect(&h01, &h12);
        assert_eq!(meet.blocks, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn fixed_space_examples() {
        let s = spec(2, 1, 2);
        assert_eq!(fixed_space(&s, &s.identity()), SubspaceDescriptor::full(2, 2));
        // r_12(1) fixes the hyperplane v_1 = v_2
        let refl = MonomialElement {
            perm: vec![1, 0],
            phases: vec![0, 0],
        };
        let h = fixed_space(&s, &refl);
        assert_eq!(h.blocks, vec![vec![0, 1]]);
        assert_eq!(h.dim(), 1);

        // diag(w, 1, 1) in G(3,1,3) fixes H_1
        let s3 = spec(3, 1, 3);
        let mut d = s3.identity();
        d.phases[0] = 1;
        let h1 = fixed_space(&s3, &d);
        assert_eq!(h1.zero_block, vec![0]);
        assert_eq!(h1.dim(), 2);
    }

    #[test]
    fn orbit_representative_examples() {
        // a representative is its own representative
        let s = spec(4, 2, 4);
        for idx in orbit_representatives(&s) {
            let x = standard_subspace(&s, &idx).unwrap();
            let (back, witness) = orbit_representative(&s, &x).unwrap();
            assert_eq!(back, idx);
            assert!(witness.is_member(&s));
        }

        // block {1,2} with phase(2) = 1 in G(4,2,2): u = 1
        let s42 = spec(4, 2, 2);
        let x = SubspaceDescriptor::new(2, 4, vec![], vec![vec![0, 1]], vec![0, 1]);
        let (idx, _) = orbit_representative(&s42, &x).unwrap();
        assert_eq!(idx.lambda, vec![2]);
        assert_eq!(idx.u, 1);

        // any descriptor with k < n has u = 0
        let s31 = spec(3, 1, 3);
        let x = SubspaceDescriptor::new(3, 3, vec![2], vec![vec![0, 1]], vec![0, 2, 0]);
        let (idx, _) = orbit_representative(&s31, &x).unwrap();
        assert_eq!(idx.u, 0);
    }

    #[test]
    fn restricted_counts() {
        // (3,1,3), lambda = (2,1): 2 + 3 = 5
        let s = spec(3, 1, 3);
        assert_eq!(restricted_count_formula(&s, &[2, 1]), 5);
        let x = standard_subspace(&s, &PartitionIndex::new(vec![2, 1], 0)).unwrap();
        assert_eq!(restricted_arrangement(&s, &x).len(), 5);

        // (2,2,6), lambda = (3,3): psi_1 = 2, total 4
        let s26 = spec(2, 2, 6);
        assert_eq!(restricted_count_formula(&s26, &[3, 3]), 4);
        let x = standard_subspace(&s26, &PartitionIndex::new(vec![3, 3], 0)).unwrap();
        assert_eq!(restricted_arrangement(&s26, &x).len(), 4);

        // lambda = (1^a) with p = r, k = n: no coordinate hyperplanes
        let s22 = spec(2, 2, 2);
        assert_eq!(restricted_count_formula(&s22, &[1, 1]), 2);

        // restriction to V is the whole arrangement: 4 coordinate + 12 pairwise
        let s214 = spec(2, 1, 4);
        let v = SubspaceDescriptor::full(4, 2);
        assert_eq!(restricted_arrangement(&s214, &v).len(), 16);
        assert_eq!(restricted_count_formula(&s214, &[1, 1, 1, 1]), 16);
    }

    #[test]
    fn partitions_order() {
        assert_eq!(
            partitions(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn rep_enumeration_respects_lattice() {
        // r = 1: only k = n survives
        let s = spec(1, 1, 3);
        let reps = orbit_representatives(&s);
        assert!(reps.iter().all(|idx| idx.k() == 3));
        assert_eq!(reps.len(), 3); // partitions of 3

        // p = r: n - k = 1 excluded
        let s33 = spec(3, 3, 3);
        assert!(orbit_representatives(&s33)
            .iter()
            .all(|idx| idx.k() != 2));
    }
}
