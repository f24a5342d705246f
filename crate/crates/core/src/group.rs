//! The imprimitive unitary reflection groups G(r,p,n) as monomial matrices.
//!
//! An element is a pair (perm, phases): the matrix sends `e_i` to
//! `w^{phases[i]} e_{perm[i]}` where `w = exp(2*pi*i/r)`.  Phases are kept
//! as exponents of `w`, never as complex numbers, so all arithmetic is
//! exact.  Membership in G(r,p,n) means the phase sum is 0 mod p.

use crate::error::{Error, Result};

/// The parameter triple (r, p, n) with p | r, plus the derived q = r/p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupSpec {
    pub r: u32,
    pub p: u32,
    pub n: usize,
    pub q: u32,
}

impl GroupSpec {
    pub fn new(r: u32, p: u32, n: u32) -> Result<Self> {
        if r < 1 || p < 1 || n < 1 {
            return Err(Error::InvalidGroup {
                r,
                p,
                n,
                reason: "parameters must be positive".into(),
            });
        }
        if r % p != 0 {
            return Err(Error::InvalidGroup {
                r,
                p,
                n,
                reason: format!("{p} does not divide {r}"),
            });
        }
        Ok(GroupSpec {
            r,
            p,
            n: n as usize,
            q: r / p,
        })
    }

    /// |G(r,p,n)| = r^n n! / p, saturating on overflow.
    pub fn order(&self) -> u128 {
        let mut o: u128 = 1;
        for _ in 0..self.n {
            o = o.saturating_mul(self.r as u128);
        }
        for k in 2..=self.n as u128 {
            o = o.saturating_mul(k);
        }
        o / self.p as u128
    }

    /// Degrees {r, 2r, ..., (n-1)r, nr/p} as a sorted multiset.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = (1..self.n as u64)
            .map(|l| l * self.r as u64)
            .collect();
        d.push(self.n as u64 * self.q as u64);
        d.sort_unstable();
        d
    }

    /// Exponents {r-1, 2r-1, ..., (n-1)r-1, nr/p - 1} as a sorted multiset.
    pub fn exponents(&self) -> Vec<u64> {
        let mut e: Vec<u64> = self.degrees();
        for x in &mut e {
            *x -= 1;
        }
        e.sort_unstable();
        e
    }

    pub fn identity(&self) -> MonomialElement {
        MonomialElement::identity(self.n)
    }

    /// Number of reflections: r*n(n-1)/2 pairwise ones plus n(q-1) diagonal ones.
    pub fn reflection_count(&self) -> u64 {
        let n = self.n as u64;
        self.r as u64 * n * (n - 1) / 2 + n * (self.q as u64 - 1)
    }
}

/// A monomial matrix `p_sigma t`: `e_i -> w^{phases[i]} e_{perm[i]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MonomialElement {
    pub perm: Vec<usize>,
    pub phases: Vec<u32>,
}

impl MonomialElement {
    pub fn identity(n: usize) -> Self {
        MonomialElement {
            perm: (0..n).collect(),
            phases: vec![0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Matrix product self * other, phases mod r.
    pub fn compose(&self, other: &MonomialElement, r: u32) -> MonomialElement {
        let n = self.dim();
        debug_assert_eq!(n, other.dim());
        let mut perm = vec![0usize; n];
        let mut phases = vec![0u32; n];
        for i in 0..n {
            perm[i] = self.perm[other.perm[i]];
            phases[i] = (other.phases[i] + self.phases[other.perm[i]]) % r;
        }
        MonomialElement { perm, phases }
    }

    pub fn inverse(&self, r: u32) -> MonomialElement {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
        }
        let mut phases = vec![0u32; n];
        for i in 0..n {
            phases[i] = (r - self.phases[perm[i]]) % r;
        }
        MonomialElement { perm, phases }
    }

    /// Phase sum mod p; 0 means the element lies in G(r,p,n).
    pub fn is_member(&self, spec: &GroupSpec) -> bool {
        self.phases.iter().map(|&a| a as u64).sum::<u64>() % spec.p as u64 == 0
    }

    /// Cycles of the permutation, each starting at its minimal coordinate.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.perm[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.perm[j];
            }
            out.push(cyc);
        }
        out
    }

    /// dim Fix(g): one dimension per cycle whose phase sum is 0 mod r.
    pub fn fixed_dim(&self, r: u32) -> usize {
        self.cycles()
            .iter()
            .filter(|cyc| {
                cyc.iter().map(|&i| self.phases[i] as u64).sum::<u64>() % r as u64 == 0
            })
            .count()
    }

    /// Exact reflection test: fixed space has codimension one.
    pub fn is_reflection(&self, r: u32) -> bool {
        self.fixed_dim(r) == self.dim() - 1
    }
}

/// The reflections r_{ij}(w^s) for i < j and, when q > 1, the diagonal
/// reflections r_{ii}(zeta) with zeta in mu_q \ {1}.
pub fn reflections(spec: &GroupSpec) -> Vec<MonomialElement> {
    let n = spec.n;
    let r = spec.r;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for s in 0..r {
                let mut g = MonomialElement::identity(n);
                g.perm.swap(i, j);
                g.phases[j] = s;
                g.phases[i] = (r - s) % r;
                out.push(g);
            }
        }
    }
    for i in 0..n {
        for k in 1..spec.q {
            let mut g = MonomialElement::identity(n);
            g.phases[i] = k * spec.p;
            out.push(g);
        }
    }
    out
}

/// A small generating set, used for orbit walks.
pub fn generators(spec: &GroupSpec) -> Vec<MonomialElement> {
    let n = spec.n;
    let r = spec.r;
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut g = MonomialElement::identity(n);
        g.perm.swap(i, i + 1);
        gens.push(g);
    }
    if r > 1 && n >= 2 {
        // diag(w, w^-1, 1, ...) has phase sum 0
        let mut d = MonomialElement::identity(n);
        d.phases[0] = 1;
        d.phases[1] = r - 1;
        gens.push(d);
    }
    if spec.q > 1 {
        let mut t = MonomialElement::identity(n);
        t.phases[0] = spec.p;
        gens.push(t);
    }
    gens
}

/// Iterator over all of G(r,p,n): every permutation crossed with every
/// phase vector with sum 0 mod p.
pub struct Elements {
    spec: GroupSpec,
    perm: Option<Vec<usize>>,
    // digits[0..n-1] run over 0..r, digits[n-1] runs over 0..q
    digits: Vec<u32>,
    done_phases: bool,
}

impl Elements {
    fn new(spec: GroupSpec) -> Self {
        Elements {
            perm: Some((0..spec.n).collect()),
            digits: vec![0; spec.n],
            done_phases: false,
            spec,
        }
    }

    fn current_phases(&self) -> Vec<u32> {
        let n = self.spec.n;
        let r = self.spec.r;
        let p = self.spec.p;
        let mut phases: Vec<u32> = self.digits.clone();
        let head: u64 = phases[..n - 1].iter().map(|&a| a as u64).sum();
        let rem = (head % p as u64) as u32;
        // last coordinate: the q solutions of head + a = 0 mod p, offset by digit
        phases[n - 1] = ((p - rem) % p + self.digits[n - 1] * p) % r;
        phases
    }

    fn bump_phases(&mut self) {
        let n = self.spec.n;
        for i in 0..n {
            let limit = if i == n - 1 { self.spec.q } else { self.spec.r };
            self.digits[i] += 1;
            if self.digits[i] < limit {
                return;
            }
            self.digits[i] = 0;
        }
        self.done_phases = true;
    }
}

impl Iterator for Elements {
    type Item = MonomialElement;

    fn next(&mut self) -> Option<MonomialElement> {
        let perm = self.perm.as_ref()?.clone();
        let phases = self.current_phases();
        self.bump_phases();
        if self.done_phases {
            self.done_phases = false;
            self.digits.iter_mut().for_each(|d| *d = 0);
            self.perm = next_permutation(&perm);
        }
        Some(MonomialElement { perm, phases })
    }
}

fn next_permutation(perm: &[usize]) -> Option<Vec<usize>> {
    let mut p = perm.to_vec();
    let n = p.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    Some(p)
}

/// Default cap for exhaustive enumeration.
pub const DEFAULT_ENUM_BOUND: u128 = 1_000_000;

pub fn elements(spec: &GroupSpec) -> Elements {
    Elements::new(*spec)
}

/// All elements, refusing groups larger than `bound`.
pub fn elements_bounded(spec: &GroupSpec, bound: u128) -> Result<Vec<MonomialElement>> {
    let order = spec.order();
    if order > bound {
        return Err(Error::OrderBound { order, bound });
    }
    Ok(elements(spec).collect())
}

/// Shard `shard` of `nshards`, split by permutation index.  Shards are
/// disjoint, cover the group, and each is independently restartable.
pub fn elements_sharded(
    spec: &GroupSpec,
    shard: usize,
    nshards: usize,
) -> impl Iterator<Item = MonomialElement> + '_ {
    assert!(nshards > 0 && shard < nshards);
    let per_perm = (spec.order() / factorial(spec.n)) as usize;
    elements(spec)
        .enumerate()
        .filter(move |(i, _)| (i / per_perm) % nshards == shard)
        .map(|(_, g)| g)
}

fn factorial(n: usize) -> u128 {
    (2..=n as u128).product::<u128>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_validates() {
        let g = GroupSpec::new(2, 1, 2).unwrap();
        assert_eq!(g.q, 2);
        assert_eq!(g.order(), 8);
        let s3 = GroupSpec::new(1, 1, 3).unwrap();
        assert_eq!(s3.q, 1);
        assert_eq!(s3.order(), 6);
        assert!(GroupSpec::new(6, 4, 2).is_err());
        assert!(GroupSpec::new(0, 1, 1).is_err());
        assert!(GroupSpec::new(3, 1, 0).is_err());
    }

    #[test]
    fn order_equals_product_of_degrees() {
        for r in 1..=6u32 {
            for p in 1..=r {
                if r % p != 0 {
                    continue;
                }
                for n in 1..=5u32 {
                    let spec = GroupSpec::new(r, p, n).unwrap();
                    let prod: u128 = spec.degrees().iter().map(|&d| d as u128).product();
                    assert_eq!(spec.order(), prod, "({r},{p},{n})");
                }
            }
        }
    }

    #[test]
    fn named_exponents() {
        assert_eq!(GroupSpec::new(3, 3, 3).unwrap().exponents(), vec![2, 2, 5]);
        assert_eq!(GroupSpec::new(4, 2, 3).unwrap().exponents(), vec![3, 5, 7]);
        assert_eq!(GroupSpec::new(1, 1, 1).unwrap().exponents(), vec![0]);
    }

    #[test]
    fn enumeration_counts() {
        for (r, p, n) in [(2, 1, 2), (3, 3, 2), (1, 1, 2), (2, 2, 3), (4, 2, 2)] {
            let spec = GroupSpec::new(r, p, n).unwrap();
            let elems: Vec<_> = elements(&spec).collect();
            assert_eq!(elems.len() as u128, spec.order(), "({r},{p},{n})");
            // uniqueness and membership
            let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
            assert_eq!(set.len(), elems.len());
            assert!(elems.iter().all(|g| g.is_member(&spec)));
        }
    }

    #[test]
    fn sharding_partitions_the_group() {
        let spec = GroupSpec::new(3, 1, 3).unwrap();
        let mut all: Vec<_> = (0..4)
            .flat_map(|s| elements_sharded(&spec, s, 4).collect::<Vec<_>>())
            .collect();
        all.sort();
        let mut direct: Vec<_> = elements(&spec).collect();
        direct.sort();
        assert_eq!(all, direct);
    }

    #[test]
    fn reflection_counts_match_formula() {
        for (r, p, n, expect) in [(2, 2, 2, 2u64), (2, 1, 2, 4), (3, 1, 1, 2)] {
            let spec = GroupSpec::new(r, p, n).unwrap();
            let refs = reflections(&spec);
            assert_eq!(refs.len() as u64, expect);
            assert_eq!(spec.reflection_count(), expect);
            assert!(refs
                .iter()
                .all(|g| g.is_reflection(spec.r) && g.is_member(&spec)));
        }
    }

    #[test]
    fn closure_under_product() {
        let spec = GroupSpec::new(4, 2, 2).unwrap();
        let elems: Vec<_> = elements(&spec).collect();
        for g in elems.iter().take(8) {
            for h in elems.iter().take(8) {
                assert!(g.compose(h, spec.r).is_member(&spec));
            }
            assert_eq!(
                g.compose(&g.inverse(spec.r), spec.r),
                spec.identity()
            );
        }
    }

    #[test]
    fn generators_generate() {
        for (r, p, n) in [(2, 1, 2), (3, 3, 2), (4, 2, 2), (2, 2, 3), (1, 1, 3), (3, 1, 1)] {
            let spec = GroupSpec::new(r, p, n).unwrap();
            let gens = generators(&spec);
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![spec.identity()];
            seen.insert(spec.identity());
            while let Some(g) = queue.pop() {
                for s in &gens {
                    let h = g.compose(s, spec.r);
                    if seen.insert(h.clone()) {
                        queue.push(h);
                    }
                }
            }
            assert_eq!(seen.len() as u128, spec.order(), "({r},{p},{n})");
        }
    }
}
