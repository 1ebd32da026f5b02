//! Homomorphism search, subuniverses, congruences, quotients, subdirect
//! irreducibility, and membership in the quasivariety generated by a finite
//! algebra.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::algebra::{BiHeyting, BiHeytingAlgebra, Op};
use crate::budget::{Limits, Meter};
use crate::error::{Error, Resource, Result};

/// A map between carriers, `map[x]` being the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(map: Vec<usize>) -> Self {
        Morphism { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.map.iter().all(|y| seen.insert(*y))
    }

    /// Whether this map is a homomorphism `a -> b`.
    pub fn check<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(&self, a: &A, b: &B) -> bool {
        is_homomorphism(a, b, &self.map)
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }
}

/// Checks by definition that `map` preserves both constants and all four
/// operations.
pub fn is_homomorphism<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(a: &A, b: &B, map: &[usize]) -> bool {
    let n = a.size();
    if map.len() != n || map.iter().any(|&y| y >= b.size()) {
        return false;
    }
    if map[a.bot()] != b.bot() || map[a.top()] != b.top() {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| Op::ALL.iter().all(|&op| map[a.apply(op, x, y)] == b.apply(op, map[x], map[y])))
    })
}

const UNSET: usize = usize::MAX;

struct HomSearch<'a, A: ?Sized, B: ?Sized> {
    a: &'a A,
    b: &'a B,
    injective: bool,
    map: Vec<usize>,
    used: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
    meter: Meter,
    found: Vec<Morphism>,
    stop_after: Option<usize>,
}

impl<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized> HomSearch<'_, A, B> {
    // Assigns x -> v and everything it forces; false on conflict.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        self.queue.clear();
        self.queue.push((x, v));
        while let Some((x, v)) = self.queue.pop() {
            let cur = self.map[x];
            if cur != UNSET {
                if cur != v {
                    return false;
                }
                continue;
            }
            if self.injective && self.used[v] > 0 {
                return false;
            }
            self.map[x] = v;
            self.used[v] += 1;
            self.trail.push(x);
            for t in 0..self.trail.len() {
                let y = self.trail[t];
                let w = self.map[y];
                for op in Op::ALL {
                    self.queue.push((self.a.apply(op, x, y), self.b.apply(op, v, w)));
                    if !op.is_commutative() {
                        self.queue.push((self.a.apply(op, y, x), self.b.apply(op, w, v)));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.used[self.map[x]] -= 1;
            self.map[x] = UNSET;
        }
    }

    fn done(&self) -> bool {
        self.stop_after.is_some_and(|k| self.found.len() >= k)
    }

    fn run(&mut self, from: usize) -> Result<()> {
        self.meter.tick()?;
        let Some(x) = (from..self.map.len()).find(|&x| self.map[x] == UNSET) else {
            self.found.push(Morphism::new(self.map.clone()));
            return Ok(());
        };
        for v in 0..self.b.size() {
            let mark = self.trail.len();
            if self.assign(x, v) {
                self.run(x + 1)?;
            }
            self.undo(mark);
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

fn search<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(
    a: &A,
    b: &B,
    injective: bool,
    stop_after: Option<usize>,
    limits: &Limits,
) -> Result<Vec<Morphism>> {
    if injective && a.size() > b.size() {
        return Ok(Vec::new());
    }
    let mut s = HomSearch {
        a,
        b,
        injective,
        map: vec![UNSET; a.size()],
        used: vec![0; b.size()],
        trail: Vec::new(),
        queue: Vec::new(),
        meter: Meter::new(Resource::HomomorphismSearch, limits.search_nodes),
        found: Vec::new(),
        stop_after,
    };
    if s.assign(a.bot(), b.bot()) && s.assign(a.top(), b.top()) {
        s.run(0)?;
    }
    let mut found = s.found;
    found.sort();
    Ok(found)
}

/// All homomorphisms `a -> b` in lexicographic order of their map arrays.
pub fn homomorphisms<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(
    a: &A,
    b: &B,
    limits: &Limits,
) -> Result<Vec<Morphism>> {
    search(a, b, false, None, limits)
}

/// All injective homomorphisms `a -> b`.
pub fn embeddings<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(
    a: &A,
    b: &B,
    limits: &Limits,
) -> Result<Vec<Morphism>> {
    search(a, b, true, None, limits)
}

/// The lexicographically first isomorphism `a -> b`, if any.
pub fn is_isomorphic<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(
    a: &A,
    b: &B,
    limits: &Limits,
) -> Result<Option<Morphism>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    Ok(search(a, b, true, Some(1), limits)?.into_iter().next())
}

/// The smallest subuniverse containing `seed`, `bot` and `top`.
pub fn generated_subalgebra<A: BiHeyting + ?Sized>(a: &A, seed: &FixedBitSet) -> Result<FixedBitSet> {
    let n = a.size();
    if let Some(bad) = seed.ones().find(|&x| x >= n) {
        return Err(Error::IndexOutOfRange { index: bad, size: n });
    }
    let mut set = FixedBitSet::with_capacity(n);
    let mut elems = Vec::new();
    let add = |x: usize, set: &mut FixedBitSet, elems: &mut Vec<usize>| {
        if !set.put(x) {
            elems.push(x);
        }
    };
    add(a.bot(), &mut set, &mut elems);
    add(a.top(), &mut set, &mut elems);
    for x in seed.ones() {
        add(x, &mut set, &mut elems);
    }
    let mut k = 0;
    while k < elems.len() {
        let x = elems[k];
        for i in 0..=k {
            let y = elems[i];
            for op in Op::ALL {
                add(a.apply(op, x, y), &mut set, &mut elems);
                if !op.is_commutative() {
                    add(a.apply(op, y, x), &mut set, &mut elems);
                }
            }
        }
        k += 1;
    }
    Ok(set)
}

/// Canonical set order: by cardinality, then lexicographically by members.
pub fn canonical_bitset_cmp(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.ones().cmp(b.ones()))
}

/// All subuniverses of `a` in canonical order.
pub fn subalgebras<A: BiHeyting + ?Sized>(a: &A, limits: &Limits) -> Result<Vec<FixedBitSet>> {
    let n = a.size();
    let mut meter = Meter::new(Resource::Subalgebras, limits.subalgebras);
    let least = generated_subalgebra(a, &FixedBitSet::with_capacity(n))?;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(least.ones().collect());
    meter.tick()?;
    let mut frontier = vec![least];
    let mut all = frontier.clone();
    while let Some(s) = frontier.pop() {
        for x in 0..n {
            if s.contains(x) {
                continue;
            }
            let mut seed = s.clone();
            seed.insert(x);
            let t = generated_subalgebra(a, &seed)?;
            if seen.insert(t.ones().collect()) {
                meter.tick()?;
                frontier.push(t.clone());
                all.push(t);
            }
        }
    }
    all.sort_by(canonical_bitset_cmp);
    Ok(all)
}

/// An equivalence relation on a carrier, as block numbers. Blocks are
/// numbered in order of their least members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber: Vec<(usize, usize)> = Vec::new();
        let blocks = labels
            .iter()
            .map(|l| match renumber.iter().find(|(old, _)| old == l) {
                Some(&(_, new)) => new,
                None => {
                    let new = renumber.len();
                    renumber.push((*l, new));
                    new
                }
            })
            .collect();
        Congruence { blocks }
    }

    pub fn identity(n: usize) -> Self {
        Congruence { blocks: (0..n).collect() }
    }

    pub fn total(n: usize) -> Self {
        Congruence { blocks: vec![0; n] }
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.blocks.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Blocks as member lists, in block order.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Common refinement.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.blocks.len();
        let pairs: Vec<usize> = (0..n).map(|x| self.blocks[x] * n + other.blocks[x]).collect();
        Congruence::from_labels(&pairs)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.blocks.len());
        for c in [self, other] {
            let mut first = vec![UNSET; c.num_blocks()];
            for (x, &b) in c.blocks.iter().enumerate() {
                if first[b] == UNSET {
                    first[b] = x;
                } else {
                    uf.union(first[b], x);
                }
            }
        }
        uf.into_congruence()
    }

    /// Finer-or-equal.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.meet(other) == *self
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    // true if two classes merged
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

/// Whether `c` is an equivalence on `a`'s carrier compatible with every
/// operation in both argument positions.
pub fn is_congruence<A: BiHeyting + ?Sized>(a: &A, c: &Congruence) -> bool {
    let n = a.size();
    if c.len() != n {
        return false;
    }
    for x in 0..n {
        for y in x + 1..n {
            if !c.related(x, y) {
                continue;
            }
            for z in 0..n {
                for op in Op::ALL {
                    if !c.related(a.apply(op, x, z), a.apply(op, y, z))
                        || !c.related(a.apply(op, z, x), a.apply(op, z, y))
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The least congruence identifying every given pair.
pub fn congruence_generated<A: BiHeyting + ?Sized>(a: &A, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = a.size();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(Error::IndexOutOfRange { index: x.max(y), size: n });
    }
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    // Translating only the pairs that merge classes suffices: they span the
    // equivalence, and translations preserve chains.
    while let Some((x, y)) = work.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for z in 0..n {
            for op in Op::ALL {
                work.push((a.apply(op, x, z), a.apply(op, y, z)));
                if !op.is_commutative() {
                    work.push((a.apply(op, z, x), a.apply(op, z, y)));
                }
            }
        }
    }
    Ok(uf.into_congruence())
}

/// Principal congruences `Cg(x, y)` for all `x < y`, in pair order.
pub fn principal_congruences<A: BiHeyting + ?Sized>(a: &A) -> Vec<((usize, usize), Congruence)> {
    let n = a.size();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = congruence_generated(a, &[(x, y)]).expect("pair in range");
            out.push(((x, y), c));
        }
    }
    out
}

/// All congruences of `a`, as joins of principal ones. Ordered by
/// decreasing number of blocks (identity first), then by block labels.
pub fn congruences<A: BiHeyting + ?Sized>(a: &A, limits: &Limits) -> Result<Vec<Congruence>> {
    let mut meter = Meter::new(Resource::Congruences, limits.subalgebras);
    let principals: BTreeSet<Congruence> = principal_congruences(a).into_iter().map(|(_, c)| c).collect();
    let mut all: BTreeSet<Congruence> = BTreeSet::new();
    all.insert(Congruence::identity(a.size()));
    meter.tick()?;
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for p in &principals {
            let j = c.join(p);
            if all.insert(j.clone()) {
                meter.tick()?;
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Congruence> = all.into_iter().collect();
    out.sort_by(|x, y| y.num_blocks().cmp(&x.num_blocks()).then_with(|| x.cmp(y)));
    Ok(out)
}

/// `Some(monolith)` when `a` is subdirectly irreducible, `None` otherwise.
pub fn is_subdirectly_irreducible<A: BiHeyting + ?Sized>(a: &A) -> Result<Option<Congruence>> {
    if a.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let n = a.size();
    let monolith =
        principal_congruences(a).into_iter().fold(Congruence::total(n), |acc, (_, c)| acc.meet(&c));
    Ok((!monolith.is_identity()).then_some(monolith))
}

/// The algebra of blocks, block `k` represented by its least member.
pub fn quotient(a: &BiHeytingAlgebra, c: &Congruence) -> Result<BiHeytingAlgebra> {
    if c.len() != a.size() {
        return Err(Error::InvalidCongruence(format!(
            "partition covers {} elements, algebra has {}",
            c.len(),
            a.size()
        )));
    }
    if !is_congruence(a, c) {
        return Err(Error::InvalidCongruence("not compatible with the operations".into()));
    }
    let reps: Vec<usize> = c.block_lists().iter().map(|b| b[0]).collect();
    let blk = |x: usize| c.block_of(x);
    let labels = reps.iter().map(|&r| format!("[{}]", a.label(r))).collect();
    Ok(BiHeytingAlgebra::tabulate(
        reps.len(),
        blk(a.bot()),
        blk(a.top()),
        // [x] <= [y] iff x & y ~ x
        |p, q| c.related(a.meet(reps[p], reps[q]), reps[p]),
        |p, q| blk(a.meet(reps[p], reps[q])),
        |p, q| blk(a.join(reps[p], reps[q])),
        |p, q| blk(a.imp(reps[p], reps[q])),
        |p, q| blk(a.coimp(reps[p], reps[q])),
    )
    .with_labels(labels))
}

/// The quotient map `a -> a / c`.
pub fn natural_map(c: &Congruence) -> Morphism {
    Morphism::new(c.labels().to_vec())
}

/// Outcome of testing whether `b` lies in the quasivariety generated by `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerMembership {
    /// For each separated pair `x < y` (lexicographic), the first
    /// homomorphism `b -> f` with distinct images.
    pub certificate: Vec<((usize, usize), Morphism)>,
    /// The first pair no homomorphism separates.
    pub unseparated: Option<(usize, usize)>,
}

impl PowerMembership {
    pub fn holds(&self) -> bool {
        self.unseparated.is_none()
    }

    /// Coordinates of each element of `b` in `f^m`, `m` the certificate length.
    pub fn power_embedding(&self, b_size: usize) -> Vec<Vec<usize>> {
        (0..b_size).map(|x| self.certificate.iter().map(|(_, h)| h.apply(x)).collect()).collect()
    }
}

/// Decides whether `b` embeds in a finite power of `f` by looking for a
/// separating homomorphism for every pair of distinct elements.
pub fn embeds_in_power<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(
    b: &A,
    f: &B,
    limits: &Limits,
) -> Result<PowerMembership> {
    let homs = homomorphisms(b, f, limits)?;
    let n = b.size();
    let mut certificate = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            match homs.iter().find(|h| h.apply(x) != h.apply(y)) {
                Some(h) => certificate.push(((x, y), h.clone())),
                None => {
                    return Ok(PowerMembership { certificate, unseparated: Some((x, y)) });
                }
            }
        }
    }
    Ok(PowerMembership { certificate, unseparated: None })
}

/// Checks that `coords` (one row per element of `b`) is an injective map
/// into a power of `f` whose every coordinate is a homomorphism.
pub fn verify_power_embedding<A: BiHeyting + ?Sized, B: BiHeyting + ?Sized>(
    b: &A,
    f: &B,
    coords: &[Vec<usize>],
) -> bool {
    if coords.len() != b.size() {
        return false;
    }
    let distinct: BTreeSet<&Vec<usize>> = coords.iter().collect();
    if distinct.len() != coords.len() {
        return false;
    }
    let m = coords.first().map_or(0, |c| c.len());
    (0..m).all(|i| {
        let column: Vec<usize> = coords.iter().map(|c| c[i]).collect();
        is_homomorphism(b, f, &column)
    })
}
