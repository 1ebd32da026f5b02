//! Finite posets: validation, up-sets, disjoint unions, isomorphism, and
//! enumeration up to isomorphism.
//!
//! Element sets are `u64` bitmasks, so a poset has at most 64 elements.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::budget::Limits;
use crate::error::{Error, Resource, Result};

/// A set of poset elements, bit `i` standing for element `i`.
pub type Mask = u64;

pub const MAX_POSET: usize = 64;

/// The first axiom a candidate relation breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetViolation {
    NotSquare,
    TooLarge(usize),
    Reflexivity(usize),
    Antisymmetry(usize, usize),
    Transitivity(usize, usize, usize),
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetViolation::NotSquare => f.write_str("relation table is not square"),
            PosetViolation::TooLarge(n) => write!(f, "{n} elements exceed the limit of {MAX_POSET}"),
            PosetViolation::Reflexivity(i) => write!(f, "reflexivity fails at {i}"),
            PosetViolation::Antisymmetry(i, j) => write!(f, "antisymmetry fails at ({i}, {j})"),
            PosetViolation::Transitivity(i, j, k) => {
                write!(f, "transitivity fails at ({i}, {j}, {k})")
            }
        }
    }
}

/// Checks a raw relation table, `leq[i][j]` meaning `i <= j`.
pub fn validate_poset<R: AsRef<[bool]>>(leq: &[R]) -> core::result::Result<(), PosetViolation> {
    let n = leq.len();
    if leq.iter().any(|row| row.as_ref().len() != n) {
        return Err(PosetViolation::NotSquare);
    }
    let at = |i: usize, j: usize| leq[i].as_ref()[j];
    for i in 0..n {
        if !at(i, i) {
            return Err(PosetViolation::Reflexivity(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if at(i, j) && at(j, i) {
                return Err(PosetViolation::Antisymmetry(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !at(i, j) {
                continue;
            }
            for k in 0..n {
                if at(j, k) && !at(i, k) {
                    return Err(PosetViolation::Transitivity(i, j, k));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    // up[i] = { j : i <= j }, down[i] = { j : j <= i }
    up: Vec<Mask>,
    down: Vec<Mask>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset").field("size", &self.size).field("covers", &self.covers()).finish()
    }
}

#[inline]
fn bit(i: usize) -> Mask {
    1u64 << i
}

/// The set `{0, .., n-1}`.
#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

/// Element indices of a mask, ascending.
pub fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Canonical up-set order: by cardinality, then lexicographically by the
/// ascending list of members.
pub fn canonical_set_cmp(a: Mask, b: Mask) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| members(a).cmp(members(b)))
}

impl Poset {
    pub fn new<R: AsRef<[bool]>>(leq: &[R]) -> Result<Self> {
        validate_poset(leq)?;
        let n = leq.len();
        if n > MAX_POSET {
            return Err(PosetViolation::TooLarge(n).into());
        }
        let mut up = vec![0; n];
        let mut down = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if leq[i].as_ref()[j] {
                    up[i] |= bit(j);
                    down[j] |= bit(i);
                }
            }
        }
        Ok(Poset { size: n, up, down })
    }

    /// Builds the order generated by the given strict pairs `(lo, hi)`.
    pub fn from_covers(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if size > MAX_POSET {
            return Err(PosetViolation::TooLarge(size).into());
        }
        let mut leq = vec![vec![false; size]; size];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::IndexOutOfRange { index: a.max(b), size });
            }
            leq[a][b] = true;
        }
        // Warshall
        for k in 0..size {
            for i in 0..size {
                if leq[i][k] {
                    for j in 0..size {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(&leq)
    }

    pub fn empty() -> Self {
        Poset { size: 0, up: Vec::new(), down: Vec::new() }
    }

    pub fn point() -> Self {
        Poset::chain(1)
    }

    /// `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        assert!(n <= MAX_POSET);
        let up = (0..n).map(|i| full_mask(n) & !(bit(i) - 1)).collect();
        let down = (0..n).map(|i| full_mask(i + 1)).collect();
        Poset { size: n, up, down }
    }

    pub fn antichain(n: usize) -> Self {
        assert!(n <= MAX_POSET);
        let up: Vec<Mask> = (0..n).map(bit).collect();
        Poset { size: n, down: up.clone(), up }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] & bit(j) != 0
    }

    pub fn up_of(&self, i: usize) -> Mask {
        self.up[i]
    }

    pub fn down_of(&self, i: usize) -> Mask {
        self.down[i]
    }

    pub fn full(&self) -> Mask {
        full_mask(self.size)
    }

    pub fn table(&self) -> Vec<Vec<bool>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.leq(i, j)).collect()).collect()
    }

    fn check_mask(&self, s: Mask) -> Result<()> {
        let extra = s & !self.full();
        if extra != 0 {
            return Err(Error::IndexOutOfRange { index: extra.trailing_zeros() as usize, size: self.size });
        }
        Ok(())
    }

    /// `{ y : x <= y for some x in s }`.
    pub fn up_closure(&self, s: Mask) -> Result<Mask> {
        self.check_mask(s)?;
        Ok(members(s).fold(0, |acc, i| acc | self.up[i]))
    }

    /// `{ y : y <= x for some x in s }`.
    pub fn down_closure(&self, s: Mask) -> Result<Mask> {
        self.check_mask(s)?;
        Ok(members(s).fold(0, |acc, i| acc | self.down[i]))
    }

    pub fn is_upset(&self, s: Mask) -> bool {
        self.up_closure(s) == Ok(s)
    }

    /// All up-sets in canonical order.
    pub fn upsets(&self) -> Vec<Mask> {
        // Each up-set is the up-closure of exactly one antichain (its minimal
        // elements).
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Mask, Mask)> = vec![(0, 0, 0)];
        while let Some((next, chosen, comparable)) = stack.pop() {
            out.push(members(chosen).fold(0, |acc, i| acc | self.up[i]));
            for i in next..self.size {
                if comparable & bit(i) == 0 {
                    stack.push((i + 1, chosen | bit(i), comparable | self.up[i] | self.down[i]));
                }
            }
        }
        out.sort_by(|a, b| canonical_set_cmp(*a, *b));
        out
    }

    /// Covering pairs `(lo, hi)`: the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in members(self.up[i] & !bit(i)) {
                let between = (self.up[i] & self.down[j]) & !(bit(i) | bit(j));
                if between == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of pairs `i < j` (strict) in the order.
    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(|m| m.count_ones() as usize - 1).sum()
    }

    /// The order-dual.
    pub fn reversed(&self) -> Poset {
        Poset { size: self.size, up: self.down.clone(), down: self.up.clone() }
    }

    pub fn is_antichain(&self) -> bool {
        self.comparable_pairs() == 0
    }

    /// Connected components of the comparability graph, each as a mask,
    /// ordered by least member.
    pub fn components(&self) -> Vec<Mask> {
        let mut seen: Mask = 0;
        let mut out = Vec::new();
        for i in 0..self.size {
            if seen & bit(i) != 0 {
                continue;
            }
            let mut comp = bit(i);
            loop {
                let grown = members(comp).fold(comp, |acc, j| acc | self.up[j] | self.down[j]);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }
}

/// `p` followed by `q`, with no order between the two parts.
pub fn disjoint_union(p: &Poset, q: &Poset) -> Result<Poset> {
    let n = p.size + q.size;
    if n > MAX_POSET {
        return Err(PosetViolation::TooLarge(n).into());
    }
    let shift = p.size;
    let mut up = p.up.clone();
    let mut down = p.down.clone();
    up.extend(q.up.iter().map(|m| m << shift));
    down.extend(q.down.iter().map(|m| m << shift));
    Ok(Poset { size: n, up, down })
}

/// An order isomorphism `p -> q` as an index map, the first one found when
/// assigning elements of `p` in ascending order to ascending candidates.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.size != q.size || p.comparable_pairs() != q.comparable_pairs() {
        return None;
    }
    let n = p.size;
    let sig = |x: &Poset, i: usize| (x.up[i].count_ones(), x.down[i].count_ones());
    let mut map = vec![usize::MAX; n];
    let mut used: Mask = 0;

    fn go(
        i: usize,
        p: &Poset,
        q: &Poset,
        map: &mut Vec<usize>,
        used: &mut Mask,
        sig: &dyn Fn(&Poset, usize) -> (u32, u32),
    ) -> bool {
        if i == p.size {
            return true;
        }
        for j in 0..q.size {
            if *used & bit(j) != 0 || sig(p, i) != sig(q, j) {
                continue;
            }
            let consistent =
                (0..i).all(|k| p.leq(i, k) == q.leq(j, map[k]) && p.leq(k, i) == q.leq(map[k], j));
            if !consistent {
                continue;
            }
            map[i] = j;
            *used |= bit(j);
            if go(i + 1, p, q, map, used, sig) {
                return true;
            }
            *used &= !bit(j);
        }
        false
    }

    if go(0, p, q, &mut map, &mut used, &sig) {
        Some(map)
    } else {
        None
    }
}

/// Lexicographic successor; `false` once `perm` was the last permutation.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

// Row-major relation table packed with cell (0,0) in the most significant
// used bit, so integer order is lexicographic table order.
fn pack(n: usize, leq: impl Fn(usize, usize) -> bool) -> u64 {
    let mut code = 0u64;
    for i in 0..n {
        for j in 0..n {
            code = (code << 1) | leq(i, j) as u64;
        }
    }
    code
}

fn unpack(n: usize, code: u64) -> Vec<Vec<bool>> {
    let cells = n * n;
    (0..n).map(|i| (0..n).map(|j| (code >> (cells - 1 - (i * n + j))) & 1 == 1).collect()).collect()
}

/// The lexicographically least relation table over all relabelings.
pub fn canonical_code(p: &Poset) -> u64 {
    let n = p.size;
    assert!(n <= 8, "canonical codes are packed into 64 bits");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        // new element a is old element perm[a]
        let code = pack(n, |a, b| p.leq(perm[a], perm[b]));
        best = best.min(code);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best
}

/// All `n`-element posets, one per isomorphism class, each labeled by its
/// canonical table and listed in ascending canonical order.
pub fn enumerate_posets(n: usize, limits: &Limits) -> Result<Vec<Poset>> {
    if n == 0 {
        return Err(Error::TooSmall { got: 0, min: 1 });
    }
    if n > limits.poset_max_n || n > 8 {
        return Err(Error::BudgetExceeded {
            resource: Resource::PosetEnumeration,
            limit: limits.poset_max_n.min(8) as u64,
        });
    }
    // Every poset has a linear extension, so it suffices to range over
    // strict relations contained in i < j.
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut codes = Vec::new();
    let mut up = vec![0 as Mask; n];
    for bits in 0u64..(1u64 << pairs.len()) {
        for (i, u) in up.iter_mut().enumerate() {
            *u = bit(i);
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits & bit(k) != 0 {
                up[i] |= bit(j);
            }
        }
        let transitive = (0..n).all(|i| members(up[i]).all(|j| up[j] & !up[i] == 0));
        if !transitive {
            continue;
        }
        let mut down = vec![0 as Mask; n];
        for i in 0..n {
            for j in members(up[i]) {
                down[j] |= bit(i);
            }
        }
        let p = Poset { size: n, up: up.clone(), down };
        codes.push(canonical_code(&p));
    }
    codes.sort_unstable();
    codes.dedup();
    codes.into_iter().map(|c| Poset::new(&unpack(n, c))).collect()
}
