//! Finite bi-Heyting algebras stored as full operation tables.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::budget::Limits;
use crate::error::{Error, Resource, Result};
use crate::order::validate_poset;

/// The four binary operations of the signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Meet,
    Join,
    Imp,
    Coimp,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Meet, Op::Join, Op::Imp, Op::Coimp];

    pub fn is_commutative(self) -> bool {
        matches!(self, Op::Meet | Op::Join)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Meet => "&",
            Op::Join => "|",
            Op::Imp => "->",
            Op::Coimp => "-<",
        }
    }
}

/// Read access to a finite bi-Heyting algebra with carrier `0..size()`.
pub trait BiHeyting {
    fn size(&self) -> usize;
    fn bot(&self) -> usize;
    fn top(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    /// Heyting implication: the largest `c` with `a & c <= b`.
    fn imp(&self, a: usize, b: usize) -> usize;
    /// Co-implication: the least `c` with `a <= b | c`.
    fn coimp(&self, a: usize, b: usize) -> usize;

    fn apply(&self, op: Op, a: usize, b: usize) -> usize {
        match op {
            Op::Meet => self.meet(a, b),
            Op::Join => self.join(a, b),
            Op::Imp => self.imp(a, b),
            Op::Coimp => self.coimp(a, b),
        }
    }

    /// Pseudo-complement `a -> 0`.
    fn neg(&self, a: usize) -> usize {
        self.imp(a, self.bot())
    }

    /// Co-negation `1 -< a`.
    fn coneg(&self, a: usize) -> usize {
        self.coimp(self.top(), a)
    }

    fn is_degenerate(&self) -> bool {
        self.size() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHeytingAlgebra {
    size: usize,
    leq: FixedBitSet,
    bot: usize,
    top: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
    imp: Vec<u32>,
    coimp: Vec<u32>,
    labels: Vec<String>,
}

impl BiHeyting for BiHeytingAlgebra {
    #[inline]
    fn size(&self) -> usize {
        self.size
    }
    #[inline]
    fn bot(&self) -> usize {
        self.bot
    }
    #[inline]
    fn top(&self) -> usize {
        self.top
    }
    #[inline]
    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a * self.size + b)
    }
    #[inline]
    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b] as usize
    }
    #[inline]
    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b] as usize
    }
    #[inline]
    fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size + b] as usize
    }
    #[inline]
    fn coimp(&self, a: usize, b: usize) -> usize {
        self.coimp[a * self.size + b] as usize
    }
}

fn chain_label(i: usize, n: usize) -> String {
    if i == 0 {
        "0".to_string()
    } else if i + 1 == n {
        "1".to_string()
    } else if i <= 26 {
        char::from(b'a' + (i - 1) as u8).to_string()
    } else {
        format!("m{i}")
    }
}

fn tuple_parts(label: &str) -> &str {
    label.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(label)
}

impl BiHeytingAlgebra {
    /// Builds the algebra of a finite lattice order, deriving meet, join,
    /// implication and co-implication. Fails unless the order is a bounded
    /// distributive lattice with the given bounds.
    pub fn from_lattice_order<R: AsRef<[bool]>>(leq: &[R], bot: usize, top: usize) -> Result<Self> {
        let n = leq.len();
        if n == 0 {
            return Err(Error::TooSmall { got: 0, min: 1 });
        }
        validate_poset(leq)?;
        if bot >= n || top >= n {
            return Err(Error::IndexOutOfRange { index: bot.max(top), size: n });
        }
        let le = |a: usize, b: usize| leq[a].as_ref()[b];
        if (0..n).any(|x| !le(bot, x) || !le(x, top)) {
            return Err(Error::BoundsMismatch);
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&c| le(c, g)))
                    .ok_or(Error::NotALattice { a, b })?;
                let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&l| upper.iter().all(|&c| le(l, c)))
                    .ok_or(Error::NotALattice { a, b })?;
                meet[a * n + b] = glb as u32;
                join[a * n + b] = lub as u32;
            }
        }
        let m = |a: usize, b: usize| meet[a * n + b] as usize;
        let j = |a: usize, b: usize| join[a * n + b] as usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                        return Err(Error::NotDistributive { a, b, c });
                    }
                }
            }
        }
        let mut imp = vec![0u32; n * n];
        let mut coimp = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let cands: Vec<usize> = (0..n).filter(|&c| le(m(a, c), b)).collect();
                let greatest = cands
                    .iter()
                    .copied()
                    .find(|&g| cands.iter().all(|&c| le(c, g)))
                    .ok_or(Error::ResidualMissing { a, b })?;
                imp[a * n + b] = greatest as u32;
                let cands: Vec<usize> = (0..n).filter(|&c| le(a, j(b, c))).collect();
                let least = cands
                    .iter()
                    .copied()
                    .find(|&l| cands.iter().all(|&c| le(l, c)))
                    .ok_or(Error::ResidualMissing { a, b })?;
                coimp[a * n + b] = least as u32;
            }
        }
        let mut bits = FixedBitSet::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                bits.set(a * n + b, le(a, b));
            }
        }
        let alg = BiHeytingAlgebra {
            size: n,
            leq: bits,
            bot,
            top,
            meet,
            join,
            imp,
            coimp,
            labels: (0..n).map(|i| i.to_string()).collect(),
        };
        if let Some((a, b, _)) = alg.residuation_failure() {
            return Err(Error::ResidualMissing { a, b });
        }
        Ok(alg)
    }

    /// The `n`-element chain, labeled `0 < a < b < .. < 1`.
    pub fn chain(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall { got: n, min: 2 });
        }
        let mut alg = BiHeytingAlgebra::tabulate(
            n,
            0,
            n - 1,
            |a, b| a <= b,
            |a, b| a.min(b),
            |a, b| a.max(b),
            |a, b| if a <= b { n - 1 } else { b },
            |a, b| if a <= b { 0 } else { a },
        );
        alg.labels = (0..n).map(|i| chain_label(i, n)).collect();
        Ok(alg)
    }

    /// The one-element algebra, where `0 = 1`.
    pub fn degenerate() -> Self {
        BiHeytingAlgebra::tabulate(1, 0, 0, |_, _| true, |_, _| 0, |_, _| 0, |_, _| 0, |_, _| 0)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn tabulate(
        n: usize,
        bot: usize,
        top: usize,
        le: impl Fn(usize, usize) -> bool,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
        imp: impl Fn(usize, usize) -> usize,
        coimp: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut bits = FixedBitSet::with_capacity(n * n);
        let table = |f: &dyn Fn(usize, usize) -> usize| {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(f(a, b) as u32);
                }
            }
            t
        };
        for a in 0..n {
            for b in 0..n {
                bits.set(a * n + b, le(a, b));
            }
        }
        BiHeytingAlgebra {
            size: n,
            leq: bits,
            bot,
            top,
            meet: table(&meet),
            join: table(&join),
            imp: table(&imp),
            coimp: table(&coimp),
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// Copies any bi-Heyting algebra into full tables.
    pub fn materialize<A: BiHeyting + ?Sized>(a: &A, limits: &Limits) -> Result<Self> {
        let n = a.size();
        if n as u64 > limits.materialize {
            return Err(Error::BudgetExceeded { resource: Resource::Materialize, limit: limits.materialize });
        }
        Ok(BiHeytingAlgebra::tabulate(
            n,
            a.bot(),
            a.top(),
            |x, y| a.leq(x, y),
            |x, y| a.meet(x, y),
            |x, y| a.join(x, y),
            |x, y| a.imp(x, y),
            |x, y| a.coimp(x, y),
        ))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
        self
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        (0..self.size).map(|a| (0..self.size).map(|b| self.leq(a, b)).collect()).collect()
    }

    /// True iff every element has a complement.
    pub fn is_boolean(&self) -> bool {
        (0..self.size).all(|x| self.join(x, self.neg(x)) == self.top)
    }

    /// True iff the order is total.
    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|a| (a..self.size).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// The first triple `(a, b, c)` breaking residuation or co-residuation:
    /// `a & c <= b` iff `c <= a -> b`, and `a <= b | c` iff `a -< b <= c`.
    pub fn residuation_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let i = self.imp(a, b);
                let ci = self.coimp(a, b);
                for c in 0..n {
                    if self.leq(self.meet(a, c), b) != self.leq(c, i) {
                        return Some((a, b, c));
                    }
                    if self.leq(a, self.join(b, c)) != self.leq(ci, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Re-checks every structural invariant: the order is a bounded
    /// distributive lattice whose meet and join are the stored tables, and the
    /// implication tables are residuals.
    pub fn verify(&self) -> Result<()> {
        let n = self.size;
        validate_poset(&self.leq_table())?;
        for x in 0..n {
            if !self.leq(self.bot, x) || !self.leq(x, self.top) {
                return Err(Error::BoundsMismatch);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                let glb = self.leq(m, a)
                    && self.leq(m, b)
                    && (0..n).all(|c| !(self.leq(c, a) && self.leq(c, b)) || self.leq(c, m));
                let lub = self.leq(a, j)
                    && self.leq(b, j)
                    && (0..n).all(|c| !(self.leq(a, c) && self.leq(b, c)) || self.leq(j, c));
                if !glb || !lub {
                    return Err(Error::NotALattice { a, b });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Err(Error::NotDistributive { a, b, c });
                    }
                }
            }
        }
        if let Some((a, b, _)) = self.residuation_failure() {
            return Err(Error::ResidualMissing { a, b });
        }
        Ok(())
    }

    /// The algebra on a closed subset, elements listed in ascending order.
    /// Returns the inclusion map alongside.
    pub fn subalgebra(&self, set: &FixedBitSet) -> Result<(BiHeytingAlgebra, Vec<usize>)> {
        let elems: Vec<usize> = set.ones().collect();
        if elems.iter().any(|&e| e >= self.size) {
            return Err(Error::IndexOutOfRange { index: *elems.last().unwrap(), size: self.size });
        }
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let closed = set.contains(self.bot)
            && set.contains(self.top)
            && elems.iter().all(|&a| {
                elems.iter().all(|&b| Op::ALL.iter().all(|&op| set.contains(self.apply(op, a, b))))
            });
        if !closed {
            return Err(Error::VerificationFailed("subset is not a subuniverse".into()));
        }
        let k = elems.len();
        let sub = BiHeytingAlgebra::tabulate(
            k,
            pos[self.bot],
            pos[self.top],
            |a, b| self.leq(elems[a], elems[b]),
            |a, b| pos[self.meet(elems[a], elems[b])],
            |a, b| pos[self.join(elems[a], elems[b])],
            |a, b| pos[self.imp(elems[a], elems[b])],
            |a, b| pos[self.coimp(elems[a], elems[b])],
        )
        .with_labels(elems.iter().map(|&e| self.labels[e].clone()).collect());
        Ok((sub, elems))
    }
}

/// Cartesian product; the pair `(i, j)` has index `i * |b| + j`.
pub fn product(a: &BiHeytingAlgebra, b: &BiHeytingAlgebra) -> BiHeytingAlgebra {
    let nb = b.size;
    let split = |x: usize| (x / nb, x % nb);
    let glue = |(i, j): (usize, usize)| i * nb + j;
    let lift = |f: fn(&BiHeytingAlgebra, usize, usize) -> usize| {
        move |x: usize, y: usize| {
            let (xa, xb) = split(x);
            let (ya, yb) = split(y);
            glue((f(a, xa, ya), f(b, xb, yb)))
        }
    };
    let labels = (0..a.size * nb)
        .map(|x| {
            let (i, j) = split(x);
            format!("({},{})", tuple_parts(&a.labels[i]), tuple_parts(&b.labels[j]))
        })
        .collect();
    BiHeytingAlgebra::tabulate(
        a.size * nb,
        glue((a.bot, b.bot)),
        glue((a.top, b.top)),
        |x, y| {
            let (xa, xb) = split(x);
            let (ya, yb) = split(y);
            a.leq(xa, ya) && b.leq(xb, yb)
        },
        lift(|m, p, q| m.meet(p, q)),
        lift(|m, p, q| m.join(p, q)),
        lift(|m, p, q| m.imp(p, q)),
        lift(|m, p, q| m.coimp(p, q)),
    )
    .with_labels(labels)
}

/// `a^m` as an iterated product, or the degenerate algebra when `m = 0`.
pub fn power(a: &BiHeytingAlgebra, m: usize) -> BiHeytingAlgebra {
    match m {
        0 => BiHeytingAlgebra::degenerate(),
        _ => (1..m).fold(a.clone(), |acc, _| product(&acc, a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_table(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()
    }

    #[test]
    fn three_chain_residuals() {
        // brute force: imp(a,0) = max{c : min(a,c) <= 0} = 0, coimp(1,a) = min{c : 1 <= max(a,c)} = 1
        let three = BiHeytingAlgebra::from_lattice_order(&chain_table(3), 0, 2).unwrap();
        assert_eq!(three.imp(1, 0), 0);
        assert_eq!(three.coimp(2, 1), 2);
        assert_eq!(three.neg(1), 0);
        assert_eq!(three.coneg(1), 2);
        let named = BiHeytingAlgebra::chain(3).unwrap();
        assert_eq!(named.labels(), &["0", "a", "1"]);
        assert_eq!(three.with_labels(named.labels().to_vec()), named);
    }

    #[test]
    fn two_is_classical() {
        let two = BiHeytingAlgebra::chain(2).unwrap();
        assert_eq!([two.imp(0, 0), two.imp(0, 1), two.imp(1, 0), two.imp(1, 1)], [1, 1, 0, 1]);
        assert!(two.is_boolean());
    }

    #[test]
    fn m3_is_rejected() {
        // 0 < a, b, c < 1
        let mut t = vec![vec![false; 5]; 5];
        for i in 0..5 {
            t[i][i] = true;
            t[0][i] = true;
            t[i][4] = true;
        }
        assert!(matches!(BiHeytingAlgebra::from_lattice_order(&t, 0, 4), Err(Error::NotDistributive { .. })));
    }

    #[test]
    fn non_lattice_is_rejected() {
        // 0 < a, b < c, d < 1: a and b have two minimal upper bounds
        let mut t = vec![vec![false; 6]; 6];
        for i in 0..6 {
            t[i][i] = true;
            t[0][i] = true;
            t[i][5] = true;
        }
        for lo in [1, 2] {
            for hi in [3, 4] {
                t[lo][hi] = true;
            }
        }
        assert!(matches!(BiHeytingAlgebra::from_lattice_order(&t, 0, 5), Err(Error::NotALattice { .. })));
        assert_eq!(BiHeytingAlgebra::from_lattice_order(&chain_table(3), 1, 2), Err(Error::BoundsMismatch));
    }

    #[test]
    fn chain_preconditions() {
        assert_eq!(BiHeytingAlgebra::chain(1), Err(Error::TooSmall { got: 1, min: 2 }));
        let four = BiHeytingAlgebra::chain(4).unwrap();
        assert!(four.is_chain());
        assert!(!four.is_boolean());
        four.verify().unwrap();
    }

    #[test]
    fn products() {
        let two = BiHeytingAlgebra::chain(2).unwrap();
        let three = BiHeytingAlgebra::chain(3).unwrap();
        let p = product(&three, &two);
        assert_eq!(p.size(), 6);
        assert!(!p.is_chain());
        p.verify().unwrap();
        let p = product(&p, &two);
        assert_eq!(p.size(), 12);
        assert_eq!(p.label(p.size() - 1), "(1,1,1)");
        assert!(p.labels().iter().any(|l| l == "(a,1,0)"));
        let q = product(&two, &two);
        assert!(q.is_boolean());
        assert!(!q.is_chain());
        assert_eq!(product(&three, &BiHeytingAlgebra::degenerate()).leq_table(), three.leq_table());
    }

    #[test]
    fn unit_laws_and_double_negation() {
        let two = BiHeytingAlgebra::chain(2).unwrap();
        let a = product(&BiHeytingAlgebra::chain(4).unwrap(), &two);
        for x in 0..a.size() {
            assert_eq!(a.imp(a.top(), x), x);
            assert_eq!(a.coimp(x, a.bot()), x);
            assert!(a.leq(x, a.neg(a.neg(x))));
            assert!(a.leq(a.coneg(a.coneg(x)), x));
        }
    }
}
