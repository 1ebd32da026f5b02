//! Finitely generated free algebras of the variety generated by finitely many
//! finite algebras, built as subalgebras of a power indexed by assignments.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BiHeyting, BiHeytingAlgebra, Op};
use crate::budget::{checked_pow, Limits, Meter};
use crate::error::{Error, Resource, Result};
use crate::rules::Term;

/// How an element was first produced during the closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Bot,
    Top,
    Generator(usize),
    Apply(Op, usize, usize),
}

#[derive(Clone, Debug)]
enum Lookup {
    Dense(Vec<u32>),
    Sparse(BTreeMap<u64, u32>),
}

const DENSE_LIMIT: u64 = 1 << 22;
const ABSENT: u32 = u32::MAX;

impl Lookup {
    fn new(ambient: u64) -> Self {
        if ambient <= DENSE_LIMIT {
            Lookup::Dense(vec![ABSENT; ambient as usize])
        } else {
            Lookup::Sparse(BTreeMap::new())
        }
    }

    #[inline]
    fn get(&self, code: u64) -> Option<usize> {
        match self {
            Lookup::Dense(v) => match v[code as usize] {
                ABSENT => None,
                i => Some(i as usize),
            },
            Lookup::Sparse(m) => m.get(&code).map(|&i| i as usize),
        }
    }

    fn insert(&mut self, code: u64, idx: usize) {
        match self {
            Lookup::Dense(v) => v[code as usize] = idx as u32,
            Lookup::Sparse(m) => {
                m.insert(code, idx as u32);
            }
        }
    }
}

/// A subalgebra of a finite product, elements stored as coordinate tuples
/// and operations computed coordinatewise.
#[derive(Clone, Debug)]
pub struct Subpower {
    factors: Vec<BiHeytingAlgebra>,
    // factor index of each coordinate
    coord_factor: Vec<usize>,
    weights: Vec<u64>,
    width: usize,
    coords: Vec<u8>,
    lookup: Lookup,
    origin: Vec<Origin>,
    bot: usize,
    top: usize,
}

impl Subpower {
    pub fn width(&self) -> usize {
        self.width
    }

    /// Coordinates of element `x`.
    pub fn coords(&self, x: usize) -> &[u8] {
        &self.coords[x * self.width..(x + 1) * self.width]
    }

    pub fn origin(&self, x: usize) -> Origin {
        self.origin[x]
    }

    /// The factor algebra each coordinate lives in.
    pub fn coordinate_factor(&self, i: usize) -> &BiHeytingAlgebra {
        &self.factors[self.coord_factor[i]]
    }

    #[inline]
    fn op(&self, op: Op, x: usize, y: usize) -> usize {
        let code = self.code_of_op(op, x, y);
        self.lookup.get(code).expect("subpower is closed under the operations")
    }

    #[inline]
    fn code_of_op(&self, op: Op, x: usize, y: usize) -> u64 {
        let (cx, cy) = (self.coords(x), self.coords(y));
        let mut code = 0;
        for i in 0..self.width {
            let f = &self.factors[self.coord_factor[i]];
            code += f.apply(op, cx[i] as usize, cy[i] as usize) as u64 * self.weights[i];
        }
        code
    }

    /// A term whose value is `x`, read off the closure history.
    pub fn term_of(&self, x: usize) -> Term {
        match self.origin[x] {
            Origin::Bot => Term::Zero,
            Origin::Top => Term::One,
            Origin::Generator(i) => Term::Var(i + 1),
            Origin::Apply(op, l, r) => Term::bin(op, self.term_of(l), self.term_of(r)),
        }
    }

    /// Node count of [`Self::term_of`], saturating.
    pub fn term_size(&self, x: usize) -> u64 {
        let mut memo = vec![0u64; self.origin.len()];
        for i in 0..=x {
            memo[i] = match self.origin[i] {
                Origin::Apply(_, l, r) => memo[l].saturating_add(memo[r]).saturating_add(1),
                _ => 1,
            };
        }
        memo[x]
    }

    /// The history term of `x` when it is short, `e{x}` otherwise.
    pub fn label(&self, x: usize) -> String {
        if self.term_size(x) <= 12 {
            self.term_of(x).to_string()
        } else {
            alloc::format!("e{x}")
        }
    }

    /// Copies the algebra into full tables, labeled by [`Self::label`].
    pub fn to_table(&self, limits: &Limits) -> Result<BiHeytingAlgebra> {
        let alg = BiHeytingAlgebra::materialize(self, limits)?;
        let labels = (0..self.size()).map(|x| self.label(x)).collect();
        Ok(alg.with_labels(labels))
    }
}

impl BiHeyting for Subpower {
    fn size(&self) -> usize {
        self.origin.len()
    }
    fn bot(&self) -> usize {
        self.bot
    }
    fn top(&self) -> usize {
        self.top
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (self.coords(a), self.coords(b));
        (0..self.width).all(|i| self.coordinate_factor(i).leq(ca[i] as usize, cb[i] as usize))
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.op(Op::Meet, a, b)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.op(Op::Join, a, b)
    }
    fn imp(&self, a: usize, b: usize) -> usize {
        self.op(Op::Imp, a, b)
    }
    fn coimp(&self, a: usize, b: usize) -> usize {
        self.op(Op::Coimp, a, b)
    }
}

/// One coordinate of the ambient power: an assignment of the free
/// variables into one generating algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub algebra: usize,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub algebra: Subpower,
    /// Element index of each free generator `x1, x2, ..`.
    pub generators: Vec<usize>,
    /// The assignment behind each coordinate.
    pub assignments: Vec<Assignment>,
}

impl FreeAlgebra {
    pub fn vars(&self) -> usize {
        self.generators.len()
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }
}

/// The free algebra on `vars` generators over the variety generated by
/// `gens`: the subalgebra of `prod_A A^(A^vars)` generated by the projection
/// tuples.
///
/// Coordinates run over generating algebras in list order, then over
/// assignments read as base-`|A|` numbers with `x1` most significant.
/// Elements are numbered in closure discovery order: `0`, `1`, the
/// generators, then new values of meet, join, imp, coimp over ascending
/// argument pairs.
pub fn free_algebra(gens: &[BiHeytingAlgebra], vars: usize, limits: &Limits) -> Result<FreeAlgebra> {
    if gens.is_empty() {
        return Err(Error::TooSmall { got: 0, min: 1 });
    }
    let budget = Error::BudgetExceeded { resource: Resource::FreeAlgebra, limit: limits.free_cells };
    let mut ambient: u64 = 1;
    let mut assignments = Vec::new();
    for (g, a) in gens.iter().enumerate() {
        if a.size() > 255 {
            return Err(Error::TooLarge { got: a.size(), max: 255 });
        }
        let count = checked_pow(a.size() as u64, vars as u64).ok_or(budget.clone())?;
        let part = checked_pow(a.size() as u64, count).ok_or(budget.clone())?;
        ambient = ambient.checked_mul(part).ok_or(budget.clone())?;
        if ambient > limits.free_cells {
            return Err(budget);
        }
        for t in 0..count {
            let mut values = vec![0; vars];
            let mut rest = t;
            for v in values.iter_mut().rev() {
                *v = (rest % a.size() as u64) as usize;
                rest /= a.size() as u64;
            }
            assignments.push(Assignment { algebra: g, values });
        }
    }
    if ambient > limits.free_cells {
        return Err(budget);
    }

    let width = assignments.len();
    let coord_factor: Vec<usize> = assignments.iter().map(|s| s.algebra).collect();
    let mut weights = vec![0u64; width];
    let mut w = 1u64;
    for i in (0..width).rev() {
        weights[i] = w;
        w = w.saturating_mul(gens[coord_factor[i]].size() as u64);
    }

    let mut sp = Subpower {
        factors: gens.to_vec(),
        coord_factor,
        weights,
        width,
        coords: Vec::new(),
        lookup: Lookup::new(ambient),
        origin: Vec::new(),
        bot: 0,
        top: 0,
    };

    let encode =
        |cs: &[u8], weights: &[u64]| -> u64 { cs.iter().zip(weights).map(|(&c, &w)| c as u64 * w).sum() };
    // Adds a tuple if new; returns its index.
    fn push(sp: &mut Subpower, code: u64, cs: &[u8], origin: Origin) -> usize {
        if let Some(i) = sp.lookup.get(code) {
            return i;
        }
        let i = sp.origin.len();
        sp.coords.extend_from_slice(cs);
        sp.lookup.insert(code, i);
        sp.origin.push(origin);
        i
    }

    let bot: Vec<u8> = assignments.iter().map(|s| gens[s.algebra].bot() as u8).collect();
    let top: Vec<u8> = assignments.iter().map(|s| gens[s.algebra].top() as u8).collect();
    let code = encode(&bot, &sp.weights);
    sp.bot = push(&mut sp, code, &bot, Origin::Bot);
    let code = encode(&top, &sp.weights);
    sp.top = push(&mut sp, code, &top, Origin::Top);
    let mut generators = Vec::with_capacity(vars);
    for v in 0..vars {
        let cs: Vec<u8> = assignments.iter().map(|s| s.values[v] as u8).collect();
        let code = encode(&cs, &sp.weights);
        generators.push(push(&mut sp, code, &cs, Origin::Generator(v)));
    }

    let mut meter = Meter::new(Resource::FreeAlgebra, limits.search_nodes);
    let mut scratch = vec![0u8; width];
    let mut k = 0;
    while k < sp.size() {
        for i in 0..=k {
            meter.tick()?;
            for op in Op::ALL {
                let pairs: &[(usize, usize)] =
                    if op.is_commutative() || i == k { &[(k, i)] } else { &[(k, i), (i, k)] };
                for &(x, y) in pairs {
                    let code = sp.code_of_op(op, x, y);
                    if sp.lookup.get(code).is_none() {
                        for (c, slot) in scratch.iter_mut().enumerate() {
                            let f = &sp.factors[sp.coord_factor[c]];
                            *slot = f.apply(op, sp.coords(x)[c] as usize, sp.coords(y)[c] as usize) as u8;
                        }
                        push(&mut sp, code, &scratch, Origin::Apply(op, x, y));
                    }
                }
            }
        }
        k += 1;
    }
    Ok(FreeAlgebra { algebra: sp, generators, assignments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::morphism::{generated_subalgebra, is_isomorphic};
    use fixedbitset::FixedBitSet;

    fn chain(n: usize) -> BiHeytingAlgebra {
        BiHeytingAlgebra::chain(n).unwrap()
    }

    #[test]
    fn one_generator_over_three() {
        let l = Limits::default();
        let f = free_algebra(&[chain(3)], 1, &l).unwrap();
        assert_eq!(f.size(), 12);
        assert_eq!(f.generators, vec![2]);
        assert_eq!(f.algebra.coords(2), &[0, 1, 2]);
        let table = f.algebra.to_table(&l).unwrap();
        table.verify().unwrap();
        let target = product(&product(&chain(3), &chain(2)), &chain(2));
        assert!(is_isomorphic(&table, &target, &l).unwrap().is_some());
    }

    #[test]
    fn free_boolean_on_one() {
        let l = Limits::default();
        let f = free_algebra(&[chain(2)], 1, &l).unwrap();
        let t = f.algebra.to_table(&l).unwrap();
        assert!(is_isomorphic(&t, &product(&chain(2), &chain(2)), &l).unwrap().is_some());
    }

    #[test]
    fn no_generators() {
        let f = free_algebra(&[chain(4)], 0, &Limits::default()).unwrap();
        assert_eq!(f.size(), 2);
        assert!(f.generators.is_empty());
    }

    #[test]
    fn generators_generate() {
        let l = Limits::default();
        let f = free_algebra(&[chain(3), chain(2)], 1, &l).unwrap();
        let mut seed = FixedBitSet::with_capacity(f.size());
        for &g in &f.generators {
            seed.insert(g);
        }
        let s = generated_subalgebra(&f.algebra, &seed).unwrap();
        assert_eq!(s.count_ones(..), f.size());
    }

    #[test]
    fn budget_is_enforced() {
        let l = Limits { free_cells: 27, ..Limits::default() };
        assert_eq!(free_algebra(&[chain(3)], 1, &l).unwrap().size(), 12);
        let l = Limits { free_cells: 26, ..Limits::default() };
        assert!(free_algebra(&[chain(3)], 1, &l).unwrap_err().is_budget());
        let l = Limits { free_cells: 0, ..Limits::default() };
        assert!(free_algebra(&[chain(3)], 1, &l).unwrap_err().is_budget());
        assert!(free_algebra(&[chain(3)], 3, &Limits::default()).unwrap_err().is_budget());
    }

    #[test]
    fn history_terms_evaluate_back() {
        let l = Limits::default();
        let f = free_algebra(&[chain(3)], 1, &l).unwrap();
        for x in 0..f.size() {
            let t = f.algebra.term_of(x);
            let v = crate::rules::eval_term(&f.algebra, &t, &[f.generators[0]]).unwrap();
            assert_eq!(v, x, "{t}");
        }
    }
}
