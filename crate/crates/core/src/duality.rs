//! Finite duality between bi-Heyting algebras and posets.
//!
//! The dual poset of an algebra carries the *reversed* algebra order on its
//! join-irreducibles, so that `x` is represented by the up-set
//! `{ j : j <= x }`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{BiHeyting, BiHeytingAlgebra};
use crate::error::{Error, Result};
use crate::morphism::is_homomorphism;
use crate::order::{canonical_set_cmp, members, Mask, Poset, MAX_POSET};

fn set_label(m: Mask) -> String {
    let inner: Vec<String> = members(m).map(|i| format!("{i}")).collect();
    format!("{{{}}}", inner.join(","))
}

/// The algebra of up-sets of `p`, elements in canonical up-set order.
///
/// Implication is computed as the complement of a down-closure and
/// co-implication as an up-closure, independently of the residual search in
/// [`BiHeytingAlgebra::from_lattice_order`].
pub fn upset_algebra(p: &Poset) -> BiHeytingAlgebra {
    let ups = p.upsets();
    let full = p.full();
    let index =
        |m: Mask| ups.binary_search_by(|u| canonical_set_cmp(*u, m)).expect("operation left the up-sets");
    let down = |m: Mask| members(m).fold(0, |acc, i| acc | p.down_of(i));
    let up = |m: Mask| members(m).fold(0, |acc, i| acc | p.up_of(i));
    BiHeytingAlgebra::tabulate(
        ups.len(),
        0,
        ups.len() - 1,
        |a, b| ups[a] & !ups[b] == 0,
        |a, b| index(ups[a] & ups[b]),
        |a, b| index(ups[a] | ups[b]),
        |a, b| index(full & !down(ups[a] & !ups[b])),
        |a, b| index(up(ups[a] & !ups[b])),
    )
    .with_labels(ups.iter().map(|&m| set_label(m)).collect())
}

/// Join-irreducible elements in ascending index order.
pub fn join_irreducibles<A: BiHeyting + ?Sized>(a: &A) -> Vec<usize> {
    let n = a.size();
    (0..n)
        .filter(|&j| {
            if j == a.bot() {
                return false;
            }
            // j is join-irreducible iff the join of everything strictly below
            // it is still strictly below it
            let below = (0..n).filter(|&x| x != j && a.leq(x, j)).fold(a.bot(), |acc, x| a.join(acc, x));
            below != j
        })
        .collect()
}

/// The poset of join-irreducibles under the reversed algebra order.
pub fn dual_poset<A: BiHeyting + ?Sized>(a: &A) -> Result<Poset> {
    Ok(dual_with_points(a)?.0)
}

fn dual_with_points<A: BiHeyting + ?Sized>(a: &A) -> Result<(Poset, Vec<usize>)> {
    if a.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let points = join_irreducibles(a);
    if points.len() > MAX_POSET {
        return Err(Error::TooLarge { got: points.len(), max: MAX_POSET });
    }
    let table: Vec<Vec<bool>> =
        points.iter().map(|&i| points.iter().map(|&j| a.leq(j, i)).collect()).collect();
    Ok((Poset::new(&table)?, points))
}

/// The representation `x -> { j : j <= x }` from `a` onto
/// `upset_algebra(dual_poset(a))`, checked to be an isomorphism.
pub fn representation_iso(a: &BiHeytingAlgebra) -> Result<Vec<usize>> {
    let (dual, points) = dual_with_points(a)?;
    let ups = dual.upsets();
    let target = upset_algebra(&dual);
    let mut map = Vec::with_capacity(a.size());
    for x in 0..a.size() {
        let image: Mask =
            points.iter().enumerate().filter(|&(_, &j)| a.leq(j, x)).fold(0, |acc, (i, _)| acc | (1 << i));
        let idx = ups
            .binary_search_by(|u| canonical_set_cmp(*u, image))
            .map_err(|_| Error::VerificationFailed(format!("image of {x} is not an up-set")))?;
        map.push(idx);
    }
    let mut hit = alloc::vec![false; target.size()];
    for &y in &map {
        hit[y] = true;
    }
    if map.len() != target.size() || hit.iter().any(|h| !h) {
        return Err(Error::VerificationFailed("representation is not a bijection".into()));
    }
    if !is_homomorphism(a, &target, &map) {
        return Err(Error::VerificationFailed("representation does not preserve operations".into()));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::order::{disjoint_union, poset_isomorphic};

    fn chain(n: usize) -> BiHeytingAlgebra {
        BiHeytingAlgebra::chain(n).unwrap()
    }

    #[test]
    fn upset_algebra_examples() {
        let a = upset_algebra(&Poset::chain(2));
        assert_eq!(a.size(), 3);
        assert!(a.is_chain());
        a.verify().unwrap();
        assert_eq!(upset_algebra(&Poset::point()).size(), 2);
        let ups = upset_algebra(&Poset::empty());
        assert!(ups.is_degenerate());
    }

    #[test]
    fn dual_poset_examples() {
        assert!(poset_isomorphic(&dual_poset(&chain(3)).unwrap(), &Poset::chain(2)).is_some());
        let two = chain(2);
        let d = dual_poset(&product(&two, &two)).unwrap();
        assert!(poset_isomorphic(&d, &Poset::antichain(2)).is_some());
        assert_eq!(dual_poset(&BiHeytingAlgebra::degenerate()), Err(Error::Degenerate));
    }

    #[test]
    fn dual_of_product_with_two_gains_a_point() {
        let h = product(&chain(4), &chain(3));
        let lhs = dual_poset(&product(&h, &chain(2))).unwrap();
        let rhs = disjoint_union(&dual_poset(&h).unwrap(), &Poset::point()).unwrap();
        assert!(poset_isomorphic(&lhs, &rhs).is_some());
    }

    #[test]
    fn dual_order_is_reversed() {
        // 0 < a < 1: join-irreducibles a (index 1) and 1 (index 2); 1 sits below a
        let d = dual_poset(&chain(3)).unwrap();
        assert!(d.leq(1, 0));
        assert!(!d.leq(0, 1));
    }

    #[test]
    fn representation_examples() {
        assert_eq!(representation_iso(&chain(3)).unwrap(), alloc::vec![0, 1, 2]);
        let two = chain(2);
        let m = representation_iso(&product(&two, &two)).unwrap();
        assert_eq!(m.len(), 4);
        let big = product(&product(&chain(3), &two), &two);
        assert_eq!(representation_iso(&big).unwrap().len(), 12);
    }
}
