//! Brute-force oracles checked against the library on small inputs.

#![allow(clippy::needless_range_loop)]

use biheyt_core::morphism::{canonical_bitset_cmp, is_congruence};
use biheyt_core::*;

fn chain(n: usize) -> BiHeytingAlgebra {
    BiHeytingAlgebra::chain(n).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

// Every relation on n points, filtered by the axioms, grouped by brute-force
// relabeling.
fn naive_poset_classes(n: usize) -> usize {
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let ps = perms(n);
    let mut reps: Vec<Vec<Vec<bool>>> = Vec::new();
    for bits in 0u64..(1 << off.len()) {
        let mut r = vec![vec![false; n]; n];
        for i in 0..n {
            r[i][i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            r[i][j] = bits >> k & 1 == 1;
        }
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(r[i][j] && r[j][i])));
        let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r[i][j] && r[j][k]) || r[i][k])));
        if !antisym || !trans {
            continue;
        }
        let known =
            reps.iter().any(|s| ps.iter().any(|p| (0..n).all(|i| (0..n).all(|j| r[i][j] == s[p[i]][p[j]]))));
        if !known {
            reps.push(r);
        }
    }
    reps.len()
}

#[test]
fn poset_counts_match_naive_enumeration() {
    for n in 1..=5 {
        let fast = enumerate_posets(n, &lim()).unwrap();
        assert_eq!(fast.len(), naive_poset_classes(n), "n = {n}");
    }
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_posets(n, &lim()).unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 5, 16, 63]);
}

#[test]
fn enumerated_posets_are_pairwise_non_isomorphic() {
    let ps = enumerate_posets(4, &lim()).unwrap();
    for (i, p) in ps.iter().enumerate() {
        assert!(validate_poset(&p.table()).is_ok());
        for q in &ps[i + 1..] {
            assert!(poset_isomorphic(p, q).is_none());
        }
    }
}

#[test]
fn upsets_match_subset_filter() {
    for n in 1..=4 {
        for p in enumerate_posets(n, &lim()).unwrap() {
            let brute: Vec<Mask> = (0..1u64 << n).filter(|&s| p.is_upset(s)).collect();
            let mut fast = p.upsets();
            fast.sort();
            assert_eq!(fast, brute);
        }
    }
    // 2-antichain: all four subsets
    assert_eq!(Poset::antichain(2).upsets().len(), 4);
}

#[test]
fn isomorphism_matches_permutation_search() {
    let pt = Poset::point();
    let c2 = Poset::chain(2);
    let a = disjoint_union(&disjoint_union(&c2, &pt).unwrap(), &pt).unwrap();
    let b = disjoint_union(&disjoint_union(&pt, &c2).unwrap(), &pt).unwrap();
    let brute =
        perms(4).into_iter().find(|f| (0..4).all(|i| (0..4).all(|j| a.leq(i, j) == b.leq(f[i], f[j]))));
    assert!(brute.is_some());
    assert!(poset_isomorphic(&a, &b).is_some());
}

// Residuals from the order alone.
fn brute_imp(a: &BiHeytingAlgebra, x: usize, y: usize) -> usize {
    let n = a.size();
    let glb = |p: usize, q: usize| {
        (0..n)
            .find(|&g| {
                a.leq(g, p) && a.leq(g, q) && (0..n).all(|c| !(a.leq(c, p) && a.leq(c, q)) || a.leq(c, g))
            })
            .unwrap()
    };
    let cands: Vec<usize> = (0..n).filter(|&c| a.leq(glb(x, c), y)).collect();
    *cands.iter().find(|&&g| cands.iter().all(|&c| a.leq(c, g))).unwrap()
}

fn brute_coimp(a: &BiHeytingAlgebra, x: usize, y: usize) -> usize {
    let n = a.size();
    let lub = |p: usize, q: usize| {
        (0..n)
            .find(|&l| {
                a.leq(p, l) && a.leq(q, l) && (0..n).all(|c| !(a.leq(p, c) && a.leq(q, c)) || a.leq(l, c))
            })
            .unwrap()
    };
    let cands: Vec<usize> = (0..n).filter(|&c| a.leq(x, lub(y, c))).collect();
    *cands.iter().find(|&&l| cands.iter().all(|&c| a.leq(l, c))).unwrap()
}

#[test]
fn residuals_match_brute_force() {
    let two = chain(2);
    let mut algs = vec![chain(2), chain(3), chain(5), product(&chain(3), &two), product(&two, &two)];
    for n in 1..=4 {
        for p in enumerate_posets(n, &lim()).unwrap() {
            algs.push(upset_algebra(&p));
        }
    }
    for a in &algs {
        for x in 0..a.size() {
            for y in 0..a.size() {
                assert_eq!(a.imp(x, y), brute_imp(a, x, y));
                assert_eq!(a.coimp(x, y), brute_coimp(a, x, y));
            }
        }
    }
    // 3: !a = 0 and ~a = 1
    let three = chain(3);
    assert_eq!(brute_imp(&three, 1, 0), 0);
    assert_eq!(brute_coimp(&three, 2, 1), 2);
}

#[test]
fn residuation_search_agrees_with_upset_formulas() {
    // from_lattice_order derives imp/coimp by search; upset_algebra by
    // complement-of-down-closure and up-closure
    for n in 1..=5 {
        for p in enumerate_posets(n, &lim()).unwrap() {
            let u = upset_algebra(&p);
            let searched = BiHeytingAlgebra::from_lattice_order(&u.leq_table(), u.bot(), u.top())
                .unwrap()
                .with_labels(u.labels().to_vec());
            assert_eq!(searched, u);
        }
    }
}

fn brute_homs(a: &BiHeytingAlgebra, b: &BiHeytingAlgebra) -> Vec<Vec<usize>> {
    let (n, m) = (a.size(), b.size());
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut map = vec![0; n];
            for slot in map.iter_mut().rev() {
                *slot = code % m;
                code /= m;
            }
            map
        })
        .filter(|map| {
            map[a.bot()] == b.bot()
                && map[a.top()] == b.top()
                && (0..n).all(|x| {
                    (0..n).all(|y| {
                        Op::ALL.iter().all(|&op| map[a.apply(op, x, y)] == b.apply(op, map[x], map[y]))
                    })
                })
        })
        .collect()
}

#[test]
fn homomorphisms_match_brute_force() {
    let two = chain(2);
    let three = chain(3);
    let algs = vec![
        two.clone(),
        three.clone(),
        chain(4),
        product(&two, &two),
        product(&three, &two),
        upset_algebra(&Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()),
    ];
    for a in &algs {
        for b in &algs {
            let fast: Vec<Vec<usize>> =
                homomorphisms(a, b, &lim()).unwrap().into_iter().map(Morphism::into_map).collect();
            assert_eq!(fast, brute_homs(a, b));
            let inj: Vec<Vec<usize>> =
                embeddings(a, b, &lim()).unwrap().into_iter().map(Morphism::into_map).collect();
            let brute_inj: Vec<Vec<usize>> = brute_homs(a, b)
                .into_iter()
                .filter(|m| {
                    let mut s = m.clone();
                    s.sort();
                    s.dedup();
                    s.len() == m.len()
                })
                .collect();
            assert_eq!(inj, brute_inj);
        }
    }
    assert!(brute_homs(&three, &two).is_empty());
    assert_eq!(brute_homs(&two, &three), vec![vec![0, 2]]);
    // 3 -> 3 x 2: none, since 3 -> 2 has none
    assert!(brute_homs(&three, &product(&three, &two)).is_empty());
    assert!(brute_homs(&three, &product(&two, &two)).is_empty());
}

fn brute_subuniverses(a: &BiHeytingAlgebra) -> Vec<FixedBitSet> {
    let n = a.size();
    let mut out: Vec<FixedBitSet> = (0u64..1 << n)
        .filter(|s| {
            let has = |x: usize| s >> x & 1 == 1;
            has(a.bot())
                && has(a.top())
                && (0..n).filter(|&x| has(x)).all(|x| {
                    (0..n).filter(|&y| has(y)).all(|y| Op::ALL.iter().all(|&op| has(a.apply(op, x, y))))
                })
        })
        .map(|s| {
            let mut b = FixedBitSet::with_capacity(n);
            for x in 0..n {
                b.set(x, s >> x & 1 == 1);
            }
            b
        })
        .collect();
    out.sort_by(canonical_bitset_cmp);
    out
}

#[test]
fn subalgebras_match_brute_force() {
    let two = chain(2);
    let three = chain(3);
    let algs = vec![
        two.clone(),
        three.clone(),
        chain(5),
        product(&three, &two),
        product(&product(&three, &two), &two),
        product(&three, &three),
    ];
    for a in &algs {
        assert_eq!(subalgebras(a, &lim()).unwrap(), brute_subuniverses(a));
    }
    // 3 x 2, indices (i, j) -> 2i + j
    let subs: Vec<Vec<usize>> =
        subalgebras(&product(&three, &two), &lim()).unwrap().iter().map(|s| s.ones().collect()).collect();
    assert_eq!(subs, vec![vec![0, 5], vec![0, 1, 4, 5], vec![0, 1, 2, 3, 4, 5]]);
}

#[test]
fn generated_subalgebra_of_boolean_square() {
    let two = chain(2);
    let b = product(&two, &two);
    let mut seed = FixedBitSet::with_capacity(4);
    seed.insert(2);
    let brute = brute_subuniverses(&b).into_iter().find(|s| s.contains(2)).unwrap();
    assert_eq!(generated_subalgebra(&b, &seed).unwrap(), brute);
    assert_eq!(brute.count_ones(..), 4);
}

// Set partitions by restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            go(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    go(1, 0, &mut cur, &mut out);
    out
}

#[test]
fn congruences_match_brute_force() {
    let two = chain(2);
    let three = chain(3);
    let algs = vec![
        three.clone(),
        chain(4),
        product(&three, &two),
        product(&two, &two),
        product(&product(&two, &two), &two),
        upset_algebra(&Poset::from_covers(3, &[(0, 1)]).unwrap()),
    ];
    for a in &algs {
        let n = a.size();
        let all: Vec<Congruence> = partitions(n)
            .into_iter()
            .map(|p| Congruence::from_labels(&p))
            .filter(|c| is_congruence(a, c))
            .collect();
        let mut fast = congruences(a, &lim()).unwrap();
        let mut brute = all.clone();
        fast.sort();
        brute.sort();
        assert_eq!(fast, brute);
        for x in 0..n {
            for y in x + 1..n {
                let least =
                    all.iter().filter(|c| c.related(x, y)).fold(Congruence::total(n), |acc, c| acc.meet(c));
                assert_eq!(congruence_generated(a, &[(x, y)]).unwrap(), least);
            }
        }
        let nontrivial: Vec<&Congruence> = all.iter().filter(|c| !c.is_identity()).collect();
        let meet = nontrivial.iter().fold(Congruence::total(n), |acc, c| acc.meet(c));
        let si = is_subdirectly_irreducible(a).unwrap();
        assert_eq!(si.is_some(), !meet.is_identity());
    }
    // both generating pairs of 3 collapse everything
    assert!(congruence_generated(&three, &[(0, 1)]).unwrap().is_total());
    assert!(congruence_generated(&three, &[(1, 2)]).unwrap().is_total());
}

#[test]
fn subdirect_representation_of_three_times_two() {
    let p = product(&chain(3), &chain(2));
    let cs = congruences(&p, &lim()).unwrap();
    // the two projection kernels separate points
    let kernels: Vec<&Congruence> = cs.iter().filter(|c| !c.is_identity() && !c.is_total()).collect();
    assert_eq!(kernels.len(), 2);
    assert!(kernels[0].meet(kernels[1]).is_identity());
    let q0 = quotient(&p, kernels[0]).unwrap();
    let q1 = quotient(&p, kernels[1]).unwrap();
    let into = product(&q0, &q1);
    let map: Vec<usize> =
        (0..p.size()).map(|x| kernels[0].block_of(x) * q1.size() + kernels[1].block_of(x)).collect();
    assert!(Morphism::new(map.clone()).check(&p, &into));
    assert!(Morphism::new(map).is_injective());
}

fn brute_join_irreducibles(a: &BiHeytingAlgebra) -> Vec<usize> {
    let n = a.size();
    (0..n)
        .filter(|&j| j != a.bot() && (0..n).all(|x| (0..n).all(|y| a.join(x, y) != j || x == j || y == j)))
        .collect()
}

#[test]
fn join_irreducibles_match_definition() {
    let two = chain(2);
    let algs = vec![
        chain(3),
        product(&two, &two),
        product(&product(&chain(3), &two), &two),
        product(&chain(4), &chain(3)),
    ];
    for a in &algs {
        assert_eq!(join_irreducibles(a), brute_join_irreducibles(a));
    }
}

#[test]
fn power_membership_certificates_embed() {
    let three = chain(3);
    let two = chain(2);
    let b = product(&three, &two);
    let f = product(&b, &two);
    let m = embeds_in_power(&b, &f, &lim()).unwrap();
    assert!(m.holds());
    let coords = m.power_embedding(b.size());
    assert!(morphism::verify_power_embedding(&b, &f, &coords));
    assert_eq!(m.certificate.len(), b.size() * (b.size() - 1) / 2);
    for ((x, y), h) in &m.certificate {
        assert!(h.check(&b, &f));
        assert_ne!(h.apply(*x), h.apply(*y));
    }
}
