use biheyt_core::free::Origin;
use biheyt_core::rules::{
    admissible_up_to, eval_term, parse_rule, pos_existential_holds, premise_unifier, rule_holds,
    valid_in_all, variety_counterexample, verify_unifier,
};
use biheyt_core::*;

fn chain(n: usize) -> BiHeytingAlgebra {
    BiHeytingAlgebra::chain(n).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

fn r() -> Rule {
    Rule::dense_codense()
}

#[test]
fn free_on_one_generator_over_three() {
    let f = free_algebra(&[chain(3)], 1, &lim()).unwrap();
    assert_eq!(f.size(), 12);
    let table = f.algebra.to_table(&lim()).unwrap();
    table.verify().unwrap();
    assert!(is_isomorphic(&table, &product(&product(&chain(3), &chain(2)), &chain(2)), &lim())
        .unwrap()
        .is_some());
    let d = dual_poset(&table).unwrap();
    let want =
        disjoint_union(&disjoint_union(&Poset::chain(2), &Poset::point()).unwrap(), &Poset::point()).unwrap();
    assert!(poset_isomorphic(&d, &want).is_some());
    // generated by its generator
    let mut seed = FixedBitSet::with_capacity(f.size());
    seed.insert(f.generators[0]);
    assert_eq!(generated_subalgebra(&table, &seed).unwrap().count_ones(..), f.size());
}

#[test]
fn universal_property_one_generator() {
    let three = chain(3);
    let f = free_algebra(std::slice::from_ref(&three), 1, &lim()).unwrap();
    let table = f.algebra.to_table(&lim()).unwrap();
    let g = f.generators[0];
    for a in 0..three.size() {
        // the coordinate for assignment x1 -> a is the extension
        let coord = f.assignments.iter().position(|s| s.values == [a]).unwrap();
        let map: Vec<usize> = (0..f.size()).map(|x| f.algebra.coords(x)[coord] as usize).collect();
        let h = Morphism::new(map);
        assert!(h.check(&table, &three));
        assert_eq!(h.apply(g), a);
        // unique: any homomorphism agreeing on the generator agrees everywhere
        let others: Vec<Morphism> =
            homomorphisms(&table, &three, &lim()).unwrap().into_iter().filter(|m| m.apply(g) == a).collect();
        assert_eq!(others, vec![h]);
    }
}

#[test]
fn free_one_embeds_in_free_two() {
    let three = chain(3);
    let f1 = free_algebra(std::slice::from_ref(&three), 1, &lim()).unwrap();
    let f2 = free_algebra(&[three], 2, &lim()).unwrap();
    assert_eq!(f2.size(), 3888);
    let gens2 = [f2.generators[0]];
    let map: Vec<usize> =
        (0..f1.size()).map(|x| eval_term(&f2.algebra, &f1.algebra.term_of(x), &gens2).unwrap()).collect();
    assert_eq!(map[f1.generators[0]], f2.generators[0]);
    let mut sorted = map.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), f1.size());
    assert_eq!(map[f1.algebra.bot()], f2.algebra.bot());
    assert_eq!(map[f1.algebra.top()], f2.algebra.top());
    for x in 0..f1.size() {
        for y in 0..f1.size() {
            for op in Op::ALL {
                assert_eq!(map[f1.algebra.apply(op, x, y)], f2.algebra.apply(op, map[x], map[y]));
            }
        }
    }
}

#[test]
fn free_terms_evaluate_back() {
    let f = free_algebra(&[chain(3), chain(2)], 1, &lim()).unwrap();
    for x in 0..f.size() {
        let t = f.algebra.term_of(x);
        assert_eq!(eval_term(&f.algebra, &t, &f.generators).unwrap(), x);
        match f.algebra.origin(x) {
            Origin::Apply(_, l, r) => assert!(l < x && r < x),
            Origin::Generator(i) => assert_eq!(f.generators[i], x),
            Origin::Bot | Origin::Top => {}
        }
    }
}

#[test]
fn free_budget_is_all_or_nothing() {
    // ambient 3^3 = 27
    for cells in [0, 1, 26] {
        let l = Limits { free_cells: cells, ..lim() };
        let e = free_algebra(&[chain(3)], 1, &l).unwrap_err();
        assert!(e.is_budget());
    }
    assert_eq!(free_algebra(&[chain(3)], 1, &Limits { free_cells: 27, ..lim() }).unwrap().size(), 12);
    let tiny = Limits { search_nodes: 3, ..lim() };
    assert!(free_algebra(&[chain(3)], 1, &tiny).unwrap_err().is_budget());
}

#[test]
fn sugar_laws() {
    let algs = vec![chain(3), chain(4), product(&chain(3), &chain(2)), upset_algebra(&Poset::antichain(2))];
    let t = Term::join(Term::var(1), Term::coimp(Term::var(2), Term::var(1)));
    for a in &algs {
        for x in 0..a.size() {
            for y in 0..a.size() {
                let s = [x, y];
                let v = eval_term(a, &t, &s).unwrap();
                assert_eq!(eval_term(a, &Term::neg(t.clone()), &s).unwrap(), a.imp(v, a.bot()));
                assert_eq!(eval_term(a, &Term::coneg(t.clone()), &s).unwrap(), a.coimp(a.top(), v));
                assert_eq!(eval_term(a, &Term::One, &s).unwrap(), a.top());
            }
        }
    }
    let three = chain(3);
    assert_eq!(eval_term(&three, &Term::neg(Term::var(1)), &[1]).unwrap(), 0);
    assert_eq!(eval_term(&three, &Term::coneg(Term::var(1)), &[1]).unwrap(), 2);
    assert!(matches!(eval_term(&three, &Term::var(2), &[1]), Err(Error::UnboundVariable(2))));
}

#[test]
fn rule_on_chains_and_products() {
    let three = chain(3);
    assert_eq!(rule_holds(&three, &r(), &lim()).unwrap(), Verdict::Refuted(vec![1]));
    assert!(rule_holds(&product(&three, &chain(2)), &r(), &lim()).unwrap().holds());
    let trivial = parse_rule("!x1 = 0 |- 1 = 1").unwrap();
    assert!(rule_holds(&three, &trivial, &lim()).unwrap().holds());

    let mut family = Vec::new();
    for n in 1..=4 {
        for p in enumerate_posets(n, &lim()).unwrap() {
            family.push(product(&upset_algebra(&p), &chain(2)));
        }
    }
    assert_eq!(family.len(), 1 + 2 + 5 + 16);
    assert_eq!(valid_in_all(&family, &r(), &lim()).unwrap(), None);
    assert_eq!(valid_in_all(&[three], &r(), &lim()).unwrap(), Some((0, vec![1])));
    assert_eq!(valid_in_all::<BiHeytingAlgebra>(&[], &r(), &lim()).unwrap(), None);
}

#[test]
fn variety_search() {
    let three = chain(3);
    let c = variety_counterexample(&three, &r(), 1, &lim()).unwrap().unwrap();
    assert_eq!(c.power, 1);
    assert_eq!(c.subuniverse, vec![0, 1, 2]);
    assert!(c.congruence.is_identity());
    assert!(c.recheck(&three, &r()).unwrap());
    assert_eq!(rule_holds(&c.algebra, &r(), &lim()).unwrap(), Verdict::Refuted(c.assignment.clone()));

    assert!(variety_counterexample(&chain(2), &r(), 2, &lim()).unwrap().is_none());
    let triv = parse_rule("|- 1 = 1").unwrap();
    assert!(variety_counterexample(&three, &triv, 2, &lim()).unwrap().is_none());
}

#[test]
fn admissibility_and_passivity() {
    let three = chain(3);
    let adm = admissible_up_to(std::slice::from_ref(&three), &r(), 2, &lim()).unwrap();
    assert_eq!(adm.flags(), vec![true, true]);
    assert_eq!(adm.verdicts[1].1, 3888);
    assert!(adm.truncated.is_none());

    let bad = parse_rule("x1 = 1 |- 0 = 1").unwrap();
    let adm = admissible_up_to(&[chain(2)], &bad, 1, &lim()).unwrap();
    assert_eq!(adm.flags(), vec![false]);

    // truncation when F(2) is out of budget
    let l = Limits { free_cells: 1000, ..lim() };
    let adm = admissible_up_to(std::slice::from_ref(&three), &r(), 2, &l).unwrap();
    assert_eq!(adm.flags(), vec![true]);
    assert!(adm.truncated.as_ref().unwrap().is_budget());

    assert!(premise_unifier(std::slice::from_ref(&three), &r(), 2, &lim()).unwrap().is_none());
    assert!(premise_unifier(&[chain(2)], &r(), 1, &lim()).unwrap().is_none());
    let u = premise_unifier(std::slice::from_ref(&three), &bad, 1, &lim()).unwrap().unwrap();
    assert_eq!(u.terms, vec![Term::One]);
    assert!(verify_unifier(&[three], &bad, &u.terms, u.m, &lim()).unwrap());
}

#[test]
fn admissibility_is_monotone() {
    // recorded runs never flip false -> true
    let rules =
        ["x1 = 1 |- 0 = 1", "!x1 = 0 ; ~x1 = 1 |- 0 = 1", "x1 | !x1 = 1 |- x1 = 1", "~x1 = 1 |- !x1 = 1"];
    for src in rules {
        let rule = parse_rule(src).unwrap();
        for gens in [vec![chain(2)], vec![chain(3)]] {
            let flags = admissible_up_to(&gens, &rule, 2, &lim()).unwrap().flags();
            assert!(flags.windows(2).all(|w| w[0] || !w[1]), "{src}: {flags:?}");
        }
    }
}

#[test]
fn positive_existential_separates_three_from_product() {
    let body = r().premises;
    assert_eq!(pos_existential_holds(&chain(3), &body, 1, &lim()).unwrap(), Some(vec![1]));
    assert_eq!(pos_existential_holds(&product(&chain(3), &chain(2)), &body, 1, &lim()).unwrap(), None);
    let taut = vec![Equation::new(Term::One, Term::One)];
    assert!(pos_existential_holds(&chain(2), &taut, 0, &lim()).unwrap().is_some());
}

#[test]
fn assignment_budget() {
    let l = Limits { assignments: 8, ..lim() };
    let wide = parse_rule("x1 = x2 ; x2 = x3 |- x1 = x3").unwrap();
    assert!(rule_holds(&chain(3), &wide, &l).unwrap_err().is_budget());
    assert!(rule_holds(&chain(2), &wide, &l).unwrap().holds());
}
