//! Terms, equations and quasi-equations, and the finite checks built on
//! them: validity in an algebra, refutation inside a generated variety,
//! bounded admissibility, premise unification, and positive existential
//! sentences.

mod parse;
mod term;

pub use parse::{parse_equation, parse_equations, parse_rule, parse_term, ParseError};
pub use term::{Equation, Rule, Term};

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::algebra::{power, BiHeyting, BiHeytingAlgebra};
use crate::budget::{checked_pow, Limits};
use crate::error::{Error, Resource, Result};
use crate::free::free_algebra;
use crate::morphism::{congruences, is_congruence, quotient, subalgebras, Congruence};

/// Evaluates `t` with `x_i` bound to `assignment[i - 1]`.
pub fn eval_term<A: BiHeyting + ?Sized>(a: &A, t: &Term, assignment: &[usize]) -> Result<usize> {
    Ok(match t {
        Term::Var(i) => *assignment.get(i - 1).ok_or(Error::UnboundVariable(*i))?,
        Term::Zero => a.bot(),
        Term::One => a.top(),
        Term::Neg(s) => a.imp(eval_term(a, s, assignment)?, a.bot()),
        Term::Coneg(s) => a.coimp(a.top(), eval_term(a, s, assignment)?),
        Term::Bin(op, l, r) => {
            let l = eval_term(a, l, assignment)?;
            let r = eval_term(a, r, assignment)?;
            a.apply(*op, l, r)
        }
    })
}

pub fn equation_holds<A: BiHeyting + ?Sized>(a: &A, e: &Equation, assignment: &[usize]) -> Result<bool> {
    Ok(eval_term(a, &e.left, assignment)? == eval_term(a, &e.right, assignment)?)
}

/// Verdict of a universally quantified check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The first refuting assignment, `x1` first.
    Refuted(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Refuted(w) => Some(w),
        }
    }
}

/// Visits all assignments of `arity` variables into `0..size` in ascending
/// lexicographic order (`x1` slowest) until `f` returns `Some`.
fn first_assignment<T>(
    size: usize,
    arity: usize,
    limits: &Limits,
    mut f: impl FnMut(&[usize]) -> Result<Option<T>>,
) -> Result<Option<T>> {
    let total = checked_pow(size as u64, arity as u64).unwrap_or(u64::MAX);
    if total > limits.assignments {
        return Err(Error::BudgetExceeded { resource: Resource::Assignments, limit: limits.assignments });
    }
    if size == 0 && arity > 0 {
        return Ok(None);
    }
    let mut asg = vec![0usize; arity];
    loop {
        if let Some(t) = f(&asg)? {
            return Ok(Some(t));
        }
        // increment, last variable fastest
        let mut i = arity;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            asg[i] += 1;
            if asg[i] < size {
                break;
            }
            asg[i] = 0;
        }
    }
}

/// Whether every assignment satisfying all premises satisfies the
/// conclusion.
pub fn rule_holds<A: BiHeyting + ?Sized>(a: &A, r: &Rule, limits: &Limits) -> Result<Verdict> {
    let found = first_assignment(a.size(), r.arity, limits, |asg| {
        for p in &r.premises {
            if !equation_holds(a, p, asg)? {
                return Ok(None);
            }
        }
        Ok((!equation_holds(a, &r.conclusion, asg)?).then(|| asg.to_vec()))
    })?;
    Ok(found.map_or(Verdict::Holds, Verdict::Refuted))
}

/// The first algebra (by position) refuting `r`, with its assignment.
pub fn valid_in_all<A: BiHeyting>(
    algebras: &[A],
    r: &Rule,
    limits: &Limits,
) -> Result<Option<(usize, Vec<usize>)>> {
    for (i, a) in algebras.iter().enumerate() {
        if let Verdict::Refuted(w) = rule_holds(a, r, limits)? {
            return Ok(Some((i, w)));
        }
    }
    Ok(None)
}

/// A member of `V(gen)` refuting a rule, with the path that puts it there:
/// the quotient of the subuniverse `subuniverse` of `gen^power` by
/// `congruence`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyCounterexample {
    pub power: usize,
    pub subuniverse: Vec<usize>,
    pub congruence: Congruence,
    pub algebra: BiHeytingAlgebra,
    pub assignment: Vec<usize>,
}

impl VarietyCounterexample {
    /// Rebuilds the algebra from `gen` along the recorded path and checks
    /// that the assignment refutes `r` there.
    pub fn recheck(&self, gen: &BiHeytingAlgebra, r: &Rule) -> Result<bool> {
        let p = power(gen, self.power);
        let mut set = FixedBitSet::with_capacity(p.size());
        for &x in &self.subuniverse {
            if x >= p.size() {
                return Ok(false);
            }
            set.insert(x);
        }
        let (sub, _) = p.subalgebra(&set)?;
        if !is_congruence(&sub, &self.congruence) {
            return Ok(false);
        }
        let q = quotient(&sub, &self.congruence)?;
        if q != self.algebra {
            return Ok(false);
        }
        for e in &r.premises {
            if !equation_holds(&q, e, &self.assignment)? {
                return Ok(false);
            }
        }
        Ok(!equation_holds(&q, &r.conclusion, &self.assignment)?)
    }
}

/// Searches quotients of subalgebras of `gen^m`, `m = 1..=power_bound`, for
/// one refuting `r`. `None` means none exists within the bound.
pub fn variety_counterexample(
    gen: &BiHeytingAlgebra,
    r: &Rule,
    power_bound: usize,
    limits: &Limits,
) -> Result<Option<VarietyCounterexample>> {
    if power_bound == 0 {
        return Err(Error::TooSmall { got: 0, min: 1 });
    }
    for m in 1..=power_bound {
        let p = power(gen, m);
        for s in subalgebras(&p, limits)? {
            let (sub, elems) = p.subalgebra(&s)?;
            for c in congruences(&sub, limits)? {
                let q = quotient(&sub, &c)?;
                if let Verdict::Refuted(assignment) = rule_holds(&q, r, limits)? {
                    return Ok(Some(VarietyCounterexample {
                        power: m,
                        subuniverse: elems,
                        congruence: c,
                        algebra: q,
                        assignment,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Per-`n` validity of a rule on the free algebras `F(1)..F(n_bound)`.
///
/// A refutation at any `n` shows the rule is not admissible. All-true
/// verdicts are evidence up to the bound only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// `(n, |F(n)|, verdict)` for each completed `n`.
    pub verdicts: Vec<(usize, usize, Verdict)>,
    /// Set when a budget stopped the run before `n_bound`.
    pub truncated: Option<Error>,
}

impl Admissibility {
    pub fn refuted(&self) -> bool {
        self.verdicts.iter().any(|(_, _, v)| !v.holds())
    }

    pub fn flags(&self) -> Vec<bool> {
        self.verdicts.iter().map(|(_, _, v)| v.holds()).collect()
    }
}

pub fn admissible_up_to(
    gens: &[BiHeytingAlgebra],
    r: &Rule,
    n_bound: usize,
    limits: &Limits,
) -> Result<Admissibility> {
    if n_bound == 0 {
        return Err(Error::TooSmall { got: 0, min: 1 });
    }
    let mut out = Admissibility { verdicts: Vec::new(), truncated: None };
    for n in 1..=n_bound {
        let step =
            free_algebra(gens, n, limits).and_then(|f| Ok((f.size(), rule_holds(&f.algebra, r, limits)?)));
        match step {
            Ok((size, v)) => out.verdicts.push((n, size, v)),
            Err(e) if e.is_budget() => {
                out.truncated = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// An assignment of a rule's variables into `F(m)` satisfying every
/// premise, with terms over `x1..xm` denoting the assigned elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unifier {
    pub m: usize,
    pub assignment: Vec<usize>,
    pub terms: Vec<Term>,
}

/// Looks for a unifier of the premises of `r` among assignments into
/// `F(1)..F(m_bound)`. `None` is bounded evidence that the rule is passive.
pub fn premise_unifier(
    gens: &[BiHeytingAlgebra],
    r: &Rule,
    m_bound: usize,
    limits: &Limits,
) -> Result<Option<Unifier>> {
    if m_bound == 0 {
        return Err(Error::TooSmall { got: 0, min: 1 });
    }
    for m in 1..=m_bound {
        let f = free_algebra(gens, m, limits)?;
        let found = first_assignment(f.size(), r.arity, limits, |asg| {
            for p in &r.premises {
                if !equation_holds(&f.algebra, p, asg)? {
                    return Ok(None);
                }
            }
            Ok(Some(asg.to_vec()))
        })?;
        if let Some(assignment) = found {
            let terms = assignment.iter().map(|&x| f.algebra.term_of(x)).collect();
            return Ok(Some(Unifier { m, assignment, terms }));
        }
    }
    Ok(None)
}

/// Whether substituting `terms` turns every premise of `r` into an identity
/// of each algebra in `gens`, over `m` variables.
pub fn verify_unifier(
    gens: &[BiHeytingAlgebra],
    r: &Rule,
    terms: &[Term],
    m: usize,
    limits: &Limits,
) -> Result<bool> {
    for e in &r.premises {
        let inst = e.substitute(terms);
        let identity = Rule { premises: Vec::new(), conclusion: inst, arity: m };
        for a in gens {
            if !rule_holds(a, &identity, limits)?.holds() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether some assignment satisfies every equation of `body`: the
/// sentence `exists x1..x{arity}. /\ body`. Returns the first witness.
pub fn pos_existential_holds<A: BiHeyting + ?Sized>(
    a: &A,
    body: &[Equation],
    arity: usize,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    first_assignment(a.size(), arity, limits, |asg| {
        for e in body {
            if !equation_holds(a, e, asg)? {
                return Ok(None);
            }
        }
        Ok(Some(asg.to_vec()))
    })
}
