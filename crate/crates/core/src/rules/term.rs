use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Op;

/// A bi-intuitionistic term. Variables are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    /// `!t`, short for `t -> 0`.
    Neg(Box<Term>),
    /// `~t`, short for `1 -< t`.
    Coneg(Box<Term>),
    Bin(Op, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn coneg(t: Term) -> Term {
        Term::Coneg(Box::new(t))
    }

    pub fn bin(op: Op, l: Term, r: Term) -> Term {
        Term::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::bin(Op::Meet, l, r)
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::bin(Op::Join, l, r)
    }

    pub fn imp(l: Term, r: Term) -> Term {
        Term::bin(Op::Imp, l, r)
    }

    pub fn coimp(l: Term, r: Term) -> Term {
        Term::bin(Op::Coimp, l, r)
    }

    /// Largest variable index, 0 for closed terms.
    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::Zero | Term::One => 0,
            Term::Neg(t) | Term::Coneg(t) => t.max_var(),
            Term::Bin(_, l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Replaces `x_i` by `subst[i - 1]`; variables beyond `subst` stay put.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst.get(i - 1).cloned().unwrap_or(Term::Var(*i)),
            Term::Zero => Term::Zero,
            Term::One => Term::One,
            Term::Neg(t) => Term::neg(t.substitute(subst)),
            Term::Coneg(t) => Term::coneg(t.substitute(subst)),
            Term::Bin(op, l, r) => Term::bin(*op, l.substitute(subst), r.substitute(subst)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Neg(t) | Term::Coneg(t) => 1 + t.size(),
            Term::Bin(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Bin(Op::Imp | Op::Coimp, ..) => 1,
            Term::Bin(Op::Join, ..) => 2,
            Term::Bin(Op::Meet, ..) => 3,
            _ => 4,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, t: &Term, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Neg(t) => {
                f.write_str("!")?;
                write_child(f, t, t.precedence() < 4)
            }
            Term::Coneg(t) => {
                f.write_str("~")?;
                write_child(f, t, t.precedence() < 4)
            }
            Term::Bin(op, l, r) => {
                let p = self.precedence();
                // & and | associate to the left, -> and -< to the right
                let (lp, rp) = if p == 1 {
                    (l.precedence() <= p, r.precedence() < p)
                } else {
                    (l.precedence() < p, r.precedence() <= p)
                };
                write_child(f, l, lp)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, rp)
            }
        }
    }
}

/// An identity `left = right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub left: Term,
    pub right: Term,
}

impl Equation {
    pub fn new(left: Term, right: Term) -> Self {
        Equation { left, right }
    }

    pub fn max_var(&self) -> usize {
        self.left.max_var().max(self.right.max_var())
    }

    pub fn substitute(&self, subst: &[Term]) -> Equation {
        Equation::new(self.left.substitute(subst), self.right.substitute(subst))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left, self.right)
    }
}

/// A quasi-equation `p1 ; .. ; pk |- c` over variables `x1..x{arity}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
    pub arity: usize,
}

impl Rule {
    /// Arity is the largest variable index used.
    pub fn new(premises: Vec<Equation>, conclusion: Equation) -> Self {
        let arity = premises.iter().map(Equation::max_var).fold(conclusion.max_var(), usize::max);
        Rule { premises, conclusion, arity }
    }

    /// `!x1 = 0 ; ~x1 = 1 |- 0 = 1`: no element is both dense and co-dense
    /// unless the algebra is degenerate.
    pub fn dense_codense() -> Self {
        Rule::new(
            alloc::vec![
                Equation::new(Term::neg(Term::var(1)), Term::Zero),
                Equation::new(Term::coneg(Term::var(1)), Term::One),
            ],
            Equation::new(Term::Zero, Term::One),
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}
