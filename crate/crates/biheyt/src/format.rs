//! JSON file formats.
//!
//! Posets and algebras are stored as order matrices; operation tables are
//! derived on load and never written out.

use std::fs;
use std::path::Path;

use biheyt_core::rules::parse_rule;
use biheyt_core::{BiHeyting, BiHeytingAlgebra, Equation, Op, Poset, Rule, Term};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson { size: p.size(), leq: p.table() }
    }

    pub fn to_poset(&self) -> Result<Poset, CliError> {
        check_square(self.size, &self.leq)?;
        Ok(Poset::new(&self.leq)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub bot: usize,
    pub top: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraJson {
    /// Reads only the order, so large implicit algebras need no tables.
    pub fn from_algebra<A: BiHeyting + ?Sized>(a: &A, labels: Option<Vec<String>>) -> Self {
        let n = a.size();
        let leq = (0..n).map(|i| (0..n).map(|j| a.leq(i, j)).collect()).collect();
        AlgebraJson { size: n, leq, bot: a.bot(), top: a.top(), labels }
    }

    pub fn from_table(a: &BiHeytingAlgebra) -> Self {
        Self::from_algebra(a, Some(a.labels().to_vec()))
    }

    pub fn to_algebra(&self) -> Result<BiHeytingAlgebra, CliError> {
        check_square(self.size, &self.leq)?;
        let a = BiHeytingAlgebra::from_lattice_order(&self.leq, self.bot, self.top)?;
        match &self.labels {
            Some(l) if l.len() != self.size => {
                Err(CliError::input(format!("{} labels for {} elements", l.len(), self.size)))
            }
            Some(l) => Ok(a.with_labels(l.clone())),
            None => Ok(a),
        }
    }
}

fn check_square(size: usize, leq: &[Vec<bool>]) -> Result<(), CliError> {
    if leq.len() != size || leq.iter().any(|r| r.len() != size) {
        return Err(CliError::input(format!("leq must be a {size}x{size} matrix")));
    }
    Ok(())
}

/// Term AST: `{"var": 1}`, `"zero"`, `"one"`, `{"neg": t}`, `{"coneg": t}`,
/// `{"meet": [l, r]}`, `{"join": ..}`, `{"imp": ..}`, `{"coimp": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermJson {
    Var(usize),
    Zero,
    One,
    Neg(Box<TermJson>),
    Coneg(Box<TermJson>),
    Meet(Box<(TermJson, TermJson)>),
    Join(Box<(TermJson, TermJson)>),
    Imp(Box<(TermJson, TermJson)>),
    Coimp(Box<(TermJson, TermJson)>),
}

impl From<&Term> for TermJson {
    fn from(t: &Term) -> Self {
        match t {
            Term::Var(i) => TermJson::Var(*i),
            Term::Zero => TermJson::Zero,
            Term::One => TermJson::One,
            Term::Neg(u) => TermJson::Neg(Box::new(u.as_ref().into())),
            Term::Coneg(u) => TermJson::Coneg(Box::new(u.as_ref().into())),
            Term::Bin(op, l, r) => {
                let pair = Box::new((l.as_ref().into(), r.as_ref().into()));
                match op {
                    Op::Meet => TermJson::Meet(pair),
                    Op::Join => TermJson::Join(pair),
                    Op::Imp => TermJson::Imp(pair),
                    Op::Coimp => TermJson::Coimp(pair),
                }
            }
        }
    }
}

impl TermJson {
    pub fn to_term(&self) -> Result<Term, CliError> {
        let bin = |op, p: &(TermJson, TermJson)| Ok(Term::bin(op, p.0.to_term()?, p.1.to_term()?));
        match self {
            TermJson::Var(0) => Err(CliError::input("variables are numbered from 1")),
            TermJson::Var(i) => Ok(Term::Var(*i)),
            TermJson::Zero => Ok(Term::Zero),
            TermJson::One => Ok(Term::One),
            TermJson::Neg(u) => Ok(Term::neg(u.to_term()?)),
            TermJson::Coneg(u) => Ok(Term::coneg(u.to_term()?)),
            TermJson::Meet(p) => bin(Op::Meet, p),
            TermJson::Join(p) => bin(Op::Join, p),
            TermJson::Imp(p) => bin(Op::Imp, p),
            TermJson::Coimp(p) => bin(Op::Coimp, p),
        }
    }
}

/// `{"premises": [[l, r], ..], "conclusion": [l, r]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    #[serde(default)]
    pub premises: Vec<(TermJson, TermJson)>,
    pub conclusion: (TermJson, TermJson),
}

impl From<&Rule> for RuleJson {
    fn from(r: &Rule) -> Self {
        let eq = |e: &Equation| ((&e.left).into(), (&e.right).into());
        RuleJson { premises: r.premises.iter().map(eq).collect(), conclusion: eq(&r.conclusion) }
    }
}

impl RuleJson {
    pub fn to_rule(&self) -> Result<Rule, CliError> {
        let eq = |(l, r): &(TermJson, TermJson)| Ok(Equation::new(l.to_term()?, r.to_term()?));
        let premises = self.premises.iter().map(eq).collect::<Result<_, CliError>>()?;
        Ok(Rule::new(premises, eq(&self.conclusion)?))
    }
}

/// A rule in the text grammar, or its JSON AST when the content starts
/// with `{`.
pub fn rule_from_str(src: &str) -> Result<Rule, CliError> {
    if src.trim_start().starts_with('{') {
        let j: RuleJson = serde_json::from_str(src).map_err(CliError::json)?;
        j.to_rule()
    } else {
        Ok(parse_rule(src)?)
    }
}

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn read_rule(path: &Path) -> Result<Rule, CliError> {
    rule_from_str(&read_to_string(path)?)
}

pub fn read_algebra(path: &Path) -> Result<BiHeytingAlgebra, CliError> {
    let j: AlgebraJson = serde_json::from_str(&read_to_string(path)?).map_err(CliError::json)?;
    j.to_algebra()
}

pub fn read_poset(path: &Path) -> Result<Poset, CliError> {
    let j: PosetJson = serde_json::from_str(&read_to_string(path)?).map_err(CliError::json)?;
    j.to_poset()
}

/// `chainN` names the `N`-element chain; anything else is an algebra file.
pub fn algebra_source(spec: &str) -> Result<BiHeytingAlgebra, CliError> {
    match spec.strip_prefix("chain").map(str::parse::<usize>) {
        Some(Ok(n)) => Ok(BiHeytingAlgebra::chain(n)?),
        _ => read_algebra(Path::new(spec)),
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
