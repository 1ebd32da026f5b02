//! ASCII syntax for terms, equations and rules.
//!
//! ```text
//! rule     := [ equation { ";" equation } ] "|-" equation
//! equation := term "=" term
//! term     := join [ ("->" | "-<") term ]          right-associative
//! join     := meet { "|" meet }
//! meet     := unary { "&" unary }
//! unary    := ("!" | "~") unary | "x" digits | "0" | "1" | "(" term ")"
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::term::{Equation, Rule, Term};
use crate::algebra::Op;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Zero,
    One,
    And,
    Or,
    Imp,
    Coimp,
    Not,
    Tilde,
    LParen,
    RParen,
    Eq,
    Semi,
    Turnstile,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Var(i) => write!(f, "x{i}"),
            Tok::Zero => f.write_str("0"),
            Tok::One => f.write_str("1"),
            Tok::And => f.write_str("&"),
            Tok::Or => f.write_str("|"),
            Tok::Imp => f.write_str("->"),
            Tok::Coimp => f.write_str("-<"),
            Tok::Not => f.write_str("!"),
            Tok::Tilde => f.write_str("~"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Eq => f.write_str("="),
            Tok::Semi => f.write_str(";"),
            Tok::Turnstile => f.write_str("|-"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'#' => {
                // comment to end of line
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'|' if two == Some(b"|-") => {
                i += 2;
                Tok::Turnstile
            }
            b'-' if two == Some(b"->") => {
                i += 2;
                Tok::Imp
            }
            b'-' if two == Some(b"-<") => {
                i += 2;
                Tok::Coimp
            }
            b'x' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: usize =
                    src[digits..i].parse().map_err(|_| err(start, "expected a variable index after 'x'"))?;
                if n == 0 {
                    return Err(err(start, "variables are numbered from x1"));
                }
                Tok::Var(n)
            }
            _ => {
                i += 1;
                match c {
                    b'0' => Tok::Zero,
                    b'1' => Tok::One,
                    b'&' => Tok::And,
                    b'|' => Tok::Or,
                    b'!' => Tok::Not,
                    b'~' => Tok::Tilde,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b'=' => Tok::Eq,
                    b';' => Tok::Semi,
                    _ => {
                        let ch = src[start..].chars().next().unwrap();
                        return Err(err(start, alloc::format!("unexpected character {ch:?}")));
                    }
                }
            }
        };
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, at: 0 })
    }

    fn peek(&self) -> Tok {
        self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let pos = self.pos();
        let got = self.bump();
        if got == want {
            Ok(())
        } else {
            Err(err(pos, alloc::format!("expected {want}, found {got}")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let left = self.join()?;
        let op = match self.peek() {
            Tok::Imp => Op::Imp,
            Tok::Coimp => Op::Coimp,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.term()?;
        Ok(Term::bin(op, left, right))
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut t = self.meet()?;
        while self.peek() == Tok::Or {
            self.bump();
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while self.peek() == Tok::And {
            self.bump();
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Not => Ok(Term::neg(self.unary()?)),
            Tok::Tilde => Ok(Term::coneg(self.unary()?)),
            Tok::Var(i) => Ok(Term::Var(i)),
            Tok::Zero => Ok(Term::Zero),
            Tok::One => Ok(Term::One),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => Err(err(pos, alloc::format!("expected a term, found {other}"))),
        }
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let l = self.term()?;
        self.expect(Tok::Eq)?;
        let r = self.term()?;
        Ok(Equation::new(l, r))
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let mut premises = Vec::new();
        if self.peek() != Tok::Turnstile {
            premises.push(self.equation()?);
            while self.peek() == Tok::Semi {
                self.bump();
                premises.push(self.equation()?);
            }
        }
        self.expect(Tok::Turnstile)?;
        let conclusion = self.equation()?;
        Ok(Rule::new(premises, conclusion))
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(src: &str) -> Result<Equation, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.equation()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_rule(src: &str) -> Result<Rule, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.rule()?;
    p.finish()?;
    Ok(r)
}

/// Semicolon-separated equations, as in the body of a positive sentence.
pub fn parse_equations(src: &str) -> Result<Vec<Equation>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = alloc::vec![p.equation()?];
    while p.peek() == Tok::Semi {
        p.bump();
        out.push(p.equation()?);
    }
    p.finish()?;
    Ok(out)
}

impl core::str::FromStr for Rule {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rule(s)
    }
}

impl core::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn dense_codense_rule_parses() {
        let r = parse_rule("!x1 = 0 ; ~x1 = 1 |- 0 = 1").unwrap();
        assert_eq!(r, Rule::dense_codense());
        assert_eq!(r.arity, 1);
        assert_eq!(r.to_string(), "!x1 = 0 ; ~x1 = 1 |- 0 = 1");
    }

    #[test]
    fn precedence_and_associativity() {
        let t = parse_term("x1 & x2 | x3 -> x4 -< x5").unwrap();
        let want = Term::imp(
            Term::join(Term::meet(Term::var(1), Term::var(2)), Term::var(3)),
            Term::coimp(Term::var(4), Term::var(5)),
        );
        assert_eq!(t, want);
        assert_eq!(parse_term("!~x1").unwrap(), Term::neg(Term::coneg(Term::var(1))));
        assert_eq!(parse_term("(x1 -> x2) -> x3").unwrap().to_string(), "(x1 -> x2) -> x3");
        assert_eq!(parse_term("x1 -> (x2 -> x3)").unwrap().to_string(), "x1 -> x2 -> x3");
        assert_eq!(parse_term("x1 & (x2 & x3)").unwrap().to_string(), "x1 & (x2 & x3)");
        assert_eq!(parse_term("!(x1 | 0)").unwrap().to_string(), "!(x1 | 0)");
    }

    #[test]
    fn premise_free_rule() {
        let r = parse_rule("|- x1 | !x1 = 1").unwrap();
        assert!(r.premises.is_empty());
        assert_eq!(r.to_string(), "|- x1 | !x1 = 1");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_rule("x1 = 1 |- ").unwrap_err().pos, 10);
        assert_eq!(parse_term("x0").unwrap_err().pos, 0);
        assert_eq!(parse_term("x1 $ x2").unwrap_err().pos, 3);
        assert!(parse_term("(x1").is_err());
        assert!(parse_rule("x1 = 1").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let r = parse_rule("# dense and co-dense\n!x1 = 0 ; ~x1 = 1\n|- 0 = 1\n").unwrap();
        assert_eq!(r, Rule::dense_codense());
    }
}
