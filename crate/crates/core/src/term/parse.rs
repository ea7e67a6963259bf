//! Recursive-descent parser for terms, equations and quasi-equations.
//!
//! Binding strength from loosest to tightest: `v`, `^^`, `+`, `*`, the scalar
//! prefix `n t`, and the power suffix `t^n`. Binary operators associate to the
//! left. The grammar is written out in `docs/formats.md`.

use std::sync::Arc;

use thiserror::Error;

use super::{Equation, QuasiEquation, Term};
use crate::algebra::Op;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct SyntaxError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Equation(Equation),
    Quasi(QuasiEquation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u32),
    Var(usize),
    Bin(Op),
    Caret,
    LParen,
    RParen,
    Equiv,
    Amp,
    Implies,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Var(i) => format!("variable {}", super::var_name(*i)),
        Tok::Bin(op) => format!("operator `{}`", op.symbol()),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Equiv => "`≈`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Implies => "`=>`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: String| SyntaxError { position, message };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let digits = |from: usize| {
            let mut j = from;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok =
            match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '0'..='9' => {
                    let end = digits(i);
                    let text: String = chars[i..end].iter().collect();
                    i = end;
                    Tok::Num(
                        text.parse()
                            .map_err(|_| err(start, format!("number `{text}` is too large")))?,
                    )
                }
                'x' => {
                    let end = digits(i + 1);
                    if end == i + 1 {
                        i += 1;
                        Tok::Var(0)
                    } else {
                        let text: String = chars[i + 1..end].iter().collect();
                        i = end;
                        Tok::Var(text.parse().map_err(|_| {
                            err(start, format!("variable index `{text}` is too large"))
                        })?)
                    }
                }
                'y' => {
                    i += 1;
                    Tok::Var(1)
                }
                'z' => {
                    i += 1;
                    Tok::Var(2)
                }
                'v' | '∨' => {
                    i += 1;
                    Tok::Bin(Op::Join)
                }
                '∧' => {
                    i += 1;
                    Tok::Bin(Op::Meet)
                }
                '+' | '⊕' => {
                    i += 1;
                    Tok::Bin(Op::Oplus)
                }
                '*' | '⊙' => {
                    i += 1;
                    Tok::Bin(Op::Odot)
                }
                '^' => {
                    if chars.get(i + 1) == Some(&'^') {
                        i += 2;
                        Tok::Bin(Op::Meet)
                    } else {
                        i += 1;
                        Tok::Caret
                    }
                }
                '(' => {
                    i += 1;
                    Tok::LParen
                }
                ')' => {
                    i += 1;
                    Tok::RParen
                }
                '≈' => {
                    i += 1;
                    Tok::Equiv
                }
                '=' => {
                    if chars.get(i + 1) == Some(&'>') {
                        i += 2;
                        Tok::Implies
                    } else {
                        i += 1;
                        Tok::Equiv
                    }
                }
                '⇒' => {
                    i += 1;
                    Tok::Implies
                }
                '&' => {
                    i += 1;
                    Tok::Amp
                }
                other => return Err(err(start, format!("unexpected character `{other}`"))),
            };
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        self.error(format!(
            "expected {expected}, found {}",
            describe(self.peek())
        ))
    }

    fn binary_level(&mut self, level: usize) -> Result<Term, SyntaxError> {
        const LEVELS: [Op; 4] = [Op::Join, Op::Meet, Op::Oplus, Op::Odot];
        if level == LEVELS.len() {
            return self.scaled();
        }
        let mut acc = self.binary_level(level + 1)?;
        while *self.peek() == Tok::Bin(LEVELS[level]) {
            self.bump();
            let rhs = self.binary_level(level + 1)?;
            acc = Term::binary(LEVELS[level], acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        self.binary_level(0)
    }

    fn starts_operand(t: &Tok) -> bool {
        matches!(t, Tok::Num(_) | Tok::Var(_) | Tok::LParen)
    }

    fn scaled(&mut self) -> Result<Term, SyntaxError> {
        if let Tok::Num(n) = *self.peek() {
            if Self::starts_operand(self.peek_at(1)) {
                self.bump();
                let inner = self.scaled()?;
                return Ok(Term::multiple(n, inner));
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Term, SyntaxError> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let Tok::Num(n) = *self.peek() else {
                return self.unexpected("an exponent");
            };
            self.bump();
            t = Term::power(Arc::new(t), n);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Var(i) => {
                self.bump();
                Ok(Term::Var(i))
            }
            Tok::Num(0) => {
                self.bump();
                Ok(Term::zero())
            }
            Tok::Num(1) => {
                self.bump();
                Ok(Term::one())
            }
            Tok::Num(n) => self.error(format!("`{n}` is not a constant; only 0 and 1 are")),
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                if *self.peek() != Tok::RParen {
                    return self.unexpected("`)`");
                }
                self.bump();
                Ok(t)
            }
            _ => self.unexpected("a term"),
        }
    }

    fn equation(&mut self) -> Result<Equation, SyntaxError> {
        let lhs = self.term()?;
        if *self.peek() != Tok::Equiv {
            return self.unexpected("`≈` or `=`");
        }
        self.bump();
        let rhs = self.term()?;
        Ok(Equation::new(lhs, rhs))
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn input(&mut self) -> Result<Parsed, SyntaxError> {
        let lhs = self.term()?;
        if *self.peek() != Tok::Equiv {
            self.finish()?;
            return Ok(Parsed::Term(lhs));
        }
        self.bump();
        let first = Equation::new(lhs, self.term()?);
        if *self.peek() == Tok::End {
            return Ok(Parsed::Equation(first));
        }
        let mut premises = vec![first];
        while *self.peek() == Tok::Amp {
            self.bump();
            premises.push(self.equation()?);
        }
        if *self.peek() != Tok::Implies {
            return self.unexpected("`&`, `=>` or end of input");
        }
        self.bump();
        let conclusion = self.equation()?;
        self.finish()?;
        Ok(Parsed::Quasi(QuasiEquation {
            premises,
            conclusion,
        }))
    }
}

/// Parses a term, an equation or a quasi-equation.
pub fn parse(input: &str) -> Result<Parsed, SyntaxError> {
    Parser {
        toks: lex(input)?,
        pos: 0,
    }
    .input()
}

pub fn parse_term(input: &str) -> Result<Term, SyntaxError> {
    match parse(input)? {
        Parsed::Term(t) => Ok(t),
        _ => Err(SyntaxError {
            position: 0,
            message: "expected a term, found an equation".into(),
        }),
    }
}

pub fn parse_equation(input: &str) -> Result<Equation, SyntaxError> {
    match parse(input)? {
        Parsed::Equation(e) => Ok(e),
        Parsed::Term(_) => Err(SyntaxError {
            position: input.chars().count(),
            message: "expected `≈` or `=`".into(),
        }),
        Parsed::Quasi(_) => Err(SyntaxError {
            position: 0,
            message: "expected an equation, found a quasi-equation".into(),
        }),
    }
}

pub fn parse_quasi(input: &str) -> Result<QuasiEquation, SyntaxError> {
    match parse(input)? {
        Parsed::Quasi(q) => Ok(q),
        _ => Err(SyntaxError {
            position: input.chars().count(),
            message: "expected `=>`".into(),
        }),
    }
}
