//! Terms, equations and quasi-equations over the signature `(∨, ∧, ⊕, ⊙, 0, 1)`.
//!
//! Subterms are reference counted so that large families such as the `τ` terms can
//! share structure; evaluation memoizes on node identity.

mod eval;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use eval::{eval, satisfies, satisfies_all, satisfies_quasi, Assignment, EvalError, Verdict};
pub use parse::{parse, parse_equation, parse_quasi, parse_term, Parsed, SyntaxError};

use crate::algebra::Op;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Zero,
    One,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(Constant),
    Join(Arc<Term>, Arc<Term>),
    Meet(Arc<Term>, Arc<Term>),
    Oplus(Arc<Term>, Arc<Term>),
    Odot(Arc<Term>, Arc<Term>),
}

/// `x`, `y`, `z` for the first three variables, `x3`, `x4`, … afterwards.
pub fn var_name(index: usize) -> String {
    match index {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        i => format!("x{i}"),
    }
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn x() -> Term {
        Term::Var(0)
    }

    pub fn zero() -> Term {
        Term::Const(Constant::Zero)
    }

    pub fn one() -> Term {
        Term::Const(Constant::One)
    }

    pub fn binary(op: Op, a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        let (a, b) = (a.into(), b.into());
        match op {
            Op::Join => Term::Join(a, b),
            Op::Meet => Term::Meet(a, b),
            Op::Oplus => Term::Oplus(a, b),
            Op::Odot => Term::Odot(a, b),
        }
    }

    pub fn join(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Join(a.into(), b.into())
    }

    pub fn meet(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Meet(a.into(), b.into())
    }

    pub fn oplus(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Oplus(a.into(), b.into())
    }

    pub fn odot(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Odot(a.into(), b.into())
    }

    /// `n t = t ⊕ t ⊕ … ⊕ t`, nested to the left; `0 t` is the constant `0`.
    pub fn multiple(n: u32, t: impl Into<Arc<Term>>) -> Term {
        Self::fold(Op::Oplus, Term::zero(), n, t.into())
    }

    /// `t^n = t ⊙ t ⊙ … ⊙ t`, nested to the left; `t^0` is the constant `1`.
    pub fn power(t: impl Into<Arc<Term>>, n: u32) -> Term {
        Self::fold(Op::Odot, Term::one(), n, t.into())
    }

    fn fold(op: Op, empty: Term, n: u32, t: Arc<Term>) -> Term {
        if n == 0 {
            return empty;
        }
        let mut acc = t.clone();
        for _ in 1..n {
            acc = Arc::new(Term::binary(op, acc, t.clone()));
        }
        Arc::unwrap_or_clone(acc)
    }

    pub fn op(&self) -> Option<(Op, &Arc<Term>, &Arc<Term>)> {
        match self {
            Term::Join(a, b) => Some((Op::Join, a, b)),
            Term::Meet(a, b) => Some((Op::Meet, a, b)),
            Term::Oplus(a, b) => Some((Op::Oplus, a, b)),
            Term::Odot(a, b) => Some((Op::Odot, a, b)),
            _ => None,
        }
    }

    /// Variable indices occurring in the term, ascending.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut seen = std::collections::HashSet::new();
        collect_vars(self, &mut out, &mut seen);
        out
    }
}

fn collect_vars(
    t: &Term,
    out: &mut BTreeSet<usize>,
    seen: &mut std::collections::HashSet<*const Term>,
) {
    match t {
        Term::Var(i) => {
            out.insert(*i);
        }
        Term::Const(_) => {}
        _ => {
            let (_, a, b) = t.op().expect("binary node");
            for child in [a, b] {
                if seen.insert(Arc::as_ptr(child)) {
                    collect_vars(child, out, seen);
                }
            }
        }
    }
}

fn precedence(t: &Term) -> u8 {
    match t {
        Term::Join(..) => 1,
        Term::Meet(..) => 2,
        Term::Oplus(..) => 3,
        Term::Odot(..) => 4,
        Term::Var(_) | Term::Const(_) => 9,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => f.write_str(&var_name(*i)),
            Term::Const(Constant::Zero) => f.write_str("0"),
            Term::Const(Constant::One) => f.write_str("1"),
            _ => {
                let (op, a, b) = self.op().expect("binary node");
                let p = precedence(self);
                if precedence(a) < p {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {} ", op.symbol())?;
                if precedence(b) <= p {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

/// `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

/// `p₁ & … & pₖ ⇒ c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiEquation {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiEquation {
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut v = self.conclusion.variables();
        for p in &self.premises {
            v.extend(p.variables());
        }
        v
    }
}

impl fmt::Display for QuasiEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, " => {}", self.conclusion)
    }
}
