//! Term evaluation and exhaustive equation checking.
//!
//! Checking an equation evaluates every subterm once over the whole assignment
//! space, enumerated lexicographically with the lowest variable index most
//! significant, so the first failing index is the lexicographically least
//! counterexample.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use super::{var_name, Constant, Equation, QuasiEquation, Term};
use crate::algebra::{Elem, FiniteAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value assigned to variable {}", var_name(*.0))]
    MissingAssignment(usize),
    #[error("value {value} for variable {} is outside 0..{size}", var_name(*var))]
    ElementOutOfRange {
        var: usize,
        value: Elem,
        size: usize,
    },
}

/// Values for the variables of an equation, ascending by variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<(usize, Elem)>);

impl Assignment {
    pub fn get(&self, var: usize) -> Option<Elem> {
        self.0.iter().find(|(v, _)| *v == var).map(|&(_, e)| e)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| format!("{}={e}", var_name(*v)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, e) in &self.0 {
            map.serialize_entry(&var_name(*v), e)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Assignment),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Evaluates `t` with `env[i]` as the value of variable `i`.
pub fn eval(t: &Term, alg: &FiniteAlgebra, env: &[Elem]) -> Result<Elem, EvalError> {
    for v in t.variables() {
        let value = *env.get(v).ok_or(EvalError::MissingAssignment(v))?;
        if value >= alg.size() {
            return Err(EvalError::ElementOutOfRange {
                var: v,
                value,
                size: alg.size(),
            });
        }
    }
    let mut memo = HashMap::new();
    Ok(eval_node(t, alg, env, &mut memo))
}

fn eval_node(
    t: &Term,
    alg: &FiniteAlgebra,
    env: &[Elem],
    memo: &mut HashMap<*const Term, Elem>,
) -> Elem {
    match t {
        Term::Var(i) => env[*i],
        Term::Const(Constant::Zero) => alg.zero(),
        Term::Const(Constant::One) => alg.one(),
        _ => {
            let (op, a, b) = t.op().expect("binary node");
            let mut child = |c: &Arc<Term>| {
                let key = Arc::as_ptr(c);
                if let Some(&v) = memo.get(&key) {
                    return v;
                }
                let v = eval_node(c, alg, env, memo);
                memo.insert(key, v);
                v
            };
            let (va, vb) = (child(a), child(b));
            alg.apply(op, va, vb)
        }
    }
}

/// Value vectors of subterms over every assignment of a fixed variable list.
struct Grid<'a> {
    alg: &'a FiniteAlgebra,
    vars: Vec<usize>,
    count: usize,
    memo: HashMap<*const Term, Arc<[u8]>>,
}

impl<'a> Grid<'a> {
    fn new(alg: &'a FiniteAlgebra, vars: Vec<usize>) -> Self {
        let count = alg
            .size()
            .checked_pow(vars.len() as u32)
            .expect("assignment space fits in memory");
        Grid {
            alg,
            vars,
            count,
            memo: HashMap::new(),
        }
    }

    fn values(&mut self, t: &Term) -> Arc<[u8]> {
        let n = self.alg.size();
        match t {
            Term::Var(i) => {
                let p = self
                    .vars
                    .iter()
                    .position(|v| v == i)
                    .expect("variable in grid");
                let stride = n.pow((self.vars.len() - 1 - p) as u32);
                (0..self.count).map(|a| ((a / stride) % n) as u8).collect()
            }
            Term::Const(c) => {
                let v = match c {
                    Constant::Zero => self.alg.zero(),
                    Constant::One => self.alg.one(),
                } as u8;
                vec![v; self.count].into()
            }
            _ => {
                let (op, a, b) = t.op().expect("binary node");
                let va = self.child(a);
                let vb = self.child(b);
                let table = self.alg.table(op);
                va.iter()
                    .zip(vb.iter())
                    .map(|(&x, &y)| table.get(x as Elem, y as Elem) as u8)
                    .collect()
            }
        }
    }

    fn child(&mut self, c: &Arc<Term>) -> Arc<[u8]> {
        let key = Arc::as_ptr(c);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.values(c);
        self.memo.insert(key, v.clone());
        v
    }

    /// The assignment at `index`, restricted to `vars`.
    fn assignment(&self, index: usize, vars: &[usize]) -> Assignment {
        let n = self.alg.size();
        let k = self.vars.len();
        Assignment(
            self.vars
                .iter()
                .enumerate()
                .filter(|(_, v)| vars.contains(v))
                .map(|(p, &v)| (v, (index / n.pow((k - 1 - p) as u32)) % n))
                .collect(),
        )
    }
}

/// Exhaustively checks `alg ⊨ eq`.
pub fn satisfies(alg: &FiniteAlgebra, eq: &Equation) -> Verdict {
    match satisfies_all(alg, std::slice::from_ref(eq)) {
        Ok(()) => Verdict::Holds,
        Err((_, w)) => Verdict::Fails(w),
    }
}

/// Checks every equation, sharing subterm evaluations across the set. Returns the
/// index of the first failing equation with its least counterexample.
pub fn satisfies_all(alg: &FiniteAlgebra, eqs: &[Equation]) -> Result<(), (usize, Assignment)> {
    let mut vars = std::collections::BTreeSet::new();
    for e in eqs {
        vars.extend(e.variables());
    }
    let mut grid = Grid::new(alg, vars.into_iter().collect());
    for (i, e) in eqs.iter().enumerate() {
        let l = grid.values(&e.lhs);
        let r = grid.values(&e.rhs);
        if let Some(a) = (0..grid.count).find(|&a| l[a] != r[a]) {
            let own: Vec<usize> = e.variables().into_iter().collect();
            return Err((i, grid.assignment(a, &own)));
        }
    }
    Ok(())
}

/// Exhaustively checks a quasi-equation.
pub fn satisfies_quasi(alg: &FiniteAlgebra, q: &QuasiEquation) -> Verdict {
    let vars: Vec<usize> = q.variables().into_iter().collect();
    let mut grid = Grid::new(alg, vars.clone());
    let mut premise = vec![true; grid.count];
    for p in &q.premises {
        let l = grid.values(&p.lhs);
        let r = grid.values(&p.rhs);
        for (a, ok) in premise.iter_mut().enumerate() {
            *ok &= l[a] == r[a];
        }
    }
    let l = grid.values(&q.conclusion.lhs);
    let r = grid.values(&q.conclusion.rhs);
    match (0..grid.count).find(|&a| premise[a] && l[a] != r[a]) {
        Some(a) => Verdict::Fails(grid.assignment(a, &vars)),
        None => Verdict::Holds,
    }
}
