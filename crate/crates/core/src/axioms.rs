//! Named axiom suites checked by exhaustive model checking.

use std::sync::LazyLock;

use serde::Serialize;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::term::{
    parse_equation, parse_quasi, satisfies, satisfies_quasi, Assignment, Equation, QuasiEquation,
    Verdict,
};

/// MV-monoid axioms in checking order.
const MV_MONOID_AXIOMS: &[(&str, &str)] = &[
    ("lat.join.comm", "x v y = y v x"),
    ("lat.meet.comm", "x ^^ y = y ^^ x"),
    ("lat.join.assoc", "(x v y) v z = x v (y v z)"),
    ("lat.meet.assoc", "(x ^^ y) ^^ z = x ^^ (y ^^ z)"),
    ("lat.join.idem", "x v x = x"),
    ("lat.meet.idem", "x ^^ x = x"),
    ("lat.absorb.1", "x v (x ^^ y) = x"),
    ("lat.absorb.2", "x ^^ (x v y) = x"),
    ("lat.dist", "x ^^ (y v z) = (x ^^ y) v (x ^^ z)"),
    ("lat.bound.0", "x v 0 = x"),
    ("lat.bound.1", "x ^^ 1 = x"),
    ("oplus.comm", "x + y = y + x"),
    ("oplus.assoc", "(x + y) + z = x + (y + z)"),
    ("oplus.unit", "x + 0 = x"),
    ("odot.comm", "x * y = y * x"),
    ("odot.assoc", "(x * y) * z = x * (y * z)"),
    ("odot.unit", "x * 1 = x"),
    ("dist.oplus.join", "x + (y v z) = (x + y) v (x + z)"),
    ("dist.oplus.meet", "x + (y ^^ z) = (x + y) ^^ (x + z)"),
    ("dist.odot.join", "x * (y v z) = (x * y) v (x * z)"),
    ("dist.odot.meet", "x * (y ^^ z) = (x * y) ^^ (x * z)"),
    (
        "conn.1",
        "(x + y) * ((x * y) + z) = (x * (y + z)) + (y * z)",
    ),
    (
        "conn.2",
        "(x * y) + ((x + y) * z) = (x + (y * z)) * (y + z)",
    ),
    ("conn.3", "(x * y) + z = ((x + y) * ((x * y) + z)) v z"),
    ("conn.4", "(x + y) * z = ((x * y) + ((x + y) * z)) ^^ z"),
];

static MV_MONOID: LazyLock<Vec<(&'static str, Equation)>> = LazyLock::new(|| {
    MV_MONOID_AXIOMS
        .iter()
        .map(|&(name, text)| (name, parse_equation(text).expect("axiom text parses")))
        .collect()
});

static CANCELLATION: LazyLock<QuasiEquation> = LazyLock::new(|| {
    parse_quasi("x + z = y + z & x * z = y * z => x = y").expect("cancellation parses")
});

/// The named MV-monoid axioms in checking order.
pub fn mv_monoid_axioms() -> &'static [(&'static str, Equation)] {
    &MV_MONOID
}

/// `x ⊕ z ≈ y ⊕ z & x ⊙ z ≈ y ⊙ z ⇒ x ≈ y`.
pub fn cancellation() -> &'static QuasiEquation {
    &CANCELLATION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn failed(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

/// Checks every MV-monoid axiom and reports each failing one with its least
/// counterexample.
pub fn is_mv_monoid(a: &FiniteAlgebra) -> AxiomReport {
    let failures: Vec<AxiomFailure> = MV_MONOID
        .iter()
        .filter_map(|(name, eq)| match satisfies(a, eq) {
            Verdict::Holds => None,
            Verdict::Fails(witness) => Some(AxiomFailure {
                axiom: (*name).to_string(),
                witness,
            }),
        })
        .collect();
    AxiomReport {
        passed: failures.is_empty(),
        failures,
    }
}

pub fn is_cancellative(a: &FiniteAlgebra) -> Verdict {
    satisfies_quasi(a, &CANCELLATION)
}

/// An MV-monoid satisfying the cancellation quasi-equation.
pub fn is_positive_mv(a: &FiniteAlgebra) -> bool {
    is_mv_monoid(a).passed && is_cancellative(a).holds()
}

/// Nontrivial, totally ordered, and `x ⊕ y = 1` or `x ⊙ y = 0` for all `x, y`.
pub fn si_necessary_condition(a: &FiniteAlgebra) -> bool {
    let n = a.size();
    !a.is_trivial()
        && a.is_totally_ordered()
        && (0..n).all(|x| (0..n).all(|y| a.oplus(x, y) == a.one() || a.odot(x, y) == a.zero()))
}

/// `x0 ⊕ x1 = x0` and `x0 ⊙ x1 = x1`.
pub fn is_good_pair(a: &FiniteAlgebra, x0: Elem, x1: Elem) -> bool {
    a.oplus(x0, x1) == x0 && a.odot(x0, x1) == x1
}
