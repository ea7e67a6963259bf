//! The `τ_{n,k}` terms, the axiom sets `Φ_n` and `Σ_I`, and the classification of
//! varieties generated by finite positive MV-algebras through divisor-closed sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::axioms::{is_mv_monoid, is_positive_mv};
use crate::constructions::ln_plus;
use crate::morphisms::{hs_closure, MorphismError};
use crate::term::{satisfies_all, Assignment, Constant, Equation, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error("{missing} divides {member} but is missing from the set")]
    NotDivisorClosed { member: u32, missing: u32 },
    #[error("set entries must be positive integers, got `{0}`")]
    BadEntry(String),
    #[error("generator {0} is not a positive MV-algebra")]
    NotPositiveMV(usize),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// A finite set of positive integers closed under taking divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DivisorClosedSet(BTreeSet<u32>);

impl DivisorClosedSet {
    pub fn new(items: impl IntoIterator<Item = u32>) -> Result<Self, TauError> {
        let set: BTreeSet<u32> = items.into_iter().collect();
        if set.contains(&0) {
            return Err(TauError::BadEntry("0".into()));
        }
        for &n in &set {
            if let Some(d) = (1..n).find(|d| n % d == 0 && !set.contains(d)) {
                return Err(TauError::NotDivisorClosed {
                    member: n,
                    missing: d,
                });
            }
        }
        Ok(DivisorClosedSet(set))
    }

    /// Parses a comma list such as `1,2,3`; the empty string is `∅`.
    pub fn parse(text: &str) -> Result<Self, TauError> {
        let text = text.trim();
        if text.is_empty() {
            return Self::new([]);
        }
        let items = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| TauError::BadEntry(s.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(items)
    }

    /// The set of all divisors of `n`.
    pub fn divisors_of(n: u32) -> Self {
        DivisorClosedSet((1..=n).filter(|d| n.is_multiple_of(*d)).collect())
    }

    /// Every divisor-closed subset of `1..=bound`, in lexicographic order of
    /// sorted member lists.
    pub fn all_within(bound: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << bound) {
            let items = (1..=bound).filter(|i| mask >> (i - 1) & 1 == 1);
            if let Ok(s) = Self::new(items) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| a.0.iter().cmp(b.0.iter()));
        out
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.contains(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `max(∅) = 0`.
    pub fn max(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// `lcm(∅) = 1`.
    pub fn lcm(&self) -> u32 {
        self.0.iter().fold(1, |acc, &n| acc / gcd(acc, n) * n)
    }
}

impl fmt::Display for DivisorClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds `τ_{n,k}` terms bottom-up, sharing every `(n, k)` node.
struct TauBuilder {
    fold: bool,
    alt: bool,
    memo: HashMap<(u32, i64), Arc<Term>>,
    x: Arc<Term>,
}

impl TauBuilder {
    fn new(fold: bool, alt: bool) -> Self {
        TauBuilder {
            fold,
            alt,
            memo: HashMap::new(),
            x: Arc::new(Term::x()),
        }
    }

    fn oplus(&self, a: Arc<Term>, b: Arc<Term>) -> Arc<Term> {
        if self.fold {
            match (&*a, &*b) {
                (Term::Const(Constant::Zero), _) => return b,
                (_, Term::Const(Constant::Zero)) => return a,
                (Term::Const(Constant::One), _) => return a,
                (_, Term::Const(Constant::One)) => return b,
                _ => {}
            }
        }
        Arc::new(Term::Oplus(a, b))
    }

    fn odot(&self, a: Arc<Term>, b: Arc<Term>) -> Arc<Term> {
        if self.fold {
            match (&*a, &*b) {
                (Term::Const(Constant::One), _) => return b,
                (_, Term::Const(Constant::One)) => return a,
                (Term::Const(Constant::Zero), _) => return a,
                (_, Term::Const(Constant::Zero)) => return b,
                _ => {}
            }
        }
        Arc::new(Term::Odot(a, b))
    }

    fn get(&mut self, n: u32, k: i64) -> Arc<Term> {
        if let Some(t) = self.memo.get(&(n, k)) {
            return t.clone();
        }
        let t = if n == 0 {
            Arc::new(if k <= -1 { Term::one() } else { Term::zero() })
        } else if self.fold && k <= -1 {
            Arc::new(Term::one())
        } else if self.fold && k >= n as i64 {
            Arc::new(Term::zero())
        } else if self.alt {
            // (τ_{n-1,k-1} ⊙ x) ⊕ τ_{n-1,k}
            let prev = self.get(n - 1, k - 1);
            let same = self.get(n - 1, k);
            let left = self.odot(prev, self.x.clone());
            self.oplus(left, same)
        } else {
            // τ_{n-1,k-1} ⊙ (x ⊕ τ_{n-1,k})
            let prev = self.get(n - 1, k - 1);
            let same = self.get(n - 1, k);
            let right = self.oplus(self.x.clone(), same);
            self.odot(prev, right)
        };
        self.memo.insert((n, k), t.clone());
        t
    }
}

/// `τ_{n,k}(x)` from `τ_{n+1,k} = τ_{n,k−1} ⊙ (x ⊕ τ_{n,k})`, constant-folded.
pub fn tau(n: u32, k: i64) -> Term {
    Arc::unwrap_or_clone(TauBuilder::new(true, false).get(n, k))
}

/// `τ_{n,k}(x)` from the recursion without any folding.
pub fn tau_unfolded(n: u32, k: i64) -> Term {
    Arc::unwrap_or_clone(TauBuilder::new(false, false).get(n, k))
}

/// `τ_{n,k}(x)` from `τ_{n+1,k} = (τ_{n,k−1} ⊙ x) ⊕ τ_{n,k}`, constant-folded.
pub fn tau_alt(n: u32, k: i64) -> Term {
    Arc::unwrap_or_clone(TauBuilder::new(true, true).get(n, k))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum AlmostMinimalTag {
    #[serde(rename = "CD")]
    CDelta,
    #[serde(rename = "CN")]
    CNabla,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AxiomSetName {
    Phi(u32),
    Sigma(DivisorClosedSet),
    AlmostMinimal(AlmostMinimalTag),
}

impl fmt::Display for AxiomSetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomSetName::Phi(n) => write!(f, "Phi({n})"),
            AxiomSetName::Sigma(i) => write!(f, "Sigma({i})"),
            AxiomSetName::AlmostMinimal(AlmostMinimalTag::CDelta) => {
                f.write_str("AlmostMinimal(CD)")
            }
            AxiomSetName::AlmostMinimal(AlmostMinimalTag::CNabla) => {
                f.write_str("AlmostMinimal(CN)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSet {
    pub name: AxiomSetName,
    pub equations: Vec<Equation>,
}

/// Outcome of checking an axiom set on one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_equation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Assignment>,
}

impl AxiomSet {
    pub fn check(&self, a: &FiniteAlgebra) -> SetVerdict {
        match satisfies_all(a, &self.equations) {
            Ok(()) => SetVerdict {
                holds: true,
                failing_equation: None,
                witness: None,
            },
            Err((i, w)) => SetVerdict {
                holds: false,
                failing_equation: Some(i),
                witness: Some(w),
            },
        }
    }

    pub fn holds_in(&self, a: &FiniteAlgebra) -> bool {
        satisfies_all(a, &self.equations).is_ok()
    }
}

/// `Φ_n`: `τ_{n,k}` is ⊕- and ⊙-idempotent for `k = 0..n−1`.
pub fn phi(n: u32) -> AxiomSet {
    assert!(n >= 1, "phi needs n >= 1");
    let mut b = TauBuilder::new(true, false);
    let mut equations = Vec::with_capacity(2 * n as usize);
    for k in 0..n as i64 {
        let t = b.get(n, k);
        equations.push(Equation::new(
            Term::Oplus(t.clone(), t.clone()),
            Arc::unwrap_or_clone(t.clone()),
        ));
        equations.push(Equation::new(
            Term::Odot(t.clone(), t.clone()),
            Arc::unwrap_or_clone(t),
        ));
    }
    AxiomSet {
        name: AxiomSetName::Phi(n),
        equations,
    }
}

/// `Σ_I` with `m = max(I)`: `(m+1)x ≈ mx`, and `m((k−1)x)^k ≈ (kx)^m` for each
/// `1 ≤ k ≤ m` outside `I`.
pub fn sigma(set: &DivisorClosedSet) -> AxiomSet {
    let m = set.max();
    let x = Arc::new(Term::x());
    let mut equations = vec![Equation::new(
        Term::multiple(m + 1, x.clone()),
        Term::multiple(m, x.clone()),
    )];
    for k in (1..=m).filter(|&k| !set.contains(k)) {
        let lhs = Term::multiple(m, Term::power(Term::multiple(k - 1, x.clone()), k));
        let rhs = Term::power(Term::multiple(k, x.clone()), m);
        equations.push(Equation::new(lhs, rhs));
    }
    AxiomSet {
        name: AxiomSetName::Sigma(set.clone()),
        equations,
    }
}

/// `x ⊕ x ≈ x` for the `C₂^Δ` case and `x ⊙ x ≈ x` for `C₂^∇`.
pub fn almost_minimal_axioms(tag: AlmostMinimalTag) -> AxiomSet {
    let x = Arc::new(Term::x());
    let eq = match tag {
        AlmostMinimalTag::CDelta => Equation::new(Term::Oplus(x.clone(), x.clone()), Term::x()),
        AlmostMinimalTag::CNabla => Equation::new(Term::Odot(x.clone(), x.clone()), Term::x()),
    };
    AxiomSet {
        name: AxiomSetName::AlmostMinimal(tag),
        equations: vec![eq],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub mv_monoid: bool,
    pub phi: SetVerdict,
    pub sigma: SetVerdict,
}

/// Checks the equational description of `V(Ł_n⁺ : n ∈ I)`.
pub fn membership(a: &FiniteAlgebra, set: &DivisorClosedSet) -> Membership {
    let mv_monoid = is_mv_monoid(a).passed;
    let phi = phi(set.lcm()).check(a);
    let sigma = sigma(set).check(a);
    Membership {
        member: mv_monoid && phi.holds && sigma.holds,
        mv_monoid,
        phi,
        sigma,
    }
}

pub fn member_of_variety(a: &FiniteAlgebra, set: &DivisorClosedSet) -> bool {
    membership(a, set).member
}

/// `{n : Ł_n⁺ ∈ HS(generators)}` for finite positive MV-algebras.
pub fn classify_variety(generators: &[FiniteAlgebra]) -> Result<DivisorClosedSet, TauError> {
    if let Some(i) = generators.iter().position(|g| !is_positive_mv(g)) {
        return Err(TauError::NotPositiveMV(i));
    }
    let classes = hs_closure(generators)?;
    let mut found = Vec::new();
    for (key, a) in &classes {
        if a.size() >= 2 && *key == ln_plus(a.size() - 1).expect("size >= 2").canonical_key() {
            found.push((a.size() - 1) as u32);
        }
    }
    DivisorClosedSet::new(found)
}
