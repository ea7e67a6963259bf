//! Finite commutative lattice-ordered monoids `(M, ∨, ∧, +, 0)`.

use serde::Deserialize;

use super::{AlgebraError, Elem, Table};

/// A finite distributive lattice with a commutative monoid operation that
/// distributes over both lattice operations. The monoid unit need not be a
/// lattice bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLMonoid {
    name: String,
    join: Table,
    meet: Table,
    plus: Table,
    zero: Elem,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LMonoidDoc {
    name: Option<String>,
    size: usize,
    zero: usize,
    plus: Vec<Vec<i64>>,
    join: Option<Vec<Vec<i64>>>,
    meet: Option<Vec<Vec<i64>>>,
    chain: Option<bool>,
}

impl FiniteLMonoid {
    pub fn new(
        name: impl Into<String>,
        zero: Elem,
        join: Table,
        meet: Table,
        plus: Table,
    ) -> Result<Self, AlgebraError> {
        let n = join.size();
        if n == 0 || meet.size() != n || plus.size() != n || zero >= n {
            return Err(AlgebraError::NotAnLMonoid(
                "tables and unit must agree in size".into(),
            ));
        }
        let m = FiniteLMonoid {
            name: name.into(),
            join,
            meet,
            plus,
            zero,
        };
        m.validate()?;
        Ok(m)
    }

    /// `+` on the chain `0..size` with unit `zero`.
    pub fn on_chain(
        name: impl Into<String>,
        zero: Elem,
        plus: Table,
    ) -> Result<Self, AlgebraError> {
        let n = plus.size();
        Self::new(
            name,
            zero,
            Table::from_fn(n, |a, b| a.max(b)),
            Table::from_fn(n, |a, b| a.min(b)),
            plus,
        )
    }

    /// Truncated addition on `0 < 1 < … < n-1`.
    pub fn cn_delta_star(n: usize) -> Self {
        Self::on_chain(
            format!("C{n}D*"),
            0,
            Table::from_fn(n, |a, b| (a + b).min(n - 1)),
        )
        .expect("truncated addition is an l-monoid")
    }

    /// Order dual of [`Self::cn_delta_star`]: unit at the top.
    pub fn cn_nabla_star(n: usize) -> Self {
        Self::on_chain(
            format!("C{n}N*"),
            n - 1,
            Table::from_fn(n, |a, b| (a + b).saturating_sub(n - 1)),
        )
        .expect("dual truncated addition is an l-monoid")
    }

    /// `+ = ∨` on an `n`-chain, unit at the bottom.
    pub fn lm_delta_star(n: usize) -> Self {
        Self::on_chain(format!("LM{n}D*"), 0, Table::from_fn(n, |a, b| a.max(b)))
            .expect("join is an l-monoid")
    }

    /// `+ = ∧` on an `n`-chain, unit at the top.
    pub fn lm_nabla_star(n: usize) -> Self {
        Self::on_chain(
            format!("LM{n}N*"),
            n - 1,
            Table::from_fn(n, |a, b| a.min(b)),
        )
        .expect("meet is an l-monoid")
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let doc: LMonoidDoc = serde_json::from_str(text)
            .map_err(|e| AlgebraError::MalformedDocument(e.to_string()))?;
        let name = doc.name.unwrap_or_default();
        let plus = Table::from_signed_rows("plus", doc.size, &doc.plus)?;
        if doc.zero >= doc.size {
            return Err(AlgebraError::MalformedDocument(format!(
                "zero={} must lie in 0..{}",
                doc.zero, doc.size
            )));
        }
        match (doc.join, doc.meet, doc.chain) {
            (Some(join), Some(meet), _) => {
                let join = Table::from_signed_rows("join", doc.size, &join)?;
                let meet = Table::from_signed_rows("meet", doc.size, &meet)?;
                Self::new(name, doc.zero, join, meet, plus)
            }
            (None, None, Some(true)) => Self::on_chain(name, doc.zero, plus),
            _ => Err(AlgebraError::MalformedDocument(
                "an l-monoid needs both `join` and `meet`, or `\"chain\": true`".into(),
            )),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.plus.size()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join.get(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet.get(a, b)
    }

    pub fn plus(&self, a: Elem, b: Elem) -> Elem {
        self.plus.get(a, b)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.size();
        let fail = |what: &str, w: &[Elem]| {
            Err(AlgebraError::NotAnLMonoid(format!("{what} fails at {w:?}")))
        };
        for x in 0..n {
            if self.join(x, x) != x || self.meet(x, x) != x {
                return fail("lattice idempotence", &[x]);
            }
            if self.plus(x, self.zero) != x {
                return fail("monoid unit", &[x]);
            }
            for y in 0..n {
                if self.join(x, y) != self.join(y, x) || self.meet(x, y) != self.meet(y, x) {
                    return fail("lattice commutativity", &[x, y]);
                }
                if self.join(x, self.meet(x, y)) != x || self.meet(x, self.join(x, y)) != x {
                    return fail("absorption", &[x, y]);
                }
                if self.plus(x, y) != self.plus(y, x) {
                    return fail("commutativity of +", &[x, y]);
                }
                for z in 0..n {
                    if self.join(self.join(x, y), z) != self.join(x, self.join(y, z))
                        || self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z))
                    {
                        return fail("lattice associativity", &[x, y, z]);
                    }
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return fail("distributivity", &[x, y, z]);
                    }
                    if self.plus(self.plus(x, y), z) != self.plus(x, self.plus(y, z)) {
                        return fail("associativity of +", &[x, y, z]);
                    }
                    if self.plus(x, self.join(y, z)) != self.join(self.plus(x, y), self.plus(x, z))
                        || self.plus(x, self.meet(y, z))
                            != self.meet(self.plus(x, y), self.plus(x, z))
                    {
                        return fail("+ distributing over the lattice", &[x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }
}
