//! Finite algebras in the signature `(∨, ∧, ⊕, ⊙, 0, 1)` stored as Cayley tables.
//!
//! Elements are the integers `0..size`. When the lattice is a chain and the index
//! order is the lattice order, the algebra carries a chain flag and its JSON form
//! omits the lattice tables.

mod canon;
mod json;
mod lmonoid;

use std::fmt;

use thiserror::Error;

pub use canon::CanonicalKey;
pub use lmonoid::FiniteLMonoid;

/// An element of a finite algebra, identified with its index.
pub type Elem = usize;

/// Largest carrier the table representation can hold.
pub const MAX_SIZE: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("table `{table}` entry [{row}][{col}] = {value} is outside 0..{size}")]
    TableOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: i64,
        size: usize,
    },
    #[error("join/meet do not form a bounded lattice: {law} fails at {witness:?}")]
    NotALattice {
        law: &'static str,
        witness: [Elem; 3],
    },
    #[error("not a commutative lattice-ordered monoid: {0}")]
    NotAnLMonoid(String),
}

/// The four binary operations of the signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Join,
    Meet,
    Oplus,
    Odot,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Join, Op::Meet, Op::Oplus, Op::Odot];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Join => "v",
            Op::Meet => "^^",
            Op::Oplus => "+",
            Op::Odot => "*",
        }
    }
}

/// A square operation table over `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    size: usize,
    cells: Vec<u8>,
}

impl Table {
    pub fn from_fn(size: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        assert!(size <= MAX_SIZE, "table size {size} exceeds {MAX_SIZE}");
        let mut cells = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                let v = f(a, b);
                assert!(v < size, "table value {v} out of range for size {size}");
                cells.push(v as u8);
            }
        }
        Table { size, cells }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self, AlgebraError> {
        let size = rows.len();
        let signed: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect();
        Self::from_signed_rows("table", size, &signed)
    }

    pub(crate) fn from_signed_rows(
        name: &'static str,
        size: usize,
        rows: &[Vec<i64>],
    ) -> Result<Self, AlgebraError> {
        if size == 0 || size > MAX_SIZE {
            return Err(AlgebraError::MalformedDocument(format!(
                "size must be between 1 and {MAX_SIZE}, got {size}"
            )));
        }
        if rows.len() != size {
            return Err(AlgebraError::MalformedDocument(format!(
                "table `{name}` has {} rows, expected {size}",
                rows.len()
            )));
        }
        let mut cells = Vec::with_capacity(size * size);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(AlgebraError::MalformedDocument(format!(
                    "table `{name}` row {row} has {} entries, expected {size}",
                    r.len()
                )));
            }
            for (col, &value) in r.iter().enumerate() {
                if value < 0 || value >= size as i64 {
                    return Err(AlgebraError::TableOutOfRange {
                        table: name,
                        row,
                        col,
                        value,
                        size,
                    });
                }
                cells.push(value as u8);
            }
        }
        Ok(Table { size, cells })
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.cells[a * self.size + b] as Elem
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.cells
            .chunks(self.size.max(1))
            .map(|r| r.iter().map(|&v| v as Elem).collect())
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// The table of the same operation after renaming each element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[Elem]) -> Table {
        let n = self.size;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        Table::from_fn(n, |a, b| perm[self.get(inv[a], inv[b])])
    }

    fn max_table(size: usize) -> Table {
        Table::from_fn(size, |a, b| a.max(b))
    }

    fn min_table(size: usize) -> Table {
        Table::from_fn(size, |a, b| a.min(b))
    }
}

/// A finite algebra `(A, ∨, ∧, ⊕, ⊙, 0, 1)`.
///
/// The constructors only guarantee that `∨, ∧, 0, 1` form a bounded lattice; the
/// remaining MV-monoid laws are checked by [`crate::axioms`].
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    name: String,
    join: Table,
    meet: Table,
    oplus: Table,
    odot: Table,
    zero: Elem,
    one: Elem,
    chain: bool,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.zero == other.zero
            && self.one == other.one
            && self.join == other.join
            && self.meet == other.meet
            && self.oplus == other.oplus
            && self.odot == other.odot
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// An algebra on the chain `0 < 1 < … < size-1`.
    pub fn chain(name: impl Into<String>, oplus: Table, odot: Table) -> Result<Self, AlgebraError> {
        let size = oplus.size();
        if size == 0 || odot.size() != size {
            return Err(AlgebraError::MalformedDocument(
                "oplus and odot must be non-empty tables of equal size".into(),
            ));
        }
        Ok(Self::chain_unchecked(name.into(), oplus, odot))
    }

    pub(crate) fn chain_unchecked(name: String, oplus: Table, odot: Table) -> Self {
        let size = oplus.size();
        FiniteAlgebra {
            name,
            join: Table::max_table(size),
            meet: Table::min_table(size),
            oplus,
            odot,
            zero: 0,
            one: size - 1,
            chain: true,
        }
    }

    /// A chain algebra built from operation closures.
    pub(crate) fn chain_from_fn(
        name: impl Into<String>,
        size: usize,
        oplus: impl Fn(Elem, Elem) -> Elem,
        odot: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        Self::chain_unchecked(
            name.into(),
            Table::from_fn(size, oplus),
            Table::from_fn(size, odot),
        )
    }

    /// An algebra with explicit lattice tables. The chain flag is set when the
    /// lattice happens to be the index-ordered chain.
    pub fn new(
        name: impl Into<String>,
        zero: Elem,
        one: Elem,
        join: Table,
        meet: Table,
        oplus: Table,
        odot: Table,
    ) -> Result<Self, AlgebraError> {
        let size = join.size();
        if size == 0 || [&meet, &oplus, &odot].iter().any(|t| t.size() != size) {
            return Err(AlgebraError::MalformedDocument(
                "all four tables must be non-empty and of equal size".into(),
            ));
        }
        if zero >= size || one >= size {
            return Err(AlgebraError::MalformedDocument(format!(
                "constants zero={zero}, one={one} must lie in 0..{size}"
            )));
        }
        check_bounded_lattice(&join, &meet, zero, one)?;
        let chain = zero == 0
            && one == size - 1
            && join == Table::max_table(size)
            && meet == Table::min_table(size);
        Ok(FiniteAlgebra {
            name: name.into(),
            join,
            meet,
            oplus,
            odot,
            zero,
            one,
            chain,
        })
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        Self::chain_from_fn("trivial", 1, |_, _| 0, |_, _| 0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_chain(&self) -> bool {
        self.chain
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn table(&self, op: Op) -> &Table {
        match op {
            Op::Join => &self.join,
            Op::Meet => &self.meet,
            Op::Oplus => &self.oplus,
            Op::Odot => &self.odot,
        }
    }

    #[inline]
    pub fn apply(&self, op: Op, a: Elem, b: Elem) -> Elem {
        self.table(op).get(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join.get(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet.get(a, b)
    }

    #[inline]
    pub fn oplus(&self, a: Elem, b: Elem) -> Elem {
        self.oplus.get(a, b)
    }

    #[inline]
    pub fn odot(&self, a: Elem, b: Elem) -> Elem {
        self.odot.get(a, b)
    }

    /// Lattice order: `a ≤ b` iff `a ∧ b = a`.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// Whether `∀ i, j: i ∨ j ∈ {i, j}`.
    pub fn is_totally_ordered(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = self.join(i, j);
                v == i || v == j
            })
        })
    }

    /// Renames every element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[Elem]) -> FiniteAlgebra {
        let join = self.join.relabel(perm);
        let meet = self.meet.relabel(perm);
        let size = self.size();
        let zero = perm[self.zero];
        let one = perm[self.one];
        let chain = zero == 0
            && one == size - 1
            && join == Table::max_table(size)
            && meet == Table::min_table(size);
        FiniteAlgebra {
            name: self.name.clone(),
            join,
            meet,
            oplus: self.oplus.relabel(perm),
            odot: self.odot.relabel(perm),
            zero,
            one,
            chain,
        }
    }

    /// If the lattice is a chain, relabel so that index order is lattice order.
    pub fn normalized(self) -> FiniteAlgebra {
        if self.chain || !self.is_totally_ordered() {
            return self;
        }
        let n = self.size();
        let mut perm = vec![0; n];
        for (a, slot) in perm.iter_mut().enumerate() {
            *slot = (0..n).filter(|&b| b != a && self.leq(b, a)).count();
        }
        self.relabel(&perm)
    }

    /// The order dual: reverse the lattice, swap `⊕` with `⊙` and `0` with `1`.
    pub fn order_dual(&self) -> FiniteAlgebra {
        let n = self.size();
        let perm: Vec<Elem> = (0..n).map(|a| n - 1 - a).collect();
        let swapped = FiniteAlgebra {
            name: format!("{}^op", self.name),
            join: self.meet.clone(),
            meet: self.join.clone(),
            oplus: self.odot.clone(),
            odot: self.oplus.clone(),
            zero: self.one,
            one: self.zero,
            chain: false,
        };
        swapped.relabel(&perm)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key(self)
    }

    pub fn is_isomorphic(&self, other: &FiniteAlgebra) -> bool {
        self.size() == other.size() && self.canonical_key() == other.canonical_key()
    }

    /// Subalgebra on the sorted element list `elems`, which must be closed under
    /// every operation and contain both constants.
    pub(crate) fn restrict(&self, elems: &[Elem]) -> FiniteAlgebra {
        let mut index = vec![usize::MAX; self.size()];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i;
        }
        let m = elems.len();
        let t = |op: Op| Table::from_fn(m, |a, b| index[self.apply(op, elems[a], elems[b])]);
        let join = t(Op::Join);
        let meet = t(Op::Meet);
        let zero = index[self.zero];
        let one = index[self.one];
        let chain =
            zero == 0 && one == m - 1 && join == Table::max_table(m) && meet == Table::min_table(m);
        FiniteAlgebra {
            name: format!("sub({})", self.name),
            join,
            meet,
            oplus: t(Op::Oplus),
            odot: t(Op::Odot),
            zero,
            one,
            chain,
        }
        .normalized()
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

fn check_bounded_lattice(
    join: &Table,
    meet: &Table,
    zero: Elem,
    one: Elem,
) -> Result<(), AlgebraError> {
    let n = join.size();
    let fail =
        |law: &'static str, witness: [Elem; 3]| Err(AlgebraError::NotALattice { law, witness });
    for x in 0..n {
        if join.get(x, x) != x || meet.get(x, x) != x {
            return fail("idempotence", [x, x, x]);
        }
        if join.get(x, zero) != x || meet.get(x, one) != x {
            return fail("bounds", [x, zero, one]);
        }
        for y in 0..n {
            if join.get(x, y) != join.get(y, x) || meet.get(x, y) != meet.get(y, x) {
                return fail("commutativity", [x, y, y]);
            }
            if join.get(x, meet.get(x, y)) != x || meet.get(x, join.get(x, y)) != x {
                return fail("absorption", [x, y, y]);
            }
            for z in 0..n {
                if join.get(join.get(x, y), z) != join.get(x, join.get(y, z))
                    || meet.get(meet.get(x, y), z) != meet.get(x, meet.get(y, z))
                {
                    return fail("associativity", [x, y, z]);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond_lattice() -> (Table, Table) {
        // 0 < a, b < 1 with a = 1, b = 2, top = 3
        let join = Table::from_rows(&[
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ])
        .unwrap();
        let meet = Table::from_rows(&[
            vec![0, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 2, 2],
            vec![0, 1, 2, 3],
        ])
        .unwrap();
        (join, meet)
    }

    #[test]
    fn explicit_chain_tables_set_chain_flag() {
        let n = 3;
        let a = FiniteAlgebra::new(
            "c",
            0,
            2,
            Table::max_table(n),
            Table::min_table(n),
            Table::max_table(n),
            Table::min_table(n),
        )
        .unwrap();
        assert!(a.is_chain());
        assert!(a.is_totally_ordered());
    }

    #[test]
    fn diamond_is_not_a_chain() {
        let (join, meet) = diamond_lattice();
        let a = FiniteAlgebra::new("d", 0, 3, join.clone(), meet.clone(), join, meet).unwrap();
        assert!(!a.is_chain());
        assert!(!a.is_totally_ordered());
    }

    #[test]
    fn broken_join_reports_witness() {
        let (mut join, meet) = diamond_lattice();
        join.cells[4 + 2] = 1;
        let err =
            FiniteAlgebra::new("bad", 0, 3, join.clone(), meet.clone(), join, meet).unwrap_err();
        assert!(matches!(err, AlgebraError::NotALattice { .. }));
    }

    #[test]
    fn normalized_reorders_a_scrambled_chain() {
        let c = FiniteAlgebra::chain_from_fn(
            "c",
            4,
            |a, b| (a + b).min(3),
            |a, b| (a + b).saturating_sub(3),
        );
        let scrambled = c.relabel(&[2, 0, 3, 1]);
        assert!(!scrambled.is_chain());
        assert_eq!(scrambled.normalized(), c);
    }

    #[test]
    fn order_dual_is_an_involution() {
        let c = FiniteAlgebra::chain_from_fn("c", 4, |a, b| (a + b).min(3), |a, b| a.min(b));
        let d = c.order_dual();
        assert!(d.is_chain());
        assert_eq!(d.order_dual(), c);
        // ⊙ of the dual is ⊕ read backwards
        assert_eq!(d.odot(2, 2), 3 - c.oplus(1, 1));
    }
}
