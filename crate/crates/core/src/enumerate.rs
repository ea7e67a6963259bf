//! Exhaustive enumeration of MV-monoids with a fixed lattice reduct.
//!
//! On an `n`-chain the `⊕` tables are built cell by cell over the upper triangle
//! of the inner elements, in row-major order with smaller values tried first.
//! Each cell is bounded below by monotonicity (which also gives `x ⊕ y ≥ x ∨ y`),
//! and associativity is checked on every triple whose lookups are already
//! defined. The `⊙` tables are exactly the order duals of the `⊕` tables, so they
//! are derived rather than searched. Pairs are then filtered by the four
//! connecting axioms, which are the only MV-monoid laws not already enforced.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, CanonicalKey, Elem, FiniteAlgebra, Table};
use crate::axioms::{is_cancellative, si_necessary_condition};
use crate::congruence::{is_subdirectly_irreducible, CongruenceError};
use crate::limits;
use crate::names::identify;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("size must be at least 1")]
    Empty,
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    SINecessary,
    SI,
    PositiveMV,
}

impl Filter {
    pub fn parse(text: &str) -> Option<Filter> {
        match text {
            "all" => Some(Filter::All),
            "si-necessary" => Some(Filter::SINecessary),
            "si" => Some(Filter::SI),
            "positive" => Some(Filter::PositiveMV),
            _ => None,
        }
    }

    fn keep(self, a: &FiniteAlgebra) -> Result<bool, EnumerationError> {
        Ok(match self {
            Filter::All => true,
            Filter::SINecessary => si_necessary_condition(a),
            Filter::SI => si_necessary_condition(a) && is_subdirectly_irreducible(a)?,
            Filter::PositiveMV => is_cancellative(a).holds(),
        })
    }
}

/// A bounded lattice given by its tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLattice {
    join: Table,
    meet: Table,
    zero: Elem,
    one: Elem,
}

impl BoundedLattice {
    pub fn new(join: Table, meet: Table, zero: Elem, one: Elem) -> Result<Self, AlgebraError> {
        // reuse the algebra validation with the lattice tables standing in for ⊕ and ⊙
        FiniteAlgebra::new(
            "",
            zero,
            one,
            join.clone(),
            meet.clone(),
            join.clone(),
            meet.clone(),
        )?;
        Ok(BoundedLattice {
            join,
            meet,
            zero,
            one,
        })
    }

    pub fn chain(n: usize) -> Self {
        Self::new(
            Table::from_fn(n, |a, b| a.max(b)),
            Table::from_fn(n, |a, b| a.min(b)),
            0,
            n - 1,
        )
        .expect("chains are lattices")
    }

    /// `0 < a, b < 1` with `a = 1`, `b = 2`, top `3`.
    pub fn diamond() -> Self {
        let enc = |x: (usize, usize)| x.0 * 2 + x.1;
        let dec = |e: usize| (e / 2, e % 2);
        let join = Table::from_fn(4, |p, q| {
            enc((dec(p).0.max(dec(q).0), dec(p).1.max(dec(q).1)))
        });
        let meet = Table::from_fn(4, |p, q| {
            enc((dec(p).0.min(dec(q).0), dec(p).1.min(dec(q).1)))
        });
        Self::new(join, meet, 0, 3).expect("2x2 is a lattice")
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet.get(a, b) == a
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::Empty);
    }
    if n > cap {
        return Err(EnumerationError::CapExceeded { size: n, cap });
    }
    Ok(())
}

/// All MV-monoids on the `n`-chain passing `filter`, ordered by their `⊕` then
/// `⊙` tables.
pub fn enumerate_chain(n: usize, filter: Filter) -> Result<Vec<FiniteAlgebra>, EnumerationError> {
    check_cap(n, limits::current().enumerate_chain)?;
    let pairs = chain_table_pairs(n);
    let mut out = Vec::new();
    for (oplus, odot) in pairs {
        let a = FiniteAlgebra::chain_unchecked(String::new(), oplus, odot);
        if filter.keep(&a)? {
            out.push(a);
        }
    }
    for (k, a) in out.iter_mut().enumerate() {
        let name = identify(a).unwrap_or_else(|| format!("chain{n}_{k}"));
        a.set_name(name);
    }
    Ok(out)
}

/// [`enumerate_chain`] on a dedicated pool of `threads` workers.
pub fn enumerate_chain_with_threads(
    n: usize,
    filter: Filter,
    threads: usize,
) -> Result<Vec<FiniteAlgebra>, EnumerationError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| EnumerationError::Pool(e.to_string()))?;
    pool.install(|| enumerate_chain(n, filter))
}

fn chain_table_pairs(n: usize) -> Vec<(Table, Table)> {
    let oplus = oplus_tables(n);
    let odot: Vec<Vec<u8>> = oplus.iter().map(|t| dual(n, t)).collect();
    let mut pairs: Vec<(Vec<u8>, Vec<u8>)> = oplus
        .par_iter()
        .flat_map_iter(|p| {
            odot.iter()
                .filter(|q| connecting_axioms_hold(n, p, q))
                .map(|q| (p.clone(), q.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    pairs.sort();
    pairs
        .into_iter()
        .map(|(p, q)| (table_from_cells(n, &p), table_from_cells(n, &q)))
        .collect()
}

fn table_from_cells(n: usize, cells: &[u8]) -> Table {
    Table::from_fn(n, |a, b| cells[a * n + b] as Elem)
}

fn dual(n: usize, t: &[u8]) -> Vec<u8> {
    let d = |x: usize| n - 1 - x;
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            out[a * n + b] = d(t[d(a) * n + d(b)] as usize) as u8;
        }
    }
    out
}

/// Commutative, associative, monotone operations on `0..n` with unit `0`.
fn oplus_tables(n: usize) -> Vec<Vec<u8>> {
    let top = n - 1;
    let mut t = vec![0u8; n * n];
    let mut defined = vec![false; n * n];
    for a in 0..n {
        for (x, y, v) in [(0, a, a), (a, 0, a), (top, a, top), (a, top, top)] {
            t[x * n + y] = v as u8;
            defined[x * n + y] = true;
        }
    }
    let cells: Vec<(usize, usize)> = (1..top)
        .flat_map(|i| (i..top).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    fill(n, &cells, 0, &mut t, &mut defined, &mut out);
    out
}

fn fill(
    n: usize,
    cells: &[(usize, usize)],
    idx: usize,
    t: &mut [u8],
    defined: &mut [bool],
    out: &mut Vec<Vec<u8>>,
) {
    if idx == cells.len() {
        out.push(t.to_vec());
        return;
    }
    let (i, j) = cells[idx];
    let lo = j
        .max(t[i * n + j - 1] as usize)
        .max(t[(i - 1) * n + j] as usize);
    for v in lo..n {
        t[i * n + j] = v as u8;
        t[j * n + i] = v as u8;
        defined[i * n + j] = true;
        defined[j * n + i] = true;
        if partial_assoc(n, t, defined) {
            fill(n, cells, idx + 1, t, defined, out);
        }
    }
    defined[i * n + j] = false;
    defined[j * n + i] = false;
}

fn partial_assoc(n: usize, t: &[u8], defined: &[bool]) -> bool {
    let at = |a: usize, b: usize| (defined[a * n + b]).then(|| t[a * n + b] as usize);
    for a in 1..n - 1 {
        for b in 1..n - 1 {
            let Some(ab) = at(a, b) else { continue };
            for c in 1..n - 1 {
                let Some(bc) = at(b, c) else { continue };
                if let (Some(l), Some(r)) = (at(ab, c), at(a, bc)) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn connecting_axioms_hold(n: usize, p: &[u8], q: &[u8]) -> bool {
    let o = |a: usize, b: usize| p[a * n + b] as usize;
    let d = |a: usize, b: usize| q[a * n + b] as usize;
    for x in 0..n {
        for y in 0..n {
            let (s, m) = (o(x, y), d(x, y));
            for z in 0..n {
                if d(s, o(m, z)) != o(d(x, o(y, z)), d(y, z))
                    || o(m, d(s, z)) != d(o(x, d(y, z)), o(y, z))
                    || o(m, z) != d(s, o(m, z)).max(z)
                    || d(s, z) != o(m, d(s, z)).min(z)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// All MV-monoids whose lattice reduct is `lattice`, one per isomorphism class,
/// ordered by canonical key.
pub fn enumerate_on_lattice(
    lattice: &BoundedLattice,
    filter: Filter,
) -> Result<Vec<FiniteAlgebra>, EnumerationError> {
    let n = lattice.size();
    check_cap(n, limits::current().enumerate_lattice)?;
    let oplus = lattice_monoids(lattice, false);
    let odot = lattice_monoids(lattice, true);
    let mut found: BTreeMap<CanonicalKey, FiniteAlgebra> = BTreeMap::new();
    for p in &oplus {
        for q in &odot {
            let a = FiniteAlgebra::new(
                String::new(),
                lattice.zero,
                lattice.one,
                lattice.join.clone(),
                lattice.meet.clone(),
                p.clone(),
                q.clone(),
            )?;
            if !lattice_connecting_axioms_hold(&a) || !filter.keep(&a)? {
                continue;
            }
            found.entry(a.canonical_key()).or_insert(a);
        }
    }
    let mut out: Vec<FiniteAlgebra> = found.into_values().collect();
    for (k, a) in out.iter_mut().enumerate() {
        let name = identify(a).unwrap_or_else(|| format!("lattice{n}_{k}"));
        a.set_name(name);
    }
    Ok(out)
}

/// Commutative monoids distributing over both lattice operations. With
/// `dual = false` the unit is the bottom, otherwise the top.
fn lattice_monoids(l: &BoundedLattice, dual: bool) -> Vec<Table> {
    let n = l.size();
    let (unit, absorber) = if dual {
        (l.one, l.zero)
    } else {
        (l.zero, l.one)
    };
    let inner: Vec<Elem> = (0..n).filter(|&e| e != unit && e != absorber).collect();
    let cells: Vec<(Elem, Elem)> = inner
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| inner[i..].iter().map(move |&b| (a, b)))
        .collect();
    // x ⊕ y lies above x ∨ y; x ⊙ y lies below x ∧ y
    let choices: Vec<Vec<Elem>> = cells
        .iter()
        .map(|&(a, b)| {
            (0..n)
                .filter(|&v| {
                    if dual {
                        l.leq(v, l.meet.get(a, b))
                    } else {
                        l.leq(l.join.get(a, b), v)
                    }
                })
                .collect()
        })
        .collect();
    let mut base = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            base[a][b] = if a == unit {
                b
            } else if b == unit {
                a
            } else {
                absorber
            };
        }
    }
    let mut out = Vec::new();
    let total: usize = choices.iter().map(Vec::len).product();
    for mut code in 0..total {
        let mut t = base.clone();
        for (c, &(a, b)) in cells.iter().enumerate() {
            let v = choices[c][code % choices[c].len()];
            code /= choices[c].len();
            t[a][b] = v;
            t[b][a] = v;
        }
        let op = |a: usize, b: usize| t[a][b];
        let lawful = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    op(op(x, y), z) == op(x, op(y, z))
                        && op(x, l.join.get(y, z)) == l.join.get(op(x, y), op(x, z))
                        && op(x, l.meet.get(y, z)) == l.meet.get(op(x, y), op(x, z))
                })
            })
        });
        if lawful {
            out.push(Table::from_fn(n, op));
        }
    }
    out.sort();
    out
}

fn lattice_connecting_axioms_hold(a: &FiniteAlgebra) -> bool {
    let n = a.size();
    let (o, d) = (|x, y| a.oplus(x, y), |x, y| a.odot(x, y));
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (s, m) = (o(x, y), d(x, y));
            (0..n).all(|z| {
                d(s, o(m, z)) == o(d(x, o(y, z)), d(y, z))
                    && o(m, d(s, z)) == d(o(x, d(y, z)), o(y, z))
                    && o(m, z) == a.join(d(s, o(m, z)), z)
                    && d(s, z) == a.meet(o(m, d(s, z)), z)
            })
        })
    })
}
