//! Congruences, congruence lattices, subdirect irreducibility and simplicity.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra, Op};
use crate::limits;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("algebra has {size} elements; the congruence lattice cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("partition is not compatible with `{}` at ({a}, {b}) vs ({a2}, {b2})", op.symbol())]
    NotACongruence {
        op: Op,
        a: Elem,
        b: Elem,
        a2: Elem,
        b2: Elem,
    },
    #[error("partition has {got} entries but the algebra has {size} elements")]
    SizeMismatch { got: usize, size: usize },
}

/// An equivalence relation as a block-id array, with ids in first-occurrence
/// order so that equal partitions have equal arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { blocks: vec![0; n] }
    }

    /// Normalizes an arbitrary labelling of blocks.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let blocks = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_of(&self, a: Elem) -> usize {
        self.blocks[a]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as element lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (e, &b) in self.blocks.iter().enumerate() {
            out[b].push(e);
        }
        out
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Refinement order: `self ⊆ other` as relations.
    pub fn leq(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.num_blocks()];
        for (e, &b) in self.blocks.iter().enumerate() {
            if image[b] == usize::MAX {
                image[b] = other.blocks[e];
            } else if image[b] != other.blocks[e] {
                return false;
            }
        }
        true
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for rel in [self, other] {
            let mut first = vec![usize::MAX; rel.num_blocks()];
            for (e, &b) in rel.blocks.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = e;
                } else {
                    uf.union(first[b], e);
                }
            }
        }
        uf.congruence()
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .copied()
            .zip(other.blocks.iter().copied())
            .collect();
        Congruence::from_labels(
            &pairs
                .iter()
                .map(|&(a, b)| a * other.size() + b)
                .collect::<Vec<_>>(),
        )
    }

    /// Verifies compatibility with every operation of `a`.
    pub fn check(&self, a: &FiniteAlgebra) -> Result<(), CongruenceError> {
        let n = a.size();
        if self.size() != n {
            return Err(CongruenceError::SizeMismatch {
                got: self.size(),
                size: n,
            });
        }
        let blocks = self.blocks();
        for op in Op::ALL {
            for x in 0..n {
                for y in 0..n {
                    let rep = (blocks[self.blocks[x]][0], blocks[self.blocks[y]][0]);
                    if !self.related(a.apply(op, x, y), a.apply(op, rep.0, rep.1)) {
                        return Err(CongruenceError::NotACongruence {
                            op,
                            a: x,
                            b: y,
                            a2: rep.0,
                            b2: rep.1,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Congruence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn congruence(&mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

/// The least congruence identifying `a` and `b`.
///
/// Every pair that causes a merge is pushed through the translations
/// `x ↦ x op c` and `x ↦ c op x`. That suffices: the relation is the
/// equivalence generated by the merged pairs, a translation maps each chain of
/// merged pairs to a chain, and a binary operation respects the relation once
/// each one-argument translation does.
pub fn principal_congruence(alg: &FiniteAlgebra, a: Elem, b: Elem) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(a, b)];
    while let Some((u, v)) = queue.pop() {
        if !uf.union(u, v) {
            continue;
        }
        for op in Op::ALL {
            for c in 0..n {
                queue.push((alg.apply(op, u, c), alg.apply(op, v, c)));
                queue.push((alg.apply(op, c, u), alg.apply(op, c, v)));
            }
        }
    }
    uf.congruence()
}

/// Distinct nontrivial principal congruences, sorted.
pub fn principal_congruences(alg: &FiniteAlgebra) -> Vec<Congruence> {
    let n = alg.size();
    let pairs: Vec<(Elem, Elem)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let set: BTreeSet<Congruence> = pairs
        .par_iter()
        .map(|&(a, b)| principal_congruence(alg, a, b))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    set.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice {
    /// Sorted by decreasing number of blocks, so the identity comes first and
    /// the total relation last.
    pub elements: Vec<Congruence>,
    /// Pairs `(i, j)` where `elements[j]` covers `elements[i]`.
    pub covers: Vec<(usize, usize)>,
}

impl CongruenceLattice {
    pub fn bottom(&self) -> &Congruence {
        &self.elements[0]
    }

    pub fn top(&self) -> &Congruence {
        self.elements.last().expect("lattice is non-empty")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_chain(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.elements[i].leq(&self.elements[j]) || self.elements[j].leq(&self.elements[i])
            })
        })
    }

    pub fn to_poset(&self) -> Poset {
        let labels = self.elements.iter().map(|c| c.to_string()).collect();
        let n = self.elements.len();
        Poset::from_relation(labels, |i, j| self.elements[i].leq(&self.elements[j]), n)
    }
}

fn check_cap(alg: &FiniteAlgebra) -> Result<(), CongruenceError> {
    let cap = limits::current().congruence_lattice;
    if alg.size() > cap {
        Err(CongruenceError::CapExceeded {
            size: alg.size(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Every congruence is a join of principal ones, so joining principals onto
/// newly found members until nothing new appears reaches the whole lattice.
pub fn congruence_lattice(alg: &FiniteAlgebra) -> Result<CongruenceLattice, CongruenceError> {
    check_cap(alg)?;
    let n = alg.size();
    let principals = principal_congruences(alg);
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut all = vec![Congruence::identity(n)];
    seen.insert(Congruence::identity(n));
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = c.join(p);
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    let m = all.len();
    let lt = |i: usize, j: usize| i != j && all[i].leq(&all[j]);
    let covers = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| lt(i, j) && !(0..m).any(|k| lt(i, k) && lt(k, j)))
        .collect();
    Ok(CongruenceLattice {
        elements: all,
        covers,
    })
}

/// The least nontrivial congruence, when one exists.
pub fn monolith(alg: &FiniteAlgebra) -> Result<Option<Congruence>, CongruenceError> {
    check_cap(alg)?;
    if alg.is_trivial() {
        return Ok(None);
    }
    let meet = principal_congruences(alg)
        .into_iter()
        .reduce(|a, b| a.meet(&b))
        .expect("a nontrivial algebra has a nontrivial principal congruence");
    Ok((!meet.is_identity()).then_some(meet))
}

pub fn is_subdirectly_irreducible(alg: &FiniteAlgebra) -> Result<bool, CongruenceError> {
    Ok(monolith(alg)?.is_some())
}

/// Exactly two congruences. The trivial algebra is not simple.
pub fn is_simple(alg: &FiniteAlgebra) -> Result<bool, CongruenceError> {
    check_cap(alg)?;
    Ok(!alg.is_trivial() && principal_congruences(alg).iter().all(Congruence::is_total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice_chain(n: usize) -> FiniteAlgebra {
        FiniteAlgebra::chain_from_fn("L", n, |a, b| a.max(b), |a, b| a.min(b))
    }

    #[test]
    fn principal_congruence_of_a_pure_chain_is_an_interval() {
        let c = principal_congruence(&lattice_chain(5), 1, 3);
        assert_eq!(c.blocks(), vec![vec![0], vec![1, 2, 3], vec![4]]);
        assert!(principal_congruence(&lattice_chain(5), 2, 2).is_identity());
    }

    #[test]
    fn pure_chain_congruences_form_a_boolean_lattice() {
        let l = congruence_lattice(&lattice_chain(4)).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l.covers.len(), 12);
        assert!(l.bottom().is_identity() && l.top().is_total());
    }

    #[test]
    fn join_and_meet() {
        let a = Congruence::from_labels(&[0, 0, 1, 2]);
        let b = Congruence::from_labels(&[0, 1, 1, 2]);
        assert_eq!(a.join(&b), Congruence::from_labels(&[0, 0, 0, 1]));
        assert!(a.meet(&b).is_identity());
        assert!(a.leq(&a.join(&b)));
    }

    #[test]
    fn check_rejects_incompatible_partitions() {
        let l = FiniteAlgebra::chain_from_fn(
            "L2+",
            3,
            |a, b| (a + b).min(2),
            |a, b| (a + b).saturating_sub(2),
        );
        let bad = Congruence::from_labels(&[0, 0, 1]);
        assert!(matches!(
            bad.check(&l),
            Err(CongruenceError::NotACongruence { .. })
        ));
        assert!(Congruence::identity(3).check(&l).is_ok());
    }

    #[test]
    fn trivial_algebra_is_neither_si_nor_simple() {
        let t = FiniteAlgebra::trivial();
        assert!(!is_subdirectly_irreducible(&t).unwrap());
        assert!(!is_simple(&t).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let big = lattice_chain(13);
        assert!(matches!(
            congruence_lattice(&big),
            Err(CongruenceError::CapExceeded { .. })
        ));
    }
}
