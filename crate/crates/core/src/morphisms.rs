//! Homomorphisms, HS closure over isomorphism classes, SI posets and downset
//! lattices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{CanonicalKey, Elem, FiniteAlgebra, Op};
use crate::congruence::{congruence_lattice, is_subdirectly_irreducible, CongruenceError};
use crate::constructions::{quotient, subalgebras, ConstructionError};
use crate::limits;
use crate::names::display_name;
use crate::poset::{Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("homomorphism search exceeded {cap} nodes")]
    SearchCapExceeded { cap: usize },
    #[error("algebra `{name}` has {size} elements; the HS closure cap is {cap}")]
    MemberTooLarge {
        name: String,
        size: usize,
        cap: usize,
    },
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Every map `A → B` preserving the four operations and both constants, as
/// image vectors in lexicographic order.
pub fn homomorphisms(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<Vec<Vec<Elem>>, MorphismError> {
    let cap = limits::current().homomorphism_nodes;
    let mut search = HomSearch {
        a,
        b,
        h: vec![None; a.size()],
        trail: Vec::new(),
        nodes: 0,
        cap,
        found: Vec::new(),
    };
    if search.force(a.zero(), b.zero()) && search.force(a.one(), b.one()) {
        search.descend(0)?;
    }
    search.found.sort();
    Ok(search.found)
}

struct HomSearch<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    h: Vec<Option<Elem>>,
    trail: Vec<Elem>,
    nodes: usize,
    cap: usize,
    found: Vec<Vec<Elem>>,
}

impl HomSearch<'_> {
    /// Sets `h(x) = v` and propagates every image it determines. Returns false on
    /// a clash; the trail records what to undo.
    fn force(&mut self, x: Elem, v: Elem) -> bool {
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            match self.h[x] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {
                    self.h[x] = Some(v);
                    self.trail.push(x);
                }
            }
            for y in 0..self.a.size() {
                let Some(hy) = self.h[y] else { continue };
                for op in Op::ALL {
                    queue.push((self.a.apply(op, x, y), self.b.apply(op, v, hy)));
                    queue.push((self.a.apply(op, y, x), self.b.apply(op, hy, v)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty trail");
            self.h[x] = None;
        }
    }

    fn descend(&mut self, from: Elem) -> Result<(), MorphismError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(MorphismError::SearchCapExceeded { cap: self.cap });
        }
        let Some(x) = (from..self.a.size()).find(|&x| self.h[x].is_none()) else {
            self.found
                .push(self.h.iter().map(|v| v.expect("complete map")).collect());
            return Ok(());
        };
        for v in 0..self.b.size() {
            let mark = self.trail.len();
            if self.force(x, v) {
                self.descend(x + 1)?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// Isomorphism classes keyed by canonical key.
pub type IsoClasses = BTreeMap<CanonicalKey, FiniteAlgebra>;

fn admit(a: &FiniteAlgebra) -> Result<(), MorphismError> {
    let cap = limits::current().hs_member;
    if a.size() > cap {
        return Err(MorphismError::MemberTooLarge {
            name: a.name().to_string(),
            size: a.size(),
            cap,
        });
    }
    Ok(())
}

/// Closes a set of algebras under subalgebras and homomorphic images.
pub fn hs_closure(generators: &[FiniteAlgebra]) -> Result<IsoClasses, MorphismError> {
    let mut classes = IsoClasses::new();
    let mut work = Vec::new();
    for g in generators {
        admit(g)?;
        if let Entry::Vacant(slot) = classes.entry(g.canonical_key()) {
            let named = g.clone().with_name(display_name(g));
            work.push(slot.insert(named).clone());
        }
    }
    while let Some(a) = work.pop() {
        let mut found: Vec<FiniteAlgebra> = subalgebras(&a)
            .classes
            .into_iter()
            .map(|s| s.algebra)
            .collect();
        for theta in congruence_lattice(&a)?.elements {
            found.push(quotient(&a, &theta)?);
        }
        for f in found {
            if let Entry::Vacant(slot) = classes.entry(f.canonical_key()) {
                let named = f.clone().with_name(display_name(&f));
                work.push(slot.insert(named).clone());
            }
        }
    }
    Ok(classes)
}

#[derive(Debug, Clone)]
pub struct SiPoset {
    pub poset: Poset,
    /// Representatives in poset order.
    pub members: Vec<FiniteAlgebra>,
    /// Members that are not subdirectly irreducible.
    pub warnings: Vec<String>,
}

/// Orders isomorphism classes by `A ≤ B` iff `A ∈ HS(B)`.
pub fn si_poset(algebras: &[FiniteAlgebra]) -> Result<SiPoset, MorphismError> {
    let mut classes = IsoClasses::new();
    for a in algebras {
        classes
            .entry(a.canonical_key())
            .or_insert_with(|| a.clone().with_name(display_name(a)));
    }
    let members: Vec<FiniteAlgebra> = classes.into_values().collect();
    let mut warnings = Vec::new();
    for m in &members {
        if !is_subdirectly_irreducible(m)? {
            warnings.push(format!("{} is not subdirectly irreducible", m.name()));
        }
    }
    let keys: Vec<CanonicalKey> = members.iter().map(FiniteAlgebra::canonical_key).collect();
    let closures = members
        .iter()
        .map(|m| hs_closure(std::slice::from_ref(m)))
        .collect::<Result<Vec<_>, _>>()?;
    let n = members.len();
    let labels = members.iter().map(|m| m.name().to_string()).collect();
    let tags = keys.iter().map(|k| Some(k.hash_prefix(8))).collect();
    let poset =
        Poset::from_relation(labels, |i, j| closures[j].contains_key(&keys[i]), n).with_tags(tags);
    Ok(SiPoset {
        poset,
        members,
        warnings,
    })
}

#[derive(Debug, Clone)]
pub struct DownsetLattice {
    pub poset: Poset,
    /// Members of each downset, as indices into the source poset.
    pub downsets: Vec<Vec<usize>>,
}

impl DownsetLattice {
    /// Maximal elements of the downset at `index`.
    pub fn generators(&self, source: &Poset, index: usize) -> Vec<usize> {
        let d = &self.downsets[index];
        d.iter()
            .copied()
            .filter(|&i| !d.iter().any(|&j| source.lt(i, j)))
            .collect()
    }
}

/// All downward-closed subsets ordered by inclusion, sorted by size and then
/// lexicographically. Each is labelled by its maximal elements.
pub fn downset_lattice(p: &Poset) -> Result<DownsetLattice, MorphismError> {
    let n = p.len();
    let cap = limits::current().downset_poset.min(24);
    if n > cap {
        return Err(PosetError::CapExceeded { size: n, cap }.into());
    }
    let below: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| p.leq(j, i))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    let mut sets: Vec<u32> = (0u32..(1u32 << n))
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || below[i] & !s == 0))
        .collect();
    let members = |s: u32| (0..n).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>();
    sets.sort_by_key(|&s| (s.count_ones(), members(s)));
    let downsets: Vec<Vec<usize>> = sets.iter().map(|&s| members(s)).collect();
    let labels = downsets
        .iter()
        .map(|d| {
            let tops: Vec<&str> = d
                .iter()
                .copied()
                .filter(|&i| !d.iter().any(|&j| p.lt(i, j)))
                .map(|i| p.label(i))
                .collect();
            format!("{{{}}}", tops.join(", "))
        })
        .collect();
    let m = sets.len();
    let poset = Poset::from_relation(labels, |i, j| sets[i] & !sets[j] == 0, m);
    Ok(DownsetLattice { poset, downsets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog, cn_delta, ln_plus};

    #[test]
    fn homomorphisms_of_small_chains() {
        let l2 = ln_plus(2).unwrap();
        assert_eq!(homomorphisms(&l2, &l2).unwrap(), vec![vec![0, 1, 2]]);
        let c2 = cn_delta(2).unwrap();
        let l1 = ln_plus(1).unwrap();
        assert_eq!(homomorphisms(&c2, &l1).unwrap(), vec![vec![0, 0, 1]]);
        assert!(homomorphisms(&l2, &l1).unwrap().is_empty());
    }

    #[test]
    fn identity_is_always_a_homomorphism() {
        for name in ["A3N", "B3D", "LM3D", "L3"] {
            let a = catalog(name).unwrap();
            let ident: Vec<Elem> = (0..a.size()).collect();
            assert!(homomorphisms(&a, &a).unwrap().contains(&ident), "{name}");
        }
    }

    #[test]
    fn hs_closure_of_trivial() {
        let c = hs_closure(&[FiniteAlgebra::trivial()]).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn lukasiewicz_si_poset() {
        let gens: Vec<_> = (1..=3).map(|n| ln_plus(n).unwrap()).collect();
        let p = si_poset(&gens).unwrap();
        assert!(p.warnings.is_empty());
        let mut covers = p.poset.labelled_covers();
        covers.sort();
        assert_eq!(
            covers,
            vec![("L1+".into(), "L2+".into()), ("L1+".into(), "L3+".into())]
        );
    }

    #[test]
    fn downsets_of_empty_and_antichain() {
        let empty = Poset::from_covers(vec![], &[]).unwrap();
        assert_eq!(downset_lattice(&empty).unwrap().poset.len(), 1);
        let anti = Poset::from_covers(vec!["a".into(), "b".into()], &[]).unwrap();
        let d = downset_lattice(&anti).unwrap();
        assert_eq!(d.poset.len(), 4);
        assert!(d.poset.is_lattice());
    }
}
