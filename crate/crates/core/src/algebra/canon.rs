//! Canonical labelling of finite algebras.
//!
//! Elements are coloured by lattice height and then refined by how every
//! operation acts on the colour classes. Remaining ties are broken by trying each
//! element of the first non-singleton class in turn. Every leaf of that search is
//! a labelling that extends the lattice order, and the least serialized table
//! vector over all leaves is the key. Chains are rigid, so their key is simply
//! their own tables.

use std::fmt;

use sha2::{Digest, Sha256};

use super::{Elem, FiniteAlgebra, Op};

/// Isomorphism invariant: equal keys iff isomorphic algebras.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// First `len` hex digits of the SHA-256 digest of the key.
    pub fn hash_prefix(&self, len: usize) -> String {
        let digest = Sha256::digest(&self.0);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..len.min(hex.len())].to_string()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hash_prefix(12))
    }
}

pub(super) fn canonical_key(a: &FiniteAlgebra) -> CanonicalKey {
    let n = a.size();
    if a.is_chain() {
        let ident: Vec<Elem> = (0..n).collect();
        return CanonicalKey(serialize(a, &ident));
    }
    let colors = refine(a, initial_colors(a));
    let mut best: Option<Vec<u8>> = None;
    search(a, colors, &mut best);
    CanonicalKey(best.expect("search visits at least one leaf"))
}

fn serialize(a: &FiniteAlgebra, perm: &[Elem]) -> Vec<u8> {
    let n = a.size();
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut out = Vec::with_capacity(3 + 4 * n * n);
    out.push(n as u8);
    out.push(perm[a.zero()] as u8);
    out.push(perm[a.one()] as u8);
    for op in Op::ALL {
        let t = a.table(op);
        for i in 0..n {
            for j in 0..n {
                out.push(perm[t.get(inv[i], inv[j])] as u8);
            }
        }
    }
    out
}

/// Colour by (height above bottom, number of elements below).
fn initial_colors(a: &FiniteAlgebra) -> Vec<u32> {
    let n = a.size();
    let below: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| a.leq(y, x)).count())
        .collect();
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&x| below[x]);
    let mut height = vec![0usize; n];
    for &x in &order {
        for y in 0..n {
            if y != x && a.leq(y, x) {
                height[x] = height[x].max(height[y] + 1);
            }
        }
    }
    rank(&(0..n).map(|x| (height[x], below[x])).collect::<Vec<_>>())
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present") as u32)
        .collect()
}

fn class_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// A colour together with the sorted colours of its table neighbourhood.
type Signature = (u32, Vec<(u8, u32, u32, u32)>);

/// Refine until stable. Each signature leads with the old colour, so the new
/// order refines the old one.
fn refine(a: &FiniteAlgebra, mut colors: Vec<u32>) -> Vec<u32> {
    let n = a.size();
    let mut classes = class_count(&colors);
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|x| {
                let mut s = Vec::with_capacity(4 * n);
                for (k, op) in Op::ALL.into_iter().enumerate() {
                    for y in 0..n {
                        s.push((
                            k as u8,
                            colors[y],
                            colors[a.apply(op, x, y)],
                            colors[a.apply(op, y, x)],
                        ));
                    }
                }
                s.sort_unstable();
                (colors[x], s)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = class_count(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn search(a: &FiniteAlgebra, colors: Vec<u32>, best: &mut Option<Vec<u8>>) {
    let n = a.size();
    if class_count(&colors) == n {
        let perm: Vec<Elem> = colors.iter().map(|&c| c as Elem).collect();
        let s = serialize(a, &perm);
        if best.as_ref().is_none_or(|b| s < *b) {
            *best = Some(s);
        }
        return;
    }
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let target = (0..n)
        .find(|&c| counts[c] > 1)
        .expect("non-discrete colouring") as u32;
    for v in (0..n).filter(|&x| colors[x] == target) {
        let split: Vec<(u32, u8)> = (0..n)
            .map(|x| (colors[x], if x == v { 0 } else { 1 }))
            .collect();
        search(a, refine(a, rank(&split)), best);
    }
}
