//! Builders for the named finite MV-monoids, products, subalgebras, quotients and
//! the Γ functor applied to a lexicographic product `ℤ ×→ M`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, CanonicalKey, Elem, FiniteAlgebra, FiniteLMonoid, Table};
use crate::congruence::{Congruence, CongruenceError};
use crate::limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown algebra name `{0}`")]
    UnknownName(String),
    #[error("{what} would have {size} elements; the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

fn positive(n: usize, what: &str) -> Result<(), ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter(format!(
            "{what} needs n >= 1"
        )));
    }
    if n + 1 > crate::algebra::MAX_SIZE {
        return Err(ConstructionError::InvalidParameter(format!(
            "{what} with n = {n} is too large"
        )));
    }
    Ok(())
}

/// `Ł_n⁺ = {0, 1/n, …, 1}` with truncated addition.
pub fn ln_plus(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    positive(n, "ln_plus")?;
    Ok(FiniteAlgebra::chain_from_fn(
        format!("L{n}+"),
        n + 1,
        |a, b| (a + b).min(n),
        |a, b| (a + b).saturating_sub(n),
    ))
}

/// `0 < ε < … < (n−1)ε < 1` with `iε ⊕ jε = min(i+j, n−1)ε` and `iε ⊙ jε = 0`.
pub fn cn_delta(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    positive(n, "cn_delta")?;
    let top = n;
    Ok(FiniteAlgebra::chain_from_fn(
        format!("C{n}D"),
        n + 1,
        |a, b| {
            if a == top || b == top {
                top
            } else {
                (a + b).min(n - 1)
            }
        },
        |a, b| {
            if a == top {
                b
            } else if b == top {
                a
            } else {
                0
            }
        },
    ))
}

/// Order dual of [`cn_delta`]: `0 < δ^{n−1} < … < δ < 1`.
pub fn cn_nabla(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    Ok(cn_delta(n)?.order_dual().with_name(format!("C{n}N")))
}

/// `⊕ = ∨`; `x ⊙ y` is `y` if `x = 1`, `x` if `y = 1`, and `0` otherwise.
pub fn lm_delta(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    positive(n, "lm_delta")?;
    let top = n;
    Ok(FiniteAlgebra::chain_from_fn(
        format!("LM{n}D"),
        n + 1,
        |a, b| a.max(b),
        |a, b| {
            if a == top {
                b
            } else if b == top {
                a
            } else {
                0
            }
        },
    ))
}

/// Order dual of [`lm_delta`].
pub fn lm_nabla(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    Ok(lm_delta(n)?.order_dual().with_name(format!("LM{n}N")))
}

/// The bounded distributive lattice on an `n`-chain with `⊕ = ∨` and `⊙ = ∧`.
pub fn lattice_chain(n: usize) -> Result<FiniteAlgebra, ConstructionError> {
    positive(n, "lattice_chain")?;
    Ok(FiniteAlgebra::chain_from_fn(
        format!("L{}", n - 1),
        n,
        |a, b| a.max(b),
        |a, b| a.min(b),
    ))
}

/// Canonical catalog names. Lookups also accept `Δ`/`∇`/`Ł` spellings.
pub const CATALOG_NAMES: &[&str] = &[
    "trivial", "L1+", "L2+", "C2D", "C2N", "L2", "L3+", "C3D", "C3N", "A3D", "A3N", "B3D", "B3N",
    "LM3D", "LM3N", "L3",
];

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | '^' | ' '))
        .map(|c| match c {
            'Δ' => 'D',
            '∇' => 'N',
            'Ł' => 'L',
            other => other.to_ascii_uppercase(),
        })
        .collect::<String>()
        .replace("TRIVIAL", "trivial")
}

/// 4-chains `0 < b < a < 1`, indexed `0, b = 1, a = 2, 1 = 3`.
fn four_chain(name: &str, oplus: [[Elem; 4]; 4], odot: [[Elem; 4]; 4]) -> FiniteAlgebra {
    FiniteAlgebra::chain_from_fn(name, 4, |x, y| oplus[x][y], |x, y| odot[x][y])
}

const OPLUS_FULL_ABSORB: [[Elem; 4]; 4] = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3]];
const OPLUS_CHAINED: [[Elem; 4]; 4] = [[0, 1, 2, 3], [1, 1, 2, 3], [2, 2, 3, 3], [3, 3, 3, 3]];
const OPLUS_DOUBLING: [[Elem; 4]; 4] = [[0, 1, 2, 3], [1, 2, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3]];
const ODOT_IDEMPOTENT_TOP: [[Elem; 4]; 4] =
    [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 2, 2], [0, 1, 2, 3]];
const ODOT_SPLIT: [[Elem; 4]; 4] = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]];
const ODOT_HALVING: [[Elem; 4]; 4] = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 2], [0, 1, 2, 3]];

/// Looks up a named algebra from the 3- and 4-element catalogs.
pub fn catalog(name: &str) -> Result<FiniteAlgebra, ConstructionError> {
    let key = normalize_name(name);
    let a = match key.as_str() {
        "trivial" => FiniteAlgebra::trivial(),
        "L1+" => ln_plus(1)?,
        "L2+" => ln_plus(2)?,
        "L3+" => ln_plus(3)?,
        "C2D" => cn_delta(2)?,
        "C2N" => cn_nabla(2)?,
        "C3D" => cn_delta(3)?,
        "C3N" => cn_nabla(3)?,
        "LM3D" => lm_delta(3)?,
        "LM3N" => lm_nabla(3)?,
        "L2" => lattice_chain(3)?,
        "L3" => lattice_chain(4)?,
        "A3D" => four_chain("A3D", OPLUS_FULL_ABSORB, ODOT_IDEMPOTENT_TOP),
        "A3N" => four_chain("A3N", OPLUS_CHAINED, ODOT_SPLIT),
        "B3D" => four_chain("B3D", OPLUS_CHAINED, ODOT_HALVING),
        "B3N" => four_chain("B3N", OPLUS_DOUBLING, ODOT_IDEMPOTENT_TOP),
        _ => return Err(ConstructionError::UnknownName(name.to_string())),
    };
    Ok(a.with_name(key))
}

/// Γ(ℤ ×→ M): the interval `[(0,0), (1,0)]` of the lexicographic product.
pub fn gamma_of_lex(m: &FiniteLMonoid) -> Result<FiniteAlgebra, ConstructionError> {
    let z = m.zero();
    let mut elems: Vec<(u8, Elem)> = (0..m.size())
        .filter(|&x| m.leq(z, x))
        .map(|x| (0, x))
        .collect();
    elems.extend((0..m.size()).filter(|&x| m.leq(x, z)).map(|x| (1, x)));
    let index = |e: (u8, Elem)| {
        elems
            .iter()
            .position(|&f| f == e)
            .expect("element of the interval")
    };
    let size = elems.len();
    if size > crate::algebra::MAX_SIZE {
        return Err(ConstructionError::InvalidParameter(
            "l-monoid is too large".into(),
        ));
    }
    let lex_join = |(a, x): (u8, Elem), (b, y): (u8, Elem)| match a.cmp(&b) {
        std::cmp::Ordering::Less => (b, y),
        std::cmp::Ordering::Greater => (a, x),
        std::cmp::Ordering::Equal => (a, m.join(x, y)),
    };
    let lex_meet = |(a, x): (u8, Elem), (b, y): (u8, Elem)| match a.cmp(&b) {
        std::cmp::Ordering::Less => (a, x),
        std::cmp::Ordering::Greater => (b, y),
        std::cmp::Ordering::Equal => (a, m.meet(x, y)),
    };
    // sum clamped below (1, 0)
    let oplus = |(a, x): (u8, Elem), (b, y): (u8, Elem)| match a + b {
        0 => (0, m.plus(x, y)),
        1 => (1, m.meet(m.plus(x, y), z)),
        _ => (1, z),
    };
    // sum minus (1, 0), clamped above (0, 0)
    let odot = |(a, x): (u8, Elem), (b, y): (u8, Elem)| match a + b {
        0 => (0, z),
        1 => (0, m.join(m.plus(x, y), z)),
        _ => (1, m.plus(x, y)),
    };
    let table = |f: &dyn Fn((u8, Elem), (u8, Elem)) -> (u8, Elem)| {
        Table::from_fn(size, |i, j| index(f(elems[i], elems[j])))
    };
    let a = FiniteAlgebra::new(
        format!("Gamma({})", m.name()),
        index((0, z)),
        index((1, z)),
        table(&lex_join),
        table(&lex_meet),
        table(&oplus),
        table(&odot),
    )?;
    Ok(a.normalized())
}

/// Direct product with elements `(a, b)` numbered `a·|B| + b`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, ConstructionError> {
    let (na, nb) = (a.size(), b.size());
    let size = na * nb;
    let cap = limits::current().product.min(crate::algebra::MAX_SIZE);
    if size > cap {
        return Err(ConstructionError::CapExceeded {
            what: "product",
            size,
            cap,
        });
    }
    let t = |op| {
        Table::from_fn(size, |i, j| {
            a.apply(op, i / nb, j / nb) * nb + b.apply(op, i % nb, j % nb)
        })
    };
    use crate::algebra::Op;
    Ok(FiniteAlgebra::new(
        format!("{}x{}", a.name(), b.name()),
        a.zero() * nb + b.zero(),
        a.one() * nb + b.one(),
        t(Op::Join),
        t(Op::Meet),
        t(Op::Oplus),
        t(Op::Odot),
    )?)
}

/// A subalgebra with the inclusion map into its parent.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub algebra: FiniteAlgebra,
    /// `embedding[i]` is the parent element of element `i`.
    pub embedding: Vec<Elem>,
}

#[derive(Debug, Clone)]
pub struct SubalgebraScan {
    /// One representative per isomorphism class, sorted by canonical key.
    pub classes: Vec<Subalgebra>,
    /// False when only subalgebras generated by at most three elements were searched.
    pub complete: bool,
}

fn closure(a: &FiniteAlgebra, seed: &[Elem]) -> Vec<Elem> {
    let n = a.size();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    for &e in seed.iter().chain([a.zero(), a.one()].iter()) {
        if !inside[e] {
            inside[e] = true;
            members.push(e);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..=i {
            let y = members[j];
            for op in crate::algebra::Op::ALL {
                for v in [a.apply(op, x, y), a.apply(op, y, x)] {
                    if !inside[v] {
                        inside[v] = true;
                        members.push(v);
                    }
                }
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

fn is_closed(a: &FiniteAlgebra, inside: &[bool], members: &[Elem]) -> bool {
    members.iter().all(|&x| {
        members.iter().all(|&y| {
            crate::algebra::Op::ALL
                .iter()
                .all(|&op| inside[a.apply(op, x, y)])
        })
    })
}

/// All subalgebras up to isomorphism.
pub fn subalgebras(a: &FiniteAlgebra) -> SubalgebraScan {
    let n = a.size();
    let mut found: BTreeMap<CanonicalKey, Subalgebra> = BTreeMap::new();
    let mut record = |elems: Vec<Elem>| {
        let algebra = a.restrict(&elems);
        let key = algebra.canonical_key();
        found.entry(key).or_insert_with(|| {
            // restrict() may reorder a chain; recover the inclusion from the relabelled order
            let embedding = embedding_after_normalize(a, &elems);
            Subalgebra { algebra, embedding }
        });
    };
    let free: Vec<Elem> = (0..n).filter(|&e| e != a.zero() && e != a.one()).collect();
    let complete = n <= limits::current().subalgebra_scan;
    if complete {
        let m = free.len();
        for mask in 0u64..(1u64 << m) {
            let mut inside = vec![false; n];
            let mut members = vec![a.zero(), a.one()];
            inside[a.zero()] = true;
            inside[a.one()] = true;
            for (bit, &e) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    inside[e] = true;
                    members.push(e);
                }
            }
            members.sort_unstable();
            members.dedup();
            if is_closed(a, &inside, &members) {
                record(members);
            }
        }
    } else {
        let k = free.len();
        for i in 0..=k {
            for j in i..=k {
                for l in j..=k {
                    let seed: Vec<Elem> = [i, j, l]
                        .iter()
                        .filter(|&&t| t < k)
                        .map(|&t| free[t])
                        .collect();
                    record(closure(a, &seed));
                }
            }
        }
    }
    SubalgebraScan {
        classes: found.into_values().collect(),
        complete,
    }
}

fn embedding_after_normalize(a: &FiniteAlgebra, elems: &[Elem]) -> Vec<Elem> {
    let mut sorted = elems.to_vec();
    if elems
        .iter()
        .all(|&x| elems.iter().all(|&y| a.leq(x, y) || a.leq(y, x)))
    {
        sorted.sort_by_key(|&x| elems.iter().filter(|&&y| a.leq(y, x)).count());
    }
    sorted
}

/// `A/θ` with blocks numbered by least element (then reordered along the chain if
/// the quotient is totally ordered).
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<FiniteAlgebra, ConstructionError> {
    theta.check(a)?;
    let blocks = theta.blocks();
    let reps: Vec<Elem> = blocks.iter().map(|b| b[0]).collect();
    let m = reps.len();
    let t = |op| Table::from_fn(m, |i, j| theta.block_of(a.apply(op, reps[i], reps[j])));
    use crate::algebra::Op;
    let q = FiniteAlgebra::new(
        format!("{}/~", a.name()),
        theta.block_of(a.zero()),
        theta.block_of(a.one()),
        t(Op::Join),
        t(Op::Meet),
        t(Op::Oplus),
        t(Op::Odot),
    )?;
    Ok(q.normalized())
}
