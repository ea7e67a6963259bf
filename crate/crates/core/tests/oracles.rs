//! Cross-checks against independent oracles: direct arithmetic in `(1/m)ℤ`,
//! and naive generate-then-filter enumeration.

use std::collections::BTreeSet;

use mvmlab_core::axioms::{is_mv_monoid, si_necessary_condition};
use mvmlab_core::constructions::ln_plus;
use mvmlab_core::enumerate::{enumerate_chain, enumerate_on_lattice, BoundedLattice, Filter};
use mvmlab_core::tau::{phi, sigma, tau, tau_alt, tau_unfolded, DivisorClosedSet};
use mvmlab_core::term::{eval, parse_equation, satisfies, Equation, Term};
use mvmlab_core::{CanonicalKey, FiniteAlgebra, Op, Table};

/// `((n·i − k·m) ∨ 0) ∧ m`, the value of `τ_{n,k}` at `i/m` scaled by `m`.
fn clamp_oracle(m: i64, n: i64, k: i64, i: i64) -> usize {
    (n * i - k * m).clamp(0, m) as usize
}

#[test]
fn tau_matches_clamp_formula() {
    let mut mismatches = Vec::new();
    for m in 1..=6usize {
        let l = ln_plus(m).unwrap();
        for n in 0..=6u32 {
            for k in -1..=n as i64 {
                let t = tau(n, k);
                for i in 0..=m {
                    let got = eval(&t, &l, &[i]).unwrap();
                    let want = clamp_oracle(m as i64, n as i64, k, i as i64);
                    if got != want {
                        mismatches.push((m, n, k, i, got, want));
                    }
                }
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn tau_variants_agree_on_lukasiewicz_chains() {
    for m in 1..=6usize {
        let l = ln_plus(m).unwrap();
        for n in 0..=6u32 {
            for k in -1..=n as i64 {
                let (a, b, c) = (tau(n, k), tau_alt(n, k), tau_unfolded(n, k));
                for i in 0..=m {
                    let v = eval(&a, &l, &[i]).unwrap();
                    assert_eq!(
                        v,
                        eval(&b, &l, &[i]).unwrap(),
                        "alt m={m} n={n} k={k} i={i}"
                    );
                    assert_eq!(
                        v,
                        eval(&c, &l, &[i]).unwrap(),
                        "unfolded m={m} n={n} k={k} i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn phi_holds_exactly_for_divisors() {
    for m in 1..=8usize {
        let l = ln_plus(m).unwrap();
        for n in 1..=8u32 {
            assert_eq!(
                phi(n).holds_in(&l),
                (n as usize).is_multiple_of(m),
                "m={m} n={n}"
            );
        }
    }
}

#[test]
fn threshold_law() {
    for m in 0..=8u32 {
        let eq = Equation::new(
            Term::multiple(m + 1, Term::x()),
            Term::multiple(m, Term::x()),
        );
        for n in 1..=8usize {
            let l = ln_plus(n).unwrap();
            assert_eq!(satisfies(&l, &eq).holds(), n <= m as usize, "m={m} n={n}");
        }
    }
}

#[test]
fn non_divisor_law() {
    for m in 1..=6u32 {
        for k in 1..=m {
            let lhs = Term::multiple(m, Term::power(Term::multiple(k - 1, Term::x()), k));
            let rhs = Term::power(Term::multiple(k, Term::x()), m);
            let eq = Equation::new(lhs, rhs);
            for n in 1..=m as usize {
                let l = ln_plus(n).unwrap();
                assert_eq!(
                    satisfies(&l, &eq).holds(),
                    n % k as usize != 0,
                    "m={m} k={k} n={n}"
                );
            }
        }
    }
}

#[test]
fn sigma_worked_examples() {
    let small = sigma(&DivisorClosedSet::parse("1,2,3").unwrap());
    assert_eq!(small.equations, vec![parse_equation("4x = 3x").unwrap()]);
    let six = sigma(&DivisorClosedSet::parse("1,2,3,6").unwrap());
    let want: Vec<Equation> = ["7x = 6x", "6(3x)^4 = (4x)^6", "6(4x)^5 = (5x)^6"]
        .iter()
        .map(|s| parse_equation(s).unwrap())
        .collect();
    assert_eq!(six.equations, want);
    assert_eq!(six.equations[1].to_string(), want[1].to_string());
}

/// Commutative tables with `unit` as identity, filtered by associativity and
/// distributivity over max and min.
fn naive_monoids(n: usize, unit: usize) -> Vec<Table> {
    let cells: Vec<(usize, usize)> = (0..n)
        .filter(|&i| i != unit)
        .flat_map(|i| (i..n).filter(move |&j| j != unit).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mut code in 0..n.pow(cells.len() as u32) {
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            t[unit][a] = a;
            t[a][unit] = a;
        }
        for &(i, j) in &cells {
            t[i][j] = code % n;
            t[j][i] = code % n;
            code /= n;
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    t[t[x][y]][z] == t[x][t[y][z]]
                        && t[x][y.max(z)] == t[x][y].max(t[x][z])
                        && t[x][y.min(z)] == t[x][y].min(t[x][z])
                })
            })
        });
        if ok {
            out.push(Table::from_rows(&t).unwrap());
        }
    }
    out
}

/// The `⊕` and `⊙` tables of an algebra as rows.
type TablePair = (Vec<Vec<usize>>, Vec<Vec<usize>>);

fn naive_chain_algebras(n: usize) -> BTreeSet<TablePair> {
    let plus = naive_monoids(n, 0);
    let times = naive_monoids(n, n - 1);
    let mut out = BTreeSet::new();
    for p in &plus {
        for q in &times {
            let a = FiniteAlgebra::chain("", p.clone(), q.clone()).unwrap();
            if is_mv_monoid(&a).passed {
                out.insert((p.rows(), q.rows()));
            }
        }
    }
    out
}

fn table_pairs(algebras: &[FiniteAlgebra]) -> BTreeSet<TablePair> {
    algebras
        .iter()
        .map(|a| (a.table(Op::Oplus).rows(), a.table(Op::Odot).rows()))
        .collect()
}

#[test]
fn chain_enumeration_is_complete_for_three_and_four() {
    for n in [2, 3, 4] {
        let fast = enumerate_chain(n, Filter::All).unwrap();
        let naive = naive_chain_algebras(n);
        assert_eq!(table_pairs(&fast), naive, "n={n}");
        assert_eq!(fast.len(), naive.len());
    }
}

#[test]
fn chain_counts() {
    assert_eq!(enumerate_chain(3, Filter::All).unwrap().len(), 4);
    assert_eq!(enumerate_chain(4, Filter::SINecessary).unwrap().len(), 9);
    assert_eq!(enumerate_chain(4, Filter::SI).unwrap().len(), 7);
    assert_eq!(enumerate_chain(5, Filter::SINecessary).unwrap().len(), 35);
    // every axiom in the list is enforced, including both order-mixing connecting laws
    assert_eq!(enumerate_chain(4, Filter::All).unwrap().len(), 17);
}

#[test]
fn filters_are_consistent_with_predicates() {
    for n in 2..=5 {
        let all = enumerate_chain(n, Filter::All).unwrap();
        let nec = enumerate_chain(n, Filter::SINecessary).unwrap();
        let expected: Vec<_> = all
            .iter()
            .filter(|a| si_necessary_condition(a))
            .cloned()
            .collect();
        assert_eq!(nec, expected, "n={n}");
    }
}

fn diamond_tables() -> (Table, Table) {
    // 0 bottom, 1 and 2 incomparable, 3 top
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
fn diamond_enumeration_matches_naive_search() {
    let (join, meet) = diamond_tables();
    let mut naive: BTreeSet<CanonicalKey> = BTreeSet::new();
    let commutative = |unit: usize| -> Vec<Table> {
        let cells: Vec<(usize, usize)> = (0..4)
            .filter(|&i| i != unit)
            .flat_map(|i| (i..4).filter(move |&j| j != unit).map(move |j| (i, j)))
            .collect();
        (0..4usize.pow(cells.len() as u32))
            .map(|mut code| {
                let mut t = vec![vec![0; 4]; 4];
                for a in 0..4 {
                    t[unit][a] = a;
                    t[a][unit] = a;
                }
                for &(i, j) in &cells {
                    t[i][j] = code % 4;
                    t[j][i] = code % 4;
                    code /= 4;
                }
                t
            })
            .filter(|t| {
                let j = |a: usize, b: usize| join.get(a, b);
                let m = |a: usize, b: usize| meet.get(a, b);
                (0..4).all(|x| {
                    (0..4).all(|y| {
                        (0..4).all(|z| {
                            t[t[x][y]][z] == t[x][t[y][z]]
                                && t[x][j(y, z)] == j(t[x][y], t[x][z])
                                && t[x][m(y, z)] == m(t[x][y], t[x][z])
                        })
                    })
                })
            })
            .map(|t| Table::from_rows(&t).unwrap())
            .collect()
    };
    for p in commutative(0) {
        for q in commutative(3) {
            let a = FiniteAlgebra::new("", 0, 3, join.clone(), meet.clone(), p.clone(), q.clone())
                .unwrap();
            if is_mv_monoid(&a).passed {
                naive.insert(a.canonical_key());
            }
        }
    }
    let fast = enumerate_on_lattice(&BoundedLattice::diamond(), Filter::All).unwrap();
    let fast_keys: BTreeSet<CanonicalKey> = fast.iter().map(FiniteAlgebra::canonical_key).collect();
    assert_eq!(fast_keys, naive);
    assert_eq!(fast.len(), 1);
    let square =
        mvmlab_core::constructions::product(&ln_plus(1).unwrap(), &ln_plus(1).unwrap()).unwrap();
    assert!(fast[0].is_isomorphic(&square));
    assert!(
        enumerate_on_lattice(&BoundedLattice::diamond(), Filter::SINecessary)
            .unwrap()
            .is_empty()
    );
}

#[test]
fn lattice_enumeration_on_small_chains() {
    assert_eq!(
        enumerate_on_lattice(&BoundedLattice::chain(2), Filter::All)
            .unwrap()
            .len(),
        1
    );
    let three = enumerate_on_lattice(&BoundedLattice::chain(3), Filter::All).unwrap();
    let direct = enumerate_chain(3, Filter::All).unwrap();
    let a: BTreeSet<_> = three.iter().map(FiniteAlgebra::canonical_key).collect();
    let b: BTreeSet<_> = direct.iter().map(FiniteAlgebra::canonical_key).collect();
    assert_eq!(a, b);
}
