use std::sync::Arc;

use proptest::prelude::*;

use mvmlab_core::constructions::{catalog, ln_plus, product, CATALOG_NAMES};
use mvmlab_core::enumerate::{enumerate_chain, Filter};
use mvmlab_core::term::{parse_equation, parse_term, satisfies, Equation, Term};
use mvmlab_core::{FiniteAlgebra, Op};

fn term_strategy(vars: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0..vars).prop_map(Term::var),
        Just(Term::zero()),
        Just(Term::one()),
    ];
    leaf.prop_recursive(5, 32, 2, |inner| {
        (0..4usize, inner.clone(), inner)
            .prop_map(|(op, a, b)| Term::binary(Op::ALL[op], Arc::new(a), Arc::new(b)))
    })
}

fn pool() -> Vec<FiniteAlgebra> {
    let mut out: Vec<FiniteAlgebra> = CATALOG_NAMES.iter().map(|n| catalog(n).unwrap()).collect();
    out.extend(
        enumerate_chain(5, Filter::All)
            .unwrap()
            .into_iter()
            .step_by(7),
    );
    let l1 = ln_plus(1).unwrap();
    out.push(product(&l1, &l1).unwrap());
    out.push(product(&l1, &ln_plus(2).unwrap()).unwrap());
    out.push(product(&catalog("C2D").unwrap(), &catalog("C2N").unwrap()).unwrap());
    out
}

fn algebra_and_perm() -> impl Strategy<Value = (FiniteAlgebra, Vec<usize>)> {
    proptest::sample::select(pool()).prop_flat_map(|a| {
        let n = a.size();
        (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_terms_parse_back(t in term_strategy(4)) {
        let printed = t.to_string();
        prop_assert_eq!(parse_term(&printed).unwrap(), t, "{}", printed);
    }

    #[test]
    fn printed_equations_parse_back(l in term_strategy(3), r in term_strategy(3)) {
        let e = Equation::new(l, r);
        prop_assert_eq!(parse_equation(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn canonical_key_ignores_relabelling((a, perm) in algebra_and_perm()) {
        let b = a.relabel(&perm);
        prop_assert_eq!(a.canonical_key(), b.canonical_key());
        prop_assert!(a.is_isomorphic(&b));
    }

    #[test]
    fn json_round_trip((a, perm) in algebra_and_perm()) {
        for alg in [a.clone(), a.relabel(&perm)] {
            let text = alg.to_json();
            let back = FiniteAlgebra::from_json(&text).unwrap();
            prop_assert_eq!(&back, &alg);
            prop_assert_eq!(back.name(), alg.name());
            prop_assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn satisfaction_is_isomorphism_invariant(
        (a, perm) in algebra_and_perm(),
        l in term_strategy(2),
        r in term_strategy(2),
    ) {
        let e = Equation::new(l, r);
        let b = a.relabel(&perm);
        prop_assert_eq!(satisfies(&a, &e).holds(), satisfies(&b, &e).holds());
    }
}

#[test]
fn isomorphism_is_an_equivalence_on_small_algebras() {
    let mut algebras: Vec<FiniteAlgebra> = (1..=4)
        .flat_map(|n| enumerate_chain(n, Filter::All).unwrap())
        .collect();
    let square = product(&ln_plus(1).unwrap(), &ln_plus(1).unwrap()).unwrap();
    algebras.push(square.relabel(&[0, 2, 1, 3]));
    algebras.push(square);
    for a in &algebras {
        assert!(a.is_isomorphic(a));
        for b in &algebras {
            assert_eq!(a.is_isomorphic(b), b.is_isomorphic(a));
            for c in &algebras {
                if a.is_isomorphic(b) && b.is_isomorphic(c) {
                    assert!(a.is_isomorphic(c));
                }
            }
        }
    }
}
