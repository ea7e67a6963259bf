//! Recognizes small algebras by isomorphism type.

use std::collections::HashMap;
use std::sync::LazyLock;

use crate::algebra::{CanonicalKey, FiniteAlgebra};
use crate::constructions::{
    catalog, cn_delta, cn_nabla, lattice_chain, lm_delta, lm_nabla, ln_plus, CATALOG_NAMES,
};

static KNOWN: LazyLock<HashMap<CanonicalKey, String>> = LazyLock::new(|| {
    let mut map = HashMap::new();
    let mut add = |a: FiniteAlgebra| {
        map.entry(a.canonical_key())
            .or_insert_with(|| a.name().to_string());
    };
    for name in CATALOG_NAMES {
        add(catalog(name).expect("catalog names resolve"));
    }
    for n in 1..=12 {
        add(ln_plus(n).expect("n >= 1"));
    }
    for n in 1..=10 {
        add(cn_delta(n).expect("n >= 1"));
        add(cn_nabla(n).expect("n >= 1"));
        add(lm_delta(n).expect("n >= 1"));
        add(lm_nabla(n).expect("n >= 1"));
    }
    for n in 2..=10 {
        add(lattice_chain(n).expect("n >= 1"));
    }
    map
});

/// The catalog or family name of an algebra isomorphic to `a`, if any.
pub fn identify(a: &FiniteAlgebra) -> Option<String> {
    if a.size() > 13 {
        return None;
    }
    KNOWN.get(&a.canonical_key()).cloned()
}

/// The recognized name, or the algebra's own name when unrecognized.
pub fn display_name(a: &FiniteAlgebra) -> String {
    identify(a).unwrap_or_else(|| {
        if a.name().is_empty() {
            format!("#{}", a.canonical_key().hash_prefix(8))
        } else {
            a.name().to_string()
        }
    })
}
