//! Size caps for the exhaustive algorithms.
//!
//! The caps are process-wide. Library defaults apply until [`install`] is called,
//! which the command-line front end does with values read from `MVMLAB_CAP_*`.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest product carrier.
    pub product: usize,
    /// Largest algebra whose subalgebras are found by a full subset scan.
    pub subalgebra_scan: usize,
    /// Largest algebra whose congruence lattice is built.
    pub congruence_lattice: usize,
    /// Search nodes allowed in one homomorphism search.
    pub homomorphism_nodes: usize,
    /// Largest poset whose downsets are listed.
    pub downset_poset: usize,
    /// Largest chain enumerated.
    pub enumerate_chain: usize,
    /// Largest lattice enumerated by brute force.
    pub enumerate_lattice: usize,
    /// Largest algebra admitted to an HS closure.
    pub hs_member: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            product: 64,
            subalgebra_scan: 16,
            congruence_lattice: 12,
            homomorphism_nodes: 10_000_000,
            downset_poset: 16,
            enumerate_chain: 7,
            enumerate_lattice: 6,
            hs_member: 64,
        }
    }
}

impl Limits {
    /// Defaults overridden by `MVMLAB_CAP_<FIELD>` variables, e.g.
    /// `MVMLAB_CAP_ENUMERATE_CHAIN=8`. Unparsable values are reported.
    pub fn from_env() -> Result<Self, String> {
        let mut l = Limits::default();
        let fields: [(&str, &mut usize); 8] = [
            ("PRODUCT", &mut l.product),
            ("SUBALGEBRA_SCAN", &mut l.subalgebra_scan),
            ("CONGRUENCE_LATTICE", &mut l.congruence_lattice),
            ("HOMOMORPHISM_NODES", &mut l.homomorphism_nodes),
            ("DOWNSET_POSET", &mut l.downset_poset),
            ("ENUMERATE_CHAIN", &mut l.enumerate_chain),
            ("ENUMERATE_LATTICE", &mut l.enumerate_lattice),
            ("HS_MEMBER", &mut l.hs_member),
        ];
        for (suffix, slot) in fields {
            let key = format!("MVMLAB_CAP_{suffix}");
            if let Ok(text) = std::env::var(&key) {
                *slot = text
                    .trim()
                    .parse()
                    .map_err(|_| format!("{key}={text:?} is not a non-negative integer"))?;
            }
        }
        Ok(l)
    }
}

static INSTALLED: OnceLock<Limits> = OnceLock::new();

/// Sets the process-wide caps. Only the first call has an effect.
pub fn install(limits: Limits) {
    let _ = INSTALLED.set(limits);
}

pub fn current() -> Limits {
    INSTALLED.get().copied().unwrap_or_default()
}
