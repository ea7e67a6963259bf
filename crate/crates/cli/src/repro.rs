//! Figure and count reproduction. Every order relation is computed by the
//! library; this module only selects inputs and formats results.

use serde_json::{json, Value};

use mvmlab_core::axioms::si_necessary_condition;
use mvmlab_core::congruence::{congruence_lattice, is_subdirectly_irreducible};
use mvmlab_core::constructions::{catalog, cn_delta, cn_nabla, lattice_chain, ln_plus};
use mvmlab_core::enumerate::{enumerate_chain, Filter};
use mvmlab_core::morphisms::{downset_lattice, hs_closure, si_poset, SiPoset};
use mvmlab_core::poset::Poset;
use mvmlab_core::FiniteAlgebra;

use crate::{algebra_value, CliError};

pub const TARGETS: &[&str] = &[
    "fig1", "fig2", "fig3", "fig4", "fig6", "fig7", "fig8", "fig9", "counts",
];

/// A JSON document and, for diagram targets, its DOT rendering.
#[derive(Debug, Clone)]
pub struct ReproOutput {
    pub json: Value,
    pub dot: Option<String>,
}

pub fn repro(target: &str, depth: Option<usize>) -> Result<ReproOutput, CliError> {
    match target {
        "fig1" => almost_minimal(depth.unwrap_or(5)),
        "fig2" => chang_chains(depth.unwrap_or(3)),
        "fig3" => catalog_table(target, 3, Filter::All),
        "fig4" => catalog_table(target, 4, Filter::SINecessary),
        "fig6" => boolean_congruences(),
        "fig7" => small_si_poset(),
        "fig8" => second_zoom(),
        "fig9" => three_element_varieties(),
        "counts" => counts(),
        other => Err(CliError::UnknownTarget(other.to_string())),
    }
}

fn si_chains(max_size: usize) -> Result<Vec<FiniteAlgebra>, CliError> {
    let mut out = Vec::new();
    for n in 2..=max_size {
        out.extend(enumerate_chain(n, Filter::SI)?);
    }
    Ok(out)
}

/// Appends DOT statements before the closing brace.
fn extend_dot(dot: String, extra: &[String]) -> String {
    let body = dot
        .trim_end()
        .strip_suffix('}')
        .expect("DOT graphs end with a brace");
    let mut out = body.to_string();
    for line in extra {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// The trivial variety below `V(A)` for each member, ordered as the SI poset.
fn principal_varieties(si: &SiPoset) -> Poset {
    let m = si.poset.len();
    let mut labels = vec!["T".to_string()];
    labels.extend((0..m).map(|i| format!("V({})", si.poset.label(i))));
    let mut tags = vec![None];
    tags.extend((0..m).map(|i| si.poset.tag(i).map(str::to_string)));
    Poset::from_relation(
        labels,
        |i, j| i == 0 || (j > 0 && si.poset.leq(i - 1, j - 1)),
        m + 1,
    )
    .with_tags(tags)
}

/// Members whose only strictly smaller member is the 2-element algebra.
fn atoms_above_two_element(si: &SiPoset) -> Vec<usize> {
    let two = si
        .members
        .iter()
        .position(|a| a.size() == 2)
        .expect("the 2-element algebra is a candidate");
    (0..si.poset.len())
        .filter(|&i| i != two && (0..si.poset.len()).filter(|&j| si.poset.lt(j, i)).eq([two]))
        .collect()
}

fn bottom_candidates(max_index: usize) -> Result<Vec<FiniteAlgebra>, CliError> {
    let mut cands: Vec<FiniteAlgebra> = (1..=max_index).map(ln_plus).collect::<Result<_, _>>()?;
    cands.push(cn_delta(2)?);
    cands.push(cn_nabla(2)?);
    let si = si_poset(&cands)?;
    let mut keep = atoms_above_two_element(&si);
    keep.extend(si.members.iter().position(|a| a.size() == 2));
    keep.sort_unstable();
    Ok(keep.into_iter().map(|i| si.members[i].clone()).collect())
}

/// A dashed placeholder standing for an infinite family above `above`,
/// which names poset nodes or earlier placeholders.
struct Continuation {
    label: String,
    above: Vec<String>,
}

fn with_continuations(target: &str, p: &Poset, extra: &[Continuation]) -> (Value, String) {
    let node_id = |label: &str| -> String {
        match (0..p.len()).find(|&i| p.label(i) == label) {
            Some(i) => format!("n{i}"),
            None => {
                let k = extra
                    .iter()
                    .position(|c| c.label == label)
                    .expect("continuation refers to a known node");
                format!("c{k}")
            }
        }
    };
    let mut lines = Vec::new();
    for (k, c) in extra.iter().enumerate() {
        lines.push(format!("c{k} [label={:?}, style=dashed];", c.label));
    }
    for (k, c) in extra.iter().enumerate() {
        for below in &c.above {
            lines.push(format!("{} -> c{k} [style=dashed];", node_id(below)));
        }
    }
    let cont: Vec<Value> = extra
        .iter()
        .map(|c| json!({"label": c.label, "above": c.above}))
        .collect();
    let json = json!({"target": target, "poset": p.to_json(), "continuation": cont});
    (json, extend_dot(p.to_dot(target), &lines))
}

fn almost_minimal(max_index: usize) -> Result<ReproOutput, CliError> {
    let max_index = max_index.max(2);
    let si = si_poset(&bottom_candidates(max_index)?)?;
    let p = principal_varieties(&si);
    let extra = [Continuation {
        label: format!("V(Lp+) for every prime p > {max_index}"),
        above: vec![format!("V({})", ln_plus(1)?.name())],
    }];
    let (json, dot) = with_continuations("fig1", &p, &extra);
    Ok(ReproOutput {
        json,
        dot: Some(dot),
    })
}

fn chang_chains(depth: usize) -> Result<ReproOutput, CliError> {
    let depth = depth.max(2);
    let primes_up_to = 5;
    let mut gens = bottom_candidates(primes_up_to)?;
    for n in 3..=depth {
        gens.push(cn_delta(n)?);
        gens.push(cn_nabla(n)?);
    }
    let si = si_poset(&gens)?;
    let p = principal_varieties(&si);
    let (cd, cn, cplus) = (
        "V(C^D)".to_string(),
        "V(C^N)".to_string(),
        "V(C+)".to_string(),
    );
    let extra = [
        Continuation {
            label: cd.clone(),
            above: vec![format!("V({})", cn_delta(depth)?.name())],
        },
        Continuation {
            label: cn.clone(),
            above: vec![format!("V({})", cn_nabla(depth)?.name())],
        },
        Continuation {
            label: cplus,
            above: vec![cd, cn],
        },
        Continuation {
            label: format!("V(Lp+) for every prime p > {primes_up_to}"),
            above: vec![format!("V({})", ln_plus(1)?.name())],
        },
    ];
    let (mut json, dot) = with_continuations("fig2", &p, &extra);
    json["depth"] = json!(depth);
    Ok(ReproOutput {
        json,
        dot: Some(dot),
    })
}

/// Element names along the chain: `0`, then the inner elements from the top
/// down as `a`, `b`, …, then `1`.
fn element_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == n - 1 => "1".to_string(),
            _ => char::from(b'a' + (n - 2 - i) as u8).to_string(),
        })
        .collect()
}

/// Values of `⊕` and `⊙` on pairs of inner elements, the entries not fixed by
/// the constants.
fn inner_entries(a: &FiniteAlgebra, sym: &str, op: impl Fn(usize, usize) -> usize) -> Value {
    let n = a.size();
    let names = element_names(n);
    let mut map = serde_json::Map::new();
    for i in (1..n.saturating_sub(1)).rev() {
        for j in (1..=i).rev() {
            map.insert(
                format!("{}{sym}{}", names[i], names[j]),
                json!(names[op(i, j)]),
            );
        }
    }
    Value::Object(map)
}

fn catalog_table(target: &str, size: usize, filter: Filter) -> Result<ReproOutput, CliError> {
    let algebras = enumerate_chain(size, filter)?;
    let mut rows = Vec::new();
    for a in &algebras {
        rows.push(json!({
            "name": a.name(),
            "oplus": inner_entries(a, "+", |x, y| a.oplus(x, y)),
            "odot": inner_entries(a, "*", |x, y| a.odot(x, y)),
            "si_necessary_condition": si_necessary_condition(a),
            "subdirectly_irreducible": is_subdirectly_irreducible(a)?,
            "algebra": algebra_value(a),
        }));
    }
    let json = json!({
        "target": target,
        "size": size,
        "elements": element_names(size),
        "count": algebras.len(),
        "algebras": rows,
    });
    Ok(ReproOutput { json, dot: None })
}

fn boolean_congruences() -> Result<ReproOutput, CliError> {
    let chain = lattice_chain(4)?;
    let con = congruence_lattice(&chain)?;
    let p = con.to_poset();
    let json = json!({
        "target": "fig6",
        "algebra": chain.name(),
        "size": con.len(),
        "is_lattice": p.is_lattice(),
        "poset": p.to_json(),
    });
    Ok(ReproOutput {
        json,
        dot: Some(p.to_dot(&format!("Con({})", chain.name()))),
    })
}

fn small_si_poset() -> Result<ReproOutput, CliError> {
    let si = si_poset(&si_chains(4)?)?;
    let json = json!({"target": "fig7", "size": si.poset.len(), "poset": si.poset.to_json()});
    Ok(ReproOutput {
        json,
        dot: Some(si.poset.to_dot("si_le_4")),
    })
}

/// Downset lattice of an SI poset, each downset labelled by the variety its
/// maximal elements generate.
fn variety_lattice(target: &str, members: &[FiniteAlgebra]) -> Result<ReproOutput, CliError> {
    let si = si_poset(members)?;
    let d = downset_lattice(&si.poset)?;
    let labels: Vec<String> = (0..d.poset.len())
        .map(|i| {
            let gens = d.generators(&si.poset, i);
            if gens.is_empty() {
                "T".to_string()
            } else {
                let names: Vec<&str> = gens.iter().map(|&g| si.poset.label(g)).collect();
                format!("V({})", names.join(", "))
            }
        })
        .collect();
    let m = labels.len();
    let p = Poset::from_relation(labels, |i, j| d.poset.leq(i, j), m);
    let json = json!({
        "target": target,
        "generators": si.poset.to_json(),
        "size": p.len(),
        "is_lattice": p.is_lattice(),
        "poset": p.to_json(),
    });
    Ok(ReproOutput {
        json,
        dot: Some(p.to_dot(target)),
    })
}

fn second_zoom() -> Result<ReproOutput, CliError> {
    let closure = hs_closure(&[catalog("A3N")?, catalog("B3D")?])?;
    let mut members = Vec::new();
    for a in closure.into_values() {
        if is_subdirectly_irreducible(&a)? {
            members.push(a);
        }
    }
    variety_lattice("fig8", &members)
}

fn three_element_varieties() -> Result<ReproOutput, CliError> {
    variety_lattice("fig9", &si_chains(3)?)
}

fn counts() -> Result<ReproOutput, CliError> {
    let count = |n, f| enumerate_chain(n, f).map(|v| v.len());
    let json = json!({
        "size3": count(3, Filter::All)?,
        "size4_total": count(4, Filter::All)?,
        "size4_siNecessary": count(4, Filter::SINecessary)?,
        "size5_siNecessary": count(5, Filter::SINecessary)?,
    });
    Ok(ReproOutput { json, dot: None })
}
