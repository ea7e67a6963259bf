//! Finite posets with Hasse diagrams, JSON and DOT output.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("malformed poset document: {0}")]
    Malformed(String),
    #[error("cover relation has a cycle through node {0}")]
    Cyclic(usize),
    #[error("poset has {size} elements; the cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// Optional short identifier shown next to the label, e.g. a key hash.
    tags: Vec<Option<String>>,
    leq: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: usize,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    key: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    nodes: Vec<NodeDoc>,
    covers: Vec<[usize; 2]>,
}

impl Poset {
    /// Builds from a reflexive, antisymmetric, transitive relation.
    pub fn from_relation(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        n: usize,
    ) -> Poset {
        assert_eq!(labels.len(), n);
        let leq = (0..n)
            .map(|i| (0..n).map(|j| leq(i, j)).collect())
            .collect();
        Poset {
            tags: vec![None; n],
            labels,
            leq,
        }
    }

    /// Builds from cover pairs `(lower, upper)` by reflexive-transitive closure.
    pub fn from_covers(
        labels: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(PosetError::Malformed(format!(
                    "cover ({a}, {b}) names a missing node"
                )));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| (0..n).any(|j| i != j && leq[i][j] && leq[j][i])) {
            return Err(PosetError::Cyclic(i));
        }
        Ok(Poset {
            tags: vec![None; n],
            labels,
            leq,
        })
    }

    pub fn with_tags(mut self, tags: Vec<Option<String>>) -> Poset {
        assert_eq!(tags.len(), self.len());
        self.tags = tags;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn tag(&self, i: usize) -> Option<&str> {
        self.tags[i].as_deref()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// Hasse edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Covers as label pairs, sorted.
    pub fn labelled_covers(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect();
        v.sort();
        v
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| !(0..self.len()).any(|i| self.lt(i, j)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.lt(i, j)))
            .collect()
    }

    /// Whether every pair has a least upper bound and a greatest lower bound.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        let bound = |i: usize, j: usize, up: bool| {
            let cands: Vec<usize> = (0..n)
                .filter(|&k| {
                    if up {
                        self.leq(i, k) && self.leq(j, k)
                    } else {
                        self.leq(k, i) && self.leq(k, j)
                    }
                })
                .collect();
            cands.iter().any(|&k| {
                cands
                    .iter()
                    .all(|&m| if up { self.leq(k, m) } else { self.leq(m, k) })
            })
        };
        n > 0 && (0..n).all(|i| (0..n).all(|j| bound(i, j, true) && bound(i, j, false)))
    }

    /// Order isomorphism test by backtracking over degree-compatible images.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        let profile = |p: &Poset, i: usize| {
            let below = (0..n).filter(|&k| p.leq(k, i)).count();
            let above = (0..n).filter(|&k| p.leq(i, k)).count();
            (below, above)
        };
        let mine: Vec<_> = (0..n).map(|i| profile(self, i)).collect();
        let theirs: Vec<_> = (0..n).map(|i| profile(other, i)).collect();
        let mut a = mine.clone();
        let mut b = theirs.clone();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        fn extend(
            p: &Poset,
            q: &Poset,
            mine: &[(usize, usize)],
            theirs: &[(usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let i = map.len();
            if i == p.len() {
                return true;
            }
            for j in 0..q.len() {
                if used[j] || mine[i] != theirs[j] {
                    continue;
                }
                if (0..i)
                    .all(|k| p.leq(k, i) == q.leq(map[k], j) && p.leq(i, k) == q.leq(j, map[k]))
                {
                    map.push(j);
                    used[j] = true;
                    if extend(p, q, mine, theirs, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        extend(
            self,
            other,
            &mine,
            &theirs,
            &mut Vec::new(),
            &mut vec![false; n],
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = PosetDoc {
            nodes: (0..self.len())
                .map(|i| NodeDoc {
                    id: i,
                    label: self.labels[i].clone(),
                    key: self.tags[i].clone(),
                })
                .collect(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_value(doc).expect("poset documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Poset, PosetError> {
        let doc: PosetDoc =
            serde_json::from_str(text).map_err(|e| PosetError::Malformed(e.to_string()))?;
        for (i, node) in doc.nodes.iter().enumerate() {
            if node.id != i {
                return Err(PosetError::Malformed(format!(
                    "node {i} has id {}; ids must be 0..n in order",
                    node.id
                )));
            }
        }
        let covers: Vec<(usize, usize)> = doc.covers.iter().map(|c| (c[0], c[1])).collect();
        let tags = doc.nodes.iter().map(|n| n.key.clone()).collect();
        let labels = doc.nodes.into_iter().map(|n| n.label).collect();
        Ok(Poset::from_covers(labels, &covers)?.with_tags(tags))
    }

    /// Hasse diagram in DOT, edges pointing upwards.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph {} {{\n  rankdir=BT;\n", dot_quote(graph_name));
        for i in 0..self.len() {
            let label = match &self.tags[i] {
                Some(t) => format!("{} {}", self.labels[i], t),
                None => self.labels[i].clone(),
            };
            out.push_str(&format!("  n{i} [label={}];\n", dot_quote(&label)));
        }
        for (a, b) in self.covers() {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn covers_of_a_diamond() {
        let p = Poset::from_covers(labels(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(p.leq(0, 3));
        assert_eq!(p.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(p.is_lattice());
        assert_eq!(p.maximal(), vec![3]);
    }

    #[test]
    fn redundant_edges_are_not_covers() {
        let p = Poset::from_covers(labels(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(matches!(
            Poset::from_covers(labels(2), &[(0, 1), (1, 0)]),
            Err(PosetError::Cyclic(_))
        ));
    }

    #[test]
    fn isomorphism_ignores_numbering() {
        let p = Poset::from_covers(labels(4), &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let q = Poset::from_covers(labels(4), &[(3, 2), (3, 1), (2, 0)]).unwrap();
        let r = Poset::from_covers(labels(4), &[(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        assert!(p.is_isomorphic(&q));
        assert!(!p.is_isomorphic(&r));
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::from_covers(labels(3), &[(0, 1), (0, 2)]).unwrap();
        let q = Poset::from_json(&p.to_json().to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn dot_points_edges_upwards() {
        let p = Poset::from_covers(labels(2), &[(0, 1)]).unwrap();
        let dot = p.to_dot("g");
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("n0 -> n1;"));
    }
}
