//! JSON document form of [`FiniteAlgebra`].

use serde::Deserialize;

use super::{AlgebraError, FiniteAlgebra, Op, Table};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    name: Option<String>,
    size: usize,
    zero: usize,
    one: usize,
    oplus: Vec<Vec<i64>>,
    odot: Vec<Vec<i64>>,
    join: Option<Vec<Vec<i64>>>,
    meet: Option<Vec<Vec<i64>>>,
}

impl FiniteAlgebra {
    /// Parses the JSON document form.
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let doc: AlgebraDoc = serde_json::from_str(text)
            .map_err(|e| AlgebraError::MalformedDocument(e.to_string()))?;
        let name = doc.name.unwrap_or_default();
        let oplus = Table::from_signed_rows("oplus", doc.size, &doc.oplus)?;
        let odot = Table::from_signed_rows("odot", doc.size, &doc.odot)?;
        match (doc.join, doc.meet) {
            (None, None) => {
                if doc.zero != 0 || doc.one + 1 != doc.size {
                    return Err(AlgebraError::MalformedDocument(format!(
                        "an algebra without lattice tables is a chain and needs zero=0, one={}",
                        doc.size - 1
                    )));
                }
                FiniteAlgebra::chain(name, oplus, odot)
            }
            (Some(join), Some(meet)) => {
                let join = Table::from_signed_rows("join", doc.size, &join)?;
                let meet = Table::from_signed_rows("meet", doc.size, &meet)?;
                FiniteAlgebra::new(name, doc.zero, doc.one, join, meet, oplus, odot)
            }
            _ => Err(AlgebraError::MalformedDocument(
                "`join` and `meet` must be given together".into(),
            )),
        }
    }

    /// Serializes to the JSON document form with a fixed key order and one table
    /// row per line. Chain algebras omit `join` and `meet`.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!(
            "  \"name\": {},\n",
            serde_json::to_string(&self.name).expect("strings serialize")
        ));
        out.push_str(&format!("  \"size\": {},\n", self.size()));
        out.push_str(&format!("  \"zero\": {},\n", self.zero));
        out.push_str(&format!("  \"one\": {},\n", self.one));
        let mut ops = vec![("oplus", Op::Oplus), ("odot", Op::Odot)];
        if !self.chain {
            ops.push(("join", Op::Join));
            ops.push(("meet", Op::Meet));
        }
        let last = ops.len() - 1;
        for (i, (key, op)) in ops.into_iter().enumerate() {
            out.push_str(&format!("  \"{key}\": [\n"));
            let rows = self.table(op).rows();
            for (r, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let sep = if r + 1 == rows.len() { "" } else { "," };
                out.push_str(&format!("    [{}]{sep}\n", cells.join(", ")));
            }
            out.push_str(if i == last { "  ]\n" } else { "  ],\n" });
        }
        out.push('}');
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2_DELTA: &str = r#"{"name": "C2D", "size": 3, "zero": 0, "one": 2,
        "oplus": [[0,1,2],[1,1,2],[2,2,2]], "odot": [[0,0,0],[0,0,1],[0,1,2]]}"#;

    #[test]
    fn omitted_lattice_means_chain() {
        let a = FiniteAlgebra::from_json(C2_DELTA).unwrap();
        assert!(a.is_chain());
        assert_eq!(a.oplus(1, 1), 1);
        assert_eq!(a.join(1, 2), 2);
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let a = FiniteAlgebra::from_json(C2_DELTA).unwrap();
        let text = a.to_json();
        let b = FiniteAlgebra::from_json(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_json(), text);
    }

    #[test]
    fn out_of_range_entry_is_reported() {
        let bad = C2_DELTA.replace("[1,1,2]", "[1,7,2]");
        let err = FiniteAlgebra::from_json(&bad).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::TableOutOfRange {
                table: "oplus",
                row: 1,
                col: 1,
                value: 7,
                ..
            }
        ));
    }

    #[test]
    fn negative_entry_is_out_of_range() {
        let bad = C2_DELTA.replace("[0,0,1]", "[0,-1,1]");
        assert!(matches!(
            FiniteAlgebra::from_json(&bad),
            Err(AlgebraError::TableOutOfRange { value: -1, .. })
        ));
    }

    #[test]
    fn missing_field_is_malformed() {
        let bad = C2_DELTA.replace("\"zero\": 0,", "");
        assert!(matches!(
            FiniteAlgebra::from_json(&bad),
            Err(AlgebraError::MalformedDocument(_))
        ));
    }

    #[test]
    fn non_lattice_is_rejected() {
        let doc = r#"{"size": 2, "zero": 0, "one": 1,
            "oplus": [[0,1],[1,1]], "odot": [[0,0],[0,1]],
            "join": [[0,0],[0,1]], "meet": [[0,0],[0,1]]}"#;
        assert!(matches!(
            FiniteAlgebra::from_json(doc),
            Err(AlgebraError::NotALattice { .. })
        ));
    }
}
