//! JSON and DOT renderings of a presentation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{
    ArrowDatum, GabrielQuiver, PathSymbolWord, PresentationError, QuiverPresentation, Relation, RelationKind,
    Substitution, Symbol,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonadjacentJson {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "Y")]
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub kind: RelationKind,
    pub lhs: Vec<Symbol>,
    pub rhs: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionJson {
    pub symbol: Symbol,
    pub word: Vec<Symbol>,
}

/// Wire form of a [`QuiverPresentation`]; `relations` holds the relations
/// over the extended quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    pub k: usize,
    pub adjacent_x: Vec<bool>,
    pub adjacent_y: Vec<bool>,
    pub nonadjacent: Vec<NonadjacentJson>,
    pub relations: Vec<RelationJson>,
    pub closure: bool,
    #[serde(default)]
    pub substitutions: Vec<SubstitutionJson>,
    #[serde(default)]
    pub relations_admissible: Vec<RelationJson>,
}

fn rel_json(r: &Relation) -> RelationJson {
    RelationJson { kind: r.kind, lhs: r.lhs.symbols().to_vec(), rhs: r.rhs.symbols().to_vec() }
}

impl From<&QuiverPresentation> for PresentationJson {
    fn from(qp: &QuiverPresentation) -> Self {
        let q = &qp.quiver;
        PresentationJson {
            n: q.n,
            k: q.k,
            adjacent_x: q.adjacent_x.clone(),
            adjacent_y: q.adjacent_y.clone(),
            nonadjacent: q
                .nonadjacent
                .iter()
                .map(|d| NonadjacentJson { from: d.from, to: d.to, x: d.x, y: d.y })
                .collect(),
            relations: qp.relations_circ.iter().map(rel_json).collect(),
            closure: qp.closure,
            substitutions: qp
                .substitutions
                .iter()
                .map(|s| SubstitutionJson { symbol: s.symbol, word: s.word.symbols().to_vec() })
                .collect(),
            relations_admissible: qp.relations_admissible.iter().map(rel_json).collect(),
        }
    }
}

impl TryFrom<PresentationJson> for QuiverPresentation {
    type Error = PresentationError;
    fn try_from(j: PresentationJson) -> Result<Self, Self::Error> {
        let n = j.n;
        let rel = |r: RelationJson| -> Result<Relation, PresentationError> {
            let lhs = PathSymbolWord::new(n, r.lhs)?;
            let rhs = PathSymbolWord::new(n, r.rhs)?;
            Ok(Relation { kind: r.kind, lhs, rhs })
        };
        let quiver = GabrielQuiver {
            n,
            k: j.k,
            adjacent_x: j.adjacent_x,
            adjacent_y: j.adjacent_y,
            nonadjacent: j.nonadjacent.iter().map(|d| ArrowDatum::new(n, d.from, d.to, d.x, d.y)).collect(),
        };
        Ok(QuiverPresentation {
            quiver,
            relations_circ: j.relations.into_iter().map(rel).collect::<Result<_, _>>()?,
            substitutions: j
                .substitutions
                .into_iter()
                .map(|s| Ok(Substitution { symbol: s.symbol, word: PathSymbolWord::new(n, s.word)? }))
                .collect::<Result<_, PresentationError>>()?,
            relations_admissible: j.relations_admissible.into_iter().map(rel).collect::<Result<_, _>>()?,
            closure: j.closure,
        })
    }
}

/// Renders the presentation as pretty JSON or as a DOT digraph of the Gabriel quiver.
pub fn export_presentation(qp: &QuiverPresentation, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&PresentationJson::from(qp)).expect("plain data serialises");
            s.push('\n');
            s
        }
        ExportFormat::Dot => dot(&qp.quiver),
    }
}

fn dot(q: &GabrielQuiver) -> String {
    let n = q.n;
    let mut s = String::new();
    let _ = writeln!(s, "digraph boundary_quiver {{");
    let _ = writeln!(s, "  layout=circo;");
    let _ = writeln!(s, "  node [shape=circle];");
    for v in 1..=n {
        let _ = writeln!(s, "  {v};");
    }
    for i in 1..=n {
        if q.adjacent_x[i - 1] {
            let _ = writeln!(s, "  {} -> {} [label=\"x{}\", color=black];", i, crate::perm::cyc(i + 1, n), i);
        }
    }
    for i in 1..=n {
        if q.adjacent_y[i - 1] {
            let _ = writeln!(s, "  {} -> {} [label=\"y{}\", color=gray40];", crate::perm::cyc(i + 1, n), i, i);
        }
    }
    for d in &q.nonadjacent {
        let _ = writeln!(s, "  {} -> {} [label=\"{}:{}\", color=red, style=bold];", d.from, d.to, d.x, d.y);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_permutation, DecoratedPermutation};
    use crate::presentation::presentation;

    #[test]
    fn dot_arrow_counts() {
        let qp = presentation(&parse_permutation("2 5 6 1 3 4").unwrap()).unwrap();
        let d = export_presentation(&qp, ExportFormat::Dot);
        assert_eq!(d.matches("->").count(), 11);
        assert!(d.contains("3 -> 1 [label=\"2:1\""));
        let u = presentation(&DecoratedPermutation::uniform(2, 4).unwrap()).unwrap();
        assert_eq!(export_presentation(&u, ExportFormat::Dot).matches("->").count(), 8);
    }

    #[test]
    fn json_roundtrip() {
        for s in ["2 5 6 1 3 4", "4 5 8 2 9 1 6 7 3"] {
            let qp = presentation(&parse_permutation(s).unwrap()).unwrap();
            let text = export_presentation(&qp, ExportFormat::Json);
            let j: PresentationJson = serde_json::from_str(&text).unwrap();
            assert_eq!(QuiverPresentation::try_from(j).unwrap(), qp);
        }
    }

    #[test]
    fn json_schema_keys() {
        let qp = presentation(&parse_permutation("2 5 6 1 3 4").unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&export_presentation(&qp, ExportFormat::Json)).unwrap();
        assert_eq!(v["nonadjacent"][0], serde_json::json!({"from": 3, "to": 1, "X": 2, "Y": 1}));
        assert_eq!(v["closure"], serde_json::json!(true));
        assert_eq!(v["relations"][0]["kind"], serde_json::json!("commutation"));
        assert_eq!(v["relations"][0]["lhs"], serde_json::json!(["x1", "y1"]));
    }
}
