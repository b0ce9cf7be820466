//! Text formats: vines as JSON (edge labels only), matrices as lower-triangle CSV.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cherry::{CherryTree, CherryTreeSequence};
use crate::chordal::ChordalGraph;
use crate::error::{Result, VineError};
use crate::matrix::VineMatrix;
use crate::model::{EdgeLabel, VarSet, VineStructure};
use crate::report::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("level {level}, edge {edge}: {message}")]
    Edge { level: usize, edge: usize, message: String },
    #[error("duplicate edge {label} at level {level}")]
    DuplicateEdge { level: usize, label: String },
    #[error("tree level {level} is not in 1..{max} or appears twice")]
    Level { level: usize, max: usize },
    #[error("row {row} must have {row} entries")]
    RaggedRow { row: usize },
    #[error("row {row}, column {column}: {message}")]
    Cell { row: usize, column: usize, message: String },
    #[error("matrix is empty")]
    EmptyMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VineDoc {
    n: usize,
    trees: Vec<TreeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    level: usize,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    conditioned: Vec<u32>,
    #[serde(default)]
    conditioning: Vec<u32>,
}

fn doc(v: &VineStructure) -> VineDoc {
    VineDoc {
        n: v.n(),
        trees: v
            .trees()
            .iter()
            .map(|t| TreeDoc {
                level: t.level(),
                edges: t
                    .sorted_labels()
                    .iter()
                    .map(|l| EdgeDoc {
                        conditioned: l.conditioned().values(),
                        conditioning: l.conditioning().values(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Pretty-printed JSON with sorted sets and edges, newline-terminated.
pub fn serialize_vine_json(v: &VineStructure) -> String {
    let mut s = serde_json::to_string_pretty(&doc(v)).expect("serializable");
    s.push('\n');
    s
}

/// Single-line JSON, for JSON-lines streams.
pub fn serialize_vine_json_compact(v: &VineStructure) -> String {
    serde_json::to_string(&doc(v)).expect("serializable")
}

fn parse_set(values: &[u32], n: usize, level: usize, edge: usize, what: &str) -> Result<VarSet, ParseError> {
    if let Some(&bad) = values.iter().find(|&&x| x == 0 || x as usize > n) {
        return Err(ParseError::Edge {
            level,
            edge,
            message: format!("{what} value {bad} is outside 1..{n}"),
        });
    }
    VarSet::from_values(values).ok_or_else(|| ParseError::Edge {
        level,
        edge,
        message: format!("{what} set repeats a variable"),
    })
}

/// Parses a vine from its edge labels; clusters are derived level by level.
/// Syntax and label problems are [`ParseError`]s; a well-formed file that
/// breaks the vine rules yields [`VineError::InvalidVine`].
pub fn parse_vine_json(text: &str) -> Result<VineStructure> {
    let doc: VineDoc = serde_json::from_str(text).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = doc.n;
    if n < 2 {
        let mut r = ValidationReport::default();
        r.push(Violation::TooFewVariables { n });
        return Err(VineError::InvalidVine(r));
    }
    if doc.trees.len() != n - 1 {
        let mut r = ValidationReport::default();
        r.push(Violation::TreeCount {
            expected: n - 1,
            found: doc.trees.len(),
        });
        return Err(VineError::InvalidVine(r));
    }

    let mut levels: Vec<Option<Vec<EdgeLabel>>> = vec![None; n - 1];
    for tree in &doc.trees {
        let level = tree.level;
        if level == 0 || level >= n || levels[level - 1].is_some() {
            return Err(ParseError::Level { level, max: n - 1 }.into());
        }
        let mut seen = BTreeSet::new();
        let mut labels = Vec::with_capacity(tree.edges.len());
        for (idx, e) in tree.edges.iter().enumerate() {
            if e.conditioned.len() != 2 {
                return Err(ParseError::Edge {
                    level,
                    edge: idx,
                    message: "conditioned set must have size 2".into(),
                }
                .into());
            }
            let d = parse_set(&e.conditioned, n, level, idx, "conditioned")?;
            let s = parse_set(&e.conditioning, n, level, idx, "conditioning")?;
            let label = EdgeLabel::new(d, s).map_err(|err| ParseError::Edge {
                level,
                edge: idx,
                message: err.to_string(),
            })?;
            if !seen.insert(label.clone()) {
                return Err(ParseError::DuplicateEdge {
                    level,
                    label: label.to_string(),
                }
                .into());
            }
            labels.push(label);
        }
        levels[level - 1] = Some(labels);
    }
    let levels = levels.into_iter().map(|l| l.expect("every level present")).collect();
    VineStructure::from_edge_labels(n, levels).map_err(VineError::InvalidVine)
}

/// `n` lines, line `i` holding the `i` lower-triangle entries of row `i`.
pub fn serialize_matrix_csv(m: &VineMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_matrix_csv(text: &str) -> Result<VineMatrix, ParseError> {
    let mut lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(ParseError::EmptyMatrix);
    }
    let n = lines.len();
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.iter().enumerate() {
        let row = i + 1;
        let tokens: Vec<&str> = if line.trim().is_empty() {
            Vec::new()
        } else {
            line.split(',').collect()
        };
        if tokens.len() != row {
            return Err(ParseError::RaggedRow { row });
        }
        let mut values = Vec::with_capacity(row);
        for (j, tok) in tokens.iter().enumerate() {
            let column = j + 1;
            let tok = tok.trim();
            let v: u32 = tok.parse().map_err(|_| ParseError::Cell {
                row,
                column,
                message: format!("'{tok}' is not a non-negative integer"),
            })?;
            if v == 0 || v as usize > n {
                return Err(ParseError::Cell {
                    row,
                    column,
                    message: format!("value {v} is outside 1..{n}"),
                });
            }
            values.push(v);
        }
        rows.push(values);
    }
    Ok(VineMatrix::from_rows(&rows).expect("row lengths checked"))
}

pub fn cherry_tree_json(t: &CherryTree) -> Value {
    json!({
        "order": t.order(),
        "clusters": t.clusters().iter().map(VarSet::values).collect::<Vec<_>>(),
        "edges": t.edges().iter().map(|e| json!({
            "a": e.a,
            "b": e.b,
            "separator": e.separator.values(),
        })).collect::<Vec<_>>(),
    })
}

pub fn cherry_sequence_json(c: &CherryTreeSequence) -> Value {
    json!({ "trees": c.trees().iter().map(cherry_tree_json).collect::<Vec<_>>() })
}

pub fn chordal_graph_json(level: usize, g: &ChordalGraph) -> Value {
    json!({
        "level": level,
        "vertices": g.vertices().values(),
        "edges": g.edges().iter().map(|(a, b)| [a.get(), b.get()]).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::fixtures::m5;
    use crate::model::fixtures::{n2, v5};

    #[test]
    fn vine_json_round_trip() {
        let text = serialize_vine_json(&v5());
        let back = parse_vine_json(&text).unwrap();
        assert!(back.same_structure(&v5()));
        assert_eq!(serialize_vine_json(&back), text);
        let line = serialize_vine_json_compact(&n2());
        assert_eq!(
            line,
            r#"{"n":2,"trees":[{"level":1,"edges":[{"conditioned":[1,2],"conditioning":[]}]}]}"#
        );
    }

    #[test]
    fn conditioning_may_be_omitted() {
        let v = parse_vine_json(r#"{"n":2,"trees":[{"level":1,"edges":[{"conditioned":[2,1]}]}]}"#).unwrap();
        assert!(v.same_structure(&n2()));
    }

    #[test]
    fn vine_json_errors() {
        let bad = r#"{"n":3,"trees":[{"level":1,"edges":[{"conditioned":[1,2,3]}]},{"level":2,"edges":[]}]}"#;
        let err = parse_vine_json(bad).unwrap_err();
        assert!(err.to_string().ends_with("conditioned set must have size 2"), "{err}");

        let mut doc: Value = serde_json::from_str(&serialize_vine_json(&v5())).unwrap();
        doc["trees"].as_array_mut().unwrap().remove(2);
        let err = parse_vine_json(&doc.to_string()).unwrap_err();
        assert_eq!(err.to_string(), "invalid vine: expected 4 trees, found 3");

        let dup = r#"{"n":2,"trees":[{"level":1,"edges":[{"conditioned":[1,2]},{"conditioned":[2,1]}]}]}"#;
        assert!(matches!(
            parse_vine_json(dup),
            Err(VineError::Parse(ParseError::DuplicateEdge { .. }))
        ));

        let err = parse_vine_json("{\"n\": 2,\n \"trees\": [").unwrap_err();
        assert!(
            matches!(err, VineError::Parse(ParseError::Json { line: 2, .. })),
            "{err}"
        );

        let range = r#"{"n":2,"trees":[{"level":1,"edges":[{"conditioned":[1,3]}]}]}"#;
        assert!(matches!(
            parse_vine_json(range),
            Err(VineError::Parse(ParseError::Edge { .. }))
        ));

        // well-formed but not a tree
        let cyc = r#"{"n":3,"trees":[{"level":1,"edges":[{"conditioned":[1,2]}]},{"level":2,"edges":[]}]}"#;
        assert!(matches!(parse_vine_json(cyc), Err(VineError::InvalidVine(_))));
    }

    #[test]
    fn csv_round_trip() {
        let text = serialize_matrix_csv(&m5());
        assert_eq!(text, "4\n5,1\n1,5,2\n2,3,5,3\n3,2,3,5,5\n");
        assert_eq!(parse_matrix_csv(&text).unwrap(), m5());
        let two = VineMatrix::from_rows(&[vec![1], vec![2, 2]]).unwrap();
        assert_eq!(serialize_matrix_csv(&two), "1\n2,2\n");
        assert_eq!(parse_matrix_csv("1\r\n2,2").unwrap(), two);
    }

    #[test]
    fn csv_errors() {
        assert_eq!(
            parse_matrix_csv("1\n2\n").unwrap_err().to_string(),
            "row 2 must have 2 entries"
        );
        assert!(matches!(
            parse_matrix_csv("1\n2,x\n"),
            Err(ParseError::Cell { row: 2, column: 2, .. })
        ));
        assert!(matches!(
            parse_matrix_csv("1\n2,3\n"),
            Err(ParseError::Cell { row: 2, column: 2, .. })
        ));
        assert!(matches!(
            parse_matrix_csv("1\n\n"),
            Err(ParseError::RaggedRow { row: 2 })
        ));
        assert_eq!(parse_matrix_csv(""), Err(ParseError::EmptyMatrix));
    }
}
