use std::collections::{BTreeSet, HashMap};

use super::Graph;
use crate::error::GraphError;

/// Parses the edge-list text format.
///
/// One edge per line as two whitespace-separated labels; `#` starts a comment
/// line. Without a header, labels may be arbitrary tokens and are compacted to
/// `0..n` in order of first appearance. An optional first line `n=<count>`
/// declares the vertex set `0..count` explicitly (so isolated vertices can be
/// expressed); labels must then be integers below `count` and are kept as is.
pub fn parse_edge_list(id: &str, text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut seen_content = false;
    let mut labels: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut edge_set = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n") {
            if let Some(count) = rest.trim_start().strip_prefix('=') {
                if seen_content {
                    return Err(parse_err(line_no, "`n=` header must be the first line"));
                }
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, "vertex count must be a nonnegative integer"))?;
                declared = Some(count);
                seen_content = true;
                continue;
            }
        }
        seen_content = true;

        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = tokens[..] else {
            return Err(parse_err(line_no, "expected exactly two vertex labels"));
        };
        if a == b {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        let (u, v) = match declared {
            Some(n) => (declared_label(a, n, line_no)?, declared_label(b, n, line_no)?),
            None => (intern(a, &mut labels, &mut names), intern(b, &mut labels, &mut names)),
        };
        if !edge_set.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
        }
        edges.push((u, v));
    }

    let n = declared.unwrap_or(names.len());
    Graph::new(id, n, edges)
}

/// Canonical serializer: `n=` header followed by the sorted edge list.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.order());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_err(line: usize, message: &str) -> GraphError {
    GraphError::Parse {
        line,
        message: message.to_string(),
    }
}

fn declared_label(token: &str, n: usize, line: usize) -> Result<usize, GraphError> {
    match token.parse::<usize>() {
        Ok(v) if v < n => Ok(v),
        Ok(v) => Err(parse_err(line, &format!("label {v} out of range for declared n={n}"))),
        Err(_) => Err(parse_err(
            line,
            &format!("label {token:?} is not an integer (required with an `n=` header)"),
        )),
    }
}

fn intern(token: &str, labels: &mut HashMap<String, usize>, names: &mut Vec<String>) -> usize {
    *labels.entry(token.to_string()).or_insert_with(|| {
        names.push(token.to_string());
        names.len() - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn path_p3() {
        let g = parse_edge_list("p3", "0 1\n1 2").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn complete_k4() {
        let g = parse_edge_list("k4", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 6);
        assert_eq!(g, Graph::complete("k4", 4));
    }

    #[test]
    fn self_loop_is_rejected() {
        assert_eq!(parse_edge_list("x", "0 0"), Err(GraphError::SelfLoop("0".into())));
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        assert!(matches!(
            parse_edge_list("x", "a b\nb a"),
            Err(GraphError::DuplicateEdge(..))
        ));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_edge_list("x", "# header\n0 1\n1 2 3\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn string_labels_compact_in_first_appearance_order() {
        let g = parse_edge_list("x", "c a\na 17\n").unwrap();
        // c -> 0, a -> 1, 17 -> 2
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn header_allows_isolated_vertices() {
        let g = parse_edge_list("x", "# two isolated\nn=4\n0 1\n").unwrap();
        assert_eq!(g.order(), 4);
        assert!(!g.is_connected().unwrap());
        assert!(matches!(
            parse_edge_list("x", "n=2\n0 5"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("x", "0 1\nn=3"),
            Err(GraphError::Parse { line: 2, .. })
        ));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..30).prop_map(move |pairs| {
                let edges: BTreeSet<_> = pairs
                    .into_iter()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| (u.min(v), u.max(v)))
                    .collect();
                Graph::new("g", n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn serializer_round_trips(g in arb_graph()) {
            let parsed = parse_edge_list("g", &to_edge_list(&g)).unwrap();
            prop_assert_eq!(parsed, g);
        }
    }
}
