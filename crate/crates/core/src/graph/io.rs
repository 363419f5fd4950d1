use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// JSON form of an explicit graph: vertex count plus edge pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn from_graph(g: &Graph) -> Self {
        Self { n: g.order(), edges: g.edges().collect() }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, &self.edges)
    }
}

/// Parses the `n m` / `u v` edge-list format. Blank lines and lines starting
/// with `#` are skipped. Errors carry the 1-based line number.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(GraphError::Parse { line, message: format!("expected two integers, got {l:?}") }),
        }
    };
    let (hline, header) = lines
        .next()
        .ok_or(GraphError::Parse { line: 1, message: "missing header".into() })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut line_of = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(parse_pair(line, l)?);
        line_of.push(line);
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: hline,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges).map_err(|e| match e {
        GraphError::OutOfRange { index, vertex, n } => GraphError::Parse {
            line: line_of[index],
            message: format!("endpoint {vertex} out of range for {n} vertices"),
        },
        GraphError::SelfLoop { index, vertex } => GraphError::Parse {
            line: line_of[index],
            message: format!("self-loop at vertex {vertex}"),
        },
        other => other,
    })
}

/// Writes the edge-list format. Graphs with hung trees are written in full,
/// subject to [`super::MATERIALIZE_CAP`].
pub fn write_edge_list(g: &Graph) -> Result<String, GraphError> {
    if g.order() > super::MATERIALIZE_CAP {
        return Err(GraphError::TooLarge { order: g.order(), cap: super::MATERIALIZE_CAP });
    }
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(5);
        let text = write_edge_list(&g).unwrap();
        assert!(text.starts_with("5 5\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("3 2\n0 1\n1 7\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err:?}");
        let err = parse_edge_list("3 1\n# c\n\n2 2\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 4, .. }), "{err:?}");
        assert!(parse_edge_list("2 2\n0 1\n").is_err());
        assert!(parse_edge_list("x").is_err());
    }

    #[test]
    fn spec_json() {
        let spec: GraphSpec = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(spec.build().unwrap(), Graph::path(3));
    }
}
