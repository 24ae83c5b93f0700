//! Graph file formats: a DIMACS-like edge-list text format (`p lrw1 n m`
//! header, 1-indexed `e u v` lines, names carried in `c name` comments)
//! and a JSON object form, both round-tripping losslessly.

use crate::graph::Graph;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Serializes a graph to the text format.
pub fn write_graph_string(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    if let Some(names) = g.names() {
        for (i, name) in names.iter().enumerate() {
            out.push_str(&format!("c name {} {}\n", i + 1, name));
        }
    }
    out.push_str(&format!("p lrw1 {} {}\n", g.n(), edges.len()));
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses the text format. `source` labels error messages. Duplicate
/// edges are tolerated (deduplicated) and reported as warnings.
pub fn parse_graph(text: &str, source: &str) -> Result<(Graph, Vec<String>)> {
    let fail = |line: usize, msg: String| Error::Format {
        file: source.to_string(),
        line,
        msg,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut names: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut warnings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "c" => {
                let rest: Vec<&str> = parts.collect();
                if rest.first() == Some(&"name") {
                    if rest.len() < 3 {
                        return Err(fail(lno, "c name needs an index and a name".into()));
                    }
                    let idx: usize = rest[1]
                        .parse()
                        .map_err(|_| fail(lno, format!("bad vertex index `{}`", rest[1])))?;
                    names.push((idx, rest[2..].join(" ")));
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(fail(lno, "duplicate p header".into()));
                }
                let rest: Vec<&str> = parts.collect();
                if rest.len() != 3 || rest[0] != "lrw1" {
                    return Err(fail(lno, format!("expected `p lrw1 <n> <m>`, got `{line}`")));
                }
                let n = rest[1].parse().map_err(|_| fail(lno, format!("bad n `{}`", rest[1])))?;
                let m = rest[2].parse().map_err(|_| fail(lno, format!("bad m `{}`", rest[2])))?;
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(fail(lno, "edge before p header".into()));
                };
                let rest: Vec<&str> = parts.collect();
                if rest.len() != 2 {
                    return Err(fail(lno, format!("expected `e <u> <v>`, got `{line}`")));
                }
                let mut uv = [0usize; 2];
                for (slot, s) in uv.iter_mut().zip(&rest) {
                    let x: usize =
                        s.parse().map_err(|_| fail(lno, format!("bad vertex `{s}`")))?;
                    if x < 1 || x > n {
                        return Err(fail(lno, format!("vertex {x} out of range 1..={n}")));
                    }
                    *slot = x - 1;
                }
                let (u, v) = (uv[0].min(uv[1]), uv[0].max(uv[1]));
                if u == v {
                    return Err(fail(lno, format!("self-loop at vertex {}", u + 1)));
                }
                if edges.contains(&(u, v)) {
                    warnings.push(format!(
                        "{source}:{lno}: duplicate edge {} {}",
                        u + 1,
                        v + 1
                    ));
                } else {
                    edges.push((u, v));
                }
            }
            _ => return Err(fail(lno, format!("unrecognized line `{line}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(fail(text.lines().count().max(1), "missing p header".into()));
    };
    if edges.len() != m {
        warnings.push(format!(
            "{source}: header announces {m} edges, found {}",
            edges.len()
        ));
    }
    let mut g = Graph::from_edges(n, &edges);
    if !names.is_empty() {
        let mut full: Vec<String> = (0..n).map(|v| (v + 1).to_string()).collect();
        for (idx, name) in names {
            if idx < 1 || idx > n {
                return Err(fail(0, format!("named vertex {idx} out of range 1..={n}")));
            }
            full[idx - 1] = name;
        }
        g.set_names(full);
    }
    Ok((g, warnings))
}

/// Reads the text format from a file.
pub fn read_graph(path: &Path) -> Result<(Graph, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    parse_graph(&text, &path.display().to_string())
}

/// Writes the text format to a file.
pub fn write_graph(g: &Graph, path: &Path) -> Result<()> {
    std::fs::write(path, write_graph_string(g))?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

/// The JSON object form: {"n", "edges", "names"?}, 0-indexed.
pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::to_value(JsonGraph {
        n: g.n(),
        edges: g.edges(),
        names: g.names().map(|s| s.to_vec()),
    })
    .expect("graph serialization cannot fail")
}

/// Parses the JSON object form.
pub fn graph_from_json(v: &serde_json::Value) -> Result<Graph> {
    let j: JsonGraph = serde_json::from_value(v.clone()).map_err(|e| Error::Format {
        file: "<json>".into(),
        line: 0,
        msg: e.to_string(),
    })?;
    for &(u, w) in &j.edges {
        if u >= j.n || w >= j.n || u == w {
            return Err(Error::Format {
                file: "<json>".into(),
                line: 0,
                msg: format!("bad edge ({u}, {w}) in graph of order {}", j.n),
            });
        }
    }
    let mut g = Graph::from_edges(j.n, &j.edges);
    if let Some(names) = j.names {
        if names.len() != j.n {
            return Err(Error::Format {
                file: "<json>".into(),
                line: 0,
                msg: format!("{} names for {} vertices", names.len(), j.n),
            });
        }
        g.set_names(names);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn parse_examples() {
        let (g, w) = parse_graph("p lrw1 3 2\ne 1 2\ne 2 3\n", "t").unwrap();
        assert_eq!(g, Graph::path(3));
        assert!(w.is_empty());

        let (g, _) = parse_graph("c a comment\np lrw1 4 0\n", "t").unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.edges().is_empty());

        let (_, w) = parse_graph("p lrw1 2 1\ne 1 2\ne 2 1\n", "t").unwrap();
        assert_eq!(w.len(), 1, "duplicate edge warns");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        for (text, line) in [
            ("p lrw1 2 1\nx 1 2\n", 2),
            ("p lrw1 2 1\ne 1 3\n", 2),
            ("e 1 2\n", 1),
            ("p lrw1 2 0\np lrw1 2 0\n", 2),
            ("p lrw1 2 1\ne 1 1\n", 2),
        ] {
            match parse_graph(text, "t") {
                Err(Error::Format { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn round_trip_with_names() {
        let mut g = Graph::path(3);
        g.set_names(vec!["left".into(), "mid".into(), "right".into()]);
        let (h, w) = parse_graph(&write_graph_string(&g), "t").unwrap();
        assert_eq!(g, h);
        assert!(w.is_empty());

        let h = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn round_trip_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let n = rng.gen_range(0..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let (h, w) = parse_graph(&write_graph_string(&g), "t").unwrap();
            assert_eq!(g, h);
            assert!(w.is_empty());
            assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
        }
    }
}
