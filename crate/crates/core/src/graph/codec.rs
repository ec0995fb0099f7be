//! Line-oriented graph files.
//!
//! ```text
//! graph 3
//! e 0 0 1 3/2
//! e 1 1 2 1/1
//! rot 1 0.1 1.0
//! ```
//! Edge ends in `rot` lines are `<edge>.<side>` with side 0 at the first
//! listed endpoint. Blank lines and `#` comments are ignored.

use std::collections::HashMap;

use thiserror::Error;

use super::{Dart, Rotation, WeightedMultigraph};
use crate::rational::{fmt_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn parse_graph(text: &str) -> Result<WeightedMultigraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: HashMap<usize, (usize, usize, Rational, usize)> = HashMap::new();
    let mut rots: Vec<(usize, Vec<Dart>, usize)> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap_or("");
        let num = |t: Option<&str>, what: &str| -> Result<usize, ParseError> {
            t.ok_or_else(|| err(line_no, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("malformed {what}")))
        };
        match kind {
            "graph" => {
                if n.is_some() {
                    return Err(err(line_no, "duplicate header"));
                }
                n = Some(num(tok.next(), "vertex count")?);
            }
            "e" => {
                let vc = n.ok_or_else(|| err(line_no, "edge before header"))?;
                let id = num(tok.next(), "edge id")?;
                let u = num(tok.next(), "endpoint")?;
                let v = num(tok.next(), "endpoint")?;
                let w = tok.next().ok_or_else(|| err(line_no, "missing weight"))?;
                let w = parse_rational(w).map_err(|e| err(line_no, e.to_string()))?;
                for x in [u, v] {
                    if x >= vc {
                        return Err(err(line_no, format!("dangling endpoint {x}")));
                    }
                }
                if edges.insert(id, (u, v, w, line_no)).is_some() {
                    return Err(err(line_no, format!("duplicate edge id {id}")));
                }
            }
            "rot" => {
                n.ok_or_else(|| err(line_no, "rotation before header"))?;
                let v = num(tok.next(), "vertex")?;
                let mut darts = Vec::new();
                for t in tok.by_ref() {
                    let (e, s) = t.split_once('.').ok_or_else(|| err(line_no, format!("malformed edge-end `{t}`")))?;
                    let e = e.parse::<usize>().map_err(|_| err(line_no, format!("malformed edge-end `{t}`")))?;
                    let s = match s {
                        "0" => 0,
                        "1" => 1,
                        _ => return Err(err(line_no, format!("malformed edge-end `{t}`"))),
                    };
                    darts.push(Dart::new(e, s));
                }
                rots.push((v, darts, line_no));
                continue;
            }
            other => return Err(err(line_no, format!("unknown record `{other}`"))),
        }
        if tok.next().is_some() {
            return Err(err(line_no, "trailing tokens"));
        }
    }

    let n = n.ok_or_else(|| err(last_line.max(1), "missing `graph` header"))?;
    let mut g = WeightedMultigraph::new(n);
    for id in 0..edges.len() {
        let (u, v, w, _) = edges
            .remove(&id)
            .ok_or_else(|| err(last_line, format!("edge ids not dense: {id} missing")))?;
        g.add_edge(u, v, w).expect("endpoints checked");
    }
    if !rots.is_empty() {
        let mut cycles = vec![Vec::new(); n];
        let mut set = vec![false; n];
        for (v, darts, line_no) in rots {
            if v >= n {
                return Err(err(line_no, format!("rotation for unknown vertex {v}")));
            }
            if std::mem::replace(&mut set[v], true) {
                return Err(err(line_no, format!("duplicate rotation for vertex {v}")));
            }
            cycles[v] = darts;
        }
        g = g
            .with_rotation(Rotation { cycles })
            .map_err(|e| err(last_line, e.to_string()))?;
    }
    Ok(g)
}

pub fn serialize_graph(g: &WeightedMultigraph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for (i, e) in g.edges().iter().enumerate() {
        out.push_str(&format!("e {i} {} {} {}\n", e.u, e.v, fmt_rational(&e.weight)));
    }
    if let Some(rot) = g.rotation() {
        for (v, cyc) in rot.cycles.iter().enumerate() {
            out.push_str(&format!("rot {v}"));
            for d in cyc {
                out.push_str(&format!(" {}.{}", d.edge, d.side));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn single_edge() {
        let g = parse_graph("graph 2\ne 0 0 1 3/2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(*g.weight(0), rat(3, 2));
    }

    #[test]
    fn edgeless() {
        let g = parse_graph("# nothing\ngraph 3\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 0));
    }

    #[test]
    fn errors_name_line() {
        let e = parse_graph("graph 2\ne 0 0 1 4/0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("zero denominator"));
        assert!(parse_graph("graph 2\ne 0 0 2 1/1\n").unwrap_err().message.contains("dangling"));
        assert!(parse_graph("graph 2\ne 0 0 1 1/1\ne 0 1 0 1/1\n").unwrap_err().message.contains("duplicate"));
        assert!(parse_graph("graph 2\ne 1 0 1 1/1\n").is_err());
        assert!(parse_graph("graph 2\ne 0 0 1 1/x\n").unwrap_err().message.contains("malformed"));
    }

    #[test]
    fn round_trip_with_rotation() {
        let text = "graph 3\ne 0 0 1 1/2\ne 1 1 2 -3/1\ne 2 2 0 2/1\nrot 0 0.0 2.1\nrot 1 1.0 0.1\nrot 2 2.0 1.1\n";
        let g = parse_graph(text).unwrap();
        assert!(g.rotation().is_some());
        assert_eq!(serialize_graph(&g), text);
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }
}
