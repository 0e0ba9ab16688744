//! Text formats: DIMACS and 0-based edge lists for graphs, a point sidecar
//! for polarity graphs, and arc lists with a vertex map for pair digraphs.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::LoopyGraph;
use crate::product::PairDigraph;

/// `p edge n m` header, then `e u v` lines with 1-based vertices. A loop at
/// `v` is written `e v v`. Comment lines record the loop count and, for
/// polarity graphs, `t` and `q`.
pub fn write_dimacs<W: Write>(g: &LoopyGraph, mut out: W) -> Result<()> {
    if let Some(o) = g.origin() {
        let name = if o.complemented { "complement of polarity graph" } else { "polarity graph" };
        writeln!(out, "c {name} G(t,q) t={} q={}", o.t, o.q)?;
    }
    writeln!(out, "c loops={}", g.loop_count())?;
    writeln!(out, "p edge {} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn read_dimacs<R: BufRead>(input: R) -> Result<LoopyGraph> {
    let mut graph: Option<LoopyGraph> = None;
    let mut declared = 0usize;
    let mut seen = 0usize;
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let parse_err = |msg: String| Error::Parse { line: lineno, msg };
        let mut it = line.split_whitespace();
        match it.next() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(parse_err("duplicate problem line".into()));
                }
                if it.next() != Some("edge") {
                    return Err(parse_err("expected 'p edge n m'".into()));
                }
                let n = parse_num(it.next(), lineno)?;
                declared = parse_num(it.next(), lineno)?;
                graph = Some(LoopyGraph::new(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| parse_err("edge before problem line".into()))?;
                let u = parse_num(it.next(), lineno)?;
                let v = parse_num(it.next(), lineno)?;
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(parse_err(format!("vertex out of range 1..={}", g.n())));
                }
                g.add_edge(u - 1, v - 1);
                seen += 1;
            }
            Some(tok) => return Err(parse_err(format!("unexpected token '{tok}'"))),
        }
    }
    let g = graph.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
    if seen != declared {
        return Err(Error::Parse { line: 0, msg: format!("header declares {declared} edges, found {seen}") });
    }
    Ok(g)
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or(Error::Parse { line, msg: "missing number".into() })?;
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad number '{tok}'") })
}

/// One `u v` line per edge, 0-based, `u <= v`.
pub fn write_edge_list<W: Write>(g: &LoopyGraph, mut out: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Reads a 0-based edge list on `n` vertices.
pub fn read_edge_list<R: BufRead>(n: usize, input: R) -> Result<LoopyGraph> {
    let mut g = LoopyGraph::new(n);
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u = parse_num(it.next(), idx + 1)?;
        let v = parse_num(it.next(), idx + 1)?;
        g.try_add_edge(u, v).map_err(|_| Error::Parse { line: idx + 1, msg: format!("vertex out of range 0..{n}") })?;
    }
    Ok(g)
}

/// `index: c_0 c_1 … c_t` per vertex, coordinates as packed field elements.
pub fn write_points<W: Write>(g: &LoopyGraph, mut out: W) -> Result<()> {
    let points = g.points().ok_or_else(|| Error::InvalidParameter("graph carries no point labels".into()))?;
    for (i, p) in points.iter().enumerate() {
        let coords: Vec<String> = p.coords().iter().map(u32::to_string).collect();
        writeln!(out, "{i}: {}", coords.join(" "))?;
    }
    Ok(())
}

/// One `u v` line per arc, 0-based.
pub fn write_arc_list<W: Write>(d: &PairDigraph, mut out: W) -> Result<()> {
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// `index a b` per digraph vertex.
pub fn write_vertex_map<W: Write>(d: &PairDigraph, mut out: W) -> Result<()> {
    for (i, (a, b)) in d.pairs().enumerate() {
        writeln!(out, "{i} {a} {b}")?;
    }
    Ok(())
}
