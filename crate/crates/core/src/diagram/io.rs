//! Line-oriented diagram files and DOT export.
//!
//! ```text
//! doodle v1
//! alphabet a b
//! crossing X1
//! edge E1 X1.0 -> X1.1
//! color E1 a
//! loop L1 left-of E1 color b reversed
//! nest X2.0 right-of E1
//! ```
//!
//! Loop placements: `left-of E`, `right-of E` (also for a loop `L`),
//! `inside L` (the side of `L` away from its own region) and `at V.p`
//! (the region of a corner). A loop's left side faces the placement region
//! unless `reversed`. `nest C P` glues the face at corner `C` into the
//! region of placement `P`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Corner, Diagram, DiagramError, Dir, Edge, End, Kind, Nest, Vertex};
use crate::freegroup::{Alphabet, Gen};

fn placement(d: &Diagram, c: Corner, child_side: &BTreeMap<usize, u8>) -> String {
    let v = d.vertex(c.v);
    if v.kind == Kind::Crossing {
        let (e, dir) = d.port(c.v, c.port);
        let side = if dir == Dir::Out {
            "left-of"
        } else {
            "right-of"
        };
        return format!("{side} E{}", d.edge(e).id);
    }
    match child_side.get(&c.v) {
        Some(&s) if s != c.port => format!("inside {v}"),
        _ if c.port == 1 => format!("left-of {v}"),
        _ => format!("right-of {v}"),
    }
}

pub fn serialize(d: &Diagram) -> String {
    let al = d.alphabet();
    let mut out = String::from("doodle v1\n");
    let _ = writeln!(out, "alphabet {}", al.names().join(" "));
    for v in d.crossings() {
        let _ = writeln!(out, "crossing {}", d.vertex(v));
    }
    let is_marker_edge = |e: &Edge| d.vertex(e.tail.v).kind == Kind::Marker;
    for e in d.edges().iter().filter(|e| !is_marker_edge(e)) {
        let _ = writeln!(
            out,
            "edge E{} {} -> {}",
            e.id,
            d.corner_name(e.tail),
            d.corner_name(e.head)
        );
    }
    for c in d.components() {
        let e = d.edge(c.id);
        if !is_marker_edge(e) {
            let _ = writeln!(out, "color E{} {}", e.id, al.name(c.color));
        }
    }
    let child_side: BTreeMap<usize, u8> = d
        .nests()
        .iter()
        .filter(|n| !d.is_crossing(n.child.v))
        .map(|n| (n.child.v, n.child.port))
        .collect();
    for m in d.markers() {
        let (e, _) = d.port(m, 0);
        let color = al.name(d.edge(e).color);
        match d.nests().iter().find(|n| n.child.v == m) {
            Some(n) => {
                let rev = if n.child.port == 0 { " reversed" } else { "" };
                let _ = writeln!(
                    out,
                    "loop {} {} color {color}{rev}",
                    d.vertex(m),
                    placement(d, n.parent, &child_side)
                );
            }
            None => {
                let _ = writeln!(out, "loop {} color {color}", d.vertex(m));
            }
        }
    }
    for n in d.nests().iter().filter(|n| d.is_crossing(n.child.v)) {
        let _ = writeln!(
            out,
            "nest {} {}",
            d.corner_name(n.child),
            placement(d, n.parent, &child_side)
        );
    }
    out
}

enum Place {
    LeftOf(String),
    RightOf(String),
    Inside(String),
    At(String),
}

struct LoopLine {
    line: usize,
    name: Vertex,
    place: Option<Place>,
    color: Gen,
    reversed: bool,
}

fn parse_vertex(s: &str) -> Option<Vertex> {
    let (kind, rest) = match s.as_bytes().first()? {
        b'X' => (Kind::Crossing, &s[1..]),
        b'L' => (Kind::Marker, &s[1..]),
        _ => return None,
    };
    let id: u32 = rest.parse().ok()?;
    Some(Vertex { kind, id })
}

fn parse_edge_id(s: &str) -> Option<u32> {
    s.strip_prefix('E')?.parse().ok()
}

fn parse_end(s: &str) -> Option<(Vertex, u8)> {
    let (v, p) = s.split_once('.')?;
    Some((parse_vertex(v)?, p.parse().ok()?))
}

pub fn deserialize(text: &str) -> Result<Diagram, DiagramError> {
    let perr = |line: usize, msg: &str| DiagramError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "doodle v1")) => {}
        Some((n, _)) => return Err(perr(n, "missing header `doodle v1`")),
        None => return Err(perr(1, "missing header")),
    }
    let mut alphabet: Option<Alphabet> = None;
    let mut crossings: Vec<(usize, Vertex)> = Vec::new();
    let mut edges: Vec<(usize, u32, (Vertex, u8), (Vertex, u8))> = Vec::new();
    let mut colors: Vec<(usize, u32, Gen)> = Vec::new();
    let mut loops: Vec<LoopLine> = Vec::new();
    let mut nests: Vec<(usize, (Vertex, u8), Place)> = Vec::new();
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let gen = |name: &str, al: &Option<Alphabet>| -> Result<Gen, DiagramError> {
            let al = al
                .as_ref()
                .ok_or_else(|| perr(n, "`alphabet` must come before colors"))?;
            al.index(name)
                .ok_or_else(|| perr(n, &format!("unknown color `{name}`")))
        };
        let place = |t: &[&str]| -> Result<Place, DiagramError> {
            match t {
                ["left-of", x] => Ok(Place::LeftOf(x.to_string())),
                ["right-of", x] => Ok(Place::RightOf(x.to_string())),
                ["inside", x] => Ok(Place::Inside(x.to_string())),
                ["at", x] => Ok(Place::At(x.to_string())),
                _ => Err(perr(
                    n,
                    "expected placement `left-of E`, `right-of E`, `inside L` or `at V.p`",
                )),
            }
        };
        match toks[0] {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(perr(n, "duplicate `alphabet` line"));
                }
                alphabet = Some(
                    Alphabet::new(toks[1..].iter().copied())
                        .map_err(|e| perr(n, &e.to_string()))?,
                );
            }
            "crossing" => {
                let [_, x] = toks[..] else {
                    return Err(perr(n, "expected `crossing X<n>`"));
                };
                match parse_vertex(x) {
                    Some(v) if v.kind == Kind::Crossing => crossings.push((n, v)),
                    _ => return Err(perr(n, &format!("bad crossing name `{x}`"))),
                }
            }
            "edge" => {
                let [_, e, t, "->", h] = toks[..] else {
                    return Err(perr(n, "expected `edge E<n> X<i>.<p> -> X<j>.<q>`"));
                };
                let id =
                    parse_edge_id(e).ok_or_else(|| perr(n, &format!("bad edge name `{e}`")))?;
                let t = parse_end(t).ok_or_else(|| perr(n, &format!("bad port `{t}`")))?;
                let h = parse_end(h).ok_or_else(|| perr(n, &format!("bad port `{h}`")))?;
                edges.push((n, id, t, h));
            }
            "color" => {
                let [_, e, c] = toks[..] else {
                    return Err(perr(n, "expected `color E<n> <generator>`"));
                };
                let id =
                    parse_edge_id(e).ok_or_else(|| perr(n, &format!("bad edge name `{e}`")))?;
                colors.push((n, id, gen(c, &alphabet)?));
            }
            "loop" => {
                if toks.len() < 4 {
                    return Err(perr(
                        n,
                        "expected `loop L<n> [placement] color <generator> [reversed]`",
                    ));
                }
                let name = match parse_vertex(toks[1]) {
                    Some(v) if v.kind == Kind::Marker => v,
                    _ => return Err(perr(n, &format!("bad loop name `{}`", toks[1]))),
                };
                let ci = toks
                    .iter()
                    .position(|&t| t == "color")
                    .ok_or_else(|| perr(n, "missing `color`"))?;
                let p = if ci == 2 {
                    None
                } else {
                    Some(place(&toks[2..ci])?)
                };
                let color = gen(
                    toks.get(ci + 1)
                        .ok_or_else(|| perr(n, "missing color name"))?,
                    &alphabet,
                )?;
                let reversed = match &toks[ci + 2..] {
                    [] => false,
                    ["reversed"] => true,
                    _ => return Err(perr(n, "unexpected trailing tokens")),
                };
                loops.push(LoopLine {
                    line: n,
                    name,
                    place: p,
                    color,
                    reversed,
                });
            }
            "nest" => {
                if toks.len() != 4 {
                    return Err(perr(n, "expected `nest V.p <placement>`"));
                }
                let c = parse_end(toks[1])
                    .ok_or_else(|| perr(n, &format!("bad corner `{}`", toks[1])))?;
                nests.push((n, c, place(&toks[2..])?));
            }
            other => return Err(perr(n, &format!("unknown directive `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| perr(1, "missing `alphabet` line"))?;
    let mut vertices: Vec<Vertex> = crossings.iter().map(|&(_, v)| v).collect();
    vertices.extend(loops.iter().map(|l| l.name));
    let index = |v: Vertex, n: usize| -> Result<usize, DiagramError> {
        vertices
            .iter()
            .position(|&w| w == v)
            .ok_or_else(|| perr(n, &format!("unknown vertex {v}")))
    };
    let mut raw_edges = Vec::new();
    for &(n, id, t, h) in &edges {
        if t.0.kind == Kind::Marker || h.0.kind == Kind::Marker {
            return Err(perr(n, "loops are declared with `loop`, not `edge`"));
        }
        raw_edges.push(Edge {
            id,
            tail: End::new(index(t.0, n)?, t.1),
            head: End::new(index(h.0, n)?, h.1),
            color: 0,
        });
    }
    let mut next_id = edges.iter().map(|e| e.1).max().unwrap_or(0) + 1;
    for (i, l) in loops.iter().enumerate() {
        let m = crossings.len() + i;
        raw_edges.push(Edge {
            id: next_id,
            tail: End::new(m, 1),
            head: End::new(m, 0),
            color: l.color,
        });
        next_id += 1;
    }
    // Colors propagate along components of the crossing part.
    let skeleton = Diagram::build(
        alphabet.clone(),
        vertices.clone(),
        raw_edges.clone(),
        Vec::new(),
    )
    .map_err(|e| perr(edges.first().map_or(1, |e| e.0), &e.to_string()))?;
    let mut color_of: BTreeMap<u32, Gen> = BTreeMap::new();
    for &(n, id, c) in &colors {
        let e = skeleton
            .edge_by_id(id)
            .ok_or_else(|| perr(n, &format!("unknown edge E{id}")))?;
        let comp = skeleton
            .components()
            .into_iter()
            .find(|k| k.edges.contains(&e))
            .unwrap();
        for &x in &comp.edges {
            let xid = skeleton.edge(x).id;
            if let Some(&old) = color_of.get(&xid) {
                if old != c {
                    return Err(perr(
                        n,
                        &format!("conflicting color for the component of E{id}"),
                    ));
                }
            }
            color_of.insert(xid, c);
        }
    }
    for e in &mut raw_edges {
        if e.tail.v < crossings.len() {
            e.color = *color_of
                .get(&e.id)
                .ok_or_else(|| perr(1, &format!("component of E{} has no color", e.id)))?;
        }
    }
    // Resolve placements into corners; `inside` needs the loop's own side.
    let mut side: BTreeMap<Vertex, u8> = BTreeMap::new();
    for l in &loops {
        if l.place.is_some() {
            side.insert(l.name, if l.reversed { 0 } else { 1 });
        }
    }
    let resolve = |p: &Place, n: usize| -> Result<(Vertex, u8), DiagramError> {
        let edge_end = |x: &str, left: bool| -> Result<(Vertex, u8), DiagramError> {
            if let Some(v) = parse_vertex(x).filter(|v| v.kind == Kind::Marker) {
                index(v, n)?;
                return Ok((v, if left { 1 } else { 0 }));
            }
            let id = parse_edge_id(x).ok_or_else(|| perr(n, &format!("bad edge name `{x}`")))?;
            let &(_, _, t, h) = edges
                .iter()
                .find(|e| e.1 == id)
                .ok_or_else(|| perr(n, &format!("unknown edge E{id}")))?;
            Ok(if left { t } else { h })
        };
        match p {
            Place::LeftOf(x) => edge_end(x, true),
            Place::RightOf(x) => edge_end(x, false),
            Place::Inside(x) => {
                let v = parse_vertex(x)
                    .filter(|v| v.kind == Kind::Marker)
                    .ok_or_else(|| perr(n, &format!("`inside` needs a loop, got `{x}`")))?;
                index(v, n)?;
                Ok((v, 1 - side.get(&v).copied().unwrap_or(1)))
            }
            Place::At(x) => parse_end(x).ok_or_else(|| perr(n, &format!("bad corner `{x}`"))),
        }
    };
    let mut nest_recs = Vec::new();
    for l in &loops {
        if let Some(p) = &l.place {
            let (pv, pp) = resolve(p, l.line)?;
            let child = End::new(index(l.name, l.line)?, side[&l.name]);
            nest_recs.push(Nest {
                child,
                parent: End::new(index(pv, l.line)?, pp),
            });
        }
    }
    for (n, c, p) in &nests {
        let (pv, pp) = resolve(p, *n)?;
        nest_recs.push(Nest {
            child: End::new(index(c.0, *n)?, c.1),
            parent: End::new(index(pv, *n)?, pp),
        });
    }
    Diagram::new(alphabet, vertices, raw_edges, nest_recs)
}

/// Diagnostic Graphviz rendering with port annotations.
pub fn export_dot(d: &Diagram) -> String {
    let al = d.alphabet();
    let mut out = String::from("digraph doodle {\n");
    for v in d.vertices() {
        let shape = match v.kind {
            Kind::Crossing => "circle",
            Kind::Marker => "point",
        };
        let _ = writeln!(out, "  {v} [shape={shape}];");
    }
    for e in d.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"E{} {}\", taillabel=\"{}\", headlabel=\"{}\"];",
            d.vertex(e.tail.v),
            d.vertex(e.head.v),
            e.id,
            al.name(e.color),
            e.tail.port,
            e.head.port
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{borromean, isomorphic, poppy};
    use super::*;

    #[test]
    fn round_trips() {
        for d in [borromean(), poppy()] {
            let text = serialize(&d);
            let back = deserialize(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn header_and_errors() {
        assert!(
            matches!(deserialize(""), Err(DiagramError::Parse { msg, .. }) if msg.contains("missing header"))
        );
        assert!(deserialize("doodle v2\n").is_err());
        let e =
            deserialize("doodle v1\nalphabet a\ncrossing X1\nedge E1 X1.0 -> X1.0\n").unwrap_err();
        assert!(e.to_string().contains("two edge ends"), "{e}");
        let e = deserialize("doodle v1\nalphabet a\nfrobnicate\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 3, .. }));
    }

    #[test]
    fn nested_loops() {
        let text = "doodle v1\n# two loops, one inside the other, beside a curl\nalphabet a b\ncrossing X1\n\
                    edge E1 X1.2 -> X1.1\nedge E2 X1.3 -> X1.0\ncolor E1 a\n\
                    loop L1 left-of E1 color b\nloop L2 inside L1 color a reversed\n";
        let d = deserialize(text).unwrap();
        assert_eq!(d.num_markers(), 2);
        assert_eq!(d.topology().num_regions, 5);
        let back = deserialize(&serialize(&d)).unwrap();
        assert!(isomorphic(&d, &back));
        assert_eq!(serialize(&back), serialize(&d));
        // The same loops placed differently give a different diagram.
        let other = deserialize(&text.replace("inside L1", "left-of E1")).unwrap();
        assert!(!isomorphic(&d, &other));
        let only_loop = deserialize("doodle v1\nalphabet a\nloop L1 color a\n").unwrap();
        assert_eq!(only_loop.topology().faces.len(), 2);
        assert!(export_dot(&d).contains("X1 -> X1"));
    }
}
