//! Colored oriented doodle diagrams stored as rotation systems on the sphere.
//!
//! Crossings have four ports numbered counterclockwise; a crossing-free loop
//! carries one marker vertex with two ports and a single edge from port 1 to
//! port 0. Corner `(v, k)` is the angle between ports `k` and `k+1`.
//! Disconnected pieces are glued into each other's faces by nest records.

mod assemble;
mod faces;
mod fixtures;
mod io;
mod iso;

use std::fmt;

use thiserror::Error;

use crate::freegroup::{Alphabet, Gen, WordError};

pub(crate) use assemble::{AEdge, Assembly, Slot};
pub use faces::{Component, Topology};
pub use fixtures::{borromean, braid_shadow, poppy};
pub use io::{deserialize, export_dot, serialize};
pub use iso::{canonical_code, isomorphic, isomorphic_without_markers};

pub type VId = usize;
pub type EId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Crossing,
    Marker,
}

impl Kind {
    pub fn degree(self) -> u8 {
        match self {
            Kind::Crossing => 4,
            Kind::Marker => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub kind: Kind,
    pub id: u32,
}

impl Vertex {
    pub fn crossing(id: u32) -> Self {
        Vertex {
            kind: Kind::Crossing,
            id,
        }
    }

    pub fn marker(id: u32) -> Self {
        Vertex {
            kind: Kind::Marker,
            id,
        }
    }

    pub fn degree(&self) -> u8 {
        self.kind.degree()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Crossing => write!(f, "X{}", self.id),
            Kind::Marker => write!(f, "L{}", self.id),
        }
    }
}

/// `(vertex index, port)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub v: VId,
    pub port: u8,
}

impl End {
    pub fn new(v: VId, port: u8) -> Self {
        End { v, port }
    }
}

/// Same layout as [`End`]; the angle from port `k` to port `k+1`.
pub type Corner = End;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: u32,
    pub tail: End,
    pub head: End,
    pub color: Gen,
}

/// The face at `child` (a corner of a non-root piece) lies in the region of
/// `parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nest {
    pub child: Corner,
    pub parent: Corner,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("{}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0}")]
    Other(String),
}

/// Whether the edge at a port leaves or enters the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    alphabet: Alphabet,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    nests: Vec<Nest>,
    /// `ports[v][p]`: the edge at that port and its direction.
    ports: Vec<[(EId, Dir); 4]>,
}

impl Diagram {
    /// Sorts vertices (crossings first, by id), edges by id and nests,
    /// then validates.
    pub fn new(
        alphabet: Alphabet,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        nests: Vec<Nest>,
    ) -> Result<Self, DiagramError> {
        let d = Self::build(alphabet, vertices, edges, nests)?;
        d.validate()?;
        Ok(d)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Diagram {
            alphabet,
            vertices: Vec::new(),
            edges: Vec::new(),
            nests: Vec::new(),
            ports: Vec::new(),
        }
    }

    /// Canonical ordering plus port index; only local incidence is checked.
    pub(crate) fn build(
        alphabet: Alphabet,
        vertices: Vec<Vertex>,
        mut edges: Vec<Edge>,
        nests: Vec<Nest>,
    ) -> Result<Self, DiagramError> {
        let mut order: Vec<VId> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| vertices[i]);
        let mut remap = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let sorted: Vec<Vertex> = order.iter().map(|&i| vertices[i]).collect();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(DiagramError::Invalid(vec![format!(
                    "duplicate vertex {}",
                    w[0]
                )]));
            }
        }
        let re = |e: End| End::new(remap[e.v], e.port);
        for e in &mut edges {
            if e.tail.v >= remap.len() || e.head.v >= remap.len() {
                return Err(DiagramError::Invalid(vec![format!(
                    "edge E{} has an unknown endpoint",
                    e.id
                )]));
            }
            e.tail = re(e.tail);
            e.head = re(e.head);
        }
        edges.sort_by_key(|e| e.id);
        let mut nests: Vec<Nest> = nests
            .into_iter()
            .map(|n| Nest {
                child: re(n.child),
                parent: re(n.parent),
            })
            .collect();
        nests.sort();
        let mut problems = Vec::new();
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                problems.push(format!("duplicate edge E{}", w[0].id));
            }
        }
        const UNSET: (EId, Dir) = (usize::MAX, Dir::Out);
        let mut ports = vec![[UNSET; 4]; sorted.len()];
        for (i, e) in edges.iter().enumerate() {
            if e.color as usize >= alphabet.len() {
                problems.push(format!("edge E{} has an unknown color", e.id));
            }
            for (end, dir) in [(e.tail, Dir::Out), (e.head, Dir::In)] {
                let v = sorted[end.v];
                if end.port >= v.degree() {
                    problems.push(format!("edge E{} uses port {} of {v}", e.id, end.port));
                    continue;
                }
                let slot = &mut ports[end.v][end.port as usize];
                if slot.0 != usize::MAX {
                    problems.push(format!("port {v}.{} carries two edge ends", end.port));
                }
                *slot = (i, dir);
            }
        }
        for (vi, v) in sorted.iter().enumerate() {
            for p in 0..v.degree() {
                if ports[vi][p as usize].0 == usize::MAX {
                    problems.push(format!("port {v}.{p} is not connected"));
                }
            }
        }
        if !problems.is_empty() {
            return Err(DiagramError::Invalid(problems));
        }
        Ok(Diagram {
            alphabet,
            vertices: sorted,
            edges,
            nests,
            ports,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VId) -> Vertex {
        self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EId) -> &Edge {
        &self.edges[e]
    }

    pub fn nests(&self) -> &[Nest] {
        &self.nests
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn num_crossings(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == Kind::Crossing)
            .count()
    }

    pub fn num_markers(&self) -> usize {
        self.vertices.len() - self.num_crossings()
    }

    pub fn crossings(&self) -> impl Iterator<Item = VId> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].kind == Kind::Crossing)
    }

    pub fn markers(&self) -> impl Iterator<Item = VId> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].kind == Kind::Marker)
    }

    pub fn degree(&self, v: VId) -> u8 {
        self.vertices[v].degree()
    }

    pub fn is_crossing(&self, v: VId) -> bool {
        self.vertices[v].kind == Kind::Crossing
    }

    pub fn port(&self, v: VId, p: u8) -> (EId, Dir) {
        self.ports[v][p as usize]
    }

    pub fn vertex_by_name(&self, v: Vertex) -> Option<VId> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn edge_by_id(&self, id: u32) -> Option<EId> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub(crate) fn next_vertex_id(&self, kind: Kind) -> u32 {
        self.vertices
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| v.id)
            .max()
            .unwrap_or(0)
            + 1
    }

    pub(crate) fn next_edge_id(&self) -> u32 {
        self.edges.iter().map(|e| e.id).max().unwrap_or(0) + 1
    }

    pub fn corner_name(&self, c: Corner) -> String {
        format!("{}.{}", self.vertices[c.v], c.port)
    }

    /// The other end reached by leaving `v` through port `p`.
    pub fn across(&self, v: VId, p: u8) -> End {
        let (e, dir) = self.port(v, p);
        let edge = &self.edges[e];
        match dir {
            Dir::Out => edge.head,
            Dir::In => edge.tail,
        }
    }

    /// The port a strand entering at `p` leaves through.
    pub fn through(&self, v: VId, p: u8) -> u8 {
        let d = self.degree(v);
        (p + d / 2) % d
    }

    /// Relabels colors through the permutation `sigma` of generator indices.
    pub fn recolor(&self, sigma: &[Gen]) -> Result<Self, DiagramError> {
        let n = self.alphabet.len();
        let mut seen = vec![false; n];
        if sigma.len() != n {
            return Err(DiagramError::Other(
                "permutation length differs from the alphabet".into(),
            ));
        }
        for &g in sigma {
            if g as usize >= n || std::mem::replace(&mut seen[g as usize], true) {
                return Err(DiagramError::Other("color map is not a permutation".into()));
            }
        }
        let mut d = self.clone();
        for e in &mut d.edges {
            e.color = sigma[e.color as usize];
        }
        Ok(d)
    }

    /// Swaps two colors.
    pub fn swap_colors(&self, a: Gen, b: Gen) -> Self {
        let sigma: Vec<Gen> = (0..self.alphabet.len() as Gen)
            .map(|g| {
                if g == a {
                    b
                } else if g == b {
                    a
                } else {
                    g
                }
            })
            .collect();
        self.recolor(&sigma).expect("transposition")
    }

    /// Flips every component whose color is in `colors`.
    pub fn reverse_components(&self, colors: &[Gen]) -> Self {
        let mut nests = self.nests.clone();
        let mut edges = self.edges.clone();
        let mut flipped_markers = Vec::new();
        for e in &mut edges {
            if !colors.contains(&e.color) {
                continue;
            }
            if self.vertices[e.tail.v].kind == Kind::Marker {
                // Keep the marker convention (tail at port 1) by swapping the
                // two marker ports instead; the corners swap with them.
                flipped_markers.push(e.tail.v);
                continue;
            }
            std::mem::swap(&mut e.tail, &mut e.head);
        }
        let swap = |c: &mut Corner| {
            if flipped_markers.contains(&c.v) {
                c.port = 1 - c.port;
            }
        };
        // A marker's loop reversed: the old left side (port 1 corner) becomes
        // the right side. Reversing the loop means the same geometric sides
        // are now named by the opposite corner.
        for n in &mut nests {
            swap(&mut n.child);
            swap(&mut n.parent);
        }
        Diagram::build(self.alphabet.clone(), self.vertices.clone(), edges, nests)
            .expect("reversal keeps incidence")
    }

    /// Mirror image: reverses every rotation.
    pub fn mirror(&self) -> Self {
        let flip = |e: End, deg: u8| End::new(e.v, (deg - e.port) % deg);
        let deg = |v: VId| self.vertices[v].degree();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.tail = flip(e.tail, deg(e.tail.v));
                e.head = flip(e.head, deg(e.head.v));
                if self.vertices[e.tail.v].kind == Kind::Marker {
                    e.tail.port = 1;
                    e.head.port = 0;
                }
                e
            })
            .collect();
        // Corner (v,k) lies between k and k+1; mirrored it lies between
        // -k-1 and -k, i.e. it is corner (v, -k-1).
        let fc = |c: Corner| {
            let d = deg(c.v);
            if d == 2 {
                // Marker sides swap in the mirror.
                End::new(c.v, 1 - c.port)
            } else {
                End::new(c.v, (2 * d - c.port - 1) % d)
            }
        };
        let nests = self
            .nests
            .iter()
            .map(|n| Nest {
                child: fc(n.child),
                parent: fc(n.parent),
            })
            .collect();
        Diagram::build(self.alphabet.clone(), self.vertices.clone(), edges, nests)
            .expect("mirror keeps incidence")
    }
}
