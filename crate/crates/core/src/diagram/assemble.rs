//! Rebuilding a diagram from local surgery.
//!
//! Moves describe their result as a port graph that may contain 2-valent
//! pass vertices, together with a region label on every corner. Labels that
//! end up in one face are identified; a label that ends up alone in a face
//! names a new region. Pass vertices are then dissolved, crossing-free
//! cycles collapse to marker loops, and nest records are rebuilt from the
//! labels.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Corner, Diagram, DiagramError, Edge, End, Kind, Nest, Vertex};
use crate::freegroup::{Alphabet, Gen};

#[derive(Clone, Copy, Debug)]
pub(crate) enum Slot {
    /// Keeps its name; degree from the kind.
    Named(Vertex),
    /// Degree-2 vertex dissolved during assembly.
    Pass,
}

impl Slot {
    fn degree(self) -> u8 {
        match self {
            Slot::Named(v) => v.degree(),
            Slot::Pass => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct AEdge {
    pub id: Option<u32>,
    pub tail: End,
    pub head: End,
    pub color: Gen,
}

#[derive(Clone, Debug)]
pub(crate) struct Assembly {
    pub alphabet: Alphabet,
    pub slots: Vec<Slot>,
    pub edges: Vec<AEdge>,
    /// Region label of every corner.
    pub labels: Vec<[usize; 4]>,
    pub next_edge: u32,
    pub next_marker: u32,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if x >= self.0.len() {
            let n = self.0.len();
            self.0.extend(n..=x);
        }
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl Assembly {
    /// Starts from an existing diagram; corner labels are its regions.
    /// Returns the assembly and the number of labels in use.
    pub fn from_diagram(d: &Diagram) -> (Self, usize) {
        let t = d.topology();
        let mut labels = vec![[usize::MAX; 4]; d.vertices().len()];
        for v in 0..d.vertices().len() {
            for k in 0..d.degree(v) {
                labels[v][k as usize] = t.region(End::new(v, k));
            }
        }
        let a = Assembly {
            alphabet: d.alphabet().clone(),
            slots: d.vertices().iter().map(|&v| Slot::Named(v)).collect(),
            edges: d
                .edges()
                .iter()
                .map(|e| AEdge {
                    id: Some(e.id),
                    tail: e.tail,
                    head: e.head,
                    color: e.color,
                })
                .collect(),
            labels,
            next_edge: d.next_edge_id(),
            next_marker: d.next_vertex_id(Kind::Marker),
        };
        (a, t.num_regions)
    }

    pub fn add_slot(&mut self, s: Slot, labels: [usize; 4]) -> usize {
        self.slots.push(s);
        self.labels.push(labels);
        self.slots.len() - 1
    }

    /// Removes slots flagged in `dead` together with every edge touching
    /// them, renumbering the rest. Returns the old→new index map.
    pub fn remove_slots(&mut self, dead: &[bool]) -> Vec<Option<usize>> {
        let mut map = Vec::with_capacity(self.slots.len());
        let mut n = 0;
        for &d in dead {
            map.push(if d {
                None
            } else {
                n += 1;
                Some(n - 1)
            });
        }
        let keep = |i: usize| !dead[i];
        let mut i = 0;
        self.slots.retain(|_| {
            i += 1;
            keep(i - 1)
        });
        let mut i = 0;
        self.labels.retain(|_| {
            i += 1;
            keep(i - 1)
        });
        self.edges.retain(|e| keep(e.tail.v) && keep(e.head.v));
        for e in &mut self.edges {
            e.tail.v = map[e.tail.v].unwrap();
            e.head.v = map[e.head.v].unwrap();
        }
        map
    }

    fn port_index(&self) -> Result<Vec<[(usize, bool); 4]>, DiagramError> {
        let mut ports = vec![[(usize::MAX, false); 4]; self.slots.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for (end, out) in [(e.tail, true), (e.head, false)] {
                let slot = &mut ports[end.v][end.port as usize];
                if slot.0 != usize::MAX {
                    return Err(DiagramError::Other(format!(
                        "assembly: port {}.{} used twice",
                        end.v, end.port
                    )));
                }
                *slot = (i, out);
            }
        }
        for (v, s) in self.slots.iter().enumerate() {
            for p in 0..s.degree() {
                if ports[v][p as usize].0 == usize::MAX {
                    return Err(DiagramError::Other(format!(
                        "assembly: port {v}.{p} left open"
                    )));
                }
            }
        }
        Ok(ports)
    }

    pub fn finish(self) -> Result<Diagram, DiagramError> {
        let ports = self.port_index()?;
        let deg = |v: usize| self.slots[v].degree();
        let across = |v: usize, p: u8| {
            let (e, out) = ports[v][p as usize];
            if out {
                self.edges[e].head
            } else {
                self.edges[e].tail
            }
        };
        // 1. Identify labels around every face.
        let mut dsu = Dsu(Vec::new());
        let mut seen = vec![[false; 4]; self.slots.len()];
        for v in 0..self.slots.len() {
            for k in 0..deg(v) {
                let mut c = End::new(v, k);
                let first = self.labels[v][k as usize];
                while !seen[c.v][c.port as usize] {
                    seen[c.v][c.port as usize] = true;
                    dsu.union(first, self.labels[c.v][c.port as usize]);
                    let w = across(c.v, c.port);
                    c = End::new(w.v, (w.port + deg(w.v) - 1) % deg(w.v));
                }
            }
        }
        // 2. Trace strands, dissolving pass vertices.
        let is_crossing =
            |v: usize| matches!(self.slots[v], Slot::Named(x) if x.kind == Kind::Crossing);
        let through = |v: usize, p: u8| (p + deg(v) / 2) % deg(v);
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut new_index = vec![usize::MAX; self.slots.len()];
        for (v, s) in self.slots.iter().enumerate() {
            if let Slot::Named(x) = s {
                if x.kind == Kind::Crossing {
                    new_index[v] = vertices.len();
                    vertices.push(*x);
                }
            }
        }
        let mut labels: Vec<[usize; 4]> = vertices.iter().map(|_| [0; 4]).collect();
        for (v, &ni) in new_index.iter().enumerate() {
            if ni != usize::MAX {
                for k in 0..4 {
                    labels[ni][k] = dsu.find(self.labels[v][k]);
                }
            }
        }
        let mut used = vec![false; self.edges.len()];
        let mut edges = Vec::new();
        let mut next_edge = self.next_edge;
        let mut next_marker = self.next_marker;
        let mut fresh_edge = |ids: &[Option<u32>]| {
            ids.iter().flatten().min().copied().unwrap_or_else(|| {
                next_edge += 1;
                next_edge - 1
            })
        };
        // Chains leaving crossings.
        for (e0, e) in self.edges.iter().enumerate() {
            if used[e0] || !is_crossing(e.tail.v) {
                continue;
            }
            let mut ids = vec![];
            let mut cur = e0;
            loop {
                used[cur] = true;
                ids.push(self.edges[cur].id);
                let h = self.edges[cur].head;
                if is_crossing(h.v) {
                    break;
                }
                let (next, out) = ports[h.v][through(h.v, h.port) as usize];
                if !out {
                    return Err(DiagramError::Other(
                        "assembly: inconsistent strand direction".into(),
                    ));
                }
                cur = next;
            }
            let color = e.color;
            edges.push(Edge {
                id: fresh_edge(&ids),
                tail: End::new(new_index[e.tail.v], e.tail.port),
                head: End::new(new_index[self.edges[cur].head.v], self.edges[cur].head.port),
                color,
            });
        }
        // Remaining edges form crossing-free cycles.
        for e0 in 0..self.edges.len() {
            if used[e0] {
                continue;
            }
            let mut ids = vec![];
            let mut names = vec![];
            let mut cur = e0;
            while !used[cur] {
                used[cur] = true;
                ids.push(self.edges[cur].id);
                let h = self.edges[cur].head;
                if let Slot::Named(x) = self.slots[h.v] {
                    names.push(x);
                }
                let (next, out) = ports[h.v][through(h.v, h.port) as usize];
                if !out {
                    return Err(DiagramError::Other(
                        "assembly: inconsistent strand direction".into(),
                    ));
                }
                cur = next;
            }
            let e = &self.edges[e0];
            let name = names.iter().min().copied().unwrap_or_else(|| {
                next_marker += 1;
                Vertex::marker(next_marker - 1)
            });
            let left = dsu.find(self.labels[e.tail.v][e.tail.port as usize]);
            let right = dsu.find(self.labels[e.head.v][e.head.port as usize]);
            let m = vertices.len();
            vertices.push(name);
            labels.push([right, left, 0, 0]);
            edges.push(Edge {
                id: fresh_edge(&ids),
                tail: End::new(m, 1),
                head: End::new(m, 0),
                color: e.color,
            });
        }
        if vertices.is_empty() {
            return Ok(Diagram::empty(self.alphabet));
        }
        // 3. Nest records from labels. `build` sorts vertices, so carry the
        // labels through the same order.
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| vertices[i]);
        let mut pos = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let labels: Vec<[usize; 4]> = order.iter().map(|&i| labels[i]).collect();
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|mut e| {
                e.tail.v = pos[e.tail.v];
                e.head.v = pos[e.head.v];
                e
            })
            .collect();
        let vertices: Vec<Vertex> = order.iter().map(|&i| vertices[i]).collect();
        let d = Diagram::build(self.alphabet, vertices, edges, Vec::new())?;
        let nests = nests_from_labels(&d, &labels)?;
        let d = Diagram::build(
            d.alphabet.clone(),
            d.vertices.clone(),
            d.edges.clone(),
            nests,
        )?;
        d.validate()?;
        Ok(d)
    }
}

/// Nest records realizing the given corner labels as regions, rooted at the
/// piece of vertex 0.
pub(crate) fn nests_from_labels(
    d: &Diagram,
    labels: &[[usize; 4]],
) -> Result<Vec<Nest>, DiagramError> {
    let t = d.topology();
    let face_label: Vec<usize> = t
        .faces
        .iter()
        .map(|w| labels[w[0].v][w[0].port as usize])
        .collect();
    // Faces of each piece.
    let mut piece_faces: Vec<Vec<usize>> = vec![Vec::new(); t.num_pieces];
    for (f, w) in t.faces.iter().enumerate() {
        piece_faces[t.piece_of[w[0].v]].push(f);
    }
    let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (f, &l) in face_label.iter().enumerate() {
        by_label.entry(l).or_default().push(f);
    }
    let mut owner: HashMap<usize, Corner> = HashMap::new();
    let mut placed = vec![false; t.num_pieces];
    // Face through which each piece hangs from its parent.
    let mut entry = vec![usize::MAX; t.num_pieces];
    let mut nests = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    placed[0] = true;
    while let Some(p) = queue.pop_front() {
        for &f in &piece_faces[p] {
            if f == entry[p] {
                continue;
            }
            let l = face_label[f];
            if owner.contains_key(&l) {
                return Err(DiagramError::Other(
                    "assembly: regions do not form a tree".into(),
                ));
            }
            owner.insert(l, t.faces[f][0]);
            for &g in &by_label[&l] {
                let q = t.piece_of[t.faces[g][0].v];
                if q == p {
                    continue;
                }
                if placed[q] {
                    return Err(DiagramError::Other(
                        "assembly: regions do not form a tree".into(),
                    ));
                }
                placed[q] = true;
                entry[q] = g;
                nests.push(Nest {
                    child: t.faces[g][0],
                    parent: t.faces[f][0],
                });
                queue.push_back(q);
            }
        }
    }
    if placed.iter().any(|&x| !x) {
        return Err(DiagramError::Other(
            "assembly: a piece lies in no region".into(),
        ));
    }
    Ok(nests)
}
