use std::collections::VecDeque;

use super::{Corner, Diagram, DiagramError, Dir, EId, End, Kind};
use crate::freegroup::Gen;

/// Faces, regions and pieces of a diagram.
#[derive(Clone, Debug)]
pub struct Topology {
    /// Faces as counterclockwise corner walks, ordered by least corner;
    /// each walk starts at its least corner.
    pub faces: Vec<Vec<Corner>>,
    /// `face_at[v][k]`.
    pub face_at: Vec<[usize; 4]>,
    /// Region of each face. Regions are numbered by least corner; a diagram
    /// without vertices has the single region 0 and no faces.
    pub region_of_face: Vec<usize>,
    pub num_regions: usize,
    /// Connected piece of each vertex, numbered by least vertex.
    pub piece_of: Vec<usize>,
    pub num_pieces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Index of the least edge.
    pub id: EId,
    pub color: Gen,
    /// Edges in traversal order, starting at the least edge.
    pub edges: Vec<EId>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

impl Diagram {
    /// Next corner on the face walk: leave through port `k`, arrive at
    /// `(w, q)`, continue at `(w, q - 1)`.
    pub fn next_corner(&self, c: Corner) -> Corner {
        let end = self.across(c.v, c.port);
        let d = self.degree(end.v);
        End::new(end.v, (end.port + d - 1) % d)
    }

    /// Corner whose face lies left of edge `e`.
    pub fn left_corner(&self, e: EId) -> Corner {
        self.edges[e].tail
    }

    /// Corner whose face lies right of edge `e`.
    pub fn right_corner(&self, e: EId) -> Corner {
        self.edges[e].head
    }

    pub fn topology(&self) -> Topology {
        let n = self.vertices.len();
        let mut face_at = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for v in 0..n {
            for k in 0..self.degree(v) {
                if face_at[v][k as usize] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let mut c = End::new(v, k);
                while face_at[c.v][c.port as usize] == usize::MAX {
                    face_at[c.v][c.port as usize] = id;
                    walk.push(c);
                    c = self.next_corner(c);
                }
                // Corners are visited in increasing order of (v, k), so the
                // walk's first corner is already its least one.
                faces.push(walk);
            }
        }
        let mut dsu = Dsu::new(faces.len());
        for nest in &self.nests {
            let a = face_at[nest.child.v][nest.child.port as usize];
            let b = face_at[nest.parent.v][nest.parent.port as usize];
            dsu.union(a, b);
        }
        let mut region_of_face = vec![usize::MAX; faces.len()];
        let mut num_regions = 0;
        let mut root_region = vec![usize::MAX; faces.len()];
        for f in 0..faces.len() {
            let r = dsu.find(f);
            if root_region[r] == usize::MAX {
                root_region[r] = num_regions;
                num_regions += 1;
            }
            region_of_face[f] = root_region[r];
        }
        if n == 0 {
            num_regions = 1;
        }
        let mut piece_of = vec![usize::MAX; n];
        let mut num_pieces = 0;
        for s in 0..n {
            if piece_of[s] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            piece_of[s] = num_pieces;
            while let Some(v) = queue.pop_front() {
                for p in 0..self.degree(v) {
                    let w = self.across(v, p).v;
                    if piece_of[w] == usize::MAX {
                        piece_of[w] = num_pieces;
                        queue.push_back(w);
                    }
                }
            }
            num_pieces += 1;
        }
        Topology {
            faces,
            face_at,
            region_of_face,
            num_regions,
            piece_of,
            num_pieces,
        }
    }

    pub fn components(&self) -> Vec<Component> {
        let mut seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            let mut edges = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                edges.push(e);
                let h = self.edges[e].head;
                e = self.port(h.v, self.through(h.v, h.port)).0;
            }
            out.push(Component {
                id: start,
                color: self.edges[start].color,
                edges,
            });
        }
        out
    }

    /// Checks every structural invariant; reports all violations.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut problems = Vec::new();
        for (v, vert) in self.vertices.iter().enumerate() {
            let d = vert.degree();
            for p in 0..d / 2 {
                let (_, a) = self.port(v, p);
                let (_, b) = self.port(v, p + d / 2);
                if a == b {
                    problems.push(format!(
                        "{vert}: ports {p} and {} are both {}",
                        p + d / 2,
                        if a == Dir::In { "incoming" } else { "outgoing" }
                    ));
                }
            }
        }
        if !problems.is_empty() {
            return Err(DiagramError::Invalid(problems));
        }
        for c in self.components() {
            let mut has_crossing = false;
            let mut has_marker = false;
            for &e in &c.edges {
                let edge = &self.edges[e];
                if edge.color != c.color {
                    problems.push(format!(
                        "component of E{} mixes colors",
                        self.edges[c.id].id
                    ));
                    break;
                }
                match self.vertices[edge.head.v].kind {
                    Kind::Crossing => has_crossing = true,
                    Kind::Marker => has_marker = true,
                }
            }
            if has_marker && has_crossing {
                problems.push(format!(
                    "component of E{} has both a marker and crossings",
                    self.edges[c.id].id
                ));
            }
            if has_marker && c.edges.len() != 1 {
                problems.push(format!(
                    "marker loop of E{} has more than one edge",
                    self.edges[c.id].id
                ));
            }
        }
        for e in &self.edges {
            if self.vertices[e.tail.v].kind == Kind::Marker && (e.tail.port, e.head.port) != (1, 0)
            {
                problems.push(format!(
                    "marker edge E{} must run from port 1 to port 0",
                    e.id
                ));
            }
        }
        let t = self.topology();
        // Euler characteristic per piece.
        let mut chi = vec![0i64; t.num_pieces];
        for v in 0..self.vertices.len() {
            chi[t.piece_of[v]] += 1;
        }
        for e in &self.edges {
            chi[t.piece_of[e.tail.v]] -= 1;
        }
        for f in &t.faces {
            chi[t.piece_of[f[0].v]] += 1;
        }
        for (p, &x) in chi.iter().enumerate() {
            if x != 2 {
                let v = t.piece_of.iter().position(|&q| q == p).unwrap();
                problems.push(format!(
                    "piece containing {} has Euler characteristic {x}, not 2",
                    self.vertices[v]
                ));
            }
        }
        // Pieces and regions must form a tree: P - 1 gluings, all distinct.
        if self.nests.len() + 1 != t.num_pieces.max(1) {
            problems.push(format!(
                "{} pieces need {} nest records, found {}",
                t.num_pieces,
                t.num_pieces.saturating_sub(1),
                self.nests.len()
            ));
        } else {
            let mut dsu = Dsu::new(t.num_pieces);
            for n in &self.nests {
                if !dsu.union(t.piece_of[n.child.v], t.piece_of[n.parent.v]) {
                    problems.push(format!(
                        "nest {} in {} closes a cycle",
                        self.corner_name(n.child),
                        self.corner_name(n.parent)
                    ));
                }
            }
        }
        for n in &self.nests {
            for c in [n.child, n.parent] {
                if c.port >= self.degree(c.v) {
                    problems.push(format!(
                        "nest refers to missing corner {}",
                        self.corner_name(c)
                    ));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(problems))
        }
    }
}

impl Topology {
    pub fn face(&self, c: Corner) -> usize {
        self.face_at[c.v][c.port as usize]
    }

    pub fn region(&self, c: Corner) -> usize {
        self.region_of_face[self.face(c)]
    }

    /// Faces of each region, in face order.
    pub fn region_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_regions];
        for (f, &r) in self.region_of_face.iter().enumerate() {
            out[r].push(f);
        }
        out
    }

    /// Whether the region contains a face of a piece with crossings.
    pub fn region_has_crossings(&self, d: &Diagram, r: usize) -> bool {
        self.faces
            .iter()
            .enumerate()
            .any(|(f, w)| self.region_of_face[f] == r && w.iter().any(|c| d.is_crossing(c.v)))
    }
}
