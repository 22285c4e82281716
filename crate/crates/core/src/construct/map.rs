//! A planar map with ghost edges, flattened into a diagram.
//!
//! Boundary points sit on ghost rings; each has four ports in
//! counterclockwise order: forward along the ring, inward, backward,
//! outward. The strand through a point with letter `x` leaves outward when
//! `x` is positive. Ghost edges are drawn but are not part of the diagram:
//! faces on their two sides belong to one region.

use crate::diagram::{AEdge, Assembly, Corner, Diagram, DiagramError, EId, End, Slot, Vertex};
use crate::freegroup::{Alphabet, Gen, Letter};
use crate::noose::RopeStep;

pub const FWD: u8 = 0;
pub const IN: u8 = 1;
pub const BWD: u8 = 2;
pub const OUT: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MKind {
    Crossing(u32),
    Point(Letter),
    Ghost,
}

struct MVert {
    kind: MKind,
    deg: u8,
}

struct MEdge {
    tail: End,
    head: End,
    color: Option<Gen>,
}

/// Ring entry: vertex with its forward and backward ports.
pub type RingItem = (usize, u8, u8);

pub struct MapBuilder {
    alphabet: Alphabet,
    verts: Vec<MVert>,
    edges: Vec<MEdge>,
    next_crossing: u32,
}

pub struct Flat {
    pub diagram: Diagram,
    /// Final edge of every real map edge.
    edge_of: Vec<Option<EId>>,
    ports: Vec<[Option<(usize, bool)>; 4]>,
    letters: Vec<Option<Letter>>,
    names: Vec<Option<u32>>,
    face_label: Vec<[usize; 4]>,
}

impl MapBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        MapBuilder {
            alphabet,
            verts: Vec::new(),
            edges: Vec::new(),
            next_crossing: 1,
        }
    }

    pub fn point(&mut self, l: Letter) -> usize {
        self.verts.push(MVert {
            kind: MKind::Point(l),
            deg: 4,
        });
        self.verts.len() - 1
    }

    pub fn crossing(&mut self) -> usize {
        self.verts.push(MVert {
            kind: MKind::Crossing(self.next_crossing),
            deg: 4,
        });
        self.next_crossing += 1;
        self.verts.len() - 1
    }

    pub fn ghost(&mut self, deg: u8) -> usize {
        self.verts.push(MVert {
            kind: MKind::Ghost,
            deg,
        });
        self.verts.len() - 1
    }

    pub fn is_point(&self, v: usize) -> bool {
        matches!(self.verts[v].kind, MKind::Point(_))
    }

    pub fn letter(&self, v: usize) -> Letter {
        match self.verts[v].kind {
            MKind::Point(l) => l,
            _ => panic!("not a boundary point"),
        }
    }

    pub fn ghost_edge(&mut self, tail: End, head: End) {
        self.edges.push(MEdge {
            tail,
            head,
            color: None,
        });
    }

    /// Closes `items` into a ring, each item's forward port joined to the
    /// next item's backward port.
    pub fn ring(&mut self, items: &[RingItem]) {
        for (i, &(v, fwd, _)) in items.iter().enumerate() {
            let (w, _, bwd) = items[(i + 1) % items.len()];
            self.ghost_edge(End::new(v, fwd), End::new(w, bwd));
        }
    }

    /// Whether a strand edge at a point's port leaves from it.
    fn leaves(&self, e: End) -> Option<bool> {
        match self.verts[e.v].kind {
            MKind::Point(l) => Some((e.port == OUT) == !l.inverse),
            _ => None,
        }
    }

    /// A strand through `chain` (ends paired consecutively), oriented by
    /// whichever end of the chain is a boundary point.
    pub fn line(&mut self, chain: &[End], color: Gen) {
        let forward = match (self.leaves(chain[0]), self.leaves(*chain.last().unwrap())) {
            (Some(f), _) => f,
            (None, Some(l)) => !l,
            _ => panic!("line without boundary point"),
        };
        for pair in chain.chunks(2) {
            let (t, h) = if forward {
                (pair[0], pair[1])
            } else {
                (pair[1], pair[0])
            };
            self.edges.push(MEdge {
                tail: t,
                head: h,
                color: Some(color),
            });
        }
    }

    /// A strand edge between two point ports carrying the same generator.
    pub fn join(&mut self, a: End, b: End) {
        let color = self.letter(a.v).gen;
        debug_assert_eq!(self.leaves(a).map(|x| !x), self.leaves(b));
        self.line(&[a, b], color);
    }

    pub fn flatten(self) -> Result<Flat, DiagramError> {
        let n = self.verts.len();
        let mut ports: Vec<[Option<(usize, bool)>; 4]> = vec![[None; 4]; n];
        for (i, e) in self.edges.iter().enumerate() {
            for (end, tail) in [(e.tail, true), (e.head, false)] {
                let slot = &mut ports[end.v][end.port as usize];
                assert!(slot.is_none(), "map port used twice");
                *slot = Some((i, tail));
            }
        }
        let deg = |v: usize| self.verts[v].deg;
        // Faces by corner orbits.
        let mut face = vec![[usize::MAX; 4]; n];
        let mut nfaces = 0;
        for v in 0..n {
            for k in 0..deg(v) {
                if face[v][k as usize] != usize::MAX {
                    continue;
                }
                let mut c = End::new(v, k);
                while face[c.v][c.port as usize] == usize::MAX {
                    face[c.v][c.port as usize] = nfaces;
                    let (e, tail) = ports[c.v][c.port as usize].expect("map port left open");
                    let w = if tail {
                        self.edges[e].head
                    } else {
                        self.edges[e].tail
                    };
                    c = End::new(w.v, (w.port + deg(w.v) - 1) % deg(w.v));
                }
                nfaces += 1;
            }
        }
        let mut region: Vec<usize> = (0..nfaces).collect();
        fn find(r: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while r[x] != x {
                r[x] = r[r[x]];
                x = r[x];
            }
            x
        }
        for e in self.edges.iter().filter(|e| e.color.is_none()) {
            let (a, b) = (
                face[e.tail.v][e.tail.port as usize],
                face[e.head.v][e.head.port as usize],
            );
            let (a, b) = (find(&mut region, a), find(&mut region, b));
            region[a.max(b)] = a.min(b);
        }
        let mut face_label = vec![[usize::MAX; 4]; n];
        for v in 0..n {
            for k in 0..deg(v) as usize {
                face_label[v][k] = find(&mut region, face[v][k]);
            }
        }
        // Assembly over crossings and points.
        let mut slot_of = vec![usize::MAX; n];
        let mut slots = Vec::new();
        let mut labels = Vec::new();
        for (v, mv) in self.verts.iter().enumerate() {
            match mv.kind {
                MKind::Crossing(id) => {
                    slot_of[v] = slots.len();
                    slots.push(Slot::Named(Vertex::crossing(id)));
                    labels.push(face_label[v]);
                }
                MKind::Point(_) => {
                    slot_of[v] = slots.len();
                    slots.push(Slot::Pass);
                    labels.push([
                        face_label[v][IN as usize],
                        face_label[v][OUT as usize],
                        usize::MAX,
                        usize::MAX,
                    ]);
                }
                MKind::Ghost => {}
            }
        }
        let map_end = |e: End| match self.verts[e.v].kind {
            MKind::Point(_) => End::new(slot_of[e.v], if e.port == IN { 0 } else { 1 }),
            _ => End::new(slot_of[e.v], e.port),
        };
        let real: Vec<usize> = (0..self.edges.len())
            .filter(|&i| self.edges[i].color.is_some())
            .collect();
        let edges: Vec<AEdge> = real
            .iter()
            .map(|&i| {
                let e = &self.edges[i];
                AEdge {
                    id: Some(i as u32 + 1),
                    tail: map_end(e.tail),
                    head: map_end(e.head),
                    color: e.color.unwrap(),
                }
            })
            .collect();
        // Chains through points end up as one edge named by their least id.
        let mut chain: Vec<usize> = (0..self.edges.len()).collect();
        for (v, mv) in self.verts.iter().enumerate() {
            if let MKind::Point(_) = mv.kind {
                let a = find(&mut chain, ports[v][IN as usize].unwrap().0);
                let b = find(&mut chain, ports[v][OUT as usize].unwrap().0);
                chain[a.max(b)] = a.min(b);
            }
        }
        let asm = Assembly {
            alphabet: self.alphabet.clone(),
            slots,
            edges,
            labels,
            next_edge: self.edges.len() as u32 + 1,
            next_marker: 1,
        };
        let diagram = asm.finish()?;
        let edge_of = (0..self.edges.len())
            .map(|i| {
                self.edges[i].color.map(|_| {
                    let root = find(&mut chain, i);
                    diagram
                        .edge_by_id(root as u32 + 1)
                        .expect("chain keeps its least id")
                })
            })
            .collect();
        Ok(Flat {
            diagram,
            edge_of,
            ports,
            letters: self
                .verts
                .iter()
                .map(|v| {
                    if let MKind::Point(l) = v.kind {
                        Some(l)
                    } else {
                        None
                    }
                })
                .collect(),
            names: self
                .verts
                .iter()
                .map(|v| {
                    if let MKind::Crossing(id) = v.kind {
                        Some(id)
                    } else {
                        None
                    }
                })
                .collect(),
            face_label,
        })
    }
}

impl Flat {
    /// The crossing of a boundary point, read along the ring.
    pub fn step(&self, p: usize) -> RopeStep {
        let l = self.letters[p].expect("boundary point");
        let (e, _) = self.ports[p][IN as usize].unwrap();
        RopeStep {
            edge: self.edge_of[e].unwrap(),
            from_left: l.inverse,
        }
    }

    pub fn crossing(&self, v: usize) -> usize {
        self.diagram
            .vertex_by_name(Vertex::crossing(self.names[v].expect("crossing")))
            .unwrap()
    }

    /// A corner of the diagram in the region of map corner `(v, k)`.
    pub fn corner_in_region_of(&self, v: usize, k: u8) -> Corner {
        let d = &self.diagram;
        if d.is_empty() {
            return End::new(0, 0);
        }
        let want = self.face_label[v][k as usize];
        for (w, labels) in self.face_label.iter().enumerate() {
            if let Some(id) = self.names[w] {
                if let Some(j) = labels.iter().position(|&l| l == want) {
                    return End::new(d.vertex_by_name(Vertex::crossing(id)).unwrap(), j as u8);
                }
            }
            if let Some(l) = self.letters[w] {
                for (port, side_backward) in [(IN, true), (OUT, false)] {
                    if labels[port as usize] != want {
                        continue;
                    }
                    let e = self.edge_of[self.ports[w][IN as usize].unwrap().0].unwrap();
                    // Travelling outward the forward side is on the left.
                    let left = side_backward == l.inverse;
                    return if left {
                        d.left_corner(e)
                    } else {
                        d.right_corner(e)
                    };
                }
            }
        }
        unreachable!("every region of a nonempty diagram has a corner")
    }
}
