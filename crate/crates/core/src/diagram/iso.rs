//! Orientation-preserving isomorphism through canonical codes.
//!
//! A piece rooted at a port is numbered breadth-first along the rotation;
//! pieces nested in a face contribute the sorted multiset of their own
//! codes. The code of a diagram is the least over all root pieces and ports.

use super::{Diagram, Dir, End, Kind, Topology, VId};

const SEP: u32 = u32::MAX;

struct Ctx<'a> {
    d: &'a Diagram,
    t: Topology,
    /// Faces of each piece.
    piece_faces: Vec<Vec<usize>>,
    /// Faces in each region.
    region_faces: Vec<Vec<usize>>,
    piece_vertices: Vec<Vec<VId>>,
}

impl<'a> Ctx<'a> {
    fn new(d: &'a Diagram) -> Self {
        let t = d.topology();
        let mut piece_faces = vec![Vec::new(); t.num_pieces];
        for (f, w) in t.faces.iter().enumerate() {
            piece_faces[t.piece_of[w[0].v]].push(f);
        }
        let mut piece_vertices = vec![Vec::new(); t.num_pieces];
        for v in 0..d.vertices().len() {
            piece_vertices[t.piece_of[v]].push(v);
        }
        let region_faces = t.region_faces();
        Ctx {
            d,
            t,
            piece_faces,
            region_faces,
            piece_vertices,
        }
    }

    /// Local code of a piece rooted at `(v0, p0)` and its faces in
    /// canonical order.
    fn local(&self, v0: VId, p0: u8) -> (Vec<u32>, Vec<usize>) {
        let d = self.d;
        let n = d.vertices().len();
        let mut num = vec![u32::MAX; n];
        let mut off = vec![0u8; n];
        let mut order = vec![v0];
        num[v0] = 0;
        off[v0] = p0;
        let mut code = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            let deg = d.degree(v);
            code.push(match d.vertex(v).kind {
                Kind::Crossing => 0,
                Kind::Marker => 1,
            });
            for j in 0..deg {
                let p = (off[v] + j) % deg;
                let (e, dir) = d.port(v, p);
                let other = match dir {
                    Dir::Out => d.edge(e).head,
                    Dir::In => d.edge(e).tail,
                };
                if num[other.v] == u32::MAX {
                    num[other.v] = order.len() as u32;
                    off[other.v] = other.port;
                    order.push(other.v);
                }
                let dw = d.degree(other.v);
                code.extend([
                    (dir == Dir::In) as u32,
                    d.edge(e).color as u32,
                    num[other.v],
                    ((other.port + dw - off[other.v]) % dw) as u32,
                ]);
            }
        }
        let rel = |c: End| {
            let dg = d.degree(c.v);
            (num[c.v], (c.port + dg - off[c.v]) % dg)
        };
        let mut faces: Vec<(u32, u8, usize)> = self.piece_faces[self.t.piece_of[v0]]
            .iter()
            .map(|&f| {
                let (a, b) = self.t.faces[f].iter().map(|&c| rel(c)).min().unwrap();
                (a, b, f)
            })
            .collect();
        faces.sort();
        (code, faces.into_iter().map(|x| x.2).collect())
    }

    fn tree_code(&self, piece: usize, entry: Option<usize>) -> Vec<u32> {
        // Subtree codes hanging in each face, independent of the root port.
        let mut hanging: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
        for &f in &self.piece_faces[piece] {
            if Some(f) == entry {
                continue;
            }
            let r = self.t.region_of_face[f];
            let mut kids: Vec<Vec<u32>> = self.region_faces[r]
                .iter()
                .filter(|&&g| self.t.piece_of[self.t.faces[g][0].v] != piece)
                .map(|&g| self.tree_code(self.t.piece_of[self.t.faces[g][0].v], Some(g)))
                .collect();
            kids.sort();
            hanging.push((f, kids));
        }
        let mut best: Option<Vec<u32>> = None;
        for &v in &self.piece_vertices[piece] {
            for p in 0..self.d.degree(v) {
                let (mut code, faces) = self.local(v, p);
                code.push(SEP);
                code.push(
                    entry.map_or(SEP, |g| faces.iter().position(|&f| f == g).unwrap() as u32),
                );
                for f in &faces {
                    if let Some((_, kids)) = hanging.iter().find(|(h, _)| h == f) {
                        code.push(SEP);
                        code.push(kids.len() as u32);
                        for k in kids {
                            code.push(k.len() as u32);
                            code.extend_from_slice(k);
                        }
                    }
                }
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }
}

/// Canonical code; equal codes iff isomorphic.
pub fn canonical_code(d: &Diagram) -> Vec<u32> {
    if d.is_empty() {
        return Vec::new();
    }
    let ctx = Ctx::new(d);
    let mut code = (0..ctx.t.num_pieces)
        .map(|p| ctx.tree_code(p, None))
        .min()
        .unwrap();
    // Alphabets must agree too.
    code.push(SEP);
    code.push(d.alphabet().len() as u32);
    code
}

pub fn isomorphic(d1: &Diagram, d2: &Diagram) -> bool {
    d1.alphabet() == d2.alphabet()
        && d1.num_crossings() == d2.num_crossings()
        && d1.num_markers() == d2.num_markers()
        && d1.edges().len() == d2.edges().len()
        && canonical_code(d1) == canonical_code(d2)
}

/// Isomorphism after deleting all crossing-free loops.
pub fn isomorphic_without_markers(d1: &Diagram, d2: &Diagram) -> bool {
    isomorphic(&d1.without_markers(), &d2.without_markers())
}

impl Diagram {
    /// Deletes every marker loop; what was nested on either side of a loop
    /// ends up in the loop's surrounding region.
    pub fn without_markers(&self) -> Diagram {
        if self.num_markers() == 0 {
            return self.clone();
        }
        let (mut a, _) = super::Assembly::from_diagram(self);
        let mut relabel: Vec<usize> = (0..a
            .labels
            .iter()
            .flatten()
            .copied()
            .filter(|&l| l != usize::MAX)
            .max()
            .map_or(0, |m| m + 1))
            .collect();
        fn find(r: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while r[x] != x {
                x = r[x];
            }
            x
        }
        let dead: Vec<bool> = self
            .vertices()
            .iter()
            .map(|v| v.kind == Kind::Marker)
            .collect();
        for m in self.markers() {
            let (x, y) = (
                find(&mut relabel, a.labels[m][0]),
                find(&mut relabel, a.labels[m][1]),
            );
            relabel[x.max(y)] = x.min(y);
        }
        for ls in &mut a.labels {
            for l in ls.iter_mut().filter(|l| **l != usize::MAX) {
                *l = find(&mut relabel, *l);
            }
        }
        a.remove_slots(&dead);
        a.finish().expect("removing loops keeps a valid diagram")
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::freegroup::Alphabet;

    #[test]
    fn relabeling_is_invisible() {
        let b = borromean();
        let text = serialize(&b)
            .replace("X1\n", "X99\n")
            .replace("X1.", "X99.");
        let b2 = deserialize(&text).unwrap();
        assert_ne!(b, b2);
        assert!(isomorphic(&b, &b2));
        assert!(!isomorphic(&b, &poppy()));
    }

    /// Oracle: try every image of one port of vertex 0 and propagate the
    /// forced map along edges (connected diagrams only).
    fn brute_isomorphic(d1: &Diagram, d2: &Diagram) -> bool {
        let n = d1.vertices().len();
        if n != d2.vertices().len() || d1.edges().len() != d2.edges().len() {
            return false;
        }
        for w in 0..n {
            for off in 0..d2.degree(w) {
                let mut map: Vec<Option<(usize, u8)>> = vec![None; n];
                map[0] = Some((w, off));
                let mut stack = vec![0];
                let mut ok = d1.vertex(0).kind == d2.vertex(w).kind;
                while let (true, Some(v)) = (ok, stack.pop()) {
                    let (mv, mo) = map[v].unwrap();
                    let deg = d1.degree(v);
                    for p in 0..deg {
                        let (e1, dir1) = d1.port(v, p);
                        let q = (p + mo) % deg;
                        let (e2, dir2) = d2.port(mv, q);
                        let (x1, x2) = (d1.across(v, p), d2.across(mv, q));
                        if dir1 != dir2
                            || d1.edge(e1).color != d2.edge(e2).color
                            || d1.vertex(x1.v).kind != d2.vertex(x2.v).kind
                        {
                            ok = false;
                            break;
                        }
                        let dg = d1.degree(x1.v);
                        let want = (x2.v, (x2.port + dg - x1.port) % dg);
                        match map[x1.v] {
                            None => {
                                map[x1.v] = Some(want);
                                stack.push(x1.v);
                            }
                            Some(m) if m != want => {
                                ok = false;
                                break;
                            }
                            _ => {}
                        }
                    }
                }
                let mut images: Vec<usize> = map.iter().flatten().map(|m| m.0).collect();
                images.sort();
                images.dedup();
                if ok && images.len() == n {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn agrees_with_brute_force() {
        let b = borromean();
        let p = poppy();
        let cases = [
            (b.clone(), b.mirror()),
            (b.clone(), b.swap_colors(1, 2)),
            (b.clone(), b.reverse_components(&[0])),
            (b.clone(), b.reverse_components(&[0, 1, 2])),
            (p.clone(), p.mirror()),
            (p.clone(), p.reverse_components(&[0])),
        ];
        for (x, y) in cases {
            assert_eq!(isomorphic(&x, &y), brute_isomorphic(&x, &y));
        }
    }

    #[test]
    fn mirror_and_recolor() {
        let b = borromean();
        // The antipodal map of the sphere reverses orientation yet keeps
        // every oriented great circle, so this shadow is amphichiral.
        assert!(isomorphic(&b, &b.mirror()));
        assert!(isomorphic(&b.mirror().mirror(), &b));
        assert!(isomorphic(&b.recolor(&[0, 1, 2]).unwrap(), &b));
        let al = Alphabet::new(["a"]).unwrap();
        assert!(isomorphic(&Diagram::empty(al.clone()), &Diagram::empty(al)));
    }
}
