//! Local moves on diagrams: monogon and bigon creation/deletion, bridges,
//! and trivial-component insertion/deletion.

mod random;
mod script;
mod search;

use thiserror::Error;

use crate::diagram::{
    AEdge, Assembly, Corner, Diagram, DiagramError, EId, End, Kind, Slot, VId, Vertex,
};
use crate::freegroup::Gen;

pub use random::random_diagram;
pub use script::{apply_script, format_site, parse_site};
pub use search::{
    bounded_doodle_equiv, cobordant, cobordant_with, reduce_to_minimal, reduce_with_path,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Noose(#[from] crate::noose::NooseError),
    #[error(transparent)]
    Identity(#[from] crate::identity::IdentityError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SiteKind {
    Monogon,
    Bigon,
    H1Plus,
    H2Plus,
    Bridge,
    LoopInsert,
    LoopDelete,
}

impl SiteKind {
    pub const ALL: [SiteKind; 7] = [
        SiteKind::Monogon,
        SiteKind::Bigon,
        SiteKind::H1Plus,
        SiteKind::H2Plus,
        SiteKind::Bridge,
        SiteKind::LoopInsert,
        SiteKind::LoopDelete,
    ];
    pub const REDUCING: [SiteKind; 2] = [SiteKind::Monogon, SiteKind::Bigon];
}

/// Where a move applies. `left` flags name the side of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// H1⁻ on the length-1 face at this corner.
    Monogon {
        corner: Corner,
    },
    /// H2⁻ on the length-2 face at this corner.
    Bigon {
        corner: Corner,
    },
    /// H1⁺: a curl on `edge` bulging into the face on the given side.
    H1Plus {
        edge: EId,
        left: bool,
    },
    /// H2⁺: a finger of `e1` pushed across `e2` through their common region.
    H2Plus {
        e1: EId,
        left1: bool,
        e2: EId,
        left2: bool,
    },
    /// Same-color bridge across the region on side `left` of both edges
    /// (`e1 == e2` bridges an edge with itself).
    Bridge {
        e1: EId,
        e2: EId,
        left: bool,
    },
    /// A new trivial loop in the region of `at` (`None` for the empty
    /// diagram), its left side facing that region unless `reversed`.
    LoopInsert {
        color: Gen,
        at: Option<Corner>,
        reversed: bool,
    },
    LoopDelete {
        marker: VId,
    },
}

impl MoveSite {
    pub fn kind(&self) -> SiteKind {
        match self {
            MoveSite::Monogon { .. } => SiteKind::Monogon,
            MoveSite::Bigon { .. } => SiteKind::Bigon,
            MoveSite::H1Plus { .. } => SiteKind::H1Plus,
            MoveSite::H2Plus { .. } => SiteKind::H2Plus,
            MoveSite::Bridge { .. } => SiteKind::Bridge,
            MoveSite::LoopInsert { .. } => SiteKind::LoopInsert,
            MoveSite::LoopDelete { .. } => SiteKind::LoopDelete,
        }
    }
}

fn side_corner(d: &Diagram, e: EId, left: bool) -> Corner {
    if left {
        d.left_corner(e)
    } else {
        d.right_corner(e)
    }
}

/// Whether the region of face `f` holds faces of other crossing pieces, and
/// whether it holds marker loops.
fn face_contents(d: &Diagram, t: &crate::diagram::Topology, f: usize) -> (bool, bool) {
    let r = t.region_of_face[f];
    let mut crossings = false;
    let mut markers = false;
    for (g, w) in t.faces.iter().enumerate() {
        if g == f || t.region_of_face[g] != r {
            continue;
        }
        if d.is_crossing(w[0].v) {
            crossings = true;
        } else {
            markers = true;
        }
    }
    (crossings, markers)
}

/// Sites of the requested kinds in a deterministic order.
pub fn find_sites(d: &Diagram, kinds: &[SiteKind]) -> Vec<MoveSite> {
    let t = d.topology();
    let mut out = Vec::new();
    let want = |k: SiteKind| kinds.contains(&k);
    if want(SiteKind::Monogon) || want(SiteKind::Bigon) {
        for (f, w) in t.faces.iter().enumerate() {
            if !w.iter().all(|c| d.is_crossing(c.v)) || face_contents(d, &t, f).0 {
                continue;
            }
            match w.len() {
                1 if want(SiteKind::Monogon) => out.push(MoveSite::Monogon { corner: w[0] }),
                2 if want(SiteKind::Bigon) && w[0].v != w[1].v => {
                    out.push(MoveSite::Bigon { corner: w[0] })
                }
                _ => {}
            }
        }
    }
    if want(SiteKind::H1Plus) {
        for e in 0..d.edges().len() {
            for left in [true, false] {
                out.push(MoveSite::H1Plus { edge: e, left });
            }
        }
    }
    let sides: Vec<(EId, bool, usize)> = (0..d.edges().len())
        .flat_map(|e| [true, false].map(|l| (e, l, t.region(side_corner(d, e, l)))))
        .collect();
    if want(SiteKind::H2Plus) {
        for (i, &(e1, l1, r1)) in sides.iter().enumerate() {
            for &(e2, l2, r2) in &sides[i + 1..] {
                if e1 != e2 && r1 == r2 {
                    out.push(MoveSite::H2Plus {
                        e1,
                        left1: l1,
                        e2,
                        left2: l2,
                    });
                }
            }
        }
    }
    if want(SiteKind::Bridge) {
        for (i, &(e1, l1, r1)) in sides.iter().enumerate() {
            for &(e2, l2, r2) in &sides[i..] {
                if l1 == l2 && r1 == r2 && d.edge(e1).color == d.edge(e2).color {
                    out.push(MoveSite::Bridge { e1, e2, left: l1 });
                }
            }
        }
    }
    if want(SiteKind::LoopInsert) {
        let mut region_corner = vec![None; t.num_regions];
        for w in &t.faces {
            let r = t.region(w[0]);
            if region_corner[r].is_none() {
                region_corner[r] = Some(w[0]);
            }
        }
        for at in region_corner {
            for color in d.alphabet().gens() {
                for reversed in [false, true] {
                    out.push(MoveSite::LoopInsert {
                        color,
                        at,
                        reversed,
                    });
                }
            }
        }
    }
    if want(SiteKind::LoopDelete) {
        for m in d.markers() {
            if loop_has_empty_side(d, &t, m) {
                out.push(MoveSite::LoopDelete { marker: m });
            }
        }
    }
    out
}

fn loop_has_empty_side(d: &Diagram, t: &crate::diagram::Topology, m: VId) -> bool {
    (0..2).any(|k| {
        let f = t.face(End::new(m, k));
        face_contents(d, t, f) == (false, false)
    })
}

/// Applies a move; deleting a monogon or bigon that holds loops fails.
pub fn apply(d: &Diagram, site: &MoveSite) -> Result<Diagram, MoveError> {
    apply_with(d, site, false)
}

fn pre(msg: impl Into<String>) -> MoveError {
    MoveError::Precondition(msg.into())
}

fn check_edge(d: &Diagram, e: EId) -> Result<(), MoveError> {
    if e < d.edges().len() {
        Ok(())
    } else {
        Err(pre("no such edge"))
    }
}

/// Relabels every corner labeled `from` to `to`.
fn merge_label(a: &mut Assembly, from: usize, to: usize) {
    for ls in &mut a.labels {
        for l in ls.iter_mut() {
            if *l == from {
                *l = to;
            }
        }
    }
}

/// Rewrites edge ends through `map`.
fn remap_ends(a: &mut Assembly, map: &[(End, End)]) {
    for e in &mut a.edges {
        for end in [&mut e.tail, &mut e.head] {
            if let Some(&(_, to)) = map.iter().find(|(from, _)| from == end) {
                *end = to;
            }
        }
    }
}

/// When the corners `c1` and `c2` lie on one face that a move cuts in two,
/// the walk strictly after `c1` up to and including `c2` gets `label`.
fn split_face(d: &Diagram, a: &mut Assembly, c1: Corner, c2: Corner, label: usize) {
    let t = d.topology();
    let f = t.face(c1);
    if f != t.face(c2) {
        return;
    }
    let w = &t.faces[f];
    let i1 = w.iter().position(|&c| c == c1).unwrap();
    let mut j = i1;
    loop {
        j = (j + 1) % w.len();
        a.labels[w[j].v][w[j].port as usize] = label;
        if w[j] == c2 {
            break;
        }
    }
}

/// Checks that a deletable face holds no other crossing piece and, unless
/// `evict`, no loops. Returns its label.
fn deletable_face(d: &Diagram, c: Corner, len: usize, evict: bool) -> Result<usize, MoveError> {
    if c.v >= d.vertices().len() || !d.is_crossing(c.v) || c.port > 3 {
        return Err(pre("corner is not at a crossing"));
    }
    let t = d.topology();
    let f = t.face(c);
    let w = &t.faces[f];
    if w.len() != len || !w.iter().all(|x| d.is_crossing(x.v)) || (len == 2 && w[0].v == w[1].v) {
        return Err(pre(format!(
            "face at {} is not a {}",
            d.corner_name(c),
            if len == 1 { "monogon" } else { "bigon" }
        )));
    }
    let (crossings, markers) = face_contents(d, &t, f);
    if crossings {
        return Err(pre(format!(
            "face at {} contains other crossings",
            d.corner_name(c)
        )));
    }
    if markers && !evict {
        let m = t
            .faces
            .iter()
            .enumerate()
            .find(|(g, x)| {
                *g != f && t.region_of_face[*g] == t.region_of_face[f] && !d.is_crossing(x[0].v)
            })
            .map(|(_, x)| d.vertex(x[0].v).to_string())
            .unwrap();
        return Err(pre(format!(
            "face at {} contains loop {m}",
            d.corner_name(c)
        )));
    }
    Ok(t.region(c))
}

pub(crate) fn apply_with(d: &Diagram, site: &MoveSite, evict: bool) -> Result<Diagram, MoveError> {
    let (mut a, mut next_label) = Assembly::from_diagram(d);
    let mut fresh = || {
        next_label += 1;
        next_label - 1
    };
    let labels0 = a.labels.clone();
    let lab = |c: Corner| labels0[c.v][c.port as usize];
    match *site {
        MoveSite::Monogon { corner } => {
            let m = deletable_face(d, corner, 1, evict)?;
            let (v, k) = (corner.v, corner.port);
            let at = |i: u8| End::new(v, (k + i) % 4);
            let (lp0, lp1) = (lab(at(2)), lab(at(1)));
            let (loop_edge, _) = d.port(v, k);
            a.edges.remove(loop_edge);
            remap_ends(&mut a, &[(at(2), End::new(v, 0)), (at(3), End::new(v, 1))]);
            a.slots[v] = Slot::Pass;
            a.labels[v] = [lp0, lp1, usize::MAX, usize::MAX];
            merge_label(&mut a, m, lp1);
        }
        MoveSite::Bigon { corner } => {
            let b = deletable_face(d, corner, 2, evict)?;
            let (v, i) = (corner.v, corner.port);
            let other = d.next_corner(corner);
            let (w, j) = (other.v, other.port);
            let vi = |x: u8| End::new(v, (i + x) % 4);
            let wj = |x: u8| End::new(w, (j + x) % 4);
            let p1 = [lab(vi(2)), lab(vi(1)), usize::MAX, usize::MAX];
            let p2 = [lab(vi(3)), lab(vi(2)), usize::MAX, usize::MAX];
            let (x, _) = d.port(v, i);
            let (y, _) = d.port(v, (i + 1) % 4);
            let mut dead = [x, y];
            dead.sort();
            a.edges.remove(dead[1]);
            a.edges.remove(dead[0]);
            remap_ends(
                &mut a,
                &[
                    (vi(2), End::new(v, 0)),
                    (wj(3), End::new(v, 1)),
                    (vi(3), End::new(w, 0)),
                    (wj(2), End::new(w, 1)),
                ],
            );
            a.slots[v] = Slot::Pass;
            a.slots[w] = Slot::Pass;
            a.labels[v] = p1;
            a.labels[w] = p2;
            // The faces at both ends of the bigon join up.
            merge_label(&mut a, b, p1[0]);
            merge_label(&mut a, labels0[w][((j + 2) % 4) as usize], p1[0]);
        }
        MoveSite::H1Plus { edge, left } => {
            check_edge(d, edge)?;
            let e = d.edge(edge).clone();
            let (l, r, m) = (lab(e.tail), lab(e.head), fresh());
            let v = a.add_slot(
                Slot::Named(Vertex::crossing(d.next_vertex_id(Kind::Crossing))),
                if left { [r, l, m, l] } else { [r, m, r, l] },
            );
            let pv = |p: u8| End::new(v, p);
            let ae = |id, tail, head| AEdge {
                id,
                tail,
                head,
                color: e.color,
            };
            a.edges[edge] = ae(Some(e.id), e.tail, pv(0));
            if left {
                a.edges.push(ae(None, pv(2), pv(3)));
                a.edges.push(ae(None, pv(1), e.head));
            } else {
                a.edges.push(ae(None, pv(2), pv(1)));
                a.edges.push(ae(None, pv(3), e.head));
            }
        }
        MoveSite::H2Plus {
            e1,
            left1,
            e2,
            left2,
        } => {
            check_edge(d, e1)?;
            check_edge(d, e2)?;
            if e1 == e2 {
                return Err(pre("a finger move needs two distinct edges"));
            }
            let f = lab(side_corner(d, e1, left1));
            if f != lab(side_corner(d, e2, left2)) {
                return Err(pre("the edges do not share a region on the given sides"));
            }
            let (x1, x2) = (d.edge(e1).clone(), d.edge(e2).clone());
            // Picture: e1 = a -> b with F on its left, e2 = c -> d with F on
            // its right; e1 is pushed across e2 from F into G.
            let (flip1, flip2) = (!left1, left2);
            let (pa, pb) = if flip1 {
                (x1.head, x1.tail)
            } else {
                (x1.tail, x1.head)
            };
            let (pc, pd) = if flip2 {
                (x2.head, x2.tail)
            } else {
                (x2.tail, x2.head)
            };
            let h = lab(side_corner(d, e1, !left1));
            let g = lab(side_corner(d, e2, !left2));
            let (bigon, f2) = (fresh(), fresh());
            split_face(
                d,
                &mut a,
                side_corner(d, e1, left1),
                side_corner(d, e2, left2),
                f2,
            );
            let id = d.next_vertex_id(Kind::Crossing);
            let v1 = a.add_slot(Slot::Named(Vertex::crossing(id)), [bigon, g, f, h]);
            let v2 = a.add_slot(Slot::Named(Vertex::crossing(id + 1)), [g, bigon, h, f2]);
            let p = End::new;
            let chain = |ends: [(End, End); 3], flip: bool, color: Gen, id: u32| {
                ends.into_iter()
                    .enumerate()
                    .map(|(n, (t, hd))| {
                        let (t, hd) = if flip { (hd, t) } else { (t, hd) };
                        AEdge {
                            id: (n == 0).then_some(id),
                            tail: t,
                            head: hd,
                            color,
                        }
                    })
                    .collect::<Vec<_>>()
            };
            let c2 = chain(
                [(pc, p(v1, 2)), (p(v1, 0), p(v2, 2)), (p(v2, 0), pd)],
                flip2,
                x2.color,
                x2.id,
            );
            let c1 = chain(
                [(pa, p(v1, 3)), (p(v1, 1), p(v2, 1)), (p(v2, 3), pb)],
                flip1,
                x1.color,
                x1.id,
            );
            let (hi, lo) = if e1 > e2 { (e1, e2) } else { (e2, e1) };
            a.edges.remove(hi);
            a.edges.remove(lo);
            a.edges.extend(c1);
            a.edges.extend(c2);
        }
        MoveSite::Bridge { e1, e2, left } => {
            check_edge(d, e1)?;
            check_edge(d, e2)?;
            let (x1, x2) = (d.edge(e1).clone(), d.edge(e2).clone());
            if x1.color != x2.color {
                return Err(pre("a bridge joins arcs of one color"));
            }
            let f = lab(side_corner(d, e1, left));
            if f != lab(side_corner(d, e2, left)) {
                return Err(pre("the edges do not share a region on the given side"));
            }
            let (r1, r2) = (
                lab(side_corner(d, e1, !left)),
                lab(side_corner(d, e2, !left)),
            );
            // Segments as (tail, head); a self-bridge splits the edge first.
            // Picture with F on the left of both: a -> b and c -> d become
            // a -> d and c -> b. F keeps the walk from d to a, the fresh
            // label takes the walk from b to c.
            let flip = !left;
            let f2 = fresh();
            let (mut ft, mut fb) = (f, f2);
            let (s1, s2) = if e1 == e2 {
                // The new corner on the F side is the whole b..c walk when
                // not flipped, the whole d..a walk otherwise.
                let (l, r) = (lab(x1.tail), lab(x1.head));
                let s = a.add_slot(
                    Slot::Pass,
                    if flip {
                        [f2, l, usize::MAX, usize::MAX]
                    } else {
                        [r, f2, usize::MAX, usize::MAX]
                    },
                );
                if flip {
                    (ft, fb) = (f2, f);
                }
                ((x1.tail, End::new(s, 0)), (End::new(s, 1), x1.head))
            } else {
                split_face(
                    d,
                    &mut a,
                    side_corner(d, e1, left),
                    side_corner(d, e2, left),
                    f2,
                );
                ((x1.tail, x1.head), (x2.tail, x2.head))
            };
            let (pa, pb) = if flip { (s1.1, s1.0) } else { (s1.0, s1.1) };
            let (pc, pd) = if flip { (s2.1, s2.0) } else { (s2.0, s2.1) };
            let qt = a.add_slot(Slot::Pass, [r1, ft, usize::MAX, usize::MAX]);
            let qb = a.add_slot(Slot::Pass, [r2, fb, usize::MAX, usize::MAX]);
            let new = [
                (pa, End::new(qt, 0)),
                (End::new(qt, 1), pd),
                (pc, End::new(qb, 0)),
                (End::new(qb, 1), pb),
            ];
            let (hi, lo) = if e1 > e2 { (e1, e2) } else { (e2, e1) };
            a.edges.remove(hi);
            if lo != hi {
                a.edges.remove(lo);
            }
            for (n, (t, h)) in new.into_iter().enumerate() {
                let (t, h) = if flip { (h, t) } else { (t, h) };
                let id = match n {
                    0 => Some(x1.id),
                    2 if e1 != e2 => Some(x2.id),
                    _ => None,
                };
                a.edges.push(AEdge {
                    id,
                    tail: t,
                    head: h,
                    color: x1.color,
                });
            }
        }
        MoveSite::LoopInsert {
            color,
            at,
            reversed,
        } => {
            if color as usize >= d.alphabet().len() {
                return Err(pre("unknown color"));
            }
            let r = match at {
                Some(c) => {
                    if c.v >= d.vertices().len() || c.port >= d.degree(c.v) {
                        return Err(pre("no such corner"));
                    }
                    lab(c)
                }
                None if d.is_empty() => 0,
                None => return Err(pre("a placement is required")),
            };
            let inner = fresh();
            let labels = if reversed {
                [r, inner, 0, 0]
            } else {
                [inner, r, 0, 0]
            };
            let m = a.add_slot(
                Slot::Named(Vertex::marker(d.next_vertex_id(Kind::Marker))),
                labels,
            );
            a.edges.push(AEdge {
                id: None,
                tail: End::new(m, 1),
                head: End::new(m, 0),
                color,
            });
        }
        MoveSite::LoopDelete { marker } => {
            if marker >= d.vertices().len() || d.is_crossing(marker) {
                return Err(pre("not a loop"));
            }
            if !loop_has_empty_side(d, &d.topology(), marker) {
                return Err(pre(format!(
                    "loop {} has things on both sides",
                    d.vertex(marker)
                )));
            }
            let mut dead = vec![false; a.slots.len()];
            dead[marker] = true;
            a.remove_slots(&dead);
        }
    }
    Ok(a.finish()?)
}

/// Diagram obtained by a site, checked to validate (used by the random
/// generator and the searches).
pub(crate) fn apply_checked(
    d: &Diagram,
    site: &MoveSite,
    evict: bool,
) -> Result<Diagram, MoveError> {
    let out = apply_with(d, site, evict)?;
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::random::all_results;
    use super::*;
    use crate::diagram::{borromean, isomorphic, poppy, Diagram, Edge};
    use crate::freegroup::Alphabet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one_loop() -> Diagram {
        let al = Alphabet::new(["a", "b"]).unwrap();
        apply(
            &Diagram::empty(al),
            &MoveSite::LoopInsert {
                color: 0,
                at: None,
                reversed: false,
            },
        )
        .unwrap()
    }

    #[test]
    fn fixtures_have_no_reducing_sites() {
        assert!(find_sites(&borromean(), &SiteKind::REDUCING).is_empty());
        let al = Alphabet::new(["a"]).unwrap();
        let empty = Diagram::empty(al);
        assert_eq!(find_sites(&empty, &SiteKind::ALL).len(), 2);
        assert!(find_sites(
            &empty,
            &[
                SiteKind::Monogon,
                SiteKind::Bigon,
                SiteKind::Bridge,
                SiteKind::LoopDelete
            ]
        )
        .is_empty());
    }

    #[test]
    fn curls_undo() {
        let b = borromean();
        for (site, c) in all_results(&b, &[SiteKind::H1Plus]) {
            let m = find_sites(&c, &SiteKind::REDUCING);
            assert_eq!(m.len(), 1, "{site:?}");
            assert_eq!(m[0].kind(), SiteKind::Monogon);
            assert!(isomorphic(&apply(&c, &m[0]).unwrap(), &b));
        }
    }

    #[test]
    fn fingers_undo() {
        for d in [borromean(), poppy()] {
            for (site, c) in all_results(&d, &[SiteKind::H2Plus]) {
                assert_eq!(c.num_crossings(), d.num_crossings() + 2);
                let bigons: Vec<_> = find_sites(&c, &[SiteKind::Bigon]);
                assert!(
                    bigons
                        .iter()
                        .any(|s| isomorphic(&apply(&c, s).unwrap(), &d)),
                    "{site:?}"
                );
            }
        }
    }

    #[test]
    fn two_circle_bigon_splits() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let d = one_loop();
        let d = apply(
            &d,
            &MoveSite::LoopInsert {
                color: 1,
                at: Some(End::new(0, 0)),
                reversed: false,
            },
        )
        .unwrap();
        let two = apply(&d, &find_sites(&d, &[SiteKind::H2Plus])[0]).unwrap();
        assert_eq!(two.num_crossings(), 2);
        assert_eq!(two.alphabet(), &al);
        for s in find_sites(&two, &[SiteKind::Bigon]) {
            let back = apply(&two, &s).unwrap();
            assert_eq!((back.num_crossings(), back.num_markers()), (0, 2));
        }
    }

    #[test]
    fn self_bridge_splits_a_loop() {
        let d = one_loop();
        for left in [true, false] {
            let two = apply(&d, &MoveSite::Bridge { e1: 0, e2: 0, left }).unwrap();
            assert_eq!(two.num_markers(), 2);
            assert!(two.edges().iter().all(|e: &Edge| e.color == 0));
        }
    }

    #[test]
    fn blocked_monogon() {
        let b = borromean();
        let c = apply(
            &b,
            &MoveSite::H1Plus {
                edge: 0,
                left: true,
            },
        )
        .unwrap();
        let MoveSite::Monogon { corner } = find_sites(&c, &SiteKind::REDUCING)[0] else {
            panic!()
        };
        let c2 = apply(
            &c,
            &MoveSite::LoopInsert {
                color: 0,
                at: Some(corner),
                reversed: false,
            },
        )
        .unwrap();
        let sites = find_sites(&c2, &SiteKind::REDUCING);
        assert_eq!(sites.len(), 1);
        let err = apply(&c2, &sites[0]).unwrap_err();
        assert!(err.to_string().contains("L1"), "{err}");
        let evicted = apply_with(&c2, &sites[0], true).unwrap();
        assert_eq!(evicted.num_markers(), 1);
        assert!(isomorphic_without_markers_check(&evicted, &b));
    }

    fn isomorphic_without_markers_check(a: &Diagram, b: &Diagram) -> bool {
        crate::diagram::isomorphic_without_markers(a, b)
    }

    #[test]
    fn loop_delete_round_trip() {
        let b = borromean();
        let c = apply(
            &b,
            &MoveSite::LoopInsert {
                color: 2,
                at: Some(End::new(3, 1)),
                reversed: true,
            },
        )
        .unwrap();
        let sites = find_sites(&c, &[SiteKind::LoopDelete]);
        assert_eq!(sites.len(), 1);
        assert!(isomorphic(&apply(&c, &sites[0]).unwrap(), &b));
    }

    #[test]
    fn random_moves_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        for _ in 0..40 {
            let d = super::random_diagram(&mut rng, &al, 6);
            assert!(d.num_crossings() <= 6);
            d.validate().unwrap();
            for kind in SiteKind::ALL {
                let sites = find_sites(&d, &[kind]);
                for s in sites.iter().take(6) {
                    match apply(&d, s) {
                        Ok(x) => x.validate().unwrap(),
                        Err(MoveError::Precondition(_)) => {}
                        Err(e) => panic!("{s:?}: {e}\n{}", crate::diagram::serialize(&d)),
                    }
                }
            }
        }
    }

    #[test]
    fn script_round_trip() {
        let b = borromean();
        for s in find_sites(
            &b,
            &[
                SiteKind::H1Plus,
                SiteKind::H2Plus,
                SiteKind::Bridge,
                SiteKind::LoopInsert,
            ],
        )
        .iter()
        .step_by(7)
        {
            let text = format_site(&b, s);
            assert_eq!(&parse_site(&b, &text).unwrap(), s, "{text}");
        }
        let c = apply_script(&b, "h1+ E1 left; loop+ b at X1.0").unwrap();
        assert_eq!((c.num_crossings(), c.num_markers()), (7, 1));
        assert!(apply_script(&b, "h1- F(X1.0)").is_err());
        assert!(apply_script(&b, "twist E1").is_err());
    }
}
