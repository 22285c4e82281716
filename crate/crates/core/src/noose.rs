//! Noose systems and the identity they read off a diagram.
//!
//! A noose's loop circles one crossing counterclockwise starting at its neck
//! corner; its rope runs from the base point to that corner. Reading the
//! loop gives `a^-1 b^-1 a b`, reading the rope gives `u^-1`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::diagram::{Corner, Diagram, Dir, EId, End, VId};
use crate::freegroup::{Gen, Letter, Word};
use crate::identity::{CommutatorTerm, ElementaryIdentity, IdentityError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NooseError {
    #[error("corner {0} of the head crossing does not read a commutator")]
    NotCommutatorCorner(String),
    #[error("rope step across E{0} does not continue the path")]
    BadRope(u32),
    #[error("noose system covers crossing {0} {1} times")]
    Coverage(String, usize),
    #[error("bad base region `{0}`")]
    BadBase(String),
    #[error("extracted identity does not verify: {0}")]
    Contract(#[from] IdentityError),
}

/// One crossing of a rope: the edge and whether the rope passes from the
/// edge's left side to its right side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RopeStep {
    pub edge: EId,
    pub from_left: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Noose {
    pub head: VId,
    pub corner: u8,
    pub rope: Vec<RopeStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NooseSystem {
    pub base: Corner,
    pub nooses: Vec<Noose>,
}

/// A noose of the construction, stored as the words it records and the
/// edge crossings behind each letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralNoose {
    pub loop_word: Word,
    pub rope_word: Word,
    pub loop_steps: Vec<RopeStep>,
    pub rope_steps: Vec<RopeStep>,
}

impl GeneralNoose {
    /// Whether the recorded words are what the crossings read in `d`.
    pub fn reads_in(&self, d: &Diagram) -> bool {
        let read = |steps: &[RopeStep]| {
            Word(
                steps
                    .iter()
                    .map(|s| intersection_letter(d, s.edge, s.from_left))
                    .collect(),
            )
        };
        read(&self.loop_steps) == self.loop_word && read(&self.rope_steps) == self.rope_word
    }

    /// `u^-1 w u` for rope word `u^-1` and loop word `w`.
    pub fn value(&self) -> Word {
        self.rope_word
            .concat(&self.loop_word)
            .concat(&self.rope_word.inverse())
    }
}

/// `+1` when crossing from the edge's right side to its left side.
pub fn intersection_letter(d: &Diagram, edge: EId, from_left: bool) -> Letter {
    Letter::new(d.edge(edge).color, if from_left { -1 } else { 1 })
}

/// Letter read when circling `v` counterclockwise across port `p`.
fn around_letter(d: &Diagram, v: VId, p: u8) -> Letter {
    let (e, dir) = d.port(v, p);
    Letter::new(d.edge(e).color, if dir == Dir::Out { 1 } else { -1 })
}

/// The unique corner of a crossing where the loop reads `a^-1 b^-1 a b`:
/// ports `k+1` and `k+2` both incoming.
pub fn commutator_corner(d: &Diagram, v: VId) -> u8 {
    (0..4)
        .find(|&k| d.port(v, (k + 1) % 4).1 == Dir::In && d.port(v, (k + 2) % 4).1 == Dir::In)
        .expect("valid crossing has adjacent incoming ports")
}

/// `(a, b)` of the loop around the head, starting at the neck corner.
pub fn loop_word(d: &Diagram, n: &Noose) -> Result<(Gen, Gen), NooseError> {
    if !d.is_crossing(n.head) || n.corner > 3 {
        return Err(NooseError::NotCommutatorCorner(
            d.corner_name(End::new(n.head, n.corner)),
        ));
    }
    let ls: Vec<Letter> = (1..=4)
        .map(|i| around_letter(d, n.head, (n.corner + i) % 4))
        .collect();
    if ls[0].inverse
        && ls[1].inverse
        && !ls[2].inverse
        && !ls[3].inverse
        && ls[0].gen == ls[2].gen
        && ls[1].gen == ls[3].gen
    {
        Ok((ls[0].gen, ls[1].gen))
    } else {
        Err(NooseError::NotCommutatorCorner(
            d.corner_name(End::new(n.head, n.corner)),
        ))
    }
}

pub fn rope_word(d: &Diagram, n: &Noose) -> Result<Word, NooseError> {
    let t = d.topology();
    let mut here = None;
    let mut w = Word::empty();
    for s in &n.rope {
        let e = d.edge(s.edge);
        let (from, to) = if s.from_left {
            (e.tail, e.head)
        } else {
            (e.head, e.tail)
        };
        if let Some(r) = here {
            if t.region(from) != r {
                return Err(NooseError::BadRope(e.id));
            }
        }
        here = Some(t.region(to));
        w.push(intersection_letter(d, s.edge, s.from_left));
    }
    if let Some(r) = here {
        if r != t.region(End::new(n.head, n.corner)) {
            return Err(NooseError::BadRope(d.edge(n.rope.last().unwrap().edge).id));
        }
    }
    Ok(w)
}

/// Parses `outer` or `F(X1.2)`.
pub fn parse_base(d: &Diagram, s: &str) -> Result<Corner, NooseError> {
    let s = s.trim();
    if s == "outer" {
        return Ok(End::new(0, 0));
    }
    let bad = || NooseError::BadBase(s.to_string());
    let inner = s
        .strip_prefix("F(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (v, p) = inner.split_once('.').ok_or_else(bad)?;
    let p: u8 = p.parse().map_err(|_| bad())?;
    let v = d
        .vertices()
        .iter()
        .position(|x| x.to_string() == v)
        .ok_or_else(bad)?;
    if p >= d.degree(v) {
        return Err(bad());
    }
    Ok(End::new(v, p))
}

/// Every region, as a list of its faces' corner walks. Corners of crossing
/// pieces that are commutator corners become noose items; edges whose far
/// side is a child region become subtree items.
enum Item {
    Neck(VId, u8),
    Child(EId, bool),
}

/// Builds a proper noose system: ropes follow a breadth-first spanning tree
/// of the region adjacency graph, and nooses are ordered by the tree's
/// counterclockwise contour around the base point.
pub fn auto_noose_system(d: &Diagram, base: Corner) -> Result<NooseSystem, NooseError> {
    let mut ns = NooseSystem {
        base,
        nooses: Vec::new(),
    };
    if d.num_crossings() == 0 {
        return Ok(ns);
    }
    let t = d.topology();
    let region_faces = t.region_faces();
    // Breadth-first tree over regions; children are discovered in walk order.
    let base_region = t.region(base);
    let mut parent_edge: Vec<Option<(EId, bool)>> = vec![None; t.num_regions];
    let mut seen = vec![false; t.num_regions];
    seen[base_region] = true;
    let mut queue = VecDeque::from([base_region]);
    let walk_of = |r: usize, entry: Option<(EId, bool)>| -> Vec<Corner> {
        // Entry face first (after the entry edge, or from the base corner),
        // then the remaining faces from their least corners.
        let (first_face, start) = match entry {
            None => (t.face(base), base),
            Some((e, from_left)) => {
                // Corner on the far side whose outgoing port carries `e`.
                // `far` leaves along `e` in the child's walk, so the walk
                // resumes at the corner after it.
                let far = if from_left {
                    d.edge(e).head
                } else {
                    d.edge(e).tail
                };
                (t.face(far), d.next_corner(far))
            }
        };
        let mut out = Vec::new();
        let w = &t.faces[first_face];
        let i = w.iter().position(|&c| c == start).unwrap();
        out.extend(w[i..].iter().chain(&w[..i]));
        for &f in &region_faces[r] {
            if f != first_face {
                out.extend(&t.faces[f]);
            }
        }
        out
    };
    // Edge leaving corner `c` along the walk and whether the walk's face is
    // on the edge's left.
    let walk_edge = |c: Corner| {
        let (e, dir) = d.port(c.v, c.port);
        (e, dir == Dir::Out)
    };
    let mut children: Vec<Vec<Item>> = (0..t.num_regions).map(|_| Vec::new()).collect();
    while let Some(r) = queue.pop_front() {
        for c in walk_of(r, parent_edge[r]) {
            let mut items = Vec::new();
            if d.is_crossing(c.v) && commutator_corner(d, c.v) == c.port {
                items.push(Item::Neck(c.v, c.port));
            }
            let (e, left) = walk_edge(c);
            let far = if left { d.edge(e).head } else { d.edge(e).tail };
            let g = t.region(far);
            if !seen[g] {
                seen[g] = true;
                parent_edge[g] = Some((e, left));
                queue.push_back(g);
                items.push(Item::Child(e, left));
            }
            children[r].extend(items);
        }
    }
    // Contour: depth-first through the items.
    fn contour(
        r: usize,
        rope: &mut Vec<RopeStep>,
        children: &[Vec<Item>],
        region_of: &dyn Fn(EId, bool) -> usize,
        out: &mut Vec<Noose>,
    ) {
        for item in &children[r] {
            match *item {
                Item::Neck(v, k) => out.push(Noose {
                    head: v,
                    corner: k,
                    rope: rope.clone(),
                }),
                Item::Child(e, left) => {
                    rope.push(RopeStep {
                        edge: e,
                        from_left: left,
                    });
                    contour(region_of(e, left), rope, children, region_of, out);
                    rope.pop();
                }
            }
        }
    }
    let region_of = |e: EId, left: bool| {
        let far = if left { d.edge(e).head } else { d.edge(e).tail };
        t.region(far)
    };
    contour(
        base_region,
        &mut Vec::new(),
        &children,
        &region_of,
        &mut ns.nooses,
    );
    identity_of(d, &ns)?;
    Ok(ns)
}

pub fn identity_of(d: &Diagram, ns: &NooseSystem) -> Result<ElementaryIdentity, NooseError> {
    let mut count = vec![0usize; d.vertices().len()];
    let mut terms = Vec::with_capacity(ns.nooses.len());
    for n in &ns.nooses {
        count[n.head] += 1;
        let (a, b) = loop_word(d, n)?;
        let u = rope_word(d, n)?.inverse();
        terms.push(CommutatorTerm::new(a, b, u));
    }
    for v in d.crossings() {
        if count[v] != 1 {
            return Err(NooseError::Coverage(d.vertex(v).to_string(), count[v]));
        }
    }
    Ok(ElementaryIdentity::checked(d.alphabet().clone(), terms)?)
}

/// Identity of the automatic noose system at `base`.
pub fn extract(d: &Diagram, base: Corner) -> Result<ElementaryIdentity, NooseError> {
    identity_of(d, &auto_noose_system(d, base)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{borromean, poppy};
    use crate::identity::parse_elementary;

    #[test]
    fn letters() {
        let b = borromean();
        let l = intersection_letter(&b, 0, false);
        assert_eq!(l.sign(), 1);
        assert_eq!(intersection_letter(&b, 0, true), l.inv());
    }

    #[test]
    fn commutator_corners_are_unique() {
        let b = borromean();
        for v in b.crossings() {
            let k = commutator_corner(&b, v);
            let ok = (0..4)
                .filter(|&c| {
                    loop_word(
                        &b,
                        &Noose {
                            head: v,
                            corner: c,
                            rope: vec![],
                        },
                    )
                    .is_ok()
                })
                .count();
            assert_eq!(ok, 1);
            assert!(loop_word(
                &b,
                &Noose {
                    head: v,
                    corner: k,
                    rope: vec![]
                }
            )
            .is_ok());
        }
    }

    #[test]
    fn every_base_verifies_on_fixtures() {
        for d in [borromean(), poppy()] {
            for v in 0..d.vertices().len() {
                for k in 0..4 {
                    let id = extract(&d, End::new(v, k)).unwrap();
                    assert_eq!(id.len(), d.num_crossings());
                }
            }
        }
    }

    #[test]
    fn borromean_gives_the_six_term_identity() {
        let b = borromean();
        let ex = parse_elementary(
            "(a,c)^[b] (b,c) (b,a)^[c] (c,a) (c,b)^[a] (a,b)",
            b.alphabet(),
        )
        .unwrap();
        let mut id = extract(&b, End::new(0, 0)).unwrap();
        // The outer base reads a cyclic rotation of the six-term identity.
        let mut hits = 0;
        for _ in 0..6 {
            hits += (id.strict_normal_form() == ex) as usize;
            id = id
                .apply_move(&crate::identity::MoveDescriptor::Rho)
                .unwrap();
        }
        assert_eq!(hits, 1, "{}", crate::identity::format_identity(&id));
    }

    #[test]
    fn order_matters() {
        let b = borromean();
        let mut ns = auto_noose_system(&b, End::new(0, 0)).unwrap();
        ns.nooses.reverse();
        assert!(matches!(identity_of(&b, &ns), Err(NooseError::Contract(_))));
        ns.nooses.pop();
        assert!(matches!(
            identity_of(&b, &ns),
            Err(NooseError::Coverage(..))
        ));
    }

    #[test]
    fn poppy_loops_are_monochrome() {
        let p = poppy();
        let id = extract(&p, End::new(0, 0)).unwrap();
        assert!(id.terms().iter().all(|t| t.a == 0 && t.b == 0));
        assert!(
            extract(&Diagram::empty(p.alphabet().clone()), End::new(0, 0))
                .unwrap()
                .is_empty()
        );
    }
}
