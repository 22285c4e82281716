//! Diagrams realizing commutator identities.
//!
//! A disk `A` around the base point holds one head per term, joined to the
//! base by a band along its rope. Heads carry a grid of crossings reading
//! `(s, t)`; raw terms get an annulus around a nested disk realizing a
//! factorization. Strands crossing a rope band run straight across it, and
//! the letters left on the boundary of `A` are closed up outside by
//! non-crossing chords.

mod map;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, End};
use crate::freegroup::{Alphabet, Letter, Word};
use crate::identity::{
    commutator_factorization, ElementaryIdentity, GeneralIdentity, GeneralTerm, IdentityError,
};
use crate::noose::{GeneralNoose, Noose, NooseError, NooseSystem};
use map::{Flat, MapBuilder, RingItem, BWD, FWD, IN, OUT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("the word does not reduce to the empty word")]
    NotTrivial,
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Noose(#[from] NooseError),
}

/// Stack matching: pairs `(i, j)` of cancelling positions in the order they
/// close, and the unmatched positions (spelling the free reduction).
fn stack_match(letters: &[Letter]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for (j, &l) in letters.iter().enumerate() {
        match stack.last() {
            Some(&i) if letters[i] == l.inv() => {
                stack.pop();
                pairs.push((i, j));
            }
            _ => stack.push(j),
        }
    }
    (pairs, stack)
}

/// Non-crossing chords closing a boundary word that reduces to 1.
pub fn realize_boundary_word(w: &Word) -> Result<Vec<(usize, usize)>, ConstructError> {
    let (pairs, rest) = stack_match(w.letters());
    if rest.is_empty() {
        Ok(pairs)
    } else {
        Err(ConstructError::NotTrivial)
    }
}

enum Head {
    Grid { s: Word, t: Word },
    Raw(Word),
}

struct Plan {
    head: Head,
    /// Read from the base to the neck.
    rope: Word,
}

struct Rec {
    rope: Vec<usize>,
    loop_points: Vec<usize>,
    /// Bottom-left crossing of a grid head.
    corner_crossing: Option<usize>,
}

/// Ring items and noose records for the terms of one disk.
fn disk(b: &mut MapBuilder, plans: &[Plan]) -> Result<(Vec<RingItem>, Vec<Rec>), ConstructError> {
    let mut items = Vec::new();
    let mut recs = Vec::new();
    let pt = |v: usize| (v, FWD, BWD);
    for plan in plans {
        let rope: Vec<usize> = plan.rope.letters().iter().map(|&l| b.point(l)).collect();
        items.extend(rope.iter().map(|&v| pt(v)));
        let mut rec = Rec {
            rope: rope.clone(),
            loop_points: Vec::new(),
            corner_crossing: None,
        };
        match &plan.head {
            Head::Grid { s, t } => {
                let (s, t) = (s.letters(), t.letters());
                let (p, q) = (s.len(), t.len());
                // Counterclockwise from the bottom-left neck: s^-1 along the
                // bottom, t^-1 up the right side, s back along the top, t down
                // the left side.
                let bottom: Vec<usize> = (1..=p).map(|c| b.point(s[p - c].inv())).collect();
                let right: Vec<usize> = (1..=q).map(|r| b.point(t[q - r].inv())).collect();
                let top: Vec<usize> = (1..=p).map(|k| b.point(s[k - 1])).collect();
                let left: Vec<usize> = (1..=q).map(|k| b.point(t[k - 1])).collect();
                let x: Vec<Vec<usize>> = (0..p)
                    .map(|_| (0..q).map(|_| b.crossing()).collect())
                    .collect();
                for c in 0..p {
                    let mut chain = vec![End::new(bottom[c], IN)];
                    for r in 0..q {
                        chain.extend([End::new(x[c][r], 3), End::new(x[c][r], 1)]);
                    }
                    chain.push(End::new(top[p - 1 - c], IN));
                    b.line(&chain, s[p - 1 - c].gen);
                }
                for r in 0..q {
                    let mut chain = vec![End::new(right[r], IN)];
                    for c in (0..p).rev() {
                        chain.extend([End::new(x[c][r], 0), End::new(x[c][r], 2)]);
                    }
                    chain.push(End::new(left[q - 1 - r], IN));
                    b.line(&chain, t[q - 1 - r].gen);
                }
                rec.corner_crossing = (p > 0 && q > 0).then(|| x[0][0]);
                rec.loop_points = [bottom, right, top, left].concat();
                items.extend(rec.loop_points.iter().map(|&v| pt(v)));
            }
            Head::Raw(w) => {
                let neck = b.ghost(3);
                items.push((neck, 0, 2));
                rec.loop_points = w.letters().iter().map(|&l| b.point(l)).collect();
                items.extend(rec.loop_points.iter().map(|&v| pt(v)));
                // Nested disk realizing a factorization of w, tied to the
                // neck.
                let inner_plans: Vec<Plan> = commutator_factorization(w)?
                    .into_iter()
                    .map(|c| Plan {
                        head: Head::Grid {
                            s: Word::gen(c.a),
                            t: Word::gen(c.b),
                        },
                        rope: c.u.inverse(),
                    })
                    .collect();
                let anchor = b.ghost(3);
                let (inner, _) = disk(b, &inner_plans)?;
                let mut ring = vec![(anchor, 0, 1)];
                ring.extend(&inner);
                b.ring(&ring);
                b.ghost_edge(End::new(neck, 1), End::new(anchor, 2));
                // Annulus: cups on the inner ring, caps under the loop, and
                // radial arcs between the two reduced residues.
                let inner_pts: Vec<usize> = inner
                    .iter()
                    .map(|i| i.0)
                    .filter(|&v| b.is_point(v))
                    .collect();
                let inner_letters: Vec<Letter> = inner_pts.iter().map(|&v| b.letter(v)).collect();
                let (cups, in_rest) = stack_match(&inner_letters);
                for (i, j) in cups {
                    b.join(End::new(inner_pts[i], OUT), End::new(inner_pts[j], OUT));
                }
                let (caps, out_rest) = stack_match(w.letters());
                for (i, j) in caps {
                    b.join(
                        End::new(rec.loop_points[i], IN),
                        End::new(rec.loop_points[j], IN),
                    );
                }
                debug_assert_eq!(in_rest.len(), out_rest.len());
                for (&i, &j) in in_rest.iter().zip(&out_rest) {
                    b.join(
                        End::new(inner_pts[i], OUT),
                        End::new(rec.loop_points[j], IN),
                    );
                }
            }
        }
        let back: Vec<usize> = plan
            .rope
            .letters()
            .iter()
            .rev()
            .map(|&l| b.point(l.inv()))
            .collect();
        items.extend(back.iter().map(|&v| pt(v)));
        for (&o, &r) in rope.iter().zip(back.iter().rev()) {
            b.join(End::new(o, IN), End::new(r, IN));
        }
        recs.push(rec);
    }
    Ok((items, recs))
}

/// Builds the whole picture; returns the flattened map, the records and the
/// base anchor.
fn build(alphabet: &Alphabet, plans: &[Plan]) -> Result<(Flat, Vec<Rec>, usize), ConstructError> {
    let mut b = MapBuilder::new(alphabet.clone());
    let anchor = b.ghost(2);
    let (items, recs) = disk(&mut b, plans)?;
    let mut ring = vec![(anchor, 0, 1)];
    ring.extend(&items);
    b.ring(&ring);
    let pts: Vec<usize> = items
        .iter()
        .map(|i| i.0)
        .filter(|&v| b.is_point(v))
        .collect();
    let word = Word(pts.iter().map(|&v| b.letter(v)).collect());
    for (i, j) in realize_boundary_word(&word)? {
        b.join(End::new(pts[i], OUT), End::new(pts[j], OUT));
    }
    let flat = b.flatten()?;
    Ok((flat, recs, anchor))
}

fn general_nooses(flat: &Flat, plans: &[Plan], recs: &[Rec]) -> Vec<GeneralNoose> {
    plans
        .iter()
        .zip(recs)
        .map(|(plan, rec)| {
            let loop_word = match &plan.head {
                Head::Grid { s, t } => s.commutator(t),
                Head::Raw(w) => w.clone(),
            };
            GeneralNoose {
                loop_word,
                rope_word: plan.rope.clone(),
                loop_steps: rec.loop_points.iter().map(|&p| flat.step(p)).collect(),
                rope_steps: rec.rope.iter().map(|&p| flat.step(p)).collect(),
            }
        })
        .collect()
}

/// A diagram with one crossing per term and the noose system reading `id`.
pub fn realize_elementary(
    id: &ElementaryIdentity,
) -> Result<(Diagram, NooseSystem), ConstructError> {
    if !id.verify() {
        return Err(IdentityError::NotTrivial.into());
    }
    let plans: Vec<Plan> = id
        .terms()
        .iter()
        .map(|c| Plan {
            head: Head::Grid {
                s: Word::gen(c.a),
                t: Word::gen(c.b),
            },
            rope: c.u.inverse(),
        })
        .collect();
    let (flat, recs, anchor) = build(id.alphabet(), &plans)?;
    let nooses = recs
        .iter()
        .map(|rec| Noose {
            head: flat.crossing(rec.corner_crossing.expect("one crossing per head")),
            // Between the west and south ports.
            corner: 2,
            rope: rec.rope.iter().map(|&p| flat.step(p)).collect(),
        })
        .collect();
    let base = flat.corner_in_region_of(anchor, 0);
    Ok((flat.diagram, NooseSystem { base, nooses }))
}

/// Heads with `|s| x |t|` grids of crossings for terms `(s, t)^u`.
pub fn realize_lemma31(
    alphabet: &Alphabet,
    terms: &[(Word, Word, Word)],
) -> Result<(Diagram, Vec<GeneralNoose>), ConstructError> {
    let id = GeneralIdentity::new(
        alphabet.clone(),
        terms
            .iter()
            .map(|(s, t, u)| GeneralTerm::Pair {
                s: s.clone(),
                t: t.clone(),
                u: u.clone(),
            })
            .collect(),
    );
    realize_general(&id)
}

/// Realizes any identity; raw terms are read literally by their loops.
pub fn realize_general(
    id: &GeneralIdentity,
) -> Result<(Diagram, Vec<GeneralNoose>), ConstructError> {
    id.check_raw()?;
    if !id.verify() {
        return Err(IdentityError::NotTrivial.into());
    }
    let plans: Vec<Plan> = id
        .terms()
        .iter()
        .map(|t| match t {
            GeneralTerm::Elementary(c) => Plan {
                head: Head::Grid {
                    s: Word::gen(c.a),
                    t: Word::gen(c.b),
                },
                rope: c.u.inverse(),
            },
            GeneralTerm::Pair { s, t, u } => Plan {
                head: Head::Grid {
                    s: s.clone(),
                    t: t.clone(),
                },
                rope: u.inverse(),
            },
            GeneralTerm::Raw(w) => Plan {
                head: Head::Raw(w.clone()),
                rope: Word::empty(),
            },
        })
        .collect();
    let (flat, recs, _) = build(id.alphabet(), &plans)?;
    let nooses = general_nooses(&flat, &plans, &recs);
    Ok((flat.diagram, nooses))
}

/// The Hall-Witt identity `((a,b),c^a) ((c,a),b^c) ((b,c),a^b)` as pairs.
pub fn hall_witt_terms(alphabet: &Alphabet) -> Vec<(Word, Word, Word)> {
    let g = |n: &str| Word::gen(alphabet.index(n).expect("alphabet has a, b, c"));
    let (a, b, c) = (g("a"), g("b"), g("c"));
    vec![
        (a.commutator(&b), c.conjugate(&a), Word::empty()),
        (c.commutator(&a), b.conjugate(&c), Word::empty()),
        (b.commutator(&c), a.conjugate(&b), Word::empty()),
    ]
}

/// The 36-crossing diagram built from the Hall-Witt identity.
pub fn hall_witt36() -> Diagram {
    let al = Alphabet::new(["a", "b", "c"]).unwrap();
    realize_lemma31(&al, &hall_witt_terms(&al))
        .expect("Hall-Witt identity holds")
        .0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{parse_elementary, parse_general};
    use crate::noose::{commutator_corner, identity_of};

    #[test]
    fn stack_matching() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let w = |s| crate::freegroup::parse_word(s, &al).unwrap();
        assert_eq!(realize_boundary_word(&w("a a^-1")).unwrap(), vec![(0, 1)]);
        assert_eq!(
            realize_boundary_word(&w("a b b^-1 a^-1")).unwrap(),
            vec![(1, 2), (0, 3)]
        );
        assert_eq!(realize_boundary_word(&Word::empty()).unwrap(), vec![]);
        assert_eq!(
            realize_boundary_word(&w("a b")),
            Err(ConstructError::NotTrivial)
        );
    }

    fn round_trip(text: &str) -> Diagram {
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        let id = parse_elementary(text, &al).unwrap();
        let (d, ns) = realize_elementary(&id).unwrap();
        d.validate().unwrap();
        assert_eq!(d.num_crossings(), id.len());
        for n in &ns.nooses {
            assert_eq!(commutator_corner(&d, n.head), n.corner);
        }
        let back = identity_of(&d, &ns).unwrap();
        assert_eq!(back.strict_normal_form(), id.strict_normal_form(), "{text}");
        d
    }

    #[test]
    fn elementary_round_trips() {
        round_trip(
            "(a,b) (b,c) (c,a)^[b] == 1"
                .replace("(b,c) (c,a)^[b]", "(b,a)")
                .as_str(),
        );
        round_trip("(a,b) (a,c)^[b] (b,c) (b,a)^[c] (c,a) (c,b)^[a]");
        round_trip("(a,a)");
        round_trip("1");
        round_trip("(a,b)^[c a^-1] (b,a)^[c a^-1]");
    }

    #[test]
    fn hall_witt_grid() {
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        let (d, ns) = realize_lemma31(&al, &hall_witt_terms(&al)).unwrap();
        d.validate().unwrap();
        assert_eq!(d.num_crossings(), 36);
        assert!(ns.iter().all(|n| n.reads_in(&d)));
        assert_eq!(ns[0].loop_word.len(), 14);
    }

    #[test]
    fn raw_terms_read_literally() {
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        for text in [
            "{a^-1 b^-1 a b} {b^-1 a^-1 b a}",
            "{a a^-1 a^-1 b^-1 a b} {c c^-1} {b^-1 a^-1 b a}",
        ] {
            let id = parse_general(text, &al).unwrap();
            let (d, ns) = realize_general(&id).unwrap();
            d.validate().unwrap();
            for (n, t) in ns.iter().zip(id.terms()) {
                assert!(n.reads_in(&d));
                assert_eq!(n.loop_word, t.value());
                assert!(n.rope_word.is_empty());
            }
        }
    }
}
