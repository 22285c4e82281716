use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{apply_with, find_sites, MoveError, MoveSite, SiteKind};
use crate::diagram::{isomorphic_without_markers, Corner, Diagram, End};
use crate::freegroup::Gen;
use crate::identity::{bounded_equiv_with, MoveDescriptor, Relation, SearchConfig};
use crate::noose::extract;
use crate::verdict::SearchVerdict;

/// Removes monogons and bigons in a seeded random order until none is
/// left, or until `max_steps` moves were made. Loops inside a removed face
/// move out into the surrounding region.
pub fn reduce_with_path(
    d: &Diagram,
    seed: u64,
    max_steps: usize,
) -> (Diagram, Vec<MoveSite>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut path = Vec::new();
    loop {
        let sites = find_sites(&cur, &SiteKind::REDUCING);
        let Some(site) = sites.choose(&mut rng) else {
            return (cur, path, true);
        };
        if path.len() == max_steps {
            return (cur, path, false);
        }
        cur = apply_with(&cur, site, true)
            .unwrap_or_else(|e| panic!("{site:?}: {e}\n{}", crate::diagram::serialize(&cur)));
        path.push(site.clone());
    }
}

/// A minimal diagram equivalent to `d`.
pub fn reduce_to_minimal(d: &Diagram, seed: u64) -> Diagram {
    reduce_with_path(d, seed, usize::MAX).0
}

fn marker_colors(d: &Diagram) -> Vec<Gen> {
    let mut out: Vec<Gen> = d.markers().map(|m| d.edge(d.port(m, 0).0).color).collect();
    out.sort();
    out
}

/// Decides doodle equivalence by comparing minimal forms. The budget bounds
/// the number of reducing moves on each side. A yes carries the moves that
/// reduce `d1` to a minimal form matching that of `d2`.
pub fn bounded_doodle_equiv(
    d1: &Diagram,
    d2: &Diagram,
    budget: usize,
) -> Result<SearchVerdict<MoveSite>, MoveError> {
    if d1.alphabet() != d2.alphabet() {
        return Err(MoveError::Precondition(
            "diagrams use different alphabets".into(),
        ));
    }
    let (m1, path, done1) = reduce_with_path(d1, 0, budget);
    let (m2, p2, done2) = reduce_with_path(d2, 0, budget);
    if !done1 || !done2 {
        return Ok(SearchVerdict::Unknown {
            spent: path.len() + p2.len(),
        });
    }
    if marker_colors(&m1) != marker_colors(&m2) {
        return Ok(SearchVerdict::No(
            "trivial components differ in color".into(),
        ));
    }
    if !isomorphic_without_markers(&m1, &m2) {
        return Ok(SearchVerdict::No(format!(
            "minimal forms differ ({} vs {} crossings{})",
            m1.num_crossings(),
            m2.num_crossings(),
            if m1.num_crossings() == m2.num_crossings() {
                ", not isomorphic"
            } else {
                ""
            }
        )));
    }
    Ok(SearchVerdict::Yes(path))
}

/// Cobordism through the identities read at the outer region of each
/// diagram, decided by weak equivalence.
pub fn cobordant(
    d1: &Diagram,
    d2: &Diagram,
    budget: usize,
) -> Result<SearchVerdict<MoveDescriptor>, MoveError> {
    let base = End::new(0, 0);
    cobordant_with(
        d1,
        base,
        d2,
        base,
        &SearchConfig {
            budget,
            ..SearchConfig::default()
        },
    )
}

pub fn cobordant_with(
    d1: &Diagram,
    base1: Corner,
    d2: &Diagram,
    base2: Corner,
    cfg: &SearchConfig,
) -> Result<SearchVerdict<MoveDescriptor>, MoveError> {
    if d1.alphabet() != d2.alphabet() {
        return Err(MoveError::Precondition(
            "diagrams use different alphabets".into(),
        ));
    }
    let id1 = extract(d1, base1)?;
    let id2 = extract(d2, base2)?;
    Ok(bounded_equiv_with(&id1, &id2, Relation::Weak, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{borromean, isomorphic, poppy};
    use crate::moves::apply;

    #[test]
    fn minimal_fixtures_stay() {
        for d in [borromean(), poppy()] {
            assert!(find_sites(&d, &SiteKind::REDUCING).is_empty());
            assert!(isomorphic(&reduce_to_minimal(&d, 3), &d));
        }
    }

    #[test]
    fn curl_reduces_away() {
        let b = borromean();
        for left in [true, false] {
            let c = apply(&b, &MoveSite::H1Plus { edge: 4, left }).unwrap();
            assert_eq!(find_sites(&c, &SiteKind::REDUCING).len(), 1);
            assert!(isomorphic(&reduce_to_minimal(&c, 1), &b));
        }
    }

    #[test]
    fn equivalence_verdicts() {
        let b = borromean();
        let bb = apply(
            &b,
            &MoveSite::H2Plus {
                e1: 0,
                left1: true,
                e2: 3,
                left2: false,
            },
        )
        .or_else(|_| {
            apply(
                &b,
                &MoveSite::H2Plus {
                    e1: 0,
                    left1: true,
                    e2: 3,
                    left2: true,
                },
            )
        });
        if let Ok(bb) = bb {
            assert!(bounded_doodle_equiv(&b, &bb, 100).unwrap().is_yes());
        }
        let p = poppy();
        assert!(bounded_doodle_equiv(&p, &p, 100).unwrap().is_yes());
        assert!(bounded_doodle_equiv(&b, &b.swap_colors(1, 2), 100)
            .unwrap()
            .is_no());
    }

    #[test]
    fn cobordism_of_loops() {
        let b = borromean();
        let with_loop = apply(
            &b,
            &MoveSite::LoopInsert {
                color: 1,
                at: Some(End::new(0, 0)),
                reversed: false,
            },
        )
        .unwrap();
        assert!(cobordant(&b, &with_loop, 100).unwrap().is_yes());
        assert!(cobordant(&b, &b, 100).unwrap().is_yes());
    }
}

#[cfg(test)]
mod random_tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::diagram::Topology;
    use crate::freegroup::Alphabet;
    use crate::moves::random_diagram;

    #[test]
    fn confluence_and_extraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        for _ in 0..60 {
            let d = random_diagram(&mut rng, &al, 10);
            let t: Topology = d.topology();
            for f in t.faces.iter().take(4) {
                extract(&d, f[0])
                    .unwrap_or_else(|e| panic!("{e}\n{}", crate::diagram::serialize(&d)));
            }
            let m0 = reduce_to_minimal(&d, 0);
            assert!(find_sites(&m0, &SiteKind::REDUCING).is_empty());
            for seed in 1..5 {
                let m = reduce_to_minimal(&d, seed);
                assert!(
                    isomorphic_without_markers(&m, &m0),
                    "{}",
                    crate::diagram::serialize(&d)
                );
                assert_eq!(marker_colors(&m), marker_colors(&m0));
            }
        }
    }
}
