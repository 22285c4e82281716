use rand::seq::SliceRandom;
use rand::Rng;

use super::{apply_checked, find_sites, SiteKind};
use crate::diagram::{braid_shadow, Diagram};
use crate::freegroup::{Alphabet, Gen};

/// A random diagram with at most `max_crossings` crossings: a few loops or
/// a random closed braid shadow, then random curls, finger moves and
/// bridges. Valid by construction.
pub fn random_diagram<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_crossings: usize,
) -> Diagram {
    let mut d = Diagram::empty(alphabet.clone());
    if max_crossings >= 4 && rng.gen_bool(0.6) {
        // Loops alone only ever reduce back to loops; braid closures give
        // minimal diagrams with crossings.
        let strands = rng.gen_range(3..=4.min(max_crossings / 2 + 1).max(3));
        let len = 2 * rng.gen_range(strands - 1..=(max_crossings.min(10) / 2).max(strands - 1));
        // Every generator appears, so the closure is connected; no letter
        // repeats cyclically, which would close an obvious bigon.
        let word = loop {
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..strands - 1)).collect();
            let connected = (0..strands - 1).all(|i| w.contains(&i));
            if connected && (0..len).all(|k| w[k] != w[(k + 1) % len]) {
                break w;
            }
        };
        let colors: Vec<Gen> = (0..strands)
            .map(|_| rng.gen_range(0..alphabet.len() as Gen))
            .collect();
        d = braid_shadow(alphabet.clone(), strands, &word, &colors);
    }
    if d.is_empty() || rng.gen_bool(0.3) {
        for _ in 0..rng.gen_range(1..=3) {
            let sites = find_sites(&d, &[SiteKind::LoopInsert]);
            d = apply_checked(&d, sites.choose(rng).unwrap(), false).expect("loop insertion");
        }
    }
    let steps = rng.gen_range(0..=max_crossings.saturating_sub(d.num_crossings()) + 2);
    for _ in 0..steps {
        let kind = *[
            SiteKind::H1Plus,
            SiteKind::H2Plus,
            SiteKind::H2Plus,
            SiteKind::Bridge,
        ]
        .choose(rng)
        .unwrap();
        let added = match kind {
            SiteKind::H1Plus => 1,
            SiteKind::H2Plus => 2,
            _ => 0,
        };
        if d.num_crossings() + added > max_crossings {
            continue;
        }
        let sites = find_sites(&d, &[kind]);
        if let Some(site) = sites.choose(rng) {
            d = apply_checked(&d, site, false).unwrap_or_else(|e| panic!("{site:?} failed: {e}"));
        }
    }
    d
}

/// Every site of the given kinds, applied one at a time.
#[cfg(test)]
pub(crate) fn all_results(d: &Diagram, kinds: &[SiteKind]) -> Vec<(super::MoveSite, Diagram)> {
    find_sites(d, kinds)
        .into_iter()
        .map(|s| {
            let out = apply_checked(d, &s, false).unwrap_or_else(|e| panic!("{s:?} failed: {e}"));
            (s, out)
        })
        .collect()
}
