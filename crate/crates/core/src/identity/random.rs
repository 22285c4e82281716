use rand::seq::SliceRandom;
use rand::Rng;

use super::{CommutatorTerm, ElementaryIdentity, MoveDescriptor};
use crate::freegroup::{Alphabet, Gen, Letter, Word};

/// A freely reduced word of length at most `max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> Word {
    let letters: Vec<Letter> = alphabet.letters().collect();
    let mut w = Word::empty();
    for _ in 0..rng.gen_range(0..=max_len) {
        let l = *letters.choose(rng).expect("nonempty alphabet");
        if w.0.last() != Some(&l.inv()) {
            w.push(l);
        }
    }
    w
}

/// A random move among (I)–(V), plus (VI)/(VII) when `weak`. Deletions are
/// only offered where they apply.
pub fn random_move<R: Rng + ?Sized>(
    rng: &mut R,
    id: &ElementaryIdentity,
    weak: bool,
) -> MoveDescriptor {
    let m = id.len();
    let al = id.alphabet();
    let gen = |rng: &mut R| rng.gen_range(0..al.len() as Gen);
    loop {
        let mv = match rng.gen_range(0..if weak { 9 } else { 5 }) {
            0 if m > 1 => MoveDescriptor::Rho,
            1 | 2 if m > 1 => MoveDescriptor::Sigma {
                j: rng.gen_range(1..m),
                sign: if rng.gen() { 1 } else { -1 },
            },
            3 => MoveDescriptor::Conj(random_word(rng, al, 2)),
            4 if m > 0 => MoveDescriptor::LocalII {
                i: rng.gen_range(1..=m),
                sign: if rng.gen() { 1 } else { -1 },
            },
            5 => MoveDescriptor::InsertTrivial {
                pos: rng.gen_range(0..=m),
                a: gen(rng),
                u: random_word(rng, al, 2),
            },
            6 => {
                let (a, b) = (gen(rng), gen(rng));
                MoveDescriptor::InsertCancelling {
                    pos: rng.gen_range(0..=m),
                    a,
                    b,
                    u: random_word(rng, al, 2),
                }
            }
            7 => match id.terms().iter().position(CommutatorTerm::is_trivial) {
                Some(i) => MoveDescriptor::DeleteTrivial { i: i + 1 },
                None => continue,
            },
            8 => {
                let ts = id.terms();
                match (0..m.saturating_sub(1))
                    .find(|&i| super::is_cancelling_pair(&ts[i], &ts[i + 1]))
                {
                    Some(i) => MoveDescriptor::DeleteCancelling { i: i + 1 },
                    None => continue,
                }
            }
            _ => continue,
        };
        return mv;
    }
}

/// A random valid elementary identity with roughly `max_terms` terms or
/// fewer: copies of the six-term identity of three distinct generators and
/// cancelling pairs, shuffled by Hurwitz moves and conjugations.
pub fn random_identity<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_terms: usize,
) -> ElementaryIdentity {
    let n = alphabet.len() as Gen;
    let mut terms: Vec<CommutatorTerm> = Vec::new();
    while terms.len() + 2 <= max_terms {
        let u = random_word(rng, alphabet, 2);
        if n >= 3 && terms.len() + 6 <= max_terms && rng.gen_bool(0.5) {
            let mut g: Vec<Gen> = (0..n).collect();
            g.shuffle(rng);
            let (a, b, c) = (g[0], g[1], g[2]);
            let w = |x: Gen| Word::gen(x).concat(&u);
            terms.extend([
                CommutatorTerm::new(a, c, u.clone()),
                CommutatorTerm::new(a, b, w(c)),
                CommutatorTerm::new(c, b, u.clone()),
                CommutatorTerm::new(c, a, w(b)),
                CommutatorTerm::new(b, a, u.clone()),
                CommutatorTerm::new(b, c, w(a)),
            ]);
        } else {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            terms.push(CommutatorTerm::new(a, b, u.clone()));
            terms.push(CommutatorTerm::new(b, a, u));
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let mut id = ElementaryIdentity::new(alphabet.clone(), terms);
    for _ in 0..rng.gen_range(0..=2 * max_terms) {
        let mv = random_move(rng, &id, false);
        id = id
            .apply_move(&mv)
            .expect("random move applies")
            .normalize_local();
    }
    debug_assert!(id.verify());
    id
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn generated_identities_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for al in [
            Alphabet::new(["a", "b"]).unwrap(),
            Alphabet::new(["a", "b", "c", "d"]).unwrap(),
        ] {
            for _ in 0..50 {
                let id = random_identity(&mut rng, &al, 12);
                assert!(id.verify());
                let mv = random_move(&mut rng, &id, true);
                assert!(id.apply_move(&mv).unwrap().verify(), "{mv:?}");
            }
        }
    }
}
