use super::{CommutatorTerm, IdentityError};
use crate::freegroup::{Letter, Word};

/// `(g, h)^q` rewritten with positive generators in the bracket.
fn normalized(g: Letter, h: Letter, q: &Word) -> CommutatorTerm {
    let (x, y) = (g.gen, h.gen);
    let (a, b, pre) = match (g.inverse, h.inverse) {
        (false, false) => (x, y, Word::empty()),
        (true, false) => (y, x, Word::letter(Letter::neg(x))),
        (false, true) => (y, x, Word::letter(Letter::neg(y))),
        (true, true) => (x, y, Word(vec![Letter::neg(y), Letter::neg(x)])),
    };
    CommutatorTerm::new(a, b, pre.concat(q).reduced())
}

/// Writes a word of the commutator subgroup as a product of conjugated
/// generator commutators.
///
/// Letters are bubble-sorted by generator. Each transposition
/// `P g h Q = P h g Q (g,h)^Q` peels a term off the right, so terms come out
/// in reverse order; the sorted word then cancels freely.
pub fn commutator_factorization(w: &Word) -> Result<Vec<CommutatorTerm>, IdentityError> {
    if !w.in_commutator_subgroup() {
        return Err(IdentityError::NonzeroExponentSum);
    }
    let mut letters = w.reduced().0;
    let mut out = Vec::new();
    let n = letters.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(pass + 1) {
            let (g, h) = (letters[i], letters[i + 1]);
            if g.gen > h.gen {
                let q = Word(letters[i + 2..].to_vec());
                out.push(normalized(g, h, &q));
                letters.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    debug_assert!(Word(letters).is_trivial());
    out.reverse();
    Ok(out)
}
