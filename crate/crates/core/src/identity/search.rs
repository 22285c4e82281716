//! Bounded decision procedures for strict, ordinary and weak equivalence.

use std::collections::{HashMap, VecDeque};

use super::{
    is_cancelling_pair, CommutatorTerm, ElementaryIdentity, IdentityError, MoveDescriptor,
};
use crate::freegroup::{Gen, Letter, Word};
use crate::verdict::SearchVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Moves (IV)–(V).
    Strict,
    /// Moves (I)–(V).
    Equiv,
    /// Moves (I)–(VII).
    Weak,
}

impl std::str::FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Relation::Strict),
            "equiv" => Ok(Relation::Equiv),
            "weak" => Ok(Relation::Weak),
            _ => Err(format!("unknown relation `{s}` (strict|equiv|weak)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of expanded nodes.
    pub budget: usize,
    /// Allow insertions of trivial terms and cancelling pairs with
    /// conjugators up to this length. `None` disables insertions; the
    /// backward half of the search supplies them implicitly.
    pub max_insert_len: Option<usize>,
    /// Include global conjugation by single letters among the moves.
    pub conjugation: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 10_000,
            max_insert_len: None,
            conjugation: true,
        }
    }
}

/// Applies `path` literally.
pub fn replay(
    id: &ElementaryIdentity,
    path: &[MoveDescriptor],
) -> Result<ElementaryIdentity, IdentityError> {
    id.apply_moves(path)
}

fn inverse_of(state: &ElementaryIdentity, mv: &MoveDescriptor) -> Vec<MoveDescriptor> {
    use MoveDescriptor::*;
    match mv {
        Rho => vec![Rho; state.len().saturating_sub(1)],
        Sigma { j, sign } => vec![Sigma { j: *j, sign: -sign }],
        Conj(u) => vec![Conj(u.inverse())],
        LocalII { i, sign } => vec![LocalII { i: *i, sign: -sign }],
        InsertTrivial { pos, .. } => vec![DeleteTrivial { i: pos + 1 }],
        DeleteTrivial { i } => {
            let t = &state.terms()[i - 1];
            vec![InsertTrivial {
                pos: i - 1,
                a: t.a,
                u: t.u.clone(),
            }]
        }
        InsertCancelling { pos, .. } => vec![DeleteCancelling { i: pos + 1 }],
        DeleteCancelling { i } => {
            let t = &state.terms()[i - 1];
            vec![InsertCancelling {
                pos: i - 1,
                a: t.a,
                b: t.b,
                u: t.u.clone(),
            }]
        }
    }
}

/// Moves undoing `path` from `start`: replaying `path` and then the result
/// returns to the strict class of `start`.
pub fn inverse_moves(
    start: &ElementaryIdentity,
    path: &[MoveDescriptor],
) -> Result<Vec<MoveDescriptor>, IdentityError> {
    let mut cur = start.clone();
    let mut chunks = Vec::with_capacity(path.len());
    for mv in path {
        chunks.push(inverse_of(&cur, mv));
        cur = cur.apply_move(mv)?;
    }
    Ok(chunks.into_iter().rev().flatten().collect())
}

fn step(id: &ElementaryIdentity, mv: &MoveDescriptor) -> Option<ElementaryIdentity> {
    id.apply_move(mv).ok().map(|x| x.strict_normal_form())
}

/// Greedy weak simplification: drops trivial terms and brings
/// inverse-class pairs together, deleting them when they cancel.
/// Returns the reduced identity (in strict normal form) and the moves used.
pub fn weak_reduce(id: &ElementaryIdentity) -> (ElementaryIdentity, Vec<MoveDescriptor>) {
    let mut cur = id.strict_normal_form();
    let mut path = Vec::new();
    'outer: loop {
        if let Some(i) = cur.terms().iter().position(CommutatorTerm::is_trivial) {
            let mv = MoveDescriptor::DeleteTrivial { i: i + 1 };
            cur = step(&cur, &mv).expect("trivial term deletes");
            path.push(mv);
            continue;
        }
        let vals: Vec<Word> = cur.terms().iter().map(|t| t.value().reduced()).collect();
        let keys: Vec<Word> = vals.iter().map(Word::conjugacy_key).collect();
        let inv_keys: Vec<Word> = vals.iter().map(|v| v.inverse().conjugacy_key()).collect();
        let m = vals.len();
        for i in 0..m {
            for j in i + 1..m {
                if keys[i] != inv_keys[j] {
                    continue;
                }
                let mut mid = Word::empty();
                for v in &vals[i + 1..j] {
                    mid = mid.concat(v);
                }
                let moved = mid.concat(&vals[j]).concat(&mid.inverse());
                if !vals[i].concat(&moved).is_trivial() {
                    continue;
                }
                // Slide term j leftwards until it sits right after term i.
                for k in (i + 1..j).rev() {
                    let mv = MoveDescriptor::Sigma { j: k + 1, sign: -1 };
                    cur = step(&cur, &mv).expect("sigma in range");
                    path.push(mv);
                }
                let mv = MoveDescriptor::DeleteCancelling { i: i + 1 };
                cur = step(&cur, &mv).expect("pair cancels");
                path.push(mv);
                continue 'outer;
            }
        }
        break;
    }
    (cur, path)
}

type Key = Vec<CommutatorTerm>;

struct Side {
    parent: HashMap<Key, Option<(Key, MoveDescriptor)>>,
    frontier: VecDeque<ElementaryIdentity>,
}

impl Side {
    fn new(root: &ElementaryIdentity) -> Self {
        let mut parent = HashMap::new();
        parent.insert(root.terms().to_vec(), None);
        Side {
            parent,
            frontier: VecDeque::from([root.clone()]),
        }
    }

    fn path_to(&self, key: &Key) -> Vec<MoveDescriptor> {
        let mut out = Vec::new();
        let mut k = key.clone();
        while let Some(Some((p, mv))) = self.parent.get(&k) {
            out.push(mv.clone());
            k = p.clone();
        }
        out.reverse();
        out
    }
}

fn neighbours(
    id: &ElementaryIdentity,
    relation: Relation,
    cfg: &SearchConfig,
) -> Vec<MoveDescriptor> {
    use MoveDescriptor::*;
    let m = id.len();
    let mut out = Vec::new();
    if m > 1 {
        out.push(Rho);
    }
    for j in 1..m {
        out.push(Sigma { j, sign: 1 });
        out.push(Sigma { j, sign: -1 });
    }
    if cfg.conjugation && m > 0 {
        out.extend(id.alphabet().letters().map(MoveDescriptor::conj_letter));
    }
    if relation == Relation::Weak {
        let ts = id.terms();
        for i in 0..m {
            if ts[i].is_trivial() {
                out.push(DeleteTrivial { i: i + 1 });
            }
            if i + 1 < m && is_cancelling_pair(&ts[i], &ts[i + 1]) {
                out.push(DeleteCancelling { i: i + 1 });
            }
        }
        if let Some(len) = cfg.max_insert_len {
            let words = words_up_to(id.alphabet().letters().collect(), len);
            let gens: Vec<Gen> = id.alphabet().gens().collect();
            for pos in 0..=m {
                for u in &words {
                    for &a in &gens {
                        out.push(InsertTrivial {
                            pos,
                            a,
                            u: u.clone(),
                        });
                        for &b in &gens {
                            if a != b {
                                out.push(InsertCancelling {
                                    pos,
                                    a,
                                    b,
                                    u: u.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn words_up_to(letters: Vec<Letter>, len: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.0.last() == Some(&l.inv()) {
                    continue;
                }
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Bidirectional breadth-first search between two strict-normal-form roots.
/// Returns the path from `a` to `b` (replayable modulo strict equality).
fn bfs(
    a: &ElementaryIdentity,
    b: &ElementaryIdentity,
    relation: Relation,
    cfg: &SearchConfig,
    spent: &mut usize,
) -> Result<Option<Vec<MoveDescriptor>>, IdentityError> {
    let mut sides = [Side::new(a), Side::new(b)];
    let meet = |key: &Key, sides: &[Side; 2]| -> Result<Vec<MoveDescriptor>, IdentityError> {
        let fwd = sides[0].path_to(key);
        let back = sides[1].path_to(key);
        let mut path = fwd;
        path.extend(inverse_moves(b, &back)?);
        Ok(path)
    };
    if a.terms() == b.terms() {
        return Ok(Some(Vec::new()));
    }
    while *spent < cfg.budget {
        // Expand the smaller nonempty frontier.
        let (n0, n1) = (sides[0].frontier.len(), sides[1].frontier.len());
        let s = usize::from(n0 == 0 || (n1 > 0 && n1 < n0));
        let Some(node) = sides[s].frontier.pop_front() else {
            // Both sides exhausted: the reachable sets are disjoint.
            return Ok(None);
        };
        *spent += 1;
        let key = node.terms().to_vec();
        for mv in neighbours(&node, relation, cfg) {
            let Some(next) = step(&node, &mv) else {
                continue;
            };
            let nk = next.terms().to_vec();
            if sides[s].parent.contains_key(&nk) {
                continue;
            }
            sides[s].parent.insert(nk.clone(), Some((key.clone(), mv)));
            if sides[1 - s].parent.contains_key(&nk) {
                return meet(&nk, &sides).map(Some);
            }
            sides[s].frontier.push_back(next);
        }
    }
    Ok(None)
}

/// Whether the chains of two identities agree after one common shift of
/// every exponent vector (the effect of a global conjugation).
pub fn chains_match(id1: &ElementaryIdentity, id2: &ElementaryIdentity) -> bool {
    let (c1, c2) = (id1.chain(), id2.chain());
    if c1.len() != c2.len() {
        return false;
    }
    let Some(((a, b, e1), n)) = c1.iter().next() else {
        return true;
    };
    c2.iter()
        .filter(|((x, y, _), m)| (x, y, *m) == (a, b, n))
        .any(|((_, _, e2), _)| {
            let shifted = c2.iter().map(|((x, y, e), m)| {
                (
                    (
                        *x,
                        *y,
                        e.iter()
                            .zip(e1)
                            .zip(e2)
                            .map(|((e, p), q)| e + p - q)
                            .collect(),
                    ),
                    *m,
                )
            });
            c1.iter()
                .map(|(k, v)| (k.clone(), *v))
                .eq(shifted.collect::<std::collections::BTreeMap<_, _>>())
        })
}

/// Decides `id1 ~ id2` within `budget` expanded nodes.
pub fn bounded_equiv(
    id1: &ElementaryIdentity,
    id2: &ElementaryIdentity,
    relation: Relation,
    budget: usize,
) -> Result<SearchVerdict<MoveDescriptor>, IdentityError> {
    bounded_equiv_with(
        id1,
        id2,
        relation,
        &SearchConfig {
            budget,
            ..SearchConfig::default()
        },
    )
}

pub fn bounded_equiv_with(
    id1: &ElementaryIdentity,
    id2: &ElementaryIdentity,
    relation: Relation,
    cfg: &SearchConfig,
) -> Result<SearchVerdict<MoveDescriptor>, IdentityError> {
    if id1.alphabet() != id2.alphabet() {
        return Err(IdentityError::AlphabetMismatch);
    }
    let (n1, n2) = (id1.strict_normal_form(), id2.strict_normal_form());
    if n1.terms() == n2.terms() {
        return Ok(SearchVerdict::Yes(Vec::new()));
    }
    let mut spent = 0;
    match relation {
        Relation::Strict => Ok(SearchVerdict::No("strict normal forms differ".into())),
        Relation::Equiv => {
            if id1.conjugacy_multiset() != id2.conjugacy_multiset() {
                return Ok(SearchVerdict::No("conjugacy multisets differ".into()));
            }
            if !chains_match(id1, id2) {
                return Ok(SearchVerdict::No(
                    "chains differ by more than a shift".into(),
                ));
            }
            Ok(match bfs(&n1, &n2, relation, cfg, &mut spent)? {
                Some(p) => SearchVerdict::Yes(p),
                // Exhausting the full move set separates the classes.
                None if spent < cfg.budget && cfg.conjugation => {
                    SearchVerdict::No("search space exhausted".into())
                }
                None => SearchVerdict::Unknown { spent },
            })
        }
        Relation::Weak => {
            if id1.weak_class_sum() != id2.weak_class_sum() {
                return Ok(SearchVerdict::No("weak class sums differ".into()));
            }
            if !chains_match(id1, id2) {
                return Ok(SearchVerdict::No(
                    "chains differ by more than a shift".into(),
                ));
            }
            let (r1, p1) = weak_reduce(&n1);
            let (r2, p2) = weak_reduce(&n2);
            let join = |mid: Vec<MoveDescriptor>| -> Result<Vec<MoveDescriptor>, IdentityError> {
                let mut path = p1.clone();
                path.extend(mid);
                path.extend(inverse_moves(&n2, &p2)?);
                Ok(path)
            };
            if r1.terms() == r2.terms() {
                return Ok(SearchVerdict::Yes(join(Vec::new())?));
            }
            // Bounded insertions leave the search incomplete even when the
            // frontier runs dry, so failure is never a No here.
            match bfs(&r1, &r2, relation, cfg, &mut spent)? {
                Some(mid) => Ok(SearchVerdict::Yes(join(mid)?)),
                None => Ok(SearchVerdict::Unknown { spent }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Alphabet;
    use crate::identity::{parse_elementary, parse_moves};

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn id(s: &str) -> ElementaryIdentity {
        parse_elementary(s, &abc()).unwrap()
    }

    const EX: &str = "(a,c)^[b] (b,c) (b,a)^[c] (c,a) (c,b)^[a] (a,b)";

    fn assert_replays(
        x: &ElementaryIdentity,
        y: &ElementaryIdentity,
        v: &SearchVerdict<MoveDescriptor>,
    ) {
        let SearchVerdict::Yes(p) = v else {
            panic!("expected yes, got {v}")
        };
        assert!(replay(x, p).unwrap().strictly_equal(y));
    }

    #[test]
    fn reflexive_for_every_relation() {
        let x = id(EX);
        for r in [Relation::Strict, Relation::Equiv, Relation::Weak] {
            assert_eq!(
                bounded_equiv(&x, &x, r, 10).unwrap(),
                SearchVerdict::Yes(vec![])
            );
        }
    }

    #[test]
    fn one_move_equivalences() {
        let x = id(EX);
        for script in ["sigma 1", "rho", "conj a", "sigma^-1 3; rho; conj b^-1"] {
            let y = x
                .apply_moves(&parse_moves(script, &abc()).unwrap())
                .unwrap();
            let v = bounded_equiv(&x, &y, Relation::Equiv, 10_000).unwrap();
            assert_replays(&x, &y, &v);
        }
        let y = x
            .apply_move(&MoveDescriptor::Sigma { j: 1, sign: 1 })
            .unwrap();
        assert!(bounded_equiv(&x, &y, Relation::Strict, 10).unwrap().is_no());
    }

    #[test]
    fn separations() {
        let e = ElementaryIdentity::empty(abc());
        assert!(bounded_equiv(&id("(a,b)"), &e, Relation::Weak, 100)
            .unwrap()
            .is_no());
        let v = bounded_equiv(&id(EX), &id("(a,b) (b,a)"), Relation::Equiv, 100).unwrap();
        assert!(v.is_no());
        assert!(bounded_equiv(
            &id("(a,b)"),
            &ElementaryIdentity::empty(Alphabet::new(["a", "b"]).unwrap()),
            Relation::Weak,
            10
        )
        .is_err());
    }

    #[test]
    fn weak_reduction_and_paths() {
        let x = id("(a,a)^[c] (a,b)^[c] (b,c) (c,b) (b,a)^[c]");
        let (r, p) = weak_reduce(&x);
        assert!(r.is_empty());
        assert!(replay(&x, &p).unwrap().is_empty());
        let e = ElementaryIdentity::empty(abc());
        let v = bounded_equiv(&x, &e, Relation::Weak, 100).unwrap();
        assert_replays(&x, &e, &v);
        let v = bounded_equiv(&e, &x, Relation::Weak, 100).unwrap();
        assert_replays(&e, &x, &v);
        // Six distinct classes in three inverse pairs that do not cancel greedily.
        assert_eq!(weak_reduce(&id(EX)).0.len(), 6);
    }

    #[test]
    fn inverse_paths_undo() {
        let x = id(EX);
        let p = parse_moves("sigma 2; rho; conj a c; local 1 1; ins-triv 3 b c; ins-cancel 0 a c b; del-cancel 1; del-triv 4", &abc()).unwrap();
        let y = replay(&x, &p).unwrap();
        let back = replay(&y, &inverse_moves(&x, &p).unwrap()).unwrap();
        assert!(back.strictly_equal(&x));
    }

    #[test]
    fn insertions_when_enabled() {
        let cfg = SearchConfig {
            budget: 50,
            max_insert_len: Some(0),
            conjugation: false,
        };
        let e = ElementaryIdentity::empty(abc());
        let x = id("(a,b) (b,a)");
        assert_replays(
            &e,
            &x,
            &bounded_equiv_with(&e, &x, Relation::Weak, &cfg).unwrap(),
        );
    }
}
