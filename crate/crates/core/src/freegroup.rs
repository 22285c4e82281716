//! Words in a free group over a finite, ordered alphabet.
//!
//! Words are kept unreduced unless [`Word::reduced`] is called: intersection
//! words read off a diagram are literal letter sequences and only their free
//! equivalence class matters to the group.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Index of a generator inside its [`Alphabet`].
pub type Gen = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid alphabet: {0}")]
    BadAlphabet(String),
}

/// Ordered, non-empty set of generator names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::BadAlphabet("empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_ident(n) {
                return Err(WordError::BadAlphabet(format!(
                    "`{n}` is not an identifier"
                )));
            }
            if names[..i].contains(n) {
                return Err(WordError::BadAlphabet(format!("`{n}` repeated")));
            }
        }
        if names.len() > Gen::MAX as usize {
            return Err(WordError::BadAlphabet("too many generators".into()));
        }
        Ok(Alphabet { names })
    }

    /// Alphabet made of every identifier occurring in `texts`, sorted.
    pub fn infer<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Self, WordError> {
        let mut found = std::collections::BTreeSet::new();
        for t in texts {
            let b = t.as_bytes();
            let mut i = 0;
            while i < b.len() {
                if b[i].is_ascii_lowercase() && (i == 0 || !is_ident_byte(b[i - 1])) {
                    let s = i;
                    while i < b.len() && is_ident_byte(b[i]) {
                        i += 1;
                    }
                    found.insert(t[s..i].to_string());
                } else {
                    i += 1;
                }
            }
        }
        if found.is_empty() {
            found.insert("a".to_string());
        }
        Alphabet::new(found)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| i as Gen)
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.names.len()).map(|i| i as Gen)
    }

    /// Every letter `x^{±1}`, in letter order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.gens().flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }
}

fn is_ident_byte(c: u8) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_'
}

pub(crate) fn is_ident(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty() && b[0].is_ascii_lowercase() && b.iter().all(|&c| is_ident_byte(c))
}

/// A generator or its inverse. Ordered by generator, then `+` before `-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: Gen) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn new(gen: Gen, sign: i8) -> Self {
        Letter {
            gen,
            inverse: sign < 0,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A finite, possibly unreduced, sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn gen(g: Gen) -> Self {
        Word(vec![Letter::pos(g)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Free reduction: cancels adjacent `x x^-1` pairs until none remain.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_trivial(&self) -> bool {
        self.reduced().is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `v^-1 self v`, unreduced.
    pub fn conjugate(&self, v: &Word) -> Word {
        v.inverse().concat(self).concat(v)
    }

    /// `self^-1 v^-1 self v`, unreduced.
    pub fn commutator(&self, v: &Word) -> Word {
        let mut w = self.inverse().concat(&v.inverse());
        w.0.extend_from_slice(&self.0);
        w.0.extend_from_slice(&v.0);
        w
    }

    /// Integer power, unreduced.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Word {
        let r = self.reduced().0;
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && r[lo] == r[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word(r[lo..hi].to_vec())
    }

    /// Canonical representative of the conjugacy class: the least rotation of
    /// the cyclic reduction.
    pub fn conjugacy_key(&self) -> Word {
        let c = self.cyclically_reduced().0;
        let n = c.len();
        if n == 0 {
            return Word::empty();
        }
        let mut best = 0;
        for s in 1..n {
            for i in 0..n {
                let (x, y) = (c[(s + i) % n], c[(best + i) % n]);
                if x != y {
                    if x < y {
                        best = s;
                    }
                    break;
                }
            }
        }
        Word((0..n).map(|i| c[(best + i) % n]).collect())
    }

    pub fn exponent_sums(&self) -> BTreeMap<Gen, i64> {
        let mut m = BTreeMap::new();
        for l in &self.0 {
            *m.entry(l.gen).or_insert(0) += l.sign() as i64;
        }
        m
    }

    /// True when every exponent sum vanishes, i.e. the word lies in the
    /// commutator subgroup.
    pub fn in_commutator_subgroup(&self) -> bool {
        self.exponent_sums().values().all(|&s| s == 0)
    }

    /// Replaces every generator through `map`.
    pub fn map_gens(&self, map: impl Fn(Gen) -> Gen) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter {
                    gen: map(l.gen),
                    inverse: l.inverse,
                })
                .collect(),
        )
    }

    /// Swaps `x` and `x^-1` for every generator selected by `flip`.
    pub fn flip_gens(&self, flip: impl Fn(Gen) -> bool) -> Word {
        Word(
            self.0
                .iter()
                .map(|&l| if flip(l.gen) { l.inv() } else { l })
                .collect(),
        )
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l.gen))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

pub fn format_word(w: &Word, alphabet: &Alphabet) -> String {
    w.display(alphabet).to_string()
}

/// Parses `word := "1" | term+`, `term := ident ("^-1")?`.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut p = Lexer::new(text, 0);
    let w = p.word(alphabet, &[])?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

/// Small cursor shared by the word and identity grammars.
pub(crate) struct Lexer<'a> {
    pub src: &'a str,
    pub pos: usize,
    base: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, base: usize) -> Self {
        Lexer { src, pos: 0, base }
    }

    pub fn err(&self, msg: &str) -> WordError {
        WordError::Syntax {
            pos: self.base + self.pos,
            msg: msg.to_string(),
        }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<(), WordError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{s}`")))
        }
    }

    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let b = self.src.as_bytes();
        if self.pos < b.len() && b[self.pos].is_ascii_lowercase() {
            let s = self.pos;
            while self.pos < b.len() && is_ident_byte(b[self.pos]) {
                self.pos += 1;
            }
            Some(&self.src[s..self.pos])
        } else {
            None
        }
    }

    pub fn generator(&mut self, alphabet: &Alphabet) -> Result<Option<Gen>, WordError> {
        let start = self.pos;
        match self.ident() {
            Some(name) => match alphabet.index(name) {
                Some(g) => Ok(Some(g)),
                None => {
                    self.pos = start;
                    Err(WordError::UnknownGenerator(name.to_string()))
                }
            },
            None => Ok(None),
        }
    }

    /// Reads a word, stopping before any byte in `stop` or end of input.
    pub fn word(&mut self, alphabet: &Alphabet, stop: &[u8]) -> Result<Word, WordError> {
        self.skip_ws();
        if self.peek() == Some(b'1') {
            let save = self.pos;
            self.pos += 1;
            let next = self.peek();
            if next.is_none_or(|c| c.is_ascii_whitespace() || stop.contains(&c)) {
                return Ok(Word::empty());
            }
            self.pos = save;
        }
        let mut w = Word::empty();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if stop.contains(&c) => break,
                Some(_) => {}
            }
            let g = self
                .generator(alphabet)?
                .ok_or_else(|| self.err("expected generator"))?;
            let inverse = self.src[self.pos..].starts_with("^-1");
            if inverse {
                self.pos += 3;
            }
            w.push(Letter { gen: g, inverse });
        }
        if w.is_empty() {
            return Err(self.err("empty word (write `1`)"));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn w(s: &str) -> Word {
        parse_word(s, &abc()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let al = abc();
        assert_eq!(format_word(&w("a a^-1 b").reduced(), &al), "b");
        assert!(w("a^-1 a^-1 a a").reduced().is_empty());
        let x = w("b^-1 a^-1 c^-1 a c b");
        assert_eq!(x.reduced(), x);
    }

    #[test]
    fn concat_inverse_conjugate() {
        let al = abc();
        assert_eq!(format_word(&w("a").concat(&w("b^-1")), &al), "a b^-1");
        assert_eq!(format_word(&w("a b").inverse(), &al), "b^-1 a^-1");
        assert_eq!(w("1").inverse(), Word::empty());
        let ac = w("a").commutator(&w("c"));
        assert_eq!(format_word(&ac, &al), "a^-1 c^-1 a c");
        assert_eq!(
            format_word(&ac.conjugate(&w("b")), &al),
            "b^-1 a^-1 c^-1 a c b"
        );
        assert_eq!(ac.conjugate(&Word::empty()), ac);
        assert!(Word::empty().conjugate(&w("a b c")).is_trivial());
        assert!(w("a").commutator(&w("a")).is_trivial());
        assert_eq!(
            format_word(&w("b c").commutator(&w("a")), &al),
            "c^-1 b^-1 a^-1 b c a"
        );
    }

    #[test]
    fn conjugacy_keys() {
        let al = abc();
        assert_eq!(format_word(&w("a b a^-1").conjugacy_key(), &al), "b");
        assert_eq!(w("b a").conjugacy_key(), w("a b").conjugacy_key());
        let ac = w("a").commutator(&w("c"));
        assert_eq!(ac.conjugate(&w("b")).conjugacy_key(), ac.conjugacy_key());
    }

    /// Brute force: `x` and `y` are conjugate iff some short `v` has
    /// `v^-1 x v = y` freely. Exhaustive over all words of length <= 3.
    #[test]
    fn conjugacy_key_matches_brute_force() {
        let al = abc();
        let letters: Vec<Letter> = al.letters().collect();
        let mut conj = vec![Word::empty()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for v in &conj {
                for &l in &letters {
                    let mut u = v.clone();
                    u.push(l);
                    next.push(u.reduced());
                }
            }
            conj.extend(next);
            conj.sort();
            conj.dedup();
        }
        let ac = w("a").commutator(&w("c"));
        let target = ac.conjugate(&w("b")).reduced();
        assert!(conj.iter().any(|v| ac.conjugate(v).reduced() == target));
        let other = w("c").commutator(&w("a")).reduced();
        assert!(!conj.iter().any(|v| ac.conjugate(v).reduced() == other));
        assert_ne!(ac.conjugacy_key(), other.conjugacy_key());
    }

    #[test]
    fn exponent_sum_examples() {
        let s = w("a^-1 c^-1 a c").exponent_sums();
        assert!(s.values().all(|&x| x == 0));
        let s = w("a a b^-1").exponent_sums();
        assert_eq!(s[&0], 2);
        assert_eq!(s[&1], -1);
        let (a, b, c) = (w("a"), w("b"), w("c"));
        let hw = a
            .commutator(&b)
            .commutator(&c.conjugate(&a))
            .concat(&c.commutator(&a).commutator(&b.conjugate(&c)))
            .concat(&b.commutator(&c).commutator(&a.conjugate(&b)));
        assert!(hw.in_commutator_subgroup());
        assert!(hw.is_trivial());
    }

    #[test]
    fn parsing() {
        let al = Alphabet::new(["a", "bb_2"]).unwrap();
        let x = parse_word("a bb_2^-1", &al).unwrap();
        assert_eq!(x.0, vec![Letter::pos(0), Letter::neg(1)]);
        assert_eq!(parse_word("1", &al).unwrap(), Word::empty());
        assert!(matches!(
            parse_word("a q", &al),
            Err(WordError::UnknownGenerator(_))
        ));
        assert!(matches!(
            parse_word("a ^", &al),
            Err(WordError::Syntax { .. })
        ));
        assert!(parse_word("", &al).is_err());
    }

    #[test]
    fn inferred_alphabet_is_sorted() {
        let al = Alphabet::infer(["(c,a)^[b] (x1,a)"]).unwrap();
        assert_eq!(al.names(), &["a", "b", "c", "x1"]);
    }
}
