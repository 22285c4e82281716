//! Text forms of identities and of move scripts.

use std::fmt::Write as _;

use super::{
    CommutatorTerm, ElementaryIdentity, GeneralIdentity, GeneralTerm, IdentityError, MoveDescriptor,
};
use crate::freegroup::{Alphabet, Lexer, Word, WordError};

enum Atom {
    Gen(crate::freegroup::Gen),
    Word(Word),
}

fn atom(p: &mut Lexer, al: &Alphabet, stop: &[u8]) -> Result<Atom, WordError> {
    if p.eat("[") {
        let w = p.word(al, b"]")?;
        p.expect("]")?;
        return Ok(Atom::Word(w));
    }
    p.skip_ws();
    let g = p
        .generator(al)?
        .ok_or_else(|| p.err("expected generator or `[word]`"))?;
    p.skip_ws();
    if !p.peek().is_some_and(|c| stop.contains(&c)) {
        return Err(p.err("expected `,` or `)`"));
    }
    Ok(Atom::Gen(g))
}

fn conjugator(p: &mut Lexer, al: &Alphabet) -> Result<Word, WordError> {
    p.skip_ws();
    if !p.src[p.pos..].starts_with('^') {
        return Ok(Word::empty());
    }
    p.pos += 1;
    if p.eat("[") {
        let w = p.word(al, b"]")?;
        p.expect("]")?;
        Ok(w)
    } else {
        let g = p
            .generator(al)?
            .ok_or_else(|| p.err("expected `[word]` after `^`"))?;
        Ok(Word::gen(g))
    }
}

/// Parses the identity grammar into general terms.
pub fn parse_general(text: &str, alphabet: &Alphabet) -> Result<GeneralIdentity, IdentityError> {
    let mut p = Lexer::new(text, 0);
    let mut terms = Vec::new();
    p.skip_ws();
    if p.eat("1") {
        finish(&mut p)?;
        return Ok(GeneralIdentity::new(alphabet.clone(), terms));
    }
    loop {
        p.skip_ws();
        if p.at_end() || p.src[p.pos..].starts_with("==") {
            break;
        }
        if p.eat("{") {
            let w = p.word(alphabet, b"}")?;
            p.expect("}")?;
            terms.push(GeneralTerm::Raw(w));
            continue;
        }
        p.expect("(")?;
        let s = atom(&mut p, alphabet, b",")?;
        p.expect(",")?;
        let t = atom(&mut p, alphabet, b")")?;
        p.expect(")")?;
        let u = conjugator(&mut p, alphabet)?;
        terms.push(match (s, t) {
            (Atom::Gen(a), Atom::Gen(b)) => GeneralTerm::Elementary(CommutatorTerm::new(a, b, u)),
            (s, t) => {
                let w = |x: Atom| match x {
                    Atom::Gen(g) => Word::gen(g),
                    Atom::Word(w) => w,
                };
                GeneralTerm::Pair {
                    s: w(s),
                    t: w(t),
                    u,
                }
            }
        });
    }
    if terms.is_empty() {
        return Err(p.err("expected a term or `1`").into());
    }
    finish(&mut p)?;
    Ok(GeneralIdentity::new(alphabet.clone(), terms))
}

fn finish(p: &mut Lexer) -> Result<(), WordError> {
    if p.eat("==") {
        p.skip_ws();
        p.expect("1")?;
    }
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(())
}

/// Parses an identity whose terms are all `(a,b)^[u]` with single generators.
pub fn parse_elementary(
    text: &str,
    alphabet: &Alphabet,
) -> Result<ElementaryIdentity, IdentityError> {
    parse_general(text, alphabet)?.to_elementary()
}

fn push_conj(out: &mut String, u: &Word, al: &Alphabet) {
    if !u.is_empty() {
        let _ = write!(out, "^[{}]", u.display(al));
    }
}

pub fn format_identity(id: &ElementaryIdentity) -> String {
    let al = id.alphabet();
    if id.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    for (i, t) in id.terms().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "({},{})", al.name(t.a), al.name(t.b));
        push_conj(&mut out, &t.u, al);
    }
    out
}

pub fn format_general(id: &GeneralIdentity) -> String {
    let al = id.alphabet();
    if id.terms().is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    for (i, t) in id.terms().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match t {
            GeneralTerm::Elementary(c) => {
                let _ = write!(out, "({},{})", al.name(c.a), al.name(c.b));
                push_conj(&mut out, &c.u, al);
            }
            GeneralTerm::Pair { s, t, u } => {
                let _ = write!(out, "([{}],[{}])", s.display(al), t.display(al));
                push_conj(&mut out, u, al);
            }
            GeneralTerm::Raw(w) => {
                let _ = write!(out, "{{{}}}", w.display(al));
            }
        }
    }
    out
}

fn number(p: &mut Lexer) -> Result<i64, WordError> {
    p.skip_ws();
    let s = p.pos;
    let b = p.src.as_bytes();
    if p.pos < b.len() && (b[p.pos] == b'-' || b[p.pos] == b'+') {
        p.pos += 1;
    }
    while p.pos < b.len() && b[p.pos].is_ascii_digit() {
        p.pos += 1;
    }
    p.src[s..p.pos].parse().map_err(|_| {
        p.pos = s;
        p.err("expected integer")
    })
}

fn index(p: &mut Lexer) -> Result<usize, WordError> {
    let n = number(p)?;
    usize::try_from(n).map_err(|_| p.err("expected nonnegative integer"))
}

/// Parses `rho; sigma J; sigma^-1 J; conj W; local I ±1; ins-triv P a W;
/// del-triv I; ins-cancel P a b W; del-cancel I`.
pub fn parse_moves(text: &str, alphabet: &Alphabet) -> Result<Vec<MoveDescriptor>, IdentityError> {
    let mut out = Vec::new();
    let mut base = 0;
    for part in text.split(';') {
        let mut p = Lexer::new(part, base);
        base += part.len() + 1;
        p.skip_ws();
        if p.at_end() {
            continue;
        }
        let s = p.pos;
        let b = part.as_bytes();
        while p.pos < b.len() && !b[p.pos].is_ascii_whitespace() {
            p.pos += 1;
        }
        let op = &part[s..p.pos];
        let gen = |p: &mut Lexer| -> Result<_, WordError> {
            p.generator(alphabet)?
                .ok_or_else(|| p.err("expected generator"))
        };
        let mv = match op {
            "rho" => MoveDescriptor::Rho,
            "sigma" => MoveDescriptor::Sigma {
                j: index(&mut p)?,
                sign: 1,
            },
            "sigma^-1" => MoveDescriptor::Sigma {
                j: index(&mut p)?,
                sign: -1,
            },
            "conj" => MoveDescriptor::Conj(p.word(alphabet, &[])?),
            "local" => {
                let i = index(&mut p)?;
                let s = number(&mut p)?;
                if s != 1 && s != -1 {
                    return Err(p.err("sign must be +1 or -1").into());
                }
                MoveDescriptor::LocalII { i, sign: s as i8 }
            }
            "ins-triv" => {
                let pos = index(&mut p)?;
                let a = gen(&mut p)?;
                MoveDescriptor::InsertTrivial {
                    pos,
                    a,
                    u: p.word(alphabet, &[])?,
                }
            }
            "del-triv" => MoveDescriptor::DeleteTrivial { i: index(&mut p)? },
            "ins-cancel" => {
                let pos = index(&mut p)?;
                let a = gen(&mut p)?;
                let b = gen(&mut p)?;
                MoveDescriptor::InsertCancelling {
                    pos,
                    a,
                    b,
                    u: p.word(alphabet, &[])?,
                }
            }
            "del-cancel" => MoveDescriptor::DeleteCancelling { i: index(&mut p)? },
            _ => {
                p.pos = s;
                return Err(p.err(&format!("unknown move `{op}`")).into());
            }
        };
        p.skip_ws();
        if !p.at_end() {
            return Err(p.err("unexpected trailing input").into());
        }
        out.push(mv);
    }
    Ok(out)
}

pub fn format_moves(moves: &[MoveDescriptor], al: &Alphabet) -> String {
    let parts: Vec<String> = moves
        .iter()
        .map(|m| match m {
            MoveDescriptor::Rho => "rho".into(),
            MoveDescriptor::Sigma { j, sign } if *sign >= 0 => format!("sigma {j}"),
            MoveDescriptor::Sigma { j, .. } => format!("sigma^-1 {j}"),
            MoveDescriptor::Conj(u) => format!("conj {}", u.display(al)),
            MoveDescriptor::LocalII { i, sign } => format!("local {i} {sign:+}"),
            MoveDescriptor::InsertTrivial { pos, a, u } => {
                format!("ins-triv {pos} {} {}", al.name(*a), u.display(al))
            }
            MoveDescriptor::DeleteTrivial { i } => format!("del-triv {i}"),
            MoveDescriptor::InsertCancelling { pos, a, b, u } => {
                format!(
                    "ins-cancel {pos} {} {} {}",
                    al.name(*a),
                    al.name(*b),
                    u.display(al)
                )
            }
            MoveDescriptor::DeleteCancelling { i } => format!("del-cancel {i}"),
        })
        .collect();
    parts.join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn round_trip() {
        for s in [
            "(a,c)^[b] (b,c) (b,a)^[c] (c,a) (c,b)^[a] (a,b)",
            "1",
            "(a,a)^[b^-1 c]",
        ] {
            let id = parse_elementary(s, &abc()).unwrap();
            assert_eq!(format_identity(&id), s);
        }
        let g = "([a b],c)^[a] {a^-1 b^-1 a b} (a,b)";
        let parsed = parse_general(g, &abc()).unwrap();
        assert_eq!(
            format_general(&parsed),
            "([a b],[c])^[a] {a^-1 b^-1 a b} (a,b)"
        );
        assert_eq!(
            parse_general(&format_general(&parsed), &abc()).unwrap(),
            parsed
        );
    }

    #[test]
    fn accepts_trailing_equals_one_and_short_conjugator() {
        let id = parse_elementary("(a,b)^c (b,a)^c == 1", &abc()).unwrap();
        assert_eq!(format_identity(&id), "(a,b)^[c] (b,a)^[c]");
        assert!(parse_elementary("1 == 1", &abc()).unwrap().is_empty());
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "",
            "(a,b",
            "(a b)",
            "(a,d)",
            "(a,b)^[",
            "(a,b) junk",
            "{a b",
        ] {
            assert!(parse_general(s, &abc()).is_err(), "{s:?}");
        }
        assert!(matches!(
            parse_elementary("([a b],c)", &abc()),
            Err(IdentityError::NotElementary(1))
        ));
    }

    #[test]
    fn move_scripts() {
        let s = "rho; sigma 2; sigma^-1 1; conj a b^-1; local 3 -1; ins-triv 0 a c; del-triv 1; ins-cancel 2 a b 1; del-cancel 4";
        let m = parse_moves(s, &abc()).unwrap();
        assert_eq!(m.len(), 9);
        assert_eq!(format_moves(&m, &abc()), s);
        assert_eq!(parse_moves(&format_moves(&m, &abc()), &abc()).unwrap(), m);
        assert!(parse_moves("twist 1", &abc()).is_err());
        assert!(parse_moves("local 1 2", &abc()).is_err());
        assert!(parse_moves("", &abc()).unwrap().is_empty());
    }
}
