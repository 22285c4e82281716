//! Text form of move sites: `h1- F(X1.2); h2+ E3 E7; bridge E1 E4;
//! loop+ a left-of E2; loop- L1`.

use super::{apply, side_corner, MoveError, MoveSite};
use crate::diagram::{Corner, Diagram, EId, End, VId};

fn bad(msg: impl Into<String>) -> MoveError {
    MoveError::Precondition(msg.into())
}

fn vertex(d: &Diagram, s: &str) -> Result<VId, MoveError> {
    d.vertices()
        .iter()
        .position(|v| v.to_string() == s)
        .ok_or_else(|| bad(format!("no vertex {s}")))
}

fn corner(d: &Diagram, s: &str) -> Result<Corner, MoveError> {
    let inner = s
        .strip_prefix("F(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    let (v, p) = inner
        .split_once('.')
        .ok_or_else(|| bad(format!("bad corner `{s}`")))?;
    let v = vertex(d, v)?;
    let p: u8 = p.parse().map_err(|_| bad(format!("bad corner `{s}`")))?;
    if p >= d.degree(v) {
        return Err(bad(format!("no corner {s}")));
    }
    Ok(End::new(v, p))
}

fn edge(d: &Diagram, s: &str) -> Result<EId, MoveError> {
    s.strip_prefix('E')
        .and_then(|n| n.parse().ok())
        .and_then(|n| d.edge_by_id(n))
        .ok_or_else(|| bad(format!("no edge {s}")))
}

fn side(s: Option<&&str>) -> Result<Option<bool>, MoveError> {
    match s.copied() {
        None => Ok(None),
        Some("left") => Ok(Some(true)),
        Some("right") => Ok(Some(false)),
        Some(x) => Err(bad(format!("expected left or right, found `{x}`"))),
    }
}

fn region(d: &Diagram, e: EId, left: bool) -> usize {
    d.topology().region(side_corner(d, e, left))
}

/// Parses one command against the current diagram.
pub fn parse_site(d: &Diagram, cmd: &str) -> Result<MoveSite, MoveError> {
    let toks: Vec<&str> = cmd.split_whitespace().collect();
    let (&op, args) = toks.split_first().ok_or_else(|| bad("empty move"))?;
    let arg = |i: usize| {
        args.get(i)
            .copied()
            .ok_or_else(|| bad(format!("`{op}` needs more arguments")))
    };
    let site = match op {
        "h1-" => MoveSite::Monogon {
            corner: corner(d, arg(0)?)?,
        },
        "h2-" => MoveSite::Bigon {
            corner: corner(d, arg(0)?)?,
        },
        "h1+" => MoveSite::H1Plus {
            edge: edge(d, arg(0)?)?,
            left: side(args.get(1))?.unwrap_or(true),
        },
        "h2+" => {
            // Either `E1 E2` or `E1 side E2 side`.
            let (e1, s1, e2, s2) = if args.len() >= 4 {
                (
                    edge(d, arg(0)?)?,
                    side(args.get(1))?,
                    edge(d, arg(2)?)?,
                    side(args.get(3))?,
                )
            } else {
                (edge(d, arg(0)?)?, None, edge(d, arg(1)?)?, None)
            };
            let opts = |s: Option<bool>| s.map_or(vec![true, false], |x| vec![x]);
            let mut found = None;
            'search: for l1 in opts(s1) {
                for l2 in opts(s2) {
                    if region(d, e1, l1) == region(d, e2, l2) {
                        found = Some((l1, l2));
                        break 'search;
                    }
                }
            }
            let (left1, left2) = found.ok_or_else(|| bad("the edges share no region"))?;
            MoveSite::H2Plus {
                e1,
                left1,
                e2,
                left2,
            }
        }
        "bridge" => {
            let (e1, e2) = (edge(d, arg(0)?)?, edge(d, arg(1)?)?);
            let left = match side(args.get(2))? {
                Some(l) => l,
                None => [true, false]
                    .into_iter()
                    .find(|&l| region(d, e1, l) == region(d, e2, l))
                    .ok_or_else(|| bad("the edges share no region on one side"))?,
            };
            MoveSite::Bridge { e1, e2, left }
        }
        "loop+" => {
            let color = d
                .alphabet()
                .index(arg(0)?)
                .ok_or_else(|| bad(format!("unknown color {}", args[0])))?;
            let mut rest = &args[1..];
            let reversed = rest.last() == Some(&"reversed");
            if reversed {
                rest = &rest[..rest.len() - 1];
            }
            let at = match rest {
                [] => None,
                ["left-of", e] => Some(d.left_corner(edge(d, e)?)),
                ["right-of", e] => Some(d.right_corner(edge(d, e)?)),
                ["at", c] => Some(corner(d, c)?),
                _ => return Err(bad(format!("bad placement in `{cmd}`"))),
            };
            MoveSite::LoopInsert {
                color,
                at,
                reversed,
            }
        }
        "loop-" => MoveSite::LoopDelete {
            marker: vertex(d, arg(0)?)?,
        },
        _ => return Err(bad(format!("unknown move `{op}`"))),
    };
    Ok(site)
}

/// Text of a site; parses back to the same site on the same diagram.
pub fn format_site(d: &Diagram, site: &MoveSite) -> String {
    let e = |x: EId| format!("E{}", d.edge(x).id);
    let s = |l: bool| if l { "left" } else { "right" };
    match *site {
        MoveSite::Monogon { corner } => format!("h1- F({})", d.corner_name(corner)),
        MoveSite::Bigon { corner } => format!("h2- F({})", d.corner_name(corner)),
        MoveSite::H1Plus { edge, left } => format!("h1+ {} {}", e(edge), s(left)),
        MoveSite::H2Plus {
            e1,
            left1,
            e2,
            left2,
        } => format!("h2+ {} {} {} {}", e(e1), s(left1), e(e2), s(left2)),
        MoveSite::Bridge { e1, e2, left } => format!("bridge {} {} {}", e(e1), e(e2), s(left)),
        MoveSite::LoopInsert {
            color,
            at,
            reversed,
        } => {
            let mut out = format!("loop+ {}", d.alphabet().name(color));
            if let Some(c) = at {
                out += &format!(" at {}", d.corner_name(c));
            }
            if reversed {
                out += " reversed";
            }
            out
        }
        MoveSite::LoopDelete { marker } => format!("loop- {}", d.vertex(marker)),
    }
}

/// Applies `;`-separated commands in order, each against the diagram left
/// by the previous one.
pub fn apply_script(d: &Diagram, script: &str) -> Result<Diagram, MoveError> {
    let mut cur = d.clone();
    for cmd in script.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let site = parse_site(&cur, cmd)?;
        cur = apply(&cur, &site).map_err(|e| match e {
            MoveError::Precondition(m) => MoveError::Precondition(format!("`{cmd}`: {m}")),
            other => other,
        })?;
    }
    Ok(cur)
}
