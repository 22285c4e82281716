use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use doodle_core::construct::{hall_witt36, realize_elementary, realize_general, realize_lemma31};
use doodle_core::diagram::{
    borromean, deserialize, export_dot, isomorphic, poppy, serialize, Diagram,
};
use doodle_core::identity::{
    bounded_equiv, format_identity, format_moves, parse_elementary, parse_general, parse_moves,
    GeneralTerm, Relation,
};
use doodle_core::moves::{apply_script, cobordant, format_site, reduce_with_path};
use doodle_core::noose::{extract, parse_base};
use doodle_core::{Alphabet, SearchVerdict, Word};

#[derive(Parser)]
#[command(
    name = "doodle",
    version,
    about = "Doodle diagrams and commutator identities"
)]
struct Cli {
    /// Seed for randomized steps (reduction order).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Generator names, space or comma separated (default: inferred from the input).
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a diagram file.
    Validate { file: PathBuf },
    /// Remove monogons and bigons until the diagram is minimal.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also print the moves taken.
        #[arg(long)]
        path: bool,
    },
    /// Print the identity read by the automatic noose system.
    Identity {
        file: PathBuf,
        /// `outer` or a face given by one of its corners, `F(X3.1)`.
        #[arg(long, default_value = "outer")]
        base: String,
    },
    /// Check that an identity multiplies out to 1.
    Verify { identity: String },
    /// Build a diagram realizing an identity.
    Construct {
        identity: String,
        #[arg(long, value_enum, default_value_t = Method::Elementary)]
        method: Method,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide a relation between two identities.
    Equiv {
        #[arg(long, default_value = "equiv")]
        relation: Relation,
        id1: String,
        id2: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Apply identity moves, e.g. "sigma 1; rho; conj a^-1".
    Transform {
        identity: String,
        #[arg(long)]
        ops: String,
    },
    /// Print the conjugacy multiset, weak class sum and chain.
    Invariants { identity: String },
    /// Decide cobordism of two diagrams.
    Cobordant {
        f1: PathBuf,
        f2: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Decide isomorphism of two diagrams.
    Iso { f1: PathBuf, f2: PathBuf },
    /// Emit a built-in diagram.
    Example {
        #[arg(value_enum)]
        name: Example,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of a diagram.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Apply diagram moves, e.g. "h1- F(X1.2); h2+ E3 E7; loop+ a left-of E2".
    Moves {
        file: PathBuf,
        #[arg(long)]
        ops: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Elementary,
    Lemma31,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Poppy,
    Borromean,
    Hallwitt36,
}

fn read_diagram(path: &Path) -> Result<Diagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d = deserialize(&text).with_context(|| format!("{}", path.display()))?;
    d.validate()
        .with_context(|| format!("{}", path.display()))?;
    Ok(d)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn alphabet(cli: &Cli, texts: &[&str]) -> Result<Alphabet> {
    Ok(match &cli.alphabet {
        Some(s) => Alphabet::new(s.split([' ', ',']).filter(|x| !x.is_empty()))?,
        None => Alphabet::infer(texts.iter().copied())?,
    })
}

fn verdict<M>(v: &SearchVerdict<M>, path: impl FnOnce(&[M]) -> String) -> u8 {
    println!("{v}");
    if let SearchVerdict::Yes(p) = v {
        if !p.is_empty() {
            println!("{}", path(p));
        }
    }
    v.exit_code() as u8
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let d = read_diagram(file)?;
            println!(
                "ok: {} crossings, {} marker loops",
                d.num_crossings(),
                d.num_markers()
            );
        }
        Cmd::Reduce { file, out, path } => {
            let d = read_diagram(file)?;
            let (m, moves, _) = reduce_with_path(&d, cli.seed, usize::MAX);
            if *path {
                for site in &moves {
                    eprintln!("{}", format_site(&d, site));
                }
            }
            emit(&serialize(&m), out.as_deref())?;
        }
        Cmd::Identity { file, base } => {
            let d = read_diagram(file)?;
            let id = extract(&d, parse_base(&d, base)?)?;
            println!("{}", format_identity(&id));
        }
        Cmd::Verify { identity } => {
            let id = parse_general(identity, &alphabet(cli, &[identity])?)?;
            let ok = id.verify();
            println!("{ok}");
            return Ok(if ok { 0 } else { 1 });
        }
        Cmd::Construct {
            identity,
            method,
            out,
        } => {
            let al = alphabet(cli, &[identity])?;
            let d = match method {
                Method::Elementary => realize_elementary(&parse_elementary(identity, &al)?)?.0,
                Method::General => realize_general(&parse_general(identity, &al)?)?.0,
                Method::Lemma31 => {
                    let terms = parse_general(identity, &al)?
                        .terms()
                        .iter()
                        .map(|t| match t {
                            GeneralTerm::Elementary(c) => {
                                Ok((Word::gen(c.a), Word::gen(c.b), c.u.clone()))
                            }
                            GeneralTerm::Pair { s, t, u } => Ok((s.clone(), t.clone(), u.clone())),
                            GeneralTerm::Raw(_) => {
                                bail!("lemma31 needs commutator terms, not raw words")
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    realize_lemma31(&al, &terms)?.0
                }
            };
            emit(&serialize(&d), out.as_deref())?;
        }
        Cmd::Equiv {
            relation,
            id1,
            id2,
            budget,
        } => {
            let al = alphabet(cli, &[id1, id2])?;
            let (x, y) = (parse_elementary(id1, &al)?, parse_elementary(id2, &al)?);
            for (n, id) in [(1, &x), (2, &y)] {
                if !id.verify() {
                    bail!("identity {n} does not multiply out to 1");
                }
            }
            let v = bounded_equiv(&x, &y, *relation, *budget)?;
            return Ok(verdict(&v, |p| format_moves(p, &al)));
        }
        Cmd::Transform { identity, ops } => {
            let al = alphabet(cli, &[identity])?;
            let id = parse_elementary(identity, &al)?;
            let out = id.apply_moves(&parse_moves(ops, &al)?)?.normalize_local();
            println!("{}", format_identity(&out));
        }
        Cmd::Invariants { identity } => {
            let al = alphabet(cli, &[identity])?;
            let id = parse_elementary(identity, &al)?;
            println!("conjugacy multiset:");
            for (k, n) in id.conjugacy_multiset() {
                println!("  {} x{n}", k.display(&al));
            }
            println!("weak class sum:");
            for (k, n) in id.weak_class_sum() {
                println!("  {} {n:+}", k.display(&al));
            }
            println!("chain:");
            for ((a, b, e), n) in id.chain() {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(g, &k)| {
                        if k == 1 {
                            al.name(g as u16).to_string()
                        } else {
                            format!("{}^{k}", al.name(g as u16))
                        }
                    })
                    .collect();
                let mono = if mono.is_empty() {
                    "1".to_string()
                } else {
                    mono.join(" ")
                };
                println!("  ({},{}) at {mono}: {n:+}", al.name(a), al.name(b));
            }
        }
        Cmd::Cobordant { f1, f2, budget } => {
            let (d1, d2) = (read_diagram(f1)?, read_diagram(f2)?);
            let v = cobordant(&d1, &d2, *budget)?;
            return Ok(verdict(&v, |p| format_moves(p, d1.alphabet())));
        }
        Cmd::Iso { f1, f2 } => {
            let ok = isomorphic(&read_diagram(f1)?, &read_diagram(f2)?);
            println!("{ok}");
            return Ok(if ok { 0 } else { 1 });
        }
        Cmd::Example { name, out } => {
            let d = match name {
                Example::Poppy => poppy(),
                Example::Borromean => borromean(),
                Example::Hallwitt36 => hall_witt36(),
            };
            emit(&serialize(&d), out.as_deref())?;
        }
        Cmd::ExportDot { file, out } => emit(&export_dot(&read_diagram(file)?), out.as_deref())?,
        Cmd::Moves { file, ops, out } => {
            let d = apply_script(&read_diagram(file)?, ops)?;
            emit(&serialize(&d), out.as_deref())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
