//! The graph-construction mini-language accepted by `--graph`.
//!
//! ```text
//! hamming <d> <q>
//! quotient q<q> gens=<v>[;<v>...]      vectors as comma-separated residues
//! quotient q<q> file=<path>            one vector per line
//! distance <d> <q> <r>[,<r>...]
//! union3 <k> <i> [d=<dim>]             dimension defaults to 2k+1
//! star <n>
//! claw-power <m>
//! cayley-from-file <path>              JSON {q, d, elements: [[...], ...]}
//! cartesian [<spec>] [<spec>]
//! ```

use std::fmt;
use std::str::FromStr;

use qmix_core::zq::ZqVector;

use crate::error::CliError;

/// Where the generators of a quotient come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    Inline(Vec<ZqVector>),
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Hamming { d: usize, q: u32 },
    Quotient { q: u32, generators: Generators },
    Distance { d: usize, q: u32, classes: Vec<usize> },
    Union3 { k: u32, i: usize, d: Option<usize> },
    Star { n: usize },
    ClawPower { m: usize },
    CayleyFromFile { path: String },
    Cartesian(Box<GraphSpec>, Box<GraphSpec>),
}

fn parse_num<T: FromStr>(token: Option<&str>, what: &str) -> Result<T, CliError> {
    let token = token.ok_or_else(|| CliError::Spec(format!("missing {what}")))?;
    token.parse().map_err(|_| CliError::Spec(format!("invalid {what} '{token}'")))
}

fn no_more<'a>(mut tokens: impl Iterator<Item = &'a str>) -> Result<(), CliError> {
    match tokens.next() {
        Some(extra) => Err(CliError::Spec(format!("unexpected token '{extra}'"))),
        None => Ok(()),
    }
}

/// Splits `[a] [b]` into its two bracketed groups, respecting nesting.
fn bracket_groups(s: &str) -> Result<Vec<&str>, CliError> {
    let mut groups = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (idx, ch) in s.char_indices() {
        match ch {
            '[' => {
                if depth == 0 {
                    start = idx + 1;
                }
                depth += 1;
            }
            ']' => {
                depth = depth.checked_sub(1).ok_or_else(|| CliError::Spec("unbalanced ']'".into()))?;
                if depth == 0 {
                    groups.push(&s[start..idx]);
                }
            }
            c if depth == 0 && !c.is_whitespace() => {
                return Err(CliError::Spec(format!("expected '[' in cartesian operands, found '{c}'")));
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CliError::Spec("unbalanced '['".into()));
    }
    Ok(groups)
}

impl FromStr for GraphSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let mut tokens = rest.split_whitespace();
        let spec = match head.to_ascii_lowercase().as_str() {
            "hamming" => GraphSpec::Hamming { d: parse_num(tokens.next(), "d")?, q: parse_num(tokens.next(), "q")? },
            "quotient" => {
                let q_token = tokens.next().ok_or_else(|| CliError::Spec("missing q<modulus>".into()))?;
                let q: u32 = parse_num(q_token.strip_prefix('q'), "modulus")?;
                let source = tokens.next().ok_or_else(|| CliError::Spec("missing gens= or file=".into()))?;
                let generators = if let Some(list) = source.strip_prefix("gens=") {
                    let vectors = list
                        .split(';')
                        .filter(|v| !v.trim().is_empty())
                        .map(|v| ZqVector::parse(q, v))
                        .collect::<Result<Vec<_>, _>>()?;
                    if vectors.is_empty() {
                        return Err(CliError::Spec("quotient needs at least one generator".into()));
                    }
                    Generators::Inline(vectors)
                } else if let Some(path) = source.strip_prefix("file=") {
                    Generators::File(path.to_string())
                } else {
                    return Err(CliError::Spec(format!("expected gens= or file=, found '{source}'")));
                };
                GraphSpec::Quotient { q, generators }
            }
            "distance" => {
                let d = parse_num(tokens.next(), "d")?;
                let q = parse_num(tokens.next(), "q")?;
                let list = tokens.next().ok_or_else(|| CliError::Spec("missing distance classes".into()))?;
                let mut classes =
                    list.split(',').map(|r| parse_num(Some(r.trim()), "class")).collect::<Result<Vec<usize>, _>>()?;
                classes.sort_unstable();
                classes.dedup();
                GraphSpec::Distance { d, q, classes }
            }
            "union3" => {
                let k = parse_num(tokens.next(), "k")?;
                let i = parse_num(tokens.next(), "i")?;
                let d = match tokens.next() {
                    Some(t) => Some(parse_num(t.strip_prefix("d="), "d=<dim>")?),
                    None => None,
                };
                GraphSpec::Union3 { k, i, d }
            }
            "star" => GraphSpec::Star { n: parse_num(tokens.next(), "n")? },
            "claw-power" => GraphSpec::ClawPower { m: parse_num(tokens.next(), "m")? },
            "cayley-from-file" => GraphSpec::CayleyFromFile {
                path: tokens.next().ok_or_else(|| CliError::Spec("missing path".into()))?.to_string(),
            },
            "cartesian" => {
                let groups = bracket_groups(rest)?;
                let [a, b] = groups.as_slice() else {
                    return Err(CliError::Spec(format!("cartesian takes two [..] operands, got {}", groups.len())));
                };
                return Ok(GraphSpec::Cartesian(Box::new(a.parse()?), Box::new(b.parse()?)));
            }
            other => return Err(CliError::Spec(format!("unknown graph constructor '{other}'"))),
        };
        no_more(tokens)?;
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    /// The canonical form: lowercase keywords, single spaces, reduced
    /// residues and sorted distance classes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Hamming { d, q } => write!(f, "hamming {d} {q}"),
            GraphSpec::Quotient { q, generators: Generators::Inline(vs) } => {
                let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "quotient q{q} gens={}", list.join(";"))
            }
            GraphSpec::Quotient { q, generators: Generators::File(path) } => write!(f, "quotient q{q} file={path}"),
            GraphSpec::Distance { d, q, classes } => {
                let list: Vec<String> = classes.iter().map(|r| r.to_string()).collect();
                write!(f, "distance {d} {q} {}", list.join(","))
            }
            GraphSpec::Union3 { k, i, d: None } => write!(f, "union3 {k} {i}"),
            GraphSpec::Union3 { k, i, d: Some(d) } => write!(f, "union3 {k} {i} d={d}"),
            GraphSpec::Star { n } => write!(f, "star {n}"),
            GraphSpec::ClawPower { m } => write!(f, "claw-power {m}"),
            GraphSpec::CayleyFromFile { path } => write!(f, "cayley-from-file {path}"),
            GraphSpec::Cartesian(a, b) => write!(f, "cartesian [{a}] [{b}]"),
        }
    }
}
