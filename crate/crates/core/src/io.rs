//! Text formats.
//!
//! Code files:
//!
//! ```text
//! BATCHCODE v1 n=<n> r=<r>
//! meta kind=<explicit|random|imported> <key=value ...>
//! <sorted info indices of parity 0>
//! ...
//! ```
//!
//! Collection files:
//!
//! ```text
//! NICE v1 q=<q> ell=<ell> m=<m> L=<L|unchecked>
//! <ℓ basis vectors per member, one per line, element codes>
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use crate::code::{Assignment, BatchCode, Provenance};
use crate::field::{Elem, Field};
use crate::geometry::{NiceCollection, Niceness};
use crate::linalg::Subspace;
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Splits `key=value` tokens after a fixed prefix.
fn fields<'a>(line_no: usize, line: &'a str, prefix: &[&str]) -> Result<HashMap<&'a str, &'a str>> {
    let mut tokens = line.split_whitespace();
    for want in prefix {
        match tokens.next() {
            Some(t) if t == *want => {}
            other => {
                return Err(parse_err(
                    line_no,
                    format!("expected {want:?}, found {:?}", other.unwrap_or("")),
                ))
            }
        }
    }
    tokens
        .map(|t| {
            t.split_once('=')
                .ok_or_else(|| parse_err(line_no, format!("expected key=value, found {t:?}")))
        })
        .collect()
}

fn get<T: FromStr>(line_no: usize, map: &HashMap<&str, &str>, key: &str) -> Result<T> {
    let raw = map
        .get(key)
        .ok_or_else(|| parse_err(line_no, format!("missing {key}")))?;
    raw.parse()
        .map_err(|_| parse_err(line_no, format!("bad value for {key}: {raw:?}")))
}

fn niceness_tokens(n: Niceness) -> String {
    match n {
        Niceness::Unchecked => "L=unchecked".into(),
        Niceness::Claimed(l) => format!("L={l} cert=claimed"),
        Niceness::BruteForce(l) => format!("L={l} cert=brute-force"),
    }
}

fn parse_niceness(line_no: usize, map: &HashMap<&str, &str>) -> Result<Niceness> {
    match (map.get("L").copied(), map.get("cert").copied()) {
        (Some("unchecked"), None) => Ok(Niceness::Unchecked),
        (Some(_), Some("claimed")) => Ok(Niceness::Claimed(get(line_no, map, "L")?)),
        (Some(_), Some("brute-force")) => Ok(Niceness::BruteForce(get(line_no, map, "L")?)),
        _ => Err(parse_err(line_no, "bad niceness fields")),
    }
}

pub fn write_code(code: &BatchCode) -> String {
    let mut out = format!("BATCHCODE v1 n={} r={}\n", code.n(), code.r());
    let meta = match code.meta() {
        Provenance::Explicit {
            q,
            ell,
            m,
            niceness,
        } => format!(
            "meta kind=explicit q={q} ell={ell} m={m} {}",
            niceness_tokens(*niceness)
        ),
        Provenance::Random { q, k, p1, p2, seed } => {
            format!("meta kind=random q={q} k={k} p1={p1} p2={p2} seed={seed}")
        }
        Provenance::Imported => "meta kind=imported".into(),
    };
    out.push_str(&meta);
    out.push('\n');
    for support in code.parities() {
        let line: Vec<String> = support.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a code file. Imported codes get their supports sorted and
/// duplicate parities dropped; generated codes must already be canonical.
pub fn read_code(text: &str) -> Result<BatchCode> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let h = fields(no, header, &["BATCHCODE", "v1"])?;
    let n: usize = get(no, &h, "n")?;
    let r: usize = get(no, &h, "r")?;

    let (no, meta_line) = lines
        .next()
        .ok_or_else(|| parse_err(2, "missing meta line"))?;
    let m = fields(no, meta_line, &["meta"])?;
    let meta = match m.get("kind").copied() {
        Some("explicit") => Provenance::Explicit {
            q: get(no, &m, "q")?,
            ell: get(no, &m, "ell")?,
            m: get(no, &m, "m")?,
            niceness: parse_niceness(no, &m)?,
        },
        Some("random") => Provenance::Random {
            q: get(no, &m, "q")?,
            k: get(no, &m, "k")?,
            p1: get(no, &m, "p1")?,
            p2: get(no, &m, "p2")?,
            seed: get(no, &m, "seed")?,
        },
        Some("imported") => Provenance::Imported,
        other => return Err(parse_err(no, format!("unknown kind {other:?}"))),
    };

    let mut parities = Vec::with_capacity(r);
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let support = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(no, format!("bad index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        parities.push(support);
    }
    if parities.len() != r {
        return Err(parse_err(
            no,
            format!("header announces {r} parities, file has {}", parities.len()),
        ));
    }
    if meta == Provenance::Imported {
        let mut seen = HashSet::new();
        parities = parities
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .filter(|s| seen.insert(s.clone()))
            .collect();
    }
    BatchCode::new(n, parities, meta)
}

pub fn write_collection(c: &NiceCollection) -> String {
    let level = match c.niceness() {
        Niceness::BruteForce(l) => l.to_string(),
        _ => "unchecked".into(),
    };
    let mut out = format!(
        "NICE v1 q={} ell={} m={} L={level}\n",
        c.field().size(),
        c.ell(),
        c.m()
    );
    for s in c.subspaces() {
        for row in s.basis() {
            let line: Vec<String> = row.iter().map(|x| x.code().to_string()).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
    }
    out
}

/// Parses a collection file. A numeric level is read back as claimed,
/// since the file itself is not re-verified.
pub fn read_collection(text: &str) -> Result<NiceCollection> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let h = fields(no, header, &["NICE", "v1"])?;
    let q: u64 = get(no, &h, "q")?;
    let ell: usize = get(no, &h, "ell")?;
    let m: usize = get(no, &h, "m")?;
    let niceness = match h.get("L").copied() {
        Some("unchecked") => Niceness::Unchecked,
        Some(_) => Niceness::Claimed(get(no, &h, "L")?),
        None => return Err(parse_err(no, "missing L")),
    };
    let field = Arc::new(Field::new(q)?);
    let d = 2 * ell + 1;
    let rows = lines
        .map(|(no, line)| {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| parse_err(no, format!("bad element {t:?}")))
                        .and_then(|c| field.elem(c))
                })
                .collect::<Result<Vec<Elem>>>()?;
            if row.len() != d {
                return Err(parse_err(no, format!("expected {d} coordinates")));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != m * ell {
        return Err(parse_err(
            no,
            format!("expected {} basis lines, found {}", m * ell, rows.len()),
        ));
    }
    let subspaces = rows
        .chunks(ell)
        .map(|block| Subspace::span_in(field.clone(), d, block))
        .collect::<Result<Vec<_>>>()?;
    Ok(NiceCollection::new(field, ell, subspaces)?.with_niceness(niceness))
}

pub fn write_assignment(a: &Assignment) -> String {
    a.sets.iter().map(|s| format!("{s}\n")).collect()
}
