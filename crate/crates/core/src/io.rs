//! Line-oriented text formats.
//!
//! Writers are canonical: identifiers sorted within each level, LF endings,
//! no trailing whitespace. Parsers report the offending line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ingest::{CategorySpec, MonoidSpec, PosetSpec};
use crate::presheaf::{FinSSet, FinXiSet, RawSSet, RawXiSet, SSetMap, XiSetMap};

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// The header keyword of a file, e.g. `SSET`.
pub fn sniff(text: &str) -> Option<&str> {
    content_lines(text)
        .next()
        .and_then(|(_, l)| l.split_whitespace().next())
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

struct Cursor<'a> {
    path: &'a str,
    line: usize,
}

impl Cursor<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_string(),
            line: self.line,
            message: message.into(),
        }
    }

    fn int<T: std::str::FromStr>(&self, s: &str) -> Result<T> {
        s.parse()
            .map_err(|_| self.err(format!("expected an integer, found `{s}`")))
    }
}

fn expect_header(text: &str, path: &str, keyword: &str) -> Result<()> {
    match content_lines(text).next() {
        Some((_, l)) if l == format!("{keyword} v1") => Ok(()),
        Some((n, l)) => Err(Error::Parse {
            path: path.to_string(),
            line: n,
            message: format!("expected `{keyword} v1`, found `{l}`"),
        }),
        None => Err(Error::Parse {
            path: path.to_string(),
            line: 0,
            message: "empty file".into(),
        }),
    }
}

/// Splits `key rest` at the first `:`.
fn split_colon<'a>(cur: &Cursor<'_>, line: &'a str) -> Result<(&'a str, &'a str)> {
    line.split_once(':')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| cur.err("missing `:`"))
}

fn parse_pairs<'a>(cur: &Cursor<'_>, body: &'a str) -> Result<Vec<(&'a str, &'a str)>> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(';')
        .map(|p| {
            let p = p.trim();
            p.split_once("->")
                .map(|(a, b)| (a.trim(), b.trim()))
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .ok_or_else(|| cur.err(format!("malformed pair `{p}`")))
        })
        .collect()
}

/// Turns `src->tgt` pairs into a table over `src_names` into `tgt_names`.
fn build_table(
    cur: &Cursor<'_>,
    pairs: &[(&str, &str)],
    src: &HashMap<&str, usize>,
    tgt: &HashMap<&str, usize>,
) -> Result<Vec<usize>> {
    let mut table = vec![usize::MAX; src.len()];
    for &(a, b) in pairs {
        let &i = src
            .get(a)
            .ok_or_else(|| cur.err(format!("unknown simplex `{a}`")))?;
        let &j = tgt
            .get(b)
            .ok_or_else(|| cur.err(format!("unknown simplex `{b}`")))?;
        if table[i] != usize::MAX {
            return Err(cur.err(format!("`{a}` mapped twice")));
        }
        table[i] = j;
    }
    if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
        let name = src
            .iter()
            .find(|(_, &v)| v == i)
            .map(|(k, _)| *k)
            .unwrap_or("?");
        return Err(cur.err(format!("no image given for `{name}`")));
    }
    Ok(table)
}

fn write_map_line(out: &mut String, head: &str, src: &[String], tgt: &[String], table: &[usize]) {
    out.push_str(head);
    out.push(':');
    for (i, (s, &t)) in src.iter().zip(table).enumerate() {
        out.push_str(if i == 0 { " " } else { " ; " });
        let _ = write!(out, "{s}->{}", tgt[t]);
    }
    out.push('\n');
}

fn write_level_line(out: &mut String, k: isize, names: &[String]) {
    let _ = write!(out, "level {k}:");
    for n in names {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
}

pub fn write_sset(x: &FinSSet) -> String {
    let mut out = String::from("SSET v1\n");
    let _ = writeln!(out, "cap {}", x.cap());
    if let Some(l) = x.stable_from() {
        let _ = writeln!(out, "stable {l}");
    }
    for k in 0..=x.cap() {
        write_level_line(&mut out, k as isize, x.names(k));
    }
    for k in 1..=x.cap() {
        for i in 0..=k {
            write_map_line(
                &mut out,
                &format!("d {k} {i}"),
                x.names(k),
                x.names(k - 1),
                x.face_table(k, i),
            );
        }
    }
    for k in 0..x.cap() {
        for j in 0..=k {
            write_map_line(
                &mut out,
                &format!("s {k} {j}"),
                x.names(k),
                x.names(k + 1),
                x.degen_table(k, j),
            );
        }
    }
    out
}

type Pending<'a> = Vec<(usize, (String, isize, usize), Vec<(&'a str, &'a str)>)>;

/// Shared reader for the two presheaf formats. Levels are keyed by degree
/// offset by `base` (0 for SSET, -1 for XISET).
struct PresheafText<'a> {
    cap: isize,
    stable: Option<usize>,
    levels: Vec<Vec<String>>,
    maps: Pending<'a>,
}

fn read_presheaf<'a>(
    text: &'a str,
    path: &str,
    keyword: &str,
    base: isize,
) -> Result<PresheafText<'a>> {
    expect_header(text, path, keyword)?;
    let mut cap: Option<isize> = None;
    let mut stable = None;
    let mut levels: Vec<Option<Vec<String>>> = Vec::new();
    let mut maps = Vec::new();
    for (n, line) in content_lines(text).skip(1) {
        let cur = Cursor { path, line: n };
        let word = line
            .split(|c: char| c.is_whitespace() || c == ':')
            .next()
            .unwrap_or("");
        match word {
            "cap" => {
                let c: isize = cur.int(line[3..].trim())?;
                if c < base {
                    return Err(cur.err("cap out of range"));
                }
                cap = Some(c);
                levels = vec![None; (c - base + 1) as usize];
            }
            "stable" => stable = Some(cur.int(line[6..].trim())?),
            "level" => {
                let c = cap.ok_or_else(|| cur.err("`level` before `cap`"))?;
                let (head, body) = split_colon(&cur, line)?;
                let k: isize = cur.int(head[5..].trim())?;
                if k < base || k > c {
                    return Err(cur.err(format!("level {k} out of range")));
                }
                let slot = &mut levels[(k - base) as usize];
                if slot.is_some() {
                    return Err(cur.err(format!("level {k} given twice")));
                }
                *slot = Some(body.split_whitespace().map(str::to_string).collect());
            }
            "d" | "s" | "sbot" | "stop" | "dnew" => {
                let (head, body) = split_colon(&cur, line)?;
                let parts: Vec<&str> = head.split_whitespace().collect();
                let key = match (word, parts.len()) {
                    ("d" | "s", 3) => (word.to_string(), cur.int(parts[1])?, cur.int(parts[2])?),
                    ("sbot" | "stop", 2) => (word.to_string(), cur.int(parts[1])?, 0),
                    ("dnew", 1) => (word.to_string(), 0, 0),
                    _ => return Err(cur.err(format!("malformed `{word}` line"))),
                };
                maps.push((n, key, parse_pairs(&cur, body)?));
            }
            _ => return Err(cur.err(format!("unknown directive `{word}`"))),
        }
    }
    let cap = cap.ok_or_else(|| Error::Parse {
        path: path.into(),
        line: 0,
        message: "missing `cap`".into(),
    })?;
    let levels = levels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| Error::Parse {
                path: path.into(),
                line: 0,
                message: format!("missing level {}", i as isize + base),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PresheafText {
        cap,
        stable,
        levels,
        maps,
    })
}

fn name_index(levels: &[Vec<String>]) -> Vec<HashMap<&str, usize>> {
    levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
        .collect()
}

fn with_path(err: Error, path: &str) -> Error {
    match err {
        Error::Parse { .. } | Error::Io { .. } => err,
        other => Error::Parse {
            path: path.to_string(),
            line: 0,
            message: other.to_string(),
        },
    }
}

pub fn parse_sset(text: &str, path: &str) -> Result<FinSSet> {
    let t = read_presheaf(text, path, "SSET", 0)?;
    let cap = t.cap as usize;
    let idx = name_index(&t.levels);
    let mut faces: Vec<Vec<Option<Vec<usize>>>> = (0..=cap)
        .map(|k| if k == 0 { vec![] } else { vec![None; k + 1] })
        .collect();
    let mut degens: Vec<Vec<Option<Vec<usize>>>> = (0..=cap)
        .map(|k| if k == cap { vec![] } else { vec![None; k + 1] })
        .collect();
    for (n, (word, k, i), pairs) in &t.maps {
        let cur = Cursor { path, line: *n };
        let k = *k;
        let slot = match word.as_str() {
            "d" if k >= 1 && (k as usize) <= cap && *i <= k as usize => {
                let k = k as usize;
                let table = build_table(&cur, pairs, &idx[k], &idx[k - 1])?;
                (&mut faces[k][*i], table)
            }
            "s" if k >= 0 && (k as usize) < cap && *i <= k as usize => {
                let k = k as usize;
                let table = build_table(&cur, pairs, &idx[k], &idx[k + 1])?;
                (&mut degens[k][*i], table)
            }
            _ => return Err(cur.err(format!("`{word} {k} {i}` not allowed here"))),
        };
        if slot.0.is_some() {
            return Err(cur.err("map given twice"));
        }
        *slot.0 = Some(slot.1);
    }
    let unwrap = |v: Vec<Vec<Option<Vec<usize>>>>, what: &str| -> Result<Vec<Vec<Vec<usize>>>> {
        v.into_iter()
            .enumerate()
            .map(|(k, ts)| {
                ts.into_iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.ok_or_else(|| Error::Parse {
                            path: path.into(),
                            line: 0,
                            message: format!("missing `{what} {k} {i}`"),
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let raw = RawSSet {
        cap,
        stable_from: t.stable,
        names: t.levels.clone(),
        faces: unwrap(faces, "d")?,
        degens: unwrap(degens, "s")?,
    };
    FinSSet::from_raw(raw).map_err(|e| with_path(e, path))
}

pub fn write_xiset(a: &FinXiSet) -> String {
    let mut out = String::from("XISET v1\n");
    let _ = writeln!(out, "cap {}", a.cap());
    if let Some(l) = a.stable_from() {
        let _ = writeln!(out, "stable {l}");
    }
    for k in -1..=a.cap() {
        write_level_line(&mut out, k, a.names(k));
    }
    if a.cap() >= 0 {
        write_map_line(
            &mut out,
            "dnew",
            a.names(0),
            a.names(-1),
            a.face_table(0, 0),
        );
    }
    for k in 1..=a.cap() {
        for i in 0..=k as usize {
            write_map_line(
                &mut out,
                &format!("d {k} {i}"),
                a.names(k),
                a.names(k - 1),
                a.face_table(k, i),
            );
        }
    }
    for k in 0..a.cap() {
        for j in 0..=k as usize {
            let t = a.degen_rep_table(k, j + 1);
            write_map_line(
                &mut out,
                &format!("s {k} {j}"),
                a.names(k),
                a.names(k + 1),
                t,
            );
        }
    }
    for k in -1..a.cap() {
        write_map_line(
            &mut out,
            &format!("sbot {k}"),
            a.names(k),
            a.names(k + 1),
            a.degen_rep_table(k, 0),
        );
    }
    for k in -1..a.cap() {
        let t = a.degen_rep_table(k, (k + 2) as usize);
        write_map_line(
            &mut out,
            &format!("stop {k}"),
            a.names(k),
            a.names(k + 1),
            t,
        );
    }
    out
}

pub fn parse_xiset(text: &str, path: &str) -> Result<FinXiSet> {
    let t = read_presheaf(text, path, "XISET", -1)?;
    let cap = t.cap;
    let levels = (cap + 2) as usize;
    let idx = name_index(&t.levels);
    let mut faces: Vec<Vec<Option<Vec<usize>>>> = (0..levels).map(|l| vec![None; l]).collect();
    let mut degens: Vec<Vec<Option<Vec<usize>>>> = (0..levels)
        .map(|l| {
            if l + 1 == levels {
                vec![]
            } else {
                vec![None; l + 2]
            }
        })
        .collect();
    for (n, (word, k, i), pairs) in &t.maps {
        let cur = Cursor { path, line: *n };
        let (k, i) = (*k, *i);
        let l = (k + 1) as usize;
        let (slot, table) = match word.as_str() {
            "dnew" if cap >= 0 => (
                &mut faces[1][0],
                build_table(&cur, pairs, &idx[1], &idx[0])?,
            ),
            "d" if k >= 1 && k <= cap && i <= k as usize => (
                &mut faces[l][i],
                build_table(&cur, pairs, &idx[l], &idx[l - 1])?,
            ),
            "s" if k >= 0 && k < cap && i <= k as usize => (
                &mut degens[l][i + 1],
                build_table(&cur, pairs, &idx[l], &idx[l + 1])?,
            ),
            "sbot" if k >= -1 && k < cap => (
                &mut degens[l][0],
                build_table(&cur, pairs, &idx[l], &idx[l + 1])?,
            ),
            "stop" if k >= -1 && k < cap => (
                &mut degens[l][l + 1],
                build_table(&cur, pairs, &idx[l], &idx[l + 1])?,
            ),
            _ => return Err(cur.err(format!("`{word}` line not allowed here"))),
        };
        if slot.is_some() {
            return Err(cur.err("map given twice"));
        }
        *slot = Some(table);
    }
    let unwrap = |v: Vec<Vec<Option<Vec<usize>>>>| -> Result<Vec<Vec<Vec<usize>>>> {
        v.into_iter()
            .enumerate()
            .map(|(l, ts)| {
                ts.into_iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.ok_or_else(|| Error::Parse {
                            path: path.into(),
                            line: 0,
                            message: format!(
                                "missing structure map {i} in degree {}",
                                l as isize - 1
                            ),
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let raw = RawXiSet {
        cap,
        stable_from: t.stable,
        names: t.levels.clone(),
        faces: unwrap(faces)?,
        degens: unwrap(degens)?,
    };
    FinXiSet::from_raw(raw).map_err(|e| with_path(e, path))
}

/// A parsed `SMAP v1` file, before its endpoints are loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapText {
    pub dom: String,
    pub cod: String,
    pub levels: Vec<(isize, Vec<(String, String)>)>,
}

pub fn parse_smap(text: &str, path: &str) -> Result<MapText> {
    expect_header(text, path, "SMAP")?;
    let (mut dom, mut cod) = (None, None);
    let mut levels = Vec::new();
    for (n, line) in content_lines(text).skip(1) {
        let cur = Cursor { path, line: n };
        let word = line.split_whitespace().next().unwrap_or("");
        match word {
            "dom" => dom = Some(line[3..].trim().to_string()),
            "cod" => cod = Some(line[3..].trim().to_string()),
            "level" => {
                let (head, body) = split_colon(&cur, line)?;
                let k: isize = cur.int(head[5..].trim())?;
                let pairs = parse_pairs(&cur, body)?
                    .into_iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect();
                levels.push((k, pairs));
            }
            _ => return Err(cur.err(format!("unknown directive `{word}`"))),
        }
    }
    let missing = |w: &str| Error::Parse {
        path: path.into(),
        line: 0,
        message: format!("missing `{w}`"),
    };
    Ok(MapText {
        dom: dom.ok_or_else(|| missing("dom"))?,
        cod: cod.ok_or_else(|| missing("cod"))?,
        levels,
    })
}

fn components_from_text(
    m: &MapText,
    first: isize,
    last: isize,
    dom_names: impl Fn(isize) -> Vec<String>,
    cod_names: impl Fn(isize) -> Vec<String>,
) -> Result<Vec<Vec<usize>>> {
    let mut comps: Vec<Option<Vec<usize>>> = vec![None; (last - first + 1) as usize];
    for (k, pairs) in &m.levels {
        let cur = Cursor {
            path: "map",
            line: 0,
        };
        if *k < first || *k > last {
            return Err(cur.err(format!("level {k} out of range")));
        }
        let dn = dom_names(*k);
        let cn = cod_names(*k);
        let di: HashMap<&str, usize> = dn
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let ci: HashMap<&str, usize> = cn
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let borrowed: Vec<(&str, &str)> = pairs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        comps[(k - first) as usize] = Some(build_table(&cur, &borrowed, &di, &ci)?);
    }
    comps
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| Error::invalid(format!("missing level {}", i as isize + first)))
        })
        .collect()
}

pub fn sset_map_from_text(
    m: &MapText,
    dom: std::sync::Arc<FinSSet>,
    cod: std::sync::Arc<FinSSet>,
) -> Result<SSetMap> {
    let comps = components_from_text(
        m,
        0,
        dom.cap() as isize,
        |k| dom.names(k as usize).to_vec(),
        |k| cod.names(k as usize).to_vec(),
    )?;
    SSetMap::new(dom, cod, comps)
}

pub fn xiset_map_from_text(
    m: &MapText,
    dom: std::sync::Arc<FinXiSet>,
    cod: std::sync::Arc<FinXiSet>,
) -> Result<XiSetMap> {
    let comps = components_from_text(
        m,
        -1,
        dom.cap(),
        |k| dom.names(k).to_vec(),
        |k| cod.names(k).to_vec(),
    )?;
    XiSetMap::new(dom, cod, comps)
}

pub fn write_sset_map(f: &SSetMap, dom: &str, cod: &str) -> String {
    let mut out = format!("SMAP v1\ndom {dom}\ncod {cod}\n");
    for k in 0..=f.dom().cap() {
        write_map_line(
            &mut out,
            &format!("level {k}"),
            f.dom().names(k),
            f.cod().names(k),
            f.component(k),
        );
    }
    out
}

pub fn write_xiset_map(f: &XiSetMap, dom: &str, cod: &str) -> String {
    let mut out = format!("SMAP v1\ndom {dom}\ncod {cod}\n");
    for k in -1..=f.dom().cap() {
        write_map_line(
            &mut out,
            &format!("level {k}"),
            f.dom().names(k),
            f.cod().names(k),
            f.component(k),
        );
    }
    out
}

pub fn parse_poset(text: &str, path: &str) -> Result<PosetSpec> {
    expect_header(text, path, "POSET")?;
    let mut spec = PosetSpec::default();
    for (n, line) in content_lines(text).skip(1) {
        let cur = Cursor { path, line: n };
        let mut words = line.split_whitespace();
        match words.next() {
            Some("elements") => spec.elements.extend(words.map(str::to_string)),
            Some("le") => {
                let v: Vec<&str> = words.collect();
                if v.len() != 2 {
                    return Err(cur.err("`le` takes two elements"));
                }
                spec.le.push((v[0].to_string(), v[1].to_string()));
            }
            Some(w) => return Err(cur.err(format!("unknown directive `{w}`"))),
            None => {}
        }
    }
    Ok(spec)
}

pub fn write_poset(spec: &PosetSpec) -> String {
    let mut out = String::from("POSET v1\n");
    let mut elements = spec.elements.clone();
    elements.sort();
    let _ = writeln!(out, "elements {}", elements.join(" "));
    let mut le = spec.le.clone();
    le.sort();
    for (a, b) in le {
        let _ = writeln!(out, "le {a} {b}");
    }
    out
}

pub fn parse_monoid(text: &str, path: &str) -> Result<MonoidSpec> {
    expect_header(text, path, "MONOID")?;
    let mut elements: Vec<String> = Vec::new();
    let mut unit = None;
    let mut rows: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (n, line) in content_lines(text).skip(1) {
        let cur = Cursor { path, line: n };
        let word = line.split_whitespace().next().unwrap_or("");
        match word {
            "elements" => elements.extend(line.split_whitespace().skip(1).map(str::to_string)),
            "unit" => unit = Some(line[4..].trim().to_string()),
            "row" => {
                let (head, body) = split_colon(&cur, line)?;
                let x = head[3..].trim().to_string();
                rows.push((n, x, body.split_whitespace().map(str::to_string).collect()));
            }
            _ => return Err(cur.err(format!("unknown directive `{word}`"))),
        }
    }
    let unit = unit.ok_or_else(|| Error::Parse {
        path: path.into(),
        line: 0,
        message: "missing `unit`".into(),
    })?;
    let pos: HashMap<&str, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut table: Vec<Option<Vec<Option<usize>>>> = vec![None; elements.len()];
    for (n, x, entries) in &rows {
        let cur = Cursor { path, line: *n };
        let &i = pos
            .get(x.as_str())
            .ok_or_else(|| cur.err(format!("unknown element `{x}`")))?;
        if entries.len() != elements.len() {
            return Err(cur.err(format!(
                "row `{x}` has {} entries, expected {}",
                entries.len(),
                elements.len()
            )));
        }
        let row = entries
            .iter()
            .map(|e| {
                if e == "-" {
                    Ok(None)
                } else {
                    pos.get(e.as_str())
                        .map(|&j| Some(j))
                        .ok_or_else(|| cur.err(format!("unknown element `{e}`")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if table[i].replace(row).is_some() {
            return Err(cur.err(format!("row `{x}` given twice")));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.ok_or_else(|| Error::Parse {
                path: path.into(),
                line: 0,
                message: format!("missing row `{}`", elements[i]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidSpec {
        elements,
        unit,
        table,
    })
}

pub fn write_monoid(spec: &MonoidSpec) -> String {
    let mut out = String::from("MONOID v1\n");
    let _ = writeln!(out, "elements {}", spec.elements.join(" "));
    let _ = writeln!(out, "unit {}", spec.unit);
    for (x, row) in spec.elements.iter().zip(&spec.table) {
        let entries: Vec<&str> = row
            .iter()
            .map(|e| e.map_or("-", |j| spec.elements[j].as_str()))
            .collect();
        let _ = writeln!(out, "row {x}: {}", entries.join(" "));
    }
    out
}

pub fn parse_category(text: &str, path: &str) -> Result<CategorySpec> {
    expect_header(text, path, "CAT")?;
    let mut spec = CategorySpec::default();
    for (n, line) in content_lines(text).skip(1) {
        let cur = Cursor { path, line: n };
        let v: Vec<&str> = line.split_whitespace().collect();
        match (v[0], v.len()) {
            ("ob", _) => spec.objects.extend(v[1..].iter().map(|s| s.to_string())),
            ("id", 3) => spec.identities.push((v[1].to_string(), v[2].to_string())),
            ("arr", 4) => spec
                .arrows
                .push((v[1].to_string(), v[2].to_string(), v[3].to_string())),
            ("comp", 4) => {
                spec.composites
                    .push((v[1].to_string(), v[2].to_string(), v[3].to_string()))
            }
            (w, _) => return Err(cur.err(format!("malformed `{w}` line"))),
        }
    }
    Ok(spec)
}

pub fn write_category(spec: &CategorySpec) -> String {
    let mut out = String::from("CAT v1\n");
    let _ = writeln!(out, "ob {}", spec.objects.join(" "));
    for (o, i) in &spec.identities {
        let _ = writeln!(out, "id {o} {i}");
    }
    for (f, s, t) in &spec.arrows {
        let _ = writeln!(out, "arr {f} {s} {t}");
    }
    for (f, g, h) in &spec.composites {
        let _ = writeln!(out, "comp {f} {g} {h}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sset_round_trip_is_byte_identical() {
        let x = FinSSet::representable(2, 3).unwrap();
        let text = write_sset(&x);
        let y = parse_sset(&text, "t").unwrap();
        assert_eq!(x, y);
        assert_eq!(write_sset(&y), text);
        assert!(!text.contains(" \n") && !text.contains('\r'));
    }

    #[test]
    fn xiset_round_trip_is_byte_identical() {
        let a = FinXiSet::representable(1, 2).unwrap();
        let text = write_xiset(&a);
        let b = parse_xiset(&text, "t").unwrap();
        assert_eq!(a, b);
        assert_eq!(write_xiset(&b), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "SSET v1\ncap 2\nlevel 0: a\nbogus line\n";
        match parse_sset(text, "f.sset") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let text = "SSET v1\ncap 1\nlevel 0: a\nlevel 1: e\nd 1 0: e->a\ns 0 0: a->e\n";
        match parse_sset(text, "f.sset") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("d 1 1"), "{message}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# point\nSSET v1\ncap 1\n\nlevel 0: a # vertex\nlevel 1: e\nd 1 0: e->a\nd 1 1: e->a\ns 0 0: a->e\n";
        let x = parse_sset(text, "t").unwrap();
        assert_eq!(x.level_sizes(), vec![1, 1]);
    }

    #[test]
    fn monoid_round_trip() {
        let text = "MONOID v1\nelements 0 1 2\nunit 0\nrow 0: 0 1 2\nrow 1: 1 2 -\nrow 2: 2 - -\n";
        let m = parse_monoid(text, "t").unwrap();
        assert_eq!(m.table[1][1], Some(2));
        assert_eq!(m.table[2][1], None);
        assert_eq!(write_monoid(&m), text);
    }
}
