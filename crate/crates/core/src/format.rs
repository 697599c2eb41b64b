//! The `.psg` and `.pds` text formats.
//!
//! ```text
//! psg 1
//! n 3
//! names a b c
//! 0 1 .
//! 1 . .
//! . . 2
//! ```
//!
//! ```text
//! pds 1
//! semigroup shift.psg
//! points 3
//! pointnames x y z
//! map 0: 1 . 2
//! map 1: . . 2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Emission is
//! canonical: single spaces, no comments, trailing newline.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::dynamics::{PartialDynSystem, PartialMap};
use crate::error::{Error, Result};
use crate::semigroup::PartialSemigroup;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_cell(tok: &str, bound: usize, line: usize) -> Result<Option<usize>> {
    if tok == "." {
        return Ok(None);
    }
    let v: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("expected an index or '.', found {tok:?}")))?;
    if v >= bound {
        return Err(parse_err(line, format!("index {v} is out of range for {bound}")));
    }
    Ok(Some(v))
}

fn expect_keyword<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    last: usize,
) -> Result<(usize, Vec<&'a str>)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(last, format!("missing {keyword:?} line")))?;
    let mut toks = line.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(parse_err(no, format!("expected {keyword:?}")));
    }
    Ok((no, toks.collect()))
}

fn parse_count(no: usize, toks: &[&str], what: &str) -> Result<usize> {
    match toks {
        [v] => v
            .parse()
            .map_err(|_| parse_err(no, format!("{what} must be a nonnegative integer"))),
        _ => Err(parse_err(no, format!("expected exactly one {what}"))),
    }
}

fn check_names(no: usize, names: &[&str], expected: usize) -> Result<Vec<String>> {
    if names.len() != expected {
        return Err(parse_err(
            no,
            format!("expected {expected} names, found {}", names.len()),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(*n) {
            return Err(parse_err(no, format!("duplicate name {n:?}")));
        }
    }
    Ok(names.iter().map(|s| s.to_string()).collect())
}

/// Parses a `.psg` file. Weak associativity is not checked here.
pub fn parse_psg(text: &str) -> Result<PartialSemigroup> {
    let mut lines = content_lines(text).peekable();
    let (no, header) = expect_keyword(&mut lines, "psg", 1)?;
    if header != ["1"] {
        return Err(parse_err(no, "unsupported psg version"));
    }
    let (no, toks) = expect_keyword(&mut lines, "n", no)?;
    let n = parse_count(no, &toks, "size")?;
    if n == 0 {
        return Err(parse_err(no, "size must be positive"));
    }
    let mut last = no;
    let mut names = None;
    if let Some(&(no, line)) = lines.peek() {
        if line.split_whitespace().next() == Some("names") {
            let toks: Vec<&str> = line.split_whitespace().skip(1).collect();
            names = Some(check_names(no, &toks, n)?);
            lines.next();
            last = no;
        }
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(last, format!("expected {n} table rows")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != n {
            return Err(parse_err(no, format!("expected {n} entries, found {}", toks.len())));
        }
        rows.push(
            toks.iter()
                .map(|t| parse_cell(t, n, no))
                .collect::<Result<Vec<_>>>()?,
        );
        last = no;
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "unexpected content after the table"));
    }
    let s = PartialSemigroup::from_rows(rows)?;
    match names {
        Some(names) => s.with_names(names),
        None => Ok(s),
    }
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| ".".to_string(), |v| v.to_string())
}

pub fn emit_psg(s: &PartialSemigroup) -> String {
    let mut out = format!("psg 1\nn {}\n", s.size());
    if let Some(names) = s.names() {
        let _ = writeln!(out, "names {}", names.join(" "));
    }
    for row in s.rows() {
        let cells: Vec<String> = row.into_iter().map(cell).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

/// A parsed `.pds` file before its semigroup is loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdsFile {
    pub semigroup: String,
    pub points: usize,
    pub point_names: Option<Vec<String>>,
    pub maps: Vec<Vec<Option<usize>>>,
}

pub fn parse_pds(text: &str) -> Result<PdsFile> {
    let mut lines = content_lines(text).peekable();
    let (no, header) = expect_keyword(&mut lines, "pds", 1)?;
    if header != ["1"] {
        return Err(parse_err(no, "unsupported pds version"));
    }
    let (no, toks) = expect_keyword(&mut lines, "semigroup", no)?;
    let semigroup = match toks.as_slice() {
        [p] => p.to_string(),
        _ => return Err(parse_err(no, "expected one semigroup path")),
    };
    let (no, toks) = expect_keyword(&mut lines, "points", no)?;
    let points = parse_count(no, &toks, "point count")?;
    let mut point_names = None;
    if let Some(&(no, line)) = lines.peek() {
        if line.split_whitespace().next() == Some("pointnames") {
            let toks: Vec<&str> = line.split_whitespace().skip(1).collect();
            point_names = Some(check_names(no, &toks, points)?);
            lines.next();
        }
    }
    let mut maps: Vec<Option<Vec<Option<usize>>>> = Vec::new();
    for (no, line) in lines {
        let rest = line
            .strip_prefix("map ")
            .ok_or_else(|| parse_err(no, "expected a map line"))?;
        let (idx, images) = rest
            .split_once(':')
            .ok_or_else(|| parse_err(no, "expected ':' after the element index"))?;
        let s: usize = idx
            .trim()
            .parse()
            .map_err(|_| parse_err(no, "element index must be an integer"))?;
        let toks: Vec<&str> = images.split_whitespace().collect();
        if toks.len() != points {
            return Err(parse_err(
                no,
                format!("expected {points} images, found {}", toks.len()),
            ));
        }
        let image = toks
            .iter()
            .map(|t| parse_cell(t, points, no))
            .collect::<Result<Vec<_>>>()?;
        if maps.len() <= s {
            maps.resize(s + 1, None);
        }
        if maps[s].is_some() {
            return Err(parse_err(no, format!("duplicate map for element {s}")));
        }
        maps[s] = Some(image);
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(s, m)| m.ok_or_else(|| parse_err(0, format!("missing map for element {s}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PdsFile {
        semigroup,
        points,
        point_names,
        maps,
    })
}

impl PdsFile {
    pub fn into_system(self, s: PartialSemigroup) -> Result<PartialDynSystem> {
        if self.maps.len() != s.size() {
            return Err(parse_err(
                0,
                format!(
                    "{} maps for a semigroup of size {}",
                    self.maps.len(),
                    s.size()
                ),
            ));
        }
        let maps = self
            .maps
            .into_iter()
            .map(|m| PartialMap::new(self.points, m))
            .collect::<Result<Vec<_>>>()?;
        let d = PartialDynSystem::new(s, self.points, maps)?;
        match self.point_names {
            Some(n) => d.with_point_names(n),
            None => Ok(d),
        }
    }
}

pub fn emit_pds(d: &PartialDynSystem, semigroup_path: &str) -> String {
    let mut out = format!("pds 1\nsemigroup {semigroup_path}\npoints {}\n", d.points());
    if let Some(names) = d.point_names() {
        let _ = writeln!(out, "pointnames {}", names.join(" "));
    }
    for (s, m) in d.maps().iter().enumerate() {
        let cells: Vec<String> = m.images().into_iter().map(cell).collect();
        let _ = write!(out, "map {s}:");
        for c in cells {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Loads a `.pds` file and the `.psg` it names, resolved against the
/// directory of the `.pds` file. Returns the system and the semigroup path.
pub fn load_pds(path: &Path) -> Result<(PartialDynSystem, PathBuf)> {
    let file = parse_pds(&read_text(path)?)?;
    let psg_path = path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(&file.semigroup);
    let s = parse_psg(&read_text(&psg_path)?)?;
    Ok((file.into_system(s)?, psg_path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn psg_round_trip() {
        for entry in families::named_corpus() {
            let text = emit_psg(&entry.semigroup);
            let parsed = parse_psg(&text).unwrap();
            assert_eq!(parsed, entry.semigroup, "{}", entry.label);
            assert_eq!(emit_psg(&parsed), text);
        }
    }

    #[test]
    fn psg_parse_errors() {
        assert!(matches!(parse_psg("psg 2\nn 1\n0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_psg("psg 1\nn 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_psg("psg 1\nn 2\n0 2\n. .\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(
            parse_psg("psg 1\nn 2\nnames a a\n0 1\n. .\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_psg("# comment\npsg 1\n\nn 1\n0\n").is_ok());
    }

    #[test]
    fn pds_round_trip() {
        let d = families::bounded_words_shift_system(3).unwrap();
        let text = emit_pds(&d, "shift.psg");
        let file = parse_pds(&text).unwrap();
        assert_eq!(file.semigroup, "shift.psg");
        let back = file.into_system(d.semigroup().clone()).unwrap();
        assert_eq!(back, d);
        assert_eq!(emit_pds(&back, "shift.psg"), text);
    }

    #[test]
    fn pds_parse_errors() {
        assert!(parse_pds("pds 1\nsemigroup a.psg\npoints 2\nmap 0: 0\n").is_err());
        assert!(parse_pds("pds 1\nsemigroup a.psg\npoints 1\nmap 1: 0\n").is_err());
        assert!(parse_pds("pds 1\nsemigroup a.psg\npoints 1\nmap 0: 0\nmap 0: 0\n").is_err());
    }
}
