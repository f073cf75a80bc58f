//! Group files, character-table CSVs and the shipped fixtures.

use std::path::Path;
use std::sync::Arc;

use brauerlift_core::galgebra::chars::{CharacterRow, CharacterTable, TableClass};
use brauerlift_core::groups::perm::parse_cycles;
use brauerlift_core::groups::PermGroup;

use crate::CliError;

/// A fixture: group generators, an optional character table and the group order.
pub struct Fixture {
    pub name: &'static str,
    pub group: &'static str,
    pub table: Option<&'static str>,
    pub order: usize,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "a4", group: include_str!("../fixtures/a4.txt"), table: Some(include_str!("../fixtures/a4.csv")), order: 12 },
    Fixture {
        name: "borel21",
        group: include_str!("../fixtures/borel21.txt"),
        table: Some(include_str!("../fixtures/borel21.csv")),
        order: 21,
    },
    Fixture { name: "c7", group: include_str!("../fixtures/c7.txt"), table: None, order: 7 },
    Fixture {
        name: "psl27",
        group: include_str!("../fixtures/psl27.txt"),
        table: Some(include_str!("../fixtures/psl27.csv")),
        order: 168,
    },
    Fixture { name: "s3", group: include_str!("../fixtures/s3.txt"), table: Some(include_str!("../fixtures/s3.csv")), order: 6 },
    Fixture { name: "trivial", group: include_str!("../fixtures/trivial.txt"), table: None, order: 1 },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// The texts behind a group argument.
pub struct Sources {
    pub name: String,
    pub group: String,
    /// File name and contents of the character table.
    pub table: Option<(String, String)>,
}

/// Group and table text for a fixture name or a file path; a path `g.txt` picks
/// up `g.csv` next to it when present.
pub fn load_sources(spec: &str, table: Option<&Path>) -> Result<Sources, CliError> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())));
    let (name, group, mut csv) = match fixture(spec) {
        Some(f) => (f.name.to_string(), f.group.to_string(), f.table.map(|t| (format!("{}.csv", f.name), t.to_string()))),
        None => {
            let path = Path::new(spec);
            if !path.is_file() {
                let names: Vec<&str> = FIXTURES.iter().map(|f| f.name).collect();
                return Err(CliError::Config(format!("`{spec}` is neither a fixture ({}) nor a group file", names.join(", "))));
            }
            let sibling = path.with_extension("csv");
            let csv = if sibling.is_file() { Some((sibling.display().to_string(), read(&sibling)?)) } else { None };
            (spec.to_string(), read(path)?, csv)
        }
    };
    if let Some(t) = table {
        csv = Some((t.display().to_string(), read(t)?));
    }
    Ok(Sources { name, group, table: csv })
}

fn parse_error(file: &str, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { file: file.to_string(), line, msg: msg.into() }
}

/// Parses `degree=n` followed by one generator per line in cycle notation.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_group(file: &str, text: &str) -> Result<Arc<PermGroup>, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or_else(|| parse_error(file, 1, "empty group file"))?;
    let degree: usize = first
        .strip_prefix("degree=")
        .and_then(|d| d.trim().parse().ok())
        .filter(|&d| d >= 1)
        .ok_or_else(|| parse_error(file, ln, format!("expected `degree=n`, found `{first}`")))?;
    let mut gens = Vec::new();
    for (ln, l) in lines {
        gens.push(parse_cycles(l, degree).map_err(|e| parse_error(file, ln, e.to_string()))?);
    }
    PermGroup::new(degree, gens).map(Arc::new).map_err(|e| CliError::Compute(e.to_string()))
}

/// A polynomial in the root of unity `z`, e.g. `-1-2z^3+z`.
pub fn parse_poly(s: &str) -> Result<Vec<i64>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty value".into());
    }
    let mut out = vec![0i64];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let neg = rest.starts_with('-');
        if neg || rest.starts_with('+') {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let bad = || format!("cannot parse term `{term}` of `{s}`");
        let (coef, exp) = match term.find('z') {
            None => (term.parse::<i64>().map_err(|_| bad())?, 0),
            Some(i) => {
                let c = match term[..i].trim_end_matches('*') {
                    "" => 1,
                    c => c.parse().map_err(|_| bad())?,
                };
                let e = match &term[i + 1..] {
                    "" => 1,
                    e => e.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?,
                };
                (c, e)
            }
        };
        if out.len() <= exp {
            out.resize(exp + 1, 0);
        }
        out[exp] += if neg { -coef } else { coef };
    }
    Ok(out)
}

/// Parses a character table: a header `conductor=K,degree,label|size|cycles,...`
/// and one row `label,degree,values...` per character.
pub fn parse_table(file: &str, text: &str, degree: usize) -> Result<CharacterTable, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| parse_error(file, 1, "empty table"))?;
    let cells: Vec<&str> = header.split(',').map(str::trim).collect();
    let conductor = cells[0]
        .strip_prefix("conductor=")
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| parse_error(file, ln, format!("expected `conductor=K`, found `{}`", cells[0])))?;
    if cells.len() < 3 || cells[1] != "degree" {
        return Err(parse_error(file, ln, "header must read `conductor=K,degree,` followed by classes"));
    }
    let mut classes = Vec::new();
    for cell in &cells[2..] {
        let parts: Vec<&str> = cell.split('|').collect();
        if parts.len() != 3 {
            return Err(parse_error(file, ln, format!("class `{cell}` is not `label|size|cycles`")));
        }
        let size = parts[1].parse().map_err(|_| parse_error(file, ln, format!("bad class size `{}`", parts[1])))?;
        let rep = parse_cycles(parts[2], degree).map_err(|e| parse_error(file, ln, e.to_string()))?;
        classes.push(TableClass { label: parts[0].into(), size, rep });
    }
    let mut rows = Vec::new();
    for (ln, l) in lines {
        let cells: Vec<&str> = l.split(',').map(str::trim).collect();
        if cells.len() != classes.len() + 2 {
            return Err(parse_error(file, ln, format!("expected {} cells, found {}", classes.len() + 2, cells.len())));
        }
        let values = cells[2..].iter().map(|c| parse_poly(c)).collect::<Result<Vec<_>, _>>().map_err(|e| parse_error(file, ln, e))?;
        rows.push(CharacterRow { label: cells[0].into(), values });
    }
    Ok(CharacterTable { conductor, classes, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("1").unwrap(), vec![1]);
        assert_eq!(parse_poly("-1-2z^3+z").unwrap(), vec![-1, 1, 0, -2]);
        assert_eq!(parse_poly("z^2").unwrap(), vec![0, 0, 1]);
        assert_eq!(parse_poly("3*z").unwrap(), vec![0, 3]);
        assert!(parse_poly("2y").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_group("g", "degree=3\n\n(1 2 3)\n(1 4)\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_group("g", "deg=3\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        let csv = "conductor=1,degree,1A|1|(),3A|2|(1 2 3)\n1,1,1,1\nx,2,2,q\n";
        match parse_table("t", csv, 3) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fixtures_parse() {
        for f in FIXTURES {
            let g = parse_group(f.name, f.group).unwrap();
            assert_eq!(g.order(), f.order, "{}", f.name);
            if let Some(t) = f.table {
                let t = parse_table(f.name, t, g.degree()).unwrap();
                t.check(g.order() as u64).unwrap();
            }
        }
    }
}
