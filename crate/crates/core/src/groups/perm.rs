use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::GroupError;

/// A permutation of `{0, …, n-1}`, stored as its image list.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `(a*b)(x) = a(b(x))`: apply `b` first.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut out = alloc::vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

pub fn is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Sorted cycle lengths (fixed points included).
pub fn cycle_type(a: &[u32]) -> Vec<usize> {
    let mut seen = alloc::vec![false; a.len()];
    let mut out = Vec::new();
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Parses cycle notation on the points `1..=n`, e.g. `(1 2 3)(4 5)`.
/// Commas may separate points; `()` is the identity.
pub fn parse_cycles(s: &str, n: usize) -> Result<Perm, GroupError> {
    let mut perm = identity(n);
    let mut seen = alloc::vec![false; n];
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(GroupError::Parse(alloc::format!("expected '(' in {s:?}")));
        }
        let close = rest.find(')').ok_or_else(|| GroupError::Parse(alloc::format!("unclosed cycle in {s:?}")))?;
        let body = &rest[1..close];
        let mut pts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| GroupError::Parse(alloc::format!("bad point {tok:?}")))?;
            if v == 0 || v > n {
                return Err(GroupError::Parse(alloc::format!("point {v} outside 1..={n}")));
            }
            if seen[v - 1] {
                return Err(GroupError::Parse(alloc::format!("point {v} repeated")));
            }
            seen[v - 1] = true;
            pts.push(v - 1);
        }
        for k in 0..pts.len() {
            perm[pts[k]] = pts[(k + 1) % pts.len()] as u32;
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Cycle notation on the points `1..=n`, omitting fixed points.
pub fn format_cycles(a: &[u32]) -> String {
    let mut seen = alloc::vec![false; a.len()];
    let mut s = String::new();
    for start in 0..a.len() {
        if seen[start] || a[start] as usize == start {
            continue;
        }
        s.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                s.push(' ');
            }
            first = false;
            let _ = write!(s, "{}", x + 1);
            x = a[x] as usize;
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}
