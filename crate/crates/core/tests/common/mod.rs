#![allow(dead_code)]

use std::sync::Arc;

use brauerlift_core::coeff::{choose_coefficient_field, field_of_size, GaloisRing};
use brauerlift_core::galgebra::chars::{CharacterRow, CharacterTable, TableClass};
use brauerlift_core::galgebra::GroupAlgebra;
use brauerlift_core::groups::perm::parse_cycles;
use brauerlift_core::groups::PermGroup;

pub const PSL27: &str = include_str!("../../../cli/fixtures/psl27.txt");
pub const BOREL21: &str = include_str!("../../../cli/fixtures/borel21.txt");
pub const A4: &str = include_str!("../../../cli/fixtures/a4.txt");
pub const S3: &str = include_str!("../../../cli/fixtures/s3.txt");
pub const C7: &str = include_str!("../../../cli/fixtures/c7.txt");
pub const PSL27_CSV: &str = include_str!("../../../cli/fixtures/psl27.csv");
pub const BOREL21_CSV: &str = include_str!("../../../cli/fixtures/borel21.csv");
pub const A4_CSV: &str = include_str!("../../../cli/fixtures/a4.csv");
pub const S3_CSV: &str = include_str!("../../../cli/fixtures/s3.csv");

pub fn group(text: &str) -> Arc<PermGroup> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines.next().unwrap().trim().strip_prefix("degree=").unwrap().parse().unwrap();
    let gens = lines.map(|l| parse_cycles(l, n).unwrap()).collect();
    Arc::new(PermGroup::new(n, gens).unwrap())
}

fn poly(s: &str) -> Vec<i64> {
    let s = s.replace('-', "+-");
    let mut out = vec![0i64; 1];
    for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (neg, t) = match term.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, term),
        };
        let (coef, exp) = match t.find('z') {
            None => (t.parse::<i64>().unwrap(), 0),
            Some(i) => {
                let c = if i == 0 { 1 } else { t[..i].trim_end_matches('*').parse().unwrap() };
                let e = t[i + 1..].strip_prefix('^').map_or(1, |e| e.parse().unwrap());
                (c, e)
            }
        };
        if out.len() <= exp {
            out.resize(exp + 1, 0);
        }
        out[exp] += if neg { -coef } else { coef };
    }
    out
}

pub fn table(text: &str, degree: usize) -> CharacterTable {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let conductor = header[0].strip_prefix("conductor=").unwrap().parse().unwrap();
    let classes = header[2..]
        .iter()
        .map(|cell| {
            let parts: Vec<&str> = cell.split('|').collect();
            TableClass { label: parts[0].into(), size: parts[1].parse().unwrap(), rep: parse_cycles(parts[2], degree).unwrap() }
        })
        .collect();
    let rows = lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            CharacterRow { label: cells[0].into(), values: cells[2..].iter().map(|c| poly(c)).collect() }
        })
        .collect();
    CharacterTable { conductor, classes, rows }
}

pub fn algebra(g: &Arc<PermGroup>, p: u32, n: u32) -> GroupAlgebra {
    let spec = choose_coefficient_field(g, p).unwrap();
    GroupAlgebra::new(GaloisRing::new(spec, n).unwrap(), g.clone())
}

pub fn algebra_q(g: &Arc<PermGroup>, p: u32, q: u64, n: u32) -> GroupAlgebra {
    let spec = field_of_size(p, q).unwrap();
    GroupAlgebra::new(GaloisRing::new(spec, n).unwrap(), g.clone())
}
