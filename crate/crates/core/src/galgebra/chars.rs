//! Ordinary character tables with values in `Z[ζ_n]`, stored as integer
//! polynomials in `ζ_n`. A row may be the sum of a Galois orbit of
//! irreducible characters that do not split over the coefficient ring;
//! its norm `⟨χ, χ⟩` is then the orbit length.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use super::{Blocks, Center};
use crate::algebra::Algebra;
use crate::coeff::{GaloisRing, Gr};
use crate::groups::{ConjugacyClasses, Perm, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("character table mismatch: {0}")]
    TableMismatch(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct TableClass {
    pub label: String,
    pub size: u64,
    pub rep: Perm,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub label: String,
    /// One polynomial in `ζ_n` per class, constant term first.
    pub values: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub conductor: u32,
    pub classes: Vec<TableClass>,
    pub rows: Vec<CharacterRow>,
}

/// The cyclotomic polynomial `Φ_n`.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n − 1 divided by Φ_d for the proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k];
        q[k - db] = c;
        for i in 0..=db {
            r[k - db + i] -= c * b[i];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Arithmetic in `Z[ζ_n] = Z[x]/Φ_n`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    phi: Vec<i64>,
}

impl Cyclotomic {
    pub fn new(n: u32) -> Self {
        Cyclotomic { n, phi: cyclotomic_poly(n) }
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<i64> {
        // fold x^k into x^(k mod n) first, then reduce mod Φ_n
        let n = self.n as usize;
        let mut v = vec![0i64; n.max(1)];
        for (k, &c) in a.iter().enumerate() {
            v[k % n] += c;
        }
        let d = self.phi.len() - 1;
        for k in (d..v.len()).rev() {
            let c = v[k];
            if c == 0 {
                continue;
            }
            for i in 0..=d {
                v[k - d + i] -= c * self.phi[i];
            }
        }
        v.truncate(d.max(1));
        v
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(&out)
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self, a: &[i64]) -> Vec<i64> {
        let n = self.n as usize;
        let mut out = vec![0i64; n.max(1)];
        for (k, &c) in a.iter().enumerate() {
            out[(n - k % n) % n] += c;
        }
        self.reduce(&out)
    }

    pub fn as_integer(&self, a: &[i64]) -> Option<i64> {
        let r = self.reduce(a);
        r.iter().skip(1).all(|&c| c == 0).then(|| r[0])
    }
}

impl CharacterTable {
    fn identity_class(&self) -> Result<usize, TableError> {
        self.classes
            .iter()
            .position(|c| crate::groups::perm::is_identity(&c.rep))
            .ok_or_else(|| TableError::TableMismatch("no identity class".into()))
    }

    pub fn degrees(&self) -> Result<Vec<i64>, TableError> {
        let cy = Cyclotomic::new(self.conductor);
        let id = self.identity_class()?;
        self.rows
            .iter()
            .map(|r| {
                cy.as_integer(&r.values[id])
                    .ok_or_else(|| TableError::TableMismatch(format!("degree of {} is not an integer", r.label)))
            })
            .collect()
    }

    /// Checks both orthogonality relations exactly and returns the norm of each
    /// row (the length of its Galois orbit).
    pub fn check(&self, group_order: u64) -> Result<Vec<u32>, TableError> {
        let cy = Cyclotomic::new(self.conductor);
        let mismatch = |m: String| TableError::TableMismatch(m);
        for r in &self.rows {
            if r.values.len() != self.classes.len() {
                return Err(mismatch(format!("row {} has {} values", r.label, r.values.len())));
            }
        }
        if self.classes.iter().map(|c| c.size).sum::<u64>() != group_order {
            return Err(mismatch("class sizes do not sum to the group order".into()));
        }
        let mut norms = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate().skip(i) {
                let mut acc = vec![0i64];
                for (k, c) in self.classes.iter().enumerate() {
                    let t = cy.mul(&a.values[k], &cy.conj(&b.values[k]));
                    let t: Vec<i64> = t.iter().map(|x| x * c.size as i64).collect();
                    acc = add_poly(&acc, &t);
                }
                let v = cy
                    .as_integer(&acc)
                    .ok_or_else(|| mismatch(format!("inner product of {} and {} is irrational", a.label, b.label)))?;
                if i == j {
                    if v <= 0 || v % group_order as i64 != 0 {
                        return Err(mismatch(format!("norm of {} is {v}/{group_order}", a.label)));
                    }
                    norms.push((v / group_order as i64) as u32);
                } else if v != 0 {
                    return Err(mismatch(format!("{} and {} are not orthogonal", a.label, b.label)));
                }
            }
        }
        let degrees = self.degrees()?;
        let total: i64 = degrees.iter().zip(&norms).map(|(&d, &k)| d * d / k as i64).sum();
        if total != group_order as i64 {
            return Err(mismatch(format!("sum of squared degrees is {total}, expected {group_order}")));
        }
        let irreducible_count: u32 = norms.iter().sum();
        if irreducible_count as usize != self.classes.len() {
            return Err(mismatch(format!("{irreducible_count} irreducibles for {} classes", self.classes.len())));
        }
        Ok(norms)
    }

    /// For each conjugacy class of `g`, the table column describing it.
    pub fn match_classes(&self, g: &PermGroup, classes: &ConjugacyClasses) -> Result<Vec<usize>, TableError> {
        let mut col_of = vec![usize::MAX; classes.len()];
        for (t, c) in self.classes.iter().enumerate() {
            let idx = g
                .index_of(&c.rep)
                .ok_or_else(|| TableError::TableMismatch(format!("class rep of {} is not in the group", c.label)))?;
            let k = classes.class_of[idx as usize] as usize;
            if classes.classes[k].elements.len() as u64 != c.size {
                return Err(TableError::TableMismatch(format!("class {} has size {}", c.label, classes.classes[k].elements.len())));
            }
            if col_of[k] != usize::MAX {
                return Err(TableError::TableMismatch(format!("class {} listed twice", c.label)));
            }
            col_of[k] = t;
        }
        if col_of.contains(&usize::MAX) {
            return Err(TableError::TableMismatch("table misses a conjugacy class".into()));
        }
        Ok(col_of)
    }

    /// Values in a Galois ring containing the `n`th roots of unity: `[row][group class]`.
    pub fn evaluate(&self, ring: &GaloisRing, col_of: &[usize]) -> Result<Vec<Vec<Gr>>, TableError> {
        let z = if self.conductor == 1 {
            ring.one()
        } else {
            ring.root_of_unity(self.conductor as u64)
                .map_err(|_| TableError::TableMismatch(format!("no {}th root of unity in the coefficients", self.conductor)))?
        };
        Ok(self
            .rows
            .iter()
            .map(|row| {
                col_of
                    .iter()
                    .map(|&t| {
                        row.values[t].iter().rev().fold(Gr::ZERO, |acc, &c| ring.add(ring.mul(acc, z), ring.from_i64(c)))
                    })
                    .collect()
            })
            .collect())
    }
}

fn add_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

/// A character table matched against a concrete group and evaluated in its coefficient ring.
pub struct BoundTable<'a> {
    pub table: &'a CharacterTable,
    pub norms: Vec<u32>,
    pub degrees: Vec<i64>,
    pub values: Vec<Vec<Gr>>,
    class_of: Vec<u32>,
}

impl<'a> BoundTable<'a> {
    pub fn new(table: &'a CharacterTable, g: &PermGroup, center: &Center, ring: &GaloisRing) -> Result<Self, TableError> {
        let norms = table.check(g.order() as u64)?;
        let degrees = table.degrees()?;
        let col_of = table.match_classes(g, &center.classes)?;
        let values = table.evaluate(ring, &col_of)?;
        Ok(BoundTable { table, norms, degrees, values, class_of: center.classes.class_of.clone() })
    }

    /// `χ(a) = Σ_g a_g χ(g)` for a group-algebra element `a`.
    pub fn character_of(&self, ring: &GaloisRing, row: usize, a: &[Gr]) -> Gr {
        a.iter()
            .enumerate()
            .filter(|(_, &c)| c != Gr::ZERO)
            .fold(Gr::ZERO, |acc, (g, &c)| ring.mul_add(acc, c, self.values[row][self.class_of[g] as usize]))
    }

    /// Multiplicity of each irreducible constituent of the row in the lattice `GR[G]·e`,
    /// for an idempotent `e`; `None` when the value is not a multiple of the orbit length.
    pub fn multiplicities(&self, ring: &GaloisRing, e: &[Gr]) -> Vec<Option<u32>> {
        (0..self.table.rows.len())
            .map(|row| {
                let v = ring.to_i64(self.character_of(ring, row, e))?;
                let k = self.norms[row] as i64;
                (v >= 0 && v % k == 0).then(|| (v / k) as u32)
            })
            .collect()
    }
}

/// Partition of the table rows among blocks: `χ` lies in `b` iff `χ(b) = χ(1)`, and
/// otherwise `χ(b) = 0`.
pub fn block_partition(blocks: &Blocks, bound: &BoundTable) -> Result<Vec<Vec<String>>, TableError> {
    let r = blocks.algebra.ring();
    let mut parts = vec![Vec::new(); blocks.blocks.len()];
    let mut assigned = BTreeSet::new();
    for (row, deg) in bound.degrees.iter().enumerate() {
        for (bi, b) in blocks.blocks.iter().enumerate() {
            let v = bound.character_of(r, row, &b.idempotent(&blocks.center));
            if v == r.from_i64(*deg) {
                if !assigned.insert(row) {
                    return Err(TableError::TableMismatch(format!("{} lies in two blocks", bound.table.rows[row].label)));
                }
                parts[bi].push(bound.table.rows[row].label.clone());
            } else if v != Gr::ZERO {
                return Err(TableError::TableMismatch(format!(
                    "{} takes a value other than 0 or its degree on block {bi}",
                    bound.table.rows[row].label
                )));
            }
        }
    }
    if assigned.len() != bound.degrees.len() {
        return Err(TableError::TableMismatch("some character lies in no block".into()));
    }
    Ok(parts)
}
