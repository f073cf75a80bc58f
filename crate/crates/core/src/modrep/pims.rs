//! Projective indecomposable modules of a block, Cartan matrices, and the
//! ordinary characters of projective lattices.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand_core::RngCore;
use serde::Serialize;

use super::{ModError, RepModule};
use crate::algebra::{self, Algebra, SplitConfig, Vector};
use crate::coeff::Gr;
use crate::galgebra::chars::{BoundTable, TableError};
use crate::galgebra::GroupAlgebra;
use crate::groups::ConjugacyClasses;

/// `C_ij = dim Hom(P_i, P_j)` over the residue field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix(pub Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }

    /// The matrix with rows and columns reordered: entry `(i, j)` is `C[order[i]][order[j]]`.
    pub fn permuted(&self, order: &[usize]) -> CartanMatrix {
        CartanMatrix(order.iter().map(|&i| order.iter().map(|&j| self.0[i][j]).collect()).collect())
    }

    /// Solves `C·s = dims` exactly; with `dims` the PIM dimensions this recovers the
    /// dimensions of their heads.
    pub fn solve(&self, dims: &[i64]) -> Option<Vec<i64>> {
        let n = self.size();
        let mut a: Vec<Vec<Ratio<i128>>> = (0..n)
            .map(|i| {
                let mut row: Vec<Ratio<i128>> = self.0[i].iter().map(|&x| Ratio::from_integer(x as i128)).collect();
                row.push(Ratio::from_integer(dims[i] as i128));
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&i| a[i][c] != Ratio::from_integer(0))?;
            a.swap(c, piv);
            let inv = Ratio::from_integer(1) / a[c][c];
            for x in a[c].iter_mut() {
                *x *= inv;
            }
            let prow = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != c && row[c] != Ratio::from_integer(0) {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        a.iter().map(|row| row[n].is_integer().then(|| *row[n].numer() as i64)).collect()
    }
}

/// One isomorphism class of projective indecomposables `A·e`.
#[derive(Clone, Debug)]
pub struct PimClass {
    /// A primitive idempotent over the residue field.
    pub idempotent: Vector,
    /// Basis of `A·e` over the residue field.
    pub basis: Vec<Vector>,
    /// How many primitive idempotents of the decomposition of the block fall in this
    /// class; over a splitting field this is the dimension of the head.
    pub multiplicity: usize,
}

impl PimClass {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct BlockPims {
    pub classes: Vec<PimClass>,
    pub cartan: CartanMatrix,
}

impl BlockPims {
    /// Head dimensions read off as multiplicities in the regular module.
    pub fn head_dims(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.multiplicity).collect()
    }

    /// Head dimensions recovered from the Cartan matrix and the PIM dimensions.
    pub fn head_dims_from_cartan(&self) -> Option<Vec<i64>> {
        let dims: Vec<i64> = self.classes.iter().map(|c| c.dim() as i64).collect();
        self.cartan.solve(&dims)
    }

    /// `Σ dim P_i · dim S_i`, which equals the dimension of the block.
    pub fn total_dim(&self) -> usize {
        self.classes.iter().map(|c| c.dim() * c.multiplicity).sum()
    }

    pub fn modules(&self, ga: &GroupAlgebra) -> Result<Vec<RepModule>, ModError> {
        self.classes.iter().map(|c| RepModule::left_ideal(ga, &c.basis)).collect()
    }
}

/// Projective indecomposables of the block `b·F_q[G]`: split `b` into primitive
/// idempotents, group them by isomorphism of `A·e`, and read off the Cartan matrix
/// from the corners `e_i·A·e_j`. Classes are ordered by `(dim P, dim head)`.
pub fn block_pims<R: RngCore>(ga: &GroupAlgebra, block: &[Gr], rng: &mut R) -> Result<BlockPims, ModError> {
    let idems = algebra::primitive_idempotents(ga, block, &SplitConfig::default(), rng)?;
    let mut classes: Vec<PimClass> = Vec::new();
    for e in idems {
        let basis = algebra::left_ideal_basis(ga, &e);
        let hit = classes
            .iter()
            .position(|c| algebra::primitive_idempotents_equivalent(ga, &e, &basis, &c.idempotent, &c.basis));
        match hit {
            Some(i) => classes[i].multiplicity += 1,
            None => classes.push(PimClass { idempotent: e, basis, multiplicity: 1 }),
        }
    }
    classes.sort_by(|a, b| (a.dim(), a.multiplicity, &a.idempotent).cmp(&(b.dim(), b.multiplicity, &b.idempotent)));
    let n = classes.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = algebra::corner_from_ideal(ga, &classes[i].idempotent, &classes[j].basis).len() as i64;
        }
    }
    Ok(BlockPims { classes, cartan: CartanMatrix(c) })
}

/// Ordinary constituents of the lattice `GR[G]·ẽ`, where `ẽ` lifts the primitive
/// idempotent `e`: the multiplicity of `χ` is `χ(ẽ)` (per row, divided by the
/// Galois orbit length of merged rows).
pub fn lattice_constituents(lattice: &GroupAlgebra, bound: &BoundTable, e: &[Gr]) -> Result<Vec<u32>, TableError> {
    let r = lattice.ring();
    let f = r.residue_field();
    let lifted = algebra::lift_idempotent(lattice, &algebra::lift_vec(&f, r, e));
    bound
        .multiplicities(r, &lifted)
        .into_iter()
        .zip(&bound.table.rows)
        .map(|(m, row)| m.ok_or_else(|| TableError::TableMismatch(alloc::format!("non-integral multiplicity of {}", row.label))))
        .collect()
}

/// Ordinary constituents of a projective lattice from its character: traces of
/// class representatives, paired with the table by the orthogonality relations.
/// Projective characters vanish off `p`-regular classes and are divisible there
/// by the `p`-part of centralizer orders, so the division by `|G|` is exact; the
/// result is read at precision `N − v_p(|G|)`.
pub fn lattice_char_decomposition(
    p: &RepModule,
    bound: &BoundTable,
    classes: &ConjugacyClasses,
) -> Result<Vec<u32>, TableError> {
    let r = p.ring();
    let g = p.group();
    let prime = r.p() as u64;
    let mut order = g.order() as u64;
    let mut a = 0;
    while order.is_multiple_of(prime) {
        order /= prime;
        a += 1;
    }
    if r.precision() <= a {
        return Err(TableError::TableMismatch(alloc::format!("precision {} too low to divide by |G|", r.precision())));
    }
    let low = r.at_precision(r.precision() - a).expect("lower precision");
    let unit_inv = low.inv(low.from_i64(order as i64)).expect("p'-part is a unit");
    let traces: Vec<Gr> = classes.classes.iter().map(|c| p.trace(c.rep)).collect();
    let mut out = Vec::with_capacity(bound.table.rows.len());
    for (row, label) in bound.table.rows.iter().map(|x| &x.label).enumerate() {
        let mut s = Gr::ZERO;
        for (k, c) in classes.classes.iter().enumerate() {
            let inv_class = classes.class_of[g.inv(c.rep) as usize] as usize;
            let term = r.mul(traces[k], bound.values[row][inv_class]);
            s = r.add(s, r.mul_int(term, c.elements.len() as i64));
        }
        if r.valuation(s) < a && s != Gr::ZERO {
            return Err(TableError::TableMismatch(alloc::format!("inner product with {label} is not integral")));
        }
        let m = low.mul(low.reduce_from(r, r.div_p_pow(s, a)), unit_inv);
        let v = low
            .to_i64(m)
            .ok_or_else(|| TableError::TableMismatch(alloc::format!("inner product with {label} is not rational")))?;
        let k = bound.norms[row] as i64;
        if v < 0 || v % k != 0 {
            return Err(TableError::TableMismatch(alloc::format!("{label} has multiplicity {v}/{k}")));
        }
        out.push((v / k) as u32);
    }
    Ok(out)
}

/// Labels of the rows with nonzero multiplicity.
pub fn constituent_labels(bound: &BoundTable, mults: &[u32]) -> Vec<String> {
    bound.table.rows.iter().zip(mults).filter(|(_, &m)| m > 0).map(|(r, _)| r.label.clone()).collect()
}
