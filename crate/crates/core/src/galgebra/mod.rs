//! Group algebras over `F_q` and `GR(p^N, f)`: centers, block idempotents,
//! defect groups and Brauer correspondents.

pub mod chars;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::algebra::{self, Algebra, FiniteAlgebra, Vector};
use crate::coeff::{GaloisRing, Gr};
use crate::groups::{ConjugacyClasses, PermGroup, Subgroup, SubgroupClass};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("no block of the normalizer pairs with this block")]
    NoCorrespondent,
    #[error("defect group search found {0} candidate classes of maximal order")]
    AmbiguousDefectGroup(usize),
    #[error("block idempotents failed to lift")]
    LiftFailed,
}

/// `R[G]` with coordinates indexed by the enumerated elements of `G`.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    ring: GaloisRing,
    group: Arc<PermGroup>,
}

impl GroupAlgebra {
    pub fn new(ring: GaloisRing, group: Arc<PermGroup>) -> Self {
        GroupAlgebra { ring, group }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<PermGroup> {
        self.group.clone()
    }

    pub fn at_precision(&self, m: u32) -> Self {
        GroupAlgebra { ring: self.ring.at_precision(m).expect("lower precision"), group: self.group.clone() }
    }

    pub fn residue(&self) -> Self {
        self.at_precision(1)
    }

    pub fn element(&self, g: u32) -> Vector {
        algebra::basis_vector(&self.ring, self.dim(), g as usize)
    }

    pub fn augmentation(&self, a: &[Gr]) -> Gr {
        a.iter().fold(Gr::ZERO, |acc, &x| self.ring.add(acc, x))
    }

    /// `Σ_{g ∈ S} g`.
    pub fn sum_of(&self, elems: &[u32]) -> Vector {
        let mut v = algebra::zero(self.dim());
        for &g in elems {
            v[g as usize] = self.ring.add(v[g as usize], self.ring.one());
        }
        v
    }

    pub fn is_central(&self, a: &[Gr]) -> bool {
        self.group.gen_indices().iter().all(|&s| self.left_by(s, a) == self.right_by(a, s))
    }

    /// `g·a`, a coordinate permutation.
    pub fn left_by(&self, g: u32, a: &[Gr]) -> Vector {
        let mut out = algebra::zero(self.dim());
        for (h, &c) in a.iter().enumerate() {
            out[self.group.mul(g, h as u32) as usize] = c;
        }
        out
    }

    /// `a·g`, a coordinate permutation.
    pub fn right_by(&self, a: &[Gr], g: u32) -> Vector {
        let mut out = algebra::zero(self.dim());
        for (h, &c) in a.iter().enumerate() {
            out[self.group.mul(h as u32, g) as usize] = c;
        }
        out
    }

    /// The antipode `Σ a_g g ↦ Σ a_g g⁻¹`.
    pub fn antipode(&self, a: &[Gr]) -> Vector {
        let mut out = algebra::zero(self.dim());
        for (h, &c) in a.iter().enumerate() {
            out[self.group.inv(h as u32) as usize] = c;
        }
        out
    }

    /// Rank over the residue field of the left ideal `A·a`.
    pub fn left_ideal_rank(&self, a: &[Gr]) -> usize {
        let f = self.ring.residue_field();
        let fa = algebra::reduce_vec(&self.ring, &f, a);
        let res = self.residue();
        algebra::left_ideal_basis(&res, &fa).len()
    }
}

impl Algebra for GroupAlgebra {
    fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    fn dim(&self) -> usize {
        self.group.order()
    }

    fn mul(&self, a: &[Gr], b: &[Gr]) -> Vector {
        let r = &self.ring;
        let g = &*self.group;
        let mut out = algebra::zero(self.dim());
        let bs: Vec<(u32, Gr)> = b.iter().enumerate().filter(|(_, &c)| c != Gr::ZERO).map(|(h, &c)| (h as u32, c)).collect();
        for (x, &ax) in a.iter().enumerate() {
            if ax == Gr::ZERO {
                continue;
            }
            for &(h, bh) in &bs {
                let k = g.mul(x as u32, h) as usize;
                out[k] = r.mul_add(out[k], ax, bh);
            }
        }
        out
    }

    fn one(&self) -> Vector {
        self.element(0)
    }

    fn left_translates(&self, f: &[Gr]) -> Vec<Vector> {
        (0..self.dim() as u32).map(|g| self.left_by(g, f)).collect()
    }
}

/// The center `Z(R[G])` on the class-sum basis.
#[derive(Clone, Debug)]
pub struct Center {
    pub classes: ConjugacyClasses,
    pub algebra: FiniteAlgebra,
}

impl Center {
    pub fn new(ga: &GroupAlgebra) -> Self {
        let g = ga.group();
        let classes = g.conjugacy_classes();
        let k = classes.len();
        let r = ga.ring();
        // K_i K_j = Σ_l a_ijl K_l with a_ijl = #{x ∈ C_i : x⁻¹ r_l ∈ C_j}
        let mut counts = vec![0i64; k * k * k];
        for (l, cl) in classes.classes.iter().enumerate() {
            for x in 0..g.order() as u32 {
                let i = classes.class_of[x as usize] as usize;
                let j = classes.class_of[g.mul(g.inv(x), cl.rep) as usize] as usize;
                counts[(i * k + j) * k + l] += 1;
            }
        }
        let consts = counts.iter().map(|&c| r.from_i64(c)).collect();
        let mut unit = algebra::zero(k);
        unit[classes.class_of[0] as usize] = r.one();
        Center { classes, algebra: FiniteAlgebra::new(r.clone(), k, consts, unit) }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class-sum coordinates to group-algebra coordinates.
    pub fn to_group_algebra(&self, z: &[Gr]) -> Vector {
        self.classes.class_of.iter().map(|&c| z[c as usize]).collect()
    }

    /// Group-algebra coordinates of a central element to class-sum coordinates.
    pub fn from_group_algebra(&self, a: &[Gr]) -> Vector {
        self.classes.classes.iter().map(|c| a[c.rep as usize]).collect()
    }
}

/// A central primitive idempotent of `GR(p^N)[G]` with defect data.
#[derive(Clone, Debug, Serialize)]
pub struct BlockIdempotent {
    pub index: usize,
    pub is_principal: bool,
    /// Coordinates on class sums, at working precision.
    #[serde(skip)]
    pub center_coords: Vector,
    /// Rank of `b·GR[G]`.
    pub dimension: usize,
    pub defect: Option<u32>,
    #[serde(skip)]
    pub defect_group: Option<Subgroup>,
}

impl BlockIdempotent {
    pub fn idempotent(&self, center: &Center) -> Vector {
        center.to_group_algebra(&self.center_coords)
    }

    pub fn support_size(&self, center: &Center) -> usize {
        center
            .classes
            .classes
            .iter()
            .zip(&self.center_coords)
            .filter(|(_, &c)| c != Gr::ZERO)
            .map(|(cl, _)| cl.elements.len())
            .sum()
    }
}

/// Block decomposition of `GR(p^N)[G]`.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub algebra: GroupAlgebra,
    pub center: Center,
    pub blocks: Vec<BlockIdempotent>,
}

/// Primitive idempotents of `Z(F_q[G])`, in class-sum coordinates over the residue field.
pub fn block_idempotents_mod_p(center_mod_p: &Center) -> Vec<Vector> {
    algebra::commutative_primitive_idempotents(&center_mod_p.algebra)
}

impl Blocks {
    /// Computes the blocks mod `p`, lifts them to the ring of `ga`, and attaches defect data.
    pub fn new(ga: &GroupAlgebra) -> Result<Self, BlockError> {
        let r = ga.ring().clone();
        let f = r.residue_field();
        let center = Center::new(ga);
        let center_p = Center::new(&ga.residue());
        let mod_p = block_idempotents_mod_p(&center_p);
        let mut lifted: Vec<Vector> = mod_p
            .iter()
            .map(|e| algebra::lift_idempotent(&center.algebra, &algebra::lift_vec(&f, &r, e)))
            .collect();
        let one = center.algebra.one();
        let sum = lifted.iter().fold(algebra::zero(center.len()), |acc, e| algebra::add(&r, &acc, e));
        if sum != one || lifted.iter().any(|e| !algebra::is_idempotent(&center.algebra, e)) {
            return Err(BlockError::LiftFailed);
        }
        let g = ga.group();
        let class_sizes: Vec<i64> = center.classes.classes.iter().map(|c| c.elements.len() as i64).collect();
        let aug = |e: &Vector| -> Gr {
            e.iter().zip(&class_sizes).fold(Gr::ZERO, |acc, (&x, &s)| r.add(acc, r.mul_int(x, s)))
        };
        let dims: Vec<usize> =
            lifted.iter().map(|e| ga.left_ideal_rank(&center.to_group_algebra(e))).collect();
        let mut order: Vec<usize> = (0..lifted.len()).collect();
        order.sort_by(|&a, &b| {
            let pa = r.is_one(aug(&lifted[a]));
            let pb = r.is_one(aug(&lifted[b]));
            pb.cmp(&pa).then(dims[a].cmp(&dims[b])).then(lifted[a].cmp(&lifted[b]))
        });
        let p_classes = g.p_subgroup_classes(r.p());
        let mut blocks = Vec::new();
        for (index, &i) in order.iter().enumerate() {
            let e = core::mem::take(&mut lifted[i]);
            let e_p = algebra::reduce_vec(&r, &f, &e);
            let dg = defect_group(g, &center, &e_p, &p_classes)?;
            let defect = dg.as_ref().map(|d| p_adic_log(d.order(), r.p()));
            blocks.push(BlockIdempotent {
                index,
                is_principal: r.is_one(aug(&e)),
                center_coords: e,
                dimension: dims[i],
                defect,
                defect_group: dg,
            });
        }
        Ok(Blocks { algebra: ga.clone(), center, blocks })
    }

    pub fn principal(&self) -> &BlockIdempotent {
        self.blocks.iter().find(|b| b.is_principal).expect("the principal block exists")
    }

    pub fn idempotent(&self, i: usize) -> Vector {
        self.blocks[i].idempotent(&self.center)
    }

    /// Orthogonal, idempotent and summing to one, exactly at working precision.
    pub fn are_orthogonal_and_complete(&self) -> bool {
        let r = self.algebra.ring();
        let z = &self.center.algebra;
        let mut sum = algebra::zero(self.center.len());
        for (i, a) in self.blocks.iter().enumerate() {
            sum = algebra::add(r, &sum, &a.center_coords);
            for (j, b) in self.blocks.iter().enumerate() {
                let prod = z.mul(&a.center_coords, &b.center_coords);
                let ok = if i == j { prod == a.center_coords } else { algebra::is_zero(&prod) };
                if !ok {
                    return false;
                }
            }
        }
        sum == z.one()
    }
}

fn p_adic_log(n: usize, p: u32) -> u32 {
    let mut k = 0;
    let mut m = n;
    while m > 1 && m.is_multiple_of(p as usize) {
        m /= p as usize;
        k += 1;
    }
    k
}

/// Is the Brauer image `Br_P(b) = Σ_{g ∈ C_G(P)} b_g g` nonzero mod `p`?
pub fn brauer_image_nonzero(g: &PermGroup, center: &Center, block_mod_p: &[Gr], p_sub: &Subgroup) -> bool {
    let c = g.centralizer(p_sub);
    c.elements().iter().any(|&x| block_mod_p[center.classes.class_of[x as usize] as usize] != Gr::ZERO)
}

/// The defect group of a block: the largest p-subgroup class with nonzero Brauer image.
pub fn defect_group(
    g: &PermGroup,
    center: &Center,
    block_mod_p: &[Gr],
    p_classes: &[SubgroupClass],
) -> Result<Option<Subgroup>, BlockError> {
    let mut by_order: Vec<&SubgroupClass> = p_classes.iter().collect();
    by_order.sort_by_key(|c| core::cmp::Reverse(c.rep.order()));
    let mut k = 0;
    while k < by_order.len() {
        let ord = by_order[k].rep.order();
        let same: Vec<&SubgroupClass> = by_order[k..].iter().take_while(|c| c.rep.order() == ord).copied().collect();
        let hits: Vec<&SubgroupClass> =
            same.iter().copied().filter(|c| brauer_image_nonzero(g, center, block_mod_p, &c.rep)).collect();
        match hits.len() {
            0 => k += same.len(),
            1 => return Ok(Some(hits[0].rep.clone())),
            n => return Err(BlockError::AmbiguousDefectGroup(n)),
        }
    }
    Ok(None)
}

/// The Brauer correspondent of a block with defect group `D`: the block `b′` of
/// `N_G(D)` with defect group `D` and `b′·Br_D(b) = b′`.
pub struct BrauerCorrespondent {
    pub normalizer: Subgroup,
    pub local: Blocks,
    pub index: usize,
    /// Element indices of the normalizer group inside `G`.
    pub embedding: Vec<u32>,
}

pub fn brauer_correspondent(blocks: &Blocks, b: usize, d: &Subgroup) -> Result<BrauerCorrespondent, BlockError> {
    let ga = &blocks.algebra;
    let g = ga.group();
    let r = ga.ring();
    let f = r.residue_field();
    let n = g.normalizer(d);
    let h = Arc::new(g.subgroup_as_group(&n));
    let embedding = g.embedding(&h);
    let local = Blocks::new(&GroupAlgebra::new(r.clone(), h.clone()))?;
    let c = g.centralizer(d);
    let bp = algebra::reduce_vec(r, &f, &blocks.blocks[b].center_coords);
    let br: Vector = embedding
        .iter()
        .map(|&x| if c.contains(x) { bp[blocks.center.classes.class_of[x as usize] as usize] } else { Gr::ZERO })
        .collect();
    let hf = GroupAlgebra::new(f.clone(), h.clone());
    for (i, lb) in local.blocks.iter().enumerate() {
        let e = algebra::reduce_vec(r, &f, &lb.idempotent(&local.center));
        if hf.mul(&e, &br) == e && lb.defect_group.as_ref().map(|x| x.order()) == Some(d.order()) {
            return Ok(BrauerCorrespondent { normalizer: n, local, index: i, embedding });
        }
    }
    Err(BlockError::NoCorrespondent)
}

/// Rank of `b·GR[G]·b′` where `b′` lives in a subgroup algebra, via the trace of
/// `x ↦ b x b′` on `GR[G]`.
pub fn bimodule_rank_by_trace(ga: &GroupAlgebra, b: &[Gr], b_sub: &[Gr], embedding: &[u32]) -> i64 {
    let r = ga.ring();
    let g = ga.group();
    // trace of x ↦ b x b′ on the basis of group elements: Σ_x Σ_{h,k: h x k = x} b_h b′_k
    let mut tr = Gr::ZERO;
    for (kk, &ck) in b_sub.iter().enumerate() {
        if ck == Gr::ZERO {
            continue;
        }
        let k = embedding[kk];
        for x in 0..g.order() as u32 {
            let h = g.mul(x, g.mul(g.inv(k), g.inv(x)));
            let bh = b[h as usize];
            if bh != Gr::ZERO {
                tr = r.mul_add(tr, bh, ck);
            }
        }
    }
    r.to_i64(tr).expect("trace is an integer")
}
