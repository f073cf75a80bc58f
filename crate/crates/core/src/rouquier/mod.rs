//! Two-term tilting complexes between a block with cyclic defect group and its
//! Brauer correspondent: the induction bimodule, its non-projective summand,
//! complexes built from a pair of projective indecomposables and a lattice
//! element, and verification through the unit and counit complexes.

mod complex;
mod pieces;
mod verify;

pub use complex::{build_complex, dualize_complex, BimoduleComplex, HomLattice, ProjectivePart, Strategy, TwoTermComplex};
pub use verify::{stable_equiv_check, verify_tilting, SideReport, StableReport, TiltingReport};

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::algebra::{self, Algebra, AlgebraError, FiniteAlgebra, SplitConfig, Vector};
use crate::coeff::mat::{self, Mat};
use crate::coeff::{GaloisRing, Gr};
use crate::galgebra::{self, BlockError, Blocks, GroupAlgebra};
use crate::groups::{GroupError, PermGroup, Subgroup};
use crate::modrep::{self, ModError, RepModule};

use pieces::Piece;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RouquierError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Module(#[from] ModError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the induction bimodule has {count} non-projective indecomposable summands, expected exactly one")]
    NonUniqueNonProjective { count: usize },
    #[error("no candidate complex passed verification")]
    NoCandidateFound { log: Vec<String> },
    #[error("a term of the complex is not projective on both sides")]
    FlagMissing,
    #[error("no projective indecomposable with index {0}")]
    BadPim(usize),
    #[error("the lattice element has no associated map that is surjective mod p")]
    NotSurjective,
    #[error("rank {found} disagrees with the trace value {expected}")]
    Mismatch { expected: i64, found: usize },
}

/// A primitive idempotent of a block, lifted to the working precision.
#[derive(Clone, Debug)]
pub struct PimData {
    pub idempotent: Vector,
    pub dim: usize,
    /// Dimension of the head over the residue field.
    pub head: usize,
}

/// A block `b` of `GR[G]`, its Brauer correspondent `b′` of `GR[N]` with
/// `N = N_G(D)`, and representatives of their projective indecomposables.
#[derive(Clone, Debug)]
pub struct BlockPair {
    pub ring: GaloisRing,
    pub big: GroupAlgebra,
    pub local: GroupAlgebra,
    /// Element indices of `N` inside `G`.
    pub embedding: Vec<u32>,
    pub defect_group: Subgroup,
    pub block_index: usize,
    pub local_index: usize,
    pub block: Vector,
    pub local_block: Vector,
    pub big_pims: Vec<PimData>,
    pub local_pims: Vec<PimData>,
}

fn lifted_pims<R: RngCore>(ga: &GroupAlgebra, block: &[Gr], rng: &mut R) -> Result<Vec<PimData>, RouquierError> {
    let r = ga.ring();
    let res = ga.residue();
    let f = res.ring().clone();
    let pims = modrep::pims::block_pims(&res, &algebra::reduce_vec(r, &f, block), rng)?;
    Ok(pims
        .classes
        .iter()
        .map(|c| {
            let e = ga.mul(block, &algebra::lift_vec(&f, r, &c.idempotent));
            PimData { idempotent: algebra::lift_idempotent(ga, &e), dim: c.dim(), head: c.multiplicity }
        })
        .collect())
}

impl BlockPair {
    pub fn new<R: RngCore>(blocks: &Blocks, b: usize, rng: &mut R) -> Result<Self, RouquierError> {
        let big = blocks.algebra.clone();
        let ring = big.ring().clone();
        let g = big.group();
        let d = blocks.blocks[b].defect_group.clone().unwrap_or_else(|| g.trivial_subgroup());
        let corr = galgebra::brauer_correspondent(blocks, b, &d)?;
        let local = corr.local.algebra.clone();
        let block = blocks.idempotent(b);
        let local_block = corr.local.idempotent(corr.index);
        let big_pims = lifted_pims(&big, &block, rng)?;
        let local_pims = lifted_pims(&local, &local_block, rng)?;
        Ok(BlockPair {
            ring,
            big,
            local,
            embedding: corr.embedding,
            defect_group: d,
            block_index: b,
            local_index: corr.index,
            block,
            local_block,
            big_pims,
            local_pims,
        })
    }

    pub fn g(&self) -> &PermGroup {
        self.big.group()
    }

    pub fn n(&self) -> &PermGroup {
        self.local.group()
    }

    /// An element of `GR[N]` as an element of `GR[G]`.
    pub fn embed(&self, v: &[Gr]) -> Vector {
        let mut out = algebra::zero(self.g().order());
        for (i, &c) in v.iter().enumerate() {
            out[self.embedding[i] as usize] = c;
        }
        out
    }

    /// The coefficients of an element of `GR[G]` on `N`.
    pub fn restrict(&self, v: &[Gr]) -> Vector {
        self.embedding.iter().map(|&i| v[i as usize]).collect()
    }

    pub fn at_precision(&self, m: u32) -> Self {
        let to = self.ring.at_precision(m).expect("lower precision");
        let red = |v: &Vector| algebra::reduce_vec(&self.ring, &to, v);
        let pims = |ps: &[PimData]| -> Vec<PimData> {
            ps.iter().map(|p| PimData { idempotent: red(&p.idempotent), dim: p.dim, head: p.head }).collect()
        };
        BlockPair {
            ring: to.clone(),
            big: self.big.at_precision(m),
            local: self.local.at_precision(m),
            embedding: self.embedding.clone(),
            defect_group: self.defect_group.clone(),
            block_index: self.block_index,
            local_index: self.local_index,
            block: red(&self.block),
            local_block: red(&self.local_block),
            big_pims: pims(&self.big_pims),
            local_pims: pims(&self.local_pims),
        }
    }

    pub(crate) fn big_pim(&self, i: usize) -> Result<&PimData, RouquierError> {
        self.big_pims.get(i).ok_or(RouquierError::BadPim(i))
    }

    pub(crate) fn local_pim(&self, i: usize) -> Result<&PimData, RouquierError> {
        self.local_pims.get(i).ok_or(RouquierError::BadPim(i))
    }

    /// `Σ_{x ∈ P} x` for a Sylow `p`-subgroup `P` of `G` and of `N`, in `GR[G]`.
    pub(crate) fn sylow_norms(&self) -> (Vector, Vector) {
        let p = self.ring.p();
        let sg = self.g().sylow_subgroup(p);
        let sn = self.n().sylow_subgroup(p);
        let sn_g: Vec<u32> = sn.elements().iter().map(|&x| self.embedding[x as usize]).collect();
        (self.big.sum_of(sg.elements()), self.big.sum_of(&sn_g))
    }

    /// Rank of `P_G·U·P_N` mod `p` times `|P_G|·|P_N|` against the rank of `U`: the
    /// norm criterion for a `(GR[G], GR[N])`-sub-bimodule `U` of `GR[G]` to be projective.
    pub(crate) fn is_projective_sub_bimodule(&self, u: &Piece) -> bool {
        let (ng, nn) = self.sylow_norms();
        let p = self.ring.p();
        let scale = self.g().sylow_subgroup(p).order() * self.n().sylow_subgroup(p).order();
        let imgs: Vec<Vector> = u.basis.iter().map(|v| self.big.mul(&self.big.mul(&ng, v), &nn)).collect();
        let m = Mat::from_cols(u.ambient, &imgs);
        mat::rank_mod_p(&self.ring, &m) * scale == u.rank()
    }
}

/// `G × H` on the disjoint union of the two permutation domains; the generators
/// of `G` come first.
pub fn product_group(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
    let (da, db) = (a.degree() as u32, b.degree() as u32);
    let mut gens = Vec::new();
    for p in a.gens() {
        let mut q = p.clone();
        q.extend(da..da + db);
        gens.push(q);
    }
    for p in b.gens() {
        let mut q: Vec<u32> = (0..da).collect();
        q.extend(p.iter().map(|&x| x + da));
        gens.push(q);
    }
    PermGroup::new((da + db) as usize, gens)
}

/// A bimodule free over the ring, with one matrix per generator on each side.
/// Right generator matrices act on columns: `m·s = R_s m`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub ring: GaloisRing,
    pub left: Arc<PermGroup>,
    pub right: Arc<PermGroup>,
    pub rank: usize,
    pub left_gens: Vec<Mat>,
    pub right_gens: Vec<Mat>,
    pub left_projective: bool,
    pub right_projective: bool,
    pub projective: bool,
}

impl Bimodule {
    pub fn new(
        ring: GaloisRing,
        left: Arc<PermGroup>,
        right: Arc<PermGroup>,
        left_gens: Vec<Mat>,
        right_gens: Vec<Mat>,
    ) -> Result<Self, RouquierError> {
        let rank = left_gens.first().or(right_gens.first()).map_or(0, |m| m.rows);
        let lm = RepModule::new(ring.clone(), left.clone(), rank, left_gens.clone())?;
        let rinv: Vec<Mat> = right_gens
            .iter()
            .enumerate()
            .map(|(i, m)| mat::inverse(&ring, m).ok_or(ModError::NotInvertible(i)))
            .collect::<Result<_, _>>()?;
        let rm = RepModule::new(ring.clone(), right.clone(), rank, rinv)?;
        let p = ring.p();
        let norm = |m: &RepModule, g: &PermGroup| -> (Mat, usize) {
            let s = g.sylow_subgroup(p);
            let mut acc = Mat::zeros(rank, rank);
            for &x in s.elements() {
                acc = acc.add(&ring, &m.matrix_of(x));
            }
            (acc, s.order())
        };
        let (nl, ol) = norm(&lm, &left);
        let (nr, or) = norm(&rm, &right);
        let left_projective = mat::rank_mod_p(&ring, &nl) * ol == rank;
        let right_projective = mat::rank_mod_p(&ring, &nr) * or == rank;
        let projective = mat::rank_mod_p(&ring, &nl.mul(&ring, &nr)) * ol * or == rank;
        Ok(Bimodule {
            ring,
            left,
            right,
            rank,
            left_gens,
            right_gens,
            left_projective,
            right_projective,
            projective,
        })
    }

    pub(crate) fn from_piece(
        ring: &GaloisRing,
        left: Arc<PermGroup>,
        right: Arc<PermGroup>,
        piece: &Piece,
        left_act: impl Fn(u32, &[Gr]) -> Vector,
        right_act: impl Fn(&[Gr], u32) -> Vector,
    ) -> Result<Self, RouquierError> {
        let lg = left.gen_indices().iter().map(|&s| piece.matrix_of(ring, |v| left_act(s, v))).collect();
        let rg = right.gen_indices().iter().map(|&s| piece.matrix_of(ring, |v| right_act(v, s))).collect();
        Self::new(ring.clone(), left, right, lg, rg)
    }

    /// The `G × H`-module with `(g, h)·m = g·m·h⁻¹`.
    pub fn as_module(&self) -> Result<RepModule, RouquierError> {
        let prod = Arc::new(product_group(&self.left, &self.right)?);
        let mut gens = self.left_gens.clone();
        for (i, m) in self.right_gens.iter().enumerate() {
            gens.push(mat::inverse(&self.ring, m).ok_or(ModError::NotInvertible(i))?);
        }
        Ok(RepModule::new(self.ring.clone(), prod, self.rank, gens)?)
    }

    /// `Hom_R(M, R)` with `(h·φ·g)(m) = φ(g·m·h)`, in the dual basis.
    pub fn linear_dual(&self) -> Bimodule {
        Bimodule {
            ring: self.ring.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
            rank: self.rank,
            left_gens: self.right_gens.iter().map(Mat::transpose).collect(),
            right_gens: self.left_gens.iter().map(Mat::transpose).collect(),
            left_projective: self.right_projective,
            right_projective: self.left_projective,
            projective: self.projective,
        }
    }
}

/// `b·GR[G]·b′` as a `(GR[G]b, GR[N]b′)`-bimodule, with its rank checked against
/// the trace of `x ↦ b x b′`.
pub fn induction_bimodule(pair: &BlockPair) -> Result<Bimodule, RouquierError> {
    let ga = &pair.big;
    let r = &pair.ring;
    let bl = pair.embed(&pair.local_block);
    let vecs = (0..pair.g().order() as u32).map(|g| ga.mul(&ga.right_by(&pair.block, g), &bl));
    let piece = Piece::from_spanning(r, ga.dim(), vecs);
    let expected = galgebra::bimodule_rank_by_trace(ga, &pair.block, &pair.local_block, &pair.embedding);
    if r.modulus() as i64 > ga.dim() as i64 && expected != piece.rank() as i64 {
        return Err(RouquierError::Mismatch { expected, found: piece.rank() });
    }
    let emb = &pair.embedding;
    Bimodule::from_piece(r, pair.big.group_arc(), pair.local.group_arc(), &piece, |g, v| ga.left_by(g, v), |v, n| {
        ga.right_by(v, emb[n as usize])
    })
}

/// The decomposition of the induction bimodule by primitive idempotents of its
/// endomorphism ring `b·b′·C_{GR[G]}(N)`.
#[derive(Clone, Debug)]
pub struct InductionSplit {
    /// The idempotent `z` with `N₀ = GR[G]·z`.
    pub z: Vector,
    pub n0_rank: usize,
    /// Rank of the endomorphism ring.
    pub endomorphism_rank: usize,
    /// `(rank, projective)` for every indecomposable summand.
    pub summands: Vec<(usize, bool)>,
}

/// The unique non-projective indecomposable summand `N₀` of `b·GR[G]·b′`.
pub fn extract_n0<R: RngCore>(pair: &BlockPair, rng: &mut R) -> Result<InductionSplit, RouquierError> {
    let ga = &pair.big;
    let r = &pair.ring;
    let g = pair.g();
    let order = g.order();
    let unit = ga.mul(&pair.block, &pair.embed(&pair.local_block));
    let mut seen = alloc::vec![false; order];
    let mut orbit_sums = Vec::new();
    for x in 0..order as u32 {
        if seen[x as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        for &n in &pair.embedding {
            let y = g.conj(n, x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        orbit_sums.push(ga.sum_of(&orbit));
    }
    let e_piece = Piece::from_spanning(r, order, orbit_sums.iter().map(|o| ga.mul(&unit, o)));
    let end = FiniteAlgebra::subalgebra(ga, &e_piece.basis, &unit)?;
    let endp = end.at_precision(1);
    let f = endp.ring().clone();
    let idems = algebra::primitive_idempotents(&endp, &endp.one(), &SplitConfig::default(), rng)?;
    let lifted = algebra::lift_orthogonal_family(&end, &idems.iter().map(|e| algebra::lift_vec(&f, r, e)).collect::<Vec<_>>());
    let mut summands = Vec::new();
    let mut non_projective = Vec::new();
    for e in &lifted {
        let z = e_piece.vector(r, e);
        let piece = left_ideal_piece(ga, &z);
        let proj = pair.is_projective_sub_bimodule(&piece);
        if !proj {
            non_projective.push(z);
        }
        summands.push((piece.rank(), proj));
    }
    if non_projective.len() != 1 {
        return Err(RouquierError::NonUniqueNonProjective { count: non_projective.len() });
    }
    let z = non_projective.pop().expect("one summand");
    let n0_rank = left_ideal_piece(ga, &z).rank();
    summands.sort_unstable();
    Ok(InductionSplit { z, n0_rank, endomorphism_rank: e_piece.rank(), summands })
}

/// `GR[G]·a`.
pub(crate) fn left_ideal_piece(ga: &GroupAlgebra, a: &[Gr]) -> Piece {
    let n = ga.dim();
    Piece::from_spanning(ga.ring(), n, (0..n as u32).map(|g| ga.left_by(g, a)))
}

/// `a·GR[G]`.
pub(crate) fn right_ideal_piece(ga: &GroupAlgebra, a: &[Gr]) -> Piece {
    let n = ga.dim();
    Piece::from_spanning(ga.ring(), n, (0..n as u32).map(|g| ga.right_by(a, g)))
}

/// `a·GR[G]·c`.
pub(crate) fn two_sided_piece(ga: &GroupAlgebra, a: &[Gr], c: &[Gr]) -> Piece {
    let n = ga.dim();
    Piece::from_spanning(ga.ring(), n, (0..n as u32).map(|g| ga.mul(&ga.right_by(a, g), c)))
}
