//! Verification of a two-term complex `M₀` of `(A, A′)`-bimodules through
//! `C = M₀ ⊗_{A′} M₀^∨` and `C′ = M₀^∨ ⊗_A M₀`: both must have homology
//! concentrated in degree 0, isomorphic to the regular bimodules `A` and `A′`.
//!
//! With `N₀ = A·z`, `N₀′ = A·e ⊗ f·A′`, `d(u ⊗ v) = u·x·v`, the dual is
//! `z·A → A′·f ⊗ e·A`, `c ↦ Σ_{n ∈ N} n·f ⊗ x·n⁻¹·c`, and the tensor products are
//!
//! ```text
//! C:  A·e ⊗ fz·A  →  (A·z ⊗_{GR[N]} z·A) ⊕ (A·e ⊗ f·A′·f ⊗ e·A)  →  A·zf ⊗ e·A
//! C′: z·A·e ⊗ f·A′  →  z·A·z ⊕ (A′·f ⊗ e·A·e ⊗ f·A′)  →  A′·f ⊗ e·A·z
//! ```

use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use super::complex::TwoTermComplex;
use super::pieces::{add_kron2, InducedSpace, Piece, ResidueEchelon};
use super::{left_ideal_piece, product_group, right_ideal_piece, two_sided_piece, BlockPair, RouquierError};
use crate::algebra::{self, Algebra, Vector};
use crate::coeff::mat::{self, Mat};
use crate::coeff::{GaloisRing, Gr};
use crate::modrep::{self, RepModule};

/// Homology of one of the two products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    /// Ranks of the terms in degrees 1, 0, −1.
    pub term_ranks: [usize; 3],
    pub differential_squares_to_zero: bool,
    /// Composition lengths of the homology in degrees 1, 0, −1.
    pub homology_lengths: [u64; 3],
    /// Rank of `H₀` when the outer homology vanishes.
    pub h0_rank: Option<usize>,
    pub block_rank: usize,
    /// `H₀` is isomorphic to the regular bimodule of the block.
    pub h0_is_block: bool,
}

impl SideReport {
    pub fn passes(&self) -> bool {
        self.differential_squares_to_zero
            && self.homology_lengths[0] == 0
            && self.homology_lengths[2] == 0
            && self.h0_is_block
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltingReport {
    pub precision: u32,
    pub seed: u64,
    /// `M₀ ⊗_{A′} M₀^∨` over `A`.
    pub big_side: SideReport,
    /// `M₀^∨ ⊗_A M₀` over `A′`.
    pub local_side: SideReport,
    pub verdict: bool,
}

pub fn verify_tilting(cx: &TwoTermComplex, seed: u64) -> Result<TiltingReport, RouquierError> {
    let local_side = local_side(cx, seed);
    let big_side = big_side(cx, seed);
    let verdict = local_side.passes() && big_side.passes();
    Ok(TiltingReport { precision: cx.precision(), seed, big_side, local_side, verdict })
}

/// The verdict alone, checking the smaller side first.
pub(crate) fn passes(cx: &TwoTermComplex, seed: u64) -> Result<bool, RouquierError> {
    Ok(local_side(cx, seed).passes() && big_side(cx, seed).passes())
}

/// A complex `C₁ → C₀ → C₋₁` with a two-sided action of one group on `C₀`.
struct ThreeTerm {
    n: [usize; 3],
    d1: Mat,
    d0: Mat,
    gens: usize,
}

/// The actions of the generators on the degree-zero term, applied to each column.
trait DegreeZero {
    fn left(&self, s: usize, m: &Mat) -> Mat;
    fn right(&self, s: usize, m: &Mat) -> Mat;
}

/// A degree-zero term `T ⊕ U` with `T` a summand of an ambient space on which
/// the generators act through `ambient`, and `U` a tensor product of the given
/// shape on which they act along one axis by `axis_mat`.
fn act_split(
    r: &GaloisRing,
    t: &Piece,
    ambient: impl Fn(&[Gr]) -> Vector,
    shape: &[usize; 3],
    axis: usize,
    axis_mat: Option<&Mat>,
    m: &Mat,
) -> Mat {
    let k = t.rank();
    let top: Vec<usize> = (0..k).collect();
    let moved: Vec<Vector> = t.vectors(r, &m.select_rows(&top)).cols_vec().iter().map(|v| ambient(v)).collect();
    let out = t.coords_mat(r, &Mat::from_cols(t.ambient, &moved));
    let Some(a) = axis_mat else {
        return out;
    };
    let rest: Vec<usize> = (k..m.rows).collect();
    let cols: Vec<Vector> = m.select_rows(&rest).cols_vec().iter().map(|v| act_axis(r, v, shape, axis, a)).collect();
    out.vstack(&Mat::from_cols(rest.len(), &cols))
}

fn image_length(r: &GaloisRing, d: &Mat) -> u64 {
    if d.rows == 0 || d.cols == 0 {
        return 0;
    }
    let n = r.precision() as u64;
    let k = mat::rank_mod_p(r, d);
    if k == d.rows || k == d.cols {
        return n * k as u64;
    }
    mat::smith(r, d).vals.iter().map(|&v| n - v as u64).sum()
}

fn analyze(r: &GaloisRing, t: &ThreeTerm, ops: &dyn DegreeZero, block_rank: usize, seed: u64) -> SideReport {
    let n = r.precision() as u64;
    let d2 = t.n[0] == 0 || t.n[2] == 0 || t.d0.mul(r, &t.d1).is_zero();
    let im1 = image_length(r, &t.d1);
    let im0 = image_length(r, &t.d0);
    let lengths = [n * t.n[0] as u64 - im1, n * t.n[1] as u64 - im0 - im1, n * t.n[2] as u64 - im0];
    let mut report = SideReport {
        term_ranks: t.n,
        differential_squares_to_zero: d2,
        homology_lengths: lengths,
        h0_rank: None,
        block_rank,
        h0_is_block: false,
    };
    if !d2 || lengths[0] != 0 || lengths[2] != 0 {
        return report;
    }
    let h0 = HomologyZero::new(r, t);
    report.h0_rank = Some(h0.rank());
    if h0.rank() == block_rank {
        let (lm, rm) = h0.actions(r, t.gens, ops);
        report.h0_is_block = is_regular_bimodule(r, &lm, &rm, block_rank, seed);
    }
    report
}

/// `H₀ = ker d₀ / im d₁` for `d₀` surjective and `d₁` split injective: kernel
/// coordinates are the non-pivot entries of `d₀`, and the quotient drops a set of
/// rows on which `d₁` is invertible.
struct HomologyZero {
    n0: usize,
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `d₀[:, pivots]⁻¹ · d₀[:, free]`.
    x: Mat,
    /// Positions in `free` kept in the quotient.
    keep: Vec<usize>,
    /// Positions in `free` on which `d₁` is invertible.
    drop: Vec<usize>,
    /// `d₁[keep] · d₁[drop]⁻¹`.
    z: Mat,
}

impl HomologyZero {
    fn new(r: &GaloisRing, t: &ThreeTerm) -> Self {
        let n0 = t.n[1];
        let pivots = if t.n[2] == 0 { Vec::new() } else { mat::independent_cols_mod_p(r, &t.d0) };
        let free: Vec<usize> = (0..n0).filter(|i| !pivots.contains(i)).collect();
        let x = if pivots.is_empty() {
            Mat::zeros(0, free.len())
        } else {
            let inv = mat::inverse(r, &t.d0.select_cols(&pivots)).expect("pivot block is invertible");
            inv.mul(r, &t.d0.select_cols(&free))
        };
        let y = t.d1.select_rows(&free);
        let drop = if t.n[0] == 0 { Vec::new() } else { mat::independent_cols_mod_p(r, &y.transpose()) };
        let keep: Vec<usize> = (0..free.len()).filter(|i| !drop.contains(i)).collect();
        let z = if drop.is_empty() {
            Mat::zeros(keep.len(), 0)
        } else {
            let inv = mat::inverse(r, &y.select_rows(&drop)).expect("image block is invertible");
            y.select_rows(&keep).mul(r, &inv)
        };
        HomologyZero { n0, pivots, free, x, keep, drop, z }
    }

    fn rank(&self) -> usize {
        self.keep.len()
    }

    fn section(&self, r: &GaloisRing, s: usize) -> Vector {
        let col = self.keep[s];
        let mut v = algebra::zero(self.n0);
        v[self.free[col]] = r.one();
        for (k, &p) in self.pivots.iter().enumerate() {
            v[p] = r.neg(self.x[(k, col)]);
        }
        v
    }

    fn project(&self, r: &GaloisRing, v: &[Gr]) -> Vector {
        let k: Vector = self.free.iter().map(|&i| v[i]).collect();
        let kd: Vector = self.drop.iter().map(|&i| k[i]).collect();
        let corr = self.z.mul_vec(r, &kd);
        self.keep.iter().zip(corr).map(|(&i, c)| r.sub(k[i], c)).collect()
    }

    fn actions(&self, r: &GaloisRing, gens: usize, ops: &dyn DegreeZero) -> (Vec<Mat>, Vec<Mat>) {
        let sec: Vec<Vector> = (0..self.rank()).map(|s| self.section(r, s)).collect();
        let sec = Mat::from_cols(self.n0, &sec);
        let mk = |m: Mat| -> Mat {
            let cols: Vec<Vector> = m.cols_vec().iter().map(|v| self.project(r, v)).collect();
            Mat::from_cols(self.rank(), &cols)
        };
        let lm = (0..gens).map(|s| mk(ops.left(s, &sec))).collect();
        let rm = (0..gens).map(|s| mk(ops.right(s, &sec))).collect();
        (lm, rm)
    }
}

/// A bimodule over `GR[H]` on which both actions factor through a block of rank
/// `rank` is isomorphic to that block iff it has rank `rank` and an element `h` with
/// `s·h = h·s` for all generators that generates it as a left module.
fn is_regular_bimodule(r: &GaloisRing, lm: &[Mat], rm: &[Mat], rank: usize, seed: u64) -> bool {
    let mut stack = Mat::zeros(0, rank);
    for (a, b) in lm.iter().zip(rm) {
        stack = stack.vstack(&a.sub(r, b));
    }
    let central = mat::lattice_kernel(r, &stack);
    if central.is_empty() {
        return false;
    }
    let generates = |h: &Vector| -> bool {
        let mut ech = ResidueEchelon::new(r);
        let mut queue = VecDeque::new();
        if ech.insert(r, h) {
            queue.push_back(h.clone());
        }
        while let Some(v) = queue.pop_front() {
            for m in lm {
                let w = m.mul_vec(r, &v);
                if ech.insert(r, &w) {
                    queue.push_back(w);
                }
            }
        }
        ech.rank() == rank
    };
    if central.iter().any(generates) {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..16).any(|_| {
        let c = algebra::random_vec(r, central.len(), &mut rng);
        let mut h = algebra::zero(rank);
        for (v, &ci) in central.iter().zip(&c) {
            h = algebra::add(r, &h, &algebra::scale(r, v, ci));
        }
        generates(&h)
    })
}

/// Applies `m` to the index at position `axis` of a vector with the given shape.
fn act_axis(r: &GaloisRing, v: &[Gr], shape: &[usize], axis: usize, m: &Mat) -> Vector {
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let k = shape[axis];
    let mut out = algebra::zero(v.len());
    for o in 0..outer {
        for i in 0..inner {
            for a in 0..k {
                let x = v[(o * k + a) * inner + i];
                if x == Gr::ZERO {
                    continue;
                }
                for b in 0..k {
                    let y = m[(b, a)];
                    if y != Gr::ZERO {
                        let idx = (o * k + b) * inner + i;
                        out[idx] = r.mul_add(out[idx], y, x);
                    }
                }
            }
        }
    }
    out
}

struct BigZero<'a> {
    pair: &'a BlockPair,
    w: InducedSpace,
    tzz: Piece,
    shape: [usize; 3],
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl DegreeZero for BigZero<'_> {
    fn left(&self, s: usize, m: &Mat) -> Mat {
        let g = self.pair.g();
        let a = g.gen_indices()[s];
        act_split(&self.pair.ring, &self.tzz, |v| self.w.left(g, a, v), &self.shape, 0, self.left.get(s), m)
    }

    fn right(&self, s: usize, m: &Mat) -> Mat {
        let g = self.pair.g();
        let a = g.gen_indices()[s];
        act_split(&self.pair.ring, &self.tzz, |v| self.w.right(g, v, a), &self.shape, 2, self.right.get(s), m)
    }
}

fn big_side(cx: &TwoTermComplex, seed: u64) -> SideReport {
    let pair = &cx.pair;
    let r = &pair.ring;
    let ga = &pair.big;
    let g = pair.g();
    let z = &cx.z;
    let w = InducedSpace::new(g, &pair.embedding);
    let mut src = Vec::new();
    let cands = w.reps.iter().enumerate().flat_map(|(c, &rep)| (0..g.order() as u32).map(move |h| (c as u32, rep, h)));
    let mut ech = ResidueEchelon::new(r);
    let mut basis = Vec::new();
    for (c, rep, h) in cands {
        let v = w.tensor(r, g, &ga.left_by(rep, z), &ga.right_by(z, h));
        if ech.insert(r, &v) {
            basis.push(v);
            src.push((c, h));
        }
    }
    let tzz = Piece::from_pivots(r, w.dim(), basis, ech.pivots());
    let tr = tzz.rank();
    let block_rank = left_ideal_piece(ga, &pair.block).rank();
    let Some(part) = &cx.part else {
        let ops = BigZero { pair, w, tzz, shape: [0; 3], left: Vec::new(), right: Vec::new() };
        let t = ThreeTerm { n: [0, tr, 0], d1: Mat::zeros(tr, 0), d0: Mat::zeros(0, tr), gens: g.gens().len() };
        return analyze(r, &t, &ops, block_rank, seed);
    };
    let na = &pair.local;
    let nn = pair.n();
    let emb = &pair.embedding;
    let x = &part.x;
    let fg = pair.embed(&part.f);
    let ae = left_ideal_piece(ga, &part.e);
    let fza = right_ideal_piece(ga, &ga.mul(&fg, z));
    let faf = two_sided_piece(na, &part.f, &part.f);
    let ea = right_ideal_piece(ga, &part.e);
    let zf = ga.mul(z, &fg);
    let azf = left_ideal_piece(ga, &zf);
    let (ra, rz, rk, re, rzf) = (ae.rank(), fza.rank(), faf.rank(), ea.rank(), azf.rank());
    let n = [ra * rz, tr + ra * rk * re, rzf * re];
    let xinv: Vec<Vector> = (0..nn.order() as u32).map(|k| ga.right_by(x, emb[nn.inv(k) as usize])).collect();

    let mut d1 = Mat::zeros(n[1], n[0]);
    let ux: Vec<Vector> = ae.basis.iter().map(|u| ga.mul(u, x)).collect();
    let kn: Vec<Vector> =
        (0..nn.order() as u32).map(|k| faf.coords(r, &na.mul(&na.right_by(&part.f, k), &part.f))).collect();
    let neg = r.neg(r.one());
    for (j, wj) in fza.basis.iter().enumerate() {
        let mut s = algebra::zero(rk * re);
        for (k, xk) in xinv.iter().enumerate() {
            let l = ea.coords(r, &ga.mul(xk, wj));
            add_kron2(r, &mut s, neg, &kn[k], &l);
        }
        for (i, uxi) in ux.iter().enumerate() {
            let col = i * rz + j;
            let tc = tzz.coords(r, &w.tensor(r, g, uxi, wj));
            for (row, &v) in tc.iter().enumerate() {
                d1[(row, col)] = v;
            }
            for (q, &v) in s.iter().enumerate() {
                d1[(tr + i * rk * re + q, col)] = v;
            }
        }
    }

    let mut d0 = Mat::zeros(n[2], n[1]);
    let left_coords: Vec<Vec<Vector>> = w
        .reps
        .iter()
        .map(|&rep| (0..nn.order()).map(|k| azf.coords(r, &ga.left_by(g.mul(rep, emb[k]), &zf))).collect())
        .collect();
    for (col, &(c, h)) in src.iter().enumerate() {
        let mut acc = algebra::zero(n[2]);
        for k in 0..nn.order() {
            let l = ea.coords(r, &ga.right_by(x, g.mul(emb[nn.inv(k as u32) as usize], h)));
            add_kron2(r, &mut acc, r.one(), &left_coords[c as usize][k], &l);
        }
        for (row, &v) in acc.iter().enumerate() {
            d0[(row, col)] = v;
        }
    }
    for (i, uxi) in ux.iter().enumerate() {
        for (j, kj) in faf.basis.iter().enumerate() {
            let a = azf.coords(r, &ga.mul(uxi, &pair.embed(kj)));
            for l in 0..re {
                let col = tr + (i * rk + j) * re + l;
                for (q, &v) in a.iter().enumerate() {
                    d0[(q * re + l, col)] = v;
                }
            }
        }
    }

    let left = g.gen_indices().iter().map(|&s| ae.matrix_of(r, |v| ga.left_by(s, v))).collect();
    let right = g.gen_indices().iter().map(|&s| ea.matrix_of(r, |v| ga.right_by(v, s))).collect();
    let ops = BigZero { pair, w, tzz, shape: [ra, rk, re], left, right };
    let t = ThreeTerm { n, d1, d0, gens: g.gens().len() };
    analyze(r, &t, &ops, block_rank, seed)
}

struct LocalZero<'a> {
    pair: &'a BlockPair,
    zaz: Piece,
    shape: [usize; 3],
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl DegreeZero for LocalZero<'_> {
    fn left(&self, s: usize, m: &Mat) -> Mat {
        let a = self.pair.embedding[self.pair.n().gen_indices()[s] as usize];
        let ga = &self.pair.big;
        act_split(&self.pair.ring, &self.zaz, |v| ga.left_by(a, v), &self.shape, 0, self.left.get(s), m)
    }

    fn right(&self, s: usize, m: &Mat) -> Mat {
        let a = self.pair.embedding[self.pair.n().gen_indices()[s] as usize];
        let ga = &self.pair.big;
        act_split(&self.pair.ring, &self.zaz, |v| ga.right_by(v, a), &self.shape, 2, self.right.get(s), m)
    }
}

fn local_side(cx: &TwoTermComplex, seed: u64) -> SideReport {
    let pair = &cx.pair;
    let r = &pair.ring;
    let ga = &pair.big;
    let na = &pair.local;
    let nn = pair.n();
    let emb = &pair.embedding;
    let z = &cx.z;
    let zaz = two_sided_piece(ga, z, z);
    let tr = zaz.rank();
    let block_rank = left_ideal_piece(na, &pair.local_block).rank();
    let gens = nn.gens().len();
    let Some(part) = &cx.part else {
        let ops = LocalZero { pair, zaz, shape: [0; 3], left: Vec::new(), right: Vec::new() };
        let t = ThreeTerm { n: [0, tr, 0], d1: Mat::zeros(tr, 0), d0: Mat::zeros(0, tr), gens };
        return analyze(r, &t, &ops, block_rank, seed);
    };
    let x = &part.x;
    let e = &part.e;
    let zae = two_sided_piece(ga, z, e);
    let fa = right_ideal_piece(na, &part.f);
    let af = left_ideal_piece(na, &part.f);
    let eae = two_sided_piece(ga, e, e);
    let eaz = two_sided_piece(ga, e, z);
    let (r1, rf, ra, re, rz) = (zae.rank(), fa.rank(), af.rank(), eae.rank(), eaz.rank());
    let n = [r1 * rf, tr + ra * re * rf, ra * rz];
    let xinv: Vec<Vector> = (0..nn.order() as u32).map(|k| ga.right_by(x, emb[nn.inv(k) as usize])).collect();
    let nf: Vec<Vector> = (0..nn.order() as u32).map(|k| af.coords(r, &na.left_by(k, &part.f))).collect();
    let fag: Vec<Vector> = fa.basis.iter().map(|v| pair.embed(v)).collect();

    let mut d1 = Mat::zeros(n[1], n[0]);
    for (i, wi) in zae.basis.iter().enumerate() {
        let wx = ga.mul(wi, x);
        let mut s = algebra::zero(ra * re);
        for (k, xk) in xinv.iter().enumerate() {
            add_kron2(r, &mut s, r.one(), &nf[k], &eae.coords(r, &ga.mul(xk, wi)));
        }
        for (j, vj) in fag.iter().enumerate() {
            let col = i * rf + j;
            let c = zaz.coords(r, &ga.mul(&wx, vj));
            for (row, &v) in c.iter().enumerate() {
                d1[(row, col)] = v;
            }
            for (q, &v) in s.iter().enumerate() {
                d1[(tr + q * rf + j, col)] = v;
            }
        }
    }

    let mut d0 = Mat::zeros(n[2], n[1]);
    for (col, y) in zaz.basis.iter().enumerate() {
        let mut acc = algebra::zero(n[2]);
        for (k, xk) in xinv.iter().enumerate() {
            add_kron2(r, &mut acc, r.one(), &nf[k], &eaz.coords(r, &ga.mul(xk, y)));
        }
        for (row, &v) in acc.iter().enumerate() {
            d0[(row, col)] = v;
        }
    }
    let neg = r.neg(r.one());
    for (b, kb) in eae.basis.iter().enumerate() {
        let kx = ga.mul(kb, x);
        for (c, vc) in fag.iter().enumerate() {
            let m = eaz.coords(r, &ga.mul(&kx, vc));
            for a in 0..ra {
                let col = tr + (a * re + b) * rf + c;
                for (q, &v) in m.iter().enumerate() {
                    d0[(a * rz + q, col)] = r.mul(neg, v);
                }
            }
        }
    }

    let left = nn.gen_indices().iter().map(|&s| af.matrix_of(r, |v| na.left_by(s, v))).collect();
    let right = nn.gen_indices().iter().map(|&s| fa.matrix_of(r, |v| na.right_by(v, s))).collect();
    let ops = LocalZero { pair, zaz, shape: [ra, re, rf], left, right };
    let t = ThreeTerm { n, d1, d0, gens };
    analyze(r, &t, &ops, block_rank, seed)
}

/// `b′·b·GR[G]·b′` as an `(N, N)`-bimodule: its indecomposable summands and
/// whether it is `A′` plus projectives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableReport {
    pub rank: usize,
    /// `(rank, projective)` per indecomposable summand.
    pub summands: Vec<(usize, bool)>,
    pub non_projective: usize,
    /// The non-projective summand is isomorphic to the regular bimodule `A′`.
    pub block_summand: bool,
    pub passes: bool,
}

pub fn stable_equiv_check<R: RngCore>(pair: &BlockPair, rng: &mut R) -> Result<StableReport, RouquierError> {
    let r = &pair.ring;
    let ga = &pair.big;
    let na = &pair.local;
    let nn = pair.local.group_arc();
    let emb = &pair.embedding;
    let bl = pair.embed(&pair.local_block);
    let piece = two_sided_piece(ga, &ga.mul(&bl, &pair.block), &bl);
    let prod = Arc::new(product_group(&nn, &nn)?);
    let k = nn.gens().len();
    let gi = nn.gen_indices().to_vec();
    let bimod = |ring: &GaloisRing, basis: &[Vector], left: &dyn Fn(u32, &[Gr]) -> Vector, right: &dyn Fn(&[Gr], u32) -> Vector| {
        RepModule::from_action(ring.clone(), prod.clone(), basis, |s, v| {
            if s < k {
                left(gi[s], v)
            } else {
                right(v, nn.inv(gi[s - k]))
            }
        })
    };
    let m = bimod(r, &piece.basis, &|a, v| ga.left_by(emb[a as usize], v), &|v, a| ga.right_by(v, emb[a as usize]))?;
    let local = left_ideal_piece(na, &pair.local_block);
    let a_mod = bimod(r, &local.basis, &|a, v| na.left_by(a, v), &|v, a| na.right_by(v, a))?;
    let dec = modrep::decompose(&m, rng)?;
    let mut summands = Vec::new();
    let mut non_proj = Vec::new();
    for s in &dec.summands {
        let proj = modrep::is_projective_by_norm(&s.module);
        if !proj {
            non_proj.push(&s.module);
        }
        summands.push((s.module.dim(), proj));
    }
    summands.sort_unstable();
    let block_summand = match non_proj.as_slice() {
        [one] => modrep::module_iso(one, &a_mod, rng)?.is_some(),
        _ => false,
    };
    let non_projective = non_proj.len();
    Ok(StableReport {
        rank: piece.rank(),
        summands,
        non_projective,
        block_summand,
        passes: non_projective == 1 && block_summand,
    })
}
