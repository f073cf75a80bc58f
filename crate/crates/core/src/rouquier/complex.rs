//! Two-term complexes `N₀′ → N₀` with `N₀′ = A·e ⊗ f·A′` projective, built from
//! a lattice element `x ∈ e·N₀·f`, and their duals.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use super::pieces::Piece;
use super::{left_ideal_piece, right_ideal_piece, verify, Bimodule, BlockPair, InductionSplit, RouquierError};
use crate::algebra::{self, Algebra, Vector};
use crate::coeff::mat::{self, Mat};
use crate::coeff::{GaloisRing, Gr};

/// The lattice `e·N₀·f = e·GR[G]·z·f ≅ Hom(N₀′, N₀)` for a pair of projective
/// indecomposables `A·e` and `A′·f`.
#[derive(Clone, Debug)]
pub struct HomLattice {
    pub big_pim: usize,
    pub local_pim: usize,
    pub e: Vector,
    /// The idempotent of `GR[N]`.
    pub f: Vector,
    piece: Piece,
    ae: Piece,
    af: Piece,
}

impl HomLattice {
    pub fn new(pair: &BlockPair, z: &[Gr], big_pim: usize, local_pim: usize) -> Result<Self, RouquierError> {
        let ga = &pair.big;
        let r = &pair.ring;
        let e = pair.big_pim(big_pim)?.idempotent.clone();
        let f = pair.local_pim(local_pim)?.idempotent.clone();
        let zf = ga.mul(z, &pair.embed(&f));
        let vecs = (0..ga.dim() as u32).map(|g| ga.mul(&ga.right_by(&e, g), &zf));
        let piece = Piece::from_spanning(r, ga.dim(), vecs);
        let ae = left_ideal_piece(ga, &e);
        let af = left_ideal_piece(&pair.local, &f);
        Ok(HomLattice { big_pim, local_pim, e, f, piece, ae, af })
    }

    pub fn rank(&self) -> usize {
        self.piece.rank()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.piece.basis
    }

    pub fn element(&self, ring: &GaloisRing, coeffs: &[Gr]) -> Vector {
        self.piece.vector(ring, coeffs)
    }

    pub fn contains(&self, ring: &GaloisRing, x: &[Gr]) -> bool {
        self.piece.contains(ring, x)
    }

    /// The left `GR[N]`-map `Res(A·e) → A′·f`, `y ↦ π_N(y·x)`, where `π_N` keeps
    /// the coefficients on `N`.
    pub fn associated_map(&self, pair: &BlockPair, x: &[Gr]) -> Mat {
        let r = &pair.ring;
        let cols: Vec<Vector> =
            self.ae.basis.iter().map(|y| self.af.coords(r, &pair.restrict(&pair.big.mul(y, x)))).collect();
        Mat::from_cols(self.af.rank(), &cols)
    }

    pub fn is_surjective(&self, pair: &BlockPair, x: &[Gr]) -> bool {
        mat::rank_mod_p(&pair.ring, &self.associated_map(pair, x)) == self.af.rank()
    }

    /// Deterministic candidate coefficient vectors: the basis, pairwise sums, then
    /// eight pseudo-random vectors from `seed`.
    pub fn candidates(&self, ring: &GaloisRing, seed: u64) -> Vec<Vector> {
        let k = self.rank();
        let mut out: Vec<Vector> = (0..k).map(|i| algebra::basis_vector(ring, k, i)).collect();
        for i in 0..k {
            for j in i + 1..k {
                let mut v = algebra::zero(k);
                v[i] = ring.one();
                v[j] = ring.one();
                out.push(v);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((self.big_pim as u64) << 32 | self.local_pim as u64));
        for _ in 0..8 {
            out.push(algebra::random_vec(ring, k, &mut rng));
        }
        out
    }
}

/// The projective term `A·e ⊗ f·A′` and the differential `u ⊗ v ↦ u·x·v`.
#[derive(Clone, Debug)]
pub struct ProjectivePart {
    pub big_pim: usize,
    pub local_pim: usize,
    pub e: Vector,
    /// The idempotent of `GR[N]`.
    pub f: Vector,
    pub x: Vector,
}

/// `N₀′ → N₀` in degrees 1 and 0; without a projective part the complex is `N₀`
/// in degree 0.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub pair: BlockPair,
    pub z: Vector,
    pub part: Option<ProjectivePart>,
    /// How the complex was found.
    pub log: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// `N₀` alone.
    Trivial,
    /// The first candidate for the given pair whose associated map is surjective mod `p`.
    Explicit { big_pim: usize, local_pim: usize },
    /// The first complex over all pairs and candidates that passes verification.
    Search,
}

impl TwoTermComplex {
    pub fn trivial(pair: &BlockPair, split: &InductionSplit) -> Self {
        TwoTermComplex { pair: pair.clone(), z: split.z.clone(), part: None, log: Vec::new() }
    }

    /// The complex with differential given by `x`, which must lie in the Hom lattice.
    pub fn from_element(lattice: &HomLattice, pair: &BlockPair, split: &InductionSplit, x: Vector) -> Self {
        TwoTermComplex {
            pair: pair.clone(),
            z: split.z.clone(),
            part: Some(ProjectivePart {
                big_pim: lattice.big_pim,
                local_pim: lattice.local_pim,
                e: lattice.e.clone(),
                f: lattice.f.clone(),
                x,
            }),
            log: Vec::new(),
        }
    }

    pub fn precision(&self) -> u32 {
        self.pair.ring.precision()
    }

    pub fn at_precision(&self, m: u32) -> Self {
        let from = &self.pair.ring;
        let to = from.at_precision(m).expect("lower precision");
        let red = |v: &Vector| algebra::reduce_vec(from, &to, v);
        TwoTermComplex {
            pair: self.pair.at_precision(m),
            z: red(&self.z),
            part: self.part.as_ref().map(|p| ProjectivePart {
                big_pim: p.big_pim,
                local_pim: p.local_pim,
                e: red(&p.e),
                f: red(&p.f),
                x: red(&p.x),
            }),
            log: self.log.clone(),
        }
    }

    /// The terms as bimodules in explicit bases and the differential between them.
    pub fn bimodules(&self) -> Result<BimoduleComplex, RouquierError> {
        let pair = &self.pair;
        let r = &pair.ring;
        let ga = &pair.big;
        let na = &pair.local;
        let emb = &pair.embedding;
        let (gg, ng) = (ga.group_arc(), na.group_arc());
        let az = super::left_ideal_piece(ga, &self.z);
        let lower = Bimodule::from_piece(r, gg.clone(), ng.clone(), &az, |g, v| ga.left_by(g, v), |v, n| {
            ga.right_by(v, emb[n as usize])
        })?;
        let Some(part) = &self.part else {
            let upper = Bimodule::new(
                r.clone(),
                gg.clone(),
                ng.clone(),
                vec![Mat::zeros(0, 0); gg.gens().len()],
                vec![Mat::zeros(0, 0); ng.gens().len()],
            )?;
            return Ok(BimoduleComplex { upper, lower, differential: Mat::zeros(az.rank(), 0), upper_degree: 1 });
        };
        let ae = left_ideal_piece(ga, &part.e);
        let fa = right_ideal_piece(na, &part.f);
        let (ra, rf) = (ae.rank(), fa.rank());
        let left_gens: Vec<Mat> = gg
            .gen_indices()
            .iter()
            .map(|&s| kron_mat(r, &ae.matrix_of(r, |v| ga.left_by(s, v)), &Mat::identity(r, rf)))
            .collect();
        let right_gens: Vec<Mat> = ng
            .gen_indices()
            .iter()
            .map(|&s| kron_mat(r, &Mat::identity(r, ra), &fa.matrix_of(r, |v| na.right_by(v, s))))
            .collect();
        let upper = Bimodule::new(r.clone(), gg, ng, left_gens, right_gens)?;
        let mut d = Mat::zeros(az.rank(), ra * rf);
        for (i, u) in ae.basis.iter().enumerate() {
            let ux = ga.mul(u, &part.x);
            for (j, v) in fa.basis.iter().enumerate() {
                let c = az.coords(r, &ga.mul(&ux, &pair.embed(v)));
                for (k, &ck) in c.iter().enumerate() {
                    d[(k, i * rf + j)] = ck;
                }
            }
        }
        Ok(BimoduleComplex { upper, lower, differential: d, upper_degree: 1 })
    }
}

/// `upper → lower` in degrees `upper_degree` and `upper_degree − 1`.
#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    pub upper: Bimodule,
    pub lower: Bimodule,
    pub differential: Mat,
    pub upper_degree: i32,
}

impl BimoduleComplex {
    /// `d` commutes with both actions.
    pub fn is_chain_map(&self) -> bool {
        let r = &self.upper.ring;
        let d = &self.differential;
        let ok = |a: &[Mat], b: &[Mat]| a.iter().zip(b).all(|(x, y)| d.mul(r, x) == y.mul(r, d));
        ok(&self.upper.left_gens, &self.lower.left_gens) && ok(&self.upper.right_gens, &self.lower.right_gens)
    }
}

/// Termwise linear dual with the transposed differential; needs every term
/// projective as a left and as a right module.
pub fn dualize_complex(c: &BimoduleComplex) -> Result<BimoduleComplex, RouquierError> {
    let flags = |m: &Bimodule| m.left_projective && m.right_projective;
    if !flags(&c.upper) || !flags(&c.lower) {
        return Err(RouquierError::FlagMissing);
    }
    Ok(BimoduleComplex {
        upper: c.lower.linear_dual(),
        lower: c.upper.linear_dual(),
        differential: c.differential.transpose(),
        upper_degree: 1 - c.upper_degree,
    })
}

pub(crate) fn kron_mat(r: &GaloisRing, a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a[(i, j)];
            if x == Gr::ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = r.mul(x, b[(k, l)]);
                }
            }
        }
    }
    out
}

/// Builds a complex from `N₀` according to the strategy.
pub fn build_complex(
    pair: &BlockPair,
    split: &InductionSplit,
    strategy: Strategy,
    seed: u64,
) -> Result<TwoTermComplex, RouquierError> {
    let r = &pair.ring;
    match strategy {
        Strategy::Trivial => Ok(TwoTermComplex::trivial(pair, split)),
        Strategy::Explicit { big_pim, local_pim } => {
            let lat = HomLattice::new(pair, &split.z, big_pim, local_pim)?;
            let mut log = Vec::new();
            for (k, c) in lat.candidates(r, seed).iter().enumerate() {
                let x = lat.element(r, c);
                let surj = lat.is_surjective(pair, &x);
                log.push(format!("P{big_pim} Q{local_pim} candidate {k}: surjective {surj}"));
                if surj {
                    let mut cx = TwoTermComplex::from_element(&lat, pair, split, x);
                    cx.log = log;
                    return Ok(cx);
                }
            }
            Err(RouquierError::NotSurjective)
        }
        Strategy::Search => {
            let mut log = Vec::new();
            let trivial = TwoTermComplex::trivial(pair, split);
            let ok = verify::passes(&trivial, seed)?;
            log.push(format!("trivial: verdict {ok}"));
            if ok {
                return Ok(TwoTermComplex { log, ..trivial });
            }
            for i in 0..pair.big_pims.len() {
                for j in 0..pair.local_pims.len() {
                    let lat = HomLattice::new(pair, &split.z, i, j)?;
                    if lat.rank() == 0 {
                        log.push(format!("P{i} Q{j}: empty lattice"));
                        continue;
                    }
                    for (k, c) in lat.candidates(r, seed).iter().enumerate() {
                        let x = lat.element(r, c);
                        if !lat.is_surjective(pair, &x) {
                            log.push(format!("P{i} Q{j} candidate {k}: not surjective"));
                            continue;
                        }
                        let cx = TwoTermComplex::from_element(&lat, pair, split, x);
                        let ok = verify::passes(&cx, seed)?;
                        log.push(format!("P{i} Q{j} candidate {k}: verdict {ok}"));
                        if ok {
                            return Ok(TwoTermComplex { log, ..cx });
                        }
                    }
                }
            }
            Err(RouquierError::NoCandidateFound { log })
        }
    }
}
