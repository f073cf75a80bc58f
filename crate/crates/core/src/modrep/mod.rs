//! Modules over `F_q[G]` and `GR(p^N)[G]` given by one matrix per group
//! generator: homomorphism spaces by spinning, Krull–Schmidt decompositions
//! through endomorphism rings, isomorphism tests and projectivity.

pub mod pims;
pub mod tree;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{self, Algebra, AlgebraError, Echelon, FiniteAlgebra, SplitConfig, Vector};
use crate::coeff::mat::{self, Mat};
use crate::coeff::{GaloisRing, Gr};
use crate::galgebra::GroupAlgebra;
use crate::groups::{GSet, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModError {
    #[error("expected {expected} generator matrices, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("generator matrix {0} is not square of the module dimension")]
    BadShape(usize),
    #[error("generator matrix {0} is not invertible mod p")]
    NotInvertible(usize),
    #[error("the matrices violate a relation of the group")]
    RelationFailed,
    #[error("modules live over different rings or groups")]
    Mismatch,
    #[error("the basis does not span a submodule that is a direct summand")]
    NotASubmodule,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A representation: one invertible matrix per generator of `G`, acting on columns.
#[derive(Clone, Debug)]
pub struct RepModule {
    ring: GaloisRing,
    group: Arc<PermGroup>,
    dim: usize,
    gens: Vec<Mat>,
}

pub fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    core::ptr::eq(a, b) || (a.degree() == b.degree() && a.gens() == b.gens())
}

impl RepModule {
    /// Validated constructor: shapes, invertibility mod `p`, and the group relations
    /// (exhaustively for small groups, on sampled words otherwise).
    pub fn new(ring: GaloisRing, group: Arc<PermGroup>, dim: usize, gens: Vec<Mat>) -> Result<Self, ModError> {
        if gens.len() != group.gens().len() {
            return Err(ModError::GeneratorCount { expected: group.gens().len(), got: gens.len() });
        }
        for (i, m) in gens.iter().enumerate() {
            if m.rows != dim || m.cols != dim {
                return Err(ModError::BadShape(i));
            }
            if mat::rank_mod_p(&ring, m) != dim {
                return Err(ModError::NotInvertible(i));
            }
        }
        let m = RepModule { ring, group, dim, gens };
        if !m.satisfies_relations(24, &mut ChaCha8Rng::seed_from_u64(0x5eed)) {
            return Err(ModError::RelationFailed);
        }
        Ok(m)
    }

    fn unchecked(ring: GaloisRing, group: Arc<PermGroup>, dim: usize, gens: Vec<Mat>) -> Self {
        RepModule { ring, group, dim, gens }
    }

    /// Checks `ρ(s)ρ(a)v = ρ(sa)v` for every generator `s`, with `a` running over the
    /// whole group when it has at most 64 elements and over `samples` random elements otherwise.
    pub fn satisfies_relations<R: RngCore>(&self, samples: usize, rng: &mut R) -> bool {
        let g = &*self.group;
        let order = g.order() as u32;
        let elems: Vec<u32> =
            if order <= 64 { (0..order).collect() } else { (0..samples).map(|_| rng.next_u32() % order).collect() };
        for a in elems {
            let v = algebra::random_vec(&self.ring, self.dim, rng);
            let av = self.act(a, &v);
            for (i, &s) in g.gen_indices().iter().enumerate() {
                if self.act_gen(i, &av) != self.act(g.mul(s, a), &v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trivial(ring: GaloisRing, group: Arc<PermGroup>) -> Self {
        let gens = vec![Mat::identity(&ring, 1); group.gens().len()];
        RepModule::unchecked(ring, group, 1, gens)
    }

    /// The permutation module `R[X]`.
    pub fn permutation(ring: GaloisRing, group: Arc<PermGroup>, x: &GSet) -> Self {
        let n = x.size;
        let gens = (0..group.gens().len() as u32)
            .map(|s| {
                let mut m = Mat::zeros(n, n);
                for p in 0..n as u32 {
                    m[(x.act_gen(s, p) as usize, p as usize)] = ring.one();
                }
                m
            })
            .collect();
        RepModule::unchecked(ring, group, n, gens)
    }

    /// The left regular module `R[G]`.
    pub fn regular(ring: GaloisRing, group: Arc<PermGroup>) -> Self {
        let x = GSet::regular(&group);
        Self::permutation(ring, group, &x)
    }

    /// The module spanned by `basis` (a direct summand of the ambient coordinate
    /// space) under a linear action of each generator.
    pub fn from_action(
        ring: GaloisRing,
        group: Arc<PermGroup>,
        basis: &[Vector],
        act: impl Fn(usize, &[Gr]) -> Vector,
    ) -> Result<Self, ModError> {
        let d = basis.len();
        if d == 0 {
            let gens = vec![Mat::zeros(0, 0); group.gens().len()];
            return Ok(RepModule::unchecked(ring, group, 0, gens));
        }
        let n = basis[0].len();
        let b = Mat::from_cols(n, basis);
        let coords = mat::summand_coordinates(&ring, &b).ok_or(ModError::NotASubmodule)?;
        let mut gens = Vec::with_capacity(group.gens().len());
        for s in 0..group.gens().len() {
            let mut m = Mat::zeros(d, d);
            for (j, v) in basis.iter().enumerate() {
                let w = act(s, v);
                let c = coords.mul_vec(&ring, &w);
                if b.mul_vec(&ring, &c) != w {
                    return Err(ModError::NotASubmodule);
                }
                for i in 0..d {
                    m[(i, j)] = c[i];
                }
            }
            gens.push(m);
        }
        Ok(RepModule::unchecked(ring, group, d, gens))
    }

    /// The left ideal with the given basis, acted on by left multiplication.
    pub fn left_ideal(ga: &GroupAlgebra, basis: &[Vector]) -> Result<Self, ModError> {
        let gi = ga.group().gen_indices().to_vec();
        Self::from_action(ga.ring().clone(), ga.group_arc(), basis, |s, v| ga.left_by(gi[s], v))
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<PermGroup> {
        self.group.clone()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    pub fn act_gen(&self, s: usize, v: &[Gr]) -> Vector {
        self.gens[s].mul_vec(&self.ring, v)
    }

    /// `ρ(a)·v` for the group element with index `a`.
    pub fn act(&self, a: u32, v: &[Gr]) -> Vector {
        let mut out = v.to_vec();
        for s in self.group.word(a) {
            out = self.act_gen(s as usize, &out);
        }
        out
    }

    pub fn matrix_of(&self, a: u32) -> Mat {
        let mut out = Mat::identity(&self.ring, self.dim);
        for s in self.group.word(a) {
            out = self.gens[s as usize].mul(&self.ring, &out);
        }
        out
    }

    /// `ρ(x)` for every element `x` of the subgroup, keyed by position in `elems`.
    pub fn matrices_on(&self, elems: &[u32]) -> Vec<Mat> {
        elems.iter().map(|&x| self.matrix_of(x)).collect()
    }

    pub fn trace(&self, a: u32) -> Gr {
        self.matrix_of(a).trace(&self.ring)
    }

    pub fn at_precision(&self, m: u32) -> Self {
        let ring = self.ring.at_precision(m).expect("lower precision");
        let gens = self.gens.iter().map(|g| g.reduce(&self.ring, &ring)).collect();
        RepModule::unchecked(ring, self.group.clone(), self.dim, gens)
    }

    pub fn residue(&self) -> Self {
        self.at_precision(1)
    }

    /// The contragredient module, `g ↦ ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> Self {
        let gens = self.gens.iter().map(|g| mat::inverse(&self.ring, g).expect("invertible generator").transpose()).collect();
        RepModule::unchecked(self.ring.clone(), self.group.clone(), self.dim, gens)
    }

    pub fn direct_sum(&self, other: &RepModule) -> Result<Self, ModError> {
        self.compatible(other)?;
        let n = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Mat::zeros(n, n);
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        m[(i, j)] = a[(i, j)];
                    }
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m[(self.dim + i, self.dim + j)] = b[(i, j)];
                    }
                }
                m
            })
            .collect();
        Ok(RepModule::unchecked(self.ring.clone(), self.group.clone(), n, gens))
    }

    /// `M ⊗ N` with diagonal action; coordinate `(i, j)` sits at `i·dim N + j`.
    pub fn tensor(&self, other: &RepModule) -> Result<Self, ModError> {
        self.compatible(other)?;
        let r = &self.ring;
        let (a, b) = (self.dim, other.dim);
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(x, y)| {
                let mut m = Mat::zeros(a * b, a * b);
                for i in 0..a {
                    for k in 0..a {
                        let c = x[(i, k)];
                        if c == Gr::ZERO {
                            continue;
                        }
                        for j in 0..b {
                            for l in 0..b {
                                m[(i * b + j, k * b + l)] = r.mul(c, y[(j, l)]);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Ok(RepModule::unchecked(r.clone(), self.group.clone(), a * b, gens))
    }

    /// Restriction to a subgroup given as its own permutation group together with
    /// the indices in `G` of its elements.
    pub fn restrict(&self, sub: Arc<PermGroup>, embedding: &[u32]) -> Self {
        let gens = sub.gen_indices().iter().map(|&s| self.matrix_of(embedding[s as usize])).collect();
        RepModule::unchecked(self.ring.clone(), sub, self.dim, gens)
    }

    /// The submodule spanned by the columns `basis`, which must be a direct summand.
    pub fn submodule(&self, basis: &[Vector]) -> Result<Self, ModError> {
        let gens = self.gens.clone();
        let r = self.ring.clone();
        Self::from_action(self.ring.clone(), self.group.clone(), basis, |s, v| gens[s].mul_vec(&r, v))
    }

    fn compatible(&self, other: &RepModule) -> Result<(), ModError> {
        if self.ring != other.ring || !same_group(&self.group, &other.group) {
            return Err(ModError::Mismatch);
        }
        Ok(())
    }

    /// Whether `map: M → N` commutes with every generator.
    pub fn is_hom_to(&self, other: &RepModule, map: &Mat) -> bool {
        let r = &self.ring;
        self.gens.iter().zip(&other.gens).all(|(a, b)| map.mul(r, a) == b.mul(r, map))
    }
}

/// How a spinning basis vector arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Seed(usize),
    Image { parent: usize, gen: usize },
}

/// A basis of `M` built by applying generators to seed vectors, independent mod `p`.
#[derive(Clone, Debug)]
pub struct SpinBasis {
    pub basis: Mat,
    pub coords: Mat,
    pub origin: Vec<Origin>,
    pub seeds: Vec<Vector>,
}

/// Spins standard basis vectors of `M` under the generators until they span.
pub fn spin(m: &RepModule) -> SpinBasis {
    let r = &m.ring;
    let f = r.residue_field();
    let n = m.dim;
    let mut ech = Echelon::new(&f);
    let mut vecs: Vec<Vector> = Vec::new();
    let mut origin = Vec::new();
    let mut seeds = Vec::new();
    for j in 0..n {
        if ech.rank() == n {
            break;
        }
        let e = algebra::basis_vector(r, n, j);
        if ech.insert(&algebra::reduce_vec(r, &f, &e)).is_some() {
            continue;
        }
        let start = vecs.len();
        vecs.push(e.clone());
        origin.push(Origin::Seed(seeds.len()));
        seeds.push(e);
        let mut k = start;
        while k < vecs.len() {
            for s in 0..m.gens.len() {
                let w = m.act_gen(s, &vecs[k]);
                if ech.insert(&algebra::reduce_vec(r, &f, &w)).is_none() {
                    vecs.push(w);
                    origin.push(Origin::Image { parent: k, gen: s });
                }
            }
            k += 1;
        }
    }
    let basis = Mat::from_cols(n, &vecs);
    let coords = if n == 0 { Mat::zeros(0, 0) } else { mat::inverse(r, &basis).expect("spun basis is a basis") };
    SpinBasis { basis, coords, origin, seeds }
}

/// A basis of `Hom_G(M, N)` over the coefficient ring, stored both as full
/// matrices and as the images of the spinning seeds of `M`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub maps: Vec<Mat>,
    seed_images: Vec<Vector>,
    seeds: Vec<Vector>,
    seed_coords: Mat,
}

impl HomSpace {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn combine(&self, ring: &GaloisRing, coeffs: &[Gr]) -> Mat {
        let (rows, cols) = self.maps.first().map_or((0, 0), |m| (m.rows, m.cols));
        let mut out = Mat::zeros(rows, cols);
        for (m, &c) in self.maps.iter().zip(coeffs) {
            if c != Gr::ZERO {
                out = out.add(ring, &m.scale(ring, c));
            }
        }
        out
    }

    /// Coordinates of a homomorphism in this basis, from its values on the seeds.
    pub fn coordinates(&self, ring: &GaloisRing, map: &Mat) -> Option<Vector> {
        let u: Vector = self.seeds.iter().flat_map(|v| map.mul_vec(ring, v)).collect();
        let c = self.seed_coords.mul_vec(ring, &u);
        let basis = Mat::from_cols(u.len(), &self.seed_images);
        (basis.mul_vec(ring, &c) == u).then_some(c)
    }
}

/// `Hom_G(M, N)`: a homomorphism is determined by the images of the seeds of a
/// spinning basis of `M`, subject to the relations among spun vectors.
pub fn hom(m: &RepModule, n: &RepModule) -> Result<HomSpace, ModError> {
    m.compatible(n)?;
    let r = &m.ring;
    let sp = spin(m);
    let (dm, dn, k) = (m.dim, n.dim, m.gens.len());
    let nseeds = sp.seeds.len();
    let unknowns = nseeds * dn;
    let cs: Vec<Mat> = m.gens.iter().map(|g| sp.coords.mul(r, &g.mul(r, &sp.basis))).collect();
    let images = |u: &[Gr]| -> Mat {
        let mut cols: Vec<Vector> = Vec::with_capacity(dm);
        for o in &sp.origin {
            let c = match *o {
                Origin::Seed(i) => u[i * dn..(i + 1) * dn].to_vec(),
                Origin::Image { parent, gen } => n.act_gen(gen, &cols[parent]),
            };
            cols.push(c);
        }
        Mat::from_cols(dn, &cols)
    };
    let mut system = Mat::zeros(k * dn * dm, unknowns);
    for t in 0..unknowns {
        let phi = images(&algebra::basis_vector(r, unknowns, t));
        for s in 0..k {
            let res = n.gens[s].mul(r, &phi).sub(r, &phi.mul(r, &cs[s]));
            for (i, &x) in res.data.iter().enumerate() {
                system[(s * dn * dm + i, t)] = x;
            }
        }
    }
    let kernel = mat::lattice_kernel(r, &system);
    let maps = kernel.iter().map(|u| images(u).mul(r, &sp.coords)).collect();
    let seed_coords = if kernel.is_empty() {
        Mat::zeros(0, unknowns)
    } else {
        mat::summand_coordinates(r, &Mat::from_cols(unknowns, &kernel)).expect("saturated kernel")
    };
    Ok(HomSpace { maps, seed_images: kernel, seeds: sp.seeds, seed_coords })
}

/// `End_G(M)` as an abstract algebra with `x·y = x ∘ y`.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub hom: HomSpace,
    pub algebra: FiniteAlgebra,
}

impl EndRing {
    pub fn new(m: &RepModule) -> Result<Self, ModError> {
        let r = &m.ring;
        let h = hom(m, m)?;
        let d = h.len();
        let unit = h.coordinates(r, &Mat::identity(r, m.dim)).expect("identity is an endomorphism");
        let algebra = FiniteAlgebra::from_products(r.clone(), d, unit, |a, b| {
            h.coordinates(r, &h.maps[a].mul(r, &h.maps[b])).expect("endomorphisms compose")
        });
        Ok(EndRing { hom: h, algebra })
    }

    pub fn matrix(&self, coeffs: &[Gr]) -> Mat {
        self.hom.combine(self.algebra.ring(), coeffs)
    }
}

/// An indecomposable summand of a decomposition, with its inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: RepModule,
    pub inclusion: Mat,
    pub projection: Mat,
    /// Isomorphism class among the summands of the same decomposition.
    pub class: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub class_count: usize,
}

impl Decomposition {
    /// Summand dimensions with multiplicities, one entry per isomorphism class.
    pub fn class_profile(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0usize, 0usize); self.class_count];
        for s in &self.summands {
            out[s.class] = (s.module.dim(), out[s.class].1 + 1);
        }
        out.sort_unstable();
        out
    }
}

/// Krull–Schmidt decomposition: primitive idempotents of `End_G(M)` mod `p`,
/// lifted to the working precision.
pub fn decompose<R: RngCore>(m: &RepModule, rng: &mut R) -> Result<Decomposition, ModError> {
    if m.dim == 0 {
        return Ok(Decomposition { summands: Vec::new(), class_count: 0 });
    }
    let r = &m.ring;
    let f = r.residue_field();
    let end = EndRing::new(m)?;
    let endp = end.algebra.at_precision(1);
    let idems = algebra::primitive_idempotents(&endp, &endp.one(), &SplitConfig::default(), rng)?;
    let ideals: Vec<Vec<Vector>> = idems.iter().map(|e| algebra::left_ideal_basis(&endp, e)).collect();
    let mut class_of = vec![usize::MAX; idems.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..idems.len() {
        for (c, &j) in reps.iter().enumerate() {
            if algebra::primitive_idempotents_equivalent(&endp, &idems[i], &ideals[i], &idems[j], &ideals[j]) {
                class_of[i] = c;
                break;
            }
        }
        if class_of[i] == usize::MAX {
            class_of[i] = reps.len();
            reps.push(i);
        }
    }
    let lifted_in: Vec<Vector> = idems.iter().map(|e| algebra::lift_vec(&f, r, e)).collect();
    let lifted = algebra::lift_orthogonal_family(&end.algebra, &lifted_in);
    let mut summands = Vec::with_capacity(lifted.len());
    for (e, &class) in lifted.iter().zip(&class_of) {
        let emat = end.matrix(e);
        let cols = mat::independent_cols_mod_p(r, &emat);
        let basis: Vec<Vector> = cols.iter().map(|&j| emat.col(j)).collect();
        let inclusion = Mat::from_cols(m.dim, &basis);
        let coords = mat::summand_coordinates(r, &inclusion).ok_or(ModError::NotASubmodule)?;
        let projection = coords.mul(r, &emat);
        let module = m.submodule(&basis)?;
        summands.push(Summand { module, inclusion, projection, class });
    }
    // canonical order: by dimension, then by class of first appearance
    summands.sort_by_key(|s| (s.module.dim(), s.class));
    let mut renumber = vec![usize::MAX; reps.len()];
    let mut next = 0;
    for s in &mut summands {
        if renumber[s.class] == usize::MAX {
            renumber[s.class] = next;
            next += 1;
        }
        s.class = renumber[s.class];
    }
    Ok(Decomposition { summands, class_count: reps.len() })
}

/// Nilpotency mod `p` of a square matrix, by squaring past its size.
pub fn is_nilpotent_mod_p(ring: &GaloisRing, a: &Mat) -> bool {
    let f = ring.residue_field();
    let mut x = a.reduce(ring, &f);
    let mut k = 1;
    while k < a.rows {
        x = x.mul(&f, &x);
        k *= 2;
    }
    x.is_zero()
}

/// For indecomposable `X`, `Y`: an isomorphism `X → Y` if one exists. `End(X)` is
/// local, so `X ≅ Y` iff some basis composite `ψ∘φ` is not nilpotent.
pub fn indecomposable_iso(x: &RepModule, y: &RepModule) -> Result<Option<Mat>, ModError> {
    if x.dim != y.dim {
        return Ok(None);
    }
    let r = &x.ring;
    let h1 = hom(x, y)?;
    let h2 = hom(y, x)?;
    for phi in &h1.maps {
        for psi in &h2.maps {
            if !is_nilpotent_mod_p(r, &psi.mul(r, phi)) {
                return Ok(Some(phi.clone()));
            }
        }
    }
    Ok(None)
}

/// Isomorphism test with witness: random elements of `Hom_G(M, N)` first, then an
/// exact comparison of Krull–Schmidt decompositions.
pub fn module_iso<R: RngCore>(m: &RepModule, n: &RepModule, rng: &mut R) -> Result<Option<Mat>, ModError> {
    m.compatible(n)?;
    if m.dim != n.dim {
        return Ok(None);
    }
    let r = &m.ring;
    if m.dim == 0 {
        return Ok(Some(Mat::zeros(0, 0)));
    }
    let h = hom(m, n)?;
    if h.is_empty() {
        return Ok(None);
    }
    for _ in 0..16 {
        let c = algebra::random_vec(r, h.len(), rng);
        let w = h.combine(r, &c);
        if mat::rank_mod_p(r, &w) == m.dim {
            return Ok(Some(w));
        }
    }
    let dm = decompose(m, rng)?;
    let dn = decompose(n, rng)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut witness = Mat::zeros(n.dim, m.dim);
    for x in &dm.summands {
        let mut found = None;
        for (j, y) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = indecomposable_iso(&x.module, &y.module)? {
                found = Some((j, phi));
                break;
            }
        }
        let Some((j, phi)) = found else { return Ok(None) };
        used[j] = true;
        let part = dn.summands[j].inclusion.mul(r, &phi).mul(r, &x.projection);
        witness = witness.add(r, &part);
    }
    Ok(Some(witness))
}

/// Projectivity by Krull–Schmidt: every indecomposable summand of `M` mod `p`
/// is isomorphic to one of the given projective indecomposables.
pub fn is_projective<R: RngCore>(m: &RepModule, pims: &[RepModule], rng: &mut R) -> Result<bool, ModError> {
    let mp = m.residue();
    let d = decompose(&mp, rng)?;
    for s in &d.summands {
        let mut hit = false;
        for p in pims.iter().filter(|p| p.dim() == s.module.dim()) {
            if module_iso(&s.module, &p.residue(), rng)?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of free summands of `M` restricted to a Sylow `p`-subgroup `P`: the
/// rank mod `p` of the norm `Σ_{x∈P} ρ(x)`.
pub fn sylow_free_rank(m: &RepModule) -> usize {
    let g = m.group();
    let syl = g.sylow_subgroup(m.ring.p());
    let r = &m.ring;
    let mut norm = Mat::zeros(m.dim, m.dim);
    for &x in syl.elements() {
        norm = norm.add(r, &m.matrix_of(x));
    }
    mat::rank_mod_p(r, &norm)
}

/// Projectivity by the norm criterion: `M` is projective iff its restriction to a
/// Sylow `p`-subgroup is free.
pub fn is_projective_by_norm(m: &RepModule) -> bool {
    let order = m.group().sylow_subgroup(m.ring.p()).order();
    sylow_free_rank(m) * order == m.dim
}

/// The algebra spanned by the matrices of `G` acting on `M`, with its basis matrices.
/// Works over the residue field.
pub fn image_algebra(m: &RepModule) -> (FiniteAlgebra, Vec<Mat>) {
    let r = &m.ring;
    let n = m.dim;
    let mut ech = Echelon::new(r);
    let mut basis: Vec<Mat> = Vec::new();
    let id = Mat::identity(r, n);
    ech.insert(&id.data);
    basis.push(id);
    let mut k = 0;
    while k < basis.len() {
        for g in &m.gens {
            let x = g.mul(r, &basis[k]);
            if ech.insert(&x.data).is_none() {
                basis.push(x);
            }
        }
        k += 1;
    }
    let d = basis.len();
    let unit = algebra::basis_vector(r, d, 0);
    let alg = FiniteAlgebra::from_products(r.clone(), d, unit, |a, b| {
        ech.express(&basis[a].mul(r, &basis[b]).data).expect("closed under products")
    });
    (alg, basis)
}

/// `rad(M) = J·M` with `J` the radical of the image algebra, over a field.
pub fn module_radical(m: &RepModule) -> Result<Vec<Vector>, ModError> {
    let r = &m.ring;
    if r.precision() != 1 {
        return Err(ModError::Algebra(AlgebraError::NeedsField(r.precision())));
    }
    let (alg, basis) = image_algebra(m);
    let j = algebra::radical(&alg);
    let mut vecs = Vec::new();
    for c in &j {
        let mut x = Mat::zeros(m.dim, m.dim);
        for (b, &ci) in basis.iter().zip(c) {
            if ci != Gr::ZERO {
                x = x.add(r, &b.scale(r, ci));
            }
        }
        vecs.extend(x.cols_vec());
    }
    Ok(algebra::span_basis(r, m.dim, &vecs))
}
