//! Lifting units and idempotents along surjections `f: A → B` of finite-rank
//! algebras over `GR(p^N)`, and Burnside-level witnesses for splittings of
//! permutation modules.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::algebra::{self, Algebra, AlgebraError, FiniteAlgebra, Quotient, SplitConfig, Vector};
use crate::burnside::{BurnsideError, SpanComposer, SpanKind, SpanSpace};
use crate::coeff::mat::{self, Mat};
use crate::coeff::{GaloisRing, Gr};
use crate::groups::GroupLimits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("map is not surjective mod p (image rank {rank} < {dim})")]
    NotSurjective { rank: usize, dim: usize },
    #[error("map is not an algebra homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("idempotent is not primitive")]
    NotPrimitive,
    #[error("idempotents are not conjugate: {0}")]
    NotConjugate(String),
    #[error("matrix does not commute with the group action")]
    NotEquivariant,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
}

/// Attempts of random corner elements before giving up on an isomorphism.
const ISO_SAMPLES: usize = 64;

/// A surjective algebra homomorphism, given by its matrix on the bases.
#[derive(Clone, Debug)]
pub struct Surjection<'a> {
    pub source: &'a FiniteAlgebra,
    pub target: &'a FiniteAlgebra,
    /// `dim B × dim A`; column `i` is the image of the `i`th basis element.
    pub matrix: Mat,
}

impl<'a> Surjection<'a> {
    /// Checks that `f` is unital, multiplicative on basis pairs and onto mod `p`.
    pub fn new(source: &'a FiniteAlgebra, target: &'a FiniteAlgebra, matrix: Mat) -> Result<Self, LiftError> {
        let r = source.ring();
        if matrix.rows != target.dim() || matrix.cols != source.dim() {
            return Err(LiftError::NotAHomomorphism(format!("matrix is {}×{}", matrix.rows, matrix.cols)));
        }
        let rank = mat::rank_mod_p(r, &matrix);
        if rank < target.dim() {
            return Err(LiftError::NotSurjective { rank, dim: target.dim() });
        }
        let f = Surjection { source, target, matrix };
        if f.apply(&source.one()) != target.one() {
            return Err(LiftError::NotAHomomorphism("f(1) ≠ 1".into()));
        }
        let n = source.dim();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (algebra::basis_vector(r, n, i), algebra::basis_vector(r, n, j));
                if f.apply(&source.mul(&a, &b)) != target.mul(&f.apply(&a), &f.apply(&b)) {
                    return Err(LiftError::NotAHomomorphism(format!("f(e{i}·e{j}) ≠ f(e{i})·f(e{j})")));
                }
            }
        }
        Ok(f)
    }

    pub fn apply(&self, a: &[Gr]) -> Vector {
        self.matrix.mul_vec(self.source.ring(), a)
    }

    /// Some preimage of `b`.
    fn preimage(&self, b: &[Gr]) -> Vector {
        let r = self.source.ring();
        mat::solve(r, &self.matrix, &Mat::from_cols(b.len(), &[b.to_vec()]))
            .expect("a map onto a free module mod p is onto")
            .col(0)
    }
}

/// A unit `a` of `A` with `f(a) = b`: first a unit preimage mod `p`, found in the
/// semisimple quotient `A/J`, then the p-adic correction `a ↦ a + p^v x` with
/// `f(x) = −(f(a) − b)/p^v`.
pub fn lift_unit(f: &Surjection, b: &[Gr]) -> Result<Vector, LiftError> {
    let r = f.source.ring();
    algebra::inverse(f.target, b).map_err(|_| LiftError::NotAUnit)?;
    let fq = r.residue_field();
    let a_p = f.source.at_precision(1);
    let f_p = f.matrix.reduce(r, &fq);
    let a0 = algebra::reduce_vec(r, &fq, &f.preimage(b));
    let kernel = mat::kernel_mod_p(&fq, &f_p).cols_vec();
    let rad = algebra::radical(&a_p);
    let quot = Quotient::new(&a_p, &rad);
    // the image of ker f in A/J is an ideal, a product of Wedderburn factors with identity c
    let ideal = algebra::span_basis(&fq, quot.dim(), &kernel.iter().map(|v| quot.project(v)).collect::<Vec<_>>());
    let mut unit_mod_p = a0.clone();
    if !ideal.is_empty() {
        let c = ideal_identity(&quot, &ideal).ok_or(LiftError::NotAUnit)?;
        let one_minus_a0 = algebra::sub(&fq, &quot.one(), &quot.project(&a0));
        let t = quot.lift(&quot.mul(&c, &one_minus_a0));
        // pick i ∈ ker f with i ≡ t modulo J
        let mut cols = kernel.clone();
        cols.extend(rad.iter().cloned());
        let sol = mat::solve(&fq, &Mat::from_cols(a_p.dim(), &cols), &Mat::from_cols(a_p.dim(), &[t]))
            .ok_or(LiftError::NotAUnit)?
            .col(0);
        let i = kernel.iter().zip(&sol).fold(algebra::zero(a_p.dim()), |acc, (k, &s)| {
            algebra::add(&fq, &acc, &algebra::scale(&fq, k, s))
        });
        unit_mod_p = algebra::add(&fq, &a0, &i);
    }
    algebra::inverse(&a_p, &unit_mod_p).map_err(|_| LiftError::NotAUnit)?;
    let mut a = algebra::lift_vec(&fq, r, &unit_mod_p);
    for _ in 0..=r.precision() {
        let d = algebra::sub(r, &f.apply(&a), b);
        if algebra::is_zero(&d) {
            break;
        }
        let v = d.iter().map(|&x| r.valuation(x)).min().unwrap_or(0);
        debug_assert!(v >= 1);
        let y: Vector = d.iter().map(|&x| r.neg(r.div_p_pow(x, v))).collect();
        let x = f.preimage(&y);
        a = algebra::add(r, &a, &x.iter().map(|&c| r.mul_p_pow(c, v)).collect::<Vec<_>>());
    }
    if f.apply(&a) != b {
        return Err(LiftError::NotAUnit);
    }
    algebra::inverse(f.source, &a).map_err(|_| LiftError::NotAUnit)?;
    Ok(a)
}

/// The identity element of a two-sided ideal of a semisimple algebra.
fn ideal_identity<A: Algebra + ?Sized>(alg: &A, ideal: &[Vector]) -> Option<Vector> {
    let f = alg.ring();
    let n = alg.dim();
    let k = ideal.len();
    // Σ_m γ_m (I_m I_l) = I_l for every l, stacked into one system
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for l in 0..k {
        let prods: Vec<Vector> = ideal.iter().map(|im| alg.mul(im, &ideal[l])).collect();
        for t in 0..n {
            rows.push(prods.iter().map(|v| v[t]).collect::<Vec<_>>());
            rhs.push(vec![ideal[l][t]]);
        }
    }
    let gamma = mat::solve(f, &Mat::from_rows(&rows), &Mat::from_rows(&rhs))?.col(0);
    Some(ideal.iter().zip(&gamma).fold(algebra::zero(n), |acc, (v, &g)| algebra::add(f, &acc, &algebra::scale(f, v, g))))
}

/// `w ∈ eAe` with `z·w = e = w·z`, if `z` is a unit of the corner.
fn corner_inverse<A: Algebra + ?Sized>(alg: &A, e: &[Gr], z: &[Gr]) -> Option<Vector> {
    let r = alg.ring();
    let lm = algebra::left_mul_matrix(alg, z);
    let w = mat::solve(r, &lm, &Mat::from_cols(alg.dim(), &[e.to_vec()]))?.col(0);
    let w = alg.mul(&alg.mul(e, &w), e);
    (alg.mul(z, &w) == e && alg.mul(&w, z) == e).then_some(w)
}

/// Witnesses `x ∈ eAf`, `y ∈ fAe` with `xy = e` and `yx = f` exactly, so that
/// right multiplication by `x` is an isomorphism `Ae → Af`. Basis elements of the
/// corners are tried first (enough when `e` is primitive), then random elements.
pub fn find_iso<A: Algebra + ?Sized, R: RngCore>(alg: &A, e: &[Gr], f: &[Gr], rng: &mut R) -> Option<(Vector, Vector)> {
    let r = alg.ring();
    let n = alg.dim();
    let fq = r.residue_field();
    let rank = |x: &[Gr]| mat::rank_mod_p(r, &algebra::left_mul_matrix(alg, x));
    if rank(e) != rank(f) {
        return None;
    }
    if algebra::is_zero(e) && algebra::is_zero(f) {
        return Some((algebra::zero(n), algebra::zero(n)));
    }
    let corner = |a: &[Gr], v: &[Gr], b: &[Gr]| alg.mul(&alg.mul(a, v), b);
    let try_pair = |x: Vector, y: Vector| -> Option<(Vector, Vector)> {
        let w = corner_inverse(alg, e, &alg.mul(&x, &y))?;
        let y = alg.mul(&y, &w);
        (alg.mul(&y, &x) == f).then_some((x, y))
    };
    let basis_e: Vec<Vector> = (0..n).map(|k| algebra::basis_vector(r, n, k)).collect();
    let efs: Vec<Vector> = span_residue(alg, &fq, basis_e.iter().map(|v| corner(e, v, f)).collect());
    let fes: Vec<Vector> = span_residue(alg, &fq, basis_e.iter().map(|v| corner(f, v, e)).collect());
    for x in &efs {
        for y in &fes {
            if let Some(found) = try_pair(x.clone(), y.clone()) {
                return Some(found);
            }
        }
    }
    for _ in 0..ISO_SAMPLES {
        let x = corner(e, &algebra::random_vec(r, n, rng), f);
        let y = corner(f, &algebra::random_vec(r, n, rng), e);
        if let Some(found) = try_pair(x, y) {
            return Some(found);
        }
    }
    None
}

/// Vectors whose reductions mod `p` form a basis of the span of the reductions.
fn span_residue<A: Algebra + ?Sized>(alg: &A, fq: &GaloisRing, vecs: Vec<Vector>) -> Vec<Vector> {
    let r = alg.ring();
    let mut ech = algebra::Echelon::new(fq);
    vecs.into_iter().filter(|v| ech.insert(&algebra::reduce_vec(r, fq, v)).is_none()).collect()
}

/// A unit `u` with `u·from_k·u⁻¹ = to_k` for complete orthogonal families with
/// `A·from_k ≅ A·to_k`: `u = Σ x_k` for isomorphisms `x_k ∈ to_k A from_k`.
pub fn conjugate_families<A: Algebra + ?Sized, R: RngCore>(
    alg: &A,
    from: &[Vector],
    to: &[Vector],
    rng: &mut R,
) -> Result<(Vector, Vector), LiftError> {
    let r = alg.ring();
    let n = alg.dim();
    let mut u = algebra::zero(n);
    let mut v = algebra::zero(n);
    for (k, (a, b)) in from.iter().zip(to).enumerate() {
        let (x, y) = find_iso(alg, b, a, rng)
            .ok_or_else(|| LiftError::NotConjugate(format!("no isomorphism between the left ideals of pair {k}")))?;
        u = algebra::add(r, &u, &x);
        v = algebra::add(r, &v, &y);
    }
    let one = alg.one();
    if alg.mul(&u, &v) != one || alg.mul(&v, &u) != one {
        return Err(LiftError::NotConjugate("families are not complete".into()));
    }
    Ok((u, v))
}

/// A unit `u` with `u·j·u⁻¹ = i`, built as `u = φ(i) + ψ(1−i)` from isomorphisms
/// `Aj ≅ Ai` and `A(1−j) ≅ A(1−i)`. Returns `(u, u⁻¹)`.
pub fn conjugating_unit<A: Algebra + ?Sized, R: RngCore>(
    alg: &A,
    i: &[Gr],
    j: &[Gr],
    rng: &mut R,
) -> Result<(Vector, Vector), LiftError> {
    let r = alg.ring();
    if !algebra::is_idempotent(alg, i) || !algebra::is_idempotent(alg, j) {
        return Err(LiftError::NotIdempotent);
    }
    let one = alg.one();
    if i == j {
        return Ok((one.clone(), one));
    }
    let from = [j.to_vec(), algebra::sub(r, &one, j)];
    let to = [i.to_vec(), algebra::sub(r, &one, i)];
    let (u, v) = conjugate_families(alg, &from, &to, rng)?;
    if alg.mul(&alg.mul(&u, j), &v) != i {
        return Err(LiftError::NotConjugate("u j u⁻¹ ≠ i".into()));
    }
    Ok((u, v))
}

/// Primitive orthogonal idempotents over `GR(p^N)` summing exactly to `total`.
pub fn primitive_decomposition<R: RngCore>(alg: &FiniteAlgebra, total: &[Gr], rng: &mut R) -> Result<Vec<Vector>, LiftError> {
    let r = alg.ring();
    let fq = r.residue_field();
    let low = alg.at_precision(1);
    let pieces = algebra::primitive_idempotents(&low, &algebra::reduce_vec(r, &fq, total), &SplitConfig::default(), rng)?;
    let mut out = Vec::with_capacity(pieces.len());
    let mut rest = total.to_vec();
    for (k, e) in pieces.iter().enumerate() {
        if k + 1 == pieces.len() {
            out.push(rest.clone());
            break;
        }
        let lifted = algebra::lift_vec(&fq, r, e);
        let cut = alg.mul(&alg.mul(&rest, &lifted), &rest);
        let idem = algebra::lift_idempotent(alg, &cut);
        rest = algebra::sub(r, &rest, &idem);
        out.push(idem);
    }
    Ok(out)
}

/// Output of an idempotent lift.
#[derive(Clone, Debug)]
pub struct LiftWitness {
    pub idempotent: Vector,
    /// The unit `u′` of `A` conjugating the decomposition of `1_A` into place.
    pub unit: Option<Vector>,
    pub steps: Vec<String>,
}

/// Lifts of an orthogonal family of idempotents, sharing one conjugating unit.
#[derive(Clone, Debug)]
pub struct FamilyLift {
    pub idempotents: Vec<Vector>,
    pub unit: Vector,
    pub steps: Vec<String>,
}

/// Lifts orthogonal idempotents `e′_t` of `B` to orthogonal idempotents `e_t` of
/// `A` with `f(e_t) = e′_t`: decompose `1_A = Σ e_i`, push forward, match the
/// primitive pieces of each `e′_t` and of `1 − Σ e′_t` against the nonzero
/// `f(e_i)` by Krull–Schmidt, conjugate by a unit `v` of `B`, lift `v` to a unit
/// `u′` of `A` and take `e_t = Σ u′ e_i u′⁻¹` over the pieces matched to `e′_t`.
pub fn lift_orthogonal_idempotents<R: RngCore>(
    f: &Surjection,
    targets: &[Vector],
    rng: &mut R,
) -> Result<FamilyLift, LiftError> {
    let (a, b) = (f.source, f.target);
    let r = a.ring();
    let mut total = algebra::zero(b.dim());
    for (s, x) in targets.iter().enumerate() {
        if !algebra::is_idempotent(b, x) {
            return Err(LiftError::NotIdempotent);
        }
        if targets.iter().skip(s + 1).any(|y| !algebra::is_zero(&b.mul(x, y)) || !algebra::is_zero(&b.mul(y, x))) {
            return Err(LiftError::NotIdempotent);
        }
        total = algebra::add(r, &total, x);
    }
    let mut steps = Vec::new();
    let ones = primitive_decomposition(a, &a.one(), rng)?;
    steps.push(format!("1_A splits into {} primitive idempotents", ones.len()));
    let pushed: Vec<(usize, Vector)> =
        ones.iter().map(|e| f.apply(e)).enumerate().filter(|(_, e)| !algebra::is_zero(e)).collect();
    steps.push(format!("{} of them survive in B", pushed.len()));
    let complement = algebra::sub(r, &b.one(), &total);
    let mut to: Vec<(Option<usize>, Vector)> = Vec::new();
    for (t, x) in targets.iter().map(Some).chain([None]).enumerate() {
        let whole = x.unwrap_or(&complement);
        let owner = (t < targets.len()).then_some(t);
        if algebra::is_zero(whole) {
            continue;
        }
        let pieces = primitive_decomposition(b, whole, rng)?;
        steps.push(format!("target {t} splits into {} primitive idempotents", pieces.len()));
        to.extend(pieces.into_iter().map(|e| (owner, e)));
    }
    if to.len() != pushed.len() {
        return Err(LiftError::NotConjugate(format!(
            "{} primitive pieces in B but {} images of primitive idempotents of A",
            to.len(),
            pushed.len()
        )));
    }
    let mut used = vec![false; pushed.len()];
    let mut order = Vec::with_capacity(to.len());
    for (k, (_, t)) in to.iter().enumerate() {
        let hit = (0..pushed.len())
            .find(|&m| !used[m] && find_iso(b, t, &pushed[m].1, rng).is_some())
            .ok_or_else(|| LiftError::NotConjugate(format!("piece {k} of the target matches no f(e_i)")))?;
        used[hit] = true;
        order.push(hit);
    }
    steps.push(format!("Krull–Schmidt matching {:?}", order.iter().map(|&m| pushed[m].0).collect::<Vec<_>>()));
    let from: Vec<Vector> = order.iter().map(|&m| pushed[m].1.clone()).collect();
    let images: Vec<Vector> = to.iter().map(|(_, t)| t.clone()).collect();
    let (v, _) = conjugate_families(b, &from, &images, rng)?;
    let u = lift_unit(f, &v)?;
    let uinv = algebra::inverse(a, &u)?;
    steps.push("conjugating unit lifted along f".into());
    let mut idempotents = vec![algebra::zero(a.dim()); targets.len()];
    for (k, &m) in order.iter().enumerate() {
        if let Some(t) = to[k].0 {
            let ei = &ones[pushed[m].0];
            idempotents[t] = algebra::add(r, &idempotents[t], &a.mul(&a.mul(&u, ei), &uinv));
        }
    }
    for (e, x) in idempotents.iter().zip(targets) {
        if !algebra::is_idempotent(a, e) {
            return Err(LiftError::NotIdempotent);
        }
        if f.apply(e) != *x {
            return Err(LiftError::NotConjugate("f(e) differs from the target".into()));
        }
    }
    Ok(FamilyLift { idempotents, unit: u, steps })
}

/// Lifts a single idempotent `e′` of `B` to an idempotent `e` of `A` with `f(e) = e′`.
pub fn lift_idempotent<R: RngCore>(f: &Surjection, target: &[Gr], rng: &mut R) -> Result<LiftWitness, LiftError> {
    let mut fam = lift_orthogonal_idempotents(f, &[target.to_vec()], rng)?;
    Ok(LiftWitness { idempotent: fam.idempotents.pop().expect("one target"), unit: Some(fam.unit), steps: fam.steps })
}

/// Lifts a primitive idempotent, after certifying primitivity: the corner
/// `e′Be′` is local mod `p`.
pub fn lift_primitive_idempotent<R: RngCore>(f: &Surjection, target: &[Gr], rng: &mut R) -> Result<LiftWitness, LiftError> {
    let b = f.target;
    let r = b.ring();
    if !algebra::is_idempotent(b, target) {
        return Err(LiftError::NotIdempotent);
    }
    let fq = r.residue_field();
    let low = b.at_precision(1);
    let t = algebra::reduce_vec(r, &fq, target);
    if algebra::is_zero(&t) || !algebra::corner_is_local(&low, &t, &algebra::corner_basis(&low, &t, &t)) {
        return Err(LiftError::NotPrimitive);
    }
    let w = lift_idempotent(f, target, rng)?;
    let a = f.source;
    let e = algebra::reduce_vec(r, &fq, &w.idempotent);
    let a_low = a.at_precision(1);
    if !algebra::corner_is_local(&a_low, &e, &algebra::corner_basis(&a_low, &e, &e)) {
        return Err(LiftError::NotPrimitive);
    }
    Ok(w)
}

/// A Burnside-level witness: an idempotent of the completed double Burnside
/// algebra `Burn_G(X×X)^∧ ⊗ GR(p^N)` linearizing to a given idempotent matrix.
#[derive(Clone, Debug)]
pub struct BurnsideWitness {
    pub labels: Vec<String>,
    pub coefficients: Vector,
    pub lift: LiftWitness,
}

/// The completed double Burnside algebra of `X` and its linearization onto
/// `End_G(R[X])`, both on explicit bases.
pub struct DoubleBurnside {
    pub space: SpanSpace,
    pub composer: SpanComposer,
    pub algebra: FiniteAlgebra,
    pub endomorphisms: FiniteAlgebra,
    pub linearization: Mat,
}

impl DoubleBurnside {
    pub fn new(space: SpanSpace, ring: &GaloisRing, limits: &GroupLimits) -> Result<Self, LiftError> {
        if !matches!(space.kind(), SpanKind::Completed(_)) {
            return Err(BurnsideError::Mismatch("the completed basis is required".into()).into());
        }
        let composer = SpanComposer::new(&space, &space, &space)?;
        let unit = space.completed_unit(ring, limits)?;
        let algebra = composer.algebra(ring, unit);
        let endomorphisms = space.equivariant_endomorphisms(ring)?;
        let linearization = space.linearization_matrix(ring);
        Ok(DoubleBurnside { space, composer, algebra, endomorphisms, linearization })
    }

    pub fn surjection(&self) -> Result<Surjection<'_>, LiftError> {
        Surjection::new(&self.algebra, &self.endomorphisms, self.linearization.clone())
    }
}

/// Lifts orthogonal equivariant idempotent matrices `e₀` on `R[X]` to orthogonal
/// idempotents of the completed double Burnside algebra, and re-linearizes each
/// to confirm.
pub fn burnside_witnesses<R: RngCore>(db: &DoubleBurnside, e0s: &[Mat], rng: &mut R) -> Result<Vec<BurnsideWitness>, LiftError> {
    let r = db.algebra.ring();
    let mut coords = Vec::with_capacity(e0s.len());
    for e0 in e0s {
        if e0.mul(r, e0) != *e0 {
            return Err(LiftError::NotIdempotent);
        }
        coords.push(db.space.orbit_coordinates(e0).ok_or(LiftError::NotEquivariant)?);
    }
    let f = db.surjection()?;
    let fam = lift_orthogonal_idempotents(&f, &coords, rng)?;
    let mut out = Vec::with_capacity(e0s.len());
    for (e, e0) in fam.idempotents.iter().zip(e0s) {
        if db.composer.compose_gr(r, e, e) != *e {
            return Err(LiftError::NotIdempotent);
        }
        if db.space.linearize(r, e) != *e0 {
            return Err(LiftError::NotConjugate("linearization of the witness differs from e₀".into()));
        }
        let lift = LiftWitness { idempotent: e.clone(), unit: Some(fam.unit.clone()), steps: fam.steps.clone() };
        out.push(BurnsideWitness { labels: db.space.labels(), coefficients: e.clone(), lift });
    }
    Ok(out)
}

/// Lifts one equivariant idempotent matrix; see [`burnside_witnesses`].
pub fn burnside_witness<R: RngCore>(db: &DoubleBurnside, e0: &Mat, rng: &mut R) -> Result<BurnsideWitness, LiftError> {
    Ok(burnside_witnesses(db, core::slice::from_ref(e0), rng)?.pop().expect("one target"))
}

/// The matrix of left multiplication by `a ∈ R[G]` on `R[G]`, on the basis of
/// group elements: an endomorphism of `R[X]` for the two-sided action on `X = G`
/// whenever `a` is central.
pub fn left_multiplication_matrix(g: &crate::groups::PermGroup, ring: &GaloisRing, a: &[Gr]) -> Mat {
    let n = g.order();
    let mut m = Mat::zeros(n, n);
    for (h, &c) in a.iter().enumerate().filter(|(_, &c)| c != Gr::ZERO) {
        for x in 0..n as u32 {
            let y = g.mul(h as u32, x) as usize;
            m[(y, x as usize)] = ring.add(m[(y, x as usize)], c);
        }
    }
    m
}
