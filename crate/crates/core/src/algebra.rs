//! Finite-rank associative algebras over a Galois ring, seen through a
//! multiplication on coordinate vectors. Everything that splits idempotents
//! or computes radicals works over the residue field (precision one).

use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::coeff::mat::{self, Mat};
use crate::coeff::poly::{Poly, PolyRing};
use crate::coeff::{FieldSpec, GaloisRing, Gr};

pub type Vector = Vec<Gr>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("idempotent splitting did not converge after {0} attempts")]
    NoConvergence(usize),
    #[error("map is not surjective mod p (image rank {rank} < {dim})")]
    NotSurjective { rank: usize, dim: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("idempotent is not primitive")]
    NotPrimitive,
    #[error("idempotents are not conjugate")]
    NotConjugate,
    #[error("subspace is not closed under multiplication")]
    NotSubalgebra,
    #[error("operation needs a field (precision one), got precision {0}")]
    NeedsField(u32),
}

/// A unital associative algebra, free of rank `dim` over its coefficient ring.
pub trait Algebra {
    fn ring(&self) -> &GaloisRing;
    fn dim(&self) -> usize;
    fn mul(&self, a: &[Gr], b: &[Gr]) -> Vector;
    fn one(&self) -> Vector;

    /// A spanning set of the left ideal `A·f`.
    fn left_translates(&self, f: &[Gr]) -> Vec<Vector> {
        let r = self.ring();
        let n = self.dim();
        (0..n).map(|j| self.mul(&basis_vector(r, n, j), f)).collect()
    }
}

pub fn zero(n: usize) -> Vector {
    vec![Gr::ZERO; n]
}

pub fn basis_vector(r: &GaloisRing, n: usize, i: usize) -> Vector {
    let mut v = zero(n);
    v[i] = r.one();
    v
}

pub fn add(r: &GaloisRing, a: &[Gr], b: &[Gr]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| r.add(x, y)).collect()
}

pub fn sub(r: &GaloisRing, a: &[Gr], b: &[Gr]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| r.sub(x, y)).collect()
}

pub fn scale(r: &GaloisRing, a: &[Gr], c: Gr) -> Vector {
    a.iter().map(|&x| r.mul(x, c)).collect()
}

pub fn is_zero(a: &[Gr]) -> bool {
    a.iter().all(|&x| x == Gr::ZERO)
}

pub fn reduce_vec(from: &GaloisRing, to: &GaloisRing, a: &[Gr]) -> Vector {
    a.iter().map(|&x| to.reduce_from(from, x)).collect()
}

pub fn lift_vec(from: &GaloisRing, to: &GaloisRing, a: &[Gr]) -> Vector {
    a.iter().map(|&x| to.lift_from(from, x)).collect()
}

pub fn random_vec<R: RngCore>(r: &GaloisRing, n: usize, rng: &mut R) -> Vector {
    (0..n).map(|_| r.random(rng)).collect()
}

pub fn pow<A: Algebra + ?Sized>(alg: &A, x: &[Gr], mut k: u64, unit: &[Gr]) -> Vector {
    let mut base = x.to_vec();
    let mut acc = unit.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = alg.mul(&acc, &base);
        }
        base = alg.mul(&base, &base);
        k >>= 1;
    }
    acc
}

pub fn is_idempotent<A: Algebra + ?Sized>(alg: &A, e: &[Gr]) -> bool {
    alg.mul(e, e) == e
}

/// Nilpotency over a field: `x^(2^k) = 0` with `2^k ≥ dim`.
pub fn is_nilpotent<A: Algebra + ?Sized>(alg: &A, x: &[Gr]) -> bool {
    let mut y = x.to_vec();
    let mut k = 1;
    while k < alg.dim() {
        y = alg.mul(&y, &y);
        if is_zero(&y) {
            return true;
        }
        k *= 2;
    }
    is_zero(&y)
}

/// Matrix of `x ↦ a·x` in the standard basis.
pub fn left_mul_matrix<A: Algebra + ?Sized>(alg: &A, a: &[Gr]) -> Mat {
    let r = alg.ring();
    let n = alg.dim();
    let cols: Vec<Vector> = (0..n).map(|j| alg.mul(a, &basis_vector(r, n, j))).collect();
    Mat::from_cols(n, &cols)
}

/// Matrix of `x ↦ x·a` in the standard basis.
pub fn right_mul_matrix<A: Algebra + ?Sized>(alg: &A, a: &[Gr]) -> Mat {
    let r = alg.ring();
    let n = alg.dim();
    let cols: Vec<Vector> = (0..n).map(|j| alg.mul(&basis_vector(r, n, j), a)).collect();
    Mat::from_cols(n, &cols)
}

/// A basis of the span of `vecs` over a field, in reduced echelon form.
pub fn span_basis(field: &GaloisRing, n: usize, vecs: &[Vector]) -> Vec<Vector> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(vecs);
    let e = mat::rref(field, &m);
    (0..e.pivots.len()).map(|i| e.rref.row(i).to_vec()).filter(|v| v.len() == n).collect()
}

/// Incremental echelon basis over a field, recording each stored row as a
/// combination of the vectors inserted so far.
#[derive(Clone)]
pub struct Echelon {
    field: GaloisRing,
    rows: Vec<EchelonRow>,
    inserted: usize,
}

#[derive(Clone)]
struct EchelonRow {
    piv: usize,
    v: Vector,
    comb: Vector,
}

impl Echelon {
    pub fn new(field: &GaloisRing) -> Self {
        Echelon { field: field.clone(), rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination, and the combination of inserted
    /// vectors that was subtracted.
    fn reduce(&self, v: &[Gr]) -> (Vector, Vector) {
        let f = &self.field;
        let mut v = v.to_vec();
        let mut comb = zero(self.inserted);
        for row in &self.rows {
            let c = v[row.piv];
            if c == Gr::ZERO {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(&row.v) {
                if y != Gr::ZERO {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            for (x, &y) in comb.iter_mut().zip(&row.comb) {
                if y != Gr::ZERO {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        (v, comb)
    }

    pub fn contains(&self, v: &[Gr]) -> bool {
        is_zero(&self.reduce(v).0)
    }

    /// Coefficients `c` with `v = Σ c_i v_i` over the inserted vectors, if `v` is in the span.
    pub fn express(&self, v: &[Gr]) -> Option<Vector> {
        let (res, comb) = self.reduce(v);
        is_zero(&res).then_some(comb)
    }

    /// Inserts `v`. If it depends on earlier vectors, returns the relation
    /// `v = Σ c_i v_i` and stores nothing.
    pub fn insert(&mut self, v: &[Gr]) -> Option<Vector> {
        let f = self.field.clone();
        let (res, comb) = self.reduce(v);
        let Some(piv) = res.iter().position(|&x| x != Gr::ZERO) else {
            return Some(comb);
        };
        let inv = f.inv(res[piv]).expect("nonzero pivot");
        let row: Vector = res.iter().map(|&x| f.mul(x, inv)).collect();
        let mut rc: Vector = comb.iter().map(|&x| f.neg(f.mul(x, inv))).collect();
        rc.push(inv);
        self.rows.push(EchelonRow { piv, v: row, comb: rc });
        self.inserted += 1;
        None
    }
}

/// Minimal polynomial over the residue field of `x` in the corner with identity `unit`.
pub fn min_poly<A: Algebra + ?Sized>(alg: &A, x: &[Gr], unit: &[Gr]) -> Poly {
    let f = alg.ring();
    let mut ech = Echelon::new(f);
    let mut cur = unit.to_vec();
    loop {
        if let Some(rel) = ech.insert(&cur) {
            let mut poly: Poly = rel.iter().map(|&c| f.neg(c)).collect();
            poly.push(f.one());
            return poly;
        }
        cur = alg.mul(&cur, x);
    }
}

/// `p(x)` with `x^0 = unit`.
pub fn eval_poly<A: Algebra + ?Sized>(alg: &A, poly: &[Gr], x: &[Gr], unit: &[Gr]) -> Vector {
    let r = alg.ring();
    let mut acc = zero(alg.dim());
    for &c in poly.iter().rev() {
        acc = alg.mul(&acc, x);
        acc = add(r, &acc, &scale(r, unit, c));
    }
    acc
}

/// Basis over a field of the left ideal `A·f`.
pub fn left_ideal_basis<A: Algebra + ?Sized>(alg: &A, f: &[Gr]) -> Vec<Vector> {
    span_basis(alg.ring(), alg.dim(), &alg.left_translates(f))
}

/// Basis over a field of `e·A·f`, given a basis of `A·f`.
pub fn corner_from_ideal<A: Algebra + ?Sized>(alg: &A, e: &[Gr], af: &[Vector]) -> Vec<Vector> {
    let prods: Vec<Vector> = af.iter().map(|v| alg.mul(e, v)).collect();
    span_basis(alg.ring(), alg.dim(), &prods)
}

/// Basis over a field of the corner `e·A·f`.
pub fn corner_basis<A: Algebra + ?Sized>(alg: &A, e: &[Gr], f: &[Gr]) -> Vec<Vector> {
    corner_from_ideal(alg, e, &left_ideal_basis(alg, f))
}

/// For primitive idempotents `e`, `f` over a field: `Ae ≅ Af` iff some product
/// `x·y` with `x ∈ eAf`, `y ∈ fAe` is a unit of the local ring `eAe`, i.e. not nilpotent.
/// Takes bases of `Ae` and `Af`.
pub fn primitive_idempotents_equivalent<A: Algebra + ?Sized>(
    alg: &A,
    e: &[Gr],
    ae: &[Vector],
    f: &[Gr],
    af: &[Vector],
) -> bool {
    if ae.len() != af.len() {
        return false;
    }
    let eaf = corner_from_ideal(alg, e, af);
    let fae = corner_from_ideal(alg, f, ae);
    eaf.iter().any(|x| fae.iter().any(|y| !is_nilpotent(alg, &alg.mul(x, y))))
}

/// One attempt at splitting the idempotent `e` using a random element of `eAe`.
/// Returns orthogonal idempotents summing to `e` when the attempt succeeds.
pub fn try_split<A: Algebra + ?Sized, R: RngCore>(alg: &A, e: &[Gr], rng: &mut R) -> Option<Vec<Vector>> {
    let f = alg.ring();
    let r = random_vec(f, alg.dim(), rng);
    let x = alg.mul(&alg.mul(e, &r), e);
    let m = min_poly(alg, &x, e);
    let ring = PolyRing::new(f);
    let factors = ring.factor(&m, rng);
    if factors.len() < 2 {
        return None;
    }
    let parts: Vec<Poly> =
        factors.iter().map(|(g, k)| (0..*k).fold(ring.one(), |acc, _| ring.mul(&acc, g))).collect();
    let eps = ring.crt_idempotents(&parts);
    Some(eps.iter().map(|p| eval_poly(alg, p, &x, e)).collect())
}

/// Configuration for randomized idempotent splitting.
#[derive(Clone, Copy, Debug)]
pub struct SplitConfig {
    /// Unsuccessful attempts before a corner is tested for locality.
    pub attempts_before_certificate: usize,
    /// Hard cap on attempts per idempotent.
    pub max_attempts: usize,
    /// Corners of at most this dimension over the prime field get an exact locality certificate.
    pub certificate_dim: usize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig { attempts_before_certificate: 6, max_attempts: 400, certificate_dim: 32 }
    }
}

/// Decomposes `e` into primitive orthogonal idempotents over a field.
pub fn primitive_idempotents<A: Algebra + ?Sized, R: RngCore>(
    alg: &A,
    e: &[Gr],
    cfg: &SplitConfig,
    rng: &mut R,
) -> Result<Vec<Vector>, AlgebraError> {
    if alg.ring().precision() != 1 {
        return Err(AlgebraError::NeedsField(alg.ring().precision()));
    }
    let mut done = Vec::new();
    let mut stack = vec![e.to_vec()];
    while let Some(cur) = stack.pop() {
        if is_zero(&cur) {
            continue;
        }
        let mut attempts = 0;
        let mut certified = false;
        loop {
            if let Some(parts) = try_split(alg, &cur, rng) {
                stack.extend(parts);
                break;
            }
            attempts += 1;
            if attempts >= cfg.attempts_before_certificate && !certified {
                let corner = corner_basis(alg, &cur, &cur);
                if corner.len() * alg.ring().degree() <= cfg.certificate_dim {
                    certified = true;
                    if corner_is_local(alg, &cur, &corner) {
                        done.push(cur);
                        break;
                    }
                }
            }
            if attempts >= cfg.max_attempts {
                if certified {
                    return Err(AlgebraError::NoConvergence(attempts));
                }
                // corner too large to certify: repeated failure is strong evidence of locality
                done.push(cur);
                break;
            }
        }
    }
    Ok(done)
}

/// True iff `eAe` is local: its radical quotient is commutative and its
/// Frobenius-fixed subalgebra is one-dimensional, i.e. the quotient is a field.
pub fn corner_is_local<A: Algebra + ?Sized>(alg: &A, e: &[Gr], corner: &[Vector]) -> bool {
    let Ok(sub) = FiniteAlgebra::subalgebra(alg, corner, e) else {
        return false;
    };
    is_local(&sub)
}

pub fn is_local(alg: &FiniteAlgebra) -> bool {
    let f = alg.ring();
    let n = alg.dim();
    let rad = radical(alg);
    if rad.len() == n {
        return false;
    }
    let q = Quotient::new(alg, &rad);
    let m = q.dim();
    for i in 0..m {
        for j in 0..i {
            let (a, b) = (q.lift(&basis_vector(f, m, i)), q.lift(&basis_vector(f, m, j)));
            if !q.is_zero_mod(&sub(f, &alg.mul(&a, &b), &alg.mul(&b, &a))) {
                return false;
            }
        }
    }
    berlekamp_dim(&q) == 1
}

/// The quotient of a field algebra by an ideal, with a complement basis.
pub struct Quotient<'a> {
    alg: &'a FiniteAlgebra,
    ideal_rank: usize,
    full: Echelon,
    complement: Vec<usize>,
}

impl<'a> Quotient<'a> {
    pub fn new(alg: &'a FiniteAlgebra, ideal_basis: &[Vector]) -> Self {
        let f = alg.ring();
        let n = alg.dim();
        let mut full = Echelon::new(f);
        for v in ideal_basis {
            full.insert(v);
        }
        let ideal_rank = full.rank();
        let mut complement = Vec::new();
        for i in 0..n {
            if full.insert(&basis_vector(f, n, i)).is_none() {
                complement.push(i);
            }
        }
        Quotient { alg, ideal_rank, full, complement }
    }

    pub fn lift(&self, v: &[Gr]) -> Vector {
        let mut out = zero(self.alg.dim());
        for (k, &i) in self.complement.iter().enumerate() {
            out[i] = v[k];
        }
        out
    }

    pub fn is_zero_mod(&self, v: &[Gr]) -> bool {
        is_zero(&self.project(v))
    }

    /// Coordinates in the quotient of an algebra element.
    pub fn project(&self, v: &[Gr]) -> Vector {
        let comb = self.full.express(v).expect("ideal plus complement span the algebra");
        comb[self.ideal_rank..].to_vec()
    }
}
impl Algebra for Quotient<'_> {
    fn ring(&self) -> &GaloisRing {
        self.alg.ring()
    }
    fn dim(&self) -> usize {
        self.complement.len()
    }
    fn mul(&self, a: &[Gr], b: &[Gr]) -> Vector {
        self.project(&self.alg.mul(&self.lift(a), &self.lift(b)))
    }
    fn one(&self) -> Vector {
        self.project(&self.alg.one())
    }
}

/// Dimension of `{z : z^q = z}` in a commutative algebra over `F_q`.
pub fn berlekamp_dim<A: Algebra + ?Sized>(alg: &A) -> usize {
    berlekamp_basis(alg).len()
}

pub fn berlekamp_basis<A: Algebra + ?Sized>(alg: &A) -> Vec<Vector> {
    let f = alg.ring();
    let n = alg.dim();
    let one = alg.one();
    // z ↦ z^q is F_q-linear on a commutative algebra over F_q
    let cols: Vec<Vector> =
        (0..n).map(|j| sub(f, &pow(alg, &basis_vector(f, n, j), f.q(), &one), &basis_vector(f, n, j))).collect();
    let m = Mat::from_cols(n, &cols);
    mat::kernel_mod_p(f, &m).cols_vec()
}

/// Primitive idempotents of a commutative semisimple-split algebra over `F_q`,
/// found by splitting along eigenvalues of basis elements of the Berlekamp subalgebra.
pub fn commutative_primitive_idempotents<A: Algebra + ?Sized>(alg: &A) -> Vec<Vector> {
    let f = alg.ring();
    let basis = berlekamp_basis(alg);
    let target = basis.len();
    let mut idems = vec![alg.one()];
    let ring = PolyRing::new(f);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for b in &basis {
        if idems.len() == target {
            break;
        }
        let mut next = Vec::new();
        for e in &idems {
            let x = alg.mul(e, b);
            let m = min_poly(alg, &x, e);
            let roots = ring.factor(&m, &mut rng);
            if roots.len() < 2 {
                next.push(e.clone());
                continue;
            }
            let parts: Vec<Poly> = roots.iter().map(|(g, _)| g.clone()).collect();
            for p in ring.crt_idempotents(&parts) {
                next.push(eval_poly(alg, &p, &x, e));
            }
        }
        idems = next;
    }
    idems
}

/// Jacobson radical over a finite field, by the iterated-trace-kernel method on
/// the regular representation restricted to the prime field.
pub fn radical(alg: &FiniteAlgebra) -> Vec<Vector> {
    let fq = alg.ring();
    let p = fq.p();
    let d = fq.degree();
    let n = alg.dim();
    let np = n * d;
    let fp = GaloisRing::new(FieldSpec::prime(p), 1).expect("prime field");
    let a = fq.generator();
    let mut fp_basis: Vec<Vector> = Vec::with_capacity(np);
    for i in 0..n {
        let mut c = fq.one();
        for _ in 0..d {
            let mut v = zero(n);
            v[i] = c;
            fp_basis.push(v);
            c = fq.mul(c, a);
        }
    }
    let to_fp = |v: &[Gr]| -> Vec<u32> { v.iter().flat_map(|x| fq.digits(*x)).collect() };
    let from_fp = |w: &[u32]| -> Vector {
        (0..n).map(|i| fq.from_coeffs(&w[i * d..(i + 1) * d].iter().map(|&c| c as i64).collect::<Vec<_>>())).collect()
    };
    // regular representation over F_p: reg[k][(i, j)] = i-th coordinate of b_k · b_j
    let reg: Vec<Vec<u32>> = fp_basis
        .iter()
        .map(|u| {
            let mut m = vec![0u32; np * np];
            for (j, b) in fp_basis.iter().enumerate() {
                for (i, c) in to_fp(&alg.mul(u, b)).into_iter().enumerate() {
                    m[i * np + j] = c;
                }
            }
            m
        })
        .collect();
    let pp = p as u64;
    let combine = |w: &[u32]| -> Vec<u32> {
        let mut m = vec![0u64; np * np];
        for (k, &c) in w.iter().enumerate() {
            if c != 0 {
                for (x, &v) in m.iter_mut().zip(&reg[k]) {
                    *x += c as u64 * v as u64;
                }
            }
        }
        m.into_iter().map(|x| (x % pp) as u32).collect()
    };
    let matmul_p = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; np * np];
        for i in 0..np {
            for k in 0..np {
                let a = x[i * np + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..np {
                    out[i * np + j] = ((out[i * np + j] as u64 + a * y[k * np + j] as u64) % pp) as u32;
                }
            }
        }
        out
    };
    let mut levels = 0u32;
    let mut t = np;
    while t >= p as usize {
        t /= p as usize;
        levels += 1;
    }
    let basis_mats: Vec<Vec<u32>> = (0..np).map(|k| reg[k].clone()).collect();
    let mut ideal: Vec<Vec<u32>> = (0..np).map(|i| (0..np).map(|j| (i == j) as u32).collect()).collect();
    for i in 0..=levels {
        if ideal.is_empty() {
            break;
        }
        let ring = GaloisRing::new(FieldSpec::prime(p), i + 1).expect("small precision");
        let pi = pp.pow(i);
        let mut constraint = Mat::zeros(np, ideal.len());
        for (c, w) in ideal.iter().enumerate() {
            let xm = combine(w);
            for (r, ym) in basis_mats.iter().enumerate() {
                let prod = matmul_p(&xm, ym);
                let lifted = Mat { rows: np, cols: np, data: prod.iter().map(|&v| ring.from_i64(v as i64)).collect() };
                let tr = if pi == 1 { lifted.trace(&ring) } else { mat_pow(&ring, &lifted, pi).trace(&ring) };
                let tr = tr.coeffs()[0] as u64;
                constraint[(r, c)] = fp.from_i64(((tr / pi) % pp) as i64);
            }
        }
        let ker = mat::kernel_mod_p(&fp, &constraint);
        ideal = (0..ker.cols)
            .map(|k| {
                let mut v = vec![0u64; np];
                for (c, w) in ideal.iter().enumerate() {
                    let coef = ker[(c, k)].coeffs()[0] as u64;
                    if coef != 0 {
                        for (x, &y) in v.iter_mut().zip(w) {
                            *x += coef * y as u64;
                        }
                    }
                }
                v.into_iter().map(|x| (x % pp) as u32).collect()
            })
            .collect();
    }
    let vecs: Vec<Vector> = ideal.iter().map(|w| from_fp(w)).collect();
    span_basis(fq, n, &vecs)
}

/// An algebra given by structure constants `e_i e_j = Σ_k c_ijk e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ring: GaloisRing,
    dim: usize,
    consts: Vec<Gr>,
    unit: Vector,
}

impl FiniteAlgebra {
    pub fn new(ring: GaloisRing, dim: usize, consts: Vec<Gr>, unit: Vector) -> Self {
        assert_eq!(consts.len(), dim * dim * dim);
        assert_eq!(unit.len(), dim);
        FiniteAlgebra { ring, dim, consts, unit }
    }

    /// Builds the structure constants from a product of basis elements.
    pub fn from_products(ring: GaloisRing, dim: usize, unit: Vector, mut prod: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut consts = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = prod(i, j);
                assert_eq!(v.len(), dim);
                consts.extend(v);
            }
        }
        FiniteAlgebra { ring, dim, consts, unit }
    }

    /// Full matrix algebra `M_n`.
    pub fn matrix_algebra(ring: GaloisRing, n: usize) -> Self {
        let dim = n * n;
        let mut unit = zero(dim);
        for i in 0..n {
            unit[i * n + i] = ring.one();
        }
        let one = ring.one();
        Self::from_products(ring, dim, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut v = zero(dim);
            if j == k {
                v[i * n + l] = one;
            }
            v
        })
    }

    /// The subalgebra (or corner) spanned by `basis` inside `alg`, with identity `unit`.
    /// The basis must be a direct summand (independent mod `p`).
    pub fn subalgebra<A: Algebra + ?Sized>(alg: &A, basis: &[Vector], unit: &[Gr]) -> Result<Self, AlgebraError> {
        let r = alg.ring();
        let n = alg.dim();
        let b = Mat::from_cols(n, basis);
        let coords = mat::summand_coordinates(r, &b).ok_or(AlgebraError::NotSubalgebra)?;
        let d = basis.len();
        let to_coords = |v: &[Gr]| -> Result<Vector, AlgebraError> {
            let c = coords.mul_vec(r, v);
            if b.mul_vec(r, &c) != v {
                return Err(AlgebraError::NotSubalgebra);
            }
            Ok(c)
        };
        let mut consts = Vec::with_capacity(d * d * d);
        for x in basis {
            for y in basis {
                consts.extend(to_coords(&alg.mul(x, y))?);
            }
        }
        let u = to_coords(unit)?;
        Ok(FiniteAlgebra { ring: r.clone(), dim: d, consts, unit: u })
    }

    pub fn consts(&self) -> &[Gr] {
        &self.consts
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Gr {
        self.consts[(i * self.dim + j) * self.dim + k]
    }

    pub fn at_precision(&self, m: u32) -> Self {
        let ring = self.ring.at_precision(m).expect("lower precision");
        let consts = reduce_vec(&self.ring, &ring, &self.consts);
        let unit = reduce_vec(&self.ring, &ring, &self.unit);
        FiniteAlgebra { ring, dim: self.dim, consts, unit }
    }

    /// Associativity on every basis triple.
    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        let r = &self.ring;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let (a, b, c) = (basis_vector(r, n, i), basis_vector(r, n, j), basis_vector(r, n, k));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..i).all(|j| (0..n).all(|k| self.structure_constant(i, j, k) == self.structure_constant(j, i, k))))
    }
}

impl Algebra for FiniteAlgebra {
    fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn mul(&self, a: &[Gr], b: &[Gr]) -> Vector {
        let r = &self.ring;
        let n = self.dim;
        let mut out = zero(n);
        for (i, &ai) in a.iter().enumerate() {
            if ai == Gr::ZERO {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == Gr::ZERO {
                    continue;
                }
                let c = r.mul(ai, bj);
                let row = &self.consts[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, &s) in out.iter_mut().zip(row) {
                    if s != Gr::ZERO {
                        *o = r.mul_add(*o, c, s);
                    }
                }
            }
        }
        out
    }

    fn one(&self) -> Vector {
        self.unit.clone()
    }
}

/// Lifts an idempotent known mod `p` to an idempotent mod `p^N` by `e ↦ 3e² − 2e³`.
pub fn lift_idempotent<A: Algebra + ?Sized>(alg: &A, e: &[Gr]) -> Vector {
    let r = alg.ring();
    let three = r.from_i64(3);
    let two = r.from_i64(2);
    let mut cur = e.to_vec();
    let mut prec = 1;
    while prec < 2 * r.precision() {
        let e2 = alg.mul(&cur, &cur);
        if e2 == cur {
            break;
        }
        let e3 = alg.mul(&e2, &cur);
        cur = sub(r, &scale(r, &e2, three), &scale(r, &e3, two));
        prec *= 2;
    }
    cur
}

/// Lifts an orthogonal family of idempotents mod `p` (lifted coordinates given at
/// full precision) to an orthogonal family mod `p^N`, each lifted inside the
/// complement of the previous ones.
pub fn lift_orthogonal_family<A: Algebra + ?Sized>(alg: &A, family: &[Vector]) -> Vec<Vector> {
    let r = alg.ring();
    let mut out: Vec<Vector> = Vec::with_capacity(family.len());
    let mut rest = alg.one();
    for e in family {
        let cut = alg.mul(&alg.mul(&rest, e), &rest);
        let lifted = lift_idempotent(alg, &cut);
        rest = sub(r, &rest, &lifted);
        out.push(lifted);
    }
    out
}

/// Two-sided inverse of `x`, via the left-multiplication matrix.
pub fn inverse<A: Algebra + ?Sized>(alg: &A, x: &[Gr]) -> Result<Vector, AlgebraError> {
    let r = alg.ring();
    let lm = left_mul_matrix(alg, x);
    let one = alg.one();
    let sol = mat::solve(r, &lm, &Mat::from_cols(alg.dim(), core::slice::from_ref(&one))).ok_or(AlgebraError::NotAUnit)?;
    let y = sol.col(0);
    if alg.mul(&y, x) != one {
        return Err(AlgebraError::NotAUnit);
    }
    Ok(y)
}

fn mat_pow(ring: &GaloisRing, m: &Mat, mut k: u64) -> Mat {
    let mut acc = Mat::identity(ring, m.rows);
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(ring, &base);
        }
        base = base.mul(ring, &base);
        k >>= 1;
    }
    acc
}
