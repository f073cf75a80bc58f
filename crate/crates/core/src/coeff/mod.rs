//! Finite fields `F_q` and Galois rings `GR(p^N, f)`, the finite-precision
//! model of the unramified ring `Z_q`, plus Hensel lifting of idempotents.

mod gr;
pub mod mat;
pub mod poly;

use alloc::vec;
use alloc::vec::Vec;

pub use gr::{is_prime, FieldSpec, GaloisRing, Gr, MAX_DEGREE};
pub use mat::Mat;

use crate::groups::PermGroup;
use poly::PolyRing;

/// Default p-adic precision exponent.
pub const DEFAULT_PRECISION: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("element is not a unit (zero mod p)")]
    NotAUnit,
    #[error("cannot reduce to precision {requested}: element only known mod p^{available}")]
    PrecisionTooHigh { requested: u32, available: u32 },
    #[error("{p}^{n} does not fit the 32-bit coefficient word")]
    PrecisionTooLarge { p: u32, n: u32 },
    #[error("residue degree {0} unsupported (max {MAX_DEGREE})")]
    DegreeTooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} is not a power of {p}")]
    NotAPowerOf { q: u64, p: u32 },
    #[error("no primitive root of unity of order {0} in the residue field")]
    NoRootOfUnity(u64),
}

/// Multiplicative order of `p` modulo `n` (with `gcd(p, n) = 1`).
pub fn multiplicative_order(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = p % n;
    while x != 1 {
        x = x * (p % n) % n;
        k += 1;
    }
    k
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest monic irreducible of degree `d` over `F_p`, where candidates are
/// ordered by the integer `Σ c_i p^i` of their non-leading digits.
pub fn smallest_irreducible(p: u32, d: usize) -> Result<FieldSpec, CoeffError> {
    if !is_prime(p as u64) {
        return Err(CoeffError::NotPrime(p as u64));
    }
    if d == 1 {
        return Ok(FieldSpec::prime(p));
    }
    if d > MAX_DEGREE {
        return Err(CoeffError::DegreeTooLarge(d));
    }
    let fp = GaloisRing::new(FieldSpec::prime(p), 1)?;
    let ring = PolyRing::new(&fp);
    let total = (p as u64).pow(d as u32);
    for k in 0..total {
        let mut digits = vec![0u32; d + 1];
        let mut t = k;
        for c in digits.iter_mut().take(d) {
            *c = (t % p as u64) as u32;
            t /= p as u64;
        }
        digits[d] = 1;
        let poly: Vec<Gr> = digits.iter().map(|&c| fp.from_i64(c as i64)).collect();
        if ring.is_irreducible(&poly) {
            return Ok(FieldSpec { p, f: digits });
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Smallest `F_q` containing a primitive `n`th root of unity for every
/// element order `n` of `G` prime to `p`: the degree is `lcm ord_n(p)`.
pub fn choose_coefficient_field(g: &PermGroup, p: u32) -> Result<FieldSpec, CoeffError> {
    if !is_prime(p as u64) {
        return Err(CoeffError::NotPrime(p as u64));
    }
    let mut d = 1u64;
    for n in g.element_orders() {
        if n % p as u64 != 0 {
            let k = multiplicative_order(p as u64, n);
            d = d / gcd(d, k) * k;
        }
    }
    smallest_irreducible(p, d as usize)
}

/// The field of size `q` (a power of `p`), for overriding the automatic choice.
pub fn field_of_size(p: u32, q: u64) -> Result<FieldSpec, CoeffError> {
    let mut d = 0;
    let mut t = q;
    while t > 1 && t.is_multiple_of(p as u64) {
        t /= p as u64;
        d += 1;
    }
    if t != 1 || d == 0 {
        return Err(CoeffError::NotAPowerOf { q, p });
    }
    smallest_irreducible(p, d)
}

/// One Hensel step `e' = 3e² − 2e³`; doubles the precision to which `e` is idempotent.
pub fn hensel_idempotent(ring: &GaloisRing, e: &Mat) -> Mat {
    let e2 = e.mul(ring, e);
    let e3 = e2.mul(ring, e);
    e2.scale(ring, ring.from_i64(3)).sub(ring, &e3.scale(ring, ring.from_i64(2)))
}

/// Iterates [`hensel_idempotent`] from an idempotent mod `p` to an exact idempotent mod `p^N`.
pub fn hensel_idempotent_fixpoint(ring: &GaloisRing, e: &Mat) -> Mat {
    let mut cur = e.clone();
    let mut prec = 1;
    while prec < ring.precision() {
        cur = hensel_idempotent(ring, &cur);
        prec *= 2;
    }
    debug_assert_eq!(cur.mul(ring, &cur), cur);
    cur
}

/// The chain of reductions `GR(p^N) → GR(p^M)`, `M ≤ N`.
#[derive(Clone, Debug)]
pub struct PrecisionTower {
    top: GaloisRing,
}

impl PrecisionTower {
    pub fn new(top: GaloisRing) -> Self {
        PrecisionTower { top }
    }

    pub fn top(&self) -> &GaloisRing {
        &self.top
    }

    pub fn level(&self, m: u32) -> Result<GaloisRing, CoeffError> {
        if m > self.top.precision() {
            return Err(CoeffError::PrecisionTooHigh { requested: m, available: self.top.precision() });
        }
        self.top.at_precision(m)
    }

    pub fn reduce(&self, x: Gr, m: u32) -> Result<Gr, CoeffError> {
        self.top.reduce_precision(x, m)
    }
}
