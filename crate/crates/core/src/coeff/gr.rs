use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use super::CoeffError;

/// Largest residue degree `deg(f)` supported by the fixed-size element storage.
pub const MAX_DEGREE: usize = 8;

/// An element of a Galois ring, stored as a polynomial residue `Σ c_i a^i`.
///
/// The element carries no context; every operation goes through the owning
/// [`GaloisRing`]. Unused high coefficients are always zero, so `==` and `Ord`
/// are meaningful within one ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Gr(pub(crate) [u32; MAX_DEGREE]);

impl Gr {
    pub const ZERO: Gr = Gr([0; MAX_DEGREE]);

    pub fn coeffs(&self) -> &[u32; MAX_DEGREE] {
        &self.0
    }
}

/// Residue field data: a prime `p` and a monic irreducible `f` over `F_p`
/// (coefficients listed from the constant term up, leading 1 included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub f: Vec<u32>,
}

impl FieldSpec {
    /// The prime field, presented with `f = x`.
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, f: vec![0, 1] }
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.degree() as u32)
    }
}

/// `GR(p^N, f) = (Z/p^N)[x] / (f̃)`, where `f̃` lifts `f` with digits in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisRing {
    spec: FieldSpec,
    n: u32,
    modulus: u32,
    deg: usize,
    // x^deg = Σ red[i] x^i
    red: [u32; MAX_DEGREE],
}

impl GaloisRing {
    pub fn new(spec: FieldSpec, n: u32) -> Result<Self, CoeffError> {
        let deg = spec.degree();
        if deg == 0 || deg > MAX_DEGREE {
            return Err(CoeffError::DegreeTooLarge(deg));
        }
        if n == 0 {
            return Err(CoeffError::PrecisionTooLarge { p: spec.p, n });
        }
        let modulus = (spec.p as u64)
            .checked_pow(n)
            .filter(|m| *m < (1u64 << 32))
            .ok_or(CoeffError::PrecisionTooLarge { p: spec.p, n })? as u32;
        let mut red = [0u32; MAX_DEGREE];
        for i in 0..deg {
            let c = spec.f[i] % spec.p;
            red[i] = (modulus - c) % modulus;
        }
        Ok(GaloisRing { spec, n, modulus, deg, red })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Size of the residue field.
    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    pub fn at_precision(&self, m: u32) -> Result<GaloisRing, CoeffError> {
        GaloisRing::new(self.spec.clone(), m)
    }

    pub fn residue_field(&self) -> GaloisRing {
        self.at_precision(1).expect("precision one always fits")
    }

    pub fn zero(&self) -> Gr {
        Gr::ZERO
    }

    pub fn one(&self) -> Gr {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Gr {
        let mut c = [0u32; MAX_DEGREE];
        c[0] = k.rem_euclid(self.modulus as i64) as u32;
        Gr(c)
    }

    /// Builds an element from raw coefficients, reducing each mod `p^N`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Gr {
        let mut out = [0u32; MAX_DEGREE];
        let mut acc = vec![0i64; coeffs.len().max(self.deg)];
        acc[..coeffs.len()].copy_from_slice(coeffs);
        // fold powers a^k, k >= deg, back through the defining relation
        for k in (self.deg..acc.len()).rev() {
            let c = acc[k].rem_euclid(self.modulus as i64);
            acc[k] = 0;
            for i in 0..self.deg {
                let t = (c as i128 * self.red[i] as i128) % self.modulus as i128;
                acc[k - self.deg + i] = ((acc[k - self.deg + i] as i128 + t) % self.modulus as i128) as i64;
            }
        }
        for i in 0..self.deg {
            out[i] = acc[i].rem_euclid(self.modulus as i64) as u32;
        }
        Gr(out)
    }

    /// The generator `a` of the residue extension (the class of `x`).
    pub fn generator(&self) -> Gr {
        self.from_coeffs(&[0, 1])
    }

    pub fn is_zero(&self, x: Gr) -> bool {
        x == Gr::ZERO
    }

    pub fn is_one(&self, x: Gr) -> bool {
        x == self.one()
    }

    pub fn add(&self, x: Gr, y: Gr) -> Gr {
        let m = self.modulus as u64;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.deg {
            c[i] = ((x.0[i] as u64 + y.0[i] as u64) % m) as u32;
        }
        Gr(c)
    }

    pub fn sub(&self, x: Gr, y: Gr) -> Gr {
        let m = self.modulus as u64;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.deg {
            c[i] = ((x.0[i] as u64 + m - y.0[i] as u64) % m) as u32;
        }
        Gr(c)
    }

    pub fn neg(&self, x: Gr) -> Gr {
        self.sub(Gr::ZERO, x)
    }

    pub fn mul(&self, x: Gr, y: Gr) -> Gr {
        let m = self.modulus as u64;
        if self.deg == 1 {
            let mut c = [0u32; MAX_DEGREE];
            c[0] = ((x.0[0] as u64 * y.0[0] as u64) % m) as u32;
            return Gr(c);
        }
        let mut t = [0u64; 2 * MAX_DEGREE];
        if self.wide_cap().is_some() {
            self.add_wide(&mut t, x, y);
            return self.reduce_wide(&mut t);
        }
        let d = self.deg;
        for i in 0..d {
            for j in 0..d {
                t[i + j] = (t[i + j] + x.0[i] as u64 * y.0[j] as u64) % m;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = t[k];
            for i in 0..d {
                t[k - d + i] = (t[k - d + i] + c * self.red[i] as u64) % m;
            }
        }
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..d {
            c[i] = t[i] as u32;
        }
        Gr(c)
    }

    /// How many [`GaloisRing::add_wide`] calls fit between reductions of the
    /// accumulator, if any.
    #[inline]
    pub(crate) fn wide_cap(&self) -> Option<u64> {
        let m = self.modulus as u64;
        let step = (m - 1).checked_mul(m - 1)?.checked_mul(self.deg as u64)?.max(1);
        let cap = (u64::MAX - m) / step;
        (cap > 0).then_some(cap)
    }

    /// Adds the unreduced polynomial product `x·y` to `t`. Each call adds less than
    /// `degree·modulus²` to an entry.
    #[inline]
    pub(crate) fn add_wide(&self, t: &mut [u64; 2 * MAX_DEGREE], x: Gr, y: Gr) {
        let d = self.deg;
        for i in 0..d {
            let xi = x.0[i] as u64;
            if xi == 0 {
                continue;
            }
            for j in 0..d {
                t[i + j] += xi * y.0[j] as u64;
            }
        }
    }

    /// The element represented by an unreduced polynomial, clearing `t`.
    pub(crate) fn reduce_wide(&self, t: &mut [u64; 2 * MAX_DEGREE]) -> Gr {
        let m = self.modulus as u64;
        let d = self.deg;
        for k in (d..2 * d - 1).rev() {
            let c = t[k] % m;
            t[k] = 0;
            if c == 0 {
                continue;
            }
            for i in 0..d {
                t[k - d + i] = t[k - d + i] % m + c * self.red[i] as u64;
            }
        }
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..d {
            c[i] = (t[i] % m) as u32;
            t[i] = 0;
        }
        Gr(c)
    }

    /// `acc + x*y`, the inner step of every dot product.
    #[inline]
    pub fn mul_add(&self, acc: Gr, x: Gr, y: Gr) -> Gr {
        if self.deg == 1 {
            let m = self.modulus as u64;
            let mut c = [0u32; MAX_DEGREE];
            c[0] = ((acc.0[0] as u64 + x.0[0] as u64 * y.0[0] as u64) % m) as u32;
            return Gr(c);
        }
        self.add(acc, self.mul(x, y))
    }

    pub fn mul_int(&self, x: Gr, k: i64) -> Gr {
        self.mul(x, self.from_i64(k))
    }

    pub fn pow(&self, x: Gr, mut e: u64) -> Gr {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// p-adic valuation; `N` for zero.
    pub fn valuation(&self, x: Gr) -> u32 {
        let p = self.spec.p;
        let mut v = self.n;
        for i in 0..self.deg {
            let mut c = x.0[i];
            if c == 0 {
                continue;
            }
            let mut k = 0;
            while c.is_multiple_of(p) {
                c /= p;
                k += 1;
            }
            v = v.min(k);
        }
        v
    }

    pub fn is_unit(&self, x: Gr) -> bool {
        let p = self.spec.p;
        (0..self.deg).any(|i| !x.0[i].is_multiple_of(p))
    }

    /// Divides by `p^k`; the input must be divisible. The result is the
    /// representative with digits below `p^(N-k)`.
    pub fn div_p_pow(&self, x: Gr, k: u32) -> Gr {
        if k == 0 {
            return x;
        }
        let pk = self.spec.p.pow(k);
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.deg {
            debug_assert!(x.0[i].is_multiple_of(pk), "element not divisible by p^k");
            c[i] = x.0[i] / pk;
        }
        Gr(c)
    }

    pub fn mul_p_pow(&self, x: Gr, k: u32) -> Gr {
        if k >= self.n {
            return Gr::ZERO;
        }
        self.mul_int(x, self.spec.p.pow(k) as i64)
    }

    /// Inverse via the residue field and Newton iteration `y <- y(2 - xy)`.
    pub fn inv(&self, x: Gr) -> Result<Gr, CoeffError> {
        if !self.is_unit(x) {
            return Err(CoeffError::NotAUnit);
        }
        let field = self.residue_field();
        let xbar = field.reduce_from(self, x);
        let ybar = field.pow(xbar, field.q() - 2);
        let mut y = self.lift_from(&field, ybar);
        let two = self.from_i64(2);
        let mut prec = 1;
        while prec < self.n {
            y = self.mul(y, self.sub(two, self.mul(x, y)));
            prec *= 2;
        }
        debug_assert!(self.is_one(self.mul(x, y)));
        Ok(y)
    }

    /// Reinterprets an element of `other` (any precision, same `f`) in `self`
    /// by reducing its digits. Only meaningful when `self` has lower or equal precision.
    pub fn reduce_from(&self, other: &GaloisRing, x: Gr) -> Gr {
        debug_assert_eq!(self.spec, other.spec);
        let m = self.modulus;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.deg {
            c[i] = x.0[i] % m;
        }
        Gr(c)
    }

    /// Lifts an element of a lower-precision ring using its digit representatives.
    pub fn lift_from(&self, other: &GaloisRing, x: Gr) -> Gr {
        debug_assert_eq!(self.spec, other.spec);
        debug_assert!(other.n <= self.n);
        x
    }

    /// Coefficientwise reduction to precision `m`, a ring homomorphism.
    pub fn reduce_precision(&self, x: Gr, m: u32) -> Result<Gr, CoeffError> {
        if m > self.n {
            return Err(CoeffError::PrecisionTooHigh { requested: m, available: self.n });
        }
        let target = self.at_precision(m)?;
        Ok(target.reduce_from(self, x))
    }

    /// Signed representative of an element of `Z/p^N` inside the ring, or `None`
    /// if the element has a nonzero coefficient beyond the constant term.
    pub fn to_i64(&self, x: Gr) -> Option<i64> {
        if (1..self.deg).any(|i| x.0[i] != 0) {
            return None;
        }
        let v = x.0[0] as i64;
        let m = self.modulus as i64;
        Some(if v > m / 2 { v - m } else { v })
    }

    pub fn random<R: RngCore>(&self, rng: &mut R) -> Gr {
        let mut c = [0u32; MAX_DEGREE];
        for ci in c.iter_mut().take(self.deg) {
            *ci = rng.next_u32() % self.modulus;
        }
        Gr(c)
    }

    /// A random unit.
    pub fn random_unit<R: RngCore>(&self, rng: &mut R) -> Gr {
        loop {
            let x = self.random(rng);
            if self.is_unit(x) {
                return x;
            }
        }
    }

    /// The residue-field element with digit expansion `k = Σ c_i p^i` (needs `k < q`).
    pub fn field_element(&self, mut k: u64) -> Gr {
        let p = self.spec.p as u64;
        let mut c = [0u32; MAX_DEGREE];
        for ci in c.iter_mut().take(self.deg) {
            *ci = (k % p) as u32;
            k /= p;
        }
        Gr(c)
    }

    /// Teichmüller representative: the unique `t ≡ x mod p` with `t^q = t`.
    pub fn teichmuller(&self, x: Gr) -> Gr {
        let q = self.q();
        let mut t = x;
        for _ in 0..self.n {
            t = self.pow(t, q);
        }
        t
    }

    /// A primitive `n`th root of unity, built as a Teichmüller lift from a
    /// generator of the residue field's unit group.
    pub fn root_of_unity(&self, n: u64) -> Result<Gr, CoeffError> {
        let q = self.q();
        if n == 0 || !(q - 1).is_multiple_of(n) {
            return Err(CoeffError::NoRootOfUnity(n));
        }
        let field = self.residue_field();
        let primes = prime_factors(q - 1);
        let mut gen = None;
        for k in 1..q {
            let a = field.field_element(k);
            if primes.iter().all(|&r| !field.is_one(field.pow(a, (q - 1) / r))) {
                gen = Some(a);
                break;
            }
        }
        let g = gen.expect("finite field has a primitive element");
        let z = field.pow(g, (q - 1) / n);
        Ok(self.teichmuller(self.lift_from(&field, z)))
    }

    pub fn format(&self, x: Gr) -> String {
        if let Some(v) = self.to_i64(x) {
            let mut s = String::new();
            let _ = write!(s, "{v}");
            return s;
        }
        let mut s = String::new();
        let mut first = true;
        for i in 0..self.deg {
            if x.0[i] == 0 {
                continue;
            }
            if !first {
                s.push('+');
            }
            first = false;
            match i {
                0 => {
                    let _ = write!(s, "{}", x.0[i]);
                }
                1 => {
                    let _ = write!(s, "{}a", x.0[i]);
                }
                _ => {
                    let _ = write!(s, "{}a^{}", x.0[i], i);
                }
            }
        }
        s
    }

    /// Digits of the element, `deg(f)` of them.
    pub fn digits(&self, x: Gr) -> Vec<u32> {
        x.0[..self.deg].to_vec()
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}
