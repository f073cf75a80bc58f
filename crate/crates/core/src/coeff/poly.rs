//! Dense univariate polynomials over a finite field `F_q`, presented as a
//! precision-one [`GaloisRing`]. Coefficients run from the constant term up.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::gr::{GaloisRing, Gr};

pub type Poly = Vec<Gr>;

pub struct PolyRing<'a> {
    pub field: &'a GaloisRing,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a GaloisRing) -> Self {
        debug_assert_eq!(field.precision(), 1);
        PolyRing { field }
    }

    pub fn trim(&self, mut a: Poly) -> Poly {
        while let Some(&c) = a.last() {
            if self.field.is_zero(c) {
                a.pop();
            } else {
                break;
            }
        }
        a
    }

    pub fn degree(&self, a: &Poly) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn one(&self) -> Poly {
        vec![self.field.one()]
    }

    pub fn x(&self) -> Poly {
        vec![self.field.zero(), self.field.one()]
    }

    pub fn is_one(&self, a: &Poly) -> bool {
        a.len() == 1 && self.field.is_one(a[0])
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let f = self.field;
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(Gr::ZERO);
                let y = b.get(i).copied().unwrap_or(Gr::ZERO);
                f.add(x, y)
            })
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let f = self.field;
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(Gr::ZERO);
                let y = b.get(i).copied().unwrap_or(Gr::ZERO);
                f.sub(x, y)
            })
            .collect();
        self.trim(out)
    }

    pub fn scale(&self, a: &Poly, c: Gr) -> Poly {
        self.trim(a.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = self.field;
        let mut out = vec![Gr::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], x, y);
            }
        }
        self.trim(out)
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(a, inv)
            }
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let db = b.len() - 1;
        let inv = f.inv(b[db]).expect("nonzero divisor");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), self.trim(r));
        }
        let mut q = vec![Gr::ZERO; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if f.is_zero(c) {
                continue;
            }
            q[k - db] = c;
            for i in 0..=db {
                r[k - db + i] = f.sub(r[k - db + i], f.mul(c, b[i]));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_empty());
        q
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut x = self.trim(a.clone());
        let mut y = self.trim(b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let mut r0 = self.trim(a.clone());
        let mut r1 = self.trim(b.clone());
        let mut s0 = self.one();
        let mut s1 = Vec::new();
        let mut t0 = Vec::new();
        let mut t1 = self.one();
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let inv = self.field.inv(*r0.last().unwrap()).unwrap();
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = self.field;
        let out = a.iter().enumerate().skip(1).map(|(i, &c)| f.mul_int(c, i as i64)).collect();
        self.trim(out)
    }

    pub fn eval(&self, a: &Poly, x: Gr) -> Gr {
        let f = self.field;
        a.iter().rev().fold(Gr::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn pth_root(&self, a: &Poly) -> Poly {
        // zero derivative means a = g(x^p); the p-th root of c in F_q is c^(q/p)
        let f = self.field;
        let p = f.p() as usize;
        let e = f.q() / f.p() as u64;
        let out = (0..a.len()).step_by(p).map(|i| f.pow(a[i], e)).collect();
        self.trim(out)
    }

    /// Square-free decomposition: pairs `(g_i, i)` with `a = Π g_i^i` (monic `a`).
    pub fn squarefree(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let a = self.monic(a);
        let mut out = Vec::new();
        if a.len() <= 1 {
            return out;
        }
        let da = self.derivative(&a);
        if da.is_empty() {
            for (g, m) in self.squarefree(&self.pth_root(&a)) {
                out.push((g, m * self.field.p() as usize));
            }
            return out;
        }
        let mut c = self.gcd(&a, &da);
        let mut w = self.div_exact(&a, &c);
        let mut i = 1;
        while !self.is_one(&w) {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if fac.len() > 1 {
                out.push((fac, i));
            }
            w = y;
            c = self.div_exact(&c, &w);
            i += 1;
        }
        if c.len() > 1 {
            for (g, m) in self.squarefree(&self.pth_root(&c)) {
                out.push((g, m * self.field.p() as usize));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let q = self.field.q();
        let mut out = Vec::new();
        let mut rest = self.monic(a);
        let mut h = self.x();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.powmod(&h, q, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &self.x()));
            if g.len() > 1 {
                rest = self.div_exact(&rest, &g);
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a product of distinct irreducibles of common degree `d` (Cantor–Zassenhaus).
    pub fn equal_degree<R: RngCore>(&self, a: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
        let n = a.len() - 1;
        if n == d {
            return vec![self.monic(a)];
        }
        let f = self.field;
        let q = f.q();
        loop {
            let r: Poly = self.trim((0..n).map(|_| f.random(rng)).collect());
            if r.len() <= 1 {
                continue;
            }
            let b = if f.p() == 2 {
                // absolute trace map onto F_2
                let k = d * f.degree();
                let mut t = r.clone();
                let mut acc = self.rem(&r, a);
                for _ in 1..k {
                    t = self.mulmod(&t, &t, a);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                // r^((q^d - 1)/2) = (Π_{i<d} r^(q^i))^((q-1)/2)
                let mut frob = self.rem(&r, a);
                let mut norm = frob.clone();
                for _ in 1..d {
                    frob = self.powmod(&frob, q, a);
                    norm = self.mulmod(&norm, &frob, a);
                }
                let s = self.powmod(&norm, (q - 1) / 2, a);
                self.sub(&s, &self.one())
            };
            let g = self.gcd(a, &b);
            if g.len() > 1 && g.len() < a.len() {
                let h = self.div_exact(a, &g);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities.
    pub fn factor<R: RngCore>(&self, a: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (sq, m) in self.squarefree(a) {
            for (part, d) in self.distinct_degree(&sq) {
                for g in self.equal_degree(&part, d, rng) {
                    out.push((g, m));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_irreducible(&self, a: &Poly) -> bool {
        let n = match self.degree(a) {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let a = self.monic(a);
        let q = self.field.q();
        let mut h = self.x();
        for i in 1..=n {
            h = self.powmod(&h, q, &a);
            let g = self.gcd(&a, &self.sub(&h, &self.x()));
            if i < n && g.len() > 1 {
                return false;
            }
            if i == n {
                return g == a;
            }
        }
        false
    }

    /// Pairwise coprime idempotent polynomials for the factorization `m = Π h_i`:
    /// `ε_i ≡ 1 mod h_i` and `ε_i ≡ 0 mod h_j` for `j ≠ i`, each reduced mod `m`.
    pub fn crt_idempotents(&self, parts: &[Poly]) -> Vec<Poly> {
        let m = parts.iter().fold(self.one(), |acc, h| self.mul(&acc, h));
        parts
            .iter()
            .map(|h| {
                let co = self.div_exact(&m, h);
                let (_, s, _) = self.xgcd(&co, h);
                self.rem(&self.mul(&s, &co), &m)
            })
            .collect()
    }
}
