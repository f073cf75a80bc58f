//! Dense matrices over a Galois ring, with field elimination for the residue
//! field and valuation-pivoted (Smith) elimination over the chain ring itself.

use alloc::vec;
use alloc::vec::Vec;

use super::gr::{GaloisRing, Gr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Gr>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Gr::ZERO; rows * cols] }
    }

    pub fn identity(ring: &GaloisRing, n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Gr>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(n: usize, cols: &[Vec<Gr>]) -> Self {
        let mut m = Mat::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    pub fn from_i64(ring: &GaloisRing, rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Gr>> = rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
        Mat::from_rows(&v)
    }

    pub fn row(&self, i: usize) -> &[Gr] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Gr] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn col(&self, j: usize) -> Vec<Gr> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<Gr>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == Gr::ZERO)
    }

    pub fn mul(&self, ring: &GaloisRing, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        if let Some(lz) = Lazy::new(ring) {
            return mul_lazy(ring, lz, self, other);
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Gr::ZERO {
                    continue;
                }
                let orow = other.row(k);
                let out_row = out.row_mut(i);
                for j in 0..other.cols {
                    if orow[j] != Gr::ZERO {
                        out_row[j] = ring.mul_add(out_row[j], a, orow[j]);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: &GaloisRing, v: &[Gr]) -> Vec<Gr> {
        assert_eq!(self.cols, v.len());
        let m = ring.modulus() as u64;
        let Some(cap) = ring.wide_cap() else {
            return (0..self.rows)
                .map(|i| self.row(i).iter().zip(v).fold(Gr::ZERO, |acc, (a, b)| ring.mul_add(acc, *a, *b)))
                .collect();
        };
        let nz: Vec<usize> = (0..v.len()).filter(|&k| v[k] != Gr::ZERO).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut t = [0u64; 2 * super::gr::MAX_DEGREE];
                let mut count = 0;
                for &k in &nz {
                    if row[k] == Gr::ZERO {
                        continue;
                    }
                    if count == cap {
                        t.iter_mut().for_each(|x| *x %= m);
                        count = 0;
                    }
                    count += 1;
                    ring.add_wide(&mut t, row[k], v[k]);
                }
                ring.reduce_wide(&mut t)
            })
            .collect()
    }

    pub fn add(&self, ring: &GaloisRing, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| ring.add(*a, *b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, ring: &GaloisRing, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(*a, *b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, ring: &GaloisRing, c: Gr) -> Mat {
        let data = self.data.iter().map(|a| ring.mul(*a, c)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self, ring: &GaloisRing) -> Gr {
        (0..self.rows.min(self.cols)).fold(Gr::ZERO, |acc, i| ring.add(acc, self[(i, i)]))
    }

    /// Entrywise reduction into a lower-precision ring over the same residue field.
    pub fn reduce(&self, from: &GaloisRing, to: &GaloisRing) -> Mat {
        let data = self.data.iter().map(|a| to.reduce_from(from, *a)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            out.row_mut(i)[self.cols..].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out[(i, k)] = self[(i, j)];
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = Gr;
    fn index(&self, (i, j): (usize, usize)) -> &Gr {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gr {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form over a field (a precision-one ring).
pub struct Echelon {
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

pub fn rref(field: &GaloisRing, m: &Mat) -> Echelon {
    debug_assert_eq!(field.precision(), 1);
    if let Some(lz) = Lazy::new(field) {
        return rref_lazy(field, lz, m);
    }
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(piv) = (r..a.rows).find(|&i| a[(i, c)] != Gr::ZERO) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = field.inv(a[(r, c)]).expect("nonzero pivot");
        for j in c..a.cols {
            a[(r, j)] = field.mul(a[(r, j)], inv);
        }
        let prow: Vec<Gr> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)];
            if f == Gr::ZERO {
                continue;
            }
            let row = a.row_mut(i);
            for j in c..row.len() {
                if prow[j] != Gr::ZERO {
                    row[j] = field.sub(row[j], field.mul(f, prow[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rref: a, pivots }
}

/// Rank of the reduction mod `p`.
pub fn rank_mod_p(ring: &GaloisRing, m: &Mat) -> usize {
    let field = ring.residue_field();
    rref(&field, &m.reduce(ring, &field)).pivots.len()
}

/// Basis (as columns) of the kernel of the reduction mod `p`, over the residue field.
pub fn kernel_mod_p(ring: &GaloisRing, m: &Mat) -> Mat {
    let field = ring.residue_field();
    let e = rref(&field, &m.reduce(ring, &field));
    let free: Vec<usize> = (0..m.cols).filter(|j| !e.pivots.contains(j)).collect();
    let mut k = Mat::zeros(m.cols, free.len());
    for (t, &fj) in free.iter().enumerate() {
        k[(fj, t)] = field.one();
        for (r, &pc) in e.pivots.iter().enumerate() {
            k[(pc, t)] = field.neg(e.rref[(r, fj)]);
        }
    }
    k
}

/// Indices of a maximal set of columns that are independent mod `p`.
pub fn independent_cols_mod_p(ring: &GaloisRing, m: &Mat) -> Vec<usize> {
    let field = ring.residue_field();
    rref(&field, &m.reduce(ring, &field)).pivots
}

/// Valuation-pivoted diagonalisation `U·A·V = diag(p^v_0, …, p^v_{r-1}, 0, …)`.
pub struct Smith {
    pub u: Mat,
    pub v: Mat,
    pub vals: Vec<u32>,
}

pub fn smith(ring: &GaloisRing, a: &Mat) -> Smith {
    smith_impl(ring, a, true)
}

/// Smith elimination that skips the row transform; `u` is left empty.
fn smith_impl(ring: &GaloisRing, a: &Mat, track_u: bool) -> Smith {
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = if track_u { Mat::identity(ring, r) } else { Mat::zeros(0, 0) };
    let mut v = Mat::identity(ring, c);
    let mut vals = Vec::new();
    let n = ring.precision();
    for k in 0..r.min(c) {
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for i in k..r {
            for j in k..c {
                let x = m[(i, j)];
                if x == Gr::ZERO {
                    continue;
                }
                let val = ring.valuation(x);
                if val < n && best.is_none_or(|(_, _, b)| val < b) {
                    best = Some((i, j, val));
                    if val == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        m.swap_rows(k, pi);
        if track_u {
            u.swap_rows(k, pi);
        }
        m.swap_cols(k, pj);
        v.swap_cols(k, pj);
        let w = ring.div_p_pow(m[(k, k)], val);
        let winv = ring.inv(w).expect("unit part of pivot");
        for j in 0..c {
            m[(k, j)] = ring.mul(m[(k, j)], winv);
        }
        if track_u {
            for j in 0..r {
                u[(k, j)] = ring.mul(u[(k, j)], winv);
            }
        }
        let mrow: Vec<Gr> = m.row(k).to_vec();
        let urow: Vec<Gr> = if track_u { u.row(k).to_vec() } else { Vec::new() };
        for i in k + 1..r {
            let x = m[(i, k)];
            if x == Gr::ZERO {
                continue;
            }
            let f = ring.div_p_pow(x, val);
            for j in k..c {
                if mrow[j] != Gr::ZERO {
                    m[(i, j)] = ring.sub(m[(i, j)], ring.mul(f, mrow[j]));
                }
            }
            for j in 0..urow.len() {
                if urow[j] != Gr::ZERO {
                    u[(i, j)] = ring.sub(u[(i, j)], ring.mul(f, urow[j]));
                }
            }
        }
        for j in k + 1..c {
            let x = m[(k, j)];
            if x == Gr::ZERO {
                continue;
            }
            let f = ring.div_p_pow(x, val);
            m[(k, j)] = Gr::ZERO;
            for i in 0..c {
                let vk = v[(i, k)];
                if vk != Gr::ZERO {
                    v[(i, j)] = ring.sub(v[(i, j)], ring.mul(f, vk));
                }
            }
        }
        vals.push(val);
    }
    Smith { u, v, vals }
}

/// Solves `A X = B` over the ring, if a solution exists.
pub fn solve(ring: &GaloisRing, a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, b.rows);
    let s = smith(ring, a);
    let y = s.u.mul(ring, b);
    let mut x = Mat::zeros(a.cols, b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let yi = y[(i, j)];
            if i < s.vals.len() {
                if ring.valuation(yi) < s.vals[i] {
                    return None;
                }
                x[(i, j)] = ring.div_p_pow(yi, s.vals[i]);
            } else if yi != Gr::ZERO {
                return None;
            }
        }
    }
    Some(s.v.mul(ring, &x))
}

/// Inverse of a matrix that is invertible mod `p`.
pub fn inverse(ring: &GaloisRing, a: &Mat) -> Option<Mat> {
    if a.rows != a.cols {
        return None;
    }
    if let Some(lz) = Lazy::new(ring) {
        return inverse_lazy(ring, lz, a);
    }
    let s = smith(ring, a);
    if s.vals.len() != a.rows || s.vals.iter().any(|&v| v != 0) {
        return None;
    }
    Some(s.v.mul(ring, &s.u))
}

/// Generators of the kernel of `A` as a module over the ring.
pub fn kernel(ring: &GaloisRing, a: &Mat) -> Vec<Vec<Gr>> {
    let s = smith(ring, a);
    let n = ring.precision();
    let mut out = Vec::new();
    for j in 0..a.cols {
        let col = s.v.col(j);
        if j >= s.vals.len() {
            out.push(col);
        } else if s.vals[j] > 0 {
            let k = n - s.vals[j];
            out.push(col.iter().map(|&x| ring.mul_p_pow(x, k)).collect());
        }
    }
    out
}

/// Coordinates on a free direct summand: for columns `basis` that are
/// independent mod `p`, returns `L` with `L · basis = I`.
pub fn summand_coordinates(ring: &GaloisRing, basis: &Mat) -> Option<Mat> {
    let t = basis.transpose();
    let rows = independent_cols_mod_p(ring, &t);
    if rows.len() != basis.cols {
        return None;
    }
    let square = basis.select_rows(&rows);
    let inv = inverse(ring, &square)?;
    let mut l = Mat::zeros(basis.cols, basis.rows);
    for i in 0..basis.cols {
        for (k, &r) in rows.iter().enumerate() {
            l[(i, r)] = inv[(i, k)];
        }
    }
    Some(l)
}

/// Basis of the saturated kernel of `A` over the ring: the columns of `V` whose
/// Smith entry vanishes at working precision. Its size is the rank of the kernel
/// of the exact lattice map whenever no elementary divisor reaches `p^N`.
pub fn lattice_kernel(ring: &GaloisRing, a: &Mat) -> Vec<Vec<Gr>> {
    let s = smith_impl(ring, a, false);
    (s.vals.len()..a.cols).map(|j| s.v.col(j)).collect()
}

/// Delayed-reduction arithmetic over `GR(p^N, d)`. A row of `cols` entries is a
/// `u64` buffer of `d` planes, plane `a` holding the coefficients of `x^a`, and
/// multiplication by a fixed scalar is a `d × d` matrix over `Z/p^N`, so sums of
/// products can be accumulated before reducing.
#[derive(Clone, Copy)]
pub(crate) struct Lazy {
    pub(crate) m: u64,
    pub(crate) d: usize,
    /// Products that may be added to a reduced value without overflow.
    pub(crate) cap: u64,
}

impl Lazy {
    pub(crate) fn new(ring: &GaloisRing) -> Option<Self> {
        Some(Lazy { m: ring.modulus() as u64, d: ring.degree(), cap: ring.wide_cap()? })
    }

    /// Entry `(a, b)` holds the coefficient of `x^a` in `g·x^b`.
    pub(crate) fn scalar(&self, ring: &GaloisRing, g: Gr) -> Vec<u64> {
        let d = self.d;
        let mut out = vec![0u64; d * d];
        for b in 0..d {
            let mut e = Gr::ZERO;
            e.0[b] = 1;
            let c = ring.mul(g, e);
            for a in 0..d {
                out[a * d + b] = c.0[a] as u64;
            }
        }
        out
    }

    /// `out += g·y` on the columns from `start`, with `g` given by [`Lazy::scalar`].
    pub(crate) fn axpy(&self, g: &[u64], out: &mut [u64], y: &[u64], start: usize) {
        let d = self.d;
        let cols = out.len() / d;
        for a in 0..d {
            let o = &mut out[a * cols + start..(a + 1) * cols];
            for b in 0..d {
                let c = g[a * d + b];
                if c == 0 {
                    continue;
                }
                for (x, &v) in o.iter_mut().zip(&y[b * cols + start..(b + 1) * cols]) {
                    *x += c * v;
                }
            }
        }
    }

    pub(crate) fn load(&self, src: &[Gr]) -> Vec<u64> {
        let cols = src.len();
        let mut out = vec![0u64; cols * self.d];
        for (j, x) in src.iter().enumerate() {
            for a in 0..self.d {
                out[a * cols + j] = x.0[a] as u64;
            }
        }
        out
    }

    pub(crate) fn entry(&self, row: &[u64], j: usize) -> Gr {
        let cols = row.len() / self.d;
        let mut c = [0u32; super::gr::MAX_DEGREE];
        for (a, v) in c.iter_mut().enumerate().take(self.d) {
            *v = (row[a * cols + j] % self.m) as u32;
        }
        Gr(c)
    }

    pub(crate) fn reduce(&self, row: &mut [u64]) {
        let m = self.m;
        row.iter_mut().for_each(|v| *v %= m);
    }

    fn store(&self, row: &[u64], dst: &mut [Gr]) {
        for (j, o) in dst.iter_mut().enumerate() {
            *o = self.entry(row, j);
        }
    }
}

fn mul_lazy(ring: &GaloisRing, lz: Lazy, a: &Mat, b: &Mat) -> Mat {
    let brows: Vec<Vec<u64>> = (0..b.rows).map(|k| lz.load(b.row(k))).collect();
    let mut out = Mat::zeros(a.rows, b.cols);
    let mut acc = vec![0u64; b.cols * lz.d];
    for i in 0..a.rows {
        acc.fill(0);
        let mut count = 0;
        for (k, brow) in brows.iter().enumerate() {
            let x = a.data[i * a.cols + k];
            if x == Gr::ZERO {
                continue;
            }
            if count == lz.cap {
                lz.reduce(&mut acc);
                count = 0;
            }
            count += 1;
            lz.axpy(&lz.scalar(ring, x), &mut acc, brow, 0);
        }
        lz.store(&acc, out.row_mut(i));
    }
    out
}

/// Rows of unreduced entries with per-row counts of pending updates.
struct LazyRows {
    lz: Lazy,
    rows: Vec<Vec<u64>>,
    pending: Vec<u64>,
}

impl LazyRows {
    fn new(lz: Lazy, rows: Vec<Vec<u64>>) -> Self {
        let pending = vec![0; rows.len()];
        LazyRows { lz, rows, pending }
    }

    fn get(&self, i: usize, j: usize) -> Gr {
        self.lz.entry(&self.rows[i], j)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        self.pending.swap(a, b);
    }

    /// Multiplies row `r` by `g`, reducing it.
    fn scale(&mut self, ring: &GaloisRing, r: usize, g: Gr) {
        let lz = self.lz;
        lz.reduce(&mut self.rows[r]);
        let mut out = vec![0u64; self.rows[r].len()];
        lz.axpy(&lz.scalar(ring, g), &mut out, &self.rows[r], 0);
        lz.reduce(&mut out);
        self.rows[r] = out;
        self.pending[r] = 0;
    }

    /// Clears column `c` of every other row using row `r`, whose entry there is one.
    fn eliminate(&mut self, ring: &GaloisRing, r: usize, c: usize) {
        let lz = self.lz;
        let prow = core::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = lz.entry(row, c);
            if f == Gr::ZERO {
                continue;
            }
            if self.pending[i] == lz.cap {
                lz.reduce(row);
                self.pending[i] = 0;
            }
            self.pending[i] += 1;
            lz.axpy(&lz.scalar(ring, ring.neg(f)), row, &prow, c);
        }
        self.rows[r] = prow;
    }

    fn into_mat(self, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.rows.len(), cols);
        for (i, row) in self.rows.iter().enumerate() {
            self.lz.store(row, out.row_mut(i));
        }
        out
    }
}

fn rref_lazy(field: &GaloisRing, lz: Lazy, m: &Mat) -> Echelon {
    let mut a = LazyRows::new(lz, (0..m.rows).map(|i| lz.load(m.row(i))).collect());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(piv) = (r..m.rows).find(|&i| a.get(i, c) != Gr::ZERO) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = field.inv(a.get(r, c)).expect("nonzero pivot");
        a.scale(field, r, inv);
        a.eliminate(field, r, c);
        pivots.push(c);
        r += 1;
    }
    Echelon { rref: a.into_mat(m.cols), pivots }
}

/// Gauss–Jordan inversion with unit pivots.
fn inverse_lazy(ring: &GaloisRing, lz: Lazy, a: &Mat) -> Option<Mat> {
    let n = a.rows;
    let rows = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.resize(2 * n, Gr::ZERO);
            row[n + i] = ring.one();
            lz.load(&row)
        })
        .collect();
    let mut aug = LazyRows::new(lz, rows);
    for c in 0..n {
        let piv = (c..n).find(|&i| ring.is_unit(aug.get(i, c)))?;
        aug.swap_rows(c, piv);
        let inv = ring.inv(aug.get(c, c)).ok()?;
        aug.scale(ring, c, inv);
        aug.eliminate(ring, c, c);
    }
    let full = aug.into_mat(2 * n);
    Some(full.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}
