//! Free direct summands of group algebras with explicit bases and coordinates,
//! and the induced space `GR[G] ⊗_{GR[N]} GR[G]` on the basis `G/N × G`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Vector;
use crate::coeff::mat::{self, Lazy, Mat};
use crate::coeff::{GaloisRing, Gr};
use crate::groups::PermGroup;

/// Row echelon form over the residue field without combination tracking.
pub(crate) struct ResidueEchelon {
    field: GaloisRing,
    lz: Lazy,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ResidueEchelon {
    pub(crate) fn new(ring: &GaloisRing) -> Self {
        let field = ring.residue_field();
        let lz = Lazy::new(&field).expect("residue field arithmetic fits in u64");
        ResidueEchelon { field, lz, rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot positions in insertion order; the inserted vectors restricted to
    /// them form a square matrix invertible mod `p`.
    pub(crate) fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    /// Inserts the residue of `v` (given over `ring`); true if it was independent.
    pub(crate) fn insert(&mut self, ring: &GaloisRing, v: &[Gr]) -> bool {
        let (f, lz) = (&self.field, self.lz);
        let red: Vector = v.iter().map(|&x| f.reduce_from(ring, x)).collect();
        let mut w = lz.load(&red);
        let mut pending = 0;
        for (piv, row) in &self.rows {
            let c = lz.entry(&w, *piv);
            if c == Gr::ZERO {
                continue;
            }
            if pending == lz.cap {
                lz.reduce(&mut w);
                pending = 0;
            }
            pending += 1;
            lz.axpy(&lz.scalar(f, f.neg(c)), &mut w, row, 0);
        }
        lz.reduce(&mut w);
        let Some(piv) = (0..red.len()).find(|&j| lz.entry(&w, j) != Gr::ZERO) else {
            return false;
        };
        let inv = f.inv(lz.entry(&w, piv)).expect("nonzero pivot");
        let mut row = vec![0u64; w.len()];
        lz.axpy(&lz.scalar(f, inv), &mut row, &w, 0);
        lz.reduce(&mut row);
        self.rows.push((piv, row));
        true
    }
}

/// A free summand of a coordinate space `GR^n`: basis vectors independent mod
/// `p`, and coordinates read off an invertible square of pivot rows.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub(crate) ambient: usize,
    pub(crate) basis: Vec<Vector>,
    pivots: Vec<usize>,
    inv: Mat,
}

impl Piece {
    /// Basis chosen greedily from `vecs`, which must span a direct summand.
    pub(crate) fn from_spanning(ring: &GaloisRing, ambient: usize, vecs: impl IntoIterator<Item = Vector>) -> Piece {
        let mut ech = ResidueEchelon::new(ring);
        let mut basis = Vec::new();
        for v in vecs {
            if ech.insert(ring, &v) {
                basis.push(v);
            }
        }
        Self::from_pivots(ring, ambient, basis, ech.pivots())
    }

    /// A basis together with positions on which it is invertible mod `p`.
    pub(crate) fn from_pivots(ring: &GaloisRing, ambient: usize, basis: Vec<Vector>, pivots: Vec<usize>) -> Piece {
        if basis.is_empty() {
            return Piece { ambient, basis, pivots: Vec::new(), inv: Mat::zeros(0, 0) };
        }
        let b = Mat::from_cols(ambient, &basis);
        let inv = mat::inverse(ring, &b.select_rows(&pivots)).expect("pivot square is invertible");
        Piece { ambient, basis, pivots, inv }
    }

    pub(crate) fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector of the summand.
    pub(crate) fn coords(&self, ring: &GaloisRing, v: &[Gr]) -> Vector {
        let w: Vector = self.pivots.iter().map(|&i| v[i]).collect();
        self.inv.mul_vec(ring, &w)
    }

    pub(crate) fn vector(&self, ring: &GaloisRing, c: &[Gr]) -> Vector {
        let mut out = vec![Gr::ZERO; self.ambient];
        for (b, &ci) in self.basis.iter().zip(c) {
            if ci == Gr::ZERO {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(b) {
                if x != Gr::ZERO {
                    *o = ring.mul_add(*o, ci, x);
                }
            }
        }
        out
    }

    /// Coordinates of each column.
    pub(crate) fn coords_mat(&self, ring: &GaloisRing, m: &Mat) -> Mat {
        self.inv.mul(ring, &m.select_rows(&self.pivots))
    }

    /// The vectors with coordinates given by the columns of `c`.
    pub(crate) fn vectors(&self, ring: &GaloisRing, c: &Mat) -> Mat {
        Mat::from_cols(self.ambient, &self.basis).mul(ring, c)
    }

    pub(crate) fn contains(&self, ring: &GaloisRing, v: &[Gr]) -> bool {
        self.vector(ring, &self.coords(ring, v)) == v
    }

    /// Matrix of a linear map of the ambient space that preserves the summand.
    pub(crate) fn matrix_of(&self, ring: &GaloisRing, f: impl Fn(&[Gr]) -> Vector) -> Mat {
        let cols: Vec<Vector> = self.basis.iter().map(|b| self.coords(ring, &f(b))).collect();
        Mat::from_cols(self.rank(), &cols)
    }
}

/// Adds `c·(x ⊗ y)` to `acc`.
pub(crate) fn add_kron2(ring: &GaloisRing, acc: &mut [Gr], c: Gr, x: &[Gr], y: &[Gr]) {
    let m = y.len();
    for (i, &a) in x.iter().enumerate() {
        if a == Gr::ZERO {
            continue;
        }
        let ca = ring.mul(c, a);
        for (j, &b) in y.iter().enumerate() {
            if b != Gr::ZERO {
                acc[i * m + j] = ring.mul_add(acc[i * m + j], ca, b);
            }
        }
    }
}

/// `GR[G] ⊗_{GR[N]} GR[G]`, free on `r ⊗ h` for `r` in a left transversal of `N`.
#[derive(Clone, Debug)]
pub(crate) struct InducedSpace {
    order: usize,
    /// For each `g`: the coset index `c` and the element `n ∈ N` (as an index of `G`)
    /// with `g = r_c · n`.
    split: Vec<(u32, u32)>,
    pub(crate) reps: Vec<u32>,
}

impl InducedSpace {
    pub(crate) fn new(g: &PermGroup, n_elems: &[u32]) -> Self {
        let order = g.order();
        let mut split = vec![(u32::MAX, 0u32); order];
        let mut reps = Vec::new();
        for x in 0..order as u32 {
            if split[x as usize].0 != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &n in n_elems {
                split[g.mul(x, n) as usize] = (c, n);
            }
        }
        InducedSpace { order, split, reps }
    }

    pub(crate) fn dim(&self) -> usize {
        self.reps.len() * self.order
    }

    pub(crate) fn index(&self, coset: u32, h: u32) -> usize {
        coset as usize * self.order + h as usize
    }

    /// Adds `c·(x ⊗ y)` to `acc`.
    pub(crate) fn add_tensor(&self, ring: &GaloisRing, g: &PermGroup, acc: &mut [Gr], c: Gr, x: &[Gr], y: &[Gr]) {
        let ys: Vec<(u32, Gr)> = y.iter().enumerate().filter(|(_, &v)| v != Gr::ZERO).map(|(k, &v)| (k as u32, v)).collect();
        for (a, &xa) in x.iter().enumerate() {
            if xa == Gr::ZERO {
                continue;
            }
            let cx = ring.mul(c, xa);
            let (coset, n) = self.split[a];
            for &(k, yk) in &ys {
                let i = self.index(coset, g.mul(n, k));
                acc[i] = ring.mul_add(acc[i], cx, yk);
            }
        }
    }

    pub(crate) fn tensor(&self, ring: &GaloisRing, g: &PermGroup, x: &[Gr], y: &[Gr]) -> Vector {
        let mut out = vec![Gr::ZERO; self.dim()];
        self.add_tensor(ring, g, &mut out, ring.one(), x, y);
        out
    }

    /// `a·w` for a group element `a`.
    pub(crate) fn left(&self, g: &PermGroup, a: u32, w: &[Gr]) -> Vector {
        let mut out = vec![Gr::ZERO; w.len()];
        for (c, &r) in self.reps.iter().enumerate() {
            let (c2, n) = self.split[g.mul(a, r) as usize];
            for h in 0..self.order as u32 {
                let v = w[self.index(c as u32, h)];
                if v != Gr::ZERO {
                    out[self.index(c2, g.mul(n, h))] = v;
                }
            }
        }
        out
    }

    /// `w·a` for a group element `a`.
    pub(crate) fn right(&self, g: &PermGroup, w: &[Gr], a: u32) -> Vector {
        let mut out = vec![Gr::ZERO; w.len()];
        for c in 0..self.reps.len() as u32 {
            for h in 0..self.order as u32 {
                let v = w[self.index(c, h)];
                if v != Gr::ZERO {
                    out[self.index(c, g.mul(h, a))] = v;
                }
            }
        }
        out
    }
}
