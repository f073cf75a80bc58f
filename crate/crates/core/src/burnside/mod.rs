//! Burnside rings of G-sets over a base: the table of marks, rational and
//! Dress idempotents, the p-local completed basis, composition of spans and
//! linearization to equivariant matrices.
//!
//! A G-set over `Z` is a sum of transitive pieces `G/H → Z`; the piece is
//! determined by the image `z` of the coset `H` (a point fixed by `H`), up to
//! the action of `G`. The orbit basis of `Burn_G(Z)` is therefore indexed by a
//! `G`-orbit of `Z` (with its smallest point `z` as representative) together
//! with a conjugacy class of subgroups of the stabilizer `G_z`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::{self, FiniteAlgebra, Vector};
use crate::coeff::mat::Mat;
use crate::coeff::{GaloisRing, Gr};
use crate::groups::{GSet, GroupError, GroupLimits, PermGroup, Subgroup, SubgroupClass};

pub type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BurnsideError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("coefficient {0} is not p-integral")]
    NonIntegral(String),
    #[error("span check failed: {0}")]
    SpanFailure(String),
    #[error("table of marks check failed: {0}")]
    BadTable(String),
    #[error("G-sets do not match: {0}")]
    Mismatch(String),
}

/// Labels `order.k` for subgroup classes: the `k`th class of that order.
pub fn class_labels(classes: &[Subgroup]) -> Vec<String> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    classes
        .iter()
        .map(|h| {
            let n = seen.entry(h.order()).or_insert(0);
            *n += 1;
            format!("{}.{}", h.order(), n)
        })
        .collect()
}

/// Conjugates `x h x⁻¹` of `h` for `x` in `within`, as sorted element lists.
fn conjugates(g: &PermGroup, within: &[u32], h: &Subgroup) -> BTreeSet<Vec<u32>> {
    within
        .iter()
        .map(|&x| {
            let mut e: Vec<u32> = h.elements().iter().map(|&y| g.conj(x, y)).collect();
            e.sort_unstable();
            e
        })
        .collect()
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn is_prime_power_of(n: usize, p: u32) -> bool {
    let mut n = n;
    while n.is_multiple_of(p as usize) {
        n /= p as usize;
    }
    n == 1
}

/// Converts a rational with denominator prime to `p` into the Galois ring.
pub fn rational_to_ring(ring: &GaloisRing, q: Q) -> Result<Gr, BurnsideError> {
    let p = ring.p() as i128;
    if *q.denom() % p == 0 {
        return Err(BurnsideError::NonIntegral(format!("{q}")));
    }
    let m = ring.modulus() as i128;
    let num = ring.from_i64((q.numer().rem_euclid(m)) as i64);
    let den = ring.from_i64((q.denom().rem_euclid(m)) as i64);
    Ok(ring.mul(num, ring.inv(den).expect("denominator is a unit")))
}

/// The marks `#(G/H)^K`, rows `H` and columns `K` in the canonical class order.
#[derive(Clone, Debug, Serialize)]
pub struct TableOfMarks {
    pub subgroup_labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    #[serde(skip)]
    pub classes: Vec<SubgroupClass>,
}

impl TableOfMarks {
    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    /// The marks of `Σ a_H [G/H]`: the value at `K` is `Σ_H a_H #(G/H)^K`.
    pub fn marks(&self, a: &[i64]) -> Vec<i64> {
        let n = self.len();
        (0..n).map(|k| (0..n).map(|h| a[h] * self.matrix[h][k]).sum()).collect()
    }

    pub fn marks_q(&self, a: &[Q]) -> Vec<Q> {
        let n = self.len();
        (0..n)
            .map(|k| (0..n).fold(Q::from_integer(0), |acc, h| acc + a[h] * Q::from_integer(self.matrix[h][k] as i128)))
            .collect()
    }

    /// Exact inverse of the (lower triangular) table.
    pub fn inverse(&self) -> Vec<Vec<Q>> {
        let n = self.len();
        let m = |i: usize, j: usize| Q::from_integer(self.matrix[i][j] as i128);
        let mut x = vec![vec![Q::from_integer(0); n]; n];
        for i in 0..n {
            x[i][i] = Q::from_integer(1) / m(i, i);
            for j in (0..i).rev() {
                let s = (j..i).fold(Q::from_integer(0), |acc, k| acc + m(i, k) * x[k][j]);
                x[i][j] = -s / m(i, i);
            }
        }
        x
    }

    /// Index of the class of the trivial subgroup.
    pub fn trivial_class(&self) -> usize {
        0
    }
}

/// Counts `#(G/H)^K = |N_G(H) : H| · #{conjugates of H containing K}` and checks
/// that the table is lower triangular with diagonal `|N_G(H) : H|`.
pub fn table_of_marks(g: &PermGroup, limits: &GroupLimits) -> Result<TableOfMarks, BurnsideError> {
    let classes = g.subgroup_classes(limits)?;
    let all: Vec<u32> = (0..g.order() as u32).collect();
    let conj: Vec<BTreeSet<Vec<u32>>> = classes.iter().map(|c| conjugates(g, &all, &c.rep)).collect();
    let n = classes.len();
    let mut matrix = vec![vec![0i64; n]; n];
    for (h, ch) in classes.iter().enumerate() {
        let index_in_normalizer = (g.order() / (conj[h].len() * ch.rep.order())) as i64;
        for (k, ck) in classes.iter().enumerate() {
            let containing = conj[h].iter().filter(|x| is_subset(ck.rep.elements(), x)).count() as i64;
            matrix[h][k] = index_in_normalizer * containing;
        }
    }
    for h in 0..n {
        let diag = g.normalizer(&classes[h].rep).order() / classes[h].rep.order();
        if matrix[h][h] != diag as i64 || diag == 0 {
            return Err(BurnsideError::BadTable(format!("diagonal entry {h} is {} not {diag}", matrix[h][h])));
        }
        if (h + 1..n).any(|k| matrix[h][k] != 0) {
            return Err(BurnsideError::BadTable(format!("row {h} is not lower triangular")));
        }
    }
    let reps: Vec<Subgroup> = classes.iter().map(|c| c.rep.clone()).collect();
    Ok(TableOfMarks { subgroup_labels: class_labels(&reps), matrix, classes })
}

/// The primitive idempotents `e_H` of `Burn_G(pt) ⊗ Q`, as rows of the inverse
/// table of marks: the marks of `e_H` are the indicator of the class of `H`.
pub fn rational_idempotents(table: &TableOfMarks) -> Vec<Vec<Q>> {
    table.inverse()
}

/// A Dress idempotent `ε_ϖ` of the p-local Burnside ring.
#[derive(Clone, Debug)]
pub struct DressIdempotent {
    /// Class index of the p-perfect subgroup `ϖ`.
    pub perfect_class: usize,
    pub rational: Vec<Q>,
    pub coefficients: Vec<Gr>,
}

/// For each subgroup class, the class of `O^p(H)`.
pub fn residual_classes(g: &PermGroup, table: &TableOfMarks, p: u32) -> Vec<usize> {
    table
        .classes
        .iter()
        .map(|c| g.find_class(&table.classes, &g.p_residual(&c.rep, p)).expect("O^p(H) is a subgroup"))
        .collect()
}

/// `ε_ϖ = Σ e_H` over `H` with `O^p(H)` conjugate to `ϖ`, for each p-perfect
/// class `ϖ`, before any integrality check.
pub fn dress_rational(g: &PermGroup, table: &TableOfMarks, p: u32) -> Vec<(usize, Vec<Q>)> {
    let e = rational_idempotents(table);
    let res = residual_classes(g, table, p);
    let n = table.len();
    (0..n)
        .filter(|&w| res[w] == w)
        .map(|w| {
            let mut v = vec![Q::from_integer(0); n];
            for h in (0..n).filter(|&h| res[h] == w) {
                for (a, b) in v.iter_mut().zip(&e[h]) {
                    *a += *b;
                }
            }
            (w, v)
        })
        .collect()
}

/// The Dress idempotents over `GR(p^N)`, with p-integrality, `Σ ε_ϖ = 1` and
/// `ε_ϖ ε_ϖ′ = δ ε_ϖ` verified in the Burnside ring.
pub fn dress_idempotents(burn: &BurnsideRing, p: u32, ring: &GaloisRing) -> Result<Vec<DressIdempotent>, BurnsideError> {
    let g = burn.group();
    let mut out = Vec::new();
    for (w, rational) in dress_rational(g, &burn.table, p) {
        let coefficients = rational.iter().map(|&q| rational_to_ring(ring, q)).collect::<Result<Vec<_>, _>>()?;
        out.push(DressIdempotent { perfect_class: w, rational, coefficients });
    }
    let n = burn.table.len();
    let mut total = algebra::zero(n);
    for a in &out {
        total = algebra::add(ring, &total, &a.coefficients);
        for b in &out {
            let prod = burn.product_gr(ring, &a.coefficients, &b.coefficients);
            let expected = if a.perfect_class == b.perfect_class { a.coefficients.clone() } else { algebra::zero(n) };
            if prod != expected {
                return Err(BurnsideError::SpanFailure(format!(
                    "Dress idempotents {} and {} are not orthogonal idempotents",
                    a.perfect_class, b.perfect_class
                )));
            }
        }
    }
    if total != burn.one_gr(ring) {
        return Err(BurnsideError::SpanFailure("Dress idempotents do not sum to 1".into()));
    }
    Ok(out)
}

/// The basis `{[G/P]}` of the completed Burnside ring, with `ε₁·[G/H]` expressed
/// on it for every subgroup class `H`.
#[derive(Clone, Debug)]
pub struct CompletedBasis {
    /// Indices of the p-subgroup classes among all subgroup classes.
    pub classes: Vec<usize>,
    pub labels: Vec<String>,
    /// `ε₁·[G/H]` in coordinates on the basis, one row per subgroup class.
    pub epsilon_images: Vec<Vector>,
}

impl CompletedBasis {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }
}

pub fn completed_basis(burn: &BurnsideRing, p: u32, ring: &GaloisRing) -> Result<CompletedBasis, BurnsideError> {
    let dress = dress_idempotents(burn, p, ring)?;
    let trivial = burn.table.trivial_class();
    let eps = dress
        .iter()
        .find(|d| d.perfect_class == trivial)
        .ok_or_else(|| BurnsideError::SpanFailure("no Dress idempotent for the trivial subgroup".into()))?;
    let n = burn.table.len();
    let classes: Vec<usize> =
        (0..n).filter(|&h| is_prime_power_of(burn.table.classes[h].rep.order(), p)).collect();
    let mut epsilon_images = Vec::with_capacity(n);
    for h in 0..n {
        let prod = burn.product_gr(ring, &eps.coefficients, &algebra::basis_vector(ring, n, h));
        if let Some(k) = (0..n).find(|k| !classes.contains(k) && prod[*k] != Gr::ZERO) {
            return Err(BurnsideError::SpanFailure(format!(
                "ε₁·[G/H] has a component on the non-p-subgroup class {} for H of class {h}",
                burn.table.subgroup_labels[k]
            )));
        }
        if classes.contains(&h) && prod != algebra::basis_vector(ring, n, h) {
            return Err(BurnsideError::SpanFailure(format!("ε₁ does not fix [G/P] for P of class {h}")));
        }
        epsilon_images.push(classes.iter().map(|&k| prod[k]).collect());
    }
    let labels = classes.iter().map(|&k| burn.table.subgroup_labels[k].clone()).collect();
    Ok(CompletedBasis { classes, labels, epsilon_images })
}

/// Orbit decomposition of a G-set with transversals and point stabilizers.
#[derive(Clone, Debug)]
pub struct Orbits {
    /// Smallest point of each orbit.
    pub reps: Vec<u32>,
    pub orbit_of: Vec<u32>,
    /// For each point `z`, an element `t` with `t·rep = z`.
    pub transversal: Vec<u32>,
    pub stabilizers: Vec<Subgroup>,
    pub sizes: Vec<usize>,
}

impl Orbits {
    pub fn new(g: &PermGroup, set: &GSet) -> Self {
        let mut orbit_of = vec![u32::MAX; set.size];
        let mut transversal = vec![0u32; set.size];
        let mut reps = Vec::new();
        let mut stabilizers = Vec::new();
        let mut sizes = Vec::new();
        for z in 0..set.size as u32 {
            if orbit_of[z as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            let t = set.orbit_transversal(g, z);
            for (&y, &ty) in &t {
                orbit_of[y as usize] = id;
                transversal[y as usize] = ty;
            }
            sizes.push(t.len());
            reps.push(z);
            stabilizers.push(set.stabilizer(g, z));
        }
        Orbits { reps, orbit_of, transversal, stabilizers, sizes }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Which subgroups of the stabilizers index the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpanKind {
    /// All subgroups: the Burnside ring itself.
    Integral,
    /// p-subgroups only: the basis of the completed ring.
    Completed(u32),
}

#[derive(Clone, Debug)]
struct LocalClasses {
    reps: Vec<Subgroup>,
    labels: Vec<String>,
    lookup: BTreeMap<Vec<u32>, usize>,
}

impl LocalClasses {
    fn new(g: &PermGroup, stab: &Subgroup, kind: SpanKind, limits: &GroupLimits) -> Result<Self, BurnsideError> {
        let classes_of = |h: &PermGroup| -> Result<Vec<SubgroupClass>, GroupError> {
            match kind {
                SpanKind::Integral => h.subgroup_classes(limits),
                SpanKind::Completed(p) => Ok(h.p_subgroup_classes(p)),
            }
        };
        let reps: Vec<Subgroup> = if stab.order() == g.order() {
            classes_of(g)?.into_iter().map(|c| c.rep).collect()
        } else {
            let s = g.subgroup_as_group(stab);
            let emb = g.embedding(&s);
            classes_of(&s)?
                .into_iter()
                .map(|c| g.subgroup_from_elements(c.rep.elements().iter().map(|&x| emb[x as usize]).collect()))
                .collect()
        };
        let mut lookup = BTreeMap::new();
        for (i, h) in reps.iter().enumerate() {
            for c in conjugates(g, stab.elements(), h) {
                lookup.insert(c, i);
            }
        }
        let labels = class_labels(&reps);
        Ok(LocalClasses { reps, labels, lookup })
    }
}

/// The orbit basis of `Burn_G(X × Y)`: spans `X ← U → Y` of G-sets.
#[derive(Clone, Debug)]
pub struct SpanSpace {
    group: Arc<PermGroup>,
    left: GSet,
    right: GSet,
    set: GSet,
    orbits: Orbits,
    local: Vec<LocalClasses>,
    basis: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    kind: SpanKind,
}

impl SpanSpace {
    pub fn new(
        group: Arc<PermGroup>,
        left: &GSet,
        right: &GSet,
        kind: SpanKind,
        limits: &GroupLimits,
    ) -> Result<Self, BurnsideError> {
        let ngens = group.gens().len();
        if left.action.len() != ngens || right.action.len() != ngens {
            return Err(BurnsideError::Mismatch(format!("G-set actions for {ngens} generators expected")));
        }
        let set = left.product(right);
        let orbits = Orbits::new(&group, &set);
        let local = orbits
            .stabilizers
            .iter()
            .map(|s| LocalClasses::new(&group, s, kind, limits))
            .collect::<Result<Vec<_>, _>>()?;
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        for (o, l) in local.iter().enumerate() {
            offsets.push(basis.len());
            basis.extend((0..l.reps.len()).map(|c| (o, c)));
        }
        Ok(SpanSpace { group, left: left.clone(), right: right.clone(), set, orbits, local, basis, offsets, kind })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn left(&self) -> &GSet {
        &self.left
    }

    pub fn right(&self) -> &GSet {
        &self.right
    }

    pub fn orbits(&self) -> &Orbits {
        &self.orbits
    }

    pub fn kind(&self) -> SpanKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The pair `(x, y)` encoded by a point of `X × Y`.
    pub fn split_point(&self, z: u32) -> (u32, u32) {
        let m = self.right.size as u32;
        (z / m, z % m)
    }

    /// The subgroup `H` and point `(x, y)` of basis element `i`.
    pub fn basis_element(&self, i: usize) -> (&Subgroup, (u32, u32)) {
        let (o, c) = self.basis[i];
        (&self.local[o].reps[c], self.split_point(self.orbits.reps[o]))
    }

    /// Orbit index of basis element `i`.
    pub fn basis_orbit(&self, i: usize) -> usize {
        self.basis[i].0
    }

    pub fn label(&self, i: usize) -> String {
        let (o, c) = self.basis[i];
        let (x, y) = self.split_point(self.orbits.reps[o]);
        format!("{}@({x},{y})", self.local[o].labels[c])
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    /// Basis index of the transitive piece `G/H → X × Y` sending `H` to `z`,
    /// where `H` (sorted elements) fixes `z`; `None` if `H` is not in the basis.
    pub fn index_of(&self, h: &[u32], z: u32) -> Option<usize> {
        let g = &self.group;
        let o = self.orbits.orbit_of[z as usize] as usize;
        let tinv = g.inv(self.orbits.transversal[z as usize]);
        let mut e: Vec<u32> = h.iter().map(|&x| g.conj(tinv, x)).collect();
        e.sort_unstable();
        self.local[o].lookup.get(&e).map(|&c| self.offsets[o] + c)
    }

    /// `[G_z : H]`, the number of points of `G/H` over each point of the orbit.
    pub fn fiber_size(&self, i: usize) -> i64 {
        let (o, c) = self.basis[i];
        (self.orbits.stabilizers[o].order() / self.local[o].reps[c].order()) as i64
    }

    /// The diagonal `Δ_X` of `Burn_G(X × X)`, when every point stabilizer is in the basis.
    pub fn diagonal(&self) -> Option<Vec<i64>> {
        if self.left != self.right {
            return None;
        }
        let n = self.left.size as u32;
        let lo = Orbits::new(&self.group, &self.left);
        let mut v = vec![0i64; self.dim()];
        for (&x, s) in lo.reps.iter().zip(&lo.stabilizers) {
            v[self.index_of(s.elements(), x * n + x)?] += 1;
        }
        Some(v)
    }

    /// The identity `ε₁·Δ_X` of the completed ring over `GR(p^N)`: for each orbit
    /// of `X` the Dress idempotent `ε₁` of the stabilizer `G_x`, induced to `G`.
    pub fn completed_unit(&self, ring: &GaloisRing, limits: &GroupLimits) -> Result<Vector, BurnsideError> {
        let SpanKind::Completed(p) = self.kind else {
            let d = self.diagonal().ok_or_else(|| BurnsideError::Mismatch("not a square span space".into()))?;
            return Ok(d.iter().map(|&k| ring.from_i64(k)).collect());
        };
        if self.left != self.right {
            return Err(BurnsideError::Mismatch("not a square span space".into()));
        }
        let g = &self.group;
        let n = self.left.size as u32;
        let lo = Orbits::new(g, &self.left);
        let mut v = algebra::zero(self.dim());
        for (&x, stab) in lo.reps.iter().zip(&lo.stabilizers) {
            let s = g.subgroup_as_group(stab);
            let emb = g.embedding(&s);
            let table = table_of_marks(&s, limits)?;
            let (_, eps) = dress_rational(&s, &table, p)
                .into_iter()
                .find(|(w, _)| *w == table.trivial_class())
                .expect("the trivial subgroup is p-perfect");
            for (k, &q) in eps.iter().enumerate() {
                if q == Q::from_integer(0) {
                    continue;
                }
                let mut elems: Vec<u32> = table.classes[k].rep.elements().iter().map(|&y| emb[y as usize]).collect();
                elems.sort_unstable();
                let i = self.index_of(&elems, x * n + x).ok_or_else(|| {
                    BurnsideError::SpanFailure(format!("ε₁ of a stabilizer involves the non-p-subgroup class {}", table.subgroup_labels[k]))
                })?;
                v[i] = ring.add(v[i], rational_to_ring(ring, q)?);
            }
        }
        Ok(v)
    }

    /// Integer linearization `Hom(Z[X], Z[Y])`: entry `(y, x)` counts the points of
    /// the span over `(x, y)`.
    pub fn linearize_int(&self, a: &[i64]) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.left.size]; self.right.size];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let o = self.basis[i].0 as u32;
            let w = c * self.fiber_size(i);
            for z in (0..self.set.size as u32).filter(|&z| self.orbits.orbit_of[z as usize] == o) {
                let (x, y) = self.split_point(z);
                m[y as usize][x as usize] += w;
            }
        }
        m
    }

    /// Linearization over a Galois ring.
    pub fn linearize(&self, ring: &GaloisRing, a: &[Gr]) -> Mat {
        let mut m = Mat::zeros(self.right.size, self.left.size);
        for (i, &c) in a.iter().enumerate() {
            if c == Gr::ZERO {
                continue;
            }
            let o = self.basis[i].0 as u32;
            let w = ring.mul_int(c, self.fiber_size(i));
            for z in (0..self.set.size as u32).filter(|&z| self.orbits.orbit_of[z as usize] == o) {
                let (x, y) = self.split_point(z);
                m[(y as usize, x as usize)] = ring.add(m[(y as usize, x as usize)], w);
            }
        }
        m
    }

    /// The linearization in orbit coordinates: a `(#orbits) × dim` matrix whose
    /// column `i` is `[G_z : H]` at the orbit of basis element `i`.
    pub fn linearization_matrix(&self, ring: &GaloisRing) -> Mat {
        let mut m = Mat::zeros(self.orbits.len(), self.dim());
        for i in 0..self.dim() {
            m[(self.basis[i].0, i)] = ring.from_i64(self.fiber_size(i));
        }
        m
    }

    /// Coordinates of an equivariant matrix (rows `Y`, columns `X`) on the orbit
    /// indicator basis, or `None` if it is not constant on orbits.
    pub fn orbit_coordinates(&self, m: &Mat) -> Option<Vector> {
        let coords: Vector = self
            .orbits
            .reps
            .iter()
            .map(|&z| {
                let (x, y) = self.split_point(z);
                m[(y as usize, x as usize)]
            })
            .collect();
        for z in 0..self.set.size as u32 {
            let (x, y) = self.split_point(z);
            if m[(y as usize, x as usize)] != coords[self.orbits.orbit_of[z as usize] as usize] {
                return None;
            }
        }
        Some(coords)
    }

    /// The matrix with the given orbit coordinates.
    pub fn orbit_matrix(&self, coords: &[Gr]) -> Mat {
        let mut m = Mat::zeros(self.right.size, self.left.size);
        for z in 0..self.set.size as u32 {
            let (x, y) = self.split_point(z);
            m[(y as usize, x as usize)] = coords[self.orbits.orbit_of[z as usize] as usize];
        }
        m
    }

    /// `End_G(R[X])` on the basis of orbit indicator matrices, with the matrix product.
    pub fn equivariant_endomorphisms(&self, ring: &GaloisRing) -> Result<FiniteAlgebra, BurnsideError> {
        if self.left != self.right {
            return Err(BurnsideError::Mismatch("not a square span space".into()));
        }
        let n = self.left.size as u32;
        let r = self.orbits.len();
        let orbit = |x: u32, y: u32| self.orbits.orbit_of[(x * n + y) as usize] as usize;
        // (E_a E_b)[y][x] = #{w : (w, y) ∈ a, (x, w) ∈ b}
        let mut consts = vec![Gr::ZERO; r * r * r];
        for (c, &z) in self.orbits.reps.iter().enumerate() {
            let (x, y) = self.split_point(z);
            for w in 0..n {
                let (a, b) = (orbit(w, y), orbit(x, w));
                let slot = &mut consts[(a * r + b) * r + c];
                *slot = ring.add(*slot, ring.one());
            }
        }
        let mut unit = algebra::zero(r);
        for x in 0..n {
            unit[orbit(x, x)] = ring.one();
        }
        Ok(FiniteAlgebra::new(ring.clone(), r, consts, unit))
    }
}

/// Structure constants of `compose_spans: Burn_G(X×Y) × Burn_G(Y×Z) → Burn_G(X×Z)`
/// on basis spans, by decomposing fibered products into orbits.
#[derive(Clone, Debug)]
pub struct SpanComposer {
    dims: (usize, usize, usize),
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl SpanComposer {
    pub fn new(first: &SpanSpace, second: &SpanSpace, target: &SpanSpace) -> Result<Self, BurnsideError> {
        if first.right != second.left || target.left != first.left || target.right != second.right {
            return Err(BurnsideError::Mismatch("spans do not share the middle G-set".into()));
        }
        if !Arc::ptr_eq(&first.group, &second.group) || !Arc::ptr_eq(&first.group, &target.group) {
            return Err(BurnsideError::Mismatch("spans over different groups".into()));
        }
        let mid = Orbits::new(&first.group, &first.right);
        let mut table = Vec::with_capacity(first.dim());
        for i in 0..first.dim() {
            let mut row = Vec::with_capacity(second.dim());
            for j in 0..second.dim() {
                row.push(compose_basis(first, second, target, &mid, i, j)?);
            }
            table.push(row);
        }
        Ok(SpanComposer { dims: (first.dim(), second.dim(), target.dim()), table })
    }

    /// The composite of basis spans `i` (first) and `j` (second).
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i][j]
    }

    pub fn compose_int(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dims.2];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                for &(k, c) in &self.table[i][j] {
                    out[k] += x * y * c;
                }
            }
        }
        out
    }

    pub fn compose_gr(&self, ring: &GaloisRing, a: &[Gr], b: &[Gr]) -> Vector {
        let mut out = algebra::zero(self.dims.2);
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != Gr::ZERO) {
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != Gr::ZERO) {
                let xy = ring.mul(x, y);
                for &(k, c) in &self.table[i][j] {
                    out[k] = ring.add(out[k], ring.mul_int(xy, c));
                }
            }
        }
        out
    }

    /// `Burn_G(X×X)` as an algebra with `a·b = compose(b, a)`, so that
    /// linearization sends products to matrix products.
    pub fn algebra(&self, ring: &GaloisRing, unit: Vector) -> FiniteAlgebra {
        let n = self.dims.0;
        assert!(self.dims.1 == n && self.dims.2 == n, "square span space expected");
        FiniteAlgebra::from_products(ring.clone(), n, unit, |i, j| {
            let mut v = algebra::zero(n);
            for &(k, c) in &self.table[j][i] {
                v[k] = ring.add(v[k], ring.from_i64(c));
            }
            v
        })
    }
}

/// For `G/H → (x, y)` and `G/K → (y′, w)`, the fibered product is the union over
/// double cosets `HgK` with `g·y′ = y` of the orbits `G/(H ∩ gKg⁻¹) → (x, g·w)`.
fn compose_basis(
    first: &SpanSpace,
    second: &SpanSpace,
    target: &SpanSpace,
    mid: &Orbits,
    i: usize,
    j: usize,
) -> Result<Vec<(usize, i64)>, BurnsideError> {
    let g = &*first.group;
    let (h, (x, y)) = first.basis_element(i);
    let (k, (y2, w)) = second.basis_element(j);
    let (oy, oy2) = (mid.orbit_of[y as usize], mid.orbit_of[y2 as usize]);
    if oy != oy2 {
        return Ok(Vec::new());
    }
    let (ty, ty2inv) = (mid.transversal[y as usize], g.inv(mid.transversal[y2 as usize]));
    let mut coset: Vec<u32> =
        mid.stabilizers[oy as usize].elements().iter().map(|&s| g.mul(ty, g.mul(s, ty2inv))).collect();
    coset.sort_unstable();
    let mut seen = vec![false; coset.len()];
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    let nz = target.right.size as u32;
    for start in 0..coset.len() {
        if seen[start] {
            continue;
        }
        let gg = coset[start];
        for &a in h.elements() {
            let ag = g.mul(a, gg);
            for &b in k.elements() {
                let pos = coset.binary_search(&g.mul(ag, b)).expect("double coset stays in the fiber");
                seen[pos] = true;
            }
        }
        let ginv = g.inv(gg);
        let mut meet: Vec<u32> = h.elements().iter().copied().filter(|&a| k.contains(g.conj(ginv, a))).collect();
        meet.sort_unstable();
        let point = x * nz + second.right.act(g, gg, w);
        let idx = target.index_of(&meet, point).ok_or_else(|| {
            BurnsideError::SpanFailure(format!("composite orbit of stabilizer order {} is not in the target basis", meet.len()))
        })?;
        *acc.entry(idx).or_insert(0) += 1;
    }
    Ok(acc.into_iter().collect())
}

/// `Burn_G(pt)` with its table of marks and product.
#[derive(Clone, Debug)]
pub struct BurnsideRing {
    pub table: TableOfMarks,
    pub space: SpanSpace,
    composer: SpanComposer,
}

impl BurnsideRing {
    pub fn new(group: Arc<PermGroup>, limits: &GroupLimits) -> Result<Self, BurnsideError> {
        let table = table_of_marks(&group, limits)?;
        let pt = GSet::point(&group);
        let space = SpanSpace::new(group, &pt, &pt, SpanKind::Integral, limits)?;
        debug_assert_eq!(space.dim(), table.len());
        let composer = SpanComposer::new(&space, &space, &space)?;
        Ok(BurnsideRing { table, space, composer })
    }

    pub fn group(&self) -> &PermGroup {
        self.space.group()
    }

    pub fn rank(&self) -> usize {
        self.table.len()
    }

    /// `[G/H]·[G/K] = Σ_{HgK} [G/(H ∩ gKg⁻¹)]`.
    pub fn product(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.composer.compose_int(a, b)
    }

    pub fn product_gr(&self, ring: &GaloisRing, a: &[Gr], b: &[Gr]) -> Vector {
        self.composer.compose_gr(ring, a, b)
    }

    /// `[pt] = [G/G]`.
    pub fn one(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank()];
        v[self.rank() - 1] = 1;
        v
    }

    pub fn one_gr(&self, ring: &GaloisRing) -> Vector {
        self.one().iter().map(|&k| ring.from_i64(k)).collect()
    }

    /// The augmentation: cardinality of the G-set.
    pub fn cardinality(&self, a: &[i64]) -> i64 {
        self.table.marks(a)[self.table.trivial_class()]
    }
}

/// `G × G^op` acting on `G` by `(g, h)·x = g x h⁻¹`, with the product group
/// represented on two disjoint copies of the permutation domain.
pub fn two_sided(g: &PermGroup) -> Result<(PermGroup, GSet), GroupError> {
    let d = g.degree();
    let mut gens = Vec::new();
    let mut action = Vec::new();
    for (s, p) in g.gens().iter().enumerate() {
        let mut q: Vec<u32> = p.clone();
        q.extend((d as u32)..(2 * d) as u32);
        gens.push(q);
        let si = g.gen_indices()[s];
        action.push((0..g.order() as u32).map(|x| g.mul(si, x)).collect());
    }
    for (s, p) in g.gens().iter().enumerate() {
        let mut q: Vec<u32> = (0..d as u32).collect();
        q.extend(p.iter().map(|&x| x + d as u32));
        gens.push(q);
        let sinv = g.inv(g.gen_indices()[s]);
        action.push((0..g.order() as u32).map(|x| g.mul(x, sinv)).collect());
    }
    let gamma = PermGroup::new(2 * d, gens)?;
    let set = GSet::new(g.order(), action)?;
    Ok((gamma, set))
}
