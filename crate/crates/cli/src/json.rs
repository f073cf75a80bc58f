//! JSON encodings of rings, ring elements, algebras and matrices.

use brauerlift_core::algebra::{FiniteAlgebra, Vector};
use brauerlift_core::coeff::mat::Mat;
use brauerlift_core::coeff::{FieldSpec, GaloisRing, Gr};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// `GR(p^N)` with residue field `F_p[x]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u32,
    pub precision: u32,
    /// Coefficients of `f`, constant term first.
    pub f: Vec<u32>,
}

impl RingJson {
    pub fn of(r: &GaloisRing) -> Self {
        RingJson { p: r.p(), precision: r.precision(), f: r.spec().f.clone() }
    }

    pub fn ring(&self) -> Result<GaloisRing, CliError> {
        let spec = if self.f.is_empty() { FieldSpec::prime(self.p) } else { FieldSpec { p: self.p, f: self.f.clone() } };
        GaloisRing::new(spec, self.precision).map_err(|e| CliError::Config(e.to_string()))
    }
}

pub fn ring_value(r: &GaloisRing) -> Value {
    json!({ "p": r.p(), "precision": r.precision(), "f": r.spec().f, "q": r.q() })
}

/// An element as its coefficients on `1, x, …, x^{d−1}`, each in `[0, p^N)`.
pub fn elem(r: &GaloisRing, x: Gr) -> Vec<u32> {
    x.coeffs()[..r.degree()].to_vec()
}

pub fn vector(r: &GaloisRing, v: &[Gr]) -> Vec<Vec<u32>> {
    v.iter().map(|&x| elem(r, x)).collect()
}

pub fn matrix(r: &GaloisRing, m: &Mat) -> Vec<Vec<Vec<u32>>> {
    (0..m.rows).map(|i| vector(r, m.row(i))).collect()
}

/// An element given either as an integer or as a coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Poly(Vec<i64>),
}

impl ElemJson {
    pub fn to_gr(&self, r: &GaloisRing) -> Result<Gr, CliError> {
        match self {
            ElemJson::Int(k) => Ok(r.from_i64(*k)),
            ElemJson::Poly(c) if c.len() <= r.degree() => Ok(r.from_coeffs(c)),
            ElemJson::Poly(c) => Err(CliError::Config(format!("element {c:?} has more than {} coefficients", r.degree()))),
        }
    }
}

pub fn to_vector(r: &GaloisRing, v: &[ElemJson]) -> Result<Vector, CliError> {
    v.iter().map(|x| x.to_gr(r)).collect()
}

/// A finite algebra by structure constants: `e_i·e_j = Σ_k c[(i·dim + j)·dim + k]·e_k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub structure_constants: Vec<ElemJson>,
    pub unit: Vec<ElemJson>,
}

impl AlgebraJson {
    pub fn algebra(&self, r: &GaloisRing) -> Result<FiniteAlgebra, CliError> {
        let n = self.dim;
        if self.structure_constants.len() != n * n * n || self.unit.len() != n {
            return Err(CliError::Config(format!("algebra of dimension {n} needs {} structure constants and {n} unit coordinates", n * n * n)));
        }
        Ok(FiniteAlgebra::new(r.clone(), n, to_vector(r, &self.structure_constants)?, to_vector(r, &self.unit)?))
    }
}

/// Input of `lift-idem`: `f: source → target` as a `dim target × dim source`
/// matrix whose columns are images of basis elements.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftInput {
    pub ring: RingJson,
    pub source: AlgebraJson,
    pub target: AlgebraJson,
    pub map: Vec<Vec<ElemJson>>,
    pub idempotent: Vec<ElemJson>,
}

pub fn to_mat(r: &GaloisRing, rows: &[Vec<ElemJson>], cols: usize) -> Result<Mat, CliError> {
    let rows = rows
        .iter()
        .map(|row| if row.len() == cols { to_vector(r, row) } else { Err(CliError::Config(format!("matrix row of length {} ≠ {cols}", row.len()))) })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(Mat::zeros(0, cols));
    }
    Ok(Mat::from_rows(&rows))
}
