//! Regular fans, star subdivisions and chart coordinates.

use crate::error::{Error, Result};
use crate::lattice::{self, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::fmt;

/// A point of the lattice `N = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_primitive(&self) -> bool {
        let g = self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        g.is_one()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An integral linear function on `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub Vec<BigInt>);

impl LinearForm {
    pub fn from_i64(v: &[i64]) -> Self {
        LinearForm(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn eval(&self, v: &LatticeVector) -> BigInt {
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }
}

/// Sorts vertices canonically: descending lexicographic order, so that the
/// standard basis comes out as `e_1, ..., e_n`.
pub fn canonical_order(vertices: &mut Vec<LatticeVector>) {
    vertices.sort_by_key(|v| Reverse(v.clone()));
    vertices.dedup();
}

/// A regular cone, given by its primitive vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    vertices: Vec<LatticeVector>,
}

impl Cone {
    pub fn new(rank: usize, mut vertices: Vec<LatticeVector>) -> Result<Self> {
        if vertices.iter().any(|v| v.rank() != rank) {
            return Err(Error::invalid("cone vertex has wrong rank"));
        }
        if vertices.iter().any(|v| !v.is_primitive()) {
            return Err(Error::invalid("cone vertex is not primitive"));
        }
        let before = vertices.len();
        canonical_order(&mut vertices);
        if vertices.len() != before {
            return Err(Error::invalid("cone has repeated vertices"));
        }
        let cone = Cone { vertices };
        if !cone.is_regular(rank) {
            return Err(Error::invalid("cone is not regular"));
        }
        Ok(cone)
    }

    /// Builds a cone from vertices already known to be a regular face.
    pub(crate) fn from_face(mut vertices: Vec<LatticeVector>) -> Self {
        canonical_order(&mut vertices);
        Cone { vertices }
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len()
    }

    pub fn matrix(&self) -> Matrix {
        self.vertices.iter().map(|v| v.0.clone()).collect()
    }

    /// Vertices extend to a basis of `N`.
    pub fn is_regular(&self, rank: usize) -> bool {
        if self.vertices.len() > rank {
            return false;
        }
        if self.vertices.is_empty() {
            return true;
        }
        let s = lattice::smith_normal_form(&self.matrix());
        s.diagonal.len() == self.vertices.len() && s.diagonal.iter().all(|d| d.is_one())
    }

    pub fn contains_face(&self, face: &Cone) -> bool {
        face.vertices.iter().all(|v| self.vertices.contains(v))
    }

    /// Sum of the vertices.
    pub fn barycentre(&self) -> LatticeVector {
        let n = self.vertices.first().map_or(0, |v| v.rank());
        self.vertices
            .iter()
            .fold(LatticeVector(vec![BigInt::zero(); n]), |acc, v| acc.add(v))
    }

    /// All faces, including the empty face and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.vertices.len();
        (0u64..(1u64 << k))
            .map(|mask| {
                let vs = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.vertices[i].clone())
                    .collect();
                Cone { vertices: vs }
            })
            .collect()
    }

    /// Indices, in this cone's vertex order, of the vertices of `face`.
    pub fn positions_of(&self, face: &Cone) -> Option<Vec<usize>> {
        face.vertices
            .iter()
            .map(|v| self.vertices.iter().position(|w| w == v))
            .collect()
    }

    /// Chart coordinates: the vertices followed by a completion to a basis of
    /// `N`. The first `dim()` coordinates are the ones that can vanish.
    pub fn chart_basis(&self, rank: usize) -> Vec<LatticeVector> {
        let m = self.matrix();
        let full = lattice::complete_to_basis(&m, rank).expect("regular cone completes to a basis");
        full.into_iter().map(LatticeVector).collect()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// A regular fan, given by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    maximal_cones: Vec<Vec<Vec<i64>>>,
    rank: usize,
}

impl Fan {
    pub fn new(rank: usize, cones: Vec<Cone>) -> Result<Self> {
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        for (i, a) in cones.iter().enumerate() {
            for (j, b) in cones.iter().enumerate() {
                if i != j && b.contains_face(a) {
                    return Err(Error::invalid(format!("cone {a} is not maximal")));
                }
            }
        }
        Ok(Fan { rank, cones })
    }

    /// The fan of `A^n`: one cone spanned by the standard basis.
    pub fn standard(n: usize) -> Self {
        let cone = Cone::from_face((0..n).map(|i| LatticeVector::unit(n, i)).collect());
        Fan {
            rank: n,
            cones: vec![cone],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        let mut rays: Vec<LatticeVector> = self
            .cones
            .iter()
            .flat_map(|c| c.vertices.iter().cloned())
            .collect();
        canonical_order(&mut rays);
        rays
    }

    pub fn is_regular(&self) -> bool {
        self.cones.iter().all(|c| c.is_regular(self.rank))
    }

    /// `face` is a face of some maximal cone.
    pub fn has_face(&self, face: &Cone) -> bool {
        self.cones.iter().any(|c| c.contains_face(face))
    }

    /// All distinct faces of all maximal cones.
    pub fn faces(&self) -> Vec<Cone> {
        let mut all: Vec<Cone> = self.cones.iter().flat_map(|c| c.faces()).collect();
        all.sort();
        all.dedup();
        all
    }

    /// Star subdivision at the barycentre of `delta`: each maximal cone `s`
    /// containing `delta` is replaced by the cones `(s - {v}) + {e}` for the
    /// vertices `v` of `delta`.
    pub fn star_subdivision(&self, delta: &Cone) -> Result<Fan> {
        if delta.dim() == 0 {
            return Err(Error::invalid("cannot subdivide at the zero cone"));
        }
        if !self.has_face(delta) {
            return Err(Error::invalid(format!("{delta} is not a face of the fan")));
        }
        if delta.dim() == 1 {
            return Ok(self.clone());
        }
        let e = delta.barycentre();
        let mut out = Vec::new();
        for sigma in &self.cones {
            if !sigma.contains_face(delta) {
                out.push(sigma.clone());
                continue;
            }
            for v in &delta.vertices {
                let mut vs: Vec<LatticeVector> =
                    sigma.vertices.iter().filter(|w| *w != v).cloned().collect();
                vs.push(e.clone());
                out.push(Cone::from_face(vs));
            }
        }
        let fan = Fan::new(self.rank, out)?;
        if !fan.is_regular() {
            return Err(Error::assertion(
                "star subdivision produced an irregular cone",
            ));
        }
        Ok(fan)
    }

    pub fn from_json(text: &str) -> Result<Fan> {
        let raw: FanJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("fan json: {e}")))?;
        let cones = raw
            .maximal_cones
            .iter()
            .map(|c| {
                Cone::new(
                    raw.rank,
                    c.iter().map(|v| LatticeVector::from_i64(v)).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::new(raw.rank, cones)
    }

    pub fn to_json(&self) -> Result<String> {
        let maximal_cones = self
            .cones
            .iter()
            .map(|c| {
                c.vertices
                    .iter()
                    .map(|v| {
                        v.to_i64()
                            .ok_or_else(|| Error::invalid("vertex exceeds 64 bits"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let raw = FanJson {
            maximal_cones,
            rank: self.rank,
        };
        Ok(serde_json::to_string(&raw).expect("fan serializes"))
    }
}

/// Integer matrix `a` with `e_i = sum_j a_ij f_j`, where `e` and `f` are
/// bases of `N`. Exponents transform as `gamma_i = sum_j a_ij delta_j`.
pub fn chart_transition(from: &[LatticeVector], to: &[LatticeVector]) -> Result<Matrix> {
    let e: Matrix = from.iter().map(|v| v.0.clone()).collect();
    let f: Matrix = to.iter().map(|v| v.0.clone()).collect();
    let finv =
        lattice::unimodular_inverse(&f).ok_or_else(|| Error::invalid("target is not a basis"))?;
    let a = lattice::mat_mul(&e, &finv);
    if lattice::determinant(&a).abs() != BigInt::one() {
        return Err(Error::invalid("source is not a basis"));
    }
    Ok(a)
}

/// Applies a chart transition to an exponent vector.
pub fn transform_exponents(a: &Matrix, delta: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(delta).map(|(x, d)| x * d).sum())
        .collect()
}
