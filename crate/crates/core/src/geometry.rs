//! Vectors, orthonormal frames, and orthogonal projection onto subspaces.
//!
//! A linear subspace is always represented by a [`Frame`]: an explicit
//! orthonormal basis stored as rows. Projecting a point onto the subspace
//! returns its coordinates in that basis, so the image of an `n`-dimensional
//! set under `project_point` lives in `R^m`.

use std::fmt;
use std::ops::{Add, Deref, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random;

/// Relative rank tolerance for orthonormalization.
pub const RANK_TOL: f64 = 1e-10;
/// Entrywise Gram-matrix deviation accepted for frames built in memory.
pub const GRAM_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector { coords }
    }

    /// Validating constructor: nonempty and finite.
    pub fn try_new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::BadNumber(bad.to_string()));
        }
        Ok(Vector { coords })
    }

    pub fn zeros(n: usize) -> Self {
        Vector { coords: vec![0.0; n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, a: f64) -> Vector {
        Vector::new(self.coords.iter().map(|c| a * c).collect())
    }

    /// `self + a * other`
    pub fn add_scaled(&self, a: f64, other: &Vector) -> Vector {
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x + a * y)
                .collect(),
        )
    }

    /// Unit vector in the same direction, or `ZeroDirection`.
    pub fn normalized(&self) -> Result<Vector> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.coords
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl From<Vec<f64>> for Vector {
    fn from(coords: Vec<f64>) -> Self {
        Vector::new(coords)
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(coords: [f64; N]) -> Self {
        Vector::new(coords.to_vec())
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

/// Orthonormal basis of an `m`-dimensional linear subspace of `R^n`.
///
/// `sub_dim` may be zero for the trivial subspace `{o}`, which only appears
/// as a constraint subspace for [`frame_containing`].
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Frame {
    /// Builds a frame from rows that are already orthonormal, checking the
    /// Gram matrix entrywise against `tol`.
    pub fn from_orthonormal_rows(ambient_dim: usize, rows: Vec<Vector>, tol: f64) -> Result<Frame> {
        if ambient_dim == 0 || rows.len() > ambient_dim {
            return Err(Error::BadDims(format!(
                "{} rows in ambient dimension {}",
                rows.len(),
                ambient_dim
            )));
        }
        for r in &rows {
            if r.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: r.dim() });
            }
            if !r.is_finite() {
                return Err(Error::BadNumber("non-finite frame entry".into()));
            }
        }
        let frame = Frame { ambient_dim, basis: rows };
        let dev = frame.gram_deviation();
        if dev > tol {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(frame)
    }

    /// The zero-dimensional subspace `{o}` of `R^n`.
    pub fn trivial(ambient_dim: usize) -> Frame {
        Frame { ambient_dim, basis: Vec::new() }
    }

    /// Standard basis of `R^n`.
    pub fn identity(n: usize) -> Frame {
        Frame { ambient_dim: n, basis: (0..n).map(|i| Vector::basis(n, i)).collect() }
    }

    /// Frame spanned by the standard basis vectors with the given indices.
    pub fn coordinate(n: usize, axes: &[usize]) -> Result<Frame> {
        if axes.iter().any(|&i| i >= n) {
            return Err(Error::BadDims(format!("axis out of range for dimension {n}")));
        }
        orthonormalize(&axes.iter().map(|&i| Vector::basis(n, i)).collect::<Vec<_>>())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sub_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Largest entrywise deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((a.dot(b) - target).abs());
            }
        }
        dev
    }

    pub fn project(&self, p: &Vector) -> Result<Vector> {
        project_point(self, p)
    }

    /// Maps frame coordinates back into the ambient space.
    pub fn lift(&self, coords: &Vector) -> Result<Vector> {
        if coords.dim() != self.sub_dim() {
            return Err(Error::DimensionMismatch { expected: self.sub_dim(), found: coords.dim() });
        }
        let mut out = Vector::zeros(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            out = out.add_scaled(*c, b);
        }
        Ok(out)
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &Vector) -> Result<f64> {
        let back = self.lift(&self.project(v)?)?;
        Ok(v.dist(&back))
    }

    /// Re-expresses this frame, which must lie inside `outer`, in `outer`'s
    /// coordinates. Rows are re-orthonormalized to absorb rounding.
    pub fn relative_to(&self, outer: &Frame) -> Result<Frame> {
        if self.ambient_dim != outer.ambient_dim {
            return Err(Error::DimensionMismatch { expected: outer.ambient_dim, found: self.ambient_dim });
        }
        for b in &self.basis {
            let r = outer.residual(b)?;
            if r > 1e-10 {
                return Err(Error::BadDims(format!("frame is not contained in outer frame (residual {r:e})")));
            }
        }
        if self.basis.is_empty() {
            return Ok(Frame::trivial(outer.sub_dim()));
        }
        let rows = self
            .basis
            .iter()
            .map(|b| outer.project(b))
            .collect::<Result<Vec<_>>>()?;
        orthonormalize(&rows)
    }
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// The numerical rank counts inputs whose residual after orthogonalization
/// exceeds `RANK_TOL` times the largest input norm.
pub fn orthonormalize(vectors: &[Vector]) -> Result<Frame> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let n = first.dim();
    if n == 0 {
        return Err(Error::BadDims("ambient dimension must be at least 1".into()));
    }
    for v in vectors {
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        if !v.is_finite() {
            return Err(Error::BadNumber("non-finite vector entry".into()));
        }
    }
    let max_norm = vectors.iter().map(Vector::norm).fold(0.0, f64::max);
    let tol = RANK_TOL * max_norm;
    let mut basis: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = w.dot(q);
                w = w.add_scaled(-c, q);
            }
        }
        let norm = w.norm();
        if norm > tol && norm > 0.0 {
            basis.push(w.scale(1.0 / norm));
        }
    }
    if basis.len() < vectors.len() {
        return Err(Error::DependentInput { rank: basis.len(), count: vectors.len() });
    }
    Ok(Frame { ambient_dim: n, basis })
}

/// Coordinates `(p.b_1, ..., p.b_m)` of the orthogonal projection of `p`.
pub fn project_point(frame: &Frame, p: &Vector) -> Result<Vector> {
    if p.dim() != frame.ambient_dim {
        return Err(Error::DimensionMismatch { expected: frame.ambient_dim, found: p.dim() });
    }
    Ok(Vector::new(frame.basis.iter().map(|b| b.dot(p)).collect()))
}

/// Rotation-invariant random `m`-frame in `R^n`: Gram-Schmidt on independent
/// standard-normal vectors drawn from `seed`.
pub fn random_frame(n: usize, m: usize, seed: u64) -> Result<Frame> {
    if m < 1 || m > n {
        return Err(Error::BadDims(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    let mut rng = random::rng(seed);
    loop {
        let vs: Vec<Vector> = (0..m).map(|_| random::normal_vector(&mut rng, n)).collect();
        match orthonormalize(&vs) {
            Ok(f) => return Ok(f),
            Err(Error::DependentInput { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Random `m`-frame whose span contains the span of `s`.
///
/// The first `s.sub_dim()` rows reproduce `s` and the remaining rows are a
/// random completion.
pub fn frame_containing(s: &Frame, m: usize, seed: u64) -> Result<Frame> {
    let n = s.ambient_dim;
    if m < s.sub_dim() || m > n || m == 0 {
        return Err(Error::BadDims(format!(
            "need sub_dim(S)={} <= m <= n={n}, m >= 1, got m={m}",
            s.sub_dim()
        )));
    }
    if m == s.sub_dim() {
        return Ok(s.clone());
    }
    let mut rng = random::rng(seed);
    loop {
        let mut vs = s.basis.clone();
        vs.extend((s.sub_dim()..m).map(|_| random::normal_vector(&mut rng, n)));
        match orthonormalize(&vs) {
            Ok(f) => return Ok(f),
            Err(Error::DependentInput { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}
