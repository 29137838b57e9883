//! Homotheties `x -> z + lambda x` (`lambda != 0`) and their detection
//! between polytopes.
//!
//! A homothety maps extreme points bijectively onto extreme points, so two
//! polytopes can only be homothetic when their vertex counts agree. The
//! detector fixes `|lambda|` from the diameter ratio and `z` from vertex
//! centroids, then checks the vertex sets match. When both signs fit (the
//! polytopes are centrally symmetric) the positive ratio is reported.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Vector;
use crate::polytope::{diameter, Polytope};

/// Default relative tolerance for `detect_homothety` and `set_equal`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `P1 = z + lambda * P2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomothetyResult {
    pub z: Vector,
    pub lambda: f64,
    /// Largest distance between matched vertices.
    pub residual: f64,
}

impl HomothetyResult {
    pub fn is_positive(&self) -> bool {
        self.lambda > 0.0
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.z.add_scaled(self.lambda, v)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    Ok(())
}

/// `{z + lambda v : v in P}`
pub fn apply_homothety(p: &Polytope, z: &Vector, lambda: f64) -> Result<Polytope> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::ZeroLambda);
    }
    if z.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: z.dim() });
    }
    Ok(Polytope::from_extreme_unchecked(
        p.dim(),
        p.vertices().iter().map(|v| z.add_scaled(lambda, v)).collect(),
    ))
}

/// Matches each vertex of `a` to its nearest vertex of `b`. Succeeds when the
/// matching is injective with every distance at most `abs_tol`, returning
/// the largest matched distance.
fn match_vertices(a: &[Vector], b: &[Vector], abs_tol: f64) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut residual: f64 = 0.0;
    for v in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .map(|(j, w)| (j, v.dist(w)))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if d > abs_tol || used[j] {
            return None;
        }
        used[j] = true;
        residual = residual.max(d);
    }
    Some(residual)
}

/// True iff the vertex sets match bijectively within `tol * scale`.
pub fn set_equal(p1: &Polytope, p2: &Polytope, tol: f64) -> bool {
    if p1.dim() != p2.dim() {
        return false;
    }
    let scale = p1.scale().max(p2.scale());
    match_vertices(p1.vertices(), p2.vertices(), tol * scale).is_some()
}

/// Finds `(z, lambda)` with `P1 = z + lambda * P2`, if any.
pub fn detect_homothety(p1: &Polytope, p2: &Polytope, tol: f64) -> Result<Option<HomothetyResult>> {
    check_tol(tol)?;
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch { expected: p1.dim(), found: p2.dim() });
    }
    if p1.len() != p2.len() {
        return Ok(None);
    }
    if p1.is_singleton() {
        let z = &p1.vertices()[0] - &p2.vertices()[0];
        return Ok(Some(HomothetyResult { z, lambda: 1.0, residual: 0.0 }));
    }
    let ratio = diameter(p1) / diameter(p2);
    let (c1, c2) = (p1.centroid(), p2.centroid());
    for lambda in [ratio, -ratio] {
        let z = c1.add_scaled(-lambda, &c2);
        let image: Vec<Vector> = p2.vertices().iter().map(|v| z.add_scaled(lambda, v)).collect();
        let scale = p1.scale().max(ratio * p2.scale());
        if let Some(residual) = match_vertices(p1.vertices(), &image, tol * scale) {
            return Ok(Some(HomothetyResult { z, lambda, residual }));
        }
    }
    Ok(None)
}
