//! Compact convex polytopes in V-representation.
//!
//! A [`Polytope`] stores exactly the extreme points of its defining point
//! set, deduplicated and in canonical order. Extremeness is decided per point
//! by a separation LP, so the same code works in every dimension.
//!
//! Tolerances are relative to `scale = max(1, diameter)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{project_point, Frame, Vector};
use crate::lp::{LinearProgram, Relation};
use crate::random;

/// Relative tolerance for vertex identity, extremeness and support faces.
pub const VERTEX_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    scale: f64,
}

/// The value of the support function in a direction together with the face
/// attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportResult {
    pub value: f64,
    /// Indices into [`Polytope::vertices`] within face tolerance of `value`.
    pub face: Vec<usize>,
    /// Gap between `value` and the best vertex outside the face; infinite
    /// when every vertex is in the face.
    pub margin: f64,
}

impl SupportResult {
    pub fn is_singleton(&self) -> bool {
        self.face.len() == 1
    }
}

impl Polytope {
    /// Convex hull of `points`, i.e. [`extreme_points`].
    pub fn from_points(points: &[Vector]) -> Result<Polytope> {
        extreme_points(points)
    }

    /// Wraps vertices known to be pairwise distinct extreme points, sorting
    /// them canonically. Used for maps that biject extreme points.
    pub(crate) fn from_extreme_unchecked(dim: usize, mut vertices: Vec<Vector>) -> Polytope {
        let scale = scale_of(&vertices);
        canonical_sort(&mut vertices, VERTEX_TOL * scale);
        Polytope { dim, vertices, scale }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `max(1, diameter)`
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Absolute vertex tolerance for this polytope.
    pub fn tol(&self) -> f64 {
        VERTEX_TOL * self.scale
    }

    /// Index of `v` in the canonical vertex list (exact match).
    pub fn vertex_index(&self, v: &Vector) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn centroid(&self) -> Vector {
        let mut c = Vector::zeros(self.dim);
        for v in &self.vertices {
            c = &c + v;
        }
        c.scale(1.0 / self.vertices.len() as f64)
    }

    pub fn support(&self, u: &Vector) -> Result<SupportResult> {
        support(self, u)
    }
}

/// `max(1, diameter)` of a point list.
pub fn scale_of(points: &[Vector]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max(a.dist(b));
        }
    }
    d.max(1.0)
}

/// Lexicographic order where coordinates within `tol` compare equal.
fn banded_cmp(a: &Vector, b: &Vector, tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if (x - y).abs() > tol {
            return x.partial_cmp(y).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}

/// Stable insertion sort under the banded order. The banded comparison is not
/// transitive, which the standard library sorts do not tolerate; insertion
/// sort stays well defined and is idempotent on its own output.
fn canonical_sort(vs: &mut [Vector], tol: f64) {
    for i in 1..vs.len() {
        let mut j = i;
        while j > 0 && banded_cmp(&vs[j], &vs[j - 1], tol) == Ordering::Less {
            vs.swap(j, j - 1);
            j -= 1;
        }
    }
}

fn check_points(points: &[Vector]) -> Result<usize> {
    let n = points.first().ok_or(Error::EmptyInput)?.dim();
    if n == 0 {
        return Err(Error::BadDims("points must have at least one coordinate".into()));
    }
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
        if !p.is_finite() {
            return Err(Error::BadNumber("non-finite coordinate".into()));
        }
    }
    Ok(n)
}

/// Solves `max delta` subject to `u.d >= delta` for every `d` in `diffs`,
/// `|u|_inf <= 1` and `delta >= 0`. Returns `(delta*, u*)`.
///
/// By LP duality `delta*` is the l1 distance from the origin to the convex
/// hull of `diffs` whenever the origin is outside it, and zero otherwise.
/// An empty constraint set yields an infinite margin with `u = e_1`.
pub(crate) fn separation_lp(dim: usize, diffs: &[Vector]) -> Result<(f64, Vector)> {
    if diffs.is_empty() {
        return Ok((f64::INFINITY, Vector::basis(dim, 0)));
    }
    // variables: u+ (dim), u- (dim), delta
    let nv = 2 * dim + 1;
    let mut objective = vec![0.0; nv];
    objective[nv - 1] = 1.0;
    let mut lp = LinearProgram::maximize(objective);
    for d in diffs {
        let mut row = vec![0.0; nv];
        for j in 0..dim {
            row[j] = -d[j];
            row[dim + j] = d[j];
        }
        row[nv - 1] = 1.0;
        lp.constrain(row, Relation::Le, 0.0);
    }
    for j in 0..2 * dim {
        let mut row = vec![0.0; nv];
        row[j] = 1.0;
        lp.constrain(row, Relation::Le, 1.0);
    }
    let sol = lp.solve()?;
    let u = Vector::new((0..dim).map(|j| sol.x[j] - sol.x[dim + j]).collect());
    Ok((sol.x[nv - 1], u))
}

/// Canonical V-representation of `conv(points)`.
///
/// Points within `1e-9 * scale` of an earlier point are merged. A remaining
/// point is kept iff its l1 distance to the hull of the others exceeds
/// `1e-9 * scale`.
pub fn extreme_points(points: &[Vector]) -> Result<Polytope> {
    let dim = check_points(points)?;
    let scale = scale_of(points);
    let tol = VERTEX_TOL * scale;

    let mut distinct: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        if distinct.iter().all(|q| q.dist(p) > tol) {
            distinct.push(p.clone());
        }
    }

    let mut kept = Vec::with_capacity(distinct.len());
    if distinct.len() <= 2 {
        kept = distinct;
    } else {
        for (i, p) in distinct.iter().enumerate() {
            let diffs: Vec<Vector> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| (p - q).scale(1.0 / scale))
                .collect();
            let (delta, _) = separation_lp(dim, &diffs)?;
            if delta > VERTEX_TOL {
                kept.push(p.clone());
            }
        }
    }
    Ok(Polytope::from_extreme_unchecked(dim, kept))
}

pub fn support(p: &Polytope, u: &Vector) -> Result<SupportResult> {
    if u.dim() != p.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: u.dim() });
    }
    let unorm = u.norm();
    if unorm == 0.0 || !unorm.is_finite() {
        return Err(Error::ZeroDirection);
    }
    let values: Vec<f64> = p.vertices.iter().map(|v| v.dot(u)).collect();
    let value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let band = p.tol() * unorm;
    let face: Vec<usize> = (0..values.len()).filter(|&i| values[i] >= value - band).collect();
    let rest = (0..values.len())
        .filter(|i| !face.contains(i))
        .map(|i| values[i])
        .fold(f64::NEG_INFINITY, f64::max);
    let margin = if rest == f64::NEG_INFINITY { f64::INFINITY } else { value - rest };
    Ok(SupportResult { value, face, margin })
}

pub fn negate(p: &Polytope) -> Polytope {
    Polytope::from_extreme_unchecked(p.dim, p.vertices.iter().map(|v| -v).collect())
}

pub fn translate(p: &Polytope, t: &Vector) -> Result<Polytope> {
    if t.dim() != p.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: t.dim() });
    }
    Ok(Polytope::from_extreme_unchecked(p.dim, p.vertices.iter().map(|v| v + t).collect()))
}

/// `P + Q`, the extreme points of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: q.dim });
    }
    let sums: Vec<Vector> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a + b))
        .collect();
    extreme_points(&sums)
}

/// The difference body `P + (-P)`.
pub fn difference_body(p: &Polytope) -> Polytope {
    minkowski_sum(p, &negate(p)).expect("dimensions agree")
}

/// Orthogonal projection onto `frame`, expressed in frame coordinates.
pub fn project_polytope(p: &Polytope, frame: &Frame) -> Result<Polytope> {
    if frame.ambient_dim() != p.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: frame.ambient_dim() });
    }
    if frame.sub_dim() == 0 {
        return Err(Error::BadDims("cannot project onto the zero subspace".into()));
    }
    let images = p
        .vertices
        .iter()
        .map(|v| project_point(frame, v))
        .collect::<Result<Vec<_>>>()?;
    extreme_points(&images)
}

/// Largest distance between two vertices; zero for a singleton.
pub fn diameter(p: &Polytope) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in p.vertices.iter().enumerate() {
        for b in &p.vertices[i + 1..] {
            d = d.max(a.dist(b));
        }
    }
    d
}

/// Hull of `k` standard-normal samples in `R^n`.
pub fn random_polytope(n: usize, k: usize, seed: u64) -> Result<Polytope> {
    if n == 0 || k == 0 {
        return Err(Error::BadDims(format!("need n >= 1 and k >= 1, got n={n}, k={k}")));
    }
    let mut rng = random::rng(seed);
    let pts: Vec<Vector> = (0..k).map(|_| random::normal_vector(&mut rng, n)).collect();
    extreme_points(&pts)
}

/// Fixture shapes used throughout tests, examples and the CLI.
pub mod fixtures {
    use super::*;

    fn build(points: Vec<Vec<f64>>) -> Polytope {
        extreme_points(&points.into_iter().map(Vector::new).collect::<Vec<_>>())
            .expect("fixture points are well formed")
    }

    /// `[0,1]^n`
    pub fn cube(n: usize) -> Polytope {
        let pts = (0..1usize << n)
            .map(|mask| (0..n).map(|i| ((mask >> i) & 1) as f64).collect())
            .collect();
        build(pts)
    }

    pub fn square() -> Polytope {
        cube(2)
    }

    /// `conv{o, e_1, ..., e_n}`
    pub fn simplex(n: usize) -> Polytope {
        let mut pts = vec![vec![0.0; n]];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            pts.push(e);
        }
        build(pts)
    }

    pub fn triangle() -> Polytope {
        simplex(2)
    }

    /// `conv{+-e_i}`
    pub fn cross_polytope(n: usize) -> Polytope {
        let mut pts = Vec::new();
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; n];
                e[i] = s;
                pts.push(e);
            }
        }
        build(pts)
    }

    pub fn octahedron() -> Polytope {
        cross_polytope(3)
    }

    pub fn segment(a: &[f64], b: &[f64]) -> Polytope {
        build(vec![a.to_vec(), b.to_vec()])
    }

    pub fn point(p: &[f64]) -> Polytope {
        build(vec![p.to_vec()])
    }

    /// Regular `k`-gon of circumradius 1 centered at the origin.
    pub fn regular_polygon(k: usize) -> Polytope {
        let pts = (0..k)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / k as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        build(pts)
    }
}
