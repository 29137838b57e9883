//! Solid paraboloids `K_A = {(x, y, z) : (x, y) A (x, y)^T <= z}` in `R^3`
//! and their orthogonal projections onto 2-planes.
//!
//! These sets are unbounded, so they are handled in closed form rather than
//! through the polytope kernel. The support function of `K_A` is
//!
//! ```text
//! h(v) = v_xy . A^-1 v_xy / (4 |v_3|)    for v_3 < 0
//! ```
//!
//! and `+inf` otherwise. Restricting it to a plane `L` gives the support
//! function of the projection, which is either all of `L` (when `L` is
//! horizontal) or the region above a parabola whose axis is the projected
//! z-axis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Frame, Vector};
use crate::homothety::HomothetyResult;

/// Planes whose projected z-axis is shorter than this are treated as horizontal.
pub const HORIZONTAL_TOL: f64 = 1e-10;
/// Relative tolerance for matrix proportionality and axis parallelism.
pub const PROPORTIONAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParaboloidSpec {
    a: [[f64; 2]; 2],
}

impl ParaboloidSpec {
    /// Requires exact symmetry and eigenvalues above `1e-12`.
    pub fn new(a: [[f64; 2]; 2]) -> Result<Self> {
        if a.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::BadNumber("non-finite matrix entry".into()));
        }
        if a[0][1] != a[1][0] {
            return Err(Error::NotPositiveDefinite);
        }
        let half_tr = 0.5 * (a[0][0] + a[1][1]);
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let disc = (half_tr * half_tr - det).max(0.0).sqrt();
        if half_tr - disc <= 1e-12 {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(ParaboloidSpec { a })
    }

    pub fn identity() -> Self {
        ParaboloidSpec { a: [[1.0, 0.0], [0.0, 1.0]] }
    }

    pub fn diagonal(a11: f64, a22: f64) -> Result<Self> {
        Self::new([[a11, 0.0], [0.0, a22]])
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.a
    }

    fn inverse(&self) -> [[f64; 2]; 2] {
        let [[p, q], [_, r]] = self.a;
        let det = p * r - q * q;
        [[r / det, -q / det], [-q / det, p / det]]
    }

    fn inv_form(&self, u: [f64; 2], w: [f64; 2]) -> f64 {
        let m = self.inverse();
        u[0] * (m[0][0] * w[0] + m[0][1] * w[1]) + u[1] * (m[1][0] * w[0] + m[1][1] * w[1])
    }

    /// Membership in the solid paraboloid.
    pub fn contains(&self, p: &[f64; 3]) -> bool {
        let [[a, b], [_, c]] = self.a;
        a * p[0] * p[0] + 2.0 * b * p[0] * p[1] + c * p[1] * p[1] <= p[2]
    }

    /// Support function; `None` stands for `+inf`.
    pub fn support(&self, v: &[f64; 3]) -> Option<f64> {
        if v[2] < 0.0 {
            let w = [v[0], v[1]];
            Some(self.inv_form(w, w) / (4.0 * v[2].abs()))
        } else if v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0 {
            Some(0.0)
        } else {
            None
        }
    }
}

/// Projection of a solid paraboloid onto a 2-plane, in frame coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ParabolaRegion {
    FullPlane,
    /// `{q : (q - vertex).axis >= a ((q - vertex).perp)^2}` with
    /// `perp = (-axis_y, axis_x)`.
    Parabola { axis: [f64; 2], vertex: [f64; 2], a: f64 },
}

impl ParabolaRegion {
    pub fn contains(&self, q: [f64; 2], tol: f64) -> bool {
        match *self {
            ParabolaRegion::FullPlane => true,
            ParabolaRegion::Parabola { axis, vertex, a } => {
                let (s, t) = local_coords(axis, vertex, q);
                t >= a * s * s - tol
            }
        }
    }

    /// Boundary point at signed offset `s` across the axis.
    pub fn boundary_point(&self, s: f64) -> Option<[f64; 2]> {
        match *self {
            ParabolaRegion::FullPlane => None,
            ParabolaRegion::Parabola { axis, vertex, a } => {
                let perp = [-axis[1], axis[0]];
                let t = a * s * s;
                Some([vertex[0] + s * perp[0] + t * axis[0], vertex[1] + s * perp[1] + t * axis[1]])
            }
        }
    }

    /// Support function in frame coordinates; `None` stands for `+inf`.
    pub fn support(&self, d: [f64; 2]) -> Option<f64> {
        match *self {
            ParabolaRegion::FullPlane => (d == [0.0, 0.0]).then_some(0.0),
            ParabolaRegion::Parabola { axis, vertex, a } => {
                let perp = [-axis[1], axis[0]];
                let ds = d[0] * perp[0] + d[1] * perp[1];
                let dt = d[0] * axis[0] + d[1] * axis[1];
                if dt >= 0.0 {
                    return (ds == 0.0 && dt == 0.0).then_some(0.0);
                }
                let base = d[0] * vertex[0] + d[1] * vertex[1];
                Some(base + ds * ds / (4.0 * a * dt.abs()))
            }
        }
    }
}

fn local_coords(axis: [f64; 2], vertex: [f64; 2], q: [f64; 2]) -> (f64, f64) {
    let perp = [-axis[1], axis[0]];
    let r = [q[0] - vertex[0], q[1] - vertex[1]];
    (r[0] * perp[0] + r[1] * perp[1], r[0] * axis[0] + r[1] * axis[1])
}

fn combine(frame: &Frame, c: [f64; 2]) -> [f64; 3] {
    let b = frame.basis();
    [
        c[0] * b[0][0] + c[1] * b[1][0],
        c[0] * b[0][1] + c[1] * b[1][1],
        c[0] * b[0][2] + c[1] * b[1][2],
    ]
}

/// Image of `K_A` under orthogonal projection onto the 2-plane `frame`.
///
/// The parabola coefficients come from matching the support function of
/// the image against `h` restricted to the plane: with `C` the horizontal
/// in-plane unit vector and `U = (u_xy, u_3)` the unit in-plane image of the
/// z-axis, the image is `t >= a (s - s0)^2 + t0` with
/// `a = u_3 / (C.A^-1 C)`, `s0 = -C.A^-1 u_xy / (2 u_3)` and
/// `t0 = -u_xy.A^-1 u_xy / (4 u_3)`.
pub fn project_paraboloid(spec: &ParaboloidSpec, frame: &Frame) -> Result<ParabolaRegion> {
    if frame.ambient_dim() != 3 || frame.sub_dim() != 2 {
        return Err(Error::BadDims(format!(
            "need a 2-frame in R^3, got a {}-frame in R^{}",
            frame.sub_dim(),
            frame.ambient_dim()
        )));
    }
    let b = frame.basis();
    let t = [b[0][2], b[1][2]];
    let tn = t[0].hypot(t[1]);
    if tn < HORIZONTAL_TOL {
        return Ok(ParabolaRegion::FullPlane);
    }
    let axis = [t[0] / tn, t[1] / tn];
    let perp = [-axis[1], axis[0]];
    let up = combine(frame, axis);
    let across = combine(frame, perp);
    let (u_xy, u3) = ([up[0], up[1]], up[2]);
    let c = [across[0], across[1]];

    let a = u3 / spec.inv_form(c, c);
    let s0 = -spec.inv_form(c, u_xy) / (2.0 * u3);
    let t0 = -spec.inv_form(u_xy, u_xy) / (4.0 * u3);
    let vertex = [s0 * perp[0] + t0 * axis[0], s0 * perp[1] + t0 * axis[1]];
    Ok(ParabolaRegion::Parabola { axis, vertex, a })
}

/// Homothety `R1 = z + lambda R2` between two projected regions.
///
/// Parabola regions with equally oriented axes are positively homothetic
/// with `lambda = a2 / a1`; opposite axes give `lambda = -a2 / a1`.
/// Non-parallel axes yield `None`.
pub fn parabola_homothety(r1: &ParabolaRegion, r2: &ParabolaRegion) -> Result<Option<HomothetyResult>> {
    use ParabolaRegion::*;
    match (*r1, *r2) {
        (FullPlane, FullPlane) => Ok(Some(HomothetyResult { z: Vector::zeros(2), lambda: 1.0, residual: 0.0 })),
        (FullPlane, Parabola { .. }) | (Parabola { .. }, FullPlane) => Err(Error::MixedVariants),
        (Parabola { axis: x1, vertex: v1, a: a1 }, Parabola { axis: x2, vertex: v2, a: a2 }) => {
            let cos = x1[0] * x2[0] + x1[1] * x2[1];
            let lambda = if cos >= 1.0 - PROPORTIONAL_TOL {
                a2 / a1
            } else if cos <= -1.0 + PROPORTIONAL_TOL {
                -a2 / a1
            } else {
                return Ok(None);
            };
            let z = Vector::new(vec![v1[0] - lambda * v2[0], v1[1] - lambda * v2[1]]);
            Ok(Some(HomothetyResult { z, lambda, residual: 0.0 }))
        }
    }
}

/// Ratio `lambda > 0` with `K_{A2} = lambda K_{A1}`, i.e. `A1 = lambda A2`,
/// when the matrices are proportional. Negative ratios are impossible since
/// `-K_A` opens downward, and translations would move the apex off the
/// origin, so proportionality is the whole test.
pub fn paraboloid_homothetic(s1: &ParaboloidSpec, s2: &ParaboloidSpec) -> Option<f64> {
    let (a1, a2) = (s1.a, s2.a);
    let dot: f64 = (0..2).flat_map(|i| (0..2).map(move |j| a1[i][j] * a2[i][j])).sum();
    let sq: f64 = a2.iter().flatten().map(|x| x * x).sum();
    let lambda = dot / sq;
    let size = a1.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let dev = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .fold(0.0f64, |m, (i, j)| m.max((a1[i][j] - lambda * a2[i][j]).abs()));
    (dev <= PROPORTIONAL_TOL * size && lambda > 0.0).then_some(lambda)
}
