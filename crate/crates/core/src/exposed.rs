//! Exposed points, exposed diameters and antipodally exposed points.
//!
//! A vertex `x` of a polytope `P` is exposed when some direction `g` has `x`
//! as its unique maximizer. A chord `[x, z]` is an exposed diameter when a
//! single direction `g` has `x` as unique maximizer and `z` as unique
//! minimizer; its endpoints are then antipodally exposed. For polytopes the
//! two supporting hyperplanes are automatically distinct because `x != z`,
//! so hyperplane distinctness is not tested separately. That shortcut does
//! not carry over to general convex bodies.
//!
//! Exposure is decided by the separation LP in [`crate::polytope`]: the
//! optimal margin `delta*` must exceed `1e-9 * scale`.

use crate::error::{Error, Result};
use crate::geometry::Vector;
use crate::polytope::{difference_body, separation_lp, support, Polytope, VERTEX_TOL};
use crate::random;

/// Seeded retries allowed when perturbing a direction onto a singleton face.
pub const PERTURBATION_RETRIES: usize = 64;
/// Step halvings per retry.
const PERTURBATION_HALVINGS: usize = 60;

#[derive(Clone, Debug, PartialEq)]
pub struct Exposure {
    pub exposed: bool,
    /// Unit direction isolating the vertex; zero when not exposed.
    pub witness: Vector,
    /// Optimal LP margin in absolute units.
    pub margin: f64,
}

/// A vertex together with a unit normal whose support face is exactly that
/// vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ExposedPoint {
    pub vertex: Vector,
    pub normal: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExposedDiameter {
    /// Unique maximizer along `witness`.
    pub x: Vector,
    /// Unique minimizer along `witness`.
    pub z: Vector,
    pub witness: Vector,
    /// Support gap at `x` in direction `witness`.
    pub margin_max: f64,
    /// Support gap at `z` in direction `-witness`.
    pub margin_min: f64,
}

impl ExposedDiameter {
    /// Unit vector along `x - z`.
    pub fn direction(&self) -> Vector {
        (&self.x - &self.z).normalized().expect("diameter endpoints are distinct")
    }

    pub fn length(&self) -> f64 {
        self.x.dist(&self.z)
    }

    /// True when both diameters join the same pair of points, in either
    /// orientation, within `tol`.
    pub fn same_chord(&self, other: &ExposedDiameter, tol: f64) -> bool {
        (self.x.dist(&other.x) <= tol && self.z.dist(&other.z) <= tol)
            || (self.x.dist(&other.z) <= tol && self.z.dist(&other.x) <= tol)
    }
}

fn check_unit(f: &Vector) -> Result<()> {
    let norm = f.norm();
    if (norm - 1.0).abs() > 1e-9 || norm.is_nan() {
        return Err(Error::NotUnit(norm));
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::BadTolerance(eps));
    }
    Ok(())
}

pub fn is_exposed(p: &Polytope, v: &Vector) -> Result<Exposure> {
    if v.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: v.dim() });
    }
    let idx = p.vertex_index(v).ok_or(Error::NotAVertex)?;
    let s = p.scale();
    let diffs: Vec<Vector> = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != idx)
        .map(|(_, x)| (v - x).scale(1.0 / s))
        .collect();
    let (delta, u) = separation_lp(p.dim(), &diffs)?;
    let exposed = delta > VERTEX_TOL;
    let witness = if exposed { u.normalized()? } else { Vector::zeros(p.dim()) };
    Ok(Exposure { exposed, witness, margin: delta * s })
}

/// Perturbs `f` into a direction `g` with `|f - g| <= eps` whose support face
/// on `p` is a single vertex. Uses seed 0; see
/// [`exposed_point_near_seeded`].
pub fn exposed_point_near(p: &Polytope, f: &Vector, eps: f64) -> Result<ExposedPoint> {
    exposed_point_near_seeded(p, f, eps, 0)
}

/// If the face of `f` is already a singleton, `f` itself is returned.
/// Otherwise retry `i` draws a random unit `d` from `sub_seed(seed, i)` and
/// tries `g = normalize(f + eta d)` for `eta = eps/2, eps/4, ...` until the
/// face of `g` is a singleton.
pub fn exposed_point_near_seeded(p: &Polytope, f: &Vector, eps: f64, seed: u64) -> Result<ExposedPoint> {
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: f.dim() });
    }
    check_unit(f)?;
    check_eps(eps)?;

    let s = support(p, f)?;
    if s.is_singleton() {
        return Ok(ExposedPoint { vertex: p.vertices()[s.face[0]].clone(), normal: f.clone() });
    }
    for attempt in 0..PERTURBATION_RETRIES {
        let mut rng = random::rng(random::sub_seed(seed, attempt as u64));
        let d = random::unit_vector(&mut rng, p.dim());
        let mut eta = eps / 2.0;
        for _ in 0..PERTURBATION_HALVINGS {
            if let Ok(g) = f.add_scaled(eta, &d).normalized() {
                if g.dist(f) <= eps {
                    let s = support(p, &g)?;
                    if s.is_singleton() {
                        return Ok(ExposedPoint { vertex: p.vertices()[s.face[0]].clone(), normal: g });
                    }
                }
            }
            eta /= 2.0;
        }
    }
    Err(Error::PerturbationFailed { retries: PERTURBATION_RETRIES })
}

/// Exposed diameter whose witness lies within `eps` of `f`, found through an
/// exposed point of the difference body `P + (-P)`. Uses seed 0.
pub fn exposed_diameter_near(p: &Polytope, f: &Vector, eps: f64) -> Result<ExposedDiameter> {
    exposed_diameter_near_seeded(p, f, eps, 0)
}

pub fn exposed_diameter_near_seeded(p: &Polytope, f: &Vector, eps: f64, seed: u64) -> Result<ExposedDiameter> {
    if p.is_singleton() {
        return Err(Error::SingletonInput);
    }
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: f.dim() });
    }
    check_unit(f)?;
    check_eps(eps)?;

    let kstar = difference_body(p);
    let ep = exposed_point_near_seeded(&kstar, f, eps, seed)?;
    let g = ep.normal;
    let top = support(p, &g)?;
    let bottom = support(p, &-&g)?;
    let x = p.vertices()[top.face[0]].clone();
    let z = p.vertices()[bottom.face[0]].clone();
    let err = (&x - &z).dist(&ep.vertex);
    if !top.is_singleton() || !bottom.is_singleton() || err > kstar.tol() {
        return Err(Error::InconsistentDiameter(err));
    }
    Ok(ExposedDiameter { x, z, witness: g, margin_max: top.margin, margin_min: bottom.margin })
}

/// Whether vertices `i` and `j` span an exposed diameter, with `v_i` on top.
fn pair_diameter(p: &Polytope, i: usize, j: usize) -> Result<Option<ExposedDiameter>> {
    let vs = p.vertices();
    let s = p.scale();
    let (top, bottom) = (&vs[i], &vs[j]);
    let mut diffs = Vec::with_capacity(2 * vs.len());
    for (k, w) in vs.iter().enumerate() {
        if k != i {
            diffs.push((top - w).scale(1.0 / s));
        }
        if k != j {
            diffs.push((w - bottom).scale(1.0 / s));
        }
    }
    let (delta, u) = separation_lp(p.dim(), &diffs)?;
    if delta <= VERTEX_TOL {
        return Ok(None);
    }
    let g = u.normalized()?;
    let hi = support(p, &g)?;
    let lo = support(p, &-&g)?;
    // near-ties below the face tolerance are not counted as exposed
    if hi.face != [i] || lo.face != [j] {
        return Ok(None);
    }
    Ok(Some(ExposedDiameter {
        x: top.clone(),
        z: bottom.clone(),
        witness: g,
        margin_max: hi.margin,
        margin_min: lo.margin,
    }))
}

/// All exposed diameters, one per unordered vertex pair, in canonical vertex
/// order of the pair `(i, j)`, `i < j`.
pub fn exposed_diameters(p: &Polytope) -> Result<Vec<ExposedDiameter>> {
    if p.is_singleton() {
        return Err(Error::SingletonInput);
    }
    let k = p.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if let Some(d) = pair_diameter(p, i, j)? {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Vertices that are an endpoint of some exposed diameter, in canonical order.
pub fn antipodally_exposed_points(p: &Polytope) -> Result<Vec<Vector>> {
    let diameters = exposed_diameters(p)?;
    Ok(p
        .vertices()
        .iter()
        .filter(|v| diameters.iter().any(|d| &d.x == *v || &d.z == *v))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::*;
    use crate::polytope::random_polytope;
    use proptest::prelude::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec())
    }

    /// Dense angular grid in the plane: a pair is marked when some grid
    /// direction has it as unique (max, min) with a clear gap.
    fn grid_diameters(p: &Polytope, steps: usize) -> Vec<(usize, usize)> {
        let mut found = Vec::new();
        for s in 0..steps {
            let t = std::f64::consts::TAU * s as f64 / steps as f64;
            let vals: Vec<f64> = p.vertices().iter().map(|w| w[0] * t.cos() + w[1] * t.sin()).collect();
            let unique = |best: f64, i: usize| vals.iter().enumerate().all(|(k, &x)| k == i || (x - best).abs() > 1e-7);
            let (imax, &max) = vals.iter().enumerate().max_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap();
            let (imin, &min) = vals.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap();
            if unique(max, imax) && unique(min, imin) {
                let pair = (imax.min(imin), imax.max(imin));
                if !found.contains(&pair) {
                    found.push(pair);
                }
            }
        }
        found.sort();
        found
    }

    fn lp_pairs(p: &Polytope) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = exposed_diameters(p)
            .unwrap()
            .iter()
            .map(|d| {
                let a = p.vertex_index(&d.x).unwrap();
                let b = p.vertex_index(&d.z).unwrap();
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort();
        pairs
    }

    #[test]
    fn is_exposed_examples() {
        let t = triangle();
        let e = is_exposed(&t, &v(&[0.0, 0.0])).unwrap();
        assert!(e.exposed && e.margin > 0.0);
        assert!(e.witness[0] < 0.0 && e.witness[1] < 0.0);
        assert!((e.witness.norm() - 1.0).abs() < 1e-12);

        let seg = segment(&[0.0, 0.0], &[2.0, 1.0]);
        for w in seg.vertices() {
            assert!(is_exposed(&seg, w).unwrap().exposed);
        }
        assert_eq!(is_exposed(&square(), &v(&[0.5, 0.5])).unwrap_err(), Error::NotAVertex);
        assert!(is_exposed(&point(&[1.0]), &v(&[1.0])).unwrap().exposed);
    }

    #[test]
    fn exposed_point_near_examples() {
        let sq = square();
        let f = v(&[1.0, 0.0]);
        let ep = exposed_point_near(&sq, &f, 1e-3).unwrap();
        assert!(ep.vertex == v(&[1.0, 0.0]) || ep.vertex == v(&[1.0, 1.0]));
        assert!(ep.normal.dist(&f) <= 1e-3);
        assert!((ep.normal.norm() - 1.0).abs() < 1e-12);
        assert!(support(&sq, &ep.normal).unwrap().is_singleton());

        let g = v(&[-1.0, -1.0]).normalized().unwrap();
        let ep = exposed_point_near(&triangle(), &g, 1e-3).unwrap();
        assert_eq!((ep.vertex, ep.normal), (v(&[0.0, 0.0]), g));

        let pt = point(&[3.0, 4.0]);
        let ep = exposed_point_near(&pt, &v(&[0.0, 1.0]), 1e-6).unwrap();
        assert_eq!((ep.vertex, ep.normal), (v(&[3.0, 4.0]), v(&[0.0, 1.0])));
    }

    #[test]
    fn exposed_point_near_validates() {
        let sq = square();
        assert!(matches!(exposed_point_near(&sq, &v(&[2.0, 0.0]), 1e-3), Err(Error::NotUnit(_))));
        assert!(matches!(exposed_point_near(&sq, &v(&[1.0, 0.0]), 0.0), Err(Error::BadTolerance(_))));
        assert!(matches!(exposed_point_near(&sq, &v(&[1.0, 0.0, 0.0]), 1e-3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn exposed_point_near_degenerate_faces_in_3d() {
        let c = cube(3);
        for axis in 0..3 {
            for sign in [1.0, -1.0] {
                let f = Vector::basis(3, axis).scale(sign);
                let ep = exposed_point_near(&c, &f, 1e-4).unwrap();
                assert!(ep.normal.dist(&f) <= 1e-4);
                assert_eq!(support(&c, &ep.normal).unwrap().face.len(), 1);
            }
        }
    }

    #[test]
    fn exposed_diameter_near_examples() {
        let sq = square();
        let f = v(&[1.0, 0.0]);
        let d = exposed_diameter_near(&sq, &f, 1e-3).unwrap();
        // brute force over vertices at the returned direction
        let vals: Vec<f64> = sq.vertices().iter().map(|w| w.dot(&d.witness)).collect();
        let imax = (0..4).max_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap()).unwrap();
        let imin = (0..4).min_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap()).unwrap();
        assert_eq!((&d.x, &d.z), (&sq.vertices()[imax], &sq.vertices()[imin]));
        assert!(d.witness.dist(&f) <= 1e-3);
        assert!((d.x[0] - d.z[0]).abs() == 1.0 && (d.x[1] - d.z[1]).abs() == 1.0, "a diagonal");

        let seg = segment(&[1.0, 1.0], &[4.0, 5.0]);
        let f = v(&[3.0, 4.0]).normalized().unwrap();
        let d = exposed_diameter_near(&seg, &f, 1e-3).unwrap();
        assert_eq!((d.x, d.z, d.witness), (v(&[4.0, 5.0]), v(&[1.0, 1.0]), f));

        assert_eq!(exposed_diameter_near(&point(&[0.0, 0.0]), &v(&[1.0, 0.0]), 1e-3).unwrap_err(), Error::SingletonInput);
    }

    #[test]
    fn exposed_diameters_match_grid_oracle() {
        let sq = square();
        assert_eq!(lp_pairs(&sq), grid_diameters(&sq, 10_000));
        let chords: Vec<(Vector, Vector)> = exposed_diameters(&sq).unwrap().into_iter().map(|d| (d.x, d.z)).collect();
        assert_eq!(chords.len(), 2);
        assert!(chords.contains(&(v(&[0.0, 0.0]), v(&[1.0, 1.0]))) || chords.contains(&(v(&[1.0, 1.0]), v(&[0.0, 0.0]))));

        let t = triangle();
        assert_eq!(lp_pairs(&t), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(grid_diameters(&t, 10_000), vec![(0, 1), (0, 2), (1, 2)]);

        let seg = segment(&[0.0, 0.0], &[1.0, 0.0]);
        assert_eq!(exposed_diameters(&seg).unwrap().len(), 1);

        for seed in 0..25 {
            let p = random_polytope(2, 3 + seed as usize % 10, seed).unwrap();
            if p.len() < 2 {
                continue;
            }
            assert_eq!(lp_pairs(&p), grid_diameters(&p, 10_000), "seed {seed}");
        }
        for k in [5, 6, 7] {
            let p = regular_polygon(k);
            assert_eq!(lp_pairs(&p), grid_diameters(&p, 10_000), "{k}-gon");
        }
    }

    #[test]
    fn diameter_witnesses_are_consistent() {
        for p in [cube(3), octahedron(), simplex(4), random_polytope(3, 12, 5).unwrap()] {
            for d in exposed_diameters(&p).unwrap() {
                assert!((d.witness.norm() - 1.0).abs() < 1e-12);
                assert!(d.margin_max > 0.0 && d.margin_min > 0.0);
                let hi = support(&p, &d.witness).unwrap();
                let lo = support(&p, &-&d.witness).unwrap();
                assert_eq!(p.vertices()[hi.face[0]], d.x);
                assert_eq!(p.vertices()[lo.face[0]], d.z);
                assert!(hi.is_singleton() && lo.is_singleton());
            }
        }
    }

    #[test]
    fn antipodal_examples() {
        assert_eq!(antipodally_exposed_points(&square()).unwrap().len(), 4);
        assert_eq!(antipodally_exposed_points(&triangle()).unwrap().len(), 3);
        assert_eq!(antipodally_exposed_points(&point(&[1.0, 2.0])).unwrap_err(), Error::SingletonInput);
        assert_eq!(antipodally_exposed_points(&cube(3)).unwrap(), cube(3).vertices());
        // the cube has exactly its 4 long diagonals
        assert_eq!(exposed_diameters(&cube(3)).unwrap().len(), 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn every_vertex_is_antipodally_exposed(n in 1usize..=4, k in 2usize..=12, seed in any::<u64>()) {
            let p = random_polytope(n, k, seed).unwrap();
            prop_assume!(p.len() >= 2);
            prop_assert_eq!(antipodally_exposed_points(&p).unwrap(), p.vertices());
        }

        #[test]
        fn exposed_diameters_never_parallel(n in 2usize..=4, k in 2usize..=12, seed in any::<u64>()) {
            let p = random_polytope(n, k, seed).unwrap();
            prop_assume!(p.len() >= 2);
            let ds = exposed_diameters(&p).unwrap();
            for (a, da) in ds.iter().enumerate() {
                for db in &ds[a + 1..] {
                    prop_assert!(da.direction().dot(&db.direction()).abs() < 1.0 - 1e-9);
                }
            }
        }

        #[test]
        fn perturbed_direction_contract(n in 1usize..=4, k in 1usize..=12, seed in any::<u64>()) {
            let p = random_polytope(n, k, seed).unwrap();
            let mut r = random::rng(seed ^ 0xA5A5);
            let f = random::unit_vector(&mut r, n);
            let ep = exposed_point_near_seeded(&p, &f, 1e-3, seed).unwrap();
            prop_assert!(ep.normal.dist(&f) <= 1e-3);
            let s = support(&p, &ep.normal).unwrap();
            prop_assert!(s.is_singleton());
            prop_assert_eq!(&p.vertices()[s.face[0]], &ep.vertex);
        }
    }
}
