//! Executable checks of the homothety-by-projection statements.
//!
//! Each check returns a [`Report`]. Universally quantified checks pass when
//! every instance passes; existential checks (`existential = true`) pass once
//! a witness is found. Quantifiers over planes are sampled with per-sample
//! seeds `sub_seed(seed, i)`, so a report depends only on its inputs and seed,
//! whether samples run in parallel or not.
//!
//! The forward direction (homothetic sets have homothetic projections) is
//! checked as a hard invariant. For a non-homothetic pair the checks look
//! for a projection that is not homothetic; when none turns up among the
//! samples the report records a converse-tension witness, since sampling
//! cannot establish the hypothesis over every plane.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exposed::{antipodally_exposed_points, exposed_diameters, ExposedDiameter};
use crate::geometry::{frame_containing, random_frame, Frame, Vector};
use crate::homothety::{apply_homothety, detect_homothety, set_equal, HomothetyResult, DEFAULT_TOL};
use crate::paraboloid::{paraboloid_homothetic, parabola_homothety, project_paraboloid, ParabolaRegion, ParaboloidSpec};
use crate::polytope::{extreme_points, project_polytope, Polytope, VERTEX_TOL};
use crate::random::sub_seed;

/// Two diameter directions count as parallel when `|cos| >= 1 - PARALLEL_TOL`.
pub const PARALLEL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check_name: String,
    pub instances_run: usize,
    pub passes: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub existential: bool,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chord {
    pub x: Vector,
    pub z: Vector,
}

impl From<&ExposedDiameter> for Chord {
    fn from(d: &ExposedDiameter) -> Self {
        Chord { x: d.x.clone(), z: d.z.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Homothety between the full sets (or its absence).
    Direct { homothety: Option<HomothetyResult> },
    /// A sampled projection, with everything needed to replay it.
    Projection {
        sample: usize,
        note: String,
        frame: Vec<Vector>,
        first: Vec<Vector>,
        second: Vec<Vector>,
        homothety: Option<HomothetyResult>,
    },
    Vertex { vertex: Vector, note: String },
    ParallelDiameters { first: Chord, second: Chord, cosine: f64 },
    UnmatchedDiameter { chord: Chord, note: String },
    ParabolaPair {
        sample: usize,
        frame: Vec<Vector>,
        first: ParabolaRegion,
        second: ParabolaRegion,
        homothety: Option<HomothetyResult>,
    },
    BodyHomothety { lambda: Option<f64> },
    Note { note: String },
}

struct ProjectionSample {
    frame: Frame,
    first: Polytope,
    second: Polytope,
    homothety: Option<HomothetyResult>,
    sound: bool,
}

impl ProjectionSample {
    fn ok(&self) -> bool {
        self.homothety.is_some() && self.sound
    }

    fn witness(&self, sample: usize, note: &str) -> Witness {
        Witness::Projection {
            sample,
            note: note.to_string(),
            frame: self.frame.basis().to_vec(),
            first: self.first.vertices().to_vec(),
            second: self.second.vertices().to_vec(),
            homothety: self.homothety.clone(),
        }
    }
}

fn project_pair(p1: &Polytope, p2: &Polytope, frame: Frame) -> Result<ProjectionSample> {
    let first = project_polytope(p1, &frame)?;
    let second = project_polytope(p2, &frame)?;
    let homothety = detect_homothety(&first, &second, DEFAULT_TOL)?;
    let sound = match &homothety {
        Some(h) => set_equal(&first, &apply_homothety(&second, &h.z, h.lambda)?, DEFAULT_TOL),
        None => true,
    };
    Ok(ProjectionSample { frame, first, second, homothety, sound })
}

/// Shared driver for the projection checks: `frame_for(i)` yields the frame
/// of sample `i`.
fn projection_check<F>(name: &str, p1: &Polytope, p2: &Polytope, samples: usize, seed: u64, frame_for: F) -> Result<Report>
where
    F: Fn(u64) -> Result<Frame> + Sync,
{
    let direct = detect_homothety(p1, p2, DEFAULT_TOL)?;
    let results: Vec<ProjectionSample> = (0..samples)
        .into_par_iter()
        .map(|i| frame_for(sub_seed(seed, i as u64)).and_then(|f| project_pair(p1, p2, f)))
        .collect::<Result<_>>()?;

    let mut witnesses = vec![Witness::Direct { homothety: direct.clone() }];
    let (passes, verdict, existential);
    if direct.is_some() {
        existential = false;
        passes = results.iter().filter(|r| r.ok()).count();
        for (i, r) in results.iter().enumerate().filter(|(_, r)| !r.ok()) {
            let note = if r.homothety.is_none() {
                "forward violation: projection of homothetic pair not homothetic"
            } else {
                "forward violation: detected map failed the soundness check"
            };
            witnesses.push(r.witness(i, note));
        }
        verdict = if passes == samples { Verdict::Pass } else { Verdict::Fail };
    } else {
        existential = true;
        passes = results.iter().filter(|r| r.homothety.is_none()).count();
        match results.iter().position(|r| r.homothety.is_none()) {
            Some(i) => witnesses.push(results[i].witness(i, "non-homothetic projection")),
            None => witnesses.push(Witness::Note {
                note: format!(
                    "converse tension: all {samples} sampled projections homothetic although the sets are not"
                ),
            }),
        }
        verdict = if passes > 0 { Verdict::Pass } else { Verdict::Fail };
    }
    Ok(Report { check_name: name.to_string(), instances_run: samples, passes, seed, verdict, existential, witnesses })
}

fn check_pair_dims(p1: &Polytope, p2: &Polytope) -> Result<usize> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch { expected: p1.dim(), found: p2.dim() });
    }
    Ok(p1.dim())
}

/// Projections onto `samples` random `m`-planes, `2 <= m <= n - 1`.
pub fn verify_theorem1(p1: &Polytope, p2: &Polytope, m: usize, samples: usize, seed: u64) -> Result<Report> {
    let n = check_pair_dims(p1, p2)?;
    if m < 2 || m + 1 > n {
        return Err(Error::BadDims(format!("need 2 <= m <= n - 1, got n={n}, m={m}")));
    }
    if samples == 0 {
        return Err(Error::BadDims("need at least one sample".into()));
    }
    projection_check("theorem1", p1, p2, samples, seed, |s| random_frame(n, m, s))
}

/// As [`verify_theorem1`], restricted to `m`-planes containing the subspace
/// `s` of dimension `r`, with `0 <= r <= m - 2 <= n - 3`.
pub fn verify_corollary1(p1: &Polytope, p2: &Polytope, s: &Frame, m: usize, samples: usize, seed: u64) -> Result<Report> {
    let n = check_pair_dims(p1, p2)?;
    if s.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s.ambient_dim() });
    }
    let r = s.sub_dim();
    if r + 2 > m || m + 1 > n {
        return Err(Error::BadDims(format!("need 0 <= r <= m - 2 <= n - 3, got n={n}, m={m}, r={r}")));
    }
    if samples == 0 {
        return Err(Error::BadDims("need at least one sample".into()));
    }
    projection_check("corollary1", p1, p2, samples, seed, |seed| frame_containing(s, m, seed))
}

/// Every vertex of a polytope with at least two vertices is antipodally
/// exposed, so the antipodally exposed points span the whole polytope.
pub fn verify_theorem2(p: &Polytope) -> Result<Report> {
    let points = antipodally_exposed_points(p)?;
    let mut witnesses: Vec<Witness> = p
        .vertices()
        .iter()
        .filter(|v| !points.contains(v))
        .map(|v| Witness::Vertex { vertex: v.clone(), note: "not antipodally exposed".into() })
        .collect();
    let hull_ok = !points.is_empty() && set_equal(&extreme_points(&points)?, p, DEFAULT_TOL);
    if !hull_ok {
        witnesses.push(Witness::Note { note: "hull of antipodally exposed points differs from the polytope".into() });
    }
    let passes = points.len();
    let verdict = if passes == p.len() && hull_ok { Verdict::Pass } else { Verdict::Fail };
    Ok(Report {
        check_name: "theorem2".into(),
        instances_run: p.len(),
        passes,
        seed: 0,
        verdict,
        existential: false,
        witnesses,
    })
}

/// No two distinct exposed diameters are parallel.
pub fn verify_no_parallel_diameters(p: &Polytope) -> Result<Report> {
    let ds = exposed_diameters(p)?;
    let dirs: Vec<Vector> = ds.iter().map(ExposedDiameter::direction).collect();
    let mut instances = 0;
    let mut witnesses = Vec::new();
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            instances += 1;
            let cosine = dirs[i].dot(&dirs[j]);
            if cosine.abs() >= 1.0 - PARALLEL_TOL {
                witnesses.push(Witness::ParallelDiameters { first: (&ds[i]).into(), second: (&ds[j]).into(), cosine });
            }
        }
    }
    let passes = instances - witnesses.len();
    Ok(Report {
        check_name: "lemma_parallel".into(),
        instances_run: instances,
        passes,
        seed: 0,
        verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
        existential: false,
        witnesses,
    })
}

/// For homothetic `P2 = z + lambda P1`, the exposed diameters of `P2` are
/// exactly the images of those of `P1`. Non-homothetic or singleton pairs
/// are reported as not applicable.
pub fn verify_diameter_transfer(p1: &Polytope, p2: &Polytope) -> Result<Report> {
    check_pair_dims(p1, p2)?;
    let not_applicable = |witnesses| Report {
        check_name: "diameter_transfer".into(),
        instances_run: 0,
        passes: 0,
        seed: 0,
        verdict: Verdict::NotApplicable,
        existential: false,
        witnesses,
    };
    let Some(h) = detect_homothety(p2, p1, DEFAULT_TOL)? else {
        return Ok(not_applicable(vec![Witness::Direct { homothety: None }]));
    };
    if p1.is_singleton() {
        return Ok(not_applicable(vec![
            Witness::Direct { homothety: Some(h) },
            Witness::Note { note: "singletons have no exposed diameters".into() },
        ]));
    }
    let d1 = exposed_diameters(p1)?;
    let d2 = exposed_diameters(p2)?;
    let tol = VERTEX_TOL * p2.scale();
    let mapped: Vec<ExposedDiameter> = d1
        .iter()
        .map(|d| ExposedDiameter { x: h.apply(&d.x), z: h.apply(&d.z), ..d.clone() })
        .collect();

    let mut witnesses = vec![Witness::Direct { homothety: Some(h) }];
    let mut passes = 0;
    for m in &mapped {
        if d2.iter().any(|d| d.same_chord(m, tol)) {
            passes += 1;
        } else {
            witnesses.push(Witness::UnmatchedDiameter { chord: m.into(), note: "image of a diameter of P1 is not a diameter of P2".into() });
        }
    }
    for d in &d2 {
        if !mapped.iter().any(|m| m.same_chord(d, tol)) {
            witnesses.push(Witness::UnmatchedDiameter { chord: d.into(), note: "diameter of P2 has no preimage in P1".into() });
        }
    }
    let instances = d1.len().max(d2.len());
    let verdict = if d1.len() == d2.len() && passes == d1.len() { Verdict::Pass } else { Verdict::Fail };
    Ok(Report { check_name: "diameter_transfer".into(), instances_run: instances, passes, seed: 0, verdict, existential: false, witnesses })
}

/// Solid paraboloids `x^2 + y^2 <= z` and `2x^2 + y^2 <= z` over `samples`
/// random 2-planes.
pub fn verify_example1(samples: usize, seed: u64) -> Result<Report> {
    let s1 = ParaboloidSpec::identity();
    let s2 = ParaboloidSpec::diagonal(2.0, 1.0)?;
    verify_paraboloid_pair(&s1, &s2, samples, seed)
}

/// Random-plane version of [`verify_paraboloid_frames`].
pub fn verify_paraboloid_pair(s1: &ParaboloidSpec, s2: &ParaboloidSpec, samples: usize, seed: u64) -> Result<Report> {
    if samples == 0 {
        return Err(Error::BadDims("need at least one sample".into()));
    }
    let frames = (0..samples)
        .map(|i| random_frame(3, 2, sub_seed(seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    verify_paraboloid_frames(s1, s2, &frames, seed)
}

/// Passes when every plane gives positively homothetic projections while
/// the paraboloids themselves are not homothetic.
pub fn verify_paraboloid_frames(s1: &ParaboloidSpec, s2: &ParaboloidSpec, frames: &[Frame], seed: u64) -> Result<Report> {
    let body = paraboloid_homothetic(s1, s2);
    let mut witnesses = vec![Witness::BodyHomothety { lambda: body }];
    let mut passes = 0;
    for (i, frame) in frames.iter().enumerate() {
        let first = project_paraboloid(s1, frame)?;
        let second = project_paraboloid(s2, frame)?;
        let homothety = parabola_homothety(&first, &second)?;
        if homothety.as_ref().is_some_and(HomothetyResult::is_positive) {
            passes += 1;
        } else {
            witnesses.push(Witness::ParabolaPair { sample: i, frame: frame.basis().to_vec(), first, second, homothety });
        }
    }
    if body.is_some() {
        witnesses.push(Witness::Note { note: "paraboloids are homothetic; the pair does not show sharpness".into() });
    }
    let verdict = if passes == frames.len() && body.is_none() { Verdict::Pass } else { Verdict::Fail };
    Ok(Report {
        check_name: "example1".into(),
        instances_run: frames.len(),
        passes,
        seed,
        verdict,
        existential: false,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homothety::apply_homothety;
    use crate::polytope::fixtures::*;
    use crate::polytope::random_polytope;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec())
    }

    #[test]
    fn theorem1_forward_on_cube() {
        let c = cube(3);
        let big = apply_homothety(&c, &v(&[1.0, 2.0, 3.0]), 2.0).unwrap();
        let r = verify_theorem1(&c, &big, 2, 100, 1).unwrap();
        assert_eq!((r.passes, r.instances_run, r.verdict, r.existential), (100, 100, Verdict::Pass, false));
        assert!(matches!(&r.witnesses[0], Witness::Direct { homothety: Some(_) }));
    }

    #[test]
    fn theorem1_finds_converse_witness() {
        let r = verify_theorem1(&cube(3), &octahedron(), 2, 50, 0).unwrap();
        assert!(r.existential && r.passed() && r.passes >= 1);
        let Witness::Projection { first, second, homothety, .. } = &r.witnesses[1] else { panic!() };
        assert!(homothety.is_none());
        assert!(!first.is_empty() && !second.is_empty());
    }

    #[test]
    fn theorem1_dimension_checks() {
        let c = cube(3);
        assert!(matches!(verify_theorem1(&c, &c, 3, 10, 0), Err(Error::BadDims(_))));
        assert!(matches!(verify_theorem1(&c, &c, 1, 10, 0), Err(Error::BadDims(_))));
        assert!(matches!(verify_theorem1(&c, &c, 2, 0, 0), Err(Error::BadDims(_))));
        assert!(matches!(verify_theorem1(&c, &square(), 2, 10, 0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn corollary1_examples() {
        let p = random_polytope(4, 10, 3).unwrap();
        let q = apply_homothety(&p, &v(&[0.5, -1.0, 2.0, 0.0]), -1.5).unwrap();
        let s = Frame::coordinate(4, &[0]).unwrap();
        let r = verify_corollary1(&p, &q, &s, 3, 40, 9).unwrap();
        assert!(r.passed() && r.passes == 40);

        assert!(matches!(verify_corollary1(&p, &q, &s, 2, 10, 0), Err(Error::BadDims(_))));

        let r = verify_corollary1(&cube(3), &octahedron(), &Frame::trivial(3), 2, 50, 4).unwrap();
        assert!(r.existential && r.passed());
    }

    #[test]
    fn theorem2_examples() {
        let r = verify_theorem2(&square()).unwrap();
        assert_eq!((r.passes, r.instances_run, r.verdict), (4, 4, Verdict::Pass));
        assert!(verify_theorem2(&random_polytope(3, 12, 21).unwrap()).unwrap().passed());
        assert_eq!(verify_theorem2(&point(&[0.0, 0.0])).unwrap_err(), Error::SingletonInput);
    }

    #[test]
    fn parallel_diameter_examples() {
        let r = verify_no_parallel_diameters(&square()).unwrap();
        assert_eq!((r.instances_run, r.passes, r.verdict), (1, 1, Verdict::Pass));
        let r = verify_no_parallel_diameters(&triangle()).unwrap();
        assert_eq!((r.instances_run, r.verdict), (3, Verdict::Pass));
        let r = verify_no_parallel_diameters(&segment(&[0.0, 0.0], &[1.0, 1.0])).unwrap();
        assert_eq!((r.instances_run, r.verdict), (0, Verdict::Pass));
    }

    #[test]
    fn transfer_examples() {
        let p = random_polytope(3, 10, 17).unwrap();
        let q = apply_homothety(&p, &v(&[1.0, 0.0, -2.0]), 0.7).unwrap();
        assert!(verify_diameter_transfer(&p, &q).unwrap().passed());

        let neg = crate::polytope::negate(&p);
        let r = verify_diameter_transfer(&p, &neg).unwrap();
        assert!(r.passed());
        let Witness::Direct { homothety: Some(h) } = &r.witnesses[0] else { panic!() };
        assert_eq!(h.lambda, -1.0);

        let r = verify_diameter_transfer(&square(), &triangle()).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn example1_examples() {
        let r = verify_example1(100, 1).unwrap();
        assert_eq!((r.passes, r.verdict), (100, Verdict::Pass));

        let flat = Frame::coordinate(3, &[0, 1]).unwrap();
        let r = verify_paraboloid_frames(&ParaboloidSpec::identity(), &ParaboloidSpec::diagonal(2.0, 1.0).unwrap(), &[flat], 0).unwrap();
        assert_eq!((r.passes, r.verdict), (1, Verdict::Pass));

        let control = verify_paraboloid_pair(&ParaboloidSpec::identity(), &ParaboloidSpec::diagonal(2.0, 2.0).unwrap(), 20, 1).unwrap();
        assert_eq!(control.passes, 20);
        assert_eq!(control.witnesses[0], Witness::BodyHomothety { lambda: Some(0.5) });
        assert_eq!(control.verdict, Verdict::Fail);
    }

    #[test]
    fn reports_are_deterministic() {
        let p = random_polytope(4, 9, 5).unwrap();
        let q = random_polytope(4, 9, 6).unwrap();
        let a = verify_theorem1(&p, &q, 3, 30, 77).unwrap().to_json();
        let b = verify_theorem1(&p, &q, 3, 30, 77).unwrap().to_json();
        assert_eq!(a, b);
        assert_eq!(verify_example1(10, 3).unwrap().to_json(), verify_example1(10, 3).unwrap().to_json());
    }
}
