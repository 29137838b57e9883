//! JSON documents for polytopes, frames, paraboloids and result values.
//!
//! Readers go through `serde_json::Value` so that a missing or malformed
//! field produces a specific error rather than a generic decode failure.
//! Writers emit compact JSON followed by a newline; numbers use the shortest
//! representation that round-trips, so `write(read(doc)) == doc` for any
//! document this module wrote.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exposed::ExposedDiameter;
use crate::geometry::{Frame, Vector};
use crate::homothety::HomothetyResult;
use crate::paraboloid::ParaboloidSpec;
use crate::polytope::{extreme_points, Polytope, SupportResult};

/// Orthonormality tolerance applied to frames read from files.
pub const FRAME_FILE_TOL: f64 = 1e-9;

/// A polytope read from a document, with the number of input points that
/// were dropped as duplicates or non-extreme.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedPolytope {
    pub polytope: Polytope,
    pub dropped: usize,
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn field<'a>(doc: &'a Value, name: &'static str) -> Result<&'a Value> {
    doc.as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?
        .get(name)
        .ok_or(Error::MissingField(name))
}

fn number(v: &Value, what: &str) -> Result<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(Error::BadNumber(format!("{what}: {v}"))),
    }
}

fn count(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::BadNumber(format!("{what}: {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a [Value]> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn vector(v: &Value, dim: usize, what: &str) -> Result<Vector> {
    let coords = array(v, what)?
        .iter()
        .map(|x| number(x, what))
        .collect::<Result<Vec<f64>>>()?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: coords.len() });
    }
    Ok(Vector::new(coords))
}

fn rows(v: &Value, dim: usize, what: &str) -> Result<Vec<Vector>> {
    array(v, what)?.iter().map(|r| vector(r, dim, what)).collect()
}

pub fn parse_polytope_str(text: &str) -> Result<ParsedPolytope> {
    let doc = parse_value(text)?;
    let dim = count(field(&doc, "dim")?, "dim")?;
    if dim == 0 {
        return Err(Error::BadDims("dim must be positive".into()));
    }
    let points = rows(field(&doc, "vertices")?, dim, "vertex")?;
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let polytope = extreme_points(&points)?;
    let dropped = points.len() - polytope.len();
    Ok(ParsedPolytope { polytope, dropped })
}

pub fn parse_frame_str(text: &str) -> Result<Frame> {
    let doc = parse_value(text)?;
    let n = count(field(&doc, "ambient_dim")?, "ambient_dim")?;
    let m = count(field(&doc, "sub_dim")?, "sub_dim")?;
    let basis = rows(field(&doc, "basis")?, n, "basis row")?;
    if basis.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: basis.len() });
    }
    Frame::from_orthonormal_rows(n, basis, FRAME_FILE_TOL)
}

pub fn parse_paraboloid_str(text: &str) -> Result<ParaboloidSpec> {
    let doc = parse_value(text)?;
    let r = rows(field(&doc, "A")?, 2, "matrix row")?;
    if r.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: r.len() });
    }
    ParaboloidSpec::new([[r[0][0], r[0][1]], [r[1][0], r[1][1]]])
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_polytope(path: &Path) -> Result<ParsedPolytope> {
    parse_polytope_str(&read(path)?)
}

pub fn parse_frame(path: &Path) -> Result<Frame> {
    parse_frame_str(&read(path)?)
}

pub fn parse_paraboloid(path: &Path) -> Result<ParaboloidSpec> {
    parse_paraboloid_str(&read(path)?)
}

fn compact<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct PolytopeDoc<'a> {
    dim: usize,
    vertices: &'a [Vector],
}

#[derive(Serialize)]
struct FrameDoc<'a> {
    ambient_dim: usize,
    sub_dim: usize,
    basis: &'a [Vector],
}

#[derive(Serialize)]
struct ParaboloidDoc {
    #[serde(rename = "A")]
    a: [[f64; 2]; 2],
}

#[derive(Serialize)]
struct HomothetyDoc<'a> {
    homothetic: bool,
    #[serde(flatten)]
    result: Option<&'a HomothetyResult>,
}

#[derive(Serialize)]
struct SupportDoc<'a> {
    value: f64,
    face: &'a [usize],
    face_vertices: Vec<&'a Vector>,
    /// `null` when every vertex lies in the face.
    margin: Option<f64>,
}

#[derive(Serialize)]
struct DiameterDoc<'a> {
    x: &'a Vector,
    z: &'a Vector,
    witness: &'a Vector,
    length: f64,
    margin_max: f64,
    margin_min: f64,
}

pub fn polytope_to_string(p: &Polytope) -> String {
    compact(&PolytopeDoc { dim: p.dim(), vertices: p.vertices() })
}

/// A list of points in the polytope document shape, without hull reduction.
pub fn points_to_string(dim: usize, points: &[Vector]) -> String {
    compact(&PolytopeDoc { dim, vertices: points })
}

pub fn frame_to_string(f: &Frame) -> String {
    compact(&FrameDoc { ambient_dim: f.ambient_dim(), sub_dim: f.sub_dim(), basis: f.basis() })
}

pub fn paraboloid_to_string(s: &ParaboloidSpec) -> String {
    compact(&ParaboloidDoc { a: s.matrix() })
}

pub fn homothety_to_string(h: Option<&HomothetyResult>) -> String {
    pretty(&HomothetyDoc { homothetic: h.is_some(), result: h })
}

pub fn support_to_string(p: &Polytope, s: &SupportResult) -> String {
    pretty(&SupportDoc {
        value: s.value,
        face: &s.face,
        face_vertices: s.face.iter().map(|&i| &p.vertices()[i]).collect(),
        margin: s.margin.is_finite().then_some(s.margin),
    })
}

pub fn diameters_to_string(ds: &[ExposedDiameter]) -> String {
    let docs: Vec<DiameterDoc> = ds
        .iter()
        .map(|d| DiameterDoc {
            x: &d.x,
            z: &d.z,
            witness: &d.witness,
            length: d.length(),
            margin_max: d.margin_max,
            margin_min: d.margin_min,
        })
        .collect();
    pretty(&docs)
}

pub fn report_to_string(r: &crate::verify::Report) -> String {
    pretty(r)
}
