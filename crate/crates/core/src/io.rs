//! JSON schemas for families, designs and certificates.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::family::{Edge, Family, VertexId};
use crate::geometry::{InversivePlane, PrimeField, QuadExtField};

pub const FAMILY_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    version: u32,
    edges: Vec<Vec<VertexId>>,
}

/// Parses family JSON, relabeling vertices by first appearance until the
/// labeling is canonical.
pub fn parse_family(text: &str) -> Result<Family> {
    let file: FamilyFile = serde_json::from_str(text)?;
    if file.version != FAMILY_SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported family schema version {}", file.version)));
    }
    let edges = file.edges.into_iter().map(Edge::new).collect::<Result<Vec<_>>>()?;
    Ok(Family::new(edges)?.canonicalize())
}

/// Compact JSON for `f` in its stored order, without relabeling.
pub fn family_to_json(f: &Family) -> String {
    let file = FamilyFile {
        version: FAMILY_SCHEMA_VERSION,
        edges: f.edges().iter().map(|e| e.members().to_vec()).collect(),
    };
    serde_json::to_string(&file).expect("family serialization cannot fail")
}

pub fn load_family(path: &Path) -> Result<Family> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn save_family(f: &Family, path: &Path) -> Result<()> {
    write_text(path, &(family_to_json(f) + "\n"))
}

/// Design file: points as homogeneous pairs `(x : y)` whose coordinates
/// are coefficient pairs `[c0, c1]` of `c0 + c1·t` in `F_q[t]/(t² + b·t + c)`.
#[derive(Debug, Serialize, Deserialize)]
pub struct DesignFile {
    pub q: u32,
    pub modulus: [u32; 2],
    pub points: Vec<[[u32; 2]; 2]>,
    pub circles: Vec<Vec<u32>>,
}

pub fn design_file(p: &InversivePlane) -> Result<DesignFile> {
    let field = QuadExtField::new(PrimeField::new(p.order())?);
    let (b, c) = field.modulus();
    let coords = |u: u32| {
        let (c0, c1) = field.coeffs(u);
        [c0, c1]
    };
    let points = p.points().into_iter().map(|pt| [coords(pt.x), coords(pt.y)]).collect();
    Ok(DesignFile { q: p.order(), modulus: [b, c], points, circles: p.circles().to_vec() })
}

pub fn design_to_json(p: &InversivePlane) -> Result<String> {
    Ok(serde_json::to_string(&design_file(p)?)?)
}

pub fn parse_design(text: &str) -> Result<InversivePlane> {
    let file: DesignFile = serde_json::from_str(text)?;
    if file.points.len() as u64 != file.q as u64 * file.q as u64 + 1 {
        return Err(Error::Parse(format!("design of order {} needs {} points", file.q, file.q * file.q + 1)));
    }
    InversivePlane::from_circles(file.q, file.circles)
}

pub fn load_design(path: &Path) -> Result<InversivePlane> {
    parse_design(&fs::read_to_string(path)?)
}

/// Writes `c` as one line of JSON.
pub fn emit_certificate(c: &Certificate, path: &Path) -> Result<()> {
    write_text(path, &(c.to_json() + "\n"))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}
