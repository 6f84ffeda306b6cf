//! Plain-text complex and coordinate files.
//!
//! Complex files hold a `vertices:` line followed by `facet:` lines, or by
//! `polygon:` lines (cyclic vertex order) for a polygonal complex. Coordinate
//! files hold a `dim:` line followed by `<vertex>: x1 ... xd` lines with integer
//! or `p/q` entries. Blank lines and `#` comments are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Simplex, SimplicialComplex, VertexLabel};
use crate::constructions::PolyhedralComplex;
use crate::error::{Error, Result};
use crate::geometry::{Coordinates, Point, PolygonalCurve, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexFile {
    Simplicial(SimplicialComplex),
    Polyhedral(PolyhedralComplex),
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, as `(line number, key, rest)`.
fn entries(text: &str) -> Result<Vec<(usize, &str, &str)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| parse_err(i + 1, format!("expected `key: values`, got `{line}`")))?;
        out.push((i + 1, key.trim(), rest.trim()));
    }
    Ok(out)
}

fn labels(line: usize, rest: &str) -> Result<Vec<VertexLabel>> {
    rest.split_whitespace().map(|t| VertexLabel::new(t).map_err(|e| parse_err(line, e.to_string()))).collect()
}

pub fn parse_complex(text: &str) -> Result<ComplexFile> {
    let mut declared: Option<BTreeSet<VertexLabel>> = None;
    let mut facets: Vec<Simplex> = Vec::new();
    let mut polygons: Vec<Vec<VertexLabel>> = Vec::new();
    for (line, key, rest) in entries(text)? {
        match key {
            "vertices" => {
                if declared.is_some() {
                    return Err(parse_err(line, "second `vertices:` line"));
                }
                let vs = labels(line, rest)?;
                let set: BTreeSet<VertexLabel> = vs.iter().cloned().collect();
                if set.len() != vs.len() {
                    return Err(parse_err(line, "repeated vertex"));
                }
                declared = Some(set);
            }
            "facet" | "polygon" => {
                let Some(known) = &declared else {
                    return Err(parse_err(line, "`vertices:` must come first"));
                };
                let vs = labels(line, rest)?;
                if let Some(v) = vs.iter().find(|v| !known.contains(*v)) {
                    return Err(parse_err(line, format!("undeclared vertex `{v}`")));
                }
                if key == "facet" {
                    facets.push(Simplex::new(vs).map_err(|e| parse_err(line, e.to_string()))?);
                } else {
                    polygons.push(vs);
                }
                if !facets.is_empty() && !polygons.is_empty() {
                    return Err(parse_err(line, "cannot mix `facet:` and `polygon:` lines"));
                }
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    let declared = declared.ok_or_else(|| parse_err(0, "missing `vertices:` line"))?;
    if !polygons.is_empty() {
        let mut pc = PolyhedralComplex::from_cycles(&polygons)?;
        if pc.vertices.iter().collect::<BTreeSet<_>>() != declared.iter().collect::<BTreeSet<_>>() {
            return Err(parse_err(0, "polygonal complex must use every declared vertex"));
        }
        pc.vertices = declared.into_iter().collect();
        return Ok(ComplexFile::Polyhedral(pc));
    }
    let singletons = declared.into_iter().map(|v| Simplex::new([v])).collect::<Result<Vec<_>>>()?;
    Ok(ComplexFile::Simplicial(SimplicialComplex::from_simplices(facets.into_iter().chain(singletons))))
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    let vs: Vec<&str> = k.vertices().iter().map(VertexLabel::as_str).collect();
    writeln!(out, "vertices: {}", vs.join(" ")).unwrap();
    for f in k.facets() {
        let names: Vec<&str> = f.vertices().iter().map(VertexLabel::as_str).collect();
        writeln!(out, "facet: {}", names.join(" ")).unwrap();
    }
    out
}

pub fn write_polyhedral(p: &PolyhedralComplex) -> String {
    let mut out = String::new();
    let vs: Vec<&str> = p.vertices.iter().map(VertexLabel::as_str).collect();
    writeln!(out, "vertices: {}", vs.join(" ")).unwrap();
    for poly in &p.polygons {
        let names: Vec<&str> = poly.vertices.iter().map(VertexLabel::as_str).collect();
        writeln!(out, "polygon: {}", names.join(" ")).unwrap();
    }
    out
}

fn parse_rational(line: usize, token: &str) -> Result<Rational> {
    let bad = || parse_err(line, format!("`{token}` is not an integer or p/q"));
    match token.split_once('/') {
        None => Ok(Rational::from_integer(token.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(parse_err(line, format!("zero denominator in `{token}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Coordinates together with the order in which vertices appear in the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinatesFile {
    pub coords: Coordinates,
    pub order: Vec<VertexLabel>,
}

pub fn parse_coordinates(text: &str) -> Result<CoordinatesFile> {
    let entries = entries(text)?;
    let Some(&(first, "dim", d)) = entries.first() else {
        return Err(parse_err(entries.first().map_or(0, |e| e.0), "file must start with `dim:`"));
    };
    let dim: usize = d.parse().map_err(|_| parse_err(first, format!("bad dimension `{d}`")))?;
    if dim == 0 {
        return Err(parse_err(first, "dimension must be positive"));
    }
    let mut points = BTreeMap::new();
    let mut order = Vec::new();
    for &(line, key, rest) in &entries[1..] {
        let v = VertexLabel::new(key).map_err(|e| parse_err(line, e.to_string()))?;
        if key == "dim" {
            return Err(parse_err(line, "second `dim:` line"));
        }
        let coords = rest.split_whitespace().map(|t| parse_rational(line, t)).collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(parse_err(line, format!("{} coordinates given, dimension is {dim}", coords.len())));
        }
        if points.insert(v.clone(), Point::new(coords)).is_some() {
            return Err(parse_err(line, format!("vertex `{v}` listed twice")));
        }
        order.push(v);
    }
    Ok(CoordinatesFile { coords: Coordinates::new(dim, points)?, order })
}

pub fn write_coordinates(c: &Coordinates) -> String {
    let mut out = format!("dim: {}\n", c.dim());
    for (v, p) in c.points() {
        let parts: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
        writeln!(out, "{v}: {}", parts.join(" ")).unwrap();
    }
    out
}

/// A closed curve whose waypoints are the file's points in file order.
pub fn parse_curve(text: &str) -> Result<PolygonalCurve> {
    let f = parse_coordinates(text)?;
    if f.coords.dim() != 3 {
        return Err(Error::Curve(format!("curves live in R^3, file has dimension {}", f.coords.dim())));
    }
    PolygonalCurve::new(f.order.iter().map(|v| f.coords.get(v).unwrap().clone()).collect())
}
