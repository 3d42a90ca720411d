//! Built-in examples.

use serde::Serialize;

use crate::deformation::GaugeJet;
use crate::error::{Error, Result};
use crate::io::{ConnectionFile, FrameFile, GammaEntry, GeometryFile, JetFile};
use crate::lie_algebra::StructureConstants;
use crate::matrix::PolyMatrix;
use crate::parallelism::{Connection, Frame};
use crate::rational::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleKind {
    Frame,
    Connection,
    Jet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleEntry {
    pub name: String,
    pub kind: ExampleKind,
    pub description: String,
    /// For jets: the example they deform.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

const FIXED: &[(&str, ExampleKind, &str, Option<&str>)] = &[
    ("abelian-2", ExampleKind::Frame, "identity frame on R^2", None),
    ("abelian-3", ExampleKind::Frame, "identity frame on R^3", None),
    ("abelian-4", ExampleKind::Frame, "identity frame on R^4", None),
    ("heisenberg-3", ExampleKind::Frame, "e2 = d2 + x1 d3", None),
    ("engel-4", ExampleKind::Frame, "e2 = d2 + x1 d3 + x1^2/2 d4, e3 = d3 + x1 d4", None),
    ("aff1-2", ExampleKind::Frame, "e1 = d1 - x2 d2: [e1, e2] = e2", None),
    ("perturbed-3", ExampleKind::Frame, "e2 = d2 + x1^2 d3: not a local Lie group", None),
    ("sl2-3", ExampleKind::Connection, "constant connection with sl(2) torsion and flat hat-curvature", None),
    ("abelian-const-jet", ExampleKind::Jet, "f = I + tA, A constant: a constant deformation", Some("abelian-2")),
    ("abelian-nonconst-jet", ExampleKind::Jet, "f = I + tB, B^1_2 = x1: not constant", Some("abelian-2")),
    ("heisenberg-bad-column-jet", ExampleKind::Jet, "f = I + tE, E^1_3 = 1: violates the derivative constraint", Some("heisenberg-3")),
    ("heisenberg-identity-jet", ExampleKind::Jet, "f = I", Some("heisenberg-3")),
];

pub fn catalog() -> Vec<ExampleEntry> {
    FIXED
        .iter()
        .map(|(name, kind, desc, base)| ExampleEntry {
            name: name.to_string(),
            kind: *kind,
            description: desc.to_string(),
            base: base.map(str::to_string),
        })
        .collect()
}

fn rows(r: &[&[&str]]) -> Vec<Vec<String>> {
    r.iter().map(|row| row.iter().map(|s| s.to_string()).collect()).collect()
}

fn frame_file(n: usize, r: &[&[&str]]) -> FrameFile {
    FrameFile {
        n,
        frame: rows(r),
        inverse: None,
    }
}

fn identity_rows(n: usize) -> Vec<Vec<String>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { "1" } else { "0" }.to_string()).collect()).collect()
}

/// The geometry file of a frame or connection example.
pub fn geometry(name: &str) -> Result<GeometryFile> {
    if let Some(n) = name.strip_prefix("abelian-").and_then(|s| s.parse::<usize>().ok()) {
        if !(2..=6).contains(&n) {
            return Err(Error::Invalid(format!("abelian examples exist for n = 2..6, not {n}")));
        }
        return Ok(GeometryFile::Frame(FrameFile {
            n,
            frame: identity_rows(n),
            inverse: None,
        }));
    }
    let g = |i, k, j, v: &str| GammaEntry { i, k, j, val: v.into() };
    Ok(match name {
        "heisenberg-3" => GeometryFile::Frame(frame_file(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "x1", "1"]])),
        "engel-4" => GeometryFile::Frame(frame_file(
            4,
            &[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "x1", "1", "0"], &["0", "1/2*x1^2", "x1", "1"]],
        )),
        "aff1-2" => GeometryFile::Frame(frame_file(2, &[&["1", "0"], &["-x2", "1"]])),
        "perturbed-3" => GeometryFile::Frame(frame_file(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "x1^2", "1"]])),
        "sl2-3" => GeometryFile::Connection(ConnectionFile {
            n: 3,
            gamma: vec![
                g(1, 1, 1, "2"),
                g(2, 2, 1, "2"),
                g(3, 3, 1, "2"),
                g(2, 1, 2, "4"),
                g(1, 3, 2, "-1"),
            ],
        }),
        _ => return Err(Error::Invalid(format!("unknown geometry example `{name}`"))),
    })
}

/// Base connection and optional frame of a geometry example.
pub fn load_geometry(name: &str) -> Result<(Connection, Option<Frame>)> {
    geometry(name)?.load()
}

pub fn frame(name: &str) -> Result<Frame> {
    match load_geometry(name)? {
        (_, Some(f)) => Ok(f),
        (_, None) => Err(Error::Invalid(format!("`{name}` is not a frame example"))),
    }
}

/// Jet example files with the name of their base.
pub fn jet(name: &str) -> Result<(JetFile, &'static str)> {
    let order = 4;
    let zero2 = || rows(&[&["0", "0"], &["0", "0"]]);
    let zero3 = || rows(&[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
    let pad = |first: Vec<Vec<String>>, zero: &dyn Fn() -> Vec<Vec<String>>| {
        let mut v = vec![first];
        v.extend((1..order).map(|_| zero()));
        v
    };
    Ok(match name {
        "abelian-const-jet" => (
            JetFile {
                n: 2,
                order,
                coeffs: pad(rows(&[&["1", "2"], &["0", "-1"]]), &zero2),
            },
            "abelian-2",
        ),
        "abelian-nonconst-jet" => (
            JetFile {
                n: 2,
                order,
                coeffs: pad(rows(&[&["0", "x1"], &["0", "0"]]), &zero2),
            },
            "abelian-2",
        ),
        "heisenberg-bad-column-jet" => (
            JetFile {
                n: 3,
                order,
                coeffs: pad(rows(&[&["0", "0", "1"], &["0", "0", "0"], &["0", "0", "0"]]), &zero3),
            },
            "heisenberg-3",
        ),
        "heisenberg-identity-jet" => (
            JetFile {
                n: 3,
                order,
                coeffs: (0..order).map(|_| zero3()).collect(),
            },
            "heisenberg-3",
        ),
        _ => return Err(Error::Invalid(format!("unknown jet example `{name}`"))),
    })
}

pub fn load_jet(name: &str) -> Result<(GaugeJet, &'static str)> {
    let (f, base) = jet(name)?;
    Ok((f.to_jet()?, base))
}

/// Structure constants of the named algebra in its standard basis.
pub fn algebra(name: &str) -> Result<StructureConstants> {
    let e = |list: &[(usize, usize, usize, i64)]| -> Result<StructureConstants> {
        let n = list.iter().map(|t| t.0.max(t.2)).max().unwrap_or(0);
        let entries: Vec<_> = list.iter().map(|&(i, j, k, v)| (i - 1, j - 1, k - 1, rat(v))).collect();
        StructureConstants::from_entries(n, &entries)
    };
    if let Some(n) = name.strip_prefix("abelian-").and_then(|s| s.parse::<usize>().ok()) {
        return StructureConstants::abelian(n);
    }
    match name {
        "heisenberg-3" => e(&[(3, 1, 2, 1)]),
        "sl2-3" => e(&[(2, 1, 2, 2), (3, 1, 3, -2), (1, 2, 3, 1)]),
        "so3-3" => e(&[(3, 1, 2, 1), (1, 2, 3, 1), (2, 1, 3, -1)]),
        "aff1-2" => e(&[(2, 1, 2, 1)]),
        "engel-4" => e(&[(3, 1, 2, 1), (4, 1, 3, 1)]),
        _ => Err(Error::Invalid(format!("unknown algebra `{name}`"))),
    }
}

/// `e` as an n×n polynomial matrix from string rows (test and generator helper).
pub fn parse_matrix(n: usize, r: &[&[&str]]) -> Result<PolyMatrix> {
    PolyMatrix::parse_rows(n, &rows(r))
}
