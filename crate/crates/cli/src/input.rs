//! Resolving positional inputs: a JSON file path or a built-in example name.

use std::path::Path;

use llg_core::deformation::GaugeJet;
use llg_core::io::{self, ConstantsFile, GeometryFile, JetFile};
use llg_core::rational::parse_rational;
use llg_core::{library, Connection, Frame, PolyMatrix, Rational, StructureConstants};

use crate::error::CliError;

/// Reads `arg` as a file when one exists at that path.
fn file_text(arg: &str) -> Result<Option<String>, CliError> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(path)
        .map(Some)
        .map_err(|e| CliError::Io(arg.to_string(), e.to_string()))
}

/// Picks the positional argument or `--example`; exactly one is required.
pub fn pick<'a>(positional: Option<&'a str>, example: Option<&'a str>, what: &str) -> Result<&'a str, CliError> {
    match (positional, example) {
        (Some(_), Some(_)) => Err(CliError::Usage(format!("give the {what} either as a path or with --example, not both"))),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Err(CliError::Usage(format!("missing {what}: pass a JSON file or --example NAME"))),
    }
}

pub fn geometry(arg: &str) -> Result<(Connection, Option<Frame>), CliError> {
    match file_text(arg)? {
        Some(text) => Ok(io::from_json::<GeometryFile>(&text)?.load()?),
        None => library::load_geometry(arg).map_err(|_| unknown(arg, "frame or connection")),
    }
}

/// Structure constants from a constants file or algebra name, or by
/// localizing a geometry (file or example) at `point`.
pub fn constants(arg: &str, point: Option<&str>) -> Result<StructureConstants, CliError> {
    if let Some(text) = file_text(arg)? {
        if let Ok(file) = io::from_json::<ConstantsFile>(&text) {
            return Ok(file.to_constants()?);
        }
        let (c, _) = io::from_json::<GeometryFile>(&text)?.load()?;
        return localize(&c, point);
    }
    if let Ok(g) = library::algebra(arg) {
        return Ok(g);
    }
    let (c, _) = library::load_geometry(arg).map_err(|_| unknown(arg, "constants, algebra or geometry"))?;
    localize(&c, point)
}

fn localize(c: &Connection, point: Option<&str>) -> Result<StructureConstants, CliError> {
    let p = parse_point(point, c.dim())?;
    Ok(c.torsion().localize(&p)?)
}

/// A jet file or jet example, plus the example's base name when known.
pub fn jet(arg: &str) -> Result<(GaugeJet, Option<&'static str>), CliError> {
    match file_text(arg)? {
        Some(text) => Ok((io::from_json::<JetFile>(&text)?.to_jet()?, None)),
        None => {
            let (j, base) = library::load_jet(arg).map_err(|_| unknown(arg, "jet"))?;
            Ok((j, Some(base)))
        }
    }
}

/// Truncates or zero-pads a jet to order `k`.
pub fn with_order(j: GaugeJet, k: Option<usize>) -> Result<GaugeJet, CliError> {
    let Some(k) = k else { return Ok(j) };
    if k == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    if k == j.order() {
        return Ok(j);
    }
    let n = j.dim();
    let coeffs = (1..=k)
        .map(|m| if m <= j.order() { j.coeff(m).clone() } else { PolyMatrix::zero(n, n, n) })
        .collect();
    Ok(GaugeJet::from_coeffs(n, coeffs)?)
}

/// `--point a,b,c` (rationals); the origin by default.
pub fn parse_point(arg: Option<&str>, n: usize) -> Result<Vec<Rational>, CliError> {
    let Some(s) = arg else {
        return Ok(vec![Rational::from_integer(0.into()); n]);
    };
    let p = s
        .split(',')
        .map(|v| parse_rational(v.trim()))
        .collect::<llg_core::Result<Vec<_>>>()?;
    if p.len() != n {
        return Err(CliError::Usage(format!("--point has {} coordinates, the input has dimension {n}", p.len())));
    }
    Ok(p)
}

fn unknown(arg: &str, what: &str) -> CliError {
    CliError::Usage(format!("`{arg}` is neither a readable file nor a built-in {what} example (see `llg examples`)"))
}
