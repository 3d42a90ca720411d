//! JSON file formats. Polynomials and rationals are strings; indices are 1-based.

use serde::{Deserialize, Serialize};

use crate::deformation::GaugeJet;
use crate::error::{Error, Result};
use crate::lie_algebra::StructureConstants;
use crate::matrix::PolyMatrix;
use crate::parallelism::{Connection, Frame};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational};
use crate::tensor::TensorField;

/// `frame[i][a] = e^i_a`; `inverse` optional (computed when det e is constant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub n: usize,
    pub frame: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaEntry {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub val: String,
}

/// Raw connection components `Γ^i_{kj}` (unlisted entries are zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionFile {
    pub n: usize,
    pub gamma: Vec<GammaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub val: String,
}

/// Structure constants with `j < k`; antisymmetric partners implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsFile {
    pub n: usize,
    pub c: Vec<ConstantEntry>,
}

/// `coeffs[m−1]` is the matrix of `t^m`; a list of length `order + 1`
/// includes `t^0`, which must be the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetFile {
    pub n: usize,
    pub order: usize,
    pub coeffs: Vec<Vec<Vec<String>>>,
}

/// Any geometric input: a frame or a raw connection table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeometryFile {
    Frame(FrameFile),
    Connection(ConnectionFile),
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(parse_err)
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn check_index(v: usize, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        return Err(Error::Parse(format!("index {v} outside 1..{n}")));
    }
    Ok(v - 1)
}

fn check_square(rows: &[Vec<String>], n: usize, what: &str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("{what} must be {n}×{n}")));
    }
    Ok(())
}

impl FrameFile {
    pub fn to_frame(&self) -> Result<Frame> {
        check_square(&self.frame, self.n, "frame")?;
        let e = PolyMatrix::parse_rows(self.n, &self.frame)?;
        let w = match &self.inverse {
            Some(rows) => {
                check_square(rows, self.n, "inverse")?;
                Some(PolyMatrix::parse_rows(self.n, rows)?)
            }
            None => None,
        };
        Frame::new(e, w)
    }

    pub fn from_frame(f: &Frame) -> Self {
        FrameFile {
            n: f.dim(),
            frame: f.e().to_strings(),
            inverse: None,
        }
    }
}

impl ConnectionFile {
    pub fn to_connection(&self) -> Result<Connection> {
        let n = self.n;
        let mut g = TensorField::zero(n, n, 1, 2);
        for e in &self.gamma {
            let idx = [check_index(e.i, n)?, check_index(e.k, n)?, check_index(e.j, n)?];
            let p = Poly::parse(&e.val, n)?;
            let cur = g.get(&idx).clone();
            g.set(&idx, &cur + &p);
        }
        Connection::from_table(g)
    }

    pub fn from_connection(c: &Connection) -> Self {
        ConnectionFile {
            n: c.dim(),
            gamma: c
                .gamma()
                .nonzero()
                .into_iter()
                .map(|(idx, p)| GammaEntry {
                    i: idx[0] + 1,
                    k: idx[1] + 1,
                    j: idx[2] + 1,
                    val: p.to_string(),
                })
                .collect(),
        }
    }
}

impl ConstantsFile {
    pub fn to_constants(&self) -> Result<StructureConstants> {
        let n = self.n;
        let mut entries = Vec::with_capacity(self.c.len());
        for e in &self.c {
            let (i, j, k) = (check_index(e.i, n)?, check_index(e.j, n)?, check_index(e.k, n)?);
            if j >= k {
                return Err(Error::Parse(format!("constant entry needs j < k, got j={}, k={}", e.j, e.k)));
            }
            entries.push((i, j, k, parse_rational(&e.val)?));
        }
        StructureConstants::from_entries(n, &entries)
    }

    pub fn from_constants(g: &StructureConstants) -> Self {
        ConstantsFile {
            n: g.dim(),
            c: g.entries()
                .into_iter()
                .map(|(i, j, k, v)| ConstantEntry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    val: format_rational(&v),
                })
                .collect(),
        }
    }
}

impl JetFile {
    pub fn to_jet(&self) -> Result<GaugeJet> {
        let n = self.n;
        let mut mats = Vec::with_capacity(self.coeffs.len());
        for m in &self.coeffs {
            check_square(m, n, "jet coefficient")?;
            mats.push(PolyMatrix::parse_rows(n, m)?);
        }
        if mats.len() == self.order + 1 {
            if !mats[0].is_identity() {
                return Err(Error::NonIdentityLead);
            }
            mats.remove(0);
        }
        if mats.len() != self.order {
            return Err(Error::Parse(format!(
                "jet of order {} needs {} coefficients, found {}",
                self.order,
                self.order,
                self.coeffs.len()
            )));
        }
        GaugeJet::from_coeffs(n, mats)
    }

    pub fn from_jet(j: &GaugeJet) -> Self {
        JetFile {
            n: j.dim(),
            order: j.order(),
            coeffs: (1..=j.order()).map(|m| j.coeff(m).to_strings()).collect(),
        }
    }
}

impl GeometryFile {
    /// The base connection and, when the input is a frame, the frame itself.
    pub fn load(&self) -> Result<(Connection, Option<Frame>)> {
        match self {
            GeometryFile::Frame(f) => {
                let fr = f.to_frame()?;
                Ok((fr.connection(), Some(fr)))
            }
            GeometryFile::Connection(c) => Ok((c.to_connection()?, None)),
        }
    }
}
