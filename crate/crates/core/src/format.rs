//! Structured-text (JSON) formats for clusters, covering data, curves,
//! line arrangements and reports.
//!
//! Conventions: rationals are "numerator/denominator" strings (plain
//! integers are accepted on input); vertices in cluster files are 1-based;
//! exponent keys are comma-separated lists, "a,b,c" for forms in the
//! projective coordinates and "i,j" for affine frame polynomials.

use crate::covering::{Branch, CoveringData, DivisorClass, Epimorphism};
use crate::enriques::{ArcKind, Cluster, GriddedTree};
use crate::irregularity::IrregularityReport;
use crate::linsys::{BranchCurve, LocalFrame, ProjectivePoint, SingularPoint};
use crate::multiplier::{singularity_params, SingularityType, TypeSpec};
use crate::poly::{Poly2, Poly3};
use crate::{Error, Rat, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

/// Canonical string form of a rational: "numerator/denominator", reduced.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "a/b" or a plain integer.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        BigInt::from_str(t.trim())
            .map_err(|_| Error::Parse(format!("malformed integer {t:?} in rational")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(num)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn exponents(key: &str, arity: usize) -> Result<Vec<u32>> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != arity {
        return Err(Error::Parse(format!(
            "exponent key {key:?} must have {arity} comma-separated entries"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in key {key:?}")))
        })
        .collect()
}

/// Serializes a form over the projective coordinates with "a,b,c" keys.
pub fn poly3_to_map(p: &Poly3) -> BTreeMap<String, String> {
    p.terms()
        .map(|(&(a, b, c), coef)| (format!("{a},{b},{c}"), rat_to_string(coef)))
        .collect()
}

pub fn poly3_from_map(map: &BTreeMap<String, String>) -> Result<Poly3> {
    let mut p = Poly3::zero();
    for (key, val) in map {
        let e = exponents(key, 3)?;
        p.add_term((e[0], e[1], e[2]), rat_from_str(val)?);
    }
    Ok(p)
}

pub fn poly2_to_map(p: &Poly2) -> BTreeMap<String, String> {
    p.terms()
        .map(|(&(i, j), coef)| (format!("{i},{j}"), rat_to_string(coef)))
        .collect()
}

pub fn poly2_from_map(map: &BTreeMap<String, String>) -> Result<Poly2> {
    let mut p = Poly2::zero();
    for (key, val) in map {
        let e = exponents(key, 2)?;
        p.add_term(e[0], e[1], rat_from_str(val)?);
    }
    Ok(p)
}

// ---------------------------------------------------------------------
// Cluster files

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcEntry {
    pub from: usize,
    pub to: usize,
    pub kind: ArcKind,
}

/// Cluster file: arcs with kinds over 1-based vertices, plus weights.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClusterFile {
    pub vertices: usize,
    pub arcs: Vec<ArcEntry>,
    pub weights: Vec<i64>,
}

impl ClusterFile {
    pub fn from_cluster(cluster: &Cluster) -> Self {
        ClusterFile {
            vertices: cluster.tree.vertex_count(),
            arcs: cluster
                .tree
                .arcs()
                .into_iter()
                .map(|(from, to, kind)| ArcEntry {
                    from: from + 1,
                    to: to + 1,
                    kind,
                })
                .collect(),
            weights: cluster.weights.clone(),
        }
    }

    pub fn to_cluster(&self) -> Result<Cluster> {
        let arcs: Vec<(usize, usize, ArcKind)> = self
            .arcs
            .iter()
            .map(|a| {
                if a.from == 0 || a.to == 0 {
                    return Err(Error::Parse("cluster vertices are 1-based".into()));
                }
                Ok((a.from - 1, a.to - 1, a.kind))
            })
            .collect::<Result<_>>()?;
        let tree = GriddedTree::new(self.vertices, &arcs)?;
        Cluster::new(tree, self.weights.clone())
    }
}

/// Cluster output with derived quantities attached; parses back as a
/// plain cluster file (extra keys are ignored on input).
#[derive(Clone, Debug, Serialize)]
pub struct ClusterOut {
    #[serde(flatten)]
    pub cluster: ClusterFile,
    pub unloaded: bool,
    pub exceptional: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colength: Option<u64>,
}

impl ClusterOut {
    pub fn new(cluster: &Cluster) -> Self {
        ClusterOut {
            cluster: ClusterFile::from_cluster(cluster),
            unloaded: cluster.is_unloaded(),
            exceptional: cluster.weights_to_exceptional(),
            colength: cluster.colength().ok(),
        }
    }
}

// ---------------------------------------------------------------------
// Covering files

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchEntry {
    pub m: u64,
    pub value: u64,
    pub divisor: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringFile {
    pub n: u64,
    pub l: BTreeMap<String, i64>,
    pub branches: Vec<BranchEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, BTreeMap<String, i64>>,
}

fn class_to_map(dc: &DivisorClass) -> BTreeMap<String, i64> {
    dc.iter().map(|(s, &m)| (s.clone(), m)).collect()
}

fn class_from_map(map: &BTreeMap<String, i64>) -> DivisorClass {
    DivisorClass::from_pairs(map.iter().map(|(s, &m)| (s.clone(), m)))
}

impl CoveringFile {
    pub fn from_data(data: &CoveringData) -> Self {
        CoveringFile {
            n: data.n,
            l: class_to_map(&data.l),
            branches: data
                .branches
                .iter()
                .map(|b| BranchEntry {
                    m: b.epi.modulus,
                    value: b.epi.value,
                    divisor: class_to_map(&b.divisor),
                })
                .collect(),
            classes: data
                .classes
                .iter()
                .map(|(s, dc)| (s.clone(), class_to_map(dc)))
                .collect(),
        }
    }

    pub fn to_data(&self) -> Result<CoveringData> {
        let branches = self
            .branches
            .iter()
            .map(|b| {
                Ok(Branch {
                    epi: Epimorphism::new(b.m, b.value)?,
                    divisor: class_from_map(&b.divisor),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CoveringData::new(
            self.n,
            class_from_map(&self.l),
            branches,
            self.classes
                .iter()
                .map(|(s, m)| (s.clone(), class_from_map(m)))
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------
// Curve files

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypeEntry {
    /// "A_5", "A5", "ordinary_3".
    Label(String),
    Explicit { p: u64, q: u64, d: u64 },
}

impl TypeEntry {
    pub fn resolve(&self) -> Result<SingularityType> {
        match self {
            TypeEntry::Explicit { p, q, d } => {
                singularity_params(&TypeSpec::Explicit { p: *p, q: *q, d: *d })
            }
            TypeEntry::Label(s) => {
                let s = s.trim();
                if let Some(rest) = s.strip_prefix("A_").or_else(|| s.strip_prefix('A')) {
                    let k = rest
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad A_k label {s:?}")))?;
                    return singularity_params(&TypeSpec::A(k));
                }
                if let Some(rest) = s.strip_prefix("ordinary_") {
                    let m = rest
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad ordinary label {s:?}")))?;
                    return singularity_params(&TypeSpec::Ordinary(m));
                }
                Err(Error::Parse(format!("unknown singularity label {s:?}")))
            }
        }
    }

    pub fn from_type(ty: &SingularityType) -> Self {
        TypeEntry::Explicit {
            p: ty.p(),
            q: ty.q(),
            d: ty.d(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameEntry {
    pub u: BTreeMap<String, String>,
    pub v: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointEntry {
    pub location: [String; 3],
    #[serde(rename = "type")]
    pub ty: TypeEntry,
    pub frame: FrameEntry,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<BTreeMap<String, String>>,
    pub singular_points: Vec<PointEntry>,
}

impl CurveFile {
    pub fn from_curve(curve: &BranchCurve) -> Self {
        CurveFile {
            degree: curve.degree,
            polynomial: curve.polynomial.as_ref().map(poly3_to_map),
            singular_points: curve
                .points
                .iter()
                .map(|p| PointEntry {
                    location: {
                        let c = p.location.coords();
                        [
                            rat_to_string(&c[0]),
                            rat_to_string(&c[1]),
                            rat_to_string(&c[2]),
                        ]
                    },
                    ty: TypeEntry::from_type(&p.ty),
                    frame: FrameEntry {
                        u: poly2_to_map(&p.frame.u),
                        v: poly2_to_map(&p.frame.v),
                    },
                })
                .collect(),
        }
    }

    pub fn to_curve(&self) -> Result<BranchCurve> {
        let points = self
            .singular_points
            .iter()
            .map(|entry| {
                let location = ProjectivePoint::new(
                    rat_from_str(&entry.location[0])?,
                    rat_from_str(&entry.location[1])?,
                    rat_from_str(&entry.location[2])?,
                )?;
                let ty = entry.ty.resolve()?;
                let frame = LocalFrame::new(
                    poly2_from_map(&entry.frame.u)?,
                    poly2_from_map(&entry.frame.v)?,
                );
                SingularPoint::new(location, ty, frame)
            })
            .collect::<Result<Vec<_>>>()?;
        let polynomial = match &self.polynomial {
            Some(map) => Some(poly3_from_map(map)?),
            None => None,
        };
        BranchCurve::new(self.degree, points, polynomial)
    }
}

/// Line arrangement input: coefficient triples of a x0 + b x1 + c x2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub lines: Vec<[String; 3]>,
}

impl ArrangementFile {
    pub fn to_lines(&self) -> Result<Vec<[Rat; 3]>> {
        self.lines
            .iter()
            .map(|l| {
                Ok([
                    rat_from_str(&l[0])?,
                    rat_from_str(&l[1])?,
                    rat_from_str(&l[2])?,
                ])
            })
            .collect()
    }
}

// ---------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermOut {
    pub xi: String,
    pub degree: i64,
    #[serde(rename = "degZ")]
    pub deg_z: u64,
    pub h0: u64,
    pub h1: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagsOut {
    pub irreducible_filter: bool,
    pub transversality: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportOut {
    pub n: u64,
    pub b: u64,
    pub terms: Vec<TermOut>,
    pub q: u64,
    pub flags: FlagsOut,
}

impl ReportOut {
    pub fn from_report(report: &IrregularityReport) -> Self {
        ReportOut {
            n: report.n,
            b: report.b,
            terms: report
                .terms
                .iter()
                .map(|t| TermOut {
                    xi: rat_to_string(&t.xi),
                    degree: t.degree,
                    deg_z: t.deg_z,
                    h0: t.h0,
                    h1: t.h1,
                })
                .collect(),
            q: report.q,
            flags: FlagsOut {
                irreducible_filter: report.irreducible_filter,
                transversality: if report.transversality_assumed {
                    "assumed".to_string()
                } else {
                    "verified".to_string()
                },
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriques::minimal_cluster;
    use crate::covering::multiple_plane_data;
    use crate::rat;

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(5, 6)), "5/6");
        assert_eq!(rat_from_str("5/6").unwrap(), rat(5, 6));
        assert_eq!(rat_from_str("-7").unwrap(), rat(-7, 1));
        assert_eq!(rat_from_str("4/-6").unwrap(), rat(-2, 3));
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn cluster_roundtrip() {
        let k = minimal_cluster(2, 3, 1, 1).unwrap();
        let file = ClusterFile::from_cluster(&k);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ClusterFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_cluster().unwrap(), k);
    }

    #[test]
    fn cluster_out_reparses_as_cluster() {
        let k = minimal_cluster(2, 3, 1, 1).unwrap();
        let out = ClusterOut::new(&k);
        let json = serde_json::to_string(&out).unwrap();
        let parsed: ClusterFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_cluster().unwrap(), k);
    }

    #[test]
    fn covering_roundtrip() {
        let data = multiple_plane_data(10, 6).unwrap();
        let file = CoveringFile::from_data(&data);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: CoveringFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_data().unwrap(), data);
    }

    #[test]
    fn type_labels() {
        let t = TypeEntry::Label("A_2".into()).resolve().unwrap();
        assert_eq!((t.p(), t.q(), t.d()), (2, 3, 1));
        let t = TypeEntry::Label("A5".into()).resolve().unwrap();
        assert_eq!((t.p(), t.q(), t.d()), (1, 3, 2));
        let t = TypeEntry::Label("ordinary_4".into()).resolve().unwrap();
        assert_eq!((t.p(), t.q(), t.d()), (1, 1, 4));
        assert!(TypeEntry::Label("B_2".into()).resolve().is_err());
    }
}
