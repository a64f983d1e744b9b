//! JSON documents describing a parabolic Higgs bundle, and the built-in gallery.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussRat, P1Point, RatFunc, Vector};
use crate::error::{NahmError, ParseError, Result};
use crate::higgs::{HiggsBundle, ParabolicPoint, PolarDivisor};
use crate::parse::{parse_rational_q, parse_ratfunc, parse_scalar};
use crate::transform::RationalParam;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarEntry {
    pub point: Scalar,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParabolicEntry {
    /// A scalar, or `"inf"`.
    pub location: Scalar,
    pub filtration: Vec<Vec<Vec<Scalar>>>,
    pub weights: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamEntry {
    pub u: String,
    pub v: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ModelDocument {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub rank: usize,
    pub twist_type: Vec<i64>,
    pub theta: Vec<Vec<Scalar>>,
    pub polar: Vec<PolarEntry>,
    pub parabolic: Vec<ParabolicEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<ParamEntry>,
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

fn at<T>(path: &str, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|e| NahmError::Parse(e.with_path(path)))
}

fn point_of(path: &str, s: &Scalar) -> Result<P1Point> {
    let t = s.text();
    if t.trim() == "inf" || t.trim() == "∞" {
        return Ok(P1Point::Infinity);
    }
    Ok(P1Point::Finite(at(path, parse_scalar(&t))?))
}

fn point_text(p: &P1Point) -> Scalar {
    match p {
        P1Point::Infinity => Scalar::Text("inf".into()),
        P1Point::Finite(x) => Scalar::Text(x.to_string()),
    }
}

impl ModelDocument {
    pub fn to_bundle(&self) -> Result<HiggsBundle> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(NahmError::Input(format!(
                "schemaVersion {} is not supported (expected {})",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        let mut theta = Vec::new();
        for (i, row) in self.theta.iter().enumerate() {
            let mut out = Vec::new();
            for (j, s) in row.iter().enumerate() {
                out.push(at(&format!("theta[{}][{}]", i, j), parse_ratfunc(&s.text()))?);
            }
            theta.push(out);
        }
        let mut polar = Vec::new();
        for (k, p) in self.polar.iter().enumerate() {
            polar.push((at(&format!("polar[{}].point", k), parse_scalar(&p.point.text()))?, p.multiplicity));
        }
        let mut parabolic = Vec::new();
        for (k, pp) in self.parabolic.iter().enumerate() {
            let location = point_of(&format!("parabolic[{}].location", k), &pp.location)?;
            let mut filtration = Vec::new();
            for (j, step) in pp.filtration.iter().enumerate() {
                let mut vs: Vec<Vector> = Vec::new();
                for (a, v) in step.iter().enumerate() {
                    let mut vec = Vec::new();
                    for (b, x) in v.iter().enumerate() {
                        let path = format!("parabolic[{}].filtration[{}][{}][{}]", k, j, a, b);
                        vec.push(at(&path, parse_scalar(&x.text()))?);
                    }
                    vs.push(vec);
                }
                filtration.push(vs);
            }
            let mut weights = Vec::new();
            for (j, w) in pp.weights.iter().enumerate() {
                weights.push(at(&format!("parabolic[{}].weights[{}]", k, j), parse_rational_q(&w.text()))?);
            }
            parabolic.push(ParabolicPoint { location, filtration, weights });
        }
        Ok(HiggsBundle {
            rank: self.rank,
            twist_type: self.twist_type.clone(),
            theta,
            polar: PolarDivisor::new(polar),
            parabolic,
        })
    }

    pub fn param(&self) -> Result<Option<RationalParam>> {
        match &self.param {
            None => Ok(None),
            Some(p) => Ok(Some(RationalParam::parse(&p.u, &p.v, &p.x, &p.y)?)),
        }
    }

    pub fn from_bundle(h: &HiggsBundle) -> Self {
        let s = |x: &GaussRat| Scalar::Text(x.to_string());
        let q = |x: &BigRational| Scalar::Text(x.to_string());
        let rf = |f: &RatFunc| Scalar::Text(f.render("z"));
        ModelDocument {
            schema_version: SCHEMA_VERSION,
            rank: h.rank,
            twist_type: h.twist_type.clone(),
            theta: h.theta.iter().map(|row| row.iter().map(rf).collect()).collect(),
            polar: h.polar.points.iter().map(|(p, m)| PolarEntry { point: s(p), multiplicity: *m }).collect(),
            parabolic: h
                .parabolic
                .iter()
                .map(|pp| ParabolicEntry {
                    location: point_text(&pp.location),
                    filtration: pp.filtration.iter().map(|st| st.iter().map(|v| v.iter().map(s).collect()).collect()).collect(),
                    weights: pp.weights.iter().map(q).collect(),
                })
                .collect(),
            param: None,
        }
    }
}

pub fn parse_document(text: &str) -> Result<ModelDocument> {
    serde_json::from_str(text).map_err(|e| {
        NahmError::Parse(ParseError {
            path: format!("line {}, column {}", e.line(), e.column()),
            text: String::new(),
            offset: 0,
            message: e.to_string(),
        })
    })
}

pub fn parse_model(text: &str) -> Result<HiggsBundle> {
    parse_document(text)?.to_bundle()
}

pub fn render_model(h: &HiggsBundle) -> String {
    serde_json::to_string_pretty(&ModelDocument::from_bundle(h)).expect("documents serialize")
}

/// Built-in examples by name.
pub const GALLERY: &[(&str, &str)] = &[
    ("nilpotent", include_str!("../gallery/nilpotent.json")),
    ("higher-pole-r2", include_str!("../gallery/higher-pole-r2.json")),
    ("higher-pole-r3", include_str!("../gallery/higher-pole-r3.json")),
    ("higher-pole-r4", include_str!("../gallery/higher-pole-r4.json")),
    ("higher-pole-r5", include_str!("../gallery/higher-pole-r5.json")),
    ("split-unstable", include_str!("../gallery/split-unstable.json")),
];

pub fn gallery(name: &str) -> Result<ModelDocument> {
    let name = name.trim_end_matches(".json");
    let (_, text) = GALLERY
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| NahmError::Input(format!("no gallery example named {:?}", name)))?;
    parse_document(text)
}
