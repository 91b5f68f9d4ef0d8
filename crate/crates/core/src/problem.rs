//! Versioned JSON problem files. Every scalar is an exact rational written as
//! a `"p/q"` or integer string; polynomials are maps from comma-joined
//! exponent vectors to coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::FiberModel;
use crate::error::{Error, Result};
use crate::graph::{Multiplicity, WordSlot};
use crate::matrix::ScalarMatrix;
use crate::monomial::ExpVec;
use crate::poly::SymPoly;
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::symops::PairingForm;

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational that serialises as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a \"p/q\" string or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                parse_scalar(v).map(Rational).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational(crate::scalar::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<Rational, E> {
                Err(E::custom("floating-point numbers are not accepted; write \"p/q\""))
            }
        }
        d.deserialize_any(V)
    }
}

pub type TermMap = BTreeMap<String, Rational>;
pub type MatrixSpec = Vec<Vec<Rational>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_draws: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberModelSpec {
    pub points: Vec<String>,
    pub e: usize,
    pub f: usize,
    pub r: usize,
    pub sections_e: Vec<BTreeMap<String, TermMap>>,
    pub sections_f: Vec<BTreeMap<String, TermMap>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceInstance {
    pub d: usize,
    pub r: usize,
    pub n: usize,
    pub vdecs: Vec<TermMap>,
    pub wdecs: Vec<TermMap>,
    /// Factor order such as `"m0 i0 m1 i1"`; leftmost acts last.
    pub order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub d: Vec<usize>,
    pub r: Vec<usize>,
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub samples: usize,
    #[serde(default = "default_orders")]
    pub orders_per_instance: usize,
}

fn default_orders() -> usize {
    3
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<TraceInstance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    /// Test fixture: perturbs one coefficient so verification must fail.
    #[serde(default, skip_serializing_if = "is_false")]
    pub corrupt_coefficient: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub mult: Multiplicity,
    pub vdecs: Vec<TermMap>,
    pub wdecs: Vec<TermMap>,
}

/// Serialised form of a certificate; enough to recompute its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    pub m: usize,
    pub r: usize,
    pub coeffs_a: Vec<Vec<Rational>>,
    pub coeffs_b: Vec<Vec<Rational>>,
    pub mult: Multiplicity,
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GbsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairings: Option<Vec<MatrixSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuSpec {
    pub r: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<MatrixSpec>,
    #[serde(default, rename = "A", skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<TermMap>,
    #[serde(default, rename = "B", skip_serializing_if = "Vec::is_empty")]
    pub b: Vec<TermMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_model: Option<FiberModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<RunOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbs: Option<GbsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<NuSpec>,
}

impl ProblemFile {
    pub fn empty() -> Self {
        ProblemFile {
            schema_version: SCHEMA_VERSION,
            d: None,
            e: None,
            r: None,
            pairing: None,
            a: vec![],
            b: vec![],
            fiber_model: None,
            options: None,
            trace: None,
            graph: None,
            certificate: None,
            gbs: None,
            nu: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let p: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if p.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                p.schema_version
            )));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialise")
    }

    fn require(field: Option<usize>, name: &str) -> Result<usize> {
        field.ok_or_else(|| Error::InvalidInput(format!("problem file lacks field {name:?}")))
    }

    pub fn dim_v(&self) -> Result<usize> {
        Self::require(self.d, "d")
    }

    pub fn dim_w(&self) -> Result<usize> {
        Self::require(self.e, "e")
    }

    pub fn degree(&self) -> Result<usize> {
        Self::require(self.r, "r")
    }

    pub fn pairing_form(&self) -> Result<PairingForm> {
        let spec = self
            .pairing
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("problem file lacks field \"pairing\"".into()))?;
        let form = pairing_from_spec(spec)?;
        if form.dim_v() != self.dim_v()? || form.dim_w() != self.dim_w()? {
            return Err(Error::Dimension(format!(
                "pairing is {}x{}, expected d x e = {}x{}",
                form.dim_v(),
                form.dim_w(),
                self.dim_v()?,
                self.dim_w()?
            )));
        }
        Ok(form)
    }

    pub fn spanning_a(&self) -> Result<Vec<SymPoly>> {
        polys_from_spec(&self.a, self.dim_v()?, self.degree()?)
    }

    pub fn spanning_b(&self) -> Result<Vec<SymPoly>> {
        polys_from_spec(&self.b, self.dim_w()?, self.degree()?)
    }

    pub fn fiber_model(&self) -> Result<FiberModel> {
        let spec = self
            .fiber_model
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("problem file lacks a fiber_model block".into()))?;
        let convert = |sections: &[BTreeMap<String, TermMap>], dim: usize| {
            sections
                .iter()
                .map(|table| {
                    table
                        .iter()
                        .map(|(pt, terms)| Ok((pt.clone(), poly_from_spec(terms, dim, spec.r)?)))
                        .collect::<Result<BTreeMap<_, _>>>()
                })
                .collect::<Result<Vec<_>>>()
        };
        FiberModel::new(
            spec.points.clone(),
            spec.e,
            spec.f,
            spec.r,
            convert(&spec.sections_e, spec.e)?,
            convert(&spec.sections_f, spec.f)?,
        )
    }
}

pub fn pairing_from_spec(spec: &MatrixSpec) -> Result<PairingForm> {
    let rows = spec
        .iter()
        .map(|row| row.iter().map(|x| x.0.clone()).collect())
        .collect();
    PairingForm::new(ScalarMatrix::from_rows(rows)?)
}

pub fn pairing_to_spec(p: &PairingForm) -> MatrixSpec {
    p.matrix()
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(Rational).collect())
        .collect()
}

pub fn poly_from_spec(terms: &TermMap, dim: usize, degree: usize) -> Result<SymPoly> {
    let parsed = terms
        .iter()
        .map(|(k, c)| Ok((k.parse::<ExpVec>()?, c.0.clone())))
        .collect::<Result<Vec<_>>>()?;
    SymPoly::from_terms(dim, degree, parsed)
}

pub fn polys_from_spec(specs: &[TermMap], dim: usize, degree: usize) -> Result<Vec<SymPoly>> {
    specs.iter().map(|t| poly_from_spec(t, dim, degree)).collect()
}

pub fn poly_to_spec(p: &SymPoly) -> TermMap {
    p.terms()
        .map(|(e, c)| (e.to_string(), Rational(c.clone())))
        .collect()
}

/// Parses a polynomial written as a JSON object of exponent keys to rationals.
pub fn poly_from_json(text: &str, dim: usize, degree: usize) -> Result<SymPoly> {
    let terms: TermMap = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    poly_from_spec(&terms, dim, degree)
}

pub fn poly_to_json(p: &SymPoly) -> String {
    serde_json::to_string(&poly_to_spec(p)).expect("term maps serialise")
}

/// Parses a pairing matrix written as a JSON array of rows.
pub fn pairing_from_json(text: &str) -> Result<PairingForm> {
    let spec: MatrixSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    pairing_from_spec(&spec)
}

pub fn scalars_to_spec(v: &[Scalar]) -> Vec<Rational> {
    v.iter().cloned().map(Rational).collect()
}

pub fn scalars_from_spec(v: &[Rational]) -> Vec<Scalar> {
    v.iter().map(|x| x.0.clone()).collect()
}

/// Parses `"m0 i0 m1 i1"` (also `mul0`/`con0`) into word slots.
pub fn parse_order(text: &str) -> Result<Vec<WordSlot>> {
    text.split_whitespace()
        .map(|tok| {
            let bad = || Error::Parse(format!("bad word token {tok:?}; expected m<k> or i<k>"));
            let (kind, idx) = if let Some(rest) = tok.strip_prefix("mul") {
                ('m', rest)
            } else if let Some(rest) = tok.strip_prefix("con") {
                ('i', rest)
            } else if let Some(rest) = tok.strip_prefix('m') {
                ('m', rest)
            } else if let Some(rest) = tok.strip_prefix('i') {
                ('i', rest)
            } else {
                return Err(bad());
            };
            let k: usize = idx.parse().map_err(|_| bad())?;
            Ok(if kind == 'm' { WordSlot::Mul(k) } else { WordSlot::Con(k) })
        })
        .collect()
}

pub fn format_order(order: &[WordSlot]) -> String {
    order
        .iter()
        .map(|s| match s {
            WordSlot::Mul(k) => format!("m{k}"),
            WordSlot::Con(k) => format!("i{k}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
