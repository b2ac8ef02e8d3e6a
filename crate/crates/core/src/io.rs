//! JSON formats for coefficient rings, building data, and triple-cover data.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::{BuildingData, LocusReport};
use crate::exactnum::{ArithError, Field, Fp, Rational, Ring};
use crate::miranda::{TripleCoverData, ZData};
use crate::poly::PolyError;
use crate::qring::{CoeffRing, RingElem};
use crate::scalg::SCAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unknown field tag {0:?} (expected \"q\", \"rational\" or \"fp:<p>\")")]
    FieldTag(String),
    #[error("{field}: {source}")]
    Entry { field: String, source: PolyError },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `{"type":"rational"}`, `{"type":"fp","p":7}`, or
/// `{"type":"quotient","vars":[...],"ideal":[...]}` (optionally with `"field"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RingDescriptor {
    Rational,
    Fp {
        p: u64,
    },
    Quotient {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<Box<RingDescriptor>>,
        vars: Vec<String>,
        #[serde(default)]
        ideal: Vec<String>,
    },
}

/// Either a descriptor object or a short tag such as `"q"` or `"fp:7"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Tag(String),
    Descriptor(RingDescriptor),
}

impl Default for RingSpec {
    fn default() -> Self {
        RingSpec::Descriptor(RingDescriptor::Rational)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    Rational,
    Fp(u64),
}

impl BaseField {
    pub fn parse(tag: &str) -> Result<Self, IoError> {
        let t = tag.trim();
        match t {
            "q" | "Q" | "QQ" | "rational" => Ok(BaseField::Rational),
            _ => {
                let p = t
                    .strip_prefix("fp:")
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or_else(|| IoError::FieldTag(t.to_string()))?;
                Fp::check_modulus(p)?;
                Ok(BaseField::Fp(p))
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            BaseField::Rational => "q".to_string(),
            BaseField::Fp(p) => format!("fp:{p}"),
        }
    }
}

impl RingDescriptor {
    pub fn base_field(&self) -> Result<BaseField, IoError> {
        match self {
            RingDescriptor::Rational => Ok(BaseField::Rational),
            RingDescriptor::Fp { p } => {
                Fp::check_modulus(*p)?;
                Ok(BaseField::Fp(*p))
            }
            RingDescriptor::Quotient { field, .. } => match field {
                None => Ok(BaseField::Rational),
                Some(f) => match f.as_ref() {
                    RingDescriptor::Quotient { .. } => Err(IoError::Json("nested quotient descriptors".into())),
                    other => other.base_field(),
                },
            },
        }
    }

    /// The ring over the coefficient field `coeff` (which must match [`Self::base_field`]).
    pub fn build<K: Field>(&self, coeff: &K) -> Result<Arc<CoeffRing<K>>, IoError> {
        match self {
            RingDescriptor::Rational | RingDescriptor::Fp { .. } => Ok(CoeffRing::field(coeff)),
            RingDescriptor::Quotient { vars, ideal, .. } => Ok(CoeffRing::quotient(vars, ideal, coeff)?),
        }
    }
}

impl RingSpec {
    pub fn descriptor(&self) -> Result<RingDescriptor, IoError> {
        match self {
            RingSpec::Descriptor(d) => Ok(d.clone()),
            RingSpec::Tag(t) => Ok(match BaseField::parse(t)? {
                BaseField::Rational => RingDescriptor::Rational,
                BaseField::Fp(p) => RingDescriptor::Fp { p },
            }),
        }
    }
}

/// Coefficient fields the JSON formats can name.
pub trait NamedField: Field {
    fn for_base(base: BaseField) -> Option<Self>;
}

impl NamedField for Rational {
    fn for_base(base: BaseField) -> Option<Self> {
        matches!(base, BaseField::Rational).then(Rational::zero)
    }
}

impl NamedField for Fp {
    fn for_base(base: BaseField) -> Option<Self> {
        match base {
            BaseField::Fp(p) => Fp::new(0, p).ok(),
            BaseField::Rational => None,
        }
    }
}

fn parse_entry<K: Field>(ring: &Arc<CoeffRing<K>>, name: &str, text: &str) -> Result<RingElem<K>, IoError> {
    RingElem::parse(ring, text).map_err(|source| IoError::Entry { field: name.to_string(), source })
}

fn build_ring<K: NamedField>(spec: &RingSpec) -> Result<(RingDescriptor, Arc<CoeffRing<K>>), IoError> {
    let desc = spec.descriptor()?;
    let base = desc.base_field()?;
    let coeff = K::for_base(base).ok_or_else(|| IoError::FieldTag(base.tag()))?;
    let ring = desc.build(&coeff)?;
    Ok((desc, ring))
}

/// `{"ring":…, "alpha":[["A","B"],["C","D"]], "beta":[["a","c","e"],["b","d","f"]], "omega":"…"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingDataJson {
    #[serde(default)]
    pub ring: RingSpec,
    pub alpha: [[String; 2]; 2],
    pub beta: [[String; 3]; 2],
    pub omega: String,
}

impl BuildingDataJson {
    pub fn from_str(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }

    pub fn base_field(&self) -> Result<BaseField, IoError> {
        self.ring.descriptor()?.base_field()
    }

    pub fn to_data<K: NamedField>(&self) -> Result<BuildingData<RingElem<K>>, IoError> {
        let (_, ring) = build_ring::<K>(&self.ring)?;
        let names = [["A", "B"], ["C", "D"]];
        let bnames = [["a", "c", "e"], ["b", "d", "f"]];
        let mut alpha: Vec<RingElem<K>> = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                alpha.push(parse_entry(&ring, names[i][j], &self.alpha[i][j])?);
            }
        }
        let mut beta: Vec<RingElem<K>> = Vec::new();
        for i in 0..2 {
            for j in 0..3 {
                beta.push(parse_entry(&ring, bnames[i][j], &self.beta[i][j])?);
            }
        }
        let omega = parse_entry(&ring, "omega", &self.omega)?;
        let [aa, bb, cc, dd]: [RingElem<K>; 4] = alpha.try_into().unwrap();
        let [a, c, e, b, d, f]: [RingElem<K>; 6] = beta.try_into().unwrap();
        Ok(BuildingData::new([[aa, bb], [cc, dd]], [[a, c, e], [b, d, f]], omega))
    }

    pub fn from_data<R: Ring>(ring: RingSpec, chi: &BuildingData<R>) -> Self {
        let s = |x: &R| x.to_string();
        BuildingDataJson {
            ring,
            alpha: [[s(&chi.alpha[0][0]), s(&chi.alpha[0][1])], [s(&chi.alpha[1][0]), s(&chi.alpha[1][1])]],
            beta: [
                [s(&chi.beta[0][0]), s(&chi.beta[0][1]), s(&chi.beta[0][2])],
                [s(&chi.beta[1][0]), s(&chi.beta[1][1]), s(&chi.beta[1][2])],
            ],
            omega: s(&chi.omega),
        }
    }
}

/// `{"ring":…, "delta":["-b","a","c","e"]}`, plus `"zeta"` and `"omega"` for Z-data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCoverJson {
    #[serde(default)]
    pub ring: RingSpec,
    pub delta: [String; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
}

impl TripleCoverJson {
    pub fn from_str(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }

    pub fn base_field(&self) -> Result<BaseField, IoError> {
        self.ring.descriptor()?.base_field()
    }

    pub fn to_delta<K: NamedField>(&self) -> Result<TripleCoverData<RingElem<K>>, IoError> {
        let (_, ring) = build_ring::<K>(&self.ring)?;
        let names = ["delta[0]", "delta[1]", "delta[2]", "delta[3]"];
        let mut v = Vec::new();
        for (n, t) in names.iter().zip(&self.delta) {
            v.push(parse_entry(&ring, n, t)?);
        }
        Ok(TripleCoverData::new(v.try_into().unwrap()))
    }

    /// Requires `zeta` and `omega`.
    pub fn to_zdata<K: NamedField>(&self) -> Result<ZData<RingElem<K>>, IoError> {
        let delta = self.to_delta::<K>()?;
        let ring = delta.delta[0].ring().clone();
        let zeta = self.zeta.as_ref().ok_or_else(|| IoError::Json("missing \"zeta\"".into()))?;
        let omega = self.omega.as_ref().ok_or_else(|| IoError::Json("missing \"omega\"".into()))?;
        let names = ["A", "B", "C"];
        let mut z = Vec::new();
        for (n, t) in names.iter().zip(zeta) {
            z.push(parse_entry(&ring, n, t)?);
        }
        Ok(ZData { delta, zeta: z.try_into().unwrap(), omega: parse_entry(&ring, "omega", omega)? })
    }

    pub fn from_delta<R: Ring>(ring: RingSpec, d: &TripleCoverData<R>) -> Self {
        TripleCoverJson {
            ring,
            delta: std::array::from_fn(|i| d.delta[i].to_string()),
            zeta: None,
            omega: None,
        }
    }

    pub fn from_zdata<R: Ring>(ring: RingSpec, z: &ZData<R>) -> Self {
        let mut out = Self::from_delta(ring, &z.delta);
        out.zeta = Some(std::array::from_fn(|i| z.zeta[i].to_string()));
        out.omega = Some(z.omega.to_string());
        out
    }
}

/// Structure constants as emitted by the `algebra` and `s3` commands:
/// `{"ring":…, "rank":n, "unit":u, "basis":[...], "mult":[[[...]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default)]
    pub ring: RingSpec,
    pub rank: usize,
    pub unit: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<Vec<String>>>,
}

impl AlgebraJson {
    pub fn from_str(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
    }

    pub fn base_field(&self) -> Result<BaseField, IoError> {
        self.ring.descriptor()?.base_field()
    }

    pub fn from_algebra<R: Ring>(ring: RingSpec, alg: &SCAlgebra<R>) -> Self {
        let v = alg.to_json();
        AlgebraJson {
            ring,
            rank: alg.rank(),
            unit: alg.unit_index(),
            basis: alg.names().to_vec(),
            mult: serde_json::from_value(v["mult"].clone()).expect("mult is a string cube"),
        }
    }

    pub fn to_algebra<K: NamedField>(&self) -> Result<SCAlgebra<RingElem<K>>, IoError> {
        let (_, ring) = build_ring::<K>(&self.ring)?;
        let n = self.rank;
        if self.mult.len() != n || self.mult.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(IoError::Json(format!("mult must be {n}x{n}x{n}")));
        }
        let mut mult = Vec::with_capacity(n);
        for (i, row) in self.mult.iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (j, v) in row.iter().enumerate() {
                let mut out = Vec::with_capacity(n);
                for (k, t) in v.iter().enumerate() {
                    out.push(parse_entry(&ring, &format!("mult[{i}][{j}][{k}]"), t)?);
                }
                r.push(out);
            }
            mult.push(r);
        }
        SCAlgebra::new(mult, self.unit, self.basis.clone()).map_err(|e| IoError::Json(e.to_string()))
    }
}

/// LocusReport flags together with the residual values `g1..g25`.
pub fn locus_json<R: Ring>(report: &LocusReport, residuals: &[R]) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("locus report serializes");
    v["loci"] = serde_json::json!(report.loci());
    v["residuals"] = serde_json::json!(residuals.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_parse() {
        let q: RingSpec = serde_json::from_str(r#"{"type":"rational"}"#).unwrap();
        assert_eq!(q.descriptor().unwrap().base_field().unwrap(), BaseField::Rational);
        let f: RingSpec = serde_json::from_str(r#"{"type":"fp","p":7}"#).unwrap();
        assert_eq!(f.descriptor().unwrap().base_field().unwrap(), BaseField::Fp(7));
        let t: RingSpec = serde_json::from_str(r#""fp:11""#).unwrap();
        assert_eq!(t.descriptor().unwrap().base_field().unwrap(), BaseField::Fp(11));
        let w: RingSpec =
            serde_json::from_str(r#"{"type":"quotient","vars":["w"],"ideal":["w^2+3"]}"#).unwrap();
        let ring = w.descriptor().unwrap().build(&Rational::zero()).unwrap();
        assert_eq!(ring.describe(), "QQ[w]/(w^2 + 3)");
        assert!(BaseField::parse("fp:9").is_err());
        assert!(BaseField::parse("fp:2").is_err());
    }

    #[test]
    fn building_data_round_trip() {
        let text = r#"{"alpha":[["0","m"],["1","0"]],"beta":[["a","-m*b","m*a"],["b","-a","m*b"]],"omega":"m*b^2-a^2",
                      "ring":{"type":"quotient","vars":["m","a","b"]}}"#;
        let j = BuildingDataJson::from_str(text).unwrap();
        let chi = j.to_data::<Rational>().unwrap();
        assert!(crate::covers::satisfies_relations(&chi).unwrap());
        let back = BuildingDataJson::from_data(j.ring.clone(), &chi);
        assert_eq!(back.to_data::<Rational>().unwrap(), chi);
    }

    #[test]
    fn algebra_json_round_trip() {
        let chi = crate::covers::families::z2(&Rational::integer(3));
        let alg = crate::covers::cover_algebra(&chi).unwrap().algebra;
        let j = AlgebraJson::from_algebra(RingSpec::default(), &alg);
        let text = serde_json::to_string(&j).unwrap();
        let back = AlgebraJson::from_str(&text).unwrap().to_algebra::<Rational>().unwrap();
        assert_eq!(back.map(|x| Ok::<_, ()>(x.as_constant().unwrap())).unwrap(), alg);
    }

    #[test]
    fn entry_errors_name_the_field() {
        let text = r#"{"alpha":[["0","0"],["0","0"]],"beta":[["0","0","0"],["0","x","0"]],"omega":"0"}"#;
        let err = BuildingDataJson::from_str(text).unwrap().to_data::<Rational>().unwrap_err();
        assert!(matches!(err, IoError::Entry { ref field, .. } if field == "d"));
        let fp = BuildingDataJson::from_str(r#"{"ring":"fp:7","alpha":[["0","0"],["0","0"]],"beta":[["0","0","0"],["0","0","0"]],"omega":"0"}"#).unwrap();
        assert!(fp.to_data::<Rational>().is_err());
        assert!(fp.to_data::<Fp>().is_ok());
    }
}
