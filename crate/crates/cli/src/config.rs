//! Field-configuration files.
//!
//! ```json
//! { "chi": "minus", "mass": 0.5, "point": [0.1, 0.2, 0.0, -0.3],
//!   "fields": {
//!     "psi": [{"coeff": [1, 0], "blade": "e", "factors": [{"mono": [0, 1]}]}],
//!     "s":   [{"direction": "tau1", "profile": [{"coeff": [1, 0], "blade": "e"}]}] } }
//! ```
//!
//! Recognised field names: `psi`, `psi2`, `psi3` (quark flavors), `a0`..`a3`,
//! `c0`..`c3`, `h0`..`h3` (term lists), `b0`..`b3` (u(3) terms with a 3×3
//! complex `direction`), and the gauge fields `u` (G(χ)), `s` (G₃), `v` (U(3)),
//! each a list of `{direction, profile}` factors.

use std::collections::BTreeMap;
use std::path::Path;

use cliffgauge::algebra::{Idempotent, Multivector};
use cliffgauge::error::Error as CoreError;
use cliffgauge::frames::GenvectorField;
use cliffgauge::jet::{FieldExpr, GroupFactor, GroupField};
use cliffgauge::lepton::LeptonFields;
use cliffgauge::lie::GroupFlavor;
use cliffgauge::quark::{BField, QuarkFields, U3Factor, U3Field};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_path_to_error::{Path as SerdePath, Segment};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid configuration at \"{pointer}\": {message}")]
    Invalid { pointer: String, message: String },
}

impl ConfigError {
    fn at(pointer: impl Into<String>, message: impl ToString) -> Self {
        ConfigError::Invalid { pointer: pointer.into(), message: message.to_string() }
    }

    pub fn pointer(&self) -> Option<&str> {
        match self {
            ConfigError::Invalid { pointer, .. } => Some(pointer),
            ConfigError::Io { .. } => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    fields: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    mass: Option<f64>,
    #[serde(default)]
    chi: Option<Idempotent>,
    #[serde(default)]
    point: Option<[f64; 4]>,
}

/// A parsed configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfig {
    pub chi: Idempotent,
    pub point: [f64; 4],
    pub lepton: LeptonFields,
    pub quark: QuarkFields,
    pub u: Option<GroupField>,
    pub s: Option<GroupField>,
    pub v: Option<U3Field>,
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

/// RFC 6901 pointer for a serde path under `prefix`.
fn pointer(prefix: &str, path: &SerdePath) -> String {
    let mut p = prefix.to_string();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => p += &format!("/{index}"),
            Segment::Map { key } => p += &format!("/{}", escape(key)),
            Segment::Enum { variant } => p += &format!("/{}", escape(variant)),
            Segment::Unknown => {}
        }
    }
    p
}

fn field<T: DeserializeOwned>(name: &str, value: &serde_json::Value) -> Result<T, ConfigError> {
    let prefix = format!("/fields/{}", escape(name));
    serde_path_to_error::deserialize(value.clone()).map_err(|e| ConfigError::at(pointer(&prefix, e.path()), e.inner()))
}

fn is_known(name: &str) -> bool {
    const SINGLE: [&str; 6] = ["psi", "psi2", "psi3", "u", "s", "v"];
    if SINGLE.contains(&name) {
        return true;
    }
    let mut chars = name.chars();
    matches!(
        (chars.next(), chars.next(), chars.next()),
        (Some('a' | 'b' | 'c' | 'h'), Some('0'..='3'), None)
    )
}

impl FieldConfig {
    pub fn from_file(path: &Path, default_chi: Idempotent) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text, default_chi)
    }

    /// `chi` from the file wins over `default_chi`.
    pub fn from_json(text: &str, default_chi: Idempotent) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError::at(pointer("", e.path()), e.inner()))?;
        if let Some(bad) = raw.fields.keys().find(|k| !is_known(k)) {
            return Err(ConfigError::at(format!("/fields/{}", escape(bad)), "unknown field name"));
        }
        let chi = raw.chi.unwrap_or(default_chi);
        let expr = |name: &str| -> Result<FieldExpr, ConfigError> {
            raw.fields.get(name).map_or(Ok(FieldExpr::zero()), |v| field(name, v))
        };
        let four = |prefix: char| -> Result<[FieldExpr; 4], ConfigError> {
            let v: Vec<FieldExpr> = (0..4).map(|mu| expr(&format!("{prefix}{mu}"))).collect::<Result<_, _>>()?;
            Ok(v.try_into().expect("four components"))
        };
        let psi = [expr("psi")?, expr("psi2")?, expr("psi3")?];
        let a = four('a')?;
        let c = four('c')?;
        let h = if (0..4).any(|mu| raw.fields.contains_key(&format!("h{mu}"))) {
            let mut comps = four('h')?;
            for (mu, comp) in comps.iter_mut().enumerate() {
                if !raw.fields.contains_key(&format!("h{mu}")) {
                    *comp = FieldExpr::constant(&Multivector::generator(mu));
                }
            }
            GenvectorField::Expr(Box::new(comps))
        } else {
            GenvectorField::standard()
        };
        let mut b: [BField; 4] = Default::default();
        for (mu, slot) in b.iter_mut().enumerate() {
            let name = format!("b{mu}");
            if let Some(v) = raw.fields.get(&name) {
                let terms: Vec<U3Factor> = field(&name, v)?;
                *slot = BField::new(terms).map_err(|e| invalid(&name, e))?;
            }
        }
        let group = |name: &str, flavor| -> Result<Option<GroupField>, ConfigError> {
            let Some(v) = raw.fields.get(name) else { return Ok(None) };
            let factors: Vec<GroupFactor> = field(name, v)?;
            GroupField::new(flavor, factors, chi).map(Some).map_err(|e| invalid(name, e))
        };
        let u = group("u", GroupFlavor::GChi)?;
        let s = group("s", GroupFlavor::G3)?;
        let v = match raw.fields.get("v") {
            Some(val) => Some(U3Field::new(field("v", val)?).map_err(|e| invalid("v", e))?),
            None => None,
        };
        let mass = raw.mass.unwrap_or(0.0);
        if !mass.is_finite() {
            return Err(ConfigError::at("/mass", "mass must be finite"));
        }
        let lepton = LeptonFields { psi: psi[0].clone(), a: a.clone(), c: c.clone(), h: h.clone(), mass, chi };
        let quark = QuarkFields { psi, a, b, c, h, mass, chi };
        Ok(FieldConfig { chi, point: raw.point.unwrap_or([0.0; 4]), lepton, quark, u, s, v })
    }
}

fn invalid(name: &str, e: CoreError) -> ConfigError {
    ConfigError::at(format!("/fields/{}", escape(name)), e)
}

/// Configuration shipped with the binary, used by `demo` and `convergence`.
pub const SAMPLE_CONFIG: &str = include_str!("../data/sample_config.json");

pub fn sample() -> FieldConfig {
    FieldConfig::from_json(SAMPLE_CONFIG, Idempotent::Minus).expect("bundled configuration parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        FieldConfig::from_json(text, Idempotent::Minus).unwrap_err().pointer().unwrap().to_string()
    }

    #[test]
    fn sample_parses() {
        let cfg = sample();
        assert!(cfg.s.is_some() && cfg.u.is_some() && cfg.v.is_some());
        assert!(!cfg.lepton.psi.is_zero());
    }

    #[test]
    fn pointers_locate_errors() {
        assert_eq!(err(r#"{"fields":{"psi":[{"coeff":[1,0],"blade":"e9"}]}}"#), "/fields/psi/0/blade");
        assert_eq!(
            err(r#"{"fields":{"a2":[{"coeff":[1,0],"blade":"e","factors":[{"mono":[0,1]},{"sin":{"k":[1,2],"phase":0}}]}]}}"#),
            "/fields/a2/0/factors/1/sin/k"
        );
        assert_eq!(err(r#"{"fields":{"zeta":[]}}"#), "/fields/zeta");
        assert_eq!(err(r#"{"fields":{}, "mass":"heavy"}"#), "/mass");
        assert_eq!(err(r#"{"fields":{"s":[{"direction":"theta","profile":[]}]}}"#), "/fields/s");
    }

    #[test]
    fn missing_fields_default_to_zero() {
        let cfg = FieldConfig::from_json(r#"{"fields":{}}"#, Idempotent::Plus).unwrap();
        assert!(cfg.lepton.psi.is_zero());
        assert_eq!(cfg.chi, Idempotent::Plus);
        assert_eq!(cfg.lepton.h, GenvectorField::standard());
    }

    #[test]
    fn escapes_pointer_tokens() {
        assert_eq!(err(r#"{"fields":{"a/b":[]}}"#), "/fields/a~1b");
    }
}
