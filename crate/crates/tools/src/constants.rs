//! Built-in constant set and user overrides loaded from JSON.

use std::collections::BTreeMap;
use std::path::Path;

use origami_spring::{FacetFamily, MechanicalParams, SpringSpec, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The constant set compiled into the binary.
pub const EMBEDDED: &str = include_str!("../data/constants.json");

/// Schema version understood by this build.
pub const VERSION: u32 = 1;

/// Fitted constants of one spring type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpringConstants {
    pub z_tilde_0: f64,
    pub k_c: f64,
    #[serde(rename = "k_F")]
    pub k_f: f64,
    #[serde(rename = "k_B", default, skip_serializing_if = "Option::is_none")]
    pub k_b: Option<f64>,
    /// Printed exponent; informational, the model derives its own from `z_tilde_0`.
    #[serde(rename = "xi_F", default, skip_serializing_if = "Option::is_none")]
    pub xi_f: Option<f64>,
    #[serde(rename = "xi_B", default, skip_serializing_if = "Option::is_none")]
    pub xi_b: Option<f64>,
}

/// A constants document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub version: u32,
    /// Helix-length coefficient by edge count.
    pub lambda: BTreeMap<String, f64>,
    /// Keyed `IOS-4`, `RIOS-6`, ...
    pub springs: BTreeMap<String, SpringConstants>,
    /// Keyed by edge count, plus `POS` and `hexagram`.
    pub masses_g: BTreeMap<String, f64>,
}

pub fn spring_key(family: FacetFamily, variant: Variant) -> String {
    format!("{variant}-{family}")
}

impl Constants {
    pub fn embedded() -> Self {
        serde_json::from_str(EMBEDDED).expect("embedded constants are valid JSON")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Data(format!("constants file: {e}")))?;
        if c.version != VERSION {
            return Err(CliError::Data(format!(
                "constants file version {} is not supported (expected {VERSION})",
                c.version
            )));
        }
        Ok(c)
    }

    /// The file at `path`, or the embedded set.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::embedded()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Usage(format!("cannot read constants file {}: {e}", p.display()))
                })?;
                Self::parse(&text)
            }
        }
    }

    pub fn lambda(&self, family: FacetFamily) -> Option<f64> {
        self.lambda.get(&family.to_string()).copied()
    }

    pub fn spring(&self, family: FacetFamily, variant: Variant) -> Result<&SpringConstants> {
        let key = spring_key(family, variant);
        self.springs.get(&key).ok_or_else(|| {
            CliError::Usage(format!(
                "no constants for {key}; supply them with flags or a --constants file"
            ))
        })
    }

    /// Spring mass in kg.
    pub fn spring_mass_kg(&self, family: FacetFamily) -> Result<f64> {
        self.mass_kg(&family.to_string())
    }

    /// Mass by key (`4`, `POS`, `hexagram`, ...) in kg.
    pub fn mass_kg(&self, key: &str) -> Result<f64> {
        self.masses_g
            .get(key)
            .map(|g| g * 1e-3)
            .ok_or_else(|| CliError::Usage(format!("no mass for `{key}` in the constants set")))
    }
}

/// Per-flag overrides of the stiffness constants.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub z_tilde_0: Option<f64>,
    pub k_c: Option<f64>,
    pub k_f: Option<f64>,
    pub k_b: Option<f64>,
}

/// Mechanical parameters from the constant set with overrides applied.
///
/// Missing table entries are fine as long as the overrides fill every slot.
pub fn resolve_params(
    constants: &Constants,
    spec: &SpringSpec,
    overrides: Overrides,
) -> Result<MechanicalParams> {
    if spec.variant() == Variant::Rios && overrides.k_b.is_some() {
        return Err(CliError::Usage("--kb applies to IOS springs only".into()));
    }
    let table = constants.spring(spec.family(), spec.variant()).ok();
    let pick = |flag: Option<f64>, field: Option<f64>, name: &str| {
        flag.or(field).ok_or_else(|| {
            CliError::Usage(format!(
                "missing {name} for {}; pass it as a flag or in a --constants file",
                spring_key(spec.family(), spec.variant())
            ))
        })
    };
    let z0 = pick(overrides.z_tilde_0, table.map(|t| t.z_tilde_0), "z_tilde_0")?;
    let k_c = pick(overrides.k_c, table.map(|t| t.k_c), "k_c")?;
    let k_f = pick(overrides.k_f, table.map(|t| t.k_f), "k_F")?;
    let k_b = match spec.variant() {
        Variant::Ios => Some(pick(overrides.k_b, table.and_then(|t| t.k_b), "k_B")?),
        Variant::Rios => None,
    };
    MechanicalParams::with_derived_exponents(spec, z0, k_c, k_f, k_b)
        .map_err(|e| CliError::Usage(format!("invalid constants: {e}")))
}
