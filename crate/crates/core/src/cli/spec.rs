//! JSON field specification.
//!
//! Two mutually exclusive forms:
//!
//! ```text
//! {"dimension": 2, "skew": [[0, -2], [2, 0]], "translation": [0, 0]}
//! {"frequencies": [1, 2], "kernel_dim": 0, "v_ker": []}
//! ```
//!
//! `skew` may also be given flat, row-major, with `dimension^2` entries. In the canonical
//! shorthand, plane `j` occupies coordinates `(2j, 2j+1)`, the kernel the trailing `k`
//! coordinates, and the center is the origin.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::{CanonicalFrame, EuclideanKillingField, InvariantPlane, Matrix, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SkewEntries {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew: Option<SkewEntries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequencies: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_ker: Option<Vec<f64>>,
}

/// A validated specification.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedField {
    Raw(EuclideanKillingField<f64>),
    Canonical(CanonicalFrame<f64>),
}

impl LoadedField {
    pub fn field(&self) -> EuclideanKillingField<f64> {
        match self {
            LoadedField::Raw(f) => f.clone(),
            LoadedField::Canonical(fr) => fr.reconstruct(),
        }
    }

    /// The shorthand frame as given, or the canonicalization of a raw field.
    pub fn frame(&self, tol: &Tolerances) -> Result<CanonicalFrame<f64>, CliError> {
        match self {
            LoadedField::Raw(f) => Ok(f.canonicalize(tol)?),
            LoadedField::Canonical(fr) => Ok(fr.clone()),
        }
    }
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed field spec: {e}")))
    }

    pub fn from_field(field: &EuclideanKillingField<f64>) -> Self {
        Self {
            dimension: Some(field.dim()),
            skew: Some(SkewEntries::Rows(field.skew().to_rows())),
            translation: Some(field.translation().to_vec()),
            ..Self::default()
        }
    }

    pub fn load(&self) -> Result<LoadedField, CliError> {
        let raw = self.dimension.is_some() || self.skew.is_some() || self.translation.is_some();
        let canonical =
            self.frequencies.is_some() || self.kernel_dim.is_some() || self.v_ker.is_some();
        match (raw, canonical) {
            (true, true) => Err(CliError::Input(
                "field spec mixes the skew form and the canonical form; give exactly one".into(),
            )),
            (false, false) => Err(CliError::Input(
                "field spec is empty: need {dimension, skew, translation} or {frequencies, kernel_dim, v_ker}"
                    .into(),
            )),
            (true, false) => self.load_raw().map(LoadedField::Raw),
            (false, true) => self.load_canonical().map(LoadedField::Canonical),
        }
    }

    fn load_raw(&self) -> Result<EuclideanKillingField<f64>, CliError> {
        let missing = |k: &str| CliError::Input(format!("skew form requires `{k}`"));
        let m = self.dimension.ok_or_else(|| missing("dimension"))?;
        if m == 0 {
            return Err(CliError::Input("dimension must be at least 1".into()));
        }
        let skew = match self.skew.as_ref().ok_or_else(|| missing("skew"))? {
            SkewEntries::Rows(rows) => {
                if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                    return Err(CliError::Input(format!("skew must be a {m}x{m} array")));
                }
                Matrix::from_rows(rows)?
            }
            SkewEntries::Flat(data) => {
                if data.len() != m * m {
                    return Err(CliError::Input(format!(
                        "flat skew must have {} entries, found {}",
                        m * m,
                        data.len()
                    )));
                }
                Matrix::from_row_major(m, m, data.clone())?
            }
        };
        let translation = self
            .translation
            .clone()
            .ok_or_else(|| missing("translation"))?;
        if translation.len() != m {
            return Err(CliError::Input(format!(
                "translation must have {m} entries, found {}",
                translation.len()
            )));
        }
        EuclideanKillingField::new(skew, translation)
            .map_err(|e| CliError::Input(format!("invalid field: {e}")))
    }

    fn load_canonical(&self) -> Result<CanonicalFrame<f64>, CliError> {
        let frequencies = self
            .frequencies
            .clone()
            .ok_or_else(|| CliError::Input("canonical form requires `frequencies`".into()))?;
        if let Some(w) = frequencies.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(CliError::Input(format!(
                "frequencies must be positive and finite, found {w}"
            )));
        }
        let v_ker = self.v_ker.clone().unwrap_or_default();
        let k = self.kernel_dim.unwrap_or(v_ker.len());
        if v_ker.len() != k {
            return Err(CliError::Input(format!(
                "v_ker must have kernel_dim = {k} entries, found {}",
                v_ker.len()
            )));
        }
        let n = frequencies.len();
        let m = 2 * n + k;
        if m == 0 {
            return Err(CliError::Input(
                "canonical form describes a zero-dimensional space".into(),
            ));
        }
        let unit = |i: usize| {
            let mut e = vec![0.0; m];
            e[i] = 1.0;
            e
        };
        let planes = (0..n)
            .map(|j| InvariantPlane {
                e: unit(2 * j),
                f: unit(2 * j + 1),
            })
            .collect();
        let kernel = (0..k).map(|i| unit(2 * n + i)).collect();
        CanonicalFrame::from_parts(frequencies, planes, kernel, vec![0.0; m], v_ker)
            .map_err(|e| CliError::Input(format!("invalid canonical form: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_form() {
        let s = FieldSpec::parse(
            r#"{"dimension": 2, "skew": [[0, -2], [2, 0]], "translation": [0, 0]}"#,
        )
        .unwrap();
        let LoadedField::Raw(f) = s.load().unwrap() else {
            panic!("expected raw")
        };
        assert_eq!(f.skew()[(1, 0)], 2.0);
    }

    #[test]
    fn flat_skew_form() {
        let s =
            FieldSpec::parse(r#"{"dimension": 2, "skew": [0, -1, 1, 0], "translation": [1, 0]}"#)
                .unwrap();
        assert!(matches!(s.load().unwrap(), LoadedField::Raw(_)));
    }

    #[test]
    fn canonical_form() {
        let s = FieldSpec::parse(r#"{"frequencies": [1, 2], "kernel_dim": 1, "v_ker": [0.5]}"#)
            .unwrap();
        let LoadedField::Canonical(fr) = s.load().unwrap() else {
            panic!("expected canonical")
        };
        assert_eq!(fr.ambient_dim(), 5);
        assert_eq!(fr.frequencies(), &[2.0, 1.0]);
    }

    #[test]
    fn rejects_non_skew_with_named_invariant() {
        let s = FieldSpec::parse(
            r#"{"dimension": 2, "skew": [[1, 0], [0, 0]], "translation": [0, 0]}"#,
        )
        .unwrap();
        let e = s.load().unwrap_err().to_string();
        assert!(e.contains("skew-symmetric"), "{e}");
    }

    #[test]
    fn rejects_mixed_and_malformed() {
        let s = FieldSpec::parse(
            r#"{"dimension": 1, "skew": [[0]], "translation": [0], "frequencies": [1]}"#,
        )
        .unwrap();
        assert!(s.load().is_err());
        assert!(FieldSpec::parse(r#"{"dimension": 2, "skew": "#).is_err());
        assert!(FieldSpec::parse(r#"{"frequencies": [1], "colour": 3}"#).is_err());
        let s = FieldSpec::parse(r#"{"frequencies": [-1]}"#).unwrap();
        assert!(s.load().is_err());
        let s =
            FieldSpec::parse(r#"{"dimension": 2, "skew": [[0, 1], [-1, 0]], "translation": [0]}"#)
                .unwrap();
        assert!(s.load().is_err());
    }

    #[test]
    fn round_trips_through_json() {
        let s = FieldSpec::parse(
            r#"{"dimension": 2, "skew": [[0, -2], [2, 0]], "translation": [0.5, 0]}"#,
        )
        .unwrap();
        let f = s.load().unwrap().field();
        let back =
            FieldSpec::parse(&serde_json::to_string(&FieldSpec::from_field(&f)).unwrap()).unwrap();
        assert_eq!(back.load().unwrap().field(), f);
    }
}
