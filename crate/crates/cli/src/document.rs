//! The JSON input document describing a cochain, with optional parameter
//! declarations and per-weight basis choices.

use std::collections::BTreeMap;

use linfty::algebra::{ParamSpace, Scalar};
use linfty::cochain::{Cochain, ElementaryMap};
use linfty::cohomology::BasisOverride;
use linfty::superspace::{parse_word, GradedSpace};
use linfty::text::{infer_params, parse_cochain, parse_polynomial};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FIELD: &str = "Q(i)";

fn default_field() -> String {
    FIELD.to_string()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Term {
    /// Source word such as `f1f3`.
    pub word: String,
    /// One-based index of the target basis vector.
    pub target: usize,
    /// Coefficient in the polynomial syntax, e.g. `-1/2`, `t1*theta2`, `lambda`.
    pub coefficient: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ParameterDecl {
    pub even: usize,
    pub odd: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CodifferentialDocument {
    pub space: String,
    #[serde(default = "default_field")]
    pub field: String,
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<ParameterDecl>,
    /// Cohomology representatives per weight, in cochain syntax.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub basis_override: BTreeMap<usize, Vec<String>>,
    /// Complements of the cocycles per weight; they fix the preimages used
    /// by `deform`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complement_override: BTreeMap<usize, Vec<String>>,
}

/// Contents of a `--basis-override` file.
#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OverrideFile {
    #[serde(default)]
    pub basis_override: BTreeMap<usize, Vec<String>>,
    #[serde(default)]
    pub complement_override: BTreeMap<usize, Vec<String>>,
}

impl CodifferentialDocument {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::json(origin, &e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialise")
    }

    /// Document listing the terms of `c` in canonical order.
    pub fn from_cochain(c: &Cochain) -> Self {
        let params = c.params();
        let terms = c
            .terms()
            .map(|(m, p)| Term {
                word: m.source().to_string(),
                target: m.target() + 1,
                coefficient: p.to_string(),
            })
            .collect();
        CodifferentialDocument {
            space: c.space().to_string(),
            field: default_field(),
            terms,
            parameters: (!params.is_empty()).then_some(ParameterDecl {
                even: params.even,
                odd: params.odd,
            }),
            basis_override: BTreeMap::new(),
            complement_override: BTreeMap::new(),
        }
    }

    pub fn graded_space(&self) -> Result<GradedSpace, CliError> {
        self.space.parse().map_err(|e| CliError::input("space", e))
    }

    fn param_space(&self) -> Result<ParamSpace, CliError> {
        match self.parameters {
            Some(p) => ParamSpace::new(p.even, p.odd).map_err(|e| CliError::input("parameters", e)),
            None => {
                infer_params(self.terms.iter().map(|t| t.coefficient.as_str())).map_err(|e| CliError::input("terms", e))
            }
        }
    }

    /// The cochain, with `lambda` substituted where it occurs.
    pub fn cochain(&self, lambda: Option<&Scalar>) -> Result<Cochain, CliError> {
        if self.field != FIELD && self.field != "Q" {
            return Err(CliError::Usage(format!(
                "unsupported field '{}', expected {FIELD}",
                self.field
            )));
        }
        let space = self.graded_space()?;
        let params = self.param_space()?;
        let mut c = Cochain::zero(space, params);
        for (k, t) in self.terms.iter().enumerate() {
            let at = |what: &str| format!("terms[{k}].{what}");
            let word = parse_word(&space, &t.word).map_err(|e| CliError::input(&at("word"), e))?;
            if t.target == 0 {
                return Err(CliError::Usage(format!(
                    "{}: targets are numbered from 1",
                    at("target")
                )));
            }
            let map = ElementaryMap::new(word, t.target - 1).map_err(|e| CliError::input(&at("target"), e))?;
            let coefficient =
                parse_polynomial(&t.coefficient, params, lambda).map_err(|e| CliError::input(&at("coefficient"), e))?;
            c.add_term(map, &coefficient);
        }
        Ok(c)
    }

    pub fn overrides(&self, lambda: Option<&Scalar>) -> Result<(BasisOverride, BasisOverride), CliError> {
        let space = self.graded_space()?;
        Ok((
            parse_override(&self.basis_override, space, lambda, "basis_override")?,
            parse_override(&self.complement_override, space, lambda, "complement_override")?,
        ))
    }
}

pub fn parse_override(
    raw: &BTreeMap<usize, Vec<String>>,
    space: GradedSpace,
    lambda: Option<&Scalar>,
    context: &str,
) -> Result<BasisOverride, CliError> {
    raw.iter()
        .map(|(&n, list)| {
            let cochains = list
                .iter()
                .enumerate()
                .map(|(k, text)| {
                    parse_cochain(text, space, ParamSpace::default(), lambda)
                        .map_err(|e| CliError::input(&format!("{context}.{n}[{k}]"), e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((n, cochains))
        })
        .collect()
}
