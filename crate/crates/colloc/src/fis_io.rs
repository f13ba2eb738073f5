//! JSON serialization of fuzzy inference configurations.
//!
//! Schema: top-level keys `inputs`, `output`, `rules`, `defuzz_grid_points`;
//! a variable is {name, universe: [min, max], sets: [{name, pimf: [a,b,c,d]}]};
//! a rule is {"if": [{var, is}, ...], "then": {var, is}}. Loading validates
//! the whole config, so a file that parses but references a missing set (or
//! disorders its pimf knots) is rejected with the offending rule or knots.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use colloc_core::{FisConfig, FisError, FuzzySet, LinguisticVariable, PiParams, Rule, RuleTerm};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FisIoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] FisError),
}

#[derive(Serialize, Deserialize)]
struct SetDto {
    name: String,
    pimf: [f64; 4],
}

#[derive(Serialize, Deserialize)]
struct VariableDto {
    name: String,
    universe: [f64; 2],
    sets: Vec<SetDto>,
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    var: String,
    is: String,
}

#[derive(Serialize, Deserialize)]
struct RuleDto {
    #[serde(rename = "if")]
    when: Vec<TermDto>,
    then: TermDto,
}

#[derive(Serialize, Deserialize)]
struct FisDto {
    inputs: Vec<VariableDto>,
    output: VariableDto,
    rules: Vec<RuleDto>,
    defuzz_grid_points: usize,
}

fn variable_to_dto(var: &LinguisticVariable) -> VariableDto {
    VariableDto {
        name: var.name.clone(),
        universe: [var.universe_min, var.universe_max],
        sets: var
            .sets
            .iter()
            .map(|s| SetDto {
                name: s.name.clone(),
                pimf: [s.params.a(), s.params.b(), s.params.c(), s.params.d()],
            })
            .collect(),
    }
}

fn variable_from_dto(dto: VariableDto) -> Result<LinguisticVariable, FisError> {
    let sets = dto
        .sets
        .into_iter()
        .map(|s| {
            let [a, b, c, d] = s.pimf;
            Ok(FuzzySet {
                name: s.name,
                params: PiParams::new(a, b, c, d)?,
            })
        })
        .collect::<Result<Vec<_>, FisError>>()?;
    Ok(LinguisticVariable {
        name: dto.name,
        universe_min: dto.universe[0],
        universe_max: dto.universe[1],
        sets,
    })
}

fn config_to_dto(config: &FisConfig) -> FisDto {
    FisDto {
        inputs: config.inputs.iter().map(variable_to_dto).collect(),
        output: variable_to_dto(&config.output),
        rules: config
            .rules
            .iter()
            .map(|r| RuleDto {
                when: r
                    .antecedents
                    .iter()
                    .map(|t| TermDto {
                        var: t.variable.clone(),
                        is: t.set.clone(),
                    })
                    .collect(),
                then: TermDto {
                    var: r.consequent.variable.clone(),
                    is: r.consequent.set.clone(),
                },
            })
            .collect(),
        defuzz_grid_points: config.defuzz_grid_points,
    }
}

fn config_from_dto(dto: FisDto) -> Result<FisConfig, FisError> {
    let config = FisConfig {
        inputs: dto
            .inputs
            .into_iter()
            .map(variable_from_dto)
            .collect::<Result<Vec<_>, _>>()?,
        output: variable_from_dto(dto.output)?,
        rules: dto
            .rules
            .into_iter()
            .map(|r| Rule {
                antecedents: r
                    .when
                    .into_iter()
                    .map(|t| RuleTerm::new(t.var, t.is))
                    .collect(),
                consequent: RuleTerm::new(r.then.var, r.then.is),
            })
            .collect(),
        defuzz_grid_points: dto.defuzz_grid_points,
    };
    config.validate()?;
    Ok(config)
}

/// The canonical JSON text of a config (pretty-printed, trailing newline).
pub fn fis_json_string(config: &FisConfig) -> String {
    let mut text = serde_json::to_string_pretty(&config_to_dto(config))
        .expect("plain data serializes");
    text.push('\n');
    text
}

/// Parses and validates a config from JSON text.
pub fn fis_from_json(text: &str) -> Result<FisConfig, FisIoError> {
    let dto: FisDto = serde_json::from_str(text)?;
    Ok(config_from_dto(dto)?)
}

pub fn save_fis_config(config: &FisConfig, path: impl AsRef<Path>) -> Result<(), FisIoError> {
    let path = path.as_ref();
    fs::write(path, fis_json_string(config)).map_err(|source| FisIoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_fis_config(path: impl AsRef<Path>) -> Result<FisConfig, FisIoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FisIoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    fis_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use colloc_core::default_ce_fis;

    #[test]
    fn default_config_roundtrips_exactly() {
        let config = default_ce_fis();
        let text = fis_json_string(&config);
        let reloaded = fis_from_json(&text).unwrap();
        assert_eq!(reloaded, config);
        // And the retrip is textually stable.
        assert_eq!(fis_json_string(&reloaded), text);
    }

    #[test]
    fn json_carries_the_expected_schema() {
        let text = fis_json_string(&default_ce_fis());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(value.get("inputs").unwrap().is_array());
        assert!(value.get("output").unwrap().is_object());
        assert_eq!(value.get("defuzz_grid_points").unwrap(), 1001);
        let rule = &value.get("rules").unwrap()[0];
        assert!(rule.get("if").unwrap().is_array());
        assert_eq!(rule.get("then").unwrap().get("var").unwrap(), "relevance");
    }

    #[test]
    fn unknown_set_in_rule_cites_rule_index() {
        let mut config = default_ce_fis();
        config.rules[3].consequent.set = String::from("extreme");
        let text = fis_json_string(&config);
        let err = fis_from_json(&text).unwrap_err();
        assert!(
            matches!(
                err,
                FisIoError::Invalid(FisError::UnknownSet { rule: Some(3), .. })
            ),
            "{err}"
        );
    }

    #[test]
    fn disordered_knots_are_a_parameter_error() {
        // Flipping the sign of the low-MI foot breaks a <= b.
        let text = fis_json_string(&default_ce_fis());
        let swapped = text.replace("-5.4", "5.4");
        assert_ne!(swapped, text);
        let err = fis_from_json(&swapped).unwrap_err();
        assert!(matches!(err, FisIoError::Invalid(FisError::InvalidParams { .. })), "{err}");
    }

    #[test]
    fn json_syntax_errors_surface() {
        let err = fis_from_json("{ not json").unwrap_err();
        assert!(matches!(err, FisIoError::Json(_)));
    }

    #[test]
    fn minimal_single_rule_config_loads_and_infers() {
        let text = r#"{
            "inputs": [
                {"name": "x", "universe": [0.0, 1.0],
                 "sets": [{"name": "any", "pimf": [-1.0, 0.0, 1.0, 2.0]}]},
                {"name": "y", "universe": [0.0, 1.0],
                 "sets": [{"name": "any", "pimf": [-1.0, 0.0, 1.0, 2.0]}]}
            ],
            "output": {"name": "out", "universe": [0.0, 1.0],
                       "sets": [{"name": "mid", "pimf": [0.1, 0.3, 0.7, 0.9]}]},
            "rules": [{"if": [{"var": "x", "is": "any"}], "then": {"var": "out", "is": "mid"}}],
            "defuzz_grid_points": 1001
        }"#;
        let config = fis_from_json(text).unwrap();
        // The single always-firing rule clips a symmetric set: centroid 0.5.
        let grade = colloc_core::infer_grade(0.5, 0.5, &config).unwrap();
        assert!((grade - 0.5).abs() < 1e-9, "{grade}");
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fis.json");
        let config = default_ce_fis();
        save_fis_config(&config, &path).unwrap();
        assert_eq!(load_fis_config(&path).unwrap(), config);
    }

    #[test]
    fn missing_file_reports_path() {
        let err = load_fis_config("/nonexistent/fis.json").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/fis.json"));
    }
}
