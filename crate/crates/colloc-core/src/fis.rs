//! Mamdani fuzzy inference with Pi-shaped membership functions.
//!
//! Operator choices are the classical defaults: AND = min, implication = min
//! (clipping), aggregation = max, defuzzification = centroid over a uniform
//! grid. `default_ce_fis` builds the concrete two-input system used to grade
//! collocation relevance.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum FisError {
    /// Knots must be finite and ordered a <= b <= c <= d.
    InvalidParams { a: f64, b: f64, c: f64, d: f64 },
    /// universe_min must be strictly below universe_max, both finite.
    EmptyUniverse { variable: String },
    /// Every variable needs at least one set.
    NoSets { variable: String },
    DuplicateSet { variable: String, set: String },
    DuplicateVariable { variable: String },
    /// Centroid grids below 101 points are too coarse to trust.
    GridTooCoarse { points: usize },
    /// rule is None when the reference comes from evaluating a bare Rule
    /// rather than validating a config.
    UnknownVariable { rule: Option<usize>, variable: String },
    UnknownSet { rule: Option<usize>, variable: String, set: String },
    EmptyAntecedents { rule: usize },
    /// Rule consequents must name the output variable.
    ConsequentNotOutput { rule: usize, variable: String },
    /// An antecedent variable was given no input value.
    MissingInput { variable: String },
    /// Positional inference binds one value per input variable.
    InputCountMismatch { expected: usize, found: usize },
}

impl fmt::Display for FisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FisError::InvalidParams { a, b, c, d } => write!(
                f,
                "membership parameters must be finite with a <= b <= c <= d, got ({a}, {b}, {c}, {d})"
            ),
            FisError::EmptyUniverse { variable } => {
                write!(f, "variable {variable:?}: universe min must be below max")
            }
            FisError::NoSets { variable } => write!(f, "variable {variable:?} has no sets"),
            FisError::DuplicateSet { variable, set } => {
                write!(f, "variable {variable:?} defines set {set:?} twice")
            }
            FisError::DuplicateVariable { variable } => {
                write!(f, "variable name {variable:?} used twice")
            }
            FisError::GridTooCoarse { points } => {
                write!(f, "defuzz_grid_points must be at least 101, got {points}")
            }
            FisError::UnknownVariable { rule: Some(i), variable } => {
                write!(f, "rule {i} references unknown variable {variable:?}")
            }
            FisError::UnknownVariable { rule: None, variable } => {
                write!(f, "unknown variable {variable:?}")
            }
            FisError::UnknownSet { rule: Some(i), variable, set } => {
                write!(f, "rule {i} references unknown set {set:?} of variable {variable:?}")
            }
            FisError::UnknownSet { rule: None, variable, set } => {
                write!(f, "unknown set {set:?} of variable {variable:?}")
            }
            FisError::EmptyAntecedents { rule } => write!(f, "rule {rule} has no antecedents"),
            FisError::ConsequentNotOutput { rule, variable } => write!(
                f,
                "rule {rule} consequent names {variable:?}, not the output variable"
            ),
            FisError::MissingInput { variable } => {
                write!(f, "no input value supplied for variable {variable:?}")
            }
            FisError::InputCountMismatch { expected, found } => {
                write!(f, "expected {expected} input values, got {found}")
            }
        }
    }
}

impl core::error::Error for FisError {}

/// Knot vector of one Pi-shaped membership function: feet a and d,
/// shoulders b and c. Constructed only through `new`, so a <= b <= c <= d
/// always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl PiParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FisError> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite();
        if !finite || !(a <= b && b <= c && c <= d) {
            return Err(FisError::InvalidParams { a, b, c, d });
        }
        Ok(PiParams { a, b, c, d })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Degree of membership of x: 0 up to foot a, an S-spline rising to the
    /// plateau [b, c] at 1, a mirrored Z-spline falling to foot d, 0 beyond.
    /// Defined for every finite x; no clamping to any universe.
    ///
    /// The plateau branch is checked first so degenerate flanks (a == b or
    /// c == d, a step edge) never divide by zero.
    pub fn membership(&self, x: f64) -> f64 {
        let PiParams { a, b, c, d } = *self;
        if x >= b && x <= c {
            1.0
        } else if x <= a || x >= d {
            0.0
        } else if x < b {
            let w = b - a;
            if x <= (a + b) / 2.0 {
                let r = (x - a) / w;
                2.0 * r * r
            } else {
                let r = (x - b) / w;
                1.0 - 2.0 * r * r
            }
        } else {
            let w = d - c;
            if x <= (c + d) / 2.0 {
                let r = (x - c) / w;
                1.0 - 2.0 * r * r
            } else {
                let r = (x - d) / w;
                2.0 * r * r
            }
        }
    }
}

/// Evaluates a Pi membership function at x.
pub fn pi_membership(x: f64, params: &PiParams) -> f64 {
    params.membership(x)
}

/// A named fuzzy set over its variable's universe.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    pub name: String,
    pub params: PiParams,
}

/// A named quantity partitioned into fuzzy sets. The universe bounds
/// document the meaningful range and bound the output grid; input
/// memberships are evaluated without clamping to it.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    pub name: String,
    pub universe_min: f64,
    pub universe_max: f64,
    pub sets: Vec<FuzzySet>,
}

impl LinguisticVariable {
    fn set(&self, name: &str) -> Option<&FuzzySet> {
        self.sets.iter().find(|s| s.name == name)
    }
}

/// One "variable is set" term of a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleTerm {
    pub variable: String,
    pub set: String,
}

impl RuleTerm {
    pub fn new(variable: impl Into<String>, set: impl Into<String>) -> Self {
        RuleTerm {
            variable: variable.into(),
            set: set.into(),
        }
    }
}

/// AND-joined antecedents implying one output set, weight fixed at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedents: Vec<RuleTerm>,
    pub consequent: RuleTerm,
}

/// A complete inference system: input variables, one output variable,
/// the rule base, and the defuzzification grid resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct FisConfig {
    pub inputs: Vec<LinguisticVariable>,
    pub output: LinguisticVariable,
    pub rules: Vec<Rule>,
    pub defuzz_grid_points: usize,
}

/// Defuzzified output. `any_rule_fired` is false when every strength was
/// zero (or the aggregate carried no mass on the universe grid), in which
/// case `value` is the universe midpoint by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefuzzResult {
    pub value: f64,
    pub any_rule_fired: bool,
}

impl FisConfig {
    fn input(&self, name: &str) -> Option<&LinguisticVariable> {
        self.inputs.iter().find(|v| v.name == name)
    }

    /// Checks every structural invariant: universes ordered, sets present
    /// and uniquely named, variable names unique, grid fine enough, and all
    /// rule references resolving (errors cite the rule index).
    pub fn validate(&self) -> Result<(), FisError> {
        if self.defuzz_grid_points < 101 {
            return Err(FisError::GridTooCoarse {
                points: self.defuzz_grid_points,
            });
        }
        let mut names: Vec<&str> = Vec::new();
        for var in self.inputs.iter().chain([&self.output]) {
            if names.contains(&var.name.as_str()) {
                return Err(FisError::DuplicateVariable {
                    variable: var.name.clone(),
                });
            }
            names.push(&var.name);
            if var.universe_min >= var.universe_max
                || !var.universe_min.is_finite()
                || !var.universe_max.is_finite()
            {
                return Err(FisError::EmptyUniverse {
                    variable: var.name.clone(),
                });
            }
            if var.sets.is_empty() {
                return Err(FisError::NoSets {
                    variable: var.name.clone(),
                });
            }
            let mut set_names: Vec<&str> = Vec::new();
            for set in &var.sets {
                if set_names.contains(&set.name.as_str()) {
                    return Err(FisError::DuplicateSet {
                        variable: var.name.clone(),
                        set: set.name.clone(),
                    });
                }
                set_names.push(&set.name);
            }
        }
        for (i, rule) in self.rules.iter().enumerate() {
            if rule.antecedents.is_empty() {
                return Err(FisError::EmptyAntecedents { rule: i });
            }
            for term in &rule.antecedents {
                let var = self.input(&term.variable).ok_or(FisError::UnknownVariable {
                    rule: Some(i),
                    variable: term.variable.clone(),
                })?;
                if var.set(&term.set).is_none() {
                    return Err(FisError::UnknownSet {
                        rule: Some(i),
                        variable: term.variable.clone(),
                        set: term.set.clone(),
                    });
                }
            }
            if rule.consequent.variable != self.output.name {
                return Err(FisError::ConsequentNotOutput {
                    rule: i,
                    variable: rule.consequent.variable.clone(),
                });
            }
            if self.output.set(&rule.consequent.set).is_none() {
                return Err(FisError::UnknownSet {
                    rule: Some(i),
                    variable: rule.consequent.variable.clone(),
                    set: rule.consequent.set.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Firing strength of one rule: min over antecedents of the membership of
/// that variable's input value. Inputs are (variable-name, value) pairs.
pub fn fire_rule(rule: &Rule, inputs: &[(&str, f64)], config: &FisConfig) -> Result<f64, FisError> {
    let mut strength = 1.0f64;
    for term in &rule.antecedents {
        let (_, value) = inputs
            .iter()
            .find(|(name, _)| *name == term.variable)
            .ok_or(FisError::MissingInput {
                variable: term.variable.clone(),
            })?;
        let var = config.input(&term.variable).ok_or(FisError::UnknownVariable {
            rule: None,
            variable: term.variable.clone(),
        })?;
        let set = var.set(&term.set).ok_or(FisError::UnknownSet {
            rule: None,
            variable: term.variable.clone(),
            set: term.set.clone(),
        })?;
        strength = strength.min(set.params.membership(*value));
    }
    Ok(strength)
}

/// Clips each rule's consequent set at its strength, aggregates by max, and
/// takes the centroid sum(x * mu) / sum(mu) over defuzz_grid_points uniform
/// samples of the output universe.
///
/// strengths[i] belongs to rules[i]; rules beyond the slice's length count
/// as not fired. Requires a validated config (consequent lookups panic
/// otherwise). Total over valid inputs: when nothing fires, the result is
/// the universe midpoint with `any_rule_fired` false.
pub fn aggregate_and_defuzzify(strengths: &[f64], config: &FisConfig) -> DefuzzResult {
    let out = &config.output;
    let midpoint = (out.universe_min + out.universe_max) / 2.0;
    let clipped: Vec<(f64, &PiParams)> = config
        .rules
        .iter()
        .zip(strengths)
        .filter(|(_, &s)| s > 0.0)
        .map(|(rule, &s)| {
            let set = out
                .set(&rule.consequent.set)
                .expect("validated config: consequent set exists");
            (s, &set.params)
        })
        .collect();
    if clipped.is_empty() {
        return DefuzzResult {
            value: midpoint,
            any_rule_fired: false,
        };
    }

    let points = config.defuzz_grid_points;
    let step = (out.universe_max - out.universe_min) / (points - 1) as f64;
    let mut weighted = 0.0f64;
    let mut mass = 0.0f64;
    for k in 0..points {
        let x = out.universe_min + k as f64 * step;
        let mut mu = 0.0f64;
        for (s, params) in &clipped {
            mu = mu.max(s.min(params.membership(x)));
        }
        weighted += x * mu;
        mass += mu;
    }
    if mass == 0.0 {
        // Positive strengths whose consequents carry no mass on the
        // universe; degenerate like the nothing-fired case.
        return DefuzzResult {
            value: midpoint,
            any_rule_fired: false,
        };
    }
    DefuzzResult {
        value: weighted / mass,
        any_rule_fired: true,
    }
}

/// Fires every rule on named input values and defuzzifies the aggregate.
pub fn infer(inputs: &[(&str, f64)], config: &FisConfig) -> Result<DefuzzResult, FisError> {
    let mut strengths = Vec::with_capacity(config.rules.len());
    for rule in &config.rules {
        strengths.push(fire_rule(rule, inputs, config)?);
    }
    Ok(aggregate_and_defuzzify(&strengths, config))
}

/// Grades one (mi, t) pair with a two-input system, binding mi to the first
/// input variable and t to the second.
pub fn infer_grade(mi: f64, t: f64, config: &FisConfig) -> Result<f64, FisError> {
    if config.inputs.len() != 2 {
        return Err(FisError::InputCountMismatch {
            expected: 2,
            found: config.inputs.len(),
        });
    }
    let bound = [
        (config.inputs[0].name.as_str(), mi),
        (config.inputs[1].name.as_str(), t),
    ];
    infer(&bound, config).map(|r| r.value)
}

fn pi(a: f64, b: f64, c: f64, d: f64) -> PiParams {
    PiParams::new(a, b, c, d).expect("ordered knots")
}

fn set(name: &str, params: PiParams) -> FuzzySet {
    FuzzySet {
        name: String::from(name),
        params,
    }
}

/// The collocation-relevance system: inputs MI {low, average, high} and
/// t {non-significant, significant}, output relevance {low, average, high}
/// on [0, 1], four rules, 1001-point centroid grid.
///
/// The "average" MI set is defined but referenced by no rule; it is kept so
/// the shipped configuration states the full membership family. Input
/// universes span the outermost feet.
pub fn default_ce_fis() -> FisConfig {
    let mi = LinguisticVariable {
        name: String::from("MI"),
        universe_min: -5.4,
        universe_max: 17.9,
        sets: alloc::vec![
            set("low", pi(-5.4, -0.6, 3.0, 5.889)),
            set("average", pi(3.002, 5.922, 6.175, 9.092)),
            set("high", pi(6.143, 8.94, 13.1, 17.9)),
        ],
    };
    let t = LinguisticVariable {
        name: String::from("t"),
        universe_min: -10.9,
        universe_max: 23.6,
        sets: alloc::vec![
            set("non-significant", pi(-10.9, -1.26, -0.0159, 2.778)),
            set("significant", pi(-0.0476, 2.68, 14.0, 23.6)),
        ],
    };
    let relevance = LinguisticVariable {
        name: String::from("relevance"),
        universe_min: 0.0,
        universe_max: 1.0,
        sets: alloc::vec![
            set("low", pi(-0.45, -0.05, 0.184, 0.5013)),
            set("average", pi(0.192, 0.491, 0.515, 0.7976)),
            set("high", pi(0.504, 0.803, 1.05, 1.45)),
        ],
    };
    let rule = |mi_set: &str, t_set: &str, rel_set: &str| Rule {
        antecedents: alloc::vec![RuleTerm::new("MI", mi_set), RuleTerm::new("t", t_set)],
        consequent: RuleTerm::new("relevance", rel_set),
    };
    FisConfig {
        inputs: alloc::vec![mi, t],
        output: relevance,
        rules: alloc::vec![
            rule("low", "non-significant", "low"),
            rule("high", "significant", "high"),
            rule("low", "significant", "average"),
            rule("high", "non-significant", "average"),
        ],
        defuzz_grid_points: 1001,
    }
}
