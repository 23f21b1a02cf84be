//! The fixture registry: curve models, named places, S-unit bases and the
//! expected values every check compares against.

use std::collections::{BTreeMap, BTreeSet};

use f2curves::curves::{parse_place, ArtinSchreierModel, Place};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const EMBEDDED: &str = include_str!("../fixtures/registry.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEntry {
    pub equation: String,
    pub genus: usize,
    pub k: u32,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitSet {
    pub model: String,
    pub citation: String,
    pub units: Vec<(String, String)>,
}

/// `[label, multiplicity]` pairs.
pub type LabelledDivisor = Vec<(String, i64)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayInput {
    pub units: String,
    pub conductor: LabelledDivisor,
    pub split: Vec<String>,
    #[serde(default)]
    pub uniformizer: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "input", rename_all = "snake_case")]
pub enum CheckInput {
    Avector { h: String, dmax: usize },
    ZetaRoundtrip { h: String, nmax: usize },
    Enumerate { genus: usize, points: i64, prefix: usize },
    Feasibility { h: String, base: String, dmax: usize },
    Resultant { f: String, g: String },
    ReducedResultant { f: String, g: String },
    Discriminant { f: String },
    ModelCounts { model: String, dmax: usize },
    FamilySurvey {
        template: String,
        letters: Vec<char>,
        genus: usize,
        k: u32,
        target: Vec<i64>,
    },
    Places { model: String, degree: u32 },
    Action { model: String, map: String, places: Vec<String> },
    Divisor { model: String, function: String },
    Expansion {
        model: String,
        function: String,
        place: String,
        uniformizer: String,
        precision: usize,
    },
    Rayclass(RayInput),
    Congruences(RayInput),
    SplittingTable {
        #[serde(flatten)]
        ray: RayInput,
        selectors: Vec<String>,
        places: Vec<String>,
    },
    CoverCounts {
        #[serde(flatten)]
        ray: RayInput,
        selectors: Vec<String>,
        dmax: u32,
    },
    TailSearch { prefix: Vec<i64>, a6_odd: Option<bool>, a7_odd: Option<bool> },
    ClassNumber { h: String },
    PointCount { a: Vec<i64>, n: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub tags: Vec<String>,
    pub citation: String,
    #[serde(flatten)]
    pub input: CheckInput,
    pub expected: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct External {
    pub id: String,
    pub criterion: u8,
    pub tags: Vec<String>,
    pub citation: String,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub models: BTreeMap<String, ModelEntry>,
    pub places: BTreeMap<String, BTreeMap<String, String>>,
    pub unit_sets: BTreeMap<String, UnitSet>,
    pub checks: Vec<Check>,
    pub external: Vec<External>,
}

impl Registry {
    pub fn embedded() -> Registry {
        Registry::from_json(EMBEDDED).expect("embedded registry is valid")
    }

    /// Parses and validates: every citation is non-empty, ids are unique,
    /// and every model, place label and unit set referenced resolves.
    pub fn from_json(text: &str) -> Result<Registry, String> {
        let reg: Registry = serde_json::from_str(text).map_err(|e| format!("registry: {e}"))?;
        reg.validate()?;
        Ok(reg)
    }

    fn validate(&self) -> Result<(), String> {
        let mut ids = BTreeSet::new();
        for c in &self.checks {
            if !ids.insert(c.id.as_str()) {
                return Err(format!("duplicate check id {}", c.id));
            }
            if c.citation.trim().is_empty() {
                return Err(format!("{}: empty citation", c.id));
            }
        }
        for e in &self.external {
            if !ids.insert(e.id.as_str()) {
                return Err(format!("duplicate check id {}", e.id));
            }
            if e.citation.trim().is_empty() {
                return Err(format!("{}: empty citation", e.id));
            }
        }
        for (name, m) in &self.models {
            self.model(name)?;
            if m.citation.trim().is_empty() {
                return Err(format!("model {name}: empty citation"));
            }
        }
        for (model, labels) in &self.places {
            let m = self.model(model)?;
            for (label, coords) in labels {
                parse_place(&m, coords).map_err(|e| format!("place {model}/{label}: {e}"))?;
            }
        }
        for (name, set) in &self.unit_sets {
            self.model(&set.model)
                .map_err(|e| format!("unit set {name}: {e}"))?;
        }
        for c in &self.checks {
            for (model, label) in self.references(c) {
                if let Some(label) = label {
                    self.place(&model, &label).map_err(|e| format!("{}: {e}", c.id))?;
                } else {
                    self.model(&model).map_err(|e| format!("{}: {e}", c.id))?;
                }
            }
            if let Some(r) = ray_input(&c.input) {
                if !self.unit_sets.contains_key(&r.units) {
                    return Err(format!("{}: unknown unit set {}", c.id, r.units));
                }
            }
        }
        Ok(())
    }

    pub fn model(&self, name: &str) -> Result<ArtinSchreierModel, String> {
        let e = self
            .models
            .get(name)
            .ok_or_else(|| format!("unknown model {name}"))?;
        ArtinSchreierModel::from_equation(&e.equation, e.genus, e.k).map_err(|e| e.to_string())
    }

    pub fn place(&self, model: &str, label: &str) -> Result<Place, String> {
        let coords = self
            .places
            .get(model)
            .and_then(|m| m.get(label))
            .ok_or_else(|| format!("unknown place {label} on {model}"))?;
        parse_place(&self.model(model)?, coords).map_err(|e| e.to_string())
    }

    /// Label of `p` on `model`, or its coordinates when it has none.
    /// Aliases resolve to the alphabetically first label.
    pub fn label_of(&self, model: &str, p: &Place) -> String {
        if let (Some(labels), Ok(m)) = (self.places.get(model), self.model(model)) {
            for (label, coords) in labels {
                if parse_place(&m, coords).ok().as_ref() == Some(p) {
                    return label.clone();
                }
            }
        }
        p.to_string()
    }

    /// Models and `(model, label)` pairs a check touches.
    pub fn references(&self, c: &Check) -> Vec<(String, Option<String>)> {
        let mut out = Vec::new();
        match &c.input {
            CheckInput::ModelCounts { model, .. }
            | CheckInput::Places { model, .. }
            | CheckInput::Divisor { model, .. } => out.push((model.clone(), None)),
            CheckInput::Action { model, places, .. } => {
                out.push((model.clone(), None));
                out.extend(places.iter().map(|l| (model.clone(), Some(l.clone()))));
            }
            CheckInput::Expansion { model, place, .. } => {
                out.push((model.clone(), None));
                out.push((model.clone(), Some(place.clone())));
            }
            _ => {}
        }
        if let Some(r) = ray_input(&c.input) {
            if let Some(set) = self.unit_sets.get(&r.units) {
                let m = &set.model;
                out.push((m.clone(), None));
                for (l, _) in &r.conductor {
                    out.push((m.clone(), Some(l.clone())));
                }
                out.extend(r.split.iter().map(|l| (m.clone(), Some(l.clone()))));
            }
        }
        if let CheckInput::SplittingTable { ray, places, .. } = &c.input {
            if let Some(set) = self.unit_sets.get(&ray.units) {
                out.extend(places.iter().map(|l| (set.model.clone(), Some(l.clone()))));
            }
        }
        // labels named in expected divisors, place lists and cycles
        let model = match &c.input {
            CheckInput::Places { model, .. }
            | CheckInput::Action { model, .. }
            | CheckInput::Divisor { model, .. } => Some(model.clone()),
            _ => None,
        };
        if let Some(model) = model {
            collect_labels(&c.expected, &mut |s| out.push((model.clone(), Some(s.to_string()))));
        }
        out
    }

    /// Registry entries no check exercises.
    pub fn coverage_gaps(&self) -> Vec<String> {
        let mut used_models = BTreeSet::new();
        let mut used_places = BTreeSet::new();
        let mut used_sets = BTreeSet::new();
        for c in &self.checks {
            for (m, l) in self.references(c) {
                match l {
                    Some(l) => {
                        used_places.insert((m.clone(), l));
                    }
                    None => {
                        used_models.insert(m);
                    }
                }
            }
            if let Some(r) = ray_input(&c.input) {
                used_sets.insert(r.units.clone());
            }
        }
        let mut gaps = Vec::new();
        for m in self.models.keys() {
            if !used_models.contains(m) {
                gaps.push(format!("model {m}"));
            }
        }
        for (m, labels) in &self.places {
            for l in labels.keys() {
                if !used_places.contains(&(m.clone(), l.clone())) {
                    gaps.push(format!("place {m}/{l}"));
                }
            }
        }
        for s in self.unit_sets.keys() {
            if !used_sets.contains(s) {
                gaps.push(format!("unit set {s}"));
            }
        }
        gaps
    }
}

pub fn ray_input(c: &CheckInput) -> Option<&RayInput> {
    match c {
        CheckInput::Rayclass(r) | CheckInput::Congruences(r) => Some(r),
        CheckInput::SplittingTable { ray, .. } | CheckInput::CoverCounts { ray, .. } => Some(ray),
        _ => None,
    }
}

/// Strings in `v` that are place labels: array entries of place lists and
/// the first entry of `[label, mult]` pairs.
fn collect_labels(v: &Value, f: &mut dyn FnMut(&str)) {
    if let Value::Array(items) = v {
        for it in items {
            match it {
                Value::String(s) => f(s),
                Value::Array(pair) => {
                    if let Some(Value::String(s)) = pair.first() {
                        f(s);
                    }
                }
                _ => {}
            }
        }
    }
}
