//! JSON formats for models, reading maps and event models.
//!
//! ```json
//! {"mode":"S5","states":["w1","w2"],
//!  "atoms":{"a":[["w1","w1"],["w2","w2"]], "b":{"blocks":[["w1","w2"]]}},
//!  "valuation":{"p":["w1"]}}
//!
//! {"name":"beta1","map":{"a":"a*(b+c)","b":"b*a"}}
//!
//! {"name":"E1","events":["e","f"],"reading":{"e":{"a":"a"},"f":{"a":"a*c"}},
//!  "atoms":{"a":[["e","e"],["f","f"]],"b":{"blocks":[["e","f"]]}}}
//! ```
//!
//! Pair lists are taken literally; no closure is applied. Loading validates
//! and rejects relations that do not fit the declared mode.

use std::collections::BTreeMap;
use std::path::Path;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::EventModel;
use crate::kripke::{Mode, Model, Relation};
use crate::semipublic::ReadingMap;
use crate::syntax::{parse_term, Definitions};
use crate::term::AtomicTerm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationSpec {
    Pairs(Vec<(String, String)>),
    Blocks { blocks: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub mode: Mode,
    pub states: Vec<String>,
    pub atoms: BTreeMap<String, RelationSpec>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadingMapFile {
    pub name: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventModelFile {
    pub name: String,
    pub events: Vec<String>,
    #[serde(default)]
    pub reading: BTreeMap<String, BTreeMap<String, String>>,
    pub atoms: BTreeMap<String, RelationSpec>,
}

fn index_of(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::UnknownState(name.to_string()))
}

fn build_relation(names: &[String], spec: &RelationSpec) -> Result<Relation> {
    let n = names.len();
    match spec {
        RelationSpec::Pairs(pairs) => {
            let mut r = Relation::empty(n);
            for (from, to) in pairs {
                r.insert(index_of(names, from)?, index_of(names, to)?);
            }
            Ok(r)
        }
        RelationSpec::Blocks { blocks } => {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut indexed = Vec::new();
            for block in blocks {
                let mut idx = Vec::new();
                for name in block {
                    let i = index_of(names, name)?;
                    if seen.put(i) {
                        return Err(Error::Malformed(format!("`{name}` appears in two blocks")));
                    }
                    idx.push(i);
                }
                indexed.push(idx);
            }
            if seen.count_ones(..) != n {
                return Err(Error::Malformed("blocks do not cover every point".into()));
            }
            Ok(Relation::from_blocks(n, &indexed))
        }
    }
}

fn relation_spec(names: &[String], r: &Relation) -> RelationSpec {
    match r.blocks() {
        Some(blocks) => RelationSpec::Blocks {
            blocks: blocks
                .into_iter()
                .map(|b| b.into_iter().map(|i| names[i].clone()).collect())
                .collect(),
        },
        None => RelationSpec::Pairs(
            r.pairs()
                .map(|(i, j)| (names[i].clone(), names[j].clone()))
                .collect(),
        ),
    }
}

impl ModelFile {
    /// Builds the model without checking the closure properties.
    pub fn build_unchecked(&self) -> Result<Model> {
        let relations = self
            .atoms
            .iter()
            .map(|(x, spec)| Ok((AtomicTerm::new(x.clone()), build_relation(&self.states, spec)?)))
            .collect::<Result<_>>()?;
        let valuation = self
            .valuation
            .iter()
            .map(|(p, members)| {
                let mut set = FixedBitSet::with_capacity(self.states.len());
                for w in members {
                    set.insert(index_of(&self.states, w)?);
                }
                Ok((p.clone(), set))
            })
            .collect::<Result<_>>()?;
        Model::new(self.mode, self.states.clone(), relations, valuation)
    }

    pub fn build(&self) -> Result<Model> {
        let m = self.build_unchecked()?;
        m.validate().into_result()?;
        Ok(m)
    }

    /// Equivalence relations are written as blocks, anything else as pairs.
    pub fn from_model(m: &Model) -> Self {
        let names = m.states();
        ModelFile {
            mode: m.mode(),
            states: names.to_vec(),
            atoms: m
                .frame()
                .atomic_relations()
                .iter()
                .map(|(x, r)| (x.to_string(), relation_spec(names, r)))
                .collect(),
            valuation: m
                .valuation()
                .iter()
                .map(|(p, set)| (p.clone(), m.state_names(set)))
                .collect(),
        }
    }
}

impl ReadingMapFile {
    pub fn build(&self) -> Result<ReadingMap> {
        let mut map = ReadingMap::new(self.name.clone());
        for (x, target) in &self.map {
            map.set(AtomicTerm::new(x.clone()), parse_term(target)?);
        }
        Ok(map)
    }
}

impl EventModelFile {
    pub fn build(&self) -> Result<EventModel> {
        let mut readings = Vec::new();
        for e in &self.events {
            let mut map = ReadingMap::new(e.clone());
            if let Some(assign) = self.reading.get(e) {
                for (x, target) in assign {
                    map.set(AtomicTerm::new(x.clone()), parse_term(target)?);
                }
            }
            readings.push(map);
        }
        if let Some(e) = self.reading.keys().find(|e| !self.events.contains(e)) {
            return Err(Error::UnknownEvent {
                model: self.name.clone(),
                event: e.clone(),
            });
        }
        let relations = self
            .atoms
            .iter()
            .map(|(x, spec)| {
                let r = build_relation(&self.events, spec).map_err(|e| match e {
                    Error::UnknownState(name) => Error::UnknownEvent {
                        model: self.name.clone(),
                        event: name,
                    },
                    other => other,
                })?;
                Ok((AtomicTerm::new(x.clone()), r))
            })
            .collect::<Result<_>>()?;
        let em = EventModel::new(self.name.clone(), self.events.clone(), readings, relations)?;
        em.validate().into_result()?;
        Ok(em)
    }
}

pub fn model_from_json(text: &str) -> Result<Model> {
    serde_json::from_str::<ModelFile>(text)?.build()
}

pub fn model_to_json(m: &Model) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("model serializes")
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    model_from_json(&std::fs::read_to_string(path)?)
}

pub fn reading_map_from_json(text: &str) -> Result<ReadingMap> {
    serde_json::from_str::<ReadingMapFile>(text)?.build()
}

pub fn event_model_from_json(text: &str) -> Result<EventModel> {
    serde_json::from_str::<EventModelFile>(text)?.build()
}

/// Adds the reading map or event model in `text` to `env`, telling the two
/// apart by their keys.
pub fn add_definition(env: &mut Definitions, text: &str) -> Result<()> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("map").is_some() {
        env.add_reading_map(serde_json::from_value::<ReadingMapFile>(value)?.build()?);
    } else if value.get("events").is_some() {
        env.add_event_model(serde_json::from_value::<EventModelFile>(value)?.build()?);
    } else {
        return Err(Error::Malformed(
            "definition file is neither a reading map nor an event model".into(),
        ));
    }
    Ok(())
}

pub fn load_definitions<P: AsRef<Path>>(paths: &[P]) -> Result<Definitions> {
    let mut env = Definitions::new();
    for path in paths {
        add_definition(&mut env, &std::fs::read_to_string(path)?)?;
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    const MODEL: &str = r#"{
        "mode": "S5",
        "states": ["w1", "w2", "w3"],
        "atoms": {
            "a": {"blocks": [["w1", "w2"], ["w3"]]},
            "b": [["w1","w1"],["w2","w2"],["w3","w3"],["w2","w3"],["w3","w2"]]
        },
        "valuation": {"p": ["w1", "w2"]}
    }"#;

    #[test]
    fn pairs_and_blocks_agree() {
        let m = model_from_json(MODEL).unwrap();
        assert_eq!(
            m.relation_of(&"b".parse::<Term>().unwrap()).unwrap(),
            Relation::from_blocks(3, &[vec![0], vec![1, 2]])
        );
        let again = model_from_json(&model_to_json(&m)).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn non_closed_pairs_are_rejected() {
        let text = r#"{"mode":"S5","states":["w1","w2"],"atoms":{"a":[["w1","w2"]]}}"#;
        match model_from_json(text) {
            Err(Error::InvalidModel(report)) => assert!(!report.is_valid()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_states_and_bad_blocks() {
        let text = r#"{"mode":"S4","states":["w1"],"atoms":{"a":[["w1","w9"]]}}"#;
        assert!(matches!(model_from_json(text), Err(Error::UnknownState(_))));
        let text = r#"{"mode":"S5","states":["w1","w2"],"atoms":{"a":{"blocks":[["w1"]]}}}"#;
        assert!(matches!(model_from_json(text), Err(Error::Malformed(_))));
    }

    #[test]
    fn definitions_are_told_apart() {
        let mut env = Definitions::new();
        add_definition(&mut env, r#"{"name":"beta1","map":{"a":"a*(b+c)"}}"#).unwrap();
        add_definition(
            &mut env,
            r#"{"name":"E1","events":["e","f"],"reading":{"e":{"a":"a"},"f":{"a":"a*c"}},
                "atoms":{"a":[["e","e"],["f","f"]],"b":[["e","e"],["f","f"],["e","f"],["f","e"]],
                         "c":{"blocks":[["e"],["f"]]}}}"#,
        )
        .unwrap();
        assert_eq!(
            env.reading_map("beta1").unwrap().get(&"a".into()),
            "a*(b+c)".parse().unwrap()
        );
        assert_eq!(env.event_model("E1").unwrap().len(), 2);
    }

    #[test]
    fn invalid_event_models_are_rejected() {
        let text = r#"{"name":"E","events":["e","f"],"reading":{"f":{"a":"a*b"}},
                       "atoms":{"a":{"blocks":[["e","f"]]},"b":{"blocks":[["e"],["f"]]}}}"#;
        assert!(matches!(event_model_from_json(text), Err(Error::InvalidModel(_))));
    }
}
