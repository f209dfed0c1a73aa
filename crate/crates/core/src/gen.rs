//! Seeded random terms, formulas, reading maps and event models for test
//! harnesses and the axiom suite.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::events::EventModel;
use crate::formula::Formula;
use crate::kripke::{random_partition, Relation};
use crate::semipublic::ReadingMap;
use crate::term::{AtomicTerm, Term};

/// A random term whose operator depth is at most `max_depth`.
pub fn random_term<R: Rng>(rng: &mut R, atoms: &[AtomicTerm], max_depth: usize) -> Term {
    if max_depth == 0 || rng.gen_bool(0.35) {
        return Term::Atom(atoms.choose(rng).expect("nonempty signature").clone());
    }
    let l = random_term(rng, atoms, max_depth - 1);
    let r = random_term(rng, atoms, max_depth - 1);
    if rng.gen_bool(0.5) {
        l.meet(r)
    } else {
        l.join(r)
    }
}

/// Every term of operator depth at most `max_depth`.
pub fn all_terms(atoms: &[AtomicTerm], max_depth: usize) -> Vec<Term> {
    let mut by_depth: Vec<Vec<Term>> = vec![atoms.iter().cloned().map(Term::Atom).collect()];
    for d in 1..=max_depth {
        let shallower: Vec<&Term> = by_depth.iter().flatten().collect();
        let mut layer = Vec::new();
        for l in &shallower {
            for r in &shallower {
                if l.depth() == d - 1 || r.depth() == d - 1 {
                    layer.push((*l).clone().meet((*r).clone()));
                    layer.push((*l).clone().join((*r).clone()));
                }
            }
        }
        by_depth.push(layer);
    }
    by_depth.into_iter().flatten().collect()
}

/// Every term with at most `max_ops` binary operators.
pub fn all_terms_by_size(atoms: &[AtomicTerm], max_ops: usize) -> Vec<Term> {
    let mut by_ops: Vec<Vec<Term>> = vec![atoms.iter().cloned().map(Term::Atom).collect()];
    for k in 1..=max_ops {
        let mut layer = Vec::new();
        for left_ops in 0..k {
            let right_ops = k - 1 - left_ops;
            for l in &by_ops[left_ops] {
                for r in &by_ops[right_ops] {
                    layer.push(l.clone().meet(r.clone()));
                    layer.push(l.clone().join(r.clone()));
                }
            }
        }
        by_ops.push(layer);
    }
    by_ops.into_iter().flatten().collect()
}

/// Shape parameters for random formulas.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    pub props: Vec<String>,
    pub atoms: Vec<AtomicTerm>,
    pub term_depth: usize,
    /// Reading maps that `[!name]` may refer to.
    pub reading_maps: Vec<String>,
    /// Event models and their events that `[E.e]` may refer to.
    pub event_models: Vec<(String, Vec<String>)>,
    /// Also emit the sugared connectives `&`, `->` and `<->`.
    pub sugar: bool,
}

impl FormulaGen {
    pub fn new(props: &[&str], atoms: &[AtomicTerm]) -> Self {
        FormulaGen {
            props: props.iter().map(|p| p.to_string()).collect(),
            atoms: atoms.to_vec(),
            term_depth: 2,
            reading_maps: Vec::new(),
            event_models: Vec::new(),
            sugar: false,
        }
    }

    pub fn term_depth(mut self, depth: usize) -> Self {
        self.term_depth = depth;
        self
    }

    pub fn with_reading_map(mut self, name: &str) -> Self {
        self.reading_maps.push(name.to_string());
        self
    }

    pub fn with_event_model(mut self, em: &EventModel) -> Self {
        self.event_models
            .push((em.name().to_string(), em.events().to_vec()));
        self
    }

    pub fn with_sugar(mut self) -> Self {
        self.sugar = true;
        self
    }

    /// A random formula of connective depth at most `depth`.
    pub fn formula<R: Rng>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.2) {
            return Formula::Prop(self.props.choose(rng).expect("nonempty pool").clone());
        }
        let mut choices = vec![0, 1, 2, 3];
        if self.sugar {
            choices.extend([4, 5, 6]);
        }
        if !self.reading_maps.is_empty() {
            choices.push(7);
        }
        if !self.event_models.is_empty() {
            choices.push(8);
        }
        let sub = |rng: &mut R| self.formula(rng, depth - 1);
        match *choices.choose(rng).unwrap() {
            0 => sub(rng).not(),
            1 => {
                let l = sub(rng);
                l.or(sub(rng))
            }
            2 => Formula::diamond(random_term(rng, &self.atoms, self.term_depth), sub(rng)),
            3 => Formula::boxed(random_term(rng, &self.atoms, self.term_depth), sub(rng)),
            4 => {
                let l = sub(rng);
                l.and(sub(rng))
            }
            5 => {
                let l = sub(rng);
                l.implies(sub(rng))
            }
            6 => {
                let l = sub(rng);
                l.iff(sub(rng))
            }
            7 => {
                let map = self.reading_maps.choose(rng).unwrap().clone();
                Formula::bang(map, sub(rng))
            }
            _ => {
                let (model, events) = self.event_models.choose(rng).unwrap();
                let event = events.choose(rng).unwrap().clone();
                Formula::event(model.clone(), event, sub(rng))
            }
        }
    }
}

/// Each atom reads a random term with probability 0.7 and itself otherwise.
pub fn random_reading_map<R: Rng>(
    rng: &mut R,
    name: &str,
    atoms: &[AtomicTerm],
    term_depth: usize,
) -> ReadingMap {
    let mut map = ReadingMap::new(name);
    for x in atoms {
        if rng.gen_bool(0.7) {
            map.set(x.clone(), random_term(rng, atoms, term_depth));
        }
    }
    map
}

/// A term equivalent to `t` in every lattice but usually different as a tree.
fn equivalent_variant<R: Rng>(rng: &mut R, t: &Term, atoms: &[AtomicTerm]) -> Term {
    let other = random_term(rng, atoms, 1);
    match rng.gen_range(0..5) {
        0 => t.clone(),
        1 => t.clone().meet(t.clone()),
        2 => t.clone().join(t.clone().meet(other)),
        3 => t.clone().meet(t.clone().join(other)),
        _ => t.flatten().to_term(),
    }
}

/// A valid S5 reading event model with `1..=max_events` events: random
/// partitions per atom, and within each class of an atom's partition every
/// event reads an equivalent variant of one shared term.
pub fn random_event_model<R: Rng>(
    rng: &mut R,
    name: &str,
    atoms: &[AtomicTerm],
    max_events: usize,
    term_depth: usize,
) -> EventModel {
    let k = rng.gen_range(1..=max_events);
    let events: Vec<String> = ["e", "f", "g", "h", "i", "j"]
        .iter()
        .map(|s| s.to_string())
        .chain((6..k).map(|i| format!("e{i}")))
        .take(k)
        .collect();
    let mut readings: Vec<ReadingMap> = events.iter().map(|e| ReadingMap::new(e.clone())).collect();
    let mut relations: BTreeMap<AtomicTerm, Relation> = BTreeMap::new();
    for x in atoms {
        let r = random_partition(rng, k);
        for class in r.blocks().expect("partition") {
            let base = random_term(rng, atoms, term_depth);
            for e in class {
                let variant = equivalent_variant(rng, &base, atoms);
                readings[e].set(x.clone(), variant);
            }
        }
        relations.insert(x.clone(), r);
    }
    EventModel::new(name, events, readings, relations).expect("generated event model is well formed")
}
