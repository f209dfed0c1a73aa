//! Arbitrary reading events: S5 reading event models, product update, the
//! term-valued characterization of product relations, and the reduction of
//! `[E.e]` operators.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{Frame, Mode, Model, Relation, RelationCache, ValidationReport, Violation};
use crate::semipublic::{push_bang, ReadingMap};
use crate::syntax::Definitions;
use crate::term::{term_equiv, AtomicTerm, FlatTerm, Signature, Term};

/// A finite set of events, each carrying a reading map, with an equivalence
/// relation per atomic term describing which events an agent cannot tell
/// apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventModel {
    name: String,
    events: Vec<String>,
    readings: Vec<ReadingMap>,
    frame: Frame,
}

impl EventModel {
    pub fn new(
        name: impl Into<String>,
        events: Vec<String>,
        readings: Vec<ReadingMap>,
        relations: BTreeMap<AtomicTerm, Relation>,
    ) -> Result<Self> {
        if readings.len() != events.len() {
            return Err(Error::Malformed(format!(
                "{} events but {} reading maps",
                events.len(),
                readings.len()
            )));
        }
        let mut sorted = events.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("duplicate event `{}`", w[0])));
        }
        Ok(EventModel {
            name: name.into(),
            frame: Frame::new(events.len(), relations)?,
            events,
            readings,
        })
    }

    /// One event reading `map`, with the identity relation for every atom of
    /// `signature`. Updating by it is the semi-public event `!map`.
    pub fn singleton(
        name: impl Into<String>,
        event: impl Into<String>,
        map: ReadingMap,
        signature: &Signature,
    ) -> Self {
        let relations = signature
            .iter()
            .map(|x| (x.clone(), Relation::identity(1)))
            .collect();
        EventModel::new(name, vec![event.into()], vec![map], relations)
            .expect("singleton event model is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn signature(&self) -> Signature {
        self.frame.signature()
    }

    pub fn event_index(&self, event: &str) -> Option<usize> {
        self.events.iter().position(|e| e == event)
    }

    fn index(&self, event: &str) -> Result<usize> {
        self.event_index(event).ok_or_else(|| Error::UnknownEvent {
            model: self.name.clone(),
            event: event.to_string(),
        })
    }

    pub fn reading(&self, event: &str) -> Result<&ReadingMap> {
        Ok(&self.readings[self.index(event)?])
    }

    pub fn readings(&self) -> &[ReadingMap] {
        &self.readings
    }

    /// Equivalence violations, readings outside the signature, and pairs of
    /// related events whose readings of the relating atom differ.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.events.is_empty() {
            violations.push(Violation::NoEvents);
        }
        violations.extend(self.frame.violations(&self.events, Mode::S5));
        let sig = self.signature();
        for (e, map) in self.events.iter().zip(&self.readings) {
            for (x, target) in map.assignment() {
                let context = format!("reading of event {e}");
                if !sig.contains(x) {
                    violations.push(Violation::ForeignAtom {
                        context: context.clone(),
                        atom: x.to_string(),
                    });
                }
                for y in target.atoms().into_iter().filter(|y| !sig.contains(y)) {
                    violations.push(Violation::ForeignAtom {
                        context: context.clone(),
                        atom: y.to_string(),
                    });
                }
            }
        }
        for (x, r) in self.frame.atomic_relations() {
            for (i, j) in r.pairs().filter(|&(i, j)| i < j) {
                let (left, right) = (self.readings[i].get(x), self.readings[j].get(x));
                if !term_equiv(&left, &right).unwrap_or(false) {
                    violations.push(Violation::ReadingMismatch {
                        atom: x.to_string(),
                        left: self.events[i].clone(),
                        right: self.events[j].clone(),
                        left_reading: left.to_string(),
                        right_reading: right.to_string(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn relation_of(&self, t: &Term) -> Result<Relation> {
        self.frame.relation_of(t)
    }
}

pub fn validate_event_model(em: &EventModel) -> ValidationReport {
    em.validate()
}

/// Memoized evaluation of the term-valued characterization function.
pub struct Gamma<'a> {
    em: &'a EventModel,
    relations: RelationCache<'a>,
    memo: HashMap<(usize, Term), Term>,
}

impl<'a> Gamma<'a> {
    pub fn new(em: &'a EventModel) -> Self {
        Gamma {
            em,
            relations: RelationCache::new(&em.frame),
            memo: HashMap::new(),
        }
    }

    /// The term whose relation in the original model describes how the
    /// relation of `t` behaves in the product, starting from `event`.
    pub fn term(&mut self, event: usize, t: &Term) -> Result<Term> {
        let key = (event, t.clone());
        if let Some(done) = self.memo.get(&key) {
            return Ok(done.clone());
        }
        let out = match t {
            Term::Atom(x) => {
                self.relations.frame().relation(x)?;
                self.em.readings[event].get(x)
            }
            Term::Meet(l, r) => self.term(event, l)?.meet(self.term(event, r)?),
            Term::Join(l, r) => {
                let class = self.relations.relation_of(t)?.successors(event).clone();
                let mut parts = Vec::new();
                for f in class.ones() {
                    parts.push(self.term(f, l)?.flatten());
                    parts.push(self.term(f, r)?.flatten());
                }
                FlatTerm::join_of(parts).to_term()
            }
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// Events related to `event` by the event-model relation of `t`.
    pub fn class(&mut self, event: usize, t: &Term) -> Result<FixedBitSet> {
        Ok(self.relations.relation_of(t)?.successors(event).clone())
    }
}

pub fn gamma(em: &EventModel, event: &str, t: &Term) -> Result<Term> {
    let e = em.index(event)?;
    Gamma::new(em).term(e, t)
}

/// Index of the product state `(w, e)`.
pub fn product_index(world: usize, event: usize, n_events: usize) -> usize {
    world * n_events + event
}

fn check_shared_signature(m: &Model, em: &EventModel) -> Result<()> {
    let (ms, es) = (m.signature(), em.signature());
    if ms != es {
        let show = |s: &Signature| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        return Err(Error::SignatureMismatch(format!(
            "model has atoms {{{}}} but event model `{}` has {{{}}}",
            show(&ms),
            em.name(),
            show(&es)
        )));
    }
    for map in &em.readings {
        map.check_signature(&ms)?;
    }
    Ok(())
}

/// The product update. States are pairs `(w, e)` named `w@e`, ordered
/// world-major; `(w,e)` and `(w',e')` are related by `x` when `w` and `w'`
/// are related by the reading of `x` at `e` and the events are related by
/// `x`. The result keeps the mode of `m`; callers that need a guarantee
/// should run [`Model::validate`] or [`Model::detect_mode`] on it.
pub fn product_update(m: &Model, em: &EventModel) -> Result<Model> {
    check_shared_signature(m, em)?;
    let (n, k) = (m.len(), em.len());
    let mut cache = RelationCache::new(m.frame());
    let mut relations = BTreeMap::new();
    for (x, event_rel) in em.frame.atomic_relations() {
        let readings = em
            .readings
            .iter()
            .map(|map| cache.relation_of(&map.get(x)))
            .collect::<Result<Vec<_>>>()?;
        let mut r = Relation::empty(n * k);
        for (e, reading) in readings.iter().enumerate() {
            for (w, w2) in reading.pairs() {
                for e2 in event_rel.successors(e).ones() {
                    r.insert(product_index(w, e, k), product_index(w2, e2, k));
                }
            }
        }
        relations.insert(x.clone(), r);
    }
    let states = m
        .states()
        .iter()
        .flat_map(|w| em.events.iter().map(move |e| format!("{w}@{e}")))
        .collect();
    let valuation = m
        .valuation()
        .iter()
        .map(|(p, set)| {
            let mut lifted = FixedBitSet::with_capacity(n * k);
            for w in set.ones() {
                for e in 0..k {
                    lifted.insert(product_index(w, e, k));
                }
            }
            (p.clone(), lifted)
        })
        .collect();
    Model::new(m.mode(), states, relations, valuation)
}

/// Pushes event operators of one event model through static formulas.
struct EventReducer<'a> {
    gamma: Gamma<'a>,
}

impl<'a> EventReducer<'a> {
    fn new(em: &'a EventModel) -> Self {
        EventReducer {
            gamma: Gamma::new(em),
        }
    }

    fn push(&mut self, event: usize, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Prop(_) => f.clone(),
            Formula::Not(g) => self.push(event, g)?.not(),
            Formula::Or(l, r) => self.push(event, l)?.or(self.push(event, r)?),
            Formula::Box(t, g) => {
                let reads = self.gamma.term(event, t)?;
                let mut parts = Vec::new();
                for e2 in self.gamma.class(event, t)?.ones() {
                    let part = Formula::boxed(reads.clone(), self.push(e2, g)?);
                    if !parts.contains(&part) {
                        parts.push(part);
                    }
                }
                Formula::and_all(parts).expect("event relations are reflexive")
            }
            Formula::Diamond(t, g) => {
                let reads = self.gamma.term(event, t)?;
                let mut parts = Vec::new();
                for e2 in self.gamma.class(event, t)?.ones() {
                    let part = Formula::diamond(reads.clone(), self.push(e2, g)?);
                    if !parts.contains(&part) {
                        parts.push(part);
                    }
                }
                Formula::or_all(parts).expect("event relations are reflexive")
            }
            Formula::Bang { .. } | Formula::Event { .. } => {
                unreachable!("event reduction pushes through static formulas only")
            }
        })
    }
}

/// One application of the modal reduction law: the conjunction over events
/// `e'` related to `event` by `t` of `[gamma(event,t)][E.e']body`. The body
/// is left untouched, dynamic operators included.
pub fn expand_event_box(em: &EventModel, event: &str, t: &Term, body: &Formula) -> Result<Formula> {
    let e = em.index(event)?;
    let mut g = Gamma::new(em);
    let reads = g.term(e, t)?;
    let parts = g
        .class(e, t)?
        .ones()
        .map(|e2| {
            Formula::boxed(
                reads.clone(),
                Formula::event(em.name(), em.events[e2].clone(), body.clone()),
            )
        })
        .collect::<Vec<_>>();
    Ok(Formula::and_all(parts).expect("event relations are reflexive"))
}

/// Compiles every `[E.e]` and `[!beta]` operator away, innermost first. The
/// result is a static formula equivalent to the input on every regular model.
pub fn reduce_event(f: &Formula, env: &Definitions) -> Result<Formula> {
    Ok(match f {
        Formula::Prop(_) => f.clone(),
        Formula::Not(g) => reduce_event(g, env)?.not(),
        Formula::Or(l, r) => reduce_event(l, env)?.or(reduce_event(r, env)?),
        Formula::Diamond(t, g) => Formula::diamond(t.clone(), reduce_event(g, env)?),
        Formula::Box(t, g) => Formula::boxed(t.clone(), reduce_event(g, env)?),
        Formula::Bang { map, body } => {
            let map = env
                .reading_map(map)
                .ok_or_else(|| Error::UnresolvedReference(map.clone()))?;
            push_bang(map, &reduce_event(body, env)?)
        }
        Formula::Event { model, event, body } => {
            let em = env
                .event_model(model)
                .ok_or_else(|| Error::UnresolvedReference(model.clone()))?;
            let e = em.index(event)?;
            let inner = reduce_event(body, env)?;
            EventReducer::new(em).push(e, &inner)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::random_model;
    use crate::semipublic::update_model;
    use crate::term::term_equiv;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    fn sig(names: &[&str]) -> Signature {
        names.iter().map(|s| AtomicTerm::from(*s)).collect()
    }

    fn two_events(read_e: ReadingMap, read_f: ReadingMap, rels: &[(&str, bool)]) -> EventModel {
        let relations = rels
            .iter()
            .map(|&(x, linked)| {
                let r = if linked {
                    Relation::total(2)
                } else {
                    Relation::identity(2)
                };
                (AtomicTerm::from(x), r)
            })
            .collect();
        EventModel::new("E", vec!["e".into(), "f".into()], vec![read_e, read_f], relations)
            .unwrap()
    }

    #[test]
    fn singleton_is_always_valid() {
        let map = ReadingMap::new("m").with("a", t("a*(b+c)"));
        let em = EventModel::singleton("E", "e", map, &sig(&["a", "b", "c"]));
        assert!(em.validate().is_valid());
    }

    #[test]
    fn mismatched_readings_are_reported() {
        let em = two_events(
            ReadingMap::new("e").with("a", t("a")),
            ReadingMap::new("f").with("a", t("a*b")),
            &[("a", true), ("b", false)],
        );
        let report = em.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            &report.violations[0],
            Violation::ReadingMismatch { atom, left, right, .. }
                if atom == "a" && left == "e" && right == "f"
        ));
    }

    #[test]
    fn absorbed_readings_are_equivalent() {
        let em = two_events(
            ReadingMap::new("e").with("a", t("a*(a+b)")),
            ReadingMap::new("f").with("a", t("a")),
            &[("a", true), ("b", false)],
        );
        assert!(em.validate().is_valid());
    }

    #[test]
    fn non_equivalence_relation_is_reported() {
        let relations = [("a".into(), Relation::from_pairs(2, [(0, 0), (1, 1), (0, 1)]))]
            .into_iter()
            .collect();
        let em = EventModel::new(
            "E",
            vec!["e".into(), "f".into()],
            vec![ReadingMap::new("e"), ReadingMap::new("f")],
            relations,
        )
        .unwrap();
        assert!(em
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotSymmetric { .. })));
    }

    #[test]
    fn gamma_base_and_singleton_cases() {
        let beta = ReadingMap::new("beta")
            .with("a", t("a*(b+c)"))
            .with("b", t("b*a"));
        let em = EventModel::singleton("E", "e", beta.clone(), &sig(&["a", "b", "c"]));
        assert_eq!(gamma(&em, "e", &t("a")).unwrap(), t("a*(b+c)"));
        for s in ["a+b", "a*(b+c)", "(a+c)*(b+a)", "c+a*b"] {
            let tau = t(s);
            let g = gamma(&em, "e", &tau).unwrap();
            assert!(term_equiv(&g, &beta.apply(&tau)).unwrap(), "{s}: {g}");
        }
        assert!(matches!(
            gamma(&em, "nope", &t("a")),
            Err(Error::UnknownEvent { .. })
        ));
    }

    #[test]
    fn gamma_join_sums_over_the_event_class() {
        // e and f are linked by b only; f reads a*c for a
        let em = two_events(
            ReadingMap::new("e"),
            ReadingMap::new("f").with("a", t("a*c")),
            &[("a", false), ("b", true), ("c", false)],
        );
        assert!(em.validate().is_valid());
        let g = gamma(&em, "e", &t("a+b")).unwrap();
        assert!(term_equiv(&g, &t("(a+b)+((a*c)+b)")).unwrap(), "{g}");
        // the class under `a` alone is just {e}
        assert_eq!(gamma(&em, "e", &t("a")).unwrap(), t("a"));
    }

    #[test]
    fn identity_singleton_product_is_isomorphic() {
        let s = sig(&["a", "b"]);
        let m = random_model(4, 4, &s, Mode::S5);
        let em = EventModel::singleton("E", "e", ReadingMap::new("id"), &s);
        let p = product_update(&m, &em).unwrap();
        assert_eq!(p.len(), m.len());
        assert_eq!(p.states()[0], "w1@e");
        for x in s.iter() {
            assert_eq!(p.frame().relation(x).unwrap(), m.frame().relation(x).unwrap());
        }
        assert_eq!(p.valuation(), m.valuation());
    }

    #[test]
    fn singleton_product_matches_semipublic_update() {
        let s = sig(&["a", "b", "c"]);
        let beta = ReadingMap::new("beta")
            .with("a", t("a*(b+c)"))
            .with("c", t("c*a"));
        let em = EventModel::singleton("E", "e", beta.clone(), &s);
        for seed in 0..10 {
            let m = random_model(seed, 5, &s, Mode::S4);
            let p = product_update(&m, &em).unwrap();
            let u = update_model(&m, &beta).unwrap();
            for x in s.iter() {
                assert_eq!(p.frame().relation(x).unwrap(), u.frame().relation(x).unwrap());
            }
        }
    }

    #[test]
    fn product_requires_shared_signature() {
        let m = random_model(4, 3, &sig(&["a", "b"]), Mode::S5);
        let em = EventModel::singleton("E", "e", ReadingMap::new("id"), &sig(&["a"]));
        assert!(matches!(product_update(&m, &em), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn reduce_event_base_law() {
        let s = sig(&["a"]);
        let em = EventModel::singleton("E", "e", ReadingMap::new("id"), &s);
        let env = Definitions::new().with_event_model(em);
        let f = crate::syntax::parse_formula("[E.e]p", &env).unwrap();
        assert_eq!(reduce_event(&f, &env).unwrap(), Formula::prop("p"));
    }
}
