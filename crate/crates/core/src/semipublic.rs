//! Semi-public reading events.
//!
//! A reading map sends each atomic term to the term it reads during the
//! event. The event itself is public, its content is not: after `!beta` the
//! relation of `x` is the old relation of `beta(x)`, and every derived term
//! follows by the homomorphic extension of `beta`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{Frame, Model, RelationCache};
use crate::syntax::Definitions;
use crate::term::{term_leq, AtomicTerm, Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadingMap {
    name: String,
    assignment: BTreeMap<AtomicTerm, Term>,
}

impl ReadingMap {
    /// The identity reading map.
    pub fn new(name: impl Into<String>) -> Self {
        ReadingMap {
            name: name.into(),
            assignment: BTreeMap::new(),
        }
    }

    pub fn with(mut self, atom: impl Into<AtomicTerm>, target: Term) -> Self {
        self.set(atom.into(), target);
        self
    }

    pub fn set(&mut self, atom: AtomicTerm, target: Term) {
        self.assignment.insert(atom, target);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn assignment(&self) -> &BTreeMap<AtomicTerm, Term> {
        &self.assignment
    }

    /// What `x` reads; atoms without an entry read themselves.
    pub fn get(&self, x: &AtomicTerm) -> Term {
        self.assignment
            .get(x)
            .cloned()
            .unwrap_or_else(|| Term::Atom(x.clone()))
    }

    /// The homomorphic extension to all terms.
    pub fn apply(&self, t: &Term) -> Term {
        t.map_atoms(&|x| self.get(x))
    }

    pub fn check_signature(&self, sig: &Signature) -> Result<()> {
        for (x, target) in &self.assignment {
            if !sig.contains(x) {
                return Err(Error::SignatureMismatch(format!(
                    "reading map `{}` assigns `{x}`, which is not in the signature",
                    self.name
                )));
            }
            sig.check_term(target).map_err(|e| {
                Error::SignatureMismatch(format!("reading map `{}`: {e}", self.name))
            })?;
        }
        Ok(())
    }

    /// Atoms `a` with `beta(a) <= a` failing. Such maps are allowed; this is
    /// only a warning that an agent may lose what it knew.
    pub fn lint(&self) -> Vec<String> {
        self.assignment
            .iter()
            .filter(|(x, target)| !term_leq(target, &Term::Atom((*x).clone())).unwrap_or(true))
            .map(|(x, target)| {
                format!(
                    "reading map `{}`: {x} reads {target}, which is not below {x}",
                    self.name
                )
            })
            .collect()
    }
}

/// The frame in which each atom has the relation its reading denotes.
pub(crate) fn updated_frame(frame: &Frame, map: &ReadingMap) -> Result<Frame> {
    let mut cache = RelationCache::new(frame);
    let relations = frame
        .atomic_relations()
        .keys()
        .map(|x| Ok((x.clone(), cache.relation_of(&map.get(x))?)))
        .collect::<Result<_>>()?;
    Frame::new(frame.size(), relations)
}

/// The model after the semi-public event `!map`: same states and valuation,
/// atomic relations replaced by the relations of their readings.
pub fn update_model(m: &Model, map: &ReadingMap) -> Result<Model> {
    map.check_signature(&m.signature())?;
    let updated = m.with_frame(updated_frame(m.frame(), map)?);
    debug_assert!(updated.validate().is_valid() || !m.validate().is_valid());
    Ok(updated)
}

/// Pushes `[!map]` through a static formula using the reduction laws.
pub fn push_bang(map: &ReadingMap, f: &Formula) -> Formula {
    match f {
        Formula::Prop(_) => f.clone(),
        Formula::Not(g) => push_bang(map, g).not(),
        Formula::Or(l, r) => push_bang(map, l).or(push_bang(map, r)),
        Formula::Diamond(t, g) => Formula::diamond(map.apply(t), push_bang(map, g)),
        Formula::Box(t, g) => Formula::boxed(map.apply(t), push_bang(map, g)),
        Formula::Bang { .. } | Formula::Event { .. } => {
            unreachable!("push_bang expects a static formula")
        }
    }
}

/// Compiles every `[!beta]` away, innermost operators first. Event operators
/// are rejected; use [`crate::events::reduce_event`] for formulas mixing both.
pub fn reduce_bang(f: &Formula, env: &Definitions) -> Result<Formula> {
    Ok(match f {
        Formula::Prop(_) => f.clone(),
        Formula::Not(g) => reduce_bang(g, env)?.not(),
        Formula::Or(l, r) => reduce_bang(l, env)?.or(reduce_bang(r, env)?),
        Formula::Diamond(t, g) => Formula::diamond(t.clone(), reduce_bang(g, env)?),
        Formula::Box(t, g) => Formula::boxed(t.clone(), reduce_bang(g, env)?),
        Formula::Bang { map, body } => {
            let map = env
                .reading_map(map)
                .ok_or_else(|| Error::UnresolvedReference(map.clone()))?;
            push_bang(map, &reduce_bang(body, env)?)
        }
        Formula::Event { .. } => return Err(Error::DynamicOperator(f.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{random_model, Mode};
    use crate::syntax::parse_formula;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    fn abc() -> Signature {
        ["a", "b", "c"].into_iter().map(AtomicTerm::from).collect()
    }

    fn example_map() -> ReadingMap {
        ReadingMap::new("beta")
            .with("a", t("a*(b+c)"))
            .with("b", t("b*a"))
            .with("c", t("c*a"))
    }

    #[test]
    fn identity_map_leaves_relations_alone() {
        let m = random_model(11, 5, &abc(), Mode::S5);
        let updated = update_model(&m, &ReadingMap::new("id")).unwrap();
        assert_eq!(updated, m);
    }

    #[test]
    fn example_map_updates_alice() {
        let m = random_model(5, 4, &abc(), Mode::S5);
        let updated = update_model(&m, &example_map()).unwrap();
        assert_eq!(
            updated.relation_of(&t("a")).unwrap(),
            m.relation_of(&t("a*(b+c)")).unwrap()
        );
        assert!(updated.validate().is_valid());
    }

    #[test]
    fn derived_terms_follow_the_homomorphism() {
        let beta = example_map();
        for seed in 0..20 {
            let m = random_model(seed, 5, &abc(), Mode::S4);
            let updated = update_model(&m, &beta).unwrap();
            for s in ["a+b", "a*(b+c)", "(a+b)*(b+c)", "c*a+b"] {
                let tau = t(s);
                assert_eq!(
                    updated.relation_of(&tau).unwrap(),
                    m.relation_of(&beta.apply(&tau)).unwrap()
                );
            }
        }
    }

    #[test]
    fn signature_mismatch() {
        let m = random_model(1, 3, &abc(), Mode::S5);
        let bad = ReadingMap::new("bad").with("a", t("a*z"));
        assert!(matches!(update_model(&m, &bad), Err(Error::SignatureMismatch(_))));
        let bad = ReadingMap::new("bad").with("z", t("a"));
        assert!(matches!(update_model(&m, &bad), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn reduction_laws() {
        let beta = ReadingMap::new("beta").with("a", t("a*c"));
        let env = Definitions::new().with_reading_map(beta);
        let reduce = |s: &str| reduce_bang(&parse_formula(s, &env).unwrap(), &env).unwrap();
        assert_eq!(reduce("[!beta]p"), "p".parse().unwrap());
        assert_eq!(reduce("[!beta][a+b]p"), "[(a*c)+b]p".parse().unwrap());
        assert_eq!(reduce("[!beta]~<a>q"), "~<a*c>q".parse().unwrap());
        assert_eq!(reduce("[!beta][!beta][a]p"), "[(a*c)*c]p".parse().unwrap());
    }

    #[test]
    fn lint_flags_readings_not_below_the_reader() {
        assert!(example_map().lint().is_empty());
        let loose = ReadingMap::new("loose").with("a", t("a+b"));
        assert_eq!(loose.lint().len(), 1);
    }
}
