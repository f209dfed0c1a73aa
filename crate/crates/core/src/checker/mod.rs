//! Truth conditions, evaluated bottom-up over whole extensions.

mod axioms;
mod oracle;

pub use axioms::{axiom_suite, Schema, SuiteConfig, SuiteFailure, SuiteReport};
pub use oracle::{semantic_term_leq, PartitionOracle, PartitionWitness, DEFAULT_ORACLE_STATES};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::events::{product_index, product_update};
use crate::formula::Formula;
use crate::kripke::{Model, RelationCache, StateSet};
use crate::semipublic::update_model;
use crate::syntax::Definitions;

/// Evaluation session over one model. Term relations are cached for the
/// lifetime of the session.
pub struct Evaluator<'a> {
    model: &'a Model,
    env: &'a Definitions,
    strict: bool,
    relations: RelationCache<'a>,
}

impl<'a> Evaluator<'a> {
    pub fn new(model: &'a Model, env: &'a Definitions) -> Self {
        Evaluator {
            model,
            env,
            strict: true,
            relations: RelationCache::new(model.frame()),
        }
    }

    /// Unknown propositions evaluate to the empty set instead of failing.
    pub fn lenient(mut self) -> Self {
        self.strict = false;
        self
    }

    pub fn model(&self) -> &'a Model {
        self.model
    }

    /// The set of states where `f` holds. Dynamic operators are evaluated on
    /// the updated model they denote.
    pub fn eval(&mut self, f: &Formula) -> Result<StateSet> {
        let n = self.model.len();
        Ok(match f {
            Formula::Prop(p) => match self.model.valuation().get(p) {
                Some(set) => set.clone(),
                None if self.strict => return Err(Error::UnknownProposition(p.clone())),
                None => FixedBitSet::with_capacity(n),
            },
            Formula::Not(g) => complement(n, &self.eval(g)?),
            Formula::Or(l, r) => {
                let mut out = self.eval(l)?;
                out.union_with(&self.eval(r)?);
                out
            }
            Formula::Diamond(t, g) => {
                let target = self.eval(g)?;
                self.relations.relation_of(t)?.preimage(&target)
            }
            Formula::Box(t, g) => {
                let target = self.eval(g)?;
                self.relations.relation_of(t)?.universal_preimage(&target)
            }
            Formula::Bang { map, body } => {
                let map = self
                    .env
                    .reading_map(map)
                    .ok_or_else(|| Error::UnresolvedReference(map.clone()))?;
                let updated = update_model(self.model, map)?;
                self.sub_session(&updated).eval(body)?
            }
            Formula::Event { model, event, body } => {
                let em = self
                    .env
                    .event_model(model)
                    .ok_or_else(|| Error::UnresolvedReference(model.clone()))?;
                let e = em.event_index(event).ok_or_else(|| Error::UnknownEvent {
                    model: model.clone(),
                    event: event.clone(),
                })?;
                let product = product_update(self.model, em)?;
                let inner = self.sub_session(&product).eval(body)?;
                let mut out = FixedBitSet::with_capacity(n);
                for w in 0..n {
                    out.set(w, inner.contains(product_index(w, e, em.len())));
                }
                out
            }
        })
    }

    fn sub_session<'b>(&self, model: &'b Model) -> Evaluator<'b>
    where
        'a: 'b,
    {
        Evaluator {
            model,
            env: self.env,
            strict: self.strict,
            relations: RelationCache::new(model.frame()),
        }
    }
}

fn complement(n: usize, set: &StateSet) -> StateSet {
    let mut out = FixedBitSet::with_capacity(n);
    out.insert_range(..);
    out.difference_with(set);
    out
}

/// Extension of a formula with no definitions in scope.
pub fn eval(m: &Model, f: &Formula) -> Result<StateSet> {
    Evaluator::new(m, &Definitions::default()).eval(f)
}

pub fn eval_with(m: &Model, env: &Definitions, f: &Formula) -> Result<StateSet> {
    Evaluator::new(m, env).eval(f)
}

pub fn check(m: &Model, state: &str, f: &Formula) -> Result<bool> {
    check_with(m, &Definitions::default(), state, f)
}

pub fn check_with(m: &Model, env: &Definitions, state: &str, f: &Formula) -> Result<bool> {
    let w = m.state_index(state)?;
    Ok(eval_with(m, env, f)?.contains(w))
}

/// True when `f` holds at every state of `m`.
pub fn valid_on_model(m: &Model, f: &Formula) -> Result<bool> {
    Ok(eval(m, f)?.count_ones(..) == m.len())
}
