use std::fmt;

use crate::term::Term;

/// Formulas of the static language plus the two dynamic operators.
///
/// Conjunction, implication and equivalence are not nodes: the constructors
/// below (and the parser) expand them into negation and disjunction. `Box` is
/// kept as its own node; it evaluates exactly as `~<t>~phi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Prop(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Diamond(Term, Box<Formula>),
    Box(Term, Box<Formula>),
    /// `[!beta]phi`: the semi-public reading event of the named reading map.
    Bang { map: String, body: Box<Formula> },
    /// `[E.e]phi`: event `e` of the named reading event model.
    Event {
        model: String,
        event: String,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    /// `~(~self | ~other)`
    pub fn and(self, other: Formula) -> Self {
        self.not().or(other.not()).not()
    }

    /// `~self | other`
    pub fn implies(self, other: Formula) -> Self {
        self.not().or(other)
    }

    /// `(self -> other) & (other -> self)`
    pub fn iff(self, other: Formula) -> Self {
        let back = other.clone().implies(self.clone());
        self.implies(other).and(back)
    }

    pub fn diamond(term: Term, body: Formula) -> Self {
        Formula::Diamond(term, Box::new(body))
    }

    pub fn boxed(term: Term, body: Formula) -> Self {
        Formula::Box(term, Box::new(body))
    }

    pub fn bang(map: impl Into<String>, body: Formula) -> Self {
        Formula::Bang {
            map: map.into(),
            body: Box::new(body),
        }
    }

    pub fn event(model: impl Into<String>, event: impl Into<String>, body: Formula) -> Self {
        Formula::Event {
            model: model.into(),
            event: event.into(),
            body: Box::new(body),
        }
    }

    /// Conjunction of a nonempty list, folded to the left.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Disjunction of a nonempty list, folded to the left.
    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    pub fn is_static(&self) -> bool {
        match self {
            Formula::Prop(_) => true,
            Formula::Not(f) | Formula::Diamond(_, f) | Formula::Box(_, f) => f.is_static(),
            Formula::Or(l, r) => l.is_static() && r.is_static(),
            Formula::Bang { .. } | Formula::Event { .. } => false,
        }
    }

    /// Rewrites every `[t]phi` as `~<t>~phi`.
    pub fn to_core(&self) -> Formula {
        match self {
            Formula::Prop(_) => self.clone(),
            Formula::Not(f) => f.to_core().not(),
            Formula::Or(l, r) => l.to_core().or(r.to_core()),
            Formula::Diamond(t, f) => Formula::diamond(t.clone(), f.to_core()),
            Formula::Box(t, f) => Formula::diamond(t.clone(), f.to_core().not()).not(),
            Formula::Bang { map, body } => Formula::bang(map.clone(), body.to_core()),
            Formula::Event { model, event, body } => {
                Formula::event(model.clone(), event.clone(), body.to_core())
            }
        }
    }

    /// Depth of the syntax tree; propositions have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Prop(_) => 0,
            Formula::Not(f)
            | Formula::Diamond(_, f)
            | Formula::Box(_, f)
            | Formula::Bang { body: f, .. }
            | Formula::Event { body: f, .. } => 1 + f.depth(),
            Formula::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Prop(_) => 1,
            Formula::Not(f)
            | Formula::Diamond(_, f)
            | Formula::Box(_, f)
            | Formula::Bang { body: f, .. }
            | Formula::Event { body: f, .. } => 1 + f.size(),
            Formula::Or(l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_formula(self))
    }
}
