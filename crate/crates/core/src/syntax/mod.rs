//! Concrete syntax for terms and formulas.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "<" term ">" unary | "[" boxinner "]" unary
//!          | ident | "(" formula ")"
//! boxinner:= term | "!" ident | ident "." ident
//! term    := prod ("+" prod)*
//! prod    := tatom ("*" tatom)*
//! tatom   := ident | "(" term ")"
//! ```
//!
//! Identifiers match `[a-zA-Z][a-zA-Z0-9_]*`. `*` is meet, `+` is join.

mod parser;
mod printer;

use std::collections::BTreeMap;

pub use parser::{parse_formula, parse_term};
pub use printer::{print_formula, print_term};

use crate::events::EventModel;
use crate::formula::Formula;
use crate::semipublic::ReadingMap;
use std::str::FromStr;

/// Named reading maps and event models that formulas may refer to.
#[derive(Clone, Debug, Default)]
pub struct Definitions {
    reading_maps: BTreeMap<String, ReadingMap>,
    event_models: BTreeMap<String, EventModel>,
}

impl Definitions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_reading_map(&mut self, map: ReadingMap) {
        self.reading_maps.insert(map.name().to_string(), map);
    }

    pub fn add_event_model(&mut self, em: EventModel) {
        self.event_models.insert(em.name().to_string(), em);
    }

    pub fn with_reading_map(mut self, map: ReadingMap) -> Self {
        self.add_reading_map(map);
        self
    }

    pub fn with_event_model(mut self, em: EventModel) -> Self {
        self.add_event_model(em);
        self
    }

    pub fn reading_map(&self, name: &str) -> Option<&ReadingMap> {
        self.reading_maps.get(name)
    }

    pub fn event_model(&self, name: &str) -> Option<&EventModel> {
        self.event_models.get(name)
    }
}

impl FromStr for Formula {
    type Err = crate::Error;

    /// Parses with no definitions in scope, so only static formulas succeed.
    fn from_str(s: &str) -> crate::Result<Self> {
        parse_formula(s, &Definitions::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;
    use crate::Error;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn common_distributed_knowledge_box() {
        assert_eq!(
            f("[(b*a)+(c*a)]p"),
            Formula::boxed(
                t("b").meet(t("a")).join(t("c").meet(t("a"))),
                Formula::prop("p")
            )
        );
    }

    #[test]
    fn implication_is_right_associative() {
        let (p, q, r) = (Formula::prop("p"), Formula::prop("q"), Formula::prop("r"));
        assert_eq!(f("p -> q -> r"), p.clone().implies(q.clone().implies(r.clone())));
        assert_ne!(f("p -> q -> r"), p.implies(q).implies(r));
    }

    #[test]
    fn precedence() {
        assert_eq!(f("p | q & r"), f("p | (q & r)"));
        assert_eq!(f("p & q -> r <-> s"), f("((p & q) -> r) <-> s"));
        assert_eq!(f("~p & q"), f("(~p) & q"));
        assert_eq!(f("<a>p | q"), f("(<a>p) | q"));
        assert_eq!(f("p | q | r"), f("(p | q) | r"));
    }

    #[test]
    fn term_syntax() {
        assert_eq!(t("a*b+c"), t("(a*b)+c"));
        assert_eq!(t("a+b+c"), t("(a+b)+c"));
        assert_eq!(print_term(&t("a*(b+c)")), "a*(b+c)");
        assert_eq!(print_term(&t("(b*a)+(c*a)")), "b*a+c*a");
        assert_eq!(print_term(&t("a+(b+c)")), "a+(b+c)");
        assert_eq!(print_term(&t("a*(b*c)")), "a*(b*c)");
    }

    #[test]
    fn print_parse_round_trip_on_samples() {
        assert_eq!(print_formula(&f("([a]p | <b+c>q)")), "[a]p | <b+c>q");
        for s in [
            "p -> q -> r",
            "(p -> q) -> r",
            "p <-> q <-> r",
            "p <-> (q <-> r)",
            "~(p | q) & ~~r",
            "[a*(b+c)]p -> [b*a+c*a]p",
            "~<a>~p",
            "(p | q) & (r | s)",
            "p | (q | r)",
            "~(p & q)",
            "~p | q & r",
            "<a>(p -> q)",
        ] {
            let once = f(s);
            let printed = print_formula(&once);
            assert_eq!(f(&printed), once, "{s} printed as {printed}");
        }
    }

    #[test]
    fn fully_parenthesized_input_is_accepted() {
        assert_eq!(f("((p) | ((~(q))))"), f("p | ~q"));
    }

    #[test]
    fn parse_errors_carry_columns() {
        match "p | & q".parse::<Formula>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match "[a+]p".parse::<Formula>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!("p $ q".parse::<Formula>(), Err(Error::Parse { column: 3, .. })));
        assert!(matches!("(p".parse::<Formula>(), Err(Error::Parse { .. })));
        assert!(matches!("p q".parse::<Formula>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn references_must_resolve() {
        assert!(matches!(
            "[!beta]p".parse::<Formula>(),
            Err(Error::UnresolvedReference(name)) if name == "beta"
        ));
        assert!(matches!(
            "[E.e]p".parse::<Formula>(),
            Err(Error::UnresolvedReference(name)) if name == "E"
        ));
    }
}
