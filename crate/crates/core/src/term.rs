//! Lattice terms over a finite set of atomic terms and the free-lattice order
//! between them.
//!
//! A term denotes a way of pooling knowledge: `a*b` is what `a` and `b` know
//! together (distributed knowledge, interpreted as the intersection of the
//! relations), `a+b` is what they know in common (the reflexive-transitive
//! closure of the union). Terms are compared with [`TermOrder`], which decides
//! `s <= t` in the free lattice with Whitman's recursive condition.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Name of a generator of the term lattice (an agent, or a knowledge base).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicTerm(String);

impl AtomicTerm {
    pub fn new(name: impl Into<String>) -> Self {
        AtomicTerm(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AtomicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AtomicTerm {
    fn from(s: &str) -> Self {
        AtomicTerm::new(s)
    }
}

/// A lattice term. Structural equality is tree equality; use
/// [`term_equiv`] for equality in the lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Atom(AtomicTerm),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn atom(name: impl Into<String>) -> Self {
        Term::Atom(AtomicTerm::new(name))
    }

    pub fn meet(self, other: Term) -> Self {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Term) -> Self {
        Term::Join(Box::new(self), Box::new(other))
    }

    /// Left-nested meet of a nonempty sequence of terms.
    pub fn meet_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::meet)
    }

    /// Left-nested join of a nonempty sequence of terms.
    pub fn join_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::join)
    }

    pub fn atoms(&self) -> BTreeSet<AtomicTerm> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<AtomicTerm>) {
        match self {
            Term::Atom(x) => {
                out.insert(x.clone());
            }
            Term::Meet(l, r) | Term::Join(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Number of binary operators in the term.
    pub fn operator_count(&self) -> usize {
        match self {
            Term::Atom(_) => 0,
            Term::Meet(l, r) | Term::Join(l, r) => 1 + l.operator_count() + r.operator_count(),
        }
    }

    /// Nesting depth of operators; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Atom(_) => 0,
            Term::Meet(l, r) | Term::Join(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Replaces every leaf `x` with `h(x)`, keeping the meet/join skeleton.
    /// This is the homomorphic extension of `h` from atoms to terms.
    pub fn map_atoms<F>(&self, h: &F) -> Term
    where
        F: Fn(&AtomicTerm) -> Term,
    {
        match self {
            Term::Atom(x) => h(x),
            Term::Meet(l, r) => l.map_atoms(h).meet(r.map_atoms(h)),
            Term::Join(l, r) => l.map_atoms(h).join(r.map_atoms(h)),
        }
    }

    pub fn flatten(&self) -> FlatTerm {
        match self {
            Term::Atom(x) => FlatTerm::Atom(x.clone()),
            Term::Meet(l, r) => FlatTerm::combine(true, vec![l.flatten(), r.flatten()]),
            Term::Join(l, r) => FlatTerm::combine(false, vec![l.flatten(), r.flatten()]),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::syntax::parse_term(s)
    }
}

/// Replaces each atom of `t` by `h(x)`.
pub fn map_atoms<F>(t: &Term, h: F) -> Term
where
    F: Fn(&AtomicTerm) -> Term,
{
    t.map_atoms(&h)
}

/// Term modulo associativity, commutativity and idempotency: n-ary nodes whose
/// children are sorted, deduplicated and never of the same kind as the parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlatTerm {
    Atom(AtomicTerm),
    Meet(Vec<FlatTerm>),
    Join(Vec<FlatTerm>),
}

impl FlatTerm {
    fn combine(is_meet: bool, parts: Vec<FlatTerm>) -> FlatTerm {
        let mut children = Vec::new();
        for part in parts {
            match part {
                FlatTerm::Meet(xs) if is_meet => children.extend(xs),
                FlatTerm::Join(xs) if !is_meet => children.extend(xs),
                other => children.push(other),
            }
        }
        children.sort();
        children.dedup();
        if children.len() == 1 {
            return children.pop().unwrap();
        }
        if is_meet {
            FlatTerm::Meet(children)
        } else {
            FlatTerm::Join(children)
        }
    }

    /// Canonical n-ary join of the given terms.
    pub fn join_of(parts: impl IntoIterator<Item = FlatTerm>) -> FlatTerm {
        FlatTerm::combine(false, parts.into_iter().collect())
    }

    /// Canonical n-ary meet of the given terms.
    pub fn meet_of(parts: impl IntoIterator<Item = FlatTerm>) -> FlatTerm {
        FlatTerm::combine(true, parts.into_iter().collect())
    }

    /// Back to a binary term, nesting to the left.
    pub fn to_term(&self) -> Term {
        match self {
            FlatTerm::Atom(x) => Term::Atom(x.clone()),
            FlatTerm::Meet(xs) => Term::meet_all(xs.iter().map(FlatTerm::to_term)).unwrap(),
            FlatTerm::Join(xs) => Term::join_all(xs.iter().map(FlatTerm::to_term)).unwrap(),
        }
    }
}

/// A finite set of atomic terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature(BTreeSet<AtomicTerm>);

impl Signature {
    pub fn new(atoms: impl IntoIterator<Item = AtomicTerm>) -> Self {
        Signature(atoms.into_iter().collect())
    }

    pub fn contains(&self, x: &AtomicTerm) -> bool {
        self.0.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AtomicTerm> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fails with [`Error::UnknownAtom`] on the first atom of `t` outside the
    /// signature.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t.atoms().into_iter().find(|x| !self.contains(x)) {
            Some(x) => Err(Error::UnknownAtom(x.to_string())),
            None => Ok(()),
        }
    }

    /// `s <= t`, after checking that both terms live over this signature.
    pub fn leq(&self, s: &Term, t: &Term) -> Result<bool> {
        self.check_term(s)?;
        self.check_term(t)?;
        term_leq(s, t)
    }

    pub fn equiv(&self, s: &Term, t: &Term) -> Result<bool> {
        Ok(self.leq(s, t)? && self.leq(t, s)?)
    }
}

impl FromIterator<AtomicTerm> for Signature {
    fn from_iter<I: IntoIterator<Item = AtomicTerm>>(iter: I) -> Self {
        Signature::new(iter)
    }
}

/// Default bound on memoized subterm pairs per comparison.
pub const DEFAULT_MEMO_LIMIT: usize = 1_000_000;

/// Decides the free-lattice order. Every comparison builds its own memo table,
/// so a `TermOrder` can be shared freely between threads.
#[derive(Clone, Copy, Debug)]
pub struct TermOrder {
    pub memo_limit: usize,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder {
            memo_limit: DEFAULT_MEMO_LIMIT,
        }
    }
}

impl TermOrder {
    pub fn with_memo_limit(memo_limit: usize) -> Self {
        TermOrder { memo_limit }
    }

    pub fn leq(&self, s: &Term, t: &Term) -> Result<bool> {
        let mut w = Whitman::new(self.memo_limit);
        let i = w.intern(&s.flatten());
        let j = w.intern(&t.flatten());
        w.leq(i, j)
    }

    pub fn equiv(&self, s: &Term, t: &Term) -> Result<bool> {
        let mut w = Whitman::new(self.memo_limit);
        let i = w.intern(&s.flatten());
        let j = w.intern(&t.flatten());
        Ok(w.leq(i, j)? && w.leq(j, i)?)
    }
}

pub fn term_leq(s: &Term, t: &Term) -> Result<bool> {
    TermOrder::default().leq(s, t)
}

pub fn term_equiv(s: &Term, t: &Term) -> Result<bool> {
    TermOrder::default().equiv(s, t)
}

enum Node {
    Atom(AtomicTerm),
    Meet(Vec<usize>),
    Join(Vec<usize>),
}

/// Hash-consed flat terms plus the memo of decided pairs. Every pair visited
/// by the recursion is (subterm of the left input, subterm of the right
/// input), so the memo is bounded by the product of the subterm counts.
struct Whitman {
    nodes: Vec<Node>,
    ids: HashMap<FlatTerm, usize>,
    memo: HashMap<(usize, usize), bool>,
    limit: usize,
}

impl Whitman {
    fn new(limit: usize) -> Self {
        Whitman {
            nodes: Vec::new(),
            ids: HashMap::new(),
            memo: HashMap::new(),
            limit,
        }
    }

    fn intern(&mut self, t: &FlatTerm) -> usize {
        if let Some(&id) = self.ids.get(t) {
            return id;
        }
        let node = match t {
            FlatTerm::Atom(x) => Node::Atom(x.clone()),
            FlatTerm::Meet(xs) => Node::Meet(xs.iter().map(|x| self.intern(x)).collect()),
            FlatTerm::Join(xs) => Node::Join(xs.iter().map(|x| self.intern(x)).collect()),
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        self.ids.insert(t.clone(), id);
        id
    }

    fn leq(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(&(i, j)) {
            return Ok(known);
        }
        if self.memo.len() >= self.limit {
            return Err(Error::ResourceLimit(format!(
                "term comparison exceeded {} memo entries",
                self.limit
            )));
        }
        let result = match (&self.nodes[i], &self.nodes[j]) {
            (Node::Join(xs), _) => {
                let xs = xs.clone();
                self.all(&xs, |w, x| w.leq(x, j))?
            }
            (_, Node::Meet(ys)) => {
                let ys = ys.clone();
                self.all(&ys, |w, y| w.leq(i, y))?
            }
            (Node::Atom(x), Node::Atom(y)) => x == y,
            (Node::Atom(_), Node::Join(ys)) => {
                let ys = ys.clone();
                self.any(&ys, |w, y| w.leq(i, y))?
            }
            (Node::Meet(xs), Node::Atom(_)) => {
                let xs = xs.clone();
                self.any(&xs, |w, x| w.leq(x, j))?
            }
            (Node::Meet(xs), Node::Join(ys)) => {
                let (xs, ys) = (xs.clone(), ys.clone());
                self.any(&xs, |w, x| w.leq(x, j))? || self.any(&ys, |w, y| w.leq(i, y))?
            }
        };
        self.memo.insert((i, j), result);
        Ok(result)
    }

    fn all(
        &mut self,
        ids: &[usize],
        mut f: impl FnMut(&mut Self, usize) -> Result<bool>,
    ) -> Result<bool> {
        for &k in ids {
            if !f(self, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn any(
        &mut self,
        ids: &[usize],
        mut f: impl FnMut(&mut Self, usize) -> Result<bool>,
    ) -> Result<bool> {
        for &k in ids {
            if f(self, k)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    fn leq(s: &str, u: &str) -> bool {
        term_leq(&t(s), &t(u)).unwrap()
    }

    fn equiv(s: &str, u: &str) -> bool {
        term_equiv(&t(s), &t(u)).unwrap()
    }

    #[test]
    fn lattice_bounds() {
        assert!(leq("x", "x"));
        assert!(leq("x*y", "x"));
        assert!(leq("x", "x+y"));
        assert!(!leq("x", "x*y"));
        assert!(!leq("x+y", "x"));
    }

    #[test]
    fn distributive_inequality_holds_one_way() {
        assert!(leq("b*a + c*a", "(b+c)*a"));
        assert!(!leq("(b+c)*a", "b*a + c*a"));
    }

    #[test]
    fn lattice_identities() {
        assert!(equiv("x*y", "y*x"));
        assert!(equiv("x", "x*(x+y)"));
        assert!(equiv("x", "x+x*y"));
        assert!(equiv("(x+y)+z", "x+(y+z)"));
        assert!(!equiv("x", "y"));
    }

    #[test]
    fn modular_law_fails_in_free_lattice() {
        // x <= z does not give x+(y*z) = (x+y)*z without modularity
        assert!(!leq("(a+b)*(a+c)", "a+(b*(a+c))"));
        assert!(leq("a+(b*(a+c))", "(a+b)*(a+c)"));
    }

    #[test]
    fn map_atoms_homomorphism() {
        let id = |x: &AtomicTerm| Term::Atom(x.clone());
        assert_eq!(map_atoms(&t("a*(b+c)"), id), t("a*(b+c)"));

        let h = |x: &AtomicTerm| match x.name() {
            "a" => t("a*c"),
            _ => Term::Atom(x.clone()),
        };
        assert_eq!(map_atoms(&t("a+b"), h), t("(a*c)+b"));

        let g = |_: &AtomicTerm| t("b+c");
        let img = map_atoms(&t("a*a"), g);
        assert_eq!(img, t("(b+c)*(b+c)"));
        assert!(term_equiv(&img, &t("b+c")).unwrap());
    }

    #[test]
    fn flatten_normal_forms() {
        let a = || FlatTerm::Atom("a".into());
        let b = || FlatTerm::Atom("b".into());
        let c = || FlatTerm::Atom("c".into());
        assert_eq!(t("(a+b)+a").flatten(), FlatTerm::Join(vec![a(), b()]));
        assert_eq!(t("a*(b*c)").flatten(), FlatTerm::Meet(vec![a(), b(), c()]));
        assert_eq!(t("x").flatten(), FlatTerm::Atom("x".into()));
        // collapsing a meet exposes a join that merges into the parent
        assert_eq!(
            t("((a+b)*(b+a))+c").flatten(),
            FlatTerm::Join(vec![a(), b(), c()])
        );
    }

    #[test]
    fn flat_to_term_round_trip() {
        let f = t("c+(a*b)+a").flatten();
        assert_eq!(f.to_term().flatten(), f);
    }

    #[test]
    fn signature_rejects_foreign_atoms() {
        let sig: Signature = ["a", "b"].into_iter().map(AtomicTerm::from).collect();
        assert!(sig.leq(&t("a*b"), &t("a")).unwrap());
        assert!(matches!(
            sig.leq(&t("a"), &t("a+z")),
            Err(Error::UnknownAtom(name)) if name == "z"
        ));
    }

    #[test]
    fn memo_guard_reports_resource_error() {
        let order = TermOrder::with_memo_limit(2);
        let s = t("(a*b)+(b*c)+(c*a)");
        let u = t("(a+b)*(b+c)*(c+a)*(a+b+c)");
        assert!(matches!(order.leq(&u, &s), Err(Error::ResourceLimit(_))));
        assert!(!TermOrder::default().leq(&u, &s).unwrap());
    }
}
