//! Finite regular models.
//!
//! Only the atomic relations are stored. The relation of a compound term is
//! computed on demand: a meet is the intersection of its parts and a join is
//! the reflexive-transitive closure of their union.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::{AtomicTerm, Signature, Term};

/// A set of state indices.
pub type StateSet = FixedBitSet;

/// Propositions that [`random_model`] assigns.
pub const PROPOSITION_POOL: [&str; 3] = ["p", "q", "r"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "S5", alias = "s5")]
    S5,
    #[serde(rename = "S4", alias = "s4")]
    S4,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::S5 => f.write_str("S5"),
            Mode::S4 => f.write_str("S4"),
        }
    }
}

/// Binary relation on `0..n` stored as one bit row per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn total(n: usize) -> Self {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert_range(..);
        Relation { rows: vec![row; n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    /// The equivalence relation whose classes are the given blocks.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Self {
        let mut r = Relation::empty(n);
        for block in blocks {
            for &i in block.as_ref() {
                for &j in block.as_ref() {
                    r.insert(i, j);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn successors(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.intersect_with(b);
                row
            })
            .collect();
        Relation { rows }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.union_with(b);
                row
            })
            .collect();
        Relation { rows }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(i, j)| self.rows[j].is_subset(&self.rows[i]))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.is_symmetric()
    }

    /// Classes of an equivalence relation, ordered by least member.
    pub fn blocks(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_equivalence() {
            return None;
        }
        let mut seen = FixedBitSet::with_capacity(self.size());
        let mut out = Vec::new();
        for i in 0..self.size() {
            if !seen.contains(i) {
                seen.union_with(&self.rows[i]);
                out.push(self.rows[i].ones().collect());
            }
        }
        Some(out)
    }

    /// States with at least one successor in `target`.
    pub fn preimage(&self, target: &StateSet) -> StateSet {
        let mut out = FixedBitSet::with_capacity(self.size());
        for (i, row) in self.rows.iter().enumerate() {
            if !row.is_disjoint(target) {
                out.insert(i);
            }
        }
        out
    }

    /// States all of whose successors lie in `target`.
    pub fn universal_preimage(&self, target: &StateSet) -> StateSet {
        let mut out = FixedBitSet::with_capacity(self.size());
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_subset(target) {
                out.insert(i);
            }
        }
        out
    }
}

/// Reflexive-transitive closure (Warshall).
pub fn rtc(r: &Relation) -> Relation {
    let n = r.size();
    let mut out = r.clone();
    for i in 0..n {
        out.insert(i, i);
    }
    for k in 0..n {
        let via = out.rows[k].clone();
        for i in 0..n {
            if i != k && out.rows[i].contains(k) {
                out.rows[i].union_with(&via);
            }
        }
    }
    out
}

/// A set of points with one relation per atomic term. Both models and event
/// models are frames.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    size: usize,
    relations: BTreeMap<AtomicTerm, Relation>,
}

impl Frame {
    pub fn new(size: usize, relations: BTreeMap<AtomicTerm, Relation>) -> Result<Self> {
        if let Some((x, _)) = relations.iter().find(|(_, r)| r.size() != size) {
            return Err(Error::Malformed(format!(
                "relation for `{x}` does not have dimension {size}"
            )));
        }
        Ok(Frame { size, relations })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> Signature {
        self.relations.keys().cloned().collect()
    }

    pub fn atomic_relations(&self) -> &BTreeMap<AtomicTerm, Relation> {
        &self.relations
    }

    pub fn relation(&self, x: &AtomicTerm) -> Result<&Relation> {
        self.relations
            .get(x)
            .ok_or_else(|| Error::UnknownAtom(x.to_string()))
    }

    /// The relation of an arbitrary term, with no memoization across calls.
    pub fn relation_of(&self, t: &Term) -> Result<Relation> {
        RelationCache::new(self).relation_of(t)
    }

    /// S5 when every atomic relation is an equivalence, S4 when every one is
    /// a preorder, otherwise `None`.
    pub fn detect_mode(&self) -> Option<Mode> {
        if self.relations.values().all(Relation::is_equivalence) {
            Some(Mode::S5)
        } else if self.relations.values().all(Relation::is_preorder) {
            Some(Mode::S4)
        } else {
            None
        }
    }

    pub(crate) fn violations(&self, names: &[String], mode: Mode) -> Vec<Violation> {
        let mut out = Vec::new();
        for (x, r) in &self.relations {
            let atom = x.to_string();
            for (i, name) in names.iter().enumerate().take(self.size) {
                if !r.contains(i, i) {
                    out.push(Violation::NotReflexive {
                        atom: atom.clone(),
                        state: name.clone(),
                    });
                }
            }
            if mode == Mode::S5 {
                for (i, j) in r.pairs() {
                    if !r.contains(j, i) {
                        out.push(Violation::NotSymmetric {
                            atom: atom.clone(),
                            from: names[i].clone(),
                            to: names[j].clone(),
                        });
                    }
                }
            }
            for (i, j) in r.pairs() {
                for k in r.successors(j).ones() {
                    if !r.contains(i, k) {
                        out.push(Violation::NotTransitive {
                            atom: atom.clone(),
                            from: names[i].clone(),
                            via: names[j].clone(),
                            to: names[k].clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Per-session memo of term relations over one frame, keyed by the term tree
/// itself so that lattice identities are computed rather than assumed.
pub struct RelationCache<'a> {
    frame: &'a Frame,
    memo: HashMap<Term, Relation>,
    expect: Option<Mode>,
}

impl<'a> RelationCache<'a> {
    pub fn new(frame: &'a Frame) -> Self {
        let expect = if cfg!(debug_assertions) {
            frame.detect_mode()
        } else {
            None
        };
        RelationCache {
            frame,
            memo: HashMap::new(),
            expect,
        }
    }

    pub fn frame(&self) -> &'a Frame {
        self.frame
    }

    pub fn relation_of(&mut self, t: &Term) -> Result<Relation> {
        if let Some(r) = self.memo.get(t) {
            return Ok(r.clone());
        }
        let r = match t {
            Term::Atom(x) => self.frame.relation(x)?.clone(),
            Term::Meet(l, r) => {
                let left = self.relation_of(l)?;
                left.intersection(&self.relation_of(r)?)
            }
            Term::Join(l, r) => {
                let left = self.relation_of(l)?;
                rtc(&left.union(&self.relation_of(r)?))
            }
        };
        match self.expect {
            Some(Mode::S5) => debug_assert!(r.is_equivalence(), "{t} is not an equivalence"),
            Some(Mode::S4) => debug_assert!(r.is_preorder(), "{t} is not a preorder"),
            None => {}
        }
        self.memo.insert(t.clone(), r.clone());
        Ok(r)
    }
}

/// A finite model: named states, a frame of atomic relations, a valuation and
/// the mode the model claims to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    mode: Mode,
    states: Vec<String>,
    frame: Frame,
    valuation: BTreeMap<String, StateSet>,
}

impl Model {
    pub fn new(
        mode: Mode,
        states: Vec<String>,
        relations: BTreeMap<AtomicTerm, Relation>,
        valuation: BTreeMap<String, StateSet>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Malformed("a model needs at least one state".into()));
        }
        let mut sorted = states.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("duplicate state `{}`", w[0])));
        }
        let valuation = valuation
            .into_iter()
            .map(|(p, mut set)| {
                if set.ones().any(|i| i >= n) {
                    return Err(Error::Malformed(format!(
                        "valuation of `{p}` mentions a state outside the model"
                    )));
                }
                set.grow(n);
                Ok((p, set))
            })
            .collect::<Result<_>>()?;
        Ok(Model {
            mode,
            states,
            frame: Frame::new(n, relations)?,
            valuation,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn signature(&self) -> Signature {
        self.frame.signature()
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.valuation
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn state_names(&self, set: &StateSet) -> Vec<String> {
        set.ones().map(|i| self.states[i].clone()).collect()
    }

    pub fn relation_of(&self, t: &Term) -> Result<Relation> {
        self.frame.relation_of(t)
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            violations: self.frame.violations(&self.states, self.mode),
        }
    }

    pub fn detect_mode(&self) -> Option<Mode> {
        self.frame.detect_mode()
    }

    /// Same states, valuation and mode over a different frame.
    pub(crate) fn with_frame(&self, frame: Frame) -> Model {
        debug_assert_eq!(frame.size(), self.len());
        Model {
            mode: self.mode,
            states: self.states.clone(),
            frame,
            valuation: self.valuation.clone(),
        }
    }
}

pub fn relation_of(m: &Model, t: &Term) -> Result<Relation> {
    m.relation_of(t)
}

pub fn validate_model(m: &Model) -> ValidationReport {
    m.validate()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive {
        atom: String,
        state: String,
    },
    NotSymmetric {
        atom: String,
        from: String,
        to: String,
    },
    NotTransitive {
        atom: String,
        from: String,
        via: String,
        to: String,
    },
    /// Two events related by `atom` read terms that are not equivalent.
    ReadingMismatch {
        atom: String,
        left: String,
        right: String,
        left_reading: String,
        right_reading: String,
    },
    NoEvents,
    ForeignAtom {
        context: String,
        atom: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive { atom, state } => {
                write!(f, "{atom}: not reflexive at {state}")
            }
            Violation::NotSymmetric { atom, from, to } => {
                write!(f, "{atom}: not symmetric, has {from}->{to} but not {to}->{from}")
            }
            Violation::NotTransitive {
                atom,
                from,
                via,
                to,
            } => write!(
                f,
                "{atom}: not transitive, has {from}->{via}->{to} but not {from}->{to}"
            ),
            Violation::ReadingMismatch {
                atom,
                left,
                right,
                left_reading,
                right_reading,
            } => write!(
                f,
                "{atom}: events {left} and {right} are related but read {left_reading} and {right_reading}, which are not equivalent"
            ),
            Violation::NoEvents => write!(f, "event model has no events"),
            Violation::ForeignAtom { context, atom } => {
                write!(f, "{context}: atomic term `{atom}` is not in the signature")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidModel(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Random equivalence relation: every element draws a label from a random
/// number of blocks.
pub(crate) fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Relation {
    let k = rng.gen_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Relation::from_pairs(
        n,
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| labels[i] == labels[j]),
    )
}

pub(crate) fn random_preorder<R: Rng>(rng: &mut R, n: usize) -> Relation {
    let density: f64 = rng.gen_range(0.05..0.5);
    let mut r = Relation::empty(n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                r.insert(i, j);
            }
        }
    }
    rtc(&r)
}

/// A deterministic random model: random partitions per atom in S5 mode,
/// closures of random edge sets in S4 mode, and a random valuation of
/// [`PROPOSITION_POOL`].
pub fn random_model(seed: u64, n_states: usize, signature: &Signature, mode: Mode) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model_with(&mut rng, n_states, signature, mode)
}

pub fn random_model_with<R: Rng>(
    rng: &mut R,
    n_states: usize,
    signature: &Signature,
    mode: Mode,
) -> Model {
    assert!(n_states >= 1, "a model needs at least one state");
    let states = (1..=n_states).map(|i| format!("w{i}")).collect();
    let relations = signature
        .iter()
        .map(|x| {
            let r = match mode {
                Mode::S5 => random_partition(rng, n_states),
                Mode::S4 => random_preorder(rng, n_states),
            };
            (x.clone(), r)
        })
        .collect();
    let valuation = PROPOSITION_POOL
        .iter()
        .map(|p| {
            let mut set = FixedBitSet::with_capacity(n_states);
            for i in 0..n_states {
                set.set(i, rng.gen_bool(0.5));
            }
            (p.to_string(), set)
        })
        .collect();
    Model::new(mode, states, relations, valuation).expect("generated model is well formed")
}
