//! Brute-force semantic order on terms.
//!
//! `s` is below `t` semantically (at size `n`) when the relation of `s` is
//! contained in the relation of `t` under every assignment of partitions of
//! an `n`-element set to the atoms. Relations on at most 5 points fit in a
//! `u32`, so the whole enumeration runs on bitmasks and shares no code with
//! the model engine or with the syntactic decision procedure.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::term::{AtomicTerm, Term};

pub const DEFAULT_ORACLE_STATES: usize = 5;

const DEFAULT_ASSIGNMENT_LIMIT: usize = 10_000_000;

/// All assignments of partitions of `{0..n}` to a fixed list of atoms.
pub struct PartitionOracle {
    atoms: Vec<AtomicTerm>,
    n: usize,
    partitions: Vec<u32>,
    assignments: usize,
}

fn bit(n: usize, i: usize, j: usize) -> u32 {
    1 << (i * n + j)
}

/// Every set partition of `{0..n}`, as an equivalence relation bitmask.
fn partitions(n: usize) -> Vec<u32> {
    // restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[..i])
    fn grow(n: usize, labels: &mut Vec<usize>, out: &mut Vec<u32>) {
        if labels.len() == n {
            let mut rel = 0;
            for i in 0..n {
                for j in 0..n {
                    if labels[i] == labels[j] {
                        rel |= bit(n, i, j);
                    }
                }
            }
            out.push(rel);
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            labels.push(label);
            grow(n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    grow(n, &mut Vec::with_capacity(n), &mut out);
    out
}

fn closure(n: usize, mut rel: u32) -> u32 {
    for i in 0..n {
        rel |= bit(n, i, i);
    }
    for k in 0..n {
        for i in 0..n {
            if rel & bit(n, i, k) != 0 {
                for j in 0..n {
                    if rel & bit(n, k, j) != 0 {
                        rel |= bit(n, i, j);
                    }
                }
            }
        }
    }
    rel
}

impl PartitionOracle {
    pub fn new(atoms: impl IntoIterator<Item = AtomicTerm>, n: usize) -> Result<Self> {
        Self::with_limits(atoms, n, DEFAULT_ORACLE_STATES, DEFAULT_ASSIGNMENT_LIMIT)
    }

    pub fn with_limits(
        atoms: impl IntoIterator<Item = AtomicTerm>,
        n: usize,
        max_states: usize,
        max_assignments: usize,
    ) -> Result<Self> {
        let mut atoms: Vec<AtomicTerm> = atoms.into_iter().collect();
        atoms.sort();
        atoms.dedup();
        if n == 0 || n > max_states {
            return Err(Error::ResourceLimit(format!(
                "oracle size {n} outside 1..={max_states}"
            )));
        }
        let partitions = partitions(n);
        let assignments = (0..atoms.len()).try_fold(1usize, |acc, _| {
            acc.checked_mul(partitions.len())
                .filter(|&total| total <= max_assignments)
        });
        let Some(assignments) = assignments else {
            return Err(Error::ResourceLimit(format!(
                "{} partitions over {} atoms exceed {max_assignments} assignments",
                partitions.len(),
                atoms.len()
            )));
        };
        Ok(PartitionOracle {
            atoms,
            n,
            partitions,
            assignments,
        })
    }

    pub fn assignment_count(&self) -> usize {
        self.assignments
    }

    fn partition_index(&self, assignment: usize, atom: usize) -> usize {
        let base = self.partitions.len();
        (assignment / base.pow(atom as u32)) % base
    }

    /// The relation of `t` under each assignment, in enumeration order.
    pub fn profile(&self, t: &Term) -> Result<Vec<u32>> {
        Ok(match t {
            Term::Atom(x) => {
                let k = self
                    .atoms
                    .binary_search(x)
                    .map_err(|_| Error::UnknownAtom(x.to_string()))?;
                (0..self.assignments)
                    .map(|a| self.partitions[self.partition_index(a, k)])
                    .collect()
            }
            Term::Meet(l, r) => {
                let (l, r) = (self.profile(l)?, self.profile(r)?);
                l.iter().zip(&r).map(|(a, b)| a & b).collect()
            }
            Term::Join(l, r) => {
                let (l, r) = (self.profile(l)?, self.profile(r)?);
                l.iter().zip(&r).map(|(a, b)| closure(self.n, a | b)).collect()
            }
        })
    }

    pub fn leq(&self, s: &Term, t: &Term) -> Result<bool> {
        Ok(self.countermodel(s, t)?.is_none())
    }

    /// An assignment under which the relation of `s` is not contained in the
    /// relation of `t`.
    pub fn countermodel(&self, s: &Term, t: &Term) -> Result<Option<PartitionWitness>> {
        let (ps, pt) = (self.profile(s)?, self.profile(t)?);
        Ok(ps
            .iter()
            .zip(&pt)
            .position(|(a, b)| a & !b != 0)
            .map(|a| self.witness(a, ps[a] & !pt[a])))
    }

    /// Like [`countermodel`](Self::countermodel) but on precomputed profiles.
    pub fn countermodel_from_profiles(&self, ps: &[u32], pt: &[u32]) -> Option<PartitionWitness> {
        ps.iter()
            .zip(pt)
            .position(|(a, b)| a & !b != 0)
            .map(|a| self.witness(a, ps[a] & !pt[a]))
    }

    fn witness(&self, assignment: usize, gap: u32) -> PartitionWitness {
        let n = self.n;
        let blocks = self
            .atoms
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let rel = self.partitions[self.partition_index(assignment, k)];
                let mut seen = 0u32;
                let mut classes = Vec::new();
                for i in 0..n {
                    if seen & (1 << i) == 0 {
                        let class: Vec<usize> =
                            (0..n).filter(|&j| rel & bit(n, i, j) != 0).collect();
                        for &j in &class {
                            seen |= 1 << j;
                        }
                        classes.push(class.into_iter().map(|j| j + 1).collect());
                    }
                }
                (x.clone(), classes)
            })
            .collect();
        let pos = gap.trailing_zeros() as usize;
        PartitionWitness {
            size: n,
            blocks,
            pair: (pos / n + 1, pos % n + 1),
        }
    }
}

/// Partitions of `{1..size}` for each atom, plus one pair related by the left
/// term but not by the right one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    pub size: usize,
    pub blocks: BTreeMap<AtomicTerm, Vec<Vec<usize>>>,
    pub pair: (usize, usize),
}

impl fmt::Display for PartitionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, classes) in &self.blocks {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let shown: Vec<String> = classes
                .iter()
                .map(|c| {
                    let members: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                    format!("{{{}}}", members.join(","))
                })
                .collect();
            write!(f, "{x}={{{}}}", shown.join(","))?;
        }
        write!(f, " separating pair ({},{})", self.pair.0, self.pair.1)
    }
}

/// `s <= t` on every assignment of partitions of a `max_states`-element set.
pub fn semantic_term_leq(s: &Term, t: &Term, max_states: usize) -> Result<bool> {
    let atoms = s.atoms().into_iter().chain(t.atoms());
    PartitionOracle::new(atoms, max_states)?.leq(s, t)
}
