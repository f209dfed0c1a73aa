//! Fischer-Ladner closure, single negation, and a syntactic approximation
//! of atoms over the closure.
//!
//! Formulas are first rewritten into the core language (`[t]phi` becomes
//! `~<t>~phi`), since the closure conditions are stated for diamonds.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::term::{term_leq, Term};

pub type FormulaSet = BTreeSet<Formula>;

/// Bound on the number of formulas a closure may hold.
pub const DEFAULT_CLOSURE_LIMIT: usize = 100_000;

/// Bound on candidate truth assignments examined by [`pseudo_atoms`].
pub const DEFAULT_CANDIDATE_LIMIT: usize = 1 << 20;

fn core_static(f: &Formula) -> Result<Formula> {
    if !f.is_static() {
        return Err(Error::DynamicOperator(f.to_string()));
    }
    Ok(f.to_core())
}

/// Formulas the closure conditions demand once `f` is present.
fn obligations(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::Prop(_) => vec![],
        Formula::Not(g) => vec![(**g).clone()],
        Formula::Or(l, r) => vec![(**l).clone(), (**r).clone()],
        Formula::Diamond(t, g) => {
            let mut out = vec![(**g).clone()];
            match t {
                Term::Meet(l, r) => out.push(
                    Formula::diamond((**l).clone(), (**g).clone())
                        .and(Formula::diamond((**r).clone(), (**g).clone())),
                ),
                Term::Join(l, r) => {
                    out.push(Formula::diamond((**l).clone(), f.clone()));
                    out.push(Formula::diamond((**r).clone(), f.clone()));
                }
                Term::Atom(_) => {}
            }
            out
        }
        Formula::Box(..) | Formula::Bang { .. } | Formula::Event { .. } => {
            unreachable!("closure works on static core formulas")
        }
    }
}

/// The least FL-closed superset of `fs`.
pub fn fl_closure(fs: &FormulaSet) -> Result<FormulaSet> {
    fl_closure_with_limit(fs, DEFAULT_CLOSURE_LIMIT)
}

pub fn fl_closure_with_limit(fs: &FormulaSet, limit: usize) -> Result<FormulaSet> {
    let mut out = FormulaSet::new();
    let mut pending: Vec<Formula> = fs.iter().map(core_static).collect::<Result<_>>()?;
    while let Some(f) = pending.pop() {
        if out.contains(&f) {
            continue;
        }
        if out.len() >= limit {
            return Err(Error::ResourceLimit(format!(
                "closure grew past {limit} formulas"
            )));
        }
        pending.extend(obligations(&f).into_iter().filter(|g| !out.contains(g)));
        out.insert(f);
    }
    Ok(out)
}

/// `~phi` is `psi` when `phi` is `~psi`, and `~phi` otherwise.
pub fn single_negation(f: &Formula) -> Formula {
    match f {
        Formula::Not(g) => (**g).clone(),
        _ => f.clone().not(),
    }
}

/// The least set containing `fs` that is FL-closed and closed under single
/// negations.
pub fn neg_fl_closure(fs: &FormulaSet) -> Result<FormulaSet> {
    let mut current = fl_closure(fs)?;
    loop {
        let negated: FormulaSet = current
            .iter()
            .map(single_negation)
            .filter(|g| !current.contains(g))
            .collect();
        if negated.is_empty() {
            return Ok(current);
        }
        current.extend(negated);
        current = fl_closure(&current)?;
    }
}

/// Maximal subsets `A` of the negation closure such that
///
/// * exactly one of `phi` and its single negation is in `A`,
/// * a disjunction is in `A` iff one of its disjuncts is,
/// * `<s>phi` in `A` and `s <= t` put `<t>phi` in `A` (both in the closure),
/// * `<t+s>phi` is in `A` iff `phi`, `<t><t+s>phi` or `<s><t+s>phi` is.
///
/// Consistency in the proof system is not checked, so this over-approximates
/// the true atoms; every set of formulas true at a state of a regular model
/// is among the results.
pub fn pseudo_atoms(fs: &FormulaSet) -> Result<Vec<FormulaSet>> {
    pseudo_atoms_with_limit(fs, DEFAULT_CANDIDATE_LIMIT)
}

pub fn pseudo_atoms_with_limit(fs: &FormulaSet, limit: usize) -> Result<Vec<FormulaSet>> {
    let closure: Vec<Formula> = neg_fl_closure(fs)?.into_iter().collect();
    let position = |f: &Formula| closure.binary_search(f).ok();

    // propositions and diamonds are free; negations and disjunctions follow
    let free: Vec<usize> = (0..closure.len())
        .filter(|&i| matches!(closure[i], Formula::Prop(_) | Formula::Diamond(..)))
        .collect();
    if free.len() >= usize::BITS as usize || (1usize << free.len()) > limit {
        return Err(Error::ResourceLimit(format!(
            "{} free formulas exceed {limit} candidate assignments",
            free.len()
        )));
    }

    let diamonds: Vec<(usize, &Term, &Formula)> = closure
        .iter()
        .enumerate()
        .filter_map(|(i, f)| match f {
            Formula::Diamond(t, g) => Some((i, t, g.as_ref())),
            _ => None,
        })
        .collect();
    let mut monotone = Vec::new();
    for &(i, s, g) in &diamonds {
        for &(j, t, h) in &diamonds {
            if i != j && g == h && term_leq(s, t)? {
                monotone.push((i, j));
            }
        }
    }
    let mut unfold = Vec::new();
    for &(i, t, g) in &diamonds {
        if let Term::Join(l, r) = t {
            let f = &closure[i];
            let parts = [
                position(g),
                position(&Formula::diamond((**l).clone(), f.clone())),
                position(&Formula::diamond((**r).clone(), f.clone())),
            ];
            let parts: Vec<usize> = parts.into_iter().flatten().collect();
            unfold.push((i, parts));
        }
    }

    enum Derived {
        Not(usize, usize),
        Or(usize, usize, usize),
    }
    // smaller formulas first, so children are settled before their parents
    let mut by_size: Vec<usize> = (0..closure.len()).collect();
    by_size.sort_by_key(|&i| closure[i].size());
    let derived: Vec<Derived> = by_size
        .into_iter()
        .filter_map(|i| match &closure[i] {
            Formula::Not(g) => Some(Derived::Not(i, position(g).expect("closed"))),
            Formula::Or(l, r) => Some(Derived::Or(
                i,
                position(l).expect("closed"),
                position(r).expect("closed"),
            )),
            _ => None,
        })
        .collect();

    let mut atoms = Vec::new();
    let mut truth = vec![false; closure.len()];
    for bits in 0..(1usize << free.len()) {
        for (k, &i) in free.iter().enumerate() {
            truth[i] = bits & (1 << k) != 0;
        }
        for d in &derived {
            match *d {
                Derived::Not(i, g) => truth[i] = !truth[g],
                Derived::Or(i, l, r) => truth[i] = truth[l] || truth[r],
            }
        }
        let ok = monotone.iter().all(|&(i, j)| !truth[i] || truth[j])
            && unfold
                .iter()
                .all(|(i, parts)| truth[*i] == parts.iter().any(|&k| truth[k]));
        if ok {
            atoms.push(
                closure
                    .iter()
                    .zip(&truth)
                    .filter(|(_, &holds)| holds)
                    .map(|(f, _)| f.clone())
                    .collect(),
            );
        }
    }
    Ok(atoms)
}
