//! Soundness suite: random instances of every axiom schema, checked for
//! validity on random models.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::gen::{random_term, FormulaGen};
use crate::kripke::{random_model_with, Mode, Model};
use crate::term::{AtomicTerm, Signature, Term};

use super::eval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    K,
    T,
    Four,
    Five,
    Dual,
    IdempotencyMeet,
    IdempotencyJoin,
    CommutativityMeet,
    CommutativityJoin,
    AssociativityMeet,
    AssociativityJoin,
    AbsorptionMeet,
    AbsorptionJoin,
    FixedPoint,
    Induction,
}

impl Schema {
    pub const ALL: [Schema; 15] = [
        Schema::K,
        Schema::T,
        Schema::Four,
        Schema::Five,
        Schema::Dual,
        Schema::IdempotencyMeet,
        Schema::IdempotencyJoin,
        Schema::CommutativityMeet,
        Schema::CommutativityJoin,
        Schema::AssociativityMeet,
        Schema::AssociativityJoin,
        Schema::AbsorptionMeet,
        Schema::AbsorptionJoin,
        Schema::FixedPoint,
        Schema::Induction,
    ];

    /// Schemas sound for the given mode: all of them for S5, all but 5 for S4.
    pub fn for_mode(mode: Mode) -> Vec<Schema> {
        Schema::ALL
            .into_iter()
            .filter(|s| mode == Mode::S5 || *s != Schema::Five)
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Schema::K => "K",
            Schema::T => "T",
            Schema::Four => "4",
            Schema::Five => "5",
            Schema::Dual => "dual",
            Schema::IdempotencyMeet => "idempotency(*)",
            Schema::IdempotencyJoin => "idempotency(+)",
            Schema::CommutativityMeet => "commutativity(*)",
            Schema::CommutativityJoin => "commutativity(+)",
            Schema::AssociativityMeet => "associativity(*)",
            Schema::AssociativityJoin => "associativity(+)",
            Schema::AbsorptionMeet => "absorption(*)",
            Schema::AbsorptionJoin => "absorption(+)",
            Schema::FixedPoint => "FP",
            Schema::Induction => "INDUC",
        }
    }

    /// The instance for terms `rho`, `sigma`, `tau` and formulas `phi`, `psi`.
    /// Schemas ignore the arguments they do not mention.
    pub fn instantiate(
        self,
        rho: &Term,
        sigma: &Term,
        tau: &Term,
        phi: &Formula,
        psi: &Formula,
    ) -> Formula {
        let (r, s, t) = (rho.clone(), sigma.clone(), tau.clone());
        let dia = |t: Term, f: Formula| Formula::diamond(t, f);
        let bx = |t: Term, f: Formula| Formula::boxed(t, f);
        let p = phi.clone();
        match self {
            Schema::K => bx(t.clone(), p.clone().implies(psi.clone()))
                .implies(bx(t.clone(), p).implies(bx(t, psi.clone()))),
            Schema::T => bx(t, p.clone()).implies(p),
            Schema::Four => bx(t.clone(), p.clone()).implies(bx(t.clone(), bx(t, p))),
            Schema::Five => bx(t.clone(), p.clone())
                .not()
                .implies(bx(t.clone(), bx(t, p).not())),
            Schema::Dual => dia(t.clone(), p.clone()).iff(bx(t, p.not()).not()),
            Schema::IdempotencyMeet => dia(t.clone().meet(t.clone()), p.clone()).iff(dia(t, p)),
            Schema::IdempotencyJoin => dia(t.clone().join(t.clone()), p.clone()).iff(dia(t, p)),
            Schema::CommutativityMeet => {
                dia(t.clone().meet(s.clone()), p.clone()).iff(dia(s.meet(t), p))
            }
            Schema::CommutativityJoin => {
                dia(t.clone().join(s.clone()), p.clone()).iff(dia(s.join(t), p))
            }
            Schema::AssociativityMeet => dia(r.clone().meet(s.clone()).meet(t.clone()), p.clone())
                .iff(dia(r.meet(s.meet(t)), p)),
            Schema::AssociativityJoin => dia(r.clone().join(s.clone()).join(t.clone()), p.clone())
                .iff(dia(r.join(s.join(t)), p)),
            Schema::AbsorptionMeet => {
                dia(t.clone().meet(t.clone().join(s)), p.clone()).iff(dia(t, p))
            }
            Schema::AbsorptionJoin => {
                dia(t.clone().join(t.clone().meet(s)), p.clone()).iff(dia(t, p))
            }
            Schema::FixedPoint => {
                let ts = t.clone().join(s.clone());
                let unfold = p.clone().or(dia(t, dia(ts.clone(), p.clone()))
                    .or(dia(s, dia(ts.clone(), p.clone()))));
                dia(ts, p).iff(unfold)
            }
            Schema::Induction => {
                let ts = t.clone().join(s.clone());
                let step = p.clone().implies(bx(t, p.clone()).and(bx(s, p.clone())));
                bx(ts.clone(), step).implies(p.clone().implies(bx(ts, p)))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub mode: Mode,
    pub n_models: usize,
    pub seed: u64,
    pub instances_per_schema: usize,
    pub max_states: usize,
    pub atoms: Vec<AtomicTerm>,
    pub props: Vec<String>,
    pub term_depth: usize,
    pub formula_depth: usize,
    pub schemas: Vec<Schema>,
}

impl SuiteConfig {
    /// 20 instances per schema, models of at most 6 states over `a`, `b`,
    /// `c`, formulas of depth 2 over `p`, `q`, terms of depth 2.
    pub fn new(mode: Mode, n_models: usize, seed: u64) -> Self {
        SuiteConfig {
            mode,
            n_models,
            seed,
            instances_per_schema: 20,
            max_states: 6,
            atoms: ["a", "b", "c"].into_iter().map(AtomicTerm::from).collect(),
            props: vec!["p".into(), "q".into()],
            term_depth: 2,
            formula_depth: 2,
            schemas: Schema::for_mode(mode),
        }
    }

    pub fn random_models(&self) -> Vec<Model> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let sig: Signature = self.atoms.iter().cloned().collect();
        (0..self.n_models)
            .map(|_| {
                let n = rng.gen_range(1..=self.max_states);
                random_model_with(&mut rng, n, &sig, self.mode)
            })
            .collect()
    }

    /// Runs the configured schemas on freshly generated random models.
    pub fn run(&self) -> SuiteReport {
        self.run_on(&self.random_models())
    }

    /// Runs the configured schemas on the given models.
    pub fn run_on(&self, models: &[Model]) -> SuiteReport {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed_a710);
        let props: Vec<&str> = self.props.iter().map(String::as_str).collect();
        let gen = FormulaGen::new(&props, &self.atoms).term_depth(1);
        let mut report = SuiteReport {
            mode: self.mode,
            models: models.len(),
            ..SuiteReport::default()
        };
        for &schema in &self.schemas {
            let tally = report.per_schema.entry(schema).or_default();
            for _ in 0..self.instances_per_schema {
                let mut term = || random_term(&mut rng, &self.atoms, self.term_depth);
                let (rho, sigma, tau) = (term(), term(), term());
                let phi = gen.formula(&mut rng, self.formula_depth);
                let psi = gen.formula(&mut rng, self.formula_depth);
                let instance = schema.instantiate(&rho, &sigma, &tau, &phi, &psi);
                for (index, m) in models.iter().enumerate() {
                    tally.0 += 1;
                    let ext = eval(m, &instance).expect("instances use the model's signature");
                    if let Some(w) = (0..m.len()).find(|&w| !ext.contains(w)) {
                        tally.1 += 1;
                        report.failures.push(SuiteFailure {
                            schema,
                            instance: instance.to_string(),
                            model_index: index,
                            state: m.states()[w].clone(),
                            model: m.clone(),
                        });
                    }
                }
            }
        }
        report
    }
}

/// Runs every schema sound for `mode` on `n_models` random models.
pub fn axiom_suite(mode: Mode, n_models: usize, seed: u64) -> SuiteReport {
    SuiteConfig::new(mode, n_models, seed).run()
}

#[derive(Clone, Debug)]
pub struct SuiteFailure {
    pub schema: Schema,
    pub instance: String,
    pub model_index: usize,
    pub state: String,
    pub model: Model,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub mode: Mode,
    pub models: usize,
    /// Checks and failures per schema.
    pub per_schema: BTreeMap<Schema, (usize, usize)>,
    pub failures: Vec<SuiteFailure>,
}

impl Default for SuiteReport {
    fn default() -> Self {
        SuiteReport {
            mode: Mode::S5,
            models: 0,
            per_schema: BTreeMap::new(),
            failures: Vec::new(),
        }
    }
}

impl SuiteReport {
    pub fn failure_count(&self) -> usize {
        self.failures.len()
    }

    pub fn checks(&self) -> usize {
        self.per_schema.values().map(|(c, _)| c).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {} on {} models", self.mode, self.models)?;
        for (schema, (checks, failed)) in &self.per_schema {
            writeln!(f, "  {:<18} {checks:>6} checks {failed:>4} failures", schema.name())?;
        }
        for failure in self.failures.iter().take(10) {
            writeln!(
                f,
                "  FAIL {} at {} of model #{}: {}",
                failure.schema.name(),
                failure.state,
                failure.model_index,
                failure.instance
            )?;
        }
        write!(f, "{} failures", self.failure_count())
    }
}
