//! Solving the word problem: a normal form that is constant on group-equal
//! words, from either a confluent rewriting system or a closed coset table.

mod coset;
mod rewriting;

use thiserror::Error;

use crate::presentation::{Presentation, Word};

pub use coset::{todd_coxeter, CosetTable};
pub use rewriting::{knuth_bendix, RewriteRule, RewritingSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetExhausted {
    #[error("Knuth-Bendix exceeded {limit} rules")]
    RuleCount { limit: usize },
    #[error("Knuth-Bendix produced a rule longer than {limit} letters ({rules} rules live)")]
    RuleLength { limit: usize, rules: usize },
    #[error("Todd-Coxeter exceeded {limit} live cosets")]
    Cosets { limit: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("word problem undecided: {knuth_bendix}; {todd_coxeter}")]
pub struct Undecided {
    pub knuth_bendix: BudgetExhausted,
    pub todd_coxeter: BudgetExhausted,
}

/// Budgets for backend construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub kb_max_rules: usize,
    pub kb_max_len: usize,
    pub tc_max_cosets: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            kb_max_rules: 2000,
            kb_max_len: 50,
            tc_max_cosets: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
enum Engine {
    Rewriting(RewritingSystem),
    Cosets(CosetTable),
}

/// A decided word problem for a presentation.
#[derive(Clone, Debug)]
pub struct WordBackend {
    presentation: Presentation,
    engine: Engine,
}

impl WordBackend {
    pub fn from_rewriting(presentation: Presentation, system: RewritingSystem) -> WordBackend {
        assert!(system.is_confluent(), "rewriting backend must be confluent");
        WordBackend {
            presentation,
            engine: Engine::Rewriting(system),
        }
    }

    pub fn from_cosets(presentation: Presentation, table: CosetTable) -> WordBackend {
        WordBackend {
            presentation,
            engine: Engine::Cosets(table),
        }
    }

    /// Tries Knuth–Bendix, then Todd–Coxeter.
    pub fn build(presentation: &Presentation, budgets: Budgets) -> Result<WordBackend, Undecided> {
        let kb_err = match knuth_bendix(presentation, budgets.kb_max_rules, budgets.kb_max_len) {
            Ok(system) => return Ok(WordBackend::from_rewriting(presentation.clone(), system)),
            Err(e) => e,
        };
        match todd_coxeter(presentation, budgets.tc_max_cosets) {
            Ok(table) => Ok(WordBackend::from_cosets(presentation.clone(), table)),
            Err(tc_err) => Err(Undecided {
                knuth_bendix: kb_err,
                todd_coxeter: tc_err,
            }),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn kind(&self) -> &'static str {
        match self.engine {
            Engine::Rewriting(_) => "knuth-bendix",
            Engine::Cosets(_) => "todd-coxeter",
        }
    }

    pub fn rewriting_system(&self) -> Option<&RewritingSystem> {
        match &self.engine {
            Engine::Rewriting(s) => Some(s),
            Engine::Cosets(_) => None,
        }
    }

    pub fn coset_table(&self) -> Option<&CosetTable> {
        match &self.engine {
            Engine::Rewriting(_) => None,
            Engine::Cosets(t) => Some(t),
        }
    }

    /// Shortlex-least word representing the same element as `w`.
    pub fn normal_form(&self, w: &Word) -> Word {
        match &self.engine {
            Engine::Rewriting(s) => s.normal_form(w),
            Engine::Cosets(t) => t.normal_form(w),
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        u == v || self.normal_form(&u.concat(&v.invert())).is_empty()
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.normal_form(w).is_empty()
    }
}
