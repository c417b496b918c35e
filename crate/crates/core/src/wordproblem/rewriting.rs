//! Knuth–Bendix completion for string rewriting systems under shortlex.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::presentation::{shortlex_cmp, Letter, Presentation, Word};

use super::BudgetExhausted;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

impl RewriteRule {
    /// `x x^-1 -> 1` or `x^-1 x -> 1`.
    pub fn is_free_cancellation(&self) -> bool {
        self.rhs.is_empty() && self.lhs.len() == 2 && self.lhs[0] == self.lhs[1].inverse()
    }
}

/// A terminating shortlex rewriting system. Free cancellation is part of the
/// rule set, seeded as `x x^-1 -> 1` rules before completion.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    num_generators: usize,
    rules: Vec<RewriteRule>,
    index: HashMap<Vec<Letter>, usize>,
    max_lhs: usize,
    confluent: bool,
}

impl RewritingSystem {
    fn from_rules(num_generators: usize, rules: Vec<RewriteRule>) -> RewritingSystem {
        let mut system = RewritingSystem {
            num_generators,
            rules: Vec::new(),
            index: HashMap::new(),
            max_lhs: 0,
            confluent: false,
        };
        for rule in rules {
            system.max_lhs = system.max_lhs.max(rule.lhs.len());
            system.index.insert(rule.lhs.clone(), system.rules.len());
            system.rules.push(rule);
        }
        system
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    /// Rewrites to the irreducible descendant, always reducing the leftmost
    /// redex.
    pub fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        reduce_with(&self.index, &self.rules, self.max_lhs, word)
    }

    /// Every critical pair between two rules, as `(overlap, left, right)`
    /// with both reductions of the overlap word.
    fn critical_pairs(&self) -> impl Iterator<Item = (Vec<Letter>, Vec<Letter>, Vec<Letter>)> + '_ {
        let rules = &self.rules;
        (0..rules.len())
            .flat_map(move |i| (0..rules.len()).flat_map(move |j| overlaps(&rules[i], &rules[j])))
    }

    /// Exhaustive check that every critical pair joins.
    pub fn check_confluence(&self) -> bool {
        self.critical_pairs()
            .all(|(_, a, b)| self.reduce(&a) == self.reduce(&b))
    }
}

fn reduce_with(
    index: &HashMap<Vec<Letter>, usize>,
    rules: &[RewriteRule],
    max_lhs: usize,
    word: &[Letter],
) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    let mut pending: Vec<Letter> = word.iter().rev().copied().collect();
    while let Some(l) = pending.pop() {
        out.push(l);
        let top = out.len();
        for len in 1..=max_lhs.min(top) {
            if let Some(&r) = index.get(&out[top - len..]) {
                out.truncate(top - len);
                pending.extend(rules[r].rhs.iter().rev());
                break;
            }
        }
    }
    out
}

/// Overlaps where a proper suffix of `a.lhs` is a proper prefix of `b.lhs`.
fn overlaps<'a>(
    a: &'a RewriteRule,
    b: &'a RewriteRule,
) -> impl Iterator<Item = (Vec<Letter>, Vec<Letter>, Vec<Letter>)> + 'a {
    let max = a.lhs.len().min(b.lhs.len());
    (1..max).filter_map(move |t| {
        if a.lhs[a.lhs.len() - t..] != b.lhs[..t] {
            return None;
        }
        let mut word = a.lhs.clone();
        word.extend_from_slice(&b.lhs[t..]);
        let mut left = a.rhs.clone();
        left.extend_from_slice(&b.lhs[t..]);
        let mut right = a.lhs[..a.lhs.len() - t].to_vec();
        right.extend_from_slice(&b.rhs);
        Some((word, left, right))
    })
}

fn contains(haystack: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Mutable state of a completion run. Rules are tombstoned rather than
/// removed so that pair indices stay stable.
struct Completion {
    rules: Vec<Option<RewriteRule>>,
    index: HashMap<Vec<Letter>, usize>,
    max_lhs: usize,
    live: usize,
    max_rules: usize,
    max_len: usize,
}

impl Completion {
    fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        let mut pending: Vec<Letter> = word.iter().rev().copied().collect();
        while let Some(l) = pending.pop() {
            out.push(l);
            let top = out.len();
            for len in 1..=self.max_lhs.min(top) {
                if let Some(&r) = self.index.get(&out[top - len..]) {
                    out.truncate(top - len);
                    let rhs = &self.rules[r].as_ref().expect("indexed rule is live").rhs;
                    pending.extend(rhs.iter().rev());
                    break;
                }
            }
        }
        out
    }

    /// Orients and adds `u = v`, then interreduces. Rules whose left side
    /// becomes reducible are withdrawn and re-added as equations.
    fn add_equation(&mut self, u: Vec<Letter>, v: Vec<Letter>) -> Result<(), BudgetExhausted> {
        let mut stack = vec![(u, v)];
        while let Some((u, v)) = stack.pop() {
            let u = self.reduce(&u);
            let v = self.reduce(&v);
            let (lhs, rhs) = match shortlex_cmp(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            if lhs.len() > self.max_len {
                return Err(BudgetExhausted::RuleLength {
                    limit: self.max_len,
                    rules: self.live,
                });
            }
            for k in 0..self.rules.len() {
                let withdraw = matches!(&self.rules[k], Some(r) if contains(&r.lhs, &lhs));
                if withdraw {
                    let old = self.rules[k].take().expect("checked live");
                    self.index.remove(&old.lhs);
                    self.live -= 1;
                    stack.push((old.lhs, old.rhs));
                }
            }
            self.max_lhs = self.max_lhs.max(lhs.len());
            self.index.insert(lhs.clone(), self.rules.len());
            self.rules.push(Some(RewriteRule {
                lhs: lhs.clone(),
                rhs,
            }));
            self.live += 1;
            for k in 0..self.rules.len() {
                let stale = matches!(&self.rules[k], Some(r) if contains(&r.rhs, &lhs));
                if stale {
                    let rhs = self.rules[k].as_ref().expect("checked live").rhs.clone();
                    let reduced = self.reduce(&rhs);
                    self.rules[k].as_mut().expect("checked live").rhs = reduced;
                }
            }
            if self.live > self.max_rules {
                return Err(BudgetExhausted::RuleCount {
                    limit: self.max_rules,
                });
            }
        }
        Ok(())
    }
}

/// Runs Knuth–Bendix completion on `p` with the shortlex order
/// `x1 < x1^-1 < x2 < ...`.
///
/// Critical pairs are formed between every pair of live rules, the pairs of
/// each rule pair being resolved in shortlex order of their overlap words.
pub fn knuth_bendix(
    p: &Presentation,
    max_rules: usize,
    max_len: usize,
) -> Result<RewritingSystem, BudgetExhausted> {
    assert!(max_rules >= 1 && max_len >= 1, "budgets must be positive");
    let n = p.num_generators();
    let mut kb = Completion {
        rules: Vec::new(),
        index: HashMap::new(),
        max_lhs: 0,
        live: 0,
        max_rules,
        max_len,
    };
    for l in Letter::all(n) {
        kb.add_equation(vec![l, l.inverse()], Vec::new())?;
    }
    for r in p.relators() {
        kb.add_equation(r.letters().to_vec(), Vec::new())?;
    }

    let mut i = 0;
    while i < kb.rules.len() {
        let mut j = 0;
        while j <= i && kb.rules[i].is_some() {
            if let (Some(a), Some(b)) = (&kb.rules[i], &kb.rules[j]) {
                let mut pairs: Vec<_> = overlaps(a, b).collect();
                if i != j {
                    pairs.extend(overlaps(b, a));
                }
                pairs.sort_by(|x, y| shortlex_cmp(&x.0, &y.0));
                for (_, left, right) in pairs {
                    kb.add_equation(left, right)?;
                }
            }
            j += 1;
        }
        i += 1;
    }

    let mut rules: Vec<RewriteRule> = kb.rules.into_iter().flatten().collect();
    rules.sort_by(|a, b| shortlex_cmp(&a.lhs, &b.lhs));
    let mut system = RewritingSystem::from_rules(n, rules);
    system.confluent = system.check_confluence();
    debug_assert!(
        system.confluent,
        "completion finished with an unjoinable pair"
    );
    Ok(system)
}

impl RewritingSystem {
    pub(crate) fn normal_form(&self, w: &Word) -> Word {
        Word::from_letters(self.reduce(w.letters()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(text: &str) -> (Presentation, RewritingSystem) {
        let p = Presentation::parse(text).unwrap();
        let s = knuth_bendix(&p, 2000, 50).unwrap();
        (p, s)
    }

    #[test]
    fn free_group_has_only_cancellation_rules() {
        let (_, s) = system("gens: a,b\nrels:");
        assert!(s.is_confluent());
        assert_eq!(s.rules().len(), 4);
        assert!(s.rules().iter().all(RewriteRule::is_free_cancellation));
    }

    #[test]
    fn free_abelian_rank_two() {
        let (p, s) = system("gens: a,b\nrels: abAB");
        assert!(s.is_confluent());
        let ba = p.parse_word("ba").unwrap();
        assert_eq!(p.format_word(&s.normal_form(&ba)), "ab");
        let word = p.parse_word("BAbaBBa").unwrap();
        assert_eq!(p.format_word(&s.normal_form(&word)), "aBB");
    }

    #[test]
    fn rules_are_shortlex_decreasing_and_reduced() {
        for text in [
            "gens: x,y\nrels: Xyxy",
            "gens: a,b\nrels: abAB",
            "gens: x,z\nrels: zxzxZZZ, zzzXXXXX",
            "gens: x\nrels: xx",
        ] {
            let (_, s) = system(text);
            for rule in s.rules() {
                assert_eq!(shortlex_cmp(&rule.lhs, &rule.rhs), Ordering::Greater);
                if !rule.is_free_cancellation() {
                    for side in [&rule.lhs, &rule.rhs] {
                        assert!(
                            Word::from_letters(side.clone()).is_freely_reduced(),
                            "{text}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn all_critical_pairs_join() {
        let (_, s) = system("gens: x,y\nrels: Xyxy");
        let mut count = 0;
        for (_, a, b) in s.critical_pairs() {
            assert_eq!(s.reduce(&a), s.reduce(&b));
            count += 1;
        }
        assert!(count > 0);
    }

    #[test]
    fn budgets_are_reported() {
        let p = Presentation::parse("gens: x,z\nrels: zxzxZZZ, zzzXXXXX").unwrap();
        assert!(matches!(
            knuth_bendix(&p, 5, 50),
            Err(BudgetExhausted::RuleCount { limit: 5 })
        ));
        assert!(matches!(
            knuth_bendix(&p, 2000, 3),
            Err(BudgetExhausted::RuleLength { limit: 3, .. })
        ));
    }
}
