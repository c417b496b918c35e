//! Search for preorders and pre-biorders of a ball.
//!
//! One boolean variable per inverse pair `{g, g^-1}`, true when the pair's
//! smaller element is positive, so the partition condition holds by
//! construction. Each product triple `g*h = f` contributes the clause
//! `!g | !h | f`; in bi-order mode each conjugation triple `g^-1 q g = c`
//! contributes `!q | c`. The search is DPLL with unit propagation and a
//! fixed branch order (smallest element first, positive side first).

use serde::Serialize;

use crate::ball::{Ball, ElementId, IDENTITY};
use crate::certificate::{CertificateKind, Node, RefutationCertificate, WitnessTerm};
use crate::wordproblem::WordBackend;

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Closed under in-ball products, with each inverse pair split.
    Preorder,
    /// Additionally closed under in-ball conjugation.
    Prebiorder,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Preorder => "preorder",
            Mode::Prebiorder => "prebiorder",
        }
    }

    fn certificate_kind(self) -> CertificateKind {
        match self {
            Mode::Preorder => CertificateKind::Preorder,
            Mode::Prebiorder => CertificateKind::Prebiorder,
        }
    }
}

/// A sign per ball element, indexed by element id; the identity has sign 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignAssignment {
    signs: Vec<i8>,
}

impl SignAssignment {
    pub fn from_signs(signs: Vec<i8>) -> SignAssignment {
        SignAssignment { signs }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, id: ElementId) -> i8 {
        self.signs[id]
    }

    pub fn is_positive(&self, id: ElementId) -> bool {
        self.signs[id] == 1
    }

    /// The candidate cone `Q`: ids with sign `+1`.
    pub fn positive(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.signs.len()).filter(move |&i| self.signs[i] == 1)
    }

    /// Restriction to the first `n` elements (a smaller ball).
    pub fn restrict(&self, n: usize) -> SignAssignment {
        SignAssignment {
            signs: self.signs[..n].to_vec(),
        }
    }

    pub fn negate(&self) -> SignAssignment {
        SignAssignment {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

/// The first condition an assignment fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    IdentitySign(i8),
    /// Sign other than +-1 on a non-identity element.
    Unsigned(ElementId),
    /// `g` and `g^-1` not of opposite signs.
    InversePairing(ElementId),
    /// Both factors positive, product negative.
    Product {
        g: ElementId,
        h: ElementId,
        f: ElementId,
    },
    /// Positive element conjugated into a negative one.
    Conjugation {
        g: ElementId,
        q: ElementId,
        c: ElementId,
    },
}

/// Checks the validity conditions directly against the ball's tables,
/// independently of the search.
pub fn verify(ball: &Ball, assignment: &SignAssignment, mode: Mode) -> Result<(), Violation> {
    let signs = assignment.signs();
    if signs.len() != ball.len() {
        return Err(Violation::WrongLength {
            expected: ball.len(),
            found: signs.len(),
        });
    }
    if signs[IDENTITY] != 0 {
        return Err(Violation::IdentitySign(signs[IDENTITY]));
    }
    for e in &ball.elements()[1..] {
        if signs[e.id].abs() != 1 {
            return Err(Violation::Unsigned(e.id));
        }
        if signs[e.inverse_id] != -signs[e.id] {
            return Err(Violation::InversePairing(e.id));
        }
    }
    for t in ball.product_table() {
        if signs[t.g] == 1 && signs[t.h] == 1 && signs[t.f] != 1 {
            return Err(Violation::Product {
                g: t.g,
                h: t.h,
                f: t.f,
            });
        }
    }
    if mode == Mode::Prebiorder {
        for t in ball.conjugation_table() {
            if signs[t.q] == 1 && signs[t.c] != 1 {
                return Err(Violation::Conjugation {
                    g: t.g,
                    q: t.q,
                    c: t.c,
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Decisions made.
    pub nodes: u64,
    /// Literals assigned by unit propagation.
    pub propagations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Sat(SignAssignment),
    Unsat(RefutationCertificate),
    /// The node cap was reached before the search finished.
    Undecided {
        node_cap: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

/// Literal: variable index and polarity (true = the pair's representative is
/// positive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lit {
    var: u32,
    positive: bool,
}

impl Lit {
    fn negate(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Source {
    Product(usize),
    Conjugation(usize),
}

#[derive(Clone, Debug)]
struct Clause {
    lits: Vec<Lit>,
    source: Source,
}

/// The clause database for one ball and mode.
struct Formula<'a> {
    ball: &'a Ball,
    /// Representative (smaller) element of each pair.
    reps: Vec<ElementId>,
    /// `var_of[e]` for non-identity, non-involution elements.
    var_of: Vec<u32>,
    clauses: Vec<Clause>,
    occurs: Vec<Vec<u32>>,
}

impl<'a> Formula<'a> {
    fn new(ball: &'a Ball, mode: Mode) -> Formula<'a> {
        let mut reps = Vec::new();
        let mut var_of = vec![u32::MAX; ball.len()];
        for e in &ball.elements()[1..] {
            if e.inverse_id > e.id {
                var_of[e.id] = reps.len() as u32;
                var_of[e.inverse_id] = reps.len() as u32;
                reps.push(e.id);
            }
        }
        let mut f = Formula {
            ball,
            reps,
            var_of,
            clauses: Vec::new(),
            occurs: Vec::new(),
        };
        for (i, t) in ball.product_table().iter().enumerate() {
            let lits = [f.lit(t.g).negate(), f.lit(t.h).negate(), f.lit(t.f)];
            f.push_clause(&lits, Source::Product(i));
        }
        if mode == Mode::Prebiorder {
            for (i, t) in ball.conjugation_table().iter().enumerate() {
                let lits = [f.lit(t.q).negate(), f.lit(t.c)];
                f.push_clause(&lits, Source::Conjugation(i));
            }
        }
        f.occurs = vec![Vec::new(); f.reps.len()];
        for (ci, c) in f.clauses.iter().enumerate() {
            for l in &c.lits {
                f.occurs[l.var as usize].push(ci as u32);
            }
        }
        f
    }

    /// The literal "element `e` is positive".
    fn lit(&self, e: ElementId) -> Lit {
        let var = self.var_of[e];
        Lit {
            var,
            positive: self.reps[var as usize] == e,
        }
    }

    /// Deduplicates literals and drops tautologies.
    fn push_clause(&mut self, lits: &[Lit], source: Source) {
        let mut out: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            if out.contains(&l.negate()) {
                return;
            }
            if !out.contains(&l) {
                out.push(l);
            }
        }
        self.clauses.push(Clause { lits: out, source });
    }

    fn num_vars(&self) -> usize {
        self.reps.len()
    }

    /// Witness for a falsified clause: the terms are positive exactly when
    /// the clause is false, and multiply to the identity.
    fn witness(&self, source: Source, p: &dyn Fn(ElementId) -> String) -> Vec<WitnessTerm> {
        let ball = self.ball;
        match source {
            Source::Product(i) => {
                let t = ball.product_table()[i];
                vec![
                    WitnessTerm {
                        base: p(t.g),
                        conj: None,
                    },
                    WitnessTerm {
                        base: p(t.h),
                        conj: None,
                    },
                    WitnessTerm {
                        base: p(ball.inverse(t.f)),
                        conj: None,
                    },
                ]
            }
            Source::Conjugation(i) => {
                let t = ball.conjugation_table()[i];
                vec![
                    WitnessTerm {
                        base: p(t.q),
                        conj: Some(p(t.g)),
                    },
                    WitnessTerm {
                        base: p(ball.inverse(t.c)),
                        conj: None,
                    },
                ]
            }
        }
    }
}

/// A refutation subtree with the set of variables its leaves mention.
struct Proof {
    node: Node,
    mentions: Vec<u64>,
}

impl Proof {
    fn mentions(&self, var: u32) -> bool {
        self.mentions[var as usize / 64] >> (var % 64) & 1 == 1
    }
}

enum Step {
    Sat,
    Unsat(Proof),
    Budget,
}

/// What to do with each complete assignment.
enum Goal {
    First,
    All {
        limit: usize,
        found: Vec<SignAssignment>,
    },
}

struct Search<'a> {
    formula: Formula<'a>,
    names: Vec<String>,
    values: Vec<Option<bool>>,
    /// Assigned literals with their reason clause (`None` for decisions).
    trail: Vec<(Lit, Option<u32>)>,
    stats: SearchStats,
    node_cap: u64,
    goal: Goal,
    build_proofs: bool,
}

impl<'a> Search<'a> {
    fn new(
        ball: &'a Ball,
        mode: Mode,
        names: Vec<String>,
        node_cap: u64,
        goal: Goal,
    ) -> Search<'a> {
        let formula = Formula::new(ball, mode);
        let build_proofs = matches!(goal, Goal::First);
        Search {
            values: vec![None; formula.num_vars()],
            formula,
            names,
            trail: Vec::new(),
            stats: SearchStats::default(),
            node_cap,
            goal,
            build_proofs,
        }
    }

    fn value(&self, l: Lit) -> Option<bool> {
        self.values[l.var as usize].map(|v| v == l.positive)
    }

    fn assign(&mut self, l: Lit, reason: Option<u32>) {
        self.values[l.var as usize] = Some(l.positive);
        self.trail.push((l, reason));
    }

    fn undo_to(&mut self, mark: usize) {
        for (l, _) in self.trail.drain(mark..) {
            self.values[l.var as usize] = None;
        }
    }

    /// Unit propagation over the trail from `head`; returns the falsified
    /// clause on conflict.
    fn propagate(&mut self, mut head: usize) -> Option<u32> {
        while head < self.trail.len() {
            let var = self.trail[head].0.var as usize;
            head += 1;
            for k in 0..self.formula.occurs[var].len() {
                let ci = self.formula.occurs[var][k];
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &l in &self.formula.clauses[ci as usize].lits {
                    match self.value(l) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            open += 1;
                            unassigned = Some(l);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return Some(ci),
                    (1, Some(l)) => {
                        self.assign(l, Some(ci));
                        self.stats.propagations += 1;
                    }
                    _ => {}
                }
            }
        }
        None
    }

    /// Assigns the literals of unit clauses in clause order, propagating
    /// after each.
    fn propagate_root(&mut self) -> Option<u32> {
        for ci in 0..self.formula.clauses.len() {
            let lits = &self.formula.clauses[ci].lits;
            if lits.len() != 1 {
                continue;
            }
            let l = lits[0];
            match self.value(l) {
                Some(true) => continue,
                Some(false) => return Some(ci as u32),
                None => {
                    let mark = self.trail.len();
                    self.assign(l, Some(ci as u32));
                    self.stats.propagations += 1;
                    if let Some(conflict) = self.propagate(mark) {
                        return Some(conflict);
                    }
                }
            }
        }
        None
    }

    fn leaf(&self, clause: u32) -> Proof {
        let names = &self.names;
        let c = &self.formula.clauses[clause as usize];
        let mut mentions = vec![0u64; self.formula.num_vars().div_ceil(64)];
        for l in &c.lits {
            mentions[l.var as usize / 64] |= 1 << (l.var % 64);
        }
        Proof {
            node: Node::Leaf {
                witness: self.formula.witness(c.source, &|e| names[e].clone()),
            },
            mentions,
        }
    }

    /// Decision node on `var`, dropped when one side does not depend on it.
    fn branch(&self, var: u32, pos: Proof, neg: Proof) -> Proof {
        if !pos.mentions(var) {
            return pos;
        }
        if !neg.mentions(var) {
            return neg;
        }
        let mentions = pos
            .mentions
            .iter()
            .zip(&neg.mentions)
            .map(|(a, b)| a | b)
            .collect();
        Proof {
            node: Node::Branch {
                pair: self.names[self.formula.reps[var as usize]].clone(),
                pos: Box::new(pos.node),
                neg: Box::new(neg.node),
            },
            mentions,
        }
    }

    /// Wraps `inner` in the propagations recorded on the trail from `from`:
    /// each propagated literal becomes a branch whose opposite side is a
    /// leaf on its reason clause.
    fn chain(&self, from: usize, inner: Proof) -> Proof {
        let mut acc = inner;
        for &(lit, reason) in self.trail[from..].iter().rev() {
            let Some(reason) = reason else { continue };
            let pruned = self.leaf(reason);
            acc = if lit.positive {
                self.branch(lit.var, acc, pruned)
            } else {
                self.branch(lit.var, pruned, acc)
            };
        }
        acc
    }

    fn next_var(&self) -> Option<u32> {
        self.values
            .iter()
            .position(Option::is_none)
            .map(|v| v as u32)
    }

    fn record_solution(&mut self) -> bool {
        let mut signs = vec![0i8; self.formula.ball.len()];
        for (var, &rep) in self.formula.reps.iter().enumerate() {
            let s = if self.values[var] == Some(true) {
                1
            } else {
                -1
            };
            signs[rep] = s;
            signs[self.formula.ball.inverse(rep)] = -s;
        }
        match &mut self.goal {
            Goal::First => true,
            Goal::All { limit, found } => {
                found.push(SignAssignment::from_signs(signs));
                found.len() >= *limit
            }
        }
    }

    fn search(&mut self) -> Step {
        let Some(var) = self.next_var() else {
            return if self.record_solution() {
                Step::Sat
            } else {
                Step::Unsat(self.empty_proof())
            };
        };
        if self.stats.nodes >= self.node_cap {
            return Step::Budget;
        }
        self.stats.nodes += 1;
        let mut sides = Vec::with_capacity(2);
        for positive in [true, false] {
            let mark = self.trail.len();
            self.assign(Lit { var, positive }, None);
            let sub = match self.propagate(mark) {
                Some(conflict) => {
                    let leaf = self.proof_leaf(conflict);
                    self.proof_chain(mark + 1, leaf)
                }
                None => match self.search() {
                    Step::Unsat(p) => self.proof_chain(mark + 1, p),
                    // The trail is left in place so the caller can read the model.
                    other => return other,
                },
            };
            self.undo_to(mark);
            sides.push(sub);
        }
        let neg = sides.pop().expect("two sides");
        let pos = sides.pop().expect("two sides");
        Step::Unsat(if self.build_proofs {
            self.branch(var, pos, neg)
        } else {
            pos
        })
    }

    fn empty_proof(&self) -> Proof {
        Proof {
            node: Node::Leaf {
                witness: Vec::new(),
            },
            mentions: Vec::new(),
        }
    }

    fn proof_leaf(&self, clause: u32) -> Proof {
        if self.build_proofs {
            self.leaf(clause)
        } else {
            self.empty_proof()
        }
    }

    fn proof_chain(&self, from: usize, inner: Proof) -> Proof {
        if self.build_proofs {
            self.chain(from, inner)
        } else {
            inner
        }
    }

    /// Root propagation followed by the recursive search.
    fn run(&mut self) -> Step {
        if let Some(conflict) = self.propagate_root() {
            let leaf = self.proof_leaf(conflict);
            return Step::Unsat(self.proof_chain(0, leaf));
        }
        match self.search() {
            Step::Unsat(p) => Step::Unsat(self.proof_chain(0, p)),
            other => other,
        }
    }

    fn current_assignment(&self) -> SignAssignment {
        let mut signs = vec![0i8; self.formula.ball.len()];
        for (var, &rep) in self.formula.reps.iter().enumerate() {
            let s = if self.values[var] == Some(true) {
                1
            } else {
                -1
            };
            signs[rep] = s;
            signs[self.formula.ball.inverse(rep)] = -s;
        }
        SignAssignment::from_signs(signs)
    }
}

fn element_names(backend: &WordBackend, ball: &Ball) -> Vec<String> {
    let p = backend.presentation();
    ball.elements()
        .iter()
        .map(|e| p.format_word(&e.nf))
        .collect()
}

fn involution_certificate(
    backend: &WordBackend,
    ball: &Ball,
    g: ElementId,
) -> RefutationCertificate {
    let name = backend.presentation().format_word(&ball.element(g).nf);
    let term = WitnessTerm {
        base: name,
        conj: None,
    };
    RefutationCertificate {
        kind: CertificateKind::Involution,
        radius: ball.radius(),
        group: backend.presentation().to_string(),
        tree: Node::Leaf {
            witness: vec![term.clone(), term],
        },
    }
}

/// Finds the first valid assignment in branch order, or a refutation.
pub fn find(backend: &WordBackend, ball: &Ball, mode: Mode, node_cap: u64) -> SearchResult {
    if let Some(&g) = ball.involutions().first() {
        return SearchResult {
            outcome: SearchOutcome::Unsat(involution_certificate(backend, ball, g)),
            stats: SearchStats::default(),
        };
    }
    let mut search = Search::new(
        ball,
        mode,
        element_names(backend, ball),
        node_cap,
        Goal::First,
    );
    let outcome = match search.run() {
        Step::Sat => SearchOutcome::Sat(search.current_assignment()),
        Step::Unsat(proof) => SearchOutcome::Unsat(RefutationCertificate {
            kind: mode.certificate_kind(),
            radius: ball.radius(),
            group: backend.presentation().to_string(),
            tree: proof.node,
        }),
        Step::Budget => SearchOutcome::Undecided { node_cap },
    };
    SearchResult {
        outcome,
        stats: search.stats,
    }
}

pub fn find_preorder(backend: &WordBackend, ball: &Ball, node_cap: u64) -> SearchResult {
    find(backend, ball, Mode::Preorder, node_cap)
}

pub fn find_prebiorder(backend: &WordBackend, ball: &Ball, node_cap: u64) -> SearchResult {
    find(backend, ball, Mode::Prebiorder, node_cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub assignments: Vec<SignAssignment>,
    /// Set when the limit cut the enumeration short.
    pub truncated: bool,
    pub stats: SearchStats,
}

/// All valid assignments in branch order, up to `limit`.
pub fn enumerate(ball: &Ball, mode: Mode, limit: usize) -> Enumeration {
    assert!(limit >= 1, "limit must be positive");
    if !ball.involutions().is_empty() {
        return Enumeration {
            assignments: Vec::new(),
            truncated: false,
            stats: SearchStats::default(),
        };
    }
    // One extra solution distinguishes "exactly `limit`" from "more".
    let goal = Goal::All {
        limit: limit.saturating_add(1),
        found: Vec::new(),
    };
    let mut search = Search::new(ball, mode, Vec::new(), u64::MAX, goal);
    search.run();
    let Goal::All { mut found, .. } = search.goal else {
        unreachable!("goal is fixed at construction")
    };
    let truncated = found.len() > limit;
    found.truncate(limit);
    Enumeration {
        assignments: found,
        truncated,
        stats: search.stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::DEFAULT_BALL_CAP;
    use crate::certificate::{check_certificate, Verdict};
    use crate::presentation::Presentation;
    use crate::wordproblem::Budgets;

    fn setup(text: &str, k: usize) -> (WordBackend, Ball) {
        let b =
            WordBackend::build(&Presentation::parse(text).unwrap(), Budgets::default()).unwrap();
        let ball = Ball::build(&b, k, DEFAULT_BALL_CAP).unwrap();
        (b, ball)
    }

    fn positives(b: &WordBackend, ball: &Ball, s: &SignAssignment) -> Vec<String> {
        s.positive()
            .map(|e| b.presentation().format_word(&ball.element(e).nf))
            .collect()
    }

    const Z: &str = "gens: a\nrels:";
    const KLEIN: &str = "gens: x,y\nrels: Xyxy";

    #[test]
    fn infinite_cyclic_has_two_preorders() {
        for k in 1..=6 {
            let (b, ball) = setup(Z, k);
            let SearchOutcome::Sat(s) = find_preorder(&b, &ball, DEFAULT_NODE_CAP).outcome else {
                panic!("Z is left-orderable");
            };
            let expected: Vec<String> = (1..=k).map(|i| "a".repeat(i)).collect();
            assert_eq!(positives(&b, &ball, &s), expected);
            let all = enumerate(&ball, Mode::Preorder, 100);
            assert_eq!(all.assignments.len(), 2);
            assert_eq!(all.assignments[0], s);
            assert_eq!(all.assignments[1], s.negate());
        }
    }

    #[test]
    fn klein_bottle_left_but_not_bi() {
        for k in 1..=4 {
            let (b, ball) = setup(KLEIN, k);
            let r = find_preorder(&b, &ball, DEFAULT_NODE_CAP);
            let SearchOutcome::Sat(s) = r.outcome else {
                panic!("k={k}")
            };
            assert_eq!(verify(&ball, &s, Mode::Preorder), Ok(()));
        }
        let (b, ball) = setup(KLEIN, 1);
        let r = find_prebiorder(&b, &ball, DEFAULT_NODE_CAP);
        let SearchOutcome::Unsat(cert) = r.outcome else {
            panic!("not bi-orderable")
        };
        assert_eq!(r.stats.nodes, 0);
        assert_eq!(cert.kind, CertificateKind::Prebiorder);
        let Node::Branch { pair, pos, neg } = &cert.tree else {
            panic!("expected a branch")
        };
        assert_eq!(pair, "y");
        let term = |base: &str, conj: Option<&str>| WitnessTerm {
            base: base.into(),
            conj: conj.map(Into::into),
        };
        assert_eq!(
            **pos,
            Node::Leaf {
                witness: vec![term("y", Some("x")), term("y", None)]
            }
        );
        assert_eq!(
            **neg,
            Node::Leaf {
                witness: vec![term("Y", Some("x")), term("Y", None)]
            }
        );
        assert_eq!(
            check_certificate(&b, &ball, &cert).unwrap(),
            Verdict::Accepted
        );
    }

    #[test]
    fn torsion_short_circuits() {
        let (b, ball) = setup("gens: x\nrels: xx", 1);
        let r = find_preorder(&b, &ball, DEFAULT_NODE_CAP);
        let SearchOutcome::Unsat(cert) = r.outcome else {
            panic!()
        };
        assert_eq!(cert.kind, CertificateKind::Involution);
        assert_eq!(cert.tree.leaf_count(), 1);
        assert!(check_certificate(&b, &ball, &cert).unwrap().is_accepted());
        assert!(enumerate(&ball, Mode::Preorder, 10).assignments.is_empty());
    }

    #[test]
    fn order_three_element_is_refuted() {
        let (b, ball) = setup("gens: x\nrels: xxx", 1);
        let SearchOutcome::Unsat(cert) = find_preorder(&b, &ball, DEFAULT_NODE_CAP).outcome else {
            panic!()
        };
        assert!(check_certificate(&b, &ball, &cert).unwrap().is_accepted());
    }

    #[test]
    fn node_cap_yields_undecided() {
        let (b, ball) = setup("gens: a,b\nrels:", 2);
        let r = find_preorder(&b, &ball, 1);
        assert_eq!(r.outcome, SearchOutcome::Undecided { node_cap: 1 });
    }

    #[test]
    fn enumeration_limit_sets_truncation() {
        let (_, ball) = setup("gens: a,b\nrels: abAB", 1);
        let all = enumerate(&ball, Mode::Preorder, 100);
        assert_eq!(all.assignments.len(), 4);
        assert!(!all.truncated);
        let some = enumerate(&ball, Mode::Preorder, 3);
        assert_eq!(some.assignments, all.assignments[..3]);
        assert!(some.truncated);
        let exact = enumerate(&ball, Mode::Preorder, 4);
        assert_eq!(exact.assignments.len(), 4);
        assert!(!exact.truncated);
    }

    #[test]
    fn verifier_catches_each_condition() {
        let (_, ball) = setup(KLEIN, 2);
        let SearchOutcome::Sat(good) =
            find_preorder(&setup(KLEIN, 2).0, &ball, DEFAULT_NODE_CAP).outcome
        else {
            panic!()
        };
        assert_eq!(verify(&ball, &good, Mode::Preorder), Ok(()));
        assert!(matches!(
            verify(&ball, &good, Mode::Prebiorder),
            Err(Violation::Conjugation { .. })
        ));
        let mut signs = good.signs().to_vec();
        signs[1] = -signs[1];
        assert!(matches!(
            verify(&ball, &SignAssignment::from_signs(signs), Mode::Preorder),
            Err(Violation::InversePairing(1))
        ));
        assert!(matches!(
            verify(&ball, &good.restrict(3), Mode::Preorder),
            Err(Violation::WrongLength { .. })
        ));
    }
}
