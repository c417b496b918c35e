//! Single-field mutations of refutation certificates.

use ordlab::ball::DEFAULT_BALL_CAP;
use ordlab::certificate::{CertificateKind, Node, WitnessTerm};
use ordlab::{Ball, Budgets, Presentation, RefutationCertificate, Word, WordBackend};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Mutator {
    backend: WordBackend,
    names: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    DropTerm,
    ReplaceBase,
    InvertBase,
    DropConj,
    ReplaceConj,
    SwapChildren,
    ReplacePair,
    ChangeKind,
}

const CLASSES: [Class; 8] = [
    Class::DropTerm,
    Class::ReplaceBase,
    Class::InvertBase,
    Class::DropConj,
    Class::ReplaceConj,
    Class::SwapChildren,
    Class::ReplacePair,
    Class::ChangeKind,
];

fn leaves_mut(node: &mut Node) -> Vec<&mut Vec<WitnessTerm>> {
    match node {
        Node::Leaf { witness } => vec![witness],
        Node::Branch { pos, neg, .. } => {
            let mut v = leaves_mut(pos);
            v.extend(leaves_mut(neg));
            v
        }
    }
}

/// Calls `f` on the `target`-th branch in preorder.
fn at_branch(node: &mut Node, target: &mut usize, f: &mut dyn FnMut(&mut Node)) -> bool {
    if matches!(node, Node::Leaf { .. }) {
        return false;
    }
    if *target == 0 {
        f(node);
        return true;
    }
    *target -= 1;
    let Node::Branch { pos, neg, .. } = node else {
        unreachable!()
    };
    at_branch(pos, target, f) || at_branch(neg, target, f)
}

fn has_conj(node: &Node) -> bool {
    node.leaves()
        .iter()
        .any(|l| l.iter().any(|t| t.conj.is_some()))
}

impl Mutator {
    pub fn new(cert: &RefutationCertificate) -> Mutator {
        let p = Presentation::parse(&cert.group).expect("embedded group parses");
        let backend = WordBackend::build(&p, Budgets::default()).expect("backend");
        let ball = Ball::build(&backend, cert.radius, DEFAULT_BALL_CAP).expect("ball");
        let names = ball
            .elements()
            .iter()
            .map(|e| p.format_word(&e.nf))
            .collect();
        Mutator { backend, names }
    }

    fn word(&self, s: &str) -> Word {
        self.backend
            .presentation()
            .parse_word(s)
            .expect("ball element name")
    }

    fn value(&self, t: &WitnessTerm) -> Word {
        let base = self.word(&t.base);
        let w = match &t.conj {
            Some(q) => {
                let q = self.word(q);
                q.invert().concat(&base).concat(&q)
            }
            None => base,
        };
        self.backend.normal_form(&w)
    }

    fn name_of(&self, w: &Word) -> String {
        self.backend
            .presentation()
            .format_word(&self.backend.normal_form(w))
    }

    fn other_element(&self, rng: &mut ChaCha8Rng, not: &str) -> String {
        loop {
            let n = self.names.choose(rng).unwrap();
            if n != not {
                return n.clone();
            }
        }
    }

    /// Applies one mutation of a random applicable class. Mutations that
    /// leave every witness term denoting the same group element are
    /// redrawn, as they do not change the certificate's meaning.
    pub fn mutate(
        &self,
        cert: &RefutationCertificate,
        rng: &mut ChaCha8Rng,
    ) -> (Class, RefutationCertificate) {
        loop {
            let class = *CLASSES.choose(rng).unwrap();
            let mut m = cert.clone();
            if self.apply(class, &mut m, rng) {
                return (class, m);
            }
        }
    }

    fn apply(&self, class: Class, cert: &mut RefutationCertificate, rng: &mut ChaCha8Rng) -> bool {
        match class {
            Class::ChangeKind => {
                cert.kind = match cert.kind {
                    CertificateKind::Preorder => CertificateKind::Involution,
                    // Without conjugates a pre-biorder refutation is also a
                    // preorder refutation.
                    CertificateKind::Prebiorder if has_conj(&cert.tree) => {
                        CertificateKind::Preorder
                    }
                    CertificateKind::Prebiorder => CertificateKind::Involution,
                    CertificateKind::Involution => CertificateKind::Preorder,
                };
                true
            }
            Class::SwapChildren | Class::ReplacePair => {
                // A binary tree has one branch fewer than leaves.
                let branches = cert.tree.leaf_count() - 1;
                if branches == 0 {
                    return false;
                }
                let mut target = rng.gen_range(0..branches);
                let replacement = self.other_element(rng, "");
                let mut changed = false;
                at_branch(&mut cert.tree, &mut target, &mut |node| {
                    if let Node::Branch { pair, pos, neg } = node {
                        if class == Class::SwapChildren {
                            std::mem::swap(pos, neg);
                            changed = true;
                        } else if *pair != replacement {
                            *pair = replacement.clone();
                            changed = true;
                        }
                    }
                });
                changed
            }
            _ => {
                let mut leaves = leaves_mut(&mut cert.tree);
                let li = rng.gen_range(0..leaves.len());
                let leaf = &mut *leaves[li];
                if leaf.is_empty() {
                    return false;
                }
                let ti = rng.gen_range(0..leaf.len());
                let before = self.value(&leaf[ti]);
                let term = &mut leaf[ti];
                match class {
                    Class::DropTerm => {
                        leaf.remove(ti);
                        return true;
                    }
                    Class::ReplaceBase => term.base = self.other_element(rng, &term.base.clone()),
                    Class::InvertBase => {
                        let inv = self.name_of(&self.word(&term.base).invert());
                        if inv == term.base {
                            return false;
                        }
                        term.base = inv;
                    }
                    Class::DropConj => {
                        if term.conj.take().is_none() {
                            return false;
                        }
                    }
                    Class::ReplaceConj => {
                        let Some(q) = &term.conj else { return false };
                        term.conj = Some(self.other_element(rng, &q.clone()));
                    }
                    _ => unreachable!(),
                }
                let after = self.value(&leaf[ti]);
                after != before
            }
        }
    }
}
