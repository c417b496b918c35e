//! Refutation certificates and their independent checker.
//!
//! A certificate is a binary decision tree over inverse pairs `{g, g^-1}`.
//! Each leaf lists witness terms whose bases are all positive on the path to
//! the leaf, and whose product is the identity: the path's sign choice would
//! put 1 in the semigroup generated by the positive elements (and, for
//! bi-orders, their conjugates). Elements are written as normal-form
//! strings so a certificate can be checked by a separate run.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ball::{Ball, ElementId, IDENTITY};
use crate::par;
use crate::presentation::Word;
use crate::wordproblem::WordBackend;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// Refutes every preorder: leaves use plain elements only.
    Preorder,
    /// Refutes every pre-biorder: leaves may use conjugated elements.
    Prebiorder,
    /// A single leaf `(g)(g)` with `g = g^-1`.
    Involution,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Preorder => "preorder",
            CertificateKind::Prebiorder => "prebiorder",
            CertificateKind::Involution => "involution",
        }
    }
}

/// The element `conj^-1 * base * conj`, or `base` alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessTerm {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conj: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, try_from = "RawNode")]
pub enum Node {
    Branch {
        /// One element of the decided pair; `pos` is the subtree where it
        /// is positive.
        pair: String,
        pos: Box<Node>,
        neg: Box<Node>,
    },
    Leaf {
        witness: Vec<WitnessTerm>,
    },
}

/// Flat wire shape of a node; exactly one of the two field groups is set.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    pair: Option<String>,
    pos: Option<Box<RawNode>>,
    neg: Option<Box<RawNode>>,
    witness: Option<Vec<WitnessTerm>>,
}

impl TryFrom<RawNode> for Node {
    type Error = String;

    fn try_from(raw: RawNode) -> Result<Node, String> {
        match raw {
            RawNode {
                pair: Some(pair),
                pos: Some(pos),
                neg: Some(neg),
                witness: None,
            } => Ok(Node::Branch {
                pair,
                pos: Box::new(Node::try_from(*pos)?),
                neg: Box::new(Node::try_from(*neg)?),
            }),
            RawNode {
                pair: None,
                pos: None,
                neg: None,
                witness: Some(witness),
            } => Ok(Node::Leaf { witness }),
            _ => Err("a node needs either `pair`, `pos`, `neg` or `witness`".to_string()),
        }
    }
}

impl Node {
    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Branch { pos, neg, .. } => pos.leaf_count() + neg.leaf_count(),
            Node::Leaf { .. } => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Branch { pos, neg, .. } => 1 + pos.depth().max(neg.depth()),
            Node::Leaf { .. } => 0,
        }
    }

    /// Leaves in depth-first order, positive side first.
    pub fn leaves(&self) -> Vec<&[WitnessTerm]> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                Node::Branch { pos, neg, .. } => {
                    stack.push(neg);
                    stack.push(pos);
                }
                Node::Leaf { witness } => out.push(witness.as_slice()),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefutationCertificate {
    pub kind: CertificateKind,
    pub radius: usize,
    /// The presentation in file format.
    pub group: String,
    pub tree: Node,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("element {0:?} is not a word in the group's generators")]
    BadWord(String),
    #[error("element {0:?} does not lie in the ball of radius {1}")]
    Dangling(String, usize),
    #[error("certificate radius {certificate} does not match ball radius {ball}")]
    RadiusMismatch { certificate: usize, ball: usize },
}

impl RefutationCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<RefutationCertificate, CertificateError> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let cert = RefutationCertificate::deserialize(&mut de)?;
        de.end()?;
        Ok(cert)
    }
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// A pair is decided twice on one path, or is not a valid pair.
    BadDecision(String),
    /// A leaf has no witness terms.
    EmptyWitness,
    /// A witness base is not positive on the leaf's path.
    NotPositive(String),
    /// A conjugated term in a preorder certificate.
    ConjugateNotAllowed,
    /// Involution certificates are a single leaf of self-inverse bases.
    BadInvolution,
    /// The leaf's product is not the identity.
    NonTrivialProduct(Vec<WitnessTerm>),
}

/// Outcome of [`check_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

struct Checker<'a> {
    backend: &'a WordBackend,
    ball: &'a Ball,
    kind: CertificateKind,
    signs: HashMap<ElementId, i8>,
    /// Leaf words whose normal forms remain to be computed.
    products: Vec<(Word, &'a [WitnessTerm])>,
}

impl<'a> Checker<'a> {
    fn resolve(&self, s: &str) -> Result<ElementId, CertificateError> {
        let word = self
            .backend
            .presentation()
            .parse_word(s)
            .map_err(|_| CertificateError::BadWord(s.to_string()))?;
        self.ball
            .find(&self.backend.normal_form(&word))
            .ok_or_else(|| CertificateError::Dangling(s.to_string(), self.ball.radius()))
    }

    fn walk(&mut self, node: &'a Node) -> Result<Option<Rejection>, CertificateError> {
        match node {
            Node::Branch { pair, pos, neg } => {
                if self.kind == CertificateKind::Involution {
                    return Ok(Some(Rejection::BadInvolution));
                }
                let e = self.resolve(pair)?;
                let inv = self.ball.inverse(e);
                if e == IDENTITY || e == inv || self.signs.contains_key(&e) {
                    return Ok(Some(Rejection::BadDecision(pair.clone())));
                }
                for (child, sign) in [(pos, 1i8), (neg, -1i8)] {
                    self.signs.insert(e, sign);
                    self.signs.insert(inv, -sign);
                    let result = self.walk(child);
                    self.signs.remove(&e);
                    self.signs.remove(&inv);
                    if !matches!(result, Ok(None)) {
                        return result;
                    }
                }
                Ok(None)
            }
            Node::Leaf { witness } => {
                if witness.is_empty() {
                    return Ok(Some(Rejection::EmptyWitness));
                }
                let mut product = Word::empty();
                for term in witness {
                    let base = self.resolve(&term.base)?;
                    match self.kind {
                        CertificateKind::Involution => {
                            if base == IDENTITY
                                || self.ball.inverse(base) != base
                                || term.conj.is_some()
                            {
                                return Ok(Some(Rejection::BadInvolution));
                            }
                        }
                        _ => {
                            if self.signs.get(&base) != Some(&1) {
                                return Ok(Some(Rejection::NotPositive(term.base.clone())));
                            }
                        }
                    }
                    let base_word = &self.ball.element(base).nf;
                    match &term.conj {
                        None => product = product.concat(base_word),
                        Some(c) => {
                            if self.kind != CertificateKind::Prebiorder {
                                return Ok(Some(Rejection::ConjugateNotAllowed));
                            }
                            let g = self.resolve(c)?;
                            let g_inv = &self.ball.element(self.ball.inverse(g)).nf;
                            product = product
                                .concat(g_inv)
                                .concat(base_word)
                                .concat(&self.ball.element(g).nf);
                        }
                    }
                }
                self.products.push((product, witness));
                Ok(None)
            }
        }
    }
}

/// Checks `cert` against the ball of its radius, using only ball lookups and
/// the backend's normal forms.
///
/// Returns an error when an element cannot be resolved in the ball, and a
/// rejection when any path, positivity, or product condition fails.
pub fn check_certificate(
    backend: &WordBackend,
    ball: &Ball,
    cert: &RefutationCertificate,
) -> Result<Verdict, CertificateError> {
    if ball.radius() != cert.radius {
        return Err(CertificateError::RadiusMismatch {
            certificate: cert.radius,
            ball: ball.radius(),
        });
    }
    if cert.kind == CertificateKind::Involution && !matches!(cert.tree, Node::Leaf { .. }) {
        return Ok(Verdict::Rejected(Rejection::BadInvolution));
    }
    let mut checker = Checker {
        backend,
        ball,
        kind: cert.kind,
        signs: HashMap::new(),
        products: Vec::new(),
    };
    if let Some(rejection) = checker.walk(&cert.tree)? {
        return Ok(Verdict::Rejected(rejection));
    }
    let trivial = par::map_slice(&checker.products, |(word, _)| backend.is_identity(word));
    match trivial.iter().position(|ok| !ok) {
        Some(i) => Ok(Verdict::Rejected(Rejection::NonTrivialProduct(
            checker.products[i].1.to_vec(),
        ))),
        None => Ok(Verdict::Accepted),
    }
}

/// Builds the ball at the certificate's radius and checks against it.
pub fn check_with_backend(
    backend: &WordBackend,
    cert: &RefutationCertificate,
    ball_cap: usize,
) -> Result<Verdict, CheckFailure> {
    let ball = Ball::build(backend, cert.radius, ball_cap).map_err(CheckFailure::Ball)?;
    check_certificate(backend, &ball, cert).map_err(CheckFailure::Certificate)
}

#[derive(Debug, Error)]
pub enum CheckFailure {
    #[error(transparent)]
    Ball(crate::ball::BallError),
    #[error(transparent)]
    Certificate(CertificateError),
}
