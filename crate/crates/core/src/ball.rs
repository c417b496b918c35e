//! Radius-k balls of the Cayley graph with their in-ball product and
//! conjugation structure.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;
use crate::presentation::{shortlex_cmp, Letter, Word};
use crate::wordproblem::WordBackend;

pub const DEFAULT_BALL_CAP: usize = 100_000;

pub type ElementId = usize;

/// The identity always has id 0.
pub const IDENTITY: ElementId = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallElement {
    pub id: ElementId,
    pub nf: Word,
    /// Cayley length: the BFS layer in which the element first appears.
    pub length: usize,
    pub inverse_id: ElementId,
}

/// `g * h = f` with all three in the ball and none the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductTriple {
    pub g: ElementId,
    pub h: ElementId,
    pub f: ElementId,
}

/// `g^-1 * q * g = c` with `q` and `c` non-identity ball elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjugationTriple {
    pub g: ElementId,
    pub q: ElementId,
    pub c: ElementId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BallError {
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("ball exceeded {cap} elements while building radius {radius}")]
    CapExceeded { cap: usize, radius: usize },
}

/// The ball `B_k`. Elements are ordered by length, then shortlex of their
/// normal form, so `B_j` is a prefix of `B_k` for `j <= k`.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    elements: Vec<BallElement>,
    lookup: HashMap<Word, ElementId>,
    /// `layer_end[j]` is the number of elements of length at most `j`.
    layer_end: Vec<usize>,
    products: Vec<ProductTriple>,
    conjugations: Vec<ConjugationTriple>,
    involutions: Vec<ElementId>,
}

impl Ball {
    /// Breadth-first construction by right multiplication with signed
    /// generators, deduplicated by normal form.
    pub fn build(backend: &WordBackend, radius: usize, cap: usize) -> Result<Ball, BallError> {
        if radius == 0 {
            return Err(BallError::ZeroRadius);
        }
        let letters: Vec<Letter> = Letter::all(backend.presentation().num_generators()).collect();
        let mut words: Vec<Word> = vec![Word::empty()];
        let mut lengths = vec![0];
        let mut lookup: HashMap<Word, ElementId> = HashMap::new();
        lookup.insert(Word::empty(), IDENTITY);
        let mut layer_end = vec![1];

        for layer in 1..=radius {
            let previous = if layer == 1 { 0 } else { layer_end[layer - 2] };
            let frontier = &words[previous..layer_end[layer - 1]];
            let candidates: Vec<Vec<Word>> = par::map_slice(frontier, |w| {
                letters
                    .iter()
                    .map(|&l| {
                        let mut next = w.clone();
                        next.push(l);
                        backend.normal_form(&next)
                    })
                    .collect()
            });
            let mut fresh: Vec<Word> = Vec::new();
            for nf in candidates.into_iter().flatten() {
                if !lookup.contains_key(&nf) {
                    lookup.insert(nf.clone(), usize::MAX);
                    fresh.push(nf);
                }
            }
            fresh.sort_by(|a, b| shortlex_cmp(a.letters(), b.letters()));
            if words.len() + fresh.len() > cap {
                return Err(BallError::CapExceeded { cap, radius: layer });
            }
            for nf in fresh {
                lookup.insert(nf.clone(), words.len());
                words.push(nf);
                lengths.push(layer);
            }
            layer_end.push(words.len());
        }

        let inverses: Vec<ElementId> = par::map_slice(&words, |w| {
            let inv = backend.normal_form(&w.invert());
            *lookup.get(&inv).expect("balls are closed under inverses")
        });
        let elements: Vec<BallElement> = words
            .into_iter()
            .zip(lengths)
            .zip(inverses)
            .enumerate()
            .map(|(id, ((nf, length), inverse_id))| BallElement {
                id,
                nf,
                length,
                inverse_id,
            })
            .collect();

        let n = elements.len();
        let products: Vec<ProductTriple> = par::map_range(n, |g| {
            if g == IDENTITY {
                return Vec::new();
            }
            let gw = &elements[g].nf;
            (1..n)
                .filter_map(|h| {
                    let f = *lookup.get(&backend.normal_form(&gw.concat(&elements[h].nf)))?;
                    (f != IDENTITY).then_some(ProductTriple { g, h, f })
                })
                .collect()
        })
        .into_iter()
        .flatten()
        .collect();

        let conjugations: Vec<ConjugationTriple> = par::map_range(n, |g| {
            let left = &elements[elements[g].inverse_id].nf;
            let right = &elements[g].nf;
            (1..n)
                .filter_map(|q| {
                    let word = left.concat(&elements[q].nf).concat(right);
                    let c = *lookup.get(&backend.normal_form(&word))?;
                    Some(ConjugationTriple { g, q, c })
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();

        let involutions = elements
            .iter()
            .filter(|e| e.id != IDENTITY && e.inverse_id == e.id)
            .map(|e| e.id)
            .collect();

        Ok(Ball {
            radius,
            elements,
            lookup,
            layer_end,
            products,
            conjugations,
            involutions,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BallElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &BallElement {
        &self.elements[id]
    }

    pub fn inverse(&self, id: ElementId) -> ElementId {
        self.elements[id].inverse_id
    }

    /// Id of the element with normal form `nf`, if it lies in the ball.
    pub fn find(&self, nf: &Word) -> Option<ElementId> {
        self.lookup.get(nf).copied()
    }

    /// Number of elements of length at most `radius`.
    pub fn size_at(&self, radius: usize) -> usize {
        self.layer_end[radius.min(self.radius)]
    }

    pub fn product_table(&self) -> &[ProductTriple] {
        &self.products
    }

    pub fn conjugation_table(&self) -> &[ConjugationTriple] {
        &self.conjugations
    }

    /// Non-identity elements equal to their own inverse.
    pub fn involutions(&self) -> &[ElementId] {
        &self.involutions
    }

    /// The sub-ball of smaller radius, with ids and triples carried over.
    pub fn restrict(&self, radius: usize) -> Ball {
        assert!(
            radius >= 1 && radius <= self.radius,
            "restriction radius out of range"
        );
        let n = self.size_at(radius);
        let elements = self.elements[..n].to_vec();
        let lookup = elements.iter().map(|e| (e.nf.clone(), e.id)).collect();
        Ball {
            radius,
            elements,
            lookup,
            layer_end: self.layer_end[..=radius].to_vec(),
            products: self
                .products
                .iter()
                .filter(|t| t.g < n && t.h < n && t.f < n)
                .copied()
                .collect(),
            conjugations: self
                .conjugations
                .iter()
                .filter(|t| t.g < n && t.q < n && t.c < n)
                .copied()
                .collect(),
            involutions: self
                .involutions
                .iter()
                .filter(|&&i| i < n)
                .copied()
                .collect(),
        }
    }

    /// JSON-ready summary with normal forms spelled in generator names.
    pub fn dump(&self, backend: &WordBackend) -> BallDump {
        let p = backend.presentation();
        BallDump {
            radius: self.radius,
            backend: backend.kind().to_string(),
            size: self.len(),
            layer_sizes: self
                .layer_end
                .iter()
                .scan(0, |prev, &end| {
                    let size = end - *prev;
                    *prev = end;
                    Some(size)
                })
                .collect(),
            elements: self
                .elements
                .iter()
                .map(|e| ElementDump {
                    id: e.id,
                    nf: p.format_word(&e.nf),
                    length: e.length,
                    inverse_id: e.inverse_id,
                })
                .collect(),
            product_triples: self.products.len(),
            conjugation_triples: self.conjugations.len(),
            involutions: self
                .involutions
                .iter()
                .map(|&i| p.format_word(&self.elements[i].nf))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDump {
    pub id: usize,
    pub nf: String,
    pub length: usize,
    pub inverse_id: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallDump {
    pub radius: usize,
    pub backend: String,
    pub size: usize,
    pub layer_sizes: Vec<usize>,
    pub elements: Vec<ElementDump>,
    pub product_triples: usize,
    pub conjugation_triples: usize,
    pub involutions: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::wordproblem::Budgets;

    fn ball(text: &str, k: usize) -> (WordBackend, Ball) {
        let b =
            WordBackend::build(&Presentation::parse(text).unwrap(), Budgets::default()).unwrap();
        let ball = Ball::build(&b, k, DEFAULT_BALL_CAP).unwrap();
        (b, ball)
    }

    fn id(b: &WordBackend, ball: &Ball, s: &str) -> ElementId {
        ball.find(&b.normal_form(&b.presentation().parse_word(s).unwrap()))
            .unwrap()
    }

    const Z2: &str = "gens: a,b\nrels: abAB";

    #[test]
    fn z2_ball_sizes_match_taxicab_counts() {
        for k in 1..=4 {
            let (_, ball) = ball(Z2, k);
            assert_eq!(ball.len(), 2 * k * k + 2 * k + 1);
        }
    }

    #[test]
    fn free_group_ball_sizes() {
        let (_, b2) = ball("gens: a,b\nrels:", 2);
        assert_eq!(b2.len(), 17);
        let (_, b3) = ball("gens: a,b\nrels:", 3);
        assert_eq!(b3.len(), 53);
    }

    #[test]
    fn identity_and_inverse_pairing() {
        let (_, ball) = ball("gens: x,y\nrels: Xyxy", 3);
        let e = ball.element(IDENTITY);
        assert_eq!((e.length, e.inverse_id), (0, 0));
        assert!(e.nf.is_empty());
        for e in ball.elements() {
            let inv = ball.element(e.inverse_id);
            assert_eq!(inv.inverse_id, e.id);
            assert_eq!(inv.length, e.length);
        }
        assert!(ball.involutions().is_empty());
    }

    #[test]
    fn z2_product_tables() {
        let (b, b1) = ball(Z2, 1);
        assert!(b1.product_table().is_empty());
        let (_, b2) = ball(Z2, 2);
        let a = id(&b, &b2, "a");
        let bb = id(&b, &b2, "b");
        let aa = id(&b, &b2, "aa");
        let ab = id(&b, &b2, "ab");
        assert!(b2
            .product_table()
            .contains(&ProductTriple { g: a, h: a, f: aa }));
        assert!(b2
            .product_table()
            .contains(&ProductTriple { g: a, h: bb, f: ab }));
        assert!(b2.product_table().iter().all(|t| t.f != IDENTITY));
    }

    #[test]
    fn conjugation_tables() {
        let (b, klein) = ball("gens: x,y\nrels: Xyxy", 1);
        let (x, y, yi) = (
            id(&b, &klein, "x"),
            id(&b, &klein, "y"),
            id(&b, &klein, "Y"),
        );
        assert!(klein
            .conjugation_table()
            .contains(&ConjugationTriple { g: x, q: y, c: yi }));
        for q in 1..klein.len() {
            assert!(klein.conjugation_table().contains(&ConjugationTriple {
                g: IDENTITY,
                q,
                c: q
            }));
        }
        let (_, z2) = ball(Z2, 1);
        assert!(z2.conjugation_table().iter().all(|t| t.q == t.c));
    }

    #[test]
    fn finite_group_ball_stabilizes() {
        let poincare = "gens: x,z\nrels: zxzxZZZ, zzzXXXXX";
        let mut sizes = Vec::new();
        for k in 1..=8 {
            sizes.push(ball(poincare, k).1.len());
        }
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*sizes.last().unwrap(), 120);
        let (_, small) = ball("gens: x\nrels: xx", 1);
        assert_eq!(small.involutions(), &[1]);
    }

    #[test]
    fn restriction_matches_smaller_build() {
        for text in [Z2, "gens: x,y\nrels: Xyxy", "gens: a,b\nrels:"] {
            let (_, big) = ball(text, 3);
            for k in 1..=2 {
                let (_, small) = ball(text, k);
                let cut = big.restrict(k);
                assert_eq!(cut.elements(), small.elements());
                assert_eq!(cut.product_table(), small.product_table());
                assert_eq!(cut.conjugation_table(), small.conjugation_table());
                assert_eq!(big.size_at(k), small.len());
            }
        }
    }

    #[test]
    fn triples_are_sound_and_inverse_closed() {
        let (b, ball) = ball("gens: x,y\nrels: Xyxy", 2);
        let products: std::collections::HashSet<_> = ball.product_table().iter().copied().collect();
        for t in ball.product_table() {
            let lhs = ball.element(t.g).nf.concat(&ball.element(t.h).nf);
            assert!(b.equal(&lhs, &ball.element(t.f).nf));
            let mirrored = ProductTriple {
                g: ball.inverse(t.h),
                h: ball.inverse(t.g),
                f: ball.inverse(t.f),
            };
            assert!(products.contains(&mirrored));
        }
        // Exactly once per in-ball product.
        assert_eq!(products.len(), ball.product_table().len());
    }

    #[test]
    fn cap_and_radius_errors() {
        let b = WordBackend::build(&Presentation::parse(Z2).unwrap(), Budgets::default()).unwrap();
        assert_eq!(Ball::build(&b, 0, 10).unwrap_err(), BallError::ZeroRadius);
        assert_eq!(
            Ball::build(&b, 3, 10).unwrap_err(),
            BallError::CapExceeded { cap: 10, radius: 2 }
        );
    }
}
