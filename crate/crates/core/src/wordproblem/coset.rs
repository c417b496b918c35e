//! HLT-style Todd–Coxeter enumeration over the trivial subgroup.

use std::collections::VecDeque;

use crate::presentation::{Letter, Presentation, Word};

use super::BudgetExhausted;

const UNDEF: usize = usize::MAX;

/// A closed coset table for the trivial subgroup, so cosets are group
/// elements. Cosets are numbered `1..=order` in shortlex order of their
/// representatives; coset 1 is the identity.
#[derive(Clone, Debug)]
pub struct CosetTable {
    num_generators: usize,
    /// `action[c][letter]` for 0-based coset `c`.
    action: Vec<Vec<usize>>,
    representatives: Vec<Word>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.action.len()
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    /// Image of 1-based coset `coset` under `letter`.
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.action[coset - 1][letter.code() as usize] + 1
    }

    /// The 1-based coset reached from the identity by reading `w`.
    pub fn coset_of(&self, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(0, |c, l| self.action[c][l.code() as usize])
            + 1
    }

    /// Shortlex-least word reaching 1-based coset `coset`.
    pub fn representative(&self, coset: usize) -> &Word {
        &self.representatives[coset - 1]
    }

    pub(crate) fn normal_form(&self, w: &Word) -> Word {
        self.representative(self.coset_of(w)).clone()
    }

    /// Whether every letter's column is a permutation of the cosets.
    pub fn columns_are_permutations(&self) -> bool {
        let n = self.order();
        Letter::all(self.num_generators).all(|l| {
            let mut seen = vec![false; n];
            for row in &self.action {
                let image = row[l.code() as usize];
                if image >= n || seen[image] {
                    return false;
                }
                seen[image] = true;
            }
            self.action.iter().enumerate().all(|(c, row)| {
                self.action[row[l.code() as usize]][l.inverse().code() as usize] == c
            })
        })
    }
}

struct Enumerator {
    width: usize,
    table: Vec<Vec<usize>>,
    /// Union-find parent; `forward[c] == c` for live cosets.
    forward: Vec<usize>,
    live: usize,
    max_cosets: usize,
}

impl Enumerator {
    fn new(width: usize, max_cosets: usize) -> Enumerator {
        Enumerator {
            width,
            table: vec![vec![UNDEF; width]],
            forward: vec![0],
            live: 1,
            max_cosets,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn find(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        while self.forward[c] != root {
            let next = self.forward[c];
            self.forward[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, l: Letter) -> Result<usize, BudgetExhausted> {
        if self.live >= self.max_cosets {
            return Err(BudgetExhausted::Cosets {
                limit: self.max_cosets,
            });
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.width]);
        self.forward.push(d);
        self.live += 1;
        self.table[c][l.code() as usize] = d;
        self.table[d][l.inverse().code() as usize] = c;
        Ok(d)
    }

    /// Merges cosets `a` and `b` and processes every induced coincidence.
    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for code in 0..self.width {
                let f = self.table[e][code];
                if f == UNDEF {
                    continue;
                }
                let inv = code ^ 1;
                if self.table[f][inv] == e {
                    self.table[f][inv] = UNDEF;
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                let existing = self.table[e1][code];
                if existing != UNDEF {
                    let existing = self.find(existing);
                    self.merge(f1, existing, &mut queue);
                } else {
                    let back = self.table[f1][inv];
                    if back != UNDEF {
                        let back = self.find(back);
                        self.merge(e1, back, &mut queue);
                    } else {
                        self.table[e1][code] = f1;
                        self.table[f1][inv] = e1;
                    }
                }
            }
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.forward[drop] = keep;
        self.live -= 1;
        queue.push_back(drop);
    }

    /// Traces `relator` from coset `c`, defining cosets to complete the scan.
    fn scan_and_fill(&mut self, c: usize, relator: &[Letter]) -> Result<(), BudgetExhausted> {
        let mut f = c;
        let mut b = c;
        let mut i = 0;
        let mut j = relator.len();
        loop {
            while i < j {
                let next = self.table[f][relator[i].code() as usize];
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let prev = self.table[b][relator[j - 1].inverse().code() as usize];
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let l = relator[i];
                self.table[f][l.code() as usize] = b;
                self.table[b][l.inverse().code() as usize] = f;
                return Ok(());
            }
            self.define(f, relator[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. Succeeds only when the
/// table closes, i.e. the group is finite with order at most `max_cosets`.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable, BudgetExhausted> {
    assert!(max_cosets >= 1, "budget must be positive");
    let n = p.num_generators();
    let relators: Vec<Vec<Letter>> = p.relators().iter().map(|r| r.letters().to_vec()).collect();
    let mut e = Enumerator::new(2 * n, max_cosets);

    let mut c = 0;
    while c < e.table.len() {
        for r in &relators {
            if !e.is_live(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        for code in 0..2 * n as u8 {
            if !e.is_live(c) {
                break;
            }
            if e.table[c][code as usize] == UNDEF {
                e.define(c, Letter::from_code(code))?;
            }
        }
        c += 1;
    }

    Ok(compact(&e, n))
}

/// Renumbers the live cosets by breadth-first search from the identity in
/// letter order, which visits them in shortlex order of representatives.
fn compact(e: &Enumerator, n: usize) -> CosetTable {
    let mut number = vec![UNDEF; e.table.len()];
    let mut order = vec![0usize];
    let mut representatives = vec![Word::empty()];
    number[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        for l in Letter::all(n) {
            let d = e.table[c][l.code() as usize];
            if number[d] == UNDEF {
                number[d] = order.len();
                order.push(d);
                let mut w = representatives[head].clone();
                w.push(l);
                representatives.push(w);
            }
        }
        head += 1;
    }
    let action = order
        .iter()
        .map(|&c| e.table[c].iter().map(|&d| number[d]).collect())
        .collect();
    CosetTable {
        num_generators: n,
        action,
        representatives,
    }
}
