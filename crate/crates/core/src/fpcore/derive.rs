//! Bounded search for relator derivations, and homomorphism checking on top
//! of it.
//!
//! A derivation shows that a word lies in the normal closure of the relators.
//! The search works on cyclic words: conjugating and inverting preserve
//! membership, so each state is the least rotation of the word or its
//! inverse. A move multiplies a rotation of the state on the left by a
//! cyclic conjugate of a relator (or its inverse) that cancels at least one
//! letter, then reduces. States are expanded best-first by a length measure
//! that treats `g^e` as `g^(e mod n)` whenever `g^n` is a relator.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::presentation::Presentation;
use super::subst::SubstitutionMap;
use super::word::{free_reduce, Letter, Word};
use crate::abelian::{abelian_invariants, relator_matrix, smith_normal_form};
use crate::cosets::{todd_coxeter, EnumLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationBudget {
    /// Longest chain of relator insertions explored.
    pub max_insertions: usize,
    pub max_word_length: usize,
    pub max_states: usize,
}

impl Default for DerivationBudget {
    fn default() -> Self {
        DerivationBudget {
            max_insertions: 64,
            max_word_length: 64,
            max_states: 100_000,
        }
    }
}

/// One elementary step. Each preserves membership in the normal closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ProofStep {
    /// Insert `(r or r^-1).rotate(rotation)` before letter `position`.
    Insert {
        position: usize,
        relator: usize,
        inverse: bool,
        rotation: usize,
    },
    FreeReduce,
    CyclicReduce,
    /// Cyclic permutation `w[k..] w[..k]`.
    Rotate {
        k: usize,
    },
    Invert,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub start: Word,
    pub steps: Vec<ProofStep>,
}

impl ProofTrace {
    pub fn insertions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ProofStep::Insert { .. }))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Proof(ProofTrace),
    Inconclusive { states: usize },
}

/// Replays a trace step by step without trusting the search, returning the
/// final word. A trace proves its start word trivial iff this returns the
/// empty word.
pub fn replay(p: &Presentation, trace: &ProofTrace) -> Result<Word, String> {
    let mut w = trace.start.letters().to_vec();
    for (i, step) in trace.steps.iter().enumerate() {
        match *step {
            ProofStep::Insert {
                position,
                relator,
                inverse,
                rotation,
            } => {
                let r = p
                    .relators()
                    .get(relator)
                    .ok_or_else(|| format!("step {i}: no relator {relator}"))?;
                if position > w.len() {
                    return Err(format!("step {i}: position {position} past end of word"));
                }
                if rotation >= r.len() {
                    return Err(format!("step {i}: rotation {rotation} out of range"));
                }
                let r = if inverse { r.inverse() } else { r.clone() };
                let ins = r.rotate(rotation);
                w.splice(position..position, ins.letters().iter().copied());
            }
            ProofStep::FreeReduce => w = free_reduce(&Word::from_raw(w)).letters().to_vec(),
            ProofStep::CyclicReduce => {
                let fr = Word::from_raw(w.clone());
                if !fr.is_freely_reduced() {
                    return Err(format!("step {i}: cyclic reduction of an unreduced word"));
                }
                w = fr.cyclically_reduced().letters().to_vec();
            }
            ProofStep::Rotate { k } => {
                if !w.is_empty() {
                    let k = k % w.len();
                    w.rotate_left(k);
                }
            }
            ProofStep::Invert => {
                w = w.iter().rev().map(|l| l.inverse()).collect();
            }
        }
    }
    Ok(Word::from_raw(w))
}

/// True iff `trace` replays to the empty word and starts at `w`.
pub fn proves(p: &Presentation, w: &Word, trace: &ProofTrace) -> bool {
    trace.start == *w && matches!(replay(p, trace), Ok(end) if end.is_empty())
}

struct Variant {
    relator: usize,
    inverse: bool,
    rotation: usize,
    word: Word,
}

struct Node {
    word: Word,
    parent: usize,
    steps: Vec<ProofStep>,
    depth: usize,
}

fn canonical_steps(w: &Word) -> (Word, Vec<ProofStep>) {
    let (c, k, inv) = w.cyclic_canonical();
    let mut steps = Vec::new();
    if inv {
        steps.push(ProofStep::Invert);
    }
    if k != 0 {
        steps.push(ProofStep::Rotate { k });
    }
    (c, steps)
}

fn weight(w: &Word, periods: &[Option<i64>]) -> usize {
    w.syllables()
        .into_iter()
        .map(|(g, e)| match periods[g] {
            Some(n) => {
                let r = e.rem_euclid(n);
                r.min(n - r) as usize
            }
            None => e.unsigned_abs() as usize,
        })
        .sum()
}

pub fn derive_relator(p: &Presentation, w: &Word, budget: &DerivationBudget) -> Derivation {
    let start = w.clone();
    let mut first = vec![ProofStep::FreeReduce, ProofStep::CyclicReduce];
    let reduced = free_reduce(w).cyclically_reduced();
    let (c0, canon) = canonical_steps(&reduced);
    first.extend(canon);

    // Least positive power n with g^n a relator, per generator.
    let mut periods: Vec<Option<i64>> = vec![None; p.num_generators()];
    for r in p.relators() {
        let s = r.syllables();
        if s.len() == 1 {
            let (g, e) = s[0];
            let n = e.abs();
            periods[g] = Some(periods[g].map_or(n, |m: i64| num_integer::gcd(m, n)));
        }
    }

    // Relator conjugates, indexed by the inverse of their last letter so a
    // lookup by the first letter of a rotation yields only cancelling moves.
    let mut by_first: HashMap<Letter, Vec<Variant>> = HashMap::new();
    let mut seen_variants = std::collections::HashSet::new();
    for (ri, r) in p.relators().iter().enumerate() {
        for inverse in [false, true] {
            let base = if inverse { r.inverse() } else { r.clone() };
            for rotation in 0..base.len() {
                let word = base.rotate(rotation);
                if !seen_variants.insert(word.clone()) {
                    continue;
                }
                let key = word.letters().last().unwrap().inverse();
                by_first.entry(key).or_default().push(Variant {
                    relator: ri,
                    inverse,
                    rotation,
                    word,
                });
            }
        }
    }

    let mut nodes = vec![Node {
        word: c0.clone(),
        parent: usize::MAX,
        steps: first,
        depth: 0,
    }];
    let mut visited: HashMap<Word, usize> = HashMap::new();
    visited.insert(c0.clone(), 0);
    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    heap.push(Reverse((
        weight(&c0, &periods),
        c0.len(),
        Reverse(0usize),
        seq,
        0usize,
    )));

    let finish = |nodes: &[Node], mut i: usize| {
        let mut chunks = Vec::new();
        while i != usize::MAX {
            chunks.push(nodes[i].steps.clone());
            i = nodes[i].parent;
        }
        let steps = chunks.into_iter().rev().flatten().collect();
        Derivation::Proof(ProofTrace {
            start: start.clone(),
            steps,
        })
    };

    if c0.is_empty() {
        return finish(&nodes, 0);
    }

    while let Some(Reverse((_, _, _, _, idx))) = heap.pop() {
        let depth = nodes[idx].depth;
        if depth >= budget.max_insertions {
            continue;
        }
        let c = nodes[idx].word.clone();
        for i in 0..c.len() {
            let ci = c.rotate(i);
            let Some(vs) = by_first.get(&ci.letters()[0]) else {
                continue;
            };
            for v in vs {
                let child = v.word.mul(&ci);
                let child = child.cyclically_reduced();
                if child.len() > budget.max_word_length {
                    continue;
                }
                let (canon, tail) = canonical_steps(&child);
                if visited.contains_key(&canon) {
                    continue;
                }
                let mut steps = Vec::with_capacity(6);
                if i != 0 {
                    steps.push(ProofStep::Rotate { k: i });
                }
                steps.push(ProofStep::Insert {
                    position: 0,
                    relator: v.relator,
                    inverse: v.inverse,
                    rotation: v.rotation,
                });
                steps.push(ProofStep::FreeReduce);
                steps.push(ProofStep::CyclicReduce);
                steps.extend(tail);
                let id = nodes.len();
                let done = canon.is_empty();
                nodes.push(Node {
                    word: canon.clone(),
                    parent: idx,
                    steps,
                    depth: depth + 1,
                });
                if done {
                    return finish(&nodes, id);
                }
                visited.insert(canon.clone(), id);
                if nodes.len() >= budget.max_states {
                    return Derivation::Inconclusive {
                        states: nodes.len(),
                    };
                }
                seq += 1;
                heap.push(Reverse((
                    weight(&canon, &periods),
                    canon.len(),
                    Reverse(depth + 1),
                    seq,
                    id,
                )));
            }
        }
    }
    Derivation::Inconclusive {
        states: nodes.len(),
    }
}

/// Why a map fails to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// The image of the relator is nonzero in the target's abelianization.
    Abelianization { relator: usize, image: Vec<i64> },
    /// The image of the relator acts nontrivially on a finite quotient of
    /// the target (the regular action of the whole target group).
    FiniteQuotient {
        relator: usize,
        order: usize,
        moved_coset: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheck {
    /// One proof per source relator, in order.
    Verified(Vec<ProofTrace>),
    Refuted(Refutation),
    /// The first relator whose image could be neither derived nor refuted.
    Inconclusive {
        relator: usize,
    },
}

impl HomCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, HomCheck::Verified(_))
    }
}

/// Tests whether `w` is trivial in the abelianization of `p`; returns the
/// exponent vector when it is not.
fn abelian_witness(p: &Presentation, w: &Word) -> Option<Vec<i64>> {
    let e: Vec<i64> = (0..p.num_generators()).map(|g| w.exponent_sum(g)).collect();
    let m = relator_matrix(p);
    let snf = smith_normal_form(&m);
    // Row space of M equals row space of U M; x is in it iff x V lies in the
    // row space of D.
    let ebig: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
    let f = snf.v.left_mul_vector(&ebig);
    for (j, fj) in f.iter().enumerate() {
        let d = snf.d.get(j, j);
        let ok = if d.is_zero() {
            fj.is_zero()
        } else {
            (fj % &d).is_zero()
        };
        if !ok {
            return Some(e);
        }
    }
    None
}

pub fn check_homomorphism(m: &SubstitutionMap, budget: &DerivationBudget) -> HomCheck {
    let target = m.target();
    let images: Vec<Word> = m.source().relators().iter().map(|r| m.apply(r)).collect();

    for (i, img) in images.iter().enumerate() {
        if let Some(image) = abelian_witness(target, img) {
            return HomCheck::Refuted(Refutation::Abelianization { relator: i, image });
        }
    }

    let mut proofs = Vec::with_capacity(images.len());
    let mut stuck = None;
    for (i, img) in images.iter().enumerate() {
        match derive_relator(target, img, budget) {
            Derivation::Proof(t) => proofs.push(t),
            Derivation::Inconclusive { .. } => {
                stuck = Some(i);
                break;
            }
        }
    }
    let Some(stuck) = stuck else {
        return HomCheck::Verified(proofs);
    };

    // A finite target can be enumerated outright; free rank > 0 rules that out.
    if abelian_invariants(target).free_rank == 0 {
        let lim = EnumLimits {
            max_cosets: 5000,
            ..EnumLimits::default()
        };
        if let Ok(t) = todd_coxeter(target, &[], &lim) {
            for (i, img) in images.iter().enumerate() {
                if let Some(k) = (0..t.n_cosets()).find(|&k| t.trace(k, img) != k) {
                    return HomCheck::Refuted(Refutation::FiniteQuotient {
                        relator: i,
                        order: t.n_cosets(),
                        moved_coset: k,
                    });
                }
            }
        }
    }
    HomCheck::Inconclusive { relator: stuck }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub forward: HomCheck,
    pub backward: HomCheck,
    /// Source generators `g` with `backward(forward(g)) = g` derived.
    pub source_fixed: Vec<bool>,
    /// Target generators `h` with `forward(backward(h)) = h` derived.
    pub target_fixed: Vec<bool>,
}

impl IsoCheck {
    pub fn is_verified(&self) -> bool {
        self.forward.is_verified()
            && self.backward.is_verified()
            && self.source_fixed.iter().all(|&b| b)
            && self.target_fixed.iter().all(|&b| b)
    }
}

fn fixes_generators(
    round_trip: &SubstitutionMap,
    p: &Presentation,
    budget: &DerivationBudget,
) -> Vec<bool> {
    round_trip
        .images()
        .iter()
        .enumerate()
        .map(|(g, img)| {
            let w = img.mul(&Word::generator(g).inverse());
            matches!(derive_relator(p, &w, budget), Derivation::Proof(_))
        })
        .collect()
}

/// Two-sided check that `forward` and `backward` are mutually inverse
/// isomorphisms.
pub fn check_isomorphism(
    forward: &SubstitutionMap,
    backward: &SubstitutionMap,
    budget: &DerivationBudget,
) -> IsoCheck {
    let f = check_homomorphism(forward, budget);
    let b = check_homomorphism(backward, budget);
    let source_fixed = fixes_generators(&forward.then(backward), forward.source(), budget);
    let target_fixed = fixes_generators(&backward.then(forward), backward.source(), budget);
    IsoCheck {
        forward: f,
        backward: b,
        source_fixed,
        target_fixed,
    }
}
