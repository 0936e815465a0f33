//! Schreier transversals, Reidemeister–Schreier rewriting and Tietze-style
//! simplification of the resulting subgroup presentations.

use std::collections::{HashSet, VecDeque};

use crate::cosets::CosetTable;
use crate::fpcore::{DerivationBudget, Letter, Presentation, Word};

/// One representative word per coset, index-aligned with the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub representatives: Vec<Word>,
}

/// `s_{K,a} = rep(K) a rep(Ka)^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerator {
    pub coset: usize,
    pub generator: usize,
    pub value: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("word is not in the subgroup: it traces coset 0 to coset {end}")]
    NotInSubgroup { end: usize },
}

/// Shortlex-least transversal over positive words: breadth-first along
/// generators in declaration order, then along inverses for anything a
/// positive word cannot reach.
pub fn schreier_transversal(t: &CosetTable) -> Transversal {
    let n = t.n_cosets();
    let ngens = t.num_generators();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    reps[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    let pass = |cols: &[usize], queue: &mut VecDeque<usize>, reps: &mut Vec<Option<Word>>| {
        while let Some(c) = queue.pop_front() {
            for &col in cols {
                let d = t.image(c, col);
                if reps[d].is_none() {
                    let mut w = reps[c].clone().unwrap();
                    w.push(Letter::from_column(col));
                    reps[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
    };
    let positive: Vec<usize> = (0..ngens).map(|g| 2 * g).collect();
    pass(&positive, &mut queue, &mut reps);
    if reps.iter().any(Option::is_none) {
        let all: Vec<usize> = (0..2 * ngens).collect();
        queue.extend((0..n).filter(|&c| reps[c].is_some()));
        pass(&all, &mut queue, &mut reps);
    }
    Transversal {
        representatives: reps
            .into_iter()
            .map(|w| w.expect("table is transitive"))
            .collect(),
    }
}

/// Reidemeister–Schreier data for a table and transversal: which `s_{K,a}`
/// are nontrivial and their indices as subgroup generators.
pub struct Rewriter<'a> {
    table: &'a CosetTable,
    index: Vec<Option<usize>>,
    generators: Vec<SchreierGenerator>,
}

impl<'a> Rewriter<'a> {
    pub fn new(table: &'a CosetTable, tr: &Transversal) -> Self {
        let ngens = table.num_generators();
        let mut index = vec![None; table.n_cosets() * ngens];
        let mut generators = Vec::new();
        for k in 0..table.n_cosets() {
            for a in 0..ngens {
                let target = table.image(k, 2 * a);
                let ka = tr.representatives[k].mul(&Word::generator(a));
                if ka == tr.representatives[target] {
                    continue;
                }
                index[k * ngens + a] = Some(generators.len());
                let value = ka.mul(&tr.representatives[target].inverse());
                generators.push(SchreierGenerator {
                    coset: k,
                    generator: a,
                    value,
                });
            }
        }
        Rewriter {
            table,
            index,
            generators,
        }
    }

    pub fn generators(&self) -> &[SchreierGenerator] {
        &self.generators
    }

    /// Names `s{K}_{a}`.
    pub fn generator_names(&self) -> Vec<String> {
        let names = self.table.generator_names();
        self.generators
            .iter()
            .map(|s| format!("s{}_{}", s.coset, names[s.generator]))
            .collect()
    }

    /// τ applied to `w` read from coset `start`; returns the word and the
    /// coset where reading ends.
    pub fn trace_from(&self, start: usize, w: &Word) -> (Word, usize) {
        let ngens = self.table.num_generators();
        let mut k = start;
        let mut out = Word::identity();
        for &l in w.letters() {
            let a = l.generator();
            if l.is_inverse() {
                let prev = self.table.act(k, l);
                if let Some(i) = self.index[prev * ngens + a] {
                    out.push(Letter::inv_gen(i));
                }
                k = prev;
            } else {
                if let Some(i) = self.index[k * ngens + a] {
                    out.push(Letter::gen(i));
                }
                k = self.table.act(k, l);
            }
        }
        (out, k)
    }

    pub fn rewrite(&self, w: &Word) -> Result<Word, RewriteError> {
        match self.trace_from(0, w) {
            (out, 0) => Ok(out),
            (_, end) => Err(RewriteError::NotInSubgroup { end }),
        }
    }
}

/// τ(w) over the subgroup generators of [`Rewriter::new`].
pub fn rewrite(t: &CosetTable, tr: &Transversal, w: &Word) -> Result<Word, RewriteError> {
    Rewriter::new(t, tr).rewrite(w)
}

/// Presentation of the subgroup with coset 0 of `t`: generators the
/// nontrivial `s_{K,a}`, relators τ of every relator read from every coset.
pub fn subgroup_presentation(p: &Presentation, t: &CosetTable) -> Presentation {
    let tr = schreier_transversal(t);
    let rw = Rewriter::new(t, &tr);
    let mut relators = Vec::with_capacity(t.n_cosets() * p.relators().len());
    for k in 0..t.n_cosets() {
        for r in p.relators() {
            let (w, end) = rw.trace_from(k, r);
            debug_assert_eq!(end, k, "relator does not close in the coset table");
            relators.push(w);
        }
    }
    Presentation::new(rw.generator_names(), relators)
        .expect("Schreier generators cover all letters")
}

// ---------------------------------------------------------------------------
// Simplification

struct Work {
    names: Vec<String>,
    relators: Vec<Word>,
    length_cap: usize,
    moves_left: usize,
}

impl Work {
    fn total(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    fn spend(&mut self) -> bool {
        if self.moves_left == 0 {
            return false;
        }
        self.moves_left -= 1;
        true
    }

    /// Drops empty relators and duplicates up to rotation and inversion.
    fn dedup(&mut self) {
        let mut seen = HashSet::new();
        self.relators
            .retain(|r| !r.is_empty() && seen.insert(r.cyclic_canonical().0));
    }

    /// Replaces generator `g` by `image` everywhere and deletes it.
    fn eliminate(&mut self, g: usize, image: &Word) {
        let renumber = |l: Letter| -> Letter {
            let h = l.generator();
            Letter::new(if h > g { h - 1 } else { h }, l.is_inverse())
        };
        let image: Word = image.letters().iter().map(|&l| renumber(l)).collect();
        let image_inv = image.inverse();
        for r in &mut self.relators {
            let mut out = Word::identity();
            for &l in r.letters() {
                if l.generator() == g {
                    let part = if l.is_inverse() { &image_inv } else { &image };
                    out = out.mul(part);
                } else {
                    out.push(renumber(l));
                }
            }
            *r = out.cyclically_reduced();
        }
        self.names.remove(g);
    }

    /// Kills generators that equal a relator of length 1.
    fn unit_relators(&mut self) -> bool {
        let Some(i) = self.relators.iter().position(|r| r.len() == 1) else {
            return false;
        };
        if !self.spend() {
            return false;
        }
        let g = self.relators[i].letters()[0].generator();
        self.relators.remove(i);
        self.eliminate(g, &Word::identity());
        true
    }

    /// One Tietze elimination of a generator occurring exactly once in some
    /// relator. Candidates: shortest relator first, then the last-declared
    /// generator, subject to the length cap.
    fn eliminate_once(&mut self) -> bool {
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&i| (self.relators[i].len(), i));
        let total = self.total();
        for i in order {
            let r = &self.relators[i];
            let mut gens: Vec<usize> = r.letters().iter().map(|l| l.generator()).collect();
            gens.sort_unstable();
            gens.dedup();
            for &g in gens.iter().rev() {
                if r.occurrences(g) != 1 {
                    continue;
                }
                let pos = r.letters().iter().position(|l| l.generator() == g).unwrap();
                let rot = r.rotate(pos);
                let rest = Word::from_raw(rot.letters()[1..].to_vec());
                // g v = 1 gives g = v^-1; g^-1 v = 1 gives g = v.
                let image = if rot.letters()[0].is_inverse() {
                    rest
                } else {
                    rest.inverse()
                };
                let growth: usize = self
                    .relators
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, s)| s.occurrences(g) * image.len().saturating_sub(1))
                    .sum();
                if total - r.len() + growth > self.length_cap {
                    continue;
                }
                if !self.spend() {
                    return false;
                }
                self.relators.remove(i);
                self.eliminate(g, &image);
                return true;
            }
        }
        false
    }

    /// Replaces a piece of one relator that covers more than half of a cyclic
    /// conjugate of another relator (or its inverse) by the inverse of the
    /// complement.
    fn shorten_once(&mut self) -> bool {
        for si in 0..self.relators.len() {
            let s = self.relators[si].clone();
            let n = s.len();
            let doubled: Vec<Letter> = s.letters().iter().chain(s.letters()).copied().collect();
            for ri in 0..self.relators.len() {
                let r = &self.relators[ri];
                if ri == si || r.len() > n {
                    continue;
                }
                for base in [r.clone(), r.inverse()] {
                    let m = base.len();
                    for rot in 0..m {
                        let v = base.rotate(rot);
                        let vl = v.letters();
                        for start in 0..n {
                            let mut k = 0;
                            while k < m && k < n && doubled[start + k] == vl[k] {
                                k += 1;
                            }
                            if 2 * k <= m {
                                continue;
                            }
                            if !self.spend() {
                                return false;
                            }
                            // s = P X with P = v[..k] at `start`; v = P Q, so P = Q^-1.
                            let q = Word::from_raw(vl[k..].to_vec()).inverse();
                            let rest: Vec<Letter> = doubled[start + k..start + n].to_vec();
                            let new = q.mul(&Word::new(rest)).cyclically_reduced();
                            self.relators[si] = new;
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Deterministic Tietze simplification: drop trivial and duplicate relators,
/// eliminate generators, shorten relators against each other. The total
/// relator length never exceeds four times the input's; `budget.max_states`
/// caps the number of moves.
pub fn simplify(p: &Presentation, budget: &DerivationBudget) -> Presentation {
    let mut w = Work {
        names: p.generators().to_vec(),
        relators: p.relators().to_vec(),
        length_cap: 4 * p.total_relator_length(),
        moves_left: budget.max_states,
    };
    loop {
        w.dedup();
        if w.unit_relators() || w.eliminate_once() || w.shorten_once() {
            continue;
        }
        break;
    }
    w.dedup();
    Presentation::new(w.names, w.relators).expect("simplification keeps letters in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelian_invariants;
    use crate::cosets::{todd_coxeter, EnumLimits};
    use crate::fpcore::parse_presentation;

    fn table(src: &str, sub: &[&str]) -> (Presentation, CosetTable) {
        let p = parse_presentation(src).unwrap();
        let words: Vec<Word> = sub
            .iter()
            .map(|s| crate::fpcore::parse_word(s, p.generators()).unwrap())
            .collect();
        let t = todd_coxeter(&p, &words, &EnumLimits::default()).unwrap();
        (p, t)
    }

    #[test]
    fn transversals() {
        let (_, t) = table("<a | a^3>", &[]);
        let tr = schreier_transversal(&t);
        let a = Word::generator(0);
        assert_eq!(
            tr.representatives,
            vec![Word::identity(), a.clone(), a.pow(2)]
        );

        let (_, t) = table("<a,b | aba=bab>", &["a", "b"]);
        assert_eq!(
            schreier_transversal(&t).representatives,
            vec![Word::identity()]
        );
    }

    #[test]
    fn index_one_is_renaming() {
        let (p, t) = table("<a,b | aba=bab>", &["a", "b"]);
        let sp = subgroup_presentation(&p, &t);
        assert_eq!(sp.generators(), ["s0_a", "s0_b"]);
        assert_eq!(sp.relators(), p.relators());
    }

    #[test]
    fn free_group_index_two() {
        let (p, t) = table("<a,b | >", &["a", "b^2", "b a b^-1"]);
        assert_eq!(t.n_cosets(), 2);
        let sp = subgroup_presentation(&p, &t);
        assert_eq!(sp.num_generators(), 3);
        assert!(sp.relators().is_empty());
        assert_eq!(abelian_invariants(&sp).to_string(), "Z^3");
    }

    #[test]
    fn rewrite_rejects_non_members() {
        let (_, t) = table("<a | a^3>", &[]);
        let tr = schreier_transversal(&t);
        assert_eq!(
            rewrite(&t, &tr, &Word::generator(0)),
            Err(RewriteError::NotInSubgroup { end: 1 })
        );
        let w = rewrite(&t, &tr, &Word::power_of(0, 3)).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn simplify_examples() {
        let b = DerivationBudget::default();
        let p = parse_presentation("<a,b | b>").unwrap();
        assert_eq!(simplify(&p, &b).to_string(), "<a | >");
        let p = parse_presentation("<a,b | ab, ab>").unwrap();
        assert_eq!(simplify(&p, &b).to_string(), "<a | >");
        let p = parse_presentation("<a,b | a^2, b a b^-1 a^-3>").unwrap();
        assert_eq!(
            abelian_invariants(&simplify(&p, &b)),
            abelian_invariants(&p)
        );
    }

    #[test]
    fn dehn_shortening_turns_conjugate_into_commutator() {
        let p = parse_presentation("<a,bb,t | [bb,t], a t^-1 bb t a^-1 t^-1 bb^-1 t>").unwrap();
        let s = simplify(&p, &DerivationBudget::default());
        assert_eq!(s.relators().len(), 2);
        assert!(s.relators().iter().all(|r| r.len() == 4));
    }
}
