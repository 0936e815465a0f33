//! Todd–Coxeter coset enumeration (HLT with a deduction queue), coset-table
//! certificate checks and permutation representations.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::fpcore::{Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumLimits {
    pub max_cosets: usize,
    /// Pending deductions kept before the queue is dropped; the HLT pass
    /// still guarantees completeness without them.
    pub max_deductions: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_cosets: 1_000_000,
            max_deductions: 100_000,
        }
    }
}

/// Live cosets exceeded the limit. The index may be infinite or just larger
/// than the budget; it is never a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("coset enumeration overflow: more than {limit} live cosets")]
pub struct Overflow {
    pub limit: usize,
}

/// Action of the generators on the right cosets of a subgroup. Coset 0 is
/// the subgroup itself. Column `2g` holds the action of generator `g` and
/// column `2g + 1` that of its inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    names: Vec<String>,
    n: usize,
    data: Vec<u32>,
    subgroup: Vec<Word>,
}

impl CosetTable {
    /// Table from raw columns, without any checking. `actions[g]` is the pair
    /// (images under g, images under g^-1).
    pub fn from_raw(
        names: Vec<String>,
        n: usize,
        actions: &[(Vec<usize>, Vec<usize>)],
        subgroup: Vec<Word>,
    ) -> Self {
        let cols = 2 * names.len();
        let mut data = vec![NONE; n * cols];
        for (g, (fwd, back)) in actions.iter().enumerate() {
            for c in 0..n {
                data[c * cols + 2 * g] = fwd[c] as u32;
                data[c * cols + 2 * g + 1] = back[c] as u32;
            }
        }
        CosetTable {
            names,
            n,
            data,
            subgroup,
        }
    }

    /// Table of a transitive permutation action, with `perms[g][c]` the image
    /// of point `c` under generator `g`. Points are renumbered so that the
    /// result is in the same normal form as [`todd_coxeter`] output, with
    /// `base` as coset 0.
    pub fn from_action(
        names: Vec<String>,
        perms: &[Vec<usize>],
        base: usize,
        subgroup: Vec<Word>,
        lim: &EnumLimits,
    ) -> Result<Self, Overflow> {
        let n = perms.first().map_or(1, Vec::len);
        if n > lim.max_cosets {
            return Err(Overflow {
                limit: lim.max_cosets,
            });
        }
        let actions: Vec<(Vec<usize>, Vec<usize>)> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; n];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                (p.clone(), inv)
            })
            .collect();
        let raw = CosetTable::from_raw(names, n, &actions, subgroup);
        Ok(raw.renumbered(base))
    }

    /// Renumbers by breadth-first search from `base` along positive
    /// generators in declaration order. Unreachable points are dropped.
    fn renumbered(&self, base: usize) -> CosetTable {
        let cols = self.cols();
        let mut new_of = vec![NONE; self.n];
        let mut order = vec![base];
        new_of[base] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for g in 0..self.names.len() {
                let d = self.data[c * cols + 2 * g] as usize;
                if new_of[d] == NONE {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut data = Vec::with_capacity(order.len() * cols);
        for &c in &order {
            for x in 0..cols {
                data.push(new_of[self.data[c * cols + x] as usize]);
            }
        }
        CosetTable {
            names: self.names.clone(),
            n: order.len(),
            data,
            subgroup: self.subgroup.clone(),
        }
    }

    pub fn n_cosets(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    fn cols(&self) -> usize {
        2 * self.names.len()
    }

    /// Image of coset `c` under table column `col`.
    pub fn image(&self, c: usize, col: usize) -> usize {
        self.data[c * self.cols() + col] as usize
    }

    pub fn act(&self, c: usize, l: Letter) -> usize {
        self.image(c, l.column())
    }

    /// Coset reached from `c` by reading `w` left to right.
    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |k, &l| self.act(k, l))
    }

    /// `{n, action: {gen: [images...]}, subgroup: [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut action = serde_json::Map::new();
        for (g, name) in self.names.iter().enumerate() {
            let images: Vec<usize> = (0..self.n).map(|c| self.image(c, 2 * g)).collect();
            action.insert(name.clone(), json!(images));
        }
        let subgroup: Vec<String> = self
            .subgroup
            .iter()
            .map(|w| crate::fpcore::format_word(&self.names, w))
            .collect();
        json!({ "n": self.n, "action": action, "subgroup": subgroup })
    }
}

struct Enumerator {
    cols: usize,
    data: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
    deductions: Vec<(u32, usize)>,
    max_deductions: usize,
    queue: Vec<u32>,
    /// Cyclic conjugates of relators and their inverses, by first column.
    conjugates: Vec<Vec<Vec<usize>>>,
}

impl Enumerator {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.data[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.data[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() >= self.max_deductions {
            self.deductions.clear();
        } else {
            self.deductions.push((c, x));
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflow> {
        if self.live >= self.limit {
            return Err(Overflow { limit: self.limit });
        }
        let d = self.parent.len() as u32;
        self.data.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(d);
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.push_deduction(c, x);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                    continue;
                }
                let nx = self.get(nu, x ^ 1);
                if nx != NONE {
                    self.merge(mu, nx);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, x ^ 1, mu);
                self.push_deduction(mu, x);
            }
        }
        self.queue.clear();
    }

    /// Traces `w` from `c` forwards and backwards. With `fill`, undefined
    /// entries are defined until the relator closes.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Overflow> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0, w.len());
        loop {
            while i < j {
                let n = self.get(f, w[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let n = self.get(b, w[j - 1] ^ 1);
                if n == NONE {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                self.push_deduction(f, w[i]);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.conjugates[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.conjugates[x][k]);
                let _ = self.scan(c, &w, false);
                self.conjugates[x][k] = w;
            }
            let d = self.get(c, x);
            if d == NONE || !self.is_live(d) {
                continue;
            }
            for k in 0..self.conjugates[x ^ 1].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = std::mem::take(&mut self.conjugates[x ^ 1][k]);
                let _ = self.scan(d, &w, false);
                self.conjugates[x ^ 1][k] = w;
            }
        }
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the right cosets of the subgroup generated by `subgroup`.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[Word],
    lim: &EnumLimits,
) -> Result<CosetTable, Overflow> {
    let ngens = p.num_generators();
    let cols = 2 * ngens;
    let relators: Vec<Vec<usize>> = p.relators().iter().map(columns).collect();
    let mut conjugates = vec![Vec::new(); cols];
    let mut seen = HashSet::new();
    for r in p.relators() {
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                let c = columns(&base.rotate(k));
                if seen.insert(c.clone()) {
                    conjugates[c[0]].push(c);
                }
            }
        }
    }
    let mut e = Enumerator {
        cols,
        data: vec![NONE; cols],
        parent: vec![0],
        live: 1,
        limit: lim.max_cosets.max(1),
        deductions: Vec::new(),
        max_deductions: lim.max_deductions.max(1),
        queue: Vec::new(),
        conjugates,
    };
    for w in subgroup {
        let c = e.rep(0);
        e.scan(c, &columns(w), true)?;
        e.process_deductions();
    }
    let mut a = 0u32;
    while (a as usize) < e.parent.len() {
        for r in &relators {
            if !e.is_live(a) {
                break;
            }
            e.scan(a, r, true)?;
            e.process_deductions();
        }
        for x in 0..cols {
            if !e.is_live(a) {
                break;
            }
            if e.get(a, x) == NONE {
                e.define(a, x)?;
                e.process_deductions();
            }
        }
        a += 1;
    }

    // Compact live cosets into a table and renumber from coset 0.
    let live: Vec<u32> = (0..e.parent.len() as u32)
        .filter(|&c| e.is_live(c))
        .collect();
    let mut index = vec![NONE; e.parent.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c as usize] = i as u32;
    }
    let mut data = Vec::with_capacity(live.len() * cols);
    for &c in &live {
        for x in 0..cols {
            let d = e.get(c, x);
            let d = e.rep(d);
            data.push(index[d as usize]);
        }
    }
    let raw = CosetTable {
        names: p.generators().to_vec(),
        n: live.len(),
        data,
        subgroup: subgroup.to_vec(),
    };
    Ok(raw.renumbered(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ValidationFailure {
    /// The column of `generator` is not a permutation; `coset` is hit twice
    /// or lies out of range.
    NotABijection {
        generator: String,
        coset: usize,
    },
    /// The inverse column does not undo the generator at `coset`.
    NotInverse {
        generator: String,
        coset: usize,
    },
    SubgroupGenerator {
        index: usize,
        end: usize,
    },
    Relator {
        relator: usize,
        coset: usize,
        end: usize,
    },
    Unreachable {
        coset: usize,
    },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::NotABijection { generator, coset } => {
                write!(f, "not a bijection: generator {generator} (coset {coset})")
            }
            ValidationFailure::NotInverse { generator, coset } => {
                write!(
                    f,
                    "inverse column mismatch: generator {generator} at coset {coset}"
                )
            }
            ValidationFailure::SubgroupGenerator { index, end } => {
                write!(f, "subgroup generator {index} traces 0 to {end}")
            }
            ValidationFailure::Relator {
                relator,
                coset,
                end,
            } => {
                write!(f, "relator {relator} traces {coset} to {end}")
            }
            ValidationFailure::Unreachable { coset } => {
                write!(f, "coset {coset} unreachable from 0")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every table invariant exhaustively. Later checks are skipped when
/// the columns are not permutations, since tracing is then meaningless.
pub fn validate_table(p: &Presentation, subgroup: &[Word], t: &CosetTable) -> ValidationReport {
    let mut failures = Vec::new();
    let n = t.n_cosets();
    for g in 0..t.num_generators() {
        let name = t.names[g].clone();
        for col in [2 * g, 2 * g + 1] {
            let mut hit = vec![false; n];
            for c in 0..n {
                let d = t.image(c, col);
                if d >= n || std::mem::replace(&mut hit[d], true) {
                    failures.push(ValidationFailure::NotABijection {
                        generator: name.clone(),
                        coset: d,
                    });
                    break;
                }
            }
        }
        for c in 0..n {
            let d = t.image(c, 2 * g);
            if d >= n || t.image(d, 2 * g + 1) != c {
                failures.push(ValidationFailure::NotInverse {
                    generator: name.clone(),
                    coset: c,
                });
                break;
            }
        }
    }
    if !failures.is_empty() {
        return ValidationReport { failures };
    }
    for (i, w) in subgroup.iter().enumerate() {
        let end = t.trace(0, w);
        if end != 0 {
            failures.push(ValidationFailure::SubgroupGenerator { index: i, end });
        }
    }
    for (ri, r) in p.relators().iter().enumerate() {
        for c in 0..n {
            let end = t.trace(c, r);
            if end != c {
                failures.push(ValidationFailure::Relator {
                    relator: ri,
                    coset: c,
                    end,
                });
                break;
            }
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    if n > 0 {
        seen[0] = true;
    }
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * t.num_generators() {
            let d = t.image(c, col);
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    if let Some(c) = seen.iter().position(|&s| !s) {
        failures.push(ValidationFailure::Unreachable { coset: c });
    }
    ValidationReport { failures }
}

/// One permutation of the cosets per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRep {
    pub degree: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PermRep {
    /// Permutation of a word, acting on the right: `c -> c.w`.
    pub fn of_word(&self, w: &Word) -> Vec<usize> {
        let inverses: Vec<Vec<usize>> = self.perms.iter().map(|p| invert(p)).collect();
        (0..self.degree)
            .map(|c| {
                w.letters().iter().fold(c, |k, l| {
                    if l.is_inverse() {
                        inverses[l.generator()][k]
                    } else {
                        self.perms[l.generator()][k]
                    }
                })
            })
            .collect()
    }

    /// Order of the generated permutation group, if at most `limit`.
    pub fn group_order(&self, limit: usize) -> Option<usize> {
        group_order(&self.perms, limit)
    }
}

pub fn permutation_rep(t: &CosetTable) -> PermRep {
    let perms = (0..t.num_generators())
        .map(|g| (0..t.n_cosets()).map(|c| t.image(c, 2 * g)).collect())
        .collect();
    PermRep {
        degree: t.n_cosets(),
        perms,
    }
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `p` then `q`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

/// Order of the group generated by `gens` by closure, or `None` beyond
/// `limit` elements.
pub fn group_order(gens: &[Vec<usize>], limit: usize) -> Option<usize> {
    let degree = gens.first().map_or(0, Vec::len);
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let h = compose(&e, g);
            if !seen.contains(&h) {
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpcore::parse_presentation;

    fn order(src: &str) -> usize {
        let p = parse_presentation(src).unwrap();
        let t = todd_coxeter(&p, &[], &EnumLimits::default()).unwrap();
        assert!(validate_table(&p, &[], &t).is_ok());
        t.n_cosets()
    }

    #[test]
    fn order_320() {
        assert_eq!(order("<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>"), 320);
    }

    #[test]
    fn icosahedral_quotient() {
        assert_eq!(order("<a,b,c | a^2=b^3=c^5=abc=1>"), 60);
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("<a | a>"), 1);
        assert_eq!(order("<x,y | x^3, y^3, (xy)^2>"), 12);
        assert_eq!(order("<a | a^7>"), 7);
        assert_eq!(order("<a,b | a^2, b^2, (ab)^3>"), 6);
        assert_eq!(order("<a,b,c | a^2, b^2, c^2, (ab)^3, (bc)^3, (ac)^2>"), 24);
        assert_eq!(order("<a,b | a^4, a^2 b^-2, b^-1 a b a>"), 8);
    }

    #[test]
    fn overflow_on_infinite_group() {
        let p = parse_presentation("<a,b | aba=bab>").unwrap();
        let lim = EnumLimits {
            max_cosets: 200,
            ..EnumLimits::default()
        };
        assert_eq!(todd_coxeter(&p, &[], &lim), Err(Overflow { limit: 200 }));
    }

    #[test]
    fn subgroup_index() {
        let p = parse_presentation("<a,b | a^2, b^3, (ab)^5>").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0)], &EnumLimits::default()).unwrap();
        assert_eq!(t.n_cosets(), 30);
        assert!(validate_table(&p, &[Word::generator(0)], &t).is_ok());
    }

    #[test]
    fn cyclic_table_and_corruption() {
        let p = parse_presentation("<a | a^3>").unwrap();
        let t = todd_coxeter(&p, &[], &EnumLimits::default()).unwrap();
        assert_eq!(
            (0..3).map(|c| t.image(c, 0)).collect::<Vec<_>>(),
            vec![1, 2, 0]
        );
        assert_eq!(permutation_rep(&t).perms, vec![vec![1, 2, 0]]);

        let bad = CosetTable::from_raw(
            vec!["a".into()],
            3,
            &[(vec![1, 2, 1], vec![0, 0, 1])],
            vec![],
        );
        let report = validate_table(&p, &[], &bad);
        assert!(!report.is_ok());
        assert!(report.failures[0]
            .to_string()
            .starts_with("not a bijection: generator a"));
    }

    #[test]
    fn deterministic() {
        let p = parse_presentation("<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>").unwrap();
        let lim = EnumLimits::default();
        assert_eq!(
            todd_coxeter(&p, &[], &lim).unwrap(),
            todd_coxeter(&p, &[], &lim).unwrap()
        );
    }

    #[test]
    fn tiny_deduction_queue_still_completes() {
        let p = parse_presentation("<a,b,c | a^2=b^3=c^5=abc=1>").unwrap();
        let lim = EnumLimits {
            max_cosets: 100_000,
            max_deductions: 1,
        };
        assert_eq!(todd_coxeter(&p, &[], &lim).unwrap().n_cosets(), 60);
    }

    #[test]
    fn perm_group_order_matches() {
        let p = parse_presentation("<a,b | a^2, b^3, (ab)^5>").unwrap();
        let t = todd_coxeter(&p, &[], &EnumLimits::default()).unwrap();
        assert_eq!(permutation_rep(&t).group_order(1000), Some(60));
    }
}
