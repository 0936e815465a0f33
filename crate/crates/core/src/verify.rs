//! The lemma suite: each check rebuilds its groups from the catalog, runs
//! the relevant algorithms, and reports Pass, Fail with a witness, or
//! Inconclusive when a budget ran out.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::{abelian_invariants, InvariantFactors};
use crate::catalog::{artin_from_triple, build, GroupTag};
use crate::classify::{canonical_key, classify, table, CASE_LABELS};
use crate::cosets::{todd_coxeter, validate_table, CosetTable, EnumLimits};
use crate::fpcore::{
    check_homomorphism, check_isomorphism, derive_relator, parse_presentation, parse_word,
    Derivation, DerivationBudget, HomCheck, IsoCheck, Presentation, SubstitutionMap, Word,
};
use crate::geometry::{builtin_scripts, CombinatorialType};
use crate::schreier::{simplify, subgroup_presentation};

pub const LEMMA_IDS: &[&str] = &[
    "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8", "V9", "V10", "V11", "V12",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail { witness: String },
    Inconclusive { budget: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub id: String,
    pub title: String,
    #[serde(flatten)]
    pub status: Status,
    /// Wall time; left out of JSON so reports compare byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
    pub artifacts: Value,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match &self.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail { witness } => format!("FAIL ({witness})"),
            Status::Inconclusive { budget } => format!("INCONCLUSIVE ({budget})"),
        };
        write!(
            f,
            "{:<4} {:<48} {} [{:.2?}]",
            self.id, self.title, s, self.elapsed
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Parallel,
    Sequential,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Lemma ids to run; all when empty.
    pub only: Vec<String>,
    pub budget: DerivationBudget,
    pub max_cosets: usize,
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            only: Vec::new(),
            budget: DerivationBudget::default(),
            max_cosets: EnumLimits::default().max_cosets,
            execution: Execution::Parallel,
        }
    }
}

impl SuiteConfig {
    fn limits(&self) -> EnumLimits {
        EnumLimits {
            max_cosets: self.max_cosets,
            ..EnumLimits::default()
        }
    }
}

/// Outcome of one lemma body: status plus artifacts.
struct Outcome {
    status: Status,
    artifacts: Value,
}

fn pass(artifacts: Value) -> Outcome {
    Outcome {
        status: Status::Pass,
        artifacts,
    }
}

fn fail(witness: impl Into<String>, artifacts: Value) -> Outcome {
    Outcome {
        status: Status::Fail {
            witness: witness.into(),
        },
        artifacts,
    }
}

fn inconclusive(budget: impl Into<String>, artifacts: Value) -> Outcome {
    Outcome {
        status: Status::Inconclusive {
            budget: budget.into(),
        },
        artifacts,
    }
}

/// Early return from a lemma body when enumeration overflows.
macro_rules! enumerate {
    ($p:expr, $sub:expr, $cfg:expr, $what:expr) => {
        match todd_coxeter($p, $sub, &$cfg.limits()) {
            Ok(t) => t,
            Err(o) => {
                return inconclusive(
                    format!("{}: more than {} cosets", $what, o.limit),
                    Value::Null,
                );
            }
        }
    };
}

fn pres(text: &str) -> Presentation {
    parse_presentation(text).expect("built-in presentation parses")
}

fn built(tag: &str) -> Presentation {
    build(&tag.parse::<GroupTag>().expect("built-in tag parses")).expect("built-in tag builds")
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<LemmaReport> {
    let ids: Vec<&str> = if cfg.only.is_empty() {
        LEMMA_IDS.to_vec()
    } else {
        LEMMA_IDS
            .iter()
            .copied()
            .filter(|id| cfg.only.iter().any(|o| o.eq_ignore_ascii_case(id)))
            .collect()
    };
    match cfg.execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            ids.par_iter().map(|id| run_lemma(id, cfg)).collect()
        }
        _ => ids.iter().map(|id| run_lemma(id, cfg)).collect(),
    }
}

/// Runs one lemma by id. Unknown ids fail.
pub fn run_lemma(id: &str, cfg: &SuiteConfig) -> LemmaReport {
    let start = Instant::now();
    let (title, body): (&str, fn(&SuiteConfig) -> Outcome) = match id {
        "V1" => ("order 320 quintic group", v1),
        "V2" => ("Gr<2,3,5> quotient is A5", v2),
        "V3" => ("Delta(2,3,7) kernel onto PSL(2,7) is genus 3", v3),
        "V4" => ("central quotient is Delta(2,3,7)", v4),
        "V5" => ("C4(3A2) group is Art_333", v5),
        "V6" => ("toric T_{2,2r} quotients", v6),
        "V7" => ("C3+C2 quotient and orders 12, 24", v7),
        "V8" => ("C2+3C1 index-2 kernel is a RAAG", v8),
        "V9" => ("abelianization golden table", v9),
        "V10" => ("blow-up arithmetic", v10),
        "V11" => ("classifier goldens", v11),
        "V12" => ("sphere braid group order 12", v12),
        _ => {
            return LemmaReport {
                id: id.to_string(),
                title: "unknown lemma".into(),
                status: Status::Fail {
                    witness: format!("no lemma {id}"),
                },
                elapsed: start.elapsed(),
                artifacts: Value::Null,
            }
        }
    };
    let out = body(cfg);
    LemmaReport {
        id: id.to_string(),
        title: title.to_string(),
        status: out.status,
        elapsed: start.elapsed(),
        artifacts: out.artifacts,
    }
}

/// Finite group check: order by enumeration over the trivial subgroup, plus
/// a certificate check of the table.
fn order_of(p: &Presentation, cfg: &SuiteConfig) -> Result<(CosetTable, bool), usize> {
    match todd_coxeter(p, &[], &cfg.limits()) {
        Ok(t) => {
            let ok = validate_table(p, &[], &t).is_ok();
            Ok((t, ok))
        }
        Err(o) => Err(o.limit),
    }
}

fn v1(cfg: &SuiteConfig) -> Outcome {
    let p = build(&GroupTag::QuinticExplicit("C5_3A4".into())).unwrap();
    let t = enumerate!(&p, &[], cfg, "C5(3A4)");
    let inv = abelian_invariants(&p);
    let art =
        json!({ "cosets": t.n_cosets(), "abelianization": inv.to_string(), "table": t.to_json() });
    if t.n_cosets() != 320 {
        return fail(format!("{} cosets, expected 320", t.n_cosets()), art);
    }
    if !validate_table(&p, &[], &t).is_ok() {
        return fail("coset table fails validation", art);
    }
    if inv != InvariantFactors::new(0, vec![5]) {
        return fail(format!("abelianization {inv}, expected Z/5"), art);
    }
    pass(art)
}

fn v2(cfg: &SuiteConfig) -> Outcome {
    let p = pres("<a,b,c | a^2 = b^3 = c^5 = a b c = 1>");
    let t = enumerate!(&p, &[], cfg, "Gr<2,3,5>/a^2");
    let inv = abelian_invariants(&p);
    // The displayed quotient is Gr<2,3,5> with a^2 added.
    let gr = built("gr:2,3,5");
    let same = gr
        .with_relators([gr.gen("a").pow(2)])
        .ok()
        .and_then(|q| todd_coxeter(&q, &[], &cfg.limits()).ok());
    let art = json!({
        "order": t.n_cosets(),
        "abelianization": inv.to_string(),
        "gr_quotient_order": same.as_ref().map(CosetTable::n_cosets),
    });
    if t.n_cosets() != 60 {
        return fail(format!("order {}, expected 60", t.n_cosets()), art);
    }
    if !inv.is_trivial() {
        return fail(format!("abelianization {inv}, expected trivial"), art);
    }
    if same.map(|t| t.n_cosets()) != Some(60) {
        return fail("Gr<2,3,5> with a^2 added does not enumerate to 60", art);
    }
    pass(art)
}

// ---------------------------------------------------------------------------
// V3: PSL(2,7)

type Mat = [u8; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let m = |a: u8, b: u8, c: u8, d: u8| {
        ((u32::from(a) * u32::from(b) + u32::from(c) * u32::from(d)) % 7) as u8
    };
    [
        m(x[0], y[0], x[1], y[2]),
        m(x[0], y[1], x[1], y[3]),
        m(x[2], y[0], x[3], y[2]),
        m(x[2], y[1], x[3], y[3]),
    ]
}

/// Representative of `{m, -m}`: the lexicographically smaller one.
fn projective(m: Mat) -> Mat {
    let neg = m.map(|x| (7 - x) % 7);
    m.min(neg)
}

/// The 168 elements of PSL(2,7), sorted, with the multiplication table.
pub struct Psl27 {
    pub elements: Vec<Mat>,
    mul: Vec<Vec<u8>>,
    pub identity: usize,
}

impl Psl27 {
    pub fn new() -> Self {
        let mut set = BTreeSet::new();
        for a in 0..7u8 {
            for b in 0..7u8 {
                for c in 0..7u8 {
                    for d in 0..7u8 {
                        if (u32::from(a) * u32::from(d) + 49 - u32::from(b) * u32::from(c)) % 7 == 1
                        {
                            set.insert(projective([a, b, c, d]));
                        }
                    }
                }
            }
        }
        let elements: Vec<Mat> = set.into_iter().collect();
        let index: HashMap<Mat, usize> =
            elements.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mul = elements
            .iter()
            .map(|x| {
                elements
                    .iter()
                    .map(|y| index[&projective(mat_mul(x, y))] as u8)
                    .collect()
            })
            .collect();
        let identity = index[&projective([1, 0, 0, 1])];
        Psl27 {
            elements,
            mul,
            identity,
        }
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j] as usize
    }

    pub fn order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Size of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.elements.len()];
        let mut stack = vec![self.identity];
        seen[self.identity] = true;
        let mut n = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    n += 1;
                    stack.push(y);
                }
            }
        }
        n
    }

    /// First pair `(x, y)` in index order with `|x| = 2`, `|y| = 3`,
    /// `|xy| = 7` generating the whole group.
    pub fn find_237_pair(&self, execution: Execution) -> Option<(usize, usize)> {
        let n = self.elements.len();
        let twos: Vec<usize> = (0..n).filter(|&i| self.order(i) == 2).collect();
        let threes: Vec<usize> = (0..n).filter(|&i| self.order(i) == 3).collect();
        let pairs: Vec<(usize, usize)> = twos
            .iter()
            .flat_map(|&x| threes.iter().map(move |&y| (x, y)))
            .collect();
        let ok = |&&(x, y): &&(usize, usize)| {
            self.order(self.mul(x, y)) == 7 && self.closure(&[x, y]) == n
        };
        match execution {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                pairs.par_iter().find_first(ok).copied()
            }
            _ => pairs.iter().find(ok).copied(),
        }
    }

    /// Right-regular action of `g` as a permutation of element indices.
    pub fn right_action(&self, g: usize) -> Vec<usize> {
        (0..self.elements.len()).map(|i| self.mul(i, g)).collect()
    }
}

impl Default for Psl27 {
    fn default() -> Self {
        Self::new()
    }
}

fn v3(cfg: &SuiteConfig) -> Outcome {
    let g = Psl27::new();
    if g.elements.len() != 168 {
        return fail(
            format!("group has {} elements", g.elements.len()),
            Value::Null,
        );
    }
    let Some((x, y)) = g.find_237_pair(cfg.execution) else {
        return fail("no (2,3,7) generating pair", Value::Null);
    };
    let delta = built("triangle:2,3,7");
    let perms = [g.right_action(x), g.right_action(y)];
    let t = match CosetTable::from_action(
        delta.generators().to_vec(),
        &perms,
        g.identity,
        Vec::new(),
        &cfg.limits(),
    ) {
        Ok(t) => t,
        Err(o) => {
            return inconclusive(
                format!("index 168 exceeds max cosets {}", o.limit),
                Value::Null,
            )
        }
    };
    let mut art = json!({ "x": g.elements[x], "y": g.elements[y], "index": t.n_cosets() });
    let report = validate_table(&delta, &[], &t);
    if !report.is_ok() {
        return fail(
            format!("action is not a Delta(2,3,7) table: {}", report.failures[0]),
            art,
        );
    }
    let k = subgroup_presentation(&delta, &t);
    let s = simplify(&k, &cfg.budget);
    let inv = abelian_invariants(&s);
    art["kernel_generators"] = json!(k.num_generators());
    art["kernel_relators"] = json!(k.relators().len());
    art["simplified_generators"] = json!(s.num_generators());
    art["simplified_relators"] = json!(s.relators().len());
    art["abelianization"] = json!(inv.to_string());
    if inv != InvariantFactors::free(6) {
        return fail(format!("kernel abelianizes to {inv}, expected Z^6"), art);
    }
    pass(art)
}

fn hom_summary(h: &HomCheck) -> Value {
    match h {
        HomCheck::Verified(ts) => {
            json!({ "verified": ts.iter().map(|t| t.insertions()).collect::<Vec<_>>() })
        }
        HomCheck::Refuted(r) => json!({ "refuted": r }),
        HomCheck::Inconclusive { relator } => json!({ "inconclusive_relator": relator }),
    }
}

fn iso_outcome(iso: &IsoCheck, mut art: Value) -> Outcome {
    art["forward"] = hom_summary(&iso.forward);
    art["backward"] = hom_summary(&iso.backward);
    art["source_fixed"] = json!(iso.source_fixed);
    art["target_fixed"] = json!(iso.target_fixed);
    if iso.is_verified() {
        return pass(art);
    }
    for (dir, h) in [("forward", &iso.forward), ("backward", &iso.backward)] {
        match h {
            HomCheck::Refuted(r) => return fail(format!("{dir} map refuted: {r:?}"), art),
            HomCheck::Inconclusive { relator } => {
                return inconclusive(
                    format!("{dir} relator {relator} underived; raise --budget"),
                    art,
                )
            }
            HomCheck::Verified(_) => {}
        }
    }
    inconclusive(
        "a round trip does not fix every generator within budget",
        art,
    )
}

/// The map sending each generator to the same-index generator of `target`.
fn rename(source: &Presentation, target: &Presentation) -> SubstitutionMap {
    let images = (0..source.num_generators()).map(Word::generator).collect();
    SubstitutionMap::new(source.clone(), target.clone(), images).expect("same generator count")
}

fn v4(cfg: &SuiteConfig) -> Outcome {
    let delta = built("triangle:2,3,7");
    let quotient = pres("<u,v | u^3 = v^7 = (u v^2)^2 = 1>");
    let pi = build(&GroupTag::QuinticExplicit("C5_A6_3A2".into())).unwrap();
    let u3_added = pi.with_relators([pi.gen("u").pow(3)]).unwrap();
    // Same group: the relators of one are consequences of the other's.
    let same = check_isomorphism(
        &rename(&quotient, &u3_added),
        &rename(&u3_added, &quotient),
        &cfg.budget,
    );
    if !same.is_verified() {
        return iso_outcome(&same, json!({ "step": "quotient presentation" }));
    }
    let phi = SubstitutionMap::from_strs(delta.clone(), quotient.clone(), &["u v^2", "u"]).unwrap();
    // v = v^8 = (u^-1 a)^4 = (b^-1 a)^4.
    let psi = SubstitutionMap::from_strs(quotient, delta, &["b", "(b^-1 a)^4"]).unwrap();
    iso_outcome(
        &check_isomorphism(&phi, &psi, &cfg.budget),
        json!({ "step": "phi" }),
    )
}

fn v5(cfg: &SuiteConfig) -> Outcome {
    let q = build(&GroupTag::QuinticExplicit("C4_3A2".into())).unwrap();
    let art333 = artin_from_triple(3, 3, 3).unwrap();
    let fwd =
        SubstitutionMap::from_strs(q.clone(), art333.clone(), &["a", "b", "b^-1 x b"]).unwrap();
    let back = SubstitutionMap::from_strs(art333, q, &["a", "b", "b c b^-1"]).unwrap();
    iso_outcome(&check_isomorphism(&fwd, &back, &cfg.budget), json!({}))
}

fn v6(cfg: &SuiteConfig) -> Outcome {
    let mut art = json!({});
    for r in [2u32, 3] {
        let t = build(&GroupTag::ToricEven(r)).unwrap();
        let inv = abelian_invariants(&t);
        art[format!("T_2,{}", 2 * r)] = json!(inv.to_string());
        if inv != InvariantFactors::free(2) {
            return fail(
                format!("T_{{2,{}}} abelianizes to {inv}, expected Z^2", 2 * r),
                art,
            );
        }
        let ab = t.gen("a").mul(&t.gen("b"));
        let quotient = t.with_relators([ab.pow(i64::from(r))]).unwrap();
        let target = pres(&format!("<a,c | c^{r}>"));
        let fwd =
            SubstitutionMap::from_strs(quotient.clone(), target.clone(), &["a", "a^-1 c"]).unwrap();
        let back = SubstitutionMap::from_strs(target, quotient, &["a", "a b"]).unwrap();
        let iso = check_isomorphism(&fwd, &back, &cfg.budget);
        let out = iso_outcome(&iso, json!({}));
        art[format!("quotient_r{r}")] = out.artifacts;
        if out.status != Status::Pass {
            return Outcome {
                status: out.status,
                artifacts: art,
            };
        }
    }
    pass(art)
}

fn v7(cfg: &SuiteConfig) -> Outcome {
    let pi = build(&GroupTag::QuinticExplicit("C3_C2".into())).unwrap();
    let quotient = pi
        .with_relators([pi.gen("a").pow(3), pi.gen("b").pow(3)])
        .unwrap();
    let source = pres("<x,y | x^3, y^3, (x y)^2>");
    let m = SubstitutionMap::from_strs(source.clone(), quotient.clone(), &["a", "b^-1"]).unwrap();
    let h = check_homomorphism(&m, &cfg.budget);
    let mut art = json!({ "surjection": hom_summary(&h) });
    match &h {
        HomCheck::Verified(_) => {}
        HomCheck::Refuted(r) => return fail(format!("surjection refuted: {r:?}"), art),
        HomCheck::Inconclusive { relator } => {
            return inconclusive(format!("relator {relator} underived; raise --budget"), art)
        }
    }
    let src = enumerate!(&source, &[], cfg, "<x,y|x^3,y^3,(xy)^2>");
    let cox = built("coxeter:233");
    let ct = enumerate!(&cox, &[], cfg, "Cox_233");
    let qt = enumerate!(&quotient, &[], cfg, "Pi/<a^3,b^3>");
    art["source_order"] = json!(src.n_cosets());
    art["cox233_order"] = json!(ct.n_cosets());
    art["quotient_order"] = json!(qt.n_cosets());
    if src.n_cosets() != 12 {
        return fail(format!("source order {}, expected 12", src.n_cosets()), art);
    }
    if ct.n_cosets() != 24 {
        return fail(format!("Cox_233 order {}, expected 24", ct.n_cosets()), art);
    }
    // The map hits both generators, so it is onto; equal orders make it an
    // isomorphism.
    if qt.n_cosets() != 12 {
        return fail(
            format!("quotient order {}, expected 12", qt.n_cosets()),
            art,
        );
    }
    // b^3 central in the unquotiented group.
    let b3 = pi.gen("b").pow(3);
    let w = Word::commutator(&pi.gen("a"), &b3);
    match derive_relator(&pi, &w, &cfg.budget) {
        Derivation::Proof(t) => art["b3_central_insertions"] = json!(t.insertions()),
        Derivation::Inconclusive { states } => {
            return inconclusive(format!("[a, b^3] underived after {states} states"), art)
        }
    }
    pass(art)
}

/// Name-independent test that `p`'s relators are commutators of distinct
/// generators; returns the edges.
fn commutator_edges(p: &Presentation) -> Result<BTreeSet<(usize, usize)>, usize> {
    let mut edges = BTreeSet::new();
    for (i, r) in p.relators().iter().enumerate() {
        let l = r.letters();
        let ok = l.len() == 4
            && l[0].generator() != l[1].generator()
            && l[2] == l[0].inverse()
            && l[3] == l[1].inverse();
        if !ok {
            return Err(i);
        }
        let (a, b) = (l[0].generator(), l[1].generator());
        edges.insert((a.min(b), a.max(b)));
    }
    Ok(edges)
}

/// Splits the vertices into the two sides of a complete bipartite graph,
/// or returns `None`.
fn complete_bipartite(
    n: usize,
    edges: &BTreeSet<(usize, usize)>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let left: Vec<usize> = (0..n).filter(|&v| v == 0 || !adj(0, v)).collect();
    let right: Vec<usize> = (0..n).filter(|v| !left.contains(v)).collect();
    let complete = left.iter().all(|&a| right.iter().all(|&b| adj(a, b)));
    let no_inner = edges.len() == left.len() * right.len();
    (complete && no_inner).then_some((left, right))
}

fn v8(cfg: &SuiteConfig) -> Outcome {
    let pi = build(&GroupTag::QuinticExplicit("C2_3C1_a".into())).unwrap();
    // Rewrite with x = bc, i.e. c = b^-1 x.
    let names: Vec<String> = ["a", "b", "x"].map(String::from).to_vec();
    let shell = Presentation::free(names.clone());
    let to_x = SubstitutionMap::from_strs(pi.clone(), shell, &["a", "b", "b^-1 x"]).unwrap();
    let relators: Vec<Word> = pi.relators().iter().map(|r| to_x.apply(r)).collect();
    let p = Presentation::new(names, relators).unwrap();
    // Kernel of a, b -> 0, x -> 1 in Z/2: the table of that action.
    let sub: Vec<Word> = ["a", "b", "x^2", "x a x^-1", "x b x^-1"]
        .iter()
        .map(|w| parse_word(w, p.generators()).unwrap())
        .collect();
    let perms = [vec![0, 1], vec![0, 1], vec![1, 0]];
    let t = match CosetTable::from_action(
        p.generators().to_vec(),
        &perms,
        0,
        sub.clone(),
        &cfg.limits(),
    ) {
        Ok(t) => t,
        Err(o) => {
            return inconclusive(
                format!("index 2 exceeds max cosets {}", o.limit),
                Value::Null,
            )
        }
    };
    let report = validate_table(&p, &sub, &t);
    if !report.is_ok() {
        return fail(
            format!("Z/2 action is not a table: {}", report.failures[0]),
            Value::Null,
        );
    }
    let mut art = json!({ "presentation": p.to_string(), "index": t.n_cosets() });
    if t.n_cosets() != 2 {
        return fail(format!("index {}, expected 2", t.n_cosets()), art);
    }
    let k = subgroup_presentation(&p, &t);
    let s = simplify(&k, &cfg.budget);
    let inv = abelian_invariants(&s);
    art["kernel"] = json!(s.to_string());
    art["abelianization"] = json!(inv.to_string());
    if s.num_generators() != 5 || s.relators().len() != 6 {
        return fail(
            format!(
                "{} generators and {} relators, expected 5 and 6",
                s.num_generators(),
                s.relators().len()
            ),
            art,
        );
    }
    let edges = match commutator_edges(&s) {
        Ok(e) => e,
        Err(i) => {
            return fail(
                format!(
                    "relator {} is not a commutator",
                    s.format_word(&s.relators()[i])
                ),
                art,
            )
        }
    };
    let Some((l, r)) = complete_bipartite(5, &edges) else {
        return fail("commutation graph is not complete bipartite", art);
    };
    let (small, big) = if l.len() < r.len() { (l, r) } else { (r, l) };
    let names = |v: &[usize]| {
        v.iter()
            .map(|&i| s.generators()[i].clone())
            .collect::<Vec<_>>()
    };
    art["sides"] = json!([names(&small), names(&big)]);
    // b, b' = x b x^-1 against a, a' = x a x^-1, t = x^2.
    if names(&small) != ["s0_b", "s1_b"] || names(&big) != ["s0_a", "s1_a", "s1_x"] {
        return fail(
            format!(
                "sides {:?} and {:?}, expected {{b, b'}} and {{a, a', t}}",
                names(&small),
                names(&big)
            ),
            art,
        );
    }
    if inv != InvariantFactors::free(5) {
        return fail(format!("abelianization {inv}, expected Z^5"), art);
    }
    pass(art)
}

/// Hand-computed abelianizations of catalog groups.
pub const ABELIAN_GOLDEN: &str = include_str!("../fixtures/abelian_golden.json");

fn v9(_cfg: &SuiteConfig) -> Outcome {
    let rows: Vec<(String, String)> =
        serde_json::from_str(ABELIAN_GOLDEN).expect("golden table parses");
    let mut checked = BTreeMap::new();
    for (tag, expected) in &rows {
        let p = built(tag);
        let got = abelian_invariants(&p).to_string();
        checked.insert(tag.clone(), got.clone());
        if &got != expected {
            return fail(
                format!("{tag}: got {got}, expected {expected}"),
                json!(checked),
            );
        }
    }
    pass(json!(checked))
}

fn v10(_cfg: &SuiteConfig) -> Outcome {
    let mut art = BTreeMap::new();
    let mut printed = 0;
    for s in builtin_scripts() {
        let out = match s.run() {
            Ok(o) => o,
            Err(e) => return fail(format!("{}: {e}", s.case), json!(art)),
        };
        let c = &out.report.components[0];
        art.insert(
            s.case.clone(),
            json!({ "self_intersection": c.self_intersection, "twice_nodes": c.twice_nodes, "nori": out.report.pass }),
        );
        if !out.matches {
            return fail(
                format!(
                    "{}: D.D = {} > 2r = {} is {}",
                    s.case, c.self_intersection, c.twice_nodes, out.report.pass
                ),
                json!(art),
            );
        }
        printed += usize::from(s.printed);
    }
    if printed != 13 {
        return fail(
            format!("{printed} printed values replayed, expected 13"),
            json!(art),
        );
    }
    pass(json!(art))
}

/// Expected group for each case label, written out independently of the table.
pub const CLASSIFIER_GOLDEN: &[(&str, &str)] = &[
    ("3C1 concurrent", "F_2"),
    ("1.1", "Z^3"),
    ("1.2", "F_2 x Z"),
    ("1.3", "F_3"),
    ("2.1.1", "Z"),
    ("2.1.2", "Z"),
    ("2.1.3", "Z"),
    ("2.2.1", "Z"),
    ("2.2.2", "Z"),
    ("2.2.3", "Z"),
    ("2.2.4", "Z"),
    ("2.2.5", "Z"),
    ("2.3.1", "Z"),
    ("2.3.2", "Z"),
    ("2.3.3", "B_3"),
    ("2.3.4", "Z"),
    ("2.3.5", "Z"),
    ("3.1", "Z * Z/2"),
    ("3.2", "virtually abelian (abelian kernel, quotient Z/2)"),
    ("3.3", "virtually abelian (abelian kernel, quotient Z/2)"),
    ("3.4", "Z * Z/2"),
    ("3.5", "Z + Z/2"),
    ("4.1", "Z^2"),
    ("4.2", "virtually abelian (abelian kernel, quotient Z)"),
    ("4.3", "virtually abelian (abelian kernel, quotient Z)"),
    ("4.4", "virtually abelian (abelian kernel, quotient Z)"),
    ("4.5", "F_2 ⋊ Z"),
    ("quartic 3A2", "B_3(S^2)"),
    ("Q1a", "Pi(C5_3A4)"),
    ("Q1b", "Pi(C5_A6_3A2)"),
    ("Q2a", "Art_333"),
    ("Q2b", "B_3"),
    ("Q2c", "B_4"),
    ("Q2d", "G_3(t + 1)"),
    ("Q2e", "G_5(t + 1)"),
    ("Q2f", "Gr<2,3,5> x Z"),
    ("Q2g", "T_{3,4}"),
    ("Q3", "Pi(C3_C2)"),
    ("Q4a", "Z x B_3"),
    ("Q4b", "G(t^2 - 1)"),
    ("Q4c", "G(t^3 - 1)"),
    ("Q4d", "T_{2,4}"),
    ("Q4e", "Art_234"),
    ("Q4f", "T_{2,6}"),
    ("Q5a", "F_2"),
    ("Q5b", "T_{2,4}"),
    ("Q5c", "Z x B_3"),
    ("Q6a", "Z x F_2"),
    ("Q6b", "Z x T_{2,4}"),
    ("Q6c", "Pi(C2_3C1_a)"),
    ("Q6d", "Art_244"),
    ("Q7a", "F_4"),
    ("Q7b", "Z x F_3"),
    ("Q7c", "F_2 x F_2"),
    ("Q7d", "Z x Z x F_2"),
];

fn v11(cfg: &SuiteConfig) -> Outcome {
    let mut art = BTreeMap::new();
    for &label in CASE_LABELS {
        let Some(&(_, expected)) = CLASSIFIER_GOLDEN.iter().find(|(l, _)| *l == label) else {
            return fail(format!("no golden answer for {label}"), json!(art));
        };
        let Some(row) = table().iter().find(|r| r.labels.contains(&label)) else {
            return fail(format!("no table row for {label}"), json!(art));
        };
        let mut entry = row.entry.clone();
        if let Some(f) = row.fixture {
            let ct = CombinatorialType::from_json(f).expect("fixture parses");
            if canonical_key(&ct).0 != entry.key {
                return fail(format!("{label}: fixture key changed"), json!(art));
            }
            entry = match classify(&ct) {
                Ok(e) => e,
                Err(e) => return fail(format!("{label}: {e}"), json!(art)),
            };
        }
        art.insert(label.to_string(), json!(entry.name));
        if entry.name != expected {
            return fail(
                format!("{label}: classified as {}, expected {expected}", entry.name),
                json!(art),
            );
        }
        if let Some(p) = &entry.presentation {
            let inv = abelian_invariants(p);
            if inv != entry.abelianization {
                return fail(
                    format!(
                        "{label}: presentation abelianizes to {inv}, formula gives {}",
                        entry.abelianization
                    ),
                    json!(art),
                );
            }
            if let Some(n) = entry.properties.finite {
                match order_of(p, cfg) {
                    Ok((t, true)) if t.n_cosets() as u64 == n => {}
                    Ok((t, _)) => {
                        return fail(
                            format!(
                                "{label}: enumerates to {}, flagged finite of order {n}",
                                t.n_cosets()
                            ),
                            json!(art),
                        )
                    }
                    Err(limit) => {
                        return inconclusive(
                            format!("{label}: more than {limit} cosets"),
                            json!(art),
                        )
                    }
                }
            }
        }
    }
    pass(json!(art))
}

fn v12(cfg: &SuiteConfig) -> Outcome {
    let p = build(&GroupTag::SphereBraid3).unwrap();
    let t = enumerate!(&p, &[], cfg, "B_3(S^2)");
    let art = json!({ "order": t.n_cosets() });
    if t.n_cosets() != 12 {
        return fail(format!("order {}, expected 12", t.n_cosets()), art);
    }
    pass(art)
}

/// Report list as pretty JSON.
pub fn reports_json(reports: &[LemmaReport]) -> String {
    serde_json::to_string_pretty(&json!({
        "all_passed": reports.iter().all(LemmaReport::passed),
        "reports": reports,
    }))
    .expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl27_has_168_elements() {
        let g = Psl27::new();
        assert_eq!(g.elements.len(), 168);
        assert_eq!(g.order(g.identity), 1);
        let seq = g.find_237_pair(Execution::Sequential);
        assert!(seq.is_some());
        assert_eq!(seq, g.find_237_pair(Execution::Parallel));
    }

    #[test]
    fn bipartite_detection() {
        let k23: BTreeSet<_> = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
            .into_iter()
            .collect();
        assert!(complete_bipartite(5, &k23).is_some());
        let mut bad = k23.clone();
        bad.insert((2, 3));
        assert!(complete_bipartite(5, &bad).is_none());
    }

    #[test]
    fn v3_overflow_is_inconclusive() {
        let cfg = SuiteConfig {
            only: vec!["V3".into()],
            max_cosets: 10,
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg);
        assert!(
            matches!(r[0].status, Status::Inconclusive { .. }),
            "{:?}",
            r[0].status
        );
    }

    #[test]
    fn unknown_lemma_fails() {
        assert!(!run_lemma("V99", &SuiteConfig::default()).passed());
    }
}
