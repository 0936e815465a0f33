//! Strategies and property bodies shared by the property and acceptance
//! suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use curvepi::abelian::{smith_normal_form, IntMatrix};
use curvepi::classify::{canonical_key, table};
use curvepi::cosets::{todd_coxeter, validate_table, CosetTable, EnumLimits};
use curvepi::fpcore::{
    check_homomorphism, format_word, free_reduce, parse_presentation, parse_word, DerivationBudget,
    HomCheck, Letter, Presentation, SubstitutionMap, Word,
};
use curvepi::geometry::{
    builtin_scripts, nori_check, BlowUpLedger, BlowUpPoint, CombinatorialType,
};
use curvepi::schreier::subgroup_presentation;

pub fn names(n: usize) -> Vec<String> {
    ["a", "b", "c", "d", "e", "f"][..n]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn raw_letters(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..gens, any::<bool>()), 0..max_len)
        .prop_map(|v| v.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect())
}

pub fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    raw_letters(gens, max_len).prop_map(Word::new)
}

pub fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors, computed from scratch.
pub fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = g.gcd(&IntMatrix::from_rows(&sub).det());
        }
    }
    g
}

/// Uniformly random permutation of 0..n from a proptest seed.
pub fn shuffle(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, seed[i] % (i + 1));
    }
    p
}

pub fn snf_matches_determinantal_divisors((m,): (Vec<Vec<i64>>,)) -> Result<(), TestCaseError> {
    let im = IntMatrix::from_rows(&m);
    let snf = smith_normal_form(&im);
    prop_assert_eq!(snf.u.mul(&im).mul(&snf.v), snf.d.clone());
    prop_assert!(snf.u.det().abs() == BigInt::from(1) && snf.v.det().abs() == BigInt::from(1));
    let diag = snf.diagonal();
    for w in diag.windows(2) {
        prop_assert!(
            (&w[1] % &w[0]).is_zero(),
            "divisibility chain broken: {:?}",
            diag
        );
    }
    let mut prod = BigInt::from(1);
    for k in 1..=m.len().min(m[0].len()) {
        let dk = determinantal_divisor(&m, k);
        if k <= diag.len() {
            prod *= diag[k - 1].abs();
            prop_assert_eq!(dk, prod.clone(), "k = {}", k);
        } else {
            prop_assert!(dk.is_zero(), "rank exceeds diagonal length at k = {}", k);
        }
    }
    Ok(())
}

pub fn nielsen_schreier_rank(
    (k, n, seeds): (usize, usize, Vec<Vec<usize>>),
) -> Result<(), TestCaseError> {
    // The first generator acts as an n-cycle, so the action is transitive.
    let cycle_order = shuffle(n, &seeds[0]);
    let mut first = vec![0; n];
    for i in 0..n {
        first[cycle_order[i]] = cycle_order[(i + 1) % n];
    }
    let mut perms = vec![first];
    perms.extend((1..k).map(|g| shuffle(n, &seeds[g])));
    let free = Presentation::free(names(k));
    let t =
        CosetTable::from_action(names(k), &perms, 0, Vec::new(), &EnumLimits::default()).unwrap();
    prop_assert!(validate_table(&free, &[], &t).is_ok());
    let sub = subgroup_presentation(&free, &t);
    prop_assert_eq!(sub.num_generators(), n * (k - 1) + 1);
    prop_assert!(sub.relators().is_empty());
    Ok(())
}

pub fn corrupted_tables_are_rejected(
    (group, coset_seed, gen_seed, shift): (usize, usize, usize, usize),
) -> Result<(), TestCaseError> {
    let p = parse_presentation(
        [
            "<a,b | a^2, b^3, (a b)^2>",
            "<a,b | a^2, b^3, (a b)^3>",
            "<a,b | a^2, b^3, (a b)^4>",
            "<a,b | a^2, b^3, (a b)^5>",
        ][group],
    )
    .unwrap();
    let t = todd_coxeter(&p, &[], &EnumLimits::default()).unwrap();
    prop_assert!(validate_table(&p, &[], &t).is_ok());
    let n = t.n_cosets();
    let g = gen_seed % 2;
    let c = coset_seed % n;
    let mut actions: Vec<(Vec<usize>, Vec<usize>)> = (0..2)
        .map(|h| {
            (
                (0..n).map(|x| t.image(x, 2 * h)).collect(),
                (0..n).map(|x| t.image(x, 2 * h + 1)).collect(),
            )
        })
        .collect();
    let old = actions[g].0[c];
    let new = (old + shift % n.max(2)) % n;
    prop_assume!(new != old);
    actions[g].0[c] = new;
    let bad = CosetTable::from_raw(p.generators().to_vec(), n, &actions, Vec::new());
    prop_assert!(!validate_table(&p, &[], &bad).is_ok());
    Ok(())
}

pub fn free_reduction_laws((raw, u): (Vec<Letter>, Word)) -> Result<(), TestCaseError> {
    let w = Word::from_raw(raw.clone());
    let r = free_reduce(&w);
    prop_assert!(r.is_freely_reduced());
    prop_assert_eq!(free_reduce(&r), r.clone());
    prop_assert_eq!(Word::new(raw), r);
    prop_assert!(u.mul(&u.inverse()).is_empty());
    prop_assert!(u.inverse().mul(&u).is_empty());
    prop_assert_eq!(u.inverse().inverse(), u);
    Ok(())
}

pub fn substitution_is_a_homomorphism_of_free_groups(
    (images, u, v): (Vec<Word>, Word, Word),
) -> Result<(), TestCaseError> {
    let m = SubstitutionMap::new(
        Presentation::free(names(3)),
        Presentation::free(names(2)),
        images,
    )
    .unwrap();
    prop_assert_eq!(m.apply(&u.mul(&v)), m.apply(&u).mul(&m.apply(&v)));
    prop_assert_eq!(m.apply(&u.inverse()), m.apply(&u).inverse());
    Ok(())
}

pub fn word_text_round_trips((w,): (Word,)) -> Result<(), TestCaseError> {
    let n = names(4);
    let text = format_word(&n, &w);
    prop_assert_eq!(parse_word(&text, &n).unwrap(), w);
    Ok(())
}

pub fn keys_ignore_listing_order(
    (row, cseed, pseed): (usize, Vec<usize>, Vec<usize>),
) -> Result<(), TestCaseError> {
    let fixtures: Vec<&str> = table().iter().filter_map(|r| r.fixture).collect();
    let ct = CombinatorialType::from_json(fixtures[row % fixtures.len()]).unwrap();
    let mut shuffled = ct.clone();
    let pc = shuffle(ct.components.len(), &cseed);
    shuffled.components = pc.iter().map(|&i| ct.components[i].clone()).collect();
    let pp = shuffle(ct.points.len(), &pseed);
    shuffled.points = pp.iter().map(|&i| ct.points[i].clone()).collect();
    prop_assert_eq!(canonical_key(&shuffled), canonical_key(&ct));
    Ok(())
}

pub fn extra_blow_ups_only_lower_self_intersection(
    (script, extra): (usize, usize),
) -> Result<(), TestCaseError> {
    let s = &builtin_scripts()[script];
    let curves: Vec<(&str, u32, u32)> = s
        .curves
        .iter()
        .map(|c| (c.id.as_str(), c.degree, c.nodes))
        .collect();
    let d: Vec<&str> = s.d.iter().map(String::as_str).collect();
    let mut l = BlowUpLedger::new(&curves, s.pending.clone()).unwrap();
    let si = |l: &BlowUpLedger| l.component(d[0]).unwrap().self_intersection;
    for step in &s.steps {
        let next = l.blow_up(step).unwrap();
        prop_assert!(si(&next) <= si(&l));
        l = next;
    }
    let mut pass = nori_check(&l, &d).unwrap().pass;
    for _ in 0..extra {
        let next = l
            .blow_up(&BlowUpPoint::Smooth {
                smooth: d[0].to_string(),
            })
            .unwrap();
        prop_assert_eq!(si(&next), si(&l) - 1);
        let now = nori_check(&next, &d).unwrap().pass;
        prop_assert!(pass || !now, "Nori went from fail to pass");
        pass = now;
        l = next;
    }
    Ok(())
}

/// Against S_3, whose regular table decides every relator outright.
pub fn hom_check_agrees_with_the_regular_action(
    (rels, images): (Vec<Word>, Vec<Word>),
) -> Result<(), TestCaseError> {
    let rels: Vec<Word> = rels.into_iter().filter(|w| !w.is_empty()).collect();
    prop_assume!(!rels.is_empty());
    let source = Presentation::new(names(2), rels).unwrap();
    let target = parse_presentation("<a,b | a^2, b^3, (a b)^2>").unwrap();
    let t = todd_coxeter(&target, &[], &EnumLimits::default()).unwrap();
    let m = SubstitutionMap::new(source.clone(), target, images).unwrap();
    let trivial = source.relators().iter().all(|r| {
        let img = m.apply(r);
        (0..t.n_cosets()).all(|c| t.trace(c, &img) == c)
    });
    match check_homomorphism(&m, &DerivationBudget::default()) {
        HomCheck::Verified(_) => prop_assert!(trivial),
        HomCheck::Refuted(_) => prop_assert!(!trivial),
        HomCheck::Inconclusive { .. } => {
            prop_assert!(trivial, "a finite target should always refute")
        }
    }
    Ok(())
}

/// Runs one named property with its case count; returns the failure text.
pub fn run_property(name: &str) -> Result<(), String> {
    match name {
        "snf_matches_determinantal_divisors" => {
            run(500, (matrix(),), snf_matches_determinantal_divisors)
        }
        "nielsen_schreier_rank" => run(
            200,
            (
                1usize..=3,
                1usize..=6,
                prop::collection::vec(prop::collection::vec(any::<usize>(), 6), 3),
            ),
            nielsen_schreier_rank,
        ),
        "corrupted_tables_are_rejected" => run(
            200,
            (0usize..4, any::<usize>(), any::<usize>(), 1usize..100),
            corrupted_tables_are_rejected,
        ),
        "free_reduction_laws" => run(200, (raw_letters(3, 40), word(3, 20)), free_reduction_laws),
        "substitution_is_a_homomorphism_of_free_groups" => run(
            200,
            (
                prop::collection::vec(word(2, 6), 3),
                word(3, 12),
                word(3, 12),
            ),
            substitution_is_a_homomorphism_of_free_groups,
        ),
        "word_text_round_trips" => run(200, (word(4, 30),), word_text_round_trips),
        "keys_ignore_listing_order" => run(
            200,
            (
                0usize..64,
                prop::collection::vec(any::<usize>(), 16),
                prop::collection::vec(any::<usize>(), 16),
            ),
            keys_ignore_listing_order,
        ),
        "extra_blow_ups_only_lower_self_intersection" => run(
            200,
            (0usize..14, 0usize..6),
            extra_blow_ups_only_lower_self_intersection,
        ),
        "hom_check_agrees_with_the_regular_action" => run(
            64,
            (
                prop::collection::vec(word(2, 8), 1..3),
                prop::collection::vec(word(2, 4), 2),
            ),
            hom_check_agrees_with_the_regular_action,
        ),
        _ => Err(format!("no property {name}")),
    }
}

pub const PROPERTIES: &[&str] = &[
    "snf_matches_determinantal_divisors",
    "nielsen_schreier_rank",
    "corrupted_tables_are_rejected",
    "free_reduction_laws",
    "substitution_is_a_homomorphism_of_free_groups",
    "word_text_round_trips",
    "keys_ignore_listing_order",
    "extra_blow_ups_only_lower_self_intersection",
    "hom_check_agrees_with_the_regular_action",
];

fn run<S: Strategy>(
    cases: u32,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&s, f).map_err(|e| e.to_string())
}
