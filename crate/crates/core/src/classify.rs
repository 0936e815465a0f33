//! Fundamental groups of plane curve complements of degree at most 5, looked
//! up from the combinatorial type.
//!
//! The table has one row per enumerated case. Rows whose combinatorial type
//! is known carry a fixture and are keyed by [`canonical_key`]; rows known
//! only by group name are keyed by a descriptive string and reachable only
//! through [`classify_label`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{abelian_presentation, curve_abelianization, InvariantFactors};
use crate::catalog::{build, GroupTag};
use crate::fpcore::{parse_presentation, Presentation};
use crate::geometry::{
    validate_combinatorial_type, CombinatorialType, PointKind, SingularPoint, Violation,
};

/// Normalized encoding of a combinatorial type, e.g. `1+1+1+1;6×A1`.
///
/// Before the `;`: component degrees in decreasing order, each followed by
/// the singular points it has on its own, as in `3(A2)`. After it: the
/// points shared by several components. A shared point where one component
/// has several branches is marked with a trailing `s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey(pub String);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn multiset(tokens: Vec<(PointKind, bool)>) -> String {
    let mut counts: BTreeMap<(PointKind, bool), usize> = BTreeMap::new();
    for t in tokens {
        *counts.entry(t).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|((k, s), n)| {
            let s = if s { "s" } else { "" };
            if n == 1 {
                format!("{k}{s}")
            } else {
                format!("{n}×{k}{s}")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn components_of(p: &SingularPoint) -> BTreeMap<&str, usize> {
    let mut m = BTreeMap::new();
    for b in &p.branches {
        *m.entry(b.as_str()).or_insert(0) += 1;
    }
    m
}

pub fn canonical_key(ct: &CombinatorialType) -> CanonicalKey {
    let mut own: BTreeMap<&str, Vec<(PointKind, bool)>> = BTreeMap::new();
    let mut shared = Vec::new();
    for p in &ct.points {
        let comps = components_of(p);
        if comps.len() == 1 {
            own.entry(comps.keys().next().unwrap())
                .or_default()
                .push((p.kind, false));
        } else {
            shared.push((p.kind, comps.values().any(|&n| n >= 2)));
        }
    }
    let mut parts: Vec<(u32, String)> = ct
        .components
        .iter()
        .map(|c| {
            let inner = own.remove(c.id.as_str()).map(multiset).unwrap_or_default();
            let s = if inner.is_empty() {
                c.degree.to_string()
            } else {
                format!("{}({inner})", c.degree)
            };
            (c.degree, s)
        })
        .collect();
    parts.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let degrees: Vec<String> = parts.into_iter().map(|p| p.1).collect();
    CanonicalKey(format!("{};{}", degrees.join("+"), multiset(shared)))
}

/// What the table says about the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Answer {
    Group {
        tag: GroupTag,
    },
    /// A group without a catalog tag; the presentation is in the entry.
    Explicit {
        name: String,
    },
    Abelian {
        invariants: InvariantFactors,
    },
    /// Only virtual abelianness is known: an abelian kernel with the given
    /// cyclic quotient.
    VirtuallyAbelian {
        kernel: String,
        quotient: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Properties {
    pub abelian: bool,
    pub virtually_abelian: bool,
    pub finite: Option<u64>,
    /// Asserted from the literature, not computed.
    pub linear: bool,
    pub virtually_polyfree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationEntry {
    pub name: String,
    pub answer: Answer,
    /// Absent where only virtual abelianness is claimed.
    pub presentation: Option<Presentation>,
    pub abelianization: InvariantFactors,
    pub properties: Properties,
    pub provenance: String,
    pub key: String,
    pub partially_keyed: bool,
}

impl fmt::Display for ClassificationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid combinatorial type: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("component {0} is repeated; reduce the curve first")]
    NonReduced(String),
    #[error("total degree {0} is above 5")]
    DegreeTooHigh(u32),
    #[error("not covered: {key} ({reason})")]
    NotCovered { key: String, reason: String },
}

/// One table row.
#[derive(Clone, Debug)]
pub struct Row {
    /// Case labels served by this row, e.g. `["2.3.2", "2.3.4"]`.
    pub labels: Vec<&'static str>,
    pub fixture: Option<&'static str>,
    pub degrees: Vec<u32>,
    pub entry: ClassificationEntry,
}

enum Spec {
    Tag(GroupTag),
    Explicit(&'static str, &'static str),
    Abelian,
    Virtual(&'static str),
}

struct RowDef {
    labels: &'static [&'static str],
    provenance: &'static str,
    fixture: Option<&'static str>,
    partial_key: Option<&'static str>,
    degrees: &'static [u32],
    spec: Spec,
    finite: Option<u64>,
    virtually_abelian: bool,
}

macro_rules! fixture {
    ($name:literal) => {
        Some(include_str!(concat!("../fixtures/types/", $name, ".json")))
    };
}

fn free(n: usize) -> GroupTag {
    GroupTag::Free(n)
}

fn dp(a: GroupTag, b: GroupTag) -> GroupTag {
    GroupTag::DirectProduct(Box::new(a), Box::new(b))
}

fn quintic(id: &str) -> GroupTag {
    GroupTag::QuinticExplicit(id.to_string())
}

const SEMIDIRECT: &str = "<x1,x2,t | t x1 t^-1 = x2, t x2 t^-1 = x2 x1 x2^-1>";

fn definitions() -> Vec<RowDef> {
    use Spec::*;
    let z_star_z2 = GroupTag::FreeProduct(Box::new(free(1)), Box::new(GroupTag::Cyclic(2)));
    let keyed = |labels, provenance, fixture, degrees, spec| RowDef {
        labels,
        provenance,
        fixture,
        partial_key: None,
        degrees,
        spec,
        finite: None,
        virtually_abelian: false,
    };
    let partial = |labels, provenance, key, degrees, spec| RowDef {
        labels,
        provenance,
        fixture: None,
        partial_key: Some(key),
        degrees,
        spec,
        finite: None,
        virtually_abelian: false,
    };
    let lines4: &[u32] = &[1, 1, 1, 1];
    let cl: &[u32] = &[3, 1];
    let qq: &[u32] = &[2, 2];
    let qll: &[u32] = &[2, 1, 1];
    let mut v = vec![
        keyed(
            &["3C1 concurrent"],
            "three concurrent lines",
            fixture!("lines3_concurrent"),
            &[1, 1, 1],
            Tag(free(2)),
        ),
        keyed(&["1.1"], "case 1.1", fixture!("case_1_1"), lines4, Abelian),
        keyed(
            &["1.2"],
            "case 1.2",
            fixture!("case_1_2"),
            lines4,
            Tag(dp(free(2), free(1))),
        ),
        keyed(
            &["1.3"],
            "case 1.3",
            fixture!("case_1_3"),
            lines4,
            Tag(free(3)),
        ),
        keyed(
            &["2.1.1"],
            "case 2.1.1",
            fixture!("case_2_1_1"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.1.2"],
            "case 2.1.2",
            fixture!("case_2_1_2"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.1.3"],
            "case 2.1.3",
            fixture!("case_2_1_3"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.2.1"],
            "case 2.2.1",
            fixture!("case_2_2_1"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.2.2"],
            "case 2.2.2",
            fixture!("case_2_2_2"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.2.3"],
            "case 2.2.3",
            fixture!("case_2_2_3"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.2.4"],
            "case 2.2.4",
            fixture!("case_2_2_4"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.2.5"],
            "case 2.2.5",
            fixture!("case_2_2_5"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.3.1"],
            "case 2.3.1",
            fixture!("case_2_3_1"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.3.2", "2.3.4"],
            "case 2.3.2 = 2.3.4",
            fixture!("case_2_3_2"),
            cl,
            Abelian,
        ),
        keyed(
            &["2.3.3"],
            "case 2.3.3",
            fixture!("case_2_3_3"),
            cl,
            Tag(GroupTag::Braid(3)),
        ),
        keyed(
            &["2.3.5"],
            "case 2.3.5",
            fixture!("case_2_3_5"),
            cl,
            Abelian,
        ),
        keyed(
            &["3.1"],
            "case 3.1",
            fixture!("case_3_1"),
            qq,
            Tag(z_star_z2.clone()),
        ),
        keyed(
            &["3.2"],
            "case 3.2",
            fixture!("case_3_2"),
            qq,
            Virtual("Z/2"),
        ),
        keyed(
            &["3.3"],
            "case 3.3",
            fixture!("case_3_3"),
            qq,
            Virtual("Z/2"),
        ),
        keyed(
            &["3.4"],
            "case 3.4",
            fixture!("case_3_4"),
            qq,
            Tag(z_star_z2),
        ),
        keyed(&["3.5"], "case 3.5", fixture!("case_3_5"), qq, Abelian),
        keyed(&["4.1"], "case 4.1", fixture!("case_4_1"), qll, Abelian),
        keyed(
            &["4.2"],
            "case 4.2",
            fixture!("case_4_2"),
            qll,
            Virtual("Z"),
        ),
        keyed(
            &["4.3"],
            "case 4.3",
            fixture!("case_4_3"),
            qll,
            Virtual("Z"),
        ),
        keyed(
            &["4.4"],
            "case 4.4",
            fixture!("case_4_4"),
            qll,
            Virtual("Z"),
        ),
        keyed(
            &["4.5"],
            "case 4.5",
            fixture!("case_4_5"),
            qll,
            Explicit("F_2 ⋊ Z", SEMIDIRECT),
        ),
        RowDef {
            finite: Some(12),
            ..keyed(
                &["quartic 3A2"],
                "three-cuspidal quartic",
                fixture!("quartic_3A2"),
                &[4],
                Tag(GroupTag::SphereBraid3),
            )
        },
        RowDef {
            finite: Some(320),
            ..keyed(
                &["Q1a"],
                "quintic item 1, C5(3A4)",
                fixture!("quintic_C5_3A4"),
                &[5],
                Tag(quintic("C5_3A4")),
            )
        },
        keyed(
            &["Q1b"],
            "quintic item 1, C5(A6+3A2)",
            fixture!("quintic_C5_A6_3A2"),
            &[5],
            Tag(quintic("C5_A6_3A2")),
        ),
        keyed(
            &["Q2a"],
            "quintic item 2, C4(3A2)+{x2,x2}",
            fixture!("quintic_C4_3A2"),
            &[4, 1],
            Tag(quintic("C4_3A2")),
        ),
        keyed(
            &["Q4e"],
            "quintic item 4, C3(A2)+{x3}+{x2,x1}",
            fixture!("quintic_C3_A2_x3_x2x1"),
            &[3, 1, 1],
            Tag(quintic("C3_A2_x3_x2x1")),
        ),
        keyed(
            &["Q7a"],
            "quintic item 7, five concurrent lines",
            fixture!("quintic_5C1_O5"),
            &[1; 5],
            Tag(free(4)),
        ),
        keyed(
            &["Q7b"],
            "quintic item 7, quadruple point",
            fixture!("quintic_5C1_X9"),
            &[1; 5],
            Tag(dp(free(1), free(3))),
        ),
        keyed(
            &["Q7c"],
            "quintic item 7, two triple points",
            fixture!("quintic_5C1_2D4"),
            &[1; 5],
            Tag(dp(free(2), free(2))),
        ),
        keyed(
            &["Q7d"],
            "quintic item 7, one triple point",
            fixture!("quintic_5C1_D4"),
            &[1; 5],
            Tag(dp(free(1), dp(free(1), free(2)))),
        ),
        partial(
            &["Q2b"],
            "quintic item 2",
            "C4+C1: B_3",
            &[4, 1],
            Tag(GroupTag::Braid(3)),
        ),
        partial(
            &["Q2c"],
            "quintic item 2",
            "C4+C1: B_4",
            &[4, 1],
            Tag(GroupTag::Braid(4)),
        ),
        partial(
            &["Q2d"],
            "quintic item 2",
            "C4+C1: G_3(t+1)",
            &[4, 1],
            Tag(GroupTag::GPolyMod(3, vec![1, 1])),
        ),
        partial(
            &["Q2e"],
            "quintic item 2",
            "C4+C1: G_5(t+1)",
            &[4, 1],
            Tag(GroupTag::GPolyMod(5, vec![1, 1])),
        ),
        partial(
            &["Q2f"],
            "quintic item 2",
            "C4+C1: Gr<2,3,5> x Z",
            &[4, 1],
            Tag(dp(GroupTag::Gr(2, 3, 5), free(1))),
        ),
        partial(
            &["Q2g"],
            "quintic item 2",
            "C4+C1: T_{3,4}",
            &[4, 1],
            Tag(GroupTag::Toric(3, 4)),
        ),
        partial(
            &["Q3"],
            "quintic item 3",
            "C3+C2",
            &[3, 2],
            Tag(quintic("C3_C2")),
        ),
        partial(
            &["Q4a"],
            "quintic item 4",
            "C3+2C1: Z x B_3",
            &[3, 1, 1],
            Tag(dp(free(1), GroupTag::Braid(3))),
        ),
        partial(
            &["Q4b"],
            "quintic item 4",
            "C3+2C1: G(t^2-1)",
            &[3, 1, 1],
            Tag(GroupTag::GPoly(vec![-1, 0, 1])),
        ),
        partial(
            &["Q4c"],
            "quintic item 4",
            "C3+2C1: G(t^3-1)",
            &[3, 1, 1],
            Tag(GroupTag::GPoly(vec![-1, 0, 0, 1])),
        ),
        partial(
            &["Q4d"],
            "quintic item 4",
            "C3+2C1: T_{2,4}",
            &[3, 1, 1],
            Tag(GroupTag::ToricEven(2)),
        ),
        partial(
            &["Q4f"],
            "quintic item 4",
            "C3+2C1: T_{2,6}",
            &[3, 1, 1],
            Tag(GroupTag::ToricEven(3)),
        ),
        partial(
            &["Q5a"],
            "quintic item 5",
            "2C2+C1: F_2",
            &[2, 2, 1],
            Tag(free(2)),
        ),
        partial(
            &["Q5b"],
            "quintic item 5",
            "2C2+C1: T_{2,4}",
            &[2, 2, 1],
            Tag(GroupTag::ToricEven(2)),
        ),
        partial(
            &["Q5c"],
            "quintic item 5",
            "2C2+C1: Z x B_3",
            &[2, 2, 1],
            Tag(dp(free(1), GroupTag::Braid(3))),
        ),
        partial(
            &["Q6a"],
            "quintic item 6",
            "C2+3C1: Z x F_2",
            &[2, 1, 1, 1],
            Tag(dp(free(1), free(2))),
        ),
        partial(
            &["Q6b"],
            "quintic item 6",
            "C2+3C1: Z x T_{2,4}",
            &[2, 1, 1, 1],
            Tag(dp(free(1), GroupTag::ToricEven(2))),
        ),
        partial(
            &["Q6c"],
            "quintic item 6",
            "C2+3C1: RAAG kernel group",
            &[2, 1, 1, 1],
            Tag(quintic("C2_3C1_a")),
        ),
        partial(
            &["Q6d"],
            "quintic item 6",
            "C2+3C1: Art_244",
            &[2, 1, 1, 1],
            Tag(quintic("C2_3C1_b")),
        ),
    ];
    // Finite-by-Z groups, and the C3+C2 group which is virtually Z^2.
    let virtually_abelian = ["Q2d", "Q2e", "Q2f", "Q3"];
    for d in &mut v {
        d.virtually_abelian = matches!(d.spec, Abelian | Virtual(_))
            || d.finite.is_some()
            || d.labels.iter().any(|l| virtually_abelian.contains(l));
    }
    v
}

fn display_name(tag: &GroupTag) -> String {
    match tag {
        GroupTag::QuinticExplicit(id) => match id.as_str() {
            "C4_3A2" => "Art_333".into(),
            "C3_A2_x3_x2x1" => "Art_234".into(),
            "C2_3C1_b" => "Art_244".into(),
            _ => tag.to_string(),
        },
        _ => tag.to_string(),
    }
}

fn make_row(d: RowDef) -> Row {
    let abelianization = curve_abelianization(d.degrees).expect("table degrees are positive");
    let (name, presentation) = match &d.spec {
        Spec::Tag(t) => (display_name(t), Some(build(t).expect("table tags build"))),
        Spec::Explicit(name, text) => (
            name.to_string(),
            Some(parse_presentation(text).expect("table presentation parses")),
        ),
        Spec::Abelian => (
            abelianization.to_string(),
            Some(abelian_presentation(&abelianization)),
        ),
        Spec::Virtual(q) => (
            format!("virtually abelian (abelian kernel, quotient {q})"),
            None,
        ),
    };
    let answer = match d.spec {
        Spec::Tag(tag) => Answer::Group { tag },
        Spec::Explicit(name, _) => Answer::Explicit {
            name: name.to_string(),
        },
        Spec::Abelian => Answer::Abelian {
            invariants: abelianization.clone(),
        },
        Spec::Virtual(q) => Answer::VirtuallyAbelian {
            kernel: "abelian".into(),
            quotient: q.into(),
        },
    };
    let key = match (d.fixture, d.partial_key) {
        (Some(f), _) => {
            let ct = CombinatorialType::from_json(f).expect("fixture parses");
            canonical_key(&ct).0
        }
        (None, Some(k)) => k.to_string(),
        (None, None) => unreachable!("row without key"),
    };
    let abelian = matches!(answer, Answer::Abelian { .. });
    Row {
        labels: d.labels.to_vec(),
        fixture: d.fixture,
        degrees: d.degrees.to_vec(),
        entry: ClassificationEntry {
            name,
            answer,
            presentation,
            abelianization,
            properties: Properties {
                abelian,
                virtually_abelian: d.virtually_abelian,
                finite: d.finite,
                linear: true,
                virtually_polyfree: true,
            },
            provenance: d.provenance.to_string(),
            key,
            partially_keyed: d.fixture.is_none(),
        },
    }
}

pub fn table() -> &'static [Row] {
    static TABLE: OnceLock<Vec<Row>> = OnceLock::new();
    TABLE.get_or_init(|| definitions().into_iter().map(make_row).collect())
}

/// Every case label the table must serve.
pub const CASE_LABELS: &[&str] = &[
    "3C1 concurrent",
    "1.1",
    "1.2",
    "1.3",
    "2.1.1",
    "2.1.2",
    "2.1.3",
    "2.2.1",
    "2.2.2",
    "2.2.3",
    "2.2.4",
    "2.2.5",
    "2.3.1",
    "2.3.2",
    "2.3.3",
    "2.3.4",
    "2.3.5",
    "3.1",
    "3.2",
    "3.3",
    "3.4",
    "3.5",
    "4.1",
    "4.2",
    "4.3",
    "4.4",
    "4.5",
    "quartic 3A2",
    "Q1a",
    "Q1b",
    "Q2a",
    "Q2b",
    "Q2c",
    "Q2d",
    "Q2e",
    "Q2f",
    "Q2g",
    "Q3",
    "Q4a",
    "Q4b",
    "Q4c",
    "Q4d",
    "Q4e",
    "Q4f",
    "Q5a",
    "Q5b",
    "Q5c",
    "Q6a",
    "Q6b",
    "Q6c",
    "Q6d",
    "Q7a",
    "Q7b",
    "Q7c",
    "Q7d",
];

/// Looks a row up by case label (`"1.3"`, `"Q2b"`), including rows that have
/// no combinatorial type.
pub fn classify_label(label: &str) -> Option<&'static ClassificationEntry> {
    table()
        .iter()
        .find(|r| r.labels.contains(&label))
        .map(|r| &r.entry)
}

fn formula_entry(
    ct: &CombinatorialType,
    key: &CanonicalKey,
    provenance: &str,
) -> ClassificationEntry {
    let inv = curve_abelianization(&ct.degrees()).expect("validated degrees are positive");
    ClassificationEntry {
        name: inv.to_string(),
        answer: Answer::Abelian {
            invariants: inv.clone(),
        },
        presentation: Some(abelian_presentation(&inv)),
        abelianization: inv.clone(),
        properties: Properties {
            abelian: true,
            virtually_abelian: true,
            finite: inv.order(),
            linear: true,
            virtually_polyfree: true,
        },
        provenance: provenance.to_string(),
        key: key.0.clone(),
        partially_keyed: false,
    }
}

pub fn classify(ct: &CombinatorialType) -> Result<ClassificationEntry, ClassifyError> {
    let report = validate_combinatorial_type(ct);
    if !report.is_ok() {
        return Err(ClassifyError::Invalid(report.violations));
    }
    if let Some(c) = ct.components.iter().find(|c| c.multiplicity > 1) {
        return Err(ClassifyError::NonReduced(c.id.clone()));
    }
    let total = ct.total_degree();
    if total > 5 {
        return Err(ClassifyError::DegreeTooHigh(total));
    }
    let key = canonical_key(ct);
    if let Some(row) = table()
        .iter()
        .find(|r| r.fixture.is_some() && r.entry.key == key.0)
    {
        return Ok(row.entry.clone());
    }
    if ct.points.iter().all(|p| p.kind == PointKind::A(1)) {
        return Ok(formula_entry(ct, &key, "nodal curve"));
    }
    let mut degrees = ct.degrees();
    degrees.sort_unstable();
    if total <= 3 {
        return Ok(formula_entry(ct, &key, "degree at most 3"));
    }
    if total == 4 && degrees == [4] {
        return Ok(formula_entry(ct, &key, "irreducible quartic"));
    }
    if total == 5 && (degrees == [5] || degrees == [1; 5]) {
        return Ok(formula_entry(
            ct,
            &key,
            "abelian by Degtyarev classification",
        ));
    }
    let reason = if total == 5 {
        "this component shape has non-abelian cases known only by group name"
    } else {
        "combinatorial type not among the enumerated cases"
    };
    Err(ClassifyError::NotCovered {
        key: key.0,
        reason: reason.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelian_invariants;
    use std::collections::HashSet;

    fn ct(json: &str) -> CombinatorialType {
        CombinatorialType::from_json(json).unwrap()
    }

    fn row(label: &str) -> &'static Row {
        table().iter().find(|r| r.labels.contains(&label)).unwrap()
    }

    #[test]
    fn example_keys() {
        let k = |l| canonical_key(&ct(row(l).fixture.unwrap())).0;
        assert_eq!(k("1.1"), "1+1+1+1;6×A1");
        assert_eq!(k("3.4"), "2+2;2×A3");
        assert_eq!(k("quartic 3A2"), "4(3×A2);");
        assert_eq!(k("2.2.4"), "3+1;A1+D4s");
    }

    #[test]
    fn key_ignores_component_order() {
        let mut c = ct(row("4.3").fixture.unwrap());
        let k = canonical_key(&c);
        c.components.reverse();
        c.points.reverse();
        assert_eq!(canonical_key(&c), k);
    }

    #[test]
    fn keyed_rows_are_distinct_and_valid() {
        let mut seen = HashSet::new();
        for r in table() {
            if let Some(f) = r.fixture {
                let c = ct(f);
                let rep = validate_combinatorial_type(&c);
                assert!(rep.is_ok(), "{:?}: {:?}", r.labels, rep.violations);
                assert!(
                    seen.insert(r.entry.key.clone()),
                    "duplicate key {}",
                    r.entry.key
                );
                assert_eq!(classify(&c).unwrap(), r.entry);
            }
        }
    }

    #[test]
    fn every_label_has_one_row() {
        for l in CASE_LABELS {
            let n = table().iter().filter(|r| r.labels.contains(l)).count();
            assert_eq!(n, 1, "label {l}");
        }
        let all: usize = table().iter().map(|r| r.labels.len()).sum();
        assert_eq!(all, CASE_LABELS.len());
    }

    #[test]
    fn presentations_match_the_formula() {
        for r in table() {
            let expected = curve_abelianization(&r.degrees).unwrap();
            assert_eq!(r.entry.abelianization, expected);
            if let Some(p) = &r.entry.presentation {
                assert_eq!(abelian_invariants(p), expected, "{:?}", r.labels);
            }
        }
    }

    #[test]
    fn stated_answers() {
        let name = |l| classify_label(l).unwrap().name.clone();
        assert_eq!(name("1.1"), "Z^3");
        assert_eq!(name("1.2"), "F_2 x Z");
        assert_eq!(name("1.3"), "F_3");
        assert_eq!(name("3.4"), "Z * Z/2");
        assert_eq!(name("4.5"), "F_2 ⋊ Z");
        assert_eq!(name("2.3.3"), "B_3");
        assert_eq!(name("Q4e"), "Art_234");
        assert_eq!(
            classify_label("quartic 3A2").unwrap().properties.finite,
            Some(12)
        );
        assert_eq!(classify_label("1.3").unwrap().to_string(), "F_3 (case 1.3)");
    }

    #[test]
    fn smooth_quintic_is_z5() {
        let e = classify(&ct(r#"{"components":[{"id":"C","degree":5}]}"#)).unwrap();
        assert_eq!(e.name, "Z/5");
    }

    #[test]
    fn three_lines() {
        let concurrent = ct(
            r#"{"components":[{"id":"a","degree":1},{"id":"b","degree":1},{"id":"c","degree":1}],
            "points":[{"id":"P","kind":"D4","branches":["a","b","c"]}]}"#,
        );
        let e = classify(&concurrent).unwrap();
        assert_eq!(e.name, "F_2");
        assert_eq!(
            abelian_invariants(e.presentation.as_ref().unwrap()),
            InvariantFactors::free(2)
        );
    }

    #[test]
    fn rejections() {
        let double = ct(r#"{"components":[{"id":"L","degree":1,"multiplicity":2}]}"#);
        assert!(matches!(
            classify(&double),
            Err(ClassifyError::NonReduced(_))
        ));
        let sextic = ct(r#"{"components":[{"id":"C","degree":6}]}"#);
        assert!(matches!(
            classify(&sextic),
            Err(ClassifyError::DegreeTooHigh(6))
        ));
        // Line through the cusp of a cuspidal cubic: not an enumerated case.
        let d5 = ct(
            r#"{"components":[{"id":"C","degree":3},{"id":"L","degree":1}],"points":[
            {"id":"q","kind":"D5","branches":["C","L"]},{"id":"t","kind":"A1","branches":["C","L"]}]}"#,
        );
        assert!(matches!(
            classify(&d5),
            Err(ClassifyError::NotCovered { .. })
        ));
    }
}
