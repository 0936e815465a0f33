//! Combinatorial types of plane curves and blow-up bookkeeping.
//!
//! A [`CombinatorialType`] lists the irreducible components with their
//! degrees and every singular point of the union, each with its local type
//! and the component carrying each local branch. The validator checks Bézout
//! and the genus bound. A [`BlowUpLedger`] replays an explicit sequence of
//! blow-ups and tracks the self-intersection and node count of each strict
//! transform, which is what [`nori_check`] needs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Local topological type of a singular point of the whole curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointKind {
    /// `x^2 + y^(p+1)`.
    A(u32),
    /// `x^2 y + y^(k-1)`, `k >= 5`. `D4` parses as an ordinary triple point.
    D(u32),
    E(u32),
    /// Ordinary `m`-fold point: `m` pairwise transverse smooth branches.
    Ordinary(u32),
}

impl PointKind {
    pub fn branches(self) -> u32 {
        match self {
            PointKind::A(p) => {
                if p % 2 == 1 {
                    2
                } else {
                    1
                }
            }
            PointKind::D(k) => {
                if k % 2 == 0 {
                    3
                } else {
                    2
                }
            }
            PointKind::E(7) => 2,
            PointKind::E(_) => 1,
            PointKind::Ordinary(m) => m,
        }
    }

    pub fn milnor(self) -> u32 {
        match self {
            PointKind::A(p) => p,
            PointKind::D(k) | PointKind::E(k) => k,
            PointKind::Ordinary(m) => (m - 1) * (m - 1),
        }
    }

    /// `(mu + r - 1) / 2`.
    pub fn delta(self) -> u32 {
        (self.milnor() + self.branches() - 1) / 2
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKind::A(p) => write!(f, "A{p}"),
            PointKind::D(k) => write!(f, "D{k}"),
            PointKind::E(k) => write!(f, "E{k}"),
            PointKind::Ordinary(3) => write!(f, "D4"),
            PointKind::Ordinary(4) => write!(f, "X9"),
            PointKind::Ordinary(m) => write!(f, "O{m}"),
        }
    }
}

impl FromStr for PointKind {
    type Err = String;

    /// Accepts `A3`, `D6`, `E7`, `X9`, `O5`, and the contact markers `x2` /
    /// `×2` for a line meeting a curve with that multiplicity at a smooth
    /// point (`xd` is `A(2d-1)`).
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("unknown singularity kind {s:?}");
        let (head, rest) = match s.strip_prefix('×') {
            Some(r) => ('x', r),
            None => {
                let mut cs = s.chars();
                let h = cs.next().ok_or_else(bad)?;
                (h, cs.as_str())
            }
        };
        let n: u32 = rest.parse().map_err(|_| bad())?;
        let k = match head {
            'A' if n >= 1 => PointKind::A(n),
            'D' if n == 4 => PointKind::Ordinary(3),
            'D' if n >= 5 => PointKind::D(n),
            'E' if (6..=8).contains(&n) => PointKind::E(n),
            'X' if n == 9 => PointKind::Ordinary(4),
            'O' if n >= 2 => {
                if n == 2 {
                    PointKind::A(1)
                } else {
                    PointKind::Ordinary(n)
                }
            }
            'x' if n >= 1 => PointKind::A(2 * n - 1),
            _ => return Err(bad()),
        };
        Ok(k)
    }
}

impl Serialize for PointKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn one() -> u32 {
    1
}

fn is_one(m: &u32) -> bool {
    *m == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: String,
    pub degree: u32,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub multiplicity: u32,
}

/// Local intersection multiplicity of two components at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Contact {
    pub a: String,
    pub b: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularPoint {
    pub id: String,
    pub kind: PointKind,
    /// Component of each local branch. For `D5` and `E7` points on two
    /// components, the first branch is the cuspidal one.
    pub branches: Vec<String>,
    /// Needed only where the kind does not determine them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contacts: Vec<Contact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombinatorialType {
    pub components: Vec<Component>,
    #[serde(default)]
    pub points: Vec<SingularPoint>,
}

impl CombinatorialType {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn total_degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.degree * c.multiplicity)
            .sum()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.degree).collect()
    }

    fn branch_counts(p: &SingularPoint) -> BTreeMap<&str, u32> {
        let mut m = BTreeMap::new();
        for b in &p.branches {
            *m.entry(b.as_str()).or_insert(0) += 1;
        }
        m
    }

    /// Pairwise local intersection numbers at `p`, explicit or inferred from
    /// the kind. `None` when they cannot be inferred.
    pub fn contacts_at(p: &SingularPoint) -> Option<Vec<(String, String, u32)>> {
        if !p.contacts.is_empty() {
            return Some(
                p.contacts
                    .iter()
                    .map(|c| (c.a.clone(), c.b.clone(), c.multiplicity))
                    .collect(),
            );
        }
        let counts = Self::branch_counts(p);
        let comps: Vec<(&str, u32)> = counts.into_iter().collect();
        if comps.len() < 2 {
            return Some(Vec::new());
        }
        let pairs = || {
            let mut v = Vec::new();
            for i in 0..comps.len() {
                for j in i + 1..comps.len() {
                    v.push((comps[i], comps[j]));
                }
            }
            v
        };
        match p.kind {
            PointKind::Ordinary(_) | PointKind::A(1) => Some(
                pairs()
                    .into_iter()
                    .map(|((a, na), (b, nb))| (a.to_string(), b.to_string(), na * nb))
                    .collect(),
            ),
            PointKind::A(k) if k % 2 == 1 && comps.len() == 2 => Some(vec![(
                comps[0].0.to_string(),
                comps[1].0.to_string(),
                k.div_ceil(2),
            )]),
            PointKind::D(5) | PointKind::E(7) if comps.len() == 2 => {
                let m = if p.kind == PointKind::D(5) { 2 } else { 3 };
                Some(vec![(comps[0].0.to_string(), comps[1].0.to_string(), m)])
            }
            _ => None,
        }
    }

    /// Delta invariant of component `c`'s own germ at `p`.
    fn own_delta(p: &SingularPoint, c: &str) -> u32 {
        let counts = Self::branch_counts(p);
        let b = counts.get(c).copied().unwrap_or(0);
        if b == 0 {
            return 0;
        }
        if counts.len() == 1 {
            return p.kind.delta();
        }
        if b >= 2 {
            return b * (b - 1) / 2;
        }
        let cusp = matches!(p.kind, PointKind::D(5) | PointKind::E(7));
        if b == 1 && cusp && p.branches.first().map(String::as_str) == Some(c) {
            1
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    DuplicateId {
        id: String,
    },
    ZeroDegree {
        component: String,
    },
    UnknownComponent {
        point: String,
        component: String,
    },
    BranchCount {
        point: String,
        kind: String,
        expected: u32,
        got: u32,
    },
    /// The kind does not determine local intersection numbers and none
    /// were given.
    ContactUnknown {
        point: String,
    },
    Bezout {
        a: String,
        b: String,
        expected: u32,
        got: u32,
    },
    GenusBound {
        component: String,
        degree: u32,
        delta: u32,
        bound: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id {id}"),
            Violation::ZeroDegree { component } => write!(f, "component {component} has degree 0"),
            Violation::UnknownComponent { point, component } => {
                write!(f, "point {point} has a branch on unknown component {component}")
            }
            Violation::BranchCount { point, kind, expected, got } => {
                write!(f, "point {point} of type {kind} needs {expected} branches, got {got}")
            }
            Violation::ContactUnknown { point } => {
                write!(f, "point {point}: local intersection numbers must be given explicitly")
            }
            Violation::Bezout { a, b, expected, got } => {
                write!(f, "{a} and {b} meet with total multiplicity {got}, Bezout requires {expected}")
            }
            Violation::GenusBound { component, degree, delta, bound } => write!(
                f,
                "component {component} of degree {degree} has delta {delta}, more than the bound {bound}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub violations: Vec<Violation>,
    /// Total degree above 5; the classifier does not cover these.
    pub degree_over_five: bool,
}

impl TypeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_combinatorial_type(ct: &CombinatorialType) -> TypeReport {
    let mut v = Vec::new();
    let mut ids = HashSet::new();
    let mut degree: HashMap<&str, u32> = HashMap::new();
    for c in &ct.components {
        if !ids.insert(c.id.as_str()) {
            v.push(Violation::DuplicateId { id: c.id.clone() });
        }
        if c.degree == 0 {
            v.push(Violation::ZeroDegree {
                component: c.id.clone(),
            });
        }
        degree.insert(&c.id, c.degree);
    }
    let mut point_ids = HashSet::new();
    let mut meet: BTreeMap<(String, String), u32> = BTreeMap::new();
    let mut delta: HashMap<&str, u32> = HashMap::new();
    for p in &ct.points {
        if !point_ids.insert(p.id.as_str()) {
            v.push(Violation::DuplicateId { id: p.id.clone() });
        }
        let mut known = true;
        for b in p
            .branches
            .iter()
            .chain(p.contacts.iter().flat_map(|c| [&c.a, &c.b]))
        {
            if !degree.contains_key(b.as_str()) {
                v.push(Violation::UnknownComponent {
                    point: p.id.clone(),
                    component: b.clone(),
                });
                known = false;
            }
        }
        let expected = p.kind.branches();
        if p.branches.len() as u32 != expected {
            v.push(Violation::BranchCount {
                point: p.id.clone(),
                kind: p.kind.to_string(),
                expected,
                got: p.branches.len() as u32,
            });
            continue;
        }
        if !known {
            continue;
        }
        match CombinatorialType::contacts_at(p) {
            Some(cs) => {
                for (a, b, m) in cs {
                    let key = if a <= b { (a, b) } else { (b, a) };
                    *meet.entry(key).or_insert(0) += m;
                }
            }
            None => v.push(Violation::ContactUnknown {
                point: p.id.clone(),
            }),
        }
        for c in &ct.components {
            *delta.entry(&c.id).or_insert(0) += CombinatorialType::own_delta(p, &c.id);
        }
    }
    let comps = &ct.components;
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (a, b) = (&comps[i].id, &comps[j].id);
            let key = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            let got = meet.get(&key).copied().unwrap_or(0);
            let expected = comps[i].degree * comps[j].degree;
            if got != expected {
                v.push(Violation::Bezout {
                    a: a.clone(),
                    b: b.clone(),
                    expected,
                    got,
                });
            }
        }
    }
    for c in comps {
        let d = c.degree;
        let bound = if d >= 1 {
            (d - 1) * d.saturating_sub(2) / 2
        } else {
            0
        };
        let got = delta.get(c.id.as_str()).copied().unwrap_or(0);
        if got > bound {
            v.push(Violation::GenusBound {
                component: c.id.clone(),
                degree: d,
                delta: got,
                bound,
            });
        }
    }
    TypeReport {
        violations: v,
        degree_over_five: ct.total_degree() > 5,
    }
}

// ---------------------------------------------------------------------------
// Blow-ups

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerComponent {
    pub id: String,
    pub self_intersection: i64,
    /// Nodes of the component not yet blown up.
    pub nodes: u32,
    pub smooth: bool,
    #[serde(default)]
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Through {
    pub component: String,
    /// Tangent to the cusp's tangent cone.
    #[serde(default)]
    pub tangent: bool,
}

/// A point that still needs attention. Blowing one up replaces it with the
/// configuration seen on the new exceptional divisor, under the id with a
/// prime appended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pending {
    /// Cusp of `component`, optionally with smooth curves through it.
    Cusp {
        id: String,
        component: String,
        #[serde(default)]
        through: Vec<Through>,
    },
    /// Smooth branches of `a` and `b` with contact `order`, plus `extra`
    /// smooth branches transverse to both.
    Tangency {
        id: String,
        a: String,
        b: String,
        order: u32,
        #[serde(default)]
        extra: Vec<String>,
    },
    /// Pairwise transverse smooth branches.
    Ordinary { id: String, branches: Vec<String> },
}

impl Pending {
    pub fn id(&self) -> &str {
        match self {
            Pending::Cusp { id, .. }
            | Pending::Tangency { id, .. }
            | Pending::Ordinary { id, .. } => id,
        }
    }

    /// Component of each branch through the point; a cusp counts once.
    fn branches(&self) -> Vec<&str> {
        match self {
            Pending::Cusp {
                component, through, ..
            } => std::iter::once(component.as_str())
                .chain(through.iter().map(|t| t.component.as_str()))
                .collect(),
            Pending::Tangency { a, b, extra, .. } => [a.as_str(), b.as_str()]
                .into_iter()
                .chain(extra.iter().map(String::as_str))
                .collect(),
            Pending::Ordinary { branches, .. } => branches.iter().map(String::as_str).collect(),
        }
    }
}

/// Where to blow up: a pending point by id, or a smooth point of one
/// component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BlowUpPoint {
    Pending(String),
    Smooth { smooth: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BlowUpError {
    #[error("no pending point {0}")]
    UnknownPoint(String),
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("duplicate component {0}")]
    DuplicateComponent(String),
    #[error("tangency {0} has order below 2")]
    BadOrder(String),
    #[error("point {point} would remove more nodes than {component} has")]
    NodeUnderflow { point: String, component: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpLedger {
    pub components: Vec<LedgerComponent>,
    pub exceptional_divisors: usize,
    pub pending: Vec<Pending>,
}

impl BlowUpLedger {
    /// Starts from plane curves `(id, degree, nodes)`; `C.C = d^2`.
    pub fn new(curves: &[(&str, u32, u32)], pending: Vec<Pending>) -> Result<Self, BlowUpError> {
        let mut components: Vec<LedgerComponent> = Vec::new();
        for &(id, d, nodes) in curves {
            if components.iter().any(|c| c.id == id) {
                return Err(BlowUpError::DuplicateComponent(id.to_string()));
            }
            components.push(LedgerComponent {
                id: id.to_string(),
                self_intersection: i64::from(d) * i64::from(d),
                nodes,
                smooth: false,
                exceptional: false,
            });
        }
        let mut l = BlowUpLedger {
            components,
            exceptional_divisors: 0,
            pending,
        };
        for p in &l.pending {
            if let Pending::Tangency { order, id, .. } = p {
                if *order < 2 {
                    return Err(BlowUpError::BadOrder(id.clone()));
                }
            }
            for b in p.branches() {
                l.index(b)?;
            }
        }
        l.refresh();
        Ok(l)
    }

    fn index(&self, id: &str) -> Result<usize, BlowUpError> {
        self.components
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| BlowUpError::UnknownComponent(id.to_string()))
    }

    pub fn component(&self, id: &str) -> Option<&LedgerComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    fn refresh(&mut self) {
        let cusps: HashSet<String> = self
            .pending
            .iter()
            .filter_map(|p| match p {
                Pending::Cusp { component, .. } => Some(component.clone()),
                _ => None,
            })
            .collect();
        for c in &mut self.components {
            c.smooth = c.nodes == 0 && !cusps.contains(&c.id);
        }
    }

    /// Returns the ledger after one blow-up; `self` is unchanged.
    pub fn blow_up(&self, at: &BlowUpPoint) -> Result<BlowUpLedger, BlowUpError> {
        let mut next = self.clone();
        next.exceptional_divisors += 1;
        let e = format!("E{}", next.exceptional_divisors);
        // Multiplicity of each component at the point, and how many of its
        // branches pass through (nodes resolved = b(b-1)/2).
        let mut mult: BTreeMap<String, (i64, u32)> = BTreeMap::new();
        let point_id;
        match at {
            BlowUpPoint::Smooth { smooth } => {
                self.index(smooth)?;
                point_id = smooth.clone();
                mult.insert(smooth.clone(), (1, 1));
            }
            BlowUpPoint::Pending(id) => {
                let pos = next
                    .pending
                    .iter()
                    .position(|p| p.id() == id)
                    .ok_or_else(|| BlowUpError::UnknownPoint(id.clone()))?;
                let item = next.pending.remove(pos);
                point_id = id.clone();
                let new_id = format!("{id}'");
                match &item {
                    Pending::Cusp {
                        component, through, ..
                    } => {
                        mult.insert(component.clone(), (2, 1));
                        for t in through {
                            let m = mult.entry(t.component.clone()).or_insert((0, 0));
                            m.0 += 1;
                            m.1 += 1;
                        }
                        let extra = through
                            .iter()
                            .filter(|t| t.tangent)
                            .map(|t| t.component.clone())
                            .collect();
                        next.pending.push(Pending::Tangency {
                            id: new_id,
                            a: component.clone(),
                            b: e.clone(),
                            order: 2,
                            extra,
                        });
                    }
                    Pending::Tangency { a, b, order, .. } => {
                        if *order < 2 {
                            return Err(BlowUpError::BadOrder(id.clone()));
                        }
                        for c in item.branches() {
                            let m = mult.entry(c.to_string()).or_insert((0, 0));
                            m.0 += 1;
                            m.1 += 1;
                        }
                        next.pending.push(if *order >= 3 {
                            Pending::Tangency {
                                id: new_id,
                                a: a.clone(),
                                b: b.clone(),
                                order: order - 1,
                                extra: vec![e.clone()],
                            }
                        } else {
                            Pending::Ordinary {
                                id: new_id,
                                branches: vec![a.clone(), b.clone(), e.clone()],
                            }
                        });
                    }
                    Pending::Ordinary { .. } => {
                        for c in item.branches() {
                            let m = mult.entry(c.to_string()).or_insert((0, 0));
                            m.0 += 1;
                            m.1 += 1;
                        }
                    }
                }
            }
        }
        for (c, (m, b)) in &mult {
            let i = next.index(c)?;
            let comp = &mut next.components[i];
            comp.self_intersection -= m * m;
            let resolved = b * b.saturating_sub(1) / 2;
            comp.nodes =
                comp.nodes
                    .checked_sub(resolved)
                    .ok_or_else(|| BlowUpError::NodeUnderflow {
                        point: point_id.clone(),
                        component: c.clone(),
                    })?;
        }
        next.components.push(LedgerComponent {
            id: e,
            self_intersection: -1,
            nodes: 0,
            smooth: true,
            exceptional: true,
        });
        next.refresh();
        Ok(next)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoriComponent {
    pub id: String,
    pub self_intersection: i64,
    /// `2 r(C)`.
    pub twice_nodes: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoriReport {
    pub components: Vec<NoriComponent>,
    pub d_nodal_only: bool,
    /// Every point of `D ∩ E` is a smooth point of `D` transverse to each
    /// branch of `E` there.
    pub d_e_transverse: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NoriError {
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("unresolved points: {0:?}")]
    Unresolved(Vec<String>),
}

/// Evaluates `C.C > 2 r(C)` on each component of `D`. The remaining
/// pending points may only be ordinary points with at most one branch on
/// `D`; anything else means the resolution is incomplete.
pub fn nori_check(l: &BlowUpLedger, d: &[&str]) -> Result<NoriReport, NoriError> {
    let dset: HashSet<&str> = d.iter().copied().collect();
    let mut unresolved = Vec::new();
    for p in &l.pending {
        let on_d = p
            .branches()
            .into_iter()
            .filter(|b| dset.contains(b))
            .count();
        let ok = matches!(p, Pending::Ordinary { .. }) && on_d <= 1;
        if !ok && on_d > 0 {
            unresolved.push(p.id().to_string());
        }
    }
    if !unresolved.is_empty() {
        return Err(NoriError::Unresolved(unresolved));
    }
    let mut components = Vec::new();
    for id in d {
        let c = l
            .component(id)
            .ok_or_else(|| NoriError::UnknownComponent(id.to_string()))?;
        let twice_nodes = 2 * i64::from(c.nodes);
        components.push(NoriComponent {
            id: c.id.clone(),
            self_intersection: c.self_intersection,
            twice_nodes,
            pass: c.self_intersection > twice_nodes,
        });
    }
    let pass = components.iter().all(|c| c.pass);
    Ok(NoriReport {
        components,
        d_nodal_only: true,
        d_e_transverse: true,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Scripts

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptCurve {
    pub id: String,
    pub degree: u32,
    #[serde(default)]
    pub nodes: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptExpect {
    /// `D.D` of the first component of `d` after the last step.
    pub self_intersection: i64,
    #[serde(default)]
    pub twice_nodes: i64,
    pub nori: bool,
}

/// A fixed sequence of blow-ups for one curve configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowUpScript {
    pub case: String,
    /// False for scripts whose final value is derived rather than printed.
    #[serde(default = "yes")]
    pub printed: bool,
    pub curves: Vec<ScriptCurve>,
    #[serde(default)]
    pub pending: Vec<Pending>,
    pub steps: Vec<BlowUpPoint>,
    pub d: Vec<String>,
    pub expect: ScriptExpect,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("bad script: {0}")]
    Json(#[from] serde_json::Error),
    #[error("step {step}: {source}")]
    BlowUp { step: usize, source: BlowUpError },
    #[error(transparent)]
    Nori(#[from] NoriError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptOutcome {
    pub case: String,
    pub ledger: BlowUpLedger,
    pub report: NoriReport,
    /// Final values agree with `expect`.
    pub matches: bool,
}

impl BlowUpScript {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn run(&self) -> Result<ScriptOutcome, ScriptError> {
        let curves: Vec<(&str, u32, u32)> = self
            .curves
            .iter()
            .map(|c| (c.id.as_str(), c.degree, c.nodes))
            .collect();
        let mut l = BlowUpLedger::new(&curves, self.pending.clone())
            .map_err(|source| ScriptError::BlowUp { step: 0, source })?;
        for (i, s) in self.steps.iter().enumerate() {
            l = l.blow_up(s).map_err(|source| ScriptError::BlowUp {
                step: i + 1,
                source,
            })?;
        }
        let d: Vec<&str> = self.d.iter().map(String::as_str).collect();
        let report = nori_check(&l, &d)?;
        let first = report.components.first();
        let matches = first.is_some_and(|c| {
            c.self_intersection == self.expect.self_intersection
                && c.twice_nodes == self.expect.twice_nodes
        }) && report.pass == self.expect.nori
            && l.exceptional_divisors == self.steps.len();
        Ok(ScriptOutcome {
            case: self.case.clone(),
            ledger: l,
            report,
            matches,
        })
    }
}

/// The blow-up scripts shipped with the crate, one per degree-4 case that
/// goes through the Nori criterion.
pub const BLOWUP_SCRIPTS: &[&str] = &[
    include_str!("../fixtures/blowups/example_1.json"),
    include_str!("../fixtures/blowups/2_1_2.json"),
    include_str!("../fixtures/blowups/2_1_3.json"),
    include_str!("../fixtures/blowups/2_2_2.json"),
    include_str!("../fixtures/blowups/2_2_3.json"),
    include_str!("../fixtures/blowups/2_2_4.json"),
    include_str!("../fixtures/blowups/2_2_5.json"),
    include_str!("../fixtures/blowups/2_3_1.json"),
    include_str!("../fixtures/blowups/2_3_2.json"),
    include_str!("../fixtures/blowups/2_3_5.json"),
    include_str!("../fixtures/blowups/3_2.json"),
    include_str!("../fixtures/blowups/4_2.json"),
    include_str!("../fixtures/blowups/4_3.json"),
    include_str!("../fixtures/blowups/4_4.json"),
];

pub fn builtin_scripts() -> Vec<BlowUpScript> {
    BLOWUP_SCRIPTS
        .iter()
        .map(|s| BlowUpScript::from_json(s).expect("shipped script parses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(json: &str) -> CombinatorialType {
        CombinatorialType::from_json(json).unwrap()
    }

    #[test]
    fn kinds_round_trip() {
        for s in ["A1", "A6", "D4", "D5", "D6", "E7", "X9", "O5"] {
            assert_eq!(s.parse::<PointKind>().unwrap().to_string(), s);
        }
        assert_eq!("x2".parse::<PointKind>().unwrap(), PointKind::A(3));
        assert_eq!("×3".parse::<PointKind>().unwrap(), PointKind::A(5));
        assert!("A0".parse::<PointKind>().is_err());
    }

    #[test]
    fn delta_values() {
        let d = |s: &str| s.parse::<PointKind>().unwrap().delta();
        assert_eq!(
            (d("A1"), d("A2"), d("A3"), d("A4"), d("A6")),
            (1, 1, 2, 2, 3)
        );
        assert_eq!((d("D4"), d("X9")), (3, 6));
    }

    #[test]
    fn quartic_with_four_nodes_fails() {
        let c = ct(r#"{"components":[{"id":"C","degree":4}],"points":[
            {"id":"p1","kind":"A1","branches":["C","C"]},
            {"id":"p2","kind":"A1","branches":["C","C"]},
            {"id":"p3","kind":"A1","branches":["C","C"]},
            {"id":"p4","kind":"A1","branches":["C","C"]}]}"#);
        let r = validate_combinatorial_type(&c);
        assert_eq!(
            r.violations,
            vec![Violation::GenusBound {
                component: "C".into(),
                degree: 4,
                delta: 4,
                bound: 3
            }]
        );
    }

    #[test]
    fn cubic_and_line_bezout() {
        let good = ct(
            r#"{"components":[{"id":"C","degree":3},{"id":"L","degree":1}],"points":[
            {"id":"p","kind":"x2","branches":["C","L"]},
            {"id":"q","kind":"A1","branches":["C","L"]}]}"#,
        );
        assert!(validate_combinatorial_type(&good).is_ok());
        let bad = ct(
            r#"{"components":[{"id":"C","degree":3},{"id":"L","degree":1}],"points":[
            {"id":"p","kind":"A3","branches":["C","L"]}]}"#,
        );
        let r = validate_combinatorial_type(&bad);
        assert!(matches!(
            r.violations[..],
            [Violation::Bezout {
                expected: 3,
                got: 2,
                ..
            }]
        ));
    }

    #[test]
    fn smooth_conic_passes() {
        let c = ct(r#"{"components":[{"id":"Q","degree":2}]}"#);
        let r = validate_combinatorial_type(&c);
        assert!(r.is_ok() && !r.degree_over_five);
    }

    #[test]
    fn branch_totality() {
        let c = ct(r#"{"components":[{"id":"C","degree":3}],"points":[
            {"id":"p","kind":"A1","branches":["C"]},
            {"id":"q","kind":"A2","branches":["Z"]}]}"#);
        let r = validate_combinatorial_type(&c);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BranchCount { .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::UnknownComponent { .. })));
    }

    #[test]
    fn cusp_drops_four() {
        let l = BlowUpLedger::new(
            &[("C", 3, 0)],
            vec![Pending::Cusp {
                id: "q".into(),
                component: "C".into(),
                through: vec![],
            }],
        )
        .unwrap();
        assert!(!l.component("C").unwrap().smooth);
        let l2 = l.blow_up(&BlowUpPoint::Pending("q".into())).unwrap();
        assert_eq!(l2.component("C").unwrap().self_intersection, 5);
        assert_eq!(
            l.component("C").unwrap().self_intersection,
            9,
            "input ledger unchanged"
        );
        assert_eq!(l2.exceptional_divisors, 1);
        assert!(matches!(
            &l2.pending[..],
            [Pending::Tangency { order: 2, .. }]
        ));
    }

    #[test]
    fn smooth_conic_point() {
        let l = BlowUpLedger::new(&[("Q", 2, 0)], vec![]).unwrap();
        let l = l
            .blow_up(&BlowUpPoint::Smooth { smooth: "Q".into() })
            .unwrap();
        assert_eq!(l.component("Q").unwrap().self_intersection, 3);
    }

    #[test]
    fn blow_up_on_nothing_rejected() {
        let l = BlowUpLedger::new(&[("Q", 2, 0)], vec![]).unwrap();
        assert!(l
            .blow_up(&BlowUpPoint::Smooth { smooth: "Z".into() })
            .is_err());
        assert!(l.blow_up(&BlowUpPoint::Pending("p".into())).is_err());
    }

    #[test]
    fn nori_boundary() {
        let l = BlowUpLedger {
            components: vec![LedgerComponent {
                id: "D".into(),
                self_intersection: 2,
                nodes: 1,
                smooth: false,
                exceptional: false,
            }],
            exceptional_divisors: 0,
            pending: vec![],
        };
        assert!(!nori_check(&l, &["D"]).unwrap().pass);
    }

    #[test]
    fn unresolved_rejected() {
        let l = BlowUpLedger::new(
            &[("C", 3, 0)],
            vec![Pending::Cusp {
                id: "q".into(),
                component: "C".into(),
                through: vec![],
            }],
        )
        .unwrap();
        assert!(matches!(
            nori_check(&l, &["C"]),
            Err(NoriError::Unresolved(_))
        ));
    }

    #[test]
    fn shipped_scripts_replay() {
        let scripts = builtin_scripts();
        assert_eq!(scripts.iter().filter(|s| s.printed).count(), 13);
        for s in scripts {
            let out = s.run().unwrap_or_else(|e| panic!("{}: {e}", s.case));
            assert!(out.matches, "{}: {:?}", s.case, out.report);
        }
    }
}
