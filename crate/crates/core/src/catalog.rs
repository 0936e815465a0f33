//! Named groups as explicit presentations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fpcore::{parse_presentation, Presentation, Word};

/// Edge-labelled simple graph on vertices `0..vertices`. A label of `None`
/// stands for infinity: no relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Option<u32>)>,
}

impl LabeledGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, Option<u32>)>) -> Self {
        LabeledGraph { vertices, edges }
    }

    /// Path `0 - 1 - ... - (n-1)` with every edge labelled `m`, and every
    /// other pair labelled 2.
    pub fn path_complete(n: usize, m: u32) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, Some(if j == i + 1 { m } else { 2 })));
            }
        }
        LabeledGraph { vertices: n, edges }
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let mut seen = std::collections::HashSet::new();
        for &(v, w, m) in &self.edges {
            if v >= self.vertices || w >= self.vertices || v == w {
                return Err(CatalogError::Invalid(format!("bad edge {v}-{w}")));
            }
            if !seen.insert((v.min(w), v.max(w))) {
                return Err(CatalogError::Invalid(format!("repeated edge {v}-{w}")));
            }
            if matches!(m, Some(k) if k < 2) {
                return Err(CatalogError::Invalid(format!(
                    "edge label {} below 2",
                    m.unwrap()
                )));
            }
        }
        Ok(())
    }
}

/// Unlabelled simple graph for right-angled Artin groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupTag {
    Free(usize),
    /// Braid group on `n` strands.
    Braid(usize),
    SphereBraid3,
    Artin(LabeledGraph),
    Coxeter(LabeledGraph),
    Raag(SimpleGraph),
    Toric(u32, u32),
    ToricEven(u32),
    /// `G(T)`; coefficients of `T` from the constant term up.
    GPoly(Vec<i64>),
    GPolyMod(u32, Vec<i64>),
    Gr(u32, u32, u32),
    Triangle(u32, u32, u32),
    Surface(u32),
    SurfaceCentralExt(u32, i64),
    DirectProduct(Box<GroupTag>, Box<GroupTag>),
    FreeProduct(Box<GroupTag>, Box<GroupTag>),
    Cyclic(u32),
    QuinticExplicit(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("unknown quintic case id {0}")]
    UnknownQuintic(String),
    #[error("cannot parse tag {0:?}")]
    Syntax(String),
}

/// Case ids of the explicit quintic presentations with their DSL text.
pub const QUINTICS: &[(&str, &str)] = &[
    ("C5_3A4", "<a,b | b = a b^4 a, a^2 = b^2 a^3 b^2>"),
    ("C5_A6_3A2", "<u,v | u^3 = v^7 = (u v^2)^2>"),
    (
        "C4_3A2",
        "<a,b,c | aba = bab, bcb = cbc, a b c b^-1 a = b c b^-1 a b c b^-1>",
    ),
    ("C3_C2", "<a,b | [a^3,b] = 1, a b^2 = b a^2>"),
    (
        "C3_A2_x3_x2x1",
        "<a,b,c | aca = cac, [b,c] = 1, (ab)^2 = (ba)^2>",
    ),
    (
        "C2_3C1_a",
        "<a,b,c | [a,b] = [a, c^-1 b c] = 1, (bc)^2 = (cb)^2>",
    ),
    (
        "C2_3C1_b",
        "<a,b,c | (ac)^2 = (ca)^2, (ab)^2 = (ba)^2, [b,c] = 1>",
    ),
];

fn vertex_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("v{i}")).collect()
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn g(i: usize) -> Word {
    Word::generator(i)
}

/// `x y x y ...` with `m` letters.
fn alternating(x: usize, y: usize, m: u32) -> Word {
    Word::new((0..m as usize).map(|k| crate::fpcore::Letter::gen(if k % 2 == 0 { x } else { y })))
}

fn artin_relators(graph: &LabeledGraph) -> Vec<Word> {
    graph
        .edges
        .iter()
        .filter_map(|&(v, w, m)| {
            m.map(|m| alternating(v, w, m).mul(&alternating(w, v, m).inverse()))
        })
        .collect()
}

fn pres(names: Vec<String>, rels: Vec<Word>) -> Presentation {
    Presentation::new(names, rels).expect("catalog presentations are well formed")
}

fn positive(x: u32, what: &str) -> Result<(), CatalogError> {
    if x == 0 {
        Err(CatalogError::Invalid(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

/// Triangle Artin group with labels `M` on a–b, `N` on b–x, `P` on a–x.
pub fn artin_from_triple(m: u32, n: u32, p: u32) -> Result<Presentation, CatalogError> {
    let graph = LabeledGraph::new(3, vec![(0, 1, Some(m)), (1, 2, Some(n)), (0, 2, Some(p))]);
    graph.validate()?;
    Ok(pres(
        vec!["a".into(), "b".into(), "x".into()],
        artin_relators(&graph),
    ))
}

/// Disjoint union of generators, renaming clashes in the second factor by
/// appending `'`.
fn union(a: &Presentation, b: &Presentation) -> (Vec<String>, Vec<Word>, usize) {
    let mut names = a.generators().to_vec();
    for n in b.generators() {
        let mut n = n.clone();
        while names.contains(&n) {
            n.push('\'');
        }
        names.push(n);
    }
    let k = a.num_generators();
    let mut rels = a.relators().to_vec();
    for r in b.relators() {
        rels.push(
            r.letters()
                .iter()
                .map(|l| crate::fpcore::Letter::new(l.generator() + k, l.is_inverse()))
                .collect(),
        );
    }
    (names, rels, k)
}

pub fn build(tag: &GroupTag) -> Result<Presentation, CatalogError> {
    Ok(match tag {
        GroupTag::Free(n) => Presentation::free(names("x", *n)),
        GroupTag::Braid(n) => {
            if *n == 0 {
                return Err(CatalogError::Invalid(
                    "braid group needs at least one strand".into(),
                ));
            }
            let graph = LabeledGraph::path_complete(n - 1, 3);
            pres(vertex_names(n - 1), artin_relators(&graph))
        }
        GroupTag::SphereBraid3 => {
            parse_presentation("<s1,s2 | s1 s2 s1 = s2 s1 s2, s1 s2^2 s1>").unwrap()
        }
        GroupTag::Artin(graph) => {
            graph.validate()?;
            pres(vertex_names(graph.vertices), artin_relators(graph))
        }
        GroupTag::Coxeter(graph) => {
            graph.validate()?;
            let mut rels: Vec<Word> = (0..graph.vertices).map(|v| g(v).pow(2)).collect();
            rels.extend(artin_relators(graph));
            pres(vertex_names(graph.vertices), rels)
        }
        GroupTag::Raag(graph) => {
            let lg = LabeledGraph::new(
                graph.vertices,
                graph.edges.iter().map(|&(v, w)| (v, w, Some(2))).collect(),
            );
            lg.validate()?;
            pres(vertex_names(graph.vertices), artin_relators(&lg))
        }
        GroupTag::Toric(p, q) => {
            positive(*p, "p")?;
            positive(*q, "q")?;
            if num_integer::gcd(*p, *q) != 1 {
                return Err(CatalogError::Invalid(format!(
                    "T_{{{p},{q}}} needs gcd(p,q) = 1; use toric-even"
                )));
            }
            pres(
                vec!["a".into(), "b".into()],
                vec![g(0).pow(*p as i64).mul(&g(1).pow(-(*q as i64)))],
            )
        }
        GroupTag::ToricEven(r) => {
            positive(*r, "r")?;
            let ab = g(0).mul(&g(1));
            let ba = g(1).mul(&g(0));
            pres(
                vec!["a".into(), "b".into()],
                vec![ab.pow(*r as i64).mul(&ba.pow(-(*r as i64)))],
            )
        }
        GroupTag::GPoly(coeffs) => gpoly(coeffs, None)?,
        GroupTag::GPolyMod(p, coeffs) => {
            if *p < 2 {
                return Err(CatalogError::Invalid("modulus must be at least 2".into()));
            }
            gpoly(coeffs, Some(*p))?
        }
        GroupTag::Gr(p, q, r) => {
            for x in [p, q, r] {
                positive(*x, "exponent")?;
            }
            let abc = g(0).mul(&g(1)).mul(&g(2));
            let (ap, bq, cr) = (
                g(0).pow(*p as i64),
                g(1).pow(*q as i64),
                g(2).pow(*r as i64),
            );
            pres(
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    ap.mul(&bq.inverse()),
                    bq.mul(&cr.inverse()),
                    cr.mul(&abc.inverse()),
                ],
            )
        }
        GroupTag::Triangle(p, q, r) => {
            for x in [p, q, r] {
                positive(*x, "exponent")?;
            }
            let ab = g(0).mul(&g(1));
            pres(
                vec!["a".into(), "b".into()],
                vec![g(0).pow(*p as i64), g(1).pow(*q as i64), ab.pow(*r as i64)],
            )
        }
        GroupTag::Surface(genus) => {
            let (names, prod) = surface(*genus as usize);
            pres(names, if *genus == 0 { vec![] } else { vec![prod] })
        }
        GroupTag::SurfaceCentralExt(genus, p) => {
            let k = *genus as usize;
            let (mut names, prod) = surface(k);
            names.push("t".into());
            let t = g(2 * k);
            let mut rels = vec![prod.mul(&t.pow(-*p))];
            rels.extend((0..2 * k).map(|i| Word::commutator(&g(i), &t)));
            pres(names, rels)
        }
        GroupTag::DirectProduct(a, b) => {
            let (pa, pb) = (build(a)?, build(b)?);
            let (names, mut rels, k) = union(&pa, &pb);
            for i in 0..k {
                for j in k..names.len() {
                    rels.push(Word::commutator(&g(i), &g(j)));
                }
            }
            pres(names, rels)
        }
        GroupTag::FreeProduct(a, b) => {
            let (names, rels, _) = union(&build(a)?, &build(b)?);
            pres(names, rels)
        }
        GroupTag::Cyclic(n) => {
            positive(*n, "order")?;
            pres(vec!["c".into()], vec![g(0).pow(*n as i64)])
        }
        GroupTag::QuinticExplicit(id) => {
            let (_, text) = QUINTICS
                .iter()
                .find(|(k, _)| k == id)
                .ok_or_else(|| CatalogError::UnknownQuintic(id.clone()))?;
            parse_presentation(text).expect("quintic presentations parse")
        }
    })
}

fn surface(genus: usize) -> (Vec<String>, Word) {
    let mut names = names("A", genus);
    names.extend(self::names("B", genus));
    let prod = (0..genus).fold(Word::identity(), |w, i| {
        w.mul(&Word::commutator(&g(i), &g(genus + i)))
    });
    (names, prod)
}

/// Semidirect product of the module `Z[t]/T` (or `(Z/p)[t]/T`) by `Z`,
/// with `t` acting by multiplication: `t a_i t^-1 = a_{i+1}` and
/// `t a_{d-1} t^-1` the companion-matrix image.
fn gpoly(coeffs: &[i64], modulus: Option<u32>) -> Result<Presentation, CatalogError> {
    let d = coeffs
        .len()
        .checked_sub(1)
        .filter(|&d| d >= 1)
        .ok_or_else(|| CatalogError::Invalid("polynomial must have degree at least 1".into()))?;
    let lead = coeffs[d];
    if lead.abs() != 1 {
        return Err(CatalogError::Invalid(
            "leading coefficient must be 1 or -1".into(),
        ));
    }
    let mut names: Vec<String> = if d == 1 {
        vec!["a".into()]
    } else {
        (0..d).map(|i| format!("a{i}")).collect()
    };
    names.push("t".into());
    let t = g(d);
    let mut rels = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            rels.push(Word::commutator(&g(i), &g(j)));
        }
    }
    let conj = |w: &Word| t.mul(w).mul(&t.inverse());
    for i in 0..d - 1 {
        rels.push(conj(&g(i)).mul(&g(i + 1).inverse()));
    }
    // t^d = -lead * sum_{j<d} c_j t^j, since lead^-1 = lead.
    let image = (0..d).fold(Word::identity(), |w, j| w.mul(&g(j).pow(-coeffs[j] * lead)));
    rels.push(conj(&g(d - 1)).mul(&image.inverse()));
    if let Some(p) = modulus {
        rels.extend((0..d).map(|i| g(i).pow(p as i64)));
    }
    Ok(pres(names, rels))
}

fn poly_name(coeffs: &[i64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        let mag = c.unsigned_abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            mono
        } else {
            format!("{mag}{mono}")
        };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
        }
    }
    terms.join(" ")
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Free(0) => write!(f, "1"),
            GroupTag::Free(1) => write!(f, "Z"),
            GroupTag::Free(n) => write!(f, "F_{n}"),
            GroupTag::Braid(n) => write!(f, "B_{n}"),
            GroupTag::SphereBraid3 => write!(f, "B_3(S^2)"),
            GroupTag::Artin(gr) if gr.vertices == 3 && gr.edges.len() == 3 => {
                let l: Vec<String> = gr
                    .edges
                    .iter()
                    .map(|e| e.2.map_or("inf".into(), |m| m.to_string()))
                    .collect();
                write!(f, "Art_{}", l.concat())
            }
            GroupTag::Artin(gr) => write!(f, "Art(graph on {} vertices)", gr.vertices),
            GroupTag::Coxeter(gr) if gr.vertices == 3 && gr.edges.len() == 3 => {
                let mut l: Vec<u32> = gr.edges.iter().map(|e| e.2.unwrap_or(0)).collect();
                l.sort_unstable();
                write!(
                    f,
                    "Cox_{}",
                    l.iter().map(u32::to_string).collect::<String>()
                )
            }
            GroupTag::Coxeter(gr) => write!(f, "Cox(graph on {} vertices)", gr.vertices),
            GroupTag::Raag(gr) => write!(
                f,
                "RAAG(graph on {} vertices, {} edges)",
                gr.vertices,
                gr.edges.len()
            ),
            GroupTag::Toric(p, q) => write!(f, "T_{{{p},{q}}}"),
            GroupTag::ToricEven(r) => write!(f, "T_{{2,{}}}", 2 * r),
            GroupTag::GPoly(c) => write!(f, "G({})", poly_name(c)),
            GroupTag::GPolyMod(p, c) => write!(f, "G_{p}({})", poly_name(c)),
            GroupTag::Gr(p, q, r) => write!(f, "Gr<{p},{q},{r}>"),
            GroupTag::Triangle(p, q, r) => write!(f, "Delta({p},{q},{r})"),
            GroupTag::Surface(gn) => write!(f, "pi1(S_{gn})"),
            GroupTag::SurfaceCentralExt(gn, p) => {
                write!(f, "Z-central extension of pi1(S_{gn}) (p = {p})")
            }
            GroupTag::DirectProduct(a, b) => write!(f, "{a} x {b}"),
            GroupTag::FreeProduct(a, b) => write!(f, "{a} * {b}"),
            GroupTag::Cyclic(n) => write!(f, "Z/{n}"),
            GroupTag::QuinticExplicit(id) => write!(f, "Pi({id})"),
        }
    }
}

fn nums<T: std::str::FromStr>(s: &str) -> Option<Vec<T>> {
    if s.contains(',') {
        s.split(',').map(|x| x.trim().parse().ok()).collect()
    } else {
        // Compact form such as "333": one digit per entry.
        s.chars().map(|c| c.to_string().parse().ok()).collect()
    }
}

/// Vertex count and labeled edges.
type GraphSpec = (usize, Vec<(usize, usize, Option<u32>)>);

fn graph_spec(s: &str, labeled: bool) -> Option<GraphSpec> {
    let (n, edges) = s.split_once(';').unwrap_or((s, ""));
    let n: usize = n.trim().parse().ok()?;
    let mut out = Vec::new();
    for e in edges.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let parts: Vec<&str> = e.split('-').collect();
        let (v, w) = (parts.first()?.parse().ok()?, parts.get(1)?.parse().ok()?);
        let m = if labeled {
            match *parts.get(2)? {
                "inf" => None,
                x => Some(x.parse().ok()?),
            }
        } else {
            if parts.len() != 2 {
                return None;
            }
            Some(2)
        };
        out.push((v, w, m));
    }
    Some((n, out))
}

impl std::str::FromStr for GroupTag {
    type Err = CatalogError;

    /// Compact text syntax, e.g. `toric:3,4`, `artin:333`, `quintic:C4_3A2`,
    /// `gr:2,3,5 x free:1`. ` x ` is a direct product and ` * ` a free
    /// product; both associate to the left.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let err = || CatalogError::Syntax(s.to_string());
        let s = s.trim();
        for (sep, direct) in [(" x ", true), (" * ", false)] {
            if let Some(i) = s.rfind(sep) {
                let a: GroupTag = s[..i].parse()?;
                let b: GroupTag = s[i + sep.len()..].parse()?;
                return Ok(if direct {
                    GroupTag::DirectProduct(Box::new(a), Box::new(b))
                } else {
                    GroupTag::FreeProduct(Box::new(a), Box::new(b))
                });
            }
        }
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let triple = |arg: &str| -> Result<(u32, u32, u32), CatalogError> {
            match nums::<u32>(arg).ok_or_else(err)?.as_slice() {
                &[p, q, r] => Ok((p, q, r)),
                _ => Err(err()),
            }
        };
        let one =
            |arg: &str| -> Result<u32, CatalogError> { arg.trim().parse().map_err(|_| err()) };
        Ok(match kind {
            "free" => GroupTag::Free(one(arg)? as usize),
            "z" | "Z" if arg.is_empty() => GroupTag::Free(1),
            "braid" => GroupTag::Braid(one(arg)? as usize),
            "sphere-braid3" => GroupTag::SphereBraid3,
            "artin" | "coxeter" => {
                let (m, n, p) = triple(arg)?;
                let graph =
                    LabeledGraph::new(3, vec![(0, 1, Some(m)), (1, 2, Some(n)), (0, 2, Some(p))]);
                if kind == "artin" {
                    GroupTag::Artin(graph)
                } else {
                    GroupTag::Coxeter(graph)
                }
            }
            "artin-graph" | "coxeter-graph" => {
                let (n, edges) = graph_spec(arg, true).ok_or_else(err)?;
                let graph = LabeledGraph::new(n, edges);
                if kind == "artin-graph" {
                    GroupTag::Artin(graph)
                } else {
                    GroupTag::Coxeter(graph)
                }
            }
            "raag" => {
                let (n, edges) = graph_spec(arg, false).ok_or_else(err)?;
                GroupTag::Raag(SimpleGraph {
                    vertices: n,
                    edges: edges.into_iter().map(|(v, w, _)| (v, w)).collect(),
                })
            }
            "toric" => match nums::<u32>(arg).ok_or_else(err)?.as_slice() {
                &[p, q] => GroupTag::Toric(p, q),
                _ => return Err(err()),
            },
            "toric-even" => GroupTag::ToricEven(one(arg)?),
            "gpoly" => GroupTag::GPoly(
                arg.split(',')
                    .map(|x| x.trim().parse().map_err(|_| err()))
                    .collect::<Result<_, _>>()?,
            ),
            "gpolymod" => {
                let (p, c) = arg.split_once(';').ok_or_else(err)?;
                let c = c
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| err()))
                    .collect::<Result<_, _>>()?;
                GroupTag::GPolyMod(one(p)?, c)
            }
            "gr" => {
                let (p, q, r) = triple(arg)?;
                GroupTag::Gr(p, q, r)
            }
            "triangle" => {
                let (p, q, r) = triple(arg)?;
                GroupTag::Triangle(p, q, r)
            }
            "surface" => GroupTag::Surface(one(arg)?),
            "surface-ext" => {
                let (gn, p) = arg.split_once(',').ok_or_else(err)?;
                GroupTag::SurfaceCentralExt(one(gn)?, p.trim().parse().map_err(|_| err())?)
            }
            "cyclic" => GroupTag::Cyclic(one(arg)?),
            "quintic" => GroupTag::QuinticExplicit(arg.trim().to_string()),
            _ => return Err(err()),
        })
    }
}
