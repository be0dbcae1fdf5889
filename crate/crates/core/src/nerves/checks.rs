//! Counit and unit of the two nerve adjunctions, checked on concrete data.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fundamental::homs::ElementKey;
use crate::fundamental::words::format_word;
use crate::fundamental::{fundamental_category, pi0_trunc, GroupoidSolver};
use crate::nerves::category::{FiniteCategory, FiniteGroupoid};
use crate::nerves::nerve::{nerve_trunc2, symmetric_nerve_trunc2};
use crate::trunc::{TruncMap, TruncSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// The worse of the two.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub side_a: Value,
    pub side_b: Value,
    pub invariants: Value,
    pub verdict: Verdict,
    /// One line per mismatch or unsettled comparison.
    pub notes: Vec<String>,
}

impl Report {
    pub(crate) fn note(&mut self, v: Verdict, msg: String) {
        self.verdict = self.verdict.and(v);
        self.notes.push(msg);
    }
}

/// Hom-set size: a number, `"infinite"`, or `null` when undecided.
fn size_value(s: Option<Option<usize>>) -> Value {
    match s {
        Some(Some(k)) => json!(k),
        Some(None) => json!("infinite"),
        None => Value::Null,
    }
}

/// Compares the fundamental groupoid of the truncated symmetric nerve of `g` with `g`:
/// hom-set sizes through the vertex group orders, then agreement of composition and
/// injectivity on arrow representatives.
pub fn counit_check(case: &str, g: &FiniteGroupoid, max_cosets: usize) -> Result<Report> {
    let c = g.category();
    let (x, edge_of) = symmetric_nerve_trunc2(g);
    let comps = pi0_trunc(&x);
    let n = c.objects();
    let mut solvers: HashMap<usize, Option<GroupoidSolver>> = HashMap::new();
    for part in comps.parts() {
        solvers.insert(comps.labels[part[0]], GroupoidSolver::new(&x, part[0], max_cosets)?);
    }
    let mut report = Report {
        case: case.to_string(),
        side_a: Value::Null,
        side_b: Value::Null,
        invariants: Value::Null,
        verdict: Verdict::Pass,
        notes: vec![],
    };
    let mut computed = vec![vec![Value::Null; n]; n];
    let mut expected = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            expected[a][b] = c.hom(a, b).len();
            let size = if comps.labels[a] != comps.labels[b] {
                Some(Some(0))
            } else {
                solvers[&comps.labels[a]].as_ref().map(GroupoidSolver::order)
            };
            computed[a][b] = size_value(size);
            match size {
                None => report.note(Verdict::Inconclusive, format!("hom({a}, {b}): coset enumeration exceeded the budget")),
                Some(s) if s != Some(expected[a][b]) => report.note(
                    Verdict::Fail,
                    format!("hom({a}, {b}): {} classes of paths but {} arrows", computed[a][b], expected[a][b]),
                ),
                _ => {}
            }
        }
    }
    let key = |path: &[usize]| -> Option<ElementKey> {
        let s = solvers[&comps.labels[c.src(path[0])]].as_ref()?;
        let edges: Vec<usize> = path.iter().map(|&a| edge_of[a]).collect();
        Some(s.key(&edges))
    };
    for a in 0..c.num_arrows() {
        for b in c.out_of(c.dst(a)) {
            let ab = c.then(a, b).unwrap();
            if let (Some(k1), Some(k2)) = (key(&[a, b]), key(&[ab])) {
                if k1 != k2 {
                    report.note(Verdict::Fail, format!("path ({a}, {b}) is not homotopic to the edge of {ab}"));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let keys: Option<HashSet<ElementKey>> = c.hom(a, b).into_iter().map(|f| key(&[f])).collect();
            if let Some(keys) = keys {
                if keys.len() != expected[a][b] {
                    report.note(Verdict::Fail, format!("distinct arrows {a} -> {b} have homotopic edges"));
                }
            }
        }
    }
    report.side_a = json!({ "objects": n, "hom_sizes": computed });
    report.side_b = json!({ "objects": n, "hom_sizes": expected });
    report.invariants = json!(comps
        .parts()
        .iter()
        .map(|p| {
            let s = solvers[&comps.labels[p[0]]].as_ref();
            json!({ "base": p[0], "objects": p.len(), "vertex_group_order": size_value(s.map(GroupoidSolver::order)) })
        })
        .collect::<Vec<_>>());
    Ok(report)
}

/// Compares the fundamental category of the truncated nerve of `c` with `c` using bounded
/// hom enumeration; a non-saturated comparison is inconclusive.
pub fn dir_counit_check(case: &str, c: &FiniteCategory, max_len: usize) -> Result<Report> {
    let (x, edge_of) = nerve_trunc2(c);
    let p = fundamental_category(&x)?;
    let n = c.objects();
    let word = |a: usize| -> Vec<usize> { p.edge_gen[edge_of[a]].into_iter().collect() };
    let mut report = Report {
        case: case.to_string(),
        side_a: Value::Null,
        side_b: Value::Null,
        invariants: Value::Null,
        verdict: Verdict::Pass,
        notes: vec![],
    };
    let mut computed = vec![vec![0usize; n]; n];
    let mut saturated = vec![vec![true; n]; n];
    let mut expected = vec![vec![0usize; n]; n];
    let mut classes = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let (count, sat) = p.hom_count(a, b, max_len)?;
            computed[a][b] = count;
            saturated[a][b] = sat;
            expected[a][b] = c.hom(a, b).len();
            if !sat {
                report.note(Verdict::Inconclusive, format!("hom({a}, {b}) does not saturate at length {max_len}"));
            } else if count != expected[a][b] {
                report.note(Verdict::Fail, format!("hom({a}, {b}): {count} classes but {} arrows", expected[a][b]));
            }
            classes.insert((a, b), p.word_classes(a, b, max_len.max(1))?);
        }
    }
    for a in 0..c.num_arrows() {
        for b in c.out_of(c.dst(a)) {
            let ab = c.then(a, b).unwrap();
            let table = &classes[&(c.src(a), c.dst(b))];
            let pair: Vec<usize> = word(a).into_iter().chain(word(b)).collect();
            if table.get(&pair) != table.get(&word(ab)) {
                report.note(Verdict::Fail, format!("path ({a}, {b}) is not related to the edge of {ab}"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let table = &classes[&(a, b)];
            let distinct: HashSet<_> = c.hom(a, b).into_iter().map(|f| table.get(&word(f))).collect();
            if distinct.len() != expected[a][b] {
                report.note(Verdict::Fail, format!("distinct arrows {a} -> {b} have related edges"));
            }
        }
    }
    report.side_a = json!({ "objects": n, "hom_sizes": computed, "saturated": saturated, "max_len": max_len });
    report.side_b = json!({ "objects": n, "hom_sizes": expected });
    report.invariants = json!({ "edges": x.num_nondegenerate_edges(), "triangles": x.triangles().len() });
    Ok(report)
}

/// The unit `X -> M(Pi X)` on a symmetric truncated set. When every vertex group is finite
/// the target groupoid is built explicitly and the map is checked to preserve structure;
/// otherwise only the class of each edge in its vertex group is reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitMap {
    pub complete: bool,
    pub groupoid: Option<FiniteGroupoid>,
    pub map: Option<TruncMap>,
    /// For each edge, the group element `tree(src) e tree(dst)^-1` it represents.
    pub edge_images: Vec<String>,
}

/// Refuses to tabulate target groupoids with more arrows than this.
pub const MAX_UNIT_ARROWS: usize = 4096;

pub fn unit_map(x: &TruncSet, max_cosets: usize) -> Result<UnitMap> {
    if !x.is_symmetric() {
        return Err(Error::Unsupported("the unit map is defined for symmetric sets".into()));
    }
    let comps = pi0_trunc(x);
    let parts = comps.parts();
    let mut solvers = Vec::with_capacity(parts.len());
    for part in &parts {
        solvers.push(GroupoidSolver::new(x, part[0], max_cosets)?);
    }
    let edge_images: Vec<String> = (0..x.num_edges())
        .map(|e| match &solvers[comps.labels[x.src(e)]] {
            Some(s) => match s.key(&[e]) {
                ElementKey::Reduced(w) => format_word(&w),
                ElementKey::Coset(k) => format!("#{k}"),
            },
            None => "?".into(),
        })
        .collect();
    let orders: Option<Vec<usize>> = solvers.iter().map(|s| s.as_ref().and_then(GroupoidSolver::order)).collect();
    let arrows: Option<usize> = orders
        .as_ref()
        .map(|o| parts.iter().zip(o).map(|(p, m)| p.len() * p.len() * m).sum());
    let (Some(orders), Some(total)) = (orders, arrows) else {
        return Ok(UnitMap {
            complete: false,
            groupoid: None,
            map: None,
            edge_images,
        });
    };
    if total > MAX_UNIT_ARROWS {
        return Ok(UnitMap {
            complete: false,
            groupoid: None,
            map: None,
            edge_images,
        });
    }
    // arrows (a, b, g) for a, b in one component and g in its vertex group; g = 0 is the unit
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut list = Vec::new();
    let mut identities = vec![0; x.n_vertices()];
    for (ci, part) in parts.iter().enumerate() {
        for &a in part {
            for &b in part {
                for g in 0..orders[ci] {
                    if a == b && g == 0 {
                        identities[a] = list.len();
                    }
                    index.insert((a, b, g), list.len());
                    list.push((a, b, g));
                }
            }
        }
    }
    let words: Vec<Option<Vec<_>>> = solvers
        .iter()
        .map(|s| s.as_ref().and_then(|s| s.coset_table()).map(|t| t.words()))
        .collect();
    let product = |ci: usize, g: usize, h: usize| -> usize {
        match (&solvers[ci], &words[ci]) {
            (Some(s), Some(w)) => s.coset_table().unwrap().trace_from(g, &w[h]),
            _ => 0,
        }
    };
    let compose = list
        .iter()
        .map(|&(a, b, g)| {
            list.iter()
                .map(|&(b2, c, h)| (b == b2).then(|| index[&(a, c, product(comps.labels[a], g, h))]))
                .collect()
        })
        .collect();
    let arrows_ends = list.iter().map(|&(a, b, _)| (a, b)).collect();
    let groupoid = FiniteGroupoid::new(FiniteCategory::new(x.n_vertices(), arrows_ends, identities, compose)?)?;
    let (target, edge_of) = symmetric_nerve_trunc2(&groupoid);
    let element = |e: usize| -> usize {
        match solvers[comps.labels[x.src(e)]].as_ref().map(|s| s.key(&[e])) {
            Some(ElementKey::Coset(k)) => k,
            _ => 0,
        }
    };
    let map = TruncMap {
        vertices: (0..x.n_vertices()).collect(),
        edges: (0..x.num_edges())
            .map(|e| edge_of[index[&(x.src(e), x.dst(e), element(e))]])
            .collect(),
    };
    map.validate(x, &target)?;
    Ok(UnitMap {
        complete: true,
        groupoid: Some(groupoid),
        map: Some(map),
        edge_images,
    })
}
