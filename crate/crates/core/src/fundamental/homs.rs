//! Bounded hom-set enumeration, the move-based oracle, and loop monoids.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::error::{input, Result};
use crate::fundamental::group::{tietze_simplify, todd_coxeter, CosetTable, Tietze, DEFAULT_TIETZE_BUDGET};
use crate::fundamental::presentation::{
    edge_path_groupoid, pi0_trunc, vertex_group, CategoryPresentation, GroupoidPresentation, VertexGroup,
};
use crate::fundamental::words::{Letter, Word};
use crate::trunc::{EdgeId, Triangle, TruncSet};
use crate::union_find::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomClasses {
    pub count: usize,
    /// Every word of length `max_len + 1` is equivalent to a shorter one.
    pub saturated: bool,
    /// Shortest, then lexicographically least, word of each class.
    pub representatives: Vec<Vec<usize>>,
}

/// Words of generators from `x` to `y` with length at most `max_len`.
fn words_between(p: &CategoryPresentation, x: Vertex, y: Vertex, max_len: usize) -> Vec<Vec<usize>> {
    let mut out_arrows: Vec<Vec<usize>> = vec![Vec::new(); p.objects];
    for (g, a) in p.generators.iter().enumerate() {
        out_arrows[a.src].push(g);
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        v: Vertex,
        y: Vertex,
        left: usize,
        p: &CategoryPresentation,
        arrows: &[Vec<usize>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == y {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for &g in &arrows[v] {
            cur.push(g);
            rec(p.generators[g].dst, y, left - 1, p, arrows, cur, out);
            cur.pop();
        }
    }
    rec(x, y, max_len, p, &out_arrows, &mut cur, &mut out);
    out
}

impl CategoryPresentation {
    fn start_of(&self, w: &[usize]) -> Option<Vertex> {
        w.first().map(|&g| self.generators[g].src)
    }

    /// Words `x -> y` of length at most `max_len + 1`, joined by single relation rewrites.
    fn closure(&self, x: Vertex, y: Vertex, max_len: usize) -> (Vec<Vec<usize>>, UnionFind) {
        let words = words_between(self, x, y, max_len + 1);
        let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(i, w)| (&w[..], i)).collect();
        let mut uf = UnionFind::new(words.len());
        let mut rules: Vec<(&[usize], &[usize])> = Vec::new();
        for (l, r) in &self.relations {
            rules.push((l, r));
            rules.push((r, l));
        }
        for (i, w) in words.iter().enumerate() {
            for &(l, r) in &rules {
                if l.is_empty() {
                    // an identity rewritten as the loop r: insert wherever r can start
                    let Some(s) = self.start_of(r) else { continue };
                    for pos in 0..=w.len() {
                        let at = if pos == 0 { x } else { self.generators[w[pos - 1]].dst };
                        if at == s {
                            let v: Vec<usize> = w[..pos].iter().chain(r).chain(&w[pos..]).copied().collect();
                            if let Some(&j) = index.get(&v[..]) {
                                uf.union(i, j);
                            }
                        }
                    }
                    continue;
                }
                if l.len() > w.len() {
                    continue;
                }
                for pos in 0..=w.len() - l.len() {
                    if &w[pos..pos + l.len()] == l {
                        let v: Vec<usize> = w[..pos].iter().chain(r).chain(&w[pos + l.len()..]).copied().collect();
                        if let Some(&j) = index.get(&v[..]) {
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
        (words, uf)
    }

    /// Classes of `hom(x, y)` with a representative of length at most `max_len`, under the
    /// congruence generated by the relations and computed among words of length `max_len + 1`.
    pub fn hom_classes(&self, x: Vertex, y: Vertex, max_len: usize) -> Result<HomClasses> {
        let (words, mut uf, best) = self.classes(x, y, max_len)?;
        let saturated = words
            .iter()
            .enumerate()
            .filter(|(_, w)| w.len() == max_len + 1)
            .all(|(i, _)| best.contains_key(&uf.find(i)));
        let mut representatives: Vec<Vec<usize>> = best.values().map(|&i| words[i].clone()).collect();
        representatives.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(HomClasses {
            count: representatives.len(),
            saturated,
            representatives,
        })
    }

    /// The closure together with the best short word of each class, keyed by root.
    #[allow(clippy::type_complexity)]
    fn classes(&self, x: Vertex, y: Vertex, max_len: usize) -> Result<(Vec<Vec<usize>>, UnionFind, HashMap<usize, usize>)> {
        if x >= self.objects || y >= self.objects {
            return input(format!("objects {x}, {y} out of range"));
        }
        let (words, mut uf) = self.closure(x, y, max_len);
        let mut best: HashMap<usize, usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if w.len() > max_len {
                continue;
            }
            let e = best.entry(uf.find(i)).or_insert(i);
            let cur = &words[*e];
            if (w.len(), w) < (cur.len(), cur) {
                *e = i;
            }
        }
        Ok((words, uf, best))
    }

    /// Class label of every word `x -> y` of length at most `max_len + 1` in the bounded closure.
    pub fn word_classes(&self, x: Vertex, y: Vertex, max_len: usize) -> Result<HashMap<Vec<usize>, usize>> {
        let (words, mut uf, _) = self.classes(x, y, max_len)?;
        Ok(words.into_iter().enumerate().map(|(i, w)| (w, uf.find(i))).collect())
    }

    pub fn hom_count(&self, x: Vertex, y: Vertex, max_len: usize) -> Result<(usize, bool)> {
        let h = self.hom_classes(x, y, max_len)?;
        Ok((h.count, h.saturated))
    }

    /// Endo-loop classes at `base` with their partial multiplication table; `None` marks
    /// products whose concatenated representative exceeds `max_len`.
    pub fn pi_monoid(&self, base: Vertex, max_len: usize) -> Result<PiMonoid> {
        let h = self.hom_classes(base, base, max_len)?;
        let (words, mut uf, _) = self.classes(base, base, max_len)?;
        let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(i, w)| (&w[..], i)).collect();
        let rep_of_root: HashMap<usize, usize> = h
            .representatives
            .iter()
            .enumerate()
            .map(|(k, r)| (uf.find(index[&r[..]]), k))
            .collect();
        let mut table = vec![vec![None; h.count]; h.count];
        for (i, a) in h.representatives.iter().enumerate() {
            for (j, b) in h.representatives.iter().enumerate() {
                let ab: Vec<usize> = a.iter().chain(b).copied().collect();
                if ab.len() <= max_len {
                    table[i][j] = rep_of_root.get(&uf.find(index[&ab[..]])).copied();
                }
            }
        }
        Ok(PiMonoid {
            base,
            saturated: h.saturated,
            elements: h.representatives,
            table,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiMonoid {
    pub base: Vertex,
    pub saturated: bool,
    pub elements: Vec<Vec<usize>>,
    pub table: Vec<Vec<Option<usize>>>,
}

/// Result of the move-based oracle at two move bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCount {
    pub count: usize,
    /// Count with intermediate paths allowed two steps longer.
    pub count_extended: usize,
    pub saturated: bool,
}

/// Classes of edge paths `x -> y` of length at most `max_len`, identified by insertion and
/// deletion of degenerate steps, triangle fills `(a, b) <-> c`, and in the symmetric case
/// cancellation of `(e, rev e)`, with every intermediate path of length at most `bound`.
pub fn oracle_classes(t: &TruncSet, x: Vertex, y: Vertex, max_len: usize, bound: usize) -> Result<usize> {
    if x >= t.n_vertices() || y >= t.n_vertices() {
        return input(format!("vertices {x}, {y} out of range"));
    }
    let mut out_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); t.n_vertices()];
    for e in 0..t.num_edges() {
        out_edges[t.src(e)].push(e);
    }
    let mut paths: Vec<Vec<EdgeId>> = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        t: &TruncSet,
        v: Vertex,
        y: Vertex,
        left: usize,
        out_edges: &[Vec<EdgeId>],
        cur: &mut Vec<EdgeId>,
        paths: &mut Vec<Vec<EdgeId>>,
    ) {
        if v == y {
            paths.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for &e in &out_edges[v] {
            cur.push(e);
            rec(t, t.dst(e), y, left - 1, out_edges, cur, paths);
            cur.pop();
        }
    }
    rec(t, x, y, bound.max(max_len), &out_edges, &mut cur, &mut paths);
    let index: HashMap<&[EdgeId], usize> = paths.iter().enumerate().map(|(i, p)| (&p[..], i)).collect();
    let fills: HashMap<(EdgeId, EdgeId), Vec<EdgeId>> = {
        let mut m: HashMap<(EdgeId, EdgeId), Vec<EdgeId>> = HashMap::new();
        let closure: HashSet<Triangle> = t.triangle_closure();
        for [a, b, c] in closure {
            m.entry((a, b)).or_default().push(c);
        }
        m
    };
    let mut uf = UnionFind::new(paths.len());
    // every move shortens in one direction, so generating shortenings from every path suffices
    for (i, p) in paths.iter().enumerate() {
        let mut join = |q: Vec<EdgeId>| {
            if let Some(&j) = index.get(&q[..]) {
                uf.union(i, j);
            }
        };
        for k in 0..p.len() {
            if t.is_degenerate(p[k]) {
                join([&p[..k], &p[k + 1..]].concat());
            }
            if k + 1 < p.len() {
                if let Some(cs) = fills.get(&(p[k], p[k + 1])) {
                    for &c in cs {
                        join([&p[..k], &[c][..], &p[k + 2..]].concat());
                    }
                }
                if t.is_symmetric() && p[k + 1] == t.rev(p[k]) {
                    join([&p[..k], &p[k + 2..]].concat());
                }
            }
        }
    }
    let classes: BTreeSet<usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() <= max_len)
        .map(|(i, _)| uf.find(i))
        .collect();
    Ok(classes.len())
}

/// The oracle at move bounds `max_len` and `max_len + 2`; saturated when they agree.
pub fn brute_force_classes(t: &TruncSet, x: Vertex, y: Vertex, max_len: usize) -> Result<OracleCount> {
    let count = oracle_classes(t, x, y, max_len, max_len)?;
    let count_extended = oracle_classes(t, x, y, max_len, max_len + 2)?;
    Ok(OracleCount {
        count,
        count_extended,
        saturated: count == count_extended,
    })
}

/// Decides equality of loops at a base point of a symmetric set, when the reduced vertex group
/// is free or finite.
pub struct GroupoidSolver {
    group: VertexGroup,
    tietze: Tietze,
    table: Option<CosetTable>,
    gp: GroupoidPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementKey {
    Reduced(Word),
    Coset(usize),
}

impl GroupoidSolver {
    /// `None` when the group is neither free after simplification nor enumerable within
    /// `max_cosets`.
    pub fn new(t: &TruncSet, base: Vertex, max_cosets: usize) -> Result<Option<GroupoidSolver>> {
        GroupoidSolver::from_presentation(edge_path_groupoid(t)?, base, max_cosets)
    }

    pub fn from_presentation(gp: GroupoidPresentation, base: Vertex, max_cosets: usize) -> Result<Option<GroupoidSolver>> {
        let group = vertex_group(&gp, base)?;
        let tietze = tietze_simplify(&group.presentation, DEFAULT_TIETZE_BUDGET);
        let table = if tietze.presentation.relators.is_empty() {
            None
        } else {
            match todd_coxeter(&tietze.presentation, max_cosets) {
                Some(tab) => Some(tab),
                None => return Ok(None),
            }
        };
        Ok(Some(GroupoidSolver { group, tietze, table, gp }))
    }

    pub fn in_component(&self, v: Vertex) -> bool {
        self.group.tree_path.get(v).is_some_and(Option::is_some)
    }

    /// Group element of an edge path starting at any vertex of the base component.
    pub fn key(&self, edges: &[EdgeId]) -> ElementKey {
        self.key_word(&self.gp.path_word(edges))
    }

    /// Group element of a word of groupoid generators inside the base component.
    pub fn key_word(&self, w: &[Letter]) -> ElementKey {
        let w = self.tietze.apply(&self.group.element(w));
        match &self.table {
            None => ElementKey::Reduced(w),
            Some(tab) => ElementKey::Coset(tab.trace(&w)),
        }
    }

    pub fn presentation(&self) -> &GroupoidPresentation {
        &self.gp
    }

    pub fn vertex_group(&self) -> &VertexGroup {
        &self.group
    }

    /// Order of the vertex group; `None` when it is infinite (free of positive rank).
    pub fn order(&self) -> Option<usize> {
        match &self.table {
            Some(t) => Some(t.order()),
            None if self.tietze.presentation.generators == 0 => Some(1),
            None => None,
        }
    }

    /// Free rank when the simplified presentation has no relators.
    pub fn free_rank(&self) -> Option<usize> {
        self.table.is_none().then_some(self.tietze.presentation.generators)
    }

    pub fn coset_table(&self) -> Option<&CosetTable> {
        self.table.as_ref()
    }

    pub fn simplified(&self) -> &Tietze {
        &self.tietze
    }
}

/// Presentation-side count of classes of paths `x -> y` with a representative of length at
/// most `max_len`; `None` when the word problem could not be settled.
pub fn groupoid_hom_count(t: &TruncSet, x: Vertex, y: Vertex, max_len: usize, max_cosets: usize) -> Result<Option<usize>> {
    if x >= t.n_vertices() || y >= t.n_vertices() {
        return input(format!("vertices {x}, {y} out of range"));
    }
    if pi0_trunc(t).labels[x] != pi0_trunc(t).labels[y] {
        return Ok(Some(0));
    }
    let Some(solver) = GroupoidSolver::new(t, x, max_cosets)? else {
        return Ok(None);
    };
    let mut keys = HashSet::new();
    let mut cur = Vec::new();
    let nondeg: Vec<Vec<EdgeId>> = {
        let mut v = vec![Vec::new(); t.n_vertices()];
        for e in t.nondegenerate_edges() {
            v[t.src(e)].push(e);
        }
        v
    };
    fn rec(
        t: &TruncSet,
        v: Vertex,
        y: Vertex,
        left: usize,
        out: &[Vec<EdgeId>],
        cur: &mut Vec<EdgeId>,
        solver: &GroupoidSolver,
        keys: &mut HashSet<ElementKey>,
    ) {
        if v == y {
            keys.insert(solver.key(cur));
        }
        if left == 0 {
            return;
        }
        for &e in &out[v] {
            cur.push(e);
            rec(t, t.dst(e), y, left - 1, out, cur, solver, keys);
            cur.pop();
        }
    }
    rec(t, x, y, max_len, &nondeg, &mut cur, &solver, &mut keys);
    Ok(Some(keys.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundamental::presentation::fundamental_category;
    use crate::spaces::build_space;

    fn trunc(s: &str) -> TruncSet {
        build_space(&s.parse().unwrap()).unwrap().to_trunc()
    }

    #[test]
    fn simplex_homs() {
        let c = fundamental_category(&trunc("simplex:2")).unwrap();
        let h = c.hom_classes(0, 2, 2).unwrap();
        assert_eq!((h.count, h.saturated), (1, true));
        assert_eq!(c.hom_count(2, 0, 3).unwrap(), (0, true));
    }

    #[test]
    fn directed_circle_loops() {
        let c = fundamental_category(&trunc("dcircle:3")).unwrap();
        assert_eq!(c.hom_count(0, 0, 7).unwrap(), (3, true));
        let m = c.pi_monoid(0, 9).unwrap();
        assert_eq!(m.elements.len(), 4);
        assert_eq!(m.table[1][2], Some(3));
        assert_eq!(m.table[2][2], None);
        assert_eq!(m.table[0][3], Some(3));
    }

    #[test]
    fn oracle_examples() {
        let c3 = trunc("circle:3");
        let r = brute_force_classes(&c3, 0, 0, 6).unwrap();
        assert_eq!(r.count, 5);
        assert!(r.saturated);
        assert_eq!(brute_force_classes(&trunc("codiscrete:2"), 0, 0, 4).unwrap().count, 1);
        assert_eq!(brute_force_classes(&trunc("simplex:2"), 0, 2, 3).unwrap().count, 1);
    }

    #[test]
    fn presentation_side_counts() {
        assert_eq!(groupoid_hom_count(&trunc("circle:3"), 0, 0, 6, 1000).unwrap(), Some(5));
        assert_eq!(groupoid_hom_count(&trunc("circle:3"), 0, 1, 4, 1000).unwrap(), Some(3));
        assert_eq!(groupoid_hom_count(&trunc("codiscrete:3"), 1, 2, 3, 1000).unwrap(), Some(1));
        assert_eq!(groupoid_hom_count(&trunc("sum(circle:3,circle:3)"), 0, 4, 3, 1000).unwrap(), Some(0));
    }
}
