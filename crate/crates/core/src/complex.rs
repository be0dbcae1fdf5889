//! Simple combinatorial spaces: complexes, tolerance sets, directed complexes and step sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

pub type Vertex = usize;

/// A simplicial complex on the vertex set `0..n`, stored by its maximal linked parts.
///
/// Every singleton and the empty set are linked; a part is linked iff it lies in some facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex {
    n_vertices: usize,
    facets: Vec<Vec<Vertex>>,
}

/// Removes parts contained in other parts and sorts the survivors.
fn antichain(n: usize, parts: impl IntoIterator<Item = Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let mut parts: Vec<Vec<Vertex>> = parts
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p.dedup();
            p
        })
        .collect();
    for v in 0..n {
        parts.push(vec![v]);
    }
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    parts.dedup();
    let mut kept: Vec<Vec<Vertex>> = Vec::new();
    for p in parts {
        if !kept.iter().any(|k| is_subset(&p, k)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

/// Both slices sorted.
pub(crate) fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

impl Complex {
    /// Builds the complex generated (downward closure) by `parts`.
    pub fn from_parts(n_vertices: usize, parts: impl IntoIterator<Item = Vec<Vertex>>) -> Result<Self> {
        let parts: Vec<Vec<Vertex>> = parts.into_iter().collect();
        for p in &parts {
            if let Some(&v) = p.iter().find(|&&v| v >= n_vertices) {
                return input(format!("vertex {v} out of range 0..{n_vertices}"));
            }
        }
        Ok(Complex {
            n_vertices,
            facets: antichain(n_vertices, parts),
        })
    }

    /// Skips the antichain reduction; callers guarantee the parts are already maximal and sorted.
    pub(crate) fn from_facets_unchecked(n_vertices: usize, mut facets: Vec<Vec<Vertex>>) -> Self {
        facets.sort();
        Complex { n_vertices, facets }
    }

    pub fn discrete(n: usize) -> Self {
        Complex::from_facets_unchecked(n, (0..n).map(|v| vec![v]).collect())
    }

    /// All subsets of `{0..=n}` linked.
    pub fn codiscrete(n: usize) -> Self {
        Complex::from_facets_unchecked(n + 1, vec![(0..=n).collect()])
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn contains(&self, part: &[Vertex]) -> Result<bool> {
        if let Some(&v) = part.iter().find(|&&v| v >= self.n_vertices) {
            return input(format!("unknown vertex {v}"));
        }
        let mut p = part.to_vec();
        p.sort_unstable();
        p.dedup();
        Ok(self.is_linked_sorted(&p))
    }

    pub(crate) fn is_linked_sorted(&self, part: &[Vertex]) -> bool {
        part.len() <= 1 || self.facets.iter().any(|f| is_subset(part, f))
    }

    /// Linked parts of size `k`, sorted.
    pub fn linked_parts_of_size(&self, k: usize) -> BTreeSet<Vec<Vertex>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for_each_subset(f, k, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        out
    }

    /// Relabels vertices through the bijection `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[Vertex]) -> Complex {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<Vertex> = f.iter().map(|&v| perm[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        Complex::from_facets_unchecked(self.n_vertices, facets)
    }

    /// Cartesian product; the pair `(x, y)` gets id `x * |Y| + y`.
    pub fn product(&self, other: &Complex) -> Complex {
        let m = other.n_vertices;
        let mut facets = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                let mut p: Vec<Vertex> = Vec::with_capacity(f.len() * g.len());
                for &x in f {
                    for &y in g {
                        p.push(x * m + y);
                    }
                }
                facets.push(p);
            }
        }
        Complex::from_facets_unchecked(self.n_vertices * m, facets)
    }

    /// One-point union identifying vertex 0 of `other` with vertex 0 of `self`.
    pub fn wedge(&self, other: &Complex) -> Complex {
        let shift = |v: Vertex| if v == 0 { 0 } else { self.n_vertices + v - 1 };
        let n = self.n_vertices + other.n_vertices.saturating_sub(1);
        let parts = self
            .facets
            .iter()
            .cloned()
            .chain(other.facets.iter().map(|f| f.iter().map(|&v| shift(v)).collect()));
        Complex {
            n_vertices: n,
            facets: antichain(n, parts),
        }
    }

    pub fn disjoint_union(&self, other: &Complex) -> Complex {
        let s = self.n_vertices;
        let mut facets = self.facets.clone();
        facets.extend(other.facets.iter().map(|f| f.iter().map(|&v| v + s).collect()));
        Complex::from_facets_unchecked(s + other.n_vertices, facets)
    }

    /// Whether a vertex mapping preserves linked parts.
    pub fn is_map_to(&self, target: &Complex, f: &[Vertex]) -> bool {
        f.len() == self.n_vertices
            && f.iter().all(|&v| v < target.n_vertices)
            && self.facets.iter().all(|facet| {
                let mut img: Vec<Vertex> = facet.iter().map(|&v| f[v]).collect();
                img.sort_unstable();
                img.dedup();
                target.is_linked_sorted(&img)
            })
    }
}

pub(crate) fn for_each_subset(set: &[Vertex], k: usize, f: &mut impl FnMut(&[Vertex])) {
    fn rec(set: &[Vertex], k: usize, start: usize, cur: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(set, k, 0, &mut cur, f);
}

/// A reflexive symmetric relation, stored as unordered pairs `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TolSet {
    n_vertices: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl TolSet {
    pub fn new(n_vertices: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for (a, b) in pairs {
            if a >= n_vertices || b >= n_vertices {
                return input(format!("pair ({a}, {b}) out of range"));
            }
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Ok(TolSet { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.edges
    }

    pub fn tolerates(&self, a: Vertex, b: Vertex) -> bool {
        a == b || self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// The embedding into complexes: a part is linked iff all its pairs are tolerant.
    pub fn clique_complex(&self) -> Complex {
        let adj = self.adjacency();
        let mut cliques = Vec::new();
        let mut r = Vec::new();
        let p: Vec<Vertex> = (0..self.n_vertices).collect();
        bron_kerbosch(&adj, &mut r, p, Vec::new(), &mut cliques);
        Complex::from_facets_unchecked(
            self.n_vertices,
            cliques
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c
                })
                .collect(),
        )
    }

    fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn bron_kerbosch(adj: &[Vec<Vertex>], r: &mut Vec<Vertex>, mut p: Vec<Vertex>, mut x: Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = p.iter().chain(x.iter()).copied().max_by_key(|&u| adj[u].iter().filter(|v| p.contains(v)).count());
    let candidates: Vec<Vertex> = match pivot {
        Some(u) => p.iter().copied().filter(|v| !adj[u].contains(v)).collect(),
        None => p.clone(),
    };
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|w| adj[v].contains(w)).collect();
        let nx = x.iter().copied().filter(|w| adj[v].contains(w)).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Tolerance set underlying a complex: `x ! y` iff `{x, y}` is linked.
pub fn tol_of(x: &Complex) -> TolSet {
    TolSet {
        n_vertices: x.n_vertices,
        edges: x.linked_parts_of_size(2).into_iter().map(|p| (p[0], p[1])).collect(),
    }
}

/// Collapses runs of equal adjacent entries.
pub fn dedup_adjacent(word: &[Vertex]) -> Vec<Vertex> {
    let mut out = word.to_vec();
    out.dedup();
    out
}

fn is_subsequence(word: &[Vertex], of: &[Vertex]) -> bool {
    let mut it = of.iter();
    word.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// A directed complex: linked words are generated by `generators` under omitting and
/// repeating entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedComplex {
    n_vertices: usize,
    generators: Vec<Vec<Vertex>>,
}

impl DirectedComplex {
    pub fn new(n_vertices: usize, words: impl IntoIterator<Item = Vec<Vertex>>) -> Result<Self> {
        let mut gens: Vec<Vec<Vertex>> = Vec::new();
        for w in words {
            if let Some(&v) = w.iter().find(|&&v| v >= n_vertices) {
                return input(format!("vertex {v} out of range 0..{n_vertices}"));
            }
            gens.push(dedup_adjacent(&w));
        }
        for v in 0..n_vertices {
            gens.push(vec![v]);
        }
        gens.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<Vec<Vertex>> = Vec::new();
        for g in gens {
            if !kept.iter().any(|k| is_subsequence(&g, k)) {
                kept.push(g);
            }
        }
        kept.sort();
        Ok(DirectedComplex {
            n_vertices,
            generators: kept,
        })
    }

    /// The ordinal `[n]`: linked words are the increasing ones.
    pub fn simplex(n: usize) -> Self {
        DirectedComplex {
            n_vertices: n + 1,
            generators: vec![(0..=n).collect()],
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn generators(&self) -> &[Vec<Vertex>] {
        &self.generators
    }

    pub fn contains(&self, word: &[Vertex]) -> Result<bool> {
        if let Some(&v) = word.iter().find(|&&v| v >= self.n_vertices) {
            return input(format!("unknown vertex {v}"));
        }
        Ok(self.is_linked(word))
    }

    pub(crate) fn is_linked(&self, word: &[Vertex]) -> bool {
        let w = dedup_adjacent(word);
        w.len() <= 1 || self.generators.iter().any(|g| is_subsequence(&w, g))
    }

    /// Linked words of length `k` whose adjacent entries differ.
    pub fn linked_words_of_length(&self, k: usize) -> BTreeSet<Vec<Vertex>> {
        let mut out = BTreeSet::new();
        for g in &self.generators {
            let idx: Vec<usize> = (0..g.len()).collect();
            for_each_subset(&idx, k, &mut |s| {
                let w: Vec<Vertex> = s.iter().map(|&i| g[i]).collect();
                if w.windows(2).all(|p| p[0] != p[1]) {
                    out.insert(w);
                }
            });
        }
        out
    }

    /// Product; `(x, y)` gets id `x * |Y| + y`. A word is linked iff both projections are.
    pub fn product(&self, other: &DirectedComplex) -> DirectedComplex {
        let m = other.n_vertices;
        let mut words = Vec::new();
        for g in &self.generators {
            for h in &other.generators {
                staircases(g.len(), h.len(), &mut |path| {
                    words.push(path.iter().map(|&(i, j)| g[i] * m + h[j]).collect::<Vec<_>>());
                });
            }
        }
        DirectedComplex::new(self.n_vertices * m, words).expect("product ids in range")
    }

    pub fn wedge(&self, other: &DirectedComplex) -> DirectedComplex {
        let shift = |v: Vertex| if v == 0 { 0 } else { self.n_vertices + v - 1 };
        let n = self.n_vertices + other.n_vertices.saturating_sub(1);
        let words = self
            .generators
            .iter()
            .cloned()
            .chain(other.generators.iter().map(|g| g.iter().map(|&v| shift(v)).collect()));
        DirectedComplex::new(n, words).expect("wedge ids in range")
    }

    pub fn disjoint_union(&self, other: &DirectedComplex) -> DirectedComplex {
        let s = self.n_vertices;
        let words = self
            .generators
            .iter()
            .cloned()
            .chain(other.generators.iter().map(|g| g.iter().map(|&v| v + s).collect()));
        DirectedComplex::new(s + other.n_vertices, words).expect("ids in range")
    }

    /// Whether `f` preserves linked words; it suffices to check generators.
    pub fn is_map_to(&self, target: &DirectedComplex, f: &[Vertex]) -> bool {
        f.len() == self.n_vertices
            && f.iter().all(|&v| v < target.n_vertices)
            && self
                .generators
                .iter()
                .all(|g| target.is_linked(&g.iter().map(|&v| f[v]).collect::<Vec<_>>()))
    }
}

/// Monotone lattice paths from `(0,0)` to `(a-1, b-1)` with unit steps right or up.
fn staircases(a: usize, b: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    fn rec(a: usize, b: usize, cur: &mut Vec<(usize, usize)>, f: &mut impl FnMut(&[(usize, usize)])) {
        let (i, j) = *cur.last().unwrap();
        if i + 1 == a && j + 1 == b {
            f(cur);
            return;
        }
        if i + 1 < a {
            cur.push((i + 1, j));
            rec(a, b, cur, f);
            cur.pop();
        }
        if j + 1 < b {
            cur.push((i, j + 1));
            rec(a, b, cur, f);
            cur.pop();
        }
    }
    let mut cur = vec![(0, 0)];
    rec(a, b, &mut cur, f);
}

/// Symmetrisation at the simple level: linked parts are supports of linked words.
pub fn sym_forget(x: &DirectedComplex) -> Complex {
    Complex {
        n_vertices: x.n_vertices,
        facets: antichain(x.n_vertices, x.generators.iter().cloned()),
    }
}

/// A reflexive precedence relation; stored pairs exclude the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSet {
    n_vertices: usize,
    steps: BTreeSet<(Vertex, Vertex)>,
}

impl StepSet {
    pub fn new(n_vertices: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut steps = BTreeSet::new();
        for (a, b) in pairs {
            if a >= n_vertices || b >= n_vertices {
                return input(format!("step ({a}, {b}) out of range"));
            }
            if a != b {
                steps.insert((a, b));
            }
        }
        Ok(StepSet { n_vertices, steps })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn steps(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.steps
    }

    pub fn precedes(&self, a: Vertex, b: Vertex) -> bool {
        a == b || self.steps.contains(&(a, b))
    }

    /// Steps underlying a directed complex: linked 2-words.
    pub fn of_directed(x: &DirectedComplex) -> StepSet {
        StepSet {
            n_vertices: x.n_vertices,
            steps: x.linked_words_of_length(2).into_iter().map(|w| (w[0], w[1])).collect(),
        }
    }
}
