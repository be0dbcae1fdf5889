//! 2-truncated symmetric and directed simplicial sets.
//!
//! Edge ids share one index space: ids `0..n_vertices` are the degenerate edges
//! (`deg(v) == v`), nondegenerate edges follow.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, DirectedComplex, Vertex};
use crate::error::{input, Error, Result};
use crate::union_find::UnionFind;

pub type EdgeId = usize;
/// `(a, b, c)` with `a: x -> y`, `b: y -> z`, `c: x -> z`.
pub type Triangle = [EdgeId; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Symmetric,
    Directed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TruncSetRepr", into = "TruncSetRepr")]
pub struct TruncSet {
    orientation: Orientation,
    n_vertices: usize,
    /// Endpoints of nondegenerate edge `n_vertices + k`.
    edges: Vec<(Vertex, Vertex)>,
    /// Reversal of nondegenerate edge `n_vertices + k` (symmetric only).
    rev: Vec<EdgeId>,
    triangles: BTreeSet<Triangle>,
}

/// Wire form: only nondegenerate edges are listed, ids in `rev` and `triangles` are global.
#[derive(Serialize, Deserialize)]
struct TruncSetRepr {
    orientation: Orientation,
    vertices: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    rev: Vec<EdgeId>,
    #[serde(default)]
    triangles: Vec<Triangle>,
}

impl TryFrom<TruncSetRepr> for TruncSet {
    type Error = Error;
    fn try_from(r: TruncSetRepr) -> Result<Self> {
        let rev = match r.orientation {
            Orientation::Symmetric => Some(r.rev),
            Orientation::Directed => None,
        };
        TruncSet::new(r.orientation, r.vertices, r.edges, rev, r.triangles)
    }
}

impl From<TruncSet> for TruncSetRepr {
    fn from(t: TruncSet) -> Self {
        TruncSetRepr {
            orientation: t.orientation,
            vertices: t.n_vertices,
            edges: t.edges,
            rev: t.rev,
            triangles: t.triangles.into_iter().collect(),
        }
    }
}

impl TruncSet {
    /// Validates and builds. For the symmetric orientation `rev` must list the reversal of every
    /// nondegenerate edge (global ids); when omitted, edges are paired with their reversal by
    /// endpoints, which requires the pairing to be unambiguous.
    pub fn new(
        orientation: Orientation,
        n_vertices: usize,
        edges: Vec<(Vertex, Vertex)>,
        rev: Option<Vec<EdgeId>>,
        triangles: impl IntoIterator<Item = Triangle>,
    ) -> Result<Self> {
        for &(s, d) in &edges {
            if s >= n_vertices || d >= n_vertices {
                return input(format!("edge ({s}, {d}) has an endpoint out of range"));
            }
        }
        let rev = match orientation {
            Orientation::Directed => Vec::new(),
            Orientation::Symmetric => match rev {
                Some(r) if !r.is_empty() || edges.is_empty() => r,
                _ => pair_by_endpoints(n_vertices, &edges)?,
            },
        };
        let mut t = TruncSet {
            orientation,
            n_vertices,
            edges,
            rev,
            triangles: BTreeSet::new(),
        };
        if orientation == Orientation::Symmetric {
            if t.rev.len() != t.edges.len() {
                return input("rev must list one reversal per nondegenerate edge");
            }
            for e in t.nondegenerate_edges() {
                let r = t.rev[e - n_vertices];
                if r < n_vertices || r >= t.num_edges() {
                    return input(format!("rev({e}) = {r} is not a nondegenerate edge"));
                }
                if t.rev[r - n_vertices] != e {
                    return input(format!("rev is not an involution at edge {e}"));
                }
                if t.src(r) != t.dst(e) || t.dst(r) != t.src(e) {
                    return input(format!("rev({e}) does not swap endpoints"));
                }
            }
        }
        for tri in triangles {
            t.check_triangle(&tri)?;
            if !t.is_implicit_triangle(&tri) {
                t.triangles.insert(tri);
            }
        }
        Ok(t)
    }

    fn check_triangle(&self, &[a, b, c]: &Triangle) -> Result<()> {
        let m = self.num_edges();
        if a >= m || b >= m || c >= m {
            return input(format!("triangle ({a}, {b}, {c}) references an unknown edge"));
        }
        if self.dst(a) != self.src(b) || self.src(a) != self.src(c) || self.dst(b) != self.dst(c) {
            return input(format!("triangle ({a}, {b}, {c}) has inconsistent faces"));
        }
        Ok(())
    }

    /// A single vertex.
    pub fn point(orientation: Orientation) -> Self {
        TruncSet {
            orientation,
            n_vertices: 1,
            edges: Vec::new(),
            rev: Vec::new(),
            triangles: BTreeSet::new(),
        }
    }

    pub fn discrete(orientation: Orientation, n: usize) -> Self {
        TruncSet {
            orientation,
            n_vertices: n,
            edges: Vec::new(),
            rev: Vec::new(),
            triangles: BTreeSet::new(),
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_symmetric(&self) -> bool {
        self.orientation == Orientation::Symmetric
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Total number of edge ids, degenerate ones included.
    pub fn num_edges(&self) -> usize {
        self.n_vertices + self.edges.len()
    }

    pub fn num_nondegenerate_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn nondegenerate_edges(&self) -> std::ops::Range<EdgeId> {
        self.n_vertices..self.num_edges()
    }

    pub fn is_degenerate(&self, e: EdgeId) -> bool {
        e < self.n_vertices
    }

    pub fn deg(&self, v: Vertex) -> EdgeId {
        v
    }

    pub fn src(&self, e: EdgeId) -> Vertex {
        if e < self.n_vertices {
            e
        } else {
            self.edges[e - self.n_vertices].0
        }
    }

    pub fn dst(&self, e: EdgeId) -> Vertex {
        if e < self.n_vertices {
            e
        } else {
            self.edges[e - self.n_vertices].1
        }
    }

    /// Reversal; the identity on degenerate edges. Panics on directed sets.
    pub fn rev(&self, e: EdgeId) -> EdgeId {
        assert!(self.is_symmetric(), "rev on a directed truncated set");
        if e < self.n_vertices {
            e
        } else {
            self.rev[e - self.n_vertices]
        }
    }

    pub fn triangles(&self) -> &BTreeSet<Triangle> {
        &self.triangles
    }

    /// Nondegenerate edges from `s` to `d`.
    pub fn edges_between(&self, s: Vertex, d: Vertex) -> impl Iterator<Item = EdgeId> + '_ {
        self.nondegenerate_edges().filter(move |&e| self.src(e) == s && self.dst(e) == d)
    }

    /// The unique edge `s -> d` (degenerate when `s == d`), if there is exactly one.
    pub fn unique_edge(&self, s: Vertex, d: Vertex) -> Option<EdgeId> {
        if s == d {
            return Some(self.deg(s));
        }
        let mut it = self.edges_between(s, d);
        let e = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some(e)
        }
    }

    /// Triangles that are images of degeneracy maps out of a 2-simplex; always present.
    pub fn is_implicit_triangle(&self, &[a, b, c]: &Triangle) -> bool {
        let d = |e| self.is_degenerate(e);
        if d(a) && b == c {
            return true;
        }
        if d(b) && a == c {
            return true;
        }
        self.is_symmetric() && d(c) && b == self.rev(a)
    }

    /// Stored triangles closed under the symmetric group action on corners (symmetric case);
    /// the stored set itself for directed sets.
    pub fn triangle_closure(&self) -> HashSet<Triangle> {
        let mut out = HashSet::new();
        for &[a, b, c] in &self.triangles {
            out.insert([a, b, c]);
            if !self.is_symmetric() {
                continue;
            }
            // e[i][j]: edge from corner i to corner j
            let mut e = [[0usize; 3]; 3];
            let corners = [self.src(a), self.dst(a), self.dst(b)];
            for (i, &v) in corners.iter().enumerate() {
                e[i][i] = self.deg(v);
            }
            e[0][1] = a;
            e[1][2] = b;
            e[0][2] = c;
            e[1][0] = self.rev(a);
            e[2][1] = self.rev(b);
            e[2][0] = self.rev(c);
            for p in PERMS3 {
                out.insert([e[p[0]][p[1]], e[p[1]][p[2]], e[p[0]][p[2]]]);
            }
        }
        out
    }

    pub fn has_triangle(&self, t: &Triangle) -> bool {
        self.is_implicit_triangle(t) || self.triangles.contains(t) || (self.is_symmetric() && self.triangle_closure().contains(t))
    }

    /// Disjoint union; vertices and nondegenerate edges of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &TruncSet) -> Result<(TruncSet, TruncMap, TruncMap)> {
        if self.orientation != other.orientation {
            return input("cannot combine symmetric and directed truncated sets");
        }
        let nv = self.n_vertices + other.n_vertices;
        let left_e = |e: EdgeId| if e < self.n_vertices { e } else { e + other.n_vertices };
        let right_e = |e: EdgeId| {
            if e < other.n_vertices {
                e + self.n_vertices
            } else {
                e + self.num_edges()
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(s, d)| (s + self.n_vertices, d + self.n_vertices)));
        let mut rev: Vec<EdgeId> = self.rev.iter().map(|&r| left_e(r)).collect();
        rev.extend(other.rev.iter().map(|&r| right_e(r)));
        let triangles: BTreeSet<Triangle> = self
            .triangles
            .iter()
            .map(|t| t.map(left_e))
            .chain(other.triangles.iter().map(|t| t.map(right_e)))
            .collect();
        let sum = TruncSet {
            orientation: self.orientation,
            n_vertices: nv,
            edges,
            rev,
            triangles,
        };
        let inl = TruncMap {
            vertices: (0..self.n_vertices).collect(),
            edges: (0..self.num_edges()).map(left_e).collect(),
        };
        let inr = TruncMap {
            vertices: (0..other.n_vertices).map(|v| v + self.n_vertices).collect(),
            edges: (0..other.num_edges()).map(right_e).collect(),
        };
        Ok((sum, inl, inr))
    }

    /// Quotient by the equivalence relations generated by the given vertex and edge pairs,
    /// closed so that identified edges have identified endpoints and reversals.
    pub fn quotient(&self, vertex_pairs: &[(Vertex, Vertex)], edge_pairs: &[(EdgeId, EdgeId)]) -> Result<(TruncSet, TruncMap)> {
        let nv = self.n_vertices;
        let ne = self.num_edges();
        let mut uv = UnionFind::new(nv);
        let mut ue = UnionFind::new(ne);
        for &(a, b) in vertex_pairs {
            if a >= nv || b >= nv {
                return input("quotient vertex pair out of range");
            }
            uv.union(a, b);
        }
        for &(a, b) in edge_pairs {
            if a >= ne || b >= ne {
                return input("quotient edge pair out of range");
            }
            ue.union(a, b);
        }
        // close: identified edges force identified endpoints, degenerate edges follow vertices,
        // and (symmetric) reversals follow edges
        loop {
            let mut changed = false;
            for e in 0..ne {
                let r = ue.find(e);
                changed |= uv.union(self.src(e), self.src(r));
                changed |= uv.union(self.dst(e), self.dst(r));
                if self.is_symmetric() {
                    let (re, rr) = (self.rev(e), self.rev(r));
                    changed |= ue.union(re, rr);
                }
            }
            for v in 0..nv {
                let r = uv.find(v);
                changed |= ue.union(self.deg(v), self.deg(r));
            }
            if !changed {
                break;
            }
        }
        let (vlabel, n_new) = uv.labels();
        // edge classes: degenerate when containing a degenerate edge
        let mut class_deg: HashMap<usize, Vertex> = HashMap::new();
        for v in 0..nv {
            class_deg.insert(ue.find(v), vlabel[v]);
        }
        let mut class_id: HashMap<usize, EdgeId> = HashMap::new();
        let mut edges = Vec::new();
        let mut emap = vec![0; ne];
        for e in 0..ne {
            let r = ue.find(e);
            emap[e] = if let Some(&v) = class_deg.get(&r) {
                v
            } else {
                *class_id.entry(r).or_insert_with(|| {
                    edges.push((vlabel[self.src(e)], vlabel[self.dst(e)]));
                    n_new + edges.len() - 1
                })
            };
        }
        let rev = if self.is_symmetric() {
            let mut rev = vec![0; edges.len()];
            for e in self.nondegenerate_edges() {
                if emap[e] >= n_new {
                    rev[emap[e] - n_new] = emap[self.rev(e)];
                }
            }
            rev
        } else {
            Vec::new()
        };
        let mut q = TruncSet {
            orientation: self.orientation,
            n_vertices: n_new,
            edges,
            rev,
            triangles: BTreeSet::new(),
        };
        for t in &self.triangles {
            let img = t.map(|e| emap[e]);
            if !q.is_implicit_triangle(&img) {
                q.triangles.insert(img);
            }
        }
        let map = TruncMap {
            vertices: vlabel,
            edges: emap,
        };
        Ok((q, map))
    }

    /// Vertex relabelling by a bijection, keeping edge ids in place.
    pub fn relabel_vertices(&self, perm: &[Vertex]) -> Result<TruncSet> {
        let n = self.n_vertices;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return input("relabelling is not a bijection");
        }
        let emap = |e: EdgeId| if e < n { perm[e] } else { e };
        TruncSet::new(
            self.orientation,
            n,
            self.edges.iter().map(|&(s, d)| (perm[s], perm[d])).collect(),
            Some(self.rev.clone()),
            self.triangles.iter().map(|t| t.map(emap)).collect::<Vec<_>>(),
        )
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn pair_by_endpoints(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Vec<EdgeId>> {
    let mut by_ends: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
    for (k, &ends) in edges.iter().enumerate() {
        by_ends.entry(ends).or_default().push(k);
    }
    let mut rev = vec![usize::MAX; edges.len()];
    for (k, &(s, d)) in edges.iter().enumerate() {
        let back = by_ends.get(&(d, s)).map(|v| v.as_slice()).unwrap_or(&[]);
        let fwd = &by_ends[&(s, d)];
        if s == d {
            // loops: pair consecutive listed loops at the same vertex
            let pos = fwd.iter().position(|&x| x == k).unwrap();
            let partner = if pos % 2 == 0 { fwd.get(pos + 1) } else { fwd.get(pos - 1) };
            match partner {
                Some(&p) => rev[k] = n + p,
                None => rev[k] = n + k,
            }
        } else {
            if back.len() != 1 || fwd.len() != 1 {
                return input(format!("cannot infer reversal of edge ({s}, {d}); give rev explicitly"));
            }
            rev[k] = n + back[0];
        }
    }
    Ok(rev)
}

/// A structure map between truncated sets: images of vertices and of all edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncMap {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl TruncMap {
    pub fn identity(x: &TruncSet) -> TruncMap {
        TruncMap {
            vertices: (0..x.n_vertices()).collect(),
            edges: (0..x.num_edges()).collect(),
        }
    }

    /// Infers edge images from a vertex map when every target edge is determined by its ends.
    pub fn from_vertex_map(src: &TruncSet, dst: &TruncSet, vertices: Vec<Vertex>) -> Result<TruncMap> {
        if vertices.len() != src.n_vertices() {
            return input("vertex map has the wrong length");
        }
        let mut edges = Vec::with_capacity(src.num_edges());
        for e in 0..src.num_edges() {
            let (s, d) = (vertices[src.src(e)], vertices[src.dst(e)]);
            match dst.unique_edge(s, d) {
                Some(img) => edges.push(img),
                None => return input(format!("edge {e} has no unique image {s} -> {d}")),
            }
        }
        let m = TruncMap { vertices, edges };
        m.validate(src, dst)?;
        Ok(m)
    }

    /// Builds a map from the vertex map and the images of nondegenerate edges only.
    pub fn from_parts(src: &TruncSet, vertices: Vec<Vertex>, nondegenerate: Vec<EdgeId>) -> Result<TruncMap> {
        if vertices.len() != src.n_vertices() || nondegenerate.len() != src.num_nondegenerate_edges() {
            return input("map arrays have the wrong length");
        }
        let mut edges: Vec<EdgeId> = vertices.clone();
        edges.extend(nondegenerate);
        Ok(TruncMap { vertices, edges })
    }

    pub fn validate(&self, src: &TruncSet, dst: &TruncSet) -> Result<()> {
        if src.orientation() != dst.orientation() {
            return input("maps must preserve orientation");
        }
        if self.vertices.len() != src.n_vertices() || self.edges.len() != src.num_edges() {
            return input("map arrays have the wrong length");
        }
        if self.vertices.iter().any(|&v| v >= dst.n_vertices()) || self.edges.iter().any(|&e| e >= dst.num_edges()) {
            return input("map image out of range");
        }
        for v in 0..src.n_vertices() {
            if self.edges[src.deg(v)] != dst.deg(self.vertices[v]) {
                return input(format!("degenerate edge at vertex {v} not sent to a degenerate edge"));
            }
        }
        for e in src.nondegenerate_edges() {
            let img = self.edges[e];
            if dst.src(img) != self.vertices[src.src(e)] || dst.dst(img) != self.vertices[src.dst(e)] {
                return input(format!("edge {e} image does not commute with faces"));
            }
            if src.is_symmetric() && self.edges[src.rev(e)] != dst.rev(img) {
                return input(format!("edge {e} image does not commute with reversal"));
            }
        }
        let closure = dst.triangle_closure();
        for t in src.triangles() {
            let img = t.map(|e| self.edges[e]);
            if !(dst.is_implicit_triangle(&img) || closure.contains(&img)) {
                return input(format!("triangle {t:?} is not sent to a triangle"));
            }
        }
        Ok(())
    }

    pub fn compose(&self, then: &TruncMap) -> TruncMap {
        TruncMap {
            vertices: self.vertices.iter().map(|&v| then.vertices[v]).collect(),
            edges: self.edges.iter().map(|&e| then.edges[e]).collect(),
        }
    }
}

/// Componentwise pushout of `f: A -> X` and `g: A -> Y`, with the two injections.
pub fn pushout(a: &TruncSet, x: &TruncSet, f: &TruncMap, y: &TruncSet, g: &TruncMap) -> Result<(TruncSet, TruncMap, TruncMap)> {
    f.validate(a, x)?;
    g.validate(a, y)?;
    let (sum, inl, inr) = x.disjoint_union(y)?;
    let vpairs: Vec<_> = (0..a.n_vertices())
        .map(|v| (inl.vertices[f.vertices[v]], inr.vertices[g.vertices[v]]))
        .collect();
    let epairs: Vec<_> = (0..a.num_edges())
        .map(|e| (inl.edges[f.edges[e]], inr.edges[g.edges[e]]))
        .collect();
    let (p, q) = sum.quotient(&vpairs, &epairs)?;
    Ok((p, inl.compose(&q), inr.compose(&q)))
}

/// Componentwise coequaliser of `f, g: X -> Y`, with the quotient map.
pub fn coequalizer(x: &TruncSet, y: &TruncSet, f: &TruncMap, g: &TruncMap) -> Result<(TruncSet, TruncMap)> {
    f.validate(x, y)?;
    g.validate(x, y)?;
    let vpairs: Vec<_> = (0..x.n_vertices()).map(|v| (f.vertices[v], g.vertices[v])).collect();
    let epairs: Vec<_> = (0..x.num_edges()).map(|e| (f.edges[e], g.edges[e])).collect();
    y.quotient(&vpairs, &epairs)
}

/// The simplicial set of a complex, truncated at dimension 2.
pub fn two_skeleton(x: &Complex) -> TruncSet {
    let n = x.n_vertices();
    let pairs = x.linked_parts_of_size(2);
    let mut edges = Vec::with_capacity(2 * pairs.len());
    let mut id: HashMap<(Vertex, Vertex), EdgeId> = HashMap::new();
    let mut ordered: Vec<(Vertex, Vertex)> = pairs.iter().flat_map(|p| [(p[0], p[1]), (p[1], p[0])]).collect();
    ordered.sort_unstable();
    for &(s, d) in &ordered {
        id.insert((s, d), n + edges.len());
        edges.push((s, d));
    }
    let rev = edges.iter().map(|&(s, d)| id[&(d, s)]).collect();
    let triangles = x
        .linked_parts_of_size(3)
        .into_iter()
        .map(|t| [id[&(t[0], t[1])], id[&(t[1], t[2])], id[&(t[0], t[2])]])
        .collect();
    TruncSet {
        orientation: Orientation::Symmetric,
        n_vertices: n,
        edges,
        rev,
        triangles,
    }
}

/// The simple simplicial set of a directed complex, truncated at dimension 2. Triangles are
/// the linked 3-words that are not degeneracies of an edge.
pub fn dir_two_skeleton(x: &DirectedComplex) -> TruncSet {
    let n = x.n_vertices();
    let mut pairs: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut words3: BTreeSet<[Vertex; 3]> = BTreeSet::new();
    for g in x.generators() {
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i] != g[j] {
                    pairs.insert((g[i], g[j]));
                }
                for k in j + 1..g.len() {
                    let w = [g[i], g[j], g[k]];
                    if w[0] != w[1] && w[1] != w[2] {
                        words3.insert(w);
                    }
                }
            }
        }
    }
    let mut id: HashMap<(Vertex, Vertex), EdgeId> = HashMap::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for &(s, d) in &pairs {
        id.insert((s, d), n + edges.len());
        edges.push((s, d));
    }
    let e = |s: Vertex, d: Vertex| if s == d { s } else { id[&(s, d)] };
    let triangles = words3.into_iter().map(|[p, q, r]| [e(p, q), e(q, r), e(p, r)]).collect();
    TruncSet {
        orientation: Orientation::Directed,
        n_vertices: n,
        edges,
        rev: Vec::new(),
        triangles,
    }
}

/// The reflector onto simple objects: linked parts are the vertex sets of present simplices.
pub fn reflect_u(x: &TruncSet) -> Complex {
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    for e in x.nondegenerate_edges() {
        parts.push(vec![x.src(e), x.dst(e)]);
    }
    for &[a, b, _] in x.triangles() {
        parts.push(vec![x.src(a), x.dst(a), x.dst(b)]);
    }
    Complex::from_parts(x.n_vertices(), parts).expect("vertices in range")
}

/// Directed reflector: linked words are the vertex words of present simplices.
pub fn reflect_u_directed(x: &TruncSet) -> DirectedComplex {
    let mut words: Vec<Vec<Vertex>> = Vec::new();
    for e in x.nondegenerate_edges() {
        words.push(vec![x.src(e), x.dst(e)]);
    }
    for &[a, b, _] in x.triangles() {
        words.push(vec![x.src(a), x.dst(a), x.dst(b)]);
    }
    DirectedComplex::new(x.n_vertices(), words).expect("vertices in range")
}

/// Searches for an isomorphism `x -> y`. Exponential; meant for small objects.
pub fn find_isomorphism(x: &TruncSet, y: &TruncSet) -> Option<TruncMap> {
    if x.orientation() != y.orientation()
        || x.n_vertices() != y.n_vertices()
        || x.num_edges() != y.num_edges()
        || x.triangles().len() != y.triangles().len()
    {
        return None;
    }
    let n = x.n_vertices();
    let mut vmap = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_vertices(x, y, 0, &mut vmap, &mut used)
}

fn search_vertices(x: &TruncSet, y: &TruncSet, v: usize, vmap: &mut Vec<Vertex>, used: &mut Vec<bool>) -> Option<TruncMap> {
    if v == x.n_vertices() {
        let mut emap: Vec<EdgeId> = vmap.clone();
        emap.resize(x.num_edges(), usize::MAX);
        let mut eused = vec![false; y.num_edges()];
        return search_edges(x, y, x.n_vertices(), vmap, &mut emap, &mut eused);
    }
    for w in 0..y.n_vertices() {
        if used[w] {
            continue;
        }
        vmap[v] = w;
        used[w] = true;
        if let Some(m) = search_vertices(x, y, v + 1, vmap, used) {
            return Some(m);
        }
        used[w] = false;
    }
    vmap[v] = usize::MAX;
    None
}

fn search_edges(x: &TruncSet, y: &TruncSet, e: EdgeId, vmap: &[Vertex], emap: &mut Vec<EdgeId>, eused: &mut Vec<bool>) -> Option<TruncMap> {
    if e == x.num_edges() {
        let m = TruncMap {
            vertices: vmap.to_vec(),
            edges: emap.clone(),
        };
        m.validate(x, y).ok()?;
        let img: HashSet<Triangle> = x.triangle_closure().iter().map(|t| t.map(|k| m.edges[k])).collect();
        return (img == y.triangle_closure()).then_some(m);
    }
    let (s, d) = (vmap[x.src(e)], vmap[x.dst(e)]);
    let cands: Vec<EdgeId> = y.edges_between(s, d).filter(|&c| !eused[c]).collect();
    for c in cands {
        if x.is_symmetric() && x.rev(e) < e && emap[x.rev(e)] != y.rev(c) {
            continue;
        }
        emap[e] = c;
        eused[c] = true;
        if let Some(m) = search_edges(x, y, e + 1, vmap, emap, eused) {
            return Some(m);
        }
        eused[c] = false;
        emap[e] = usize::MAX;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_complex(k: usize) -> Complex {
        Complex::from_parts(k, (0..k).map(|i| vec![i, (i + 1) % k])).unwrap()
    }

    fn line(i: usize, j: usize) -> Complex {
        Complex::from_parts(j - i + 1, (0..j - i).map(|t| vec![t, t + 1])).unwrap()
    }

    #[test]
    fn skeleton_of_codiscrete() {
        let t = two_skeleton(&Complex::codiscrete(2));
        assert_eq!(t.n_vertices(), 3);
        assert_eq!(t.num_nondegenerate_edges(), 6);
        assert_eq!(t.triangles().len(), 1);
        let corners: BTreeSet<Vertex> = t
            .triangles()
            .iter()
            .flat_map(|&[a, b, _]| [t.src(a), t.dst(a), t.dst(b)])
            .collect();
        assert_eq!(corners.len(), 3);
    }

    #[test]
    fn skeleton_of_circle_and_line() {
        let t = two_skeleton(&circle_complex(5));
        assert_eq!((t.n_vertices(), t.num_nondegenerate_edges(), t.triangles().len()), (5, 10, 0));
        let l = two_skeleton(&line(0, 2));
        let ends: Vec<_> = l.nondegenerate_edges().map(|e| (l.src(e), l.dst(e))).collect();
        assert_eq!(ends, vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert!(l.triangles().is_empty());
    }

    #[test]
    fn directed_skeletons() {
        let s = dir_two_skeleton(&DirectedComplex::simplex(2));
        let ends: Vec<_> = s.nondegenerate_edges().map(|e| (s.src(e), s.dst(e))).collect();
        assert_eq!(ends, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(s.triangles().iter().copied().collect::<Vec<_>>(), vec![[3, 5, 4]]);
        let c = DirectedComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let t = dir_two_skeleton(&c);
        assert_eq!(t.num_nondegenerate_edges(), 3);
        assert!(t.triangles().is_empty());
    }

    #[test]
    fn reflector_retracts_skeleton() {
        for x in [Complex::codiscrete(2), circle_complex(4), line(0, 3), Complex::discrete(2)] {
            assert_eq!(reflect_u(&two_skeleton(&x)), x);
        }
    }

    #[test]
    fn reflector_on_non_simple_circles() {
        let c2 = TruncSet::new(Orientation::Symmetric, 2, vec![(0, 1), (1, 0), (0, 1), (1, 0)], Some(vec![3, 2, 5, 4]), vec![]).unwrap();
        assert_eq!(reflect_u(&c2).facets(), &[vec![0, 1]]);
        let c1 = TruncSet::new(Orientation::Symmetric, 1, vec![(0, 0), (0, 0)], Some(vec![2, 1]), vec![]).unwrap();
        assert_eq!(reflect_u(&c1).facets(), &[vec![0]]);
    }

    #[test]
    fn invalid_structure_rejected() {
        assert!(TruncSet::new(Orientation::Symmetric, 2, vec![(0, 1), (0, 1)], Some(vec![3, 2]), vec![]).is_err());
        assert!(TruncSet::new(Orientation::Directed, 2, vec![(0, 1)], None, vec![[2, 2, 2]]).is_err());
    }

    fn point_into(x: &TruncSet, v: Vertex) -> TruncMap {
        TruncMap {
            vertices: vec![v],
            edges: vec![x.deg(v)],
        }
    }

    #[test]
    fn interval_pasting_gives_two_point_circle() {
        let i = two_skeleton(&Complex::codiscrete(1));
        let a = TruncSet::discrete(Orientation::Symmetric, 2);
        let f = TruncMap::from_vertex_map(&a, &i, vec![0, 1]).unwrap();
        let (p, _, _) = pushout(&a, &i, &f, &i, &f).unwrap();
        assert_eq!(p.n_vertices(), 2);
        assert_eq!(p.num_nondegenerate_edges(), 4);
        assert!(p.triangles().is_empty());
    }

    #[test]
    fn coequalizer_of_faces_is_one_point_circle() {
        let i = two_skeleton(&Complex::codiscrete(1));
        let pt = TruncSet::point(Orientation::Symmetric);
        let (c, q) = coequalizer(&pt, &i, &point_into(&i, 0), &point_into(&i, 1)).unwrap();
        assert_eq!(c.n_vertices(), 1);
        assert_eq!(c.num_nondegenerate_edges(), 2);
        let e = c.n_vertices();
        assert_eq!(c.rev(e), e + 1);
        assert_eq!(q.vertices, vec![0, 0]);
        let (same, _) = coequalizer(&pt, &i, &point_into(&i, 0), &point_into(&i, 0)).unwrap();
        assert_eq!(same, i);
    }

    #[test]
    fn pushout_along_identity() {
        let x = two_skeleton(&Complex::codiscrete(2));
        let y = two_skeleton(&circle_complex(4));
        let a = TruncSet::point(Orientation::Symmetric);
        let id = TruncMap::identity(&a);
        let (p, _, inr) = pushout(&a, &a, &id, &y, &point_into(&y, 0)).unwrap();
        assert!(find_isomorphism(&p, &y).is_some());
        assert_eq!(inr.vertices, (0..4).collect::<Vec<_>>());
        let (w, _, _) = pushout(&a, &x, &point_into(&x, 0), &y, &point_into(&y, 0)).unwrap();
        assert_eq!(w.n_vertices(), 6);
    }

    #[test]
    fn isomorphism_detects_rev_structure() {
        let c2a = TruncSet::new(Orientation::Symmetric, 2, vec![(0, 1), (1, 0), (0, 1), (1, 0)], Some(vec![3, 2, 5, 4]), vec![]).unwrap();
        let c2b = TruncSet::new(Orientation::Symmetric, 2, vec![(0, 1), (0, 1), (1, 0), (1, 0)], Some(vec![4, 5, 2, 3]), vec![]).unwrap();
        assert!(find_isomorphism(&c2a, &c2b).is_some());
        assert!(find_isomorphism(&c2a, &two_skeleton(&Complex::codiscrete(1))).is_none());
    }
}
