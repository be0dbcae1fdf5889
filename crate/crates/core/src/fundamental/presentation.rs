//! Edge-path presentations of the fundamental groupoid and category, and path components.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, DirectedComplex, Vertex};
use crate::error::{input, Error, Result};
use crate::fundamental::words::{cyclic_reduce, free_reduce, inverse, Letter, Word};
use crate::trunc::{EdgeId, TruncSet};
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub src: Vertex,
    pub dst: Vertex,
    /// The edge this generator stands for.
    pub edge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidPresentation {
    pub objects: usize,
    pub generators: Vec<Arrow>,
    pub relations: Vec<(Word, Word)>,
    /// Image of every edge id: `None` for degenerate edges.
    pub edge_letter: Vec<Option<Letter>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryPresentation {
    pub objects: usize,
    pub generators: Vec<Arrow>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
    pub edge_gen: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<GroupPresentation> {
        if let Some(l) = relators.iter().flatten().find(|l| l.gen >= generators) {
            return input(format!("relator letter {l} out of range"));
        }
        Ok(GroupPresentation { generators, relators })
    }

    /// Exponent sums of each relator as `(generator, sum)` pairs with nonzero sum.
    pub fn sparse_relation_matrix(&self) -> Vec<Vec<(usize, i64)>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row: std::collections::BTreeMap<usize, i64> = Default::default();
                for l in r {
                    *row.entry(l.gen).or_insert(0) += if l.inverse { -1 } else { 1 };
                }
                row.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }

    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| crate::fundamental::words::exponent_sums(r, self.generators))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators == 0 && self.relators.iter().all(Vec::is_empty)
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }
}

/// Path components as a labelling by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub labels: Vec<usize>,
    pub count: usize,
}

impl Components {
    fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Components {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        let (labels, count) = uf.labels();
        Components { labels, count }
    }

    /// Members of each component, in label order.
    pub fn parts(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }
}

pub fn pi0_trunc(x: &TruncSet) -> Components {
    Components::from_pairs(x.n_vertices(), x.nondegenerate_edges().map(|e| (x.src(e), x.dst(e))))
}

pub fn pi0_complex(x: &Complex) -> Components {
    Components::from_pairs(
        x.n_vertices(),
        x.facets().iter().flat_map(|f| f.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()),
    )
}

/// Directed spaces use the equivalence relation generated by their steps.
pub fn pi0_directed(x: &DirectedComplex) -> Components {
    Components::from_pairs(
        x.n_vertices(),
        x.generators().iter().flat_map(|g| g.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()),
    )
}

/// One generator per reversal pair, oriented by the smaller `(src, dst, id)`; one relation
/// `a b = c` per stored triangle.
pub fn edge_path_groupoid(x: &TruncSet) -> Result<GroupoidPresentation> {
    if !x.is_symmetric() {
        return Err(Error::Unsupported("the edge-path groupoid needs a symmetric set".into()));
    }
    let mut edge_letter: Vec<Option<Letter>> = vec![None; x.num_edges()];
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    for e in x.nondegenerate_edges() {
        if edge_letter[e].is_some() {
            continue;
        }
        let r = x.rev(e);
        let key = |f: EdgeId| (x.src(f), x.dst(f), f);
        let chosen = if key(r) < key(e) { r } else { e };
        let g = generators.len();
        generators.push(Arrow {
            src: x.src(chosen),
            dst: x.dst(chosen),
            edge: chosen,
        });
        edge_letter[chosen] = Some(Letter::new(g));
        if r == e {
            relations.push((vec![Letter::new(g), Letter::new(g)], vec![]));
        } else {
            edge_letter[x.rev(chosen)] = Some(Letter::new(g).inv());
        }
    }
    for &[a, b, c] in x.triangles() {
        let lhs: Word = [a, b].iter().filter_map(|&e| edge_letter[e]).collect();
        let rhs: Word = edge_letter[c].into_iter().collect();
        relations.push((lhs, rhs));
    }
    Ok(GroupoidPresentation {
        objects: x.n_vertices(),
        generators,
        relations,
        edge_letter,
    })
}

/// Generators are the nondegenerate edges; one relation `a b = c` per triangle.
pub fn fundamental_category(x: &TruncSet) -> Result<CategoryPresentation> {
    if x.is_symmetric() {
        return Err(Error::Unsupported("the fundamental category needs a directed set".into()));
    }
    let n = x.n_vertices();
    let edge_gen: Vec<Option<usize>> = (0..x.num_edges()).map(|e| (!x.is_degenerate(e)).then(|| e - n)).collect();
    let generators = x
        .nondegenerate_edges()
        .map(|e| Arrow {
            src: x.src(e),
            dst: x.dst(e),
            edge: e,
        })
        .collect();
    let relations = x
        .triangles()
        .iter()
        .map(|&[a, b, c]| {
            let lhs = [a, b].iter().filter_map(|&e| edge_gen[e]).collect();
            let rhs = edge_gen[c].into_iter().collect();
            (lhs, rhs)
        })
        .collect();
    Ok(CategoryPresentation {
        objects: n,
        generators,
        relations,
        edge_gen,
    })
}

impl GroupoidPresentation {
    pub fn path_word(&self, edges: &[EdgeId]) -> Word {
        edges.iter().filter_map(|&e| self.edge_letter[e]).collect()
    }

    fn endpoints(&self, l: Letter) -> (Vertex, Vertex) {
        let a = self.generators[l.gen];
        if l.inverse {
            (a.dst, a.src)
        } else {
            (a.src, a.dst)
        }
    }

    /// Checks that relation words compose and share endpoints.
    pub fn validate(&self) -> Result<()> {
        for (i, (l, r)) in self.relations.iter().enumerate() {
            let ends = |w: &Word| -> Result<Option<(Vertex, Vertex)>> {
                let mut cur: Option<(Vertex, Vertex)> = None;
                for &x in w {
                    let (s, d) = self.endpoints(x);
                    if let Some((a, b)) = cur {
                        if b != s {
                            return input(format!("relation {i} is not composable"));
                        }
                        cur = Some((a, d));
                    } else {
                        cur = Some((s, d));
                    }
                }
                Ok(cur)
            };
            match (ends(l)?, ends(r)?) {
                (Some((a, b)), Some((c, d))) if (a, b) != (c, d) => return input(format!("relation {i} is not parallel")),
                (Some((a, b)), None) | (None, Some((a, b))) if a != b => {
                    return input(format!("relation {i} equates a non-loop with an identity"))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// The group of loops at `base`, obtained by contracting a spanning tree of its component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexGroup {
    pub base: Vertex,
    pub component: Vec<Vertex>,
    pub presentation: GroupPresentation,
    /// Image of each groupoid generator: `None` on the tree.
    pub gen_image: Vec<Option<Letter>>,
    /// For each object of the component, a word of groupoid generators from `base` to it
    /// along the tree.
    pub tree_path: Vec<Option<Word>>,
}

impl VertexGroup {
    /// The group element `tree(x) w tree(y)^-1` of a groupoid word `w: x -> y`.
    pub fn element(&self, w: &[Letter]) -> Word {
        free_reduce(
            &w.iter()
                .filter_map(|l| {
                    self.gen_image[l.gen].map(|m| if l.inverse { m.inv() } else { m })
                })
                .collect::<Vec<_>>(),
        )
    }
}

pub fn vertex_group(p: &GroupoidPresentation, base: Vertex) -> Result<VertexGroup> {
    if base >= p.objects {
        return input(format!("base {base} is not an object"));
    }
    let mut adj: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); p.objects];
    for (g, a) in p.generators.iter().enumerate() {
        adj[a.src].push((a.dst, Letter::new(g)));
        adj[a.dst].push((a.src, Letter::new(g).inv()));
    }
    let mut tree_path: Vec<Option<Word>> = vec![None; p.objects];
    let mut tree_gen = vec![false; p.generators.len()];
    tree_path[base] = Some(vec![]);
    let mut queue = VecDeque::from([base]);
    let mut component = vec![base];
    while let Some(v) = queue.pop_front() {
        for &(w, l) in &adj[v] {
            if tree_path[w].is_none() {
                let mut path = tree_path[v].clone().unwrap();
                path.push(l);
                tree_path[w] = Some(path);
                tree_gen[l.gen] = true;
                component.push(w);
                queue.push_back(w);
            }
        }
    }
    component.sort_unstable();
    let mut gen_image = vec![None; p.generators.len()];
    let mut count = 0;
    for (g, a) in p.generators.iter().enumerate() {
        if tree_path[a.src].is_some() && !tree_gen[g] {
            gen_image[g] = Some(Letter::new(count));
            count += 1;
        }
    }
    let vg = VertexGroup {
        base,
        component,
        presentation: GroupPresentation {
            generators: count,
            relators: vec![],
        },
        gen_image,
        tree_path,
    };
    let mut relators = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (l, r) in &p.relations {
        let first = l.first().or(r.first());
        let in_component = first.is_some_and(|x| vg.tree_path[p.generators[x.gen].src].is_some());
        if !in_component {
            continue;
        }
        let mut rel = vg.element(l);
        rel.extend(inverse(&vg.element(r)));
        let rel = cyclic_reduce(&rel);
        if !rel.is_empty() && seen.insert(rel.clone()) {
            relators.push(rel);
        }
    }
    Ok(VertexGroup {
        presentation: GroupPresentation {
            generators: count,
            relators,
        },
        ..vg
    })
}
