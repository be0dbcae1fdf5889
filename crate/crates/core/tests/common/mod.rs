//! Independent oracles shared by the integration tests. Nothing here calls the presentation
//! or elimination code of the library; only the raw cells of a truncated set are read.

#![allow(dead_code)]

use std::collections::BTreeMap;

use combhom::TruncSet;
use num_rational::Ratio;
use num_traits::Zero;

type Q = Ratio<i64>;

/// Row-echelon basis over the rationals, grown one vector at a time.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl Echelon {
    /// Adds a sparse vector to the span; true when it was independent.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) -> bool {
        let mut v: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, x) in entries {
            *v.entry(c).or_insert_with(Q::zero) += Q::from_integer(x);
        }
        v.retain(|_, x| !x.is_zero());
        while let Some((&c, &a)) = v.iter().next() {
            match self.rows.get(&c) {
                Some(row) => {
                    for (&k, &b) in row {
                        let e = v.entry(k).or_insert_with(Q::zero);
                        *e -= a * b;
                        if e.is_zero() {
                            v.remove(&k);
                        }
                    }
                }
                None => {
                    for x in v.values_mut() {
                        *x /= a;
                    }
                    self.rows.insert(c, v);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// First Betti number over the rationals of a symmetric truncated set: one 1-cell per pair
/// `{e, rev e}` of nondegenerate edges, triangle `[a, b, c]` bounding `a + b - c`. A
/// self-inverse loop satisfies `e = -e` and so vanishes rationally.
pub fn betti1(t: &TruncSet) -> usize {
    assert!(t.is_symmetric());
    let mut cell: Vec<Option<(usize, i64)>> = vec![None; t.num_edges()];
    let mut cells = 0;
    let mut d1 = Echelon::default();
    for e in t.nondegenerate_edges() {
        if cell[e].is_none() && t.rev(e) != e {
            cell[e] = Some((cells, 1));
            cell[t.rev(e)] = Some((cells, -1));
            cells += 1;
            d1.insert([(t.dst(e), 1), (t.src(e), -1)]);
        }
    }
    let mut d2 = Echelon::default();
    for &[a, b, c] in t.triangles() {
        let v = [(a, 1), (b, 1), (c, -1)]
            .into_iter()
            .filter_map(|(e, s)| cell[e].map(|(k, sign)| (k, s * sign)));
        d2.insert(v);
    }
    cells - d1.rank() - d2.rank()
}

/// Rips 2-skeleton of integer points at `eps` in the maximum metric, as edge and triangle
/// lists; built by direct enumeration.
pub fn rips_cells(points: &[(i64, i64)], eps: i64) -> (Vec<(usize, usize)>, Vec<(usize, usize, usize)>) {
    let near = |i: usize, j: usize| {
        let (a, b) = (points[i], points[j]);
        (a.0 - b.0).abs().max((a.1 - b.1).abs()) <= eps
    };
    let n = points.len();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if near(i, j) {
                edges.push((i, j));
                for k in j + 1..n {
                    if near(i, k) && near(j, k) {
                        triangles.push((i, j, k));
                    }
                }
            }
        }
    }
    (edges, triangles)
}

/// First Betti number of a simplicial 2-complex given by its cells.
pub fn betti1_cells(edges: &[(usize, usize)], triangles: &[(usize, usize, usize)]) -> usize {
    let index: std::collections::HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut d1 = Echelon::default();
    for &(i, j) in edges {
        d1.insert([(j, 1), (i, -1)]);
    }
    let mut d2 = Echelon::default();
    for &(i, j, k) in triangles {
        d2.insert([(index[&(j, k)], 1), (index[&(i, k)], -1), (index[&(i, j)], 1)]);
        if edges.len() - d1.rank() == d2.rank() {
            break;
        }
    }
    edges.len() - d1.rank() - d2.rank()
}
