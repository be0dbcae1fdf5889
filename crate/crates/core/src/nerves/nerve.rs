//! Simplices of the nerves and their 2-truncations.

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::nerves::category::{FiniteCategory, FiniteGroupoid};
use crate::trunc::{EdgeId, Orientation, TruncSet};

/// `n`-simplices as arrow matrices. In the symmetric nerve each simplex is a full
/// `(n+1) x (n+1)` matrix; in the nerve of a category row `i` holds `a_ii ..= a_in`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveSimplexList {
    pub dimension: usize,
    pub triangular: bool,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl NerveSimplexList {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `a_ij` of simplex `s`; for triangular lists only `i <= j` is stored.
    pub fn entry(&self, s: usize, i: usize, j: usize) -> usize {
        if self.triangular {
            self.simplices[s][i][j - i]
        } else {
            self.simplices[s][i][j]
        }
    }

    /// Identity diagonal and `a_ij + a_jk = a_ik` wherever the entries are stored.
    pub fn check_cocycles(&self, c: &FiniteCategory) -> bool {
        let n = self.dimension;
        (0..self.len()).all(|s| {
            let ok_diag = (0..=n).all(|i| c.is_identity(self.entry(s, i, i)));
            let range = |i: usize| if self.triangular { i..=n } else { 0..=n };
            ok_diag
                && (0..=n).all(|i| {
                    range(i).all(|j| {
                        range(j).all(|k| c.then(self.entry(s, i, j), self.entry(s, j, k)) == Some(self.entry(s, i, k)))
                    })
                })
        })
    }
}

/// `(M G)_n`: every full cocycle matrix, each determined by its first row.
pub fn symmetric_nerve(g: &FiniteGroupoid, n: usize) -> NerveSimplexList {
    let c = g.category();
    let mut simplices = Vec::new();
    for x in 0..c.objects() {
        let out: Vec<usize> = c.out_of(x).collect();
        let mut row = vec![c.identity(x)];
        first_rows(&out, n, &mut row, &mut |row| {
            let m = (0..=n)
                .map(|i| (0..=n).map(|j| c.then(g.inverse(row[i]), row[j]).unwrap()).collect())
                .collect();
            simplices.push(m);
        });
    }
    NerveSimplexList {
        dimension: n,
        triangular: false,
        simplices,
    }
}

fn first_rows(out: &[usize], n: usize, row: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if row.len() == n + 1 {
        f(row);
        return;
    }
    for &a in out {
        row.push(a);
        first_rows(out, n, row, f);
        row.pop();
    }
}

/// `(N C)_n`: composable chains of `n` arrows, stored as upper-triangular matrices.
pub fn nerve(c: &FiniteCategory, n: usize) -> NerveSimplexList {
    let mut simplices = Vec::new();
    let mut chain = Vec::new();
    for x in 0..c.objects() {
        chains(c, x, n, &mut chain, &mut |chain| {
            let m = (0..=n)
                .map(|i| {
                    let mut row = vec![c.identity(if i == 0 { x } else { c.dst(chain[i - 1]) })];
                    for &a in &chain[i..] {
                        let last = *row.last().unwrap();
                        row.push(c.then(last, a).unwrap());
                    }
                    row
                })
                .collect();
            simplices.push(m);
        });
    }
    NerveSimplexList {
        dimension: n,
        triangular: true,
        simplices,
    }
}

fn chains(c: &FiniteCategory, at: Vertex, n: usize, chain: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chain.len() == n {
        f(chain);
        return;
    }
    for a in c.out_of(at) {
        chain.push(a);
        chains(c, c.dst(a), n, chain, f);
        chain.pop();
    }
}

/// 2-truncated nerve: identities are the degenerate edges, other arrows are edges numbered in
/// table order, and each composable pair `(a, b)` spans the triangle `(a, b, a then b)`.
/// Also returns the edge of every arrow.
fn truncate(c: &FiniteCategory, orientation: Orientation, inverse: Option<&[usize]>) -> (TruncSet, Vec<EdgeId>) {
    let n = c.objects();
    let mut edge_of = vec![0; c.num_arrows()];
    let mut edges = Vec::new();
    for a in 0..c.num_arrows() {
        if c.is_identity(a) {
            edge_of[a] = c.src(a);
        } else {
            edge_of[a] = n + edges.len();
            edges.push((c.src(a), c.dst(a)));
        }
    }
    let rev = inverse.map(|inv| {
        (0..c.num_arrows())
            .filter(|&a| !c.is_identity(a))
            .map(|a| edge_of[inv[a]])
            .collect()
    });
    let mut triangles = Vec::new();
    for a in (0..c.num_arrows()).filter(|&a| !c.is_identity(a)) {
        for b in c.out_of(c.dst(a)).filter(|&b| !c.is_identity(b)) {
            triangles.push([edge_of[a], edge_of[b], edge_of[c.then(a, b).unwrap()]]);
        }
    }
    let t = TruncSet::new(orientation, n, edges, rev, triangles).expect("nerve data is consistent");
    (t, edge_of)
}

pub fn nerve_trunc2(c: &FiniteCategory) -> (TruncSet, Vec<EdgeId>) {
    truncate(c, Orientation::Directed, None)
}

pub fn symmetric_nerve_trunc2(g: &FiniteGroupoid) -> (TruncSet, Vec<EdgeId>) {
    let inv: Vec<usize> = (0..g.category().num_arrows()).map(|a| g.inverse(a)).collect();
    truncate(g.category(), Orientation::Symmetric, Some(&inv))
}
