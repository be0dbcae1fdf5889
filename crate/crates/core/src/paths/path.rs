use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::error::{input, Error, Result};
use crate::paths::delay::Delay;
use crate::trunc::{EdgeId, TruncMap, TruncSet};

/// Finite interval `[lo, hi]`; supports add pointwise and negate by `[-hi, -lo]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Support {
    pub lo: i64,
    pub hi: i64,
}

impl Support {
    pub const ZERO: Support = Support { lo: 0, hi: 0 };

    pub fn new(lo: i64, hi: i64) -> Option<Support> {
        (lo <= hi).then_some(Support { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }
}

impl std::ops::Add for Support {
    type Output = Support;
    fn add(self, o: Support) -> Support {
        Support {
            lo: self.lo + o.lo,
            hi: self.hi + o.hi,
        }
    }
}

impl std::ops::Neg for Support {
    type Output = Support;
    fn neg(self) -> Support {
        Support {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A path carrying the window `[base, base + edges.len()]`; outside it the path is constant.
/// Edge `t` runs from time `base + t` to `base + t + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub base: i64,
    pub start: Vertex,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn constant(v: Vertex) -> Path {
        Path {
            base: 0,
            start: v,
            edges: vec![],
        }
    }

    /// Checks consecutivity in `x`.
    pub fn new(x: &TruncSet, base: i64, start: Vertex, edges: Vec<EdgeId>) -> Result<Path> {
        if start >= x.n_vertices() {
            return input(format!("unknown vertex {start}"));
        }
        let mut at = start;
        for (t, &e) in edges.iter().enumerate() {
            if e >= x.num_edges() {
                return input(format!("unknown edge {e}"));
            }
            if x.src(e) != at {
                return input(format!("edge {e} at step {t} does not start at vertex {at}"));
            }
            at = x.dst(e);
        }
        Ok(Path { base, start, edges })
    }

    /// The path through the given vertices, which must be joined by unique edges (as in
    /// skeletons of simple spaces).
    pub fn from_vertices(x: &TruncSet, base: i64, vertices: &[Vertex]) -> Result<Path> {
        let &start = vertices.first().ok_or_else(|| Error::Input("empty vertex sequence".into()))?;
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let e = if w[0] == w[1] {
                x.deg(w[0])
            } else {
                x.unique_edge(w[0], w[1])
                    .ok_or_else(|| Error::Input(format!("no unique edge {} -> {}", w[0], w[1])))?
            };
            edges.push(e);
        }
        Path::new(x, base, start, edges)
    }

    pub fn window(&self) -> Support {
        Support {
            lo: self.base,
            hi: self.base + self.edges.len() as i64,
        }
    }

    pub fn end(&self, x: &TruncSet) -> Vertex {
        self.edges.last().map_or(self.start, |&e| x.dst(e))
    }

    pub fn vertices(&self, x: &TruncSet) -> Vec<Vertex> {
        let mut out = vec![self.start];
        out.extend(self.edges.iter().map(|&e| x.dst(e)));
        out
    }

    pub fn vertex_at(&self, x: &TruncSet, t: i64) -> Vertex {
        let k = (t - self.base).clamp(0, self.edges.len() as i64) as usize;
        if k == 0 {
            self.start
        } else {
            x.dst(self.edges[k - 1])
        }
    }

    /// The edge from `t` to `t + 1`.
    pub fn edge_at(&self, x: &TruncSet, t: i64) -> EdgeId {
        let k = t - self.base;
        if k < 0 || k >= self.edges.len() as i64 {
            x.deg(self.vertex_at(x, t))
        } else {
            self.edges[k as usize]
        }
    }

    /// Smallest window outside which the path is constant; `[0, 0]` for constant paths.
    pub fn standard_support(&self, x: &TruncSet) -> Support {
        let first = self.edges.iter().position(|&e| !x.is_degenerate(e));
        let last = self.edges.iter().rposition(|&e| !x.is_degenerate(e));
        match (first, last) {
            (Some(a), Some(b)) => Support {
                lo: self.base + a as i64,
                hi: self.base + b as i64 + 1,
            },
            _ => Support::ZERO,
        }
    }

    /// Same path, window shrunk to the standard support.
    pub fn standardize(&self, x: &TruncSet) -> Path {
        let first = self.edges.iter().position(|&e| !x.is_degenerate(e));
        let last = self.edges.iter().rposition(|&e| !x.is_degenerate(e));
        match (first, last) {
            (Some(a), Some(b)) => Path {
                base: self.base + a as i64,
                start: x.src(self.edges[a]),
                edges: self.edges[a..=b].to_vec(),
            },
            _ => Path::constant(self.start),
        }
    }

    /// Standard concatenation: `self` on its standard support followed by `other`, pasted at
    /// `rho+(self) + sigma-(other)`.
    pub fn concat(&self, x: &TruncSet, other: &Path) -> Result<Path> {
        if self.end(x) != other.start {
            return input(format!(
                "paths are not consecutive: first ends at {}, second starts at {}",
                self.end(x),
                other.start
            ));
        }
        let (a, b) = (self.standardize(x), other.standardize(x));
        let mut edges = a.edges;
        edges.extend(b.edges);
        Ok(Path {
            base: a.base + b.base,
            start: self.start,
            edges,
        })
    }

    /// `(-a)(t) = a(-t)`; defined on symmetric sets only.
    pub fn reverse(&self, x: &TruncSet) -> Result<Path> {
        if !x.is_symmetric() {
            return Err(Error::Unsupported("reversing a path in a directed set".into()));
        }
        Ok(Path {
            base: -self.window().hi,
            start: self.end(x),
            edges: self.edges.iter().rev().map(|&e| x.rev(e)).collect(),
        })
    }

    /// The delayed path `t -> a(d(t))`, on the preimage of the carried window.
    pub fn apply_delay(&self, x: &TruncSet, d: &Delay) -> Path {
        let w = self.window();
        let (lo, _) = d.preimage(w.lo);
        let (_, hi) = d.preimage(w.hi);
        let edges = (lo..hi)
            .map(|t| {
                let (s, s1) = (d.eval(t), d.eval(t + 1));
                if s == s1 {
                    x.deg(self.vertex_at(x, s))
                } else {
                    self.edge_at(x, s)
                }
            })
            .collect();
        Path {
            base: lo,
            start: self.start,
            edges,
        }
    }

    /// Essential representative: no degenerate steps, based at 0.
    pub fn delay_normal_form(&self, x: &TruncSet) -> Path {
        Path {
            base: 0,
            start: self.start,
            edges: self.edges.iter().copied().filter(|&e| !x.is_degenerate(e)).collect(),
        }
    }

    pub fn congruent(&self, x: &TruncSet, other: &Path) -> bool {
        self.delay_normal_form(x) == other.delay_normal_form(x)
    }

    /// Delay normal form with backtracks `e, rev e` cancelled; symmetric sets only.
    pub fn strong_normal_form(&self, x: &TruncSet) -> Result<Path> {
        if !x.is_symmetric() {
            return Err(Error::Unsupported("regressions need a symmetric set".into()));
        }
        let mut stack: Vec<EdgeId> = Vec::new();
        for e in self.edges.iter().copied().filter(|&e| !x.is_degenerate(e)) {
            if stack.last() == Some(&x.rev(e)) {
                stack.pop();
            } else {
                stack.push(e);
            }
        }
        Ok(Path {
            base: 0,
            start: self.start,
            edges: stack,
        })
    }

    pub fn map(&self, f: &TruncMap) -> Path {
        Path {
            base: self.base,
            start: f.vertices[self.start],
            edges: self.edges.iter().map(|&e| f.edges[e]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{build_space, SpaceSpec};

    fn circle(k: usize) -> TruncSet {
        build_space(&SpaceSpec::Circle(k)).unwrap().to_trunc()
    }

    #[test]
    fn supports() {
        let x = circle(3);
        assert_eq!(Path::constant(1).standard_support(&x), Support::ZERO);
        let a = Path::from_vertices(&x, 0, &[0, 1, 1, 2]).unwrap();
        assert_eq!(a.standard_support(&x), Support::new(0, 3).unwrap());
        let b = Path::from_vertices(&x, 0, &[0, 0, 1, 1]).unwrap();
        assert_eq!(b.standard_support(&x), Support::new(1, 2).unwrap());
        // a constant path with a carried window still has support [0, 0]
        let c = Path::from_vertices(&x, 5, &[2, 2, 2]).unwrap();
        assert_eq!(c.standard_support(&x), Support::ZERO);
    }

    #[test]
    fn concat_adds_supports() {
        let x = circle(5);
        let a = Path::from_vertices(&x, 0, &[0, 1, 2]).unwrap();
        let b = Path::from_vertices(&x, 0, &[2, 3, 4, 0]).unwrap();
        let c = a.concat(&x, &b).unwrap();
        assert_eq!(c.standard_support(&x), Support::new(0, 5).unwrap());
        assert_eq!(c.vertices(&x), vec![0, 1, 2, 3, 4, 0]);
        assert!(b.concat(&x, &b).is_err());
    }

    #[test]
    fn reverse_negates_support() {
        let x = circle(5);
        let a = Path::from_vertices(&x, 2, &[0, 1, 2]).unwrap();
        let r = a.reverse(&x).unwrap();
        assert_eq!(r.standard_support(&x), -a.standard_support(&x));
        assert_eq!(r.vertices(&x), vec![2, 1, 0]);
        assert_eq!(r.reverse(&x).unwrap(), a);
        let d = build_space(&SpaceSpec::DirCircle(3)).unwrap().to_trunc();
        assert!(matches!(Path::constant(0).reverse(&d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn delay_inserts_a_repetition() {
        let x = circle(5);
        let a = Path::from_vertices(&x, 0, &[0, 1, 2, 3]).unwrap();
        let ad = a.apply_delay(&x, &Delay::elementary(1));
        assert_eq!(ad.vertices(&x), vec![0, 1, 1, 2, 3]);
        assert!(ad.congruent(&x, &a));
        assert_eq!(a.apply_delay(&x, &Delay::identity()), a);
    }

    #[test]
    fn strong_reduction_cancels_backtracks() {
        let x = circle(5);
        let a = Path::from_vertices(&x, 0, &[0, 1, 2, 1, 2, 3]).unwrap();
        let n = a.strong_normal_form(&x).unwrap();
        assert_eq!(n.vertices(&x), vec![0, 1, 2, 3]);
        let loop_back = a.concat(&x, &a.reverse(&x).unwrap()).unwrap();
        assert_eq!(loop_back.strong_normal_form(&x).unwrap(), Path::constant(0));
    }
}
