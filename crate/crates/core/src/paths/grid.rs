//! Double paths `A: Z^2 -> X` into simple spaces, stored on a finite window.

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::error::{input, Error, Result};
use crate::paths::delay::Delay;
use crate::paths::path::Path;
use crate::spaces::Space;
use crate::trunc::TruncSet;

/// `rows[t][s]` is `A(base.0 + s, base.1 + t)`; outside the window the grid is extended by
/// its border values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathGrid {
    pub base: (i64, i64),
    pub rows: Vec<Vec<Vertex>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connection {
    /// `A(s, t) = a(s ∧ t)`
    Meet,
    /// `A(s, t) = a(s ∨ t)`
    Join,
}

impl PathGrid {
    pub fn new(base: (i64, i64), rows: Vec<Vec<Vertex>>) -> Result<PathGrid> {
        let w = rows.first().map_or(0, Vec::len);
        if w == 0 || rows.iter().any(|r| r.len() != w) {
            return input("grid rows must be non-empty and of equal length");
        }
        Ok(PathGrid { base, rows })
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn at(&self, s: i64, t: i64) -> Vertex {
        let si = (s - self.base.0).clamp(0, self.width() as i64 - 1) as usize;
        let ti = (t - self.base.1).clamp(0, self.height() as i64 - 1) as usize;
        self.rows[ti][si]
    }

    /// Interchange of the two coordinates.
    pub fn transpose(&self) -> PathGrid {
        let rows = (0..self.width()).map(|s| self.rows.iter().map(|r| r[s]).collect()).collect();
        PathGrid {
            base: (self.base.1, self.base.0),
            rows,
        }
    }

    /// Repeats column `s` `cols[s]` times and row `t` `rows[t]` times: the effect of a
    /// two-dimensional delay on the window.
    pub fn expand(&self, cols: &[usize], rows: &[usize]) -> PathGrid {
        let mut out = Vec::new();
        for (t, row) in self.rows.iter().enumerate() {
            let mut r = Vec::new();
            for (s, &v) in row.iter().enumerate() {
                r.extend(std::iter::repeat_n(v, cols[s]));
            }
            for _ in 0..rows[t] {
                out.push(r.clone());
            }
        }
        PathGrid {
            base: self.base,
            rows: out,
        }
    }
}

/// Symmetric: every unit square's corners are linked. Directed: both staircase chains of every
/// unit square are linked words, and so are adjacent pairs along rows and columns.
pub fn validate_grid(a: &PathGrid, space: &Space) -> Result<bool> {
    let (w, h) = (a.width(), a.height());
    let r = &a.rows;
    match space {
        Space::Complex(c) => {
            if r.iter().flatten().any(|&v| v >= c.n_vertices()) {
                return Ok(false);
            }
            for t in 0..h {
                for s in 0..w {
                    let mut part = vec![r[t][s]];
                    if s + 1 < w {
                        part.push(r[t][s + 1]);
                    }
                    if t + 1 < h {
                        part.push(r[t + 1][s]);
                        if s + 1 < w {
                            part.push(r[t + 1][s + 1]);
                        }
                    }
                    part.sort_unstable();
                    part.dedup();
                    if !c.contains(&part)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Space::Directed(d) => {
            if r.iter().flatten().any(|&v| v >= d.n_vertices()) {
                return Ok(false);
            }
            for t in 0..h {
                for s in 0..w {
                    let right = (s + 1 < w).then(|| r[t][s + 1]);
                    let up = (t + 1 < h).then(|| r[t + 1][s]);
                    let mut words = vec![];
                    match (right, up) {
                        (Some(x), Some(y)) => {
                            let z = r[t + 1][s + 1];
                            words.push(vec![r[t][s], x, z]);
                            words.push(vec![r[t][s], y, z]);
                        }
                        (Some(x), None) => words.push(vec![r[t][s], x]),
                        (None, Some(y)) => words.push(vec![r[t][s], y]),
                        (None, None) => {}
                    }
                    if !words.iter().all(|word| d.contains(word).unwrap_or(false)) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Space::Trunc(_) => Err(Error::Unsupported("grids are defined on simple spaces only".into())),
    }
}

/// The caterpillar double path `A(s, t) = a(delta_{(i ∨ t) ∧ j}(s))` between `a delta_i` (row
/// `t = i`) and `a delta_j = a` (row `t = j`), for `j >= max(i, rho+(a))`.
pub fn caterpillar_grid(x: &TruncSet, a: &Path, i: i64, j: i64) -> Result<PathGrid> {
    let rho = a.standard_support(x);
    if j < i || j < rho.hi {
        return input(format!("caterpillar needs j >= max(i, {}), got i={i}, j={j}", rho.hi));
    }
    let s_lo = rho.lo.min(i);
    let s_hi = j + 1;
    let rows = (i..=j)
        .map(|t| {
            let d = Delay::elementary(t.max(i).min(j));
            (s_lo..=s_hi).map(|s| a.vertex_at(x, d.eval(s))).collect()
        })
        .collect();
    Ok(PathGrid {
        base: (s_lo, i),
        rows,
    })
}

/// Connection grid of `a` over its standard support.
pub fn connection_grid(x: &TruncSet, a: &Path, kind: Connection) -> PathGrid {
    let rho = a.standard_support(x);
    let rows = (rho.lo..=rho.hi)
        .map(|t| {
            (rho.lo..=rho.hi)
                .map(|s| {
                    let u = match kind {
                        Connection::Meet => s.min(t),
                        Connection::Join => s.max(t),
                    };
                    a.vertex_at(x, u)
                })
                .collect()
        })
        .collect();
    PathGrid {
        base: (rho.lo, rho.lo),
        rows,
    }
}

/// Compositions of `n` into `k` positive parts, or none when `n < k`.
fn compositions(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(left: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() + 1 == k {
            if left >= 1 {
                cur.push(left);
                f(cur);
                cur.pop();
            }
            return;
        }
        for m in 1..=left.saturating_sub(k - cur.len() - 1) {
            cur.push(m);
            rec(left - m, k, cur, f);
            cur.pop();
        }
    }
    if k > 0 && n >= k {
        rec(n, k, &mut Vec::with_capacity(k), f);
    }
}

/// All expansions of `g` by row and column repetition with both sides at most `max_side`.
pub fn delay_expansions(g: &PathGrid, max_side: usize) -> std::collections::HashSet<Vec<Vec<Vertex>>> {
    let mut out = std::collections::HashSet::new();
    for width in g.width()..=max_side {
        for height in g.height()..=max_side {
            compositions(width, g.width(), &mut |cols| {
                compositions(height, g.height(), &mut |rows| {
                    out.insert(g.expand(cols, rows).rows);
                });
            });
        }
    }
    out
}

/// Whether two grids become equal under two-dimensional delays, searching expansions of both
/// up to `max_side` on each side. Translations are ignored since both are compared on their
/// windows.
pub fn delay_related_within(g1: &PathGrid, g2: &PathGrid, max_side: usize) -> bool {
    let e1 = delay_expansions(g1, max_side);
    delay_expansions(g2, max_side).iter().any(|g| e1.contains(g))
}

/// Row `t` of a grid as a path.
pub fn grid_row(x: &TruncSet, g: &PathGrid, t: usize) -> Result<Path> {
    Path::from_vertices(x, g.base.0, &g.rows[t])
}
