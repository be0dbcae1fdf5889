//! Immediate and bounded directed homotopies between maps of directed complexes.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{DirectedComplex, Vertex};
use crate::error::{input, Result};

pub const DEFAULT_STATE_BUDGET: usize = 100_000;

/// Whether there is an immediate homotopy `f -> g`: for every generator `(x_0..x_n)` of `X`
/// and every `i`, the prism word `(f x_0 .. f x_i, g x_i .. g x_n)` is linked in `Y`.
pub fn immediate_homotopy(x: &DirectedComplex, y: &DirectedComplex, f: &[Vertex], g: &[Vertex]) -> Result<bool> {
    for (name, m) in [("f", f), ("g", g)] {
        if !x.is_map_to(y, m) {
            return input(format!("{name} is not a map"));
        }
    }
    Ok(x.generators().iter().all(|w| prisms_linked(y, w, f, g)))
}

fn prisms_linked(y: &DirectedComplex, w: &[Vertex], f: &[Vertex], g: &[Vertex]) -> bool {
    let mut word = Vec::with_capacity(w.len() + 1);
    (0..w.len()).all(|i| {
        word.clear();
        word.extend(w[..=i].iter().map(|&v| f[v]));
        word.extend(w[i..].iter().map(|&v| g[v]));
        y.is_linked(&word)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Reachability {
    Reachable { steps: usize, chain: Vec<Vec<Vertex>> },
    Unreachable,
    /// The state budget ran out first.
    Unknown { explored: usize },
}

/// Breadth-first search over maps `X -> Y` from `f`, one immediate homotopy per step.
pub fn bounded_homotopy_reachable(
    x: &DirectedComplex,
    y: &DirectedComplex,
    f: &[Vertex],
    g: &[Vertex],
    max_steps: usize,
    budget: usize,
) -> Result<Reachability> {
    for (name, m) in [("f", f), ("g", g)] {
        if !x.is_map_to(y, m) {
            return input(format!("{name} is not a map"));
        }
    }
    let mut parent: HashMap<Vec<Vertex>, Option<Vec<Vertex>>> = HashMap::new();
    parent.insert(f.to_vec(), None);
    let chain_to = |parent: &HashMap<Vec<Vertex>, Option<Vec<Vertex>>>| {
        let mut chain = vec![g.to_vec()];
        while let Some(Some(p)) = parent.get(chain.last().unwrap()) {
            chain.push(p.clone());
        }
        chain.reverse();
        Reachability::Reachable {
            steps: chain.len() - 1,
            chain,
        }
    };
    if f == g {
        return Ok(chain_to(&parent));
    }
    let mut queue = VecDeque::from([(f.to_vec(), 0usize)]);
    while let Some((m, depth)) = queue.pop_front() {
        if depth == max_steps {
            continue;
        }
        let (mut found, mut over) = (false, false);
        successors(x, y, &m, &mut |h| {
            if parent.contains_key(h) {
                return true;
            }
            if parent.len() >= budget {
                over = true;
                return false;
            }
            parent.insert(h.to_vec(), Some(m.clone()));
            if h == g {
                found = true;
                return false;
            }
            queue.push_back((h.to_vec(), depth + 1));
            true
        });
        if found {
            return Ok(chain_to(&parent));
        }
        if over {
            return Ok(Reachability::Unknown { explored: parent.len() });
        }
    }
    Ok(Reachability::Unreachable)
}

/// Enumerates maps `h` with `m -> h` immediate. Vertices are assigned in order; each generator
/// is checked once its last vertex is assigned. The callback returns `false` to stop.
fn successors(x: &DirectedComplex, y: &DirectedComplex, m: &[Vertex], emit: &mut impl FnMut(&[Vertex]) -> bool) {
    let n = x.n_vertices();
    let mut due: Vec<Vec<&[Vertex]>> = vec![Vec::new(); n];
    for w in x.generators() {
        if let Some(&last) = w.iter().max() {
            due[last].push(w);
        }
    }
    fn rec(
        v: usize,
        h: &mut Vec<Vertex>,
        y: &DirectedComplex,
        m: &[Vertex],
        due: &[Vec<&[Vertex]>],
        emit: &mut impl FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if v == m.len() {
            return emit(h);
        }
        for c in 0..y.n_vertices() {
            if !y.is_linked(&[m[v], c]) {
                continue;
            }
            h.push(c);
            let ok = due[v].iter().all(|w| {
                let image: Vec<Vertex> = w.iter().map(|&u| h[u]).collect();
                y.is_linked(&image) && prisms_linked(y, w, m, h)
            });
            if ok && !rec(v + 1, h, y, m, due, emit) {
                h.pop();
                return false;
            }
            h.pop();
        }
        true
    }
    let mut h = Vec::with_capacity(n);
    rec(0, &mut h, y, m, &due, emit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dline(m: usize) -> DirectedComplex {
        DirectedComplex::new(m + 1, (0..m).map(|t| vec![t, t + 1])).unwrap()
    }

    #[test]
    fn reflexive() {
        let x = dline(3);
        let id: Vec<Vertex> = (0..4).collect();
        assert!(immediate_homotopy(&x, &x, &id, &id).unwrap());
    }

    #[test]
    fn not_a_map() {
        let x = dline(2);
        assert!(immediate_homotopy(&x, &x, &[2, 1, 0], &[0, 1, 2]).is_err());
    }

    #[test]
    fn zero_to_identity_needs_several_steps() {
        let x = dline(2);
        assert!(!immediate_homotopy(&x, &x, &[0, 0, 0], &[0, 1, 2]).unwrap());
        let r = bounded_homotopy_reachable(&x, &x, &[0, 0, 0], &[0, 1, 2], 5, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(r, Reachability::Reachable {
            steps: 2,
            chain: vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
        });
    }

    #[test]
    fn budget_gives_unknown() {
        let x = dline(3);
        let r = bounded_homotopy_reachable(&x, &x, &[0, 1, 2, 3], &[0, 0, 0, 0], 10, 3).unwrap();
        assert!(matches!(r, Reachability::Unknown { .. }));
    }
}
