//! Named spaces and their text syntax.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, DirectedComplex, Vertex};
use crate::error::{input, Error, Result};
use crate::trunc::{dir_two_skeleton, pushout, two_skeleton, Orientation, TruncMap, TruncSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceSpec {
    /// `line:i:j`, the interval `[i, j]` of the combinatorial line.
    LineWindow(i64, i64),
    /// `dline:i:j`
    DirLineWindow(i64, i64),
    /// `codiscrete:n`, all subsets of `{0..=n}` linked.
    Codiscrete(usize),
    /// `simplex:n`, the ordinal `[n]`.
    SimplexDir(usize),
    Discrete(usize),
    Circle(usize),
    DirCircle(usize),
    /// `csphere:n:k`
    CollapsedSphere(usize, usize),
    /// `dcsphere:n:k`
    DirCollapsedSphere(usize, usize),
    Wedge(Box<SpaceSpec>, Box<SpaceSpec>),
    /// `sum(a,b)`, disjoint union.
    Sum(Box<SpaceSpec>, Box<SpaceSpec>),
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::LineWindow(i, j) => write!(f, "line:{i}:{j}"),
            SpaceSpec::DirLineWindow(i, j) => write!(f, "dline:{i}:{j}"),
            SpaceSpec::Codiscrete(n) => write!(f, "codiscrete:{n}"),
            SpaceSpec::SimplexDir(n) => write!(f, "simplex:{n}"),
            SpaceSpec::Discrete(n) => write!(f, "discrete:{n}"),
            SpaceSpec::Circle(k) => write!(f, "circle:{k}"),
            SpaceSpec::DirCircle(k) => write!(f, "dcircle:{k}"),
            SpaceSpec::CollapsedSphere(n, k) => write!(f, "csphere:{n}:{k}"),
            SpaceSpec::DirCollapsedSphere(n, k) => write!(f, "dcsphere:{n}:{k}"),
            SpaceSpec::Wedge(a, b) => write!(f, "wedge({a},{b})"),
            SpaceSpec::Sum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for (name, ctor) in [("wedge", SpaceSpec::Wedge as fn(_, _) -> _), ("sum", SpaceSpec::Sum)] {
            if let Some(rest) = s.strip_prefix(name).and_then(|r| r.trim_start().strip_prefix('(')) {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Input(format!("unbalanced parentheses in '{s}'")))?;
                let split = top_level_comma(inner).ok_or_else(|| Error::Input(format!("'{s}' needs two arguments")))?;
                let a: SpaceSpec = inner[..split].parse()?;
                let b: SpaceSpec = inner[split + 1..].parse()?;
                return Ok(ctor(Box::new(a), Box::new(b)));
            }
        }
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let int = |k: usize| -> Result<i64> {
            parts
                .get(k)
                .ok_or_else(|| Error::Input(format!("'{s}' is missing parameter {k}")))?
                .parse::<i64>()
                .map_err(|e| Error::Input(format!("bad integer in '{s}': {e}")))
        };
        let nat = |k: usize| -> Result<usize> {
            let v = int(k)?;
            usize::try_from(v).map_err(|_| Error::Input(format!("'{s}' needs a non-negative parameter")))
        };
        let arity = |n: usize| -> Result<()> {
            if parts.len() == n + 1 {
                Ok(())
            } else {
                input(format!("'{s}' expects {n} parameter(s)"))
            }
        };
        let spec = match parts[0] {
            "line" => {
                arity(2)?;
                SpaceSpec::LineWindow(int(1)?, int(2)?)
            }
            "dline" => {
                arity(2)?;
                SpaceSpec::DirLineWindow(int(1)?, int(2)?)
            }
            "codiscrete" => {
                arity(1)?;
                SpaceSpec::Codiscrete(nat(1)?)
            }
            "simplex" => {
                arity(1)?;
                SpaceSpec::SimplexDir(nat(1)?)
            }
            "discrete" => {
                arity(1)?;
                SpaceSpec::Discrete(nat(1)?)
            }
            "circle" => {
                arity(1)?;
                SpaceSpec::Circle(nat(1)?)
            }
            "dcircle" => {
                arity(1)?;
                SpaceSpec::DirCircle(nat(1)?)
            }
            "csphere" => {
                arity(2)?;
                SpaceSpec::CollapsedSphere(nat(1)?, nat(2)?)
            }
            "dcsphere" => {
                arity(2)?;
                SpaceSpec::DirCollapsedSphere(nat(1)?, nat(2)?)
            }
            other => return input(format!("unknown space '{other}'")),
        };
        Ok(spec)
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// The object a spec denotes: simple spaces stay simple, the rest are truncated sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Space {
    Complex(Complex),
    Directed(DirectedComplex),
    Trunc(TruncSet),
}

impl Space {
    pub fn orientation(&self) -> Orientation {
        match self {
            Space::Complex(_) => Orientation::Symmetric,
            Space::Directed(_) => Orientation::Directed,
            Space::Trunc(t) => t.orientation(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        match self {
            Space::Complex(c) => c.n_vertices(),
            Space::Directed(d) => d.n_vertices(),
            Space::Trunc(t) => t.n_vertices(),
        }
    }

    pub fn to_trunc(&self) -> TruncSet {
        match self {
            Space::Complex(c) => two_skeleton(c),
            Space::Directed(d) => dir_two_skeleton(d),
            Space::Trunc(t) => t.clone(),
        }
    }
}

fn line_complex(len: usize) -> Complex {
    Complex::from_parts(len + 1, (0..len).map(|t| vec![t, t + 1])).expect("in range")
}

fn dir_line(len: usize) -> DirectedComplex {
    DirectedComplex::new(len + 1, (0..len).map(|t| vec![t, t + 1])).expect("in range")
}

/// Non-simple circles `C_1`, `C_2` as truncated sets.
fn small_circle(orientation: Orientation, k: usize) -> TruncSet {
    let edges: Vec<(Vertex, Vertex)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    match orientation {
        Orientation::Directed => TruncSet::new(orientation, k, edges, None, []).expect("valid"),
        Orientation::Symmetric => {
            let mut all = edges.clone();
            all.extend(edges.iter().map(|&(s, d)| (d, s)));
            let rev = (0..2 * k).map(|i| k + (i + k) % (2 * k)).collect();
            TruncSet::new(orientation, k, all, Some(rev), []).expect("valid")
        }
    }
}

/// Quotient of the window `[0, k+1]^n` with everything outside `[1, k]^n` sent to the base
/// vertex 0; inner point `(i_1..i_n)` gets id `1 + sum (i_t - 1) k^(n-t)`.
fn collapse(k: usize, p: &[usize]) -> Vertex {
    if p.iter().any(|&c| c == 0 || c > k) {
        0
    } else {
        1 + p.iter().fold(0, |acc, &c| acc * k + (c - 1))
    }
}

fn cells(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|c| (0..=k).map(move |i| [c.clone(), vec![i]].concat()))
            .collect();
    }
    out
}

fn collapsed_sphere(n: usize, k: usize) -> Complex {
    let nv = 1 + k.pow(n as u32);
    let mut parts = Vec::new();
    for lo in cells(n, k) {
        let mut part = Vec::new();
        for mask in 0..(1usize << n) {
            let p: Vec<usize> = (0..n).map(|t| lo[t] + ((mask >> t) & 1)).collect();
            part.push(collapse(k, &p));
        }
        parts.push(part);
    }
    Complex::from_parts(nv, parts).expect("in range")
}

fn dir_collapsed_sphere(n: usize, k: usize) -> DirectedComplex {
    let nv = 1 + k.pow(n as u32);
    let mut words = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    for lo in cells(n, k) {
        // every maximal chain of the unit cube: raise coordinates in some order
        permutations(&mut order, 0, &mut |perm| {
            let mut p = lo.clone();
            let mut w = vec![collapse(k, &p)];
            for &t in perm {
                p[t] += 1;
                w.push(collapse(k, &p));
            }
            words.push(w);
        });
    }
    DirectedComplex::new(nv, words).expect("in range")
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Builds the named object.
pub fn build_space(spec: &SpaceSpec) -> Result<Space> {
    Ok(match *spec {
        SpaceSpec::LineWindow(i, j) => {
            if j < i {
                return input(format!("empty window [{i}, {j}]"));
            }
            Space::Complex(line_complex((j - i) as usize))
        }
        SpaceSpec::DirLineWindow(i, j) => {
            if j < i {
                return input(format!("empty window [{i}, {j}]"));
            }
            Space::Directed(dir_line((j - i) as usize))
        }
        SpaceSpec::Codiscrete(n) => Space::Complex(Complex::codiscrete(n)),
        SpaceSpec::SimplexDir(n) => Space::Directed(DirectedComplex::simplex(n)),
        SpaceSpec::Discrete(n) => Space::Complex(Complex::discrete(n)),
        SpaceSpec::Circle(k) => match k {
            0 => return input("circle needs k >= 1"),
            1 | 2 => Space::Trunc(small_circle(Orientation::Symmetric, k)),
            _ => Space::Complex(Complex::from_parts(k, (0..k).map(|i| vec![i, (i + 1) % k]))?),
        },
        SpaceSpec::DirCircle(k) => match k {
            0 => return input("directed circle needs k >= 1"),
            1 | 2 => Space::Trunc(small_circle(Orientation::Directed, k)),
            _ => Space::Directed(DirectedComplex::new(k, (0..k).map(|i| vec![i, (i + 1) % k]))?),
        },
        SpaceSpec::CollapsedSphere(n, k) | SpaceSpec::DirCollapsedSphere(n, k) => {
            if !(1..=2).contains(&n) || k < 2 {
                return input(format!("collapsed sphere needs n in 1..=2 and k >= 2, got n={n}, k={k}"));
            }
            if matches!(spec, SpaceSpec::CollapsedSphere(..)) {
                Space::Complex(collapsed_sphere(n, k))
            } else {
                Space::Directed(dir_collapsed_sphere(n, k))
            }
        }
        SpaceSpec::Wedge(ref a, ref b) => wedge(&build_space(a)?, &build_space(b)?)?,
        SpaceSpec::Sum(ref a, ref b) => sum(&build_space(a)?, &build_space(b)?)?,
    })
}

/// One-point union at vertex 0 of each space.
pub fn wedge(x: &Space, y: &Space) -> Result<Space> {
    match (x, y) {
        (Space::Complex(a), Space::Complex(b)) => Ok(Space::Complex(a.wedge(b))),
        (Space::Directed(a), Space::Directed(b)) => Ok(Space::Directed(a.wedge(b))),
        _ => {
            if x.orientation() != y.orientation() {
                return input("wedge of a symmetric and a directed space");
            }
            let (tx, ty) = (x.to_trunc(), y.to_trunc());
            let pt = TruncSet::point(x.orientation());
            let at0 = |t: &TruncSet| TruncMap {
                vertices: vec![0],
                edges: vec![t.deg(0)],
            };
            let (p, _, _) = pushout(&pt, &tx, &at0(&tx), &ty, &at0(&ty))?;
            Ok(Space::Trunc(p))
        }
    }
}

pub fn sum(x: &Space, y: &Space) -> Result<Space> {
    match (x, y) {
        (Space::Complex(a), Space::Complex(b)) => Ok(Space::Complex(a.disjoint_union(b))),
        (Space::Directed(a), Space::Directed(b)) => Ok(Space::Directed(a.disjoint_union(b))),
        _ => Ok(Space::Trunc(x.to_trunc().disjoint_union(&y.to_trunc())?.0)),
    }
}

/// Names accepted by the parser, with an example each.
pub const CATALOG: &[(&str, &str)] = &[
    ("line:i:j", "interval [i, j] of the combinatorial line"),
    ("dline:i:j", "interval [i, j] of the directed line"),
    ("codiscrete:n", "codiscrete complex on n+1 points"),
    ("simplex:n", "directed ordinal simplex [n]"),
    ("discrete:n", "n isolated points"),
    ("circle:k", "k-point circle (k <= 2 is not simple)"),
    ("dcircle:k", "k-point directed circle"),
    ("csphere:n:k", "k-collapsed n-sphere, n in 1..=2"),
    ("dcsphere:n:k", "directed k-collapsed n-sphere"),
    ("wedge(a,b)", "one-point union at vertex 0"),
    ("sum(a,b)", "disjoint union"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::sym_forget;
    use crate::trunc::{find_isomorphism, reflect_u};

    #[test]
    fn parse_round_trip() {
        for s in ["circle:3", "csphere:2:2", "wedge(circle:3,circle:3)", "sum(dline:0:2,dcircle:1)", "line:-1:4"] {
            let spec: SpaceSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("circle".parse::<SpaceSpec>().is_err());
        assert!("wedge(circle:3)".parse::<SpaceSpec>().is_err());
        assert!("torus:2".parse::<SpaceSpec>().is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(build_space(&SpaceSpec::Circle(0)).is_err());
        assert!(build_space(&SpaceSpec::CollapsedSphere(3, 2)).is_err());
        assert!(build_space(&SpaceSpec::CollapsedSphere(2, 1)).is_err());
        assert!(build_space(&SpaceSpec::LineWindow(3, 1)).is_err());
    }

    #[test]
    fn small_circles_are_truncated() {
        let Space::Trunc(c2) = build_space(&SpaceSpec::Circle(2)).unwrap() else { panic!() };
        assert_eq!((c2.n_vertices(), c2.num_nondegenerate_edges()), (2, 4));
        assert!(c2.triangles().is_empty());
        let Space::Trunc(c1) = build_space(&SpaceSpec::Circle(1)).unwrap() else { panic!() };
        assert_eq!((c1.n_vertices(), c1.num_nondegenerate_edges()), (1, 2));
        assert_eq!(c1.rev(1), 2);
    }

    #[test]
    fn pyramid_sphere() {
        let Space::Complex(s) = build_space(&SpaceSpec::CollapsedSphere(2, 2)).unwrap() else { panic!() };
        assert_eq!(s.n_vertices(), 5);
        // the basis square and four pyramid triangles over its sides
        assert_eq!(
            s.facets(),
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 4], vec![0, 3, 4], vec![1, 2, 3, 4]]
        );
        let Space::Complex(c) = build_space(&SpaceSpec::CollapsedSphere(1, 3)).unwrap() else { panic!() };
        assert_eq!(c.n_vertices(), 4);
        assert_eq!(c.facets().len(), 4);
    }

    #[test]
    fn directed_circle_symmetrises_to_circle() {
        for k in 3..8 {
            let Space::Directed(d) = build_space(&SpaceSpec::DirCircle(k)).unwrap() else { panic!() };
            let Space::Complex(c) = build_space(&SpaceSpec::Circle(k)).unwrap() else { panic!() };
            assert_eq!(sym_forget(&d), c);
        }
        let Space::Directed(l) = build_space(&SpaceSpec::DirLineWindow(0, 5)).unwrap() else { panic!() };
        let Space::Complex(m) = build_space(&SpaceSpec::LineWindow(0, 5)).unwrap() else { panic!() };
        assert_eq!(sym_forget(&l), m);
    }

    #[test]
    fn directed_collapsed_circle_is_a_directed_circle() {
        let Space::Directed(d) = build_space(&SpaceSpec::DirCollapsedSphere(1, 3)).unwrap() else { panic!() };
        let Space::Directed(c) = build_space(&SpaceSpec::DirCircle(4)).unwrap() else { panic!() };
        let (td, tc) = (Space::Directed(d).to_trunc(), Space::Directed(c).to_trunc());
        assert!(find_isomorphism(&td, &tc).is_some());
    }

    #[test]
    fn wedge_with_small_circle() {
        let w = build_space(&"wedge(circle:1,circle:3)".parse().unwrap()).unwrap();
        let Space::Trunc(t) = w else { panic!() };
        assert_eq!(t.n_vertices(), 3);
        assert_eq!(t.num_nondegenerate_edges(), 2 + 6);
        assert_eq!(reflect_u(&t).facets().len(), 3);
    }
}
