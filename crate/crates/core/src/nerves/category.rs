//! Finite categories and groupoids given by explicit composition tables.

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::error::{input, Error, Result};

/// Objects `0..objects`; arrow `a` goes `arrows[a].0 -> arrows[a].1`; `compose[a][b]` is
/// "`a` then `b`" and is defined exactly when `a` ends where `b` starts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CategoryTable", into = "CategoryTable")]
pub struct FiniteCategory {
    objects: usize,
    arrows: Vec<(Vertex, Vertex)>,
    identities: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct CategoryTable {
    objects: usize,
    arrows: Vec<(Vertex, Vertex)>,
    identities: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
}

impl TryFrom<CategoryTable> for FiniteCategory {
    type Error = Error;
    fn try_from(t: CategoryTable) -> Result<Self> {
        FiniteCategory::new(t.objects, t.arrows, t.identities, t.compose)
    }
}

impl From<FiniteCategory> for CategoryTable {
    fn from(c: FiniteCategory) -> Self {
        CategoryTable {
            objects: c.objects,
            arrows: c.arrows,
            identities: c.identities,
            compose: c.compose,
        }
    }
}

impl FiniteCategory {
    /// Validates the table: shapes, typing of composites, unit laws and associativity. The
    /// error names the first failing instance.
    pub fn new(
        objects: usize,
        arrows: Vec<(Vertex, Vertex)>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let m = arrows.len();
        for (a, &(s, d)) in arrows.iter().enumerate() {
            if s >= objects || d >= objects {
                return input(format!("arrow {a} has an endpoint out of range"));
            }
        }
        if identities.len() != objects {
            return input(format!("expected {objects} identities, got {}", identities.len()));
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= m || arrows[i] != (x, x) {
                return input(format!("identity of object {x} is not a loop at {x}"));
            }
        }
        if compose.len() != m || compose.iter().any(|r| r.len() != m) {
            return input(format!("composition table must be {m} x {m}"));
        }
        for a in 0..m {
            for b in 0..m {
                let composable = arrows[a].1 == arrows[b].0;
                match compose[a][b] {
                    None if composable => return input(format!("compose[{a}][{b}] is missing")),
                    Some(_) if !composable => return input(format!("compose[{a}][{b}] is set but {a} and {b} do not compose")),
                    Some(c) if c >= m || arrows[c] != (arrows[a].0, arrows[b].1) => {
                        return input(format!("compose[{a}][{b}] = {c} has the wrong endpoints"))
                    }
                    _ => {}
                }
            }
        }
        let c = FiniteCategory {
            objects,
            arrows,
            identities,
            compose,
        };
        for a in 0..m {
            let (s, d) = c.arrows[a];
            if c.then(c.identities[s], a) != Some(a) {
                return input(format!("left unit law fails at arrow {a}"));
            }
            if c.then(a, c.identities[d]) != Some(a) {
                return input(format!("right unit law fails at arrow {a}"));
            }
        }
        for a in 0..m {
            for b in c.out_of(c.arrows[a].1) {
                let ab = c.then(a, b).unwrap();
                for k in c.out_of(c.arrows[b].1) {
                    let lhs = c.then(ab, k).unwrap();
                    let rhs = c.then(a, c.then(b, k).unwrap()).unwrap();
                    if lhs != rhs {
                        return input(format!(
                            "associativity fails at ({a}, {b}, {k}): (ab)c = {lhs} but a(bc) = {rhs}"
                        ));
                    }
                }
            }
        }
        Ok(c)
    }

    /// The category of a preorder on `0..n`, given as a reflexive transitive relation.
    pub fn from_preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut arrows = Vec::new();
        let mut id = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    id[i * n + j] = arrows.len();
                    arrows.push((i, j));
                }
            }
        }
        let identities = (0..n).map(|i| id[i * n + i]).collect::<Vec<_>>();
        if identities.contains(&usize::MAX) {
            return input("preorder is not reflexive");
        }
        let compose = arrows
            .iter()
            .map(|&(i, j)| {
                arrows
                    .iter()
                    .map(|&(k, l)| {
                        if j != k {
                            None
                        } else {
                            Some(id[i * n + l]).filter(|&c| c != usize::MAX)
                        }
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Option<usize>>>>();
        if arrows.iter().enumerate().any(|(a, &(_, j))| {
            arrows.iter().enumerate().any(|(b, &(k, _))| j == k && compose[a][b].is_none())
        }) {
            return input("preorder is not transitive");
        }
        FiniteCategory::new(n, arrows, identities, compose)
    }

    /// Objects and identities only.
    pub fn discrete(n: usize) -> Self {
        Self::from_preorder(n, |i, j| i == j).expect("valid")
    }

    /// The ordinal `[n] = {0 < 1 < .. < n}`.
    pub fn ordinal(n: usize) -> Self {
        Self::from_preorder(n + 1, |i, j| i <= j).expect("valid")
    }

    /// The commuting square `{0,1}^2`: object `x` has bits `(x & 1, x >> 1)`.
    pub fn commutative_square() -> Self {
        Self::from_preorder(4, |i, j| i & j == i).expect("valid")
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, a: usize) -> Vertex {
        self.arrows[a].0
    }

    pub fn dst(&self, a: usize) -> Vertex {
        self.arrows[a].1
    }

    pub fn identity(&self, x: Vertex) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities[self.src(a)] == a
    }

    pub fn then(&self, a: usize, b: usize) -> Option<usize> {
        self.compose[a][b]
    }

    pub fn out_of(&self, x: Vertex) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].0 == x)
    }

    pub fn hom(&self, x: Vertex, y: Vertex) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a] == (x, y)).collect()
    }
}

/// A finite category in which every arrow is invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FiniteCategory", into = "FiniteCategory")]
pub struct FiniteGroupoid {
    cat: FiniteCategory,
    inverse: Vec<usize>,
}

impl TryFrom<FiniteCategory> for FiniteGroupoid {
    type Error = Error;
    fn try_from(c: FiniteCategory) -> Result<Self> {
        FiniteGroupoid::new(c)
    }
}

impl From<FiniteGroupoid> for FiniteCategory {
    fn from(g: FiniteGroupoid) -> Self {
        g.cat
    }
}

impl FiniteGroupoid {
    pub fn new(cat: FiniteCategory) -> Result<Self> {
        let mut inverse = Vec::with_capacity(cat.num_arrows());
        for a in 0..cat.num_arrows() {
            let (s, d) = cat.arrows[a];
            let inv = cat
                .hom(d, s)
                .into_iter()
                .find(|&b| cat.then(a, b) == Some(cat.identity(s)) && cat.then(b, a) == Some(cat.identity(d)));
            match inv {
                Some(b) => inverse.push(b),
                None => return input(format!("arrow {a} has no inverse")),
            }
        }
        Ok(FiniteGroupoid { cat, inverse })
    }

    /// One object; arrow `k` is element `k`, `0` is the unit and `a` then `b` is `mul(a, b)`.
    pub fn group(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order == 0 {
            return input("a group has at least one element");
        }
        let compose = (0..order).map(|a| (0..order).map(|b| Some(mul(a, b))).collect()).collect();
        FiniteGroupoid::new(FiniteCategory::new(1, vec![(0, 0); order], vec![0], compose)?)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::group(n, |a, b| (a + b) % n).expect("valid")
    }

    /// `Z/2 x Z/2`, elements as 2-bit vectors.
    pub fn klein_four() -> Self {
        Self::group(4, |a, b| a ^ b).expect("valid")
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(FiniteCategory::discrete(n)).expect("valid")
    }

    /// Exactly one arrow between any two objects.
    pub fn codiscrete(n: usize) -> Self {
        Self::new(FiniteCategory::from_preorder(n, |_, _| true).expect("valid")).expect("valid")
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// Small groupoids used by the counit checks: discrete and codiscrete ones on one to three
/// objects, and the groups `Z/2`, `Z/3`, `Z/2 x Z/2`.
pub fn groupoid_catalog() -> Vec<(String, FiniteGroupoid)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("discrete:{n}"), FiniteGroupoid::discrete(n)));
    }
    for n in 1..=3 {
        out.push((format!("codiscrete:{n}"), FiniteGroupoid::codiscrete(n)));
    }
    out.push(("Z/2".into(), FiniteGroupoid::cyclic(2)));
    out.push(("Z/3".into(), FiniteGroupoid::cyclic(3)));
    out.push(("Z/2xZ/2".into(), FiniteGroupoid::klein_four()));
    out
}

/// The ordinals `[0]` to `[4]` and the commuting square.
pub fn category_catalog() -> Vec<(String, FiniteCategory)> {
    let mut out: Vec<(String, FiniteCategory)> = (0..=4).map(|n| (format!("ordinal:{n}"), FiniteCategory::ordinal(n))).collect();
    out.push(("square".into(), FiniteCategory::commutative_square()));
    out
}
