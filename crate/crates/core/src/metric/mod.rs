//! Finite metric data at a resolution: tolerance and step structures, 2-skeleta, and sweeps
//! of homotopy invariants over a list of resolutions.

mod load;
mod sweep;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Vertex};
use crate::error::{input, Error, Result};
use crate::trunc::{EdgeId, Orientation, TruncSet};

pub use load::{load_points, parse_csv, parse_pgm, InputFormat, LoadOptions};
pub use sweep::{eps_sweep, InvariantReport, InvariantRow, SweepInput, SweepOptions};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    LInf,
    L1,
    /// Compared through squared distances.
    L2,
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linf" | "l-inf" | "max" => Ok(Metric::LInf),
            "l1" | "taxicab" => Ok(Metric::L1),
            "l2" | "euclidean" => Ok(Metric::L2),
            _ => input(format!("unknown metric {s:?}; expected linf, l1 or l2")),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::LInf => "linf",
            Metric::L1 => "l1",
            Metric::L2 => "l2",
        })
    }
}

/// Points of a fixed dimension with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<Rational>>,
    pub metric: Metric,
    /// Pixel values when the cloud comes from an image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intensity: Option<Vec<u32>>,
}

type Wide = Ratio<i128>;

fn widen(r: Rational) -> Wide {
    Wide::new(*r.numer() as i128, *r.denom() as i128)
}

impl PointCloud {
    pub fn new(points: Vec<Vec<Rational>>, metric: Metric) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return input(format!("point {i} has dimension {} but point 0 has {dim}", points[i].len()));
        }
        Ok(PointCloud {
            dim,
            points,
            metric,
            intensity: None,
        })
    }

    pub fn from_integers(points: &[Vec<i64>], metric: Metric) -> Result<Self> {
        Self::new(points.iter().map(|p| p.iter().map(|&c| Rational::from_integer(c)).collect()).collect(), metric)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// `d(i, j)` for L∞ and L1, `d(i, j)^2` for L2.
    pub fn distance(&self, i: usize, j: usize) -> Ratio<i128> {
        let diffs = self.points[i].iter().zip(&self.points[j]).map(|(&a, &b)| (widen(a) - widen(b)).abs());
        match self.metric {
            Metric::LInf => diffs.fold(Wide::zero(), |m, d| m.max(d)),
            Metric::L1 => diffs.sum(),
            Metric::L2 => diffs.map(|d| d * d).sum(),
        }
    }

    /// `d(i, j) <= eps`.
    pub fn within(&self, i: usize, j: usize, eps: Rational) -> bool {
        let e = widen(eps);
        let bound = if self.metric == Metric::L2 { e * e } else { e };
        self.distance(i, j) <= bound
    }

    /// Sorted neighbour lists of the tolerance relation at `eps`, self excluded.
    pub fn neighbours(&self, eps: Rational) -> Vec<Vec<Vertex>> {
        (0..self.len())
            .into_par_iter()
            .map(|i| (0..self.len()).filter(|&j| j != i && self.within(i, j, eps)).collect())
            .collect()
    }
}

/// Step relations on a cloud; all are reflexive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "pairs")]
pub enum StepRelation {
    /// `x ≺ y` iff every coordinate of `x` is at most that of `y`.
    Coordinatewise,
    /// `x ≺ y` iff the intensity of `x` is at most that of `y`.
    Intensity,
    /// The listed pairs, plus the diagonal.
    Pairs(Vec<(Vertex, Vertex)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepMetricSpace {
    pub cloud: PointCloud,
    pub step: StepRelation,
}

impl StepMetricSpace {
    pub fn new(cloud: PointCloud, step: StepRelation) -> Result<Self> {
        match &step {
            StepRelation::Intensity if cloud.intensity.as_ref().map(Vec::len) != Some(cloud.len()) => {
                return input("the intensity step needs one intensity per point");
            }
            StepRelation::Pairs(p) => {
                if let Some(&(a, b)) = p.iter().find(|&&(a, b)| a >= cloud.len() || b >= cloud.len()) {
                    return input(format!("step pair ({a}, {b}) out of range"));
                }
            }
            _ => {}
        }
        Ok(StepMetricSpace { cloud, step })
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        match &self.step {
            StepRelation::Coordinatewise => self.cloud.points[i].iter().zip(&self.cloud.points[j]).all(|(a, b)| a <= b),
            StepRelation::Intensity => {
                let v = self.cloud.intensity.as_ref().expect("checked in new");
                v[i] <= v[j]
            }
            StepRelation::Pairs(p) => p.contains(&(i, j)),
        }
    }
}

/// The 2-skeleton of the tolerance complex at `eps`: every pairwise tolerant set of at most
/// three points is linked.
pub fn rips2(cloud: &PointCloud, eps: Rational) -> Result<Complex> {
    if eps.is_negative() {
        return input("eps must be nonnegative");
    }
    let nb = cloud.neighbours(eps);
    let facets: Vec<Vec<Vec<Vertex>>> = (0..cloud.len())
        .into_par_iter()
        .map(|i| {
            let up: Vec<Vertex> = nb[i].iter().copied().filter(|&j| j > i).collect();
            let mut out = Vec::new();
            if nb[i].is_empty() {
                out.push(vec![i]);
            }
            for (a, &j) in up.iter().enumerate() {
                let mut in_triangle = nb[i].iter().any(|&k| k != j && nb[j].binary_search(&k).is_ok());
                for &k in &up[a + 1..] {
                    if nb[j].binary_search(&k).is_ok() {
                        out.push(vec![i, j, k]);
                        in_triangle = true;
                    }
                }
                if !in_triangle {
                    out.push(vec![i, j]);
                }
            }
            out
        })
        .collect();
    Ok(Complex::from_facets_unchecked(cloud.len(), facets.into_iter().flatten().collect()))
}

/// Directed 2-truncated structure at `eps`: edges are the pairs `x ≺ y`, `x != y`, with
/// `d(x, y) <= eps`; triangles are the chains `x ≺ y ≺ z` whose three steps all qualify.
pub fn step_rips2(space: &StepMetricSpace, eps: Rational) -> Result<TruncSet> {
    if eps.is_negative() {
        return input("eps must be nonnegative");
    }
    let cloud = &space.cloud;
    let n = cloud.len();
    let out: Vec<Vec<Vertex>> = cloud
        .neighbours(eps)
        .into_iter()
        .enumerate()
        .map(|(i, nb)| nb.into_iter().filter(|&j| space.precedes(i, j)).collect())
        .collect();
    let mut edges = Vec::new();
    let mut id = std::collections::HashMap::new();
    for (i, js) in out.iter().enumerate() {
        for &j in js {
            id.insert((i, j), n + edges.len());
            edges.push((i, j));
        }
    }
    let e = |a: Vertex, b: Vertex| -> Option<EdgeId> { if a == b { Some(a) } else { id.get(&(a, b)).copied() } };
    let mut triangles = Vec::new();
    for (x, ys) in out.iter().enumerate() {
        for &y in ys {
            for &z in &out[y] {
                if let Some(c) = e(x, z) {
                    triangles.push([id[&(x, y)], id[&(y, z)], c]);
                }
            }
        }
    }
    TruncSet::new(Orientation::Directed, n, edges, None, triangles)
}
