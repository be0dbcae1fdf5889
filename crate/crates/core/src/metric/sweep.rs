use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::error::{input, Result};
use crate::fundamental::group::DEFAULT_TIETZE_BUDGET;
use crate::fundamental::{abelianization, edge_path_groupoid, fundamental_category, pi0_trunc, tietze_simplify, vertex_group};
use crate::metric::{rips2, step_rips2, Metric, PointCloud, Rational, StepMetricSpace};
use crate::trunc::two_skeleton;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SweepInput {
    Cloud(PointCloud),
    Step(StepMetricSpace),
}

impl SweepInput {
    fn cloud(&self) -> &PointCloud {
        match self {
            SweepInput::Cloud(c) => c,
            SweepInput::Step(s) => &s.cloud,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOptions {
    /// Report the vertex group at this point instead of the largest component.
    pub base: Option<Vertex>,
    /// Tietze-simplified sizes are computed only up to this many points.
    pub presentation_threshold: usize,
    /// Length bound for loop classes of directed inputs.
    pub max_len: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            base: None,
            presentation_threshold: 500,
            max_len: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub eps: String,
    pub components: usize,
    pub base: Vertex,
    pub component_size: usize,
    pub edges: usize,
    pub triangles: usize,
    /// Vertex group presentation after contracting a spanning tree.
    pub generators: usize,
    pub relators: usize,
    /// Sizes after Tietze simplification, below the point threshold.
    pub simplified: Option<(usize, usize)>,
    pub h1_rank: usize,
    pub h1_torsion: Vec<String>,
    /// Directed inputs: loop classes at the base up to the length bound, and saturation.
    pub loop_classes: Option<usize>,
    pub loops_saturated: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub metric: Metric,
    pub points: usize,
    pub rows: Vec<InvariantRow>,
}

/// One row per resolution. Empty inputs give no rows.
pub fn eps_sweep(data: &SweepInput, eps_list: &[Rational], opts: &SweepOptions) -> Result<InvariantReport> {
    if let Some(w) = eps_list.windows(2).find(|w| w[0] >= w[1]) {
        return input(format!("eps values must increase strictly, got {} then {}", w[0], w[1]));
    }
    if eps_list.first().is_some_and(|e| *e < Rational::from_integer(0)) {
        return input("eps must be nonnegative");
    }
    let cloud = data.cloud();
    if let Some(b) = opts.base.filter(|&b| b >= cloud.len()) {
        return input(format!("base point {b} out of range"));
    }
    let rows = if cloud.is_empty() {
        vec![]
    } else {
        eps_list.par_iter().map(|&eps| row(data, eps, opts)).collect::<Result<Vec<_>>>()?
    };
    Ok(InvariantReport {
        metric: cloud.metric,
        points: cloud.len(),
        rows,
    })
}

fn row(data: &SweepInput, eps: Rational, opts: &SweepOptions) -> Result<InvariantRow> {
    let cloud = data.cloud();
    let t = two_skeleton(&rips2(cloud, eps)?);
    let comps = pi0_trunc(&t);
    let parts = comps.parts();
    let base = match opts.base {
        Some(b) => b,
        None => parts.iter().max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))).map(|p| p[0]).unwrap_or(0),
    };
    let vg = vertex_group(&edge_path_groupoid(&t)?, base)?;
    // the simplified presentation, when computed, gives the same abelianization far faster
    let tz = (cloud.len() <= opts.presentation_threshold).then(|| tietze_simplify(&vg.presentation, DEFAULT_TIETZE_BUDGET));
    let ab = abelianization(tz.as_ref().map_or(&vg.presentation, |t| &t.presentation));
    let simplified = tz.map(|t| (t.presentation.generators, t.presentation.relators.len()));
    let (loop_classes, loops_saturated) = match data {
        SweepInput::Cloud(_) => (None, None),
        SweepInput::Step(s) => {
            let h = fundamental_category(&step_rips2(s, eps)?)?.hom_classes(base, base, opts.max_len)?;
            (Some(h.count), Some(h.saturated))
        }
    };
    Ok(InvariantRow {
        eps: eps.to_string(),
        components: comps.count,
        base,
        component_size: vg.component.len(),
        edges: t.num_nondegenerate_edges() / 2,
        triangles: t.triangles().len(),
        generators: vg.presentation.generators,
        relators: vg.presentation.relators.len(),
        simplified,
        h1_rank: ab.rank,
        h1_torsion: ab.torsion,
        loop_classes,
        loops_saturated,
    })
}

impl InvariantReport {
    /// Aligned text table, one line per row.
    pub fn to_table(&self) -> String {
        let mut head = vec!["eps", "pi0", "base", "size", "edges", "triangles", "gens", "rels", "tietze", "H1"];
        let directed = self.rows.iter().any(|r| r.loop_classes.is_some());
        if directed {
            head.push("loops");
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut h1 = format!("Z^{}", r.h1_rank);
                for t in &r.h1_torsion {
                    write!(h1, " + Z/{t}").unwrap();
                }
                let mut c = vec![
                    r.eps.clone(),
                    r.components.to_string(),
                    r.base.to_string(),
                    r.component_size.to_string(),
                    r.edges.to_string(),
                    r.triangles.to_string(),
                    r.generators.to_string(),
                    r.relators.to_string(),
                    r.simplified.map_or("-".into(), |(g, k)| format!("{g}/{k}")),
                    h1,
                ];
                if directed {
                    c.push(match (r.loop_classes, r.loops_saturated) {
                        (Some(n), Some(true)) => n.to_string(),
                        (Some(n), _) => format!(">={n}"),
                        _ => "-".into(),
                    });
                }
                c
            })
            .collect();
        let widths: Vec<usize> = (0..head.len())
            .map(|i| cells.iter().map(|c| c[i].len()).chain([head[i].len()]).max().unwrap())
            .collect();
        let line = |c: &[String]| -> String {
            c.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        let mut out = line(&head.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        out.push('\n');
        for c in &cells {
            out.push_str(&line(c));
            out.push('\n');
        }
        out
    }
}
