use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use combhom::fundamental::group::DEFAULT_TIETZE_BUDGET;
use combhom::fundamental::words::format_word;
use combhom::fundamental::{
    abelianization, brute_force_classes, edge_path_groupoid, fundamental_category, groupoid_hom_count, pi0_trunc,
    tietze_simplify, todd_coxeter, vertex_group, AbelianInvariants, GroupPresentation,
};
use combhom::metric::{eps_sweep, load_points, LoadOptions, Rational, StepMetricSpace, StepRelation, SweepInput, SweepOptions};
use combhom::nerves::{counit_check, dir_counit_check, vankampen_check, FiniteCategory, FiniteGroupoid, Report, SpanSpec, Verdict};
use combhom::paths::Path as EdgePath;
use combhom::spaces::CATALOG;
use combhom::{build_space, Space, SpaceSpec, TruncSet};

use crate::{Common, Output};

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn space_of(spec: Option<&str>, file: Option<&Path>) -> Result<(String, TruncSet)> {
    match (spec, file) {
        (Some(s), _) => {
            let spec: SpaceSpec = s.parse()?;
            Ok((spec.to_string(), build_space(&spec)?.to_trunc()))
        }
        (None, Some(f)) => {
            let v = read_json(f)?;
            let t = match serde_json::from_value::<Space>(v.clone()) {
                Ok(space) => space.to_trunc(),
                Err(_) => serde_json::from_value::<TruncSet>(v).with_context(|| format!("{} is not a space", f.display()))?,
            };
            Ok((stem(f), t))
        }
        (None, None) => bail!("give a space spec or --file"),
    }
}

fn presentation_text(p: &GroupPresentation) -> String {
    let gens: Vec<String> = (0..p.generators).map(|g| format!("g{g}")).collect();
    let rels: Vec<String> = p.relators.iter().map(|r| format_word(r)).collect();
    format!("<{} | {}>", gens.join(", "), rels.join(", "))
}

fn abelian_text(a: &AbelianInvariants) -> String {
    let mut parts: Vec<String> = Vec::new();
    if a.rank > 0 {
        parts.push(if a.rank == 1 { "Z".into() } else { format!("Z^{}", a.rank) });
    }
    parts.extend(a.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn invariants(c: &Common, spec: Option<&str>, file: Option<&Path>, base: Option<usize>) -> Result<Output> {
    let (name, t) = space_of(spec, file)?;
    if let Some(b) = base.filter(|&b| b >= t.n_vertices()) {
        bail!("base vertex {b} out of range");
    }
    let comps = pi0_trunc(&t);
    let bases: Vec<usize> = match base {
        Some(b) => vec![b],
        None => comps.parts().iter().map(|p| p[0]).collect(),
    };
    let mut text = String::new();
    writeln!(text, "space: {name}")?;
    writeln!(
        text,
        "vertices: {}, edges: {}, triangles: {}, components: {}",
        t.n_vertices(),
        t.num_nondegenerate_edges(),
        t.triangles().len(),
        comps.count
    )?;
    let mut json = json!({
        "space": name,
        "orientation": t.orientation(),
        "vertices": t.n_vertices(),
        "edges": t.num_nondegenerate_edges(),
        "triangles": t.triangles().len(),
        "components": comps.count,
    });
    if t.is_symmetric() {
        let gp = edge_path_groupoid(&t)?;
        let mut groups = Vec::new();
        for &b in &bases {
            let vg = vertex_group(&gp, b)?;
            let tz = tietze_simplify(&vg.presentation, DEFAULT_TIETZE_BUDGET);
            let ab = abelianization(&tz.presentation);
            let order = if tz.presentation.relators.is_empty() {
                (tz.presentation.generators == 0).then_some(1)
            } else {
                todd_coxeter(&tz.presentation, c.budget).map(|tab| tab.order())
            };
            writeln!(text, "base {b} ({} objects):", vg.component.len())?;
            writeln!(text, "  presentation: {}", presentation_text(&vg.presentation))?;
            writeln!(text, "  after Tietze: {}", presentation_text(&tz.presentation))?;
            writeln!(text, "  H1: {}", abelian_text(&ab))?;
            if let Some(o) = order {
                writeln!(text, "  order: {o}")?;
            }
            groups.push(json!({
                "base": b,
                "objects": vg.component.len(),
                "presentation": vg.presentation,
                "simplified": tz.presentation,
                "abelian": ab,
                "order": order,
            }));
        }
        json["vertex_groups"] = json!(groups);
    } else {
        let p = fundamental_category(&t)?;
        let n = t.n_vertices();
        let mut table = vec![vec![Value::Null; n]; n];
        writeln!(text, "hom sizes up to length {} (* = not saturated):", c.max_len)?;
        for x in 0..n {
            let mut line = String::new();
            for y in 0..n {
                let (count, sat) = p.hom_count(x, y, c.max_len)?;
                table[x][y] = json!({ "count": count, "saturated": sat });
                write!(line, " {count}{}", if sat { " " } else { "*" })?;
            }
            writeln!(text, " {x}:{line}")?;
        }
        json["hom"] = json!(table);
        json["max_len"] = json!(c.max_len);
        if let Some(b) = base {
            let m = p.pi_monoid(b, c.max_len)?;
            writeln!(text, "loops at {b}: {} classes, saturated: {}", m.elements.len(), m.saturated)?;
            json["loop_monoid"] = serde_json::to_value(&m)?;
        }
    }
    Ok(Output { json, text, verdict: None })
}

fn report_output(r: Report) -> Result<Output> {
    let mut text = format!("{}: {}\n", r.case, serde_json::to_value(r.verdict)?.as_str().unwrap_or("?"));
    for n in &r.notes {
        writeln!(text, "  {n}")?;
    }
    writeln!(text, "  invariants: {}", r.invariants)?;
    Ok(Output {
        verdict: Some(r.verdict),
        json: serde_json::to_value(&r)?,
        text,
    })
}

pub fn adjunction(c: &Common, file: &Path, directed: bool) -> Result<Output> {
    let v = read_json(file)?;
    let name = v.get("name").and_then(Value::as_str).map_or_else(|| stem(file), str::to_string);
    let kind = v.get("kind").and_then(Value::as_str).map(str::to_string);
    let cat: FiniteCategory = serde_json::from_value(v).with_context(|| format!("invalid table in {}", file.display()))?;
    let report = match (directed, kind.as_deref()) {
        (true, _) | (false, Some("category")) => dir_counit_check(&name, &cat, c.max_len)?,
        (false, Some("groupoid")) => counit_check(&name, &FiniteGroupoid::new(cat)?, c.budget)?,
        (false, None) => match FiniteGroupoid::new(cat.clone()) {
            Ok(g) => counit_check(&name, &g, c.budget)?,
            Err(_) => dir_counit_check(&name, &cat, c.max_len)?,
        },
        (false, Some(k)) => bail!("unknown kind {k:?}; expected groupoid or category"),
    };
    report_output(report)
}

pub fn vankampen(c: &Common, file: &Path) -> Result<Output> {
    let mut spec: SpanSpec =
        serde_json::from_value(read_json(file)?).with_context(|| format!("invalid span in {}", file.display()))?;
    if spec.name.is_empty() {
        spec.name = stem(file);
    }
    report_output(vankampen_check(&spec.build()?, c.max_len, c.budget)?)
}

fn parse_eps(s: &str) -> Result<Vec<Rational>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
        return Ok((a..=b).map(Rational::from_integer).collect());
    }
    s.split(',')
        .map(|e| e.trim().parse::<Rational>().with_context(|| format!("bad eps value {e:?}")))
        .collect()
}

#[allow(clippy::too_many_arguments)]
pub fn sweep(
    c: &Common,
    file: &Path,
    eps: &str,
    metric: &str,
    threshold: Option<u32>,
    input_format: Option<&str>,
    step: Option<&str>,
    base: Option<usize>,
) -> Result<Output> {
    let opts = LoadOptions {
        format: input_format.map(str::parse).transpose()?,
        threshold,
        metric: metric.parse()?,
    };
    let cloud = load_points(file, &opts)?;
    let data = match step {
        None => SweepInput::Cloud(cloud),
        Some("coordinatewise") => SweepInput::Step(StepMetricSpace::new(cloud, StepRelation::Coordinatewise)?),
        Some("intensity") => SweepInput::Step(StepMetricSpace::new(cloud, StepRelation::Intensity)?),
        Some(s) => bail!("unknown step relation {s:?}; expected coordinatewise or intensity"),
    };
    let sweep_opts = SweepOptions {
        base,
        max_len: c.max_len,
        ..SweepOptions::default()
    };
    let report = eps_sweep(&data, &parse_eps(eps)?, &sweep_opts)?;
    Ok(Output {
        text: report.to_table(),
        json: serde_json::to_value(&report)?,
        verdict: None,
    })
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|v| v.trim().parse::<usize>().with_context(|| format!("bad vertex {v:?}")))
        .collect()
}

pub fn normalize(spec: &str, path: &str) -> Result<Output> {
    let (name, t) = space_of(Some(spec), None)?;
    let p = EdgePath::from_vertices(&t, 0, &parse_list(path)?)?;
    let delay = p.delay_normal_form(&t);
    let strong = if t.is_symmetric() { Some(p.strong_normal_form(&t)?) } else { None };
    let fmt = |q: &EdgePath| {
        q.vertices(&t).iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    let mut text = format!("space: {name}\ninput:  {}\ndelay:  {}\n", fmt(&p), fmt(&delay));
    if let Some(s) = &strong {
        writeln!(text, "strong: {}", fmt(s))?;
    }
    let json = json!({
        "space": name,
        "input": { "path": p, "vertices": p.vertices(&t) },
        "delay_normal_form": { "path": delay, "vertices": delay.vertices(&t) },
        "strong_normal_form": strong.as_ref().map(|s| json!({ "path": s, "vertices": s.vertices(&t) })),
    });
    Ok(Output { json, text, verdict: None })
}

pub fn oracle(c: &Common, spec: &str, samples: Option<usize>, seed: u64) -> Result<Output> {
    let (name, t) = space_of(Some(spec), None)?;
    let n = t.n_vertices();
    let pairs: Vec<(usize, usize)> = match samples {
        None => (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect(),
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        }
    };
    let category = if t.is_symmetric() { None } else { Some(fundamental_category(&t)?) };
    let mut rows = Vec::new();
    let mut verdict = Verdict::Pass;
    let mut compared = 0;
    let mut text = format!("space: {name}, max_len {}\n   x   y  oracle  presentation\n", c.max_len);
    for (x, y) in pairs {
        let o = brute_force_classes(&t, x, y, c.max_len)?;
        let (count, decided) = match &category {
            None => match groupoid_hom_count(&t, x, y, c.max_len, c.budget)? {
                Some(k) => (Some(k), true),
                None => (None, false),
            },
            Some(p) => {
                let (k, sat) = p.hom_count(x, y, c.max_len)?;
                (Some(k), sat)
            }
        };
        let comparable = o.saturated && decided;
        let agree = count == Some(o.count);
        if comparable {
            compared += 1;
            if !agree {
                verdict = Verdict::Fail;
            }
        }
        let mark = |v: Option<usize>, ok: bool| v.map_or("?".into(), |k| format!("{k}{}", if ok { "" } else { "*" }));
        writeln!(text, "{x:>4}{y:>4}{:>8}{:>14}", mark(Some(o.count), o.saturated), mark(count, decided))?;
        rows.push(json!({
            "x": x, "y": y,
            "oracle": o,
            "presentation": { "count": count, "exact": decided },
            "compared": comparable,
            "agree": comparable.then_some(agree),
        }));
    }
    if compared == 0 {
        verdict = verdict.and(Verdict::Inconclusive);
    }
    writeln!(text, "compared {compared} pairs: {}", serde_json::to_value(verdict)?.as_str().unwrap_or("?"))?;
    Ok(Output {
        json: json!({ "space": name, "max_len": c.max_len, "compared": compared, "verdict": verdict, "pairs": rows }),
        text,
        verdict: Some(verdict),
    })
}

pub fn catalog(spec: Option<&str>) -> Result<Output> {
    match spec {
        None => {
            let mut text = String::new();
            for (name, what) in CATALOG {
                writeln!(text, "{name:<18} {what}")?;
            }
            let json = json!(CATALOG.iter().map(|(n, w)| json!({ "spec": n, "description": w })).collect::<Vec<_>>());
            Ok(Output { json, text, verdict: None })
        }
        Some(s) => {
            let spec: SpaceSpec = s.parse()?;
            let space = build_space(&spec)?;
            let t = space.to_trunc();
            let text = format!(
                "{spec}: {} vertices, {} edges, {} triangles\n",
                t.n_vertices(),
                t.num_nondegenerate_edges(),
                t.triangles().len()
            );
            Ok(Output {
                json: json!({ "spec": spec.to_string(), "space": space, "truncated": t }),
                text,
                verdict: None,
            })
        }
    }
}
