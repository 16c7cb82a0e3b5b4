//! Command implementations for the `jg` binary: everything lives here so the
//! integration tests can exercise the same code paths without spawning a
//! process for every assertion.

pub mod alpha;
pub mod render;

use anyhow::{anyhow, bail, Context, Result};
use jigsaw_groups::arithmeticity::{
    arithmetic_test, diamond_mn, scan_diamonds, star_1n, word_table,
};
use jigsaw_groups::exact::{ExtRational, ProjMatrix, Rat};
use jigsaw_groups::jigsaw::{assemble, single_tile, Jigsaw, JigsawBlueprint};
use jigsaw_groups::pseudomodular::{is_pseudomodular, PmVerdict};
use jigsaw_groups::sequences::{
    cf_diamond, cf_weierstrass, cutting_naive_jigsaw, cutting_naive_weierstrass,
    cutting_translation, pseudo_euclid_diamond, CFExpansion, SeqStatus, DEFAULT_MAX_STEPS,
};
use jigsaw_groups::weierstrass::{adjacent, farey_level, Triangle, WeierstrassParams};
use num_traits::One;
use serde_json::{json, Value};
use std::path::Path;

/// Result of one command: the human-readable lines and the equivalent
/// line-delimited JSON records, plus the process exit code.
pub struct CmdOutput {
    pub lines: Vec<String>,
    pub records: Vec<Value>,
    pub exit: i32,
}

impl CmdOutput {
    fn ok() -> Self {
        CmdOutput {
            lines: Vec::new(),
            records: Vec::new(),
            exit: 0,
        }
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim().replace('\u{2212}', "-");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().to_string(), d.trim().to_string()),
        None => (s, "1".to_string()),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| anyhow!("bad rational: {n}"))?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| anyhow!("bad rational: {d}"))?;
    if d == num_bigint::BigInt::from(0) {
        bail!("zero denominator");
    }
    Ok(Rat::new(n, d))
}

pub fn parse_ext(s: &str) -> Result<ExtRational> {
    let t = s.trim();
    if t == "inf" || t == "-inf" || t == "oo" {
        return Ok(ExtRational::Inf);
    }
    Ok(ExtRational::Fin(parse_rat(t)?))
}

fn ext_str(v: &ExtRational) -> String {
    v.to_string()
}

/// How a jigsaw group was specified; remembered so seq can pick the
/// algorithms that exist for it.
pub enum GroupSpec {
    Weierstrass(WeierstrassParams),
    Jigsaw { j: Jigsaw, diamond: Option<(u64, u64)> },
}

pub struct GroupFlags {
    pub diamond: Option<(u64, u64)>,
    pub star: Option<u64>,
    pub weierstrass_n: Option<u64>,
    pub params: Option<(Rat, Rat, Rat)>,
    pub blueprint: Option<String>,
}

impl GroupFlags {
    pub fn resolve(&self) -> Result<GroupSpec> {
        let picked = [
            self.diamond.is_some(),
            self.star.is_some(),
            self.weierstrass_n.is_some(),
            self.params.is_some(),
            self.blueprint.is_some(),
        ]
        .iter()
        .filter(|b| **b)
        .count();
        if picked != 1 {
            bail!("specify exactly one group: --diamond M N | --star N | --weierstrass N | --params K1 K2 K3 | --blueprint FILE");
        }
        if let Some((m, n)) = self.diamond {
            if m == 0 || n == 0 {
                bail!("diamond indices must be positive");
            }
            return Ok(GroupSpec::Jigsaw {
                j: diamond_mn(m, n),
                diamond: Some((m, n)),
            });
        }
        if let Some(n) = self.star {
            if n == 0 {
                bail!("star index must be positive");
            }
            return Ok(GroupSpec::Jigsaw {
                j: star_1n(n),
                diamond: None,
            });
        }
        if let Some(n) = self.weierstrass_n {
            if n == 0 {
                bail!("weierstrass index must be positive");
            }
            return Ok(GroupSpec::Weierstrass(WeierstrassParams::integral(n)));
        }
        if let Some((k1, k2, k3)) = &self.params {
            let w = WeierstrassParams::new(k1.clone(), k2.clone(), k3.clone())
                .map_err(|e| anyhow!("bad parameters: {e}"))?;
            return Ok(GroupSpec::Weierstrass(w));
        }
        let path = self.blueprint.as_ref().unwrap();
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading blueprint {path}"))?;
        let bp = JigsawBlueprint::parse(&text).map_err(|e| anyhow!("bad blueprint: {e}"))?;
        let j = assemble(&bp).map_err(|e| anyhow!("blueprint does not assemble: {e}"))?;
        Ok(GroupSpec::Jigsaw { j, diamond: None })
    }

    /// The jigsaw view of the group: Weierstrass groups become their
    /// single-tile jigsaw when the parameters are integral.
    pub fn resolve_jigsaw(&self) -> Result<Jigsaw> {
        match self.resolve()? {
            GroupSpec::Jigsaw { j, .. } => Ok(j),
            GroupSpec::Weierstrass(w) => {
                let (k1, k2, k3) = w.k();
                if k1 == &Rat::one() && k3.is_integer() && &(k2 * k3) == &Rat::one() {
                    let n = u64::try_from(&k3.to_integer())
                        .map_err(|_| anyhow!("type out of range"))?;
                    Ok(assemble(&single_tile(n)).map_err(|e| anyhow!("{e}"))?)
                } else {
                    bail!("this command needs a jigsaw group (or integral Weierstrass parameters 1, 1/n, n)")
                }
            }
        }
    }
}

pub fn cmd_farey(k1: &Rat, k2: &Rat, k3: &Rat, level: u32) -> Result<CmdOutput> {
    if level == 0 {
        bail!("level must be >= 1");
    }
    let w = WeierstrassParams::new(k1.clone(), k2.clone(), k3.clone())
        .map_err(|e| anyhow!("bad parameters: {e}"))?;
    let cusps = farey_level(&w, level);
    let mut names: Vec<String> = cusps.iter().map(ext_str).collect();
    names[0] = "-inf".into();
    let mut out = CmdOutput::ok();
    out.lines.push(names.join(", "));
    out.records.push(json!({
        "cmd": "farey", "schema": 1,
        "k": [k1.to_string(), k2.to_string(), k3.to_string()],
        "level": level,
        "cusps": names,
    }));
    Ok(out)
}

pub fn cmd_adjacent(
    k: (&Rat, &Rat, &Rat),
    verts: (&ExtRational, &ExtRational, &ExtRational),
    side: Option<u8>,
) -> Result<CmdOutput> {
    let w = WeierstrassParams::new(k.0.clone(), k.1.clone(), k.2.clone())
        .map_err(|e| anyhow!("bad parameters: {e}"))?;
    let t = Triangle::new(verts.0.clone(), verts.1.clone(), verts.2.clone(), 0)
        .map_err(|e| anyhow!("bad triangle (vertices must be distinct, in orientation order): {e}"))?;
    let sides: Vec<u8> = match side {
        Some(s) if (1..=3).contains(&s) => vec![s],
        Some(s) => bail!("side must be 1, 2 or 3, got {s}"),
        None => vec![1, 2, 3],
    };
    let mut out = CmdOutput::ok();
    for s in sides {
        let n = adjacent(&w, &t, s);
        let vs: Vec<String> = n.vertices().iter().map(|v| ext_str(v)).collect();
        out.lines.push(format!("T{s}: ({}, {}, {})", vs[0], vs[1], vs[2]));
        out.records.push(json!({
            "cmd": "adjacent", "schema": 1,
            "side": s,
            "vertices": vs,
        }));
    }
    Ok(out)
}

fn mat_str(m: &ProjMatrix) -> String {
    let (a, b, c, d) = m.entries();
    format!("[{a} {b}; {c} {d}]")
}

/// Table emission conventions chosen so the published reference tables can
/// be diffed textually: diamond generators are conjugated by x -> x - 1,
/// star generators are listed in reverse cyclic order.
pub fn table_generators(flags: &GroupFlags) -> Result<Vec<ProjMatrix>> {
    if let Some((m, n)) = flags.diamond {
        let t = ProjMatrix::from_i64(1, -1, 0, 1).unwrap();
        let ti = t.inv();
        return Ok(diamond_mn(m, n)
            .generators()
            .iter()
            .map(|g| t.mul(g).mul(&ti))
            .collect());
    }
    if let Some(n) = flags.star {
        let mut gens = star_1n(n).generators();
        gens.reverse();
        return Ok(gens);
    }
    match flags.resolve()? {
        GroupSpec::Weierstrass(w) => {
            let (i1, i2, i3) = w.involutions();
            Ok(vec![i1, i2, i3])
        }
        GroupSpec::Jigsaw { j, .. } => Ok(j.generators()),
    }
}

pub fn cmd_arith(flags: &GroupFlags, emit_table: bool) -> Result<CmdOutput> {
    let gens = match flags.resolve()? {
        GroupSpec::Weierstrass(w) => {
            let (i1, i2, i3) = w.involutions();
            vec![i1, i2, i3]
        }
        GroupSpec::Jigsaw { j, .. } => j.generators(),
    };
    let verdict = arithmetic_test(&gens);
    let word = if verdict.arithmetic {
        "arithmetic"
    } else {
        "non-arithmetic"
    };
    let mut out = CmdOutput::ok();
    out.lines.push(word.to_string());
    let mut rec = json!({
        "cmd": "arith", "schema": 1,
        "verdict": word,
    });
    if let Some(wit) = &verdict.witness {
        out.lines.push(format!(
            "witness: {} = {} with tr^2/det = {}",
            wit.word,
            mat_str(&wit.element),
            wit.trace_sq_norm
        ));
        rec["witness"] = json!({
            "word": wit.word,
            "element": mat_str(&wit.element),
            "trace_sq_norm": wit.trace_sq_norm.to_string(),
        });
    }
    out.records.push(rec);
    if emit_table {
        for row in word_table(&table_generators(flags)?) {
            let idx: String = row.indices.iter().map(|i| i.to_string()).collect();
            let t1 = row
                .trace1
                .as_ref()
                .map(|t| t.to_string())
                .unwrap_or_else(|| "-".into());
            let t2 = row
                .trace2
                .as_ref()
                .map(|t| t.to_string())
                .unwrap_or_else(|| "-".into());
            out.lines.push(format!(
                "({idx}): {} tr {t1} | {} tr {t2}",
                mat_str(&row.case1),
                mat_str(&row.case2)
            ));
            out.records.push(json!({
                "cmd": "arith-table-row", "schema": 1,
                "indices": row.indices,
                "case1": mat_str(&row.case1), "trace1": t1,
                "case2": mat_str(&row.case2), "trace2": t2,
            }));
        }
    }
    Ok(out)
}

pub fn cmd_scan(bound: u64, workers: Option<usize>) -> Result<CmdOutput> {
    let rows = match workers {
        None => scan_diamonds(bound),
        Some(wk) => {
            if wk == 0 {
                bail!("worker count must be positive");
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(wk)
                .build()
                .context("building thread pool")?
                .install(|| scan_diamonds(bound))
        }
    };
    let mut out = CmdOutput::ok();
    for (l, pairs) in &rows {
        let ps: Vec<String> = pairs.iter().map(|(m, n)| format!("({m},{n})")).collect();
        out.lines.push(format!("l={l}: {}", ps.join(" ")));
        out.records.push(json!({
            "cmd": "scan-row", "schema": 1,
            "l": l,
            "pairs": pairs,
        }));
    }
    Ok(out)
}

pub fn cmd_pm_check(flags: &GroupFlags, budget: usize, cert_out: Option<&Path>) -> Result<CmdOutput> {
    let j = flags.resolve_jigsaw()?;
    let (verdict, cert) = is_pseudomodular(&j, budget);
    let word = match verdict {
        PmVerdict::Pseudomodular => "pseudomodular",
        PmVerdict::Arithmetic => "arithmetic",
        PmVerdict::Unknown => "unknown",
    };
    let mut out = CmdOutput::ok();
    out.lines.push(word.to_string());
    let mut rec = json!({ "cmd": "pm-check", "schema": 1, "verdict": word });
    if let Some(cert) = &cert {
        cert.verify().map_err(|e| anyhow!("certificate failed verification: {e}"))?;
        out.lines.push(format!(
            "cover: {} killer intervals over ({}, {}]",
            cert.intervals.len(),
            cert.window.0,
            cert.window.1
        ));
        rec["intervals"] = json!(cert.intervals.len());
        rec["window"] = json!([cert.window.0.to_string(), cert.window.1.to_string()]);
        if let Some(path) = cert_out {
            std::fs::write(path, cert.to_text())
                .with_context(|| format!("writing certificate to {}", path.display()))?;
            out.lines.push(format!("certificate written to {}", path.display()));
        }
    }
    out.records.push(rec);
    if verdict == PmVerdict::Unknown {
        out.exit = 2;
    }
    Ok(out)
}

fn status_str(s: &SeqStatus) -> (String, Value) {
    match s {
        SeqStatus::Terminated => ("terminated (cusp)".into(), json!({"kind": "terminated"})),
        SeqStatus::Periodic { preperiod, period } => (
            format!("periodic (preperiod {preperiod}, period {period})"),
            json!({"kind": "periodic", "preperiod": preperiod, "period": period}),
        ),
        SeqStatus::Exceeded(n) => (
            format!("no period detected up to length {n}"),
            json!({"kind": "exceeded", "steps": n}),
        ),
    }
}

fn cf_lines(cf: &CFExpansion, out: &mut CmdOutput) {
    let (sline, sjson) = status_str(&cf.status);
    let terms: Vec<String> = cf
        .terms
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect();
    let body = match cf.status {
        SeqStatus::Periodic { preperiod, .. } => {
            let (pre, per) = terms.split_at(preperiod);
            format!("{}; {} | {}", cf.b0, pre.join(" "), per.join(" "))
        }
        _ => format!("{}; {}", cf.b0, terms.join(" ")),
    };
    out.lines.push(body);
    out.lines.push(sline);
    out.records.push(json!({
        "cmd": "seq", "schema": 1, "algorithm": "cf",
        "b0": cf.b0.to_string(),
        "terms": cf.terms.iter()
            .map(|(a, b)| vec![a.to_string(), b.to_string()])
            .collect::<Vec<_>>(),
        "status": sjson,
    }));
}

pub fn cmd_seq(
    flags: &GroupFlags,
    alpha_text: &str,
    algorithm: &str,
    max_steps: Option<usize>,
) -> Result<CmdOutput> {
    let alpha = alpha::parse_alpha(alpha_text)?;
    let max = max_steps.unwrap_or(DEFAULT_MAX_STEPS);
    let spec = flags.resolve()?;
    let is_diamond12 = matches!(&spec, GroupSpec::Jigsaw { diamond: Some((1, 2)), .. });
    let mut out = CmdOutput::ok();
    match algorithm {
        "naive" => {
            let cs = match &spec {
                GroupSpec::Weierstrass(w) => cutting_naive_weierstrass(w, &alpha, max),
                GroupSpec::Jigsaw { j, .. } => cutting_naive_jigsaw(j, &alpha, max),
            };
            let (sline, sjson) = status_str(&cs.status);
            out.lines.push(cs.to_string());
            out.lines.push(sline);
            out.records.push(json!({
                "cmd": "seq", "schema": 1, "algorithm": "naive",
                "alpha": alpha.to_string(),
                "letters": cs.letters,
                "status": sjson,
            }));
        }
        "translation" => {
            let GroupSpec::Weierstrass(w) = &spec else {
                bail!("the translation algorithm runs on Weierstrass parameters");
            };
            let run = cutting_translation(w, &alpha, max);
            let (sline, sjson) = status_str(&run.status);
            out.lines.push(run.word.to_string());
            out.lines.push(sline);
            out.records.push(json!({
                "cmd": "seq", "schema": 1, "algorithm": "translation",
                "alpha": alpha.to_string(),
                "word": run.word.to_string(),
                "steps": run.steps,
                "status": sjson,
            }));
        }
        "cf" => {
            let cf = if is_diamond12 {
                cf_diamond(&alpha, max)
            } else {
                match &spec {
                    GroupSpec::Weierstrass(w) => {
                        let (k1, _, k3) = w.k();
                        if k1 != &Rat::one() || !k3.is_integer() {
                            bail!("the continued fraction needs integral Weierstrass parameters 1, 1/n, n (or the (1,2) diamond)");
                        }
                        let n = u64::try_from(&k3.to_integer())
                            .map_err(|_| anyhow!("type out of range"))?;
                        cf_weierstrass(n, &alpha, max)
                    }
                    GroupSpec::Jigsaw { .. } => {
                        bail!("the continued fraction needs integral Weierstrass parameters 1, 1/n, n (or the (1,2) diamond)")
                    }
                }
            };
            cf_lines(&cf, &mut out);
        }
        "pseudo-euclid" => {
            if !is_diamond12 {
                bail!("the pseudo-euclidean algorithm is specific to --diamond 1 2");
            }
            let run = pseudo_euclid_diamond(&alpha, max);
            let (sline, sjson) = status_str(&run.status);
            out.lines.push(run.word.to_string());
            out.lines.push(format!(
                "quotients: {}",
                run.quotients
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            out.lines.push(sline);
            out.records.push(json!({
                "cmd": "seq", "schema": 1, "algorithm": "pseudo-euclid",
                "alpha": alpha.to_string(),
                "word": run.word.to_string(),
                "steps": run.steps,
                "quotients": run.quotients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "status": sjson,
            }));
        }
        other => bail!("unknown algorithm {other}; use naive | translation | cf | pseudo-euclid"),
    }
    Ok(out)
}

pub fn cmd_render(
    flags: &GroupFlags,
    depth: u32,
    window: (&Rat, &Rat),
    out_path: &Path,
) -> Result<CmdOutput> {
    if window.0 >= window.1 {
        bail!("window must be nonempty");
    }
    let svg = match flags.resolve()? {
        GroupSpec::Weierstrass(w) => render::render_weierstrass(&w, depth, window),
        GroupSpec::Jigsaw { j, .. } => render::render_jigsaw(&j, depth, window),
    };
    std::fs::write(out_path, &svg.text)
        .with_context(|| format!("writing {}", out_path.display()))?;
    let mut out = CmdOutput::ok();
    out.lines
        .push(format!("{} triangles -> {}", svg.triangles, out_path.display()));
    out.records.push(json!({
        "cmd": "render", "schema": 1,
        "triangles": svg.triangles,
        "path": out_path.display().to_string(),
    }));
    Ok(out)
}
