//! `hfree`: constructions, exact search and bounds for H-free subfamilies.
//!
//! Exit codes: 0 on success, 1 when a certificate is false, 2 on usage or
//! input errors.

mod args;
mod manifest;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use hfree_core::comb::{self, identities};
use hfree_core::error::{Error, Result};
use hfree_core::profile::{self, AVector, BVector};
use hfree_core::{bounds, constructions, geometry, io, oracle};
use hfree_core::{Certificate, ConflictHypergraph, DVector, Edge, Family, Pattern};

use args::*;
use manifest::{manifest_path, RunManifest};

/// Result of one command: the artifact text and whether its claim held.
struct Artifact {
    text: String,
    ok: bool,
}

impl Artifact {
    fn json<T: Serialize>(value: &T) -> Result<Self> {
        Ok(Artifact { text: serde_json::to_string(value)? + "\n", ok: true })
    }

    fn certificate(c: &Certificate) -> Self {
        Artifact { text: c.to_json() + "\n", ok: c.result }
    }

    fn family(f: &Family) -> Self {
        Artifact { text: io::family_to_json(f) + "\n", ok: true }
    }
}

struct Context {
    manifest: RunManifest,
}

impl Context {
    fn family(&mut self, path: &Path) -> Result<Family> {
        self.manifest.add_input(path);
        io::load_family(path)
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn bvec(b: &[u64]) -> Result<BVector> {
    BVector::new(b.to_vec())
}

fn pattern_from(ctx: &mut Context, p: &PatternArgs) -> Result<Pattern> {
    let given = [p.b.is_some(), p.sunflower.is_some(), p.pattern.is_some()].iter().filter(|&&x| x).count();
    if given != 1 {
        return Err(usage("give exactly one of --b, --sunflower, --pattern"));
    }
    if let Some(b) = &p.b {
        return Ok(Pattern::Eip(bvec(b)?));
    }
    if let Some(q) = p.sunflower {
        if q == 0 {
            return Err(usage("--sunflower needs q >= 1"));
        }
        return Ok(Pattern::Sunflower { q });
    }
    let path = p.pattern.as_ref().expect("counted above");
    Pattern::hypergraph(ctx.family(path)?)
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| usage(format!("range {s:?} must look like LO:HI")))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| usage(format!("bad number {t:?} in range {s:?}")));
    Ok((num(lo)?, num(hi)?))
}

fn random_family(m: usize, vertices: u32, lo: usize, hi: usize, seed: u64) -> Result<Family> {
    if lo > hi || hi > vertices as usize || lo == 0 {
        return Err(usage(format!("need 1 <= min-size <= max-size <= vertices, got {lo}, {hi}, {vertices}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut tries = 0usize;
    while seen.len() < m {
        tries += 1;
        if tries > 1000 * m.max(1) {
            return Err(usage(format!("could not draw {m} distinct edges")));
        }
        let size = rng.gen_range(lo..=hi);
        let mut members = rand::seq::index::sample(&mut rng, vertices as usize, size)
            .into_iter()
            .map(|v| v as u32)
            .collect::<Vec<_>>();
        members.sort_unstable();
        seen.insert(members);
    }
    Family::from_raw(seen)
}

fn construct(ctx: &mut Context, c: &Construct) -> Result<Artifact> {
    let f = match c {
        Construct::Sunflower { m, r, core } => constructions::build_sunflower(*m, *r, *core)?,
        Construct::Fdk { m, d } => constructions::build_fdk(*m, &DVector::new(d.clone())?)?,
        Construct::Levelint { m, level } => constructions::build_level_intersecting(*m, *level)?,
        Construct::Merge { left, right } => {
            let (f, g) = (ctx.family(left)?, ctx.family(right)?);
            constructions::merge_families(&f, &g)?
        }
        Construct::Pad { family, extra } => constructions::pad_family(&ctx.family(family)?, *extra)?,
        Construct::Sub { family, count } => constructions::take_subfamily(&ctx.family(family)?, *count)?,
        Construct::Plane { q, emit } => {
            let plane = geometry::build_plane(*q)?;
            match emit {
                PlaneEmit::Design => return Ok(Artifact { text: io::design_to_json(&plane)? + "\n", ok: true }),
                PlaneEmit::Dual => geometry::dual_family(&plane)?,
            }
        }
        Construct::Random { m, vertices, min_size, max_size, seed } => {
            random_family(*m, *vertices, *min_size, *max_size, *seed)?
        }
    };
    Ok(Artifact::family(&f))
}

fn cell_label(mask: usize) -> String {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn analyze(ctx: &mut Context, a: &Analyze) -> Result<Artifact> {
    let f = ctx.family(&a.family)?;
    let subset = a.subset.clone().unwrap_or_else(|| (0..a.k).collect());
    if let Some(&bad) = subset.iter().find(|&&i| i >= f.len()) {
        return Err(usage(format!("edge index {bad} out of range (family has {} edges)", f.len())));
    }
    let chosen: Vec<&Edge> = subset.iter().map(|&i| f.edge(i)).collect();
    let venn = profile::venn_profile(&chosen)?;
    let cells: BTreeMap<String, u64> =
        (1..venn.cells().len()).map(|mask| (cell_label(mask), venn.cell(mask))).collect();
    let intersections: BTreeMap<String, u64> =
        (1..venn.cells().len()).map(|mask| (cell_label(mask), venn.intersection_size(mask))).collect();
    let eip = profile::eip_extract(&chosen)?;
    let a_vec = match &eip {
        profile::EipOutcome::Eip(b) => Some(profile::a_from_b(b)?),
        profile::EipOutcome::Violation(_) => None,
    };
    let report = json!({
        "m": f.len(),
        "vertices": f.vertex_count(),
        "uniformity": f.uniformity(),
        "subset": subset,
        "venn": cells,
        "intersections": intersections,
        "union": venn.union_size(),
        "eip": eip,
        "a": a_vec,
        "evenness": profile::evenness_classify(&chosen)?,
    });
    Artifact::json(&report)
}

fn verify(ctx: &mut Context, v: &Verify) -> Result<Artifact> {
    let cert = match v {
        Verify::Pattern { family, b } => constructions::verify_uniform_pattern(&ctx.family(family)?, &bvec(b)?)?,
        Verify::Design { q, design, delete_circle } => {
            let mut plane = match (q, design) {
                (Some(q), None) => geometry::build_plane(*q)?,
                (None, Some(path)) => {
                    ctx.manifest.add_input(path);
                    io::load_design(path)?
                }
                _ => return Err(usage("give exactly one of --q, --design")),
            };
            if let Some(i) = delete_circle {
                plane = plane.without_circle(*i)?;
            }
            geometry::verify_3design(&plane)
        }
        Verify::Identity(id) => identity(id)?,
    };
    Ok(Artifact::certificate(&cert))
}

fn identity(id: &Identity) -> Result<Certificate> {
    match id.which {
        Which::Bdw => match (id.k, id.m, id.k_max, id.m_max) {
            (Some(k), Some(m), None, None) => identities::bdw_identity_check(k, m),
            (None, None, Some(k_hi), Some(m_hi)) => identities::bdw_sweep(id.k_min.unwrap_or(3), k_hi, m_hi),
            _ => Err(usage("bdw needs --k and --m, or --k-max and --m-max (with optional --k-min)")),
        },
        Which::Vdm => match (id.x, id.y, id.z, id.max) {
            (Some(x), Some(y), Some(z), None) => identities::vdm_identity_check(x, y, z),
            (None, None, None, Some(n)) => identities::vdm_sweep(n),
            _ => Err(usage("vdm needs --x, --y and --z, or --max")),
        },
    }
}

type EdgePredicate = Box<dyn Fn(&[&Edge]) -> bool>;

fn homog_predicate(rule: &str) -> Result<EdgePredicate> {
    let common = |es: &[&Edge]| es.iter().skip(1).fold(es[0].clone(), |acc, e| acc.intersection(e)).len();
    if rule == "empty" {
        return Ok(Box::new(move |es: &[&Edge]| common(es) == 0));
    }
    if let Some(n) = rule.strip_prefix("size=") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad predicate {rule:?}")))?;
        return Ok(Box::new(move |es: &[&Edge]| common(es) == n));
    }
    Err(usage(format!("unknown predicate {rule:?}; use `empty` or `size=N`")))
}

fn random_conflicts(n: usize, k: usize, edges: usize, seed: u64) -> Result<ConflictHypergraph> {
    let total = comb::binom_u128(n as u64, k as u64).unwrap_or(u128::MAX);
    if k == 0 || k > n || edges as u128 > total {
        return Err(usage(format!("cannot draw {edges} distinct {k}-sets from {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < edges {
        let mut c: Vec<u32> = rand::seq::index::sample(&mut rng, n, k).into_iter().map(|v| v as u32).collect();
        c.sort_unstable();
        seen.insert(c);
    }
    ConflictHypergraph::from_edges(n, k, seen.into_iter().collect())
}

fn run_oracle(ctx: &mut Context, o: &Oracle) -> Result<Artifact> {
    match o {
        Oracle::Ex { family, pattern } => {
            let f = ctx.family(family)?;
            let p = pattern_from(ctx, pattern)?;
            let r = oracle::ex_exact(&f, &p)?;
            Artifact::json(&json!({
                "pattern": p.describe(),
                "value": r.value,
                "indices": r.indices,
                "witness": r.witness.edges(),
                "explored": r.explored,
                "conflicts": r.conflicts,
            }))
        }
        Oracle::Extract(e) => {
            let f = ctx.family(&e.family)?;
            match e.algo {
                Algo::Sunflower => {
                    let r = f.uniformity().ok_or(Error::NotUniform)?;
                    let s = oracle::sunflower_extract(&f, r)?;
                    Artifact::json(&json!({ "size": s.len(), "sunflower": s.edges() }))
                }
                Algo::Hfree => {
                    let patterns = e.pattern.iter().map(|p| ctx.family(p)).collect::<Result<Vec<_>>>()?;
                    let r = oracle::hfree_extract(&f, &patterns)?;
                    Ok(Artifact {
                        text: serde_json::to_string(&json!({
                            "size": r.indices.len(),
                            "indices": r.indices,
                            "steps": r.steps,
                            "certificate": r.certificate,
                        }))? + "\n",
                        ok: r.certificate.result,
                    })
                }
                Algo::Homog => {
                    let pred = homog_predicate(&e.predicate)?;
                    let r = oracle::homogeneous_extract(&f, e.arity, pred)?;
                    let guarantee = if f.is_empty() { 0 } else { (0.5 * (f.len() as f64).log2()).floor() as usize };
                    Artifact::json(&json!({
                        "size": r.indices.len(),
                        "indices": r.indices,
                        "color": r.color,
                        "pairwise_guarantee": guarantee,
                    }))
                }
            }
        }
        Oracle::Spencer(s) => {
            let g = match (&s.family, s.n, s.edges) {
                (Some(path), None, None) => {
                    let f = ctx.family(path)?;
                    let p = pattern_from(ctx, &s.pattern)?;
                    oracle::conflict_hypergraph(&f, &p)?
                }
                (None, Some(n), Some(edges)) => random_conflicts(n, s.k, edges, s.seed)?,
                _ => return Err(usage("give --family with a pattern, or --n and --edges")),
            };
            let r = oracle::max_independent_spencer(&g)?;
            Ok(Artifact { text: serde_json::to_string(&r)? + "\n", ok: r.holds })
        }
    }
}

fn run_bounds(b: &Bounds) -> Result<Artifact> {
    match b {
        Bounds::Eval { k, b, m } => {
            if let Some(k) = k {
                if *k != b.len() {
                    return Err(Error::ArityMismatch { expected: *k, got: b.len() });
                }
            }
            Artifact::json(&bounds::bounds_eval(&bvec(b)?, *m))
        }
        Bounds::Classify { b1, b2, m } => Artifact::json(&bounds::classify_region(*b1, *b2, *m)?),
        Bounds::Region { m, b1, b2, log_step } => {
            let rows = bounds::region_grid(*m, parse_range(b1)?, parse_range(b2)?, *log_step)?;
            let mut buf = Vec::new();
            bounds::write_region_csv(&rows, &mut buf)?;
            Ok(Artifact { text: String::from_utf8(buf).map_err(|e| Error::Invariant(e.to_string()))?, ok: true })
        }
    }
}

fn run_compute(c: &Compute) -> Result<Artifact> {
    let value: Value = match c {
        Compute::Dfromb { b, m } => {
            let s = comb::d_from_b(&bvec(b)?, *m)?;
            json!({ "d": s.d.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "feasible": s.feasible })
        }
        Compute::Afromd { d, m } => json!({ "a": comb::a_from_d(&DVector::new(d.clone())?, *m)? }),
        Compute::Bfroma { a } => json!({ "b": profile::b_from_a(&AVector::new(a.clone())?)? }),
        Compute::Binom { x, y } => json!({ "x": x, "y": y, "value": comb::binom_ext(*x, *y).to_string() }),
    };
    Artifact::json(&value)
}

fn dispatch(ctx: &mut Context, cmd: &Command) -> Result<Artifact> {
    match cmd {
        Command::Construct(c) => construct(ctx, c),
        Command::Analyze(a) => analyze(ctx, a),
        Command::Verify(v) => verify(ctx, v),
        Command::Oracle(o) => run_oracle(ctx, o),
        Command::Bounds(b) => run_bounds(b),
        Command::Compute(c) => run_compute(c),
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var("HFREE_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("HFREE_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("HFREE_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit(out: Option<&PathBuf>, artifact: &Artifact, manifest: &mut RunManifest) -> Result<()> {
    match out {
        Some(path) => {
            io::write_text(path, &artifact.text)?;
            manifest.add_output(path.display().to_string(), artifact.text.as_bytes());
            io::write_text(&manifest_path(path), &(serde_json::to_string_pretty(manifest)? + "\n"))?;
        }
        None => {
            print!("{}", artifact.text);
            manifest.add_output("stdout".into(), artifact.text.as_bytes());
            eprintln!("{}", serde_json::to_string(manifest)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let mut ctx = Context { manifest: RunManifest::new(argv) };
    let artifact = match dispatch(&mut ctx, &cli.command) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(cli.out.as_ref(), &artifact, &mut ctx.manifest) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if artifact.ok { 0 } else { 1 })
}
