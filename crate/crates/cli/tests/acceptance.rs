//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use itertools_free::combinations;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hfree_core::bounds::{self, RegionLabel, TOLERANCE};
use hfree_core::comb::identities::{bdw_sweep, vdm_sweep};
use hfree_core::comb::{a_from_d, d_from_b};
use hfree_core::constructions::{build_fdk, build_level_intersecting, build_sunflower, verify_uniform_pattern};
use hfree_core::geometry::{build_plane, dual_family, verify_3design};
use hfree_core::oracle::{ex_exact, homogeneous_extract, max_independent_spencer, Pattern};
use hfree_core::profile::{b_from_a, evenness_classify, measured_a, venn_profile, EvennessVerdict};
use hfree_core::{io, BVector, ConflictHypergraph, DVector, Edge, Family};

/// Lexicographic k-subsets of `0..n`, kept local so the suite depends only
/// on the public API under test.
mod itertools_free {
    pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                if n - i < k - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
}

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($msg)+)),
        }
    };
}

fn bv(b: &[u64]) -> BVector {
    BVector::new(b.to_vec()).unwrap()
}

fn pick<'a>(f: &'a Family, idx: &[usize]) -> Vec<&'a Edge> {
    idx.iter().map(|&i| f.edge(i)).collect()
}

/// The four-edge listing of `F_4^{1,2,3}`, vertex names as written.
fn listed_f4_123() -> Vec<Vec<&'static str>> {
    vec![
        vec!["v1", "v12_1", "v12_2", "v13_1", "v13_2", "v14_1", "v14_2", "w1", "w2", "w3"],
        vec!["v2", "v12_1", "v12_2", "v23_1", "v23_2", "v24_1", "v24_2", "w1", "w2", "w3"],
        vec!["v3", "v13_1", "v13_2", "v23_1", "v23_2", "v34_1", "v34_2", "w1", "w2", "w3"],
        vec!["v4", "v14_1", "v14_2", "v24_1", "v24_2", "v34_1", "v34_2", "w1", "w2", "w3"],
    ]
}

fn fdk_listing() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_hfree"))
        .args(["construct", "fdk", "--m", "4", "--d", "1,2,3"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "exit status {:?}", out.status);
    let built = io::parse_family(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
    ensure!(built.len() == 4, "{} edges", built.len());
    ensure!(built.edges().iter().all(|e| e.len() == 10), "edge sizes {:?}", built.edges().iter().map(Edge::len).collect::<Vec<_>>());

    let mut ids = BTreeMap::new();
    let listed: Vec<Edge> = listed_f4_123()
        .into_iter()
        .map(|names| {
            let members = names
                .into_iter()
                .map(|n| {
                    let next = ids.len() as u32;
                    *ids.entry(n).or_insert(next)
                })
                .collect();
            Edge::new(members).unwrap()
        })
        .collect();
    let got = venn_profile(built.edges()).unwrap();
    let want = venn_profile(&listed).unwrap();
    ensure!(got == want, "Venn cells differ: built {:?} vs listed {:?}", got.cells(), want.cells());
    for t in combinations(4, 3) {
        let p = venn_profile(&pick(&built, &t)).unwrap();
        ensure!(p.level_constant() == Some(bv(&[3, 2, 3])), "triple {t:?} has cells {:?}", p.cells());
        ensure!(measured_a(&p).as_slice() == [10, 5, 3], "triple {t:?} has a = {:?}", measured_a(&p).as_slice());
    }
    Ok("15 Venn cells match the listing; all 4 triples a=(10,5,3), b=(3,2,3)".into())
}

fn bdw() -> Outcome {
    let c = bdw_sweep(3, 8, 25).map_err(|e| e.to_string())?;
    ensure!(c.result, "{}", c.to_json());
    Ok(format!("{} instances, B*D*W' = I", c.parameters["instances"]))
}

fn vdm() -> Outcome {
    let c = vdm_sweep(20).map_err(|e| e.to_string())?;
    ensure!(c.result, "{}", c.to_json());
    Ok(format!("{} instances", c.parameters["instances"]))
}

fn inversive_planes() -> Outcome {
    let mut detail = Vec::new();
    for q in [3u32, 5, 7] {
        let plane = build_plane(q).map_err(|e| e.to_string())?;
        ensure!(plane.circles().len() == (q * (q * q + 1)) as usize, "q={q}: {} circles", plane.circles().len());
        let design = verify_3design(&plane);
        ensure!(design.result, "q={q}: {}", design.to_json());
        let dual = dual_family(&plane).unwrap();
        let b = bv(&[(q * q - q - 1) as u64, q as u64, 1]);
        let pattern = verify_uniform_pattern(&dual, &b).unwrap();
        ensure!(pattern.result, "q={q}: {}", pattern.to_json());
        let mut line = format!("q={q}: {} circles, {} triples", plane.circles().len(), pattern.parameters["subsets"]);
        if q <= 5 {
            let ex = ex_exact(&dual, &Pattern::Eip(b)).unwrap();
            ensure!(ex.value == 2, "q={q}: ex = {}", ex.value);
            line += ", ex = 2";
        }
        detail.push(line);
    }
    Ok(detail.join("; "))
}

fn fdk_upper() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..30 {
        let k = rng.gen_range(3..=4);
        let m = rng.gen_range(k..=12);
        let mut d: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        if d[..k - 1].iter().all(|&x| x == 0) {
            d[rng.gen_range(0..k - 1)] = 1;
        }
        let b = b_from_a(&a_from_d(&DVector::new(d.clone()).unwrap(), m).unwrap()).unwrap();
        let solved = d_from_b(&b, m).unwrap();
        ensure!(solved.feasible, "case {case}: b={b} infeasible at m={m}");
        let f = build_fdk(m, &solved.dvector().unwrap()).unwrap();
        let cert = verify_uniform_pattern(&f, &b).unwrap();
        ensure!(cert.result, "case {case}: {}", cert.to_json());
        let ex = ex_exact(&f, &Pattern::Eip(b.clone())).unwrap();
        ensure!(ex.value == k - 1, "case {case}: k={k} m={m} b={b}: ex = {}", ex.value);
    }
    Ok("30 seeded (k,m,b): pattern verified and ex = k-1".into())
}

fn sunflowers() -> Outcome {
    let mut cases = 0;
    for m in 3..=12usize {
        for q in 3..=m {
            let r = 2 + m % 3;
            let core = (q + m) % r;
            let f = build_sunflower(m, r, core).unwrap();
            let ex = ex_exact(&f, &Pattern::Sunflower { q }).unwrap();
            ensure!(ex.value == q - 1, "m={m} q={q} r={r} core={core}: ex = {}", ex.value);
            cases += 1;
        }
    }
    Ok(format!("{cases} (m,q) pairs give ex = q-1"))
}

/// Family whose disjointness graph is a seeded random graph: every
/// intersecting pair shares one private vertex.
fn random_intersection_family(m: usize, rng: &mut ChaCha8Rng) -> Family {
    let mut edges: Vec<Vec<u32>> = (0..m).map(|i| vec![i as u32]).collect();
    let mut next = m as u32;
    for i in 0..m {
        for j in i + 1..m {
            if rng.gen_bool(0.5) {
                edges[i].push(next);
                edges[j].push(next);
                next += 1;
            }
        }
    }
    Family::from_raw(edges).unwrap()
}

fn even_uneven() -> Outcome {
    for m in 1..=8usize {
        for level in 1..m {
            let f = build_level_intersecting(m, level).unwrap();
            for k in 1..=m {
                for s in combinations(m, k) {
                    let v = evenness_classify(&pick(&f, &s)).unwrap();
                    ensure!(v == EvennessVerdict::Even, "m={m} L={level} subset {s:?}: {v:?}");
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let disjoint = |es: &[&Edge]| es[0].intersection_len(es[1]) == 0;
    let mut sizes = Vec::new();
    for case in 0..20 {
        let m = [16usize, 64, 256, 1024, 4096][case % 5];
        let f = if case % 2 == 0 {
            random_intersection_family(m, &mut rng)
        } else {
            let n = rng.gen_range(8..40u32);
            let mut raw = std::collections::BTreeSet::new();
            while raw.len() < m {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n * n);
                raw.insert(if a == b { vec![a, n + c] } else { vec![a.min(b), a.max(b), n + c] });
            }
            Family::from_raw(raw).unwrap()
        };
        let r = homogeneous_extract(&f, 2, disjoint).unwrap();
        let need = (0.5 * (f.len() as f64).log2()).floor() as usize;
        ensure!(r.indices.len() >= need, "case {case}: size {} < {need} on m={}", r.indices.len(), f.len());
        for p in combinations(r.indices.len(), 2) {
            let es = [f.edge(r.indices[p[0]]), f.edge(r.indices[p[1]])];
            ensure!(disjoint(&es) == r.color, "case {case}: pair {p:?} breaks homogeneity");
        }
        sizes.push(r.indices.len());
    }
    Ok(format!("level families all Even; homogeneous sizes {sizes:?}"))
}

fn bound_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut both, mut oracle_checks) = (0, 0);
    for case in 0..1000 {
        let k = rng.gen_range(3..=5);
        let m = rng.gen_range(6..=12);
        let b = if case % 2 == 0 {
            let mut d: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=2)).collect();
            d[0] += 1;
            b_from_a(&a_from_d(&DVector::new(d).unwrap(), m).unwrap()).unwrap()
        } else {
            let top = rng.gen_range(0..=3);
            BVector::new((0..k).map(|i| if i + 1 == k { top } else { rng.gen_range(0..=60) }).collect()).unwrap()
        };
        let report = bounds::bounds_eval(&b, m);
        if let (Some(lo), Some(hi)) = (report.lower_thm24, report.upper_thm24_value) {
            ensure!(lo <= hi + TOLERANCE, "case {case}: b={b} m={m}: lower {lo} > upper {hi}");
            both += 1;
        }
        let solved = d_from_b(&b, m).unwrap();
        if solved.feasible && b.as_slice()[..k - 1].iter().any(|&x| x > 0) {
            let f = build_fdk(m, &solved.dvector().unwrap()).unwrap();
            let ex = ex_exact(&f, &Pattern::Eip(b.clone())).unwrap();
            ensure!(ex.value == k - 1, "case {case}: ex = {} for b={b} m={m}", ex.value);
            for (name, v) in report.lower_bounds() {
                ensure!((v - TOLERANCE).ceil() as usize <= ex.value, "case {case}: b={b} m={m}: ceil({name}={v}) > ex={}", ex.value);
            }
            oracle_checks += 1;
        }
    }
    Ok(format!("{both} (b,m) with both alpha bounds; {oracle_checks} oracle cross-checks"))
}

fn spencer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut min_slack, mut sparse_skipped) = (f64::INFINITY, 0);
    for case in 0..100 {
        let n = rng.gen_range(4..=15usize);
        let all = combinations(n, 3);
        // Average degree 3e/n must reach 1 for the averaging bound to apply.
        let lo = n.div_ceil(3);
        let e = rng.gen_range(lo..=all.len());
        let mut chosen = std::collections::BTreeSet::new();
        while chosen.len() < e {
            chosen.insert(rng.gen_range(0..all.len()));
        }
        let conflicts = chosen.iter().map(|&i| all[i].iter().map(|&v| v as u32).collect()).collect();
        let g = ConflictHypergraph::from_edges(n, 3, conflicts).unwrap();
        let r = max_independent_spencer(&g).unwrap();
        if r.average_degree < 1.0 {
            sparse_skipped += 1;
            continue;
        }
        ensure!(r.holds, "case {case}: n={n} e={e}: alpha {} < bound {}", r.alpha, r.bound);
        min_slack = min_slack.min(r.alpha as f64 - r.bound);
    }
    ensure!(sparse_skipped == 0, "{sparse_skipped} graphs below average degree 1");
    Ok(format!("100 graphs, min(alpha - bound) = {min_slack:.3}"))
}

fn regions() -> Outcome {
    let m = 100;
    let rows = bounds::region_grid(m, (1, 10_000), (1, 10_000), 1.25).map_err(|e| e.to_string())?;
    for r in &rows {
        let lower = [r.lower24, r.lower25].into_iter().flatten().fold(0.0f64, f64::max);
        let claims_two = matches!(r.label, RegionLabel::BoundedFEqKMinus1 | RegionLabel::FEq2Inversive);
        ensure!(!(claims_two && lower > 2.0 + TOLERANCE), "cell ({},{}) labeled {:?} but lower bound {lower}", r.b1, r.b2, r.label);
        ensure!(!(r.label == RegionLabel::UnboundedLower && lower <= 2.0 + TOLERANCE), "cell ({},{}) unbounded without a bound", r.b1, r.b2);
        if r.b1 >= (m as u64 - 3) * r.b2 {
            ensure!(r.label == RegionLabel::BoundedFEqKMinus1, "cell ({},{}) labeled {:?}", r.b1, r.b2, r.label);
        }
    }
    for q in [3u64, 5, 7] {
        let rep = bounds::classify_region(q * q - q - 1, q, (q * q + 1) as usize).unwrap();
        ensure!(rep.label == RegionLabel::FEq2Inversive, "q={q}: {:?}", rep.label);
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &rows {
        *counts.entry(r.label.as_str()).or_default() += 1;
    }
    Ok(format!("{} cells {counts:?}; plane points labeled F_EQ_2_INVERSIVE", rows.len()))
}

fn asymptotic_gap() -> Outcome {
    let b = bv(&[5, 3, 1]);
    let necessary = bounds::necessary_f2_check(&b, 10).unwrap();
    ensure!(!necessary, "inequality unexpectedly holds");
    let dual = dual_family(&build_plane(3).unwrap()).unwrap();
    let ex = ex_exact(&dual, &Pattern::Eip(b)).unwrap();
    ensure!(ex.value == 2, "ex = {}", ex.value);
    let rep = bounds::classify_region(5, 3, 10).unwrap();
    ensure!(rep.thm72_necessary_violated, "advisory flag not set");
    ensure!(rep.label == RegionLabel::FEq2Inversive, "label {:?}", rep.label);
    Ok("necessary inequality false at (5,3,1), m=10, while ex = 2; advisory flag set".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "F_4^{1,2,3} listing reproduced", Duration::from_secs(1), fdk_listing),
        (2, "B*D*W' = I for 3<=k<=8, k<=m<=25", Duration::from_secs(1), bdw),
        (3, "binomial convolution identity for x,y,z <= 20", Duration::from_secs(1), vdm),
        (4, "inversive planes q=3,5,7 and their duals", Duration::from_secs(30), inversive_planes),
        (5, "F_m^{d} realizes ex = k-1", Duration::from_secs(60), fdk_upper),
        (6, "sunflower construction gives ex = q-1", Duration::from_secs(10), sunflowers),
        (7, "level-intersecting evenness and homogeneous extraction", Duration::from_secs(60), even_uneven),
        (8, "bound consistency sweep", Duration::from_secs(60), bound_sweep),
        (9, "independence number vs averaging bound", Duration::from_secs(30), spencer),
        (10, "region grid labels", Duration::from_secs(30), regions),
        (11, "necessary condition gap at (5,3,1), m=10", Duration::from_secs(30), asymptotic_gap),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?} ({detail})")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {id:>2}: {name} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2}: {name} [{elapsed:.2?}] {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
