mod common;

use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use hompat::algebra::{join, spasm, treewidth};
use hompat::families::{cfi_pair, cycle_hierarchy_pair, cycle_union_pair, fig1_pair, fig2_pair};
use hompat::features::{advise, export_features, parse_stats_comment, AdviceVerdict, FeatureOptions, GainRule, Normalize};
use hompat::hom::{hom_count_brute, hom_count_brute_rooted, hom_count_dp, sub_count, SubgraphPlan};
use hompat::trees::{enumerate_pattern_trees, hom_pattern_tree, theorem1_check, EnumerationBudget, PatternTree, WitnessSearch};
use hompat::wl::{f_wl, k_wl, wl1};
use hompat::{Graph, LabelAlphabet, RootedPattern};
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

/// Criteria whose stated expectation cannot hold for a correct implementation, with the single
/// failed check each is expected to report.
const UNATTAINABLE: &[(u32, &str)] = &[(
    9,
    "cfi_pair(K4) has 16+16 vertices (sum of 2^(deg-1) over K4), expected 32+32",
)];

static SERIAL: Mutex<()> = Mutex::new(());

type Checks = Vec<String>;

fn check(failures: &mut Checks, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Checks) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut failures = body();
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut report = format!("{status} criterion {id:>2} {name} ({:.2}s)\n", elapsed.as_secs_f64());
    for f in &failures {
        report.push_str(&format!("       {f}\n"));
    }
    let known = UNATTAINABLE.iter().find(|(c, _)| *c == id);
    if let Some((_, expected)) = known {
        report.push_str(&format!("       known unattainable: {expected}\n"));
    }
    // bypasses the harness's output capture so the summary shows in every run
    let _ = std::io::stdout().lock().write_all(report.as_bytes());
    match known {
        Some((_, expected)) => {
            assert_eq!(failures, vec![expected.to_string()], "criterion {id} failed differently than recorded");
        }
        None => assert!(failures.is_empty(), "criterion {id} failed: {failures:?}"),
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn c01_fig1_triangles() {
    criterion(1, "fig1 fixture", secs(1), || {
        let mut f = Checks::new();
        let (g, h) = fig1_pair();
        let k3 = RootedPattern::clique(3);
        let cg = hom_count_dp(&k3, &g).counts;
        let ch = hom_count_dp(&k3, &h).counts;
        check(&mut f, cg == vec![2; 6], || format!("hom(K3, G1^v) = {cg:?}"));
        check(&mut f, ch == vec![0; 6], || format!("hom(K3, H1^v) = {ch:?}"));
        for v in 0..6 {
            let (bg, bh) = (hom_count_brute_rooted(&k3, &g, v).unwrap(), hom_count_brute_rooted(&k3, &h, v).unwrap());
            check(&mut f, bg == 2 && bh == 0, || format!("brute at {v}: {bg}, {bh}"));
        }
        let w = wl1(&g, &h, None).verdict;
        check(&mut f, !w.distinguished, || format!("1-WL: {w:?}"));
        let fw = f_wl(&g, &h, &[k3], None).unwrap().verdict;
        check(&mut f, fw.distinguished && fw.at_round == Some(0), || format!("K3-WL: {fw:?}"));
        f
    });
}

#[test]
fn c02_fig2_rounds_and_witness() {
    criterion(2, "fig2 fixture", secs(1), || {
        let mut f = Checks::new();
        let (g, h) = fig2_pair();
        let k3 = RootedPattern::clique(3);
        let r = f_wl(&g, &h, std::slice::from_ref(&k3), None).unwrap();
        check(&mut f, r.verdict.distinguished && r.verdict.at_round == Some(1), || {
            format!("K3-WL: {:?}", r.verdict)
        });
        let tree = PatternTree::new(vec![0, 0], vec![None, Some(0)], vec![vec![0], vec![1]]).unwrap();
        let pats = [k3.clone()];
        let (a, b) = (hom_pattern_tree(&tree, &pats, &g).unwrap()[4], hom_pattern_tree(&tree, &pats, &h).unwrap()[4]);
        check(&mut f, (a, b) == (0, 4), || format!("witness tree counts ({a}, {b})"));
        let flat = tree.flatten(&pats).unwrap();
        let (ba, bb) = (
            hom_count_brute_rooted(&flat, &g, 4).unwrap(),
            hom_count_brute_rooted(&flat, &h, 4).unwrap(),
        );
        check(&mut f, (ba, bb) == (0, 4), || format!("witness tree by brute force ({ba}, {bb})"));
        let report = theorem1_check(&g, &h, &pats, 1, &EnumerationBudget::default(), Some((4, 4))).unwrap();
        match &report.witness {
            WitnessSearch::Found(w) => check(&mut f, (w.left, w.right) == (0, 4), || {
                format!("searched witness counts ({}, {})", w.left, w.right)
            }),
            other => f.push(format!("no witness found: {other:?}")),
        }
        f
    });
}

#[test]
fn c03_dp_matches_brute() {
    criterion(3, "DP equals brute force", secs(60), || {
        let mut f = Checks::new();
        let mut patterns = vec![RootedPattern::clique(3), RootedPattern::clique(4)];
        patterns.extend((3..=8).map(RootedPattern::cycle));
        patterns.extend((1..=4).map(RootedPattern::path));
        patterns.extend(spasm(&RootedPattern::cycle(4)).unwrap());
        let mut rng = rng(3);
        let mut compared = 0usize;
        for i in 0..300 {
            let n = rng.gen_range(1..=12);
            let p = if i % 2 == 0 { 0.3 } else { 0.5 };
            let g = random_graph(&mut rng, &format!("g{i}"), n, p, 3);
            for pat in &patterns {
                let dp = hom_count_dp(pat, &g);
                check(&mut f, !dp.overflow, || format!("overflow {} in {}", pat.id(), g.id()));
                for v in 0..n {
                    let b = hom_count_brute_rooted(pat, &g, v).unwrap();
                    compared += 1;
                    if dp.counts.get(v) != Some(&b) {
                        f.push(format!("{} at {}^{v}: dp {:?} brute {b}", pat.id(), g.id(), dp.counts.get(v)));
                    }
                }
            }
        }
        println!("       {} patterns, {compared} anchored comparisons", patterns.len());
        f
    });
}

#[test]
fn c04_subgraph_identity() {
    criterion(4, "subgraph counts by inversion", secs(60), || {
        let mut f = Checks::new();
        let mut rng = rng(4);
        for i in 0..300 {
            let labels = rng.gen_range(1..=2);
            let p = random_pattern(&mut rng, &format!("p{i}"), 5, 0.4, labels);
            let n = rng.gen_range(1..=9);
            let g = random_graph(&mut rng, &format!("g{i}"), n, 0.45, labels);
            let all = SubgraphPlan::new(&p).unwrap().sub_all(&g).unwrap();
            for v in 0..n {
                let want = oracle_sub(&p, &g, v);
                let one = sub_count(&p, &g, v).unwrap();
                if all[v] != want || one != want {
                    f.push(format!("instance {i} at {v}: plan {} single {one} enumeration {want}", all[v]));
                }
            }
        }
        f
    });
}

#[test]
fn c05_tree_recursion() {
    criterion(5, "pattern tree recursion", secs(120), || {
        let mut f = Checks::new();
        let mut rng = rng(5);
        let pats = vec![RootedPattern::clique(3), RootedPattern::edge(), RootedPattern::path(2)];
        let stream = enumerate_pattern_trees(&pats, &[0, 1], &EnumerationBudget::new(2, 4, 1)).unwrap();
        let trees: Vec<&PatternTree> = stream.trees.choose_multiple(&mut rng, 200).collect();
        check(&mut f, trees.len() == 200, || format!("only {} trees in the budget", trees.len()));
        let graphs: Vec<Graph> = (0..50)
            .map(|i| {
                let n = rng.gen_range(2..=8);
                random_graph(&mut rng, &format!("g{i}"), n, 0.35, 2)
            })
            .collect();
        for t in &trees {
            let flat = t.flatten(&pats).unwrap();
            for g in &graphs {
                let rec = hom_pattern_tree(t, &pats, g).unwrap();
                for (v, &r) in rec.iter().enumerate() {
                    let b = hom_count_brute_rooted(&flat, g, v).unwrap();
                    if r != b {
                        f.push(format!("tree of {} vertices at {}^{v}: {r} vs {b}", flat.n(), g.id()));
                    }
                }
            }
        }
        f
    });
}

#[test]
fn c06_forward_direction() {
    criterion(6, "refinement implies equal tree counts", secs(300), || {
        let mut f = Checks::new();
        let mut rng = rng(6);
        let mut pairs = vec![fig1_pair(), fig2_pair(), cycle_union_pair(3).unwrap(), cycle_hierarchy_pair(4).unwrap()];
        pairs.push(cfi_pair(&RootedPattern::clique(3), None).unwrap());
        for i in 0..50 {
            let n = rng.gen_range(4..=9);
            let labels = 1 + (i % 2) as u32;
            let g = random_graph(&mut rng, &format!("a{i}"), n, 0.35, labels);
            let h = if i % 3 == 0 {
                shuffled(&mut rng, &g, &format!("b{i}"))
            } else {
                random_graph(&mut rng, &format!("b{i}"), n, 0.35, labels)
            };
            pairs.push((g, h));
        }
        let sets = [vec![], vec![RootedPattern::clique(3)], vec![RootedPattern::cycle(3), RootedPattern::cycle(4)]];
        let budget = EnumerationBudget::default();
        let mut trees = 0;
        for (g, h) in &pairs {
            for set in &sets {
                for d in 0..=2 {
                    let r = theorem1_check(g, h, set, d, &budget, None).unwrap();
                    trees += r.trees_checked;
                    check(&mut f, !r.truncated, || format!("stream truncated on {}/{}", g.id(), h.id()));
                    for v in &r.forward_violations {
                        f.push(format!("{}/{} depth {d}: {:?} vs {:?}", g.id(), h.id(), v.a, v.b));
                    }
                }
            }
        }
        println!("       {} pairs, {trees} tree checks", pairs.len());
        f
    });
}

#[test]
fn c07_cycle_unions() {
    criterion(7, "cycle unions", secs(60), || {
        let mut f = Checks::new();
        for m in [3, 4] {
            let (g, h) = cycle_union_pair(m).unwrap();
            let all = connected_rooted_patterns(m);
            let r = f_wl(&g, &h, &all, None).unwrap().verdict;
            check(&mut f, !r.distinguished, || format!("m={m}: {} patterns distinguish: {r:?}", all.len()));
            let c = Graph::cycle(m + 1);
            let (a, b) = (hom_count_brute(&c, &g, None).unwrap(), hom_count_brute(&c, &h, None).unwrap());
            check(&mut f, a != b, || format!("m={m}: hom(C{}) equal at {a}", m + 1));
            let k2 = k_wl(&g, &h, 2, None).unwrap();
            check(&mut f, k2.distinguished, || format!("m={m}: 2-WL does not distinguish"));
        }
        f
    });
}

#[test]
fn c08_cycle_hierarchy() {
    criterion(8, "cycle hierarchy", secs(30), || {
        let mut f = Checks::new();
        for k in [4, 5] {
            let (g, h) = cycle_hierarchy_pair(k).unwrap();
            let short: Vec<RootedPattern> = (3..k).map(RootedPattern::cycle).collect();
            let r = f_wl(&g, &h, &short, None).unwrap().verdict;
            check(&mut f, !r.distinguished, || format!("k={k}: C3..C{} distinguish: {r:?}", k - 1));
            let long: Vec<RootedPattern> = (3..=k).map(RootedPattern::cycle).collect();
            let r = f_wl(&g, &h, &long, None).unwrap().verdict;
            check(&mut f, r.distinguished && r.at_round == Some(0), || format!("k={k}: C3..C{k}: {r:?}"));
        }
        f
    });
}

#[test]
fn c09_parity_construction() {
    criterion(9, "parity construction", secs(120), || {
        let mut f = Checks::new();
        let k3 = RootedPattern::clique(3);
        let (t, u) = cfi_pair(&k3, None).unwrap();
        check(&mut f, (t.n(), u.n()) == (6, 6), || format!("cfi_pair(K3) has {}+{} vertices", t.n(), u.n()));
        let (ht, hu) = (hom_count_brute(k3.graph(), &t, None).unwrap(), hom_count_brute(k3.graph(), &u, None).unwrap());
        check(&mut f, (ht, hu) == (0, 12), || format!("hom(K3) = ({ht}, {hu})"));
        check(&mut f, !wl1(&t, &u, None).verdict.distinguished, || "1-WL distinguishes cfi(K3)".into());
        check(&mut f, k_wl(&t, &u, 2, None).unwrap().distinguished, || "2-WL misses cfi(K3)".into());

        let k4 = RootedPattern::clique(4);
        let (t, u) = cfi_pair(&k4, None).unwrap();
        check(&mut f, (t.n(), u.n()) == (32, 32), || {
            format!(
                "cfi_pair(K4) has {}+{} vertices (sum of 2^(deg-1) over K4), expected 32+32",
                t.n(),
                u.n()
            )
        });
        let (ht, hu) = (hom_count_brute(k4.graph(), &t, None).unwrap(), hom_count_brute(k4.graph(), &u, None).unwrap());
        check(&mut f, ht == 0 && hu != 0, || format!("hom(K4) = ({ht}, {hu})"));
        let dp = (
            hompat::hom::hom_count(k4.graph(), &t).unwrap(),
            hompat::hom::hom_count(k4.graph(), &u).unwrap(),
        );
        check(&mut f, dp == (ht, hu), || format!("DP hom(K4) = {dp:?}"));
        let v = k_wl(&t, &u, 2, None).unwrap();
        check(&mut f, !v.distinguished, || format!("2-WL distinguishes cfi(K4): {v:?}"));
        println!("       hom(K4, cfi(K4)) = ({ht}, {hu})");
        f
    });
}

#[test]
fn c10_join_redundancy() {
    criterion(10, "join redundancy", secs(120), || {
        let mut f = Checks::new();
        let mut rng = rng(10);
        let mut undistinguished = 0;
        for i in 0..100 {
            let labels = rng.gen_range(1..=2);
            let fset: Vec<RootedPattern> = (0..rng.gen_range(0..=2))
                .map(|j| random_pattern(&mut rng, &format!("f{i}_{j}"), 4, 0.5, labels))
                .collect();
            let p1 = random_pattern(&mut rng, &format!("p{i}"), 4, 0.5, labels);
            let p2 = loop {
                let q = random_pattern(&mut rng, &format!("q{i}"), 4, 0.5, labels);
                if q.root_label() == p1.root_label() {
                    break q;
                }
            };
            let n = rng.gen_range(6..=10);
            let (g, h) = match i % 3 {
                0 => {
                    let g = random_graph(&mut rng, &format!("g{i}"), n, 0.4, labels);
                    let h = shuffled(&mut rng, &g, &format!("h{i}"));
                    (g, h)
                }
                1 => (
                    random_two_regular(&mut rng, &format!("g{i}"), n),
                    random_two_regular(&mut rng, &format!("h{i}"), n),
                ),
                _ => (
                    random_graph(&mut rng, &format!("g{i}"), n, 0.4, labels),
                    random_graph(&mut rng, &format!("h{i}"), n, 0.4, labels),
                ),
            };
            let mut separate = fset.clone();
            separate.extend([p1.clone(), p2.clone()]);
            let mut joined = fset.clone();
            joined.push(join(&p1, &p2).unwrap());
            if !f_wl(&g, &h, &separate, None).unwrap().verdict.distinguished {
                undistinguished += 1;
                let r = f_wl(&g, &h, &joined, None).unwrap().verdict;
                check(&mut f, !r.distinguished, || format!("triple {i}: join distinguishes {r:?}"));
            }
        }
        println!("       {undistinguished} of 100 triples undistinguished by the separate patterns");
        f
    });
}

#[test]
fn c11_advisor_golden() {
    criterion(11, "advisor verdicts", secs(10), || {
        let mut f = Checks::new();
        let bowtie = RootedPattern::new(
            Graph::new("bowtie", 5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap(),
            0,
        )
        .unwrap();
        let k3 = RootedPattern::clique(3);
        let k4 = RootedPattern::clique(4);
        let r = advise(std::slice::from_ref(&k3), &[bowtie, k4.clone()]).unwrap();
        let want = AdviceVerdict::Redundant {
            factors: vec!["K3".into(), "K3".into()],
        };
        check(&mut f, r.candidates[0].verdict == want, || format!("bowtie: {:?}", r.candidates[0].verdict));
        let want = AdviceVerdict::GuaranteedGain { rule: GainRule::Treewidth };
        check(&mut f, r.candidates[1].verdict == want, || format!("K4: {:?}", r.candidates[1].verdict));
        check(&mut f, r.wl_bound == 3, || format!("bound {} for {{K3}} + K4", r.wl_bound));
        let r = advise(&[k3, k4], &[RootedPattern::cycle(5)]).unwrap();
        let want = AdviceVerdict::GuaranteedGain { rule: GainRule::NoHomToQ };
        check(&mut f, r.candidates[0].verdict == want, || format!("C5: {:?}", r.candidates[0].verdict));
        check(&mut f, r.wl_bound == 3, || format!("bound {} for {{K3, K4}} + C5", r.wl_bound));
        let json = r.to_json();
        check(&mut f, json["candidates"][0]["rule"] == "no-hom-to-q", || format!("rule spelling {json}"));
        f
    });
}

fn synthetic(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(3..=12);
            let p = rng.gen_range(0.2..0.6);
            random_graph(&mut rng, &format!("s{i}"), n, p, 2)
        })
        .collect()
}

fn feature_patterns() -> Vec<RootedPattern> {
    vec![
        RootedPattern::clique(3),
        RootedPattern::edge(),
        RootedPattern::path(2),
        RootedPattern::cycle(4),
        RootedPattern::clique(4),
    ]
}

fn export(graphs: &[Graph], normalize: Normalize) -> String {
    let opts = FeatureOptions {
        normalize,
        ..Default::default()
    };
    let mut buf = Vec::new();
    export_features(&mut buf, graphs, &feature_patterns(), &LabelAlphabet::new(), &opts, None).unwrap();
    String::from_utf8(buf).unwrap()
}

fn table(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn c12_normalization() {
    criterion(12, "log-z normalisation", secs(30), || {
        let mut f = Checks::new();
        let graphs = synthetic(12, 1000);
        let raw = table(&export(&graphs, Normalize::None));
        let text = export(&graphs, Normalize::LogZ);
        let z = table(&text);
        let stats = parse_stats_comment(&text).unwrap();
        check(&mut f, stats.len() == feature_patterns().len(), || format!("{} stats lines", stats.len()));
        check(&mut f, raw.len() == z.len(), || "row counts differ".into());
        for (j, (name, s)) in stats.iter().enumerate() {
            let col: Vec<f64> = z.iter().map(|r| r[3 + j].parse().unwrap()).collect();
            let counts: Vec<u128> = raw.iter().map(|r| r[3 + j].parse().unwrap()).collect();
            let logs: Vec<f64> = counts.iter().map(|&c| (c as f64).ln_1p()).collect();
            let (lm, ls) = mean_std(&logs);
            check(&mut f, (lm - s.mean).abs() < 1e-9 && (ls - s.std).abs() < 1e-9, || {
                format!("{name}: header ({}, {}) vs recomputed ({lm}, {ls})", s.mean, s.std)
            });
            if s.constant {
                check(&mut f, col.iter().all(|&x| x == 0.0), || format!("{name}: constant column not zero"));
            } else {
                let (m, sd) = mean_std(&col);
                check(&mut f, m.abs() < 1e-9, || format!("{name}: mean {m}"));
                check(&mut f, (sd - 1.0).abs() < 1e-9, || format!("{name}: std {sd}"));
            }
            let bad = counts.iter().zip(&col).filter(|(&c, &x)| s.inverse(x) != c).count();
            check(&mut f, bad == 0, || format!("{name}: {bad} counts not reconstructed"));
        }
        f
    });
}

#[test]
fn c13_treewidth_golden() {
    criterion(13, "treewidth values", secs(10), || {
        let mut f = Checks::new();
        let tree = Graph::new("tree", 7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        let bowtie = join(&RootedPattern::clique(3), &RootedPattern::clique(3)).unwrap().into_graph();
        let cases = [
            (tree, 1),
            (Graph::path(6), 1),
            (Graph::cycle(5), 2),
            (Graph::clique(4), 3),
            (Graph::clique(5), 4),
            (bowtie, 2),
        ];
        for (g, want) in &cases {
            let (w, td) = treewidth(g).unwrap();
            check(&mut f, w == *want, || format!("{}: {w}, expected {want}", g.id()));
            check(&mut f, td.width() == *want as isize, || format!("{}: decomposition width {}", g.id(), td.width()));
            if let Err(e) = check_decomposition(g, &td) {
                f.push(format!("{}: {e}", g.id()));
            }
            let o = oracle_treewidth(g);
            check(&mut f, o == *want, || format!("{}: elimination oracle {o}", g.id()));
        }
        f
    });
}

fn cli_features(dataset: &std::path::Path, patterns: &std::path::Path, threads: usize, normalize: &str) -> Vec<u8> {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_hompat"))
        .args(["features", "--dataset"])
        .arg(dataset)
        .arg("--patterns")
        .arg(patterns)
        .args(["--normalize", normalize, "--threads", &threads.to_string()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn c14_determinism() {
    criterion(14, "deterministic output", secs(30), || {
        let mut f = Checks::new();
        let dir = tempfile::tempdir().unwrap();
        let dataset = dir.path().join("data.jsonl");
        let patterns = dir.path().join("patterns.jsonl");
        std::fs::write(&dataset, dataset_jsonl(&synthetic(14, 100))).unwrap();
        let alphabet = LabelAlphabet::new();
        let text: String = feature_patterns()
            .iter()
            .map(|p| hompat::graph::serialize_pattern(p, &alphabet) + "\n")
            .collect();
        std::fs::write(&patterns, text).unwrap();
        for normalize in ["none", "log-z"] {
            let base = cli_features(&dataset, &patterns, 1, normalize);
            check(&mut f, !base.is_empty(), || "empty output".into());
            for threads in [4, 8, 8] {
                let again = cli_features(&dataset, &patterns, threads, normalize);
                check(&mut f, again == base, || format!("{normalize}: {threads} workers differ from 1"));
            }
        }
        f
    });
}
