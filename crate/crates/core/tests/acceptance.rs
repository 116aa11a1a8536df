//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, then a
//! single assertion over all of them. Run with `--nocapture` to see the
//! report.

use std::time::{Duration, Instant};

use robber_core::families::{
    complete, complete_bipartite, connected_graphs_max_degree, cycle, gn, gnk, path, petersen,
    random_connected_max_degree,
};
use robber_core::solver::{
    is_k_locatable, metric_dimension, rlp, Budget, GameRules, Rlp, SolveResult, SolveStatus, Variant,
};
use robber_core::strategies::tree_game::{bfs_tree_cop, free_components_needed, random_tree_cop, tree_evader, TreeCop};
use robber_core::strategies::{
    cycling_cop, exhaustive_adversary, extracted_cop, fixed_probe_cop, lifted_subdivision_cop, maxdeg3_cop,
    quadratic_budget, quadratic_cop, resolving_set_cop, simulate, split_greedy_cop, verify_strategy, CopStrategy,
    Outcome, Verification,
};
use robber_core::subdivision::subdivide;
use robber_core::Graph;

/// Solver verdicts gathered along the way for the replay criterion.
struct Verdict {
    name: String,
    g: Graph,
    k: usize,
    result: SolveResult,
}

struct Suite {
    lines: Vec<(bool, String)>,
    verdicts: Vec<Verdict>,
}

impl Suite {
    fn record(&mut self, id: &str, ok: bool, detail: String, started: Instant) {
        let line = format!("[{}] {id} {detail} ({:.2?})", if ok { "PASS" } else { "FAIL" }, started.elapsed());
        println!("{line}");
        self.lines.push((ok, line));
    }

    fn solve(&mut self, name: &str, g: &Graph, k: usize, budget: &Budget) -> SolveStatus {
        let result = is_k_locatable(g, &GameRules::new(k), budget).expect("connected graph");
        let status = result.status;
        self.keep(name, g, k, result);
        status
    }

    fn keep(&mut self, name: &str, g: &Graph, k: usize, result: SolveResult) {
        self.verdicts.push(Verdict { name: name.to_string(), g: g.clone(), k, result });
    }

    fn rlp(&mut self, name: &str, g: &Graph, k_max: usize, budget: &Budget) -> Rlp {
        let r = rlp(g, Variant::FreeMove, k_max, budget).expect("connected graph");
        for (k, res) in r.attempts {
            self.keep(name, g, k, res);
        }
        r.value
    }
}

fn ac1(s: &mut Suite) {
    let t = Instant::now();
    let c3 = cycle(3).unwrap();
    let k1 = s.solve("C3", &c3, 1, &Budget::default());
    let k2 = s.solve("C3", &c3, 2, &Budget::default());
    let ok = k1 == SolveStatus::NonLocatable && k2 == SolveStatus::Locatable && t.elapsed() < Duration::from_secs(1);
    s.record("AC1", ok, format!("C3: k=1 {k1}, k=2 {k2}"), t);
}

fn ac2(s: &mut Suite) {
    let t = Instant::now();
    let v = s.rlp("K4", &complete(4).unwrap(), 4, &Budget::default());
    s.record("AC2", v == Rlp::Exact(3) && t.elapsed() < Duration::from_secs(5), format!("rlp(K4) = {v}"), t);
}

fn ac3(s: &mut Suite) {
    let t = Instant::now();
    let g = gnk(4, 2).unwrap();
    let v = s.rlp("G(4,2)", &g, 4, &Budget::nodes(10_000_000));
    s.record(
        "AC3",
        v == Rlp::Exact(3) && g.vertex_count() == 10,
        format!("rlp(G(4,2)) = {v} on {} vertices", g.vertex_count()),
        t,
    );
}

fn ac4(s: &mut Suite) {
    let t = Instant::now();
    let g = gn(1).unwrap();
    let k1 = s.solve("G1", &g, 1, &Budget::default());
    let k2 = s.solve("G1", &g, 2, &Budget::default());
    let ok = g.vertex_count() == 8 && k1 == SolveStatus::NonLocatable && k2 == SolveStatus::Locatable;
    s.record("AC4", ok && t.elapsed() < Duration::from_secs(60), format!("G1: k=1 {k1}, k=2 {k2}"), t);

    let t = Instant::now();
    let g2 = gn(2).unwrap();
    let budget = Budget::default().with_time(Duration::from_secs(600));
    let v = s.rlp("G2", &g2, 4, &budget);
    let consistent = match v {
        Rlp::Exact(k) => k == 4,
        Rlp::Unknown { at_least, at_most } => at_least <= 4 && at_most.is_none_or(|m| m >= 4),
        Rlp::ExceedsMax(_) => false,
    };
    s.record("AC4-stretch", consistent, format!("rlp(G2) = {v} on {} vertices", g2.vertex_count()), t);
}

fn ac5(s: &mut Suite) {
    let t = Instant::now();
    let sg = subdivide(&complete(5).unwrap(), 2).unwrap();
    let budget = Budget::default().with_time(Duration::from_secs(600));
    let status = s.solve("K5^(1/2)", sg.graph(), 1, &budget);
    let n = sg.graph().vertex_count();
    s.record(
        "AC5",
        status == SolveStatus::NonLocatable && n == 15,
        format!("K5^(1/2), {n} vertices, k=1: {status}"),
        t,
    );
}

fn ac6(s: &mut Suite) {
    let t = Instant::now();
    let k4 = complete(4).unwrap();
    let tree =
        is_k_locatable(&k4, &GameRules::new(3), &Budget::default()).unwrap().strategy.expect("K4 is 3-locatable");
    let sg = subdivide(&k4, 8).unwrap();
    let cop = lifted_subdivision_cop(&sg, tree).unwrap();
    let horizon = cop.turn_bound();
    let v = verify_strategy(sg.graph(), &cop, &GameRules::new(1), horizon);
    let ok = matches!(v, Ok(Verification::VerifiedWin { .. }));
    let detail = match &v {
        Ok(Verification::VerifiedWin { depth }) => {
            format!("lifted cop on K4^(1/8) wins within {depth} turns (horizon {horizon})")
        }
        other => format!("lifted cop on K4^(1/8): {other:?} (horizon {horizon})"),
    };
    s.record("AC6", ok, detail, t);
}

fn ac7(s: &mut Suite) {
    let t = Instant::now();
    let graphs = connected_graphs_max_degree(7, 3).unwrap();
    let mut failures = Vec::new();
    for g in &graphs {
        let cop = maxdeg3_cop(g).unwrap();
        assert!(cop.budget() <= 3);
        match verify_strategy(g, &cop, &GameRules::new(3), 50) {
            Ok(Verification::VerifiedWin { .. }) => {}
            other => failures.push(format!("{}: {other:?}", g.to_edge_list().replace('\n', " "))),
        }
    }
    let ok = failures.is_empty() && t.elapsed() < Duration::from_secs(1800);
    let detail = format!("maxdeg3 cop verified on {}/{} graphs", graphs.len() - failures.len(), graphs.len());
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    s.record("AC7", ok, detail, t);
}

fn ac8(s: &mut Suite) {
    let t = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let n = 3 + (seed % 8) as usize;
        let delta = 2 + (seed % 3) as usize;
        let g = random_connected_max_degree(n, delta, seed).unwrap();
        let cop = quadratic_cop(&g).unwrap();
        let actual = g.max_degree().unwrap();
        assert_eq!(cop.budget(), quadratic_budget(actual));
        let horizon = 2 + (g.diameter() + 1) * (actual as u32 + 1);
        match verify_strategy(&g, &cop, &GameRules::new(cop.budget()), horizon) {
            Ok(Verification::VerifiedWin { .. }) => {}
            other => failures.push(format!("seed {seed}: {other:?}")),
        }
    }
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    s.record(
        "AC8",
        failures.is_empty(),
        format!("quadratic cop verified on {}/100 random graphs", 100 - failures.len()),
        t,
    );
}

fn ac9(s: &mut Suite) {
    let t = Instant::now();
    let mut cops: Vec<Box<dyn TreeCop>> =
        (0..20).map(|seed| Box::new(random_tree_cop(4, 3, seed)) as Box<dyn TreeCop>).collect();
    cops.push(Box::new(bfs_tree_cop(4, 3)));
    let mut survived = 0;
    for cop in &mut cops {
        let mut e = tree_evader(4, 3, 5).unwrap();
        let mut ok = true;
        for _ in 0..50 {
            let probes = cop.next_probes();
            match e.react(&probes) {
                Ok(d) => {
                    ok &= e.free_components().len() >= free_components_needed(4) && d.iter().all(|&x| x >= 5);
                    cop.observe(&d);
                }
                Err(_) => ok = false,
            }
        }
        survived += ok as usize;
    }
    s.record(
        "AC9",
        survived == cops.len(),
        format!("tree evader survived {survived}/{} cops for 50 turns", cops.len()),
        t,
    );
}

fn ac10(s: &mut Suite) {
    let t = Instant::now();
    let graphs = [
        ("C3", cycle(3).unwrap()),
        ("C6", cycle(6).unwrap()),
        ("P5", path(5).unwrap()),
        ("K4", complete(4).unwrap()),
        ("K33", complete_bipartite(3, 3).unwrap()),
        ("Petersen", petersen()),
        ("G(4,2)", gnk(4, 2).unwrap()),
        ("G1", gn(1).unwrap()),
    ];
    let mut bad = Vec::new();
    for (name, g) in &graphs {
        let (mu, _) = metric_dimension(g);
        let v = s.rlp(name, g, mu, &Budget::nodes(10_000_000));
        let cop = resolving_set_cop(g);
        let turn_one = verify_strategy(g, &cop, &GameRules::new(mu), 3) == Ok(Verification::VerifiedWin { depth: 1 });
        if !matches!(v, Rlp::Exact(k) if k <= mu) || !turn_one {
            bad.push(format!("{name}: rlp {v}, mu {mu}, turn one {turn_one}"));
        }
    }
    for b in &bad {
        println!("    {b}");
    }
    s.record(
        "AC10",
        bad.is_empty(),
        format!("rlp <= mu and resolving cop wins turn 1 on {}/{} graphs", graphs.len() - bad.len(), graphs.len()),
        t,
    );
}

fn ac11(s: &mut Suite) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let (mut wins, mut losses) = (0, 0);
    for v in &s.verdicts {
        let rules = GameRules::new(v.k);
        let n = v.g.vertex_count();
        match v.result.status {
            SolveStatus::Locatable => {
                wins += 1;
                let depth = v.result.turn_bound.unwrap();
                let cop = extracted_cop(v.result.strategy.clone().unwrap());
                let got = verify_strategy(&v.g, &cop, &rules, depth + 1);
                if got != Ok(Verification::VerifiedWin { depth }) {
                    bad.push(format!("{} k={}: expected depth {depth}, got {got:?}", v.name, v.k));
                }
            }
            SolveStatus::NonLocatable => {
                losses += 1;
                let horizon = 2 * n as u32;
                let candidates: Vec<Box<dyn CopStrategy>> = vec![
                    Box::new(cycling_cop(&v.g, v.k)),
                    Box::new(split_greedy_cop(&v.g, v.k, Variant::FreeMove)),
                    Box::new(fixed_probe_cop((0..v.k.min(n)).collect())),
                ];
                for cop in candidates {
                    let mut cop = cop;
                    let mut robber = exhaustive_adversary(&v.g, &rules, horizon);
                    let got = simulate(&v.g, cop.as_mut(), &mut robber, &rules, horizon);
                    if !matches!(got, Ok(ref tr) if matches!(tr.outcome, Outcome::Escape { .. })) {
                        bad.push(format!("{} k={} vs {}: {:?}", v.name, v.k, cop.name(), got.map(|tr| tr.outcome)));
                    }
                }
            }
            SolveStatus::Unknown => {}
        }
    }
    for b in bad.iter().take(5) {
        println!("    {b}");
    }
    s.record(
        "AC11",
        bad.is_empty(),
        format!("replayed {wins} LOCATABLE and {losses} NON_LOCATABLE verdicts, {} mismatches", bad.len()),
        t,
    );
}

#[test]
fn acceptance() {
    let mut s = Suite { lines: Vec::new(), verdicts: Vec::new() };
    ac1(&mut s);
    ac2(&mut s);
    ac3(&mut s);
    ac4(&mut s);
    ac5(&mut s);
    ac6(&mut s);
    ac7(&mut s);
    ac8(&mut s);
    ac9(&mut s);
    ac10(&mut s);
    ac11(&mut s);
    let failed: Vec<&String> = s.lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l).collect();
    assert!(
        failed.is_empty(),
        "failed criteria:\n{}",
        failed.iter().map(|l| l.as_str()).collect::<Vec<_>>().join("\n")
    );
}
