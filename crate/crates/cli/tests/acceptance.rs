//! Acceptance criteria, one PASS/FAIL line each, run sequentially so the
//! wall-clock limits mean something.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use isolation_core::constructions::{self, isolation_graph, DEFAULT_ENUMERATION_CAP};
use isolation_core::enumerate::{all_graphs, connected_graphs, trees};
use isolation_core::iso::are_isomorphic;
use isolation_core::oracle;
use isolation_core::products::{cartesian_product, lexicographic_product};
use isolation_core::sierpinski::{
    exact_isolation, iota_given_extremes, recursive_isolating_set, sierpinski_bounds, sierpinski_graph, xi_number,
};
use isolation_core::solvers::{self, clique_number, domination_number, isolation_number, total_domination_number};
use isolation_core::{Budget, Graph, GraphFamily, Invariant, InvariantResult, SolverError};
use isolation_lab::commands::{explore_report, verify_report, BudgetArgs, CampaignArgs, ExploreArgs, VerifyArgs};
use isolation_lab::corpus::CorpusSpec;
use isolation_lab::records::Store;
use isolation_lab::verify::{Theorem, Verdict, DEFAULT_PRODUCT_CAP};

const B: Budget = Budget::unlimited();
const PAIR_CORPUS: &str = "gnp:count=400,nmin=3,nmax=7";
const PAIR_SEED: u64 = 2024;

type Outcome = Result<String, String>;

/// (id, description, limit in seconds, check)
type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);

fn fam(spec: &str) -> Graph {
    spec.parse::<GraphFamily>().unwrap().build().unwrap()
}

fn cart(g: &Graph, h: &Graph) -> Graph {
    cartesian_product(g, h).unwrap().into_graph()
}

fn iota(g: &Graph) -> usize {
    let r = isolation_number(g, B).unwrap();
    assert!(r.verify(g), "iota witness failed verification");
    r.value
}

fn gamma(g: &Graph) -> usize {
    let r = domination_number(g, B).unwrap();
    assert!(r.verify(g), "gamma witness failed verification");
    r.value
}

fn expect(what: &str, got: usize, want: usize) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn c1() -> Outcome {
    let limit = Duration::from_secs(60);
    let mut times = Vec::new();
    for n in [5, 6] {
        let start = Instant::now();
        let g = cart(&fam(&format!("complete:{n}")), &fam(&format!("cycle:{n}")));
        expect(&format!("iota(K{n} x C{n})"), iota(&g), n)?;
        let t = start.elapsed();
        if t > limit {
            return Err(format!("iota(K{n} x C{n}) took {t:.1?}"));
        }
        times.push(format!("K{n}xC{n} {t:.2?}"));
    }
    Ok(times.join(", "))
}

fn c2() -> Outcome {
    let p5 = fam("path:5");
    expect("iota(P5 x P5)", iota(&cart(&p5, &p5)), 4)?;
    let c = constructions::beta_beta(&p5, &p5, B).map_err(|e| e.to_string())?;
    if !c.recheck() || c.checks.iter().any(|k| !k.passed) {
        return Err("beta_beta certificate failed".into());
    }
    expect("beta_beta(P5, P5) size", c.size(), 4)?;
    let s = cart(&fam("complete_bipartite:1,3"), &fam("complete_bipartite:1,4"));
    expect("iota(K1,3 x K1,4)", iota(&s), 1)?;
    Ok(String::new())
}

fn prism_case(g: &Graph, what: &str) -> Result<(), String> {
    let want = gamma(g);
    expect(&format!("iota({what} x K2)"), iota(&cart(g, &fam("complete:2"))), want)?;
    let c = constructions::prism(g, B).map_err(|e| format!("{what}: {e}"))?;
    if !c.recheck() || c.checks.iter().any(|k| !k.passed) {
        return Err(format!("{what}: prism certificate failed"));
    }
    expect(&format!("prism({what}) size"), c.size(), want)
}

fn c3() -> Outcome {
    let mut count = 0;
    for n in 1..=9 {
        for (i, t) in trees(n).iter().enumerate() {
            prism_case(t, &format!("tree{n}#{i}"))?;
            count += 1;
        }
    }
    let random = "bipartite:count=50,nmin=2,nmax=10"
        .parse::<CorpusSpec>()
        .unwrap()
        .generate(PAIR_SEED)
        .map_err(|e| e.to_string())?;
    expect("random bipartite count", random.len(), 50)?;
    for e in &random {
        if !e.graph.is_connected() || !e.graph.is_bipartite() || e.graph.order() > 10 {
            return Err(format!(
                "{} is not a connected bipartite graph on at most 10 vertices",
                e.label
            ));
        }
        prism_case(&e.graph, &e.label)?;
    }
    Ok(format!("{count} trees, {} random bipartite", random.len()))
}

fn c4() -> Outcome {
    let q = |d: usize| fam(&format!("hypercube:{d}"));
    let pairs = [(4, 3, 2), (5, 4, 4)];
    for (big, small, want) in pairs {
        expect(&format!("iota(Q{big})"), iota(&q(big)), want)?;
        expect(&format!("gamma(Q{small})"), gamma(&q(small)), want)?;
    }
    Ok(String::new())
}

fn c5() -> Outcome {
    let c5 = fam("cycle:5");
    let mut count = 0;
    for n in 2..=5 {
        for (i, g) in connected_graphs(n).iter().enumerate() {
            let what = format!("connected{n}#{i}");
            let gt = total_domination_number(g, B).unwrap().value;
            let lexg = lexicographic_product(g, &c5).unwrap().into_graph();
            expect(&format!("iota({what} o C5)"), iota(&lexg), gt)?;
            let c = constructions::lex(g, &c5, B).map_err(|e| format!("{what}: {e}"))?;
            if !c.recheck() || c.checks.iter().any(|k| !k.passed) {
                return Err(format!("{what}: lex certificate failed"));
            }
            expect(&format!("lex({what}) size"), c.size(), gt)?;
            count += 1;
        }
    }
    Ok(format!("{count} graphs"))
}

fn c6() -> Outcome {
    for n in 3..=5usize {
        let k = fam(&format!("complete:{n}"));
        let (s2, xi) = xi_number(&k, B).map_err(|e| e.to_string())?;
        if !xi.verify(&s2) {
            return Err(format!("xi(K{n}) witness failed"));
        }
        expect(&format!("xi(K{n})"), xi.value, n - 1)?;
        let given = iota_given_extremes(&k, B).map_err(|e| e.to_string())?;
        expect(&format!("iota(S_K{n}^2 | Ex)"), given.value, n - 1)?;
        for t in 2..=4u32 {
            let want = (n - 1) * n.pow(t - 2);
            let b = sierpinski_bounds(&k, t as usize, B).map_err(|e| e.to_string())?;
            if b.exact != Some(want) || b.lower != want || b.upper != want {
                return Err(format!(
                    "bounds K{n}, t={t}: lower {} upper {} exact {:?}, expected {want}",
                    b.lower, b.upper, b.exact
                ));
            }
            let r = recursive_isolating_set(&k, t as usize, B).map_err(|e| e.to_string())?;
            if !r.sierpinski.graph().is_isolating(&r.set) {
                return Err(format!("recursive set for K{n}, t={t} is not isolating"));
            }
            expect(&format!("recursive set K{n}, t={t}"), r.set.len(), want)?;
        }
    }
    let s = sierpinski_graph(&fam("complete:3"), 2).unwrap();
    expect(
        "iota(S_K3^2)",
        exact_isolation(&s, B).map_err(|e| e.to_string())?.value,
        2,
    )?;
    Ok(String::new())
}

fn c7() -> Outcome {
    let c4 = fam("cycle:4");
    let (s2, xi) = xi_number(&c4, B).map_err(|e| e.to_string())?;
    if !xi.verify(&s2) {
        return Err("xi(C4) witness failed".into());
    }
    expect("xi(C4)", xi.value, 3)?;
    expect(
        "iota(S_C4^2 | Ex)",
        iota_given_extremes(&c4, B).map_err(|e| e.to_string())?.value,
        3,
    )?;
    let direct = exact_isolation(&s2, B).map_err(|e| e.to_string())?;
    expect("iota(S_C4^2)", direct.value, 3)?;
    let r = recursive_isolating_set(&c4, 3, B).map_err(|e| e.to_string())?;
    if !r.sierpinski.graph().is_isolating(&r.set) {
        return Err("recursive(C4, 3) is not isolating".into());
    }
    expect("recursive(C4, 3) size", r.set.len(), 12)?;
    Ok(String::new())
}

fn c8() -> Outcome {
    for n in 3..=5 {
        for (spec, omega) in [(format!("complete:{n}"), n), (format!("complete_bipartite:1,{n}"), 2)] {
            let g = fam(&spec);
            let ig = isolation_graph(&g, DEFAULT_ENUMERATION_CAP, B).map_err(|e| e.to_string())?;
            if !are_isomorphic(&ig.graph, &g) {
                return Err(format!("I({spec}) is not isomorphic to {spec}"));
            }
            expect(
                &format!("omega(I({spec}))"),
                clique_number(&ig.graph, B).unwrap().value,
                omega,
            )?;
        }
    }
    Ok(String::new())
}

fn campaign_args(dir: &std::path::Path) -> CampaignArgs {
    CampaignArgs {
        corpus: PAIR_CORPUS.into(),
        seed: PAIR_SEED,
        h: None,
        report_dir: PathBuf::from(dir),
        product_cap: DEFAULT_PRODUCT_CAP,
        no_cache: true,
        budget: BudgetArgs { budget: 0 },
    }
}

fn c9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let entries = PAIR_CORPUS.parse::<CorpusSpec>().unwrap().generate(PAIR_SEED).unwrap();
    if entries
        .iter()
        .any(|e| !(3..=7).contains(&e.graph.order()) || !e.graph.is_connected())
    {
        return Err("corpus entry outside 3..=7 vertices or disconnected".into());
    }
    let args = VerifyArgs {
        theorems: "all".into(),
        dims: vec![2, 3],
        enumeration_cap: DEFAULT_ENUMERATION_CAP,
        campaign: campaign_args(dir.path()),
    };
    let report = verify_report(&args, &Store::in_memory()).map_err(|e| e.to_string())?;
    let required = [
        Theorem::GammaGap,
        Theorem::Chains,
        Theorem::TrivialUpper,
        Theorem::IsolationGraphUpper,
        Theorem::CoverProduct,
        Theorem::PackingLower,
        Theorem::SierpinskiUpper,
        Theorem::SierpinskiLower,
    ];
    for t in required {
        if !report
            .rows
            .iter()
            .any(|r| r.theorem == t && r.verdict == Verdict::Holds)
        {
            return Err(format!("no checked instance of {t}"));
        }
    }
    let pairs = report
        .rows
        .iter()
        .filter(|r| r.theorem == Theorem::TrivialUpper)
        .map(|r| r.inputs.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    expect("pairs", pairs, 200)?;
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::Violated | Verdict::BudgetExceeded))
        .map(|r| format!("{} {} {:?}: {}", r.theorem, r.check, r.inputs, r.verdict))
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} bad rows, first: {}", bad.len(), bad[0]));
    }
    let holds = report.rows.iter().filter(|r| r.verdict == Verdict::Holds).count();
    Ok(format!("{holds} checks hold over {pairs} pairs"))
}

type Checker = fn(&Graph) -> Result<(usize, usize), String>;

fn pair_check(g: &Graph, inv: Invariant, want: usize) -> Result<(usize, usize), String> {
    let r: InvariantResult = solvers::compute(g, inv, B).map_err(|e| e.to_string())?;
    if !r.verify(g) {
        return Err(format!("{inv} witness failed"));
    }
    Ok((r.value, want))
}

fn c10() -> Outcome {
    let checks: Vec<(&str, Checker)> = vec![
        ("iota", |g| pair_check(g, Invariant::Isolation, oracle::isolation(g))),
        ("gamma", |g| pair_check(g, Invariant::Domination, oracle::domination(g))),
        ("alpha", |g| {
            pair_check(g, Invariant::Independence, oracle::independence(g))
        }),
        ("beta", |g| {
            pair_check(g, Invariant::VertexCover, oracle::vertex_cover(g))
        }),
        ("alpha_prime", |g| {
            pair_check(g, Invariant::Matching, oracle::matching(g))
        }),
        ("s", |g| pair_check(g, Invariant::Saturation, oracle::saturation(g))),
        ("rho2", |g| pair_check(g, Invariant::TwoPacking, oracle::two_packing(g))),
        ("omega", |g| pair_check(g, Invariant::Clique, oracle::clique(g))),
        ("gamma_i", |g| {
            pair_check(g, Invariant::IndependenceDomination, oracle::independence_domination(g))
        }),
        ("alpha_1", |g| {
            pair_check(g, Invariant::AlphaK(1), oracle::alpha_k(g, 1))
        }),
        ("alpha_2", |g| {
            pair_check(g, Invariant::AlphaK(2), oracle::alpha_k(g, 2))
        }),
        ("alpha_3", |g| {
            pair_check(g, Invariant::AlphaK(3), oracle::alpha_k(g, 3))
        }),
    ];
    let mut graphs = 0;
    for n in 1..=6 {
        for (i, g) in all_graphs(n).iter().enumerate() {
            graphs += 1;
            for (name, check) in &checks {
                let (got, want) = check(g)?;
                if got != want {
                    return Err(format!("{name} on graphs{n}#{i}: solver {got}, oracle {want}"));
                }
            }
            match (total_domination_number(g, B), oracle::total_domination(g)) {
                (Ok(r), Some(want)) if r.value == want && r.verify(g) => {}
                (Err(SolverError::Undefined(_)), None) => {}
                (got, want) => {
                    return Err(format!(
                        "gamma_t on graphs{n}#{i}: solver {:?}, oracle {want:?}",
                        got.map(|r| r.value)
                    ))
                }
            }
        }
    }
    expect("graphs on 1..=6 vertices", graphs, 1 + 2 + 4 + 11 + 34 + 156)?;
    Ok(format!("{graphs} graphs"))
}

fn c11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let args = ExploreArgs {
        target: "all".into(),
        campaign: campaign_args(dir.path()),
    };
    let a = explore_report(&args, &Store::in_memory()).map_err(|e| e.to_string())?;
    let b = explore_report(&args, &Store::in_memory()).map_err(|e| e.to_string())?;
    let json = |r| serde_json::to_string(r).unwrap();
    if a.text() != b.text() || json(&a) != json(&b) {
        return Err("explore reports differ between runs".into());
    }
    expect("rho2 bound violations", a.rho2_violations(), 0)?;
    Ok(format!("{} rows, {} findings", a.rows.len(), a.findings.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1", "iota(K5 x C5)=5, iota(K6 x C6)=6", 60, c1),
        ("2", "iota(P5 x P5)=4 with beta_beta set, iota(K1,3 x K1,4)=1", 10, c2),
        (
            "3",
            "iota(G x K2)=gamma(G) with prism certificate: trees <=9, 50 random bipartite",
            180,
            c3,
        ),
        ("4", "iota(Q4)=gamma(Q3)=2, iota(Q5)=gamma(Q4)=4", 60, c4),
        (
            "5",
            "iota(G o C5)=gamma_t(G) with lex certificate: connected G on 2..5",
            180,
            c5,
        ),
        (
            "6",
            "Sierpinski K3..K5: xi, iota(.|Ex), exact bounds t=2..4, recursive sets",
            120,
            c6,
        ),
        (
            "7",
            "Sierpinski C4: xi=3, iota(.|Ex)=3, iota(S2)=3, recursive t=3 size 12",
            60,
            c7,
        ),
        (
            "8",
            "I(K_n)=K_n with omega n, I(K1,n)=K1,n with omega 2, n=3..5",
            10,
            c8,
        ),
        ("9", "verify: zero violations over 200 random connected pairs", 300, c9),
        (
            "10",
            "pruned solvers equal oracles on all graphs <=6 vertices",
            180,
            c10,
        ),
        ("11", "explore report deterministic, no rho2 violations", 300, c11),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, what, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("over the {limit}s limit")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => {
                failed += 1;
                ("FAIL", e.clone())
            }
        };
        let detail = if detail.is_empty() {
            String::new()
        } else {
            format!(" ({detail})")
        };
        println!(
            "{tag} criterion {id:>2}: {what} [{:.2}s / {limit}s]{detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
