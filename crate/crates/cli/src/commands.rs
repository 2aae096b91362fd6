use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use isolation_core::constructions::{self, CertifiedSet, DEFAULT_ENUMERATION_CAP};
use isolation_core::solvers::{isolation_number_given_dominated, set_domination_number};
use isolation_core::{Budget, Graph, Invariant, InvariantResult};

use crate::corpus::{write_corpus, CorpusSpec, Entry};
use crate::explore::{Exploration, Target};
use crate::expr::parse_expr;
use crate::records::{cache_path, Store};
use crate::report::{table, write_pair, ExploreReport, Header, VerifyReport};
use crate::verify::{Campaign, Theorem, DEFAULT_PRODUCT_CAP};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "isolation-lab",
    version,
    about = "Exact isolation and domination invariants, constructions and bound campaigns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute invariants of one graph.
    Compute(ComputeArgs),
    /// Run a set builder and print its certified set.
    Construct(ConstructArgs),
    /// Check proved bounds over a corpus.
    Verify(VerifyArgs),
    /// Search a corpus for counterexamples to open inequalities.
    Explore(ExploreArgs),
    /// Write a corpus file.
    Generate(GenerateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Search-node cap per invariant; 0 means unlimited.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        match self.budget {
            0 => Budget::unlimited(),
            n => Budget::nodes(n),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    /// Graph expression: family (`cycle:5`), `cart(a,b)`, `lex(a,b)`,
    /// `sierpinski(a,t)`, `g6:<code>` or a file.
    #[arg(long)]
    pub graph: String,
    /// Comma-separated invariant tags.
    #[arg(long, value_delimiter = ',', required = true)]
    pub invariant: Vec<String>,
    /// Vertex set for `iota_given` and `gamma_set`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub set: Vec<usize>,
    /// Recompute everything and audit against the results log.
    #[arg(long)]
    pub no_cache: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    /// prism, thm32, betabeta, lex, sierpinski, saturation or trivial.
    #[arg(long)]
    pub builder: String,
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub h: Option<String>,
    /// Dimension for the sierpinski builder.
    #[arg(long)]
    pub t: Option<usize>,
    /// Cap on minimum isolating sets enumerated for the isolation graph.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub enumeration_cap: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CampaignArgs {
    /// Corpus spec, e.g. `gnp:count=400,nmin=3,nmax=7;trees:max=9`.
    #[arg(long)]
    pub corpus: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed second factor for pair instances (default: consecutive corpus
    /// entries are paired).
    #[arg(long)]
    pub h: Option<String>,
    /// Directory for the text and JSON reports.
    #[arg(long, default_value = "reports")]
    pub report_dir: PathBuf,
    /// Largest product solved exactly.
    #[arg(long, default_value_t = DEFAULT_PRODUCT_CAP)]
    pub product_cap: usize,
    /// Ignore cached values; recompute and audit them.
    #[arg(long)]
    pub no_cache: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// `all` or comma-separated ids.
    #[arg(long, default_value = "all")]
    pub theorems: String,
    /// Sierpinski dimensions checked per base graph.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub enumeration_cap: usize,
    #[command(flatten)]
    pub campaign: CampaignArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ExploreArgs {
    /// `all` or comma-separated: vizing-iota, gamma-lower, gammai-lower,
    /// sierpinski-gap.
    #[arg(long, default_value = "all")]
    pub target: String,
    #[command(flatten)]
    pub campaign: CampaignArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GenerateArgs {
    #[arg(long)]
    pub corpus: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    /// A proved bound failed somewhere.
    Violations(usize),
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Compute(a) => compute(&a, out),
        Command::Construct(a) => construct(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Explore(a) => explore(&a, out),
        Command::Generate(a) => generate(&a, out),
    }
}

fn show_set(g: &Graph, members: &[usize]) -> String {
    let idx: Vec<String> = members.iter().map(usize::to_string).collect();
    let mut s = format!("{{{}}}", idx.join(","));
    if g.labels().is_some() && !members.is_empty() {
        let labels: Vec<String> = members.iter().map(|&v| g.label(v)).collect();
        s.push_str(&format!(" [{}]", labels.join(" ")));
    }
    s
}

pub fn compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<Outcome> {
    let g = parse_expr(&a.graph)?;
    let budget = a.budget.budget();
    let store = Store::open(&cache_path(), !a.no_cache)?;
    let mut rows = Vec::new();
    for tag in &a.invariant {
        let inv: Invariant = tag.parse()?;
        let row = match inv {
            Invariant::IsolationGivenDominated | Invariant::SetDomination => {
                let set = g.set_of(a.set.iter().copied())?;
                let r: InvariantResult = if inv == Invariant::SetDomination {
                    set_domination_number(&g, &set, budget)?
                } else {
                    isolation_number_given_dominated(&g, &set, budget)?
                };
                vec![
                    inv.tag(),
                    r.value.to_string(),
                    show_set(&g, &r.witness.indices()),
                    r.stats.nodes.to_string(),
                    "computed".into(),
                ]
            }
            _ => {
                let l = store.get(&g, inv, budget)?;
                vec![
                    inv.tag(),
                    l.record.value.to_string(),
                    show_set(&g, &l.record.witness),
                    l.record.nodes.to_string(),
                    if l.cached { "cached" } else { "computed" }.into(),
                ]
            }
        };
        rows.push(row);
    }
    store.flush()?;
    writeln!(out, "graph: {} (n={}, m={})\n", a.graph, g.order(), g.size())?;
    out.write_all(table(&["invariant", "value", "witness", "nodes", "source"], &rows).as_bytes())?;
    Ok(Outcome::Clean)
}

pub fn build(a: &ConstructArgs) -> Result<CertifiedSet> {
    let g = parse_expr(&a.g)?;
    let h = || -> Result<Graph> {
        let h =
            a.h.as_deref()
                .ok_or_else(|| anyhow!("builder `{}` needs --h", a.builder))?;
        parse_expr(h)
    };
    let budget = a.budget.budget();
    let set = match a.builder.as_str() {
        "prism" => constructions::prism(&g, budget)?,
        "thm32" => constructions::thm32(&g, &h()?, a.enumeration_cap, budget)?,
        "betabeta" => constructions::beta_beta(&g, &h()?, budget)?,
        "lex" => constructions::lex(&g, &h()?, budget)?,
        "trivial" => constructions::trivial_upper(&g, &h()?, budget)?,
        "saturation" => constructions::saturation(&g, budget)?,
        "sierpinski" => {
            let t = a.t.ok_or_else(|| anyhow!("builder `sierpinski` needs --t"))?;
            constructions::sierpinski(&g, t, budget)?
        }
        other => {
            bail!("unknown builder `{other}`; expected prism, thm32, betabeta, lex, sierpinski, saturation or trivial")
        }
    };
    Ok(set)
}

pub fn construct(a: &ConstructArgs, out: &mut dyn Write) -> Result<Outcome> {
    let c = build(a)?;
    writeln!(out, "builder: {}", c.builder)?;
    writeln!(out, "target: n={}, m={}", c.target.order(), c.target.size())?;
    writeln!(out, "size: {}", c.size())?;
    writeln!(out, "bound: {}", c.bound)?;
    writeln!(out, "set: {}", show_set(&c.target, &c.set.to_vec()))?;
    for check in &c.checks {
        writeln!(
            out,
            "check {}: {}",
            check.name,
            if check.passed { "pass" } else { "FAIL" }
        )?;
    }
    Ok(Outcome::Clean)
}

struct Loaded {
    spec: CorpusSpec,
    entries: Vec<Entry>,
    fixed: Option<Entry>,
}

fn load(a: &CampaignArgs) -> Result<Loaded> {
    let spec: CorpusSpec = a.corpus.parse()?;
    let entries = spec.generate(a.seed)?;
    let fixed = match &a.h {
        Some(h) => Some(Entry {
            label: h.clone(),
            graph: parse_expr(h)?,
        }),
        None => None,
    };
    Ok(Loaded { spec, entries, fixed })
}

fn header(command: &str, a: &CampaignArgs, l: &Loaded) -> Header {
    Header {
        command: command.into(),
        corpus: l.spec.to_string(),
        seed: a.seed,
        budget: a.budget.budget().max_nodes(),
        fixed_second_factor: a.h.clone(),
        instances: l.entries.len(),
    }
}

pub fn verify_report(a: &VerifyArgs, store: &Store) -> Result<VerifyReport> {
    let l = load(&a.campaign)?;
    let campaign = Campaign {
        theorems: Theorem::parse_list(&a.theorems)?,
        budget: a.campaign.budget.budget(),
        product_cap: a.campaign.product_cap,
        enumeration_cap: a.enumeration_cap,
        dims: a.dims.clone(),
    };
    let rows = campaign.run(&l.entries, l.fixed.as_ref(), store);
    let ids = campaign.theorems.iter().map(|t| t.to_string()).collect();
    Ok(VerifyReport::new(header("verify", &a.campaign, &l), ids, rows))
}

pub fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let store = Store::open(&cache_path(), !a.campaign.no_cache)?;
    let report = verify_report(a, &store)?;
    store.flush()?;
    let text = report.text();
    out.write_all(text.as_bytes())?;
    let stem = format!("verify-seed{}", a.campaign.seed);
    let (txt, js) = write_pair(&a.campaign.report_dir, &stem, &text, &report)?;
    writeln!(out, "\nreports: {} {}", txt.display(), js.display())?;
    Ok(match report.violations() {
        0 => Outcome::Clean,
        n => Outcome::Violations(n),
    })
}

pub fn explore_report(a: &ExploreArgs, store: &Store) -> Result<ExploreReport> {
    let l = load(&a.campaign)?;
    let ex = Exploration {
        targets: Target::parse_list(&a.target)?,
        budget: a.campaign.budget.budget(),
        product_cap: a.campaign.product_cap,
    };
    let (rows, findings) = ex.run(&l.entries, l.fixed.as_ref(), store);
    let ids = ex.targets.iter().map(|t| t.to_string()).collect();
    Ok(ExploreReport::new(
        header("explore", &a.campaign, &l),
        ids,
        rows,
        findings,
    ))
}

pub fn explore(a: &ExploreArgs, out: &mut dyn Write) -> Result<Outcome> {
    let store = Store::open(&cache_path(), !a.campaign.no_cache)?;
    let report = explore_report(a, &store)?;
    store.flush()?;
    let text = report.text();
    out.write_all(text.as_bytes())?;
    let stem = format!("explore-seed{}", a.campaign.seed);
    let (txt, js) = write_pair(&a.campaign.report_dir, &stem, &text, &report)?;
    writeln!(out, "\nreports: {} {}", txt.display(), js.display())?;
    Ok(match report.rho2_violations() {
        0 => Outcome::Clean,
        n => Outcome::Violations(n),
    })
}

pub fn generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let spec: CorpusSpec = a.corpus.parse()?;
    let entries = spec.generate(a.seed)?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&a.out, write_corpus(&spec, a.seed, &entries))?;
    writeln!(out, "wrote {} graphs to {}", entries.len(), a.out.display())?;
    Ok(Outcome::Clean)
}
