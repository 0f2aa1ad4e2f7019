//! Command-line surface: construct family instances, run the exact solvers,
//! compute and cross-validate cores, export graphs, and run the verification
//! suites.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pqcores::cores::{
    classify_core, core_bruteforce, core_certificate, cross_validate, verdict_to_json, Agreement,
    PredictedCore,
};
use pqcores::families::{construct, parse_spec, FamilySpec};
use pqcores::graph::{to_dot, to_json};
use pqcores::solvers::{
    chromatic_number, clique_number_jobs, find_constrained_homomorphism, find_homomorphism,
    independence_number, ColoringResult, HomConstraint, HomSearch, SearchBudget, ValueResult,
};
use pqcores::suite::{run_suite, SuiteConfig, SuiteKind};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(
    name = "pqcores",
    about = "Symmetric graphs of order pq: constructions, exact solvers and cores",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Wall-clock limit per solver call, in seconds.
    #[arg(long, default_value_t = 300)]
    budget: u64,
    /// Search-node limit per solver call.
    #[arg(long, default_value_t = 100_000_000)]
    nodes: u64,
}

impl BudgetArgs {
    fn to_budget(&self) -> SearchBudget {
        SearchBudget::new(self.nodes, Duration::from_secs(self.budget))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreMethodArg {
    Brute,
    Classified,
    Certificate,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Smoke,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a family instance and report its basic structure.
    Family {
        /// Family identifier, e.g. gpr:7,2 or ms:2,3,,0.
        spec: String,
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
        /// Write the export here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Exact independence, clique and chromatic numbers with witnesses.
    Invariants {
        spec: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Worker threads for the clique search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compute, classify or cross-validate the core of a family instance.
    Core {
        spec: String,
        #[arg(long, value_enum, default_value = "both")]
        method: CoreMethodArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a homomorphism between two family instances.
    Hom {
        source: String,
        target: String,
        /// Arc-class constraint taken from a twisted-product spec
        /// (gpqrsu:p,q,r,s,t); the direction is inferred from the specs.
        #[arg(long)]
        constrained: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "smoke")]
        suite: SuiteArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Seed for the randomized oracle corpus (solver results never
        /// depend on it).
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Family { spec, export, out } => cmd_family(&spec, export, out),
        Command::Invariants { spec, budget, jobs } => cmd_invariants(&spec, &budget, jobs),
        Command::Core { spec, method, budget } => cmd_core(&spec, method, &budget),
        Command::Hom { source, target, constrained, budget } => {
            cmd_hom(&source, &target, constrained.as_deref(), &budget)
        }
        Command::Verify { suite, budget, jobs, seed } => cmd_verify(suite, &budget, jobs, seed),
    }
}

fn parse(spec: &str) -> anyhow::Result<FamilySpec> {
    parse_spec(spec).with_context(|| format!("cannot parse family spec '{spec}'"))
}

fn cmd_family(
    spec_str: &str,
    export: Option<ExportFormat>,
    out: Option<std::path::PathBuf>,
) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let spec = parse(spec_str)?;
    let c = construct(&spec)?;
    println!("spec: {spec}");
    println!("order: {}", c.graph.n());
    match c.graph.regular_valency() {
        Some(v) => println!("valency: {v}"),
        None => println!("valency: irregular {:?}", c.graph.valency_profile()),
    }
    println!("bipartite: {}", c.graph.is_bipartite());
    println!("connected: {}", c.graph.is_connected());
    println!("edges: {}", c.graph.edge_count());
    if let Some(fmt) = export {
        let payload = match fmt {
            ExportFormat::Dot => to_dot(&c.graph),
            ExportFormat::Json => to_json(&c.graph),
        };
        match out {
            Some(path) => {
                std::fs::write(&path, payload)?;
                println!("export: {}", path.display());
            }
            None => print!("{payload}"),
        }
    }
    println!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    Ok(ExitCode::SUCCESS)
}

fn cmd_invariants(spec_str: &str, budget: &BudgetArgs, jobs: usize) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let spec = parse(spec_str)?;
    let c = construct(&spec)?;
    let b = budget.to_budget();
    println!("spec: {spec} (order {})", c.graph.n());
    let mut indeterminate = false;

    let omega = clique_number_jobs(&c.graph, &b, jobs.max(1));
    let alpha = independence_number(&c.graph, &b);
    let omega_val = report_value("omega", &omega, &mut indeterminate);
    let alpha_val = report_value("alpha", &alpha, &mut indeterminate);
    match chromatic_number(&c.graph, &b) {
        ColoringResult::Exact { value, coloring } => {
            println!("chi: {value}");
            println!("chi witness: {coloring:?}");
        }
        ColoringResult::Indeterminate { lower, upper, .. } => {
            println!("chi: INDETERMINATE in [{lower},{upper}]");
            indeterminate = true;
        }
    }
    if let (Some(a), Some(w)) = (alpha_val, omega_val) {
        let n = c.graph.n();
        println!(
            "alpha*omega <= n: {}*{} = {} <= {} ({})",
            a,
            w,
            a * w,
            n,
            if a * w <= n { "ok" } else { "VIOLATED" }
        );
        if a * w > n {
            bail!("independence-clique product exceeds the order");
        }
    }
    println!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    Ok(if indeterminate { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn report_value(name: &str, r: &ValueResult, indeterminate: &mut bool) -> Option<usize> {
    match r {
        ValueResult::Exact { value, witness } => {
            println!("{name}: {value}");
            println!("{name} witness: {witness:?}");
            Some(*value)
        }
        ValueResult::Indeterminate { lower, upper, .. } => {
            println!("{name}: INDETERMINATE in [{lower},{upper}]");
            *indeterminate = true;
            None
        }
    }
}

fn cmd_core(spec_str: &str, method: CoreMethodArg, budget: &BudgetArgs) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let spec = parse(spec_str)?;
    let b = budget.to_budget();
    let code = match method {
        CoreMethodArg::Brute => {
            let c = construct(&spec)?;
            let core = core_bruteforce(&c.graph, true, c.gens.as_ref(), &b)?;
            println!(
                "{}",
                serde_json::json!({
                    "spec": spec.to_string(),
                    "method": "brute",
                    "core": core.tag.to_string(),
                    "order": core.core.n(),
                    "vertices": core.core_vertices,
                })
            );
            ExitCode::SUCCESS
        }
        CoreMethodArg::Classified => {
            let prediction = classify_core(&spec, &b)?;
            let trace: Vec<serde_json::Value> = prediction
                .trace
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "condition": t.condition, "value": t.value, "source": t.source
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "spec": spec.to_string(),
                    "method": "classified",
                    "core": prediction.tag.to_string(),
                    "trace": trace,
                })
            );
            if matches!(prediction.tag, PredictedCore::Unresolved) {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        CoreMethodArg::Certificate => {
            let prediction = classify_core(&spec, &b)?;
            let tag = match prediction.tag {
                PredictedCore::Tag(t) => t,
                PredictedCore::Unresolved => bail!("classification unresolved within budget"),
            };
            let c = construct(&spec)?;
            let core = core_certificate(&c.graph, &tag, &b)?;
            println!(
                "{}",
                serde_json::json!({
                    "spec": spec.to_string(),
                    "method": "certificate",
                    "core": core.tag.to_string(),
                    "order": core.core.n(),
                    "vertices": core.core_vertices,
                })
            );
            ExitCode::SUCCESS
        }
        CoreMethodArg::Both => {
            let verdict = cross_validate(&spec, &b)?;
            println!("{}", verdict_to_json(&verdict));
            match verdict.agreement {
                Agreement::Agree => ExitCode::SUCCESS,
                Agreement::Disagree => ExitCode::from(2),
                Agreement::Unresolved => ExitCode::from(3),
            }
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    Ok(code)
}

fn cmd_hom(
    source_str: &str,
    target_str: &str,
    constrained: Option<&str>,
    budget: &BudgetArgs,
) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let source_spec = parse(source_str)?;
    let target_spec = parse(target_str)?;
    let source = construct(&source_spec)?;
    let target = construct(&target_spec)?;
    let b = budget.to_budget();

    let outcome = match constrained {
        None => find_homomorphism(&source.graph, &target.graph, &b),
        Some(family) => {
            let fam = parse(family)?;
            let FamilySpec::Gpqrsu { p, q, r, s, t, u } = fam else {
                bail!("--constrained needs a twisted-product spec (gpqrsu:p,q,r,s,t)");
            };
            let constraint = match (&source_spec, &target_spec) {
                (FamilySpec::Gpr { p: sp, r: ss }, FamilySpec::Gpr { p: tq, r: tu })
                    if *sp == p && *ss == s && *tq == q && *tu == u =>
                {
                    HomConstraint::eta(p, q, r, s, t)?
                }
                (FamilySpec::Gpr { p: sq, r: su }, FamilySpec::Gpr { p: tp, r: ts })
                    if *sq == q && *su == u && *tp == p && *ts == s =>
                {
                    HomConstraint::zeta(p, q, r, s, t)?
                }
                _ => bail!(
                    "constrained search needs source/target gpr:{p},{s} and gpr:{q},{u} \
                     (either direction)"
                ),
            };
            find_constrained_homomorphism(&source.graph, &target.graph, &constraint, &b)?
        }
    };
    let code = match outcome {
        HomSearch::Found(h) => {
            println!(
                "{}",
                serde_json::json!({
                    "source": source_spec.to_string(),
                    "target": target_spec.to_string(),
                    "result": "found",
                    "map": h.map,
                })
            );
            ExitCode::SUCCESS
        }
        HomSearch::None => {
            println!(
                "{}",
                serde_json::json!({
                    "source": source_spec.to_string(),
                    "target": target_spec.to_string(),
                    "result": "none",
                })
            );
            ExitCode::SUCCESS
        }
        HomSearch::Indeterminate => {
            println!(
                "{}",
                serde_json::json!({
                    "source": source_spec.to_string(),
                    "target": target_spec.to_string(),
                    "result": "indeterminate",
                })
            );
            ExitCode::from(3)
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    Ok(code)
}

fn cmd_verify(
    suite: SuiteArg,
    budget: &BudgetArgs,
    jobs: usize,
    seed: u64,
) -> anyhow::Result<ExitCode> {
    let config = SuiteConfig {
        kind: match suite {
            SuiteArg::Smoke => SuiteKind::Smoke,
            SuiteArg::Full => SuiteKind::Full,
        },
        budget: budget.to_budget(),
        jobs: jobs.max(1),
        seed,
    };
    let report = run_suite(&config);
    let mut any_disagree = false;
    let mut any_unresolved = false;
    for r in &report.results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{}] {} ({:.2}s)", r.id, status, r.name, r.duration.as_secs_f64());
        for d in &r.details {
            println!("    {d}");
        }
        if !r.passed {
            if r.details.iter().any(|d| d.contains("budget") || d.contains("INDETERMINATE")) {
                any_unresolved = true;
            } else {
                any_disagree = true;
            }
        }
    }
    println!(
        "suite: {}/{} criteria passed",
        report.results.iter().filter(|r| r.passed).count(),
        report.results.len()
    );
    if any_disagree {
        Ok(ExitCode::from(2))
    } else if any_unresolved {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
