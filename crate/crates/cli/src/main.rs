use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use polaris::catalog::Catalog;
use polaris::fingrp::{builtin_group, molien_total_dim, DEFAULT_GROUP_CAP};
use polaris::oracle::SymPowerImpl;
use polaris::polcheck::{generator_ledger, invariant_dims_for, multidegrees_of_total};
use polaris::polyops::{parse_polynomial, polarize};
use polaris::rep::{parse_repspec, resolve};
use polaris::report::{run_check, CheckOptions, GeneratorOverride};
use polaris::verify::{verify_paper, Suite, VerifyOptions};
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polaris", version, about = "Polarization checks for invariants of group representations")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the k-polarization property up to a degree bound.
    Check {
        rep: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        max_degree: Option<u32>,
        /// auto, exact or bound.
        #[arg(long, default_value = "auto")]
        backend: String,
        /// Report timing_ms as 0 so reruns are byte-identical.
        #[arg(long)]
        deterministic: bool,
        /// File with one generator polynomial per line.
        #[arg(long)]
        generators: Option<std::path::PathBuf>,
        /// Comma-separated generator degrees for the bound backend.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u32>>,
        /// Group sampler used to verify explicit generators, e.g. so(5).
        #[arg(long)]
        sampler: Option<String>,
    },
    /// Dimensions of C[kV]^G by multidegree.
    Dims {
        rep: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Molien series coefficients of a built-in finite group on k copies.
    Molien {
        group: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Polarizations of a homogeneous polynomial read from a file.
    Polarize {
        file: std::path::PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Invariant dimensions and lower bounds on generator counts.
    Ledger {
        rep: String,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Browse the bundled catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the reproduction suite.
    VerifyPaper {
        /// Include the long-running cases.
        #[arg(long)]
        extended: bool,
        /// Randomized instances per oracle suite.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Deliberately broken component, for testing the suite itself.
        #[arg(long, value_parser = ["sym-power-sign"])]
        inject_fault: Option<String>,
    },
    /// Experiment: 2-polarization for small groups not generated by reflections.
    Conjecture {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { id: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn run(cli: Cli) -> Result<u8> {
    let format = cli.format;
    match cli.command {
        Command::Check {
            rep,
            k,
            max_degree,
            backend,
            deterministic,
            generators,
            degrees,
            sampler,
        } => {
            let over = if generators.is_some() || degrees.is_some() {
                let polynomials = match generators {
                    Some(path) => {
                        let text = std::fs::read_to_string(&path)
                            .with_context(|| format!("reading {}", path.display()))?;
                        let polys = text
                            .lines()
                            .filter(|l| !l.trim().is_empty())
                            .map(|l| parse_polynomial(l, None))
                            .collect::<polaris::Result<Vec<_>>>()?;
                        Some(polys)
                    }
                    None => None,
                };
                Some(GeneratorOverride {
                    polynomials,
                    degrees,
                    sampler,
                })
            } else if sampler.is_some() {
                bail!("--sampler needs --generators");
            } else {
                None
            };
            let opts = CheckOptions {
                k,
                max_degree,
                backend,
                deterministic,
                generators: over,
            };
            let report = run_check(&rep, &opts)?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(if report.is_inconclusive() { 2 } else { 0 })
        }
        Command::Dims { rep, k, max_degree } => {
            let r = resolve(&parse_repspec(&rep)?)?;
            let dims = invariant_dims_for(&r, k)?;
            let mut rows = Vec::new();
            for d in 0..=max_degree {
                for beta in multidegrees_of_total(d, k) {
                    let dim = dims.dim(&beta)?;
                    rows.push((beta, dim));
                }
            }
            match format {
                Format::Json => print_json(&json!({
                    "rep": r.spec.to_string(),
                    "k": k,
                    "dims": rows.iter().map(|(b, d)| json!({"multidegree": b, "dim": d.to_string()})).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    println!("{}  dim V = {}", r.spec, r.dim);
                    for (b, d) in rows {
                        println!("{b:?}\t{d}");
                    }
                }
            }
            Ok(0)
        }
        Command::Molien { group, k, max_degree } => {
            let g = builtin_group(&group, DEFAULT_GROUP_CAP)?;
            let coeffs = (0..=max_degree)
                .map(|d| molien_total_dim(&g, k, d))
                .collect::<polaris::Result<Vec<_>>>()?;
            let reflections = g.is_generated_by_reflections();
            match format {
                Format::Json => print_json(&json!({
                    "group": g.name(), "order": g.order(), "dim": g.dim(), "k": k,
                    "generated_by_reflections": reflections, "coefficients": coeffs,
                })),
                Format::Text => {
                    println!(
                        "{}: order {}, acting on C^{}, {}generated by reflections",
                        g.name(),
                        g.order(),
                        g.dim(),
                        if reflections { "" } else { "not " }
                    );
                    for (d, c) in coeffs.iter().enumerate() {
                        println!("{d}\t{c}");
                    }
                }
            }
            Ok(0)
        }
        Command::Polarize { file, k } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let f = parse_polynomial(text.trim(), None)?;
            let pieces = polarize(&f, k)?;
            match format {
                Format::Json => print_json(&json!({
                    "polynomial": f.to_string(),
                    "k": k,
                    "pieces": pieces.iter().map(|(a, p)| json!({"alpha": a, "polarization": p.to_string()})).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    for (a, p) in &pieces {
                        println!("{a:?}\t{p}");
                    }
                }
            }
            Ok(0)
        }
        Command::Ledger { rep, max_degree } => {
            let r = resolve(&parse_repspec(&rep)?)?;
            let rows = generator_ledger(&r, max_degree)?;
            match format {
                Format::Json => print_json(&json!(rows
                    .iter()
                    .map(|row| json!({"degree": row.beta[0], "dim": row.dim.to_string(), "generators_at_least": row.generators_at_least.to_string()}))
                    .collect::<Vec<_>>())),
                Format::Text => {
                    println!("d\tI(d)\tgenerators >=");
                    for row in rows {
                        println!("{}\t{}\t{}", row.beta[0], row.dim, row.generators_at_least);
                    }
                }
            }
            Ok(0)
        }
        Command::Catalog { action } => {
            let c = Catalog::builtin();
            match action {
                CatalogAction::List => match format {
                    Format::Json => print_json(&json!(c
                        .entries
                        .iter()
                        .map(|e| json!({"id": e.id, "title": e.title, "rep": e.rep}))
                        .collect::<Vec<_>>())),
                    Format::Text => {
                        for e in &c.entries {
                            println!("{:<22} {:<28} {}", e.id, e.rep, e.title);
                        }
                    }
                },
                CatalogAction::Show { id } => {
                    let Some(e) = c.entry(&id) else {
                        bail!("no catalog entry '{id}'; try `polaris catalog list`");
                    };
                    match format {
                        Format::Json => print_json(&serde_json::to_value(e)?),
                        Format::Text => {
                            println!("{}: {}\n  module: {}\n  citation: {}", e.id, e.title, e.rep, e.citation);
                            for cl in &e.claims {
                                println!(
                                    "  claim: {} k={} {:?}{}{}  [{}]",
                                    cl.rep,
                                    cl.k,
                                    cl.expect,
                                    cl.multidegree.as_ref().map(|b| format!(" at {b:?}")).unwrap_or_default(),
                                    cl.criterion.as_ref().map(|n| format!(" by {n}")).unwrap_or_default(),
                                    cl.check
                                );
                            }
                            for node in e.slice_chain.iter().flatten() {
                                println!("  slice at {} -> {}", node.point, node.rep);
                                if let Some(n) = &node.note {
                                    println!("    {n}");
                                }
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::VerifyPaper {
            extended,
            instances,
            inject_fault,
        } => {
            let mut opts = VerifyOptions::standard();
            opts.property_instances = instances;
            if inject_fault.is_some() {
                opts.sym_power = SymPowerImpl::FlippedSign;
            }
            let suite = if extended { Suite::Extended } else { Suite::Core };
            let report = verify_paper(suite, &opts);
            match format {
                Format::Json => print_json(&serde_json::to_value(&report)?),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(if report.failures() == 0 { 0 } else { 1 })
        }
        Command::Conjecture { max_degree } => {
            let groups = ["neg(2)", "neg(3)", "cyclic(3)", "cyclic(4)", "alt(4)"];
            let mut rows = Vec::new();
            for g in groups {
                let group = builtin_group(g, DEFAULT_GROUP_CAP)?;
                let opts = CheckOptions {
                    k: 2,
                    max_degree: Some(max_degree),
                    backend: "exact".into(),
                    deterministic: true,
                    generators: None,
                };
                let r = run_check(&format!("finite({g}): phi1"), &opts)?;
                rows.push((g, group.is_generated_by_reflections(), r));
            }
            match format {
                Format::Json => print_json(&json!(rows
                    .iter()
                    .map(|(g, refl, r)| json!({"group": g, "generated_by_reflections": refl, "verdict": r.verdict}))
                    .collect::<Vec<_>>())),
                Format::Text => {
                    for (g, refl, r) in rows {
                        println!(
                            "{:<10} reflections: {:<5} {} {}",
                            g,
                            refl,
                            r.verdict.status,
                            r.verdict.multidegree.map(|b| format!("{b:?}")).unwrap_or_default()
                        );
                    }
                }
            }
            Ok(0)
        }
    }
}
