//! Command-line interface: loads fiber configurations, runs the lattice
//! calculators and emits human-readable reports plus optional machine JSON.
//!
//! Exit codes: 0 success, 1 validation error (including parse/schema errors
//! and bad usage), 2 criterion-not-met in `--strict` mode, 3 internal
//! diagnostic error.

mod doc;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use fiberlat::case5b::enumerate_case5b_with_cap;
use fiberlat::chain::{admissible_characteristics, classify, enumerate_valid_chains};
use fiberlat::cycle::{check_self_intersection, compute_fundamental_cycle, verify_minimality};
use fiberlat::replay::replay_induction;
use fiberlat::riemann_roch::{
    conic_test, degree_on, generation_degree_bound, gg_criterion, h0_under_vanishing,
    h1_vanishing_predicate, twist_degree_formula, LineBundleClass,
};
use fiberlat::{Divisor, Error, FiberConfiguration};

const EXIT_OK: u8 = 0;
const EXIT_VALIDATION: u8 = 1;
const EXIT_CRITERION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fiberlat",
    version,
    about = "Exact intersection-lattice calculator for special fibers of genus >= 2 fibrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a chain of (-2)-curves into its diagram family
    Classify {
        file: PathBuf,
        /// Characteristic mismatches become errors (exit 2)
        #[arg(long)]
        strict: bool,
        /// Write a machine-readable report
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Fundamental cycles of the maximal (-2)-chains in a configuration
    Fundcycle {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Cap on enumerated subdivisors
        #[arg(long, default_value_t = 1_000_000)]
        cap_subcurves: u128,
    },
    /// Degree predicates for a full fiber at tensor power m
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: i64,
        /// Uncertified criteria become errors (exit 2)
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        cap_subcurves: u128,
    },
    /// Enumerate all valid connected (-2)-chains up to the bounds
    EnumerateChains {
        #[arg(long, default_value_t = 6)]
        max_nodes: usize,
        #[arg(long, default_value_t = 1)]
        max_n: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate the admissible degenerate-branch configurations with
    /// exclusion certificates
    #[command(name = "enumerate-5b")]
    Enumerate5b {
        #[arg(long, default_value_t = 9)]
        max_nodes: usize,
        #[arg(long, default_value_t = 1)]
        max_n: i64,
        /// Cap on chain coefficients
        #[arg(long, default_value_t = 6)]
        coeff_cap: i64,
        /// Declared residue characteristic; with --strict, shapes whose
        /// chain family is not admissible in it are removed
        #[arg(long)]
        characteristic: Option<u32>,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Replay the base-point-freeness induction on a full fiber
    Replay {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_VALIDATION,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<doc::LoadError> for Failure {
    fn from(e: doc::LoadError) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DispatchGap(_) | Error::NoAdmissibleComponent(_) => EXIT_INTERNAL,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: format!("error: {e}"),
        }
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: format!("error: serializing report: {e}"),
    })?;
    std::fs::write(path, text).map_err(|e| Failure {
        code: EXIT_VALIDATION,
        message: format!("io error: {}: {e}", path.display()),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { file, strict, json } => cmd_classify(&file, strict, json.as_deref()),
        Command::Fundcycle {
            file,
            json,
            cap_subcurves,
        } => cmd_fundcycle(&file, json.as_deref(), cap_subcurves),
        Command::Check {
            file,
            m,
            strict,
            json,
            cap_subcurves,
        } => cmd_check(&file, m, strict, json.as_deref(), cap_subcurves),
        Command::EnumerateChains {
            max_nodes,
            max_n,
            json,
        } => cmd_enumerate_chains(max_nodes, max_n, json.as_deref()),
        Command::Enumerate5b {
            max_nodes,
            max_n,
            coeff_cap,
            characteristic,
            strict,
            json,
        } => cmd_enumerate_5b(
            max_nodes,
            max_n,
            coeff_cap,
            characteristic,
            strict,
            json.as_deref(),
        ),
        Command::Replay { file, m, json } => cmd_replay(&file, m, json.as_deref()),
    }
}

fn cmd_classify(file: &Path, strict: bool, json: Option<&Path>) -> Result<u8, Failure> {
    let cfg = doc::load(file)?;
    let chain: Vec<usize> = (0..cfg.len()).collect();
    let diagram = classify(&cfg, &chain)?;
    let chars = admissible_characteristics(diagram.family);
    let admissible = chars.admits(cfg.characteristic());
    let char_note = if admissible {
        "char-admissible".to_string()
    } else {
        format!(
            "char-inadmissible (configuration has characteristic {})",
            cfg.characteristic()
        )
    };
    println!("{diagram}, {char_note}");
    println!("{}", render::diagram(&cfg));
    if let Some(path) = json {
        write_json(
            path,
            &json!({
                "command": "classify",
                "file": file.display().to_string(),
                "diagram": diagram,
                "characteristic": cfg.characteristic(),
                "characteristic_admissible": admissible,
            }),
        )?;
    }
    if strict && !admissible {
        return Ok(EXIT_CRITERION);
    }
    Ok(EXIT_OK)
}

/// Maximal connected subsets of (-2)-curves.
fn minus_two_chains(cfg: &FiberConfiguration) -> Vec<Vec<usize>> {
    let nodes: Vec<usize> = (0..cfg.len())
        .filter(|&i| cfg.curve(i).is_minus_two())
        .collect();
    let mut seen = vec![false; cfg.len()];
    let mut chains = Vec::new();
    for &start in &nodes {
        if seen[start] {
            continue;
        }
        let mut component = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            component.push(v);
            for &w in &nodes {
                if !seen[w] && cfg.pairing_entry(v, w) > 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        component.sort_unstable();
        chains.push(component);
    }
    chains
}

fn cmd_fundcycle(file: &Path, json: Option<&Path>, cap: u128) -> Result<u8, Failure> {
    let cfg = doc::load(file)?;
    let chains = minus_two_chains(&cfg);
    if chains.is_empty() {
        println!("no (-2)-curves in the configuration");
    }
    let mut reports = Vec::new();
    for chain in &chains {
        let fc = compute_fundamental_cycle(&cfg, chain)?;
        let z2 = cfg.pairing(&fc.cycle, &fc.cycle)?;
        let ok = check_self_intersection(&cfg, &fc)?;
        let minimal = verify_minimality(&cfg, &fc.cycle, chain, cap)?;
        let diagram = classify(&cfg, chain)?;
        println!(
            "chain {:?}: {diagram}, Z = {:?}, Z^2 = {z2} (expected {}): {}, minimality: {}",
            chain,
            fc.cycle.coeffs(),
            -2 * fc.min_degree,
            if ok { "ok" } else { "MISMATCH" },
            if minimal { "verified" } else { "FAILED" }
        );
        reports.push(json!({
            "chain": chain,
            "diagram": diagram,
            "cycle": fc.cycle.coeffs(),
            "min_degree": fc.min_degree,
            "z_squared": z2,
            "z_squared_matches": ok,
            "minimality_verified": minimal,
        }));
        if !ok || !minimal {
            return Err(Failure {
                code: EXIT_INTERNAL,
                message: "error: fundamental cycle failed its own certificates".into(),
            });
        }
    }
    if let Some(path) = json {
        write_json(
            path,
            &json!({
                "command": "fundcycle",
                "file": file.display().to_string(),
                "chains": reports,
            }),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_check(
    file: &Path,
    m: i64,
    strict: bool,
    json: Option<&Path>,
    cap: u128,
) -> Result<u8, Failure> {
    if m < 2 {
        return Err(Failure {
            code: EXIT_VALIDATION,
            message: format!("error: m must be >= 2, got {m}"),
        });
    }
    let cfg = doc::load(file)?;
    if !cfg.is_full_fiber() {
        return Err(Failure {
            code: EXIT_VALIDATION,
            message: "error: check requires a full-fiber document (is_full_fiber: true)".into(),
        });
    }
    let fiber = cfg.fiber_divisor();
    let mut criterion_failed = false;

    let l_restriction = LineBundleClass::omega_power_minus(m, &fiber);
    let h1 = h1_vanishing_predicate(&cfg, &l_restriction, &fiber, cap)?;
    if !h1 {
        criterion_failed = true;
    }
    let omega_m = LineBundleClass::omega_power(m, cfg.len());
    let h0 = h0_under_vanishing(&cfg, &omega_m, &fiber, cap)?;
    let one_connected = cfg.is_one_connected(&fiber, cap)?;
    let bound = generation_degree_bound(&cfg, cap)?;

    println!("fiber with {} component(s), m = {m}", cfg.len());
    println!(
        "  H^1 criterion for omega^{m}(-X_0)|_X_0: {}",
        if h1 { "certified" } else { "NOT MET" }
    );
    match h0 {
        Some(v) => println!("  h^0(omega^{m}|_X_0) = {v} (Euler characteristic under vanishing)"),
        None => println!("  h^0(omega^{m}|_X_0): unknown (vanishing not certified)"),
    }
    println!("  1-connected: {one_connected}");
    println!("  canonical ring generated in degree <= {bound}");

    let mut chain_reports = Vec::new();
    for chain in minus_two_chains(&cfg) {
        let diagram = classify(&cfg, &chain)?;
        let admissible = admissible_characteristics(diagram.family).admits(cfg.characteristic());
        println!(
            "  (-2)-chain {:?}: {diagram}, {}",
            chain,
            if admissible {
                "char-admissible"
            } else {
                criterion_failed = true;
                "char-inadmissible"
            }
        );
        chain_reports.push(json!({
            "chain": chain,
            "diagram": diagram,
            "characteristic_admissible": admissible,
        }));
    }

    println!("  components:");
    let mut component_reports = Vec::new();
    for c in cfg.curves() {
        let unit = Divisor::unit(cfg.len(), c.id);
        let twist = twist_degree_formula(&cfg, m, c.id, &fiber)?;
        let conic = conic_test(c);
        let rest = fiber.sub(&unit);
        let l_c = LineBundleClass::omega_power_minus(m, &rest);
        let gg = gg_criterion(&cfg, &l_c, c.id)?;
        let deg_omega_m = degree_on(&cfg, &omega_m, &unit)?;
        println!(
            "    curve {}: n={}, C^2={}, K.C={}, deg omega_C={}, twist deg={}, conic={}, gg={}",
            c.id,
            c.field_degree,
            c.self_int,
            c.canonical_deg,
            c.dualizing_degree(),
            twist,
            conic.is_conic,
            gg
        );
        component_reports.push(json!({
            "id": c.id,
            "field_degree": c.field_degree,
            "self_int": c.self_int,
            "canonical_deg": c.canonical_deg,
            "dualizing_degree": c.dualizing_degree(),
            "twist_degree": twist,
            "omega_m_degree": deg_omega_m,
            "conic": conic,
            "globally_generated_criterion": gg,
        }));
    }

    if let Some(path) = json {
        write_json(
            path,
            &json!({
                "command": "check",
                "file": file.display().to_string(),
                "m": m,
                "h1_vanishing_certified": h1,
                "h0_omega_m": h0,
                "one_connected": one_connected,
                "generation_degree_bound": bound,
                "chains": chain_reports,
                "components": component_reports,
            }),
        )?;
    }
    if strict && criterion_failed {
        return Ok(EXIT_CRITERION);
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate_chains(max_nodes: usize, max_n: i64, json: Option<&Path>) -> Result<u8, Failure> {
    let chains = enumerate_valid_chains(max_nodes, max_n)?;
    println!(
        "{} valid chain(s) with at most {max_nodes} node(s), degree unit <= {max_n}",
        chains.len()
    );
    let mut reports = Vec::new();
    for cfg in &chains {
        let ids: Vec<usize> = (0..cfg.len()).collect();
        let diagram = classify(cfg, &ids)?;
        println!("- {diagram}");
        reports.push(json!({
            "diagram": diagram,
            "configuration": doc::to_document(cfg),
        }));
    }
    if let Some(path) = json {
        write_json(
            path,
            &json!({
                "command": "enumerate-chains",
                "max_nodes": max_nodes,
                "max_n": max_n,
                "count": chains.len(),
                "chains": reports,
            }),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate_5b(
    max_nodes: usize,
    max_n: i64,
    coeff_cap: i64,
    characteristic: Option<u32>,
    strict: bool,
    json: Option<&Path>,
) -> Result<u8, Failure> {
    let out = enumerate_case5b_with_cap(max_nodes, max_n, coeff_cap)?;
    let admissible: Vec<_> = out
        .admissible
        .iter()
        .filter(|a| {
            if let (true, Some(p)) = (strict, characteristic) {
                admissible_characteristics(a.chain_family).admits(p)
            } else {
                true
            }
        })
        .collect();
    println!(
        "{} admissible configuration(s), {} exclusion certificate(s)",
        admissible.len(),
        out.excluded.len()
    );
    for a in &admissible {
        let shape = a
            .shape
            .map(|s| s.to_string())
            .unwrap_or_else(|| "UNEXPECTED SHAPE".to_string());
        println!("\n[{shape}]  n={}, m={}", a.n, a.m);
        println!("{}", render::diagram(&a.configuration));
    }
    if !out.excluded.is_empty() {
        println!("\nexcluded branches:");
        for cert in &out.excluded {
            let witness: Vec<String> = cert
                .witness
                .iter()
                .map(|w| format!("{}={}", w.name, w.value))
                .collect();
            println!(
                "- {} [{}] {}",
                cert.branch,
                cert.constraint,
                witness.join(", ")
            );
        }
    }
    if !out.exhausted.is_empty() {
        println!("\nsearch-bound dead ends:");
        for note in &out.exhausted {
            println!("- {note}");
        }
    }
    if let Some(path) = json {
        let admissible_json: Vec<_> = admissible
            .iter()
            .map(|a| {
                json!({
                    "shape": a.shape.map(|s| s.to_string()),
                    "n": a.n,
                    "m": a.m,
                    "chain_family": a.chain_family,
                    "c_index": a.c_index,
                    "cx_index": a.cx_index,
                    "configuration": doc::to_document(&a.configuration),
                })
            })
            .collect();
        write_json(
            path,
            &json!({
                "command": "enumerate-5b",
                "max_nodes": max_nodes,
                "max_n": max_n,
                "coeff_cap": coeff_cap,
                "admissible": admissible_json,
                "excluded": out.excluded,
                "exhausted": out.exhausted,
            }),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_replay(file: &Path, m: i64, json: Option<&Path>) -> Result<u8, Failure> {
    let cfg = doc::load(file)?;
    let trace = replay_induction(&cfg, m)?;
    println!("replay at m = {m}: {} step(s)", trace.steps.len());
    for (i, step) in trace.steps.iter().enumerate() {
        let evidence: Vec<String> = step
            .evidence
            .iter()
            .map(|e| format!("{}={}", e.name, e.value))
            .collect();
        println!(
            "  step {i}: Y = {:?}, C = curve {}, case {} [{}]",
            step.remaining.coeffs(),
            step.chosen,
            step.tag,
            evidence.join(", ")
        );
    }
    if let Some(path) = json {
        write_json(
            path,
            &json!({
                "command": "replay",
                "file": file.display().to_string(),
                "m": m,
                "trace": trace,
            }),
        )?;
    }
    Ok(EXIT_OK)
}
