use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use udist_cli::config::{CheckKind, RunConfig};
use udist_cli::report::{emit_report, ReportFormat};
use udist_cli::{parse_config, run_checks};
use udist_core::cohomology::{
    cohomology_z_closed_form, cohomology_z_snf, cup_closed_form, cup_via_diagonal,
    evaluation_structure, lift_cocycle, verify_theorem_a,
};
use udist_core::distribution::{basis, ideal_basis};
use udist_core::galois::{MultiIndex, PrimeConfig};

#[derive(Parser)]
#[command(
    name = "udist",
    about = "Exact verification engine for distribution cohomology",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct CommonArgs {
    /// Odd distinct primes, comma separated
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Coefficient modulus M (must divide l - 1 for every prime when > 1)
    #[arg(long, default_value_t = 2)]
    modulus: u64,
    /// Largest cohomological degree to certify
    #[arg(long = "n-max", default_value_t = 3)]
    n_max: u64,
    /// Order ideal by maximal sets of primes, e.g. [[3],[7]]
    #[arg(long)]
    ideal: Option<String>,
    /// Checks to run (anderson, theorem-a, theorem-b, cup, quasi-iso, lift,
    /// appendix, all)
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Output format: json or markdown
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read the whole configuration from a file (overrides the flags)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical basis of the distribution at the configured level
    Basis(CommonArgs),
    /// Print the integral cohomology table (closed form and normal form)
    Cohomology(CommonArgs),
    /// Run verification suites and print one line per check
    Verify(CommonArgs),
    /// Lift the quotient generators and print their evaluations
    Lift(CommonArgs),
    /// Print the cup-product table for degrees up to 2, both routes
    Cup(CommonArgs),
    /// Run verification suites and emit the machine-readable report
    Report(CommonArgs),
}

fn build_config(args: &CommonArgs) -> Result<RunConfig, String> {
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return parse_config(&text).map_err(|e| e.to_string());
    }
    if args.primes.is_empty() {
        return Err("--primes is required (or use --config)".into());
    }
    let checks = if args.checks.is_empty() {
        vec![CheckKind::All]
    } else {
        args.checks
            .iter()
            .map(|s| CheckKind::parse(s).ok_or_else(|| format!("unknown check `{s}`")))
            .collect::<Result<_, _>>()?
    };
    let ideal = match &args.ideal {
        None => None,
        Some(text) => {
            let parsed = parse_config(&format!(
                "primes=[{}]\nmodulus={}\nideal={}\n",
                args.primes
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                args.modulus,
                text
            ))
            .map_err(|e| e.to_string())?;
            parsed.ideal
        }
    };
    let cfg = RunConfig {
        primes: args.primes.clone(),
        modulus: args.modulus,
        n_max: args.n_max,
        ideal,
        checks,
        out: args.out.as_ref().map(|p| p.display().to_string()),
        format: args.format.clone(),
    };
    cfg.prime_config().map_err(|e| e.to_string())?;
    cfg.order_ideal().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn engine_config(cfg: &RunConfig) -> PrimeConfig {
    cfg.prime_config().expect("validated")
}

fn write_out(cfg: &RunConfig, text: &str) -> Result<(), String> {
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_basis(cfg: &RunConfig) -> Result<bool, String> {
    let pc = engine_config(cfg);
    let list = match cfg.order_ideal().map_err(|e| e.to_string())? {
        Some(ideal) => ideal_basis(&pc, &ideal),
        None => basis(pc.level()),
    };
    println!("level {}: {} basis symbols", pc.level(), list.len());
    for a in list {
        println!("  {}/{}", a.numerator(), a.level());
    }
    Ok(true)
}

fn cmd_cohomology(cfg: &RunConfig) -> Result<bool, String> {
    let pc = engine_config(cfg);
    let closed = cohomology_z_closed_form(&pc, pc.full_mask(), cfg.n_max);
    let snf = cohomology_z_snf(&pc, pc.full_mask(), cfg.n_max).map_err(|e| e.to_string())?;
    println!("H^n(G, Z) for the full group:");
    let mut all_ok = true;
    for (n, (c, s)) in closed.iter().zip(&snf).enumerate() {
        let ok = c == s;
        all_ok &= ok;
        println!("  n={n}: closed {c}  normal-form {s}  {}", tick(ok));
    }
    let ideal = cfg.order_ideal().map_err(|e| e.to_string())?;
    let report = verify_theorem_a(&pc, cfg.n_max, ideal.as_ref()).map_err(|e| e.to_string())?;
    println!("H^n(G, U) against the closed-form decomposition:");
    for row in &report.rows {
        all_ok &= row.pass();
        println!(
            "  n={}: computed {}  predicted {}  {}",
            row.degree,
            row.computed,
            row.predicted,
            tick(row.pass())
        );
    }
    Ok(all_ok)
}

fn cmd_lift(cfg: &RunConfig) -> Result<bool, String> {
    let pc = engine_config(cfg);
    let mut all_ok = true;
    for t_mask in 0..=pc.full_mask() {
        let e_t = MultiIndex::indicator(pc.s(), t_mask);
        match lift_cocycle(&pc, cfg.modulus, t_mask, &e_t) {
            Ok(lift) => {
                let st =
                    evaluation_structure(&pc, cfg.modulus, &lift).map_err(|e| e.to_string())?;
                all_ok &= st.pass();
                println!(
                    "divisor {}: lift with {} terms, sign {:?} {}",
                    pc.r_of(t_mask),
                    lift.cocycle.coeffs.len(),
                    st.realized_sign,
                    tick(st.pass())
                );
                for (e, d) in &lift.evaluation.components {
                    println!("  evaluation at {:?}: {d:?}", e.components());
                }
            }
            Err(e) => {
                all_ok = false;
                println!("divisor {}: FAILED ({e})", pc.r_of(t_mask));
            }
        }
    }
    Ok(all_ok)
}

fn cmd_cup(cfg: &RunConfig) -> Result<bool, String> {
    let pc = engine_config(cfg);
    let mut all_ok = true;
    for de in 0..=2u64 {
        for dep in 0..=2u64 {
            for e in MultiIndex::all_of_degree(pc.s(), de) {
                for ep in MultiIndex::all_of_degree(pc.s(), dep) {
                    let a = cup_closed_form(&pc, cfg.modulus, &e, &ep);
                    let b = cup_via_diagonal(&pc, cfg.modulus, &e, &ep);
                    let ok = a == b;
                    all_ok &= ok;
                    println!(
                        "{:?} cup {:?} = {} [{:?}]  {}",
                        e.components(),
                        ep.components(),
                        a.coefficient,
                        a.index.components(),
                        tick(ok)
                    );
                }
            }
        }
    }
    Ok(all_ok)
}

fn cmd_verify(cfg: &RunConfig, quiet: bool) -> Result<bool, String> {
    let report = run_checks(cfg).map_err(|e| e.to_string())?;
    if !quiet {
        for r in &report.results {
            println!("[{}] {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
        }
        println!(
            "{} checks, {} failed",
            report.results.len(),
            report.results.iter().filter(|r| !r.pass).count()
        );
    }
    let format = ReportFormat::parse(&cfg.format)
        .ok_or_else(|| format!("unknown format `{}`", cfg.format))?;
    if quiet || cfg.out.is_some() {
        write_out(cfg, &emit_report(&report, format))?;
    }
    Ok(report.all_pass())
}

fn tick(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

type CommandFn = fn(&RunConfig) -> Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (&CommonArgs, CommandFn) = match &cli.command {
        Command::Basis(a) => (a, cmd_basis),
        Command::Cohomology(a) => (a, cmd_cohomology),
        Command::Verify(a) => (a, |c| cmd_verify(c, false)),
        Command::Lift(a) => (a, cmd_lift),
        Command::Cup(a) => (a, cmd_cup),
        Command::Report(a) => (a, |c| cmd_verify(c, true)),
    };
    let cfg = match build_config(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
