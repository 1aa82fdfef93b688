//! `eunorm` — evaluate fast Euclidean-norm approximations, reproduce their
//! error tables, and size sphere-covering sample budgets.
//!
//! Exit codes: 0 success, 1 validation mismatch (opcounts), 2 usage error.
//! CSV and JSON go to stdout, diagnostics to stderr. Every command is
//! deterministic given its flags.

mod fmt;
mod report;
mod schedule;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

use eunorm::coverage;
use eunorm::params::{mu_lambda_optimal, solve_lambda_optimal, NormParams};
use eunorm::sampling::{converged_errors, fixed_sample_mre, sample_sphere};
use eunorm::{counted, norm_l1, norm_l2, norm_linf, norm_weighted};
use eunorm::{Error, OpCount, SampleSpace, SamplerConfig, VectorN};

use fmt::{fmt_value, json_from_ln};
use report::{Cell, CsvWriter, ReportRow};
use schedule::{describe, parse_schedule};

#[derive(Parser)]
#[command(name = "eunorm", version, about = "Euclidean norm approximations and their error analysis")]
struct Cli {
    /// Seed for every stochastic component.
    #[arg(long, global = true, default_value_t = eunorm::DEFAULT_SEED)]
    seed: u64,

    /// Worker substreams for sampling and fitting. Results are
    /// deterministic for a fixed worker count.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Emit 17 significant digits instead of 6.
    #[arg(long, global = true)]
    full_precision: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a norm or approximation on a vector, against the exact
    /// Euclidean value.
    Eval {
        /// One of: d1, d2, dinf, chaudhuri, dlambda, dmulambda, barni, dab.
        #[arg(long)]
        family: String,
        /// Gaussian sample count for the a,b fit (family dab).
        #[arg(long, default_value_t = 1_000_000)]
        fit_samples: u64,
        /// Vector coordinates.
        #[arg(required = true, allow_negative_numbers = true)]
        coords: Vec<f64>,
    },
    /// Fit the a,b coefficients on Gaussian samples; JSON to stdout.
    FitAb {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        fit_samples: u64,
    },
    /// Average/maximum error table for the three minimax families,
    /// n = 2..10; CSV to stdout.
    Table3 {
        /// Sample schedule, e.g. `2^16..2^24` or `1000,2^12,10000`.
        #[arg(long, default_value = "2^16..2^24")]
        schedule: String,
        /// Convergence tolerance on consecutive ARE and MRE estimates.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Fixed-budget versus converged error protocols for the fitted a,b
    /// family, n = 2..10; CSV to stdout.
    Table4 {
        #[arg(long, default_value = "2^16..2^24")]
        schedule: String,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        fit_samples: u64,
        /// Sample count for the fixed-budget protocol.
        #[arg(long, default_value_t = 100_000)]
        fixed_budget: u64,
        /// Measure the fixed-budget protocol on raw Gaussian vectors
        /// (relative error against the exact norm) instead of normalizing
        /// onto the sphere first.
        #[arg(long)]
        raw_fixed: bool,
    },
    /// Analytic maximum-error curves for the three minimax families;
    /// CSV to stdout.
    MreCurve {
        #[arg(long, default_value_t = 100)]
        nmax: usize,
    },
    /// Sphere-covering sample estimates and tail bounds; JSON to stdout.
    Coverage {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Validate instrumented operation counts against the cost table;
    /// exits 1 on any mismatch.
    Opcounts {
        #[arg(long)]
        n: usize,
    },
}

enum CliError {
    /// Bad flags or out-of-domain arguments; exit code 2.
    Usage(String),
    /// A validation run found a mismatch; exit code 1.
    Mismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Usage(msg)
    }
}

struct Ctx {
    seed: u64,
    threads: usize,
    full_precision: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        seed: cli.seed,
        threads: cli.threads,
        full_precision: cli.full_precision,
    };
    if ctx.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Eval {
            family,
            fit_samples,
            coords,
        } => cmd_eval(&ctx, &family, fit_samples, coords),
        Command::FitAb { n, fit_samples } => cmd_fit_ab(&ctx, n, fit_samples),
        Command::Table3 { schedule, tol } => cmd_table3(&ctx, &schedule, tol),
        Command::Table4 {
            schedule,
            tol,
            fit_samples,
            fixed_budget,
            raw_fixed,
        } => cmd_table4(&ctx, &schedule, tol, fit_samples, fixed_budget, raw_fixed),
        Command::MreCurve { nmax } => cmd_mre_curve(&ctx, nmax),
        Command::Coverage { n, epsilon, budget } => cmd_coverage(n, epsilon, budget),
        Command::Opcounts { n } => cmd_opcounts(&ctx, n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn family_params(ctx: &Ctx, family: &str, n: usize, fit_samples: u64) -> Result<NormParams, CliError> {
    let params = match family {
        "chaudhuri" => NormParams::chaudhuri(n)?,
        "dlambda" => NormParams::lambda_optimal(n)?,
        "dmulambda" => NormParams::mu_lambda(n)?,
        "barni" => NormParams::barni(n)?,
        "dab" => NormParams::seol_cheun(n, fit_samples, ctx.seed, ctx.threads)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown family `{other}` (expected d1, d2, dinf, chaudhuri, dlambda, dmulambda, barni, dab)"
            )))
        }
    };
    Ok(params)
}

fn cmd_eval(ctx: &Ctx, family: &str, fit_samples: u64, coords: Vec<f64>) -> Result<(), CliError> {
    let x = VectorN::new(coords).map_err(|e| CliError::Usage(e.to_string()))?;
    let exact = norm_l2(&x);
    let approx = match family {
        "d1" => norm_l1(&x),
        "d2" => exact,
        "dinf" => norm_linf(&x),
        _ => {
            let params = family_params(ctx, family, x.dim(), fit_samples)?;
            if let NormParams::SeolCheunAb { a, b, .. } = &params {
                eprintln!("fitted a={a} b={b} (samples={fit_samples} seed={})", ctx.seed);
            }
            let profile = params.weight_profile()?;
            norm_weighted(&x, &profile)?
        }
    };
    let rel = if exact == 0.0 {
        f64::NAN
    } else {
        (approx - exact).abs() / exact
    };
    let fp = ctx.full_precision;
    println!("approx = {}", fmt_value(approx, fp));
    println!("d2 = {}", fmt_value(exact, fp));
    println!("rel_err = {}", fmt_value(rel, fp));
    Ok(())
}

fn cmd_fit_ab(ctx: &Ctx, n: usize, fit_samples: u64) -> Result<(), CliError> {
    let (a, b) = eunorm::params::fit_seol_cheun(n, fit_samples, ctx.seed, ctx.threads)?;
    let json = serde_json::json!({
        "n": n,
        "a": a,
        "b": b,
        "fit_samples": fit_samples,
        "seed": ctx.seed,
        "workers": ctx.threads,
    });
    println!("{json}");
    Ok(())
}

fn minimax_families(n: usize) -> Result<[NormParams; 3], Error> {
    Ok([
        NormParams::lambda_optimal(n)?,
        NormParams::mu_lambda(n)?,
        NormParams::barni(n)?,
    ])
}

fn cmd_table3(ctx: &Ctx, schedule_text: &str, tol: f64) -> Result<(), CliError> {
    let schedule = parse_schedule(schedule_text)?;
    let mut w = CsvWriter::new(ctx.full_precision);
    w.comment(&format!(
        "table3 seed={} threads={} tol={tol} schedule={}",
        ctx.seed,
        ctx.threads,
        describe(&schedule)
    ));
    w.header(&[
        "n",
        "dlambda_are",
        "dlambda_mre_e",
        "dlambda_mre_t",
        "dmulambda_are",
        "dmulambda_mre_e",
        "dmulambda_mre_t",
        "barni_are",
        "barni_mre_e",
        "barni_mre_t",
        "samples_used",
        "converged",
    ]);
    for n in 2..=10usize {
        let cfg = SamplerConfig::new(n, ctx.seed)?.with_workers(ctx.threads)?;
        let mut cells = vec![Cell::Int(n as u64)];
        let mut samples = 0u64;
        let mut all_converged = true;
        for params in minimax_families(n)? {
            let rep = converged_errors(&params, &cfg, &schedule, tol)?;
            let row = ReportRow::empirical(
                "table3",
                n,
                params.family().id(),
                vec![
                    ("are", rep.are),
                    ("mre_e", rep.mre_e),
                    ("mre_t", rep.mre_t.expect("minimax families have analytic MREs")),
                ],
                rep.samples_used,
                ctx.seed,
            );
            row.log();
            cells.push(Cell::Real(row.value("are")));
            cells.push(Cell::Real(row.value("mre_e")));
            cells.push(Cell::Real(row.value("mre_t")));
            samples = samples.max(rep.samples_used);
            all_converged &= rep.converged;
        }
        cells.push(Cell::Int(samples));
        cells.push(Cell::Flag(all_converged));
        w.row(&cells);
    }
    print!("{}", w.finish());
    Ok(())
}

fn cmd_table4(
    ctx: &Ctx,
    schedule_text: &str,
    tol: f64,
    fit_samples: u64,
    fixed_budget: u64,
    raw_fixed: bool,
) -> Result<(), CliError> {
    let schedule = parse_schedule(schedule_text)?;
    let space = if raw_fixed {
        SampleSpace::RawGaussian
    } else {
        SampleSpace::UnitSphere
    };
    let mut w = CsvWriter::new(ctx.full_precision);
    w.comment(&format!(
        "table4 seed={} threads={} tol={tol} schedule={} fit_samples={fit_samples} fixed_budget={fixed_budget} fixed_space={}",
        ctx.seed,
        ctx.threads,
        describe(&schedule),
        if raw_fixed { "raw-gaussian" } else { "unit-sphere" },
    ));
    w.header(&[
        "n",
        "fixed_are",
        "fixed_mre_e",
        "conv_are",
        "conv_mre_e",
        "samples_used",
        "converged",
    ]);
    for n in 2..=10usize {
        let params = NormParams::seol_cheun(n, fit_samples, ctx.seed, ctx.threads)?;
        if let NormParams::SeolCheunAb { a, b, .. } = &params {
            eprintln!("table4 n={n}: fitted a={a:.8} b={b:.8}");
        }
        let cfg = SamplerConfig::new(n, ctx.seed)?.with_workers(ctx.threads)?;
        let (fixed_are, fixed_mre) = fixed_sample_mre(&params, &cfg, fixed_budget, space)?;
        let rep = converged_errors(&params, &cfg, &schedule, tol)?;
        let fixed_row = ReportRow::empirical(
            "table4-fixed",
            n,
            "dab",
            vec![("are", fixed_are), ("mre_e", fixed_mre)],
            fixed_budget,
            ctx.seed,
        );
        let conv_row = ReportRow::empirical(
            "table4-converged",
            n,
            "dab",
            vec![("are", rep.are), ("mre_e", rep.mre_e)],
            rep.samples_used,
            ctx.seed,
        );
        fixed_row.log();
        conv_row.log();
        w.row(&[
            Cell::Int(n as u64),
            Cell::Real(fixed_row.value("are")),
            Cell::Real(fixed_row.value("mre_e")),
            Cell::Real(conv_row.value("are")),
            Cell::Real(conv_row.value("mre_e")),
            Cell::Int(rep.samples_used),
            Cell::Flag(rep.converged),
        ]);
    }
    print!("{}", w.finish());
    Ok(())
}

fn cmd_mre_curve(ctx: &Ctx, nmax: usize) -> Result<(), CliError> {
    if nmax < 2 {
        return Err(CliError::Usage(format!("--nmax must be at least 2, got {nmax}")));
    }
    let mut w = CsvWriter::new(ctx.full_precision);
    w.comment(&format!("mre-curve nmax={nmax} (analytic)"));
    w.header(&["n", "dlambda_mre_t", "dmulambda_mre_t", "barni_mre_t"]);
    for n in 2..=nmax {
        let lambda = solve_lambda_optimal(n)?;
        let row = ReportRow::analytic(
            "mre-curve",
            n,
            "minimax",
            vec![
                ("dlambda", eunorm::params::mre_lambda_optimal(lambda)?),
                ("dmulambda", mu_lambda_optimal(n)?.mre),
                ("barni", eunorm::params::barni_optimal(n)?.mre),
            ],
        );
        w.row(&[
            Cell::Int(n as u64),
            Cell::Real(row.value("dlambda")),
            Cell::Real(row.value("dmulambda")),
            Cell::Real(row.value("barni")),
        ]);
    }
    print!("{}", w.finish());
    Ok(())
}

fn cmd_coverage(n: u64, epsilon: f64, budget: u64) -> Result<(), CliError> {
    let estimate = coverage::expected_samples(n, epsilon)?;
    let deficiency_ln = (budget as f64).ln() - estimate.ln_expected_samples;
    let patch_count = estimate.patch_count_exact();
    let tail = if patch_count > 1.0 {
        let bounds: Vec<serde_json::Value> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&s| {
                let t = coverage::tail_bound(patch_count, s)?;
                Ok(serde_json::json!({
                    "s": s,
                    "union_bound": t.union_bound,
                    "gumbel_limit": t.gumbel_limit,
                }))
            })
            .collect::<Result<_, Error>>()?;
        serde_json::Value::Array(bounds)
    } else {
        serde_json::Value::Null
    };
    let json = serde_json::json!({
        "n": n,
        "epsilon": epsilon,
        "patch_count_exact": json_from_ln(estimate.ln_patch_count_exact),
        "patch_count_approx": json_from_ln(estimate.ln_patch_count_approx),
        "expected_samples": json_from_ln(estimate.ln_expected_samples),
        "log_domain": estimate.log_domain,
        "budget": budget,
        "deficiency_ratio": json_from_ln(deficiency_ln),
        "tail_bounds": tail,
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
    Ok(())
}

struct OpRow {
    name: &'static str,
    measured: OpCount,
    expected: OpCount,
    /// Comparison band for the sort-based row; exact elsewhere.
    comp_band: Option<(u64, u64)>,
}

impl OpRow {
    fn matches(&self) -> bool {
        let comp_ok = match self.comp_band {
            Some((lo, hi)) => (lo..=hi).contains(&self.measured.comparisons),
            None => self.measured.comparisons == self.expected.comparisons,
        };
        comp_ok
            && self.measured.abs_ops == self.expected.abs_ops
            && self.measured.additions == self.expected.additions
            && self.measured.multiplications == self.expected.multiplications
            && self.measured.square_roots == self.expected.square_roots
    }
}

fn cmd_opcounts(ctx: &Ctx, n: usize) -> Result<(), CliError> {
    let cfg = SamplerConfig::new(n, ctx.seed)?;
    let x = sample_sphere(&cfg, 1).pop().expect("one sample requested");
    let nu = n as u64;

    let dlambda = NormParams::lambda_optimal(n)?.weight_profile()?;
    let dmulambda = NormParams::mu_lambda(n)?.weight_profile()?;
    let barni = NormParams::barni(n)?.weight_profile()?;
    // Count shapes only depend on the weight layout, so a small fit sample
    // is enough for the a,b row.
    let dab = NormParams::seol_cheun(n, 10_000, ctx.seed, ctx.threads)?.weight_profile()?;

    let sort_band = (nu - 1, 2 * nu * (64 - (nu - 1).leading_zeros() as u64));
    let rows = [
        OpRow {
            name: "dinf",
            measured: counted::linf(&x).1,
            expected: OpCount::new(nu, nu - 1, 0, 0, 0),
            comp_band: None,
        },
        OpRow {
            name: "d1",
            measured: counted::l1(&x).1,
            expected: OpCount::new(nu, 0, nu - 1, 0, 0),
            comp_band: None,
        },
        OpRow {
            name: "d2",
            measured: counted::l2(&x).1,
            expected: OpCount::new(0, 0, nu - 1, nu, 1),
            comp_band: None,
        },
        OpRow {
            name: "dlambda",
            measured: counted::weighted(&x, &dlambda)?.1,
            expected: OpCount::new(nu, nu - 1, nu - 1, 1, 0),
            comp_band: None,
        },
        OpRow {
            name: "dmulambda",
            measured: counted::weighted(&x, &dmulambda)?.1,
            expected: OpCount::new(nu, nu - 1, nu, 2, 0),
            comp_band: None,
        },
        OpRow {
            name: "barni",
            measured: counted::weighted_ranked(&x, &barni)?.1,
            expected: OpCount::new(nu, 0, nu - 1, nu, 0),
            comp_band: Some(sort_band),
        },
        OpRow {
            name: "dab",
            measured: counted::weighted(&x, &dab)?.1,
            expected: OpCount::new(nu, nu - 1, nu, 2, 0),
            comp_band: None,
        },
    ];

    println!("{:<10} {:>6} {:>8} {:>6} {:>6} {:>6}  status", "norm", "abs", "comp", "add", "mult", "sqrt");
    let mut failures = Vec::new();
    for row in &rows {
        let m = row.measured;
        let status = if row.matches() {
            match row.comp_band {
                Some((lo, hi)) => format!("ok (sort comparisons within [{lo}, {hi}])"),
                None => "ok".to_string(),
            }
        } else {
            failures.push(format!(
                "{}: measured {} expected {}{}",
                row.name,
                row.measured,
                row.expected,
                match row.comp_band {
                    Some((lo, hi)) => format!(" with comparisons in [{lo}, {hi}]"),
                    None => String::new(),
                }
            ));
            "MISMATCH".to_string()
        };
        println!(
            "{:<10} {:>6} {:>8} {:>6} {:>6} {:>6}  {}",
            row.name, m.abs_ops, m.comparisons, m.additions, m.multiplications, m.square_roots, status
        );
    }
    if failures.is_empty() {
        println!("all operation counts match at n={n}");
        Ok(())
    } else {
        Err(CliError::Mismatch(failures.join("; ")))
    }
}
