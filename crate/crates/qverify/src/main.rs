use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use qverify::registry::{builtin_suite, parse_suite, Identity};
use qverify::report::{Report, Status};
use qverify::runner::run_all;

/// Verify q-series identities by exact coefficient comparison.
///
/// Every identity is evaluated on both sides as a truncated q-expansion with
/// exact rational coefficients; `ok` means all coefficients below the order
/// agree.
#[derive(Parser, Debug)]
#[command(name = "verify", version, disable_help_subcommand = true)]
struct Args {
    /// Additional suite file(s) to load alongside the built-in registry (repeatable).
    #[arg(long = "suite", value_name = "FILE")]
    suite: Vec<PathBuf>,

    /// Run only the identity with this exact name.
    #[arg(long, value_name = "NAME", conflicts_with = "tag")]
    only: Option<String>,

    /// Run only identities carrying this tag.
    #[arg(long, value_name = "TAG")]
    tag: Option<String>,

    /// Override every selected identity's truncation order.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(i64).range(1..))]
    order: Option<i64>,

    /// Write the machine-readable JSON report array to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Number of worker threads (default: one per logical CPU).
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    /// List the selected identities without running them.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();

    let mut identities: Vec<Identity> = builtin_suite().to_vec();
    for path in &args.suite {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        match parse_suite(&text) {
            Ok(mut ids) => identities.append(&mut ids),
            Err(e) => {
                eprintln!("error: {}:{}: {}", path.display(), e.line, e.msg);
                return ExitCode::from(2);
            }
        }
    }

    let selected: Vec<&Identity> = identities
        .iter()
        .filter(|id| match (&args.only, &args.tag) {
            (Some(name), _) => id.name == *name,
            (None, Some(tag)) => id.has_tag(tag),
            (None, None) => true,
        })
        .collect();

    if selected.is_empty() {
        eprintln!("warning: no identities matched the filter");
        return ExitCode::SUCCESS;
    }

    if args.list {
        let width = selected.iter().map(|id| id.name.len()).max().unwrap_or(0);
        for id in &selected {
            let tags = if id.tags.is_empty() {
                String::new()
            } else {
                format!("  #{}", id.tags.join(","))
            };
            println!("{:width$}  @{}{}", id.name, id.order, tags);
        }
        return ExitCode::SUCCESS;
    }

    let jobs = args.jobs.map(|k| k as usize).unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });

    let started = Instant::now();
    let reports = run_all(&selected, args.order, jobs);
    let elapsed = started.elapsed();

    print_table(&reports);
    let (ok, fail, error) = tally(&reports);
    println!(
        "summary: {ok} ok, {fail} fail, {error} error ({} identities in {:.1}s)",
        reports.len(),
        elapsed.as_secs_f64()
    );

    if let Some(path) = &args.json {
        let body = serde_json::to_string_pretty(&reports).expect("reports serialize");
        if let Err(e) = fs::write(path, body + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    if error > 0 {
        ExitCode::from(2)
    } else if fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_table(reports: &[Report]) {
    let width = reports
        .iter()
        .map(|r| r.identity.len())
        .max()
        .unwrap_or(8)
        .max(8);
    println!(
        "{:width$}  {:>5}  {:>6}  {:>8}",
        "identity", "order", "status", "ms"
    );
    for r in reports {
        println!(
            "{:width$}  {:>5}  {:>6}  {:>8}",
            r.identity,
            r.order,
            r.status.as_str(),
            r.ms
        );
        if let Some(m) = &r.first_mismatch {
            println!(
                "{:width$}  first mismatch at q^({}): lhs = {}, rhs = {}",
                "", m.exponent, m.lhs, m.rhs
            );
        }
        if let Some(d) = &r.detail {
            println!("{:width$}  error: {d}", "");
        }
    }
}

fn tally(reports: &[Report]) -> (usize, usize, usize) {
    let mut ok = 0;
    let mut fail = 0;
    let mut error = 0;
    for r in reports {
        match r.status {
            Status::Ok => ok += 1,
            Status::Fail => fail += 1,
            Status::Error => error += 1,
        }
    }
    (ok, fail, error)
}
