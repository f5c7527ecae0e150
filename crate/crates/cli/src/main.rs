use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sukp_core::exact::{brute_force, write_lp, DEFAULT_MAX_ITEMS};
use sukp_core::harness::bench;
use sukp_core::i2pls::{run_with_observer, GreedyScan};
use sukp_core::{
    format_table, generate_instance, parse_instance, Instance, SearchParams, TableFormat,
};

#[derive(Parser, Debug)]
#[command(
    name = "sukp",
    version,
    about = "Set-union knapsack solver and benchmark runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one seeded search and print the best solution
    Solve {
        file: PathBuf,
        /// Time budget in seconds
        #[arg(long, default_value_t = 10.0)]
        time: f64,
        /// Write `elapsed_seconds profit` per improvement to this file
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Repeat seeded runs and print summary statistics
    Bench {
        file: PathBuf,
        #[arg(long)]
        runs: usize,
        /// Time budget per run in seconds
        #[arg(long)]
        time: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Validate the campaign and print its plan without running it
        #[arg(long)]
        dry_run: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Generate a random instance
    Gen {
        #[arg(long)]
        items: usize,
        #[arg(long)]
        elements: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve exactly by enumerating every subset
    Exact { file: PathBuf },
    /// Write the instance as an integer program in LP format
    ExportLp {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Seed of the (first) run
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    lambda_max: Option<usize>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    omega_max: Option<usize>,
    #[arg(long)]
    eta: Option<f64>,
    /// Disable the aspiration criterion in tabu search
    #[arg(long)]
    strict_paper: bool,
    /// Stop after this many explore/escape cycles
    #[arg(long)]
    max_iters: Option<u64>,
    /// Stop the greedy start at the first item that does not fit
    #[arg(long)]
    greedy_stop: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

/// An error together with the process exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 1,
            error: error.into(),
        }
    }
}

const MALFORMED: u8 = 2;
const INFEASIBLE: u8 = 3;

type Outcome = Result<(), Failure>;

impl SearchArgs {
    fn params(&self, time: f64) -> Result<SearchParams, Failure> {
        let budget = Duration::try_from_secs_f64(time)
            .ok()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| {
                Failure::usage(anyhow!("--time must be a positive number of seconds"))
            })?;
        let mut p = SearchParams::default()
            .with_time_budget(budget)
            .with_seed(self.seed);
        if let Some(v) = self.lambda_max {
            p.lambda_max = v;
        }
        if let Some(v) = self.rho {
            p.rho = v;
        }
        if let Some(v) = self.omega_max {
            p.omega_max = v;
        }
        if let Some(v) = self.eta {
            p.eta = v;
        }
        if self.strict_paper {
            p = p.strict_paper();
        }
        if self.greedy_stop {
            p.greedy_scan = GreedyScan::StopAtFirstOverflow;
        }
        p.max_outer_iterations = self.max_iters;
        p.validate().map_err(Failure::usage)?;
        Ok(p)
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::usage)?;
    parse_instance(&text).map_err(|e| Failure {
        code: MALFORMED,
        error: anyhow!("{}: {e}", path.display()),
    })
}

fn no_item_fits(inst: &Instance) -> bool {
    (0..inst.num_items()).all(|i| inst.item_weight(i).map_or(true, |w| w > inst.capacity()))
}

fn infeasible(path: &Path) -> Failure {
    Failure {
        code: INFEASIBLE,
        error: anyhow!("{}: no item fits the knapsack on its own", path.display()),
    }
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn solve(file: &Path, time: f64, trace: Option<&Path>, search: &SearchArgs) -> Outcome {
    let params = search.params(time)?;
    let inst = load(file)?;
    let mut sink = match trace {
        Some(p) => Some(BufWriter::new(
            fs::File::create(p)
                .with_context(|| format!("cannot create {}", p.display()))
                .map_err(Failure::usage)?,
        )),
        None => None,
    };
    let mut write_err = None;
    let res = run_with_observer(&inst, &params, |point| {
        log::debug!(
            "improved to {} at {:.3}s",
            point.profit,
            point.elapsed.as_secs_f64()
        );
        if let (Some(out), None) = (sink.as_mut(), write_err.as_ref()) {
            let line = writeln!(out, "{:.6} {}", point.elapsed.as_secs_f64(), point.profit);
            write_err = line.err();
        }
    })
    .map_err(Failure::usage)?;
    if let Some(out) = sink.as_mut() {
        let flushed = match write_err {
            Some(e) => Err(e),
            None => out.flush(),
        };
        flushed
            .context("cannot write trace")
            .map_err(Failure::usage)?;
    }
    if res.infeasible {
        return Err(infeasible(file));
    }
    let items: Vec<String> = res.best.selected_items().map(|i| i.to_string()).collect();
    println!("profit {}", res.best_profit);
    println!("weight {}", res.best.weight());
    println!("time_to_best {:.3}", res.time_to_best.as_secs_f64());
    println!("outer_iterations {}", res.outer_iterations);
    println!("items {}", items.join(" "));
    Ok(())
}

fn run_bench(
    file: &Path,
    runs: usize,
    time: f64,
    format: Format,
    jobs: usize,
    dry_run: bool,
    search: &SearchArgs,
) -> Outcome {
    if runs == 0 {
        return Err(Failure::usage(anyhow!("--runs must be at least 1")));
    }
    if jobs == 0 {
        return Err(Failure::usage(anyhow!("--jobs must be at least 1")));
    }
    let params = search.params(time)?;
    let inst = load(file)?;
    let name = instance_name(file);
    if dry_run {
        let last = params.seed.wrapping_add(runs as u64 - 1);
        println!(
            "{name}: {runs} runs of {:.3}s, seeds {}..={last}, {jobs} jobs, m = {}, n = {}",
            params.time_budget.as_secs_f64(),
            params.seed,
            inst.num_items(),
            inst.num_elements()
        );
        return Ok(());
    }
    let stats = bench(&inst, &params, runs, params.seed, jobs).map_err(Failure::usage)?;
    let table = match format {
        Format::Csv => TableFormat::Csv,
        Format::Markdown => TableFormat::Markdown,
    };
    let out = format_table(&[(name, stats)], table).map_err(Failure::usage)?;
    print!("{out}");
    if no_item_fits(&inst) {
        return Err(infeasible(file));
    }
    Ok(())
}

fn gen(items: usize, elements: usize, alpha: f64, beta: f64, seed: u64, output: &Path) -> Outcome {
    let inst = generate_instance(items, elements, alpha, beta, seed).map_err(Failure::usage)?;
    fs::write(output, inst.to_string())
        .with_context(|| format!("cannot write {}", output.display()))
        .map_err(Failure::usage)?;
    println!("{} -> {}", inst.descriptive_name(), output.display());
    Ok(())
}

fn exact(file: &Path) -> Outcome {
    let inst = load(file)?;
    let res = brute_force(&inst, DEFAULT_MAX_ITEMS).map_err(Failure::usage)?;
    let items: Vec<String> = res.optimal_set.iter().map(|i| i.to_string()).collect();
    println!("optimum {}", res.optimal_profit);
    println!("items {}", items.join(" "));
    println!("subsets {}", res.subsets_enumerated);
    if no_item_fits(&inst) {
        return Err(infeasible(file));
    }
    Ok(())
}

fn export(file: &Path, output: &Path) -> Outcome {
    let inst = load(file)?;
    let out = fs::File::create(output)
        .with_context(|| format!("cannot create {}", output.display()))
        .map_err(Failure::usage)?;
    let mut out = BufWriter::new(out);
    write_lp(&inst, &mut out)
        .and_then(|_| out.flush())
        .with_context(|| format!("cannot write {}", output.display()))
        .map_err(Failure::usage)
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve {
            file,
            time,
            trace,
            search,
        } => solve(&file, time, trace.as_deref(), &search),
        Command::Bench {
            file,
            runs,
            time,
            format,
            jobs,
            dry_run,
            search,
        } => run_bench(&file, runs, time, format, jobs, dry_run, &search),
        Command::Gen {
            items,
            elements,
            alpha,
            beta,
            seed,
            output,
        } => gen(items, elements, alpha, beta, seed, &output),
        Command::Exact { file } => exact(&file),
        Command::ExportLp { file, output } => export(&file, &output),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = writeln!(io::stderr(), "error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
