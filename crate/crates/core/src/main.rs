use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use bcpp::bench::{self, BenchConfig, DenominatorPolicy, LexKeyName};
use bcpp::render::{render_svg, RenderOptions};
use bcpp::{blp, evaluate, solve_exact, Algorithm, Error, Instance, LexKey, Packing};

#[derive(Parser)]
#[command(name = "bcpp", version, about = "Bar chart packing into a unit-height strip")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack an instance with one heuristic.
    Solve {
        #[arg(long)]
        alg: Algorithm,
        #[arg(long = "in")]
        input: PathBuf,
        /// `lex` applies the lexicographic pre-order to any algorithm.
        #[arg(long, value_enum, default_value_t = Order::Input)]
        order: Order,
        #[arg(long, value_enum, default_value_t = KeyArg::FirstBar)]
        lex_key: KeyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Branch-and-bound optimum.
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        /// Seconds.
        #[arg(long, default_value_t = 10.0)]
        time_limit: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Boolean linear program in LP format.
    ExportLp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random two-bar instance with heights uniform on (0, 1].
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Benchmark sweep; flags override the config file.
    Bench {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        algorithms: Option<Vec<Algorithm>>,
        #[arg(long, value_enum)]
        denominator: Option<DenomArg>,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, value_enum)]
        lex_key: Option<KeyArg>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Draw a packing as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        packing: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Draw infeasible packings too.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Input,
}

#[derive(Clone, Copy, ValueEnum)]
enum KeyArg {
    FirstBar,
    MaxBar,
}

impl From<KeyArg> for LexKeyName {
    fn from(k: KeyArg) -> Self {
        match k {
            KeyArg::FirstBar => LexKeyName::FirstBar,
            KeyArg::MaxBar => LexKeyName::MaxBar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DenomArg {
    Exact,
    LowerBound,
    Auto,
}

impl From<DenomArg> for DenominatorPolicy {
    fn from(d: DenomArg) -> Self {
        match d {
            DenomArg::Exact => DenominatorPolicy::Exact,
            DenomArg::LowerBound => DenominatorPolicy::LowerBound,
            DenomArg::Auto => DenominatorPolicy::Auto,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 3 for algorithm/instance shape mismatch, 2 for malformed input, 1 otherwise.
fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_shape_mismatch() => 3,
        Error::Io(_) | Error::Infeasible { .. } | Error::InvalidDenominator(_) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Solve { alg, input, order, lex_key, out } => {
            let instance = Instance::from_json(&read(&input)?)?;
            let key = LexKey::from(LexKeyName::from(lex_key));
            let packing = match order {
                Order::Input => alg.solve_with(&instance, key)?,
                Order::Lex => {
                    // re-number charts in lex order, solve, map back
                    if alg.requires_two_bar() {
                        instance.require_two_bar()?;
                    }
                    let ids = bcpp::twobar::lex_order_by(&instance, key)?;
                    let sub = instance.subset(ids.as_slice());
                    let p = alg.solve_with(&sub, key)?;
                    let mut starts = vec![0; instance.len()];
                    for (pos, &id) in ids.as_slice().iter().enumerate() {
                        starts[id] = p.start(pos);
                    }
                    Packing::new(starts)?
                }
            };
            report(&instance, &packing, out.as_deref())
        }
        Command::Exact { input, time_limit, out } => {
            let instance = Instance::from_json(&read(&input)?)?;
            if !(time_limit >= 0.0 && time_limit.is_finite()) {
                return Err(Error::InvalidConfig("time limit must be a non-negative number".into()));
            }
            let res = solve_exact(&instance, Duration::from_secs_f64(time_limit))?;
            println!("optimal={}, nodes={}", res.proven_optimal, res.nodes);
            report(&instance, &res.packing, out.as_deref())
        }
        Command::ExportLp { input, out } => {
            let instance = Instance::from_json(&read(&input)?)?;
            emit(out.as_deref(), &blp::export_blp(&instance)?)
        }
        Command::Generate { n, seed, out } => {
            if n == 0 {
                return Err(Error::EmptyInstance);
            }
            let text = bench::generate(n, seed).to_json() + "\n";
            emit(out.as_deref(), &text)
        }
        Command::Bench {
            config,
            sizes,
            instances,
            seed,
            algorithms,
            denominator,
            time_limit,
            lex_key,
            csv,
            markdown,
            jobs,
        } => {
            let mut cfg = match config {
                Some(p) => BenchConfig::from_json(&read(&p)?)?,
                None => BenchConfig::default(),
            };
            if let Some(v) = sizes {
                cfg.sizes = v;
            }
            if let Some(v) = instances {
                cfg.instances_per_size = v;
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = algorithms {
                cfg.algorithms = v;
            }
            if let Some(v) = denominator {
                cfg.denominator = v.into();
            }
            if let Some(v) = time_limit {
                cfg.exact_time_limit = v;
            }
            if let Some(v) = lex_key {
                cfg.lex_key = v.into();
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
            let records = pool.install(|| bench::run_bench(&cfg))?;
            let csv_text = bench::to_csv(&records);
            let md = bench::to_markdown(&records);
            match csv {
                Some(p) => fs::write(p, &csv_text)?,
                None => print!("{csv_text}"),
            }
            match markdown {
                Some(p) => fs::write(p, &md)?,
                None => print!("\n{md}"),
            }
            Ok(())
        }
        Command::Render { input, packing, out, force } => {
            let instance = Instance::from_json(&read(&input)?)?;
            let packing = Packing::from_json(&read(&packing)?)?;
            let svg = render_svg(&instance, &packing, RenderOptions { force })?;
            Ok(fs::write(out, svg)?)
        }
    }
}

fn report(instance: &Instance, packing: &Packing, out: Option<&Path>) -> Result<(), Error> {
    let r = evaluate(instance, packing)?;
    if let Some(p) = out {
        fs::write(p, packing.to_json() + "\n")?;
    }
    println!("{r}");
    Ok(())
}
