use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use empty4::bounds::{
    direct_sum_rs_coefficient, eq8_bound, hollow3_volume_bound, lambda_table, simplex_volume_cap,
    width_table,
};
use empty4::catalog::{diff_store, verify_catalog};
use empty4::certify::{completeness_certificate, PUBLISHED_COVERAGE};
use empty4::enumeration::{enumerate_range, AlgorithmChoice, Outcome, TimingModel};
use empty4::simplex::{
    first_interior_class, functional_from_certificate, width, DEFAULT_WIDTH_CAP,
};
use empty4::store::Store;
use empty4::white::crosscheck_white;
use empty4::{ResidueTuple, VRepSimplex, WidthResult};

#[derive(Parser)]
#[command(name = "empty4", version, about = "Empty lattice 4-simplex enumeration and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all empty classes for a range of determinants into a store
    Enumerate {
        #[arg(long)]
        dmin: u32,
        #[arg(long)]
        dmax: u32,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algorithm: AlgoArg,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        store: PathBuf,
    },
    /// Check the embedded catalog, and optionally diff it against a store
    VerifyCatalog {
        #[arg(long, requires = "dmax")]
        store: Option<PathBuf>,
        #[arg(long, requires = "store")]
        dmax: Option<u32>,
    },
    /// Lattice width with a certificate
    Width {
        #[command(flatten)]
        input: SimplexInput,
        #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
        cap: u32,
    },
    /// Emptiness verdict, with the first lattice-point class if nonempty
    Empty {
        #[command(flatten)]
        input: SimplexInput,
    },
    /// Evaluate the volume bounds
    Bounds {
        #[arg(long, group = "what")]
        width: Option<f64>,
        #[arg(long, requires = "width")]
        five_point: bool,
        #[arg(long, group = "what")]
        lambda: Option<f64>,
        #[arg(long, group = "what")]
        cap: bool,
        /// CSV of (w, bound) over [2.4, 5]
        #[arg(long, group = "what")]
        width_table: bool,
        /// CSV of (lambda, bound) over [0.02, 0.20]
        #[arg(long, group = "what")]
        lambda_table: bool,
    },
    /// Check empty tetrahedra T(p, q) for all q <= qmax
    White3d {
        #[arg(long)]
        qmax: u32,
    },
    /// Completeness certificate for a store covering 1..=dmax
    Certify {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        dmax: u32,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SimplexInput {
    /// v of conv(e1, e2, e3, e4, v), e.g. "6 14 17 65"
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Residue tuple, e.g. "101:-1 6 14 17 65"
    #[arg(long, allow_hyphen_values = true)]
    tuple: Option<String>,
}

impl SimplexInput {
    fn resolve(&self) -> empty4::Result<(ResidueTuple, Option<VRepSimplex>)> {
        if let Some(v) = &self.v {
            let coords = v
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| empty4::Error::Parse(format!("bad coordinate {t:?}")))
                })
                .collect::<empty4::Result<Vec<_>>>()?;
            let coords: [i64; 4] = coords
                .try_into()
                .map_err(|_| empty4::Error::Parse("--v needs four integers".into()))?;
            let s = VRepSimplex::new(coords)?;
            return Ok((s.tuple(), Some(s)));
        }
        let u: ResidueTuple = self.tuple.as_deref().unwrap_or_default().parse()?;
        let s = (u.arity() == 5).then(|| VRepSimplex::from_tuple(&u).ok()).flatten();
        Ok((u, s))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Auto,
    A1,
    A2,
}

impl From<AlgoArg> for AlgorithmChoice {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Auto => AlgorithmChoice::Auto,
            AlgoArg::A1 => AlgorithmChoice::A1,
            AlgoArg::A2 => AlgorithmChoice::A2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_extrapolation(store: &Store) -> empty4::Result<()> {
    let timings = store.timings()?;
    let Some(model) = TimingModel::fit(timings.iter().map(|(&d, &(_, t))| (d, t))) else {
        return Ok(());
    };
    let measured: f64 = timings.values().map(|(_, t)| t).sum();
    println!(
        "timing fit over {} determinants: t(D) ~ {:.3e} * D^{:.2} s (measured total {:.1} s)",
        model.samples, model.coefficient, model.exponent, measured
    );
    println!(
        "extrapolated wall time for D <= {}: {:.1} hours",
        PUBLISHED_COVERAGE,
        model.total(1, PUBLISHED_COVERAGE) / 3600.0
    );
    Ok(())
}

/// Returns whether the command's checks all passed.
fn run(command: Command) -> empty4::Result<bool> {
    match command {
        Command::Enumerate {
            dmin,
            dmax,
            algorithm,
            jobs,
            store,
        } => {
            let store = Store::open(store)?;
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                builder = builder.num_threads(j);
            }
            let pool = builder
                .build()
                .map_err(|e| empty4::Error::Parse(format!("thread pool: {e}")))?;
            let outcomes = pool.install(|| {
                enumerate_range(dmin, dmax, &store, algorithm.into(), |d, o| match o {
                    Outcome::Computed(r) => {
                        let wide = r.classes.iter().filter(|c| c.width.at_least(3)).count();
                        println!(
                            "D={d} algo={} classes={} wide={} secs={:.3}",
                            r.algorithm,
                            r.classes.len(),
                            wide,
                            r.elapsed.map_or(0.0, |t| t.as_secs_f64())
                        );
                    }
                    Outcome::Skipped => println!("D={d} skipped (complete)"),
                    Outcome::Failed(e) => eprintln!("D={d} failed: {e}"),
                })
            })?;
            print_extrapolation(&store)?;
            Ok(outcomes
                .iter()
                .all(|(_, o)| !matches!(o, Outcome::Failed(_))))
        }
        Command::VerifyCatalog { store, dmax } => {
            let report = verify_catalog();
            print!("{report}");
            let mut ok = report.passed();
            if let (Some(dir), Some(dmax)) = (store, dmax) {
                let diff = diff_store(&Store::open(dir)?, dmax)?;
                print!("{diff}");
                ok &= diff.is_empty();
            }
            Ok(ok)
        }
        Command::Width { input, cap } => {
            let (u, s) = input.resolve()?;
            match width(&u, cap) {
                WidthResult::Exact { width, certificate } => {
                    println!("tuple {u}");
                    println!("width {width}");
                    println!("certificate {certificate:?}");
                    if let Some(s) = s.filter(|s| s.tuple() == u) {
                        let f = functional_from_certificate(&s, &certificate)?;
                        println!(
                            "functional {:?}·x + {} on {s}",
                            f.coeffs, f.constant
                        );
                    }
                }
                WidthResult::ExceedsCap { cap } => {
                    println!("tuple {u}");
                    println!("width >{cap}");
                }
            }
            Ok(true)
        }
        Command::Empty { input } => {
            let (u, _) = input.resolve()?;
            if !u.is_primitive() {
                return Err(empty4::Error::NotPrimitive(u.to_string()));
            }
            match first_interior_class(u.modulus(), u.entries()) {
                None => println!("{u} empty"),
                Some(k) => println!("{u} nonempty witness k={k}"),
            }
            Ok(true)
        }
        Command::Bounds {
            width,
            five_point,
            lambda,
            cap,
            width_table: wt,
            lambda_table: lt,
        } => {
            if let Some(w) = width {
                let b = hollow3_volume_bound(w, five_point)?;
                println!(
                    "w={} five_point={} regime={:?} bound={:.9}",
                    b.input, five_point, b.regime, b.value
                );
            } else if let Some(l) = lambda {
                println!("lambda={l} bound={:.9}", eq8_bound(l)?);
            } else if cap {
                let c = simplex_volume_cap();
                println!(
                    "small-lambda branch at 1/42: {} = {:.6}, floor {}",
                    c.small_lambda_exact,
                    *c.small_lambda_exact.numer() as f64 / *c.small_lambda_exact.denom() as f64,
                    c.small_lambda_floor
                );
                println!("large-lambda branch at 0.19: {:.4}", c.large_lambda_value);
                println!("hollow-projection cap: {}", c.projecting_cap);
                println!(
                    "direct-sum coefficients: (0,3) -> {}, (1,2) -> {}",
                    direct_sum_rs_coefficient(0, 3)?,
                    direct_sum_rs_coefficient(1, 2)?
                );
                println!("cap {}", c.cap);
            } else if wt {
                println!("w,general,five_point");
                let g = width_table(2.4, 5.0, 260, false);
                let f = width_table(2.4, 5.0, 260, true);
                for ((w, a), (_, b)) in g.iter().zip(&f) {
                    println!("{w:.4},{a:.6},{b:.6}");
                }
            } else if lt {
                println!("lambda,bound");
                for (l, b) in lambda_table(0.02, 0.20, 180) {
                    println!("{l:.4},{b:.6}");
                }
            } else {
                return Err(empty4::Error::Parse(
                    "bounds needs one of --width, --lambda, --cap, --width-table, --lambda-table"
                        .into(),
                ));
            }
            Ok(true)
        }
        Command::White3d { qmax } => {
            let mut ok = true;
            println!("q classes orbits empty width1");
            for q in 1..=qmax {
                let c = crosscheck_white(q)?;
                println!(
                    "{} {} {} {} {}",
                    q, c.classes, c.orbits, c.all_empty, c.all_width_one
                );
                ok &= c.passed();
            }
            println!("verdict: {}", if ok { "PASS" } else { "FAIL" });
            Ok(ok)
        }
        Command::Certify { store, dmax } => {
            let store = Store::open(store)?;
            let cert = completeness_certificate(dmax, &store)?;
            print!("{cert}");
            print_extrapolation(&store)?;
            Ok(cert.complete())
        }
    }
}
