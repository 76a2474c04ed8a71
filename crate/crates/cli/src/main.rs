//! Command-line front end: dataset ingestion, transformations, distances,
//! means, α selection and ternary plots.
//!
//! Exit codes: 0 success, 1 usage/parse failure, 2 domain violation (zeros,
//! dimensions, scale), 3 numerical failure.

mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};

use alphacomp::fixtures::{fixture_csv, FIXTURE_NAMES};
use alphacomp::select::{select_alpha, CriterionSpec};
use alphacomp::ternary::{render_ternary, MarkerStyle, TernaryPlotSpec};
use alphacomp::{
    dist_alpha, dist_lra, dist_rda, mean_arithmetic, mean_frechet_alpha, mean_geometric_closed,
    Composition, Error, HelmertBasis, TransformKind, TransformSpec,
};

use io::{format_sig, matrix_csv, read_dataset, CliError};

#[derive(Parser)]
#[command(name = "alphacomp", version, about = "Compositional data analysis with the alpha-transformation family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a dataset and write the result as CSV.
    Transform(TransformArgs),
    /// Print Frechet means of a dataset.
    Mean(MeanArgs),
    /// Print a distance between two rows or the full distance matrix.
    Dist(DistArgs),
    /// Select alpha by profile log-likelihood and report the three means.
    SelectAlpha(SelectArgs),
    /// Write an embedded fixture dataset as CSV.
    Fixture(FixtureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Clr,
    Ilr,
    Alr,
    BoxcoxRatio,
    Alpha,
    AlphaIsometric,
}

#[derive(Args)]
struct TransformArgs {
    /// Input CSV path.
    input: String,
    /// Output CSV path.
    output: String,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Parameter: lambda for boxcox-ratio, alpha for the alpha kinds.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Divisor component for alr/boxcox-ratio, 1-based; defaults to the last.
    #[arg(long)]
    divisor: Option<usize>,
    #[arg(long, default_value_t = 7)]
    precision: usize,
}

#[derive(Args)]
struct MeanArgs {
    input: String,
    /// Alpha value(s) of the requested mean(s); repeatable.
    #[arg(long)]
    alpha: Vec<f64>,
    /// Print mu(0), mu(alpha) for each requested alpha, and mu(1).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 7)]
    precision: usize,
}

#[derive(Args)]
struct DistArgs {
    input: String,
    #[arg(long, value_enum)]
    kind: DistKindArg,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Two 1-based row indices.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<usize>>,
    /// Print the full n x n distance matrix.
    #[arg(long)]
    matrix: bool,
    #[arg(long, default_value_t = 7)]
    precision: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistKindArg {
    Rda,
    Lra,
    Alpha,
}

#[derive(Args)]
struct SelectArgs {
    input: String,
    /// Lower end of the search interval (default -1, or 0.01 with zeros).
    #[arg(long)]
    lo: Option<f64>,
    /// Upper end of the search interval (default 1).
    #[arg(long)]
    hi: Option<f64>,
    /// Coarse grid size (>= 11).
    #[arg(long, default_value_t = 41)]
    grid: usize,
    /// Seed for the Monte Carlo simplex-escape diagnostic.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write a ternary diagram with the three means overlaid (3-part data only).
    #[arg(long)]
    plot: Option<String>,
    #[arg(long, default_value_t = 7)]
    precision: usize,
}

#[derive(Args)]
struct FixtureArgs {
    /// Fixture name (table1, recovery).
    #[arg(long)]
    name: String,
    /// Output CSV path.
    output: String,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit code for --help/--version is fine; real parse
            // errors map to the documented usage code 1
            if err.use_stderr() {
                eprintln!("{err}");
                std::process::exit(1);
            }
            err.exit();
        }
    };
    let result = match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Mean(args) => cmd_mean(args),
        Command::Dist(args) => cmd_dist(args),
        Command::SelectAlpha(args) => cmd_select_alpha(args),
        Command::Fixture(args) => cmd_fixture(args),
    };
    if let Err(err) = result {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}

fn divisor_index(divisor: Option<usize>, dim: usize) -> Result<usize, CliError> {
    match divisor {
        None => Ok(dim - 1),
        Some(0) => Err(CliError::usage("--divisor is 1-based")),
        Some(d) if d > dim => Err(CliError::domain(format!(
            "--divisor {d} out of range for {dim} components"
        ))),
        Some(d) => Ok(d - 1),
    }
}

fn cmd_transform(args: TransformArgs) -> Result<(), CliError> {
    let ds = read_dataset(&args.input)?;
    let dim = ds.dim();
    let divisor = divisor_index(args.divisor, dim)?;
    let kind = match args.kind {
        KindArg::Clr => TransformKind::Clr,
        KindArg::Ilr => TransformKind::Ilr,
        KindArg::Alr => TransformKind::Alr,
        KindArg::BoxcoxRatio => TransformKind::BoxcoxRatio,
        KindArg::Alpha => TransformKind::AlphaPower,
        KindArg::AlphaIsometric => TransformKind::AlphaIsometric,
    };
    let spec = TransformSpec::new(kind)
        .with_alpha(args.alpha)
        .with_divisor(divisor);
    let h = HelmertBasis::new(dim)?;

    let mut values = Vec::with_capacity(ds.len());
    for (row, id) in ds.rows().iter().zip(ds.row_ids()) {
        match spec.apply(row, &h) {
            Ok(v) => values.push(v),
            Err(Error::ZeroPartNotAllowed { index }) => {
                return Err(CliError::domain(format!(
                    "row {id}, component {}: zero part not allowed by this transformation",
                    ds.component_names()[index]
                )));
            }
            Err(e) => return Err(e.into()),
        }
    }

    let header: Vec<String> = match kind {
        TransformKind::Clr | TransformKind::AlphaPower => ds.component_names().to_vec(),
        TransformKind::Alr | TransformKind::BoxcoxRatio => ds
            .component_names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != divisor)
            .map(|(_, n)| n.clone())
            .collect(),
        TransformKind::Ilr | TransformKind::AlphaIsometric => {
            (1..dim).map(|i| format!("z{i}")).collect()
        }
    };
    let csv = matrix_csv(&header, ds.row_ids(), &values, args.precision);
    std::fs::write(&args.output, csv)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", args.output)))?;
    Ok(())
}

fn fmt_parts(c: &Composition, sig: usize) -> String {
    c.parts()
        .iter()
        .map(|v| format_sig(*v, sig))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_mean(args: MeanArgs) -> Result<(), CliError> {
    let ds = read_dataset(&args.input)?;
    if !args.all && args.alpha.is_empty() {
        return Err(CliError::usage("pass --alpha <a> (repeatable) or --all"));
    }
    if args.all {
        println!("mean,{}", ds.component_names().join(","));
        println!(
            "mu(0),{}",
            fmt_parts(&mean_geometric_closed(&ds)?, args.precision)
        );
        for &alpha in &args.alpha {
            println!(
                "mu({alpha}),{}",
                fmt_parts(&mean_frechet_alpha(&ds, alpha)?.mean, args.precision)
            );
        }
        println!("mu(1),{}", fmt_parts(&mean_arithmetic(&ds), args.precision));
    } else {
        for &alpha in &args.alpha {
            println!(
                "{}",
                fmt_parts(&mean_frechet_alpha(&ds, alpha)?.mean, args.precision)
            );
        }
    }
    Ok(())
}

fn cmd_dist(args: DistArgs) -> Result<(), CliError> {
    let ds = read_dataset(&args.input)?;
    let dist = |x: &Composition, w: &Composition| -> Result<f64, Error> {
        match args.kind {
            DistKindArg::Rda => dist_rda(x, w),
            DistKindArg::Lra => dist_lra(x, w),
            DistKindArg::Alpha => dist_alpha(x, w, args.alpha),
        }
    };
    match (&args.pair, args.matrix) {
        (Some(pair), false) => {
            let n = ds.len();
            let (i, j) = (pair[0], pair[1]);
            if i == 0 || j == 0 || i > n || j > n {
                return Err(CliError::usage(format!(
                    "--pair indices are 1-based and must be <= {n}"
                )));
            }
            let d = dist(&ds.rows()[i - 1], &ds.rows()[j - 1])?;
            println!("{}", format_sig(d, args.precision));
        }
        (None, true) => {
            let n = ds.len();
            let mut rows = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = dist(&ds.rows()[i], &ds.rows()[j])?;
                    rows[i][j] = d;
                    rows[j][i] = d;
                }
            }
            print!(
                "{}",
                matrix_csv(ds.row_ids(), ds.row_ids(), &rows, args.precision)
            );
        }
        _ => return Err(CliError::usage("pass exactly one of --pair I J or --matrix")),
    }
    Ok(())
}

fn cmd_select_alpha(args: SelectArgs) -> Result<(), CliError> {
    let ds = read_dataset(&args.input)?;
    let mut spec = CriterionSpec::default_for(&ds);
    if let Some(lo) = args.lo {
        spec.lo = lo;
    }
    if let Some(hi) = args.hi {
        spec.hi = hi;
    }
    spec.grid_points = args.grid;
    spec.seed = args.seed;
    let h = HelmertBasis::new(ds.dim())?;
    let res = select_alpha(&ds, &spec, &h)?;

    let sig = args.precision;
    println!("alpha_hat={}", format_sig(res.alpha_hat, sig));
    println!("loglik={}", format_sig(res.loglik_at_hat, sig));
    println!("boundary_maximum={}", res.boundary_maximum);
    println!("mu_0={}", fmt_parts(&res.means.geometric, sig));
    println!("mu_alpha_hat={}", fmt_parts(&res.means.at_alpha_hat, sig));
    println!("mu_1={}", fmt_parts(&res.means.arithmetic, sig));
    println!("simplex_escape_fraction={}", res.escape_fraction);

    if let Some(path) = &args.plot {
        if ds.dim() != 3 {
            return Err(CliError::domain(format!(
                "--plot needs a 3-part dataset, got {} components",
                ds.dim()
            )));
        }
        let plot = TernaryPlotSpec::new(ds)?
            .with_overlay("mu(0)", res.means.geometric.clone(), MarkerStyle::Triangle)
            .with_overlay(
                &format!("mu({})", format_sig(res.alpha_hat, 4)),
                res.means.at_alpha_hat.clone(),
                MarkerStyle::Square,
            )
            .with_overlay("mu(1)", res.means.arithmetic.clone(), MarkerStyle::Diamond);
        let svg = render_ternary(&plot)?;
        std::fs::write(path, svg)
            .map_err(|e| CliError::usage(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn cmd_fixture(args: FixtureArgs) -> Result<(), CliError> {
    let Some(csv) = fixture_csv(&args.name) else {
        return Err(CliError::usage(format!(
            "unknown fixture {:?}; available: {}",
            args.name,
            FIXTURE_NAMES.join(", ")
        )));
    };
    std::fs::write(&args.output, csv)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", args.output)))?;
    Ok(())
}
