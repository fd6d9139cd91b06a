use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cfum_cli::commands::{self, Instance};
use cfum_core::ColoringKind;

/// Unique-maximum, conflict-free and odd colorings of hypergraphs and trees.
///
/// Structured results go to standard output as JSON, a short summary to
/// standard error. Exit status: 0 pass, 1 semantic failure, 2 bad input.
#[derive(Parser)]
#[command(name = "cfum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InstanceArgs {
    /// Hypergraph file (`.hg`).
    #[arg(long, alias = "input")]
    hypergraph: Option<PathBuf>,
    /// Tree file (`.tree`); its path hypergraph is used.
    #[arg(long)]
    tree: Option<PathBuf>,
}

impl InstanceArgs {
    fn instance(self) -> Instance {
        match (self.hypergraph, self.tree) {
            (Some(h), _) => Instance::Hypergraph(h),
            (None, Some(t)) => Instance::Tree(t),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a coloring against a kind (nm, rb, um, cf, odd).
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        kind: ColoringKind,
    },
    /// Exact chromatic number of the given kind.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        kind: ColoringKind,
        #[arg(long)]
        max_colors: Option<u32>,
        /// Seconds; overrides CFUM_TIME_LIMIT.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Build and verify colorings.
    Color {
        #[command(subcommand)]
        what: Color,
    },
    /// Long path or deep binary subdivision in a critical tree.
    Extract {
        #[arg(long, alias = "input")]
        tree: PathBuf,
        /// Criticality level; certified from the tree when omitted.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: u32,
    },
    /// Search for an all-even path in a colored complete binary subdivision.
    Refute {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Palette size.
        #[arg(long)]
        k: u32,
        /// Subdivision witness as JSON; defaults to the identity on a heap-layout `B_d`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run a named reproduction experiment.
    Experiment {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Partition hypergraph; with `--l`, its `l`-uniform variant.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
        /// Output prefix; writes PREFIX.hg and the part coloring PREFIX.col.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical tree from the canonical, a seeded, or a JSON recipe.
    Critical {
        #[arg(long)]
        k: u32,
        #[arg(long, conflicts_with = "recipe")]
        seed: Option<u64>,
        #[arg(long)]
        recipe: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete binary tree with `d` levels.
    Binary {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Color {
    /// Unique-maximum coloring from a conflict-free one.
    UmFromCf {
        #[arg(long, alias = "input")]
        hypergraph: PathBuf,
        #[arg(long, alias = "cf")]
        coloring: PathBuf,
        /// Use the refinement for `l`-uniform hypergraphs.
        #[arg(long)]
        uniform: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conflict-free coloring of a complete binary tree from the `k`-subsets of `1..=n`.
    Psf {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 6-color conflict-free coloring of `B_7`, optionally iterated.
    B7 {
        #[arg(long, default_value_t = 1)]
        iterate: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unique-maximum coloring of the path on `n` vertices.
    UmPath {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unique-maximum coloring of `B_d` by level.
    UmBinary {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cmd: Command) -> cfum_core::Result<commands::Outcome> {
    match cmd {
        Command::Verify { instance, coloring, kind } => commands::verify(&instance.instance(), &coloring, kind),
        Command::Solve { instance, kind, max_colors, time_limit } => {
            commands::solve(&instance.instance(), kind, max_colors, time_limit)
        }
        Command::Gen { what } => match what {
            Gen::Extremal { n, k, l, out } => commands::gen_extremal(n, k, l, out.as_deref()),
            Gen::Critical { k, seed, recipe, out } => {
                commands::gen_critical(k, seed, recipe.as_deref(), out.as_deref())
            }
            Gen::Binary { d, out } => commands::gen_binary(d, out.as_deref()),
        },
        Command::Color { what } => match what {
            Color::UmFromCf { hypergraph, coloring, uniform, out } => {
                commands::color_um_from_cf(&hypergraph, &coloring, uniform, out.as_deref())
            }
            Color::Psf { n, k, r, out } => commands::color_psf(n, k, r, out.as_deref()),
            Color::B7 { iterate, out } => commands::color_b7(iterate, out.as_deref()),
            Color::UmPath { n, out } => commands::color_um_path(n, out.as_deref()),
            Color::UmBinary { d, out } => commands::color_um_binary(d, out.as_deref()),
        },
        Command::Extract { tree, k, l } => commands::extract(&tree, k, l),
        Command::Refute { tree, coloring, k, witness } => commands::refute(&tree, &coloring, k, witness.as_deref()),
        Command::Experiment { name, seed } => commands::experiment(&name, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = dispatch(cli.command);
    let code = commands::exit_code(&result);
    match &result {
        Ok(o) => {
            println!("{}", serde_json::to_string_pretty(&o.json).expect("values serialize"));
            eprintln!("{}", o.summary);
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&commands::error_json(e)).expect("values serialize"));
            eprintln!("error: {e}");
        }
    }
    ExitCode::from(code as u8)
}
