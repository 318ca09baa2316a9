use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use merodec_cli::commands::{self, Failure};
use merodec_cli::render;

/// Meromorphic decoders of stabilizer codes, computed exactly over Q(i).
#[derive(Parser, Debug)]
#[command(name = "merodec", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for decoder sums and rendering.
    #[arg(long, global = true, env = "MERODEC_THREADS")]
    threads: Option<NonZeroUsize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the meromorphic decoder of a code file.
    Decode {
        code: PathBuf,
        /// Also print the decoder with one variable per qubit.
        #[arg(long)]
        multi: bool,
    },
    /// Fixed points, branch points and distillation report for a code.
    Analyze { code: PathBuf },
    /// Print the dual code and check the Hadamard identity of decoders.
    Dual { code: PathBuf },
    /// Concatenate two codes: each qubit of OUTER is encoded in INNER.
    Concat {
        outer: PathBuf,
        inner: PathBuf,
        /// Write the code file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight enumerator of the stabilizer group.
    Wenum {
        code: PathBuf,
        /// Use only the X-type subgroup of a CSS code.
        #[arg(long)]
        xtype: bool,
    },
    /// Whether two points lie in the same Clifford orbit.
    Orbit {
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Evaluate spider expressions.
    Zxw {
        #[command(subcommand)]
        command: ZxwCommand,
    },
    /// Colour the Riemann sphere by the nearest of 0, 1, ∞ to f(z) (PPM).
    Render {
        /// `e7` or a rational function of z.
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(1..=4096))]
        size: u32,
        /// Colour by E7(f(z)) instead of f(z).
        #[arg(long)]
        through_e7: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ZxwCommand {
    /// Evaluate an expression such as `r(z1, g(z2, 2))`.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Bind a variable, e.g. `--at z1=1/2`.
        #[arg(long = "at", value_name = "NAME=VALUE")]
        at: Vec<String>,
        /// Print the expression as a rational function of its variables.
        #[arg(long)]
        symbolic: bool,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build_global()
            .map_err(|e| Failure::internal(e.to_string()))?;
    }
    let json = cli.json;
    match cli.command {
        Command::Decode { code, multi } => commands::decode(&code, multi, json),
        Command::Analyze { code } => commands::analyze(&code, json),
        Command::Dual { code } => commands::dual(&code, json),
        Command::Concat { outer, inner, out } => commands::concat(&outer, &inner, out.as_deref(), json),
        Command::Wenum { code, xtype } => commands::wenum(&code, xtype, json),
        Command::Orbit { w, z } => commands::orbit(&w, &z, json),
        Command::Zxw {
            command: ZxwCommand::Eval { expr, at, symbolic },
        } => commands::zxw_eval(&expr, &at, symbolic, json),
        Command::Render {
            target,
            out,
            size,
            through_e7,
        } => render::run(&target, out.as_deref(), size as usize, through_e7, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(commands::EXIT_INTERNAL),
    }
}
