use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "drz", version, about = "Exact computations in diagonal reduction algebras of gl_n and sl_n")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Rank of gl_n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Generator order: `default`, `stord` or `@file`.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Multiplication backend: `rewrite` or `oracle`.
    #[arg(long, global = true, default_value = "rewrite")]
    pub backend: String,
    /// Output format: `text`, `json` or `latex`.
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
    /// Cartan variables in output: `theta` or `h`.
    #[arg(long, global = true, default_value = "theta")]
    pub vars: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the generator order, lowest first.
    Order,
    /// Multiply the expressions left to right and print the ordered form.
    Mul {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Bring an expression, or an element given as `@file.json`, to ordered form.
    NormalOrder { expr: String },
    /// Check the defining relations; exits 1 if any residual is nonzero.
    Verify {
        /// Comma-separated family tags (1, 2, 3a, 3a-compact, 3b, 4a, 4b) or `all`.
        #[arg(long, default_value = "all")]
        family: String,
        /// Print every instance, not only failures.
        #[arg(long)]
        all_instances: bool,
    },
    /// Apply braid-group operators.
    Q {
        /// A single generator q_i.
        #[arg(long, conflicts_with_all = ["word", "longest"])]
        i: Option<usize>,
        /// A braid word such as `1,2,-1`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "longest")]
        word: Option<String>,
        /// The longest element.
        #[arg(long)]
        longest: bool,
        /// Compute q_i from its defining formula instead of generator images.
        #[arg(long, requires = "i")]
        definition: bool,
        expr: String,
    },
    /// Print a catalog central element; `--check` tests centrality and invariance.
    Casimir {
        /// e.g. `linear_t(3)`, `quadratic(2)`, `sl_linear(3)`, `sl3_C2`.
        #[arg(long)]
        which: String,
        #[arg(long)]
        check: bool,
    },
    /// Cut an element of Z_{n+m} down to Z_n ⊗ Z_m.
    Cut {
        #[arg(long)]
        m: usize,
        /// A catalog element of Z_{n+m} instead of an expression.
        #[arg(long, conflicts_with = "expr")]
        which: Option<String>,
        /// For m = 1, list the Z_n coefficients of t^i h^j and check their centrality.
        #[arg(long)]
        coefficients: bool,
        #[arg(required_unless_present = "which")]
        expr: Option<String>,
    },
    /// Print the complete list of ordering relations.
    Table {
        /// `sl2`, `sl3`, `gl1`, `gl2` or `gl3`.
        #[arg(long)]
        target: String,
    },
    /// Print one structure-table entry, e.g. `--pair "1,3;1,2"` for z[1,3]*z[1,2].
    Sc {
        #[arg(long)]
        pair: String,
    },
    /// Check the homogeneous limit of ordering relations along a ray.
    Limit {
        /// `a,b;c,d` or `all`.
        #[arg(long, default_value = "all")]
        pair: String,
        /// n values θ_k = c_k s, or n−1 values for the simple roots.
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
