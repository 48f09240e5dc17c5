use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kahler::presentation::{parse_document, parse_word};
use kahler::report::{self, Format, Options};
use kahler::surface::{dehn_reduce, dehn_trivial, orbifold_group, surface_group};

#[derive(Parser)]
#[command(name = "kahler", version, about = "Obstructions to Kahler groups and Kahler homomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Highest lower central series degree examined.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Largest number of monomials a truncated algebra may use.
    #[arg(long, default_value_t = 5000)]
    dim_budget: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            max_degree: self.max_degree,
            dim_budget: self.dim_budget,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every group obstruction on a presentation file.
    Analyze {
        file: String,
        #[command(flatten)]
        common: Common,
        /// Central kernel generators (overrides the file's `central:` clause).
        #[arg(long, value_delimiter = ',')]
        central: Option<Vec<String>>,
        /// Group to analyze when the file declares several.
        #[arg(long)]
        group: Option<String>,
    },
    /// Run the homomorphism obstructions.
    Hom {
        file: String,
        #[command(flatten)]
        common: Common,
        /// Homomorphism to analyze (default: the last one declared).
        #[arg(long)]
        name: Option<String>,
    },
    /// Extension class of a presentation with central generators, with a
    /// section scan as a cross-check.
    Ext {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        central: Vec<String>,
        #[arg(long, default_value_t = 12)]
        scan_n: u64,
        #[arg(long)]
        group: Option<String>,
    },
    /// Surface and orbifold surface groups.
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Print the genus-g surface group presentation.
    Gamma { genus: usize },
    /// Print an orbifold surface group presentation.
    Orbifold {
        genus: usize,
        #[arg(value_delimiter = ',')]
        orders: Vec<u64>,
    },
    /// Decide whether a word in a1..a2g is trivial in the genus-g surface group.
    Wordtest { genus: usize, word: String },
}

fn read(file: &str) -> Result<String> {
    fs::read_to_string(file).with_context(|| format!("cannot read {file}"))
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Analyze {
            file,
            common,
            central,
            group,
        } => {
            let text = read(&file)?;
            let doc = parse_document(&text)?;
            let decl = report::select_group(&doc, group.as_deref())?;
            let central = central.unwrap_or_else(|| decl.central.clone());
            for c in &central {
                if decl.presentation.generator_index(c).is_none() {
                    bail!("`{c}` is not a generator of {}", decl.presentation.name());
                }
            }
            let r = report::analyze(&file, &text, &decl.presentation, &central, &common.options());
            Ok(report::emit_report(&r, common.format.into()))
        }
        Command::Hom { file, common, name } => {
            let text = read(&file)?;
            let doc = parse_document(&text)?;
            let h = report::select_hom(&doc, name.as_deref())?;
            let r = report::analyze_hom(&file, &text, h, &common.options())?;
            Ok(report::emit_report(&r, common.format.into()))
        }
        Command::Ext {
            file,
            central,
            scan_n,
            group,
        } => {
            let text = read(&file)?;
            let doc = parse_document(&text)?;
            let decl = report::select_group(&doc, group.as_deref())?;
            let r = report::extension_report(&file, &text, &decl.presentation, &central, scan_n, &Options::default())?;
            Ok(report::to_json(&r))
        }
        Command::Surface { command } => match command {
            SurfaceCommand::Gamma { genus } => Ok(surface_group(genus)?.presentation().to_text()),
            SurfaceCommand::Orbifold { genus, orders } => Ok(orbifold_group(genus, &orders)?.presentation().to_text()),
            SurfaceCommand::Wordtest { genus, word } => {
                let g = surface_group(genus)?;
                let w = parse_word(&word, g.presentation().generator_names())?;
                let trivial = dehn_trivial(genus, &w)?;
                let reduced = dehn_reduce(genus, &w);
                Ok(format!(
                    "{}\nreduced: {}\n",
                    if trivial { "trivial" } else { "nontrivial" },
                    g.presentation().display_word(&reduced)
                ))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
