//! `strata`: exact ground-state degeneracies of stratified surfaces.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "strata", version, about = "Exact ground-state degeneracy of stratified surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in categories, walls and algebras.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Validate data files (JSON) and surface files. Data files are loaded
    /// first, so surfaces may refer to them.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compute the ground-state degeneracy of a surface.
    Gsd(GsdArgs),
}

#[derive(clap::Args, Debug)]
pub struct GsdArgs {
    /// Surface file in the region/wall DSL.
    surface: PathBuf,
    /// Extra category, wall or algebra JSON files, loaded in order.
    #[arg(long = "data", value_name = "FILE")]
    data: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Greedy)]
    order: OrderArg,
    /// Print the reduction trace to stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    Exact,
    Verlinde,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OrderArg {
    Input,
    Greedy,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog { json } => commands::catalog(json),
        Command::Validate { files } => commands::validate(&files),
        Command::Gsd(args) => commands::gsd(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
