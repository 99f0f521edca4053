use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use evalg_cli::{
    cmd_check, cmd_classify, cmd_decompose, cmd_random, cmd_tables, cmd_verify, default_grid, matrix_file, parse_grid,
    read_algebra, read_matrix, Check,
};
use evalg_core::random::RandomMode;
use evalg_core::Field;

#[derive(Parser)]
#[command(name = "evalg", version, about = "Exact computations with evolution algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identity checks, witnesses and the annihilator chain.
    Check {
        file: PathBuf,
        /// Comma-separated subset of assoc, pa4, pa, jordan, nil, chain.
        #[arg(long, value_delimiter = ',', default_value = "assoc,pa4,pa,jordan,nil,chain")]
        which: Vec<Check>,
    },
    /// Catalog label, parameters and a verified isomorphism.
    Classify {
        file: PathBuf,
        /// Also write the isomorphism matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph components and the Wedderburn decomposition.
    Decompose { file: PathBuf },
    /// Writes the catalog tables and their grid instances.
    Tables {
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long, default_value_t = 6)]
        dim: usize,
        /// Comma-separated nonzero parameter values.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value = "tables")]
        out: PathBuf,
    },
    /// A seeded random algebra in the file format.
    Random {
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "pa_mixed")]
        mode: RandomMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks that `x -> M x` is an isomorphism from the first algebra to the second.
    Verify { a: PathBuf, b: PathBuf, matrix: PathBuf },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Check { file, which } => print!("{}", cmd_check(&read_algebra(&file)?, &which)?),
        Command::Classify { file, out } => {
            let a = read_algebra(&file)?;
            let (report, iso) = cmd_classify(&a)?;
            print!("{report}");
            if let Some(path) = out {
                fs::write(&path, matrix_file(a.field(), &iso)?)?;
            }
        }
        Command::Decompose { file } => print!("{}", cmd_decompose(&read_algebra(&file)?)?),
        Command::Tables { field, dim, grid, out } => {
            let grid = match grid {
                Some(g) => parse_grid(field, &g)?,
                None => default_grid(field),
            };
            for path in cmd_tables(field, dim, &grid, &out)? {
                println!("wrote: {}", path.display());
            }
        }
        Command::Random { field, dim, seed, mode, out } => {
            let text = cmd_random(field, dim, seed, mode)?;
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify { a, b, matrix } => {
            let (a, b) = (read_algebra(&a)?, read_algebra(&b)?);
            print!("{}", cmd_verify(&a, &b, &read_matrix(&matrix)?)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
