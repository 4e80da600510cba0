use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sparsedict::cli::{cmd_decode, cmd_encode, cmd_table, DecodeConfig, Method, RunConfig};
use sparsedict::codec::write_report_csv;
use sparsedict::Error;

#[derive(Parser)]
#[command(
    name = "sparsedict",
    version,
    about = "Sparse image coding with cosine / B-spline dictionaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode PGM images and report compression ratios.
    Encode {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "omp_linear")]
        method: Method,
        #[arg(long = "block", default_value_t = 16)]
        block: usize,
        #[arg(long, default_value_t = 40.0)]
        psnr: f64,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Write a per-iteration trace next to each .sic file.
        #[arg(long)]
        trace: bool,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report CSV to append to.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decode a .sic container to an 8-bit PGM.
    Decode {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Original PGM, to print the achieved PSNR.
        #[arg(long)]
        original: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Merge report CSVs into a table.
    Table {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        /// Also write the merged table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare against the published compression ratios.
        #[arg(long)]
        paper: bool,
    },
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Encode {
            inputs,
            method,
            block,
            psnr,
            levels,
            workers,
            trace,
            out,
            report,
        } => {
            let config = RunConfig {
                inputs,
                method,
                block_size: block,
                target_psnr: psnr,
                levels,
                out_dir: out,
                report,
                workers,
                trace,
            };
            let rows = cmd_encode(&config)?;
            write_report_csv(&rows, true, std::io::stdout())?;
        }
        Command::Decode {
            input,
            out,
            original,
            method,
        } => {
            let summary = cmd_decode(&DecodeConfig {
                input,
                output: out,
                original,
                method,
            })?;
            println!("wrote {}", summary.output.display());
            if let (Some(p), Some(p8)) = (summary.psnr, summary.psnr_8bit) {
                println!("psnr {p:.4} dB (8-bit export {p8:.4} dB)");
            }
        }
        Command::Table { reports, out, paper } => {
            let table = cmd_table(&reports)?;
            print!("{}", table.render(paper));
            if let Some(path) = out {
                std::fs::write(&path, table.to_csv()?).map_err(|e| Error::from(e).in_file(&path))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
