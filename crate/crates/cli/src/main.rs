use std::process::ExitCode;

use clap::{Parser, Subcommand};
use f2curves_cli::commands;

#[derive(Parser)]
#[command(name = "f2curves", version, about = "Zeta functions, places and ray class groups of curves over F_2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// L-polynomial, point counts and place counts from a real Weil polynomial
    Zeta {
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 10)]
        dmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Candidate real Weil polynomials for a genus and number of rational points
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: i64,
        #[arg(long)]
        dmax: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Number of points over F_{2^n}
    Count {
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: u32,
    },
    /// Places of a given degree
    Places {
        #[arg(long)]
        model: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        coords: bool,
    },
    /// Divisor of a function on the curve
    Divisor {
        #[arg(long)]
        model: String,
        #[arg(long)]
        function: String,
    },
    /// Ray class group quotient from a conductor and S-units
    Rayclass {
        #[arg(long)]
        model: String,
        #[arg(long)]
        conductor: String,
        #[arg(long, default_value = "")]
        split: String,
        #[arg(long)]
        sunits: String,
        #[arg(long)]
        verdicts: Option<String>,
    },
    /// Recompute every tabulated value and report pass/fail per check
    VerifyPaper {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        fixtures: Option<String>,
    },
}

fn run(cmd: Cmd) -> Result<(String, bool), String> {
    let ok = |s: String| (s, true);
    match cmd {
        Cmd::Zeta { h, q, dmax, json } => commands::zeta(&h, q, dmax, json).map(ok),
        Cmd::Enumerate {
            genus,
            points,
            dmax,
            json,
        } => commands::enumerate(genus, points, dmax, json).map(ok),
        Cmd::Count { model, n } => commands::count(&commands::load_model(&model)?, n).map(ok),
        Cmd::Places {
            model,
            degree,
            coords,
        } => commands::places(&commands::load_model(&model)?, degree, coords).map(ok),
        Cmd::Divisor { model, function } => {
            commands::divisor(&commands::load_model(&model)?, &function).map(ok)
        }
        Cmd::Rayclass {
            model,
            conductor,
            split,
            sunits,
            verdicts,
        } => {
            let m = commands::load_model(&model)?;
            let text = std::fs::read_to_string(&sunits).map_err(|e| format!("{sunits}: {e}"))?;
            let units = commands::parse_sunits(&text)?;
            commands::rayclass(&m, &conductor, &split, &units, verdicts.as_deref()).map(ok)
        }
        Cmd::VerifyPaper {
            json,
            only,
            fixtures,
        } => commands::verify_paper(fixtures.as_deref(), only.as_deref(), json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
