use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tripair::reduction::build_curve;
use tripair::report::{emit, run_full_verification, Fault, Format, Verdict, VerifyOptions};
use tripair::search::{search_points, search_primitive_pairs, SearchConfig};
use tripair::Case;

#[derive(Parser)]
#[command(name = "tripair")]
#[command(
    about = "Exact verification of the rational right/isosceles triangle pair with equal perimeter and area"
)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

impl CaseArg {
    fn cases(self) -> Vec<Case> {
        match self {
            CaseArg::One => vec![Case::One],
            CaseArg::Two => vec![Case::Two],
            CaseArg::Both => Case::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleCase {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

impl From<SingleCase> for Case {
    fn from(c: SingleCase) -> Case {
        match c {
            SingleCase::One => Case::One,
            SingleCase::Two => Case::Two,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveArg {
    C1,
    C2,
}

impl From<CurveArg> for Case {
    fn from(c: CurveArg) -> Case {
        match c {
            CurveArg::C1 => Case::One,
            CurveArg::C2 => Case::Two,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole pipeline and print the report
    Verify {
        #[arg(long, value_enum, default_value = "both")]
        case: CaseArg,
        #[arg(long, default_value_t = 100)]
        height_bound: u64,
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, default_value_t = 200)]
        generator_bound: u64,
        /// Worker threads for the searches
        #[arg(long, env = "TRIPAIR_WORKERS", default_value_t = 4)]
        workers: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Corrupt a curve coefficient before verifying (fault injection)
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Count points of C1 or C2 over F_p
    CountPoints {
        #[arg(long, value_enum)]
        curve: CurveArg,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// List rational points of C1 or C2 up to a height bound
    Search {
        #[arg(long, value_enum)]
        curve: CurveArg,
        #[arg(long)]
        height: u64,
        #[arg(long, env = "TRIPAIR_WORKERS", default_value_t = 4)]
        workers: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Brute-force primitive right/isosceles pairs with equal perimeter and area
    Appendix {
        #[arg(long, value_enum)]
        case: SingleCase,
        #[arg(long)]
        bound: u64,
        #[arg(long, env = "TRIPAIR_WORKERS", default_value_t = 4)]
        workers: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn print(bytes: &[u8]) -> ExitCode {
    match io::stdout().write_all(bytes) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

fn json_line(value: serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&value).expect("json value");
    out.push(b'\n');
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            case,
            height_bound,
            prime,
            generator_bound,
            workers,
            format,
            out,
            inject_fault,
        } => {
            let search = match SearchConfig::new(height_bound, generator_bound, workers) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            if tripair::OddPrime::new(prime).is_err() {
                return usage(format!("--prime {prime} is not an odd prime"));
            }
            let options = VerifyOptions {
                search,
                cases: case.cases(),
                prime,
                fault: inject_fault.then_some(Fault::CorruptCurveCoefficient),
            };
            let report = run_full_verification(&options);
            let format = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            };
            let bytes = emit(&report, format);
            let written = match out {
                Some(path) => {
                    fs::write(&path, &bytes).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_FAILED);
            }
            match report.verdict {
                Verdict::ConfirmedConditional => ExitCode::SUCCESS,
                Verdict::Failed => ExitCode::from(EXIT_FAILED),
            }
        }
        Command::CountPoints {
            curve,
            prime,
            format,
        } => {
            let c = build_curve(curve.into());
            let count = match c.count_points_mod_p(prime) {
                Ok(n) => n,
                Err(e) => return usage(e),
            };
            match format {
                FormatArg::Text => {
                    print(format!("#{}(F_{prime}) = {count}\n", c.label()).as_bytes())
                }
                FormatArg::Json => print(&json_line(json!({
                    "curve": c.label(),
                    "prime": prime.to_string(),
                    "count": count.to_string(),
                }))),
            }
        }
        Command::Search {
            curve,
            height,
            workers,
            format,
        } => {
            if height < 1 || workers < 1 {
                return usage("--height and --workers must be at least 1");
            }
            let c = build_curve(curve.into());
            let res = search_points(&c, height, workers);
            let points: Vec<String> = res.points_found.iter().map(|p| p.to_string()).collect();
            match format {
                FormatArg::Text => {
                    let mut text = format!(
                        "{}: {} rational points with x of height <= {height}\n",
                        res.curve_label,
                        points.len()
                    );
                    for p in &points {
                        text.push_str(p);
                        text.push('\n');
                    }
                    print(text.as_bytes())
                }
                FormatArg::Json => print(&json_line(json!({
                    "curve": res.curve_label,
                    "height_bound": height.to_string(),
                    "exhaustive": res.exhaustive,
                    "points": points,
                }))),
            }
        }
        Command::Appendix {
            case,
            bound,
            workers,
            format,
        } => {
            if bound < 2 || workers < 1 {
                return usage("--bound must be at least 2 and --workers at least 1");
            }
            let matches = search_primitive_pairs(case.into(), bound, workers);
            let rendered: Vec<String> = matches
                .iter()
                .map(|m| format!("{} / {}", m.right, m.isosceles))
                .collect();
            match format {
                FormatArg::Text => {
                    let mut text = format!(
                        "case {}: {} primitive pairs with equal perimeter and area, generators <= {bound}\n",
                        Case::from(case),
                        matches.len()
                    );
                    for r in &rendered {
                        text.push_str(r);
                        text.push('\n');
                    }
                    print(text.as_bytes())
                }
                FormatArg::Json => print(&json_line(json!({
                    "case_id": Case::from(case).to_string(),
                    "generator_bound": bound.to_string(),
                    "matches": rendered,
                }))),
            }
        }
    }
}
