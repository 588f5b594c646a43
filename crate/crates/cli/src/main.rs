use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tancat::Side;
use tancat_cli::{run_text, Format, Status};

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Ring,
    Scheme,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Run a tancat script. Flags on the `run` line take precedence over the
/// ones given here.
#[derive(Parser)]
#[command(name = "tancat", version)]
struct Args {
    /// Script file; reads standard input when absent or `-`.
    script: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "scheme")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Report 0 ms so that output is byte-identical between runs.
    #[arg(long)]
    no_timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.script {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read script: {}", e);
            return ExitCode::from(2);
        }
    };
    let side = match args.side {
        SideArg::Ring => Side::Ring,
        SideArg::Scheme => Side::Affine,
    };
    let (mut report, script_format) = run_text(&text, side);
    if args.no_timing {
        report.ms = 0;
    }
    let format = script_format.unwrap_or(match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    });
    let out = report.render(format);
    if format == Format::Text && report.status() == Status::Error {
        eprint!("{}", out);
    } else {
        print!("{}", out);
    }
    ExitCode::from(report.exit_code() as u8)
}
