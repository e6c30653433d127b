use clap::Parser;
use nlcs_cli::commands;
use nlcs_cli::config::Cli;
use nlcs_cli::exit;

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(&cli.global, &cli.command).and_then(|report| {
        report.emit()?;
        Ok(report)
    }) {
        Ok(report) => {
            for f in report.failures() {
                eprintln!(
                    "FAIL {}: observed {}, bound {}, tolerance {:e}",
                    f.check, f.observed, f.bound, f.tolerance
                );
            }
            if let Some(true) = report.summary.get("needs_review").and_then(|v| v.as_bool()) {
                eprintln!("needs review: sampled energies fell below the conjectured bound");
            }
            let total = report.checks.len();
            let failed = report.failures().count();
            eprintln!("{}: {}/{} checks passed", report.config.command, total - failed, total);
            if report.pass {
                exit::PASS
            } else {
                exit::CHECK_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit::USAGE_OR_IO
        }
    };
    std::process::exit(code);
}
